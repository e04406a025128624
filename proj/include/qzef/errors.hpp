#pragma once

#include <stdexcept>
#include <string>

namespace qzef {

// Desk-scale resource bounds (dense dimension, enumeration counts).  The CLI
// maps this to its own exit code.
struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qzef
