#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace qzef {

using bigint = boost::multiprecision::cpp_int;

// Exact dyadic rational num / 2^exp.  Every finite double is representable,
// so probability convolutions stay exact relative to their double inputs.
struct Dyadic {
    bigint num = 0;
    int exp = 0;

    Dyadic() = default;
    Dyadic(bigint n, int e) : num(std::move(n)), exp(e) { reduce(); }

    static Dyadic from_double(double x) {
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
        if (x == 0.0) return Dyadic{};
        int e = 0;
        double f = std::frexp(x, &e);  // x = f * 2^e, |f| in [0.5, 1)
        double scaled = std::ldexp(f, 53);
        return Dyadic(bigint(static_cast<long long>(std::llround(scaled))), 53 - e);
    }

    static Dyadic one() { return Dyadic(1, 0); }

    double to_double() const {
        return std::ldexp(static_cast<double>(num), -exp);
    }

    void reduce() {
        if (num == 0) {
            exp = 0;
            return;
        }
        while (exp > 0 && (num & 1) == 0) {
            num >>= 1;
            --exp;
        }
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        int e = std::max(a.exp, b.exp);
        return Dyadic((a.num << (e - a.exp)) + (b.num << (e - b.exp)), e);
    }

    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
        int e = std::max(a.exp, b.exp);
        return Dyadic((a.num << (e - a.exp)) - (b.num << (e - b.exp)), e);
    }

    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        return Dyadic(a.num * b.num, a.exp + b.exp);
    }

    friend bool operator<(const Dyadic& a, const Dyadic& b) {
        int e = std::max(a.exp, b.exp);
        return (a.num << (e - a.exp)) < (b.num << (e - b.exp));
    }
    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        int e = std::max(a.exp, b.exp);
        return (a.num << (e - a.exp)) == (b.num << (e - b.exp));
    }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return a < b || a == b; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
};

// Probability distribution over integer lengths, with exact accumulation.
class LengthDistribution {
public:
    LengthDistribution() = default;
    explicit LengthDistribution(std::map<int, Dyadic> probs) : probs_(std::move(probs)) {}

    static LengthDistribution delta(int value) {
        std::map<int, Dyadic> p;
        p[value] = Dyadic::one();
        return LengthDistribution(std::move(p));
    }

    static LengthDistribution from_doubles(const std::map<int, double>& probs) {
        std::map<int, Dyadic> p;
        for (const auto& [l, w] : probs) {
            if (w != 0.0) p[l] = Dyadic::from_double(w);
        }
        return LengthDistribution(std::move(p));
    }

    const std::map<int, Dyadic>& probs() const { return probs_; }

    double mean() const {
        double m = 0.0;
        for (const auto& [l, w] : probs_) m += l * w.to_double();
        return m;
    }

    LengthDistribution convolve(const LengthDistribution& other) const {
        std::map<int, Dyadic> out;
        for (const auto& [la, wa] : probs_) {
            for (const auto& [lb, wb] : other.probs_) {
                auto it = out.find(la + lb);
                if (it == out.end()) {
                    out[la + lb] = wa * wb;
                } else {
                    it->second = it->second + wa * wb;
                }
            }
        }
        return LengthDistribution(std::move(out));
    }

    LengthDistribution power(int n) const {
        LengthDistribution acc = delta(0);
        for (int i = 0; i < n; ++i) acc = acc.convolve(*this);
        return acc;
    }

    // P(length > ell) and P(length < ell), exact.
    double tail_greater(double ell) const {
        Dyadic t;
        for (const auto& [l, w] : probs_) {
            if (static_cast<double>(l) > ell) t = t + w;
        }
        return t.to_double();
    }

    double tail_less(double ell) const {
        Dyadic t;
        for (const auto& [l, w] : probs_) {
            if (static_cast<double>(l) < ell) t = t + w;
        }
        return t.to_double();
    }

    // P(|length - center| > radius).
    double deviation_prob(double center, double radius) const {
        Dyadic t;
        for (const auto& [l, w] : probs_) {
            if (std::abs(static_cast<double>(l) - center) > radius) t = t + w;
        }
        return t.to_double();
    }

private:
    std::map<int, Dyadic> probs_;
};

}  // namespace qzef
