"""Smoke tests for the Python bindings."""

import math

import pytest

try:
    import qzef as qz
except ImportError:
    qz = pytest.importorskip("_core")


def paper_code():
    return qz.lift_classical(qz.ClassicalCode(["0", "10", "110", "111"]), 3)


def test_kraft_and_prefix():
    code = paper_code()
    assert abs(qz.quantum_kraft_sum(code) - 1.0) < 1e-12
    assert qz.is_prefix_free_quantum(code)
    assert code.sector_dims() == [1, 1, 2]


def test_code_constructions():
    huff = qz.huffman_from_probs([0.5, 0.25, 0.125, 0.125])
    assert sorted(len(w) for w in huff.codewords) == [1, 2, 3, 3]
    assert qz.shannon_fano_lengths([0.9, 0.1]) == [1, 4]
    assert qz.kraft_assign([1, 2, 3, 3]).codewords == ["0", "10", "110", "111"]


def test_states_and_fidelity():
    s = qz.SparseState.from_terms(
        3, {"000": 1 / math.sqrt(2), "110": 1 / math.sqrt(2)}
    )
    assert abs(qz.truncation_fidelity(s, 1) - 0.25) < 1e-12
    assert abs(qz.inner(s, s).real - 1.0) < 1e-12


def test_condense_roundtrip():
    code = paper_code()
    basis = code.zef_basis()
    words = [basis[1][1], basis[0][1]]  # payloads "10" and "0"
    cs = qz.simple_condense(code, words)
    assert cs.state.amplitudes == {"100000": 1.0 + 0.0j}
    back = qz.decondense(cs)
    assert abs(abs(qz.inner(back[0], words[0])) - 1.0) < 1e-10
    report = qz.isometry_check(code, 2)
    assert report.ok and report.n_products == 16


def test_machine():
    code = qz.ClassicalCode(["0", "10", "110", "111"])
    run = qz.run_condense_program(code, ["10", "0"])
    assert run.ok
    assert run.tape == "100000"
    assert run.clock == 2 * run.deadline


def test_entropy_identity():
    code = paper_code()
    basis = code.zef_basis()
    ens = qz.Ensemble(
        code,
        [(0.5, basis[0][1]), (0.25, basis[1][1]), (0.125, basis[2][1]), (0.125, basis[3][1])],
    )
    rep = qz.length_identity(ens)
    assert rep.holds
    assert abs(rep.avg_len - 1.75) < 1e-12
    assert abs(rep.entropy - 1.75) < 1e-12


def test_experiment_and_serialization():
    code = paper_code()
    basis = code.zef_basis()
    ens = qz.Ensemble(
        code,
        [(0.5, basis[0][1]), (0.25, basis[1][1]), (0.125, basis[2][1]), (0.125, basis[3][1])],
    )
    cfg = qz.ExperimentConfig()
    cfg.n_words = 3
    cfg.ells = [0, 5, 9]
    cfg.exact = True
    rows = qz.sufficiency_experiment(ens, cfg)
    assert [r.ell for r in rows] == [0, 5, 9]
    assert rows[-1].avg_fidelity == pytest.approx(1.0)

    text = qz.write_sparse_state(basis[1][1])
    back = qz.read_sparse_state(text)
    assert abs(abs(qz.inner(back, basis[1][1])) - 1.0) < 1e-12
