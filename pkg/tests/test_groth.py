import pytest

from qhsuper import groth
from qhsuper.cyclotomic import build_cyclotomic
from qhsuper.foundations import SuperScalar, preset, roots_of_height
from qhsuper.groth import (character_of, compare_with_oracle, divided_power_divisible,
                           pairing_full_rank, simple_counts, verify_boson_relation,
                           verify_ind_decomposition, verify_kernel_commutation, verify_mackey,
                           verify_pi_invariance, verify_sl2_commutation, verify_strong_perfect)
from qhsuper.repcat import parity_twist, regular_module, simple_modules, zero_module

A1, A1ODD, A2, B2 = (preset(n) for n in ("A1", "A1odd", "A2", "B2odd"))


def cyc(datum, lam, beta):
    return build_cyclotomic(datum, None, lam, beta)


def roots(datum, h):
    return [b.counts for k in range(h + 1) for b in roots_of_height(datum, k)]


# -- characters

def test_character_truncated_polynomial():
    assert character_of(cyc(A1ODD, (2,), (1,))) == SuperScalar({(0, 0): 1, (2, 1): 1})


def test_character_zero_module():
    assert character_of(zero_module(cyc(A1, (2,), (1,)).alg, (1,), (2,))).is_zero()


def test_character_shift():
    M = regular_module(cyc(A1ODD, (2,), (2,)))
    assert character_of(M.shift(1)) == character_of(M).shift(1)


# -- commutation of E and F

def test_sl2_level_two_empty_root():
    rep = verify_sl2_commutation(A1ODD, None, (2,), (0,), 1)
    assert rep["pass"] and rep["instance"]["h"] == 2
    assert rep["lhs"] == SuperScalar({(0, 0): 1, (2, 1): 1}).to_json()


def test_sl2_negative_weight():
    rep = verify_sl2_commutation(A1, None, (1,), (1,), 1)
    assert rep["pass"] and rep["instance"]["h"] == -1


@pytest.mark.parametrize("ij", [(1, 2), (2, 1)])
def test_sl2_distinct_colors(ij):
    assert verify_sl2_commutation(A2, None, (1, 0), (1, 0), *ij)["pass"]


@pytest.mark.parametrize("suite", [(A1, (2,)), (A1ODD, (2,)), (A2, (1, 1)), (B2, (0, 1))])
def test_sl2_with_scalar_identity(suite):
    datum, lam = suite
    for beta in roots(datum, 2):
        for i in datum.labels:
            rep = verify_sl2_commutation(datum, None, lam, beta, i)
            assert rep["pass"] and rep["scalar_identity"], rep


def test_sl2_control_detects_missing_term(monkeypatch):
    monkeypatch.setattr(groth, "_fe_character", lambda *a: groth.ZERO)
    assert not verify_sl2_commutation(A1, None, (2,), (1,), 1)["pass"]


# -- strong perfect basis

def test_strong_perfect_rank_one():
    rep = verify_strong_perfect(A1, None, (2,), (2,), 1)
    assert rep["pass"]
    (row,) = rep["simples"]
    # q^{-1}[2] = 1 + q^{-2}
    assert row["coefficient"] == {"-2": 1, "0": 1}


def test_strong_perfect_skips_eps_zero():
    rep = verify_strong_perfect(A2, None, (1, 0), (1, 0), 2)
    assert rep["pass"] and rep["simples"] == []


@pytest.mark.parametrize("i", [1, 2])
def test_strong_perfect_adjoint(i):
    for beta in roots(A2, 2):
        assert verify_strong_perfect(A2, None, (1, 1), beta, i)["pass"]


# -- Mackey filtration

def test_mackey_two_colors():
    rep = verify_mackey(A2, None, (1, 0), (0, 1), (0, 1), (1, 0))
    assert rep["pass"]
    assert len(rep["terms"]) >= 1


def test_mackey_trivial_overlap():
    rep = verify_mackey(A2, None, (1, 0), (0, 1), (1, 0), (0, 1))
    assert rep["pass"]


@pytest.mark.parametrize("datum", [A1, A1ODD])
def test_mackey_rank_one(datum):
    assert verify_mackey(datum, None, (1,), (1,), (1,), (1,))["pass"]


def test_mackey_mismatch():
    with pytest.raises(groth.GrothError):
        verify_mackey(A2, None, (1, 0), (0, 1), (1, 0), (1, 0))


# -- boson relation

@pytest.mark.parametrize("i", [1, 2])
def test_boson_trivial_module(i):
    (triv,) = simple_modules(cyc(A2, (1, 0), (0, 0)))
    rep = verify_boson_relation(triv.module, i, i)
    assert rep["pass"] and rep["lhs"] == {"0": 1}


def test_boson_trivial_distinct():
    (triv,) = simple_modules(cyc(A2, (1, 0), (0, 0)))
    rep = verify_boson_relation(triv.module, 1, 2)
    assert rep["pass"] and rep["lhs"] == {} and rep["rhs"] == {}


@pytest.mark.parametrize("ij", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_boson_a2_simple(ij):
    (L,) = simple_modules(cyc(A2, (1, 0), (1, 0)))
    assert verify_boson_relation(L.module, *ij)["pass"]


# -- headcounts

def test_headcount_natural_a2():
    rep = compare_with_oracle(A2, None, (1, 0), 3)
    assert rep["pass"]
    counts = {tuple(r["beta"]): r["simples"] for r in rep["table"]}
    assert {b for b, c in counts.items() if c} == {(0, 0), (1, 0), (1, 1)}


@pytest.mark.parametrize("datum", [A1, A1ODD])
def test_headcount_rank_one(datum):
    assert simple_counts(datum, None, (2,), 3) == {(0,): 1, (1,): 1, (2,): 1, (3,): 0}


# -- pairing, divisibility, parity

@pytest.mark.parametrize("case", [(A2, (1, 1), (1, 1)), (A1ODD, (2,), (2,)), (B2, (1, 1), (1, 1))])
def test_pairing_full_rank(case):
    A = cyc(*case)
    assert pairing_full_rank(A, simple_modules(A))


@pytest.mark.parametrize("case", [(A1, (2,), (0,), 1, 2), (A1ODD, (3,), (0,), 1, 2),
                                  (A1ODD, (3,), (1,), 1, 2), (A2, (2, 1), (0, 1), 1, 2)])
def test_divided_powers_divisible(case):
    datum, lam, beta, i, n = case
    assert divided_power_divisible(datum, None, lam, beta, i, n)


@pytest.mark.parametrize("suite", [(A1ODD, (2,)), (B2, (1, 1))])
def test_parity_twist_keeps_characters(suite):
    datum, lam = suite
    for beta in roots(datum, 2):
        A = cyc(datum, lam, beta)
        for M in [regular_module(A)] + [r.module for r in simple_modules(A)]:
            assert parity_twist(M).character().at_pi(1) == M.character().at_pi(1)


@pytest.mark.parametrize("suite", [(A1ODD, (2,)), (A2, (1, 1)), (B2, (1, 1))])
def test_pi_invariance(suite):
    datum, lam = suite
    for beta in roots(datum, 2):
        rep = verify_pi_invariance(datum, None, lam, beta)
        assert rep["pass"] and all(r["pi_witness"] for r in rep["simples"])


# -- kernels over R(beta)

@pytest.mark.parametrize("datum", [A1, A1ODD, A2, B2])
@pytest.mark.parametrize("bar", [False, True])
def test_kernel_commutation(datum, bar):
    for beta in roots(datum, 2):
        for i in datum.labels:
            for j in datum.labels:
                rep = verify_kernel_commutation(datum, None, beta, i, j, bar=bar)
                assert rep["pass"], rep


def test_kernel_commutation_control(monkeypatch):
    monkeypatch.setattr(groth, "_geometric", lambda datum, i, top: SuperScalar({(0, 0): 1}))
    assert not verify_kernel_commutation(A1, None, (1,), 1, 1)["pass"]


@pytest.mark.parametrize("datum", [A1ODD, A2, B2])
def test_ind_decomposition(datum):
    for beta in roots(datum, 3):
        for j in datum.labels:
            assert verify_ind_decomposition(datum, None, beta, j)["pass"]
