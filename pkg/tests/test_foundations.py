from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from qhsuper.foundations import (ONE, CartanDatum, FoundationsError, PRESETS, RootElt, SuperScalar,
                                 as_root, build_q_matrix, fundamental, homogeneous_pairs, pairing,
                                 preset, quantum_integer, root_form, roots_of_height, sequences,
                                 simple_root, super_quantum_factorial, super_quantum_integer,
                                 weight_of_root)

q = sympy.Symbol("q")


def scalars():
    term = st.tuples(st.integers(-6, 6), st.integers(0, 1))
    return st.dictionaries(term, st.integers(-3, 3), max_size=5).map(SuperScalar)


def as_expr(x):
    return sum((c * q ** d for d, c in x.at_pi(1).items()), sympy.Integer(0))


# -- pairing

def test_pairing_a2_off_diagonal():
    assert pairing(preset("A2"), 1, 2) == -1


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_pairing_diagonal_is_twice_symmetrizer(name):
    d = preset(name)
    for i in d.labels:
        assert pairing(d, i, i) == 2 * d.s(i)


def test_pairing_coroot_on_weight_after_one_step():
    d = preset("A1")
    lam = fundamental(d, 1, 2) - weight_of_root(d, simple_root(d, 1))
    assert pairing(d, 1, lam, mode="coroot") == 0


def test_pairing_form_on_weight_scales_by_symmetrizer():
    d = preset("B2odd")
    lam = fundamental(d, 2, 3)
    assert pairing(d, 2, lam) == 2 * 3
    assert pairing(d, 2, lam, mode="coroot") == 3


def test_pairing_unknown_index():
    with pytest.raises(FoundationsError):
        pairing(preset("A2"), 7, 1)


# -- quantum integers

def test_factorial_zero_is_one():
    assert super_quantum_factorial(preset("A1"), 0, 1) == ONE


def test_factorial_two_even():
    assert super_quantum_factorial(preset("A1"), 2, 1) == SuperScalar({(1, 0): 1, (-1, 0): 1})


def test_factorial_two_odd():
    assert super_quantum_factorial(preset("A1odd"), 2, 1) == SuperScalar({(1, 1): 1, (-1, 0): 1})


def test_factorial_negative_rejected():
    with pytest.raises(FoundationsError):
        super_quantum_factorial(preset("A1"), -1, 1)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_binomials_are_polynomials(name):
    d = preset(name)
    for i in d.labels:
        for n in range(7):
            for m in range(7 - n):
                top = super_quantum_factorial(d, n + m, i)
                bottom = super_quantum_factorial(d, n, i) * super_quantum_factorial(d, m, i)
                assert top.divide(bottom) is not None


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_specialization_is_classical(name):
    d = preset(name)
    for i in d.labels:
        qi = q ** d.s(i)
        for n in range(9):
            classical = sympy.cancel((qi ** n - qi ** -n) / (qi - 1 / qi))
            assert sympy.simplify(as_expr(super_quantum_integer(d, n, i)) - classical) == 0
            assert quantum_integer(d, n, i).at_pi(1) == super_quantum_integer(d, n, i).at_pi(1)


# -- Cartan data

def test_cartan_zero_pattern_rejected():
    with pytest.raises(FoundationsError, match="vanish together"):
        CartanDatum(labels=(1, 2), cartan=((2, -1), (0, 2)), symmetrizers=(1, 1), parity=(0, 0))


def test_odd_node_needs_even_row():
    with pytest.raises(FoundationsError, match="odd index"):
        CartanDatum(labels=(1, 2), cartan=((2, -1), (-1, 2)), symmetrizers=(1, 1), parity=(1, 0))


def test_symmetrizability_checked():
    with pytest.raises(FoundationsError, match="symmetrized"):
        CartanDatum(labels=(1, 2), cartan=((2, -2), (-1, 2)), symmetrizers=(1, 1), parity=(0, 0))


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_symmetrizable(name):
    d = preset(name)
    for i in d.labels:
        for j in d.labels:
            assert d.s(i) * d.a(i, j) == d.s(j) * d.a(j, i)


def test_unknown_preset():
    with pytest.raises(FoundationsError):
        preset("E8")


# -- Q matrix

def test_default_q_a2():
    Q = build_q_matrix(preset("A2"))
    assert sorted(Q.terms(1, 2)) == [(0, 1, 1), (1, 0, 1)]


def test_default_q_rank_one_is_empty():
    assert build_q_matrix(preset("A1odd")).terms(1, 1) == ()


def test_odd_power_rejected():
    with pytest.raises(FoundationsError, match=r"r=1, s=0"):
        build_q_matrix(preset("B2odd"), [(1, 2, 1, 0, 1)])


def test_off_line_rejected():
    with pytest.raises(FoundationsError, match="homogeneity"):
        build_q_matrix(preset("A2"), [(1, 2, 1, 0, 1), (1, 2, 0, 1, 1), (1, 2, 2, 0, 1)])


def test_leading_coefficient_required():
    with pytest.raises(FoundationsError, match="leading"):
        build_q_matrix(preset("A2"), [(1, 2, 0, 1, 1)])


def test_asymmetric_table_rejected():
    with pytest.raises(FoundationsError, match="symmetry"):
        build_q_matrix(preset("A2"), [(1, 2, 1, 0, 1), (2, 1, 0, 1, 2)])


def test_custom_table_fills_mirror():
    Q = build_q_matrix(preset("A2"), [{"i": 1, "j": 2, "r": 1, "s": 0, "t": 3},
                                      {"i": 1, "j": 2, "r": 0, "s": 1, "t": Fraction(1, 2)}])
    assert sorted(Q.terms(2, 1)) == [(0, 1, 3), (1, 0, Fraction(1, 2))]


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_default_table_symmetric_and_homogeneous(name):
    d = preset(name)
    Q = build_q_matrix(d)
    for i in d.labels:
        for j in d.labels:
            if i == j:
                continue
            mine = {(r, s): t for r, s, t in Q.terms(i, j)}
            theirs = {(s, r): t for r, s, t in Q.terms(j, i)}
            assert mine == theirs
            assert set(mine) <= set(homogeneous_pairs(d, i, j))
            if d.p(i):
                assert all(r % 2 == 0 for r, _ in mine)


# -- roots and sequences

def test_sequences_count():
    d = preset("A2")
    assert len(sequences(d, (2, 1))) == 3
    assert sequences(d, (0, 0)) == [()]


def test_roots_of_height():
    d = preset("A2")
    assert {b.counts for b in roots_of_height(d, 2)} == {(2, 0), (1, 1), (0, 2)}


def test_root_form_matches_pairing():
    d = preset("B2odd")
    assert root_form(d, as_root((1, 0)), as_root((0, 1))) == pairing(d, 1, 2)


def test_root_minus():
    assert RootElt((2, 1)).minus(RootElt((1, 1))) == RootElt((1, 0))
    assert RootElt((0, 1)).minus(RootElt((1, 0))) is None


# -- SuperScalar ring laws

@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a * ONE == a
    assert a - a == SuperScalar()


@given(scalars())
def test_pi_squares_to_one(a):
    assert a.flip().flip() == a


@given(scalars(), scalars())
def test_pi_specialization_is_ring_map(a, b):
    for sign in (1, -1):
        lhs = (a * b).at_pi(sign)
        pa, pb = a.at_pi(sign), b.at_pi(sign)
        rhs = {}
        for d1, c1 in pa.items():
            for d2, c2 in pb.items():
                rhs[d1 + d2] = rhs.get(d1 + d2, 0) + c1 * c2
        assert lhs == {d: c for d, c in rhs.items() if c}


@given(scalars(), scalars())
def test_divide_inverts_multiply(a, b):
    if b.is_zero():
        return
    assert (a * b).divide(b) == a


@given(scalars())
def test_json_roundtrip(a):
    assert SuperScalar.from_json(a.to_json()) == a


def test_superscalar_json_shape():
    x = SuperScalar({(0, 0): 1, (2, 1): 1})
    assert x.to_json() == {"even": {"0": 1}, "odd": {"2": 1}}
