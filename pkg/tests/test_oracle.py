import pytest

from qhsuper.cyclotomic import build_cyclotomic, engine
from qhsuper.foundations import preset
from qhsuper.oracle import (OracleError, brute_force_graded_dim, compare_graded_dims,
                            multiplicity_table, weight_multiplicity)
from qhsuper.qhsalg import graded_dim_total

A1, A1ODD, A2, B2 = (preset(n) for n in ("A1", "A1odd", "A2", "B2odd"))


# -- weight multiplicities

@pytest.mark.parametrize("datum", [A1, A1ODD])
@pytest.mark.parametrize("N", [0, 1, 2, 3])
def test_rank_one_string(datum, N):
    for n in range(N + 3):
        assert weight_multiplicity(datum, (N,), (n,)) == (1 if n <= N else 0)


def test_natural_a2():
    assert weight_multiplicity(A2, (1, 0), (0, 1)) == 0
    assert weight_multiplicity(A2, (1, 0), (1, 1)) == 1


def test_adjoint_a2_zero_weight():
    assert weight_multiplicity(A2, (1, 1), (1, 1)) == 2


@pytest.mark.parametrize("case", [(A2, (1, 0), 3), (A2, (1, 1), 8), (A2, (2, 0), 6), (B2, (1, 0), 4),
                                  (B2, (0, 1), 5), (B2, (1, 1), 16)])
def test_total_dimension(case):
    # Weyl dimension formula values for the modules involved
    datum, lam, dim = case
    assert sum(multiplicity_table(datum, lam, 12).values()) == dim


@pytest.mark.parametrize("datum", [A2, B2])
@pytest.mark.parametrize("lam", [(1, 0), (0, 1), (1, 1), (2, 1)])
def test_weyl_symmetry(datum, lam):
    table = multiplicity_table(datum, lam, 10)
    for beta, m in table.items():
        coroot = [lam[j] - sum(datum.cartan[j][k] * beta[k] for k in range(2)) for j in range(2)]
        for j in range(2):
            image = tuple(beta[k] + (coroot[j] if k == j else 0) for k in range(2))
            if min(image) < 0:
                # the reflected weight lies above the highest weight
                assert m == 0
            elif sum(image) <= 10:
                assert table[image] == m


@pytest.mark.parametrize("datum", [A1, A2, B2])
def test_top_weight_is_one(datum):
    lam = tuple(1 for _ in datum.labels)
    assert weight_multiplicity(datum, lam, tuple(0 for _ in datum.labels)) == 1


def test_non_dominant_rejected():
    with pytest.raises(OracleError):
        weight_multiplicity(A2, (1, -1), (0, 0))


# -- word-space dimensions

def test_single_strand_polynomial_ring():
    assert brute_force_graded_dim(A1, None, None, (1,), (0, 4), 3) == {0: 1, 2: 1, 4: 1}


def test_truncated_polynomial_ring():
    assert brute_force_graded_dim(A1ODD, None, (2,), (1,), (-2, 6), 3) == {0: 1, 2: 1}


def test_two_strand_lowest_piece():
    assert brute_force_graded_dim(A1ODD, None, None, (2,), (-2, -2), 3) == {-2: 1}


@pytest.mark.parametrize("case", [(A1, (2,)), (A1ODD, (2,)), (A2, (1, 1)), (B2, (1, 1))])
def test_agrees_with_pbw_count(case):
    datum, beta = case
    alg = engine(datum)
    rep = compare_graded_dims(datum, None, None, beta)
    assert rep["pass"], rep
    lo, hi = rep["window"]
    ch = graded_dim_total(alg, beta, hi).at_pi(1)
    assert {d: c for d, c in ch.items() if lo <= d <= hi} == {int(d): c for d, c in rep["oracle"].items() if c}


@pytest.mark.parametrize("case", [(A1ODD, (3,), (2,)), (A2, (1, 1), (1, 1)), (B2, (1, 1), (1, 1))])
def test_agrees_with_cyclotomic_quotient(case):
    datum, lam, beta = case
    rep = compare_graded_dims(datum, None, lam, beta)
    assert rep["pass"], rep
    lo, hi = rep["window"]
    dims = build_cyclotomic(datum, None, lam, beta).graded_dims()
    assert {d: c for d, c in dims.items() if lo <= d <= hi} == {int(d): c for d, c in rep["oracle"].items() if c}
