from fractions import Fraction

import pytest

from qhsuper.cyclotomic import build_cyclotomic, engine
from qhsuper.foundations import preset, roots_of_height
from qhsuper.groth import exactness_check
from qhsuper.linalg import mat_mul
from qhsuper.repcat import (RepcatError, composition_factors, crystal_data, dual_module, epsilon,
                            head, hom_space, identify, induce_i, is_isomorphic, is_simple,
                            parity_twist, radical_filtration, rank1_simple, regular_module,
                            restrict_i, simple_modules, split_semisimple, zero_module)

A1, A1ODD, A2, B2 = (preset(n) for n in ("A1", "A1odd", "A2", "B2odd"))

SUITES = [(A1, (2,)), (A1ODD, (2,)), (A2, (1, 0)), (A2, (1, 1))]


def cyc(datum, lam, beta):
    return build_cyclotomic(datum, None, lam, beta)


def roots(datum, h):
    return [b.counts for k in range(h + 1) for b in roots_of_height(datum, k)]


# -- regular modules

def test_regular_truncated_polynomial():
    M = regular_module(cyc(A1ODD, (2,), (1,)))
    assert M.graded_dims() == {0: 1, 2: 1}
    assert M.check_grading()
    assert M.relation_failures() == []


def test_regular_zero_algebra():
    assert regular_module(cyc(A2, (1, 0), (0, 1))).dim == 0


def test_regular_a2_single_strand():
    assert regular_module(cyc(A2, (1, 0), (1, 0))).graded_dims() == {0: 1}


@pytest.mark.parametrize("case", [(A1, (2,), (2,)), (A2, (1, 1), (1, 1)), (B2, (1, 1), (1, 0))])
def test_regular_satisfies_relations(case):
    M = regular_module(cyc(*case))
    assert M.check_grading()
    assert M.relation_failures() == []


# -- filtrations

def test_local_ring_filtration():
    f = radical_filtration(regular_module(cyc(A1ODD, (2,), (1,))))
    assert f["head"].graded_dims() == {0: 1}
    assert f["socle"].graded_dims() == {2: 1}


def test_semisimple_radical_zero():
    M = regular_module(cyc(A2, (1, 0), (1, 0)))
    assert radical_filtration(M)["radical"].dim == 0


@pytest.mark.parametrize("datum", [A1, A1ODD])
def test_rank_one_simple_is_its_head(datum):
    L = rank1_simple(engine(datum), 1, 2)
    assert is_simple(L)
    assert head(L).dim == L.dim


# -- simples

def test_local_algebra_single_simple():
    simples = simple_modules(cyc(A1ODD, (2,), (1,)))
    assert len(simples) == 1 and simples[0].module.dim == 1


def test_zero_algebra_no_simples():
    assert simple_modules(cyc(A2, (1, 0), (0, 1))) == []


def test_level_two_two_strands_single_simple():
    assert len(simple_modules(cyc(A1, (2,), (2,)))) == 1


@pytest.mark.parametrize("suite", SUITES)
def test_simples_self_dual_and_absolutely_irreducible(suite):
    datum, lam = suite
    for beta in roots(datum, 2):
        for rec in simple_modules(cyc(datum, lam, beta)):
            L = rec.module
            assert rec.dual_shifts == [rec.shift]
            assert is_isomorphic(dual_module(L), L) is not None
            assert len(hom_space(L, L)) == 1


# -- duality and parity

@pytest.mark.parametrize("case", [(A1ODD, (2,), (2,)), (A2, (1, 1), (1, 1))])
def test_double_dual(case):
    M = regular_module(cyc(*case))
    assert is_isomorphic(dual_module(dual_module(M)), M) is not None


def test_dual_negates_degrees():
    M = regular_module(cyc(A1ODD, (2,), (2,)))
    ch, chd = M.character().at_pi(1), dual_module(M).character().at_pi(1)
    assert chd == {-d: c for d, c in ch.items()}


def test_dual_of_trivial():
    M = regular_module(cyc(A2, (1, 0), (1, 0)))
    assert is_isomorphic(dual_module(M), M) is not None


@pytest.mark.parametrize("case", [(A1ODD, (2,), (2,)), (B2, (1, 1), (1, 1))])
def test_parity_twist_involution(case):
    M = regular_module(cyc(*case))
    twice = parity_twist(parity_twist(M))
    assert all(twice.mat(k) == M.mat(k) for k in M.keys())


@pytest.mark.parametrize("case", [(A1ODD, (2,), (2,)), (B2, (1, 1), (1, 1)), (A1ODD, (3,), (2,))])
def test_parity_twist_of_simples(case):
    for rec in simple_modules(cyc(*case)):
        assert is_isomorphic(parity_twist(rec.module), rec.module) is not None


def test_parity_twist_of_regular():
    # the parity involution itself intertwines: it is the sign on odd basis vectors
    R = cyc(A1ODD, (2,), (1,))
    M = regular_module(R)
    sign = {k: {k: Fraction(-1 if p else 1)} for k, p in enumerate(R.parities)}
    P = parity_twist(M)
    for key in M.keys():
        assert mat_mul(sign, M.mat(key)) == mat_mul(P.mat(key), sign)


# -- isomorphism

def test_isomorphic_to_itself():
    M = regular_module(cyc(A1ODD, (2,), (2,)))
    assert is_isomorphic(M, M) is not None


def test_different_dims_not_isomorphic():
    M = regular_module(cyc(A1ODD, (2,), (1,)))
    assert is_isomorphic(M, M.shift(1)) is None


# -- restriction and induction

def test_restriction_at_first_step_is_everything():
    R = cyc(A1ODD, (2,), (1,))
    E = restrict_i(regular_module(R), 1)
    assert E.graded_dims() == R.graded_dims()


def test_restriction_wrong_color_vanishes():
    M = regular_module(cyc(A2, (1, 0), (1, 0)))
    assert restrict_i(M, 2).dim == 0


def test_epsilon_rank_one():
    for n in (1, 2, 3):
        assert epsilon(rank1_simple(engine(A1ODD), 1, n), 1) == n


def test_induce_from_trivial():
    (triv,) = simple_modules(cyc(A1ODD, (2,), (0,)))
    assert induce_i(triv.module, 1).graded_dims() == {0: 1, 2: 1}


def test_induce_zero_module():
    Z = zero_module(engine(A1), (1,), (2,))
    assert induce_i(Z, 1).dim == 0


def test_induce_a2_crystal_pattern():
    (triv,) = simple_modules(cyc(A2, (1, 0), (0, 0)))
    assert induce_i(triv.module, 2).dim == 0
    assert induce_i(induce_i(triv.module, 1), 2).dim > 0


@pytest.mark.parametrize("case", [(A1, (2,), (1,), 1), (A2, (1, 1), (1, 0), 2), (A2, (1, 1), (0, 1), 1),
                                  (A1ODD, (2,), (1,), 1)])
def test_frobenius_reciprocity(case):
    datum, lam, beta, i = case
    small = cyc(datum, lam, beta)
    big_beta = tuple(c + (1 if j == i else 0) for j, c in zip(datum.labels, beta))
    big = cyc(datum, lam, big_beta)
    sources = [regular_module(small)] + [r.module for r in simple_modules(small)]
    targets = [regular_module(big)] + [r.module for r in simple_modules(big)]
    for M in sources:
        F = induce_i(M, i)
        for N in targets:
            E = restrict_i(N, i)
            for r in range(-6, 7):
                assert len(hom_space(F, N.shift(r))) == len(hom_space(M, E.shift(r)))


# -- composition series and exactness

@pytest.mark.parametrize("case", [(A1, (2,), (2,)), (A1ODD, (2,), (2,)), (A2, (1, 1), (1, 1)),
                                  (B2, (1, 1), (1, 0))])
def test_composition_factors_reproduce_character(case):
    R = cyc(*case)
    records = simple_modules(R)
    M = regular_module(R)
    total = {}
    for (k, r), mult in composition_factors(M, records).items():
        for d, c in records[k].module.shift(r).character().at_pi(1).items():
            total[d] = total.get(d, 0) + mult * c
    assert {d: c for d, c in total.items() if c} == M.character().at_pi(1)


@pytest.mark.parametrize("case", [(A1ODD, (2,), (2,), 1), (A2, (1, 1), (1, 1), 1), (A2, (1, 1), (1, 1), 2)])
def test_restriction_additive(case):
    datum, lam, beta, i = case
    assert exactness_check(regular_module(cyc(datum, lam, beta)), i)


def test_split_semisimple_counts():
    M = regular_module(cyc(A2, (1, 1), (1, 1)))
    layer = radical_filtration(M)["head"]
    assert sum(S.dim for S in split_semisimple(layer)) == layer.dim


# -- crystal operators

@pytest.mark.parametrize("beta", [(0, 0), (1, 0), (1, 1)])
def test_crystal_e_after_f(beta):
    for rec in simple_modules(cyc(A2, (1, 0), beta)):
        for i in (1, 2):
            f = crystal_data(rec.module, i)["f_tilde"]
            back = crystal_data(f, i)["e_tilde"]
            assert identify(back, [rec]) == (0, 0)


@pytest.mark.parametrize("suite", [(A2, (1, 0)), (A1ODD, (2,)), (A2, (1, 1))])
def test_crystal_f_after_e(suite):
    datum, lam = suite
    for beta in roots(datum, 2):
        for rec in simple_modules(cyc(datum, lam, beta)):
            for i in datum.labels:
                data = crystal_data(rec.module, i)
                if data["eps"] == 0:
                    assert data["e_tilde"] is None
                    continue
                again = crystal_data(data["e_tilde"], i)["f_tilde"]
                assert identify(again, [rec]) == (0, 0)


def test_crystal_needs_simple():
    with pytest.raises(RepcatError):
        crystal_data(regular_module(cyc(A1ODD, (2,), (1,))), 1)
