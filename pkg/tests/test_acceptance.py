"""Criteria 1-10, each run at desk scale with exact rational arithmetic.

Every test appends one summary line that is echoed at the end of the pytest run.
"""
from itertools import product

import pytest

import conftest
from qhsuper.cyclotomic import build_cyclotomic, engine, integrability_report, verify_qp_identity
from qhsuper.foundations import preset, roots_of_height, super_quantum_factorial
from qhsuper.groth import (compare_with_oracle, verify_boson_relation, verify_mackey,
                           verify_pi_invariance, verify_sl2_commutation, verify_strong_perfect)
from qhsuper.oracle import compare_graded_dims
from qhsuper.qhsalg import (divided_power_character_direct, graded_dim_total,
                            intertwiner_failures, nil_braid_data, relation_failures)
from qhsuper.repcat import dual_module, is_isomorphic, simple_modules

pytestmark = pytest.mark.slow

PRESETS = {name: preset(name) for name in conftest.PRESET_NAMES}

# highest weights per datum: the fundamental weight and its double in rank one,
# the first fundamental weight and the sum of both in rank two
SUITES = [("A1", (1,)), ("A1", (2,)), ("A1odd", (1,)), ("A1odd", (2,)),
          ("A2", (1, 0)), ("A2", (1, 1)), ("B2odd", (1, 0)), ("B2odd", (1, 1))]


def roots(datum, top, low=0):
    return [b.counts for k in range(low, top + 1) for b in roots_of_height(datum, k)]


def report(number, failures, total, note=""):
    ok = not failures and total > 0
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({total} checks, {len(failures)} failed){note}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    for f in failures[:5]:
        print("  failed:", f)
    assert ok, line


def test_criterion_1_relations():
    failures, total = [], 0
    for name, datum in PRESETS.items():
        alg = engine(datum)
        for n in (1, 2, 3):
            total += 1
            bad = relation_failures(alg, n)
            if bad:
                failures.append((name, n, [str(b) for b in bad[:3]]))
    report(1, failures, total)


def test_criterion_2_dimensions():
    failures, total = [], 0
    for name, datum in PRESETS.items():
        for beta in roots(datum, 3, low=1):
            total += 1
            rep = compare_graded_dims(datum, None, None, beta)
            if not rep["pass"]:
                failures.append((name, None, beta))
    for name, lam in SUITES:
        datum = PRESETS[name]
        for beta in roots(datum, 2, low=1):
            total += 1
            rep = compare_graded_dims(datum, None, lam, beta)
            if not rep["pass"]:
                failures.append((name, lam, beta))
    report(2, failures, total)


def test_criterion_3_braid_and_divided_powers():
    failures, total = [], 0
    for name in ("A1", "A1odd"):
        datum = PRESETS[name]
        alg = engine(datum)
        for n in (1, 2, 3, 4):
            total += 1
            data = nil_braid_data(alg, 1, n, 12)
            if not (data["braid_ok"] and data["idempotent_ok"]):
                failures.append((name, "braid", n))
        for n in (1, 2, 3):
            total += 1
            fac = super_quantum_factorial(datum, n, 1)
            lhs = graded_dim_total(alg, (n,), 12)
            rhs = (fac * divided_power_character_direct(alg, 1, n, 12 - fac.min_degree())).truncate(12)
            if lhs != rhs:
                failures.append((name, "divided power", n))
    report(3, failures, total)


def test_criterion_4_intertwiners():
    failures, total = [], 0
    for name, datum in PRESETS.items():
        alg = engine(datum)
        for kind in ("phi", "g"):
            total += 1
            if intertwiner_failures(alg, 3, kind):
                failures.append((name, kind))
    for name, lam in SUITES:
        if name not in ("A1odd", "A2"):
            continue
        datum = PRESETS[name]
        for beta in roots(datum, 2):
            for i in datum.labels:
                total += 1
                if not verify_qp_identity(datum, None, lam, beta, i)["pass"]:
                    failures.append((name, lam, beta, i))
    report(4, failures, total)


def sl2_instances():
    for name, lam in SUITES:
        datum = PRESETS[name]
        for beta in roots(datum, 2):
            for i, j in product(datum.labels, repeat=2):
                yield datum, lam, beta, i, j


def test_criterion_5_sl2():
    failures, total, signs, distinct = [], 0, set(), 0
    for datum, lam, beta, i, j in sl2_instances():
        total += 1
        rep = verify_sl2_commutation(datum, None, lam, beta, i, j)
        if i == j:
            h = rep["instance"]["h"]
            signs.add((h > 0) - (h < 0))
            ok = rep["pass"] and rep["scalar_identity"]
        else:
            distinct += 1
            ok = rep["pass"]
        if not ok:
            failures.append((datum.name, lam, beta, i, j))
    if not {-1, 1} <= signs:
        failures.append(("sign coverage", sorted(signs)))
    if not distinct:
        failures.append(("no i != j instance",))
    report(5, failures, total, f"; h signs seen {sorted(signs)}, {distinct} with i != j")


def test_criterion_6_parity_and_self_duality():
    failures, total = [], 0
    for name, lam in SUITES:
        datum = PRESETS[name]
        for beta in roots(datum, 2):
            rep = verify_pi_invariance(datum, None, lam, beta)
            for row in rep["simples"]:
                total += 1
                if not (row["pi_witness"] and len(row["self_dual_shifts"]) == 1 and row["pass"]):
                    failures.append((name, lam, beta, row))
            if not rep["pass"]:
                failures.append((name, lam, beta))
    report(6, failures, total)


def test_criterion_7_strong_perfect():
    failures, total = [], 0
    for name, lam in SUITES:
        datum = PRESETS[name]
        for beta in roots(datum, 2, low=1):
            for i in datum.labels:
                rep = verify_strong_perfect(datum, None, lam, beta, i)
                total += len(rep["simples"])
                if not rep["pass"]:
                    failures.append((name, lam, beta, i))
    report(7, failures, total)


def test_criterion_8_headcounts():
    failures, total = [], 0
    cases = [("A1", (2,), 3), ("A1odd", (2,), 3), ("A2", (1, 0), 3), ("A2", (1, 1), 2)]
    for name, lam, h in cases:
        rep = compare_with_oracle(PRESETS[name], None, lam, h)
        for row in rep["table"]:
            total += 1
            if not row["pass"]:
                failures.append((name, lam, row))
        if not rep["pass"]:
            failures.append((name, lam))
    # the zero weight of the adjoint representation carries two simples
    A2 = PRESETS["A2"]
    records = simple_modules(build_cyclotomic(A2, None, (1, 1), (1, 1)))
    total += 1
    self_dual = [r for r in records if is_isomorphic(dual_module(r.module), r.module) is not None]
    if len(self_dual) != 2:
        failures.append(("A2 adjoint zero weight", len(self_dual)))
    report(8, failures, total)


def test_criterion_9_integrability():
    failures, total = [], 0
    # two steps past the bound here needs a 7-strand direct build, above the scale guard
    refused = {("B2odd", (1, 1), (0, 2), 1)}
    for name, lam in SUITES:
        datum = PRESETS[name]
        for beta in roots(datum, 2):
            for i in datum.labels:
                if (name, lam, beta, i) in refused:
                    continue
                rep = integrability_report(datum, None, lam, beta, i)
                total += len(rep["vanishing"])
                if not rep["pass"] or len(rep["vanishing"]) != 3:
                    failures.append((name, lam, beta, i, rep["vanishing"]))
    report(9, failures, total, f"; {len(refused)} instance left to the scale guard")


def test_criterion_10_boson_and_mackey():
    failures, total = [], 0
    for name, lam in SUITES:
        datum = PRESETS[name]
        for beta in roots(datum, 2):
            for rec in simple_modules(build_cyclotomic(datum, None, lam, beta)):
                for i, j in product(datum.labels, repeat=2):
                    total += 1
                    if not verify_boson_relation(rec.module, i, j)["pass"]:
                        failures.append(("boson", name, lam, beta, i, j))
    for name, datum in PRESETS.items():
        rs = [r for k in range(3) for r in roots_of_height(datum, k)]
        for a, b, a2 in product(rs, repeat=3):
            b2 = (a + b).minus(a2)
            if b2 is None or b2.height > 2:
                continue
            total += 1
            if not verify_mackey(datum, None, a, b, a2, b2, max_deg=6)["pass"]:
                failures.append(("mackey", name, a.counts, b.counts, a2.counts))
    report(10, failures, total)
