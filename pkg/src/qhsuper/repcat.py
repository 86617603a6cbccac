"""Finite-dimensional graded modules over R(beta) and R^Lambda(beta).

A module is a homogeneous basis with degrees plus one sparse matrix per
generator key: ('e', nu) for idempotents, ('x', k) and ('t', k) for
x_{k+1} and tau_{k+1} summed over idempotents.  Matrices are stored as
{row: {col: c}} and act on column vectors.

Splitting a generator by idempotents gives homogeneous keys
('e', nu), ('x', k, nu) = x_{k+1} e(nu) and ('t', k, nu) = tau_{k+1} e(nu);
relations, radicals and tensor products are built from those.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import random

import sympy

from .cyclotomic import build_cyclotomic
from .foundations import SuperScalar, as_root, sequences
from .linalg import Echelon, mat_mul, mat_vec, nullspace, rank, trace_of_product, transpose
from .qhsalg import act, all_perms, canonical_word, relation_instances, simple_rank1_module


class RepcatError(ValueError):
    pass


def generator_keys(n, seqs):
    keys = [("e", nu) for nu in seqs]
    keys += [("x", k) for k in range(n)]
    keys += [("t", k) for k in range(n - 1)]
    return keys


def _restrict_matrix(m, pos):
    """Submatrix on the index set pos (old index -> new index)."""
    out = {}
    for r, row in m.items():
        if r not in pos:
            continue
        new = {pos[c]: x for c, x in row.items() if c in pos}
        if new:
            out[pos[r]] = new
    return out


def _mat_sum(mats):
    out = {}
    for m in mats:
        for r, row in m.items():
            acc = out.setdefault(r, {})
            for c, x in row.items():
                y = acc.get(c, 0) + x
                if y:
                    acc[c] = y
                else:
                    acc.pop(c, None)
    return {r: row for r, row in out.items() if row}


def _scaled(m, c):
    return {r: {k: c * x for k, x in row.items()} for r, row in m.items()} if c else {}


def _identity(dim):
    return {k: {k: Fraction(1)} for k in range(dim)}


class GradedModule:
    """Graded module given by generator matrices.

    ``lam`` is the cyclotomic weight for modules over R^Lambda(beta) and
    None for modules over R(beta).  ``parities`` is tracked only where a
    Z/2-grading is genuinely present (algebra truncations).
    """

    def __init__(self, alg, beta, degrees, action, lam=None, parities=None):
        self.alg = alg
        self.datum = alg.datum
        self.beta = as_root(beta)
        self.seqs = sequences(self.datum, self.beta)
        self.n = self.beta.height
        self.degrees = list(degrees)
        self.parities = None if parities is None else list(parities)
        self.lam = None if lam is None else tuple(lam)
        self.action = {}
        for key, m in action.items():
            m = {r: dict(row) for r, row in m.items() if row}
            if m:
                self.action[key] = m
        self._homog = None

    @property
    def dim(self):
        return len(self.degrees)

    def keys(self):
        return generator_keys(self.n, self.seqs)

    def mat(self, key):
        return self.action.get(key, {})

    def graded_dims(self):
        out = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def character(self):
        """Graded dimension; the pi-part is filled only when parities are tracked."""
        terms = {}
        pars = self.parities or [0] * self.dim
        for d, p in zip(self.degrees, pars):
            terms[(d, p)] = terms.get((d, p), 0) + 1
        return SuperScalar(terms)

    def support(self):
        return tuple(nu for nu in self.seqs if self.mat(("e", nu)))

    def homogeneous(self):
        """[(key, matrix, degree, parity)] for idempotent-split generators."""
        if self._homog is None:
            d = self.datum
            out = []
            for nu in self.seqs:
                E = self.mat(("e", nu))
                if not E:
                    continue
                out.append((("e", nu), E, 0, 0))
                for k in range(self.n):
                    m = mat_mul(self.mat(("x", k)), E)
                    if m:
                        out.append((("x", k, nu), m, d.form(nu[k], nu[k]), d.p(nu[k])))
                for k in range(self.n - 1):
                    m = mat_mul(self.mat(("t", k)), E)
                    if m:
                        out.append((("t", k, nu), m, -d.form(nu[k], nu[k + 1]),
                                    d.p(nu[k]) * d.p(nu[k + 1])))
            self._homog = out
        return self._homog

    def homogeneous_map(self):
        return {key: m for key, m, _, _ in self.homogeneous()}

    def check_grading(self):
        """Every homogeneous generator shifts degrees (and parities) uniformly."""
        for key, m, deg, par in self.homogeneous():
            for r, row in m.items():
                for c in row:
                    if self.degrees[r] - self.degrees[c] != deg:
                        return False
                    if self.parities and (self.parities[r] - self.parities[c] - par) % 2:
                        return False
        return True

    def monomial_matrix(self, mono):
        """Action of the PBW monomial x^a tau_w e(nu)."""
        a, w, nu = mono
        m = self.mat(("e", nu))
        for k in reversed(canonical_word(w)):
            m = mat_mul(self.mat(("t", k)), m)
        for k in reversed(range(len(a))):
            for _ in range(a[k]):
                m = mat_mul(self.mat(("x", k)), m)
        return m

    def element_matrix(self, elem):
        return _mat_sum(_scaled(self.monomial_matrix(m), Fraction(c)) for m, c in elem.terms.items())

    def relation_failures(self):
        """Defining relations that fail on the module, plus the cyclotomic one."""
        if self.n == 0:
            return []
        bad = []
        for label, lhs, rhs in relation_instances(self.alg, self.n):
            if self.element_matrix(lhs - rhs):
                bad.append(label)
        if self.lam is not None:
            for nu in self.seqs:
                k = self.lam[self.datum.index(nu[0])]
                m = self.mat(("e", nu))
                for _ in range(k):
                    m = mat_mul(self.mat(("x", 0)), m)
                if m:
                    bad.append(f"cyclotomic[{','.join(map(str, nu))}]")
        return bad

    def shift(self, r):
        """q^r M: the degree-d piece moves to degree d + r."""
        return GradedModule(self.alg, self.beta, [d + r for d in self.degrees], self.action,
                            self.lam, self.parities)

    def to_json(self):
        return {"beta": list(self.beta.counts), "dim": self.dim,
                "graded_dims": {str(d): c for d, c in self.graded_dims().items()},
                "support": [[str(i) for i in nu] for nu in self.support()]}


# ---------------------------------------------------------------- constructors

def zero_module(alg, beta, lam=None):
    return GradedModule(alg, beta, [], {}, lam)


def regular_module(algebra):
    """Left regular representation of a CycloAlgebra."""
    keys = generator_keys(algebra.n, algebra.seqs)
    if algebra.dim == 0:
        return zero_module(algebra.alg, algebra.beta, algebra.lam)
    action = {}
    for key in keys:
        if key[0] == "e" and key[1] in algebra.dead:
            continue
        action[key] = algebra.left_action(key)
    return GradedModule(algebra.alg, algebra.beta, algebra.degrees, action, algebra.lam,
                        algebra.parities)


def rank1_simple(alg, i, n):
    """L(i^n) over R(n alpha_i) as a GradedModule."""
    data = simple_rank1_module(alg, i, n)
    nu = data["nu"]
    action = {("e", nu): data["gens"][("e", nu)]}
    for k in range(n):
        action[("x", k)] = data["gens"][("x", k, nu)]
    for k in range(n - 1):
        action[("t", k)] = data["gens"][("t", k, nu)]
    return GradedModule(alg, data["beta"], data["degrees"], action)


# ---------------------------------------------------------------- subspaces

def _parts(M, v):
    """Split a vector into homogeneous pieces."""
    pars = M.parities
    out = {}
    for k, x in v.items():
        key = (M.degrees[k], pars[k] if pars else 0)
        out.setdefault(key, {})[k] = x
    return list(out.values())


def _closure(M, vectors):
    """Echelon basis of the submodule generated by the vectors."""
    ech = Echelon()
    queue = []
    for v in vectors:
        for part in _parts(M, v):
            if ech.add(part):
                queue.append(part)
    gens = [m for _, m, _, _ in M.homogeneous()]
    while queue:
        v = queue.pop()
        for g in gens:
            w = mat_vec(g, v)
            if w and ech.add(w):
                queue.append(w)
    return ech


def _span(M, vectors):
    ech = Echelon()
    for v in vectors:
        for part in _parts(M, v):
            ech.add(part)
    return ech


def _columns(m):
    return transpose(m)


def restricted(M, ech, keymap=None, beta=None, lam="same"):
    """Module structure on the subspace spanned by ech (must be stable)."""
    rows = ech.reduced_rows()
    pivots = sorted(rows)
    pos = {p: j for j, p in enumerate(pivots)}
    keymap = keymap if keymap is not None else {k: M.mat(k) for k in M.keys()}
    action = {}
    for key, G in keymap.items():
        mat = {}
        for j, p in enumerate(pivots):
            img = mat_vec(G, rows[p])
            if not img:
                continue
            if ech.reduce(img):
                raise RepcatError(f"subspace not stable under {key}")
            for q in img:
                if q in pos:
                    mat.setdefault(pos[q], {})[j] = img[q]
        action[key] = mat
    pars = [M.parities[p] for p in pivots] if M.parities else None
    return GradedModule(M.alg, M.beta if beta is None else beta, [M.degrees[p] for p in pivots],
                        action, M.lam if lam == "same" else lam, pars)


def quotient(M, ech):
    """M / span(ech); basis = the columns that are not pivots."""
    free = [c for c in range(M.dim) if c not in ech.rows]
    pos = {c: j for j, c in enumerate(free)}
    action = {}
    for key in M.keys():
        cols = _columns(M.mat(key))
        mat = {}
        for j, c in enumerate(free):
            img = ech.reduce(cols.get(c, {}))
            for q, x in img.items():
                mat.setdefault(pos[q], {})[j] = x
        action[key] = mat
    pars = [M.parities[c] for c in free] if M.parities else None
    return GradedModule(M.alg, M.beta, [M.degrees[c] for c in free], action, M.lam, pars)


def submodule(M, vectors):
    return restricted(M, _closure(M, vectors))


# ---------------------------------------------------------------- radical

def _flat(m, dim):
    return {r * dim + c: x for r, row in m.items() for c, x in row.items()}


def acting_algebra(M):
    """Homogeneous basis [(matrix, degree)] of the image of the algebra in End(M)."""
    dim = M.dim
    gens = M.homogeneous()
    echs = {}
    basis = []
    queue = []

    def add(m, d):
        if echs.setdefault(d, Echelon()).add(_flat(m, dim)):
            basis.append((m, d))
            queue.append((m, d))

    for key, E, _, _ in gens:
        if key[0] == "e":
            add(E, 0)
    while queue:
        m, d = queue.pop()
        for key, g, dg, _ in gens:
            if key[0] == "e":
                continue
            p = mat_mul(g, m)
            if p:
                add(p, d + dg)
    return basis


def radical_of_action(M):
    """Jacobson radical of the acting algebra via the trace form.

    In characteristic 0 the radical of a matrix algebra A is
    {a : tr(ab) = 0 for all b in A}.  A homogeneous product of nonzero
    degree has zero diagonal, so degree d only pairs with degree -d.
    """
    by_deg = {}
    for m, d in acting_algebra(M):
        by_deg.setdefault(d, []).append(m)
    rad = []
    for d in sorted(by_deg):
        ms = by_deg[d]
        opp = by_deg.get(-d, [])
        rows = []
        for b in opp:
            row = {}
            for s, a in enumerate(ms):
                t = trace_of_product(a, b)
                if t:
                    row[s] = t
            if row:
                rows.append(row)
        for v in nullspace(rows, len(ms)):
            combo = _mat_sum(_scaled(ms[s], c) for s, c in v.items())
            if combo:
                rad.append(combo)
    return rad


def _image_vectors(mats, vectors):
    out = []
    for J in mats:
        for v in vectors:
            w = mat_vec(J, v)
            if w:
                out.append(w)
    return out


def radical_filtration(M):
    """rad M = J M, head = M / J M and soc M = {v : J v = 0} for J the radical."""
    J = radical_of_action(M)
    unit = [{k: Fraction(1)} for k in range(M.dim)]
    rad_ech = _span(M, _image_vectors(J, unit))
    rows = []
    for m in J:
        rows.extend(row for row in m.values() if row)
    soc_vectors = nullspace(rows, M.dim)
    soc_ech = _span(M, soc_vectors)
    return {"radical": restricted(M, rad_ech), "head": quotient(M, rad_ech),
            "socle": restricted(M, soc_ech), "radical_ops": J,
            "radical_span": rad_ech, "socle_span": soc_ech}


def radical(M):
    return radical_filtration(M)["radical"]


def head(M):
    return radical_filtration(M)["head"]


def socle(M):
    return radical_filtration(M)["socle"]


def radical_layers(M):
    """Successive heads of M, rad M, rad^2 M, ..."""
    layers = []
    cur = M
    while cur.dim:
        f = radical_filtration(cur)
        layers.append(f["head"])
        cur = f["radical"]
    return layers


# ---------------------------------------------------------------- homomorphisms

def hom_space(M, N):
    """Basis of degree-0 module maps M -> N, as matrices {row in N: {col in M: c}}."""
    unknowns = {}
    for p in range(N.dim):
        for q in range(M.dim):
            if N.degrees[p] == M.degrees[q]:
                unknowns[(p, q)] = len(unknowns)
    if not unknowns:
        return []
    keys = set(M.keys()) | set(N.keys())
    eqs = []
    for key in sorted(keys, key=repr):
        GM, GN = M.mat(key), N.mat(key)
        GNT = transpose(GN)
        eq = {}
        for (p, q), u in unknowns.items():
            for r, c in GM.get(q, {}).items():
                row = eq.setdefault((p, r), {})
                row[u] = row.get(u, 0) + c
            for p2, c in GNT.get(p, {}).items():
                row = eq.setdefault((p2, q), {})
                row[u] = row.get(u, 0) - c
        eqs.extend({u: c for u, c in row.items() if c} for row in eq.values())
    inv = {u: pq for pq, u in unknowns.items()}
    out = []
    for v in nullspace([e for e in eqs if e], len(unknowns)):
        m = {}
        for u, c in v.items():
            p, q = inv[u]
            m.setdefault(p, {})[q] = c
        out.append(m)
    return out


def _is_invertible(m, dim):
    return rank([row for row in m.values()]) == dim


def _candidates(basis, seed=0, tries=24):
    yield from basis
    rng = random.Random(seed)
    for _ in range(tries):
        yield _mat_sum(_scaled(b, Fraction(rng.randint(-3, 3))) for b in basis)


def is_isomorphic(M, N):
    """A degree-0 invertible intertwiner M -> N, or None."""
    if M.graded_dims() != N.graded_dims() or M.beta != N.beta:
        return None
    if M.dim == 0:
        return {}
    basis = hom_space(M, N)
    if not basis:
        return None
    for X in _candidates(basis):
        if _is_invertible(X, M.dim):
            return X
    return None


def is_simple(M):
    if M.dim == 0:
        return False
    if radical_of_action(M):
        return False
    return len(hom_space(M, M)) == 1


# ---------------------------------------------------------------- twists

def dual_module(M):
    """Q-dual with the action through psi, which fixes every generator."""
    action = {key: transpose(m) for key, m in M.action.items()}
    return GradedModule(M.alg, M.beta, [-d for d in M.degrees], action, M.lam, M.parities)


def parity_twist(M):
    """Pi M: a generator acts through the parity involution, i.e. with the
    sign (-1)^{parity} on each idempotent component."""
    d = M.datum
    action = {}
    for nu in M.seqs:
        E = M.mat(("e", nu))
        if E:
            action[("e", nu)] = E
    parts = {}
    for nu in M.seqs:
        E = M.mat(("e", nu))
        if not E:
            continue
        for k in range(M.n):
            s = -1 if d.p(nu[k]) else 1
            parts.setdefault(("x", k), []).append(_scaled(mat_mul(M.mat(("x", k)), E), s))
        for k in range(M.n - 1):
            s = -1 if d.p(nu[k]) * d.p(nu[k + 1]) else 1
            parts.setdefault(("t", k), []).append(_scaled(mat_mul(M.mat(("t", k)), E), s))
    for key, ms in parts.items():
        action[key] = _mat_sum(ms)
    return GradedModule(M.alg, M.beta, M.degrees, action, M.lam, M.parities)


# ---------------------------------------------------------------- restriction

def _lower(beta, datum, i):
    a = datum.index(i)
    c = list(beta.counts)
    if c[a] == 0:
        return None
    c[a] -= 1
    return as_root(tuple(c))


def _raise(beta, datum, i):
    a = datum.index(i)
    c = list(beta.counts)
    c[a] += 1
    return as_root(tuple(c))


def restrict_i(M, i):
    """E_i M = e(beta - alpha_i, i) M as a module over R(beta - alpha_i)."""
    low = _lower(M.beta, M.datum, i)
    if low is None:
        return zero_module(M.alg, M.beta, M.lam)
    P = _mat_sum(M.mat(("e", nu)) for nu in M.seqs if nu[-1] == i)
    image = [v for v in transpose(P).values() if v]
    ech = _span(M, image)
    n = low.height
    keymap = {}
    for nu in sequences(M.datum, low):
        keymap[("e", nu)] = M.mat(("e", nu + (i,)))
    for k in range(n):
        keymap[("x", k)] = M.mat(("x", k))
    for k in range(n - 1):
        keymap[("t", k)] = M.mat(("t", k))
    return restricted(M, ech, keymap, beta=low)


def epsilon(M, i):
    """max k with e(beta - k alpha_i, i^k) M != 0."""
    k = 0
    while k < M.n:
        tail = (i,) * (k + 1)
        if any(nu[-(k + 1):] == tail and M.mat(("e", nu)) for nu in M.seqs):
            k += 1
        else:
            break
    return k


# ---------------------------------------------------------------- tensor products

@dataclass
class _Bimodule:
    """Basis with degrees, a left action by big generators and a right
    action by homogeneous small generators (keys as in homogeneous())."""
    degrees: list
    left: dict
    right: dict
    parities: list = None


def _tensor(V, M, alg, beta, lam, window=None, left_keys=None):
    """V (x)_B M as the cokernel of v.g (x) m - v (x) g.m over homogeneous g."""
    inside = (lambda d: True) if window is None else (lambda d: window[0] <= d <= window[1])
    cols = {}
    for v, dv in enumerate(V.degrees):
        for m, dm in enumerate(M.degrees):
            if inside(dv + dm):
                cols[(v, m)] = len(cols)
    Mh = M.homogeneous_map()
    ech = Echelon()
    for key, R in V.right.items():
        RT = transpose(R)
        LT = transpose(Mh.get(key, {}))
        for v in range(len(V.degrees)):
            vr = RT.get(v, {})
            for m in range(M.dim):
                ml = LT.get(m, {})
                if not vr and not ml:
                    continue
                rel = {}
                for v2, c in vr.items():
                    col = cols.get((v2, m))
                    if col is None:
                        break
                    rel[col] = rel.get(col, 0) + c
                else:
                    for m2, c in ml.items():
                        col = cols.get((v, m2))
                        if col is None:
                            break
                        rel[col] = rel.get(col, 0) - c
                    else:
                        rel = {k: x for k, x in rel.items() if x}
                        if rel:
                            ech.add(rel)
    inv = {c: vm for vm, c in cols.items()}
    free = [c for c in range(len(cols)) if c not in ech.rows]
    pos = {c: j for j, c in enumerate(free)}
    degrees = [V.degrees[inv[c][0]] + M.degrees[inv[c][1]] for c in free]
    parities = None
    if V.parities is not None and M.parities is not None:
        parities = [(V.parities[inv[c][0]] + M.parities[inv[c][1]]) % 2 for c in free]
    action = {}
    for key in (left_keys if left_keys is not None else V.left):
        LV = transpose(V.left.get(key, {}))
        mat = {}
        for j, c in enumerate(free):
            v, m = inv[c]
            img = {}
            for v2, x in LV.get(v, {}).items():
                col = cols.get((v2, m))
                if col is not None:
                    img[col] = img.get(col, 0) + x
            for q, x in ech.reduce({k: y for k, y in img.items() if y}).items():
                mat.setdefault(pos[q], {})[j] = x
        action[key] = mat
    return GradedModule(alg, beta, degrees, action, lam, parities)


def _small_right_keys(datum, seqs, n):
    """Homogeneous small generators and the big keys whose product realizes them."""
    out = []
    for nu in seqs:
        out.append((("e", nu), None))
        for k in range(n):
            out.append((("x", k, nu), ("x", k)))
        for k in range(n - 1):
            out.append((("t", k, nu), ("t", k)))
    return out


def algebra_bimodule(big, j, side="left"):
    """R^Lambda(gamma) e(gamma - alpha_j, j) with its right action of the smaller
    algebra (side='left'), or e(gamma - alpha_j, j) R^Lambda(gamma) with its
    left action (side='right', returned as a GradedModule)."""
    datum = big.datum
    low = _lower(big.beta, datum, j)
    small_seqs = sequences(datum, low)
    n = low.height
    if side == "left":
        idx = [k for k, (a, w, nu) in enumerate(big.basis) if nu[-1] == j]
    else:
        idx = [k for k, (a, w, nu) in enumerate(big.basis) if act(w, nu)[-1] == j]
    pos = {k: t for t, k in enumerate(idx)}
    degrees = [big.degrees[k] for k in idx]
    parities = [big.parities[k] for k in idx]
    if side == "right":
        action = {}
        for nu in small_seqs:
            action[("e", nu)] = _restrict_matrix(big.left_action(("e", nu + (j,))), pos)
        for k in range(n):
            action[("x", k)] = _restrict_matrix(big.left_action(("x", k)), pos)
        for k in range(n - 1):
            action[("t", k)] = _restrict_matrix(big.left_action(("t", k)), pos)
        return GradedModule(big.alg, low, degrees, action, big.lam, parities)
    right = {}
    for key, gen in _small_right_keys(datum, small_seqs, n):
        nu = key[-1]
        Re = big.right_action(("e", nu + (j,)))
        m = Re if gen is None else mat_mul(Re, big.right_action(gen))
        right[key] = _restrict_matrix(m, pos)
    left = {key: _restrict_matrix(big.left_action(key), pos)
            for key in generator_keys(big.n, big.seqs)}
    return _Bimodule(degrees, left, right, parities)


def tensor_over(bimodule, M, alg, beta, lam):
    """bimodule (x)_{R^Lambda(beta(M))} M."""
    return _tensor(bimodule, M, alg, beta, lam)


def induce_i(M, i, params=None, big=None):
    """F^Lambda_i M = R^Lambda(beta + alpha_i) e(beta, i) (x) M."""
    if M.lam is None:
        raise RepcatError("cyclotomic induction needs a module over R^Lambda(beta)")
    beta = _raise(M.beta, M.datum, i)
    if big is None:
        big = build_cyclotomic(M.datum, params, M.lam, beta, alg=M.alg)
    if big.dim == 0 or M.dim == 0:
        return zero_module(M.alg, beta, M.lam)
    V = algebra_bimodule(big, i, side="left")
    return _tensor(V, M, M.alg, beta, M.lam)


def _bounded_exponents(forms, lo, hi):
    """Exponent vectors a with lo <= sum a_k forms_k <= hi (forms positive)."""
    out = []

    def rec(k, acc, tot):
        if k == len(forms):
            if lo <= tot:
                out.append(tuple(acc))
            return
        e = 0
        while tot + e * forms[k] <= hi:
            rec(k + 1, acc + [e], tot + e * forms[k])
            e += 1

    rec(0, [], 0)
    return out


def induce_prime(M, i):
    """F'_i M = R(beta + alpha_i) e(beta, i) (x)_{R(beta) (x) R(alpha_i)} (M (x) L(i)).

    Computed exactly over R(beta + alpha_i): the induced module is free
    over the minimal coset representatives tau_w, so its degrees lie in a
    window read off from those, and each degree of the tensor product
    involves finitely many PBW monomials.  The result has dimension
    (n + 1) dim M, which is checked.
    """
    alg, datum = M.alg, M.datum
    beta = _raise(M.beta, datum, i)
    if M.dim == 0:
        return zero_module(alg, beta)
    n = M.n
    N = n + 1
    small = [nu for nu in M.seqs if M.mat(("e", nu))]
    reps = [w for w in all_perms(N) if [x for x in w if x != n] == list(range(n))]
    lo = hi = None
    for nu in small:
        degs = [M.degrees[c] for c in transpose(M.mat(("e", nu)))] or [0]
        for w in reps:
            t = alg.tau_degree(w, nu + (i,))[0]
            lo = t + min(degs) if lo is None else min(lo, t + min(degs))
            hi = t + max(degs) if hi is None else max(hi, t + max(degs))
    mlo, mhi = min(M.degrees), max(M.degrees)
    gdeg = [0, datum.form(i, i)]
    for nu in M.seqs:
        gdeg += [datum.form(j, j) for j in nu]
        gdeg += [-datum.form(nu[k], nu[k + 1]) for k in range(n - 1)]
    vlo, vhi = lo - mhi - max(gdeg), hi - mlo - min(gdeg)
    monos = []
    for nu in M.seqs:
        mu = nu + (i,)
        for w in all_perms(N):
            lamseq = act(w, mu)
            t = alg.tau_degree(w, mu)[0]
            forms = [datum.form(j, j) for j in lamseq]
            for a in _bounded_exponents(forms, vlo - t, vhi - t):
                monos.append((a, w, mu))
    index = {m: k for k, m in enumerate(monos)}
    degrees = [alg.mono_degree(m)[0] for m in monos]
    parities = [alg.mono_degree(m)[1] for m in monos]

    def matrix(op):
        mat = {}
        for k, m in enumerate(monos):
            for m2, c in op(alg.element(N, {m: 1})).terms.items():
                r = index.get(m2)
                if r is None:
                    if vlo <= alg.mono_degree(m2)[0] <= vhi:
                        raise RepcatError("PBW monomial missing from the induction window")
                    continue
                mat.setdefault(r, {})[k] = Fraction(c)
        return mat

    right = {}
    for nu in M.seqs:
        mu = nu + (i,)
        e = alg.idempotent(mu)
        right[("e", nu)] = matrix(lambda z, e=e: alg.multiply(z, e))
        for k in range(n):
            g = alg.multiply(alg.x(k + 1, N), e)
            right[("x", k, nu)] = matrix(lambda z, g=g: alg.multiply(z, g))
        for k in range(n - 1):
            g = alg.multiply(alg.tau(k + 1, N), e)
            right[("t", k, nu)] = matrix(lambda z, g=g: alg.multiply(z, g))
        g = alg.multiply(alg.x(N, N), e)
        right[("y", nu)] = matrix(lambda z, g=g: alg.multiply(z, g))
    big_seqs = sequences(datum, beta)
    left = {}
    for key in generator_keys(N, big_seqs):
        if key[0] == "e":
            g = alg.idempotent(key[1])
        elif key[0] == "x":
            g = alg.x(key[1] + 1, N, beta)
        else:
            g = alg.tau(key[1] + 1, N, beta)
        left[key] = matrix(lambda z, g=g: alg.multiply(g, z))
    V = _Bimodule(degrees, left, right, parities)
    out = _tensor(V, M, alg, beta, None, window=(lo, hi))
    if out.dim != N * M.dim:
        raise RepcatError(f"induced module has dimension {out.dim}, expected {N * M.dim}")
    return out


# ---------------------------------------------------------------- simples

def _rational_matrix(X, dim):
    return sympy.Matrix(dim, dim, lambda r, c: sympy.Rational(X.get(r, {}).get(c, 0)))


def _poly_at(coeffs, X, dim):
    """Horner evaluation of a polynomial (highest coefficient first) at X."""
    acc = {}
    for c in coeffs:
        acc = mat_mul(acc, X)
        if c:
            acc = _mat_sum([acc, _scaled(_identity(dim), Fraction(int(c.p), int(c.q)))])
    return acc


def _proper_kernel(M, X):
    dim = M.dim
    t = sympy.Symbol("t")
    cp = _rational_matrix(X, dim).charpoly(t).as_expr()
    for f, _ in sympy.factor_list(cp, t)[1]:
        coeffs = sympy.Poly(f, t).all_coeffs()
        F = _poly_at(coeffs, X, dim)
        rows = [row for row in F.values() if row]
        ker = nullspace(rows, dim)
        if 0 < len(ker) < dim:
            return _span(M, ker)
    return None


def split_semisimple(M):
    """Simple summands of a semisimple module, split with endomorphisms."""
    if M.dim == 0:
        return []
    ends = hom_space(M, M)
    if len(ends) == 1:
        return [M]
    for X in _candidates(ends):
        ech = _proper_kernel(M, X)
        if ech is not None:
            return split_semisimple(restricted(M, ech)) + split_semisimple(quotient(M, ech))
    raise RepcatError("could not split a semisimple module over Q")


@dataclass
class SimpleRecord:
    module: GradedModule
    beta: tuple
    eps: dict
    shift: int
    dual_shifts: list
    witness: dict
    support: tuple = field(default_factory=tuple)

    def to_json(self):
        return {"beta": list(self.beta), "dim": self.module.dim,
                "character": self.module.character().to_json(),
                "eps": {str(k): v for k, v in self.eps.items()},
                "support": [[str(i) for i in nu] for nu in self.support]}


def self_dual_shifts(L):
    """All r with (q^r L)* isomorphic to q^r L, searched over a window that
    contains every shift compatible with the graded dimension."""
    span = max(abs(d) for d in L.degrees) + 2
    out = []
    for r in range(-span, span + 1):
        S = L.shift(r)
        if is_isomorphic(dual_module(S), S) is not None:
            out.append(r)
    return out


def normalize_self_dual(L):
    shifts = self_dual_shifts(L)
    if len(shifts) != 1:
        raise RepcatError(f"self-dual shift not unique: {shifts}")
    S = L.shift(shifts[0])
    return S, shifts, is_isomorphic(dual_module(S), S)


def identify(M, records):
    """(index, r) with M isomorphic to q^r records[index].module, or None."""
    for k, rec in enumerate(records):
        L = rec.module
        if L.dim != M.dim or L.support() != M.support():
            continue
        r = min(M.degrees) - min(L.degrees)
        if is_isomorphic(L.shift(r), M) is not None:
            return k, r
    return None


def composition_factors(M, records):
    """{(index, shift): multiplicity} over a composition series of M."""
    out = {}
    for layer in radical_layers(M):
        for S in split_semisimple(layer):
            hit = identify(S, records)
            if hit is None:
                raise RepcatError("composition factor outside the given simples")
            out[hit] = out.get(hit, 0) + 1
    return out


def wedderburn_rank(M):
    """dim A/rad A for the acting algebra A of M."""
    return len(acting_algebra(M)) - len(radical_of_action(M))


_SIMPLES = {}


def simple_modules(algebra, params=None):
    """Self-dual graded simple modules of a CycloAlgebra, up to isomorphism.

    Every simple L with beta != 0 has E_i L != 0 for some i, and then L is
    a quotient of F_i L' for a simple L' in soc E_i L by adjunction; the
    heads of the F_i L' therefore exhaust the simples.  The list is
    complete once the sum of squared dimensions reaches dim A/rad A.
    """
    key = id(algebra)
    if key in _SIMPLES:
        return _SIMPLES[key]
    datum = algebra.datum
    out = []
    if algebra.dim:
        reg = regular_module(algebra)
        target = wedderburn_rank(reg)
        if algebra.beta.height == 0:
            found = [normalize_self_dual(reg)]
        else:
            found = []
            total = 0
            for i in datum.labels:
                low = _lower(algebra.beta, datum, i)
                if low is None:
                    continue
                small = build_cyclotomic(datum, params, algebra.lam, low, alg=algebra.alg)
                for rec in simple_modules(small, params):
                    for S in split_semisimple(head(induce_i(rec.module, i, big=algebra))):
                        norm = normalize_self_dual(S)
                        if identify(norm[0], [_bare(x[0]) for x in found]) is None:
                            found.append(norm)
                            total += S.dim ** 2
                    if total == target:
                        break
                if total == target:
                    break
            if total != target:
                raise RepcatError(f"simples account for {total} of dim A/rad A = {target}")
        for S, shifts, witness in found:
            if not is_simple(S):
                raise RepcatError("head constituent is not simple")
            eps = {i: epsilon(S, i) for i in datum.labels}
            out.append(SimpleRecord(S, algebra.beta.counts, eps, shifts[0], shifts, witness,
                                    S.support()))
        out.sort(key=lambda r: (min(r.module.degrees), r.support))
    _SIMPLES[key] = out
    return out


def _bare(M):
    return SimpleRecord(M, M.beta.counts, {}, 0, [0], {}, M.support())


def crystal_data(M, i):
    """eps_i(M), e~_i M = soc E_i M and f~_i M = hd F'_i M for a simple M."""
    if not is_simple(M):
        raise RepcatError("crystal data needs a simple module")
    eps = epsilon(M, i)
    e_t = None
    if eps > 0:
        soc = socle(restrict_i(M, i))
        parts = split_semisimple(soc)
        if len(parts) != 1:
            raise RepcatError("socle of E_i M is not simple")
        e_t = parts[0]
    f_t = head(induce_prime(M, i))
    return {"eps": eps, "e_tilde": e_t, "f_tilde": f_t}
