"""Independent ground truth.

Two routes that share no code with the rewriting engine:

* weight multiplicities of V(Lambda) by Freudenthal's recursion at q = 1;
* graded dimensions of R(beta) and of its cyclotomic quotient by linear
  elimination in the space of generator words modulo every instance of the
  defining relations.
"""
from fractions import Fraction
from itertools import product
import math

import sympy

from .foundations import FoundationsError, as_root, build_q_matrix, sequences
from .linalg import Echelon


class OracleError(ValueError):
    pass


# ---------------------------------------------------------------- Freudenthal

def _positive_roots(datum):
    """Positive roots of a finite type datum of rank <= 2 by reflection closure."""
    r = len(datum.labels)
    simple = [tuple(1 if k == j else 0 for k in range(r)) for j in range(r)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for root in frontier:
            for j in range(r):
                # s_j(root) = root - <h_j, root> alpha_j
                h = sum(root[k] * datum.cartan[j][k] for k in range(r))
                img = tuple(root[k] - (h if k == j else 0) for k in range(r))
                if any(c < 0 for c in img):
                    continue
                if img not in roots:
                    if sum(img) > 50:
                        raise OracleError("root system is not of finite type")
                    roots.add(img)
                    new.append(img)
        frontier = new
    return sorted(roots, key=lambda t: (sum(t), t))


def _form(datum, a, b):
    """(a|b) for a, b in the root lattice given by coordinates."""
    r = len(datum.labels)
    return sum(a[i] * b[j] * datum.symmetrizers[i] * datum.cartan[i][j]
               for i in range(r) for j in range(r))


def _lambda_form(datum, lam, beta):
    """(Lambda|beta) for Lambda in fundamental coordinates."""
    return sum(beta[j] * datum.symmetrizers[j] * lam[j] for j in range(len(beta)))


def weight_multiplicity(datum, lam, beta, _cache=None):
    """dim V(Lambda)_{Lambda - beta} at q = 1."""
    if len(datum.labels) > 2:
        raise OracleError("Freudenthal oracle supports rank <= 2 only")
    lam = tuple(lam)
    if any(c < 0 for c in lam):
        raise OracleError("Lambda must be dominant")
    beta = tuple(beta)
    if any(c < 0 for c in beta):
        return 0
    roots = _positive_roots(datum)
    memo = {} if _cache is None else _cache
    rho_beta = lambda b: sum(b[j] * datum.symmetrizers[j] for j in range(len(b)))

    def norm_gap(b):
        # (L+rho|L+rho) - (L-b+rho|L-b+rho) = 2(L+rho|b) - (b|b)
        return 2 * (_lambda_form(datum, lam, b) + rho_beta(b)) - _form(datum, b, b)

    def mult(b):
        if any(c < 0 for c in b):
            return 0
        if not any(b):
            return 1
        if b in memo:
            return memo[b]
        den = norm_gap(b)
        if den <= 0:
            memo[b] = 0
            return 0
        total = 0
        for alpha in roots:
            k = 1
            while True:
                c = tuple(b[j] - k * alpha[j] for j in range(len(b)))
                if any(x < 0 for x in c):
                    break
                m = mult(c)
                if m:
                    # (mu + k alpha | alpha) with mu = Lambda - b
                    mu_alpha = (_lambda_form(datum, lam, alpha) - _form(datum, b, alpha)
                                + k * _form(datum, alpha, alpha))
                    total += m * mu_alpha
                k += 1
        val = Fraction(2 * total, den)
        if val.denominator != 1:
            raise OracleError("non-integral multiplicity")
        memo[b] = int(val)
        return memo[b]

    return mult(beta)


def multiplicity_table(datum, lam, height_bound):
    """{beta counts: dim V(Lambda)_{Lambda-beta}} for |beta| <= height_bound."""
    r = len(datum.labels)
    cache = {}
    out = {}
    for h in range(height_bound + 1):
        for beta in _compositions(h, r):
            out[beta] = weight_multiplicity(datum, lam, beta, cache)
    return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for k in range(total, -1, -1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


# ---------------------------------------------------------------- word space

class _WordSpace:
    """Generator words tagged by their right idempotent.

    A word is a tuple of letters ('x', k) or ('t', a), 1-based, read as a
    product from left to right and acting on e(nu) at the right end.
    """

    def __init__(self, datum, qparams):
        self.datum = datum
        self.q = qparams
        self.form = lambda i, j: datum.symmetrizers[datum.index(i)] * datum.cartan[datum.index(i)][datum.index(j)]
        self.p = lambda i: datum.parity[datum.index(i)]

    def left(self, word, nu):
        nu = list(nu)
        for kind, k in reversed(word):
            if kind == "t":
                nu[k - 1], nu[k] = nu[k], nu[k - 1]
        return tuple(nu)

    def letter_degree(self, letter, nu):
        kind, k = letter
        if kind == "x":
            return self.form(nu[k - 1], nu[k - 1])
        return -self.form(nu[k - 1], nu[k])

    def degree(self, word, nu):
        d = 0
        nu = list(nu)
        for kind, k in reversed(word):
            d += self.letter_degree((kind, k), nu)
            if kind == "t":
                nu[k - 1], nu[k] = nu[k], nu[k - 1]
        return d

    def letters(self, n):
        return [("x", k) for k in range(1, n + 1)] + [("t", a) for a in range(1, n)]

    def words(self, nu, max_len):
        """All words of length <= max_len acting on e(nu): (word, left idem, degree)."""
        n = len(nu)
        letters = self.letters(n)
        out = [((), tuple(nu), 0)]
        layer = out[:]
        for _ in range(max_len):
            nxt = []
            for w, lam, d in layer:
                for g in letters:
                    d2 = d + self.letter_degree(g, lam)
                    lam2 = lam
                    if g[0] == "t":
                        lam2 = list(lam)
                        lam2[g[1] - 1], lam2[g[1]] = lam2[g[1]], lam2[g[1] - 1]
                        lam2 = tuple(lam2)
                    nxt.append(((g,) + w, lam2, d2))
            out.extend(nxt)
            layer = nxt
        return out

    def _poly_words(self, expr, syms, positions):
        """Words for a sympy polynomial whose monomials are read in the order
        of syms, each symbol standing for x at the given position."""
        out = {}
        if expr == 0:
            return out
        for exps, c in sympy.Poly(expr, *syms).terms():
            w = ()
            for e, pos in zip(exps, positions):
                w += (("x", pos),) * e
            out[w] = out.get(w, 0) + Fraction(int(c.p), int(c.q))
        return out

    def relations(self, nu):
        """Relation instances acting on e(nu) as {word: coeff}; the idempotent
        relations hold by construction of the word space."""
        n = len(nu)
        p = [self.p(i) for i in nu]
        rels = []
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                sg = -1 if p[a - 1] * p[b - 1] else 1
                rels.append({(("x", a), ("x", b)): 1, (("x", b), ("x", a)): -sg})
        for a in range(1, n):
            pa = p[a - 1] * p[a]
            for k in range(1, n + 1):
                if k in (a, a + 1):
                    continue
                sg = -1 if p[k - 1] * pa else 1
                rels.append({(("t", a), ("x", k)): 1, (("x", k), ("t", a)): -sg})
            sg = -1 if pa else 1
            same = nu[a - 1] == nu[a]
            r = {(("t", a), ("x", a + 1)): 1, (("x", a), ("t", a)): -sg}
            if same:
                r[()] = r.get((), 0) - 1
            rels.append(r)
            r = {(("x", a + 1), ("t", a)): 1, (("t", a), ("x", a)): -sg}
            if same:
                r[()] = r.get((), 0) - 1
            rels.append(r)
            r = {(("t", a), ("t", a)): Fraction(1)}
            if not same:
                W, Z = sympy.symbols("W Z")
                qexpr = sum(t * W ** rr * Z ** ss for rr, ss, t in self.q.terms(nu[a - 1], nu[a]))
                for w, c in self._poly_words(sympy.expand(qexpr), (W, Z), (a, a + 1)).items():
                    r[w] = r.get(w, 0) - c
            rels.append(r)
            for b in range(a + 2, n):
                sg = -1 if pa * p[b - 1] * p[b] else 1
                rels.append({(("t", a), ("t", b)): 1, (("t", b), ("t", a)): -sg})
        for a in range(1, n - 1):
            r = {(("t", a + 1), ("t", a), ("t", a + 1)): Fraction(1),
                 (("t", a), ("t", a + 1), ("t", a)): Fraction(-1)}
            i, j = nu[a - 1], nu[a]
            if nu[a + 1] == i and i != j:
                X, Y, Z = sympy.symbols("X Y Z")
                top = sum(t * (X ** rr - Y ** rr) * Z ** ss for rr, ss, t in self.q.terms(i, j))
                if self.p(i):
                    quo, rem = sympy.div(sympy.expand(top), X ** 2 - Y ** 2, X, Y, Z)
                    sg = -1 if self.p(j) else 1
                    body = self._poly_words(quo, (X, Y, Z), (a + 2, a, a + 1))
                    rhs = {}
                    for w, c in body.items():
                        for lead, s2 in ((("x", a + 2),), 1), ((("x", a),), -1):
                            rhs[lead + w] = rhs.get(lead + w, 0) + sg * s2 * c
                else:
                    quo, rem = sympy.div(sympy.expand(top), X - Y, X, Y, Z)
                    rhs = self._poly_words(quo, (X, Y, Z), (a + 2, a, a + 1))
                if rem != 0:
                    raise OracleError("braid quotient is not polynomial")
                for w, c in rhs.items():
                    r[w] = r.get(w, 0) - c
            rels.append({w: c for w, c in r.items() if c})
        return rels


def brute_force_graded_dim(datum, params, lam, beta, deg_window, len_bound, slack=2,
                           check_stable=True):
    """Graded dimensions {degree: dim} of R(beta) (lam None) or of its
    cyclotomic quotient, restricted to degrees in deg_window = (lo, hi).

    Words of length <= len_bound are taken modulo all relation multiples
    u r v of total length <= len_bound + slack; the result is recomputed
    with len_bound + 1 and must agree.
    """
    qparams = params if params is not None and hasattr(params, "terms") else build_q_matrix(datum, params)
    space = _WordSpace(datum, qparams)
    res = _graded_dims(space, lam, beta, deg_window, len_bound, slack)
    if check_stable:
        res2 = _graded_dims(space, lam, beta, deg_window, len_bound + 1, slack)
        if res != res2:
            raise OracleError(f"word length {len_bound} does not stabilise: {res} vs {res2}")
    return res


def _graded_dims(space, lam, beta, window, L, slack):
    datum = space.datum
    lo, hi = window
    seqs = sequences(datum, beta)
    Lr = L + slack
    # words grouped by right idempotent
    words = {nu: space.words(nu, Lr) for nu in seqs}
    by_left = {}
    for nu, ws in words.items():
        for w, left, d in ws:
            by_left.setdefault(left, []).append((w, nu, d))
    blocks = {}
    rels = {nu: space.relations(nu) for nu in seqs}
    if lam is not None:
        for nu in seqs:
            k = lam[datum.index(nu[0])]
            rels[nu] = rels[nu] + [{(("x", 1),) * k: Fraction(1)}]
    index = {}
    for nu, ws in words.items():
        tab = index.setdefault(nu, {})
        for w, left, d in ws:
            tab.setdefault(d, {}).setdefault(len(w), []).append((w, left))
    meta = {}
    for nu, rs in rels.items():
        meta[nu] = []
        for r in rs:
            rw = next(iter(r))
            meta[nu].append((r, max(len(w) for w in r), space.left(rw, nu), space.degree(rw, nu)))
    # u r v: v acts on e(mu) with left idempotent nu, r at e(nu), u on top
    for mu in seqs:
        for v, nu, dv in words[mu]:
            for r, rlen, rleft, rdeg in meta[nu]:
                budget = Lr - len(v) - rlen
                if budget < 0:
                    continue
                base = rdeg + dv
                for du, by_len in index[rleft].items():
                    d = du + base
                    if not lo <= d <= hi:
                        continue
                    for ln in range(budget + 1):
                        for u, left in by_len.get(ln, ()):
                            row = {}
                            for w, c in r.items():
                                key = u + w + v
                                row[key] = row.get(key, 0) + c
                            blocks.setdefault((left, mu, d), []).append(row)
    out = {}
    for (left, mu, d) in sorted(set(_short_blocks(words, L, lo, hi)) | set(blocks), key=str):
        short = sorted({w for w, nu, dd in by_left.get(left, []) if nu == mu and dd == d and len(w) <= L},
                       key=lambda w: (len(w), w))
        if not short:
            continue
        cols = {w: k for k, w in enumerate(short)}
        ech = Echelon()
        for row in blocks.get((left, mu, d), []):
            vec = {}
            for w, c in row.items():
                if w not in cols:
                    cols[w] = len(cols)
                vec[cols[w]] = vec.get(cols[w], 0) + c
            ech.add({k: c for k, c in vec.items() if c})
        inside = sum(1 for pvt in ech.rows if pvt < len(short))
        dim = len(short) - inside
        if dim:
            out[d] = out.get(d, 0) + dim
    return dict(sorted(out.items()))


def _short_blocks(words, L, lo, hi):
    for mu, ws in words.items():
        for w, left, d in ws:
            if len(w) <= L and lo <= d <= hi:
                yield (left, mu, d)


def compare_graded_dims(datum, params, lam, beta, width=None, len_bounds=None):
    """Engine graded dimensions against brute_force_graded_dim on a shared
    window starting at the lowest engine degree.

    lam None compares R(beta); otherwise R^Lambda(beta).  Word lengths are
    tried in turn until the brute-force count stabilises.
    """
    from .cyclotomic import build_cyclotomic, engine
    from .qhsalg import graded_dim_total
    beta = as_root(beta)
    h = beta.height
    if width is None:
        width = 4 if h <= 2 else 2
    if lam is None:
        top = max(4 * h * h, 4)
        series = graded_dim_total(engine(datum, params), beta, top)
        dims = {}
        for (d, _), c in series.terms.items():
            dims[d] = dims.get(d, 0) + c
    else:
        dims = dict(build_cyclotomic(datum, params, lam, beta).graded_dims())
    lo = min(dims) if dims else -2
    window = (lo, lo + width)
    ours = {d: c for d, c in sorted(dims.items()) if window[0] <= d <= window[1] and c}
    last = None
    for L in len_bounds or (max(h, 2), h + 1, h + 2):
        try:
            theirs = brute_force_graded_dim(datum, params, lam, beta, window, L)
            break
        except OracleError as e:
            last = e
    else:
        raise OracleError(f"no stable word length for beta={beta.counts}: {last}")
    return {"check": "dims", "lambda": None if lam is None else list(lam),
            "beta": list(beta.counts), "window": list(window), "len_bound": L,
            "engine": ours, "oracle": theirs, "pass": ours == theirs}
