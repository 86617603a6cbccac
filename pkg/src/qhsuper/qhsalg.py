"""PBW normal forms in the quiver Hecke superalgebra R(n).

A PBW monomial is a triple (a, w, nu): the exponent vector a of
x_1^a_1 ... x_n^a_n, a permutation w (see below) standing for tau_w with
its lexicographically smallest reduced word, and the right idempotent nu.
Positions and tau indices are 0-based internally and 1-based in the
public token syntax (x1, t1, e(1,2)).

A permutation is the tuple obtained by applying tau_w to the sequence
(0, 1, ..., n-1); the left idempotent of tau_w e(nu) is (nu[w[p]])_p.
"""
from collections import deque
import os
from fractions import Fraction
from itertools import permutations, product
import re

from .linalg import Echelon
from .foundations import (CartanDatum, QParams, SuperScalar, build_q_matrix,
                          root_of_sequence, sequences)


class QHSError(ValueError):
    pass


class ScaleGuardError(QHSError):
    pass


MAX_STRANDS = 4
GUARD_ENV = "QHSUPER_NO_GUARDS"


def check_guard(value, bound, what):
    """Refuse instances past a scale bound unless the override is set."""
    if value > bound and os.environ.get(GUARD_ENV, "") not in ("1", "true", "yes"):
        raise ScaleGuardError(f"{what} = {value} exceeds the bound {bound}")


# ---------------------------------------------------------------- permutations

def identity_perm(n):
    return tuple(range(n))


def swap(t, k):
    t = list(t)
    t[k], t[k + 1] = t[k + 1], t[k]
    return tuple(t)


def apply_word(word, seq):
    """Apply s_{word[0]} ... s_{word[-1]} to a sequence (rightmost first)."""
    seq = list(seq)
    for k in reversed(word):
        seq[k], seq[k + 1] = seq[k + 1], seq[k]
    return tuple(seq)


def perm_of_word(word, n):
    return apply_word(word, range(n))


def act(perm, nu):
    return tuple(nu[p] for p in perm)


def length(perm):
    n = len(perm)
    return sum(1 for p in range(n) for q in range(p + 1, n) if perm[p] > perm[q])


def canonical_word(perm):
    """Lexicographically smallest reduced word."""
    word = []
    w = perm
    while True:
        for k in range(len(w) - 1):
            if w[k] > w[k + 1]:
                word.append(k)
                w = swap(w, k)
                break
        else:
            return tuple(word)


def is_reduced(word, n):
    return length(perm_of_word(word, n)) == len(word)


def all_perms(n):
    return sorted(permutations(range(n)))


def _moves(word):
    """Braid and commutation moves available on a word: (pos, kind, new)."""
    out = []
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if abs(a - b) > 1:
            out.append((p, "comm", word[:p] + (b, a) + word[p + 2:]))
    for p in range(len(word) - 2):
        a, b, c = word[p], word[p + 1], word[p + 2]
        if a == c and abs(a - b) == 1:
            out.append((p, "braid", word[:p] + (b, a, b) + word[p + 3:]))
    return out


_PATH_CACHE = {}


def braid_path(word, target):
    """Sequence of moves (pos, kind, new_word) turning word into target."""
    tree = _PATH_CACHE.get(target)
    if tree is None:
        tree = {target: None}
        queue = deque([target])
        while queue:
            u = queue.popleft()
            for p, kind, v in _moves(u):
                if v not in tree:
                    # moves are involutions, so v -> u is the same move
                    tree[v] = (p, kind, u)
                    queue.append(v)
        _PATH_CACHE[target] = tree
    if word not in tree:
        raise QHSError(f"{word} and {target} are not reduced words of one permutation")
    path = []
    while tree[word] is not None:
        p, kind, nxt = tree[word]
        path.append((p, kind, nxt))
        word = nxt
    return path


# ---------------------------------------------------------------- skew polynomials

def skew_sign(a, b, par):
    """Sign of x^a x^b = sign x^(a+b) in P_nu with parity vector par."""
    s = 0
    n = len(a)
    for k in range(n):
        if a[k] and par[k]:
            for l in range(k):
                if b[l] and par[l]:
                    s += a[k] * b[l]
    return -1 if s % 2 else 1


def poly_mul(f, g, par):
    out = {}
    for a, c in f.items():
        for b, d in g.items():
            e = tuple(x + y for x, y in zip(a, b))
            v = out.get(e, 0) + skew_sign(a, b, par) * c * d
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def poly_add(f, g, c=1):
    out = dict(f)
    for a, x in g.items():
        v = out.get(a, 0) + c * x
        if v:
            out[a] = v
        else:
            out.pop(a, None)
    return out


def unit_exp(n, k, e=1):
    a = [0] * n
    a[k] = e
    return tuple(a)


class SkewPoly:
    """Element of P_nu: {exponent tuple: Fraction} with nu recorded."""

    __slots__ = ("nu", "par", "terms")

    def __init__(self, nu, par, terms):
        self.nu = tuple(nu)
        self.par = tuple(par)
        self.terms = {a: Fraction(c) for a, c in terms.items() if c}

    def __add__(self, other):
        self._check(other)
        return SkewPoly(self.nu, self.par, poly_add(self.terms, other.terms))

    def __sub__(self, other):
        self._check(other)
        return SkewPoly(self.nu, self.par, poly_add(self.terms, other.terms, -1))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SkewPoly(self.nu, self.par, {a: c * other for a, c in self.terms.items()})
        self._check(other)
        return SkewPoly(self.nu, self.par, poly_mul(self.terms, other.terms, self.par))

    __rmul__ = lambda self, c: self * c

    def __eq__(self, other):
        return (isinstance(other, SkewPoly) and self.nu == other.nu
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nu, frozenset(self.terms.items())))

    def _check(self, other):
        if self.nu != other.nu:
            raise QHSError("skew polynomials over different idempotents")

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return f"SkewPoly({_poly_str(self.terms)} e{self.nu})"


def _poly_str(terms):
    if not terms:
        return "0"
    parts = []
    for a, c in sorted(terms.items()):
        m = "".join(f"x{k + 1}" + (f"^{e}" if e > 1 else "") for k, e in enumerate(a) if e)
        if not m:
            parts.append(str(c))
        elif c == 1:
            parts.append(m)
        elif c == -1:
            parts.append("-" + m)
        else:
            parts.append(f"{c}*{m}")
    return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------- elements

class AlgebraElement:
    """Finite rational combination of PBW monomials (a, w, nu) in R(n)."""

    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg, n, terms):
        self.alg = alg
        self.n = n
        self.terms = {m: Fraction(c) for m, c in terms.items() if c}

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            raise QHSError("expected an AlgebraElement")
        if other.n != self.n:
            raise QHSError(f"ambient mismatch: R({self.n}) vs R({other.n})")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.alg, self.n, _add(self.terms, other.terms))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.alg, self.n, _add(self.terms, other.terms, -1))

    def __neg__(self):
        return AlgebraElement(self.alg, self.n, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraElement(self.alg, self.n, {m: c * other for m, c in self.terms.items()})
        return self.alg.multiply(self, other)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self * c
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, AlgebraElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return self.alg.format(self)


def _add(u, v, c=1):
    out = dict(u)
    for m, x in v.items():
        y = out.get(m, 0) + c * x
        if y:
            out[m] = y
        else:
            out.pop(m, None)
    return out


# ---------------------------------------------------------------- the algebra

class QuiverHeckeSuperalgebra:
    """Rewriting engine for R(n) over a Cartan datum and a Q-table.

    Every method works for any n; results are cached per instance.
    """

    def __init__(self, datum: CartanDatum, qparams: QParams = None):
        self.datum = datum
        self.q = qparams if qparams is not None else build_q_matrix(datum)
        self._par = {i: datum.p(i) for i in datum.labels}
        self._form = {(i, j): datum.form(i, j) for i in datum.labels for j in datum.labels}
        self._lmul_tau_cache = {}
        self._tau_canon_cache = {}
        self._tau_word_cache = {}
        self._dem_cache = {}

    # -- basic data
    def par(self, i):
        return self._par[i]

    def pars(self, nu):
        return tuple(self._par[i] for i in nu)

    def left_idem(self, mono):
        return act(mono[1], mono[2])

    def mono_degree(self, mono):
        a, w, nu = mono
        lam = act(w, nu)
        d = sum(e * self._form[(lam[k], lam[k])] for k, e in enumerate(a))
        p = sum(e * self._par[lam[k]] for k, e in enumerate(a))
        n = len(w)
        for x in range(n):
            for y in range(x + 1, n):
                if w[x] > w[y]:
                    i, j = nu[w[x]], nu[w[y]]
                    d -= self._form[(i, j)]
                    p += self._par[i] * self._par[j]
        return d, p % 2

    def degree_of(self, elem):
        degs = {self.mono_degree(m) for m in elem.terms}
        if len(degs) == 1:
            return degs.pop()
        if not degs:
            return (0, 0)
        return "inhomogeneous"

    # -- constructors
    def element(self, n, terms):
        return AlgebraElement(self, n, terms)

    def zero(self, n):
        return AlgebraElement(self, n, {})

    def idempotent(self, nu):
        n = len(nu)
        return AlgebraElement(self, n, {(tuple([0] * n), identity_perm(n), tuple(nu)): 1})

    def one(self, n, beta=None):
        seqs = self._seqs(n, beta)
        return AlgebraElement(self, n, {(tuple([0] * n), identity_perm(n), nu): 1 for nu in seqs})

    def _seqs(self, n, beta=None):
        if beta is not None:
            s = sequences(self.datum, beta)
            if s and len(s[0]) != n:
                raise QHSError("beta height does not match n")
            return s
        return list(product(self.datum.labels, repeat=n))

    def x(self, k, n, beta=None):
        """x_k (1-based) summed over idempotents."""
        if not 1 <= k <= n:
            raise QHSError(f"x_{k} out of range for n={n}")
        return AlgebraElement(self, n, {(unit_exp(n, k - 1), identity_perm(n), nu): 1
                                        for nu in self._seqs(n, beta)})

    def tau(self, a, n, beta=None):
        """tau_a (1-based) summed over idempotents."""
        if not 1 <= a < n:
            raise QHSError(f"tau_{a} out of range for n={n}")
        w = swap(identity_perm(n), a - 1)
        return AlgebraElement(self, n, {(tuple([0] * n), w, nu): 1 for nu in self._seqs(n, beta)})

    def poly_element(self, poly: SkewPoly):
        n = len(poly.nu)
        return AlgebraElement(self, n, {(a, identity_perm(n), poly.nu): c
                                        for a, c in poly.terms.items()})

    def skew_poly(self, nu, terms):
        return SkewPoly(nu, self.pars(nu), terms)

    # -- skew polynomial operations
    def twisted_swap(self, a, k, lam):
        """oS_k(x^a e(lam)) as (sign, exponents) living over s_k lam."""
        pk, pk1 = self._par[lam[k]], self._par[lam[k + 1]]
        s = 0
        if pk and pk1:
            s += sum(e * self._par[lam[p]] for p, e in enumerate(a))
        s += a[k] * a[k + 1] * pk * pk1
        b = swap(a, k)
        return (-1 if s % 2 else 1), b

    def oS(self, f: SkewPoly, k):
        lam = f.nu
        nl = swap(lam, k)
        out = {}
        for a, c in f.terms.items():
            sg, b = self.twisted_swap(a, k, lam)
            out[b] = out.get(b, 0) + sg * c
        return SkewPoly(nl, self.pars(nl), out)

    def _dem_mono(self, a, k, lam, side):
        """Demazure operator on the monomial x^a e(lam), lam_k == lam_{k+1}."""
        key = (a, k, lam, side)
        hit = self._dem_cache.get(key)
        if hit is not None:
            return hit
        n = len(a)
        par = self.pars(lam)
        odd = par[k]
        cur = tuple([0] * n)
        D = {}
        for p in range(n):
            for _ in range(a[p]):
                g = unit_exp(n, p)
                if p == k + 1:
                    cg = 1
                elif p == k:
                    cg = 1 if odd else -1
                else:
                    cg = 0
                if side == "left":
                    # d(P g) = d(P) g + oS(P) d(g)
                    D = poly_mul(D, {g: 1}, par)
                    if cg:
                        sg, b = self.twisted_swap(cur, k, lam)
                        D = poly_add(D, {b: sg * cg})
                else:
                    # (P g)^d = P g^d + P^d oS(g)
                    sg, b = self.twisted_swap(g, k, lam)
                    D = poly_mul(D, {b: sg}, par)
                    if cg:
                        D = poly_add(D, {cur: cg})
                cur = tuple(x + (1 if q == p else 0) for q, x in enumerate(cur))
        self._dem_cache[key] = D
        return D

    def demazure(self, f: SkewPoly, k, side="left"):
        """(d_k f or f^{d_k}, oS_k f) for a SkewPoly f and 0-based k."""
        n = len(f.nu)
        if not 0 <= k < n - 1:
            raise QHSError(f"invalid Demazure index {k + 1} for n={n}")
        if side not in ("left", "right"):
            raise QHSError("side must be 'left' or 'right'")
        lam = f.nu
        out = {}
        if lam[k] == lam[k + 1]:
            for a, c in f.terms.items():
                out = poly_add(out, self._dem_mono(a, k, lam, side), c)
        return SkewPoly(lam, f.par, out), self.oS(f, k)

    # -- Q polynomials and braid corrections
    def q_poly(self, i, j, a, b, n):
        """Q_ij(x_a, x_b) with a < b as {exps: coeff}."""
        out = {}
        for r, s, t in self.q.terms(i, j):
            e = [0] * n
            e[a] += r
            e[b] += s
            e = tuple(e)
            out[e] = out.get(e, 0) + t
        return {e: c for e, c in out.items() if c}

    def braid_correction(self, mu, a):
        """(t_{a+1} t_a t_{a+1} - t_a t_{a+1} t_a) e(mu) as a polynomial (0-based a)."""
        n = len(mu)
        i, j = mu[a], mu[a + 1]
        if mu[a + 2] != i or i == j:
            return {}
        par = self.pars(mu)
        out = {}
        if not self._par[i]:
            for r, s, t in self.q.terms(i, j):
                for u in range(r):
                    v = r - 1 - u
                    e = [0] * n
                    e[a + 2] += u
                    e[a] += v
                    e[a + 1] += s
                    out = poly_add(out, {tuple(e): t})
            return out
        sign = -1 if self._par[j] else 1
        diff = {unit_exp(n, a + 2): 1, unit_exp(n, a): -1}
        for r, s, t in self.q.terms(i, j):
            half = r // 2
            inner = {}
            for u in range(half):
                v = half - 1 - u
                # x_{a+2}^{2u} x_a^{2v} x_{a+1}^s, reordered with its sign
                m1 = unit_exp(n, a + 2, 2 * u)
                m2 = unit_exp(n, a, 2 * v)
                m3 = unit_exp(n, a + 1, s)
                inner = poly_add(inner, poly_mul(poly_mul({m1: 1}, {m2: 1}, par), {m3: 1}, par))
            out = poly_add(out, poly_mul(diff, inner, par), sign * t)
        return out

    # -- left multiplication primitives
    def lmul_poly(self, f, terms, lam=None):
        """f * (element terms); f is {exps: c}, applied to monomials whose
        left idempotent is lam (all of them when lam is None)."""
        out = {}
        for (b, w, nu), c in terms.items():
            left = act(w, nu)
            if lam is not None and left != lam:
                continue
            par = self.pars(left)
            for a, d in f.items():
                e = tuple(x + y for x, y in zip(a, b))
                m = (e, w, nu)
                v = out.get(m, 0) + skew_sign(a, b, par) * c * d
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def lmul_tau(self, k, terms):
        out = {}
        for m, c in terms.items():
            r = self._lmul_tau_mono(k, m)
            for m2, d in r.items():
                v = out.get(m2, 0) + c * d
                if v:
                    out[m2] = v
                else:
                    out.pop(m2, None)
        return out

    def _lmul_tau_mono(self, k, mono):
        hit = self._lmul_tau_cache.get((k, mono))
        if hit is not None:
            return hit
        a, w, nu = mono
        lam = act(w, nu)
        sg, b = self.twisted_swap(a, k, lam)
        res = self.lmul_poly({b: sg}, self._tau_canon(k, w, nu))
        if lam[k] == lam[k + 1]:
            d = self._dem_mono(a, k, lam, "left")
            if d:
                n = len(a)
                res = _add(res, self.lmul_poly(d, {(tuple([0] * n), w, nu): 1}))
        self._lmul_tau_cache[(k, mono)] = res
        return res

    def _tau_canon(self, k, w, nu):
        """tau_k tau_w e(nu) for the canonical word of w."""
        key = (k, w, nu)
        hit = self._tau_canon_cache.get(key)
        if hit is not None:
            return hit
        n = len(w)
        zero = tuple([0] * n)
        if w[k] < w[k + 1]:
            v = swap(w, k)
            word = (k,) + canonical_word(w)
            sign, corr = self._braid_rewrite(word, canonical_word(v), nu)
            res = _add({(zero, v, nu): sign}, corr)
        else:
            v = swap(w, k)
            word = (k,) + canonical_word(v)
            sign, corr = self._braid_rewrite(word, canonical_word(w), nu)
            # tau_C = sign*(tau_word - corr), so tau_k tau_C = sign*(tau_k^2 tau_v - tau_k corr)
            mu = act(v, nu)
            qp = self.q_poly(mu[k], mu[k + 1], k, k + 1, n) if mu[k] != mu[k + 1] else {}
            res = self.lmul_poly(qp, {(zero, v, nu): 1})
            res = _add(res, self.lmul_tau(k, corr), -1)
            res = {m: sign * c for m, c in res.items()}
        self._tau_canon_cache[key] = res
        return res

    def tau_word(self, word, nu):
        """Normal form of tau_{word[0]} ... tau_{word[-1]} e(nu)."""
        key = (tuple(word), tuple(nu))
        hit = self._tau_word_cache.get(key)
        if hit is not None:
            return hit
        n = len(nu)
        res = {(tuple([0] * n), identity_perm(n), tuple(nu)): Fraction(1)}
        for k in reversed(word):
            res = self.lmul_tau(k, res)
        self._tau_word_cache[key] = res
        return res

    def _braid_rewrite(self, word, target, nu):
        """(sign, corr) with tau_word e(nu) = sign * tau_target e(nu) + corr."""
        sign = 1
        corr = {}
        for p, kind, new in braid_path(word, target):
            if kind == "comm":
                mu = apply_word(word[p + 2:], nu)
                a, b = word[p], word[p + 1]
                pr = (self._par[mu[a]] * self._par[mu[a + 1]]
                      * self._par[mu[b]] * self._par[mu[b + 1]])
                if pr:
                    sign = -sign
            else:
                rest = word[p + 3:]
                mu = apply_word(rest, nu)
                top = word[p]
                a = min(word[p], word[p + 1])
                B = self.braid_correction(mu, a)
                if B:
                    # (a+1, a, a+1) = (a, a+1, a) + B ; (a, a+1, a) = (a+1, a, a+1) - B
                    c = 1 if top == a + 1 else -1
                    t = self.lmul_poly(B, self.tau_word(rest, nu))
                    for k in reversed(word[:p]):
                        t = self.lmul_tau(k, t)
                    corr = _add(corr, t, sign * c)
            word = new
        return sign, corr

    # -- products
    def multiply(self, x, y):
        if not isinstance(x, AlgebraElement) or not isinstance(y, AlgebraElement):
            raise QHSError("multiply expects AlgebraElements")
        if x.n != y.n:
            raise QHSError(f"ambient mismatch: R({x.n}) vs R({y.n})")
        by_left = {}
        for m, c in y.terms.items():
            by_left.setdefault(act(m[1], m[2]), {})[m] = c
        out = {}
        for (a, w, nu), c in x.terms.items():
            z = by_left.get(nu)
            if not z:
                continue
            for k in reversed(canonical_word(w)):
                z = self.lmul_tau(k, z)
            z = self.lmul_poly({a: 1}, z)
            out = _add(out, z, c)
        return AlgebraElement(self, x.n, out)

    def product(self, *elems):
        out = elems[0]
        for e in elems[1:]:
            out = self.multiply(out, e)
        return out

    # -- tokens
    def parse_token(self, tok, n):
        tok = tok.strip()
        m = re.fullmatch(r"x_?(\d+)", tok)
        if m:
            return ("x", int(m.group(1)))
        m = re.fullmatch(r"(?:t|tau|τ)_?(\d+)", tok)
        if m:
            return ("t", int(m.group(1)))
        m = re.fullmatch(r"e\(([^)]*)\)", tok)
        if m:
            body = [s for s in re.split(r"[,\s]+", m.group(1)) if s]
            nu = tuple(self._label(s) for s in body)
            return ("e", nu)
        raise QHSError(f"cannot parse token {tok!r}")

    def _label(self, s):
        for lab in self.datum.labels:
            if str(lab) == s:
                return lab
        raise QHSError(f"unknown index {s!r}")

    def normal_form(self, word, n, beta=None):
        """Normal form of a product of tokens e(nu), x_k, t_a."""
        if isinstance(word, str):
            word = [t for t in re.split(r"[\s*·]+", word) if t]
        toks = [self.parse_token(t, n) if isinstance(t, str) else t for t in word]
        for kind, v in toks:
            if kind == "x" and not 1 <= v <= n:
                raise QHSError(f"x_{v} out of range for n={n}")
            if kind == "t" and not 1 <= v < n:
                raise QHSError(f"tau_{v} out of range for n={n}")
            if kind == "e" and len(v) != n:
                raise QHSError(f"idempotent {v} has length {len(v)}, expected {n}")
        res = self.one(n, beta).terms
        for kind, v in reversed(toks):
            if kind == "e":
                res = {m: c for m, c in res.items() if act(m[1], m[2]) == v}
            elif kind == "x":
                res = self.lmul_poly({unit_exp(n, v - 1): 1}, res)
            else:
                res = self.lmul_tau(v - 1, res)
        return AlgebraElement(self, n, res)

    def format(self, elem):
        if not elem.terms:
            return "0"
        parts = []
        for (a, w, nu), c in sorted(elem.terms.items(), key=lambda t: _mono_key(t[0])):
            xs = "".join(f"x{k + 1}" + (f"^{e}" if e > 1 else "") for k, e in enumerate(a) if e)
            ts = "".join(f"t{k + 1}" for k in canonical_word(w))
            body = xs + ts + "e(" + ",".join(str(i) for i in nu) + ")"
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- grading helpers
    def tau_degree(self, w, nu):
        return self.mono_degree((tuple([0] * len(w)), w, nu))


def _mono_key(m):
    a, w, nu = m
    return (tuple(str(i) for i in nu), len(canonical_word(w)), canonical_word(w), a)


def mono_key(m):
    return _mono_key(m)


# ---------------------------------------------------------------- PBW counting

def graded_dim_series(alg, beta, nu, mu, max_deg=12):
    """Super-character of e(nu) R(beta) e(mu) up to degree max_deg by counting
    PBW monomials; returns a SuperScalar."""
    seqs = set(sequences(alg.datum, beta))
    nu, mu = tuple(nu), tuple(mu)
    if nu not in seqs or mu not in seqs:
        raise QHSError("idempotents must lie in I^beta")
    n = len(nu)
    terms = {}
    for w in all_perms(n):
        if act(w, mu) != nu:
            continue
        d0, p0 = alg.tau_degree(w, mu)
        steps = [(alg.datum.form(i, i), alg.datum.p(i)) for i in nu]
        for d, p, c in _exp_counts(steps, max_deg - d0):
            key = (d0 + d, (p0 + p) % 2)
            terms[key] = terms.get(key, 0) + c
    return SuperScalar(terms)


def _exp_counts(steps, budget):
    """Count exponent vectors by (degree, parity) with degree <= budget."""
    acc = {(0, 0): 1}
    for d, p in steps:
        new = {}
        for (dd, pp), c in acc.items():
            e = 0
            while dd + e * d <= budget:
                k = (dd + e * d, (pp + e * p) % 2)
                new[k] = new.get(k, 0) + c
                e += 1
        acc = new
    return [(d, p, c) for (d, p), c in acc.items() if d <= budget]


def graded_dim_total(alg, beta, max_deg=12):
    """Super-character of R(beta) truncated at max_deg."""
    out = SuperScalar()
    seqs = sequences(alg.datum, beta)
    for nu in seqs:
        for mu in seqs:
            out = out + graded_dim_series(alg, beta, nu, mu, max_deg)
    return out


# ---------------------------------------------------------------- intertwiners

def intertwiner(alg, a, n, kind="phi", beta=None):
    """phi_a or g_a (1-based a) summed over all idempotents."""
    if not 1 <= a < n:
        raise QHSError(f"invalid intertwiner index {a} for n={n}")
    if kind not in ("phi", "g"):
        raise QHSError("kind must be 'phi' or 'g'")
    k = a - 1
    out = alg.zero(n)
    for nu in alg._seqs(n, beta):
        e = alg.idempotent(nu)
        t = alg.multiply(alg.tau(a, n), e)
        if nu[k] != nu[k + 1]:
            out = out + t
            continue
        d = alg.x(a + 1, n) - alg.x(a, n)
        if not alg.par(nu[k]):
            phi = e - alg.product(d, t)
            extra = d
        else:
            d2 = alg.product(alg.x(a + 1, n), alg.x(a + 1, n)) - alg.product(alg.x(a, n), alg.x(a, n))
            phi = alg.multiply(d, e) - alg.product(d2, t)
            extra = d2
        if kind == "g":
            phi = alg.multiply(extra, phi)
        out = out + phi
    return out


def intertwiner_failures(alg, n, kind="phi"):
    """Labels of the commutation relations of phi_a (or g_a) failing in R(n)."""
    seqs = list(product(alg.datum.labels, repeat=n))
    E = alg.idempotent
    P = alg.product
    bad = []
    phis = {a: intertwiner(alg, a, n, kind) for a in range(1, n)}
    for a, phi in phis.items():
        for nu in seqs:
            par = alg.pars(nu)
            tag = f"{kind}{a}[{','.join(map(str, nu))}]"
            if not (P(phi, E(nu)) - P(E(swap(nu, a - 1)), phi)).is_zero():
                bad.append(tag + "idem")
            for b in range(1, n + 1):
                sb = a + 1 if b == a else a if b == a + 1 else b
                lhs = P(alg.x(sb, n), phi, E(nu))
                rhs = P(phi, alg.x(b, n), E(nu))
                if par[a - 1] * par[a] * par[b - 1]:
                    rhs = -rhs
                if not (lhs - rhs).is_zero():
                    bad.append(tag + f"x{b}")
            for b in range(1, n):
                if abs(b - a) <= 1:
                    continue
                lhs = P(alg.tau(b, n), phi, E(nu))
                rhs = P(phi, alg.tau(b, n), E(nu))
                if par[a - 1] * par[a] * par[b - 1] * par[b]:
                    rhs = -rhs
                if not (lhs - rhs).is_zero():
                    bad.append(tag + f"t{b}")
    for a in range(1, n - 1):
        lhs = P(alg.tau(a, n), phis[a + 1], phis[a])
        rhs = P(phis[a + 1], phis[a], alg.tau(a + 1, n))
        if not (lhs - rhs).is_zero():
            bad.append(f"{kind}-braid{a}")
    return bad


# ---------------------------------------------------------------- rank one

def nil_braid_data(alg, i, n, max_deg=12):
    """b_w elements, checks of the braid and idempotent relations, and the
    character of P(i^n) = Pi^{n(n-1)/2} R(n alpha_i) b(i^n) <n(n-1)(alpha_i|alpha_i)/4>."""
    check_guard(n, MAX_STRANDS, "strands")
    nu = tuple([i] * n)
    e = alg.idempotent(nu)
    b = {}
    for k in range(1, n):
        b[k] = alg.product(alg.tau(k, n), alg.x(k + 1, n), e)
    bw = {}
    for w in all_perms(n):
        el = e
        for k in canonical_word(w):
            el = alg.multiply(b[k + 1], el)
        bw[w] = el
    braid_ok = True
    for r in range(1, n - 1):
        lhs = alg.product(b[r], b[r + 1], b[r])
        rhs = alg.product(b[r + 1], b[r], b[r + 1])
        braid_ok = braid_ok and (lhs - rhs).is_zero()
    w0 = tuple(range(n - 1, -1, -1))
    top = bw[w0]
    idem_ok = (alg.multiply(top, top) - top).is_zero()
    char = divided_power_character(alg, i, n, max_deg)
    return {"b": b, "b_w": bw, "b_top": top, "braid_ok": braid_ok,
            "idempotent_ok": idem_ok, "P_character": char}


def divided_power_character(alg, i, n, max_deg=12):
    """Character of P(i^n) truncated at max_deg.

    R(n alpha_i) b(i^n) has the PBW-type basis x^a b(i^n) (a polynomial
    module generated in degree 0), so its character is that of the
    polynomial ring in n skew variables; the shift and parity twist follow
    the definition of P(i^n).
    """
    datum = alg.datum
    s, p = datum.s(i), datum.p(i)
    shift = n * (n - 1) * 2 * s // 4
    flip = (n * (n - 1) // 2) * p % 2
    steps = [(2 * s, p)] * n
    terms = {}
    for d, par, c in _exp_counts(steps, max_deg + shift):
        key = (d - shift, (par + flip) % 2)
        if key[0] <= max_deg:
            terms[key] = terms.get(key, 0) + c
    return SuperScalar(terms)


def _exponent_vectors(steps, budget):
    """Exponent vectors a with sum a_k steps_k <= budget (steps positive)."""
    if not steps:
        yield ()
        return
    for e in range(budget // steps[0] + 1):
        for rest in _exponent_vectors(steps[1:], budget - e * steps[0]):
            yield (e,) + rest


def left_ideal_character(alg, elem, n, max_deg):
    """Super-character of R(n) elem up to max_deg, by ranks of PBW multiples.

    elem must be homogeneous; its right idempotents fix the relevant beta.
    """
    degs = {alg.mono_degree(m) for m in elem.terms}
    if len(degs) != 1:
        raise QHSError("left_ideal_character needs a homogeneous element")
    (d0, p0), = degs
    lefts = {act(w, nu) for (_, w, nu) in elem.terms}
    spans = {}
    for w in all_perms(n):
        for mu in lefts:
            top = act(w, mu)
            dw, pw = alg.tau_degree(w, mu)
            steps = [alg.datum.form(j, j) for j in top]
            for a in _exponent_vectors(steps, max_deg - d0 - dw):
                prod = alg.multiply(alg.element(n, {(a, w, mu): 1}), elem)
                if prod.is_zero():
                    continue
                key = alg.mono_degree(next(iter(prod.terms)))
                ech, cols = spans.setdefault(key, (Echelon(), {}))
                vec = {}
                for m, c in prod.terms.items():
                    vec[cols.setdefault(m, len(cols))] = c
                ech.add(vec)
    return SuperScalar({k: len(ech) for k, (ech, _) in spans.items() if len(ech)})


def divided_power_character_direct(alg, i, n, max_deg=12):
    """Character of P(i^n) from the rank of R(n alpha_i) b(i^n), shifted and twisted."""
    data = nil_braid_data(alg, i, n, max_deg)
    s, p = alg.datum.s(i), alg.datum.p(i)
    shift = n * (n - 1) * 2 * s // 4
    flip = (n * (n - 1) // 2) * p % 2
    ch = left_ideal_character(alg, data["b_top"], n, max_deg + shift).shift(-shift)
    return ch.flip() if flip else ch


def ideal_closure_character(alg, elem, n, beta, max_deg, slack=None):
    """Super-character, up to max_deg, of the part of the two-sided ideal
    generated by elem that is reached through elements of degree at most
    max_deg + slack.  The result is a lower bound for the true ideal."""
    if slack is None:
        slack = n * (n - 1) // 2 * max(abs(alg.datum.form(i, j)) for i in alg.datum.labels
                                      for j in alg.datum.labels)
    gens = [alg.x(k, n, beta) for k in range(1, n + 1)]
    gens += [alg.tau(a, n, beta) for a in range(1, n)]
    top = max_deg + slack
    spans = {}
    cols = {}
    queue = deque([elem])
    while queue:
        el = queue.popleft()
        if el.is_zero():
            continue
        key = alg.mono_degree(next(iter(el.terms)))
        if key[0] > top:
            continue
        ech = spans.setdefault(key, Echelon())
        vec = {cols.setdefault(m, len(cols)): c for m, c in el.terms.items()}
        if not ech.add(vec):
            continue
        for g in gens:
            queue.append(alg.multiply(g, el))
            queue.append(alg.multiply(el, g))
    return SuperScalar({k: len(e) for k, e in spans.items() if k[0] <= max_deg and len(e)})


def simple_rank1_module(alg, i, n):
    """L(i^n) = R(n alpha_i) / sum_k R(n alpha_i) x_k, basis tau_w u.

    Returns degrees, parities and generator matrices keyed ('e', nu),
    ('x', k, nu), ('t', k, nu) with 0-based k.  Reduction modulo the left
    ideal is done degreewise: the ideal is spanned by tau_w x^b e(nu) with
    b != 0, and monomials carrying an x are eliminated first.
    """
    check_guard(n, MAX_STRANDS, "strands")
    nu = tuple([i] * n)
    perms = all_perms(n)
    index = {w: k for k, w in enumerate(perms)}
    zero = tuple([0] * n)
    step = 2 * alg.datum.s(i)
    degrees, parities = zip(*(alg.tau_degree(w, nu) for w in perms))
    ideals = {}

    def ideal(d):
        if d not in ideals:
            ech = Echelon()
            cols = {}
            for w in perms:
                top = d - alg.tau_degree(w, nu)[0]
                if top <= 0 or top % step:
                    continue
                for b in _compositions(top // step, n):
                    el = alg.multiply(alg.element(n, {(zero, w, nu): 1}),
                                      alg.element(n, {(b, identity_perm(n), nu): 1}))
                    ech.add(_columns(el.terms, cols, index))
            ideals[d] = (ech, cols)
        return ideals[d]

    def matrix_of(op):
        mat = {}
        for w in perms:
            res = op({(zero, w, nu): Fraction(1)})
            if not res:
                continue
            d = alg.mono_degree(next(iter(res)))[0]
            ech, cols = ideal(d)
            vec = ech.reduce(_columns(res, cols, index))
            for c, v in vec.items():
                if c >= len(perms):
                    raise QHSError("reduction left an x-monomial behind")
                mat.setdefault(c, {})[index[w]] = v
        return mat

    gens = {("e", nu): {k: {k: Fraction(1)} for k in range(len(perms))}}
    for k in range(n):
        gens[("x", k, nu)] = matrix_of(lambda t, k=k: alg.lmul_poly({unit_exp(n, k): 1}, t))
    for k in range(n - 1):
        gens[("t", k, nu)] = matrix_of(lambda t, k=k: alg.lmul_tau(k, t))
    return {"degrees": list(degrees), "parities": list(parities), "gens": gens,
            "basis": [canonical_word(w) for w in perms],
            "beta": root_of_sequence(alg.datum, nu), "nu": nu}


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def _columns(terms, cols, index):
    """Column vector of an element: tau-only monomials get their permutation
    index, x-monomials get large numbers so they are eliminated first."""
    out = {}
    for (a, w, nu), c in terms.items():
        if any(a):
            key = (a, w)
            if key not in cols:
                cols[key] = len(index) + len(cols)
            out[cols[key]] = c
        else:
            out[index[w]] = c
    return out


# ---------------------------------------------------------------- relations

def _quotient_poly(alg, nu, a):
    """Right side of the cubic braid relation at e(nu), obtained from the
    displayed quotient by an independent sympy division."""
    import sympy
    n = len(nu)
    i, j = nu[a], nu[a + 1]
    if nu[a + 2] != i or i == j:
        return alg.zero(n)
    X, Y, Z = sympy.symbols("X Y Z")
    qt = alg.q.terms(i, j)
    top = sum(t * (X ** r - Y ** r) * Z ** s for r, s, t in qt)
    odd = alg.par(i)
    den = X ** 2 - Y ** 2 if odd else X - Y
    quo, rem = sympy.div(sympy.expand(top), den, X, Y, Z)
    if rem != 0:
        raise QHSError("braid quotient is not polynomial")
    body = alg.zero(n)
    for (ex, ey, ez), c in sympy.Poly(quo, X, Y, Z).terms():
        # ordered product x_{a+2}^ex x_a^ey x_{a+1}^ez
        el = alg.one(n)
        for pos, e in ((a + 2, ex), (a, ey), (a + 1, ez)):
            for _ in range(e):
                el = alg.multiply(el, alg.x(pos + 1, n))
        body = body + el * Fraction(int(c.p), int(c.q))
    body = alg.multiply(body, alg.idempotent(nu))
    if odd:
        sign = -1 if alg.par(j) else 1
        diff = alg.x(a + 3, n) - alg.x(a + 1, n)
        body = alg.multiply(diff, body) * sign
    return body


def relation_instances(alg, n):
    """Every instance of the defining relations in R(n) as (label, lhs, rhs)."""
    out = []
    seqs = list(product(alg.datum.labels, repeat=n))
    nf = alg.normal_form
    E = alg.idempotent
    one = alg.one(n)
    lab = lambda name, nu, *rest: name + "[" + ",".join(map(str, nu)) + "]" + "".join(f"({r})" for r in rest)
    out.append(("R1[sum]", sum((E(nu) for nu in seqs[1:]), E(seqs[0])), one))
    for mu in seqs:
        for nu in seqs:
            rhs = E(nu) if mu == nu else alg.zero(n)
            out.append((lab("R1", mu + ("|",) + nu), nf([("e", mu), ("e", nu)], n), rhs))
    for nu in seqs:
        par = alg.pars(nu)
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                if p == q:
                    continue
                sg = -1 if par[p - 1] * par[q - 1] else 1
                out.append((lab("R2", nu, p, q), nf([("x", p), ("x", q), ("e", nu)], n),
                            nf([("x", q), ("x", p), ("e", nu)], n) * sg))
            out.append((lab("R3x", nu, p), nf([("x", p), ("e", nu)], n), nf([("e", nu), ("x", p)], n)))
        for a in range(1, n):
            out.append((lab("R3t", nu, a), nf([("t", a), ("e", nu)], n),
                        nf([("e", swap(nu, a - 1)), ("t", a)], n)))
            for p in range(1, n + 1):
                if p in (a, a + 1):
                    continue
                sg = -1 if par[p - 1] * par[a - 1] * par[a] else 1
                out.append((lab("R4", nu, a, p), nf([("t", a), ("x", p), ("e", nu)], n),
                            nf([("x", p), ("t", a), ("e", nu)], n) * sg))
            sg = -1 if par[a - 1] * par[a] else 1
            delta = E(nu) if nu[a - 1] == nu[a] else alg.zero(n)
            out.append((lab("R5a", nu, a),
                        nf([("t", a), ("x", a + 1), ("e", nu)], n)
                        - nf([("x", a), ("t", a), ("e", nu)], n) * sg, delta))
            out.append((lab("R5b", nu, a),
                        nf([("x", a + 1), ("t", a), ("e", nu)], n)
                        - nf([("t", a), ("x", a), ("e", nu)], n) * sg, delta))
            qp = {}
            if nu[a - 1] != nu[a]:
                qp = alg.q_poly(nu[a - 1], nu[a], a - 1, a, n)
            out.append((lab("R6", nu, a), nf([("t", a), ("t", a), ("e", nu)], n),
                        alg.poly_element(alg.skew_poly(nu, qp))))
            for b in range(1, n):
                if abs(a - b) > 1:
                    sg = -1 if par[a - 1] * par[a] * par[b - 1] * par[b] else 1
                    out.append((lab("R7", nu, a, b), nf([("t", a), ("t", b), ("e", nu)], n),
                                nf([("t", b), ("t", a), ("e", nu)], n) * sg))
        for a in range(1, n - 1):
            lhs = (nf([("t", a + 1), ("t", a), ("t", a + 1), ("e", nu)], n)
                   - nf([("t", a), ("t", a + 1), ("t", a), ("e", nu)], n))
            out.append((lab("R8", nu, a), lhs, _quotient_poly(alg, nu, a - 1)))
    return out


def relation_failures(alg, n):
    """Labels of relation instances whose two sides differ in normal form."""
    return [name for name, lhs, rhs in relation_instances(alg, n) if not (lhs - rhs).is_zero()]
