"""Cartan data with parity coloring, weights, the ring Z[q, 1/q, pi]/(pi^2 - 1)
and the coefficient table of the polynomials Q_ij."""
from dataclasses import dataclass, field
from fractions import Fraction


class FoundationsError(ValueError):
    pass


# ---------------------------------------------------------------- scalars

class SuperScalar:
    """Element of Z[q, 1/q, pi] with pi^2 = 1.

    Stored as {(degree, parity): coefficient} with parity in {0, 1}.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for (d, p), c in terms.items():
                if c:
                    key = (int(d), int(p) % 2)
                    t[key] = t.get(key, 0) + c
        self.terms = {k: c for k, c in t.items() if c}

    @classmethod
    def monomial(cls, deg=0, par=0, coeff=1):
        return cls({(deg, par): coeff})

    @classmethod
    def from_parts(cls, even=None, odd=None):
        t = {}
        for d, c in (even or {}).items():
            t[(d, 0)] = c
        for d, c in (odd or {}).items():
            t[(d, 1)] = t.get((d, 1), 0) + c
        return cls(t)

    def __add__(self, other):
        other = _coerce(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return SuperScalar(t)

    __radd__ = __add__

    def __neg__(self):
        return SuperScalar({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        t = {}
        for (d1, p1), c1 in self.terms.items():
            for (d2, p2), c2 in other.terms.items():
                k = (d1 + d2, (p1 + p2) % 2)
                t[k] = t.get(k, 0) + c1 * c2
        return SuperScalar(t)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise FoundationsError("negative power")
        out = SuperScalar.monomial()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def even(self):
        return {d: c for (d, p), c in self.terms.items() if p == 0}

    def odd(self):
        return {d: c for (d, p), c in self.terms.items() if p == 1}

    def at_pi(self, sign=1):
        """Specialize pi to +1 or -1; returns {degree: coefficient}."""
        out = {}
        for (d, p), c in self.terms.items():
            v = c if (p == 0 or sign == 1) else -c
            out[d] = out.get(d, 0) + v
        return {d: c for d, c in out.items() if c}

    def shift(self, k):
        """Multiply by q^k."""
        return SuperScalar({(d + k, p): c for (d, p), c in self.terms.items()})

    def flip(self):
        """Multiply by pi."""
        return SuperScalar({(d, 1 - p): c for (d, p), c in self.terms.items()})

    def bar(self):
        """q -> 1/q."""
        return SuperScalar({(-d, p): c for (d, p), c in self.terms.items()})

    def truncate(self, max_deg):
        return SuperScalar({k: c for k, c in self.terms.items() if k[0] <= max_deg})

    def min_degree(self):
        return min(d for d, _ in self.terms) if self.terms else None

    def max_degree(self):
        return max(d for d, _ in self.terms) if self.terms else None

    def divide(self, other):
        """Exact quotient self / other, or None when it is not in the ring."""
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero SuperScalar")
        # split along pi = 1 and pi = -1, divide each Laurent polynomial
        qa = _laurent_div(self.at_pi(1), other.at_pi(1))
        qb = _laurent_div(self.at_pi(-1), other.at_pi(-1))
        if qa is None or qb is None:
            return None
        t = {}
        for d in set(qa) | set(qb):
            a, b = qa.get(d, 0), qb.get(d, 0)
            if (a + b) % 2:
                return None
            t[(d, 0)] = (a + b) // 2
            t[(d, 1)] = (a - b) // 2
        return SuperScalar(t)

    def to_json(self):
        return {
            "even": {str(d): c for d, c in sorted(self.even().items())},
            "odd": {str(d): c for d, c in sorted(self.odd().items())},
        }

    @classmethod
    def from_json(cls, obj):
        return cls.from_parts(
            {int(k): v for k, v in obj.get("even", {}).items()},
            {int(k): v for k, v in obj.get("odd", {}).items()},
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (d, p), c in sorted(self.terms.items()):
            mono = ("π" if p else "") + (f"q^{d}" if d else "")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _coerce(x):
    if isinstance(x, SuperScalar):
        return x
    if isinstance(x, int):
        return SuperScalar({(0, 0): x})
    raise TypeError(f"cannot use {type(x).__name__} as SuperScalar")


def _laurent_div(num, den):
    """Exact division of integer Laurent polynomials {deg: c}."""
    if not num:
        return {}
    num = dict(num)
    dtop = max(den)
    lead = den[dtop]
    dlow = min(den)
    out = {}
    while num:
        top = max(num)
        if top - dtop < min(num) - dlow:
            return None
        c = num[top]
        if c % lead:
            return None
        k = c // lead
        sh = top - dtop
        out[sh] = k
        for d, x in den.items():
            y = num.get(d + sh, 0) - k * x
            if y:
                num[d + sh] = y
            else:
                num.pop(d + sh, None)
    return out


Q = SuperScalar.monomial(1, 0)
PI = SuperScalar.monomial(0, 1)
ONE = SuperScalar.monomial(0, 0)
ZERO = SuperScalar()


# ---------------------------------------------------------------- Cartan data

@dataclass(frozen=True)
class CartanDatum:
    """Symmetrizable Cartan matrix with a parity on the index set."""

    labels: tuple
    cartan: tuple
    symmetrizers: tuple
    parity: tuple
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise FoundationsError("repeated index labels")
        if len(self.cartan) != n or any(len(r) != n for r in self.cartan):
            raise FoundationsError("cartan matrix shape does not match index set")
        if len(self.symmetrizers) != n or len(self.parity) != n:
            raise FoundationsError("symmetrizers/parity length mismatch")
        A = self.cartan
        for a in range(n):
            if A[a][a] != 2:
                raise FoundationsError(f"cartan[{a}][{a}] must be 2")
            if self.symmetrizers[a] <= 0:
                raise FoundationsError(f"symmetrizer {self.labels[a]} must be positive")
            if self.parity[a] not in (0, 1):
                raise FoundationsError(f"parity of {self.labels[a]} must be 0 or 1")
            for b in range(n):
                if a == b:
                    continue
                if A[a][b] > 0:
                    raise FoundationsError(f"cartan[{a}][{b}] must be <= 0")
                if (A[a][b] == 0) != (A[b][a] == 0):
                    raise FoundationsError(
                        f"cartan[{a}][{b}] and cartan[{b}][{a}] must vanish together")
                if self.symmetrizers[a] * A[a][b] != self.symmetrizers[b] * A[b][a]:
                    raise FoundationsError(
                        f"not symmetrized by s at ({self.labels[a]},{self.labels[b]})")
            if self.parity[a] == 1:
                for b in range(n):
                    if A[a][b] % 2:
                        raise FoundationsError(
                            f"odd index {self.labels[a]} needs even cartan[{a}][{b}]")

    @property
    def rank(self):
        return len(self.labels)

    def index(self, i):
        try:
            return self.labels.index(i)
        except ValueError:
            raise FoundationsError(f"unknown index {i!r}") from None

    def a(self, i, j):
        return self.cartan[self.index(i)][self.index(j)]

    def s(self, i):
        return self.symmetrizers[self.index(i)]

    def p(self, i):
        return self.parity[self.index(i)]

    def form(self, i, j):
        """(alpha_i | alpha_j) = s_i a_ij."""
        return self.s(i) * self.a(i, j)

    def is_odd(self, i):
        return self.p(i) == 1


def _preset(name, cartan, sym, par):
    return CartanDatum(labels=tuple(range(1, len(cartan) + 1)),
                       cartan=tuple(tuple(r) for r in cartan),
                       symmetrizers=tuple(sym), parity=tuple(par), name=name)


PRESETS = {
    "A1": _preset("A1", [[2]], [1], [0]),
    "A1odd": _preset("A1odd", [[2]], [1], [1]),
    "A2": _preset("A2", [[2, -1], [-1, 2]], [1, 1], [0, 0]),
    # one odd node with a12 = -2 (type B2 with the short root odd)
    "B2odd": _preset("B2odd", [[2, -2], [-1, 2]], [1, 2], [1, 0]),
}


def preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise FoundationsError(f"unknown preset {name!r}; known: {sorted(PRESETS)}") from None


# ---------------------------------------------------------------- weights

@dataclass(frozen=True)
class Weight:
    """Element of P in fundamental-weight coordinates <h_i, lambda>."""

    coords: tuple

    def __add__(self, other):
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def is_dominant(self):
        return all(c >= 0 for c in self.coords)


@dataclass(frozen=True)
class RootElt:
    """Element of Q+ as nonnegative counts of simple roots."""

    counts: tuple

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise FoundationsError(f"negative root count in {self.counts}")

    @property
    def height(self):
        return sum(self.counts)

    def __add__(self, other):
        return RootElt(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def minus(self, other):
        """self - other, or None if it leaves Q+."""
        c = tuple(a - b for a, b in zip(self.counts, other.counts))
        if any(x < 0 for x in c):
            return None
        return RootElt(c)


def as_root(beta):
    """Accept a RootElt or a plain tuple of counts."""
    return beta if isinstance(beta, RootElt) else RootElt(tuple(beta))


def simple_root(datum, i):
    c = [0] * datum.rank
    c[datum.index(i)] = 1
    return RootElt(tuple(c))


def root_of_sequence(datum, nu):
    c = [0] * datum.rank
    for i in nu:
        c[datum.index(i)] += 1
    return RootElt(tuple(c))


def fundamental(datum, i, k=1):
    c = [0] * datum.rank
    c[datum.index(i)] = k
    return Weight(tuple(c))


def weight_of_root(datum, beta):
    """The weight sum_j b_j alpha_j in fundamental coordinates."""
    n = datum.rank
    return Weight(tuple(sum(datum.cartan[a][b] * beta.counts[b] for b in range(n))
                        for a in range(n)))


def root_parity(datum, beta):
    """p(beta) = sum_i b_i p(i) mod 2."""
    return sum(c * p for c, p in zip(beta.counts, datum.parity)) % 2


def root_form(datum, beta, gamma):
    """(beta | gamma) for beta, gamma in the root lattice."""
    n = datum.rank
    return sum(beta.counts[a] * gamma.counts[b] * datum.symmetrizers[a] * datum.cartan[a][b]
               for a in range(n) for b in range(n))


def pairing(datum, i, arg, mode="form"):
    """Pairings against alpha_i.

    With an index j: (alpha_i | alpha_j).  With a Weight: <h_i, lambda> when
    mode == "coroot", else (alpha_i | lambda).  With a RootElt: (alpha_i | beta).
    """
    a = datum.index(i)
    if isinstance(arg, Weight):
        h = arg.coords[a]
        return h if mode == "coroot" else datum.symmetrizers[a] * h
    if isinstance(arg, RootElt):
        h = sum(datum.cartan[a][b] * arg.counts[b] for b in range(datum.rank))
        return h if mode == "coroot" else datum.symmetrizers[a] * h
    j = datum.index(arg)
    if mode == "coroot":
        return datum.cartan[a][j]
    return datum.symmetrizers[a] * datum.cartan[a][j]


def sequences(datum, beta):
    """All nu in I^beta in lexicographic order of label positions."""
    out = []
    counts = list(as_root(beta).counts)
    n = sum(counts)

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for a, lab in enumerate(datum.labels):
            if counts[a]:
                counts[a] -= 1
                prefix.append(lab)
                rec(prefix)
                prefix.pop()
                counts[a] += 1

    rec([])
    return out


def roots_of_height(datum, h):
    out = []

    def rec(a, left, acc):
        if a == datum.rank - 1:
            out.append(RootElt(tuple(acc + [left])))
            return
        for c in range(left, -1, -1):
            rec(a + 1, left - c, acc + [c])

    if datum.rank == 0:
        return [RootElt(())]
    rec(0, h, [])
    return sorted(out, key=lambda b: b.counts, reverse=True)


# ---------------------------------------------------------------- q-integers

def super_quantum_integer(datum, n, i):
    """[n]^pi_i = sum_k pi_i^k q_i^(2k-n+1)."""
    if n < 0:
        raise FoundationsError("negative n")
    s, p = datum.s(i), datum.p(i)
    return SuperScalar({(s * (2 * k - n + 1), (p * k) % 2): 1 for k in range(n)})


def super_quantum_factorial(datum, n, i):
    if n < 0:
        raise FoundationsError("negative n")
    out = ONE
    for k in range(1, n + 1):
        out = out * super_quantum_integer(datum, k, i)
    return out


def quantum_integer(datum, n, i):
    """Classical [n]_i as a SuperScalar with no pi part."""
    s = datum.s(i)
    return SuperScalar({(s * (2 * k - n + 1), 0): 1 for k in range(n)})


def quantum_factorial(datum, n, i):
    out = ONE
    for k in range(1, n + 1):
        out = out * quantum_integer(datum, k, i)
    return out


# ---------------------------------------------------------------- Q_ij

@dataclass(frozen=True)
class QParams:
    """Coefficients t_{i,j;(r,s)} of Q_ij(w, z) = sum t w^r z^s, ordered pairs."""

    datum: CartanDatum
    table: tuple  # sorted tuple of ((i, j), ((r, s, t), ...))

    def terms(self, i, j):
        """[(r, s, t)] for Q_ij; empty for i == j."""
        return self._lookup().get((i, j), ())

    def _lookup(self):
        d = self.__dict__.get("_cache")
        if d is None:
            d = dict(self.table)
            object.__setattr__(self, "_cache", d)
        return d

    def to_json(self):
        out = []
        for (i, j), ts in self.table:
            for r, s, t in ts:
                out.append({"i": i, "j": j, "r": r, "s": s, "t": str(t)})
        return out


def homogeneous_pairs(datum, i, j):
    """Exponent pairs (r, s) on the degree line of Q_ij."""
    target = -2 * datum.form(i, j)
    di, dj = 2 * datum.s(i), 2 * datum.s(j)
    return [(r, (target - r * di) // dj) for r in range(target // di + 1)
            if (target - r * di) % dj == 0]


def build_q_matrix(datum, params=None):
    """Validate a coefficient table (or build the default one).

    params: iterable of (i, j, r, s, t) or dicts with those keys.  Entries
    for (j, i) are filled in by symmetry; both orders may be given if they
    agree.
    """
    raw = {}
    if params is None:
        for i in datum.labels:
            for j in datum.labels:
                if i == j:
                    continue
                ri, sj = -datum.a(i, j), -datum.a(j, i)
                raw[(i, j, ri, 0)] = raw.get((i, j, ri, 0), 0) + 1
                raw[(i, j, 0, sj)] = raw.get((i, j, 0, sj), 0) + 1
    else:
        given = {}
        for e in params:
            if isinstance(e, dict):
                i, j, r, s, t = e["i"], e["j"], e["r"], e["s"], e["t"]
            else:
                i, j, r, s, t = e
            datum.index(i)
            datum.index(j)
            t = Fraction(t)
            if i == j:
                if t:
                    raise FoundationsError(f"Q_ii must vanish: entry (i={i}, j={j}, r={r}, s={s})")
                continue
            if r < 0 or s < 0:
                raise FoundationsError(f"negative exponent at (i={i}, j={j}, r={r}, s={s})")
            key = (i, j, r, s)
            if key in given and given[key] != t:
                raise FoundationsError(f"conflicting entries at (i={i}, j={j}, r={r}, s={s})")
            given[key] = t
        for (i, j, r, s), t in given.items():
            mirror = (j, i, s, r)
            if mirror in given and given[mirror] != t:
                raise FoundationsError(
                    f"symmetry t_(i,j;r,s) = t_(j,i;s,r) fails at (i={i}, j={j}, r={r}, s={s})")
            raw[(i, j, r, s)] = t
            raw[mirror] = t
    table = {}
    for (i, j, r, s), t in raw.items():
        if not t:
            continue
        if datum.p(i) == 1 and r % 2:
            raise FoundationsError(
                f"odd index {i} forbids odd power of w at (i={i}, j={j}, r={r}, s={s})")
        if (r, s) not in homogeneous_pairs(datum, i, j):
            raise FoundationsError(
                f"entry (i={i}, j={j}, r={r}, s={s}) is off the homogeneity line")
        table.setdefault((i, j), []).append((r, s, Fraction(t)))
    for i in datum.labels:
        for j in datum.labels:
            if i == j:
                continue
            lead = -datum.a(i, j)
            if not any(r == lead and s == 0 for r, s, _ in table.get((i, j), [])):
                raise FoundationsError(
                    f"leading coefficient t_(i,j;(-a_ij,0)) vanishes at "
                    f"(i={i}, j={j}, r={lead}, s=0)")
    frozen = tuple(sorted(((k, tuple(sorted(v))) for k, v in table.items())))
    return QParams(datum=datum, table=frozen)
