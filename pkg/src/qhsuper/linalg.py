"""Sparse exact linear algebra over the rationals.

Vectors are dicts mapping integer column indices to nonzero Fractions.
Rows kept by :class:`Echelon` have their largest column as pivot, so
callers control which columns become pivots through the column numbering.
"""
from fractions import Fraction
import heapq


def vec_add(u, v, c=1):
    """Return u + c*v as a new dict."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_scale(v, c):
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


class Echelon:
    """Incrementally maintained echelon basis of a subspace."""

    def __init__(self):
        self.rows = {}  # pivot column -> row with row[pivot] == 1

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        """Remainder of v after eliminating every pivot column."""
        v = dict(v)
        heap = [-k for k in v if k in self.rows]
        heapq.heapify(heap)
        while heap:
            k = -heapq.heappop(heap)
            c = v.get(k)
            if not c:
                continue
            for j, x in self.rows[k].items():
                y = v.get(j, 0) - c * x
                if y:
                    if j not in v and j in self.rows:
                        heapq.heappush(heap, -j)
                    v[j] = y
                else:
                    v.pop(j, None)
        return v

    def add(self, v):
        """Insert v; return True when it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = max(r)
        inv = 1 / Fraction(r[p])
        self.rows[p] = {k: x * inv for k, x in r.items()}
        return True

    def contains(self, v):
        return not self.reduce(v)

    def reduced_rows(self):
        """Fully back-substituted rows, keyed by pivot."""
        out = {}
        for p in sorted(self.rows):
            out[p] = self.reduce_except(self.rows[p], p, out)
        return out

    def reduce_except(self, row, p, done):
        row = dict(row)
        for k in sorted((k for k in row if k != p and k in done), reverse=True):
            c = row.get(k)
            if c:
                row = vec_add(row, done[k], -c)
        return row


def rank(rows):
    e = Echelon()
    for r in rows:
        e.add(r)
    return len(e)


def nullspace(rows, ncols):
    """Basis of {v : r.v = 0 for all rows r} in dimension ncols."""
    e = Echelon()
    for r in rows:
        if r:
            e.add(r)
    red = e.reduced_rows()
    free = [c for c in range(ncols) if c not in red]
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for p, row in red.items():
            c = row.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def solve(rows, rhs, ncols):
    """One solution of rows . v = rhs, or None."""
    aug = []
    for r, b in zip(rows, rhs):
        rr = dict(r)
        if b:
            rr[ncols] = -Fraction(b)
        if rr:
            aug.append(rr)
    # the constant column must never be a pivot, so give it the lowest rank
    shift = {c: c + 1 for c in range(ncols)}
    e = Echelon()
    for r in aug:
        e.add({(shift[k] if k < ncols else 0): x for k, x in r.items()})
    if 0 in e.rows:
        return None
    red = e.reduced_rows()
    sol = {}
    for p, row in red.items():
        c = row.get(0)
        if c:
            sol[p - 1] = -c
    return sol


def mat_mul(a, b):
    """Product of sparse matrices stored as {row: {col: x}}."""
    out = {}
    for i, ri in a.items():
        acc = {}
        for k, x in ri.items():
            rk = b.get(k)
            if not rk:
                continue
            for j, y in rk.items():
                acc[j] = acc.get(j, 0) + x * y
        acc = {j: v for j, v in acc.items() if v}
        if acc:
            out[i] = acc
    return out


def mat_vec(a, v):
    """Apply matrix {row: {col: x}} to vector {col: x}."""
    out = {}
    for i, ri in a.items():
        s = 0
        for k, x in ri.items():
            y = v.get(k)
            if y:
                s += x * y
        if s:
            out[i] = s
    return out


def transpose(a):
    out = {}
    for i, ri in a.items():
        for j, x in ri.items():
            out.setdefault(j, {})[i] = x
    return out


def trace_of_product(a, b):
    """tr(a b) for sparse square matrices."""
    s = 0
    for i, ri in a.items():
        for k, x in ri.items():
            y = b.get(k, {}).get(i)
            if y:
                s += x * y
    return s


def is_zero_matrix(a):
    return not any(a.values())
