"""Exact subspaces of Q^n under the standard dot product.

A subspace is stored in reduced row-echelon form.  Internally each row is
scaled to a primitive integer vector with a positive pivot, which is a
bijective re-encoding of the fraction RREF (exposed as ``basis``) and keeps
elimination in machine-friendly integers.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm

__all__ = [
    "RationalSubspace", "complement", "linear_sum", "intersect", "intersect_direct",
    "project", "projection_oracle", "rref_fractions", "parse_span", "random_subspace",
]


def _primitive(row):
    g = gcd(*row)
    if g > 1:
        row = [x // g for x in row]
    for x in row:
        if x:
            return tuple(row) if x > 0 else tuple(-y for y in row)
    return tuple(row)


def _echelon(rows, n):
    """Canonical integer RREF of the span of integer ``rows``."""
    rows = [list(r) for r in rows if any(r)]
    m = len(rows)
    # entries stay small in low dimension; otherwise keep rows primitive as we go
    shrink = n > 4
    r = 0
    for col in range(n):
        if r == m:
            break
        for i in range(r, m):
            if rows[i][col]:
                break
        else:
            continue
        if i != r:
            rows[r], rows[i] = rows[i], rows[r]
        p = rows[r]
        pc = p[col]
        for i in range(m):
            if i != r:
                row = rows[i]
                f = row[col]
                if f:
                    new = [pc * x - f * y for x, y in zip(row, p)]
                    if shrink:
                        g = gcd(*new)
                        if g > 1:
                            new = [x // g for x in new]
                    rows[i] = new
        r += 1
    return tuple(_primitive(row) for row in rows[:r])


def _integer_row(v):
    """Scale a rational vector to integers (same line)."""
    v = [Fraction(x) for x in v]
    m = reduce(lcm, (x.denominator for x in v), 1)
    return [int(x * m) for x in v]


class RationalSubspace:
    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, vectors=()):
        if n < 0:
            raise ValueError("ambient dimension must be >= 0")
        rows = []
        for v in vectors:
            if len(v) != n:
                raise ValueError(f"vector {tuple(v)} does not live in Q^{n}")
            rows.append(v if all(type(x) is int for x in v) else _integer_row(v))
        self.n = n
        self.rows = _echelon(rows, n)
        self._hash = hash((n, self.rows))

    @classmethod
    def _canonical(cls, n, rows):
        # rows already canonical
        s = object.__new__(cls)
        s.n = n
        s.rows = rows
        s._hash = hash((n, rows))
        return s

    @classmethod
    def zero(cls, n):
        return cls._canonical(n, ())

    @classmethod
    def full(cls, n):
        return cls._canonical(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def ambient_dim(self):
        return self.n

    @property
    def dim(self):
        return len(self.rows)

    @property
    def basis(self) -> tuple[tuple[Fraction, ...], ...]:
        """Reduced row-echelon basis, leading coefficients 1."""
        out = []
        for row in self.rows:
            lead = next(x for x in row if x)
            out.append(tuple(Fraction(x, lead) for x in row))
        return tuple(out)

    @property
    def pivots(self):
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.rows)

    def contains(self, v) -> bool:
        v = list(v) if all(type(x) is int for x in v) else _integer_row(v)
        return len(_echelon([*self.rows, v], self.n)) == self.dim

    def issubset(self, other: "RationalSubspace") -> bool:
        _same_space(self, other)
        return all(other.contains(r) for r in self.rows)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        return isinstance(other, RationalSubspace) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        # arbitrary but total order, used for deterministic listings
        return (self.n, self.dim, self.rows) < (other.n, other.dim, other.rows)

    def __repr__(self):
        return f"RationalSubspace({self.n}, {self})"

    def __str__(self):
        vecs = ",".join("(" + ",".join(str(x) for x in row) + ")" for row in self.basis)
        return f"span[{vecs}]"

    def __reduce__(self):
        return (RationalSubspace._canonical, (self.n, self.rows))


def _same_space(A, B):
    if A.n != B.n:
        raise ValueError(f"dimension mismatch: Q^{A.n} vs Q^{B.n}")


@lru_cache(maxsize=1 << 16)
def complement(A: RationalSubspace) -> RationalSubspace:
    """Orthogonal complement (null space of the basis)."""
    n = A.n
    pivots = A.pivots
    free = [j for j in range(n) if j not in pivots]
    scale = reduce(lcm, (row[p] for row, p in zip(A.rows, pivots)), 1)
    vecs = []
    for f in free:
        v = [0] * n
        v[f] = scale
        for row, p in zip(A.rows, pivots):
            v[p] = -row[f] * scale // row[p]
        vecs.append(v)
    return RationalSubspace._canonical(n, _echelon(vecs, n))


def linear_sum(A: RationalSubspace, B: RationalSubspace) -> RationalSubspace:
    _same_space(A, B)
    return RationalSubspace._canonical(A.n, _echelon([*A.rows, *B.rows], A.n))


def intersect(A: RationalSubspace, B: RationalSubspace) -> RationalSubspace:
    """A ^ B as (A-perp + B-perp)-perp."""
    return complement(linear_sum(complement(A), complement(B)))


def intersect_direct(A: RationalSubspace, B: RationalSubspace) -> RationalSubspace:
    """A ^ B by solving a.A + b.B = 0 for coefficient vectors (a, b)."""
    _same_space(A, B)
    stacked = [*A.rows, *B.rows]
    k = len(stacked)
    if k == 0:
        return RationalSubspace.zero(A.n)
    columns = [[row[j] for row in stacked] for j in range(A.n)]
    solutions = complement(RationalSubspace(k, columns))
    ra = A.dim
    vecs = [[sum(c * row[j] for c, row in zip(w[:ra], A.rows)) for j in range(A.n)]
            for w in solutions.rows]
    return RationalSubspace(A.n, vecs)


def project(A: RationalSubspace, B: RationalSubspace) -> RationalSubspace:
    """Image of A under orthogonal projection onto B, as (A + B-perp) ^ B."""
    n = A.n
    if n != B.n:
        _same_space(A, B)
    rb, ra = len(B.rows), len(A.rows)
    if rb == n or ra == 0:
        return A
    if rb == 0:
        return B
    if ra == n:
        return B
    return _project(A, B)


@lru_cache(maxsize=1 << 18)
def _project(A, B):
    n = A.n
    # project onto the smaller of B and B-perp with an integer-scaled projector
    through_perp = 2 * len(B.rows) > n
    W = complement(B).rows if through_perp else B.rows
    if len(W) > 2:
        return intersect(linear_sum(A, complement(B)), B)
    dot = lambda u, v: sum(x * y for x, y in zip(u, v))
    images = []
    if len(W) == 1:
        (w,) = W
        d = dot(w, w)
        for a in A.rows:
            s = dot(a, w)
            # d * P a = s * w
            images.append([d * x - s * y for x, y in zip(a, w)] if through_perp
                          else [s * y for y in w])
    else:
        w1, w2 = W
        g11, g12, g22 = dot(w1, w1), dot(w1, w2), dot(w2, w2)
        d = g11 * g22 - g12 * g12
        for a in A.rows:
            s1, s2 = dot(a, w1), dot(a, w2)
            y1, y2 = g22 * s1 - g12 * s2, g11 * s2 - g12 * s1
            # d * P a = y1 * w1 + y2 * w2
            pa = [y1 * x + y2 * y for x, y in zip(w1, w2)]
            images.append([d * x - v for x, v in zip(a, pa)] if through_perp else pa)
    return RationalSubspace._canonical(n, _echelon(images, n))


def _project_generic(A, B):
    return intersect(linear_sum(A, complement(B)), B)


# -- independent oracle ---------------------------------------------------------

def rref_fractions(vectors, n):
    """Plain Gauss-Jordan over Fractions; returns the nonzero RREF rows."""
    m = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][col]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return tuple(tuple(row) for row in m[:r])


def _inverse(g):
    k = len(g)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
           for i, row in enumerate(g)]
    red = rref_fractions(aug, 2 * k)
    if len(red) != k or any(red[i][i] != 1 for i in range(k)):
        raise ZeroDivisionError("Gram matrix is singular")
    return [list(row[k:]) for row in red]


def projector(B: RationalSubspace):
    """Matrix of orthogonal projection onto B: B^T (B B^T)^-1 B."""
    n = B.n
    b = [list(row) for row in B.basis]
    r = len(b)
    if r == 0:
        return [[Fraction(0)] * n for _ in range(n)]
    gram = [[sum(x * y for x, y in zip(b[i], b[j])) for j in range(r)] for i in range(r)]
    ginv = _inverse(gram)
    # coef[i][c] = sum_j ginv[i][j] * b[j][c]
    coef = [[sum(ginv[i][j] * b[j][c] for j in range(r)) for c in range(n)] for i in range(r)]
    return [[sum(b[i][row] * coef[i][col] for i in range(r)) for col in range(n)]
            for row in range(n)]


def projection_oracle(A: RationalSubspace, B: RationalSubspace) -> RationalSubspace:
    """Projection by applying the explicit projector matrix to A's basis."""
    _same_space(A, B)
    P = projector(B)
    images = [[sum(P[i][j] * v[j] for j in range(A.n)) for i in range(A.n)] for v in A.basis]
    return RationalSubspace(A.n, rref_fractions(images, A.n))


# -- literals and sampling -----------------------------------------------------

_SPAN = re.compile(r"\s*span\s*\[(.*)\]\s*", re.S)
_VEC = re.compile(r"\(([^()]*)\)")


def parse_span(text: str, n: int | None = None) -> RationalSubspace:
    """Parse ``span[(1,0),(1/2,3)]``; ``span[]`` needs ``n``."""
    m = _SPAN.fullmatch(text)
    if not m:
        raise ValueError(f"not a span literal: {text!r}")
    body = m.group(1).strip()
    vecs = []
    pos = 0
    for vm in _VEC.finditer(body):
        if body[pos:vm.start()].strip(" ,"):
            raise ValueError(f"unexpected text in span literal: {body[pos:vm.start()]!r}")
        pos = vm.end()
        try:
            vecs.append([Fraction(c.strip()) for c in vm.group(1).split(",")])
        except ValueError:
            raise ValueError(f"bad coordinate in ({vm.group(1)})") from None
    if body[pos:].strip(" ,"):
        raise ValueError(f"unexpected text in span literal: {body[pos:]!r}")
    dims = {len(v) for v in vecs}
    if n is not None:
        dims.add(n)
    if len(dims) != 1:
        raise ValueError("span literal needs vectors of one common dimension" +
                         ("" if vecs else " (give the ambient dimension)"))
    return RationalSubspace(dims.pop(), vecs)


def _full_rank(vecs, n):
    """Fraction-free (Bareiss) elimination on a square integer matrix."""
    m = [list(v) for v in vecs]
    prev = 1
    for k in range(n):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    break
            else:
                return False
        pk = m[k]
        for i in range(k + 1, n):
            row = m[i]
            f = row[k]
            for j in range(k + 1, n):
                row[j] = (pk[k] * row[j] - f * pk[j]) // prev
        prev = pk[k]
    return True


def random_subspace(rng, n: int, c: int = 5) -> RationalSubspace:
    """Dimension uniform on 0..n, then r integer vectors in [-c, c]^n; dependent draws are redrawn."""
    r = rng.randrange(n + 1)
    if r == 0:
        return RationalSubspace.zero(n)
    rnd = rng.random
    width = 2 * c + 1
    # same stream as rng.choices(range(-c, c + 1), k=r * n)
    while True:
        flat = [int(rnd() * width) - c for _ in range(r * n)]
        if r == 1:
            if any(flat):
                return RationalSubspace._canonical(n, (_primitive(flat),))
            continue
        vecs = [flat[i * n:(i + 1) * n] for i in range(r)]
        if r == n:
            if _full_rank(vecs, n):
                return _full(n)
            continue
        rows = _echelon(vecs, n)
        if len(rows) == r:
            return RationalSubspace._canonical(n, rows)


@lru_cache(maxsize=None)
def _full(n):
    return RationalSubspace.full(n)
