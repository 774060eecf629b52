"""Exact matrices over the rationals and integer lattice linear algebra.

Rows are vectors throughout: a matrix acts on row vectors from the right,
``x -> x @ M``, and a lattice is the integer row span of a basis.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Scalar = int | Fraction


class SingularBasis(ValueError):
    pass


class NonIntegral(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def scalar(x) -> Scalar:
    """Normalise to ``int`` when the value is integral, else ``Fraction``."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return scalar(Fraction(int(x[0]), int(x[1])))
    if isinstance(x, str):
        return scalar(Fraction(x))
    raise TypeError(f"not an exact scalar: {x!r}")


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Matrix:
    """Immutable rows x cols matrix with exact entries."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(scalar(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix dimensions must be positive")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        self.rows = rows
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> Matrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"Matrix({[list(map(str, r)) for r in self.rows]})"

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        return Matrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def __mul__(self, k) -> Matrix:
        k = scalar(k)
        return Matrix([[k * x for x in r] for r in self.rows])

    __rmul__ = __mul__

    def __neg__(self) -> Matrix:
        return self * -1

    @property
    def T(self) -> Matrix:
        return Matrix(zip(*self.rows))

    def apply(self, v: Sequence) -> tuple:
        """Image of the row vector ``v`` under this matrix."""
        if len(v) != self.nrows:
            raise DimensionMismatch("vector length does not match matrix")
        return tuple(scalar(sum(x * r[j] for x, r in zip(v, self.rows))) for j in range(self.ncols))

    def denominator(self) -> int:
        d = 1
        for r in self.rows:
            for x in r:
                if isinstance(x, Fraction):
                    d = _lcm(d, x.denominator)
        return d

    def is_integral(self) -> bool:
        return self.denominator() == 1

    def int_rows(self) -> tuple[tuple[int, ...], ...]:
        if not self.is_integral():
            raise NonIntegral("matrix has non-integral entries")
        return self.rows

    def det(self) -> Scalar:
        return det(self)

    def to_json(self) -> list:
        return [[x if isinstance(x, int) else [x.numerator, x.denominator] for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> Matrix:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data)


def det(M: Matrix | Sequence[Sequence]) -> Scalar:
    """Exact determinant by rational Gaussian elimination."""
    rows = M.rows if isinstance(M, Matrix) else M
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("determinant of a non-square matrix")
    a = [[Fraction(x) for x in r] for r in rows]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        result *= piv
        for i in range(c + 1, n):
            f = a[i][c] / piv
            if f:
                ri, rc = a[i], a[c]
                for j in range(c, n):
                    ri[j] -= f * rc[j]
    return scalar(sign * result)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    n = len(rows)
    a = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _hnf_core(rows: list[list[int]], n: int, track: list[list[int]] | None):
    """Row-style lower-triangular HNF of the integer row span of ``rows``.

    Works in place on ``rows`` (and on ``track``, which receives the same
    row operations).  Returns the n pivot row indices ordered by column,
    or ``None`` when the span has rank < n.
    """
    active = list(range(len(rows)))
    pivots = [0] * n
    for col in range(n - 1, -1, -1):
        nz = [i for i in active if rows[i][col]]
        if not nz:
            return None
        p = nz[0]
        for i in nz[1:]:
            a, b = rows[p][col], rows[i][col]
            if b % a == 0:
                q = b // a
                ri, rp = rows[i], rows[p]
                for j in range(col + 1):
                    ri[j] -= q * rp[j]
                if track is not None:
                    ti, tp = track[i], track[p]
                    for j in range(len(tp)):
                        ti[j] -= q * tp[j]
                continue
            x, y, g = xgcd(a, b)
            ag, bg = a // g, b // g
            rp, ri = rows[p], rows[i]
            for j in range(col + 1):
                u, v = rp[j], ri[j]
                rp[j] = x * u + y * v
                ri[j] = -bg * u + ag * v
            if track is not None:
                tp, ti = track[p], track[i]
                for j in range(len(tp)):
                    u, v = tp[j], ti[j]
                    tp[j] = x * u + y * v
                    ti[j] = -bg * u + ag * v
        if rows[p][col] < 0:
            rows[p] = [-x for x in rows[p]]
            if track is not None:
                track[p] = [-x for x in track[p]]
        pivots[col] = p
        active.remove(p)
    # reduce entries left of each pivot modulo the pivots of earlier columns
    for i in range(1, n):
        ri = rows[pivots[i]]
        ti = track[pivots[i]] if track is not None else None
        for j in range(i - 1, -1, -1):
            rj = rows[pivots[j]]
            q = ri[j] // rj[j]
            if q:
                for k in range(j + 1):
                    ri[k] -= q * rj[k]
                if ti is not None:
                    tj = track[pivots[j]]
                    for k in range(len(tj)):
                        ti[k] -= q * tj[k]
    return pivots


def hnf_rows(rows: Iterable[Sequence[int]], n: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Canonical HNF basis of the lattice generated by integer ``rows``.

    Any number of generators is accepted; they must span a rank-n lattice.
    """
    work = [list(map(int, r)) for r in rows]
    if n is None:
        n = len(work[0])
    if any(len(r) != n for r in work):
        raise DimensionMismatch("generator length does not match dimension")
    pivots = _hnf_core(work, n, None)
    if pivots is None:
        raise SingularBasis("generators do not span a full-rank lattice")
    return tuple(tuple(work[p][: i + 1]) + (0,) * (n - i - 1) for i, p in enumerate(pivots))


def hnf(basis: Matrix, max_denominator: int = 2) -> tuple[Matrix, Matrix]:
    """Hermite normal form ``H = U @ basis`` of a square full-rank basis.

    ``H`` is lower triangular with positive diagonal and every entry left of
    the diagonal reduced into ``[0, H[j][j])``.  Rational bases are scaled by
    their common denominator (which must divide ``max_denominator``) and the
    scale is divided back out of ``H``.
    """
    n, m = basis.shape
    if n != m:
        raise DimensionMismatch("hnf expects a square basis")
    scale = basis.denominator()
    if max_denominator % scale:
        raise NonIntegral(f"entries have denominator {scale}")
    work = [[int(x * scale) for x in r] for r in basis.rows]
    track = [[int(i == j) for j in range(n)] for i in range(n)]
    pivots = _hnf_core(work, n, track)
    if pivots is None:
        raise SingularBasis("basis is singular")
    H = Matrix([[Fraction(x, scale) for x in work[p]] for p in pivots])
    U = Matrix([track[p] for p in pivots])
    return H, U


def solve_integer(H: Matrix | Sequence[Sequence[int]], v: Sequence) -> tuple[int, ...] | None:
    """Integer ``c`` with ``c @ H == v`` for a lower-triangular HNF ``H``.

    Returns ``None`` when ``v`` is not in the row lattice of ``H``.
    """
    rows = H.rows if isinstance(H, Matrix) else H
    n = len(rows)
    if len(v) != n:
        raise DimensionMismatch(f"vector of length {len(v)} against dimension {n}")
    rest = [Fraction(x) for x in v]
    coeffs = [0] * n
    for i in range(n - 1, -1, -1):
        q = rest[i] / rows[i][i]
        if q.denominator != 1:
            return None
        q = int(q)
        coeffs[i] = q
        if q:
            ri = rows[i]
            for j in range(i + 1):
                rest[j] -= q * ri[j]
    return tuple(coeffs)


def contains_int(H: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Integer-only membership test against a lower-triangular HNF."""
    rest = list(v)
    for i in range(len(H) - 1, -1, -1):
        q, r = divmod(rest[i], H[i][i])
        if r:
            return False
        if q:
            hi = H[i]
            for j in range(i):
                rest[j] -= q * hi[j]
    return True
