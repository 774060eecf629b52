"""Full-rank integer lattices in canonical Hermite normal form."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .exact import (
    DimensionMismatch,
    Matrix,
    contains_int,
    hnf_rows,
)

DEFAULT_MAX_SUBLATTICES = 2_000_000


class UnsupportedDimension(ValueError):
    pass


class NonIntegralImage(ValueError):
    pass


class NotReflectionInvariant(ValueError):
    pass


class BoundTooLarge(ValueError):
    pass


def int_form(S) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Integer numerator rows and denominator of a matrix-like object."""
    if hasattr(S, "num") and hasattr(S, "den"):
        return S.num, S.den
    M = S if isinstance(S, Matrix) else Matrix(S)
    den = M.denominator()
    return tuple(tuple(int(x * den) for x in r) for r in M.rows), den


def _image(v: Sequence[int], num, den: int) -> tuple[int, ...] | None:
    n = len(num[0])
    out = []
    for j in range(n):
        s = 0
        for x, r in zip(v, num):
            if x:
                s += x * r[j]
        if den != 1:
            q, rem = divmod(s, den)
            if rem:
                return None
            s = q
        out.append(s)
    return tuple(out)


class Lattice:
    """Full-rank sublattice of Z^n, stored as its canonical HNF basis."""

    __slots__ = ("n", "hnf", "index", "scale_denominator")

    def __init__(self, generators: Sequence[Sequence[int]] | Matrix, n: int | None = None):
        if isinstance(generators, Matrix):
            rows = generators.int_rows()
        else:
            rows = [tuple(r) for r in generators]
        self.hnf = hnf_rows(rows, n)
        self.n = len(self.hnf)
        idx = 1
        for i in range(self.n):
            idx *= self.hnf[i][i]
        self.index = idx
        self.scale_denominator = 1

    @classmethod
    def from_hnf(cls, rows) -> Lattice:
        """Trusted constructor for rows already in canonical form."""
        L = cls.__new__(cls)
        L.hnf = tuple(tuple(r) for r in rows)
        L.n = len(L.hnf)
        idx = 1
        for i in range(L.n):
            idx *= L.hnf[i][i]
        L.index = idx
        L.scale_denominator = 1
        return L

    @property
    def basis(self) -> Matrix:
        return Matrix(self.hnf)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.hnf == other.hnf

    def __lt__(self, other: Lattice):
        return (self.index, self.hnf) < (other.index, other.hnf)

    def __hash__(self):
        return hash(self.hnf)

    def __repr__(self):
        return f"Lattice(n={self.n}, index={self.index}, hnf={[list(r) for r in self.hnf]})"

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} in dimension {self.n}")
        vv = []
        for x in v:
            x = Fraction(x)
            if x.denominator != 1:
                return False
            vv.append(int(x))
        return contains_int(self.hnf, vv)

    __contains__ = contains

    def contains_lattice(self, other: Lattice) -> bool:
        return all(contains_int(self.hnf, r) for r in other.hnf)

    def scaled(self, s: int) -> Lattice:
        if s < 1:
            raise ValueError("scale must be positive")
        return Lattice.from_hnf([[s * x for x in r] for r in self.hnf])

    def transform(self, S) -> Lattice:
        num, den = int_form(S)
        if len(num) != self.n:
            raise DimensionMismatch("isometry dimension does not match lattice")
        images = []
        for r in self.hnf:
            img = _image(r, num, den)
            if img is None:
                raise NonIntegralImage("image of the lattice is not integral")
            images.append(img)
        return Lattice(images)

    def is_invariant(self, S) -> bool:
        num, den = int_form(S)
        if len(num) != self.n:
            raise DimensionMismatch("isometry dimension does not match lattice")
        for r in self.hnf:
            img = _image(r, num, den)
            if img is None:
                raise NonIntegralImage("image of the lattice is not integral")
            if not contains_int(self.hnf, img):
                return False
        return True

    def to_json(self) -> dict:
        return {"n": self.n, "hnf": [list(r) for r in self.hnf], "index": self.index}

    @classmethod
    def from_json(cls, data) -> Lattice:
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            L = cls(data["hnf"])
            if "n" in data and data["n"] != L.n:
                raise DimensionMismatch("declared n does not match basis")
            return L
        return cls(data)


def contains(L: Lattice, v) -> bool:
    return L.contains(v)


def transform(L: Lattice, S) -> Lattice:
    return L.transform(S)


def is_invariant(L: Lattice, S) -> bool:
    return L.is_invariant(S)


# ---------------------------------------------------------------- named lattices

NAMES = ("cln", "fcln", "bcln", "lambda0", "lambda1", "l11xl11", "vertex_3343")


def named_basis(name: str, n: int) -> list[list[int]]:
    name = name.lower()
    if n < 2:
        raise UnsupportedDimension(f"dimension {n} too small")
    e = lambda i: [int(i == j) for j in range(n)]
    if name == "cln":
        return [e(i) for i in range(n)]
    if name == "fcln":
        return [[2 * x for x in e(0)]] + [[a - b for a, b in zip(e(i), e(i - 1))] for i in range(1, n)]
    if name in ("bcln", "vertex_3343"):
        if name == "vertex_3343" and n != 4:
            raise UnsupportedDimension("the {3,3,4,3} vertex lattice lives in dimension 4")
        return [[2 * x for x in e(i)] for i in range(n - 1)] + [[1] * n]
    if name in ("lambda0", "lambda1"):
        if name == "lambda0":
            rows = [[1] * n]
            for k in range(2, n + 1):
                v = [1] * n
                v[0] = -1
                v[k - 1] = -1
                rows.append(v)
        else:
            rows = [[-1 if j == k else 1 for j in range(n)] for k in range(n)]
        # the sign vectors alone only contain 2*FCLN for n <= 4; add it explicitly
        two_fcln = [[2 * x for x in r] for r in named_basis("fcln", n)]
        return [list(r) for r in hnf_rows(rows + two_fcln, n)]
    if name == "l11xl11":
        if n != 4:
            raise UnsupportedDimension("l11xl11 is defined in dimension 4")
        return [[1, 0, 1, 0], [1, 0, -1, 0], [0, 1, 0, 1], [0, 1, 0, -1]]
    raise ValueError(f"unknown lattice name {name!r}")


def named(name: str, n: int, s: int = 1) -> Lattice:
    if n < 3 and name.lower() not in ("cln", "fcln", "bcln"):
        raise UnsupportedDimension(f"{name} needs n >= 3")
    if s < 1:
        raise ValueError("scale must be positive")
    return Lattice([[s * x for x in r] for r in named_basis(name, n)])


def parse_lattice_spec(spec: str, n: int) -> Lattice:
    """Parse strings like ``"lambda1"`` or ``"fcln@2"``."""
    name, _, scale = spec.strip().partition("@")
    s = int(scale) if scale else 1
    return named(name, n, s)


# ---------------------------------------------------------------- layers


@dataclass(frozen=True)
class LayerDecomposition:
    axis: int
    lambda0: Lattice
    u: tuple[int, ...]
    w: tuple
    d: int
    is_vertical: bool
    alphas: tuple[int, ...] | None

    @property
    def d_squared(self) -> int:
        return self.d * self.d

    def embed(self, v: Sequence[int]) -> tuple[int, ...]:
        """Lift a vector of the hyperplane coordinates back to n coordinates."""
        a = self.axis - 1
        return tuple(v[:a]) + (0,) + tuple(v[a:])

    def lambda0_basis(self) -> list[tuple[int, ...]]:
        return [self.embed(r) for r in self.lambda0.hnf]

    def contains(self, v: Sequence[int]) -> bool:
        """Membership in the union of the layers ``lambda0 + k*w``."""
        a = self.axis - 1
        k, r = divmod(v[a], self.d)
        if r:
            return False
        rest = [Fraction(x) - k * y for x, y in zip(v, self.w)]
        if any(x.denominator != 1 for x in rest):
            return False
        rest = [int(x) for i, x in enumerate(rest) if i != a]
        return contains_int(self.lambda0.hnf, rest)


def _axis_last(n: int, a: int) -> list[int]:
    return [j for j in range(n) if j != a] + [a]


def layer_decompose(L: Lattice, axis: int) -> LayerDecomposition:
    """Split ``L`` into layers parallel to the hyperplane ``x_axis = 0`` (axis is 1-based)."""
    n = L.n
    if not 1 <= axis <= n:
        raise DimensionMismatch(f"axis {axis} outside 1..{n}")
    a = axis - 1
    E = [[(-1 if i == a else 1) if i == j else 0 for j in range(n)] for i in range(n)]
    if not L.is_invariant(E):
        raise NotReflectionInvariant(f"lattice is not invariant under the reflection in x{axis} = 0")

    order = _axis_last(n, a)
    H = hnf_rows([[r[j] for j in order] for r in L.hnf])
    lambda0 = Lattice.from_hnf([r[: n - 1] for r in H[: n - 1]])
    last = H[n - 1]
    d = last[n - 1]

    first = [a] + [j for j in range(n) if j != a]
    G = hnf_rows([[r[j] for j in first] for r in L.hnf])
    p = G[0][0]
    u = tuple(p if j == a else 0 for j in range(n))

    if p == d:
        return LayerDecomposition(axis, lambda0, u, u, d, True, None)

    # 2w - u lies in lambda0; its coordinates mod 2 give the alphas
    twice = [2 * x for x in last[: n - 1]]
    m = [0] * (n - 1)
    rest = list(twice)
    V = lambda0.hnf
    for i in range(n - 2, -1, -1):
        q, r = divmod(rest[i], V[i][i])
        assert r == 0
        m[i] = q
        for j in range(i + 1):
            rest[j] -= q * V[i][j]
    alphas = tuple(x % 2 for x in m)
    half = [Fraction(sum(al * V[i][j] for i, al in enumerate(alphas)), 2) for j in range(n - 1)]
    w = [0] * n
    for k, j in enumerate(order[: n - 1]):
        w[j] = half[k]
    w[a] = d
    w = tuple(int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in w)
    return LayerDecomposition(axis, lambda0, u, w, d, False, alphas)


# ---------------------------------------------------------------- enumeration


@lru_cache(maxsize=None)
def _hnf_count_table(n: int, max_index: int) -> tuple[int, ...]:
    """Number of index-m sublattices of Z^n for m = 0..max_index."""
    # column j (0-based) of a lower-triangular HNF has n-1-j free entries below
    # its pivot; so a diagonal (d_0..d_{n-1}) contributes prod d_j^(n-1-j)
    table = [0] * (max_index + 1)
    table[1] = 1
    for j in range(n - 1, -1, -1):
        e = n - 1 - j
        new = [0] * (max_index + 1)
        for m in range(1, max_index + 1):
            if table[m]:
                for dj in range(1, max_index // m + 1):
                    new[m * dj] += table[m] * dj**e
        table = new
    return tuple(table)


def count_sublattices(n: int, m: int) -> int:
    """Number of sublattices of index exactly ``m`` in Z^n."""
    return _hnf_count_table(n, m)[m]


def total_sublattices(n: int, max_index: int) -> int:
    return sum(_hnf_count_table(n, max_index)[1:])


def total_exceeds(n: int, max_index: int, cap: int) -> bool:
    """``total_sublattices(n, max_index) > cap`` without tabulating huge bounds."""
    m = 1
    while True:
        m = min(2 * m, max_index)
        if total_sublattices(n, m) > cap:
            return True
        if m == max_index:
            return False


def sublattice_cap() -> int:
    return int(os.environ.get("TOROIDLAB_MAX_SUBLATTICES", DEFAULT_MAX_SUBLATTICES))


def _sign_images(row: Sequence[int], mask: int) -> tuple[int, ...]:
    # row - E_S(row) = 2 * (projection of row on S)
    return tuple(2 * x if mask >> j & 1 else 0 for j, x in enumerate(row))


def enumerate_sublattices(
    n: int,
    max_index: int,
    ambient: Lattice | None = None,
    sign_masks: Sequence[int] = (),
    row_filter=None,
    check_cap: bool = True,
    first_diagonal: Sequence[int] | None = None,
) -> Iterator[Lattice]:
    """Yield every full-rank sublattice of ``ambient`` with index at most ``max_index``.

    ``sign_masks`` restricts the stream to lattices invariant under the
    coordinate sign changes they encode (bit j flips coordinate j); the
    restriction is applied row by row while the HNF is being built, so it
    prunes the search rather than filtering its output.  Lattices are yielded
    by increasing index, then in lexicographic HNF order.  ``first_diagonal``
    restricts the top-left HNF entry, which partitions the stream for workers.
    """
    if max_index < 1:
        raise ValueError("max_index must be positive")
    if ambient is None:
        ambient = Lattice.from_hnf([[int(i == j) for j in range(n)] for i in range(n)])
    if ambient.n != n:
        raise DimensionMismatch("ambient lattice has the wrong dimension")
    bound = max_index * ambient.index
    if check_cap and not sign_masks:
        if total_exceeds(n, max_index, sublattice_cap()):
            raise BoundTooLarge(f"more than {sublattice_cap()} sublattices of index <= {max_index}")
    amb = ambient.hnf
    # prefix determinants of the ambient lattice must divide those of every sublattice
    amb_prefix = [1] * (n + 1)
    for i in range(n):
        amb_prefix[i + 1] = amb_prefix[i] * amb[i][i]

    masks = [m & ((1 << n) - 1) for m in sign_masks]

    def row_ok(rows, i):
        r = rows[i]
        if not contains_int(amb, r):
            return False
        if row_filter is not None and not row_filter(r, i):
            return False
        if masks:
            pre = [x[: i + 1] for x in rows[: i + 1]]
            for mk in masks:
                if not contains_int(pre, _sign_images(r[: i + 1], mk)):
                    return False
        return True

    def rec(rows, i, det):
        if i == n:
            if det % ambient.index == 0:
                yield det, tuple(rows)
            return
        for di in range(1, bound // det + 1):
            if i == 0 and first_diagonal is not None and di not in first_diagonal:
                continue
            nd = det * di
            if nd % amb_prefix[i + 1]:
                continue
            ranges = [range(rows[j][j]) for j in range(i)]
            for entries in product(*ranges):
                r = tuple(entries) + (di,) + (0,) * (n - i - 1)
                rows.append(r)
                if row_ok(rows, i):
                    yield from rec(rows, i + 1, nd)
                rows.pop()

    found = sorted(rec([], 0, 1))
    for det, rows in found:
        if det // ambient.index <= max_index:
            yield Lattice.from_hnf(rows)


def index_in(L: Lattice, ambient: Lattice) -> int:
    if not ambient.contains_lattice(L):
        raise ValueError("not a sublattice of the ambient lattice")
    return L.index // ambient.index
