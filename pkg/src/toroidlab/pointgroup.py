"""Finite orthogonal matrix groups acting on row vectors.

Every group is stored twice: as exact matrices (``GroupElement``) and as
permutations of a finite faithful point set, the orbit of the scaled
coordinate vectors ``2e_i``.  The permutation form does all the heavy
lifting; matrices are rebuilt from it on demand.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import permutations, product
from math import factorial, gcd
from typing import Iterable, Sequence

from .exact import Matrix

POINT_SCALE = 2
TABLE_LIMIT = 5000


class OrderCapExceeded(RuntimeError):
    pass


class UnsupportedSpec(ValueError):
    pass


class NotSignedPermutation(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


class TooLarge(ValueError):
    pass


class BlockNotPreserved(AssertionError):
    pass


class GroupElement:
    """Orthogonal matrix with entries in (1/2)Z, stored as ``num / den``."""

    __slots__ = ("num", "den")

    def __init__(self, matrix, check: bool = True):
        M = matrix if isinstance(matrix, Matrix) else Matrix(matrix)
        den = M.denominator()
        num = tuple(tuple(int(x * den) for x in r) for r in M.rows)
        self._set(num, den)
        if check:
            n = len(num)
            if len(num[0]) != n:
                raise ValueError("group elements are square")
            for i in range(n):
                for j in range(n):
                    s = sum(a * b for a, b in zip(num[i], num[j]))
                    if s != (den * den if i == j else 0):
                        raise ValueError("matrix is not orthogonal")

    def _set(self, num, den):
        if den == 2 and all(x % 2 == 0 for r in num for x in r):
            num = tuple(tuple(x // 2 for x in r) for r in num)
            den = 1
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num, den) -> GroupElement:
        g = cls.__new__(cls)
        g._set(num, den)
        return g

    @classmethod
    def identity(cls, n: int) -> GroupElement:
        return cls._raw(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), 1)

    @property
    def n(self) -> int:
        return len(self.num)

    @property
    def matrix(self) -> Matrix:
        return Matrix([[Fraction(x, self.den) for x in r] for r in self.num])

    @property
    def key(self):
        return (self.den, self.num)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GroupElement({self.matrix.to_json()})"

    def __matmul__(self, other: GroupElement) -> GroupElement:
        cols = list(zip(*other.num))
        num = tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.num)
        den = self.den * other.den
        if den == 4:
            num = tuple(tuple(x // 2 for x in r) for r in num)
            den = 2
            if any(x % 2 for r in num for x in r):
                raise ValueError("product left the half-integer ring")
        return GroupElement._raw(num, den)

    __mul__ = __matmul__

    def inverse(self) -> GroupElement:
        return GroupElement._raw(tuple(zip(*self.num)), self.den)

    def apply(self, v: Sequence) -> tuple:
        n = self.n
        out = []
        for j in range(n):
            s = sum(Fraction(x) * r[j] for x, r in zip(v, self.num)) / self.den
            out.append(s.numerator if s.denominator == 1 else s)
        return tuple(out)

    def det(self) -> int:
        return int(self.matrix.det())

    def is_signed_permutation(self) -> bool:
        if self.den != 1:
            return False
        return all(sum(1 for x in r if x) == 1 for r in self.num)

    def to_json(self) -> list:
        return self.matrix.to_json()


def signed_permutation(perm: Sequence[int], signs: Sequence[int] | None = None) -> GroupElement:
    """Matrix sending ``e_i`` to ``signs[i] * e_perm[i]``."""
    n = len(perm)
    signs = signs or [1] * n
    rows = [[signs[i] if perm[i] == j else 0 for j in range(n)] for i in range(n)]
    return GroupElement._raw(tuple(tuple(r) for r in rows), 1)


def sign_change(mask: int, n: int) -> GroupElement:
    return signed_permutation(range(n), [-1 if mask >> i & 1 else 1 for i in range(n)])


def compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Permutation 'first a, then b'."""
    return tuple(b[x] for x in a)


def perm_inverse(a: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def perm_order(a: Sequence[int]) -> int:
    seen = [False] * len(a)
    order = 1
    for i in range(len(a)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                k += 1
            order = order * k // gcd(order, k)
    return order


def _point_orbit(generators: Sequence[GroupElement], n: int) -> list[tuple[int, ...]]:
    start = []
    for i in range(n):
        for s in (1, -1):
            start.append(tuple(s * POINT_SCALE if j == i else 0 for j in range(n)))
    seen = {p: None for p in start}
    queue = deque(start)
    while queue:
        p = queue.popleft()
        for g in generators:
            q = g.apply(p)
            if any(isinstance(x, Fraction) for x in q):
                raise ValueError("generator does not preserve the point lattice")
            if q not in seen:
                seen[q] = None
                queue.append(q)
    return list(seen)


class PointGroup:
    """A finite matrix group, fully enumerated."""

    def __init__(self, generators: Sequence[GroupElement], order_cap: int = 100_000,
                 names: Sequence[str] | None = None, label: str = ""):
        gens = [g if isinstance(g, GroupElement) else GroupElement(g) for g in generators]
        if not gens:
            raise ValueError("need at least one generator")
        n = gens[0].n
        if any(g.n != n for g in gens):
            raise ValueError("generators of mixed dimension")
        self.n = n
        self.label = label
        self.generators = gens
        self.gen_names = list(names) if names else [f"g{i}" for i in range(len(gens))]
        self.points = _point_orbit(gens, n)
        self.point_index = {p: i for i, p in enumerate(self.points)}
        # rows of the matrix are read off from the images of 2e_i
        self._basis_points = [self.point_index[tuple(POINT_SCALE if j == i else 0 for j in range(n))] for i in range(n)]
        self.gen_perms = [self.perm_of(g) for g in gens]
        identity = tuple(range(len(self.points)))
        self.perms = [identity]
        self.index_of = {identity: 0}
        queue = deque([0])
        while queue:
            i = queue.popleft()
            p = self.perms[i]
            for gp in self.gen_perms:
                q = compose(p, gp)
                if q not in self.index_of:
                    if len(self.perms) >= order_cap:
                        raise OrderCapExceeded(f"group order exceeds {order_cap}")
                    self.index_of[q] = len(self.perms)
                    self.perms.append(q)
                    queue.append(self.index_of[q])
        self._elements = None
        self._mats = None
        self._table = None
        self._inv = None
        self.named_elements: dict[str, GroupElement] = {}
        for nm, g in zip(self.gen_names, gens):
            self.named_elements[nm] = g
        chi = GroupElement._raw(tuple(tuple(-int(i == j) for j in range(n)) for i in range(n)), 1)
        if self.contains(chi):
            self.named_elements["chi"] = chi
        for i in range(n):
            E = sign_change(1 << i, n)
            if self.contains(E):
                self.named_elements[f"E{i + 1}"] = E

    def __repr__(self):
        return f"PointGroup({self.label or 'n=%d' % self.n}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.perms)

    def __len__(self):
        return len(self.perms)

    def perm_of(self, g: GroupElement) -> tuple[int, ...] | None:
        out = []
        for p in self.points:
            q = g.apply(p)
            j = self.point_index.get(q)
            if j is None:
                return None
            out.append(j)
        return tuple(out)

    def element_index(self, g: GroupElement) -> int | None:
        p = self.perm_of(g)
        return None if p is None else self.index_of.get(p)

    def contains(self, g: GroupElement) -> bool:
        return g.n == self.n and self.element_index(g) is not None

    __contains__ = contains

    def matrix_of(self, i: int) -> GroupElement:
        p = self.perms[i]
        rows = []
        for b in self._basis_points:
            rows.append(self.points[p[b]])
        den = POINT_SCALE
        return GroupElement._raw(tuple(tuple(rows)), den)

    @property
    def elements(self) -> list[GroupElement]:
        if self._elements is None:
            self._elements = [self.matrix_of(i) for i in range(self.order)]
        return self._elements

    def int_matrices(self) -> list[tuple[tuple[tuple[int, ...], ...], int]]:
        """``(num, den)`` for every element, in element order."""
        if self._mats is None:
            self._mats = [(g.num, g.den) for g in self.elements]
        return self._mats

    def mul(self, i: int, j: int) -> int:
        """Index of the matrix product ``elements[i] @ elements[j]``."""
        if self._table is not None:
            return self._table[i][j]
        return self.index_of[compose(self.perms[i], self.perms[j])]

    def inv(self, i: int) -> int:
        if self._inv is None:
            self._inv = [self.index_of[perm_inverse(p)] for p in self.perms]
        return self._inv[i]

    def table(self) -> list[list[int]]:
        if self._table is None:
            if self.order > TABLE_LIMIT:
                raise TooLarge(f"no multiplication table for order {self.order}")
            perms, idx = self.perms, self.index_of
            self._table = [[idx[compose(p, q)] for q in perms] for p in perms]
        return self._table

    def element_order(self, i: int) -> int:
        return perm_order(self.perms[i])

    def gen_indices(self) -> list[int]:
        return [self.index_of[p] for p in self.gen_perms]

    def whole(self) -> Subgroup:
        return Subgroup(self, range(self.order), label=self.label)

    def closure(self, elements: Iterable[GroupElement | int], label: str = "") -> Subgroup:
        """Subgroup generated by the given elements (matrices or indices)."""
        gens = []
        for g in elements:
            i = g if isinstance(g, int) else self.element_index(g)
            if i is None:
                raise NotASubgroup("generator outside the parent group")
            gens.append(i)
        members = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for b in gens:
                c = self.mul(a, b)
                if c not in members:
                    members.add(c)
                    queue.append(c)
        return Subgroup(self, members, label=label, generators=gens)

    def filter(self, pred, label: str = "") -> Subgroup:
        return Subgroup(self, [i for i, g in enumerate(self.elements) if pred(g)], label=label)


class Subgroup:
    """A subset of a parent ``PointGroup`` closed under products."""

    def __init__(self, parent: PointGroup, members: Iterable[int], label: str = "",
                 generators: Sequence[int] | None = None):
        self.parent = parent
        self.members = frozenset(members)
        self.label = label
        self._generators = list(generators) if generators else None
        if parent.order % len(self.members):
            raise NotASubgroup("Lagrange violated: not a subgroup")

    def __repr__(self):
        return f"Subgroup({self.label or '?'}, order={self.order}, index={self.index})"

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @property
    def n(self) -> int:
        return self.parent.n

    def __contains__(self, g) -> bool:
        if isinstance(g, int):
            return g in self.members
        i = self.parent.element_index(g)
        return i is not None and i in self.members

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    @property
    def elements(self) -> list[GroupElement]:
        return [self.parent.elements[i] for i in self.sorted_members()]

    def is_closed(self) -> bool:
        m = self.members
        gens = self.generators()
        return 0 in m and all(self.parent.mul(a, b) in m for a in m for b in gens)

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily in element order."""
        if self._generators is None:
            P = self.parent
            gens: list[int] = []
            span = {0}
            for i in self.sorted_members():
                if i in span:
                    continue
                gens.append(i)
                span = set(P.closure(gens).members)
                if len(span) == self.order:
                    break
            self._generators = gens
        return self._generators

    def conjugate(self, g: int) -> Subgroup:
        """``g^-1 H g``."""
        P = self.parent
        gi = P.inv(g)
        return Subgroup(P, (P.mul(P.mul(gi, h), g) for h in self.members))

    def to_json(self) -> list:
        return [g.to_json() for g in self.elements]


def generate(generators: Sequence, order_cap: int = 100_000) -> PointGroup:
    return PointGroup(generators, order_cap=order_cap)


# ---------------------------------------------------------------- named groups


def cubic_generators(n: int) -> list[GroupElement]:
    """R_1..R_n of the cubic tessellation (adjacent swaps, then negate x_n)."""
    gens = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(signed_permutation(p))
    gens.append(sign_change(1 << (n - 1), n))
    return gens


def t3343_generators() -> list[GroupElement]:
    """R_1..R_4 of the {3,3,4,3} tessellation."""
    h = Fraction(1, 2)
    # x -> (x, x - x3 - x4, x - x2 - x4, x - x2 - x3) with x the half coordinate sum
    R1 = GroupElement([[h, h, h, h], [h, h, -h, -h], [h, -h, h, -h], [h, -h, -h, h]])
    R2 = sign_change(1 << 3, 4)
    R3 = signed_permutation([0, 1, 3, 2])
    R4 = signed_permutation([0, 2, 1, 3])
    return [R1, R2, R3, R4]


def r0_linear(n: int) -> GroupElement:
    return sign_change(1, n)


_GROUP_CACHE: dict = {}


def hyperoctahedral(n: int) -> PointGroup:
    key = ("B", n)
    if key not in _GROUP_CACHE:
        _GROUP_CACHE[key] = PointGroup(cubic_generators(n), names=[f"R{i}" for i in range(1, n + 1)],
                                       label=f"B_{n}")
    return _GROUP_CACHE[key]


def group_3343() -> PointGroup:
    key = ("F4",)
    if key not in _GROUP_CACHE:
        _GROUP_CACHE[key] = PointGroup(t3343_generators(), names=["R1", "R2", "R3", "R4"], label="[3,4,3]")
    return _GROUP_CACHE[key]


def _perm_matrix(images: Sequence[int]) -> GroupElement:
    return signed_permutation(images)


def _transposition(n: int, i: int, j: int) -> GroupElement:
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return signed_permutation(p)


def _sym_gens(n: int) -> list[GroupElement]:
    return [_transposition(n, i, i + 1) for i in range(n - 1)]


def _alt_gens(n: int) -> list[GroupElement]:
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = p[1], p[k], p[0]
        gens.append(signed_permutation(p))
    return gens or [GroupElement.identity(n)]


def _c2_gens(n: int) -> list[GroupElement]:
    return [sign_change(1 << i, n) for i in range(n)]


def _c2plus_gens(n: int) -> list[GroupElement]:
    return [sign_change((1 << i) | (1 << (i + 1)), n) for i in range(n - 1)]


def _d4_gens() -> list[GroupElement]:
    return [signed_permutation([1, 0, 3, 2]), signed_permutation([0, 3, 2, 1])]


def pgl25_gens() -> list[GroupElement]:
    """x -> x+1, x -> 2x, x -> 1/x on the projective line {0,1,2,3,4,inf}."""
    inf = 5

    def perm(f):
        return signed_permutation([f(x) for x in range(6)])

    plus = perm(lambda x: inf if x == inf else (x + 1) % 5)
    times = perm(lambda x: inf if x == inf else (2 * x) % 5)

    def recip(x):
        if x == 0:
            return inf
        if x == inf:
            return 0
        return pow(x, -1, 5)

    return [plus, times, perm(recip)]


def _factor_gens(name: str, n: int) -> list[GroupElement]:
    name = name.strip()
    if name in ("C2n", "C2^n"):
        return _c2_gens(n)
    if name in ("C2n_plus", "C2^n+"):
        return _c2plus_gens(n)
    if name == "S_n":
        return _sym_gens(n)
    if name == "A_n":
        return _alt_gens(n)
    if name == "S_n_minus_1":
        return [_transposition(n, i, i + 1) for i in range(n - 2)] or [GroupElement.identity(n)]
    if name == "D4":
        if n != 4:
            raise UnsupportedSpec("D4 acts on 4 coordinates")
        return _d4_gens()
    if name == "PGL25":
        if n != 6:
            raise UnsupportedSpec("PGL25 acts on 6 coordinates")
        return pgl25_gens()
    if name == "chi":
        return [GroupElement._raw(tuple(tuple(-int(i == j) for j in range(n)) for i in range(n)), 1)]
    if name in ("R1", "R2", "R3", "R4", "R1R2"):
        R = dict(zip(["R1", "R2", "R3", "R4"], t3343_generators()))
        if n != 4:
            raise UnsupportedSpec("[3,4,3] generators live in dimension 4")
        if name == "R1R2":
            return [R["R1"] @ R["R2"]]
        return [R[name]]
    raise UnsupportedSpec(f"unknown group factor {name!r}")


# representatives of the conjugacy classes of index 2, 3, 4 in [3,4,3] that contain -I
TABLE3 = {
    "G3343_plus": (2, None),
    "C2n_plus:A_n:R1:R2": (2, ["C2n_plus", "A_n", "R1", "R2"]),
    "C2n_plus:S_n:R1R2": (2, ["C2n_plus", "S_n", "R1R2"]),
    "C2n_plus:S_n:R2": (3, ["C2n_plus", "S_n", "R2"]),
    "C2n_plus:D4:R1:R2": (3, ["C2n_plus", "D4", "R1", "R2"]),
    "C2n_plus:A_n:R1R2": (4, ["C2n_plus", "A_n", "R1R2"]),
}

GROUP_SPECS = (
    "B_n", "B_n_plus", "C2n", "C2n_plus", "S_n", "A_n", "S_n_minus_1", "D4", "PGL25", "G3343",
) + tuple(TABLE3)


def named_group(spec: str, n: int | None = None) -> Subgroup:
    """Subgroup for a spec string; products of factors are joined by ``:``.

    Factors are closed inside B_n, except when a [3,4,3] generator appears or
    the spec starts with ``G3343``, in which case the parent is [3,4,3].
    """
    spec = spec.strip()
    if spec == "G3343":
        return group_3343().whole()
    if spec == "G3343_plus":
        G = group_3343()
        return G.filter(lambda g: g.det() == 1, label=spec)
    if n is None:
        raise UnsupportedSpec(f"{spec} needs a dimension")
    if spec == "B_n":
        return hyperoctahedral(n).whole()
    if spec == "B_n_plus":
        return hyperoctahedral(n).filter(lambda g: g.det() == 1, label=spec)
    factors = spec.split(":")
    uses_3343 = any(f in ("R1", "R2", "R3", "R4", "R1R2") for f in factors)
    if uses_3343 and n != 4:
        raise UnsupportedSpec(f"{spec} is a subgroup of [3,4,3]")
    parent = group_3343() if uses_3343 else hyperoctahedral(n)
    gens = []
    for f in factors:
        gens.extend(_factor_gens(f, n))
    return parent.closure(gens, label=spec)


# ---------------------------------------------------------------- projections


def eta_projection(g: GroupElement) -> tuple[int, ...]:
    """Coordinate permutation underlying a signed permutation: e_i -> +-e_{p[i]}."""
    if not g.is_signed_permutation():
        raise NotSignedPermutation("not a signed permutation matrix")
    return tuple(next(j for j, x in enumerate(r) if x) for r in g.num)


def sign_mask(g: GroupElement) -> int:
    """Bitmask of rows carrying a -1 in a signed permutation."""
    if not g.is_signed_permutation():
        raise NotSignedPermutation("not a signed permutation matrix")
    return sum(1 << i for i, r in enumerate(g.num) if min(r) < 0)


def index(G: PointGroup | Subgroup, H: Subgroup) -> int:
    if isinstance(G, PointGroup):
        G = G.whole()
    if H.parent is not G.parent or not H.members <= G.members:
        raise NotASubgroup("H is not contained in G")
    return G.order // H.order


def _invariants(H: Subgroup) -> tuple:
    P = H.parent
    return (H.order, tuple(sorted(P.element_order(i) for i in H.members)),
            sum(1 for i in H.members if P.matrix_of(i).det() == 1))


def is_conjugate(G: PointGroup | Subgroup, H1: Subgroup, H2: Subgroup) -> tuple[bool, GroupElement | None]:
    """Search ``g`` in ``G`` with ``g^-1 H1 g = H2``."""
    if isinstance(G, PointGroup):
        G = G.whole()
    P = G.parent
    if H1.order != H2.order:
        return False, None
    if H1.members == H2.members:
        return True, P.elements[0]
    if _invariants(H1) != _invariants(H2):
        return False, None
    gens = H1.generators()
    target = H2.members
    for g in sorted(G.members):
        gi = P.inv(g)
        if all(P.mul(P.mul(gi, h), g) in target for h in gens):
            return True, P.elements[g]
    return False, None


# ---------------------------------------------------------------- low index


def _f2_solutions(relations: list[int], nvars: int) -> list[int]:
    """All x in F_2^nvars with parity(r & x) = 0 for every relation r."""
    pivots: dict[int, int] = {}
    for r in relations:
        for b in sorted(pivots, reverse=True):
            if r >> b & 1:
                r ^= pivots[b]
        if r:
            top = r.bit_length() - 1
            for b in list(pivots):
                if pivots[b] >> top & 1:
                    pivots[b] ^= r
            pivots[top] = r
    free = [b for b in range(nvars) if b not in pivots]
    sols = []
    for bits in range(1 << len(free)):
        x = 0
        for k, b in enumerate(free):
            if bits >> k & 1:
                x |= 1 << b
        for b, r in pivots.items():
            if bin(r & x & ~(1 << b)).count("1") % 2:
                x |= 1 << b
        sols.append(x)
    return sols


def _index2(H: Subgroup) -> list[Subgroup]:
    P = H.parent
    gens = H.generators()
    k = len(gens)
    # spanning tree parities: word[e] = generator-count parity along the BFS path
    word = {0: 0}
    queue = deque([0])
    relations = []
    while queue:
        a = queue.popleft()
        for t, b in enumerate(gens):
            c = P.mul(a, b)
            w = word[a] ^ (1 << t)
            if c not in word:
                word[c] = w
                queue.append(c)
            elif w != word[c]:
                relations.append(w ^ word[c])
    out = []
    for x in _f2_solutions(relations, k):
        if x == 0:
            continue
        kernel = [e for e, w in word.items() if bin(w & x).count("1") % 2 == 0]
        out.append(Subgroup(P, kernel))
    return out


def _sk_elements(k: int) -> list[tuple[int, ...]]:
    return list(permutations(range(k)))


def _perm_hom_candidates(H: Subgroup, k: int) -> Iterable[list[tuple[int, ...]]]:
    P = H.parent
    gens = H.generators()
    ords = [P.element_order(g) for g in gens]
    pair_ords = {}
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            pair_ords[a, b] = P.element_order(P.mul(gens[a], gens[b]))
    sk = _sk_elements(k)
    images: list[tuple[int, ...]] = []

    def rec(t):
        if t == len(gens):
            yield list(images)
            return
        for p in sk:
            if ords[t] % perm_order(p):
                continue
            if any(pair_ords[a, t] % perm_order(compose(images[a], p)) for a in range(t)):
                continue
            images.append(p)
            yield from rec(t + 1)
            images.pop()

    yield from rec(0)


def _extend_hom(H: Subgroup, images: list[tuple[int, ...]]) -> dict[int, tuple[int, ...]] | None:
    P = H.parent
    gens = H.generators()
    k = len(images[0])
    phi = {0: tuple(range(k))}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b, im in zip(gens, images):
            c = P.mul(a, b)
            v = compose(phi[a], im)
            if c not in phi:
                phi[c] = v
                queue.append(c)
            elif phi[c] != v:
                return None
    return phi


def _is_transitive(images: list[tuple[int, ...]], k: int) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for p in images:
            y = p[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == k


def conjugacy_representatives(G: Subgroup, groups: Iterable[Subgroup]) -> list[Subgroup]:
    reps: list[Subgroup] = []
    for S in sorted(set(groups), key=lambda s: (-s.order, s.sorted_members())):
        if not any(is_conjugate(G, R, S)[0] for R in reps if R.order == S.order):
            reps.append(S)
    return reps


def low_index_subgroups(G: PointGroup | Subgroup, k: int, require_chi: bool = False) -> list[Subgroup]:
    """One subgroup per conjugacy class of subgroups of index ``k`` in ``G``."""
    if isinstance(G, PointGroup):
        G = G.whole()
    P = G.parent
    if k == 1:
        found = [G]
    elif k == 2:
        found = _index2(G)
    elif k in (3, 4):
        if G.order > 4000:
            raise TooLarge("index 3 and 4 searches are limited to groups of order <= 4000")
        found = set()
        for images in _perm_hom_candidates(G, k):
            if not _is_transitive(images, k):
                continue
            phi = _extend_hom(G, images)
            if phi is None:
                continue
            found.add(Subgroup(P, [e for e, p in phi.items() if p[0] == 0]))
    else:
        raise TooLarge(f"index {k} is outside the supported range")
    if require_chi:
        chi = P.named_elements.get("chi")
        found = [S for S in found if chi is not None and chi in S]
    return conjugacy_representatives(G, found)


# ---------------------------------------------------------------- 24-cell blocks


def cell24_blocks() -> list[list[tuple[int, ...]]]:
    O0 = [tuple(s * 2 if j == i else 0 for j in range(4)) for i in range(4) for s in (1, -1)]
    O1, O2 = [], []
    for signs in product((1, -1), repeat=4):
        (O1 if signs.count(-1) % 2 == 0 else O2).append(signs)
    return [O0, O1, O2]


def block_action(g: GroupElement) -> tuple[int, int, int]:
    """Permutation of the three blocks {O0, O1, O2} induced by ``g``."""
    blocks = cell24_blocks()
    where = {p: b for b, blk in enumerate(blocks) for p in blk}
    images = []
    for b, blk in enumerate(blocks):
        targets = {where.get(g.apply(p)) for p in blk}
        if len(targets) != 1 or None in targets:
            raise BlockNotPreserved("element does not permute the 24-cell blocks")
        images.append(targets.pop())
    return tuple(images)


# ---------------------------------------------------------------- sign subgroups


def f2_subspaces(n: int) -> list[frozenset[int]]:
    """Every subgroup of C_2^n, as a set of bitmasks."""
    found = {frozenset([0])}
    frontier = [frozenset([0])]
    full = 1 << n
    while frontier:
        nxt = []
        for S in frontier:
            for v in range(1, full):
                if v in S:
                    continue
                T = frozenset(S | {s ^ v for s in S})
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(found, key=lambda S: (len(S), sorted(S)))


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for i, j in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << j
    return out


def normalized_by(S: frozenset[int], perms: Iterable[Sequence[int]]) -> bool:
    return all(permute_mask(m, p) in S for p in perms for m in S)


def setwise_stabilizer_order(S: frozenset[int], n: int) -> int:
    return sum(1 for p in permutations(range(n)) if normalized_by(S, [p]))


def f2_basis(S: Iterable[int]) -> list[int]:
    basis: list[int] = []
    span = {0}
    for v in sorted(S):
        if v not in span:
            basis.append(v)
            span |= {s ^ v for s in span}
    return basis


def admissible_sign_subgroups(n: int, k: int) -> list[frozenset[int]]:
    """Minimal sign subgroups that any point-group stabilizer of index <= k must contain.

    If K has index at most k in B_n then A = K & C_2^n contains chi, is
    normalised by the coordinate action of K, and satisfies
    [C_2^n : A] * [S_n : N(A)] <= k.  The minimal such A are returned, one
    per orbit under coordinate permutations.
    """
    chi = (1 << n) - 1
    nf = factorial(n)
    cands = []
    for S in f2_subspaces(n):
        if chi not in S:
            continue
        idx = (1 << n) // len(S)
        if idx > k:
            continue
        if idx * (nf // setwise_stabilizer_order(S, n)) <= k:
            cands.append(S)
    minimal = [S for S in cands if not any(T < S for T in cands)]
    reps: list[frozenset[int]] = []
    allp = list(permutations(range(n)))
    for S in minimal:
        if not any(frozenset(permute_mask(m, p) for m in S) == R for R in reps for p in allp):
            reps.append(S)
    return reps


def is_3_transitive(perms: Iterable[Sequence[int]], m: int) -> tuple[bool, bool]:
    """(3-transitive, sharply 3-transitive) for a set of permutations of m points."""
    perms = list(perms)
    counts: dict[tuple, int] = {}
    for p in perms:
        key = (p[0], p[1], p[2])
        counts[key] = counts.get(key, 0) + 1
    triples = [t for t in permutations(range(m), 3)]
    trans = all(counts.get(t, 0) > 0 for t in triples)
    sharp = trans and all(counts[t] == 1 for t in triples)
    return trans, sharp
