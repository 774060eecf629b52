"""Toroids as (tessellation, lattice) pairs and their point-group stabilizers."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .exact import contains_int, hnf_rows
from .lattice import Lattice, named
from .pointgroup import (
    GroupElement,
    PointGroup,
    Subgroup,
    group_3343,
    hyperoctahedral,
    r0_linear,
)

FAMILIES = ("cubic", "3343", "3433")


class NotSublattice(ValueError):
    pass


class NotTwoOrbit(ValueError):
    pass


class TessellationMismatch(ValueError):
    pass


class ChiralityViolation(AssertionError):
    pass


@dataclass(frozen=True)
class Tessellation:
    family: str  # "cubic" or "3343"
    n: int
    dual_flag: bool = False

    def __post_init__(self):
        if self.family not in ("cubic", "3343"):
            raise ValueError(f"unknown tessellation family {self.family!r}")
        if self.family == "cubic" and self.n < 2:
            raise ValueError("cubic tessellations need n >= 2")
        if self.family == "3343" and self.n != 4:
            raise ValueError("{3,3,4,3} lives in dimension 4")

    @property
    def name(self) -> str:
        if self.family == "cubic":
            return "cubic"
        return "3433" if self.dual_flag else "3343"

    @property
    def point_group(self) -> PointGroup:
        return hyperoctahedral(self.n) if self.family == "cubic" else group_3343()

    @property
    def vertex_lattice(self) -> Lattice:
        return named("cln", self.n) if self.family == "cubic" else named("bcln", 4)

    @property
    def distinguished(self) -> list[GroupElement]:
        """r_0 (linear part of R_0) followed by R_1..R_n."""
        return [r0_linear(self.n)] + list(self.point_group.generators)

    def distinguished_indices(self) -> list[int]:
        G = self.point_group
        return [G.element_index(g) for g in self.distinguished]

    def dual(self) -> Tessellation:
        if self.family == "cubic":
            return self
        return Tessellation(self.family, self.n, not self.dual_flag)

    def relabel(self, i: int) -> int:
        """Label as seen from the requested view (dual views reverse ranks)."""
        return self.n - i if self.dual_flag else i


def tessellation(spec: str, n: int | None = None) -> Tessellation:
    spec = spec.strip().lower().strip("{}").replace(",", "")
    if spec == "cubic" or spec.startswith("4") and set(spec[1:-1]) <= {"3"} and spec.endswith("4"):
        if n is None:
            raise ValueError("cubic tessellations need a dimension")
        return Tessellation("cubic", n)
    if spec == "3343":
        return Tessellation("3343", 4)
    if spec == "3433":
        return Tessellation("3343", 4, dual_flag=True)
    raise ValueError(f"unknown tessellation {spec!r}")


def _invariant_mask(L: Lattice, mats) -> list[bool]:
    H = L.hnf
    n = L.n
    out = []
    for num, den in mats:
        ok = True
        for r in H:
            img = []
            for j in range(n):
                s = 0
                for x, row in zip(r, num):
                    if x:
                        s += x * row[j]
                if den != 1:
                    if s % den:
                        ok = False
                        break
                    s //= den
                img.append(s)
            if not ok or not contains_int(H, img):
                ok = False
                break
        out.append(ok)
    return out


def stabilizer(t: Tessellation, L: Lattice) -> Subgroup:
    """K' = {S in Go : L S = L}, by exhaustive filtering of Go."""
    if L.n != t.n or not t.vertex_lattice.contains_lattice(L):
        raise NotSublattice("lattice is not a full-rank sublattice of the vertex lattice")
    G = t.point_group
    mask = _invariant_mask(L, G.int_matrices())
    return Subgroup(G, [i for i, ok in enumerate(mask) if ok], label="K'")


def image_hnf(H, num, den) -> tuple:
    n = len(H)
    rows = []
    for r in H:
        img = []
        for j in range(n):
            s = 0
            for x, row in zip(r, num):
                if x:
                    s += x * row[j]
            img.append(s // den)
        rows.append(img)
    return hnf_rows(rows, n)


def lattice_orbit(t: Tessellation, L: Lattice) -> list[tuple]:
    """HNFs of all images of ``L`` under Go, by breadth-first search on generators."""
    gens = [(g.num, g.den) for g in t.point_group.generators]
    seen = {L.hnf}
    queue = deque([L.hnf])
    while queue:
        H = queue.popleft()
        for num, den in gens:
            K = image_hnf(H, num, den)
            if K not in seen:
                seen.add(K)
                queue.append(K)
    return sorted(seen)


@dataclass
class Toroid:
    tessellation: Tessellation
    lattice: Lattice
    _stab: Subgroup | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        t = self.tessellation
        if self.lattice.n != t.n:
            raise NotSublattice(f"lattice has dimension {self.lattice.n}, tessellation {t.n}")
        if not t.vertex_lattice.contains_lattice(self.lattice):
            raise NotSublattice("lattice is not contained in the vertex lattice")

    @property
    def stabilizer(self) -> Subgroup:
        if self._stab is None:
            self._stab = stabilizer(self.tessellation, self.lattice)
        return self._stab

    @property
    def orbit_count(self) -> int:
        return self.stabilizer.index

    @property
    def index(self) -> int:
        """Index of the lattice inside the vertex lattice."""
        return self.lattice.index // self.tessellation.vertex_lattice.index

    def to_json(self) -> dict:
        d = {"tessellation": self.tessellation.name, "n": self.tessellation.n,
             "lattice": self.lattice.to_json(), "orbits": self.orbit_count}
        if self.orbit_count == 2:
            d["class2I"] = sorted(two_orbit_class(self))
        return d

    @classmethod
    def from_json(cls, data) -> Toroid:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tessellation(data["tessellation"], data["n"]), Lattice.from_json(data["lattice"]))


def flag_orbit_count(t: Toroid) -> int:
    return t.orbit_count


def two_orbit_class(t: Toroid) -> frozenset[int]:
    """I = {i : r_i in K'}, reported in the labels of the requested view."""
    if t.orbit_count != 2:
        raise NotTwoOrbit(f"toroid has {t.orbit_count} flag orbits")
    tess = t.tessellation
    K = t.stabilizer
    return frozenset(tess.relabel(i) for i, g in enumerate(tess.distinguished_indices()) if g in K)


def are_isomorphic(t1: Toroid, t2: Toroid) -> tuple[bool, GroupElement | None]:
    """Search Go for S with L1 S = L2."""
    if t1.tessellation.family != t2.tessellation.family or t1.tessellation.n != t2.tessellation.n:
        raise TessellationMismatch("toroids come from different tessellations")
    L1, L2 = t1.lattice, t2.lattice
    if L1.index != L2.index:
        return False, None
    G = t1.tessellation.point_group
    target = L2.hnf
    for i, (num, den) in enumerate(G.int_matrices()):
        if image_hnf(L1.hnf, num, den) == target:
            return True, G.elements[i]
    return False, None


def canonical_form(t: Toroid) -> Lattice:
    """Lexicographically smallest HNF in the Go-orbit of the lattice."""
    return Lattice.from_hnf(lattice_orbit(t.tessellation, t.lattice)[0])


def check_chirality(t: Toroid) -> None:
    """Raise if the stabilizer looks like that of a chiral toroid."""
    if t.orbit_count != 2:
        return
    G = t.tessellation.point_group
    if all(G.matrix_of(i).det() == 1 for i in t.stabilizer.members):
        raise ChiralityViolation(f"lattice {t.lattice.hnf} has a rotation-only stabilizer of index 2")
