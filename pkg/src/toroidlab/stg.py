"""Symmetry type graphs built as coset graphs of the stabilizer K'.

Flags at the base vertex correspond to elements of Go, i-adjacency is left
multiplication by r_i, and automorphisms act on the right, so the flag
orbits are the left cosets gK'.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass

from .toroid import Toroid


class LabelOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class SymmetryTypeGraph:
    n: int
    vertices: int
    edges: tuple[tuple[int, int, int], ...]  # (u, v, label), u <= v; u == v is a semi-edge

    def neighbour(self, v: int, label: int) -> int:
        for a, b, lab in self.edges:
            if lab == label and v in (a, b):
                return b if a == v else a
        raise KeyError((v, label))

    def adjacency(self) -> list[dict[int, int]]:
        adj = [dict() for _ in range(self.vertices)]
        for a, b, lab in self.edges:
            adj[a][lab] = b
            adj[b][lab] = a
        return adj

    def semi_edges(self, v: int) -> set[int]:
        return {lab for a, b, lab in self.edges if a == b == v}

    def proper_degree(self, v: int) -> int:
        return sum(1 for a, b, _ in self.edges if a != b and v in (a, b))

    @property
    def canonical_key(self) -> str:
        return canonical_key(self)

    def to_json(self) -> dict:
        return {"n": self.n, "vertices": self.vertices, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data) -> SymmetryTypeGraph:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["n"], data["vertices"], _normalise(data["edges"]))


def _normalise(edges) -> tuple[tuple[int, int, int], ...]:
    return tuple(sorted({(min(a, b), max(a, b), lab) for a, b, lab in edges}, key=lambda e: (e[2], e[0], e[1])))


def coset_labels(t: Toroid) -> tuple[list[int], list[int]]:
    """Coset id of every element of Go, and one representative per coset."""
    G = t.tessellation.point_group
    K = t.stabilizer.sorted_members()
    coset = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset[g] < 0:
            c = len(reps)
            reps.append(g)
            for k in K:
                coset[G.mul(g, k)] = c
    return coset, reps


def build_stg(t: Toroid) -> SymmetryTypeGraph:
    tess = t.tessellation
    G = tess.point_group
    coset, reps = coset_labels(t)
    r = tess.distinguished_indices()
    K = t.stabilizer.sorted_members()
    edges = set()
    for c, g in enumerate(reps):
        for i, ri in enumerate(r):
            target = coset[G.mul(ri, g)]
            # adjacency must not depend on the coset representative
            for k in K[:3]:
                assert coset[G.mul(ri, G.mul(g, k))] == target
            edges.add((min(c, target), max(c, target), tess.relabel(i)))
    return SymmetryTypeGraph(tess.n, len(reps), _normalise(edges))


def i_face_transitive(g: SymmetryTypeGraph, i: int) -> bool:
    """True iff the graph stays connected after deleting the i-labelled edges."""
    if not 0 <= i <= g.n:
        raise LabelOutOfRange(f"label {i} outside 0..{g.n}")
    adj = [set() for _ in range(g.vertices)]
    for a, b, lab in g.edges:
        if lab != i and a != b:
            adj[a].add(b)
            adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.vertices


def dual_stg(g: SymmetryTypeGraph) -> SymmetryTypeGraph:
    return SymmetryTypeGraph(g.n, g.vertices, _normalise((a, b, g.n - lab) for a, b, lab in g.edges))


def _encode_from(g: SymmetryTypeGraph, adj, start: int) -> tuple:
    order = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for lab in range(g.n + 1):
            w = adj[v][lab]
            if w not in order:
                order[w] = len(order)
                queue.append(w)
    return tuple(sorted((min(order[a], order[b]), max(order[a], order[b]), lab) for a, b, lab in g.edges))


def canonical_key(g: SymmetryTypeGraph) -> str:
    """Isomorphism invariant: the least BFS encoding over all start vertices."""
    adj = g.adjacency()
    best = min(_encode_from(g, adj, s) for s in range(g.vertices))
    return f"n{g.n}v{g.vertices}:" + ";".join(f"{a}-{b}:{lab}" for a, b, lab in best)


def to_dot(g: SymmetryTypeGraph, name: str = "stg") -> str:
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(g.vertices):
        lines.append(f"  v{v};")
    for a, b, lab in sorted(g.edges, key=lambda e: (e[0], e[1], e[2])):
        if a == b:
            stub = f"s{a}_{lab}"
            lines.append(f"  {stub} [shape=point, style=invis];")
            lines.append(f"  v{a} -- {stub} [label={lab}];")
        else:
            lines.append(f"  v{a} -- v{b} [label={lab}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_EDGE = re.compile(r"v(\d+)\s*--\s*(v|s)(\d+)(?:_\d+)?\s*\[label=(\d+)\]")


def parse_dot(text: str, n: int) -> SymmetryTypeGraph:
    """Read back the output of ``to_dot``."""
    vertices = len(re.findall(r"^\s*v\d+;", text, flags=re.M))
    edges = []
    for a, kind, b, lab in _EDGE.findall(text):
        a, b, lab = int(a), int(b), int(lab)
        edges.append((a, a if kind == "s" else b, lab))
    return SymmetryTypeGraph(n, vertices, _normalise(edges))
