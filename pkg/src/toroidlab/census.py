"""Sublattice campaigns and bounded verification suites."""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .lattice import (
    BoundTooLarge,
    Lattice,
    count_sublattices,
    enumerate_sublattices,
    layer_decompose,
    named,
    NotReflectionInvariant,
    sublattice_cap,
    total_exceeds,
)
from .pointgroup import (
    f2_basis,
    hyperoctahedral,
    group_3343,
    is_conjugate,
    low_index_subgroups,
    named_group,
    permute_mask,
    sign_change,
    TABLE3,
)
from .stg import build_stg, i_face_transitive
from .toroid import (
    Tessellation,
    Toroid,
    canonical_form,
    check_chirality,
    lattice_orbit,
    tessellation,
    two_orbit_class,
)

log = logging.getLogger(__name__)

DEFAULT_BOUNDS = {3: 64, 4: 256, 5: 32, 6: 8}
DEFAULT_MAX_INDEX = 4096


class UnknownSuite(ValueError):
    pass


class IoFailure(OSError):
    pass


def max_index_cap() -> int:
    return int(os.environ.get("TOROIDLAB_MAX_INDEX", DEFAULT_MAX_INDEX))


@dataclass
class CensusRecord:
    tess: str
    n: int
    hnf: list[list[int]]
    index: int
    orbits: int
    class2I: list[int] | None
    stg: str
    family: str | None

    def to_json(self) -> dict:
        return {"tess": self.tess, "n": self.n, "hnf": self.hnf, "index": self.index,
                "orbits": self.orbits, "class2I": self.class2I, "stg": self.stg, "family": self.family}

    @classmethod
    def from_json(cls, d: dict) -> CensusRecord:
        return cls(d["tess"], d["n"], d["hnf"], d["index"], d["orbits"], d["class2I"], d["stg"], d["family"])

    @property
    def lattice(self) -> Lattice:
        return Lattice.from_hnf(self.hnf)


@dataclass
class VerificationReport:
    suite: str
    status: str
    counterexamples: list = field(default_factory=list)
    parameters: dict = field(default_factory=dict)
    runtime: float = 0.0
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"suite": self.suite, "status": self.status, "parameters": self.parameters,
                "runtime": round(self.runtime, 3), "details": self.details,
                "counterexamples": [c.to_json() if hasattr(c, "to_json") else c for c in self.counterexamples]}


# ---------------------------------------------------------------- sign subgroups


def _even_functionals(n: int) -> list[int]:
    return [f for f in range(1, 1 << n) if bin(f).count("1") % 2 == 0]


def _span(vectors: Iterable[int]) -> frozenset[int]:
    S = {0}
    for v in vectors:
        S |= {s ^ v for s in S}
    return frozenset(S)


def _annihilator(W: frozenset[int], n: int) -> frozenset[int]:
    return frozenset(m for m in range(1 << n) if all(bin(m & f).count("1") % 2 == 0 for f in W))


@lru_cache(maxsize=None)
def admissible_sign_subgroups(n: int, k: int) -> tuple[frozenset[int], ...]:
    """Minimal sign subgroups contained in every stabilizer of index <= k in B_n.

    For K of index at most k, A = K & C_2^n contains chi, is normalised by the
    coordinate permutations in eta(K), and [C_2^n : A] * [S_n : N(A)] <= k
    where N(A) is the setwise stabilizer of A.  Subgroups containing chi are
    annihilators of subspaces of even-weight functionals, which keeps the
    search tiny.  One representative per orbit under coordinate permutations.
    """
    from itertools import permutations
    from math import factorial

    perms = list(permutations(range(n)))
    evens = _even_functionals(n)
    spaces = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for W in frontier:
            if 2 * len(W) > k:
                continue
            for f in evens:
                if f not in W:
                    V = _span(list(W) + [f])
                    if V not in spaces:
                        spaces.add(V)
                        nxt.append(V)
        frontier = nxt
    cands = []
    for W in spaces:
        stab = sum(1 for p in perms if all(permute_mask(f, p) in W for f in W))
        if len(W) * (factorial(n) // stab) <= k:
            cands.append(_annihilator(W, n))
    minimal = [A for A in cands if not any(B < A for B in cands)]
    reps: list[frozenset[int]] = []
    for A in sorted(minimal, key=lambda S: (len(S), sorted(S))):
        if not any(frozenset(permute_mask(m, p) for m in A) == R for R in reps for p in perms):
            reps.append(A)
    return tuple(reps)


# ---------------------------------------------------------------- family tags


def n_orbit_family(k: int, n: int, s: int, d: int) -> Lattice:
    """Member (s, d) of the k-th family of n-orbit lattices (layers over x_n = 0)."""
    m = n - 1
    e = lambda i: [int(i == j) for j in range(n)]
    if k in (1, 2, 3) or k == 5:
        base = {1: "cln", 2: "fcln", 3: "bcln", 5: "fcln"}[k]
        rows = [list(r) + [0] for r in named(base, m, s).hnf]
        if k == 5:
            if d % 2:
                raise ValueError("family 5 needs d even")
            rows.append([s] + [0] * (m - 1) + [d // 2])
        else:
            rows.append([d * x for x in e(n - 1)])
        return Lattice(rows)
    if k == 4:
        if s % 2 or d % 2:
            raise ValueError("family 4 needs s and d even")
        rows = [[s * x for x in e(i)] for i in range(m)]
        rows.append([s // 2] * m + [d // 2])
        return Lattice(rows)
    raise ValueError(f"no family {k}")


def n_orbit_constraints(k: int, s: int, d: int) -> bool:
    if k == 1:
        return s != d
    if k in (2, 3):
        return True
    if k == 4:
        return s % 2 == 0 and d % 2 == 0 and d != s
    if k == 5:
        return d % 2 == 0 and d != 2 * s
    raise ValueError(k)


@lru_cache(maxsize=None)
def _family_table(tess_name: str, n: int, max_index: int) -> dict:
    t = tessellation(tess_name, n)
    vol = t.vertex_lattice.index
    table: dict = {}

    def add(tag, L):
        if L.index // vol > max_index or not t.vertex_lattice.contains_lattice(L):
            return
        key = canonical_form(Toroid(t, L)).hnf
        table.setdefault(key, tag)

    bases = ["cln", "fcln", "bcln", "lambda1"] + (["l11xl11"] if n == 4 else [])
    for base in bases:
        s = 1
        while named(base, n, s).index // vol <= max_index:
            add(f"{s}*{base}", named(base, n, s))
            s += 1
    if t.family == "cubic" and n >= 3:
        for k in range(1, 6):
            for s in range(1, max_index + 1):
                if s ** (n - 1) > max_index * 2 ** n:
                    break
                for d in range(1, 2 * max_index + 1):
                    try:
                        L = n_orbit_family(k, n, s, d)
                    except ValueError:
                        continue
                    if L.index > max_index:
                        break
                    add(f"nfam{k}(s={s},d={d})", L)
    return table


def family_tag(t: Tessellation, canonical: Lattice, max_index: int) -> str | None:
    return _family_table(t.name, t.n, max_index).get(canonical.hnf)


# ---------------------------------------------------------------- campaigns


def _coset_reps(G, A_members: frozenset[int]) -> list[int]:
    seen = set()
    reps = []
    for g in range(G.order):
        if g not in seen:
            reps.append(g)
            for a in A_members:
                seen.add(G.mul(g, a))
    return reps


def _invariant(H, num, den) -> bool:
    from .exact import contains_int

    n = len(H)
    for r in H:
        img = []
        for j in range(n):
            s = 0
            for x, row in zip(r, num):
                if x:
                    s += x * row[j]
            if s % den:
                return False
            img.append(s // den)
        if not contains_int(H, img):
            return False
    return True


def _sign_group_members(G, A: frozenset[int]) -> frozenset[int]:
    return frozenset(G.element_index(sign_change(m, G.n)) for m in A)


def _candidates(t: Tessellation, max_index: int, max_orbits: int | None, part=None):
    """Yield (lattice, orbit_count or None) covering every class with few orbits."""
    amb = t.vertex_lattice
    if max_orbits is None:
        for L in enumerate_sublattices(t.n, max_index, ambient=amb, first_diagonal=part):
            yield L, None
        return
    G = t.point_group
    for A in admissible_sign_subgroups(t.n, max_orbits):
        members = _sign_group_members(G, A)
        reps = _coset_reps(G, members)
        mats = G.int_matrices()
        size_A = len(members)
        for L in enumerate_sublattices(t.n, max_index, ambient=amb, sign_masks=f2_basis(A), first_diagonal=part):
            kept = sum(1 for g in reps if _invariant(L.hnf, *mats[g]))
            orbits = G.order // (kept * size_A)
            if orbits <= max_orbits:
                yield L, orbits


def run_campaign(t: Tessellation, max_index: int, max_orbits: int | None = None,
                 jobs: int = 1) -> list[CensusRecord]:
    """One record per isomorphism class of sublattice of the vertex lattice.

    ``max_orbits=None`` enumerates every sublattice (subject to the cap on the
    number of HNFs).  With ``max_orbits=k`` only classes with at most k flag
    orbits are produced, which is complete for those classes because every
    such lattice is invariant under one of the admissible sign subgroups.
    """
    if max_index < 1:
        raise ValueError("max_index must be positive")
    if max_index > max_index_cap():
        raise BoundTooLarge(f"max_index {max_index} exceeds the cap {max_index_cap()}")
    if max_orbits is None:
        # every rank-n lattice has as many index-m sublattices as Z^n
        if total_exceeds(t.n, max_index, sublattice_cap()):
            raise BoundTooLarge(f"more than {sublattice_cap()} sublattices of index <= {max_index}")
    return list(_run_campaign(t.name, t.n, max_index, max_orbits, max(1, jobs)))


def _classes(tess_name: str, n: int, max_index: int, max_orbits: int | None, part=None) -> dict:
    t = tessellation(tess_name, n)
    seen: set = set()
    classes: dict = {}
    for L, orbits in _candidates(t, max_index, max_orbits, part):
        if L.hnf in seen:
            continue
        orbit = lattice_orbit(t, L)
        seen.update(orbit)
        if orbits is not None:
            assert orbits == len(orbit)
        classes[orbit[0]] = len(orbit)
    return classes


@lru_cache(maxsize=32)
def _run_campaign(tess_name: str, n: int, max_index: int, max_orbits: int | None,
                  jobs: int = 1) -> tuple[CensusRecord, ...]:
    t = tessellation(tess_name, n)
    vol = t.vertex_lattice.index
    if jobs == 1:
        classes = _classes(tess_name, n, max_index, max_orbits)
    else:
        # workers split the stream by the top-left HNF entry
        top = max_index * vol
        parts = [tuple(range(1 + j, top + 1, jobs)) for j in range(jobs)]
        classes = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_classes, tess_name, n, max_index, max_orbits, p) for p in parts if p]
            for f in futures:
                classes.update(f.result())
    records = []
    for hnf, orbits in classes.items():
        L = Lattice.from_hnf(hnf)
        tor = Toroid(t, L)
        assert tor.orbit_count == orbits
        check_chirality(tor)
        cls = sorted(two_orbit_class(tor)) if orbits == 2 else None
        g = build_stg(tor)
        records.append(CensusRecord(t.name, n, [list(r) for r in hnf], L.index // vol, orbits, cls,
                                    g.canonical_key, family_tag(t, L, max_index)))
    records.sort(key=lambda r: (r.index, r.hnf))
    for r in records:
        if max_orbits is not None and r.family is None and r.orbits <= n:
            log.warning("few-orbit lattice matches no known family: %s (%d orbits)", r.hnf, r.orbits)
    return tuple(records)


def partition_check(t: Tessellation, records: list[CensusRecord], max_index: int) -> dict[int, tuple[int, int]]:
    """Per index m: (sum of class orbit sizes, number of index-m sublattices)."""
    out = {}
    for m in range(1, max_index + 1):
        got = sum(r.orbits for r in records if r.index == m)
        out[m] = (got, count_sublattices(t.n, m))
    return out


def write_report(data, path) -> None:
    """JSON Lines: one record per line and a summary footer."""
    if isinstance(data, VerificationReport):
        lines = [json.dumps(c.to_json() if hasattr(c, "to_json") else c) for c in data.counterexamples]
        summary = {"summary": {"suite": data.suite, "status": data.status, "parameters": data.parameters,
                               "details": data.details}}
    else:
        records = list(data)
        lines = [json.dumps(r.to_json()) for r in records]
        counts: dict[str, int] = {}
        for r in sorted(records, key=lambda r: r.orbits):
            counts[f"orbits={r.orbits}"] = counts.get(f"orbits={r.orbits}", 0) + 1
        summary = {"summary": {"records": len(records), "by_orbits": counts}}
    lines.append(json.dumps(summary))
    try:
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def read_report(path) -> tuple[list[CensusRecord], dict]:
    records, summary = [], {}
    with open(path) as fh:
        for line in fh:
            d = json.loads(line)
            if "summary" in d:
                summary = d["summary"]
            else:
                records.append(CensusRecord.from_json(d))
    return records, summary


# ---------------------------------------------------------------- suites


def _canon(t: Tessellation, L: Lattice) -> tuple:
    return canonical_form(Toroid(t, L)).hnf


def _multiples(t: Tessellation, name: str, max_index: int, even_only: bool = False) -> set:
    vol = t.vertex_lattice.index
    out = set()
    s = 1
    while named(name, t.n, s).index // vol <= max_index:
        if not even_only or s % 2 == 0:
            L = named(name, t.n, s)
            if t.vertex_lattice.contains_lattice(L):
                out.add(_canon(t, L))
        s += 1
    return out


def _compare(report: VerificationReport, records, got: set, want: set, what: str):
    if got != want:
        report.status = "fail"
        report.counterexamples += [r for r in records if tuple(map(tuple, r.hnf)) in got ^ want]
        for h in sorted(want - got):
            report.counterexamples.append({"missing": [list(r) for r in h]})
    report.details.append(f"{what}: found {len(got)}, expected {len(want)}")


def _suite_cubic_2orbit(rep, n, max_index):
    t = tessellation("cubic", n)
    recs = [r for r in run_campaign(t, max_index, 2) if r.orbits == 2]
    got = {tuple(map(tuple, r.hnf)) for r in recs}
    want = _multiples(t, "lambda1", max_index) if n % 2 == 0 else set()
    _compare(rep, recs, got, want, "2-orbit classes")
    for r in recs:
        if r.class2I != list(range(1, n)):
            rep.status = "fail"
            rep.counterexamples.append(r)
    rep.details.append(f"classes: {sorted({tuple(r.class2I) for r in recs})}")


def _suite_cubic_no_k(rep, n, max_index):
    t = tessellation("cubic", n)
    # no k-orbit classes for 2 < k < n, and none with 2 orbits when n is odd
    excluded = set(range(3, n)) | ({2} if n % 2 else set())
    top = max(excluded, default=1)
    bad = [r for r in run_campaign(t, max_index, top) if r.orbits in excluded]
    rep.details.append(f"records with orbit count in {sorted(excluded)}: {len(bad)}")
    if bad:
        rep.status = "fail"
        rep.counterexamples += bad


def _suite_cubic_3orbit(rep, max_index):
    t = tessellation("cubic", 4)
    recs = [r for r in run_campaign(t, max_index, 3) if r.orbits == 3]
    got = {tuple(map(tuple, r.hnf)) for r in recs}
    _compare(rep, recs, got, _multiples(t, "l11xl11", max_index), "3-orbit classes")


def _suite_cubic_n_orbit(rep, n, grid):
    t = tessellation("cubic", n)
    for k in range(1, 6):
        for s, d in grid:
            try:
                L = n_orbit_family(k, n, s, d)
            except ValueError:
                rep.details.append(f"family {k} (s={s},d={d}): parameters outside the family, skipped")
                continue
            orbits = Toroid(t, L).orbit_count
            allowed = n_orbit_constraints(k, s, d)
            # the excluded diagonal cases are regular
            regular = (k == 1 and s == d) or (k == 5 and d == 2 * s)
            want = n if allowed else 1 if regular else None
            line = f"family {k} (s={s},d={d}): {orbits} orbits" + ("" if allowed else " [excluded]")
            rep.details.append(line)
            if want is not None and orbits != want:
                rep.status = "fail"
                rep.counterexamples.append({"family": k, "s": s, "d": d, "orbits": orbits})


def _suite_index2(rep, ns):
    for n in ns:
        B = hyperoctahedral(n)
        found = low_index_subgroups(B, 2)
        want = [named_group(x, n) for x in ("B_n_plus", "C2n_plus:S_n", "C2n:A_n")]
        rep.details.append(f"n={n}: {len(found)} classes of orders {[H.order for H in found]}")
        # index-2 subgroups are normal, so equality of member sets is the right test
        if {H.members for H in found} != {H.members for H in want}:
            rep.status = "fail"
            rep.counterexamples.append({"n": n, "found": [H.order for H in found]})


def _suite_index3_b4(rep):
    B = hyperoctahedral(4)
    found = low_index_subgroups(B, 3)
    rep.details.append(f"{len(found)} conjugacy class" + ("" if len(found) == 1 else "es"))
    if len(found) != 1 or not is_conjugate(B, found[0], named_group("C2n:D4", 4))[0]:
        rep.status = "fail"
        rep.counterexamples.append({"found": [H.order for H in found]})


def _suite_index34_b5(rep):
    B = hyperoctahedral(5)
    three = low_index_subgroups(B, 3)
    four = low_index_subgroups(B, 4)
    rep.details.append(f"index 3: {len(three)} classes, index 4: {len(four)} classes")
    if three or len(four) != 1 or not is_conjugate(B, four[0], named_group("C2n_plus:A_n", 5))[0]:
        rep.status = "fail"
        rep.counterexamples.append({"index3": len(three), "index4": len(four)})


def pgl25_invariant_lattices(max_index: int) -> list[Lattice]:
    P = named_group("PGL25", 6)
    gens = [(g.num, g.den) for g in P.elements]
    out = []
    for L in enumerate_sublattices(6, max_index, sign_masks=[1 << i for i in range(6)]):
        if all(_invariant(L.hnf, num, den) for num, den in gens):
            out.append(L)
    return out


def _suite_pgl25(rep, max_index):
    got = {L.hnf for L in pgl25_invariant_lattices(max_index)}
    want = set()
    for name in ("cln", "fcln", "bcln"):
        s = 1
        while named(name, 6, s).index <= max_index:
            want.add(named(name, 6, s).hnf)
            s += 1
    rep.details.append(f"invariant lattices: {sorted(Lattice.from_hnf(h).index for h in got)}")
    if got != want:
        rep.status = "fail"
        rep.counterexamples += [{"hnf": [list(r) for r in h]} for h in got ^ want]


def _t3343_records(max_index):
    return run_campaign(tessellation("3343"), max_index, 4)


def _suite_t3343_2orbit(rep, max_index):
    t = tessellation("3343")
    recs = [r for r in _t3343_records(max_index) if r.orbits == 2]
    got = {tuple(map(tuple, r.hnf)) for r in recs}
    _compare(rep, recs, got, _multiples(t, "lambda1", max_index), "2-orbit classes")
    for r in recs:
        if r.class2I != [3, 4]:
            rep.status = "fail"
            rep.counterexamples.append(r)


def _suite_t3343_no4(rep, max_index):
    bad = [r for r in _t3343_records(max_index) if r.orbits == 4]
    rep.details.append(f"4-orbit records: {len(bad)}")
    if bad:
        rep.status = "fail"
        rep.counterexamples += bad


def _suite_t3343_3orbit(rep, max_index):
    t = tessellation("3343")
    recs = [r for r in _t3343_records(max_index) if r.orbits == 3]
    got = {tuple(map(tuple, r.hnf)) for r in recs}
    want = _multiples(t, "cln", max_index, even_only=True) | _multiples(t, "l11xl11", max_index, even_only=True)
    _compare(rep, recs, got, want, "3-orbit classes")


def _suite_table3(rep):
    F = group_3343()
    chi = F.named_elements["chi"]
    groups = {name: named_group(name, 4) for name in TABLE3}
    for name, (idx, _) in TABLE3.items():
        H = groups[name]
        ok = chi in H and H.index == idx
        rep.details.append(f"{name}: order {H.order}, index {H.index}, chi {'in' if chi in H else 'missing'}")
        if not ok:
            rep.status = "fail"
            rep.counterexamples.append({"group": name, "index": H.index})
    names = list(TABLE3)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if TABLE3[a][0] == TABLE3[b][0] and is_conjugate(F, groups[a], groups[b])[0]:
                rep.status = "fail"
                rep.counterexamples.append({"conjugate": [a, b]})


def _suite_stg(rep):
    cubic4 = tessellation("cubic", 4)
    checks = []
    g = build_stg(Toroid(cubic4, named("cln", 4)))
    checks.append(("regular: 1 vertex, 5 semi-edges", g.vertices == 1 and len(g.edges) == 5))
    g = build_stg(Toroid(cubic4, named("l11xl11", 4)))
    pattern = [i_face_transitive(g, i) for i in range(5)]
    checks.append((f"cubic 3-orbit transitivity {pattern}", g.vertices == 3 and pattern == [True, True, False, True, True]))
    g = build_stg(Toroid(tessellation("3343"), named("cln", 4, 2)))
    pattern = [i_face_transitive(g, i) for i in range(5)]
    checks.append((f"3343 3-orbit (K' = B4) not 1-face-transitive {pattern}", not pattern[1]))
    checks.append((f"3343 3-orbit (K' = B4) not 2-face-transitive {pattern}", not pattern[2]))
    for n in (3, 4, 5):
        t = tessellation("cubic", n)
        keys = set()
        for k in range(1, 6):
            for s, d in ((1, 1), (1, 2), (2, 1), (2, 2), (2, 4), (4, 2), (1, 3)):
                if not n_orbit_constraints(k, s, d):
                    continue
                try:
                    L = n_orbit_family(k, n, s, d)
                except ValueError:
                    continue
                tor = Toroid(t, L)
                g = build_stg(tor)
                keys.add(g.canonical_key if tor.orbit_count == n else f"{tor.orbit_count} orbits")
        g = build_stg(Toroid(t, n_orbit_family(1, n, 1, 2)))
        adj = g.adjacency()
        nbrs = sorted(len({w for w in adj[v].values() if w != v}) for v in range(g.vertices))
        chain = g.vertices == n and nbrs == [1, 1] + [2] * (n - 2)
        checks.append((f"n={n}: n-orbit keys {len(keys)}, chain {chain}", len(keys) == 1 and chain))
    for what, ok in checks:
        rep.details.append(("ok   " if ok else "FAIL ") + what)
        if not ok:
            rep.status = "fail"
            rep.counterexamples.append({"check": what})


SUITES = {
    "cubic-2orbit": (_suite_cubic_2orbit, {"n": 4, "max_index": 256}),
    "cubic-no-k": (_suite_cubic_no_k, {"n": 5, "max_index": 32}),
    "cubic-3orbit-4d": (_suite_cubic_3orbit, {"max_index": 256}),
    "cubic-n-orbit": (_suite_cubic_n_orbit, {"n": 4, "grid": [[1, 1], [1, 2], [2, 1], [2, 2], [2, 4], [4, 2]]}),
    "index2-subgroups": (_suite_index2, {"ns": [4, 5]}),
    "index3-B4": (_suite_index3_b4, {}),
    "index34-B5": (_suite_index34_b5, {}),
    "pgl25-lattices": (_suite_pgl25, {"max_index": 8}),
    "t3343-2orbit": (_suite_t3343_2orbit, {"max_index": 32}),
    "t3343-no4": (_suite_t3343_no4, {"max_index": 32}),
    "t3343-3orbit": (_suite_t3343_3orbit, {"max_index": 32}),
    "table3-reps": (_suite_table3, {}),
    "stg-properties": (_suite_stg, {}),
}


def verify_theorem(suite: str, **params) -> VerificationReport:
    if suite not in SUITES:
        raise UnknownSuite(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    fn, defaults = SUITES[suite]
    args = dict(defaults)
    unknown = set(params) - set(defaults)
    if unknown:
        raise ValueError(f"suite {suite} takes no parameters {sorted(unknown)}")
    args.update(params)
    rep = VerificationReport(suite, "pass", parameters={k: v for k, v in args.items()})
    start = time.perf_counter()
    fn(rep, **args)
    rep.runtime = time.perf_counter() - start
    if rep.status == "fail" and not rep.counterexamples:
        rep.counterexamples.append({"note": "failure without a specific witness"})
    return rep


def layer_check(records: Iterable[CensusRecord], radius: int = 1) -> list[str]:
    """Reconstruction of every reflection-invariant record lattice from its layers."""
    from itertools import product as iproduct

    problems = []
    for r in records:
        L = r.lattice
        for axis in range(1, L.n + 1):
            try:
                dec = layer_decompose(L, axis)
            except NotReflectionInvariant:
                continue
            box = range(-radius * 2, radius * 2 + 1)
            for v in iproduct(box, repeat=L.n):
                if L.contains(v) != dec.contains(v):
                    problems.append(f"{r.hnf} axis {axis} at {v}")
                    break
    return problems
