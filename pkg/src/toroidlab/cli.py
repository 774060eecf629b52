"""toroidlab command line: analyze, enumerate, verify, stg.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import census
from .exact import DimensionMismatch, SingularBasis
from .lattice import BoundTooLarge, Lattice, UnsupportedDimension, parse_lattice_spec
from .stg import build_stg, canonical_key, to_dot
from .toroid import NotSublattice, Toroid, canonical_form, tessellation, two_orbit_class


class UsageError(Exception):
    pass


def parse_int(text: str) -> int:
    """Accept plain integers and the shorthands ``10^9`` and ``1e9``."""
    text = text.strip()
    m = re.fullmatch(r"(\d+)\s*(?:\^|\*\*)\s*(\d+)", text)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    m = re.fullmatch(r"(\d+)[eE](\d+)", text)
    if m:
        return int(m.group(1)) * 10 ** int(m.group(2))
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _tess(args):
    n = args.n
    if args.tess in ("3343", "3433"):
        if n not in (None, 4):
            raise UsageError(f"--tess {args.tess} requires n = 4")
        n = 4
    elif n is None:
        raise UsageError("--n is required for cubic tessellations")
    try:
        return tessellation(args.tess, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _lattice(args, n: int) -> Lattice:
    sources = [s for s in (args.lattice, args.basis, args.lattice_file) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --lattice, --basis, --lattice-file")
    try:
        if args.lattice is not None:
            return parse_lattice_spec(args.lattice, n)
        if args.basis is not None:
            rows = json.loads(args.basis)
        else:
            with open(args.lattice_file) as fh:
                data = json.load(fh)
            if isinstance(data, dict):
                return Lattice.from_json(data)
            rows = data
        if len(rows) != n or any(len(r) != n for r in rows):
            raise UsageError(f"basis must be {n} rows of length {n}")
        return Lattice(rows, n)
    except SingularBasis as exc:
        raise UsageError(f"rank error: basis is rank-deficient ({exc})") from exc
    except (json.JSONDecodeError, OSError, KeyError, TypeError, DimensionMismatch, UnsupportedDimension) as exc:
        raise UsageError(f"invalid lattice input: {exc}") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _toroid(args) -> Toroid:
    t = _tess(args)
    L = _lattice(args, t.n)
    try:
        return Toroid(t, L)
    except NotSublattice as exc:
        raise UsageError(f"not a sublattice of the vertex lattice: {exc}") from exc


def _fmt_class(I) -> str:
    return "2_{" + ",".join(map(str, sorted(I))) + "}"


def cmd_analyze(args) -> int:
    T = _toroid(args)
    k = T.orbit_count
    head = f"orbits: {k}"
    if k == 2:
        head += f", class: {_fmt_class(two_orbit_class(T))}"
    canon = canonical_form(T)
    family = census.family_tag(T.tessellation, canon, max(T.index, 1))
    if args.format == "json":
        out = T.to_json()
        out.update({"stabilizer_order": T.stabilizer.order, "index": T.index, "family": family,
                    "canonical_hnf": [list(r) for r in canon.hnf]})
        print(json.dumps(out, indent=2))
    else:
        print(head)
        print(f"stabilizer order: {T.stabilizer.order}")
        print(f"index: {T.index}")
        print(f"family: {family or '-'}")
    return 0


def _plural(c: int) -> str:
    return "class" if c == 1 else "classes"


def cmd_enumerate(args) -> int:
    t = _tess(args)
    max_orbits = None if args.all else (args.max_orbits or t.n)
    try:
        records = census.run_campaign(t, args.max_index, max_orbits, jobs=args.jobs)
    except BoundTooLarge as exc:
        raise UsageError(f"bound too large: {exc}") from exc
    if args.output:
        census.write_report(records, args.output)
    top = max_orbits if max_orbits is not None else max((r.orbits for r in records), default=1)
    for k in range(1, top + 1):
        c = sum(1 for r in records if r.orbits == k)
        print(f"orbits={k}: {c} {_plural(c)}")
    if max_orbits is not None:
        print(f"(classes with more than {max_orbits} flag orbits not listed)")
    return 0


def cmd_verify(args) -> int:
    params = {}
    for item in args.param or []:
        key, _, val = item.partition("=")
        if not val:
            raise UsageError(f"--param expects key=value, got {item!r}")
        params[key.replace("-", "_")] = json.loads(val)
    try:
        rep = census.verify_theorem(args.suite, **params)
    except census.UnknownSuite as exc:
        raise UsageError(str(exc)) from exc
    except (BoundTooLarge, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if args.report:
        census.write_report(rep, args.report)
    print(f"{rep.suite}: {rep.status.upper()}")
    for line in rep.details:
        print(f"  {line}")
    if not rep.passed:
        for c in rep.counterexamples:
            print("  counterexample: " + json.dumps(c.to_json() if hasattr(c, "to_json") else c))
    print(f"runtime {rep.runtime:.2f}s", file=sys.stderr)
    return 0 if rep.passed else 1


def cmd_stg(args) -> int:
    T = _toroid(args)
    g = build_stg(T)
    if args.format == "dot":
        text = to_dot(g)
    elif args.format == "json":
        d = g.to_json()
        d["canonical_key"] = canonical_key(g)
        d["semi_edges"] = [sorted(g.semi_edges(v)) for v in range(g.vertices)]
        text = json.dumps(d) + "\n"
    else:
        lines = [f"vertices: {g.vertices}", f"key: {canonical_key(g)}"]
        lines += [f"  {a} -{lab}- {b}" if a != b else f"  {a} semi {lab}" for a, b, lab in g.edges]
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toroidlab", description="Flag-orbit structure of equivelar toroids.")
    sub = p.add_subparsers(dest="command", required=True)

    def tess_args(sp):
        sp.add_argument("--tess", default="cubic", help="cubic, 3343 or 3433")
        sp.add_argument("--n", type=int, help="dimension of the tessellation")

    def lattice_args(sp):
        sp.add_argument("--lattice", help="named lattice, optionally scaled, e.g. lambda1@2")
        sp.add_argument("--basis", help="inline JSON basis rows")
        sp.add_argument("--lattice-file", help="JSON file with a lattice or a list of basis rows")

    a = sub.add_parser("analyze", help="flag orbits and stabilizer of one toroid")
    tess_args(a)
    lattice_args(a)
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enumerate", help="census of toroids up to a bound")
    tess_args(e)
    e.add_argument("--max-index", type=parse_int, required=True)
    e.add_argument("--max-orbits", type=int)
    e.add_argument("--all", action="store_true", help="classify every sublattice regardless of orbit count")
    e.add_argument("--output", help="JSON Lines file for the records")
    e.add_argument("--jobs", type=int, default=1)
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("--suite", required=True)
    v.add_argument("--param", action="append", help="suite parameter as key=json")
    v.add_argument("--report", help="write a JSON Lines report here")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stg", help="symmetry type graph of one toroid")
    tess_args(s)
    lattice_args(s)
    s.add_argument("--format", choices=("dot", "json", "text"), default="dot")
    s.add_argument("--output")
    s.set_defaults(func=cmd_stg)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except census.IoFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command != "verify":
        print(f"runtime {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
