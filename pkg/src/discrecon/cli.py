"""Command-line entry point: ``discrecon <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generator as gen
from .boundary_metrics import (
    boundary_distances,
    boundary_geodesic_violations,
    chordless_diameter_check,
    equidistant_triangle_scan,
    four_point_check,
    layer_inequality_check,
    mixed_boundary_bound_check,
    quad_edge_bounds_check,
)
from .errors import BadSpec, BudgetExceeded, DiscReconError, NotRealizable, PreconditionUnmet
from .io import FormatError, map_to_json, matrix_to_json, read_map, read_matrix, write_map, write_matrix
from .oracle import DEFAULT_NODE_CAP, EnumerationBudget, enumerate_maps, injectivity_report
from .planar_map import MapKind, canonical_code, chords, curvature_report
from .quad_reconstruct import reconstruct_quadrangulation
from .tri_reconstruct import reconstruct_triangulation

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NOT_REALIZABLE = 2
EXIT_IO = 3
EXIT_BUDGET = 4

ALL_CHECKS = ("degrees", "chordless", "layer", "equidistant", "bounds", "fourpoint", "geodesic")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_generate(args) -> int:
    if args.layers is not None:
        degrees = tuple(int(x) for x in args.degrees.split(","))
        m = gen.layered_map(gen.LayerSpec(args.kind, args.layers, degrees, args.seed))
    else:
        shape = args.shape or ("hex" if args.kind == "tri" else "rectangle")
        spec = gen.PatchSpec(args.kind, shape, args.radius, args.a, args.b, args.trim, args.seed)
        m = gen.lattice_patch(spec)
    _emit(map_to_json(m), args.output)
    return EXIT_OK


def cmd_distances(args) -> int:
    m = read_map(args.input)
    _emit(matrix_to_json(boundary_distances(m)), args.output)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    D = read_matrix(args.input)
    kind = MapKind(args.kind)
    recon = reconstruct_triangulation if kind is MapKind.TRIANGULATION else reconstruct_quadrangulation
    m, trace = recon(D)
    _emit(map_to_json(m), args.output)
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace.to_dict(), indent=1) + "\n", encoding="utf-8")
    return EXIT_OK


def _run_check(name: str, m) -> tuple[str, str]:
    """(status, detail) with status one of pass / fail / skip."""
    try:
        if name == "degrees":
            rep = curvature_report(m)
            return ("pass", "") if rep.all_admissible else ("fail", f"inadmissible {rep.inadmissible}")
        if name == "chordless":
            found = chords(m)
            return ("pass", "") if not found else ("fail", f"chords {found}")
        if name == "layer":
            return ("pass", "") if layer_inequality_check(m) else ("fail", "layer inequality")
        if name == "equidistant":
            if m.kind is not MapKind.TRIANGULATION:
                return "skip", "triangulations only"
            hit = equidistant_triangle_scan(m)
            return ("pass", "") if hit is None else ("fail", f"face {list(hit[0])} vertex {hit[1]}")
        if name == "bounds":
            if m.kind is MapKind.MIXED:
                ok = mixed_boundary_bound_check(m)
            else:
                ok = chordless_diameter_check(m)
                if m.kind is MapKind.QUADRANGULATION and m.internal_vertices:
                    ok = ok and quad_edge_bounds_check(m)
            return ("pass", "") if ok else ("fail", "bound violated")
        if name == "fourpoint":
            bad = four_point_check(boundary_distances(m), both_pairings=True)
            return ("pass", "") if not bad else ("fail", f"quadruple {list(bad[0])}")
        if name == "geodesic":
            bad = boundary_geodesic_violations(m)
            return ("pass", "") if not bad else ("fail", f"arc {list(bad[0])}")
    except PreconditionUnmet as exc:
        return "skip", str(exc)
    raise ValueError(f"unknown check {name!r}")


def cmd_verify(args) -> int:
    m = read_map(args.input)
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = [c for c in names if c not in ALL_CHECKS]
    if unknown:
        raise FormatError(f"unknown checks {unknown}; choose from {','.join(ALL_CHECKS)}")
    results = {name: _run_check(name, m) for name in names}
    if args.json:
        payload = {name: {"status": s, "detail": d} for name, (s, d) in results.items()}
        sys.stdout.write(json.dumps(payload, indent=1) + "\n")
    else:
        width = max(len(n) for n in names)
        for name, (status, detail) in results.items():
            sys.stdout.write(f"{name:<{width}}  {status:<4}  {detail}".rstrip() + "\n")
    failed = [n for n, (s, _) in results.items() if s == "fail"]
    for name in failed:
        print(f"{name}: {results[name][1]}", file=sys.stderr)
    return EXIT_INVALID if failed else EXIT_OK


def cmd_oracle(args) -> int:
    budget = EnumerationBudget(
        n=args.n,
        max_internal=args.max_internal,
        kind=MapKind(args.kind),
        degree_condition=not args.degree_off,
        chordless=args.chordless,
        dedupe=args.dedupe,
        node_cap=args.node_cap,
    )
    if args.injectivity:
        report = injectivity_report(budget)
        sys.stdout.write(json.dumps(report.to_dict(), indent=1) + "\n")
        return EXIT_OK if report.passed else EXIT_INVALID
    maps = list(enumerate_maps(budget))
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for i, m in enumerate(maps):
            write_map(m, out / f"map_{i:04d}.dmap")
    payload = {
        "kind": budget.kind.value,
        "n": budget.n,
        "max_internal": budget.max_internal,
        "maps": len(maps),
        "by_internal": _histogram(len(m.internal_vertices) for m in maps),
    }
    sys.stdout.write(json.dumps(payload, indent=1) + "\n")
    return EXIT_OK


def _histogram(values) -> dict[str, int]:
    out: dict[str, int] = {}
    for v in values:
        out[str(v)] = out.get(str(v), 0) + 1
    return dict(sorted(out.items(), key=lambda kv: int(kv[0])))


def cmd_fixtures(args) -> int:
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    if args.name == "mixed-pair":
        a, b = gen.mixed_counterexample_pair()
        write_map(a, out / "mixed_pair_a.dmap")
        write_map(b, out / "mixed_pair_b.dmap")
        print(f"unlabeled codes differ: {canonical_code(a, False) != canonical_code(b, False)}")
    elif args.name == "rth-core":
        write_map(gen.rhombitrihexagonal_core(), out / "rth_core.dmap")
    else:
        write_matrix(gen.nonplanar_metric_fixture(), out / "nonplanar.dist")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="discrecon", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a lattice patch or layered map")
    g.add_argument("--kind", choices=["tri", "quad"], default="tri")
    g.add_argument("--shape", choices=["hex", "parallelogram", "rectangle"])
    g.add_argument("--radius", type=int, default=1)
    g.add_argument("--a", type=int, default=1)
    g.add_argument("--b", type=int, default=1)
    g.add_argument("--trim", type=int, default=0, help="boundary faces to peel off")
    g.add_argument("--layers", type=int, help="grow a layered map instead of a patch")
    g.add_argument("--degrees", default="6", help="comma-separated degree support")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    d = sub.add_parser("distances", help="boundary distance matrix of a map")
    d.add_argument("input")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_distances)

    r = sub.add_parser("reconstruct", help="rebuild the map from a distance matrix")
    r.add_argument("input")
    r.add_argument("--kind", choices=["tri", "quad"], default="tri")
    r.add_argument("-o", "--output")
    r.add_argument("--trace")
    r.set_defaults(func=cmd_reconstruct)

    v = sub.add_parser("verify", help="run structural checks on a map")
    v.add_argument("input")
    v.add_argument("--checks", default=",".join(ALL_CHECKS))
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exhaustive enumeration")
    o.add_argument("--kind", choices=["tri", "quad", "mixed"], default="tri")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--max-internal", type=int, default=0)
    o.add_argument("--degree-off", action="store_true")
    o.add_argument("--chordless", action="store_true")
    o.add_argument("--dedupe", choices=["labeled", "unlabeled"], default="unlabeled")
    o.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
    o.add_argument("--injectivity", action="store_true")
    o.add_argument("-o", "--output", help="directory for the enumerated maps")
    o.set_defaults(func=cmd_oracle)

    f = sub.add_parser("fixtures", help="write the counterexample fixtures")
    f.add_argument("name", choices=["mixed-pair", "nonplanar", "rth-core"])
    f.add_argument("-o", "--output", default=".")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotRealizable as exc:
        print(f"not realizable: {exc}", file=sys.stderr)
        return EXIT_NOT_REALIZABLE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (OSError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (BadSpec, DiscReconError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
