"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage, parse or guard error.
Vertices are 1-based on the command line and in every report.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from propercycles.cycles import (
    CycleView,
    find_proper_cycle_through,
    improper_seam,
    is_properly_vertex_pancyclic,
    oracle_enumerate_proper_cycles,
    ORACLE_MAX_N,
)
from propercycles.graph import (
    EdgeColoredGraph,
    ParseError,
    check_hypotheses,
    color_degree,
    edge_count,
    mono_max_statistic,
    random_colorings,
    read_graph,
    write_graph,
)
from propercycles.structure import ContractError, ExtensionFound, classify_outside, decompose
from propercycles.verify import CHECKS, ConfigError, SweepConfig, run_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _load(path: str) -> EdgeColoredGraph:
    try:
        return read_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _vertex(g: EdgeColoredGraph, v: int, flag: str) -> int:
    if not 1 <= v <= g.n:
        raise UsageError(f"{flag} {v} out of range 1..{g.n}")
    return v - 1


def _tri(t) -> list[int]:
    return [v + 1 for v in t]


def cmd_analyze(args) -> int:
    g = _load(args.file)
    hyp = check_hypotheses(g)
    report = {
        "n": g.n,
        "color_degrees": [color_degree(g, v) for v in g.vertices],
        "min_color_degree": hyp.min_color_degree,
        "threshold": str(hyp.threshold),
        "mono_max": mono_max_statistic(g),
        "mono_triangles": [_tri(t) for t in hyp.mono_triangles],
        "joint_pairs": [[_tri(s), _tri(t)] for s, t in hyp.joint_pairs],
        "satisfies": hyp.satisfies,
    }
    if args.json:
        _dump(report)
        return EXIT_OK
    print(f"n={g.n}")
    print(f"δᶜ={hyp.min_color_degree} (needs >= {report['threshold']}), "
          f"hypotheses: {'satisfied' if hyp.satisfies else 'not satisfied'}")
    print(f"color degrees: {' '.join(map(str, report['color_degrees']))}")
    print(f"Δᵐᵒⁿ={report['mono_max']}")
    print(f"monochromatic triangles: {len(hyp.mono_triangles)}")
    for t in hyp.mono_triangles:
        print(f"  {{{','.join(map(str, _tri(t)))}}}")
    print(f"joint monochromatic triangles: {len(hyp.joint_pairs)} pairs")
    return EXIT_OK


def cmd_cycle(args) -> int:
    g = _load(args.file)
    v = _vertex(g, args.vertex, "--vertex")
    if not 3 <= args.length <= g.n:
        raise UsageError(f"--length {args.length} outside 3..{g.n}")
    if args.all:
        if g.n > ORACLE_MAX_N:
            raise UsageError(f"--all is limited to n <= {ORACLE_MAX_N}")
        cycles = oracle_enumerate_proper_cycles(g, v, args.length)
        if args.json:
            _dump({"vertex": args.vertex, "length": args.length,
                   "cycles": [c.format() for c in cycles]})
        else:
            print(f"{len(cycles)} proper {args.length}-cycles through {args.vertex}")
            for c in cycles:
                print(c.format())
        return EXIT_OK if cycles else EXIT_FAIL
    c = find_proper_cycle_through(g, v, args.length)
    if args.json:
        _dump({"vertex": args.vertex, "length": args.length, "cycle": c.format() if c else None})
    else:
        print(c.format() if c else f"no proper {args.length}-cycle through {args.vertex}")
    return EXIT_OK if c else EXIT_FAIL


def cmd_pancyclic(args) -> int:
    g = _load(args.file)
    vertices = None if args.vertex is None else [_vertex(g, args.vertex, "--vertex")]
    report = is_properly_vertex_pancyclic(g, vertices)
    if args.json:
        _dump(report.to_dict())
    else:
        for (v, ell), c in sorted(report.cells.items()):
            print(f"vertex {v + 1} length {ell}: {c.format() if c else '-'}")
        print(f"cells: {len(report.cells)}, missing: {len(report.missing())}")
        print("properly vertex-pancyclic" if report.pancyclic and vertices is None
              else "covered" if report.pancyclic else "NOT covered")
    return EXIT_OK if report.pancyclic else EXIT_FAIL


def cmd_decompose(args) -> int:
    g = _load(args.file)
    try:
        c = CycleView.parse(args.cycle)
        c.check_on(g)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    w = _vertex(g, args.w, "--w")
    if w in c:
        raise UsageError(f"--w {args.w} lies on the cycle")
    seam = improper_seam(g, c)
    if seam is not None:
        raise UsageError(f"cycle is not proper: equal colors meet at position {seam + 1} "
                         f"(vertex {c.at(seam) + 1})")
    part = classify_outside(g, c)
    try:
        result = decompose(g, c, w)
    except ContractError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(f"{exc}; partition {part.to_dict()}") from None
    out = {"partition": part.to_dict()}
    if isinstance(result, ExtensionFound):
        out["extension"] = result.cycle.format()
    else:
        out["decomposition"] = result.to_dict()
    if args.json:
        _dump(out)
        return EXIT_OK
    print(f"W1={out['partition']['w1']} W2={out['partition']['w2']} W3={out['partition']['w3']}")
    if isinstance(result, ExtensionFound):
        print(f"extension: {result.cycle.format()}")
        return EXIT_OK
    d = out["decomposition"]
    print(f"x={d['x']} y={d['y']} z={d['z']} (vertices {d['vx']}, {d['vy']}, {d['vz']})")
    print(f"P1={d['p1']} P2={d['p2']} P3={d['p3']}")
    print(f"c_w={d['cw']} R={d['R']} Q={d['Q']}")
    print("u-frame: " + " ".join(f"{k}={v}" for k, v in d["u"].items()))
    return EXIT_OK


def _budget(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}") from None


def cmd_sweep(args) -> int:
    try:
        cfg = SweepConfig(n=args.n, mode=args.mode, samples=args.samples, seed=args.seed,
                          color_budget=args.colors, checks=tuple(args.check or ["main"]),
                          parallelism=args.parallel)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None
    report = run_sweep(cfg)
    if args.output:
        Path(args.output).write_text(report.to_json())
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK if report.failures == 0 else EXIT_FAIL


def cmd_gen(args) -> int:
    budget = edge_count(args.n) if args.colors is None else args.colors
    if args.n < 3 or budget < 1:
        raise UsageError("need --n >= 3 and --colors >= 1")
    g = next(random_colorings(args.n, budget, args.seed))
    try:
        write_graph(g, args.output)
    except OSError as exc:
        raise UsageError(f"cannot write {args.output}: {exc.strerror}") from None
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="propercycles",
                                description="Proper cycles in edge-colored complete graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="color degrees, monochromatic triangles, hypothesis verdict")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("cycle", help="least proper cycle of a given length through a vertex")
    c.add_argument("file")
    c.add_argument("--vertex", type=int, required=True)
    c.add_argument("--length", type=int, required=True)
    c.add_argument("--all", action="store_true", help="list every such cycle (brute force)")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_cycle)

    pc = sub.add_parser("pancyclic", help="proper cycle table for every vertex and length")
    pc.add_argument("file")
    pc.add_argument("--vertex", type=int)
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=cmd_pancyclic)

    d = sub.add_parser("decompose", help="decompose a proper cycle as seen from an outside vertex")
    d.add_argument("file")
    d.add_argument("--cycle", required=True, help="comma-separated vertices, e.g. 1,2,3,4")
    d.add_argument("--w", type=int, required=True)
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_decompose)

    s = sub.add_parser("sweep", help="check many colorings")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--colors", type=_budget, default="auto", help="color budget or 'auto'")
    s.add_argument("--check", action="append", choices=sorted(CHECKS))
    s.add_argument("--parallel", type=int, default=1)
    s.add_argument("-o", "--output", help="write the JSON report here")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sweep)

    gn = sub.add_parser("gen", help="write one random coloring as an ECG file")
    gn.add_argument("--n", type=int, required=True)
    gn.add_argument("--colors", type=int)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("-o", "--output", required=True)
    gn.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
