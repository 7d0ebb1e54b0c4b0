"""Command-line front end.

Subcommands: sample, trace, expect, roots, experiment, verify.
Exit codes: 0 success, 1 verification/runtime failure, 2 flag errors.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config_model import (
    count_k_cycles,
    enumerate_configurations,
    project_to_multigraph,
)
from .expectations import expectation_table, expected_k_cycles_exact
from .experiments import (
    Aggregate,
    ExperimentSpec,
    aggregate_to_csv,
    compare_bounds,
    export,
    run_trials,
    svg_mean_faces,
)
from .fixtures import cube_map, theta_map
from .mapio import map_to_text, multigraph_to_dot, read_map, write_map
from .roots import enumerate_roots, find_root_in_face, validate_root
from .rotation_map import sample_map, surface_stats, trace_faces


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mapgenus",
        description="Random regular combinatorial maps: sampling, face tracing, genus statistics.",
    )
    parser.add_argument("--version", action="version", version=f"mapgenus {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a random map and write it as text")
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument("--d", type=int, default=3, help="degree (default 3)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=None, help="output map file (default stdout)")

    p = sub.add_parser("trace", help="trace the faces of a map file")
    p.add_argument("mapfile", type=Path)
    p.add_argument("--dot", type=Path, default=None, help="also write the multigraph as DOT")

    p = sub.add_parser("expect", help="print the expectation table for (n, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, default=None, help="output file (default stdout)")

    p = sub.add_parser("roots", help="enumerate the short roots of a map file")
    p.add_argument("mapfile", type=Path)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--out", type=Path, default=None, help="output JSON file (default stdout)")

    p = sub.add_parser("experiment", help="run a seeded Monte Carlo sweep")
    p.add_argument("--n", type=_int_list, required=True, help="comma-separated vertex counts")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--mode", choices=("raw", "simple"), default="raw")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--svg", type=Path, default=None, help="also write a mean-F plot")
    p.add_argument("--records", action="store_true", help="also write the per-trial records")
    p.add_argument("--bounds", action="store_true", help="print the growth-order comparison")

    p = sub.add_parser("verify", help="run the built-in oracle checks")
    p.add_argument("--quick", action="store_true", help="skip the slower enumeration checks")

    return parser


def _cmd_sample(args) -> int:
    cmap = sample_map(args.n, args.d, np.random.default_rng(args.seed))
    if args.out is None:
        sys.stdout.write(map_to_text(cmap))
    else:
        write_map(cmap, args.out)
        print(f"wrote {args.out}")
    return 0


def _cmd_trace(args) -> int:
    cmap = read_map(args.mapfile)
    decomposition = trace_faces(cmap)
    stats = surface_stats(cmap, decomposition)
    genus = stats.genus if stats.connected else stats.total_genus
    print(f"F={stats.F} genus={genus}")
    print(f"chi={stats.chi}")
    lengths = " ".join(str(x) for x in sorted(decomposition.lengths.tolist()))
    print(f"face_lengths={lengths}")
    if not stats.connected:
        print(f"connected=false components={len(stats.component_genera)} "
              f"component_genera={' '.join(str(g) for g in stats.component_genera)}")
    if args.dot is not None:
        args.dot.write_text(multigraph_to_dot(project_to_multigraph(cmap.pairing)))
        print(f"wrote {args.dot}")
    return 0


def _cmd_expect(args) -> int:
    table = expectation_table(args.n, args.d, args.kmax)
    text = table.to_csv() if args.format == "csv" else json.dumps(table.to_json_dict(), indent=1) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
        print(f"wrote {args.out}")
    return 0


def _cmd_roots(args) -> int:
    cmap = read_map(args.mapfile)
    records = [
        {"vertices": list(r.vertices), "defect": r.defect_vertex, "length": r.length}
        for r in enumerate_roots(cmap, args.max_len)
    ]
    text = json.dumps(records, indent=1) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
        print(f"wrote {args.out}")
    return 0


def _cmd_experiment(args) -> int:
    spec = ExperimentSpec(
        n_values=tuple(args.n),
        d=args.d,
        trials=args.trials,
        master_seed=args.seed,
        mode=args.mode,
        k_max=args.kmax,
    )
    agg, records = run_trials(spec, workers=args.workers)
    written = export(agg, records if args.records else None, args.format, args.out)
    for pth in written:
        print(f"wrote {pth}")
    if args.svg is not None:
        args.svg.write_text(svg_mean_faces(agg))
        print(f"wrote {args.svg}")
    if args.bounds:
        print(compare_bounds(agg).render())
    return 0


def _check(name: str, ok: bool, failures: list[str]) -> None:
    print(f"{'PASS' if ok else 'FAIL'}  {name}")
    if not ok:
        failures.append(name)


def _cmd_verify(args) -> int:
    failures: list[str] = []

    # cube and theta regressions
    for cmap, want_f, want_genus, name in [
        (cube_map(), 6, 0, "cube standard rotations: F=6, genus 0"),
        (cube_map(flipped_vertex=2), 4, 1, "cube with one vertex reversed: F=4, genus 1"),
        (theta_map(True), 1, 1, "theta graph, equal orders: F=1, genus 1"),
        (theta_map(False), 3, 0, "theta graph, opposite orders: F=3, genus 0"),
    ]:
        stats = surface_stats(cmap)
        _check(name, stats.F == want_f and stats.genus == want_genus, failures)

    # exhaustive means of X_k match the closed form
    sizes = [(2, 3, 15)] if args.quick else [(2, 3, 15), (4, 3, 10395)]
    for n, d, count in sizes:
        total = 0
        sums = dict.fromkeys(range(1, n + 1), 0)
        for pairing in enumerate_configurations(n, d):
            total += 1
            census = count_k_cycles(pairing, n)
            for k in sums:
                sums[k] += census[k]
        ok = total == count
        for k in sums:
            expected = expected_k_cycles_exact(n, d, k)
            got = sums[k] / total
            ok = ok and abs(got - expected) <= 1e-12 * max(1.0, abs(expected))
        _check(f"enumeration oracle (n={n}, d={d}): {count} configurations, mean X_k exact", ok, failures)

    # every face of a random map yields a verifier-approved root
    rng = np.random.default_rng(20260810)
    ok = True
    for _ in range(10 if args.quick else 100):
        cmap = sample_map(100, 3, rng)
        decomposition = trace_faces(cmap)
        for face in decomposition.faces:
            root = find_root_in_face(cmap, face)
            if not validate_root(cmap, root):
                ok = False
    _check("every face of random maps (n=100, d=3) contains a valid root", ok, failures)

    if failures:
        print(f"{len(failures)} check(s) failed")
        return 1
    print("all checks passed")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "sample": _cmd_sample,
        "trace": _cmd_trace,
        "expect": _cmd_expect,
        "roots": _cmd_roots,
        "experiment": _cmd_experiment,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, ValueError) else 1


if __name__ == "__main__":
    sys.exit(main())
