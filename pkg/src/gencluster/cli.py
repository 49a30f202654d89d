"""Command-line entry point.

Three commands:

* ``seed build``: construct an initial seed (matrix-pair or band family)
  and write it to a JSON seed file;
* ``mutate``: apply a mutation sequence to a seed file, optionally
  certifying each new variable polynomial by exact symbolic division;
* ``verify``: run a deterministic verification suite and emit a JSON
  report, a CSV of per-check records, and optional figures.

Exit codes: 0 on success, 1 when a verification check fails, 2 on
configuration errors.  Worker count and sampling range can also be set via
the environment (GENCLUSTER_WORKERS, GENCLUSTER_COORD_RANGE=lo:hi).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import band, double_seed as ds, seedio, suites
from .completeness import one_step_regularity
from .report import render_figures
from .seeds import mutate_seed

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIG = 2


def _env_int(name: str, default):
    value = os.environ.get(name)
    if value is None:
        return default
    return int(value)


def _env_coord(default):
    value = os.environ.get("GENCLUSTER_COORD_RANGE")
    if value is None:
        return default
    lo, _, hi = value.partition(":")
    return (int(lo), int(hi))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gencluster",
        description="exact verification toolkit for generalized cluster seeds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    seed_p = sub.add_parser("seed", help="seed construction")
    seed_sub = seed_p.add_subparsers(dest="seed_command", required=True)
    build_p = seed_sub.add_parser("build", help="build an initial seed file")
    build_p.add_argument("--family", choices=("double", "band"), required=True)
    build_p.add_argument("--n", type=int, required=True)
    build_p.add_argument("--k", type=int, default=None)
    build_p.add_argument("--out", required=True)

    mut_p = sub.add_parser("mutate", help="apply a mutation sequence to a seed file")
    mut_p.add_argument("seed_file")
    mut_p.add_argument("--at", action="append", required=True,
                       help="vertex: a function label (phi_8), a grid position "
                            "i,j, or an id like grid:5,4; repeatable, in order")
    mut_p.add_argument("--out", required=True)
    mut_p.add_argument("--check-regular", action="store_true",
                       help="certify each new variable polynomial by exact "
                            "symbolic division (small sizes only)")

    ver_p = sub.add_parser("verify", help="run a verification suite")
    ver_p.add_argument("suite", choices=suites.SUITE_NAMES)
    ver_p.add_argument("--rng-seed", type=int, required=True,
                       help="master seed; reports are byte-stable given it")
    ver_p.add_argument("--points", type=int, default=5)
    ver_p.add_argument("--coord-lo", type=int, default=None)
    ver_p.add_argument("--coord-hi", type=int, default=None)
    ver_p.add_argument("--workers", type=int, default=None)
    ver_p.add_argument("--family", choices=("double", "band", "all"), default="all")
    ver_p.add_argument("--n", type=int, default=None)
    ver_p.add_argument("--k", type=int, default=None)
    ver_p.add_argument("--grid", type=int, default=30)
    ver_p.add_argument("--symmetry-bound", type=int, default=50)
    ver_p.add_argument("--charge-bound", type=int, default=8)
    ver_p.add_argument("--json", dest="json_path", default=None)
    ver_p.add_argument("--csv", dest="csv_path", default=None)
    ver_p.add_argument("--figures", action="store_true",
                       help="render figures beside the other outputs")
    ver_p.add_argument("--out-dir", default=None,
                       help="write report.json, checks.csv and figures/ here")
    return parser


def _resolve_vertex(seed, text: str):
    labels = {v.label: vid for vid, v in seed.quiver.vertices.items()}
    if text in labels:
        return labels[text]
    token = text if ":" in text else f"grid:{text}"
    try:
        vid = seedio.vertex_id_from_str(token)
    except Exception as err:
        raise ValueError(f"cannot parse vertex {text!r}") from err
    if vid not in seed.quiver.vertices:
        raise ValueError(f"no vertex {text!r} in this seed")
    return vid


def _cmd_seed_build(args) -> int:
    if args.family == "double":
        if args.n < 3:
            print("error: the matrix-pair quiver is defined for n >= 3", file=sys.stderr)
            return EXIT_CONFIG
        seed = ds.build_seed_bar(args.n)
        meta = {"family": "double", "n": args.n}
    else:
        if args.k is None:
            print("error: --k is required for the band family", file=sys.stderr)
            return EXIT_CONFIG
        if not 2 <= args.k <= args.n:
            print("error: need 2 <= k <= n", file=sys.stderr)
            return EXIT_CONFIG
        seed = band.build_band_seed(args.k, args.n)
        meta = {"family": "band", "n": args.n, "k": args.k,
                "edge_conventions": "corner edge oriented away from the special "
                                    "vertex; validated by the compatibility suite"}
    seedio.save_seed(args.out, seed, meta)
    quiver = seed.quiver
    print(f"wrote {args.out}: {len(quiver.vertices)} vertices "
          f"({len(quiver.mutable_ids())} mutable, {len(quiver.frozen_ids())} frozen, "
          f"{len(quiver.isolated_ids())} isolated), {len(quiver.edges)} edge classes")
    return EXIT_OK


def _cmd_mutate(args) -> int:
    try:
        seed, meta = seedio.load_seed(args.seed_file)
    except Exception as err:
        print(f"error: cannot load seed file: {err}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        sequence = [_resolve_vertex(seed, text) for text in args.at]
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    for vid in sequence:
        if not seed.quiver.vertex(vid).is_mutable:
            print(f"error: vertex {seed.quiver.vertex(vid).label} is not mutable",
                  file=sys.stderr)
            return EXIT_CONFIG

    check_subst = None
    if args.check_regular:
        if meta.get("family") == "double" and meta.get("n", 99) <= 3:
            check_subst = None
        elif meta.get("family") == "band" and meta.get("n", 99) <= 3:
            check_subst = band.band_substitution(meta["k"], meta["n"])
        else:
            print("error: --check-regular works on the symbolic backend only "
                  "(n <= 3 seeds); rerun without it", file=sys.stderr)
            return EXIT_CONFIG

    current = seed
    for vid in sequence:
        if args.check_regular:
            terms = one_step_regularity(current, [vid], subst=check_subst)
            label = current.quiver.vertex(vid).label
            print(f"mutation at {label}: new variable certified polynomial "
                  f"({terms[vid]} terms)")
        current = mutate_seed(current, vid)
    history = meta.get("mutations", [])
    history.extend(seed.quiver.vertex(v).label for v in sequence)
    meta = dict(meta, mutations=history)
    seedio.save_seed(args.out, current, meta)
    print(f"wrote {args.out} after {len(sequence)} mutation(s)")
    return EXIT_OK


def _cmd_verify(args) -> int:
    coord = _env_coord(suites.DEFAULT_COORD)
    if args.coord_lo is not None or args.coord_hi is not None:
        if args.coord_lo is None or args.coord_hi is None:
            print("error: give both --coord-lo and --coord-hi", file=sys.stderr)
            return EXIT_CONFIG
        coord = (args.coord_lo, args.coord_hi)
    if coord[0] >= coord[1]:
        print("error: empty coordinate range", file=sys.stderr)
        return EXIT_CONFIG
    workers = args.workers if args.workers is not None else _env_int("GENCLUSTER_WORKERS", 1)
    if workers < 1:
        print("error: workers must be positive", file=sys.stderr)
        return EXIT_CONFIG
    if args.points < 1:
        print("error: points must be positive", file=sys.stderr)
        return EXIT_CONFIG

    report = suites.run_suite(
        args.suite, rng_seed=args.rng_seed, points=args.points, coord=coord,
        workers=workers, family=args.family, n=args.n, k=args.k,
        grid=args.grid, symmetry_bound=args.symmetry_bound,
        charge_bound=args.charge_bound,
    )

    json_path, csv_path, fig_dir = args.json_path, args.csv_path, None
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        json_path = json_path or os.path.join(args.out_dir, "report.json")
        csv_path = csv_path or os.path.join(args.out_dir, "checks.csv")
        if args.figures:
            fig_dir = os.path.join(args.out_dir, "figures")
    elif args.figures:
        fig_dir = "figures"

    for line in report.summary_lines():
        print(line)
    if json_path:
        report.write_json(json_path)
        print(f"report: {json_path}")
    if csv_path:
        report.write_csv(csv_path)
        print(f"records: {csv_path}")
    if fig_dir:
        for path in render_figures(report, fig_dir):
            print(f"figure: {path}")
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "seed":
            return _cmd_seed_build(args)
        if args.command == "mutate":
            return _cmd_mutate(args)
        if args.command == "verify":
            return _cmd_verify(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    parser.error("unknown command")
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
