"""Command-line surface: generate, enumerate, verify, bench.

Exit codes: 0 success (enumeration exhausted / sets equal), 2 a cap tripped
before exhaustion, 3 invalid input, 4 internal verification failure.
Machine-readable outputs: a solutions file (one canonical vector per line),
a stats JSON per run (schema shipped as ``stats_schema.json``), and one CSV
row per run appended to ``runs.csv``.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from pathlib import Path

from .enumcc import EnumLimits, RunStats, enum_cc
from .errors import EnumTimeout, GenerationError, InputError, OracleCapError, ParseError
from .generators import (GeneratorConfig, gen_dataset1, gen_dataset2,
                         read_graph, read_membership, write_graph,
                         write_membership)
from .graph import SignedGraph
from .neighborhood import ConsStats, PruningConfig, cons
from .oracle import oracle_optima
from .partition import SolutionSet
from .solver import SolveBudget

EXIT_OK = 0
EXIT_CAPPED = 2
EXIT_INVALID = 3
EXIT_INTERNAL = 4

CSV_FIELDS = [
    "instance", "n", "m", "r_max", "mode", "istar", "solutions_found",
    "n_jump", "n_rns", "termination", "solve_ms", "rns_ms", "jump_ms",
    "seconds_total",
]


def _default_outdir() -> str:
    return os.environ.get("CCENUM_OUT", ".")


def _pruning_from_args(args) -> PruningConfig:
    cfg = PruningConfig.all()
    if getattr(args, "no_mvmo", False):
        cfg = PruningConfig(int_atomic=cfg.int_atomic, int_mvmo=False,
                            min_edit=cfg.min_edit, ext_atomic=cfg.ext_atomic,
                            ext_mvmo=False)
    if getattr(args, "no_atomic", False):
        cfg = PruningConfig(int_atomic=False, int_mvmo=cfg.int_mvmo,
                            min_edit=cfg.min_edit, ext_atomic=False,
                            ext_mvmo=cfg.ext_mvmo)
    return cfg


def _write_solutions(path: Path, solutions: SolutionSet) -> None:
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        for labs in solutions.sorted_tuples():
            fh.write(",".join(str(x) for x in labs) + "\n")


def read_solutions(path) -> set[tuple[int, ...]]:
    out = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.add(tuple(int(t) for t in line.split(",")))
    return out


def _run_record(instance: str, g: SignedGraph, args, stats: RunStats,
                seconds_total: float, pruning: PruningConfig) -> dict:
    return {
        "instance": instance,
        "n": g.n,
        "m": g.m,
        "r_max": args.rmax,
        "mode": args.mode,
        "pruning": {
            "int_atomic": pruning.int_atomic,
            "int_mvmo": pruning.int_mvmo,
            "min_edit": pruning.min_edit,
            "ext_atomic": pruning.ext_atomic,
            "ext_mvmo": pruning.ext_mvmo,
        },
        "istar": stats.istar if stats.istar is not None else -1,
        "solutions_found": stats.solutions_found,
        "n_jump": stats.n_jump,
        "n_rns": stats.n_rns,
        "termination": stats.termination,
        "solve_ms": stats.solve_seconds * 1000.0,
        "rns_ms": stats.rns_seconds * 1000.0,
        "jump_ms": stats.jump_seconds * 1000.0,
        "duplicates_suppressed": stats.duplicates_suppressed,
        "prune_counters": stats.cons.as_dict(),
        "seconds_total": seconds_total,
    }


def _append_csv_row(csv_path: Path, record: dict) -> None:
    exists = csv_path.exists()
    with open(csv_path, "a", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS, extrasaction="ignore")
        if not exists:
            writer.writeheader()
        writer.writerow({k: record.get(k) for k in CSV_FIELDS})


def cmd_generate(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = {"dataset": args.dataset, "n": args.n, "l0": args.l0,
                "d": args.d, "q_m": args.qm, "q_neg": args.qneg,
                "seeds": list(range(args.seed_base, args.seed_base + args.seeds)),
                "files": []}
    for seed in manifest["seeds"]:
        cfg = GeneratorConfig(n=args.n, l0=args.l0, q_m=args.qm, d=args.d,
                              q_neg=args.qneg, seed=seed)
        stem = (f"ds{args.dataset}_n{args.n}_l{args.l0}_d{args.d:g}"
                f"_qm{args.qm:g}_qn{args.qneg:g}_s{seed}")
        gpath = outdir / f"{stem}.graph"
        if args.dataset == 1:
            write_graph(gpath, gen_dataset1(cfg))
            entry = {"graph": gpath.name}
        else:
            inst = gen_dataset2(cfg)
            write_graph(gpath, inst.graph)
            ppath = outdir / f"{stem}.planted"
            write_membership(ppath, inst.planted)
            entry = {"graph": gpath.name, "planted": ppath.name,
                     "perturbations_accepted": sum(s.accepted for s in inst.log),
                     "warning": inst.warning}
        manifest["files"].append(entry)
    with open(outdir / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {len(manifest['files'])} instance(s) to {outdir}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    g = read_graph(args.graph)
    pruning = _pruning_from_args(args)
    limits = EnumLimits(
        max_solutions=args.max_solutions,
        max_seconds=args.time_limit,
        solver_budget=SolveBudget(max_seconds=args.time_limit),
    )
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.graph).stem
    t0 = time.monotonic()
    capped_by_solver = False
    try:
        solutions, stats = enum_cc(g, r_max=args.rmax, limits=limits,
                                   mode=args.mode, pruning=pruning)
    except EnumTimeout as exc:
        capped_by_solver = True
        solutions = exc.solutions if exc.solutions is not None else SolutionSet(-1)
        stats = exc.stats
        stats.termination = "time_cap"
        stats.solutions_found = len(solutions)
    seconds = time.monotonic() - t0

    _write_solutions(outdir / f"{stem}.solutions.txt", solutions)
    record = _run_record(stem, g, args, stats, seconds, pruning)
    with open(outdir / f"{stem}.stats.json", "w", encoding="utf-8") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _append_csv_row(outdir / "runs.csv", record)

    print(f"{stem}: I*={record['istar']} solutions={record['solutions_found']} "
          f"jumps={record['n_jump']} termination={record['termination']}")
    if capped_by_solver or stats.termination in ("solution_cap", "time_cap"):
        return EXIT_CAPPED
    return EXIT_OK


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    expected = oracle_optima(g)
    solutions, stats = enum_cc(g, r_max=args.rmax)
    if stats.termination != "exhausted":
        print(f"enumeration did not exhaust the space ({stats.termination})")
        return EXIT_INTERNAL
    got = solutions.label_tuples()
    want = expected.label_tuples()
    if got == want and solutions.istar == expected.istar:
        print(f"ok: {len(want)} optimal solution(s) at I*={expected.istar}")
        return EXIT_OK
    missing = want - got
    extra = got - want
    print(f"MISMATCH: I* oracle={expected.istar} enum={solutions.istar}; "
          f"missing={len(missing)} extra={len(extra)}")
    for labs in sorted(missing)[:10]:
        print(f"  missing: {','.join(map(str, labs))}")
    for labs in sorted(extra)[:10]:
        print(f"  extra:   {','.join(map(str, labs))}")
    return EXIT_INTERNAL


def cmd_bench(args) -> int:
    indir = Path(args.instances)
    rows = []
    graphs = sorted(indir.glob("*.graph"))
    for gpath in graphs:
        ppath = gpath.with_suffix(".planted")
        if not ppath.exists():
            continue
        g = read_graph(gpath)
        planted = read_membership(ppath)
        row = {"instance": gpath.stem, "n": g.n, "m": g.m, "r": args.r}
        for label, pruning in (("with_mvmo", PruningConfig.all()),
                               ("without_mvmo", PruningConfig.without_mvmo())):
            stats = ConsStats()
            t0 = time.perf_counter()
            result = cons(g, planted, args.r, pruning=pruning, stats=stats)
            dt = time.perf_counter() - t0
            row[f"{label}_seconds"] = f"{dt:.6f}"
            row[f"{label}_neighbors"] = len(result)
            row[f"{label}_candidates"] = stats.candidates
        rows.append(row)
    fields = ["instance", "n", "m", "r",
              "with_mvmo_seconds", "with_mvmo_neighbors", "with_mvmo_candidates",
              "without_mvmo_seconds", "without_mvmo_neighbors", "without_mvmo_candidates"]
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {len(rows)} row(s) to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccenum",
        description="Exact enumeration of all optimal correlation clusterings "
                    "of signed graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write random signed-graph instances")
    p_gen.add_argument("--dataset", type=int, choices=(1, 2), required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--l0", type=int, required=True)
    p_gen.add_argument("--d", type=float, default=1.0)
    p_gen.add_argument("--qm", type=float, default=0.0)
    p_gen.add_argument("--qneg", type=float, default=0.5)
    p_gen.add_argument("--seeds", type=int, default=1, help="number of replications")
    p_gen.add_argument("--seed-base", type=int, default=0)
    p_gen.add_argument("--out", default=_default_outdir())
    p_gen.set_defaults(func=cmd_generate)

    p_enum = sub.add_parser("enumerate", help="enumerate all optimal partitions")
    p_enum.add_argument("graph")
    p_enum.add_argument("--rmax", type=int, default=3)
    p_enum.add_argument("--time-limit", type=float, default=None)
    p_enum.add_argument("--max-solutions", type=int, default=50_000)
    p_enum.add_argument("--mode", choices=("enumcc", "sequential", "rns-only"),
                        default="enumcc")
    p_enum.add_argument("--no-mvmo", action="store_true",
                        help="disable sign-margin pruning (benchmarks)")
    p_enum.add_argument("--no-atomic", action="store_true",
                        help="disable connectivity/atomicity pruning (benchmarks)")
    p_enum.add_argument("--out", default=_default_outdir())
    p_enum.set_defaults(func=cmd_enumerate)

    p_ver = sub.add_parser("verify", help="compare enumeration against the brute-force oracle")
    p_ver.add_argument("graph")
    p_ver.add_argument("--rmax", type=int, default=3)
    p_ver.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="time the neighborhood search with and without "
                                           "sign-margin pruning")
    p_bench.add_argument("instances", help="directory of *.graph + *.planted files")
    p_bench.add_argument("--r", type=int, default=3)
    p_bench.add_argument("--out", default="bench.csv")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError, GenerationError, OracleCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
