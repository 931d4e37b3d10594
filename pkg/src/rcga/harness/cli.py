"""Command line interface: ``rcga run|sweep|verify|bounds|conjecture``."""

from __future__ import annotations

import argparse
import os
import sys

from rcga.algorithm import RunConfig, TraceLevel, run
from rcga.analysis.bounds import (
    BoundQuery,
    bound_collision_probability,
    bound_neutral_concentration,
    bound_potential_drift,
    bound_single_frequency_drift,
    runtime_bound_shape,
)
from rcga.analysis.steps import compute_potential
from rcga.core import InvalidConfigError, ModelParams
from rcga.fitness import FitnessFunction, FitnessKind, format_optimum, parse_optimum
from rcga.harness.output import emit_csv, fmt6, write_trace
from rcga.harness.sweep import KRange, SweepSpec, sweep
from rcga.harness.verify import PRESETS, conjecture_probe, format_conjecture, run_verification
from rcga.seeds import derive_trial_seed

OUT_DIR_ENV = "RCGA_OUT_DIR"
FITNESS_CHOICES = [k.value for k in FitnessKind]


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v]


def _build_fitness(args) -> FitnessFunction:
    kind = FitnessKind(args.fitness)
    if kind in (FitnessKind.R_ONEMAX_AT, FitnessKind.G_ONEMAX_AT):
        if args.optimum:
            return FitnessFunction(kind, args.n, args.r, parse_optimum(args.optimum))
        return FitnessFunction.with_random_optimum(kind, args.n, args.r, derive_trial_seed(args.seed, args.r, 0, 0))
    if args.optimum:
        raise InvalidConfigError("--optimum only applies to the -at fitness kinds")
    return FitnessFunction(kind, args.n, args.r)


def cmd_run(args) -> int:
    fitness = _build_fitness(args)
    level = TraceLevel(args.trace_level) if args.trace else TraceLevel.OFF
    cfg = RunConfig(
        ModelParams(args.n, args.r, args.k), fitness, seed=args.seed,
        max_iterations=args.max_iterations, trace_level=level,
        stagnation_check=not args.no_stagnation_check,
    )
    out = run(cfg)
    print(f"status: {out.status.value}")
    print(f"iterations: {out.iterations}")
    print(f"evaluations: {out.evaluations}")
    print(f"final_potential: {float(compute_potential(out.final_model, fitness.target)):.6g}")
    if fitness.optimum is not None:
        print(f"optimum: {format_optimum(fitness.optimum)}")
    if args.trace:
        write_trace(out.trace, args.trace)
        print(f"trace: {args.trace}")
    return 0


def cmd_sweep(args) -> int:
    spec = SweepSpec(
        args.n, tuple(args.r), KRange.parse(args.k), FitnessKind(args.fitness),
        args.reps, args.seed, args.max_iterations, not args.no_stagnation_check,
    )

    def progress(cell):
        if not args.quiet:
            print(f"r={cell.r} K={cell.K} success={cell.success_count}/{cell.repetitions} "
                  f"stagnated={cell.stagnation_count} cap={cell.cap_count} mean={fmt6(cell.mean_iterations)}",
                  file=sys.stderr, flush=True)

    result = sweep(spec, args.workers, progress)
    for r, K in result.skipped:
        print(f"skipped: r={r} K={K} (K not a multiple of r)", file=sys.stderr)
    for (r, K), cell in result.cells.items():
        if cell.all_failed:
            print(f"all-failed: r={r} K={K}", file=sys.stderr)
    out_dir = args.out or os.environ.get(OUT_DIR_ENV) or "out"
    for path in emit_csv(result, out_dir):
        print(path)
    return 0


def cmd_verify(args) -> int:
    results = run_verification(args.preset, args.seed)
    for res in results:
        print(f"== {res.name}: {'PASS' if res.passed else 'FAIL'}")
        print(res.text)
        print()
    failed = [r.name for r in results if not r.passed]
    print("verify: " + ("all checks passed" if not failed else "failed: " + ", ".join(failed)))
    return 1 if failed else 0


def cmd_bounds(args) -> int:
    print("n,r,K,T,neutral_concentration,weak_preference,collision_at_init,"
          "single_drift_at_init,potential_drift_at_init,runtime_shape")
    for n in args.n:
        for r in args.r:
            for K in args.k:
                for T in args.t:
                    q = BoundQuery(n, r, K, T)
                    p0 = [1 / r] * n
                    conc = bound_neutral_concentration(q)
                    coll = bound_collision_probability(p0, 0)
                    single = bound_single_frequency_drift(1 / r, p0, 0, K) if 1 / K <= 1 / r <= 1 - 1 / K else float("nan")
                    phi = n * (1 - 1 / r)
                    pot = bound_potential_drift(phi, 1 / r, K) if phi >= 0.5 else float("nan")
                    print(f"{n},{r},{K},{T},{conc:.6g},{conc:.6g},{coll:.6g},{single:.6g},{pot:.6g},"
                          f"{runtime_bound_shape(n, r, K):.6g}")
    return 0


def cmd_conjecture(args) -> int:
    rows = conjecture_probe(args.n, args.r, args.reps, args.seed, args.c, args.workers)
    print(format_conjecture(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rcga", description="r-valued compact GA experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="single run")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--fitness", choices=FITNESS_CHOICES, default="r-onemax")
    p.add_argument("--optimum", help="comma-separated optimum for the -at kinds (default: random from --seed)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iterations", type=int)
    p.add_argument("--no-stagnation-check", action="store_true")
    p.add_argument("--trace", help="write a step trace to this file")
    p.add_argument("--trace-level", choices=["summary", "full"], default="summary")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="runtime-vs-K sweep, one CSV per r")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=_int_list, required=True, help="comma-separated r values")
    p.add_argument("--k", required=True, help="K range start:stop:step (inclusive)")
    p.add_argument("--fitness", choices=FITNESS_CHOICES, default="r-onemax")
    p.add_argument("--reps", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iterations", type=int)
    p.add_argument("--no-stagnation-check", action="store_true")
    p.add_argument("--out", help=f"output directory (env {OUT_DIR_ENV}, default ./out)")
    p.add_argument("--workers", type=int, help="worker threads (env RCGA_WORKERS)")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="Monte Carlo checks of the drift and bound results")
    p.add_argument("--preset", choices=sorted(PRESETS), default="paper-defaults")
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="tabulate closed-form bounds at the uniform model")
    p.add_argument("--n", type=_int_list, default=[100, 500])
    p.add_argument("--r", type=_int_list, default=[2, 3, 4])
    p.add_argument("--k", type=_int_list, default=[120, 480])
    p.add_argument("--t", type=_int_list, default=[100, 1000])
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("conjecture", help="G-OneMax scaling diagnostic (non-conclusive)")
    p.add_argument("--n", type=_int_list, default=[100, 200, 400])
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--c", type=_int_list, default=[1, 2, 4])
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidConfigError, ValueError) as e:
        parser.print_usage(sys.stderr)
        print(f"rcga: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"rcga: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
