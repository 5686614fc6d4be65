"""Command-line interface.

Exit status: 0 on success, 2 for invalid input, 3 if an internal
derivation assertion fires.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import analytic, experiments, kernels
from .codes import LinearCode, available_codes, get_code, hamming_variants
from .engine import OptimizerConfig, optimize_angles
from .gf2 import parse_matrix_text


def _add_common(parser: argparse.ArgumentParser, seed_required: bool = False):
    parser.add_argument("--code", default=None,
                        help=f"registered code name ({', '.join(available_codes())})")
    parser.add_argument("--matrix", default=None, metavar="PATH",
                        help="load the generator matrix from a text file instead")
    parser.add_argument("--out", default="-", metavar="PATH",
                        help="output CSV path ('-' for stdout)")
    parser.add_argument("--seed", type=int, required=seed_required,
                        default=None if seed_required else 0,
                        help="master RNG seed" + (" (required)" if seed_required else ""))
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for frame-parallel experiments")


def _resolve_code(args) -> LinearCode:
    if args.matrix:
        with open(args.matrix) as fh:
            return LinearCode(parse_matrix_text(fh.read()), name=args.matrix)
    return get_code(args.code or "hamming74")


def _parse_grid(spec: str) -> tuple[int, int]:
    try:
        w, h = spec.lower().split("x")
        return int(w), int(h)
    except Exception:
        raise ValueError(f"grid must look like 33x33, got {spec!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qaoadec",
        description="QAOA quasi-ML decoding of binary linear codes "
                    f"(statevector backend: {kernels.backend_name()})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="closed-form level-1 cost expectation")
    _add_common(p)
    p.add_argument("--trace", action="store_true", help="print the derivation trace")

    p = sub.add_parser("sweep", help="F1 grid sweep: simulator vs closed form")
    _add_common(p)
    p.add_argument("--grid", default="33x33", help="gamma x beta grid, e.g. 33x33")
    p.add_argument("--fixed-gamma", type=float, default=None,
                   help="1-D slice at this gamma")
    p.add_argument("--fixed-beta", type=float, default=None,
                   help="1-D slice at this beta")

    p = sub.add_parser("table1", help="level-1 optima for the eight degree variants")
    _add_common(p)

    p = sub.add_parser("optimize", help="multi-start Nelder-Mead angle optimization")
    _add_common(p)
    p.add_argument("--level", type=int, default=1, help="QAOA level p")
    p.add_argument("--starts", type=int, default=None, help="random starts for p >= 2")
    p.add_argument("--max-evals", type=int, default=2000,
                   help="function-evaluation budget per start")

    p = sub.add_parser("cross-entropy", help="cross-entropy vs level study")
    _add_common(p, seed_required=True)
    p.add_argument("--levels", type=int, default=3, help="maximum level p")
    p.add_argument("--starts", type=int, default=None, help="random starts for p >= 2")
    p.add_argument("--max-evals", type=int, default=2000)

    p = sub.add_parser("success-rate", help="accumulated ML-decision success rate")
    _add_common(p, seed_required=True)
    p.add_argument("--shots", default="1,2,5,10,20,50,100,200,500,1000",
                   help="comma-separated measurement counts")
    p.add_argument("--trials", type=int, default=2000)

    p = sub.add_parser("bsc", help="zero-word BSC decoding experiment")
    _add_common(p, seed_required=True)
    p.add_argument("--epsilon", default="0.01,0.05,0.1",
                   help="comma-separated crossover probabilities")
    p.add_argument("--frames", type=int, default=10000)
    p.add_argument("--decoder", default="qaoa-single-shot",
                   choices=["qaoa-single-shot", "qaoa-multishot", "ml-oracle"])
    p.add_argument("--shots", type=int, default=100,
                   help="measurements per frame for the multishot decoder")
    p.add_argument("--reoptimize-per-frame", action="store_true",
                   help="re-derive optimal angles for every received word "
                        "(default: reuse the zero-word optimum)")
    return parser


def _emit(record: experiments.ResultRecord, args) -> None:
    text = experiments.write_csv(record, args.out)
    if args.out in (None, "-"):
        sys.stdout.write(text)


def _cmd_derive(args) -> int:
    code = _resolve_code(args)
    y = np.zeros(code.n, dtype=np.uint8)
    poly, trace = analytic.derive_level1(code, y)
    f_star, g_star, b_star = analytic.maximize(poly)
    print(f"code: {code.name or args.matrix} (n={code.n}, k={code.k})")
    degrees, dbar = code.column_degrees()
    print(f"column degrees: {[int(d) for d in degrees]} mean {dbar:.2f}")
    print(f"F1(gamma, beta) = {poly.pretty()}")
    print(f"F1* = {f_star:.6f} at gamma* = {g_star:.6f}, beta* = {b_star:.6f}")
    if args.trace:
        for ct in trace.clauses:
            print(f"clause {ct.nu}: sign {ct.sign:+d} support {ct.support}")
            for bt in ct.branches:
                if not bt.assignments:
                    continue
                print(f"  b={''.join(map(str, bt.b))} varpi={bt.varpi} "
                      f"cols={bt.selected_columns} rho={bt.rho} "
                      f"assignments={[(a.omega, a.multiplicity) for a in bt.assignments]}")
    if args.out not in (None, "-"):
        record = experiments.ResultRecord(
            kind="derive",
            columns=["coeff", "s_pow", "c_pow", "sp_pow", "cp_pow"],
            rows=[(t.coeff, t.s_pow, t.c_pow, t.sp_pow, t.cp_pow) for t in poly.terms],
            params={"code": code.name or args.matrix,
                    "f1_star": f_star, "gamma_star": g_star, "beta_star": b_star},
        )
        experiments.write_csv(record, args.out)
    return 0


def _cmd_sweep(args) -> int:
    code = _resolve_code(args)
    ng, nb = _parse_grid(args.grid)
    gammas = np.linspace(0.0, 2 * np.pi, ng)
    betas = np.linspace(0.0, np.pi, nb)
    if args.fixed_gamma is not None:
        gammas = np.array([args.fixed_gamma])
    if args.fixed_beta is not None:
        betas = np.array([args.fixed_beta])
    _emit(experiments.sweep_rows(code, gammas, betas), args)
    return 0


def _cmd_table1(args) -> int:
    _emit(experiments.table1_rows(), args)
    return 0


def _optimizer_config(args) -> OptimizerConfig:
    cfg = OptimizerConfig(seed=args.seed or 0, max_evals=args.max_evals)
    if getattr(args, "starts", None):
        cfg.random_starts = args.starts
    return cfg


def _cmd_optimize(args) -> int:
    code = _resolve_code(args)
    y = np.zeros(code.n, dtype=np.uint8)
    result = optimize_angles(code, y, args.level, config=_optimizer_config(args))
    record = experiments.ResultRecord(
        kind="optimize",
        columns=["code", "p", "f_star", "evaluations", "starts",
                 "budget_exhausted", "angles"],
        rows=[(code.name or args.matrix, args.level, result.f_star,
               result.evaluations, result.starts, result.budget_exhausted,
               experiments._angles_str(result.best_angles))],
        seed=args.seed,
    )
    _emit(record, args)
    return 0


def _cmd_cross_entropy(args) -> int:
    codes = [_resolve_code(args)] if (args.code or args.matrix) else hamming_variants()
    _emit(
        experiments.cross_entropy_rows(
            codes, args.levels, seed=args.seed, config=_optimizer_config(args)
        ),
        args,
    )
    return 0


def _cmd_success_rate(args) -> int:
    code = _resolve_code(args) if (args.code or args.matrix) else get_code("hamming74-d1.71")
    shot_counts = [int(s) for s in args.shots.split(",")]
    experiments.ExperimentConfig(
        kind="success-rate", code=code.name, seed=args.seed, out=args.out,
    ).validate()
    _emit(
        experiments.success_rate_rows(
            code, seed=args.seed, shot_counts=shot_counts, trials=args.trials
        ),
        args,
    )
    return 0


def _cmd_bsc(args) -> int:
    code = _resolve_code(args)
    epsilons = [float(e) for e in args.epsilon.split(",")]
    experiments.ExperimentConfig(
        kind="bsc", code=code.name, epsilons=tuple(epsilons),
        shots=args.shots, seed=args.seed, out=args.out,
    ).validate()
    _emit(
        experiments.bsc_rows(
            code,
            epsilons,
            frames=args.frames,
            seed=args.seed,
            decoder=args.decoder,
            shots=args.shots,
            reoptimize_per_frame=args.reoptimize_per_frame,
            threads=args.threads,
        ),
        args,
    )
    return 0


_COMMANDS = {
    "derive": _cmd_derive,
    "sweep": _cmd_sweep,
    "table1": _cmd_table1,
    "optimize": _cmd_optimize,
    "cross-entropy": _cmd_cross_entropy,
    "success-rate": _cmd_success_rate,
    "bsc": _cmd_bsc,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except analytic.DerivationError as exc:
        print(f"internal derivation assertion: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
