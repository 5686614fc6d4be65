"""End-to-end decoding studies, each emitting a structured CSV record.

Stochastic experiments draw every random quantity from numpy PCG64
generators seeded from (master seed, task indices), so results are
reproducible bit for bit for a given configuration regardless of the
worker count; reductions are order-independent integer sums.
"""

from __future__ import annotations

import datetime as _dt
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import analytic, kernels, statevector
from ._version import __version__
from .codes import LinearCode, hamming_variants
from .cost import build_cost
from .engine import (
    AngleSchedule,
    OptimizerConfig,
    cross_entropy,
    optimize_angles,
    success_probability,
)

__all__ = [
    "ResultRecord",
    "write_csv",
    "wilson_interval",
    "table1_rows",
    "sweep_rows",
    "cross_entropy_rows",
    "success_rate_rows",
    "bsc_rows",
    "level1_optimal_angles",
]

RNG_ALGORITHM = "numpy-PCG64"
_BSC_CHUNK = 1024  # fixed chunk size keeps RNG streams thread-count independent


@dataclass
class ExperimentConfig:
    """Bundled experiment parameters as they arrive from the CLI.

    Stochastic experiment kinds must carry a seed; the referenced code must
    resolve (registry name or matrix path already loaded by the caller).
    """

    kind: str
    code: str | None = None
    epsilons: tuple[float, ...] = ()
    shots: int = 1
    level: int = 1
    grid: str | None = None
    seed: int | None = None
    out: str | None = None

    STOCHASTIC_KINDS = ("cross-entropy", "success-rate", "bsc")

    def validate(self) -> "ExperimentConfig":
        if self.kind in self.STOCHASTIC_KINDS and self.seed is None:
            raise ValueError(f"{self.kind} is stochastic: a seed is required")
        for eps in self.epsilons:
            if not 0.0 <= eps <= 0.5:
                raise ValueError(f"epsilon must be in [0, 0.5], got {eps}")
        return self

    def as_params(self) -> dict:
        out = {"kind": self.kind}
        if self.code:
            out["code"] = self.code
        if self.epsilons:
            out["epsilons"] = ",".join(format(e, "g") for e in self.epsilons)
        if self.grid:
            out["grid"] = self.grid
        return out


@dataclass
class ResultRecord:
    kind: str
    columns: list[str]
    rows: list[tuple]
    params: dict = field(default_factory=dict)
    seed: int | None = None
    wall_s: float = 0.0
    version: str = __version__

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# qaoadec v{self.version}\n")
        # the one line excluded from byte-identity of reruns
        stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        buf.write(f"# generated: {stamp} wall: {self.wall_s:.3f}s\n")
        buf.write(f"# kind: {self.kind}\n")
        if self.seed is not None:
            buf.write(f"# seed: {self.seed} rng: {RNG_ALGORITHM}\n")
        for key in sorted(self.params):
            buf.write(f"# {key}: {self.params[key]}\n")
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        return buf.getvalue()


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def write_csv(record: ResultRecord, path: str | None) -> str:
    text = record.to_csv()
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    return text


def wilson_interval(errors: int, trials: int, z: float = 1.959964) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if trials == 0:
        return 0.0, 1.0
    phat = errors / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials**2)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def level1_optimal_angles(code: LinearCode, y=None) -> tuple[float, float, float]:
    """(F1*, gamma*, beta*) from the closed-form level-1 expectation."""
    if y is None:
        y = np.zeros(code.n, dtype=np.uint8)
    poly, _ = analytic.derive_level1(code, y)
    return analytic.maximize(poly)


# ---------------------------------------------------------------------------
# studies


def table1_rows() -> ResultRecord:
    """Level-1 optima for the eight degree variants, sorted by mean degree."""
    t0 = time.perf_counter()
    rows = []
    for code in hamming_variants():
        y = np.zeros(code.n, dtype=np.uint8)
        poly, _ = analytic.derive_level1(code, y)
        f_star, g_star, b_star = analytic.maximize(poly)
        _, dbar = code.column_degrees()
        rows.append((f"{dbar:.2f}", f_star, g_star, b_star, len(poly)))
    return ResultRecord(
        kind="table1",
        columns=["dbar", "f1_star", "gamma_star", "beta_star", "n_monomials"],
        rows=rows,
        wall_s=time.perf_counter() - t0,
    )


def sweep_rows(
    code: LinearCode,
    gammas: np.ndarray,
    betas: np.ndarray,
    y=None,
) -> ResultRecord:
    """F_1 on a grid: exact simulator and closed form side by side."""
    t0 = time.perf_counter()
    if y is None:
        y = np.zeros(code.n, dtype=np.uint8)
    ham = build_cost(code, y)
    poly, _ = analytic.derive_level1(code, y)
    rows = []
    for g in gammas:
        for b in betas:
            state = statevector.init_plus(code.k)
            kernels.run_layers(state, ham.diagonal, np.array([g]), np.array([b]), code.k)
            f_sim = statevector.expectation(state, ham)
            rows.append((float(g), float(b), f_sim, poly.evaluate(g, b)))
    return ResultRecord(
        kind="sweep",
        columns=["gamma", "beta", "f1_simulator", "f1_analytic"],
        rows=rows,
        params={"code": code.name or "custom", "grid": f"{gammas.size}x{betas.size}"},
        wall_s=time.perf_counter() - t0,
    )


def cross_entropy_rows(
    codes: list[LinearCode],
    p_max: int,
    seed: int,
    config: OptimizerConfig | None = None,
) -> ResultRecord:
    """Optimized F_p and the cross-entropy attained at the optimum, p = 1..p_max."""
    t0 = time.perf_counter()
    cfg = config or OptimizerConfig(seed=seed)
    rows = []
    for code in codes:
        y = np.zeros(code.n, dtype=np.uint8)
        _, dbar = code.column_degrees()
        warm = None
        for p in range(1, p_max + 1):
            result = optimize_angles(code, y, p, config=cfg, warm=warm)
            warm = result.best_angles
            state = _state_at(code, y, result.best_angles)
            ce = cross_entropy(state, code, y)
            rows.append(
                (
                    code.name or "custom",
                    f"{dbar:.2f}",
                    p,
                    result.f_star,
                    ce,
                    math.log(2**code.k),
                    result.evaluations,
                    seed,
                    _angles_str(result.best_angles),
                )
            )
    return ResultRecord(
        kind="cross-entropy",
        columns=["code", "dbar", "p", "f_star", "cross_entropy", "uniform_ce",
                 "evaluations", "seed", "angles"],
        rows=rows,
        params={"p_max": p_max},
        seed=seed,
        wall_s=time.perf_counter() - t0,
    )


def success_rate_rows(
    code: LinearCode,
    seed: int,
    shot_counts: list[int] | None = None,
    trials: int = 2000,
    angles: AngleSchedule | None = None,
) -> ResultRecord:
    """Accumulated ML-decision success rate versus measurement count.

    Analytic curve 1-(1-q)^N against a Monte-Carlo estimate, where q is the
    exact probability that one shot lands in the ML set.
    """
    t0 = time.perf_counter()
    if shot_counts is None:
        shot_counts = [1, 2, 5, 10, 20, 50, 100, 200, 500, 1000]
    y = np.zeros(code.n, dtype=np.uint8)
    if angles is None:
        _, g_star, b_star = level1_optimal_angles(code, y)
        angles = AngleSchedule((g_star,), (b_star,))
    state = _state_at(code, y, angles)
    ham = build_cost(code, y)
    q = success_probability(state, code, y)
    ml_set = ham.argmax_states()
    n_max = max(shot_counts)
    rng = np.random.default_rng([seed, 0])
    outcomes = statevector.sample_outcomes(state, trials * n_max, rng).reshape(trials, n_max)
    hits = np.isin(outcomes, ml_set)
    ever_hit = np.logical_or.accumulate(hits, axis=1)
    rows = []
    for n_shots in shot_counts:
        mc = float(ever_hit[:, n_shots - 1].mean())
        rows.append((n_shots, 1.0 - (1.0 - q) ** n_shots, mc, trials, seed))
    return ResultRecord(
        kind="success-rate",
        columns=["shots", "analytic", "monte_carlo", "trials", "seed"],
        rows=rows,
        params={
            "code": code.name or "custom",
            "q": q,
            "angles": _angles_str(angles),
        },
        seed=seed,
        wall_s=time.perf_counter() - t0,
    )


def bsc_rows(
    code: LinearCode,
    epsilons: list[float],
    frames: int,
    seed: int,
    decoder: str = "qaoa-single-shot",
    shots: int = 100,
    reoptimize_per_frame: bool = False,
    threads: int = 1,
) -> ResultRecord:
    """Zero-word BSC decoding study; the ML-oracle rows are always included.

    Per frame: draw y from the BSC, build the cost Hamiltonian, run the
    level-1 ansatz, decode by a single measurement (or the most frequent
    outcome over `shots` measurements), and compare with the exhaustive ML
    decision on the same y.
    """
    if decoder not in ("qaoa-single-shot", "qaoa-multishot", "ml-oracle"):
        raise ValueError(f"unknown decoder {decoder!r}")
    t0 = time.perf_counter()
    y0 = np.zeros(code.n, dtype=np.uint8)
    fixed_angles = None
    if not reoptimize_per_frame:
        _, g_star, b_star = level1_optimal_angles(code, y0)
        fixed_angles = (g_star, b_star)

    # column sign table: diagonal(y) = colsign @ (1 - 2 y)
    z = np.arange(1 << code.k, dtype=np.uint32)
    colsign = np.empty((1 << code.k, code.n), dtype=np.float64)
    base = build_cost(code, y0)
    for nu, clause in enumerate(base.clauses):
        parity = np.bitwise_count(z & np.uint32(clause.mask)) & 1
        colsign[:, nu] = 1.0 - 2.0 * parity

    n_chunks = (frames + _BSC_CHUNK - 1) // _BSC_CHUNK
    rows = []
    for eps_idx, eps in enumerate(epsilons):
        if not 0.0 <= eps <= 0.5:
            raise ValueError(f"epsilon must be in [0, 0.5], got {eps}")

        def run_chunk(chunk_idx, eps=eps, eps_idx=eps_idx):
            # separate channel and measurement streams so the noise
            # realizations are identical for every decoder at a given seed
            rng_channel = np.random.default_rng([seed, eps_idx, chunk_idx, 0])
            rng_measure = np.random.default_rng([seed, eps_idx, chunk_idx, 1])
            lo = chunk_idx * _BSC_CHUNK
            count = min(_BSC_CHUNK, frames - lo)
            return _bsc_chunk(
                code, colsign, eps, count, rng_channel, rng_measure,
                decoder, shots, fixed_angles, reoptimize_per_frame,
            )

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(run_chunk, range(n_chunks)))
        else:
            results = [run_chunk(i) for i in range(n_chunks)]
        totals = np.sum(np.array(results, dtype=np.int64), axis=0)
        ml_fe, ml_be, dec_fe, dec_be = (int(v) for v in totals)
        ml_lo, ml_hi = wilson_interval(ml_fe, frames)
        rows.append(
            (eps, "ml-oracle", frames, ml_fe, ml_fe / frames, ml_lo, ml_hi,
             ml_be, ml_be / (frames * code.k), 1, seed)
        )
        if decoder != "ml-oracle":
            lo_, hi_ = wilson_interval(dec_fe, frames)
            shots_used = shots if decoder == "qaoa-multishot" else 1
            rows.append(
                (eps, decoder, frames, dec_fe, dec_fe / frames, lo_, hi_,
                 dec_be, dec_be / (frames * code.k), shots_used, seed)
            )
    return ResultRecord(
        kind="bsc",
        columns=["epsilon", "decoder", "frames", "frame_errors", "fer",
                 "fer_lo95", "fer_hi95", "bit_errors", "ber", "shots", "seed"],
        rows=rows,
        params={
            "code": code.name or "custom",
            "decoder": decoder,
            "shots": shots if decoder == "qaoa-multishot" else 1,
            "angles": "per-frame" if reoptimize_per_frame else
                      f"{fixed_angles[0]:.6f},{fixed_angles[1]:.6f}",
        },
        seed=seed,
        wall_s=time.perf_counter() - t0,
    )


def _bsc_chunk(code, colsign, eps, count, rng_channel, rng_measure,
               decoder, shots, fixed_angles, reoptimize_per_frame):
    """Error counters for one chunk: (ml_fe, ml_be, dec_fe, dec_be)."""
    k = code.k
    ml_fe = ml_be = dec_fe = dec_be = 0
    popcount = np.bitwise_count(np.arange(1 << k, dtype=np.uint32)).astype(np.int64)
    for _ in range(count):
        y = (rng_channel.random(code.n) < eps).astype(np.uint8)
        diag = colsign @ (1.0 - 2.0 * y)
        # exhaustive ML with lowest-label tie break
        ml_label = int(np.argmax(diag))
        if ml_label != 0:
            ml_fe += 1
            ml_be += int(popcount[ml_label])
        if decoder == "ml-oracle":
            continue
        if reoptimize_per_frame:
            poly, _ = analytic.derive_level1(code, y)
            _, g_star, b_star = analytic.maximize(poly, grid_size=(64, 32))
        else:
            g_star, b_star = fixed_angles
        state = statevector.init_plus(k)
        kernels.run_layers(state, diag, np.array([g_star]), np.array([b_star]), k)
        if decoder == "qaoa-single-shot":
            label = int(statevector.sample_outcomes(state, 1, rng_measure)[0])
        else:
            counts = statevector.sample(state, shots, rng_measure)
            label = int(np.argmax(counts))  # most frequent outcome, lowest wins ties
        if label != 0:
            dec_fe += 1
            dec_be += int(popcount[label])
    return ml_fe, ml_be, dec_fe, dec_be


def _state_at(code: LinearCode, y, angles: AngleSchedule) -> np.ndarray:
    ham = build_cost(code, y)
    state = statevector.init_plus(code.k)
    kernels.run_layers(
        state,
        ham.diagonal,
        np.asarray(angles.gammas, dtype=np.float64),
        np.asarray(angles.betas, dtype=np.float64),
        code.k,
    )
    return state


def _angles_str(angles: AngleSchedule) -> str:
    gs = ";".join(format(g, ".9g") for g in angles.gammas)
    bs = ";".join(format(b, ".9g") for b in angles.betas)
    return f"g={gs} b={bs}"
