"""Level-p QAOA execution and angle optimization.

The ansatz applies p alternating (cost-phase, mixer) layers to the uniform
superposition; the cost expectation F_p is computed exactly from the
statevector. Angles are optimized by multi-start Nelder-Mead; for p >= 2
one start is warm-started from the zero-padded level-(p-1) optimum, which
guarantees F*_p never decreases with p.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import kernels, statevector
from .codes import LinearCode
from .cost import CostHamiltonian, build_cost

__all__ = [
    "AngleSchedule",
    "OptimizerConfig",
    "OptimizationResult",
    "ExpectationSurface",
    "run_ansatz",
    "fp_expectation",
    "optimize_angles",
    "grid_sweep",
    "success_probability",
    "cross_entropy",
    "ml_mass",
]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class AngleSchedule:
    """The 2p variational parameters (gammas, betas).

    Canonical domain: gamma in [0, 2pi), beta in [0, pi). Schedules are
    stored as given; canonicalized() folds them into the canonical domain
    (the ansatz state is invariant under these shifts up to global phase).
    """

    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        if len(self.gammas) != len(self.betas) or not self.gammas:
            raise ValueError("need equal, nonzero numbers of gammas and betas")
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))

    @property
    def p(self) -> int:
        return len(self.gammas)

    def canonicalized(self) -> "AngleSchedule":
        return AngleSchedule(
            tuple(g % TWO_PI for g in self.gammas),
            tuple(b % np.pi for b in self.betas),
        )

    def padded(self) -> "AngleSchedule":
        """Append an identity (0, 0) layer; reproduces the same state."""
        return AngleSchedule(self.gammas + (0.0,), self.betas + (0.0,))

    def as_vector(self) -> np.ndarray:
        return np.asarray(self.gammas + self.betas, dtype=np.float64)

    @classmethod
    def from_vector(cls, x) -> "AngleSchedule":
        x = np.asarray(x, dtype=np.float64)
        p = x.size // 2
        return cls(tuple(x[:p]), tuple(x[p:]))


def _ansatz_state(ham: CostHamiltonian, gammas: np.ndarray, betas: np.ndarray) -> np.ndarray:
    state = statevector.init_plus(ham.k)
    kernels.run_layers(state, ham.diagonal, gammas, betas, ham.k)
    return state


def run_ansatz(code: LinearCode, y, angles: AngleSchedule) -> np.ndarray:
    """Statevector after p layers: U(B,b_p)U(C,g_p)...U(B,b_1)U(C,g_1)|+>^k."""
    ham = build_cost(code, y)
    return _ansatz_state(
        ham,
        np.asarray(angles.gammas, dtype=np.float64),
        np.asarray(angles.betas, dtype=np.float64),
    )


def fp_expectation(code: LinearCode, y, angles: AngleSchedule) -> float:
    """Exact F_p = <C> in the ansatz state."""
    ham = build_cost(code, y)
    state = _ansatz_state(
        ham,
        np.asarray(angles.gammas, dtype=np.float64),
        np.asarray(angles.betas, dtype=np.float64),
    )
    return statevector.expectation(state, ham)


@dataclass
class OptimizerConfig:
    """Multi-start Nelder-Mead settings.

    p=1 starts come from an exact coarse evaluation of the landscape
    (gamma_points x beta_points grid, best refine_top refined); deeper
    levels use the warm start, a few jittered copies of it, and
    random_starts uniform draws. The per-start budget is max_evals
    function evaluations with simplex f-spread tolerance f_tol.
    """

    random_starts: int = 48
    warm_jitters: int = 4
    jitter_scale: float = 0.15
    gamma_points: int = 32
    beta_points: int = 16
    refine_top: int = 12
    max_evals: int = 2000
    f_tol: float = 1e-10
    x_tol: float = 1e-8
    seed: int = 0


@dataclass
class OptimizationResult:
    best_angles: AngleSchedule
    f_star: float
    evaluations: int
    starts: int
    budget_exhausted: bool
    history: list = field(default_factory=list, repr=False)


def optimize_angles(
    code: LinearCode,
    y,
    p: int,
    config: OptimizerConfig | None = None,
    warm: AngleSchedule | None = None,
) -> OptimizationResult:
    """Maximize F_p over the 2p angles by multi-start Nelder-Mead.

    For p >= 2 and warm=None, levels 1..p-1 are optimized first and chained
    as warm starts. Non-convergence within the evaluation budget is
    reported via budget_exhausted, never as a failure.
    """
    if p < 1:
        raise ValueError("level p must be >= 1")
    cfg = config or OptimizerConfig()
    ham = build_cost(code, y)
    if warm is None and p > 1:
        warm = optimize_angles(code, y, p - 1, config=cfg).best_angles

    evals = 0

    def objective(x):
        nonlocal evals
        evals += 1
        state = _ansatz_state(ham, x[:p], x[p:])
        return -statevector.expectation(state, ham)

    starts = _build_starts(ham, p, cfg, warm)
    best_f = -np.inf
    best_x = None
    exhausted = False
    history = []
    for x0 in starts:
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "maxfev": cfg.max_evals,
                "fatol": cfg.f_tol,
                "xatol": cfg.x_tol,
            },
        )
        exhausted |= not res.success
        history.append(float(-res.fun))
        if -res.fun > best_f:
            best_f = float(-res.fun)
            best_x = res.x
    angles = AngleSchedule.from_vector(best_x).canonicalized()
    # canonicalization preserves the state up to global phase; report the
    # expectation actually attained at the returned angles
    f_star = fp_expectation(code, y, angles)
    return OptimizationResult(
        best_angles=angles,
        f_star=f_star,
        evaluations=evals,
        starts=len(starts),
        budget_exhausted=exhausted,
        history=history,
    )


def _build_starts(ham, p, cfg, warm):
    rng = np.random.default_rng(cfg.seed)
    starts = []
    if warm is not None and warm.p == p - 1:
        wvec = warm.padded().as_vector()
        starts.append(wvec)
        for _ in range(cfg.warm_jitters):
            starts.append(wvec + rng.normal(0.0, cfg.jitter_scale, size=2 * p))
    if p == 1:
        gs = np.linspace(0.0, TWO_PI, cfg.gamma_points, endpoint=False)
        bs = np.linspace(0.0, np.pi, cfg.beta_points, endpoint=False)
        values = np.empty((gs.size, bs.size))
        for i, g in enumerate(gs):
            for j, b in enumerate(bs):
                state = _ansatz_state(ham, np.array([g]), np.array([b]))
                values[i, j] = statevector.expectation(state, ham)
        # refine the best distinct basins: grid-local maxima, gamma wraps
        neighborhood = values.copy()
        for shift in (-1, 1):
            neighborhood = np.maximum(neighborhood, np.roll(values, shift, axis=0))
            shifted = np.roll(values, shift, axis=1)
            shifted[:, 0 if shift == 1 else -1] = -np.inf
            neighborhood = np.maximum(neighborhood, shifted)
        peaks = np.argwhere(values >= neighborhood)
        peak_values = values[peaks[:, 0], peaks[:, 1]]
        for flat in np.argsort(peak_values)[::-1][: cfg.refine_top]:
            i, j = peaks[flat]
            starts.append(np.array([gs[i], bs[j]]))
    for _ in range(cfg.random_starts if p > 1 else 0):
        starts.append(
            np.concatenate([rng.uniform(0, TWO_PI, p), rng.uniform(0, np.pi, p)])
        )
    return starts


@dataclass
class ExpectationSurface:
    gammas: np.ndarray
    betas: np.ndarray
    values: np.ndarray  # shape (len(gammas), len(betas))

    def max_point(self):
        i, j = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        return float(self.values[i, j]), float(self.gammas[i]), float(self.betas[j])


def grid_sweep(code: LinearCode, y, gammas, betas) -> ExpectationSurface:
    """Exact level-1 F_1 at every (gamma, beta) grid point.

    Pure function of its inputs: repeated calls are bit-identical.
    """
    ham = build_cost(code, y)
    gammas = np.asarray(gammas, dtype=np.float64)
    betas = np.asarray(betas, dtype=np.float64)
    values = np.empty((gammas.size, betas.size))
    for i, g in enumerate(gammas):
        for j, b in enumerate(betas):
            state = _ansatz_state(ham, np.array([g]), np.array([b]))
            values[i, j] = statevector.expectation(state, ham)
    return ExpectationSurface(gammas=gammas, betas=betas, values=values)


def _ml_indices(ham: CostHamiltonian) -> np.ndarray:
    return ham.argmax_states()


def success_probability(state: np.ndarray, code: LinearCode, y) -> float:
    """Probability that one measurement yields an ML-optimal info word.

    Sums |amplitude|^2 over the full argmax set (all ties).
    """
    ham = build_cost(code, y)
    probs = statevector.probabilities(state)
    return float(probs[_ml_indices(ham)].sum())


def ml_mass(state: np.ndarray, ham: CostHamiltonian) -> float:
    probs = statevector.probabilities(state)
    return float(probs[_ml_indices(ham)].sum())


def cross_entropy(state: np.ndarray, code: LinearCode, y) -> float:
    """-ln of the probability mass on the ML info word.

    Zero for an error-free (deterministic) decision; ln(2^k) for the
    uniform state with a unique ML word. If the ML decision is tied, the
    metric is computed on the total tie mass.
    """
    return -float(np.log(success_probability(state, code, y)))
