"""Quasi-ML decoding of binary linear codes with QAOA, simulated exactly
on classical hardware, plus the closed-form level-1 expectation analysis.
"""

from .channel import BscChannel
from .codes import LinearCode, available_codes, get_code
from .cost import CostHamiltonian, build_cost, eval_cost
from .engine import (
    AngleSchedule,
    OptimizationResult,
    cross_entropy,
    fp_expectation,
    grid_sweep,
    optimize_angles,
    run_ansatz,
    success_probability,
)
from .analytic import TrigPolynomial, derive_level1, evaluate, maximize
from .kernels import backend_name
from ._version import __version__

__all__ = [
    "AngleSchedule",
    "BscChannel",
    "CostHamiltonian",
    "LinearCode",
    "OptimizationResult",
    "TrigPolynomial",
    "available_codes",
    "backend_name",
    "build_cost",
    "cross_entropy",
    "derive_level1",
    "eval_cost",
    "evaluate",
    "fp_expectation",
    "get_code",
    "grid_sweep",
    "maximize",
    "optimize_angles",
    "run_ansatz",
    "success_probability",
    "__version__",
]
