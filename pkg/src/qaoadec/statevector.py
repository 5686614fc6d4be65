"""Exact k-qubit statevector simulation of the three circuit layers the
decoder needs: uniform-superposition init, diagonal cost phase, X-rotation
mixer; plus exact expectations and shot sampling.

State convention: amplitudes are a complex128 array of length 2^k; qubit
kappa (1-indexed) is bit kappa-1 of the basis index, so the basis index of
assignment z is sum_kappa z_kappa * 2^(kappa-1). Layer operations mutate
the array in place and return it.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .cost import CostHamiltonian

__all__ = [
    "MAX_QUBITS",
    "init_plus",
    "apply_cost_phase",
    "apply_mixer",
    "expectation",
    "probabilities",
    "sample",
]

MAX_QUBITS = 20


def init_plus(k: int) -> np.ndarray:
    """|+>^k: every amplitude 2^(-k/2), real and positive."""
    if not 1 <= k <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {k}")
    return np.full(1 << k, 2.0 ** (-k / 2), dtype=np.complex128)


def apply_cost_phase(state: np.ndarray, ham: CostHamiltonian, gamma: float) -> np.ndarray:
    """Diagonal phase exp(-1j*gamma*C): one complex multiply per amplitude."""
    if state.size != 1 << ham.k:
        raise ValueError("state size does not match Hamiltonian qubit count")
    kernels.apply_phase(state, ham.diagonal, float(gamma))
    return state


def apply_mixer(state: np.ndarray, beta: float) -> np.ndarray:
    """Rotate every qubit by [[cos b, -j sin b], [-j sin b, cos b]]."""
    k = state.size.bit_length() - 1
    kernels.apply_mixer(state, k, float(beta))
    return state


def expectation(state: np.ndarray, ham: CostHamiltonian) -> float:
    """Exact <C> in the given state (no sampling noise)."""
    if state.size != 1 << ham.k:
        raise ValueError("state size does not match Hamiltonian qubit count")
    return kernels.expectation(state, ham.diagonal)


def probabilities(state: np.ndarray) -> np.ndarray:
    return state.real**2 + state.imag**2


def sample(state: np.ndarray, shots: int, rng: np.random.Generator) -> np.ndarray:
    """Measure `shots` i.i.d. computational-basis outcomes.

    Returns a histogram (counts per basis state). Inverse-CDF sampling over
    the cumulative |amplitude|^2 array; deterministic given the generator.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    outcomes = sample_outcomes(state, shots, rng)
    return np.bincount(outcomes, minlength=state.size)


def sample_outcomes(state: np.ndarray, shots: int, rng: np.random.Generator) -> np.ndarray:
    """Measured basis indices, one per shot, in draw order."""
    cdf = np.cumsum(probabilities(state))
    cdf /= cdf[-1]
    return np.searchsorted(cdf, rng.random(shots), side="right").astype(np.int64)
