"""Numpy fallback implementations of the statevector kernels.

Same contracts as the compiled versions in _kernels_c.pyx: all functions
mutate the amplitude array in place; amps has length 2^k with little-endian
qubit order (qubit kappa = bit kappa-1 of the basis index).
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"


def apply_phase(amps: np.ndarray, diag: np.ndarray, gamma: float) -> None:
    """amps[z] *= exp(-1j * gamma * diag[z])."""
    amps *= np.exp(diag * (-1j * gamma))


def apply_mixer(amps: np.ndarray, k: int, beta: float) -> None:
    """Apply exp(-1j*beta*X) to every qubit via stride-2^q butterflies."""
    c = math.cos(beta)
    js = 1j * math.sin(beta)
    for q in range(k):
        view = amps.reshape(-1, 2, 1 << q)
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = c * a0 - js * a1
        view[:, 1, :] = c * a1 - js * a0


def expectation(amps: np.ndarray, diag: np.ndarray) -> float:
    """Exact <C> = sum_z |amps[z]|^2 * diag[z]."""
    probs = amps.real * amps.real + amps.imag * amps.imag
    return float(probs @ diag)


def run_layers(amps: np.ndarray, diag: np.ndarray, gammas, betas, k: int) -> None:
    """Apply p alternating (cost-phase, mixer) layers in place."""
    for gamma, beta in zip(gammas, betas):
        apply_phase(amps, diag, gamma)
        apply_mixer(amps, k, beta)
