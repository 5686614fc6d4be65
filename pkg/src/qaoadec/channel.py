"""Binary symmetric channel simulation."""

from __future__ import annotations

import numpy as np

from . import gf2

__all__ = ["BscChannel"]


class BscChannel:
    """BSC with crossover probability epsilon in [0, 0.5].

    Instances own a mutable RNG and are therefore single-owner: create one
    channel per worker. Identical (seed, epsilon) reproduce the same flip
    sequence bit for bit.
    """

    def __init__(self, epsilon: float, seed=None, rng: np.random.Generator | None = None):
        if not 0.0 <= epsilon <= 0.5:
            # the decoder's correlation metric assumes epsilon <= 0.5
            raise ValueError(f"epsilon must be in [0, 0.5], got {epsilon}")
        self.epsilon = float(epsilon)
        self.rng = rng if rng is not None else np.random.default_rng(seed)

    def transmit(self, x) -> np.ndarray:
        """Flip each bit of x independently with probability epsilon."""
        x = gf2.bitvec(x)
        flips = self.rng.random(x.size) < self.epsilon
        return (x ^ flips.astype(np.uint8)).astype(np.uint8)

    def noise(self, n: int) -> np.ndarray:
        """Received word for a transmitted all-zero word (y = w).

        By linear-code symmetry over a symmetric channel, zero-word
        transmission is sufficient for error-rate studies.
        """
        return (self.rng.random(n) < self.epsilon).astype(np.uint8)
