"""Binary linear block codes: encoding, correlation metric, exhaustive
ML-decoding oracle, weight spectra, and the built-in code registry.

Information words u are indexed little-endian: the integer label of u is
sum_kappa u_kappa * 2**(kappa-1), i.e. bit 1 is the least significant.
This matches the statevector basis convention used everywhere else.
"""

from __future__ import annotations

import numpy as np

from . import gf2

__all__ = [
    "LinearCode",
    "correlation",
    "ml_decode_bruteforce",
    "weight_spectrum",
    "get_code",
    "available_codes",
    "HAMMING_74_G",
    "TABLE_P_MATRICES",
    "RM_16_5_G",
]


class LinearCode:
    """An (n, k) binary linear code given by a full-rank generator matrix."""

    def __init__(self, generator, name: str | None = None):
        g = gf2.bitmat(generator)
        k, n = g.shape
        if gf2.gf2_rank(g) != k:
            raise ValueError("generator matrix must have full row rank")
        g.setflags(write=False)
        self.G = g
        self.k = k
        self.n = n
        self.name = name
        self._codewords = None

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"LinearCode({self.n},{self.k}){label}"

    def encode(self, u) -> np.ndarray:
        """Codeword x = uG over GF(2)."""
        u = gf2.bitvec(u)
        if u.size != self.k:
            raise ValueError(f"info word length {u.size}, expected {self.k}")
        return (u.astype(np.int64) @ self.G % 2).astype(np.uint8)

    def info_words(self) -> np.ndarray:
        """All 2^k info words as a (2^k, k) array, row z = bits of z."""
        z = np.arange(1 << self.k, dtype=np.uint32)
        return ((z[:, None] >> np.arange(self.k)) & 1).astype(np.uint8)

    def codewords(self) -> np.ndarray:
        """All 2^k codewords, row order matching info_words(). Cached."""
        if self._codewords is None:
            cw = (self.info_words().astype(np.int64) @ self.G % 2).astype(np.uint8)
            cw.setflags(write=False)
            self._codewords = cw
        return self._codewords

    def column_degrees(self):
        return gf2.column_degrees(self.G)


def correlation(y, x) -> int:
    """sum_nu (1-2*y_nu)(1-2*x_nu); equals n - 2*d_H(y, x)."""
    y = gf2.bitvec(y)
    x = gf2.bitvec(x)
    if y.size != x.size:
        raise ValueError("length mismatch")
    return int(y.size - 2 * np.count_nonzero(y != x))


def ml_decode_bruteforce(y, code: LinearCode):
    """Exhaustive maximum-likelihood decoding over all 2^k candidates.

    Returns (u_star, corr_star, tie_count). Ties are broken by the lowest
    integer label of u (little-endian), making the oracle deterministic.
    """
    y = gf2.bitvec(y)
    if y.size != code.n:
        raise ValueError("received word length mismatch")
    corr = correlations_all(y, code)
    corr_star = int(corr.max())
    ties = np.nonzero(corr == corr_star)[0]
    u_star = code.info_words()[ties[0]]
    return u_star, corr_star, int(ties.size)


def correlations_all(y, code: LinearCode) -> np.ndarray:
    """Correlation of y against every codeword, indexed by info-word label."""
    y = gf2.bitvec(y)
    signs_y = 1 - 2 * y.astype(np.int64)
    signs_x = 1 - 2 * code.codewords().astype(np.int64)
    return signs_x @ signs_y


def weight_spectrum(code: LinearCode) -> dict[int, int]:
    """Hamming-weight histogram over all 2^k codewords."""
    if code.k > 20:
        raise ValueError("weight spectrum enumeration limited to k <= 20")
    weights = code.codewords().sum(axis=1)
    values, counts = np.unique(weights, return_counts=True)
    return {int(w): int(c) for w, c in zip(values, counts)}


# (7,4) systematic Hamming generator
HAMMING_74_G = gf2.bitmat([
    [1, 0, 0, 0, 1, 1, 0],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 1, 1],
])

# Basis transforms G' = P G producing the eight studied column-degree
# variants of the Hamming code, keyed by mean column degree (2 decimals).
TABLE_P_MATRICES = {
    "1.71": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]],
    "1.86": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    "2.00": [[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    "2.14": [[1, 1, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]],
    "2.29": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 1]],
    "2.43": [[1, 1, 1, 1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    "2.57": [[1, 1, 1, 1], [0, 1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1]],
    "2.71": [[1, 1, 1, 1], [0, 1, 1, 1], [1, 0, 1, 0], [0, 0, 0, 1]],
}


def _rm_16_5_systematic() -> np.ndarray:
    """Systematic generator of the (16, 5, 8) first-order Reed-Muller code.

    Codewords are evaluations of affine functions a0 + a.v over v in F_2^4.
    The information set is the points {0, 1, 2, 4, 8} (affinely independent),
    ordered first; remaining evaluation points follow in ascending order.
    The resulting column multiset is exactly the 16 odd-weight vectors of
    F_2^5, so the mean column degree is 40/16 = 2.50.
    """
    points = [0, 1, 2, 4, 8] + [v for v in range(16) if v not in (0, 1, 2, 4, 8)]
    cols = []
    for v in points:
        bits = [(v >> i) & 1 for i in range(4)]
        cols.append([(1 + sum(bits)) % 2] + bits)
    return gf2.bitmat(np.array(cols, dtype=np.uint8).T)


RM_16_5_G = _rm_16_5_systematic()


def _build_registry() -> dict[str, LinearCode]:
    reg = {}
    for dbar, p in TABLE_P_MATRICES.items():
        name = f"hamming74-d{dbar}"
        g = gf2.gf2_matmul(gf2.bitmat(p), HAMMING_74_G)
        reg[name] = LinearCode(g, name=name)
    reg["hamming74"] = reg["hamming74-d1.86"]
    reg["rm16x5"] = LinearCode(RM_16_5_G, name="rm16x5")
    return reg


_REGISTRY = _build_registry()


def get_code(name: str) -> LinearCode:
    """Look up a registered code by CLI name."""
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(
            f"unknown code {name!r}; available: {', '.join(available_codes())}"
        ) from None


def available_codes() -> list[str]:
    return sorted(_REGISTRY)


def hamming_variants() -> list[LinearCode]:
    """The eight degree variants, sorted by mean column degree."""
    return [_REGISTRY[f"hamming74-d{d}"] for d in sorted(TABLE_P_MATRICES)]
