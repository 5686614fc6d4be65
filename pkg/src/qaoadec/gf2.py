"""Exact linear algebra over GF(2).

Bit vectors are 1-D numpy arrays of dtype uint8 with entries in {0, 1};
bit matrices are 2-D. All operations are pure functions on immutable
inputs (arguments are never modified).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "bitvec",
    "bitmat",
    "gf2_matmul",
    "gf2_rank",
    "column_degrees",
    "random_fullrank",
    "parse_matrix_text",
    "format_matrix_text",
]


def bitvec(bits) -> np.ndarray:
    """Validate and return a GF(2) vector as a uint8 array."""
    v = np.asarray(bits, dtype=np.uint8)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("bit vector must be 1-D and non-empty")
    if np.any(v > 1):
        raise ValueError("bit vector entries must be 0 or 1")
    return v


def bitmat(rows) -> np.ndarray:
    """Validate and return a GF(2) matrix as a uint8 array."""
    m = np.asarray(rows, dtype=np.uint8)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ValueError("bit matrix must be 2-D with positive dimensions")
    if np.any(m > 1):
        raise ValueError("bit matrix entries must be 0 or 1")
    return m


def gf2_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over GF(2): entry (i,j) = XOR_t a[i,t]*b[t,j]."""
    a = bitmat(a)
    b = bitmat(b) if np.asarray(b).ndim == 2 else bitvec(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} x {b.shape}")
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.uint8)


def gf2_rank(a: np.ndarray) -> int:
    """Rank over GF(2) via Gaussian elimination on bit-packed rows."""
    a = bitmat(a)
    k, n = a.shape
    # pack each row into a python int; elimination is then row XORs
    rows = [int.from_bytes(np.packbits(a[i], bitorder="little").tobytes(), "little")
            for i in range(k)]
    rank = 0
    for col in range(n):
        pivot_bit = 1 << col
        pivot = next((i for i in range(rank, k) if rows[i] & pivot_bit), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(k):
            if i != rank and rows[i] & pivot_bit:
                rows[i] ^= rows[rank]
        rank += 1
        if rank == k:
            break
    return rank


def column_degrees(g: np.ndarray) -> tuple[np.ndarray, float]:
    """Per-column number of ones and their mean.

    The column degree of column nu is the number of nonzero entries,
    i.e. the locality of the matching cost clause.
    """
    g = bitmat(g)
    degrees = g.sum(axis=0).astype(np.int64)
    return degrees, float(degrees.mean())


def random_fullrank(k: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random full-rank k x k GF(2) matrix by rejection sampling.

    Acceptance probability exceeds 0.28 for every k, so rejection is cheap.
    Deterministic given the generator state.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    while True:
        m = rng.integers(0, 2, size=(k, k), dtype=np.uint8)
        if gf2_rank(m) == k:
            return m


def parse_matrix_text(text: str) -> np.ndarray:
    """Parse the generator-matrix text format.

    One row per line, characters '0'/'1', optional spaces, '#' starts a
    comment. Blank lines are skipped. Ragged rows are rejected.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].replace(" ", "").replace("\t", "").strip()
        if not line:
            continue
        if set(line) - {"0", "1"}:
            raise ValueError(f"line {lineno}: invalid characters in matrix row")
        rows.append([int(ch) for ch in line])
    if not rows:
        raise ValueError("no matrix rows found")
    width = len(rows[0])
    for lineno_offset, r in enumerate(rows):
        if len(r) != width:
            raise ValueError(f"ragged row of length {len(r)}, expected {width}")
    return bitmat(rows)


def format_matrix_text(m: np.ndarray) -> str:
    """Render a bit matrix in the text format accepted by parse_matrix_text."""
    m = bitmat(m)
    return "\n".join("".join(str(int(x)) for x in row) for row in m) + "\n"
