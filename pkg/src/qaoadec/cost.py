"""Decoding cost Hamiltonian: one signed Z-product clause per codeword bit.

Clause nu has sign 1-2*y_nu and acts on the qubits indexed by the nonzero
rows of column nu of the generator matrix. Its eigenvalue at basis state z
is sign * prod_{kappa in support} (1-2*z_kappa), so the total diagonal
equals the correlation between y and the codeword encoded from z.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from .codes import LinearCode

__all__ = ["CostClause", "CostHamiltonian", "build_cost", "eval_cost"]


@dataclass(frozen=True)
class CostClause:
    sign: int                 # +1 or -1, the factor 1-2*y_nu
    support: tuple[int, ...]  # 1-indexed qubit indices, sorted
    mask: int                 # support as a bitmask (qubit kappa -> bit kappa-1)


class CostHamiltonian:
    """Ordered clauses plus the precomputed full diagonal table.

    diagonal[z] is the eigenvalue at basis state z (little-endian bit
    order: qubit 1 is the least significant bit of z). The table is built
    once per (G, y) pair and shared read-only afterwards.
    """

    def __init__(self, k: int, clauses: list[CostClause]):
        self.k = k
        self.clauses = tuple(clauses)
        self.n = len(clauses)
        self.diagonal = self._build_diagonal()
        self.diagonal.setflags(write=False)

    def _build_diagonal(self) -> np.ndarray:
        z = np.arange(1 << self.k, dtype=np.uint32)
        diag = np.zeros(1 << self.k, dtype=np.float64)
        for clause in self.clauses:
            parity = np.bitwise_count(z & np.uint32(clause.mask)) & 1
            diag += clause.sign * (1.0 - 2.0 * parity)
        return diag

    def max_eigenvalue(self) -> float:
        return float(self.diagonal.max())

    def argmax_states(self) -> np.ndarray:
        """All basis states attaining the maximum eigenvalue (ML set)."""
        return np.nonzero(self.diagonal == self.diagonal.max())[0]


def build_cost(code: LinearCode, y) -> CostHamiltonian:
    """Construct the cost Hamiltonian for generator matrix G and received y."""
    y = gf2.bitvec(y)
    if y.size != code.n:
        raise ValueError(f"received word length {y.size}, expected {code.n}")
    clauses = []
    for nu in range(code.n):
        rows = np.nonzero(code.G[:, nu])[0]
        if rows.size == 0:
            # a constant clause has no defined qubit support
            raise ValueError(f"column {nu + 1} of G is all-zero")
        support = tuple(int(r) + 1 for r in rows)
        mask = int(np.bitwise_or.reduce(1 << rows.astype(np.int64)))
        clauses.append(CostClause(sign=1 - 2 * int(y[nu]), support=support, mask=mask))
    return CostHamiltonian(code.k, clauses)


def eval_cost(ham: CostHamiltonian, z) -> int:
    """Classical cost of the bit assignment z (an integer in [-n, n])."""
    z = gf2.bitvec(z)
    if z.size != ham.k:
        raise ValueError(f"assignment length {z.size}, expected {ham.k}")
    index = int(np.dot(z.astype(np.int64), 1 << np.arange(ham.k, dtype=np.int64)))
    return int(ham.diagonal[index])
