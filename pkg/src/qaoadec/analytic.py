"""Closed-form level-1 cost expectation for an arbitrary generator matrix.

The expectation F_1(gamma_1, beta_1) decomposes per clause. Conjugating a
clause's Z-product through the mixer splits it into 2^d branches (one per
choice of Z or Y at each supported qubit, weights c'=cos(2*beta_1) and
s'=sin(2*beta_1)). Conjugating a branch through the cost unitary leaves
the clauses that anticommute with it (odd support overlap with the branch's
Y-set); expanding each surviving factor exp(2j*gamma_1*C) = c*I + j*s*C
over the rho anticommuting clauses gives 2^rho assignments with weights
c=cos(2*gamma_1), s=sin(2*gamma_1).

An assignment contributes iff the accumulated Z-parity on every qubit
cancels the branch's residual Zs and converts each Y to X, i.e. iff the
GF(2) sum of its chosen columns equals the analyzed clause's own column
indicator. (For the all-Y branch this reduces to matching the Y-set
itself, which is the easily-checked special case; the general target is
validated against the exact simulator.) The selection criterion forces
omega = |assignment| and varpi = |Y-set| to share parity, so every
surviving term's phase j^omega * (-j)^varpi is real: (-1)^((omega-varpi)/2).

Received-word signs enter twice: the analyzed clause contributes its
overall 1-2*y_nu, and each assignment-selected clause nu' flips the sign
of its sine factor, folded in as (-1)^(y_nu').

All coefficients are exact integers; like monomials in
(s, c, s', c') are merged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from . import gf2
from .codes import LinearCode
from .cost import CostClause, build_cost

__all__ = [
    "DerivationError",
    "TrigMonomial",
    "TrigPolynomial",
    "BranchTrace",
    "ClauseTrace",
    "DerivationTrace",
    "mixer_branches",
    "noncommuting_submatrix",
    "matching_assignments",
    "derive_level1",
    "evaluate",
    "maximize",
]

ENUMERATION_BOUND = 24  # max count of anticommuting clauses per branch


class DerivationError(AssertionError):
    """Internal derivation invariant violated (imaginary phase survived)."""


@dataclass(frozen=True, order=True)
class TrigMonomial:
    """coeff * s^s_pow * c^c_pow * s'^sp_pow * c'^cp_pow.

    s = sin(2*gamma_1), c = cos(2*gamma_1), s' = sin(2*beta_1),
    c' = cos(2*beta_1). sp_pow + cp_pow equals the degree of the
    originating clause; coefficients are exact integers with every
    imaginary unit already resolved.
    """

    s_pow: int
    c_pow: int
    sp_pow: int
    cp_pow: int
    coeff: int


@dataclass(frozen=True)
class TrigPolynomial:
    """Merged, like-term-combined trigonometric polynomial; real-valued."""

    terms: tuple[TrigMonomial, ...]

    @classmethod
    def from_dict(cls, d: dict[tuple[int, int, int, int], int]) -> "TrigPolynomial":
        terms = tuple(
            sorted(
                TrigMonomial(*key, coeff=int(v)) for key, v in d.items() if v != 0
            )
        )
        return cls(terms)

    def as_dict(self) -> dict[tuple[int, int, int, int], int]:
        return {(t.s_pow, t.c_pow, t.sp_pow, t.cp_pow): t.coeff for t in self.terms}

    def __len__(self) -> int:
        return len(self.terms)

    def evaluate(self, gamma, beta):
        """Evaluate at gamma, beta (scalars or broadcastable arrays)."""
        s, c = np.sin(2 * np.asarray(gamma)), np.cos(2 * np.asarray(gamma))
        sp, cp = np.sin(2 * np.asarray(beta)), np.cos(2 * np.asarray(beta))
        total = np.zeros(np.broadcast(s, sp).shape)
        for t in self.terms:
            total = total + t.coeff * s**t.s_pow * c**t.c_pow * sp**t.sp_pow * cp**t.cp_pow
        if total.ndim == 0:
            return float(total)
        return total

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            factors = [str(t.coeff)]
            for sym, e in (("s", t.s_pow), ("c", t.c_pow), ("s'", t.sp_pow), ("c'", t.cp_pow)):
                if e == 1:
                    factors.append(sym)
                elif e > 1:
                    factors.append(f"{sym}^{e}")
            parts.append(" * ".join(factors))
        return "  +  ".join(parts)


class Assignment(NamedTuple):
    a: tuple[int, ...]      # representative assignment bits over the rho columns
    omega: int              # assignment weight
    multiplicity: int       # number of matching assignments of this weight


@dataclass(frozen=True)
class BranchTrace:
    b: tuple[int, ...]              # branch Y-set indicator over the k qubits
    varpi: int                      # branch weight
    selected_columns: tuple[int, ...]  # 1-indexed anticommuting columns
    rho: int
    assignments: tuple[Assignment, ...]


@dataclass(frozen=True)
class ClauseTrace:
    nu: int                         # 1-indexed clause
    sign: int
    support: tuple[int, ...]
    branches: tuple[BranchTrace, ...]


@dataclass(frozen=True)
class DerivationTrace:
    clauses: tuple[ClauseTrace, ...]


def _column_masks(g: np.ndarray) -> np.ndarray:
    k = g.shape[0]
    weights = (1 << np.arange(k, dtype=np.int64))
    return (g.astype(np.int64).T @ weights).astype(np.uint32)


def mixer_branches(clause: CostClause, k: int) -> list[tuple[np.ndarray, int]]:
    """All 2^d mixer branches of a clause.

    Each branch is a k-bit vector b supported on the clause's qubits:
    b_kappa = 1 selects the Y branch (weight s'), b_kappa = 0 the Z branch
    (weight c'). Returns (b, varpi) pairs with varpi = |b|.
    """
    support0 = [q - 1 for q in clause.support]
    out = []
    for pattern in range(1 << len(support0)):
        b = np.zeros(k, dtype=np.uint8)
        for i, q in enumerate(support0):
            b[q] = (pattern >> i) & 1
        out.append((b, int(b.sum())))
    return out


def noncommuting_submatrix(g: np.ndarray, b) -> tuple[np.ndarray, int, tuple[int, ...]]:
    """Columns of g that anticommute with branch b, and their count rho.

    A column anticommutes iff its overlap with the branch's Y-set has odd
    weight. Returns (submatrix, rho, 1-indexed column indices); rho counts
    columns (with repetition), it is not a GF(2) rank.
    """
    g = gf2.bitmat(g)
    b = gf2.bitvec(b)
    overlaps = (g.astype(np.int64) * b.astype(np.int64)[:, None]).sum(axis=0) % 2
    idx = np.nonzero(overlaps == 1)[0]
    return g[:, idx], int(idx.size), tuple(int(i) + 1 for i in idx)


def _subset_xor_table(masks: np.ndarray) -> np.ndarray:
    """table[i] = XOR of masks[j] over the set bits j of i, for all subsets."""
    rho = masks.size
    table = np.zeros(1 << rho, dtype=np.uint32)
    for j in range(rho):
        size = 1 << j
        table[size : 2 * size] = table[:size] ^ masks[j]
    return table


def matching_assignments(g_sub: np.ndarray, target) -> list[Assignment]:
    """Assignments over the columns of g_sub whose GF(2) column-sum is target.

    target is the parity vector the assignment must reproduce: the analyzed
    clause's support indicator (for an all-Y branch this coincides with the
    branch vector itself). Enumerates all 2^rho assignments exactly and
    groups matches by weight omega; multiplicities are exact counts.
    """
    g_sub = np.asarray(g_sub, dtype=np.uint8)
    if g_sub.ndim != 2:
        raise ValueError("g_sub must be a matrix (columns = anticommuting clauses)")
    rho = g_sub.shape[1]
    if rho > ENUMERATION_BOUND:
        raise ValueError(
            f"rho={rho} exceeds the enumeration bound {ENUMERATION_BOUND} "
            f"(2^{rho} assignments)"
        )
    target = gf2.bitvec(target)
    k = g_sub.shape[0]
    weights = (1 << np.arange(k, dtype=np.int64))
    masks = (g_sub.astype(np.int64).T @ weights).astype(np.uint32)
    target_mask = np.uint32(int(target.astype(np.int64) @ weights))
    table = _subset_xor_table(masks)
    matches = np.nonzero(table == target_mask)[0].astype(np.uint32)
    omegas = np.bitwise_count(matches).astype(np.int64)
    out = []
    for omega in np.unique(omegas):
        members = matches[omegas == omega]
        rep = tuple(int((int(members[0]) >> j) & 1) for j in range(rho))
        out.append(Assignment(a=rep, omega=int(omega), multiplicity=int(members.size)))
    return out


def derive_level1(code: LinearCode, y) -> tuple[TrigPolynomial, DerivationTrace]:
    """Exact closed form of F_1(gamma_1, beta_1) for the given code and y.

    Assembles every (clause, branch, assignment) contribution with integer
    coefficients and merges like monomials. A surviving term whose phase
    fails to resolve to a real sign indicates a broken invariant and raises
    DerivationError.
    """
    ham = build_cost(code, y)  # validates y and rejects all-zero columns
    y = gf2.bitvec(y)
    k, n = code.k, code.n
    colmasks = _column_masks(code.G)
    terms: dict[tuple[int, int, int, int], int] = {}
    clause_traces = []
    for nu in range(n):
        clause = ham.clauses[nu]
        g_mask = colmasks[nu]
        d = len(clause.support)
        support0 = [q - 1 for q in clause.support]
        branch_traces = []
        for pattern in range(1 << d):
            b_mask = np.uint32(0)
            for i, q in enumerate(support0):
                if (pattern >> i) & 1:
                    b_mask |= np.uint32(1 << q)
            varpi = int(np.bitwise_count(b_mask))
            overlap_parity = np.bitwise_count(colmasks & b_mask) & 1
            sel = np.nonzero(overlap_parity == 1)[0]
            rho = int(sel.size)
            if rho > ENUMERATION_BOUND:
                raise ValueError(
                    f"clause {nu + 1}: rho={rho} exceeds the enumeration "
                    f"bound {ENUMERATION_BOUND}"
                )
            table = _subset_xor_table(colmasks[sel])
            matches = np.nonzero(table == g_mask)[0].astype(np.uint32)
            assignments = []
            if matches.size:
                omegas = np.bitwise_count(matches).astype(np.int64)
                if np.any((omegas - varpi) % 2 != 0):
                    raise DerivationError(
                        "assignment weight and branch weight must share parity "
                        "for the phase to be real"
                    )
                phases = np.where(((omegas - varpi) // 2) % 2 == 0, 1, -1)
                ymask = np.uint32(0)
                for j, cidx in enumerate(sel):
                    if y[cidx]:
                        ymask |= np.uint32(1 << j)
                ysigns = 1 - 2 * (np.bitwise_count(matches & ymask) & 1).astype(np.int64)
                contrib = clause.sign * phases * ysigns
                agg = np.zeros(rho + 1, dtype=np.int64)
                np.add.at(agg, omegas, contrib)
                for omega in range(rho + 1):
                    if agg[omega] != 0:
                        key = (omega, rho - omega, varpi, d - varpi)
                        terms[key] = terms.get(key, 0) + int(agg[omega])
                for omega in np.unique(omegas):
                    members = matches[omegas == omega]
                    rep = tuple(int((int(members[0]) >> j) & 1) for j in range(rho))
                    assignments.append(
                        Assignment(a=rep, omega=int(omega), multiplicity=int(members.size))
                    )
            b_vec = tuple(int((int(b_mask) >> q) & 1) for q in range(k))
            branch_traces.append(
                BranchTrace(
                    b=b_vec,
                    varpi=varpi,
                    selected_columns=tuple(int(i) + 1 for i in sel),
                    rho=rho,
                    assignments=tuple(assignments),
                )
            )
        clause_traces.append(
            ClauseTrace(
                nu=nu + 1,
                sign=clause.sign,
                support=clause.support,
                branches=tuple(branch_traces),
            )
        )
    poly = TrigPolynomial.from_dict(terms)
    return poly, DerivationTrace(clauses=tuple(clause_traces))


def evaluate(expr: TrigPolynomial, gamma, beta):
    """Evaluate the polynomial at (gamma, beta); broadcasts over arrays."""
    return expr.evaluate(gamma, beta)


def maximize(
    expr: TrigPolynomial,
    grid_size: tuple[int, int] = (256, 256),
    refine_top: int = 8,
) -> tuple[float, float, float]:
    """Global maximum of F_1 over [0, 2pi) x [0, pi).

    Grid scan followed by Nelder-Mead refinement from the best grid points.
    Returns (f_star, gamma_star, beta_star); among ties the
    lexicographically smallest canonical (gamma, beta) is reported.
    """
    ng, nb = grid_size
    gammas = np.linspace(0.0, 2 * np.pi, ng, endpoint=False)
    betas = np.linspace(0.0, np.pi, nb, endpoint=False)
    values = expr.evaluate(gammas[:, None], betas[None, :])
    order = np.argsort(values.ravel())[::-1][:refine_top]
    candidates = []
    for flat in order:
        i, j = np.unravel_index(int(flat), values.shape)
        res = minimize(
            lambda x: -expr.evaluate(x[0], x[1]),
            np.array([gammas[i], betas[j]]),
            method="Nelder-Mead",
            options={"fatol": 1e-12, "xatol": 1e-10, "maxfev": 2000},
        )
        g_star = float(res.x[0] % (2 * np.pi))
        b_star = float(res.x[1] % np.pi)
        candidates.append((-float(res.fun), g_star, b_star))
    f_best = max(c[0] for c in candidates)
    ties = [c for c in candidates if c[0] >= f_best - 1e-12]
    ties.sort(key=lambda c: (c[1], c[2]))
    f_star, g_star, b_star = ties[0]
    return f_star, g_star, b_star
