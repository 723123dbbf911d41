"""Dense two-phase primal simplex.

Solves::

    minimize    c @ x
    subject to  A_eq @ x == b_eq
                A_ub @ x <= b_ub
                x >= 0

on a full tableau. Pivoting follows Bland's rule (lowest index enters,
lowest basic index leaves among ratio ties) so degenerate programs
terminate. Sized for programs with tens of variables, not thousands.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-8


class LpStatus(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """Constraint rows are ``(coefficients, rhs)`` pairs; ``ub`` rows mean ``row @ x <= rhs``."""

    objective: tuple[float, ...]
    eq_constraints: tuple = ()
    ub_constraints: tuple = ()

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def arrays(self):
        """Return ``(c, A_eq, b_eq, A_ub, b_ub)`` as float arrays, validating shapes."""
        c = np.asarray(self.objective, dtype=float)
        if c.ndim != 1 or c.size < 1:
            raise DimensionMismatch("objective must be a non-empty vector")
        v = c.size

        def stack(rows, kind):
            A = np.zeros((len(rows), v))
            b = np.zeros(len(rows))
            for r, (row, rhs) in enumerate(rows):
                row = np.asarray(row, dtype=float)
                if row.shape != (v,):
                    raise DimensionMismatch(
                        f"{kind} constraint {r} has {row.size} coefficients, expected {v}"
                    )
                A[r] = row
                b[r] = float(rhs)
            return A, b

        A_eq, b_eq = stack(self.eq_constraints, "equality")
        A_ub, b_ub = stack(self.ub_constraints, "inequality")
        if not (np.isfinite(c).all() and np.isfinite(A_eq).all() and np.isfinite(A_ub).all()
                and np.isfinite(b_eq).all() and np.isfinite(b_ub).all()):
            raise DimensionMismatch("non-finite coefficient")
        return c, A_eq, b_eq, A_ub, b_ub


@dataclass(frozen=True)
class LpSolution:
    x: np.ndarray
    objective_value: float
    status: LpStatus
    iterations: int = field(default=0, compare=False)

    @property
    def ok(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class _Tableau:
    """Rows ``0..r-1`` are constraints, row ``r`` holds reduced costs; last column is the RHS."""

    def __init__(self, A, b, basis):
        r, n = A.shape
        self.T = np.zeros((r + 1, n + 1))
        self.T[:r, :n] = A
        self.T[:r, n] = b
        self.basis = list(basis)
        self.iterations = 0

    @property
    def n_rows(self):
        return self.T.shape[0] - 1

    def set_cost(self, cost):
        n = self.T.shape[1] - 1
        obj = np.zeros(n + 1)
        obj[: len(cost)] = cost
        for i, j in enumerate(self.basis):
            if obj[j] != 0.0:
                obj -= obj[j] * self.T[i]
        self.T[-1] = obj

    @property
    def value(self):
        return -self.T[-1, -1]

    def pivot(self, row, col):
        T = self.T
        T[row] /= T[row, col]
        for i in range(T.shape[0]):
            if i != row and T[i, col] != 0.0:
                T[i] -= T[i, col] * T[row]
        T[:, col] = 0.0
        T[row, col] = 1.0
        self.basis[row] = col
        self.iterations += 1

    def run(self, allowed, max_iter):
        """Pivot to optimality over the columns in ``allowed``; return False if unbounded."""
        T = self.T
        for _ in range(max_iter):
            reduced = T[-1, :-1]
            entering = next((j for j in allowed if reduced[j] < -PIVOT_TOL), None)
            if entering is None:
                return True
            col = T[:-1, entering]
            rows = np.flatnonzero(col > PIVOT_TOL)
            if rows.size == 0:
                return False
            ratios = T[rows, -1] / col[rows]
            best = ratios.min()
            ties = rows[ratios <= best + PIVOT_TOL]
            leave = min(ties, key=lambda i: self.basis[i])
            self.pivot(leave, entering)
        raise RuntimeError("simplex iteration limit reached")

    def drop_row(self, row):
        self.T = np.delete(self.T, row, axis=0)
        del self.basis[row]


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Solve ``lp`` with the two-phase simplex method.

    Phase one minimises the sum of artificial variables to find a basic
    feasible point; a positive optimum beyond ``FEAS_TOL`` means the program
    is infeasible. Phase two then optimises the real objective from that
    basis, reporting ``Unbounded`` if an improving column has no positive
    entry.
    """
    c, A_eq, b_eq, A_ub, b_ub = lp.arrays()
    v = c.size
    n_ub, n_eq = len(b_ub), len(b_eq)
    n_rows = n_ub + n_eq

    # standard form: [x | slacks | artificials]
    n_std = v + n_ub
    A = np.zeros((n_rows, n_std))
    b = np.zeros(n_rows)
    A[:n_ub, :v] = A_ub
    A[:n_ub, v:] = np.eye(n_ub)
    b[:n_ub] = b_ub
    A[n_ub:, :v] = A_eq
    b[n_ub:] = b_eq
    neg = b < 0
    A[neg] *= -1
    b[neg] *= -1

    basis = []
    art_rows = []
    for i in range(n_rows):
        if i < n_ub and not neg[i]:
            basis.append(v + i)
        else:
            basis.append(n_std + len(art_rows))
            art_rows.append(i)
    n_art = len(art_rows)
    A_full = np.zeros((n_rows, n_std + n_art))
    A_full[:, :n_std] = A
    for a, i in enumerate(art_rows):
        A_full[i, n_std + a] = 1.0

    tab = _Tableau(A_full, b, basis)
    max_iter = 50 * (n_rows + n_std + n_art + 1) ** 2
    real_cols = range(n_std)

    if n_art:
        cost1 = np.zeros(n_std + n_art)
        cost1[n_std:] = 1.0
        tab.set_cost(cost1)
        tab.run(range(n_std + n_art), max_iter)
        if tab.value > FEAS_TOL:
            return LpSolution(np.zeros(v), float("nan"), LpStatus.INFEASIBLE, tab.iterations)
        # evict artificials still basic at level zero; rows with no real pivot are redundant
        row = 0
        while row < tab.n_rows:
            if tab.basis[row] >= n_std:
                cand = np.flatnonzero(np.abs(tab.T[row, :n_std]) > PIVOT_TOL)
                if cand.size:
                    tab.pivot(row, int(cand[0]))
                else:
                    tab.drop_row(row)
                    continue
            row += 1
        tab.T = np.delete(tab.T, np.s_[n_std:n_std + n_art], axis=1)

    tab.set_cost(np.concatenate([c, np.zeros(n_ub)]))
    if not tab.run(real_cols, max_iter):
        return LpSolution(np.zeros(v), float("-inf"), LpStatus.UNBOUNDED, tab.iterations)

    x_std = np.zeros(n_std)
    for i, j in enumerate(tab.basis):
        x_std[j] = tab.T[i, -1]
    x = x_std[:v]
    x[(x < 0) & (x > -FEAS_TOL)] = 0.0
    return LpSolution(x, float(c @ x), LpStatus.OPTIMAL, tab.iterations)
