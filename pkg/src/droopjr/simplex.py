"""Exact two-phase simplex over the rationals with Bland's anti-cycling rule.

Solves ``maximize c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``
and ``x >= 0``. Every quantity is a :class:`~fractions.Fraction`, so the
feasibility verdict is exact.

Rows are stored sparsely (column -> value) because the priceability LPs
have only a handful of nonzeros per row. Slack columns start the basis
wherever possible; artificial columns are added only for equality rows
and for rows whose right-hand side had to be negated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    pivots: int = 0


class _Tableau:
    """Constraint rows plus one objective row, all ``dict[col, Fraction]``.

    The objective row holds reduced costs ``c_j - c_B B^-1 A_j``; its
    ``rhs`` entry is minus the current objective value.
    """

    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.obj: dict[int, Fraction] = {}
        self.obj_rhs = Fraction(0)
        self.pivots = 0

    def set_objective(self, cost: dict[int, Fraction]):
        obj = dict(cost)
        val = Fraction(0)
        for r, b in enumerate(self.basis):
            cb = cost.get(b)
            if cb:
                for j, v in self.rows[r].items():
                    obj[j] = obj.get(j, 0) - cb * v
                val -= cb * self.rhs[r]
        self.obj = {j: v for j, v in obj.items() if v}
        self.obj_rhs = val

    @staticmethod
    def _eliminate(target, f, row):
        for j, v in row.items():
            nv = target.get(j, 0) - f * v
            if nv:
                target[j] = nv
            else:
                target.pop(j, None)

    def pivot(self, r, col):
        row = self.rows[r]
        piv = row[col]
        if piv != 1:
            inv = 1 / piv
            row = {j: v * inv for j, v in row.items()}
            self.rows[r] = row
            self.rhs[r] *= inv
        for i, other in enumerate(self.rows):
            if i != r:
                f = other.get(col)
                if f:
                    self._eliminate(other, f, row)
                    self.rhs[i] -= f * self.rhs[r]
        f = self.obj.get(col)
        if f:
            self._eliminate(self.obj, f, row)
            self.obj_rhs -= f * self.rhs[r]
        self.basis[r] = col
        self.pivots += 1

    def optimize(self, allowed) -> bool:
        """Pivot to optimality over columns ``< allowed``; False if unbounded."""
        while True:
            col = min((j for j, v in self.obj.items() if v > 0 and j < allowed), default=None)
            if col is None:
                return True
            best_r, best_ratio = None, None
            for r, row in enumerate(self.rows):
                a = row.get(col)
                if a is not None and a > 0:
                    ratio = self.rhs[r] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[r] < self.basis[best_r])
                    ):
                        best_r, best_ratio = r, ratio
            if best_r is None:
                return False
            self.pivot(best_r, col)


def solve_lp(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Maximize ``c.x`` under ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``.

    Returns
    -------
    LPResult
        ``status`` is ``"optimal"``, ``"infeasible"`` or ``"unbounded"``;
        for optimal results ``x`` and ``value`` are exact.
    """
    F = Fraction
    nvar = len(c)
    cons = [(row, F(b), True) for row, b in zip(A_ub, b_ub)]
    cons += [(row, F(b), False) for row, b in zip(A_eq, b_eq)]
    nslack = sum(1 for _, _, ub in cons if ub)
    first_art = nvar + nslack
    rows, rhs, basis = [], [], []
    slack = nvar
    art = first_art
    for coef, b, ub in cons:
        if len(coef) != nvar:
            raise ValueError("constraint row length differs from the number of variables")
        row = {j: F(v) for j, v in enumerate(coef) if v}
        s_col = None
        if ub:
            s_col = slack
            row[s_col] = F(1)
            slack += 1
        if b < 0:
            row = {j: -v for j, v in row.items()}
            b = -b
        if s_col is not None and row[s_col] == 1:
            basis.append(s_col)
        else:
            row[art] = F(1)
            basis.append(art)
            art += 1
        rows.append(row)
        rhs.append(b)
    tab = _Tableau(rows, rhs, basis)
    if art > first_art:
        # phase 1: drive the artificial sum to zero
        tab.set_objective({j: F(-1) for j in range(first_art, art)})
        tab.optimize(art)
        if tab.obj_rhs != 0:
            return LPResult(INFEASIBLE, pivots=tab.pivots)
        for r in range(len(tab.rows)):
            if tab.basis[r] >= first_art:
                col = min((j for j in tab.rows[r] if j < first_art), default=None)
                if col is not None:
                    tab.pivot(r, col)
        keep = [r for r in range(len(tab.rows)) if tab.basis[r] < first_art]
        tab.rows = [{j: v for j, v in tab.rows[r].items() if j < first_art} for r in keep]
        tab.rhs = [tab.rhs[r] for r in keep]
        tab.basis = [tab.basis[r] for r in keep]
    tab.set_objective({j: F(v) for j, v in enumerate(c) if v})
    if not tab.optimize(first_art):
        return LPResult(UNBOUNDED, pivots=tab.pivots)
    x = [F(0)] * first_art
    for r, b in enumerate(tab.basis):
        x[b] = tab.rhs[r]
    return LPResult(OPTIMAL, tuple(x[:nvar]), -tab.obj_rhs, tab.pivots)
