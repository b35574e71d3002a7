"""Priceability of a committee, decided as one exact linear program.

Variables are the price ``p`` and one payment ``x[i, c]`` per voter ``i``
and committee member ``c`` in ``A_i``. The constraints are

* each voter spends at most 1:      ``sum_c x[i, c] <= 1``
* each member costs exactly p:      ``sum_i x[i, c] == p``      (c in W)
* no outsider is still affordable:  ``sum_{i in N_c} (1 - spent_i) <= p`` (c not in W)

Payments for non-approved or non-elected candidates are fixed at zero by
construction. The LP maximizes ``p``; the committee is priceable iff the
LP is feasible with a positive optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .core import Election
from .simplex import OPTIMAL, solve_lp


@dataclass(frozen=True)
class PriceSystem:
    """A price ``p`` and, per voter, a mapping candidate -> payment (zero entries omitted)."""

    p: Fraction
    payments: tuple[Mapping[int, Fraction], ...]

    def paid(self, i: int, c: int) -> Fraction:
        return Fraction(self.payments[i].get(c, 0))

    def spent(self, i: int) -> Fraction:
        return sum((Fraction(v) for v in self.payments[i].values()), Fraction(0))

    def matrix(self, m: int) -> list[list[Fraction]]:
        return [[self.paid(i, c) for c in range(m)] for i in range(len(self.payments))]

    def to_lines(self, m: int):
        yield f"PRICEABLE p={self.p}"
        for i in range(len(self.payments)):
            yield " ".join(str(v) for v in (self.paid(i, c) for c in range(m)))


def price_lp(e: Election, W):
    """The LP as ``(c, A_ub, b_ub, A_eq, b_eq, variables)``; variable 0 is ``p``."""
    W = sorted(set(W))
    wset = set(W)
    variables = [None] + [(i, c) for i in e.voters for c in W if c in e.ballots[i]]
    index = {v: j for j, v in enumerate(variables) if v is not None}
    nv = len(variables)
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for i in e.voters:
        row = [0] * nv
        for c in W:
            if (i, c) in index:
                row[index[i, c]] = 1
        if any(row):
            A_ub.append(row)
            b_ub.append(1)
    for c in W:
        row = [0] * nv
        row[0] = -1
        for i in e.supporters[c]:
            row[index[i, c]] = 1
        A_eq.append(row)
        b_eq.append(0)
    for c in e.candidates:
        if c in wset or not e.supporters[c]:
            continue
        row = [0] * nv
        row[0] = -1
        for i in e.supporters[c]:
            for d in W:
                if (i, d) in index:
                    row[index[i, d]] = -1
        A_ub.append(row)
        b_ub.append(-len(e.supporters[c]))
    cost = [1] + [0] * (nv - 1)
    return cost, A_ub, b_ub, A_eq, b_eq, variables


def find_price_system(e: Election, W) -> PriceSystem | None:
    """A price system supporting ``W`` (with the largest possible price), or ``None``.

    Raises
    ------
    ValueError
        If ``W`` is empty.
    """
    W = frozenset(W)
    if not W:
        raise ValueError("priceability is only defined for nonempty committees")
    cost, A_ub, b_ub, A_eq, b_eq, variables = price_lp(e, W)
    res = solve_lp(cost, A_ub, b_ub, A_eq, b_eq)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    payments = [dict() for _ in e.voters]
    for (i, c), v in zip(variables[1:], res.x[1:]):
        if v:
            payments[i][c] = v
    return PriceSystem(res.x[0], tuple(payments))


def is_priceable(e: Election, W) -> bool:
    return find_price_system(e, W) is not None


def verify_price_system(e: Election, W, ps: PriceSystem) -> bool:
    """Check every clause of the price-system definition directly."""
    W = frozenset(W)
    p = Fraction(ps.p)
    if p <= 0 or len(ps.payments) != e.n:
        return False
    for i, pay in enumerate(ps.payments):
        for c, v in pay.items():
            v = Fraction(v)
            if v < 0:
                return False
            if v and (c not in e.ballots[i] or c not in W):
                return False
        if ps.spent(i) > 1:
            return False
    for c in W:
        if sum((ps.paid(i, c) for i in e.voters), Fraction(0)) != p:
            return False
    for c in e.candidates:
        if c in W:
            continue
        left = sum((1 - ps.spent(i) for i in e.supporters[c]), Fraction(0))
        if left > p:
            return False
    return True
