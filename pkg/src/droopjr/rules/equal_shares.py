"""Method of Equal Shares, Exact Equal Shares and sequential Phragmen.

Every candidate costs ``n/k``. Voters start with a (possibly virtual)
budget; all money is exact :class:`~fractions.Fraction`.

Internally voters are kept in *budget classes*: a mapping from a budget
value to the bitmask of voters currently holding exactly that amount.
Voters who paid for the same candidates always hold the same amount, so
the number of classes stays small even for hundreds of voters, and every
threshold computation is a handful of popcounts instead of a pass over
all supporters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core import Election, mask_of, members
from .outcome import LEXICOGRAPHIC, RuleOutcome, TieBreak

MES = "mes"
EES = "ees"
VARIANTS = (MES, EES)


def droop_budget(e: Election) -> Fraction:
    """Per-voter virtual budget ``(k+1)n / (kn+1)`` used by Droop MES/EES."""
    return Fraction((e.k + 1) * e.n, e.k * e.n + 1)


@dataclass(frozen=True)
class BudgetLedger:
    """Money flow of one equal-shares run.

    ``payments`` lists, in purchase order, each bought candidate with the
    amount every paying voter contributed.
    """

    beta: Fraction
    cost: Fraction
    budgets: tuple[Fraction, ...]
    payments: tuple[tuple[int, dict[int, Fraction]], ...]

    def spent(self, voter: int) -> Fraction:
        return sum((p.get(voter, 0) for _, p in self.payments), Fraction(0))

    def verify(self) -> None:
        """Assert the ledger is internally consistent (exact arithmetic)."""
        for c, pay in self.payments:
            assert sum(pay.values(), Fraction(0)) == self.cost, f"candidate {c} not paid in full"
            assert all(v >= 0 for v in pay.values()), f"negative payment for {c}"
        for i, b in enumerate(self.budgets):
            assert 0 <= b <= self.beta, f"voter {i} budget {b} outside [0, {self.beta}]"
            assert b + self.spent(i) == self.beta, f"voter {i} money not conserved"

    def to_lines(self):
        yield f"beta {self.beta}"
        yield f"cost {self.cost}"
        for c, pay in self.payments:
            yield f"paid {c} " + " ".join(f"{i}:{pay[i]}" for i in sorted(pay))
        yield "residual " + " ".join(str(b) for b in self.budgets)


def _split(classes, mask):
    """Counts of ``mask`` voters per budget class, skipping empty ones.

    ``classes`` is a mapping or a list of ``(value, voters)`` pairs; order
    is preserved.
    """
    pairs = classes.items() if isinstance(classes, dict) else classes
    for value, voters in pairs:
        cnt = (voters & mask).bit_count()
        if cnt:
            yield value, cnt


def _mes_threshold(ordered, mask, cost):
    """Smallest q with ``sum(min(b_i, q)) == cost`` over ``mask`` voters, or None.

    ``ordered`` lists the budget classes by ascending value.
    """
    groups = list(_split(ordered, mask))
    left = sum(cnt for _, cnt in groups)
    remaining = cost
    for value, cnt in groups:
        q = remaining / left
        if q <= value:
            return q
        remaining -= value * cnt
        left -= cnt
    return None


def _ees_threshold(ordered, mask, cost):
    """``cost/|S|`` for the largest payer set S whose members can each afford it."""
    best = 0
    size = 0
    for value, cnt in reversed(list(_split(ordered, mask))):
        size += cnt
        if value * size >= cost:
            best = size
    return cost / best if best else None


def _charge(classes, mask, q, variant, payments):
    """Deduct the purchase from the classes; record per-voter payments."""
    out: dict[Fraction, int] = {}
    for value, voters in classes.items():
        payers = voters & mask
        rest = voters & ~mask
        if rest:
            out[value] = out.get(value, 0) | rest
        if not payers:
            continue
        if variant == MES:
            pay = min(value, q)
        else:
            pay = q if value >= q else Fraction(0)
        if pay:
            for i in members(payers):
                payments[i] = pay
        out[value - pay] = out.get(value - pay, 0) | payers
    return out


def _per_voter(classes, n):
    vals = [None] * n
    for value, voters in classes.items():
        for i in members(voters):
            vals[i] = value
    return tuple(vals)


def mes(
    e: Election,
    budget=1,
    variant: str = MES,
    tie: TieBreak = LEXICOGRAPHIC,
) -> RuleOutcome:
    """Method of Equal Shares (``variant="mes"``) or Exact Equal Shares (``"ees"``).

    Parameters
    ----------
    e : Election
    budget : Fraction-like
        Initial per-voter budget; ``1`` is the standard rule, and
        :func:`droop_budget` gives the Droop variant.
    variant : {"mes", "ees"}
        MES lets poorer supporters pay their whole remaining budget; EES
        only lets a candidate be bought by supporters who all pay exactly
        the same share.
    tie : TieBreak
        Breaks ties between candidates with equal affordability threshold.

    Returns
    -------
    RuleOutcome
        The committee may have fewer than ``k`` members. The trace holds
        the purchase order with thresholds, the stop reason and a
        :class:`BudgetLedger` under ``"ledger"``.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    beta = Fraction(budget)
    if beta <= 0:
        raise ValueError("budget must be positive")
    cost = Fraction(e.n, e.k)
    threshold = _mes_threshold if variant == MES else _ees_threshold
    session = tie.session()
    classes = {beta: (1 << e.n) - 1}
    chosen: list[int] = []
    order = []
    payments = []
    stopped = "full"
    # a threshold only changes when one of the candidate's supporters pays;
    # cost/|N_c| is a lower bound, so scanning by supporter count lets us
    # skip candidates that cannot beat the best threshold found so far
    cache: dict[int, Fraction | None] = {}
    scan = sorted((c for c in e.candidates if e.supporter_masks[c]), key=lambda c: -e.approval_count(c))
    while len(chosen) < e.k:
        best, tied = None, []
        ordered = None
        for c in scan:
            if c in chosen:
                continue
            if best is not None and cost / e.approval_count(c) > best:
                break
            if c not in cache:
                if ordered is None:
                    ordered = sorted(classes.items())
                cache[c] = threshold(ordered, e.supporter_masks[c], cost)
            q = cache[c]
            if q is None:
                continue
            if best is None or q < best:
                best, tied = q, [c]
            elif q == best:
                tied.append(c)
        if best is None:
            stopped = "unaffordable"
            break
        c = session.pick("candidate", tied)
        pay: dict[int, Fraction] = {}
        classes = _charge(classes, e.supporter_masks[c], best, variant, pay)
        paid = mask_of(pay)
        for d in list(cache):
            if e.supporter_masks[d] & paid:
                del cache[d]
        chosen.append(c)
        order.append((c, best))
        payments.append((c, pay))
    ledger = BudgetLedger(beta, cost, _per_voter(classes, e.n), tuple(payments))
    return RuleOutcome(
        variant,
        tuple(chosen),
        {"budget": beta, "order": order, "stopped": stopped, "ledger": ledger},
    )


def seq_phragmen(
    e: Election,
    start_budgets=None,
    slots: int | None = None,
    tie: TieBreak = LEXICOGRAPHIC,
    chosen=(),
) -> RuleOutcome:
    """Sequential Phragmen in its continuous-money form.

    Every voter earns money at unit rate on top of ``start_budgets``
    (default all zero). A candidate is bought the moment its supporters
    jointly hold its cost ``n/k``; they pay it and their balances drop to
    zero. If some candidate is already over-funded when the run starts
    (possible with arbitrary start budgets), it is bought immediately and
    its supporters pay equal shares capped by their balances, so every
    purchase still costs exactly ``n/k``.

    ``slots`` purchases are made (default ``k - len(chosen)``); candidates
    in ``chosen`` are never bought again. When no remaining candidate has a
    supporter, the lowest-index unselected candidates fill the slots.

    The trace records, per purchase, the money time ``t`` and the
    equivalent load ``t / (n/k)`` of the unit-cost formulation.
    """
    cost = Fraction(e.n, e.k)
    W = list(chosen)
    if slots is None:
        slots = e.k - len(W)
    if slots < 0 or len(W) + slots > e.m:
        raise ValueError(f"cannot fill {slots} slots with {e.m - len(W)} unselected candidates")
    if start_budgets is None:
        start_budgets = [Fraction(0)] * e.n
    if len(start_budgets) != e.n:
        raise ValueError("need one start budget per voter")
    session = tie.session()
    # offset = balance - time, grouped like budget classes
    offsets: dict[Fraction, int] = {}
    for i, b in enumerate(start_budgets):
        b = Fraction(b)
        if b < 0:
            raise ValueError("start budgets must be nonnegative")
        offsets[b] = offsets.get(b, 0) | (1 << i)
    now = Fraction(0)
    purchases = []
    held: dict[int, Fraction] = {}  # per candidate, invalidated when a supporter pays
    for _ in range(slots):
        best, tied = None, []
        for c in e.candidates:
            sm = e.supporter_masks[c]
            if c in W or not sm:
                continue
            if c not in held:
                held[c] = sum((v * cnt for v, cnt in _split(offsets, sm)), Fraction(0))
            t = max((cost - held[c]) / sm.bit_count(), now)
            if best is None or t < best:
                best, tied = t, [c]
            elif t == best:
                tied.append(c)
        if best is None:
            c = session.pick("candidate", [c for c in e.candidates if c not in W])
            W.append(c)
            purchases.append((c, None, None, {}))
            continue
        c = session.pick("candidate", tied)
        now = best
        balances = {v + now: voters for v, voters in offsets.items()}
        q = _mes_threshold(sorted(balances.items()), e.supporter_masks[c], cost)
        pay: dict[int, Fraction] = {}
        balances = _charge(balances, e.supporter_masks[c], q, MES, pay)
        offsets = {}
        for b, voters in balances.items():
            offsets[b - now] = offsets.get(b - now, 0) | voters
        paid = mask_of(pay)
        for d in list(held):
            if e.supporter_masks[d] & paid:
                del held[d]
        W.append(c)
        purchases.append((c, now, now / cost, pay))
    final = tuple(b + now for b in _per_voter(offsets, e.n))
    return RuleOutcome(
        "seq-phragmen",
        tuple(W),
        {
            "start": set(chosen),
            "purchases": [(c, t, load) for c, t, load, _ in purchases],
            "payments": [
                (c, " ".join(f"{i}:{p[i]}" for i in sorted(p))) for c, _, _, p in purchases
            ],
            "time": now,
            "balances": final,
        },
    )


def mes_completed(
    e: Election,
    budget=1,
    variant: str = MES,
    tie: TieBreak = LEXICOGRAPHIC,
) -> RuleOutcome:
    """MES/EES, then sequential Phragmen from the leftover budgets up to ``k`` seats."""
    first = mes(e, budget, variant, tie)
    trace = {"mes_order": first.trace["order"], "ledger": first.trace["ledger"]}
    W = first.committee
    if len(W) < e.k:
        rest = seq_phragmen(
            e,
            start_budgets=first.trace["ledger"].budgets,
            slots=e.k - len(W),
            tie=tie,
            chosen=[c for c, _ in first.trace["order"]],
        )
        trace["completion"] = rest.trace["purchases"]
        trace["completion_payments"] = rest.trace["payments"]
        W = rest.committee
    else:
        trace["completion"] = []
    return RuleOutcome(f"{variant}-completed", W, trace)
