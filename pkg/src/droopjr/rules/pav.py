"""Approval Voting, Proportional Approval Voting and bounded local-search PAV."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from ..core import Election, InstanceTooLarge, mask_of
from .outcome import LEXICOGRAPHIC, RuleOutcome, TieBreak

MAX_COMMITTEES = 10**7


@lru_cache(maxsize=None)
def harmonic(j: int) -> Fraction:
    """``1 + 1/2 + ... + 1/j`` (0 for ``j = 0``)."""
    if j == 0:
        return Fraction(0)
    return harmonic(j - 1) + Fraction(1, j)


def check_enumerable(m: int, k: int, limit: int = MAX_COMMITTEES) -> None:
    count = math.comb(m, k)
    if count > limit:
        raise InstanceTooLarge(f"C({m},{k}) = {count} committees exceeds the guard {limit}")


def av(e: Election, tie: TieBreak = LEXICOGRAPHIC) -> RuleOutcome:
    """The ``k`` candidates with the most approvals.

    Ties at the cut-off are resolved by ``tie`` (kind ``"candidate"``).
    """
    session = tie.session()
    counts = [e.approval_count(c) for c in e.candidates]
    ranked = sorted(e.candidates, key=lambda c: -counts[c])
    cutoff = counts[ranked[e.k - 1]]
    sure = [c for c in ranked if counts[c] > cutoff]
    tied = [c for c in ranked if counts[c] == cutoff]
    chosen = sure + list(session.choose("candidate", tied, e.k - len(sure)))
    return RuleOutcome("av", tuple(chosen), {"approvals": {c: counts[c] for c in sorted(chosen)}})


def pav_score(e: Election, W) -> Fraction:
    wmask = mask_of(W)
    return sum((harmonic((a & wmask).bit_count()) for a in e.masks), Fraction(0))


def pav_exact(e: Election, tie: TieBreak = LEXICOGRAPHIC, record_all: bool = False) -> RuleOutcome:
    """Exhaustive PAV; the lexicographically first optimum unless ``tie`` says otherwise.

    Raises
    ------
    InstanceTooLarge
        If there are more than ``MAX_COMMITTEES`` size-``k`` committees.
    """
    check_enumerable(e.m, e.k)
    best = None
    optima = []
    for W in itertools.combinations(e.candidates, e.k):
        s = pav_score(e, W)
        if best is None or s > best:
            best, optima = s, [W]
        elif s == best:
            optima.append(W)
    session = tie.session()
    idx = session.pick("committee", range(len(optima))) if len(optima) > 1 else 0
    trace = {"score": best}
    if record_all:
        trace["co_optimal"] = [set(W) for W in optima]
    return RuleOutcome("pav", optima[idx], trace)


def swap_delta(e: Election, W: frozenset[int], w: int, c: int) -> Fraction:
    """``pav_score(W - w + c) - pav_score(W)`` computed from marginal terms."""
    wmask = mask_of(W)
    wbit, cbit = 1 << w, 1 << c
    delta = Fraction(0)
    for a in e.masks:
        has_w, has_c = bool(a & wbit), bool(a & cbit)
        if has_w == has_c:
            continue
        r = (a & wmask).bit_count()
        if has_c:
            delta += Fraction(1, r + 1)
        else:
            delta -= Fraction(1, r)
    return delta


def ls_pav(
    e: Election,
    epsilon: Fraction | None = None,
    initial=None,
    tie: TieBreak = LEXICOGRAPHIC,
) -> RuleOutcome:
    """epsilon-bounded local search for PAV.

    Starting from ``initial`` (the AV committee by default), repeatedly apply
    the first swap ``(w, c)`` in ``(w ascending, c ascending)`` order that
    raises the PAV score by at least ``epsilon``. With the default
    ``epsilon = 1/k**2`` the result provides Droop-EJR+.
    """
    eps = Fraction(1, e.k**2) if epsilon is None else Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    start = frozenset(av(e).committee if initial is None else initial)
    W = start
    if len(W) != e.k:
        raise ValueError(f"initial committee must have k={e.k} members")
    swaps = []
    improved = True
    while improved:
        improved = False
        for w in sorted(W):
            for c in e.candidates:
                if c in W:
                    continue
                d = swap_delta(e, W, w, c)
                if d >= eps:
                    W = (W - {w}) | {c}
                    swaps.append((w, c, d))
                    improved = True
                    break
            if improved:
                break
    return RuleOutcome(
        "ls-pav",
        tuple(W),
        {"epsilon": eps, "initial": set(start), "swaps": swaps, "score": pav_score(e, W)},
    )
