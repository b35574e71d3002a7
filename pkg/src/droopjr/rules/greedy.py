"""Greedy Justified Candidate Rule and Greedy Cohesive Rule (Hare and Droop)."""

from __future__ import annotations

import itertools
from fractions import Fraction

from ..core import (
    DROOP,
    HARE,
    Election,
    InstanceTooLarge,
    Quota,
    mask_of,
    members,
    min_group_size,
    threshold_met,
)
from .outcome import LEXICOGRAPHIC, RuleOutcome, TieBreak

MAX_GCR_CANDIDATES = 24


def _fill(e: Election, W: list[int], session) -> list[int]:
    rest = [c for c in e.candidates if c not in W]
    return list(session.choose("filler", rest, e.k - len(W)))


def gjcr(e: Election, q: Quota = HARE, tie: TieBreak = LEXICOGRAPHIC) -> RuleOutcome:
    """Greedy Justified Candidate Rule.

    For ``l = k, k-1, ..., 1`` keep adding a candidate ``c`` whose
    supporters with fewer than ``l`` committee members form a group that
    clears the quota for ``l`` seats. Leftover seats go to the
    lowest-index unselected candidates.

    The Droop variant also runs the unit-cost pricing scheme that bounds
    the committee size: each voter has ``(k+1)/n - 1/n**2``, and the group
    that triggers a selection splits a cost of 1 equally. Overdrawing any
    voter raises ``AssertionError``. The per-voter spend is in the trace.
    """
    session = tie.session()
    n, k = e.n, e.k
    W: list[int] = []
    reps = [0] * n
    steps = []
    cap = Fraction(k + 1, n) - Fraction(1, n * n)
    spend = [Fraction(0)] * n
    ell = k
    while ell >= 1:
        eligible = {}
        for c in e.candidates:
            if c in W:
                continue
            S = [i for i in sorted(e.supporters[c]) if reps[i] < ell]
            if threshold_met(q, len(S), ell, n, k):
                eligible[c] = S
        if not eligible:
            ell -= 1
            continue
        c = session.pick("candidate", eligible)
        S = eligible[c]
        W.append(c)
        for i in e.supporters[c]:
            reps[i] += 1
        if q is DROOP:
            share = Fraction(1, len(S))
            for i in S:
                spend[i] += share
                assert spend[i] <= cap, f"voter {i} overspent: {spend[i]} > {cap}"
        steps.append((ell, c, set(S)))
    assert len(W) <= k, f"main loop selected {len(W)} > k={k}"
    filler = _fill(e, W, session)
    trace = {"steps": steps, "filler": filler}
    if q is DROOP:
        trace["budget"] = cap
        trace["spend"] = list(spend)
    return RuleOutcome(f"{q}-gjcr", tuple(W + filler), trace)


def best_cohesive_triple(e: Election, q: Quota, W, active: int):
    """Largest ``l``, then smallest ``|T|``, then lexicographically first ``T``.

    ``active`` is a voter bitmask. Returns ``(l, T, S)`` with ``S`` the
    maximal set of active voters approving at least ``l`` members of ``T``,
    or ``None`` when no active group is weakly cohesive.
    """
    n, k = e.n, e.k
    voters = [i for i in members(active)]
    pool = [c for c in e.candidates if c not in W and any(i in e.supporters[c] for i in voters)]
    pmask = mask_of(pool)
    for ell in range(k, 0, -1):
        able = sum(1 for i in voters if (e.masks[i] & pmask).bit_count() >= ell)
        for size in range(ell, min(k, len(pool)) + 1):
            if min_group_size(q, size, n, k) > able:
                break
            for T in itertools.combinations(pool, size):
                tm = mask_of(T)
                S = [i for i in voters if (e.masks[i] & tm).bit_count() >= ell]
                if threshold_met(q, len(S), size, n, k):
                    return ell, frozenset(T), frozenset(S)
    return None


def gcr(e: Election, q: Quota = HARE, tie: TieBreak = LEXICOGRAPHIC) -> RuleOutcome:
    """Greedy Cohesive Rule.

    Repeatedly finds the active weakly ``(l, T)``-cohesive group with the
    largest ``l`` (then smallest ``|T|``), adds ``T`` and deactivates the
    group. Leftover seats go to the lowest-index unselected candidates.

    Raises
    ------
    InstanceTooLarge
        If ``m`` exceeds ``MAX_GCR_CANDIDATES``.
    """
    if e.m > MAX_GCR_CANDIDATES:
        raise InstanceTooLarge(f"GCR search over 2^{e.m} candidate sets exceeds the guard")
    session = tie.session()
    W: list[int] = []
    active = (1 << e.n) - 1
    steps = []
    while True:
        found = best_cohesive_triple(e, q, W, active)
        if found is None:
            break
        ell, T, S = found
        W.extend(sorted(T))
        active &= ~mask_of(S)
        steps.append((ell, set(T), set(S)))
    total = sum(len(T) for _, T, _ in steps)
    assert total <= e.k, f"GCR added {total} > k={e.k} candidates"
    filler = _fill(e, W, session)
    return RuleOutcome(f"{q}-gcr", tuple(W + filler), {"steps": steps, "filler": filler})
