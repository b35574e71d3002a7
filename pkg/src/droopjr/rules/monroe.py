"""Monroe and Greedy Monroe, in Hare and Droop flavours.

A Hare valid assignment gives every committee member between
``floor(n/k)`` and ``ceil(n/k)`` voters. A Droop valid assignment parks
exactly ``floor(n/(k+1))`` voters on a dummy candidate and gives every
member between ``floor(n/(k+1))`` and ``ceil(n/(k+1))`` voters.
"""

from __future__ import annotations

import itertools

import networkx as nx

from ..core import HARE, Election, Quota
from .outcome import LEXICOGRAPHIC, RuleOutcome, TieBreak
from .pav import check_enumerable

DUMMY = None


def seat_shape(q: Quota, n: int, k: int) -> tuple[int, int, int]:
    """``(base, extra, dummy)``: each member gets ``base`` voters, ``extra`` members get one more."""
    if q is HARE:
        base = n // k
        return base, n - k * base, 0
    base = n // (k + 1)
    return base, n - (k + 1) * base, base


def monroe_score(e: Election, W, q: Quota = HARE) -> tuple[int, tuple]:
    """Best Monroe score of committee ``W`` and one assignment achieving it.

    The score equals a maximum flow: voters send one unit to an approved
    member, each member passes ``base`` units straight to the sink and at
    most one more through a shared hub of capacity ``extra``. Any such
    partial assignment extends to a valid one by spreading the remaining
    voters over the free seats, so no costs are needed.

    Returns
    -------
    score : int
    assignment : tuple
        ``assignment[i]`` is voter ``i``'s member, or ``None`` for the
        Droop dummy.
    """
    W = sorted(W)
    if len(W) != e.k:
        raise ValueError(f"Monroe committees must have exactly k={e.k} members")
    base, extra, dummy = seat_shape(q, e.n, e.k)
    G = nx.DiGraph()
    wset = set(W)
    for i, ballot in enumerate(e.ballots):
        liked = ballot & wset
        if liked:
            G.add_edge("s", ("v", i), capacity=1)
            for c in liked:
                G.add_edge(("v", i), ("c", c), capacity=1)
    for c in W:
        if base:
            G.add_edge(("c", c), "t", capacity=base)
        if extra:
            G.add_edge(("c", c), "hub", capacity=1)
    if extra:
        G.add_edge("hub", "t", capacity=extra)
    assignment: list = [DUMMY] * e.n
    load = {c: 0 for c in W}
    bonus = set()
    score = 0
    if "s" in G and "t" in G:
        score, flow = nx.maximum_flow(G, "s", "t")
        for i in range(e.n):
            for node, f in flow.get(("v", i), {}).items():
                if f:
                    assignment[i] = node[1]
                    load[node[1]] += 1
        bonus = {c for c in W if flow.get(("c", c), {}).get("hub", 0)}
    # complete to a valid assignment
    for c in W:
        if len(bonus) >= extra:
            break
        if c not in bonus and load[c] <= base:
            bonus.add(c)
    seats = {c: base + (c in bonus) - load[c] for c in W}
    free = iter([i for i in range(e.n) if assignment[i] is DUMMY])
    for c in W:
        for _ in range(seats[c]):
            assignment[next(free)] = c
    # whatever is left (exactly ``dummy`` voters) sits on the dummy
    return int(score), tuple(assignment)


def is_valid_assignment(e: Election, W, q: Quota, assignment) -> bool:
    base, extra, dummy = seat_shape(q, e.n, e.k)
    hi = base + (1 if extra else 0)
    counts = {c: 0 for c in W}
    parked = 0
    for a in assignment:
        if a is DUMMY:
            parked += 1
        elif a in counts:
            counts[a] += 1
        else:
            return False
    return parked == dummy and all(base <= v <= hi for v in counts.values())


def monroe(e: Election, q: Quota = HARE, tie: TieBreak = LEXICOGRAPHIC) -> RuleOutcome:
    """Exhaustive Monroe rule; ties go to the lexicographically first committee."""
    check_enumerable(e.m, e.k)
    best, optima = None, []
    for W in itertools.combinations(e.candidates, e.k):
        s, pi = monroe_score(e, W, q)
        if best is None or s > best:
            best, optima = s, [(W, pi)]
        elif s == best:
            optima.append((W, pi))
    session = tie.session()
    idx = session.pick("committee", range(len(optima))) if len(optima) > 1 else 0
    W, pi = optima[idx]
    return RuleOutcome(f"{q}-monroe", W, {"score": best, "assignment": list(pi)})


def greedy_monroe(e: Election, q: Quota = HARE, tie: TieBreak = LEXICOGRAPHIC) -> RuleOutcome:
    """Greedy Monroe: k rounds, each seating the most-approved candidate among active voters."""
    session = tie.session()
    base, extra, _ = seat_shape(q, e.n, e.k)
    active = set(e.voters)
    W: list[int] = []
    rounds = []
    assignment: list = [DUMMY] * e.n
    for t in range(1, e.k + 1):
        size = base + 1 if t <= extra else base
        counts = {c: len(e.supporters[c] & active) for c in e.candidates if c not in W}
        top = max(counts.values())
        c = session.pick("candidate", [d for d, v in counts.items() if v == top])
        approvers = sorted(e.supporters[c] & active)
        if len(approvers) > size:
            approvers = list(session.choose("approvers", approvers, size))
        others = sorted(active - e.supporters[c])
        fillers = list(session.choose("filler", others, size - len(approvers)))
        for i in approvers + fillers:
            assignment[i] = c
        active -= set(approvers) | set(fillers)
        W.append(c)
        rounds.append((t, c, set(approvers), set(fillers)))
    score = sum(1 for i, a in enumerate(assignment) if a is not DUMMY and a in e.ballots[i])
    return RuleOutcome(
        f"{q}-greedy-monroe",
        tuple(W),
        {"order": W, "rounds": rounds, "assignment": list(assignment), "score": score},
    )
