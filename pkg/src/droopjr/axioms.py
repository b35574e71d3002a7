"""Witness-producing checkers for the JR family of proportionality axioms.

Every axiom comes in a Hare and a Droop version, which differ only in the
group-size test (see :func:`droopjr.core.threshold_met`). A checker either
returns ``None`` (the committee provides the axiom) or a
:class:`ViolationWitness` that :func:`replay` can re-verify against the raw
definition.

Search strategy
---------------
For any ``(l, T)`` the voters that could form a violating group are
contained in one maximal group, so it suffices to test that group:

* "E" axioms (EJR, EJR+, FJR) fail iff the maximal cohesive group of
  voters with fewer than ``l`` committee members clears the quota.
* "P" axioms (JR, PJR, PJR+, FPJR) fail iff for some ``U`` in ``W`` with
  ``|U| = min(l-1, |W|)`` the voters whose committee members all lie in
  ``U`` contain a large enough cohesive group.

JR and EJR+ only ever need single candidates ``c`` and are polynomial.
The other checkers enumerate candidate sets and are guarded by
``MAX_CHECK_CANDIDATES`` and ``MAX_CHECK_K``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .core import (
    DROOP,
    HARE,
    QUOTAS,
    Election,
    InstanceTooLarge,
    Quota,
    mask_of,
    members,
    min_group_size,
    threshold_met,
)

MAX_CHECK_CANDIDATES = 24
MAX_CHECK_K = 8


class AxiomId(enum.Enum):
    JR = "JR"
    PJR = "PJR"
    EJR = "EJR"
    PJRplus = "PJR+"
    EJRplus = "EJR+"
    FPJR = "FPJR"
    FJR = "FJR"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> "AxiomId":
        key = text.strip().upper().replace("PLUS", "+")
        for a in cls:
            if a.value.upper() == key:
                return a
        raise ValueError(f"unknown axiom {text!r}")

    @property
    def weak(self) -> bool:
        """Uses weakly ``(l, T)``-cohesive groups (size scaled by ``|T|``)."""
        return self in (AxiomId.FPJR, AxiomId.FJR)

    @property
    def plus(self) -> bool:
        return self in (AxiomId.PJRplus, AxiomId.EJRplus)

    @property
    def individual(self) -> bool:
        """Demands one voter with ``l`` representatives rather than ``l`` in the union."""
        return self in (AxiomId.EJR, AxiomId.EJRplus, AxiomId.FJR)


AXIOMS = tuple(AxiomId)

# direct implications; check_all closes them transitively
IMPLIES = {
    AxiomId.FJR: (AxiomId.EJR, AxiomId.FPJR),
    AxiomId.EJRplus: (AxiomId.EJR, AxiomId.PJRplus),
    AxiomId.PJRplus: (AxiomId.PJR,),
    AxiomId.EJR: (AxiomId.PJR, AxiomId.JR),
    AxiomId.FPJR: (AxiomId.PJR,),
    AxiomId.PJR: (AxiomId.JR,),
    AxiomId.JR: (),
}


def implied_by(axiom: AxiomId) -> frozenset[AxiomId]:
    """All axioms that ``axiom`` implies, excluding itself."""
    seen: set[AxiomId] = set()
    stack = list(IMPLIES[axiom])
    while stack:
        a = stack.pop()
        if a not in seen:
            seen.add(a)
            stack.extend(IMPLIES[a])
    return frozenset(seen)


@dataclass(frozen=True)
class ViolationWitness:
    """A group ``S`` that is entitled to ``l`` seats under ``quota`` but is under-represented.

    ``T`` is the cohesion target: the ``l`` jointly approved candidates for
    JR/PJR/EJR, the single unelected candidate ``{c}`` for PJR+/EJR+, or
    the (weak) target set for FPJR/FJR.
    """

    axiom: AxiomId
    quota: Quota
    ell: int
    T: frozenset[int]
    S: frozenset[int]
    note: str

    def serialize(self) -> str:
        T = ",".join(str(c) for c in sorted(self.T))
        S = ",".join(str(i) for i in sorted(self.S))
        return f"axiom={self.axiom} quota={self.quota} ell={self.ell} T={{{T}}} S={{{S}}} note={self.note}"


def _note(axiom: AxiomId, ell: int) -> str:
    if axiom.individual:
        return f"every voter in S approves fewer than {ell} committee members"
    return f"S collectively approves fewer than {ell} committee members"


def replay(e: Election, W, w: ViolationWitness) -> bool:
    """Re-derive the violation straight from the axiom definition."""
    W = frozenset(W)
    S, T, ell = w.S, w.T, w.ell
    if not S or not T or not 1 <= ell <= e.k:
        return False
    if w.axiom is AxiomId.JR and ell != 1:
        return False
    if any(i not in e.voters for i in S) or any(c not in e.candidates for c in T):
        return False
    if w.axiom.weak:
        if not threshold_met(w.quota, len(S), len(T), e.n, e.k):
            return False
        if any(len(e.ballots[i] & T) < ell for i in S):
            return False
    else:
        if not threshold_met(w.quota, len(S), ell, e.n, e.k):
            return False
        if w.axiom.plus:
            if len(T) != 1 or T & W:
                return False
        elif len(T) != ell:
            return False
        if any(not T <= e.ballots[i] for i in S):
            return False
    if w.axiom.individual:
        return all(len(e.ballots[i] & W) < ell for i in S)
    union = frozenset().union(*(e.ballots[i] for i in S))
    return len(union & W) < ell


class _Ctx:
    """Per-(election, committee) masks shared by the searches."""

    def __init__(self, e: Election, W):
        self.e = e
        self.W = sorted(W)
        self.wmask = mask_of(self.W)
        reps = [(a & self.wmask).bit_count() for a in e.masks]
        # below[l] = voters with fewer than l committee members
        self.below = [0] * (e.k + 2)
        for ell in range(1, e.k + 2):
            self.below[ell] = mask_of(i for i, r in enumerate(reps) if r < ell)

    def unions(self, ell):
        """``(U, mask of voters whose committee members all lie in U)`` for each maximal U."""
        size = min(ell - 1, len(self.W))
        for U in itertools.combinations(self.W, size):
            allowed = mask_of(U)
            out = 0
            for w in self.W:
                if not allowed >> w & 1:
                    out |= self.e.supporter_masks[w]
            yield U, ((1 << self.e.n) - 1) & ~out


def _guard(e: Election, axiom: AxiomId) -> None:
    if axiom in (AxiomId.JR, AxiomId.EJRplus):
        return
    if axiom is not AxiomId.PJRplus and e.m > MAX_CHECK_CANDIDATES:
        raise InstanceTooLarge(f"{axiom} check over m={e.m} > {MAX_CHECK_CANDIDATES} candidates")
    if e.k > MAX_CHECK_K:
        raise InstanceTooLarge(f"{axiom} check with k={e.k} > {MAX_CHECK_K}")


def _best(found, ell, axiom, q):
    """Among violations for one ``l``: first ``T`` by (size, lex), then the largest ``S``."""
    if not found:
        return None
    T, S = min(found, key=lambda ts: (len(ts[0]), ts[0], -ts[1].bit_count()))
    return ViolationWitness(axiom, q, ell, frozenset(T), frozenset(members(S)), _note(axiom, ell))


def _single_candidate(ctx: _Ctx, q: Quota, axiom: AxiomId, ell: int):
    """JR / PJR+ / EJR+ for one ``l``: groups sharing an unelected candidate."""
    e = ctx.e
    found = []
    for c in e.candidates:
        if ctx.wmask >> c & 1 or not e.supporter_masks[c]:
            continue
        sm = e.supporter_masks[c]
        if axiom.individual:
            groups = [sm & ctx.below[ell]]
        else:
            groups = [sm & allowed for _, allowed in ctx.unions(ell)]
        best = max(groups, key=lambda s: s.bit_count())
        if threshold_met(q, best.bit_count(), ell, e.n, e.k):
            found.append(((c,), best))
            break  # candidates are scanned in lex order
    return _best(found, ell, axiom, q)


def _strict_sets(e: Election, ell: int, voters: int, need: int):
    """Size-``l`` candidate sets jointly approved by at least ``need`` of ``voters``.

    Yields ``(T, mask)`` in lexicographic order of ``T``.
    """
    pool = [c for c in e.candidates if (e.supporter_masks[c] & voters).bit_count() >= need]

    def rec(start, chosen, mask):
        if len(chosen) == ell:
            yield tuple(chosen), mask
            return
        for j in range(start, len(pool) - (ell - len(chosen)) + 1):
            c = pool[j]
            nm = mask & e.supporter_masks[c]
            if nm.bit_count() >= need:
                chosen.append(c)
                yield from rec(j + 1, chosen, nm)
                chosen.pop()

    yield from rec(0, [], voters)


def _strict(ctx: _Ctx, q: Quota, axiom: AxiomId, ell: int):
    """PJR / EJR for one ``l``."""
    e = ctx.e
    need = min_group_size(q, ell, e.n, e.k)
    if axiom.individual:
        for T, S in _strict_sets(e, ell, ctx.below[ell], need):
            return _best([(T, S)], ell, axiom, q)
        return None
    everyone = (1 << e.n) - 1
    for T, M in _strict_sets(e, ell, everyone, need):
        best = max((M & allowed for _, allowed in ctx.unions(ell)), key=lambda s: s.bit_count())
        if best.bit_count() >= need:
            return _best([(T, best)], ell, axiom, q)
    return None


def _weak_group(e: Election, T, ell: int, voters: int) -> int:
    tm = mask_of(T)
    return mask_of(i for i in members(voters) if (e.masks[i] & tm).bit_count() >= ell)


def _weak_for(e: Election, q: Quota, ell: int, voters: int):
    """First ``(T, S)`` by (size, lex) with ``S`` the weakly ``(l, T)``-cohesive part of ``voters`` clearing ``|T|``."""
    vs = members(voters)
    pool = [c for c in e.candidates if e.supporter_masks[c] & voters]
    pmask = mask_of(pool)
    able = sum(1 for i in vs if (e.masks[i] & pmask).bit_count() >= ell)
    for size in range(ell, min(e.k, len(pool)) + 1):
        if min_group_size(q, size, e.n, e.k) > able:
            break
        for T in itertools.combinations(pool, size):
            S = _weak_group(e, T, ell, voters)
            if threshold_met(q, S.bit_count(), size, e.n, e.k):
                return T, S
    return None


def _weak(ctx: _Ctx, q: Quota, axiom: AxiomId, ell: int):
    """FPJR / FJR for one ``l``."""
    e = ctx.e
    if axiom.individual:
        hit = _weak_for(e, q, ell, ctx.below[ell])
        return _best([hit] if hit else [], ell, axiom, q)
    found = []
    for _, allowed in ctx.unions(ell):
        hit = _weak_for(e, q, ell, allowed)
        if hit:
            found.append(hit)
    return _best(found, ell, axiom, q)


def check(e: Election, W, axiom: AxiomId, q: Quota) -> ViolationWitness | None:
    """Check whether committee ``W`` provides ``axiom`` under quota ``q``.

    Parameters
    ----------
    e : Election
    W : iterable of int
        The committee, at most ``k`` candidates.
    axiom : AxiomId
    q : Quota

    Returns
    -------
    ViolationWitness or None
        ``None`` if no violating group exists. Otherwise the witness with
        the largest violating ``l``; among those the first ``T`` by (size,
        lexicographic order) and the largest group ``S`` for it.

    Raises
    ------
    InstanceTooLarge
        If an enumerating checker exceeds its guard.
    """
    W = frozenset(W)
    if len(W) > e.k:
        raise ValueError(f"committee has {len(W)} > k={e.k} members")
    if any(c not in e.candidates for c in W):
        raise ValueError("committee member outside the candidate range")
    _guard(e, axiom)
    ctx = _Ctx(e, W)
    ells = (1,) if axiom is AxiomId.JR else range(e.k, 0, -1)
    for ell in ells:
        if axiom is AxiomId.JR or axiom.plus:
            w = _single_candidate(ctx, q, axiom, ell)
        elif axiom.weak:
            w = _weak(ctx, q, axiom, ell)
        else:
            w = _strict(ctx, q, axiom, ell)
        if w is not None:
            assert replay(e, W, w), f"checker produced an invalid witness {w.serialize()}"
            return w
    return None


def satisfies(e: Election, W, axiom: AxiomId, q: Quota) -> bool:
    return check(e, W, axiom, q) is None


def check_all(e: Election, W, axioms=AXIOMS, quotas=QUOTAS) -> dict:
    """Results for every ``(axiom, quota)`` pair, keyed by that pair.

    Asserts the implication lattice among the checked axioms and that
    every Droop pass comes with the matching Hare pass.
    """
    results = {(a, q): check(e, W, a, q) for a in axioms for q in quotas}
    for (a, q), res in results.items():
        if res is not None:
            continue
        for b in implied_by(a):
            if (b, q) in results:
                assert results[b, q] is None, f"{a} {q} passes but implied {b} {q} fails"
        if q is DROOP and (a, HARE) in results:
            assert results[a, HARE] is None, f"{a} passes under Droop but fails under Hare"
    return results
