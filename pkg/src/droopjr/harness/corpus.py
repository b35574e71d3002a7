"""Reproducible counterexamples and incomparability witnesses.

Each corpus entry builds a fixed small election, runs a rule (with
scripted tie-breaking where the scenario depends on it), checks the
relevant axiom and compares everything with the expected numbers. A
mismatch raises :class:`WitnessRegression`.

Candidate names in the comments are 1-based (``c1`` is index 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..axioms import AxiomId, check
from ..core import DROOP, HARE, Election
from ..rules import TieBreak, gcr, gjcr, greedy_monroe, mes, monroe, monroe_score
from ..rules.equal_shares import EES
from ..sampling import IC, SamplerConfig, derive_seed, sample_election


class WitnessRegression(AssertionError):
    """A corpus scenario no longer reproduces its expected outcome."""


@dataclass
class WitnessResult:
    name: str
    claim: str
    lines: list[str] = field(default_factory=list)

    def expect(self, cond: bool, what: str):
        self.lines.append(("ok   " if cond else "FAIL ") + what)
        if not cond:
            raise WitnessRegression(f"{self.name}: {what}")


def _verdict(e, W, axiom, q) -> str:
    return "PASS" if check(e, W, axiom, q) is None else "FAIL"


def block_election(m: int, k: int, blocks) -> Election:
    """Voters in consecutive blocks, each block sharing one ballot."""
    ballots = []
    for count, ballot in blocks:
        ballots.extend([frozenset(ballot)] * count)
    return Election(m, tuple(ballots), k)


def mes_instance() -> Election:
    # three voters approve a = c0 only, four approve b = c1 only; m=4 adds two unapproved candidates
    return block_election(4, 2, [(3, {0}), (4, {1})])


def monroe_nine() -> Election:
    return block_election(4, 3, [(7, {0, 1, 2}), (2, {3})])


def monroe_fifteen() -> Election:
    return block_election(3, 2, [(11, {0, 1}), (4, {2})])


def droop_monroe_instance() -> Election:
    return block_election(9, 7, [(16, set(range(6))), (2, {6}), (2, {7}), (1, {8})])


def greedy_monroe_instance() -> Election:
    return block_election(5, 4, [(25, {0}), (22, {1}), (19, {2}), (13, {3}), (21, {4})])


# voters 79..99 form the c5 group; the script hands three and then six of
# them to c2 and c3 as non-approving fillers
GREEDY_MONROE_SCRIPT = TieBreak.scripted(filler=[[79, 80, 81], [82, 83, 84, 85, 86, 87]])


def gjcr_instance() -> Election:
    # voters 0 and 1 approve a, voter 2 approves b; a is index 1 so that the
    # lexicographic filler picks b
    return Election(2, ({1}, {1}, {0}), 1)


def incomparability_instance() -> Election:
    return Election(3, ({0, 1}, {0, 2}), 2)


def _mes_not_droop_jr() -> WitnessResult:
    r = WitnessResult("mes-not-droop-jr", "MES and EES with unit budgets fail Droop-JR")
    e = mes_instance()
    for variant in ("mes", EES):
        out = mes(e, 1, variant)
        r.expect(out.committee == (1,), f"{variant} elects only b: {list(out.committee)}")
        w = check(e, out.committee, AxiomId.JR, DROOP)
        r.expect(w is not None and w.S == frozenset({0, 1, 2}), f"{variant} Droop-JR FAIL, S={sorted(w.S) if w else None}")
        r.expect(_verdict(e, out.committee, AxiomId.JR, HARE) == "PASS", f"{variant} Hare-JR PASS")
    return r


def _monroe_not_droop_pjr() -> WitnessResult:
    r = WitnessResult("monroe-not-droop-pjr", "Hare Monroe and Greedy Monroe fail Droop-PJR")
    e = monroe_nine()
    r.expect(monroe_score(e, {0, 1, 2})[0] == 7, "n=9: score({c1,c2,c3}) = 7")
    r.expect(monroe_score(e, {0, 1, 3})[0] == 8, "n=9: score({c1,c2,c4}) = 8")
    for rule in (monroe, greedy_monroe):
        W = rule(e, HARE).committee
        r.expect(3 in W, f"n=9: {rule.__name__} elects c4: {list(W)}")
        r.expect(_verdict(e, W, AxiomId.PJR, DROOP) == "FAIL", f"n=9: {rule.__name__} Droop-PJR FAIL")
    e = monroe_fifteen()
    r.expect(monroe_score(e, {0, 1})[0] == 11, "n=15: score({c1,c2}) = 11")
    r.expect(monroe_score(e, {0, 2})[0] == 12, "n=15: score({c1,c3}) = 12")
    for rule in (monroe, greedy_monroe):
        W = rule(e, HARE).committee
        r.expect(2 in W, f"n=15: {rule.__name__} elects c3: {list(W)}")
        r.expect(_verdict(e, W, AxiomId.PJR, DROOP) == "FAIL", f"n=15: {rule.__name__} Droop-PJR FAIL")
    return r


def divisible_instances(count: int = 40, seed: int = 2024):
    """Small IC elections with ``k | n`` for the Monroe Droop-JR check."""
    for j in range(count):
        s = derive_seed(seed, j)
        k = 1 + s % 3
        n = k * (1 + (s >> 8) % 4)
        m = k + (s >> 16) % 3
        p = (0.2, 0.4, 0.6)[(s >> 24) % 3]
        yield sample_election(SamplerConfig(IC, p, m, n, s), k)


def _monroe_droop_jr_divisible() -> WitnessResult:
    r = WitnessResult("monroe-droop-jr-divisible", "Hare Monroe satisfies Droop-JR when k divides n")
    fails = 0
    total = 0
    for e in divisible_instances():
        assert e.n % e.k == 0
        W = monroe(e, HARE).committee
        fails += check(e, W, AxiomId.JR, DROOP) is not None
        total += 1
    r.expect(fails == 0, f"Droop-JR PASS on {total - fails}/{total} instances with k | n")
    return r


def _droop_monroe_not_droop_pjr() -> WitnessResult:
    r = WitnessResult(
        "droop-monroe-not-droop-pjr", "Droop Monroe and Droop Greedy Monroe fail Droop-PJR when (k+1) does not divide n"
    )
    e = droop_monroe_instance()
    r.expect(monroe_score(e, set(range(7)), DROOP)[0] == 18, "score({c1..c6,c7}) = 18")
    r.expect(monroe_score(e, {0, 1, 2, 3, 4, 6, 7}, DROOP)[0] == 19, "score({c1..c5,c7,c8}) = 19")
    for rule in (monroe, greedy_monroe):
        W = rule(e, DROOP).committee
        r.expect(len(set(W) & set(range(6))) == 5, f"{rule.__name__} elects five of c1..c6: {list(W)}")
        w = check(e, W, AxiomId.PJR, DROOP)
        r.expect(w is not None and w.ell == 6, f"{rule.__name__} Droop-PJR FAIL at l=6")
    return r


def _greedy_monroe_not_droop_jr() -> WitnessResult:
    r = WitnessResult("greedy-monroe-not-droop-jr", "Greedy Monroe can fail Droop-JR under adversarial ties")
    e = greedy_monroe_instance()
    out = greedy_monroe(e, HARE, GREEDY_MONROE_SCRIPT)
    r.expect(out.trace["order"] == [0, 1, 2, 3], f"selection order c1,c2,c3,c4: {out.trace['order']}")
    w = check(e, out.committee, AxiomId.JR, DROOP)
    r.expect(w is not None and w.T == frozenset({4}) and len(w.S) == 21, "Droop-JR FAIL for the 21 c5 voters")
    lex = greedy_monroe(e, HARE).committee
    r.expect(4 in lex, f"lexicographic ties elect c5: {list(lex)}")
    return r


def _gjcr_not_droop_jr() -> WitnessResult:
    r = WitnessResult("gjcr-not-droop-jr", "Hare GJCR fails Droop-JR; Droop GJCR passes")
    e = gjcr_instance()
    hare = gjcr(e, HARE)
    r.expect(hare.trace["steps"] == [] and hare.committee == (0,), "Hare main loop selects nothing; filler elects b")
    r.expect(_verdict(e, hare.committee, AxiomId.JR, DROOP) == "FAIL", "Hare GJCR Droop-JR FAIL")
    droop = gjcr(e, DROOP)
    r.expect(droop.trace["steps"] == [(1, 1, {0, 1})], "Droop GJCR elects a at l=1 with S={0,1}")
    r.expect(_verdict(e, droop.committee, AxiomId.JR, DROOP) == "PASS", "Droop GJCR Droop-JR PASS")
    return r


def _gcr_not_droop_jr() -> WitnessResult:
    r = WitnessResult("gcr-not-droop-jr", "Hare GCR fails Droop-JR; Droop GCR passes")
    e = gjcr_instance()
    hare = gcr(e, HARE)
    r.expect(hare.trace["steps"] == [] and hare.committee == (0,), "Hare main loop selects nothing; filler elects b")
    r.expect(_verdict(e, hare.committee, AxiomId.JR, DROOP) == "FAIL", "Hare GCR Droop-JR FAIL")
    droop = gcr(e, DROOP)
    r.expect(droop.trace["steps"] == [(1, {1}, {0, 1})], "Droop GCR selects (1, {a}, {0,1})")
    r.expect(_verdict(e, droop.committee, AxiomId.JR, DROOP) == "PASS", "Droop GCR Droop-JR PASS")
    return r


def _ejrplus_fjr_incomparable() -> WitnessResult:
    r = WitnessResult("ejrplus-fjr-incomparable", "{c2,c3} provides Droop-FJR but not Droop-EJR+")
    e = incomparability_instance()
    W = {1, 2}
    r.expect(check(e, W, AxiomId.FJR, DROOP) is None, "Droop-FJR PASS")
    w = check(e, W, AxiomId.EJRplus, DROOP)
    r.expect(
        w is not None and w.ell == 2 and w.T == frozenset({0}) and w.S == frozenset({0, 1}),
        "Droop-EJR+ FAIL with l=2, c=c1, S={0,1}",
    )
    return r


CORPUS = {
    "mes-not-droop-jr": _mes_not_droop_jr,
    "monroe-not-droop-pjr": _monroe_not_droop_pjr,
    "monroe-droop-jr-divisible": _monroe_droop_jr_divisible,
    "droop-monroe-not-droop-pjr": _droop_monroe_not_droop_pjr,
    "greedy-monroe-not-droop-jr": _greedy_monroe_not_droop_jr,
    "gjcr-not-droop-jr": _gjcr_not_droop_jr,
    "gcr-not-droop-jr": _gcr_not_droop_jr,
    "ejrplus-fjr-incomparable": _ejrplus_fjr_incomparable,
}


def witness_corpus(name: str) -> WitnessResult:
    """Replay one corpus entry; raises :class:`WitnessRegression` on any mismatch."""
    try:
        run = CORPUS[name]
    except KeyError:
        raise ValueError(f"unknown witness {name!r}; known: {', '.join(CORPUS)}") from None
    return run()
