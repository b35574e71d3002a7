import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus, election_and_committee
from oracles import violates, violations
from droopjr import DROOP, HARE, Election, InstanceTooLarge
from droopjr.axioms import (
    AXIOMS,
    IMPLIES,
    AxiomId,
    ViolationWitness,
    check,
    check_all,
    implied_by,
    replay,
    satisfies,
)
from droopjr.harness.corpus import incomparability_instance, monroe_nine
from droopjr.rules import pav_exact

PAIRS = [(a, q) for a in AXIOMS for q in (HARE, DROOP)]


def test_axiom_ids():
    assert [str(a) for a in AXIOMS] == ["JR", "PJR", "EJR", "PJR+", "EJR+", "FPJR", "FJR"]
    assert AxiomId.parse("ejr+") is AxiomId.EJRplus
    assert AxiomId.parse("EJRplus") is AxiomId.EJRplus
    with pytest.raises(ValueError):
        AxiomId.parse("core")


def test_implication_lattice_contents():
    assert implied_by(AxiomId.FJR) >= {AxiomId.EJR, AxiomId.FPJR, AxiomId.PJR, AxiomId.JR}
    assert implied_by(AxiomId.EJRplus) >= {AxiomId.EJR, AxiomId.PJR, AxiomId.PJRplus, AxiomId.JR}
    assert implied_by(AxiomId.PJRplus) >= {AxiomId.PJR, AxiomId.JR}
    assert implied_by(AxiomId.JR) == frozenset()
    assert AxiomId.JR not in IMPLIES[AxiomId.JR]


def test_jr_example_three_voters():
    e = Election(2, ({0}, {0}, {1}), 1)
    w = check(e, {1}, AxiomId.JR, DROOP)
    assert (w.ell, w.T, w.S) == (1, {0}, {0, 1})
    assert check(e, {1}, AxiomId.JR, HARE) is None
    assert check(e, {0}, AxiomId.JR, DROOP) is None


def test_incomparability_example():
    e = incomparability_instance()
    assert check(e, {1, 2}, AxiomId.FJR, DROOP) is None
    w = check(e, {1, 2}, AxiomId.EJRplus, DROOP)
    assert (w.ell, w.T, w.S) == (2, {0}, {0, 1})


def test_pjr_example_nine_voters():
    e = monroe_nine()
    w = check(e, {0, 1, 3}, AxiomId.PJR, DROOP)
    assert (w.ell, w.T, w.S) == (3, {0, 1, 2}, set(range(7)))
    assert check(e, {0, 1, 3}, AxiomId.PJR, HARE) is None


def test_full_committee_satisfies_everything():
    e = Election(4, ({0}, {1, 2}, {3}, {0, 3}), 4)
    for a, q in PAIRS:
        assert check(e, range(4), a, q) is None


def test_empty_committee_fails_jr():
    e = Election(3, ({0}, {0}, {0}, {0, 1}), 1)
    res = check_all(e, set())
    assert res[AxiomId.JR, HARE] is not None and res[AxiomId.JR, DROOP] is not None


def test_check_rejects_oversized_committee():
    e = Election(3, ({0},), 1)
    with pytest.raises(ValueError):
        check(e, {0, 1}, AxiomId.JR, HARE)
    with pytest.raises(ValueError):
        check(e, {5}, AxiomId.JR, HARE)


def test_guards():
    wide = Election(30, tuple(frozenset({c, (c + 1) % 30}) for c in range(30)), 3)
    for a in (AxiomId.PJR, AxiomId.EJR, AxiomId.FPJR, AxiomId.FJR):
        with pytest.raises(InstanceTooLarge):
            check(wide, {0}, a, DROOP)
    # JR, EJR+ and PJR+ have no candidate guard
    check(wide, {0}, AxiomId.JR, DROOP)
    check(wide, {0}, AxiomId.EJRplus, DROOP)
    check(wide, {0}, AxiomId.PJRplus, DROOP)
    deep = Election(12, ({0},) * 12, 9)
    with pytest.raises(InstanceTooLarge):
        check(deep, {0}, AxiomId.PJRplus, DROOP)
    check(deep, {0}, AxiomId.EJRplus, DROOP)


def test_witness_serialization():
    e = Election(2, ({0}, {0}, {1}), 1)
    w = check(e, {1}, AxiomId.JR, DROOP)
    assert w.serialize() == (
        "axiom=JR quota=droop ell=1 T={0} S={0,1} note=S collectively approves fewer than 1 committee members"
    )


def test_replay_rejects_bogus_witnesses():
    e = Election(2, ({0}, {0}, {1}), 1)
    good = check(e, {1}, AxiomId.JR, DROOP)
    assert replay(e, {1}, good)
    assert not replay(e, {0}, good)
    assert not replay(e, {1}, ViolationWitness(AxiomId.JR, HARE, 1, good.T, good.S, ""))
    assert not replay(e, {1}, ViolationWitness(AxiomId.JR, DROOP, 1, good.T, frozenset({0, 2}), ""))
    assert not replay(e, {1}, ViolationWitness(AxiomId.EJRplus, DROOP, 1, frozenset({1}), good.S, ""))


@pytest.mark.parametrize("axiom, quota", PAIRS, ids=[f"{a}-{q}" for a, q in PAIRS])
def test_checker_matches_oracle_sweep(axiom, quota):
    rng = random.Random(1000 + PAIRS.index((axiom, quota)))
    for e in corpus(120, seed=rng.randrange(10**9), n_max=8, m_max=5, k_max=3):
        size = rng.randint(0, e.k)
        W = frozenset(rng.sample(range(e.m), size))
        w = check(e, W, axiom, quota)
        assert (w is not None) == violates(e.ballots, e.m, e.k, W, str(axiom), str(quota)), (e, W)


@given(election_and_committee(n_max=8, m_max=5, k_max=3))
def test_checker_matches_oracle(ew):
    e, W = ew
    for a, q in PAIRS:
        found = list(violations(e.ballots, e.m, e.k, W, str(a), str(q)))
        w = check(e, W, a, q)
        assert (w is None) == (not found)
        if w is None:
            continue
        assert replay(e, W, w)
        # the witness has the largest violating l, and a largest group S for its (l, T)
        assert w.ell == max(ell for ell, _, _ in found)
        assert len(w.S) == max(len(S) for ell, T, S in found if ell == w.ell and T == w.T)


@given(election_and_committee(n_max=10, m_max=6, k_max=4))
def test_lattice_and_droop_implies_hare(ew):
    e, W = ew
    res = check_all(e, W)
    assert len(res) == 14
    for a, q in PAIRS:
        if res[a, q] is None:
            assert all(res[b, q] is None for b in implied_by(a))
        if res[a, DROOP] is None:
            assert res[a, HARE] is None
        assert satisfies(e, W, a, q) == (res[a, q] is None)


def test_pav_outputs_respect_lattice():
    for e in corpus(60, seed=11, n_max=12, m_max=6, k_max=3):
        W = pav_exact(e).committee
        res = check_all(e, W)
        if res[AxiomId.EJRplus, DROOP] is None:
            assert res[AxiomId.EJR, DROOP] is None
        if res[AxiomId.EJR, DROOP] is None:
            assert res[AxiomId.PJR, DROOP] is None
        # PAV provides Hare-EJR
        assert res[AxiomId.EJR, HARE] is None


def test_witness_preference_is_lexicographic():
    # two disjoint blocks each entitled to one seat; the lower-indexed T wins
    e = Election(4, ({0}, {0}, {1}, {1}), 2)
    w = check(e, {2, 3}, AxiomId.JR, HARE)
    assert w.T == {0} and w.S == {0, 1}
    w = check(e, {2, 3}, AxiomId.FJR, HARE)
    assert w.T == {0}
    order = [w.T for w in (check(e, {2, 3}, a, HARE) for a in AXIOMS)]
    assert all(T == {0} for T in order)


def test_checker_agrees_across_permuted_voters():
    # the verdict depends only on the multiset of ballots
    for e in corpus(30, seed=3, n_max=8, m_max=5, k_max=3):
        perm = list(reversed(e.ballots))
        e2 = Election(e.m, tuple(perm), e.k)
        for W in itertools.combinations(range(e.m), e.k):
            for a, q in PAIRS:
                assert (check(e, W, a, q) is None) == (check(e2, W, a, q) is None)
