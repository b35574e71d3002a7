import itertools
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from droopjr.lemmas import (
    droop_equivalence,
    fixpoint_shape,
    inverse_sum,
    inverse_sum_lemma,
    transfer_fixpoint,
    transfer_lemma,
    transfer_step,
    tuples,
    xy_lemma,
)


def test_droop_equivalence_box():
    assert droop_equivalence(20, 200) == sum(k * sum(n + 1 for n in range(1, 201)) for k in range(1, 21))


def test_tuples_enumerates_non_increasing():
    for t in range(1, 5):
        for s in range(1, 5):
            expected = [x for x in itertools.product(range(1, s + 1), repeat=t) if list(x) == sorted(x, reverse=True)]
            assert sorted(tuples(t, s)) == sorted(expected)


def test_inverse_sum_lemma_matches_independent_count():
    count = 0
    for t in range(1, 7):
        for s in range(1, 7):
            for xs in itertools.product(range(1, s + 1), repeat=t):
                if list(xs) != sorted(xs, reverse=True):
                    continue
                for tau in range(1, t + 1):
                    if sum(xs) >= s * tau:
                        assert sum(Fraction(1, x) for x in xs[:tau]) <= Fraction(t, s)
                        count += 1
    assert inverse_sum_lemma(6, 6, with_proof=True) == count


def test_inverse_sum_lemma_without_proof_machinery():
    assert inverse_sum_lemma(6, 6, with_proof=False) == inverse_sum_lemma(6, 6, with_proof=True)


def test_xy_lemma():
    assert xy_lemma(100) == 10000


@given(st.integers(2, 200), st.integers(2, 200))
def test_transfer_lemma(a, b):
    a, b = max(a, b), min(a, b)
    assert transfer_lemma(a, b)


def test_transfer_step_examples():
    assert transfer_step((3, 2, 2, 1), 4, 3) == (4, 2, 1, 1)
    assert transfer_step((4, 4, 1), 4, 3) is None
    assert inverse_sum((4, 2, 1), 2) == Fraction(3, 4)


@given(st.integers(2, 8), st.integers(2, 8), st.data())
def test_transfer_fixpoint_shape(t, s, data):
    xs = tuple(sorted(data.draw(st.lists(st.integers(1, s), min_size=t, max_size=t)), reverse=True))
    tau = data.draw(st.integers(2, t))
    fixed, steps = transfer_fixpoint(xs, s, tau)
    assert sum(fixed[:tau]) == sum(xs[:tau])
    assert fixpoint_shape(fixed, s, tau)
    assert inverse_sum(fixed, tau) >= inverse_sum(xs, tau)
    assert (steps == 0) == (fixed == xs)
