"""Exact brute-force checks of the arithmetic facts behind the proofs.

* Droop integer form: ``s > l*n/(k+1)``  iff  ``(k+1)*s >= l*n + 1``.
* Inverse-sum bound: for integers ``s >= x_1 >= ... >= x_t >= 1`` with
  ``sum(x) >= s*tau`` we have ``sum_{i <= tau} 1/x_i <= t/s``.
* ``x*y + 1 >= x + y`` for positive integers.

The inverse-sum bound is also checked through its proof: a mass-transfer
transformation that never lowers the objective, followed by a shape
argument on its fixed point. :func:`transfer_fixpoint` runs that
transformation and asserts each step's invariants.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .core import DROOP, threshold_met


def droop_equivalence(l_max=20, n_max=200) -> int:
    """Compare the integer Droop test with the rational one over the whole box."""
    checked = 0
    for k in range(1, l_max + 1):
        for ell in range(1, k + 1):
            for n in range(1, n_max + 1):
                bound = Fraction(ell * n, k + 1)
                for s in range(n + 1):
                    assert threshold_met(DROOP, s, ell, n, k) == (s > bound), (s, ell, n, k)
                    checked += 1
    return checked


def inverse_sum(xs, tau: int) -> Fraction:
    return sum((Fraction(1, x) for x in xs[:tau]), Fraction(0))


def tuples(t: int, s: int):
    """All non-increasing tuples of length ``t`` with entries in ``1..s``."""
    for combo in itertools.combinations_with_replacement(range(s, 0, -1), t):
        yield combo


def transfer_step(xs, s: int, tau: int):
    """One move of the transformation, or ``None`` at a fixed point.

    With sentinels ``x_0 = s`` and ``x_{t+1} = 1``, look for indices
    ``1 <= j < l <= tau`` with ``x_{j-1} > x_j`` and ``x_l > x_{l+1}``, and
    move one unit from ``x_l`` to ``x_j``. The first such pair in
    lexicographic order is used.
    """
    ext = (s,) + tuple(xs) + (1,)
    for j in range(1, tau + 1):
        if not ext[j - 1] > ext[j]:
            continue
        for ell in range(j + 1, tau + 1):
            if ext[ell] > ext[ell + 1]:
                out = list(xs)
                out[j - 1] += 1
                out[ell - 1] -= 1
                return tuple(out)
    return None


def transfer_lemma(a: int, b: int) -> bool:
    """``1/(a+1) + 1/(b-1) > 1/a + 1/b`` for ``a >= b >= 2``."""
    return Fraction(1, a + 1) + Fraction(1, b - 1) > Fraction(1, a) + Fraction(1, b)


def transfer_fixpoint(xs, s: int, tau: int):
    """Run the transformation to its fixed point, asserting every invariant."""
    xs = tuple(xs)
    total = sum(xs[:tau])
    value = inverse_sum(xs, tau)
    steps = 0
    while True:
        nxt = transfer_step(xs, s, tau)
        if nxt is None:
            return xs, steps
        assert sum(nxt[:tau]) == total
        assert all(s >= a >= b >= 1 for a, b in zip(nxt, nxt[1:])) and s >= nxt[0] and nxt[-1] >= 1
        new = inverse_sum(nxt, tau)
        assert new > value, f"transfer lowered the objective: {xs} -> {nxt}"
        xs, value = nxt, new
        steps += 1


def fixpoint_shape(xs, s: int, tau: int) -> bool:
    """Either ``x_tau = s`` or ``x = (s, .., s, y, z, .., z)`` on the first ``tau`` with ``z <= y < s``."""
    head = xs[:tau]
    if head[-1] == s:
        return all(x == s for x in head)
    j = sum(1 for x in head if x == s)
    rest = head[j + 1:]
    return all(x == s for x in head[:j]) and head[j] < s and len(set(rest)) <= 1


def inverse_sum_lemma(t_max: int = 6, s_max: int = 6, with_proof: bool = True) -> int:
    """Check the inverse-sum bound on every admissible tuple; returns the count checked."""
    checked = 0
    for t in range(1, t_max + 1):
        for s in range(1, s_max + 1):
            for xs in tuples(t, s):
                for tau in range(1, t + 1):
                    if sum(xs) < s * tau:
                        continue
                    bound = Fraction(t, s)
                    assert inverse_sum(xs, tau) <= bound, (xs, s, tau)
                    if with_proof and tau >= 2:
                        fixed, _ = transfer_fixpoint(xs, s, tau)
                        assert fixpoint_shape(fixed, s, tau), (xs, fixed, s, tau)
                        assert inverse_sum(fixed, tau) <= bound, (fixed, s, tau)
                    checked += 1
    return checked


def xy_lemma(limit: int = 100) -> int:
    checked = 0
    for x in range(1, limit + 1):
        for y in range(1, limit + 1):
            assert x * y + 1 >= x + y, (x, y)
            checked += 1
    return checked
