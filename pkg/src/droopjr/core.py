"""Election model, quota arithmetic and the plain-text election format.

Candidates and voters are dense 0-based indices. Ballots are stored both as
frozensets (for readable code) and as integer bitmasks (for the exhaustive
searches in the checkers); the two views are kept in sync at construction.

All group-size tests are done in integers:

* Hare:  ``|S| >= l * n / k``      <=>  ``k * |S| >= l * n``
* Droop: ``|S| >  l * n / (k + 1)`` <=>  ``(k + 1) * |S| >= l * n + 1``
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple


class ElectionFormatError(ValueError):
    """Raised when an election file cannot be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InstanceTooLarge(ValueError):
    """Raised when an exhaustive search would exceed its desk-scale guard."""


class Quota(enum.Enum):
    HARE = "hare"
    DROOP = "droop"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text):
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown quota {text!r} (expected hare or droop)") from None


HARE = Quota.HARE
DROOP = Quota.DROOP
QUOTAS = (HARE, DROOP)


def mask_of(candidates: Iterable[int]) -> int:
    m = 0
    for c in candidates:
        m |= 1 << c
    return m


def members(mask: int) -> tuple[int, ...]:
    """Indices of the set bits of ``mask``, ascending."""
    bits = bin(mask)[:1:-1]
    return tuple(i for i, b in enumerate(bits) if b == "1")


@dataclass(frozen=True)
class Election:
    """An approval election ``(C, N, A, k)`` with ``C = {0..m-1}``, ``N = {0..n-1}``.

    Parameters
    ----------
    m : int
        Number of candidates.
    ballots : sequence of iterables of int
        One approval set per voter; empty ballots are allowed.
    k : int
        Target committee size, ``1 <= k <= m``.
    """

    m: int
    ballots: tuple[frozenset[int], ...]
    k: int
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    supporters: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    supporter_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ballots = tuple(frozenset(b) for b in self.ballots)
        object.__setattr__(self, "ballots", ballots)
        if self.m < 1:
            raise ValueError("an election needs at least one candidate")
        if not ballots:
            raise ValueError("an election needs at least one voter")
        if not 1 <= self.k <= self.m:
            raise ValueError(f"committee size k={self.k} outside 1..m={self.m}")
        for i, b in enumerate(ballots):
            for c in b:
                if not 0 <= c < self.m:
                    raise ValueError(f"voter {i} approves candidate {c} outside 0..{self.m - 1}")
        object.__setattr__(self, "masks", tuple(mask_of(b) for b in ballots))
        sup = [set() for _ in range(self.m)]
        for i, b in enumerate(ballots):
            for c in b:
                sup[c].add(i)
        object.__setattr__(self, "supporters", tuple(frozenset(s) for s in sup))
        object.__setattr__(self, "supporter_masks", tuple(mask_of(s) for s in sup))

    @property
    def n(self) -> int:
        return len(self.ballots)

    @property
    def candidates(self) -> range:
        return range(self.m)

    @property
    def voters(self) -> range:
        return range(self.n)

    def approval_count(self, c: int) -> int:
        return len(self.supporters[c])

    def approved_candidates(self) -> frozenset[int]:
        """Candidates approved by at least one voter."""
        return frozenset(c for c in self.candidates if self.supporters[c])

    def with_k(self, k: int) -> "Election":
        return Election(self.m, self.ballots, k)


def threshold_met(q: Quota, group_size: int, ell: int, n: int, k: int) -> bool:
    """Whether a group of ``group_size`` voters is large enough to demand ``ell`` seats."""
    if q is HARE:
        return k * group_size >= ell * n
    if q is DROOP:
        return (k + 1) * group_size >= ell * n + 1
    raise TypeError(f"not a quota: {q!r}")


def group_clears_quota(q: Quota, group_size: int, ell: int, e: Election) -> bool:
    return threshold_met(q, group_size, ell, e.n, e.k)


def min_group_size(q: Quota, ell: int, n: int, k: int) -> int:
    """Smallest group size that clears the quota for ``ell`` seats."""
    if q is HARE:
        return -(-ell * n // k)
    return -(-(ell * n + 1) // (k + 1))


class QuotaReport(NamedTuple):
    hare: Fraction
    droop: int


def quota_report(e: Election) -> QuotaReport:
    return QuotaReport(Fraction(e.n, e.k), e.n // (e.k + 1) + 1)


def cohesive_group(e: Election, T, ell: int, active=None, mode: str = "strict") -> frozenset[int]:
    """The maximal set of active voters that is (weakly) cohesive around ``T``.

    With ``mode="strict"`` every returned voter approves all of ``T`` (which
    must have exactly ``ell`` members); with ``mode="weak"`` every returned
    voter approves at least ``ell`` members of ``T``. The size requirement
    of the quota is *not* applied here, since any qualifying group is a
    subset of the returned one.
    """
    T = frozenset(T)
    if not T:
        raise ValueError("target set T must be nonempty")
    if ell < 1:
        raise ValueError("ell must be positive")
    if mode == "strict":
        if len(T) != ell:
            raise ValueError("strict cohesion requires |T| == ell")
    elif mode != "weak":
        raise ValueError(f"unknown cohesion mode {mode!r}")
    tmask = mask_of(T)
    pool = e.voters if active is None else sorted(active)
    return frozenset(i for i in pool if (e.masks[i] & tmask).bit_count() >= ell)


def parse_election(text: str) -> Election:
    """Parse the ``m n k`` header plus one comma-separated ballot per line.

    Lines starting with ``#`` are comments. An empty line is an empty ballot.
    """
    header = None
    ballots: list[frozenset[int]] = []
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r")
        if line.lstrip().startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 3:
                raise ElectionFormatError("header must be 'm n k'", lineno)
            try:
                m, n, k = (int(p) for p in parts)
            except ValueError:
                raise ElectionFormatError("header fields must be integers", lineno) from None
            if m < 1 or n < 1:
                raise ElectionFormatError("need m >= 1 and n >= 1", lineno)
            if not 1 <= k <= m:
                raise ElectionFormatError(f"k={k} must satisfy 1 <= k <= m={m}", lineno)
            header = (m, n, k, lineno)
            continue
        m = header[0]
        if len(ballots) >= header[1]:
            if line.strip():
                raise ElectionFormatError(f"more than n={header[1]} ballots", lineno)
            continue
        ballot = set()
        if line.strip():
            for tok in line.split(","):
                tok = tok.strip()
                try:
                    c = int(tok)
                except ValueError:
                    raise ElectionFormatError(f"bad candidate index {tok!r}", lineno) from None
                if not 0 <= c < m:
                    raise ElectionFormatError(f"candidate index {c} out of range 0..{m - 1}", lineno)
                ballot.add(c)
        ballots.append(frozenset(ballot))
    if header is None:
        raise ElectionFormatError("missing header", 1)
    m, n, k, _ = header
    if len(ballots) < n:
        raise ElectionFormatError(f"expected {n} ballots, found {len(ballots)}", len(lines) + 1)
    return Election(m, tuple(ballots), k)


def serialize_election(e: Election) -> str:
    lines = [f"{e.m} {e.n} {e.k}"]
    lines.extend(",".join(str(c) for c in sorted(b)) for b in e.ballots)
    return "\n".join(lines) + "\n"
