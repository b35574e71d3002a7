"""Random approval profiles and random committees, reproducible under a seed.

Randomness comes from numpy's Philox counter-based generator. A 64-bit
seed is turned into a generator by :func:`generator`; per-task seeds are
derived from a master seed with :func:`derive_seed`, which hashes the
master seed together with an integer path through ``numpy.random.SeedSequence``.
The derivation does not depend on how work is scheduled, so parallel
and serial runs see the same streams.

Models
------
``ic``
    Each voter approves each candidate independently with probability ``p``.
``resampling``
    A central ballot ``B`` with ``floor(p*m)`` uniformly chosen approvals.
    Each voter keeps ``B`` with probability ``phi``; otherwise the ballot is
    redrawn from ``ic(p)``. With ``per_candidate=True`` each candidate is
    instead redrawn independently with probability ``1 - phi``.
``noise``
    Ballot ``A`` is drawn with probability proportional to
    ``phi ** hamming(A, B)``. This law factorises over candidates, so each
    bit of ``B`` is flipped independently with probability ``phi / (1 + phi)``.
``urn``
    Polya-Eggenberger urn over rankings, truncated to the first
    ``ceil(p*m)`` candidates. After ``r`` draws the urn holds ``m!`` fresh
    orders and ``alpha*m!`` copies of each earlier draw, so the next voter
    gets a fresh uniform ranking with probability ``1 / (1 + r*alpha)``
    and a copy of a uniformly chosen earlier draw otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Election

IC = "ic"
RESAMPLING = "resampling"
NOISE = "noise"
URN = "urn"
MODELS = (IC, RESAMPLING, NOISE, URN)

_SEED_MASK = (1 << 64) - 1


def derive_seed(master: int, *path: int) -> int:
    """A 64-bit seed for the task at ``path`` under ``master``."""
    ss = np.random.SeedSequence(master & _SEED_MASK, spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, np.uint64)[0])


def generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed & _SEED_MASK)))


@dataclass(frozen=True)
class SamplerConfig:
    """Parameters of one ballot model.

    ``param`` is ``phi`` for resampling/noise and ``alpha`` for the urn;
    it must be ``None`` for ``ic``.
    """

    model: str
    p: float
    m: int
    n: int
    seed: int
    param: float | None = None
    per_candidate: bool = False

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {', '.join(MODELS)}")
        if not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")
        if self.m < 1 or self.n < 1:
            raise ValueError("need m >= 1 and n >= 1")
        if self.model == IC:
            if self.param is not None:
                raise ValueError("the ic model takes no phi/alpha parameter")
        else:
            name = "alpha" if self.model == URN else "phi"
            if self.param is None:
                raise ValueError(f"the {self.model} model needs {name}")
            if not 0 < self.param <= 1:
                raise ValueError(f"{name} must lie in (0, 1]")
        if self.per_candidate and self.model != RESAMPLING:
            raise ValueError("per_candidate only applies to the resampling model")


def _central(rng, m, p):
    B = np.zeros(m, dtype=bool)
    B[rng.choice(m, math.floor(p * m), replace=False)] = True
    return B


def _urn(rng, cfg):
    size = math.ceil(cfg.p * cfg.m)
    draws = []
    fresh = 0
    out = np.zeros((cfg.n, cfg.m), dtype=bool)
    for r in range(cfg.n):
        if rng.random() < 1.0 / (1.0 + r * cfg.param):
            order = rng.permutation(cfg.m)[:size]
            fresh += 1
        else:
            order = draws[rng.integers(r)]
        draws.append(order)
        out[r, order] = True
    return out, fresh


def sample_matrix(cfg: SamplerConfig) -> np.ndarray:
    """The profile as an ``n x m`` boolean matrix."""
    rng = generator(cfg.seed)
    n, m, p = cfg.n, cfg.m, cfg.p
    if cfg.model == IC:
        return rng.random((n, m)) < p
    if cfg.model == URN:
        return _urn(rng, cfg)[0]
    B = _central(rng, m, p)
    if cfg.model == NOISE:
        flip = cfg.param / (1.0 + cfg.param)
        return B[None, :] ^ (rng.random((n, m)) < flip)
    redraw = rng.random((n, m)) < p
    if cfg.per_candidate:
        keep = rng.random((n, m)) < cfg.param
    else:
        keep = np.repeat((rng.random(n) < cfg.param)[:, None], m, axis=1)
    return np.where(keep, B[None, :], redraw)


def urn_fresh_draws(cfg: SamplerConfig) -> int:
    """How many voters of an urn profile received a fresh ranking."""
    if cfg.model != URN:
        raise ValueError("only defined for the urn model")
    return _urn(generator(cfg.seed), cfg)[1]


def sample(cfg: SamplerConfig) -> tuple[frozenset[int], ...]:
    """``n`` approval ballots drawn from ``cfg``'s model."""
    M = sample_matrix(cfg)
    return tuple(frozenset(np.flatnonzero(row).tolist()) for row in M)


def sample_election(cfg: SamplerConfig, k: int) -> Election:
    return Election(cfg.m, sample(cfg), k)


def random_committee(m: int, k: int, seed: int) -> frozenset[int]:
    """A uniformly random ``k``-subset of ``range(m)``."""
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    return frozenset(generator(seed).choice(m, k, replace=False).tolist())
