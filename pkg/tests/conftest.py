import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from droopjr import Election

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def random_election(rng: random.Random, n_max, m_max, k_max, ps=(0.2, 0.5, 0.8), k_min=1):
    """Impartial-culture election with uniformly drawn sizes (stdlib RNG, independent of the package)."""
    m = rng.randint(max(1, k_min), m_max)
    k = rng.randint(k_min, min(k_max, m))
    n = rng.randint(1, n_max)
    p = rng.choice(ps)
    ballots = tuple(frozenset(c for c in range(m) if rng.random() < p) for _ in range(n))
    return Election(m, ballots, k)


def corpus(count, seed, **kw):
    rng = random.Random(seed)
    return [random_election(rng, **kw) for _ in range(count)]


@st.composite
def elections(draw, n_max=8, m_max=5, k_max=3):
    m = draw(st.integers(1, m_max))
    k = draw(st.integers(1, min(k_max, m)))
    n = draw(st.integers(1, n_max))
    ballots = draw(st.lists(st.frozensets(st.integers(0, m - 1)), min_size=n, max_size=n))
    return Election(m, tuple(ballots), k)


@st.composite
def election_and_committee(draw, n_max=8, m_max=5, k_max=3, full=False):
    e = draw(elections(n_max, m_max, k_max))
    size = e.k if full else draw(st.integers(0, e.k))
    W = draw(st.lists(st.integers(0, e.m - 1), min_size=size, max_size=size, unique=True))
    return e, frozenset(W)
