"""Monte-Carlo experiments: how often do committees satisfy (Droop-)JR and (Droop-)EJR+?

Experiment 1 draws a uniformly random committee, experiment 2 takes the
committee chosen by equal shares, and experiment 3 repeats experiment 1
on impartial-culture profiles over a range of ``m`` and ``k``.

Every (grid point, repetition) pair is an independent work item whose
seed is ``derive_seed(master, experiment, point_index, repetition)``, so
the output does not depend on the worker count.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import Iterable, Iterator

from ..axioms import AxiomId, check
from ..core import DROOP, HARE
from ..rules import mes, mes_completed
from ..sampling import IC, NOISE, RESAMPLING, URN, SamplerConfig, derive_seed, random_committee, sample_election

RANDOM = "random"
MES_COMPLETED = "mes-completed"
MES_BARE = "mes"
SOURCES = (RANDOM, MES_COMPLETED, MES_BARE)

FULL_REPS = {1: 400, 2: 400, 3: 500}
DESK_REPS = 50
FULL_STEP = 0.01
DESK_STEP = 0.05

VERDICTS = ("jr", "droop_jr", "ejr_plus", "droop_ejr_plus")


@dataclass(frozen=True)
class ExperimentRecord:
    """One sampled election, one committee, four verdicts."""

    experiment: int
    model: str
    p: float
    param: float | None
    m: int
    n: int
    k: int
    rep: int
    source: str
    jr: bool
    droop_jr: bool
    ejr_plus: bool
    droop_ejr_plus: bool
    seed: int

    def __post_init__(self):
        # Droop versions are at least as demanding as Hare ones
        assert not self.droop_jr or self.jr, f"Droop-JR without JR in {self}"
        assert not self.droop_ejr_plus or self.ejr_plus, f"Droop-EJR+ without EJR+ in {self}"


COLUMNS = tuple(f.name for f in fields(ExperimentRecord))


@dataclass(frozen=True)
class GridPoint:
    model: str
    p: float
    param: float | None
    m: int
    n: int
    k: int


def grid_values(step: float) -> tuple[float, ...]:
    count = round(1 / step)
    return tuple(round(step * i, 10) for i in range(1, count + 1))


@dataclass(frozen=True)
class GridConfig:
    """A full experiment description.

    Use :meth:`preset` for the standard grids. ``scale=None`` is the desk
    preset (50 repetitions, parameter step 0.05); a numeric ``scale``
    multiplies the full-grid repetition count, and ``scale=1`` also
    restores the full 0.01 parameter step.
    """

    experiment: int
    points: tuple[GridPoint, ...]
    repetitions: int
    workers: int = 1
    seed: int = 0
    scale: float | None = None
    source: str = RANDOM

    def __post_init__(self):
        if self.experiment not in (1, 2, 3):
            raise ValueError("experiment id must be 1, 2 or 3")
        if self.repetitions < 0 or self.workers < 1:
            raise ValueError("need repetitions >= 0 and workers >= 1")
        if self.source not in SOURCES:
            raise ValueError(f"unknown committee source {self.source!r}")

    @classmethod
    def preset(
        cls,
        experiment: int,
        scale: float | None = None,
        seed: int = 0,
        workers: int = 1,
        repetitions: int | None = None,
        step: float | None = None,
        models: Iterable[str] | None = None,
        ps: Iterable[float] | None = None,
        bare_mes: bool = False,
    ) -> "GridConfig":
        if experiment not in (1, 2, 3):
            raise ValueError("experiment id must be 1, 2 or 3")
        if scale is None:
            reps, st = DESK_REPS, DESK_STEP
        else:
            if scale <= 0:
                raise ValueError("scale must be positive")
            reps = max(1, round(FULL_REPS[experiment] * scale))
            st = FULL_STEP if scale >= 1 else DESK_STEP
        if repetitions is not None:
            reps = repetitions
        if step is not None:
            st = step
        points = []
        if experiment in (1, 2):
            for model in models or (RESAMPLING, NOISE, URN):
                for p in ps or (0.2, 0.4, 0.6, 0.8):
                    for param in grid_values(st):
                        points.append(GridPoint(model, p, param, 50, 500, 10))
            source = RANDOM if experiment == 1 else (MES_BARE if bare_mes else MES_COMPLETED)
        else:
            for m in (50, 100, 200):
                for k in range(1, 10):
                    for p in ps or grid_values(st):
                        points.append(GridPoint(IC, p, None, m, 100, k))
            source = RANDOM
        return cls(experiment, tuple(points), reps, workers, seed, scale, source)

    def items(self):
        for idx, point in enumerate(self.points):
            for rep in range(self.repetitions):
                yield (self.experiment, self.source, self.seed, idx, point, rep)


def evaluate(item) -> ExperimentRecord:
    """Run one work item: sample, pick a committee, check the four axioms."""
    experiment, source, master, idx, point, rep = item
    seed = derive_seed(master, experiment, idx, rep)
    cfg = SamplerConfig(point.model, point.p, point.m, point.n, derive_seed(seed, 0), point.param)
    e = sample_election(cfg, point.k)
    if source == RANDOM:
        W = random_committee(point.m, point.k, derive_seed(seed, 1))
    elif source == MES_COMPLETED:
        W = mes_completed(e).committee
    else:
        W = mes(e).committee
    verdict = {
        "jr": check(e, W, AxiomId.JR, HARE) is None,
        "droop_jr": check(e, W, AxiomId.JR, DROOP) is None,
        "ejr_plus": check(e, W, AxiomId.EJRplus, HARE) is None,
        "droop_ejr_plus": check(e, W, AxiomId.EJRplus, DROOP) is None,
    }
    if source != RANDOM:
        assert verdict["jr"] and verdict["ejr_plus"], f"equal shares failed Hare JR/EJR+ (seed {seed})"
    return ExperimentRecord(
        experiment, point.model, point.p, point.param, point.m, point.n, point.k,
        rep, source, seed=seed, **verdict,
    )


def run_experiment(cfg: GridConfig) -> Iterator[ExperimentRecord]:
    """Records in (grid point, repetition) order, independent of ``cfg.workers``."""
    items = cfg.items()
    if cfg.workers == 1:
        yield from map(evaluate, items)
        return
    total = len(cfg.points) * cfg.repetitions
    chunk = max(1, math.ceil(total / (cfg.workers * 8)))
    with ProcessPoolExecutor(cfg.workers) as pool:
        yield from pool.map(evaluate, items, chunksize=chunk)


def emit_csv(records: Iterable[ExperimentRecord]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in records:
        row = []
        for v in astuple(r):
            if isinstance(v, bool):
                row.append(int(v))
            elif v is None:
                row.append("")
            else:
                row.append(v)
        w.writerow(row)
    return out.getvalue()


def parse_csv(text: str) -> list[ExperimentRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != COLUMNS:
        raise ValueError("unexpected CSV header")
    out = []
    for row in reader:
        out.append(
            ExperimentRecord(
                experiment=int(row["experiment"]),
                model=row["model"],
                p=float(row["p"]),
                param=float(row["param"]) if row["param"] else None,
                m=int(row["m"]),
                n=int(row["n"]),
                k=int(row["k"]),
                rep=int(row["rep"]),
                source=row["source"],
                jr=row["jr"] == "1",
                droop_jr=row["droop_jr"] == "1",
                ejr_plus=row["ejr_plus"] == "1",
                droop_ejr_plus=row["droop_ejr_plus"] == "1",
                seed=int(row["seed"]),
            )
        )
    return out


def point_key(r: ExperimentRecord):
    return (r.model, r.p, r.param, r.m, r.n, r.k)


def summarize(records: Iterable[ExperimentRecord]) -> dict:
    """Fraction of satisfied records per grid point and verdict."""
    counts: dict = {}
    for r in records:
        entry = counts.setdefault(point_key(r), [0, 0, 0, 0, 0])
        entry[0] += 1
        for j, name in enumerate(VERDICTS, start=1):
            entry[j] += getattr(r, name)
    return {key: {name: c[j] / c[0] for j, name in enumerate(VERDICTS, start=1)} for key, c in counts.items()}
