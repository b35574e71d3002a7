import re
from dataclasses import replace

import pytest

from droopjr import Election, quota_report
from droopjr.harness import (
    CORPUS,
    COLUMNS,
    ExperimentRecord,
    GridConfig,
    GridPoint,
    WitnessRegression,
    WitnessResult,
    emit_csv,
    emit_plot,
    parse_csv,
    run_experiment,
    summarize,
    witness_corpus,
)
from droopjr.harness.experiments import MES_BARE, MES_COMPLETED, RANDOM, VERDICTS, grid_values
from droopjr.harness.plot import MARGIN_B, MARGIN_L, MARGIN_R, MARGIN_T, PANEL_H, PANEL_W, to_plot
from droopjr.sampling import IC, NOISE, RESAMPLING, URN


def small_config(experiment=1, reps=2, workers=1, seed=3, **kw):
    kw.setdefault("models", (NOISE, URN))
    kw.setdefault("ps", (0.4,))
    kw.setdefault("step", 0.5)
    return GridConfig.preset(experiment, seed=seed, workers=workers, repetitions=reps, **kw)


@pytest.fixture(scope="module")
def records():
    return list(run_experiment(small_config()))


def test_record_fields():
    assert COLUMNS == (
        "experiment", "model", "p", "param", "m", "n", "k", "rep", "source",
        "jr", "droop_jr", "ejr_plus", "droop_ejr_plus", "seed",
    )
    assert len(COLUMNS) == 14


def test_record_rejects_droop_without_hare():
    with pytest.raises(AssertionError):
        ExperimentRecord(1, IC, 0.5, None, 5, 5, 2, 0, RANDOM, False, True, True, True, 0)
    with pytest.raises(AssertionError):
        ExperimentRecord(1, IC, 0.5, None, 5, 5, 2, 0, RANDOM, True, True, False, True, 0)


def test_presets():
    full = GridConfig.preset(1, scale=1)
    assert full.repetitions == 400
    assert len(full.points) == 3 * 4 * 100
    assert {(pt.m, pt.n, pt.k) for pt in full.points} == {(50, 500, 10)}
    assert {pt.p for pt in full.points} == {0.2, 0.4, 0.6, 0.8}
    assert sorted({pt.param for pt in full.points})[:2] == [0.01, 0.02]
    desk = GridConfig.preset(1)
    assert desk.repetitions == 50 and len(desk.points) == 3 * 4 * 20
    assert GridConfig.preset(2).source == MES_COMPLETED
    assert GridConfig.preset(2, bare_mes=True).source == MES_BARE
    exp3 = GridConfig.preset(3, scale=1)
    assert exp3.repetitions == 500
    assert {pt.k for pt in exp3.points} == set(range(1, 10))
    assert {pt.m for pt in exp3.points} == {50, 100, 200}
    assert {pt.n for pt in exp3.points} == {100}
    assert GridConfig.preset(1, scale=0.5).repetitions == 200
    with pytest.raises(ValueError):
        GridConfig.preset(4)
    with pytest.raises(ValueError):
        GridConfig.preset(1, scale=0)


def test_grid_values():
    assert grid_values(0.05)[0] == 0.05 and grid_values(0.05)[-1] == 1.0
    assert len(grid_values(0.01)) == 100


def test_zero_repetitions_give_header_only_csv():
    recs = list(run_experiment(small_config(reps=0)))
    assert recs == []
    assert emit_csv(recs) == ",".join(COLUMNS) + "\n"


def test_csv_round_trip(records):
    text = emit_csv(records)
    lines = text.splitlines()
    assert len(lines) == len(records) + 1
    assert all(len(line.split(",")) == len(COLUMNS) for line in lines)
    assert parse_csv(text) == records
    assert set(re.findall(r",([01]),([01]),([01]),([01]),\d+$", lines[1])[0]) <= {"0", "1"}
    with pytest.raises(ValueError):
        parse_csv("a,b\n1,2\n")


def test_records_are_ordered_and_deterministic(records):
    cfg = small_config()
    assert len(records) == len(cfg.points) * cfg.repetitions
    assert [(r.model, r.param, r.rep) for r in records] == [
        (pt.model, pt.param, rep) for pt in cfg.points for rep in range(cfg.repetitions)
    ]
    assert list(run_experiment(cfg)) == records
    other = list(run_experiment(small_config(seed=4)))
    assert [r.seed for r in other] != [r.seed for r in records]


def test_parallel_matches_serial(records):
    assert list(run_experiment(small_config(workers=2))) == records


def test_droop_fraction_never_exceeds_hare(records):
    for fr in summarize(records).values():
        assert fr["droop_jr"] <= fr["jr"]
        assert fr["droop_ejr_plus"] <= fr["ejr_plus"]
        assert all(0 <= fr[v] <= 1 for v in VERDICTS)


def test_experiment_two_small_grid():
    for bare in (False, True):
        cfg = small_config(2, reps=1, models=(RESAMPLING,), ps=(0.6,), bare_mes=bare)
        recs = list(run_experiment(cfg))
        assert len(recs) == 2
        assert all(r.source == (MES_BARE if bare else MES_COMPLETED) for r in recs)
        # equal shares provides Hare JR and EJR+
        assert all(r.jr and r.ejr_plus for r in recs)


def test_jr_and_droop_jr_coincide_at_n100_k10():
    e = Election(10, tuple(frozenset() for _ in range(100)), 10)
    report = quota_report(e)
    assert report.hare == report.droop == 10
    points = tuple(GridPoint(IC, p, None, 30, 100, 10) for p in (0.05, 0.1, 0.2))
    cfg = GridConfig(3, points, 8, seed=1)
    recs = list(run_experiment(cfg))
    assert all(r.jr == r.droop_jr for r in recs)
    assert any(not r.jr for r in recs)


def test_experiment_three_records():
    cfg = GridConfig.preset(3, repetitions=1, ps=(0.1,), seed=2)
    recs = list(run_experiment(cfg))
    assert len(recs) == 27
    assert {r.k for r in recs} == set(range(1, 10))
    assert all(r.param is None and r.model == IC for r in recs)
    assert parse_csv(emit_csv(recs)) == recs


# plots


def test_plot_structure(records):
    svg = emit_plot(records, title="demo")
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    panels = svg.count('<g class="panel">')
    assert panels == 2
    assert svg.count('class="series"') == panels * 4
    for label in ("JR", "Droop-JR", "EJR+", "Droop-EJR+"):
        assert f'data-series="{label}"' in svg
    assert ">phi<" in svg and ">alpha<" in svg
    assert "http" not in svg.replace('xmlns="http://www.w3.org/2000/svg"', "")


def test_plot_points_inside_plot_area(records):
    svg = emit_plot(records)
    for pts in re.findall(r'class="series" data-series="[^"]+" points="([^"]+)"', svg):
        for pair in pts.split():
            x, y = map(float, pair.split(","))
            ox = (x // PANEL_W) * PANEL_W
            assert ox + MARGIN_L - 1e-6 <= x <= ox + PANEL_W - MARGIN_R + 1e-6
    for ox, oy in ((0, 0), (PANEL_W, 40)):
        x0, y0 = to_plot(0, 0, ox, oy)
        x1, y1 = to_plot(1, 1, ox, oy)
        assert (x0, y0) == (ox + MARGIN_L, oy + PANEL_H - MARGIN_B)
        assert (x1, y1) == (ox + PANEL_W - MARGIN_R, oy + MARGIN_T)


def test_plot_single_point_and_empty():
    one = [r for r in run_experiment(small_config(reps=1, models=(NOISE,), step=1.0))]
    svg = emit_plot(one)
    pts = re.findall(r'points="([^"]+)"', svg)
    assert pts and all(len(p.split()) == 1 for p in pts)
    empty = emit_plot([])
    assert "no data" in empty and 'class="series"' not in empty


def test_plot_default_series_for_experiment_two(records):
    recs = [replace(r, experiment=2) for r in records]
    svg = emit_plot(recs)
    assert 'data-series="Droop-JR"' in svg and 'data-series="JR"' not in svg


def test_plot_rejects_mixed_experiments(records):
    mixed = records + [replace(records[0], experiment=3)]
    with pytest.raises(ValueError):
        emit_plot(mixed)


# witness corpus


@pytest.mark.parametrize("name", list(CORPUS))
def test_corpus_entry(name):
    res = witness_corpus(name)
    assert res.name == name
    assert res.lines and all(line.startswith("ok") for line in res.lines)


def test_corpus_has_every_scenario():
    assert len(CORPUS) == 8
    with pytest.raises(ValueError):
        witness_corpus("nope")


def test_regressions_raise():
    r = WitnessResult("x", "claim")
    r.expect(True, "fine")
    with pytest.raises(WitnessRegression):
        r.expect(False, "broken")
    assert r.lines[-1].startswith("FAIL")
