import csv
import io
import math
import warnings
from dataclasses import replace

import pytest

from turanlab.errors import NotConverged
from turanlab.quad import oscillation
from turanlab.poly import PolyByZeros
from turanlab.search import CSV_COLUMNS, SearchConfig, minimize_oscillation, rows_to_csv, start_points, sweep

FAST = SearchConfig(restarts=4, max_evals=300)


def test_square_degree_one(unit_square):
    p, row = minimize_oscillation(unit_square, replace(FAST, n=1, max_evals=400))
    # the centroid start gives sqrt 3; a corner zero gives sqrt 1.2, the minimum over K
    assert row.best <= math.sqrt(3)
    assert row.best == pytest.approx(math.sqrt(1.2), rel=1e-6)
    assert row.best == pytest.approx(oscillation(p, unit_square, 2), rel=1e-12)
    assert row.lower_cK_n <= row.best <= row.upper_Cq_n


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(n=0)
    with pytest.raises(ValueError):
        SearchConfig(restarts=0)
    with pytest.raises(ValueError):
        SearchConfig(q=0)


def test_deterministic(triangle):
    cfg = replace(FAST, n=3, seed=7)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotConverged)
        p1, r1 = minimize_oscillation(triangle, cfg)
        p2, r2 = minimize_oscillation(triangle, cfg)
    d1, d2 = r1.to_dict(), r2.to_dict()
    d1.pop("wall_time"), d2.pop("wall_time")
    assert d1 == d2
    assert (p1.zeros == p2.zeros).all()


def test_more_restarts_never_worse(triangle):
    vals = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotConverged)
        for r in (1, 3, 6):
            vals.append(minimize_oscillation(triangle, replace(FAST, n=3, restarts=r, seed=1))[1].best)
    assert vals[0] >= vals[1] >= vals[2]


def test_starts(triangle):
    kinds = [start_points(triangle, 4, i, 0)[0] for i in range(6)]
    assert kinds == ["centroid", "fekete", "boundary", "corner", "random", "random"]
    a = start_points(triangle, 4, 5, 0)[1]
    b = start_points(triangle, 4, 5, 0)[1]
    assert (a == b).all()


def test_found_minimum_beats_witness(unit_square):
    n = 4
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotConverged)
        _, row = minimize_oscillation(unit_square, replace(FAST, n=n))
    witness = oscillation(PolyByZeros([0j] * n), unit_square, 2)
    assert row.best <= witness * (1 + 1e-9)


def test_sweep_rows_and_csv(unit_square):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotConverged)
        rows = sweep(unit_square, [2, 3], [0.5, 2], replace(FAST, restarts=2, max_evals=150))
    assert [(r.n, r.q) for r in rows] == [(2, 0.5), (3, 0.5), (2, 2.0), (3, 2.0)]
    for r in rows:
        assert r.lower_cK_n <= r.best
        assert r.best_over_n == pytest.approx(r.best / r.n)
    text = rows_to_csv(rows)
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert list(parsed[0]) == CSV_COLUMNS and len(parsed) == 4
    assert float(parsed[0]["best"]) == rows[0].best
    assert "wall_time" not in rows_to_csv(rows, timing=False)
    with pytest.raises(ValueError):
        sweep(unit_square, [0], [2])
