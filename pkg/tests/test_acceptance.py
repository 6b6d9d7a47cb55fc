"""Acceptance criteria, one test and one printed PASS/FAIL line per criterion.

Run alone with ``pytest -m acceptance tests/test_acceptance.py`` or as a
script.  Tolerances are the ones the criteria state.
"""
import csv
import io
import json
import math
import sys
import time
import warnings
from dataclasses import replace

import numpy as np
import pytest

from turanlab import cli, constants
from turanlab.capacity import Disk, IntervalUnion, Segment, fekete_diameter, polya_check, transfinite_diameter_regular
from turanlab.errors import NotConverged
from turanlab.geom import regular_polygon, validate, vertex_data
from turanlab.poly import PolyByZeros, deriv_eval, evaluate
from turanlab.search import SearchConfig, sweep
from turanlab.verify import (
    FAMILIES,
    random_disk_polynomial,
    random_polynomial,
    random_tne_case,
    upper_witness,
    verify_acute,
    verify_disk,
    verify_g_mass,
    verify_nikolskii,
    verify_tne,
)

pytestmark = pytest.mark.acceptance

SQUARE = validate([0, 1, 1 + 1j, 1j])
TRIANGLE = regular_polygon(3, 1.0)


@pytest.fixture
def report(capsys):
    def emit(tag, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {tag}: {detail}", flush=True)
        return ok

    return emit


def test_c01_disk_turan_bound(report):
    t0 = time.perf_counter()
    worst = math.inf
    for n in range(1, 31):
        for s in range(100):
            rep = verify_disk(random_disk_polynomial(n, np.random.default_rng([1, n, s])), samples=1000)
            worst = min(worst, rep.lhs)
    dt = time.perf_counter() - t0
    ok = worst >= 0.5 - 1e-9 and dt < 30
    report("1", ok, f"min |p'|/(n|p|) = {worst:.12f} over 3000 zero sets (>= 0.5 - 1e-9), {dt:.1f} s (< 30 s)")
    assert ok


def test_c02_equality_witness(report):
    p = PolyByZeros([1, -1])
    z = np.array([1j])
    ratio = float(abs(deriv_eval(p, z)[0] / evaluate(p, z)[0]))
    rep = verify_disk(p, points=z)
    ok = abs(ratio - p.n / 2) <= 1e-12 and abs(rep.lhs - 0.5) <= 1e-12
    report("2", ok, f"|p'/p(i)| = {ratio!r} against n/2 = 1 (1e-12)")
    assert ok


@pytest.fixture(scope="module")
def fekete40():
    t0 = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotConverged)
        out = {
            "segment": fekete_diameter(Segment(-1, 1), 40).delta,
            "circle": fekete_diameter(Disk(), 40).delta,
            "square": fekete_diameter(SQUARE, 40).delta,
        }
    out["time"] = time.perf_counter() - t0
    return out


def test_c03a_segment_delta40(report, fekete40):
    v = fekete40["segment"]
    ok = 0.5 <= v <= 0.51 and fekete40["time"] < 120
    report("3a", ok, f"delta_40(segment of length 2) = {v:.6f}, required in [0.5, 0.51]")
    assert ok


def test_c03b_circle_delta40(report, fekete40):
    v = fekete40["circle"]
    ok = 1.0 <= v <= 1.02
    report("3b", ok, f"delta_40(unit circle) = {v:.6f} (roots of unity give 40^(1/39) = {40 ** (1 / 39):.6f}), "
           "required in [1.0, 1.02]")
    assert ok


def test_c03c_square_delta40(report, fekete40):
    v = fekete40["square"]
    ref = transfinite_diameter_regular(4, 1.0)
    rel = abs(v - ref) / ref
    ok = rel <= 0.02
    report("3c", ok, f"delta_40(unit square) = {v:.6f} vs closed form {ref:.6f}: {100 * rel:.2f}% off (<= 2%)")
    assert ok


def test_c03d_closed_form_threshold(report):
    d6, d7 = transfinite_diameter_regular(6), transfinite_diameter_regular(7)
    ok = d6 <= 1 < d7 and all(transfinite_diameter_regular(k) <= 1 for k in range(3, 7))
    report("3d", ok, f"Delta(G_6) = {d6:.6f} <= 1 < Delta(G_7) = {d7:.6f}")
    assert ok


def test_c04_polya_bound(report):
    worst = math.inf
    fails = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotConverged)
        for s in range(20):
            rng = np.random.default_rng([4, s])
            m = int(rng.integers(1, 5))
            a = np.sort(rng.uniform(-3, 3, 2 * m))
            J = IntervalUnion(tuple(zip(a[::2], a[1::2])))
            rep = polya_check(J, k=30, seed=s)
            fails += not rep.passed
            worst = min(worst, rep.lhs / rep.rhs)
    ok = fails == 0
    report("4", ok, f"delta_30 >= |J|/4 on 20 unions, {fails} violations, min ratio {worst:.4f}")
    assert ok


def test_c05_nikolskii_and_g_mass(report):
    t0 = time.perf_counter()
    bad, worst_frac, worst_slack, cases = [], math.inf, math.inf, 0
    for K, name in ((SQUARE, "square"), (TRIANGLE, "triangle")):
        for q in (0.5, 1.0, 2.0):
            for s in range(200):
                rng = np.random.default_rng([5, int(2 * q), s, K.m])
                n = int(rng.integers(1, 31))
                p = random_polynomial(K, n, rng, FAMILIES[s % len(FAMILIES)])
                a = verify_nikolskii(p, K, q)
                g = verify_g_mass(p, K, q)
                cases += 1
                worst_slack = min(worst_slack, (a.lhs - a.rhs) / a.rhs)
                worst_frac = min(worst_frac, g.lhs)
                if not (a.passed and g.passed and g.lhs >= 0.5 - 1e-6):
                    bad.append((name, q, s))
    ok = not bad
    report("5", ok, f"{cases} cases, failures {bad[:3]}, min G-mass fraction {worst_frac:.6f} (>= 0.5 - 1e-6), "
           f"min relative Nikolskii slack {worst_slack:.3g} ({time.perf_counter() - t0:.0f} s)")
    assert ok


def test_c06_tilted_normal_estimate(report):
    right = validate([0, 1, 1 + 1j, 1j])
    sixty = TRIANGLE
    bad, applied, cases = [], 0, 0
    for K, name in ((right, "right angle"), (sixty, "60 degrees")):
        for s in range(100):
            rng = np.random.default_rng([6, K.m, s])
            n = (10, 20, 40)[s % 3]
            p = random_polynomial(K, n, rng, ("uniform", "boundary", "vertex", "fekete")[s % 4])
            zeta, J, omega = random_tne_case(K, 0, rng)
            rep = verify_tne(p, K, 0, zeta, J, omega)
            cases += 1
            applied += rep.extra.get("consequence_applies", False)
            if not rep.passed:
                bad.append((name, s))
    ok = not bad
    report("6", ok, f"{cases} cases, {applied} with |p(zeta)| >= ||p||_J (C n form asserted), failures {bad[:3]}")
    assert ok


def test_c07_acute_vertex(report):
    vd = vertex_data(TRIANGLE)[0]
    r = vd.R / 8
    bad, vacuous, cases = [], 0, 0
    clauses = set()
    for q in (1.0, 2.0):
        n0, clause = constants.n0(q, clauses=("min_degree", "corner_decay"))
        clauses.add(f"q={q:g}: n0={n0} ({clause})")
        for s in range(50):
            rng = np.random.default_rng([7, int(q), s])
            n = int(rng.integers(n0, 61))
            p = random_polynomial(TRIANGLE, n, rng, ("uniform", "boundary", "fekete", "centroid")[s % 4])
            rep = verify_acute(p, TRIANGLE, 0, r, q)
            cases += 1
            vacuous += rep.status == "vacuous"
            if not rep.passed:
                bad.append((q, s))
    ok = not bad
    report("7", ok, f"{cases} cases at r = R_V/8 = {r:.6g}, {vacuous} vacuous, failures {bad[:3]}; "
           + ", ".join(sorted(clauses)))
    assert ok


@pytest.fixture(scope="module")
def sweeps():
    cfg = SearchConfig(restarts=8, seed=0)
    out = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotConverged)
        for K, name in ((TRIANGLE, "triangle"), (SQUARE, "square")):
            out[name] = sweep(K, [2, 4, 8, 16, 32], [2.0], cfg)
    return out


def test_c08a_bracket(report, sweeps):
    lines, ok = [], True
    for name, rows in sweeps.items():
        for r in rows:
            tol = 3 * r.audited_tol * r.best
            good = r.best >= r.lower_cK_n - tol and (not r.upper_applies or r.best <= r.upper_Cq_n + tol)
            ok &= good
        lines.append(f"{name}: c(K) n <= best" + (" <= C_2 (w/d^2) n where asserted"
                                                  if any(r.upper_applies for r in rows) else ""))
    c2 = constants.upper_constant(2)
    report("8a", ok, "; ".join(lines) + f"; C_2 = {c2:.2f}")
    assert ok


def test_c08b_ratio_band(report, sweeps):
    ok, parts = True, []
    for name, rows in sweeps.items():
        ratios = [r.best_over_n for r in rows]
        floor = 0.9 * min(ratios[:2])
        good = min(ratios) > 0 and min(ratios) >= floor
        ok &= good
        parts.append(f"{name} best/n = " + ", ".join(f"{x:.3f}" for x in ratios)
                     + f" (min {min(ratios):.3f} vs 0.9 x small-n min {floor:.3f})")
    report("8b", ok, "; ".join(parts))
    assert ok


def test_c09_diameter_witness(report):
    worst = 0.0
    for K in (TRIANGLE, SQUARE):
        for n in (5, 10, 50):
            _, rep = upper_witness(K, n)
            worst = max(worst, rep.extra["rel_err"])
    ok = worst <= 1e-12
    report("9", ok, f"sup-norm ratio of (z - z0)^n equals n/d, max relative error {worst:.2e} (<= 1e-12)")
    assert ok


def _drop_wall_time(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return [{k: v for k, v in r.items() if k != "wall_time"} for r in rows]


def test_c10_cli_determinism(report, tmp_path, capsys):
    poly = tmp_path / "tri.json"
    poly.write_text(json.dumps({"vertices": [[float(z.real), float(z.imag)] for z in TRIANGLE.vertices]}))
    runs = {
        "verify": ["verify", "tne", "--polygon", poly, "--n", 12, "--count", 5, "--seed", 7],
        "verify-csv": ["verify", "g-mass", "--polygon", poly, "--n", 9, "--count", 5, "--seed", 7,
                       "--format", "csv"],
        "capacity": ["capacity", "--regular", 5, "--k", 12, "--seed", 7],
        "sweep": ["sweep", "--polygon", poly, "--n", "2,3", "--restarts", 2, "--max-evals", 200, "--seed", 7],
    }
    same = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotConverged)
        for name, argv in runs.items():
            outs = []
            for i in range(2):
                out = tmp_path / f"{name}{i}.out"
                assert cli.main([str(a) for a in argv] + ["--out", str(out)]) == 0
                outs.append(out.read_text())
            if name == "sweep":
                same[name] = _drop_wall_time(outs[0]) == _drop_wall_time(outs[1])
            else:
                same[name] = outs[0] == outs[1]
    capsys.readouterr()
    ok = all(same.values())
    report("10", ok, "repeated CLI runs identical apart from wall_time: "
           + ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in same.items()))
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-m", "acceptance"]))
