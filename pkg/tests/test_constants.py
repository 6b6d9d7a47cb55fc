import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turanlab import constants as C
from turanlab.errors import OmegaOutOfRange

mpmath.mp.dps = 40


def mp_kappa(a, d):
    s = mpmath.sin(a)
    return s**2 / (2000 * d * mpmath.log(256 / s))


def mp_mu(a, q, d):
    s = mpmath.sin(a)
    return 1 / (2 * mp_kappa(a, d) ** (-q) + (1 + 128 / s**2) * (8 * d / s) ** q)


def test_lambda_closed_form():
    assert C.lam(2) == pytest.approx((24 * math.pi) ** -0.5, rel=1e-15)
    assert C.lam(1) == pytest.approx(1 / (16 * math.pi), rel=1e-15)


def test_theta_defining_relation():
    for a in np.linspace(0.01, math.pi / 2, 50):
        t = C.theta(a)
        assert 8 * math.sin(2 * t) == pytest.approx(math.sin(a), rel=1e-13)
    assert C.theta(math.pi / 2) == pytest.approx(0.0626639, abs=1e-7)


def test_tne_constant_value_and_omega_range():
    assert C.tne_constant(math.pi / 2, C.OMEGA_MAX * (1 - 1e-16), 1.0) == pytest.approx(0.0005, rel=1e-12)
    for bad in (0.0, -1.0, C.OMEGA_MAX, 3.0):
        with pytest.raises(OmegaOutOfRange):
            C.tne_constant(1.0, bad, 1.0)


def test_kappa_mu_against_mpmath():
    a = math.pi / 2
    assert C.kappa(a, 1.0) == pytest.approx(9.017e-5, abs=5e-9)
    assert C.mu(a, 2, 1.0) == pytest.approx(4.07e-9, abs=5e-12)  # three significant figures
    for a in (1e-3, 0.3, math.pi / 3, math.pi / 2):
        for q in (0.5, 1, 2, 5):
            for d in (0.5, 1, 7):
                assert C.kappa(a, d) == pytest.approx(float(mp_kappa(mpmath.mpf(a), d)), rel=1e-13)
                assert C.mu(a, q, d) == pytest.approx(float(mp_mu(mpmath.mpf(a), q, d)), rel=1e-12)


def test_mu_tiny_angle_no_overflow():
    v = C.mu(1e-3, 8, 100.0)
    assert 0 < v < 1e-90
    assert v == pytest.approx(float(mp_mu(mpmath.mpf(1e-3), 8, 100)), rel=1e-12)


@given(st.floats(1e-4, math.pi / 2), st.floats(0.1, 10), st.floats(0.01, 100))
@settings(max_examples=200, deadline=None)
def test_mu_positive(a, q, d):
    assert C.mu(a, q, d) > 0 or float(mp_mu(mpmath.mpf(a), q, d)) < 1e-300


def test_upper_constant():
    assert C.upper_constant(2) == pytest.approx(653.77, abs=0.01)
    r = math.sqrt(11)
    assert C.upper_constant(2) == pytest.approx(121 * (8 + 2 * r) / 10 * math.sqrt(7 + 2 * r), rel=1e-14)


def test_monotonicity_grids():
    om = np.linspace(0, C.OMEGA_MAX, 102)[1:-1]
    vals = [C.tne_constant(1.0, w, 1.0) for w in om]
    assert all(x < y for x, y in zip(vals, vals[1:]))
    al = np.linspace(0, math.pi / 2, 101)[1:]
    vals = [C.kappa(a, 1.0) for a in al]
    assert all(x < y for x, y in zip(vals, vals[1:]))
    qs = np.linspace(0.05, 10, 100)
    vals = [C.lam(q) for q in qs]
    assert all(x < y for x, y in zip(vals, vals[1:]))


def test_decay_n0_brute_force():
    for q in (0.5, 1, 2, 4):
        n = C.decay_n0(q)
        assert 2.0**-n < C.lam(q) * n ** (-2 / q)
        assert all(not 2.0**-m < C.lam(q) * m ** (-2 / q) for m in range(1, n))
    assert C.decay_n0(2) == 6


def test_n0_clauses():
    assert C.n0(2, clauses=("corner_decay",)) == (6, "corner_decay")
    assert C.n0(2, clauses=("min_degree", "corner_decay")) == (8, "min_degree")
    assert C.n0(2, 1.0, 1.0) == (32, "depth")
    # unit square: d = sqrt 2, h = 1 gives 32 * 4 exactly
    assert C.n0(2, math.sqrt(2), 1.0) == (128, "depth")
    with pytest.raises(ValueError):
        C.n0(2)
    assert C.n0(2, clauses=()) == (1, "none")


def test_constants_bundle():
    b = C.constants(math.pi / 2, 2, 1.0, omega=1.0)
    assert b.C == pytest.approx(C.tne_constant(math.pi / 2, 1.0, 1.0))
    assert b.n0 == 8 and b.n0_clause == "min_degree"
    assert set(b.to_dict()) >= {"lam", "theta", "kappa", "mu", "Cq"}
    nb = C.constants(None, 1, 2.0)
    assert nb.theta is None and nb.Cq == C.upper_constant(1)
    with pytest.raises(ValueError):
        C.constants(2.0, 2, 1.0)
    with pytest.raises(OmegaOutOfRange):
        C.constants(1.0, 2, 1.0, omega=5.0)
