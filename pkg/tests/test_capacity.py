import math
import warnings

import mpmath
import numpy as np
import pytest
from numpy.polynomial import legendre

from turanlab.capacity import (
    Disk,
    IntervalUnion,
    Segment,
    chebyshev_number,
    fekete_diameter,
    leja_points,
    polya_check,
    segment_transfinite_diameter,
    transfinite_diameter_regular,
)
from turanlab.geom import regular_polygon


def mp_regular(k, h=1):
    g = mpmath.gamma
    return float(g(mpmath.mpf(1) / k) / (mpmath.sqrt(mpmath.pi) * mpmath.mpf(2) ** (1 + mpmath.mpf(2) / k)
                                        * g(mpmath.mpf(1) / 2 + mpmath.mpf(1) / k)) * h)


def delta_of(z):
    k = len(z)
    iu = np.triu_indices(k, 1)
    return math.exp(2 * np.log(np.abs(z[:, None] - z[None, :])[iu]).sum() / (k * (k - 1)))


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7, 8, 12, 50])
def test_regular_closed_form_vs_mpmath(k):
    assert transfinite_diameter_regular(k, 1.0) == pytest.approx(mp_regular(k), rel=1e-13)
    assert transfinite_diameter_regular(k, 2.5) == pytest.approx(2.5 * mp_regular(k), rel=1e-13)


def test_regular_threshold_at_seven():
    assert transfinite_diameter_regular(4) == pytest.approx(0.5901702, abs=1e-7)
    vals = [transfinite_diameter_regular(k) for k in range(3, 40)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert transfinite_diameter_regular(6) < 1 < transfinite_diameter_regular(7)
    # side 1 regular k-gon has circumradius 1/(2 sin(pi/k)) and capacity tends to it
    k = 400
    assert transfinite_diameter_regular(k) == pytest.approx(1 / (2 * math.sin(math.pi / k)), rel=1e-3)


def test_closed_form_rejects_bad_input():
    with pytest.raises(ValueError):
        transfinite_diameter_regular(2)
    with pytest.raises(ValueError):
        transfinite_diameter_regular(4, 0.0)


@pytest.mark.parametrize("k", [3, 5, 8, 12])
def test_segment_fekete_matches_gauss_lobatto(k):
    # Fekete points of [-1, 1] are +-1 and the zeros of P'_{k-1}
    inner = legendre.Legendre.basis(k - 1).deriv().roots()
    oracle = np.concatenate([[-1.0], np.sort(inner.real), [1.0]])
    res = fekete_diameter(Segment(-1, 1), k)
    assert res.converged
    assert np.sort(res.points.real) == pytest.approx(oracle, abs=1e-6)
    assert res.delta == pytest.approx(delta_of(oracle.astype(complex)), rel=1e-10)
    assert res.delta > segment_transfinite_diameter(2.0)


@pytest.mark.parametrize("k", [2, 3, 7, 16])
def test_disk_fekete_is_roots_of_unity(k):
    res = fekete_diameter(Disk(), k)
    assert res.delta == pytest.approx(k ** (1 / (k - 1)), rel=1e-10)


def test_disk_three_points_equilateral():
    res = fekete_diameter(Disk(), 3)
    d = np.abs(res.points[:, None] - res.points[None, :])[np.triu_indices(3, 1)]
    # the objective is flat to second order at its maximiser, so positions carry ~sqrt(tol)
    assert d == pytest.approx([math.sqrt(3)] * 3, rel=1e-6)
    assert res.delta == pytest.approx(math.sqrt(3), rel=1e-12)


def test_fekete_scales_and_translates():
    sq = regular_polygon(4, 1.0)
    big = regular_polygon(4, 3.0, center=2 - 1j)
    a = fekete_diameter(sq, 10).delta
    assert fekete_diameter(big, 10).delta == pytest.approx(3 * a, rel=1e-6)
    assert a > transfinite_diameter_regular(4)


def test_leja_on_circle_greedy_order():
    # greedy: after a point and its antipode every remaining point ties, the grid picks a quarter turn
    z = leja_points(Disk(), 3, grid=400)
    ang = np.angle(z / z[0])
    assert abs(abs(ang[1]) - math.pi) < 1e-12
    assert abs(abs(ang[2]) - math.pi / 2) < 1e-12


def test_leja_on_segment_starts_at_endpoint():
    z = leja_points(Segment(-1, 1), 3, grid=401)
    assert sorted(np.abs(z.real[:2])) == pytest.approx([1, 1])
    assert z[2] == pytest.approx(0)


@pytest.mark.filterwarnings("ignore::turanlab.errors.NotConverged")
def test_chebyshev_numbers():
    res = chebyshev_number(Segment(-1, 1), 3)
    assert res.value == pytest.approx(0.25 ** (1 / 3), rel=1e-4)
    assert chebyshev_number(Disk(), 4).value == pytest.approx(1.0, rel=1e-4)
    with pytest.raises(ValueError):
        chebyshev_number(Disk(), 0)


def test_fekete_chebyshev_sandwich():
    # delta_k <= capacity <= Chebyshev number for any compact
    sq = regular_polygon(4, 1.0)
    cap = transfinite_diameter_regular(4)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert fekete_diameter(sq, 6).delta >= cap
        assert chebyshev_number(sq, 4).value >= cap - 1e-6


def test_polya_random_unions():
    rng = np.random.default_rng(11)
    for _ in range(3):
        a = np.sort(rng.uniform(-2, 2, 6))
        J = IntervalUnion(tuple(zip(a[::2], a[1::2])))
        rep = polya_check(J, k=12)
        assert rep.passed and rep.lhs >= J.measure / 4


def test_interval_union_merges_and_measure_zero():
    J = IntervalUnion(((0, 1), (0.5, 2), (3, 3)))
    assert J.intervals == ((0.0, 2.0), (3.0, 3.0))
    assert J.measure == 2.0
    pts = IntervalUnion(((0, 0), (1, 1), (3, 3)))
    res = fekete_diameter(pts, 3)
    assert res.delta == pytest.approx((1 * 3 * 2) ** (1 / 3))
    assert fekete_diameter(pts, 4).delta == 0.0
    with pytest.raises(ValueError):
        IntervalUnion(())


def test_fekete_rejects_small_k():
    with pytest.raises(ValueError):
        fekete_diameter(Disk(), 1)
