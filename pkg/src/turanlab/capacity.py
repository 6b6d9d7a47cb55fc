"""Numerical transfinite diameter of planar compacta.

Fekete points of a compact set lie on its outer boundary, so every set is
handled through a one-parameter *carrier*: a segment, a finite union of real
intervals, a circle, or a polygon boundary parametrised by arc length.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .errors import NotConverged
from .geom import Polygon
from .report import VerifierReport


@dataclass(frozen=True)
class Segment:
    a: complex
    b: complex


@dataclass(frozen=True)
class IntervalUnion:
    """Finite union of real intervals ``[a_i, b_i]`` (merged on construction)."""

    intervals: tuple

    def __post_init__(self):
        ivs = sorted((float(min(a, b)), float(max(a, b))) for a, b in self.intervals)
        if not ivs:
            raise ValueError("interval union must be nonempty")
        merged = [list(ivs[0])]
        for a, b in ivs[1:]:
            if a <= merged[-1][1]:
                merged[-1][1] = max(b, merged[-1][1])
            else:
                merged.append([a, b])
        object.__setattr__(self, "intervals", tuple(tuple(iv) for iv in merged))

    @property
    def measure(self) -> float:
        return math.fsum(b - a for a, b in self.intervals)


@dataclass(frozen=True)
class Disk:
    """Closed disk; its boundary circle is the carrier."""

    center: complex = 0j
    radius: float = 1.0


CompactSet = Union[Polygon, Segment, IntervalUnion, Disk]


class _Carrier:
    def __init__(self, length, periodic, point, grid):
        self.length = float(length)
        self.periodic = periodic
        self.point = point
        self._grid = grid

    def grid(self, k: int):
        """Parameters and points of a discretisation with about ``k`` points."""
        s = self._grid(k)
        return s, self.point(s)


def carrier(M: CompactSet) -> _Carrier:
    if isinstance(M, Segment):
        a, b = complex(M.a), complex(M.b)
        L = abs(b - a)
        return _Carrier(L, False, lambda s: a + np.asarray(s) / L * (b - a),
                        lambda k: np.linspace(0, L, k))
    if isinstance(M, Disk):
        c, r = complex(M.center), float(M.radius)
        L = 2 * math.pi * r
        return _Carrier(L, True, lambda s: c + r * np.exp(1j * np.asarray(s) / r),
                        lambda k: np.arange(k) * L / k)
    if isinstance(M, IntervalUnion):
        ivs = np.array(M.intervals, dtype=float)
        lens = ivs[:, 1] - ivs[:, 0]
        cum = np.concatenate([[0.0], np.cumsum(lens)])

        def point(s):
            s = np.asarray(s, dtype=float)
            idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(lens) - 1)
            return (ivs[idx, 0] + (s - cum[idx])).astype(complex)

        def grid(k):
            parts = []
            for j, L in enumerate(lens):
                cnt = max(2, int(round(k * L / max(cum[-1], 1e-300))))
                parts.append(cum[j] + np.linspace(0, L, cnt))
            return np.unique(np.concatenate(parts))

        return _Carrier(cum[-1], False, point, grid)
    if isinstance(M, Polygon):
        L = M.edge_lengths
        cum = np.concatenate([[0.0], np.cumsum(L)])
        per = cum[-1]

        def point(s):
            s = np.mod(np.asarray(s, dtype=float), per)
            idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, M.m - 1)
            return M.vertices[idx] + (s - cum[idx]) / L[idx] * M.edges[idx]

        def grid(k):
            parts = [cum[e] + np.linspace(0, L[e], max(2, int(round(k * L[e] / per))), endpoint=False)
                     for e in range(M.m)]
            return np.concatenate(parts)

        return _Carrier(per, True, point, grid)
    raise TypeError(f"unsupported compact set {type(M).__name__}")


def set_diameter(M: CompactSet) -> float:
    if isinstance(M, Segment):
        return abs(complex(M.b) - complex(M.a))
    if isinstance(M, Disk):
        return 2 * M.radius
    if isinstance(M, IntervalUnion):
        return M.intervals[-1][1] - M.intervals[0][0]
    return M.diameter


# ------------------------------------------------------------------ Leja


def _leja_indices(pts: np.ndarray, k: int) -> list:
    first = int(np.argmax(np.abs(pts - pts.mean())))
    chosen = [first]
    pot = np.zeros(len(pts))
    with np.errstate(divide="ignore"):
        for _ in range(k - 1):
            pot += np.log(np.abs(pts - pts[chosen[-1]]))
            pot[chosen] = -np.inf
            nxt = int(np.argmax(pot))
            if not np.isfinite(pot[nxt]):
                nxt = int(np.argmax(np.isfinite(pot))) if np.isfinite(pot).any() else chosen[-1]
            chosen.append(nxt)
    return chosen


def leja_points(M: CompactSet, k: int, grid: int = 2000) -> np.ndarray:
    """Greedy Leja sequence on a discretisation of the carrier.

    The first point is the grid point farthest from the grid centroid; each
    next point maximises the product of distances to those already chosen.
    """
    if k < 1:
        raise ValueError("k must be positive")
    s, pts = carrier(M).grid(grid)
    return pts[_leja_indices(pts, k)]


# ---------------------------------------------------------------- Fekete


@dataclass(frozen=True)
class FeketeResult:
    k: int
    points: np.ndarray
    delta: float
    objective: float  # sum over pairs of log|z_i - z_j|
    converged: bool


def _pair_log_sum(z: np.ndarray) -> float:
    d = np.abs(z[:, None] - z[None, :])
    iu = np.triu_indices(len(z), 1)
    with np.errstate(divide="ignore"):
        return float(np.log(d[iu]).sum())


_SCAN = np.linspace(0, 1, 35)[1:-1]
_ZOOM = np.linspace(-1, 1, 9)


def _line_max(f, lo, hi, cur_x, cur_v):
    """Maximise ``f`` on (lo, hi): coarse scan, four 9-point zooms, parabolic step."""
    cand = lo + (hi - lo) * _SCAN
    vals = f(cand)
    j = int(np.argmax(vals))
    best_x, best_v = (cand[j], float(vals[j])) if vals[j] > cur_v else (cur_x, cur_v)
    step = (hi - lo) / 34
    for _ in range(4):
        cand = np.minimum(np.maximum(best_x + step * _ZOOM, lo), hi)
        vals = f(cand)
        j = int(np.argmax(vals))
        if vals[j] > best_v:
            best_x, best_v = cand[j], float(vals[j])
        step /= 4
    cand = np.minimum(np.maximum(best_x + np.array([-step, step]), lo), hi)
    fm, fp = f(cand)
    if np.isfinite(fm) and np.isfinite(fp) and fm - 2 * best_v + fp < 0:
        den = fm - 2 * best_v + fp
        x = best_x + 0.5 * step * (fm - fp) / den
        if lo < x < hi:
            v = float(f(x))
            if v > best_v:
                best_x, best_v = x, v
    return best_x, best_v


def _coordinate_ascent(car: _Carrier, s: np.ndarray, max_sweeps: int, tol: float):
    """Cyclic line search of each point along the carrier between its neighbours."""
    k = len(s)
    L = car.length
    z = car.point(s)
    obj = _pair_log_sum(z)
    converged = False
    for _ in range(max_sweeps):
        before = obj
        for i in range(k):
            others = np.delete(z, i)
            order = np.sort(np.delete(s, i))
            pos = np.searchsorted(order, s[i])
            if car.periodic:
                lo = order[pos - 1] if pos > 0 else order[-1] - L
                hi = order[pos] if pos < len(order) else order[0] + L
                if lo >= hi:
                    lo, hi = s[i] - L / 2, s[i] + L / 2
            else:
                lo = order[pos - 1] if pos > 0 else 0.0
                hi = order[pos] if pos < len(order) else L

            def f(x):
                with np.errstate(divide="ignore"):
                    return np.log(np.abs(car.point(x)[..., None] - others)).sum(axis=-1)

            cur = float(f(s[i]))
            if not car.periodic:
                # interval ends are admissible positions
                ends = f(np.array([lo, hi]))
            x, v = _line_max(f, lo, hi, s[i], cur)
            if not car.periodic:
                if pos == 0 and ends[0] > v:
                    x, v = lo, float(ends[0])
                if pos == len(order) and ends[1] > v:
                    x, v = hi, float(ends[1])
            # over-relaxed move, kept only when it improves further
            xr = s[i] + 1.7 * (x - s[i])
            if lo < xr < hi:
                vr = float(f(xr))
                if vr > v:
                    x, v = xr, vr
            if v > cur:
                s[i] = np.mod(x, L) if car.periodic else x
                z[i] = car.point(s[i])
        obj = _pair_log_sum(z)
        if obj - before < tol:
            converged = True
            break
    return s, obj, converged


def fekete_diameter(M: CompactSet, k: int, restarts: int = 3, max_sweeps: int = 500,
                    tol: float = 1e-12, seed: int = 0, grid: int = 2000) -> FeketeResult:
    """Local maximiser of ``sum log|z_i - z_j|`` over k carrier points.

    Starts from Leja points, then ``restarts`` jittered restarts; reports
    ``delta = exp(2 * objective / (k (k - 1)))``.  A NotConverged warning is
    issued if no run stopped before ``max_sweeps``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    car = carrier(M)
    if car.length <= 0:
        # measure-zero union of points: the carrier is a finite set
        pts = np.unique(np.array([a for a, _ in M.intervals], dtype=complex))
        idx = _leja_indices(pts, k)
        z = pts[idx]
        obj = _pair_log_sum(z)
        delta = math.exp(2 * obj / (k * (k - 1))) if np.isfinite(obj) else 0.0
        return FeketeResult(k, z, delta, obj, True)
    s_grid, pts = car.grid(grid)
    idx = _leja_indices(pts, k)
    s0 = s_grid[idx].astype(float)
    rng = np.random.default_rng([seed, k])
    best = None
    for r in range(restarts + 1):
        s = s0.copy()
        if r:
            spacing = car.length / k
            s = s + rng.uniform(-0.25, 0.25, k) * spacing
            s = np.mod(s, car.length) if car.periodic else np.clip(s, 0, car.length)
        s, obj, conv = _coordinate_ascent(car, s, max_sweeps, tol)
        if best is None or obj > best[1]:
            best = (s, obj, conv)
    s, obj, conv = best
    if not conv:
        warnings.warn(f"Fekete search for k={k} hit {max_sweeps} sweeps", NotConverged, stacklevel=2)
    z = car.point(s)
    delta = math.exp(2 * obj / (k * (k - 1))) if np.isfinite(obj) else 0.0
    return FeketeResult(k, z, delta, obj, conv)


# -------------------------------------------------------------- closed forms


def transfinite_diameter_regular(k: int, h: float = 1.0) -> float:
    """Transfinite diameter of the regular k-gon with side ``h``.

    ``Gamma(1/k) / (sqrt(pi) 2^(1+2/k) Gamma(1/2 + 1/k)) * h``, evaluated
    with ``math.lgamma``.
    """
    if k < 3:
        raise ValueError("regular polygon needs k >= 3")
    if not h > 0:
        raise ValueError("side length must be positive")
    logv = (math.lgamma(1 / k) - 0.5 * math.log(math.pi) - (1 + 2 / k) * math.log(2)
            - math.lgamma(0.5 + 1 / k))
    return math.exp(logv) * h


def segment_transfinite_diameter(length: float) -> float:
    return length / 4


# ----------------------------------------------------------- Chebyshev


def _log_sup_on(car: _Carrier, w: np.ndarray, pts: np.ndarray) -> float:
    with np.errstate(divide="ignore"):
        return float(np.log(np.abs(pts[:, None] - w[None, :])).sum(axis=1).max())


def _refined_log_sup(car: _Carrier, w: np.ndarray, s: np.ndarray, pts: np.ndarray) -> float:
    with np.errstate(divide="ignore"):
        vals = np.log(np.abs(pts[:, None] - w[None, :])).sum(axis=1)
    best = float(vals.max())
    order = np.argsort(vals)[::-1][:8]
    for i in order:
        a, b = s[max(i - 1, 0)], s[min(i + 1, len(s) - 1)]
        if b <= a:
            continue
        f = lambda x: -float(np.log(np.abs(car.point(x) - w)).sum())
        res = minimize_scalar(f, bounds=(a, b), method="bounded", options={"xatol": 1e-14})
        best = max(best, -float(res.fun))
    return best


@dataclass(frozen=True)
class ChebyshevResult:
    k: int
    value: float  # k-th root of the minimal sup norm found
    nodes: np.ndarray
    converged: bool


def chebyshev_number(M: CompactSet, k: int, restarts: int = 3, seed: int = 0,
                     grid: int = 1500, maxiter: int = 4000) -> ChebyshevResult:
    """``(min_w max_{z in M} |prod (z - w_j)|)^(1/k)`` by multi-start Nelder-Mead.

    The sup is taken on a carrier grid during the search and re-evaluated
    with local refinement for the reported value.
    """
    if k < 1:
        raise ValueError("k must be positive")
    car = carrier(M)
    s, pts = car.grid(grid)
    if k == 1:
        starts = [np.array([pts.mean()])]
    else:
        starts = [fekete_diameter(M, k, restarts=0, max_sweeps=50, grid=grid).points]
    rng = np.random.default_rng([seed, k])
    scale = set_diameter(M)
    for _ in range(restarts):
        starts.append(starts[0] + 0.05 * scale * (rng.normal(size=k) + 1j * rng.normal(size=k)))

    def F(x):
        return _log_sup_on(car, x[:k] + 1j * x[k:], pts)

    best = None
    all_conv = True
    for w0 in starts:
        x0 = np.concatenate([w0.real, w0.imag])
        res = minimize(F, x0, method="Nelder-Mead",
                       options={"maxiter": maxiter, "maxfev": maxiter * 2,
                                "xatol": 1e-10 * scale, "fatol": 1e-13, "adaptive": True})
        all_conv &= bool(res.success)
        if best is None or res.fun < best.fun:
            best = res
    w = best.x[:k] + 1j * best.x[k:]
    fine_s, fine_pts = car.grid(max(grid * 4, 4000))
    logsup = _refined_log_sup(car, w, fine_s, fine_pts)
    if not all_conv:
        warnings.warn("Chebyshev search hit its iteration cap", NotConverged, stacklevel=2)
    return ChebyshevResult(k, math.exp(logsup / k), w, all_conv)


# ------------------------------------------------------------------ Polya


def polya_check(J: IntervalUnion, k: int = 30, seed: int = 0) -> VerifierReport:
    """Fekete diameter of a real compact against the |J|/4 lower bound."""
    res = fekete_diameter(J, k, seed=seed)
    rhs = J.measure / 4
    rep = VerifierReport("polya", lhs=res.delta, rhs=rhs, tol=0.0, n=k,
                         notes=[f"{len(J.intervals)} intervals, converged={res.converged}"])
    return rep
