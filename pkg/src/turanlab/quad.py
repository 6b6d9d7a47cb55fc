"""Integration and extrema of |p| and |p'| along the polygon boundary.

Every integrand is handled as ``exp(q*log|f| - M)`` with a per-call shift
``M``; results are reported in log form as well, so huge or tiny norms
survive.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import constants
from .errors import ToleranceNotMet
from .geom import Polygon, closest_boundary_point
from .poly import PolyByZeros, log_abs, log_abs_and_logderiv, log_abs_deriv


@dataclass(frozen=True)
class QuadratureSpec:
    nodes: int = 16
    panels: int = 8
    rtol: float = 1e-9
    max_depth: int = 12

    def __post_init__(self):
        if self.nodes < 2:
            raise ValueError("need at least 2 Gauss-Legendre nodes")
        if not self.rtol > 0:
            raise ValueError("tolerance must be positive")
        if self.panels < 1 or self.max_depth < 0:
            raise ValueError("panels >= 1 and max_depth >= 0 required")


DEFAULT_SPEC = QuadratureSpec()
LOOSE_SPEC = QuadratureSpec(rtol=1e-5)


@lru_cache(maxsize=None)
def _gauss(n: int):
    return np.polynomial.legendre.leggauss(n)


# ---------------------------------------------------------------- subsets


def _normalize(pieces):
    out = []
    for e, a, b in sorted((int(e), float(a), float(b)) for e, a, b in pieces):
        a, b = max(a, 0.0), min(b, 1.0)
        if b <= a:
            continue
        if out and out[-1][0] == e and a <= out[-1][2]:
            out[-1] = (e, out[-1][1], max(b, out[-1][2]))
        else:
            out.append((e, a, b))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class BoundarySubset:
    """Finite union of parameter intervals ``(edge, t0, t1)`` of the boundary."""

    polygon: Polygon
    pieces: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", _normalize(self.pieces))

    @classmethod
    def full(cls, K: Polygon) -> "BoundarySubset":
        return cls(K, tuple((e, 0.0, 1.0) for e in range(K.m)))

    @classmethod
    def segment(cls, K: Polygon, edge: int, t0: float, t1: float) -> "BoundarySubset":
        return cls(K, ((edge % K.m, min(t0, t1), max(t0, t1)),))

    @property
    def empty(self) -> bool:
        return not self.pieces

    def measure(self) -> float:
        L = self.polygon.edge_lengths
        return math.fsum(L[e] * (b - a) for e, a, b in self.pieces)

    def complement(self) -> "BoundarySubset":
        out = []
        for e in range(self.polygon.m):
            cur = 0.0
            for ee, a, b in self.pieces:
                if ee != e:
                    continue
                out.append((e, cur, a))
                cur = b
            out.append((e, cur, 1.0))
        return BoundarySubset(self.polygon, tuple(out))

    def intersect(self, other: "BoundarySubset") -> "BoundarySubset":
        out = []
        for e, a, b in self.pieces:
            for ee, c, d in other.pieces:
                if ee == e and min(b, d) > max(a, c):
                    out.append((e, max(a, c), min(b, d)))
        return BoundarySubset(self.polygon, tuple(out))

    def union(self, other: "BoundarySubset") -> "BoundarySubset":
        return BoundarySubset(self.polygon, self.pieces + other.pieces)

    def intersect_disk(self, center: complex, radius: float) -> "BoundarySubset":
        """Part of the subset inside the closed disk ``|z - center| <= radius``."""
        K = self.polygon
        disk = []
        for e in range(K.m):
            v, d = K.vertices[e], K.edges[e]
            A = abs(d) ** 2
            B = 2 * ((v - center) * np.conj(d)).real
            C = abs(v - center) ** 2 - radius**2
            disc = B * B - 4 * A * C
            if disc <= 0:
                continue
            r = math.sqrt(disc)
            # stable quadratic roots
            qq = -0.5 * (B + math.copysign(r, B))
            roots = sorted([qq / A, C / qq] if qq != 0 else [-r / (2 * A), r / (2 * A)])
            disk.append((e, roots[0], roots[1]))
        return self.intersect(BoundarySubset(K, tuple(disk)))

    def sample(self, k: int) -> np.ndarray:
        """``k`` points equally spaced in arc length (cell midpoints)."""
        if self.empty or k <= 0:
            return np.empty(0, dtype=complex)
        K = self.polygon
        lens = np.array([K.edge_lengths[e] * (b - a) for e, a, b in self.pieces])
        cum = np.concatenate([[0.0], np.cumsum(lens)])
        s = (np.arange(k) + 0.5) / k * cum[-1]
        idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(lens) - 1)
        out = np.empty(k, dtype=complex)
        for j, (e, a, b) in enumerate(self.pieces):
            sel = idx == j
            t = a + (s[sel] - cum[j]) / K.edge_lengths[e]
            out[sel] = K.point(e, np.minimum(t, b))
        return out

    def to_json(self) -> dict:
        return {"edges": [{"edge": e, "t0": a, "t1": b} for e, a, b in self.pieces]}

    @classmethod
    def from_json(cls, K: Polygon, data: dict) -> "BoundarySubset":
        return cls(K, tuple((d["edge"], d["t0"], d["t1"]) for d in data["edges"]))

    def __repr__(self):
        return f"BoundarySubset({len(self.pieces)} pieces, measure={self.measure():.6g})"


def segment_subset(K: Polygon, P: complex, Q: complex) -> BoundarySubset:
    """The boundary subset for a segment [P, Q] lying on one side of K."""
    _, e, t, dist = closest_boundary_point(K, np.array([(P + Q) / 2]))
    e = int(e[0])
    v, d = K.vertices[e], K.edges[e]
    tp = ((P - v) * np.conj(d)).real / abs(d) ** 2
    tq = ((Q - v) * np.conj(d)).real / abs(d) ** 2
    return BoundarySubset.segment(K, e, tp, tq)


# ------------------------------------------------------------ integration


def _log_f(p: PolyByZeros, z, which: str) -> np.ndarray:
    if which == "p":
        return log_abs(p, z)
    if which == "dp":
        return log_abs_deriv(p, z)
    raise ValueError(f"which must be 'p' or 'dp', got {which!r}")


@dataclass(frozen=True)
class Integral:
    """Result of ``int |f|^q |dz|`` held as a logarithm."""

    log_value: float
    rel_err: float
    converged: bool
    evaluations: int

    @property
    def value(self) -> float:
        return math.exp(self.log_value) if self.log_value > -math.inf else 0.0

    @property
    def abs_err(self) -> float:
        return self.rel_err * self.value


def _initial_breaks(p: PolyByZeros, K: Polygon, e: int, a: float, b: float, spec: QuadratureSpec):
    br = list(np.linspace(a, b, spec.panels + 1))
    if p.n:
        v, d = K.vertices[e], K.edges[e]
        t = ((p.zeros - v) * np.conj(d)).real / abs(d) ** 2
        tc = np.clip(t, 0, 1)
        near = np.abs(p.zeros - (v + tc * d)) <= 0.01 * K.diameter
        eps = 1e-12 * (b - a)
        br.extend(float(x) for x in tc[near] if a + eps < x < b - eps)
    return np.unique(br)


def boundary_integral(
    p: PolyByZeros,
    K: Polygon,
    q: float,
    which: str = "p",
    spec: QuadratureSpec = DEFAULT_SPEC,
    subset: Optional[BoundarySubset] = None,
) -> Integral:
    """Adaptive panel Gauss-Legendre for ``int |f|^q |dz|`` over ``subset``.

    Each panel is compared with its two halves; a panel is accepted when the
    difference is below ``rtol`` relative to the larger of its own value and
    its length share of the initial total.  Panels still failing at
    ``max_depth`` are kept; the result is flagged (ToleranceNotMet warning)
    only if the summed error estimate then exceeds ``rtol``.
    """
    if not q > 0:
        raise ValueError("q must be positive")
    if subset is None:
        subset = BoundarySubset.full(K)
    if subset.empty:
        return Integral(-math.inf, 0.0, True, 0)
    x, w = _gauss(spec.nodes)
    L = K.edge_lengths

    edges, lo, hi = [], [], []
    for e, a, b in subset.pieces:
        br = _initial_breaks(p, K, e, a, b, spec)
        edges.append(np.full(len(br) - 1, e))
        lo.append(br[:-1])
        hi.append(br[1:])
    edges = np.concatenate(edges)
    lo = np.concatenate(lo)
    hi = np.concatenate(hi)
    evals = 0

    def logs(e_arr, a_arr, b_arr):
        nonlocal evals
        mid, half = (a_arr + b_arr) / 2, (b_arr - a_arr) / 2
        t = mid[:, None] + half[:, None] * x[None, :]
        z = K.vertices[e_arr][:, None] + t * K.edges[e_arr][:, None]
        evals += z.size
        return q * _log_f(p, z, which), half * L[e_arr]

    g0, h0 = logs(edges, lo, hi)
    finite = g0[np.isfinite(g0)]
    if finite.size == 0:
        shift = 0.0
    else:
        shift = float(finite.max())

    def panel_sum(g, h):
        with np.errstate(under="ignore"):
            return h * (np.exp(g - shift) @ w)

    whole = panel_sum(g0, h0)
    total0 = max(float(whole.sum()), np.finfo(float).tiny)
    measure = subset.measure()

    accepted = [[] for _ in range(K.m)]
    err_total = []
    converged = True
    depth = 0
    while len(edges):
        mid = (lo + hi) / 2
        gl, hl = logs(edges, lo, mid)
        gr, hr = logs(edges, mid, hi)
        left, right = panel_sum(gl, hl), panel_sum(gr, hr)
        halves = left + right
        diff = np.abs(whole - halves)
        floor = total0 * (hi - lo) * L[edges] / measure
        ok = diff <= spec.rtol * np.maximum(halves, floor)
        last = depth >= spec.max_depth
        keep = ok | last
        if last and not np.all(ok):
            converged = False
        for e, val in zip(edges[keep], halves[keep]):
            accepted[e].append(val)
        err_total.extend(diff[keep])
        nxt = ~keep
        edges = np.concatenate([edges[nxt], edges[nxt]])
        lo, hi = np.concatenate([lo[nxt], mid[nxt]]), np.concatenate([mid[nxt], hi[nxt]])
        whole = np.concatenate([left[nxt], right[nxt]])
        depth += 1

    total = math.fsum(math.fsum(vals) for vals in accepted)
    err = math.fsum(err_total)
    if total <= 0:
        return Integral(-math.inf, 0.0, converged, evals)
    rel = err / total
    # panels cut off at max_depth only matter if the summed estimate misses rtol
    converged = converged or rel <= spec.rtol
    if not converged:
        warnings.warn(
            f"quadrature stopped at depth {spec.max_depth} with relative error {rel:.2e}",
            ToleranceNotMet,
            stacklevel=2,
        )
    return Integral(shift + math.log(total), rel, converged, evals)


def lq_log_norm(p, K, q, which="p", spec=DEFAULT_SPEC, subset=None) -> float:
    """``log`` of the L^q(boundary) norm."""
    return boundary_integral(p, K, q, which, spec, subset).log_value / q


def lq_norm(p, K, q, which="p", spec=DEFAULT_SPEC, subset=None) -> float:
    """``(int |f|^q |dz|)^(1/q)`` over the boundary (or ``subset``)."""
    return math.exp(lq_log_norm(p, K, q, which, spec, subset))


def oscillation_log(p, K, q, spec=DEFAULT_SPEC) -> tuple[float, float]:
    """``log M_q(p)`` and its relative error estimate."""
    ip = boundary_integral(p, K, q, "p", spec)
    idp = boundary_integral(p, K, q, "dp", spec)
    return (idp.log_value - ip.log_value) / q, (ip.rel_err + idp.rel_err) / q


def oscillation(p, K, q, spec=DEFAULT_SPEC) -> float:
    """``M_q(p) = ||p'||_q / ||p||_q`` on the boundary."""
    return math.exp(oscillation_log(p, K, q, spec)[0])


# ---------------------------------------------------------------- maxima


@dataclass(frozen=True)
class SupNorm:
    log_value: float
    point: complex
    edge: int
    t: float

    @property
    def value(self) -> float:
        return math.exp(self.log_value) if self.log_value > -math.inf else 0.0


def sup_norm(p: PolyByZeros, K: Polygon, subset: Optional[BoundarySubset] = None,
             which: str = "p", samples_per_edge: Optional[int] = None) -> SupNorm:
    """Max of |p| (or |p'|) on the boundary or a subset, with an argmax.

    Dense sampling, ``64 (n + 1)`` per full edge, followed by bounded Brent
    refinement of ``log|f|`` around the best sampled local maxima.
    """
    if subset is None:
        subset = BoundarySubset.full(K)
    if subset.empty:
        return SupNorm(-math.inf, complex("nan"), -1, math.nan)
    per_edge = samples_per_edge or 64 * (p.n + 1)
    cands = []
    for e, a, b in subset.pieces:
        k = max(33, int(math.ceil(per_edge * (b - a))) + 1)
        t = np.linspace(a, b, k)
        g = _log_f(p, K.point(e, t), which)
        # local maxima among samples, ends included
        padded = np.concatenate([[-np.inf], g, [-np.inf]])
        locmax = np.nonzero((g >= padded[:-2]) & (g >= padded[2:]))[0]
        for i in locmax:
            cands.append((float(g[i]), e, t, int(i)))
    cands.sort(key=lambda c: -c[0])
    best = None
    for gval, e, t, i in cands[:6]:
        lo, hi = t[max(i - 1, 0)], t[min(i + 1, len(t) - 1)]
        if not np.isfinite(gval):
            continue
        cur_t, cur_g = float(t[i]), gval
        if hi > lo:
            f = lambda s: -float(_log_f(p, K.point(e, s), which))
            res = minimize_scalar(f, bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-15 * max(1.0, abs(hi))})
            if -res.fun > cur_g:
                cur_t, cur_g = float(res.x), -float(res.fun)
        if best is None or cur_g > best[0]:
            best = (cur_g, e, cur_t)
    if best is None:
        e, a, _ = subset.pieces[0]
        return SupNorm(-math.inf, complex(K.point(e, a)), e, a)
    g, e, t = best
    return SupNorm(g, complex(K.point(e, t)), e, t)


# ------------------------------------------------------- large-value set


def g_log_threshold(p: PolyByZeros, K: Polygon, q: float, sup: Optional[SupNorm] = None) -> float:
    """``log(lam / n^(2/q) * ||p||_inf)``."""
    sup = sup or sup_norm(p, K)
    n = max(p.n, 1)
    return math.log(constants.lam(q)) - 2 / q * math.log(n) + sup.log_value


def g_set(p: PolyByZeros, K: Polygon, q: float, sup: Optional[SupNorm] = None) -> BoundarySubset:
    """Boundary points where ``|p| > lam n^(-2/q) ||p||_inf``.

    Threshold crossings are bracketed on a ``64 (n + 1)`` per-edge grid and
    located by Brent's method to ``1e-10 d`` in arc length.
    """
    if not q > 0:
        raise ValueError("q must be positive")
    level = g_log_threshold(p, K, q, sup)
    d = K.diameter
    pieces = []
    for e in range(K.m):
        L = K.edge_lengths[e]
        t = np.linspace(0.0, 1.0, 64 * (p.n + 1) + 1)
        g = log_abs(p, K.point(e, t)) - level
        above = g > 0
        if not above.any():
            continue
        f = lambda s: float(log_abs(p, K.point(e, s))) - level
        xtol = 1e-10 * d / L
        start = 0.0 if above[0] else None
        for i in range(len(t) - 1):
            if above[i] == above[i + 1]:
                continue
            lo, hi = t[i], t[i + 1]
            if np.isfinite(g[i]) and np.isfinite(g[i + 1]):
                root = brentq(f, lo, hi, xtol=xtol)
            else:
                # -inf at an exact zero: bisect by hand
                a, b = lo, hi
                fa_pos = above[i]
                while b - a > xtol:
                    c = (a + b) / 2
                    if (f(c) > 0) == fa_pos:
                        a = c
                    else:
                        b = c
                root = (a + b) / 2
            if above[i]:
                pieces.append((e, start, root))
                start = None
            else:
                start = root
        if start is not None:
            pieces.append((e, start, 1.0))
    return BoundarySubset(K, tuple(pieces))
