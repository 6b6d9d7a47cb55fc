"""Numerical checks of the polygon oscillation inequalities.

Each verifier returns a VerifierReport oriented as ``lhs >= rhs - tol``,
where ``tol`` is three times the achieved quadrature error plus ``1e-12``
relative (pointwise checks carry no quadrature error).  Integrals that can
be astronomically large or small are normalised by ``||p||_inf^q`` before
they are exponentiated.
"""
from __future__ import annotations

import functools
import logging
import math
from typing import Callable, Optional

import numpy as np

from . import capacity, constants
from .errors import (
    FramePreconditionFailed,
    JTooSmall,
    PointNotOnBoundary,
    RTooLarge,
    VertexNotAcute,
    ZerosOutsideDisk,
    ZerosOutsideK,
)
from .geom import (
    Polygon,
    contains,
    geometry_summary,
    local_depth,
    point_on_side,
    tilted_frame,
    vertex_data,
)
from .poly import PolyByZeros, log_abs, log_abs_and_logderiv, zeros_in
from .quad import (
    DEFAULT_SPEC,
    BoundarySubset,
    QuadratureSpec,
    boundary_integral,
    g_set,
    oscillation_log,
    sup_norm,
)
from .report import FAIL, PASS, SKIPPED, VACUOUS, VerifierReport, inequality_tol

log = logging.getLogger(__name__)

FAMILIES = ("uniform", "vertex", "centroid", "fekete", "boundary")


# ------------------------------------------------------------ generators


def random_zeros_in(K: Polygon, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` i.i.d. points uniform in K (rejection from the bounding box)."""
    v = K.vertices
    x0, x1, y0, y1 = v.real.min(), v.real.max(), v.imag.min(), v.imag.max()
    out = np.empty(0, dtype=complex)
    while len(out) < n:
        m = 2 * (n - len(out)) + 8
        z = rng.uniform(x0, x1, m) + 1j * rng.uniform(y0, y1, m)
        out = np.concatenate([out, z[contains(K, z)]])
    return out[:n]


@functools.lru_cache(maxsize=64)
def _fekete_zeros(vertices: tuple, n: int) -> np.ndarray:
    K = Polygon(np.array(vertices, dtype=complex))
    return capacity.fekete_diameter(K, n, restarts=0).points


def fekete_zeros(K: Polygon, n: int) -> np.ndarray:
    """Approximate Fekete points of K (cached per polygon and degree)."""
    if n < 2:
        return K.vertices[:1].repeat(n)
    return _fekete_zeros(tuple(K.vertices.tolist()), n).copy()


def random_polynomial(K: Polygon, n: int, rng: np.random.Generator,
                      family: str = "uniform") -> PolyByZeros:
    """A degree-n polynomial from one of the zero families.

    ``uniform``: i.i.d. in K; ``vertex``: all at a random vertex;
    ``centroid``: all at the centroid; ``fekete``: at Fekete points of K;
    ``boundary``: clustered on a random boundary arc of 1/10 the perimeter;
    ``box``: uniform in the square of half-side d about the centroid (zeros
    may leave K).
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    if family == "uniform":
        z = random_zeros_in(K, n, rng)
    elif family == "vertex":
        z = np.full(n, K.vertices[rng.integers(K.m)])
    elif family == "centroid":
        z = np.full(n, K.centroid)
    elif family == "fekete":
        z = fekete_zeros(K, n)
    elif family == "boundary":
        car = capacity.carrier(K)
        s0 = rng.uniform(0, car.length)
        s = np.mod(s0 + rng.uniform(-0.05, 0.05, n) * car.length, car.length)
        z = car.point(s)
    elif family == "box":
        d = K.diameter
        z = K.centroid + rng.uniform(-d, d, n) + 1j * rng.uniform(-d, d, n)
    else:
        raise ValueError(f"unknown zero family {family!r}")
    return PolyByZeros(z)


def random_disk_polynomial(n: int, rng: np.random.Generator) -> PolyByZeros:
    """Zeros uniform in the closed unit disk."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    r = np.sqrt(rng.uniform(0, 1, n))
    return PolyByZeros(r * np.exp(2j * np.pi * rng.uniform(0, 1, n)))


# --------------------------------------------------------------- helpers


def _require_degree(p: PolyByZeros):
    if p.n < 1:
        raise ValueError("degree must be at least 1")


def _abs_logderiv(p: PolyByZeros, z) -> np.ndarray:
    """``|p'/p(z)|``, +inf at zeros of p."""
    _, ld = log_abs_and_logderiv(p, np.atleast_1d(z))
    out = np.abs(ld)
    out[np.isnan(ld)] = np.inf
    return out


def _acute_vertex(K: Polygon, vertex: int):
    vd = vertex_data(K)[vertex % K.m]
    if not vd.acute:
        raise VertexNotAcute(f"angle at vertex {vd.index} is {vd.alpha:.6g}, not acute")
    return vd


def _corner_segments(K: Polygon, vertex: int, len_u: float, len_w: float):
    """Pieces of [V, U] and [V, W] of the given lengths, starting at V."""
    i = vertex % K.m
    tu = min(len_u / K.edge_lengths[i - 1], 1.0)
    tw = min(len_w / K.edge_lengths[i], 1.0)
    return (BoundarySubset.segment(K, i - 1, 1.0 - tu, 1.0),
            BoundarySubset.segment(K, i, 0.0, tw))


def _segment_points(S: BoundarySubset, k: int) -> np.ndarray:
    """``k`` equally spaced parameter points on a one-piece subset, ends included."""
    e, a, b = S.pieces[0]
    return S.polygon.point(e, np.linspace(a, b, k))


def _skipped(name, p, q, note, **extra):
    return VerifierReport(name, math.nan, math.nan, n=p.n, q=q, status=SKIPPED,
                          notes=[note], extra=extra)


# ------------------------------------------------------------- verifiers


def verify_nikolskii(p: PolyByZeros, K: Polygon, q: float,
                     spec: QuadratureSpec = DEFAULT_SPEC) -> VerifierReport:
    """``||p||_q >= (d / (2 (q+1)))^(1/q) ||p||_inf n^(-2/q)`` on the boundary."""
    _require_degree(p)
    I = boundary_integral(p, K, q, "p", spec)
    sup = sup_norm(p, K)
    lhs = math.exp(I.log_value / q)
    log_rhs = math.log(K.diameter / (2 * (q + 1))) / q + sup.log_value - 2 / q * math.log(p.n)
    rhs = math.exp(log_rhs)
    tol = inequality_tol(lhs * I.rel_err / q, rhs)
    return VerifierReport("nikolskii", lhs, rhs, tol, n=p.n, q=q,
                          extra={"sup_norm": sup.value, "quad_rel_err": I.rel_err})


def verify_g_mass(p: PolyByZeros, K: Polygon, q: float,
                  spec: QuadratureSpec = DEFAULT_SPEC, samples: int = 256) -> VerifierReport:
    """Mass fraction of the large-value set and its pointwise log bound.

    ``lhs`` is ``int_G |p|^q / int |p|^q`` against ``1/2``; for ``n >= 8``
    the sampled points of G must also satisfy
    ``log(||p||_inf / |p|) <= 4 / min(1, q) * log n``.
    """
    _require_degree(p)
    sup = sup_norm(p, K)
    G = g_set(p, K, q, sup)
    full = boundary_integral(p, K, q, "p", spec)
    part = boundary_integral(p, K, q, "p", spec, subset=G)
    frac = math.exp(part.log_value - full.log_value) if not G.empty else 0.0
    tol = 3 * frac * (part.rel_err + full.rel_err)
    rep = VerifierReport("g_mass", frac, 0.5, tol, n=p.n, q=q)
    rep.extra["g_measure"] = G.measure()
    if p.n >= 8 and not G.empty:
        z = G.sample(samples)
        worst = float(np.max(sup.log_value - log_abs(p, z)))
        bound = 4 / min(1.0, q) * math.log(p.n)
        ok = worst <= bound + 1e-9
        rep.extra.update(log_ratio_max=worst, log_ratio_bound=bound, log_ratio_ok=ok)
        if not ok:
            rep.status = FAIL
            rep.notes.append(f"pointwise log ratio {worst:.6g} exceeds {bound:.6g}")
    else:
        rep.notes.append("pointwise log bound not asserted (n < 8)")
    return rep


def verify_oneside(p: PolyByZeros, K: Polygon, vertex: int, q: float = 2.0,
                   spec: QuadratureSpec = DEFAULT_SPEC, samples: int = 256) -> VerifierReport:
    """Order-n log-derivative on one of the two short sides at an acute vertex.

    ``I+`` and ``I-`` are the parts of [V, U] and [V, W] within ``R_V`` of V.
    Unless both miss the large-value set, some side must satisfy
    ``|p'/p| >= sin(alpha/2) / (4 d) n`` at every sampled point; ``lhs`` is
    the better side's minimum.  The weaker ``sin(alpha) / (8 d) n`` is
    reported in ``extra``.
    """
    _require_degree(p)
    vd = _acute_vertex(K, vertex)
    nmin, clause = constants.n0(q, clauses=("corner_decay",))
    if p.n < nmin:
        return _skipped("oneside", p, q, f"n < n0 = {nmin} ({clause})", n0=nmin, n0_clause=clause)
    I_plus, I_minus = _corner_segments(K, vd.index, vd.R, vd.R)
    G = g_set(p, K, q)
    if G.intersect(I_plus.union(I_minus)).empty:
        return VerifierReport("oneside", 0.0, 0.0, n=p.n, q=q, status=VACUOUS,
                              notes=["large-value set misses both sides"])
    d = K.diameter
    mins = [float(_abs_logderiv(p, _segment_points(S, samples)).min()) for S in (I_plus, I_minus)]
    lhs = max(mins)
    rhs = math.sin(vd.alpha / 2) / (4 * d) * p.n
    weak = math.sin(vd.alpha) / (8 * d) * p.n
    side = "U" if mins[0] >= mins[1] else "W"
    return VerifierReport("oneside", lhs, rhs, inequality_tol(0.0, rhs), n=p.n, q=q,
                          notes=[f"good side towards {side}"],
                          extra={"min_plus": mins[0], "min_minus": mins[1], "weak_rhs": weak,
                                 "weak_ok": lhs >= weak, "n0": nmin, "n0_clause": clause})


def tne_frame_subset(K: Polygon, vertex: int, zeta: complex) -> BoundarySubset:
    """The whole segment [T, D] of the tilted frame at ``zeta``."""
    fr = tilted_frame(K, vertex, zeta)
    return BoundarySubset.segment(K, fr.vertex - 1, fr.t_T, fr.t_D)


def verify_tne(p: PolyByZeros, K: Polygon, vertex: int, zeta: complex,
               J: Optional[BoundarySubset] = None, omega: Optional[float] = None) -> VerifierReport:
    """Tilted-ray lower bound for ``|p'/p(zeta)|`` near a vertex of angle <= pi/2.

    ``J`` defaults to the whole segment [T, D] and ``omega`` to ``|J| / |D zeta|``.
    Asserts ``|p'/p(zeta)| >= sin t / (7.5 log(8/omega)) (n sin t / d - 2/a log(||p||_J/|p(zeta)|))``
    with ``t = theta(alpha)`` and ``a = |T zeta|``; when ``|p(zeta)| >= ||p||_J``
    it also asserts ``|p'/p(zeta)| >= C(alpha, omega, d) n``.
    """
    _require_degree(p)
    if omega is not None:
        constants.check_omega(omega)
    try:
        fr = tilted_frame(K, vertex, zeta)
    except (PointNotOnBoundary, VertexNotAcute) as exc:
        raise FramePreconditionFailed(str(exc)) from exc
    lo, hi = sorted((fr.t_T, fr.t_D))
    if J is None:
        J = BoundarySubset.segment(K, fr.vertex - 1, lo, hi)
    eps = 1e-12
    edge = (fr.vertex - 1) % K.m
    if J.empty or any(e != edge or a < lo - eps or b > hi + eps for e, a, b in J.pieces):
        raise FramePreconditionFailed("J must be a nonempty subset of [T, D]")
    Jlen = J.measure()
    if omega is None:
        omega = Jlen / fr.b
    C = constants.tne_constant(fr.alpha, omega, K.diameter)
    if Jlen < omega * fr.b * (1 - 1e-12):
        raise JTooSmall(f"|J| = {Jlen:.6g} < omega |D zeta| = {omega * fr.b:.6g}")

    n, d = p.n, K.diameter
    sinth = math.sin(fr.theta)
    la = float(log_abs(p, np.array([fr.zeta]))[0])
    lhs = float(_abs_logderiv(p, fr.zeta)[0])
    log_sup_J = sup_norm(p, K, subset=J).log_value
    extra = {"theta": fr.theta, "a": fr.a, "b": fr.b, "omega": omega, "J_measure": Jlen,
             "C": C, "alpha": fr.alpha, "dist": fr.dist}
    if la == -math.inf:
        return VerifierReport("tne", math.inf, -math.inf, n=n, notes=["zeta is a zero of p"],
                              extra=extra)
    log_ratio = log_sup_J - la
    main = sinth / (7.5 * math.log(8 / omega)) * (n * sinth / d - 2 / fr.a * log_ratio)
    applies = log_ratio <= 0
    rhs = max(main, C * n) if applies else main
    extra.update(main_rhs=main, consequence_rhs=C * n, consequence_applies=applies,
                 log_ratio=log_ratio)
    notes = ["|p(zeta)| >= ||p||_J: C(alpha, omega) n asserted"] if applies else []
    return VerifierReport("tne", lhs, rhs, inequality_tol(0.0, rhs), n=n, notes=notes,
                          extra=extra)


def random_tne_case(K: Polygon, vertex: int, rng: np.random.Generator):
    """Random admissible ``(zeta, J, omega)`` at ``vertex``.

    ``|V zeta|`` is uniform on ``(0, |VU|/8]``, J is a random subsegment of
    [T, D] carrying at least a fifth of it, and omega is drawn below ``|J|/|D zeta|``.
    """
    i = vertex % K.m
    reach = min(K.edge_lengths[i - 1] / 8, K.edge_lengths[i] * (1 - 1e-9))
    dist = reach * (1 - rng.uniform(0, 1))
    zeta = point_on_side(K, i, dist)
    fr = tilted_frame(K, i, zeta)
    lo, hi = sorted((fr.t_T, fr.t_D))
    frac = rng.uniform(0.2, 1.0)
    start = lo + rng.uniform(0, 1 - frac) * (hi - lo)
    J = BoundarySubset.segment(K, i - 1, start, start + frac * (hi - lo))
    omega = min(J.measure() / fr.b, constants.OMEGA_MAX * (1 - 1e-9)) * rng.uniform(0.5, 1.0)
    return zeta, J, omega


def verify_local_depth(p: PolyByZeros, K: Polygon, q: float,
                       spec: QuadratureSpec = DEFAULT_SPEC, samples: int = 512) -> VerifierReport:
    """``|p'(z)| >= h(z)^4 / (1500 d^5) n |p(z)|`` on sampled points of G.

    Points where ``n < 32 d^4 / h(z)^4`` are skipped.  ``lhs`` is the
    smallest ratio of the two sides over asserted points (``rhs = 1``).
    """
    _require_degree(p)
    G = g_set(p, K, q)
    if G.empty:
        return VerifierReport("local_depth", 0.0, 0.0, n=p.n, q=q, status=VACUOUS,
                              notes=["large-value set is empty"])
    d, n = K.diameter, p.n
    z = G.sample(samples)
    h = np.array([local_depth(K, w) for w in z])
    asserted = n >= 32 * d**4 / h**4
    extra = {"asserted": int(asserted.sum()), "skipped": int((~asserted).sum()),
             "min_depth": float(h.min())}
    if not asserted.any():
        return _skipped("local_depth", p, q, "n < 32 d^4 / h^4 at every sampled point", **extra)
    ratio = _abs_logderiv(p, z[asserted]) / (h[asserted] ** 4 / (1500 * d**5) * n)
    lhs = float(ratio.min())
    return VerifierReport("local_depth", lhs, 1.0, inequality_tol(0.0, 1.0), n=n, q=q,
                          notes=[f"{extra['asserted']} of {len(z)} points asserted"], extra=extra)


def verify_acute(p: PolyByZeros, K: Polygon, vertex: int, r: Optional[float] = None,
                 q: float = 2.0, spec: QuadratureSpec = DEFAULT_SPEC) -> VerifierReport:
    """``mu n^q int_{G cap D_r(V)} |p|^q <= int_{boundary cap D_8r(V)} |p'|^q``.

    ``r`` defaults to ``R_V / 8``.  Both sides are divided by ``||p||_inf^q``.
    As a secondary assertion, whenever G meets ``I+`` or ``I-`` the bound
    ``mu n^q int_{I cup J} |p|^q <= int_{I cup J} |p'|^q`` must hold for one
    orientation, with I of length r on one side of V and J of length 8r on
    the other.
    """
    _require_degree(p)
    vd = _acute_vertex(K, vertex)
    rmax = vd.R / 8
    if r is None:
        r = rmax
    if not r > 0:
        raise ValueError("r must be positive")
    if r > rmax * (1 + 1e-12):
        raise RTooLarge(f"r = {r:.6g} exceeds R_V / 8 = {rmax:.6g}")
    nmin, clause = constants.n0(q, clauses=("min_degree", "corner_decay"))
    meta = {"n0": nmin, "n0_clause": clause, "r": r}
    if p.n < nmin:
        return _skipped("acute", p, q, f"n < n0 = {nmin} ({clause})", **meta)

    d, n = K.diameter, p.n
    V = K.vertices[vd.index]
    mu = constants.mu(vd.alpha, q, d)
    sup = sup_norm(p, K)
    G = g_set(p, K, q, sup)
    shift = q * sup.log_value
    log_mun = math.log(mu) + q * math.log(n)

    def normed(integral):
        return math.exp(integral.log_value - shift) if integral.log_value > -math.inf else 0.0

    A = G.intersect_disk(V, r)
    B = BoundarySubset.full(K).intersect_disk(V, 8 * r)
    Id = boundary_integral(p, K, q, "dp", spec, B)
    lhs = normed(Id)
    if A.empty:
        rep = VerifierReport("acute", lhs, 0.0, n=n, q=q, status=VACUOUS,
                             notes=["G misses D_r(V)"], extra=dict(meta, mu=mu))
    else:
        Ip = boundary_integral(p, K, q, "p", spec, A)
        rhs = math.exp(log_mun + Ip.log_value - shift)
        tol = inequality_tol(lhs * Id.rel_err + rhs * Ip.rel_err, rhs)
        rep = VerifierReport("acute", lhs, rhs, tol, n=n, q=q, extra=dict(meta, mu=mu))

    I_plus, I_minus = _corner_segments(K, vd.index, vd.R, vd.R)
    if G.intersect(I_plus.union(I_minus)).empty:
        rep.extra["secondary"] = "vacuous"
        return rep
    best = -math.inf
    for len_u, len_w in ((8 * r, r), (r, 8 * r)):
        S = BoundarySubset.union(*_corner_segments(K, vd.index, len_u, len_w))
        ip = boundary_integral(p, K, q, "p", spec, S)
        idp = boundary_integral(p, K, q, "dp", spec, S)
        # log of int |p'|^q / (mu n^q int |p|^q), with its error
        val = idp.log_value - ip.log_value - log_mun
        best = max(best, val + 3 * (ip.rel_err + idp.rel_err))
    ok = best >= -1e-12
    rep.extra.update(secondary_log_ratio=best, secondary_ok=ok)
    if not ok:
        rep.status = FAIL
        rep.notes.append(f"I cup J form fails: log ratio {best:.6g}")
    return rep


def verify_polygon_theorem(p: PolyByZeros, K: Polygon, q: float,
                           spec: QuadratureSpec = DEFAULT_SPEC) -> VerifierReport:
    """``||p'||_q >= c(K) n ||p||_q`` on the boundary, as ``M_q(p) >= c(K) n``.

    Below the degree threshold n0 the inequality is still evaluated; a
    shortfall there is reported as skipped rather than failed.
    """
    _require_degree(p)
    if not zeros_in(p, K, tol=1e-12 * K.diameter):
        raise ZerosOutsideK("all zeros of p must lie in K")
    gs = geometry_summary(K, q)
    nmin, clause = constants.n0(q, gs.d, gs.h0)
    logM, rel = oscillation_log(p, K, q, spec)
    M = math.exp(logM)
    rhs = gs.cK * p.n
    rep = VerifierReport("polygon", M, rhs, inequality_tol(M * rel, rhs), n=p.n, q=q,
                         extra={"M_over_n": M / p.n, "cK": gs.cK, "n0": nmin, "n0_clause": clause})
    if p.n < nmin:
        rep.notes.append(f"below n0 = {nmin} ({clause})")
        if rep.status == FAIL:
            rep.status = SKIPPED
    return rep


def verify_disk(p: PolyByZeros, samples: int = 1000, points=None) -> VerifierReport:
    """``min |p'(z)| / (n |p(z)|) >= 1/2`` over sampled ``|z| = 1``.

    ``points`` overrides the default ``samples`` roots of unity.
    """
    _require_degree(p)
    if np.any(np.abs(p.zeros) > 1 + 1e-12):
        raise ZerosOutsideDisk("all zeros of p must lie in the closed unit disk")
    if points is None:
        points = np.exp(2j * np.pi * np.arange(samples) / samples)
    z = np.atleast_1d(np.asarray(points, dtype=complex))
    ratio = _abs_logderiv(p, z) / p.n
    i = int(np.argmin(ratio))
    return VerifierReport("disk", float(ratio[i]), 0.5, 1e-9, n=p.n,
                          extra={"argmin": [float(z[i].real), float(z[i].imag)]})


def diameter_endpoints(K: Polygon) -> tuple[complex, complex]:
    v = K.vertices
    dist = np.abs(v[:, None] - v[None, :])
    i, j = np.unravel_index(int(np.argmax(dist)), dist.shape)
    return complex(v[i]), complex(v[j])


def upper_witness(K: Polygon, n: int, q: float = 2.0,
                  spec: QuadratureSpec = DEFAULT_SPEC) -> tuple[PolyByZeros, VerifierReport]:
    """``(z - z0)^n`` with z0 a diameter endpoint, whose sup-norm ratio is ``n/d``.

    The report passes when the measured ratio matches ``n/d`` to ``1e-12``
    relative.  ``extra`` carries ``M_q(p)`` and, past the degree threshold,
    the comparison with ``C_q (w/d^2) n``.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    z0, _ = diameter_endpoints(K)
    p = PolyByZeros(np.full(n, z0))
    d, w = K.diameter, K.width
    ratio = math.exp(sup_norm(p, K, which="dp").log_value - sup_norm(p, K).log_value)
    target = n / d
    err = abs(ratio - target) / target
    logM, rel = oscillation_log(p, K, q, spec)
    M = math.exp(logM)
    thr = constants.upper_threshold(q, d, w)
    bound = constants.upper_constant(q) * w / d**2 * n
    extra = {"Mq": M, "Mq_rel_err": rel, "upper_bound": bound, "upper_threshold": thr,
             "upper_applies": n >= thr, "rel_err": err}
    if n >= thr:
        extra["upper_ok"] = M <= bound * (1 + 3 * rel)
    rep = VerifierReport("witness", ratio, target, 1e-12 * target, n=n, q=q,
                         status=PASS if err <= 1e-12 else FAIL, extra=extra)
    return p, rep


# ----------------------------------------------------------------- suites


def _family(i: int, family: Optional[str]) -> str:
    return family or FAMILIES[i % len(FAMILIES)]


def _first_vertex(K: Polygon, acute_only: bool) -> int:
    for v in vertex_data(K):
        if v.acute or (not acute_only and v.alpha <= math.pi / 2 + 1e-12):
            return v.index
    raise VertexNotAcute("polygon has no vertex with the required angle")


def _case_nikolskii(K, rng, i, n, q, spec, opts):
    return verify_nikolskii(random_polynomial(K, n, rng, opts.get("family") or "box"), K, q, spec)


def _case_g_mass(K, rng, i, n, q, spec, opts):
    return verify_g_mass(random_polynomial(K, n, rng, _family(i, opts.get("family"))), K, q, spec)


def _case_oneside(K, rng, i, n, q, spec, opts):
    v = opts.get("vertex")
    v = _first_vertex(K, True) if v is None else v
    return verify_oneside(random_polynomial(K, n, rng, _family(i, opts.get("family"))), K, v, q, spec)


def _case_tne(K, rng, i, n, q, spec, opts):
    v = opts.get("vertex")
    v = _first_vertex(K, False) if v is None else v
    p = random_polynomial(K, n, rng, opts.get("family") or "uniform")
    if opts.get("zeta") is not None:
        zeta = point_on_side(K, v, opts["zeta"])
        return verify_tne(p, K, v, zeta, omega=opts.get("omega"))
    zeta, J, omega = random_tne_case(K, v, rng)
    return verify_tne(p, K, v, zeta, J, omega)


def _case_local_depth(K, rng, i, n, q, spec, opts):
    p = random_polynomial(K, n, rng, _family(i, opts.get("family")))
    return verify_local_depth(p, K, q, spec)


def _case_acute(K, rng, i, n, q, spec, opts):
    v = opts.get("vertex")
    v = _first_vertex(K, True) if v is None else v
    p = random_polynomial(K, n, rng, _family(i, opts.get("family")))
    return verify_acute(p, K, v, opts.get("r"), q, spec)


def _case_polygon(K, rng, i, n, q, spec, opts):
    p = random_polynomial(K, n, rng, _family(i, opts.get("family")))
    return verify_polygon_theorem(p, K, q, spec)


def _case_disk(K, rng, i, n, q, spec, opts):
    return verify_disk(random_disk_polynomial(n, rng), samples=opts.get("samples") or 1000)


def _case_witness(K, rng, i, n, q, spec, opts):
    return upper_witness(K, n, q, spec)[1]


SUITES: dict[str, Callable] = {
    "disk": _case_disk,
    "nikolskii": _case_nikolskii,
    "g-mass": _case_g_mass,
    "oneside": _case_oneside,
    "tne": _case_tne,
    "local-depth": _case_local_depth,
    "acute": _case_acute,
    "polygon": _case_polygon,
    "witness": _case_witness,
}


def run_suite(name: str, K: Optional[Polygon], n: int, q: float = 2.0, count: int = 1,
              seed: int = 0, spec: QuadratureSpec = DEFAULT_SPEC, **opts) -> list[VerifierReport]:
    """Run a named verifier over ``count`` seeded cases.

    Case ``i`` draws from ``default_rng([seed, i])``, so any case can be
    reproduced on its own.  The witness suite is deterministic and runs once.
    """
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if K is None and name != "disk":
        raise ValueError(f"suite {name!r} needs a polygon")
    if n < 1:
        raise ValueError("degree must be at least 1")
    if name == "witness":
        count = 1
    case = SUITES[name]
    reports = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        rep = case(K, rng, i, n, q, spec, opts)
        rep.extra.setdefault("case", i)
        log.debug("%s case %d: %s", name, i, rep.line())
        reports.append(rep)
    return reports
