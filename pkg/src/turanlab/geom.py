"""Convex polygon geometry.

Polygons are stored as counter-clockwise complex vertex arrays.  Edge ``e``
runs from ``vertices[e]`` to ``vertices[e + 1]``; for vertex ``i`` we write ``U = vertices[i - 1]``, ``V = vertices[i]``, ``W = vertices[i + 1]``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import constants
from .errors import (
    DegenerateEdge,
    NotConvex,
    PointNotOnBoundary,
    TooFewVertices,
    VertexNotAcute,
    ZetaTooFar,
)

# alpha < pi/2 - ACUTE_TOL counts as acute; exact right angles do not
ACUTE_TOL = 1e-12


def as_complex(points) -> np.ndarray:
    """Accept complex numbers or (x, y) pairs and return a complex array."""
    arr = np.asarray(points)
    if np.iscomplexobj(arr):
        return arr.astype(complex).ravel()
    arr = np.asarray(arr, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 2:
        return arr[:, 0] + 1j * arr[:, 1]
    if arr.ndim <= 1:
        return arr.astype(complex).ravel()
    raise ValueError(f"cannot interpret array of shape {arr.shape} as planar points")


def _cross(a, b):
    return (np.conj(a) * b).imag


@dataclass(frozen=True, eq=False)
class Polygon:
    """A strictly convex polygon with counter-clockwise vertices.

    Build instances through :func:`validate`; the constructor does not check
    the invariants.
    """

    vertices: np.ndarray

    @property
    def m(self) -> int:
        return len(self.vertices)

    @cached_property
    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1) - self.vertices

    @cached_property
    def edge_lengths(self) -> np.ndarray:
        return np.abs(self.edges)

    @cached_property
    def perimeter(self) -> float:
        return math.fsum(self.edge_lengths)

    @cached_property
    def inward_normals(self) -> np.ndarray:
        return 1j * self.edges / self.edge_lengths

    @cached_property
    def centroid(self) -> complex:
        v = self.vertices
        w = np.roll(v, -1)
        cr = _cross(v, w)
        area = cr.sum() / 2
        return complex(((v + w) * cr).sum() / (6 * area))

    @cached_property
    def angles(self) -> np.ndarray:
        """Interior angle at each vertex."""
        v = self.vertices
        to_prev = np.roll(v, 1) - v
        to_next = np.roll(v, -1) - v
        return np.abs(np.angle(to_prev / to_next))

    @cached_property
    def diameter(self) -> float:
        return diameter(self)

    @cached_property
    def width(self) -> float:
        return width(self)

    def point(self, edge: int, t):
        """Boundary point at parameter ``t`` in [0, 1] on ``edge``."""
        return self.vertices[edge] + np.asarray(t) * self.edges[edge]

    def to_json(self) -> dict:
        return {"vertices": [[float(z.real), float(z.imag)] for z in self.vertices]}

    def __repr__(self):
        pts = ", ".join(f"({z.real:g}, {z.imag:g})" for z in self.vertices)
        return f"Polygon([{pts}])"


def validate(points) -> Polygon:
    """Check convexity and return a counter-clockwise :class:`Polygon`.

    Raises TooFewVertices, DegenerateEdge or NotConvex.
    """
    v = as_complex(points)
    if not np.all(np.isfinite(v)):
        raise ValueError("vertex coordinates must be finite")
    if len(v) < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {len(v)}")
    edges = np.roll(v, -1) - v
    scale = float(np.max(np.abs(v - v[0])))
    if scale == 0 or np.any(np.abs(edges) <= 1e-14 * scale):
        raise DegenerateEdge("consecutive vertices coincide")
    area2 = _cross(v, np.roll(v, -1)).sum()
    if area2 < 0:
        v = np.concatenate([v[:1], v[:0:-1]])
        edges = np.roll(v, -1) - v
    cr = _cross(edges, np.roll(edges, -1))
    bad = cr <= 1e-13 * np.abs(edges) * np.abs(np.roll(edges, -1))
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NotConvex(f"turn at vertex {(i + 1) % len(v)} is not strictly left")
    # all left turns but winding twice or more (star polygons)
    turning = np.angle(np.roll(edges, -1) / edges).sum()
    if not math.isclose(turning, 2 * math.pi, rel_tol=1e-9):
        raise NotConvex("boundary winds more than once")
    return Polygon(v)


def load_polygon(path) -> Polygon:
    with open(path) as fh:
        data = json.load(fh)
    return validate(data["vertices"])


def regular_polygon(k: int, side: float = 1.0, center: complex = 0j) -> Polygon:
    """Regular k-gon with the given side length; first edge is horizontal."""
    if k < 3:
        raise TooFewVertices(f"regular polygon needs k >= 3, got {k}")
    radius = side / (2 * math.sin(math.pi / k))
    phi = -math.pi / 2 - math.pi / k + 2 * math.pi * np.arange(k) / k
    return validate(center + radius * np.exp(1j * phi))


def diameter(K: Polygon) -> float:
    v = K.vertices
    return float(np.max(np.abs(v[:, None] - v[None, :])))


def width(K: Polygon) -> float:
    """Minimal width: min over edges of the farthest vertex from the edge line."""
    v = K.vertices
    nrm = K.inward_normals
    dist = ((v[None, :] - v[:, None]) * np.conj(nrm)[:, None]).real
    return float(np.min(dist.max(axis=1)))


def ray_exit(K: Polygon, origin, direction) -> np.ndarray:
    """Largest ``t >= 0`` with ``origin + t*direction`` in K.

    ``origin`` must lie in K; arrays broadcast.  ``direction`` need not be a
    unit vector.
    """
    origin = np.asarray(origin, dtype=complex)[..., None]
    direction = np.asarray(direction, dtype=complex)[..., None]
    out = -K.inward_normals
    g = ((origin - K.vertices) * np.conj(out)).real
    s = (direction * np.conj(out)).real
    eps = 1e-13 * np.abs(direction)
    with np.errstate(divide="ignore", invalid="ignore"):
        lim = np.where(s > eps, -g / s, np.inf)
    return np.maximum(lim.min(axis=-1), 0.0)


def contains(K: Polygon, z, tol: float = 0.0) -> np.ndarray:
    """True where ``z`` lies in K or within ``tol`` of its boundary."""
    z = np.asarray(z, dtype=complex)
    slack = tol + 1e-12 * K.diameter
    inside = np.all(
        ((z[..., None] - K.vertices) * np.conj(K.inward_normals)).real >= -1e-12 * K.diameter,
        axis=-1,
    )
    if tol <= 0:
        return inside
    return inside | (boundary_distance(K, z) <= slack)


def closest_boundary_point(K: Polygon, z):
    """Nearest boundary point and its edge/parameter, vectorised over ``z``."""
    z = np.asarray(z, dtype=complex)
    v, e = K.vertices, K.edges
    t = ((z[..., None] - v) * np.conj(e)).real / K.edge_lengths**2
    t = np.clip(t, 0.0, 1.0)
    pts = v + t * e
    dist = np.abs(z[..., None] - pts)
    idx = np.argmin(dist, axis=-1)
    take = lambda a: np.take_along_axis(a, idx[..., None], axis=-1)[..., 0]
    return take(pts), idx, take(t), take(dist)


def boundary_distance(K: Polygon, z) -> np.ndarray:
    return closest_boundary_point(K, z)[3]


def project(K: Polygon, z) -> np.ndarray:
    """Euclidean projection onto K (identity inside)."""
    z = np.asarray(z, dtype=complex)
    pts = closest_boundary_point(K, z)[0]
    return np.where(contains(K, z), z, pts)


@dataclass(frozen=True)
class VertexData:
    index: int
    alpha: float
    acute: bool
    len_prev: float  # |VU|
    len_next: float  # |VW|
    R: float

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "alpha": self.alpha,
            "acute": self.acute,
            "len_VU": self.len_prev,
            "len_VW": self.len_next,
            "R_V": self.R,
        }


def vertex_data(K: Polygon) -> list[VertexData]:
    out = []
    lengths = K.edge_lengths
    for i, alpha in enumerate(K.angles):
        a, b = float(lengths[i - 1]), float(lengths[i])
        out.append(
            VertexData(
                index=i,
                alpha=float(alpha),
                acute=bool(alpha < math.pi / 2 - ACUTE_TOL),
                len_prev=a,
                len_next=b,
                R=min(a, b) / 64,
            )
        )
    return out


def _locate(K: Polygon, zeta: complex, tol: Optional[float] = None):
    """Return ("vertex", i) or ("edge", e, t) for a boundary point."""
    if tol is None:
        tol = 1e-9 * K.diameter
    dv = np.abs(K.vertices - zeta)
    i = int(np.argmin(dv))
    if dv[i] <= tol:
        return ("vertex", i)
    _, e, t, dist = closest_boundary_point(K, np.asarray([zeta]))
    if dist[0] > tol:
        raise PointNotOnBoundary(f"{zeta} is {dist[0]:.3g} away from the boundary")
    return ("edge", int(e[0]), float(t[0]))


def normal_chord(K: Polygon, edge: int, t) -> np.ndarray:
    """Length of the chord from ``K.point(edge, t)`` along the inward normal."""
    return ray_exit(K, K.point(edge, t), K.inward_normals[edge])


def local_depth(K: Polygon, zeta: complex) -> float:
    """Longest normal chord of K emanating from the boundary point ``zeta``.

    At a vertex the normal cone is one-parametric and the chord length is a
    piecewise ``h / cos(phi - phi_e)`` function whose maxima sit at cone ends
    or at directions pointing to vertices, so those candidates are exact.
    """
    loc = _locate(K, complex(zeta))
    if loc[0] == "edge":
        return float(normal_chord(K, loc[1], loc[2]))
    i = loc[1]
    V = K.vertices[i]
    n_prev = K.inward_normals[i - 1]
    n_next = K.inward_normals[i]
    span = np.angle(n_next / n_prev)  # exterior angle pi - alpha, in (0, pi)
    dirs = [n_prev, n_next]
    for P in K.vertices:
        if P == V:
            continue
        phi = np.angle((P - V) / abs(P - V) / n_prev)
        if 0 <= phi <= span:
            dirs.append((P - V) / abs(P - V))
    return float(np.max(ray_exit(K, np.full(len(dirs), V), np.array(dirs))))


@dataclass(frozen=True)
class GeometrySummary:
    d: float
    w: float
    vertices: list
    delta0: Optional[float]
    h0: float
    c0: float
    mu: Optional[float]
    cK: float
    q: float
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "w": self.w,
            "vertices": [v.to_dict() for v in self.vertices],
            "delta0": self.delta0,
            "h0": self.h0,
            "c0": self.c0,
            "mu": self.mu,
            "cK": self.cK,
            "q": self.q,
            "notes": list(self.notes),
        }


def side_depth_bounds(K: Polygon, delta0: Optional[float]) -> np.ndarray:
    """Per-side lower bound on local depth away from acute corners."""
    vd = vertex_data(K)
    w = K.width
    out = np.empty(K.m)
    for e in range(K.m):
        A, B = e, (e + 1) % K.m
        ab = float(K.edge_lengths[e])
        chord_A = float(normal_chord(K, e, 0.0))
        chord_B = float(normal_chord(K, e, 1.0))
        acute_A, acute_B = vd[A].acute, vd[B].acute
        if not acute_A and not acute_B:
            out[e] = min(chord_A, chord_B)
        elif acute_A and acute_B:
            out[e] = delta0 * w / ab
        elif acute_A:
            out[e] = delta0 * chord_B / ab
        else:
            out[e] = delta0 * chord_A / ab
    return out


def geometry_summary(K: Polygon, q: float) -> GeometrySummary:
    if not q > 0:
        raise ValueError("q must be positive")
    d, w = K.diameter, K.width
    vd = vertex_data(K)
    acute = [v for v in vd if v.acute]
    notes = []
    if acute:
        delta0 = min(v.R for v in acute) / 8
        mu = min(constants.mu(v.alpha, q, d) for v in acute)
    else:
        delta0 = None
        mu = None
        notes.append("no acute vertices: c(K) = 4^(-1/q) * c0")
    h0 = float(np.min(side_depth_bounds(K, delta0)))
    c0 = h0**4 / (1500 * d**5)
    if mu is None:
        cK = 4 ** (-1 / q) * c0
    else:
        cK = 4 ** (-1 / q) * min(mu ** (1 / q), c0)
    return GeometrySummary(d, w, vd, delta0, h0, c0, mu, cK, q, notes)


@dataclass(frozen=True)
class TiltedFrame:
    vertex: int
    alpha: float
    zeta: complex
    dist: float  # |V zeta|
    theta: float
    D: complex
    T: complex
    a: float  # |T zeta|
    b: float  # |D zeta|
    h_coeff: float  # |TD| = h_coeff * |V zeta|
    t_T: float  # parameters of T, D on edge vertex-1 (U at 0, V at 1)
    t_D: float

    @property
    def ratio(self) -> float:
        return self.a / self.b


def _ray_hits_segment(origin, direction, P, Q):
    """Intersection of a ray with segment [P, Q] as (ray t, segment s)."""
    seg = Q - P
    den = _cross(direction, seg)
    if abs(den) < 1e-15 * abs(direction) * abs(seg):
        return None
    diff = P - origin
    t = _cross(diff, seg) / den
    s = _cross(diff, direction) / den
    return t, s


def point_on_side(K: Polygon, vertex: int, dist: float) -> complex:
    """The point of side [V, W] at distance ``dist`` from V."""
    return complex(K.vertices[vertex] + dist * K.edges[vertex] / K.edge_lengths[vertex])


def tilted_frame(K: Polygon, vertex: int, zeta: complex) -> TiltedFrame:
    """Rays from ``zeta`` tilted 2*theta and 3*theta past the inward normal.

    ``zeta`` lies inside side (V, W); D and T are where the rays meet (V, U].
    Right angles are admitted here (the construction is continuous there).
    """
    m = K.m
    i = vertex % m
    V, W, U = K.vertices[i], K.vertices[(i + 1) % m], K.vertices[i - 1]
    alpha = float(K.angles[i])
    if alpha > math.pi / 2 + ACUTE_TOL:
        raise VertexNotAcute(f"angle at vertex {i} is {alpha:.6g} >= pi/2")
    zeta = complex(zeta)
    vw = K.edges[i]
    lvw, lvu = float(K.edge_lengths[i]), float(K.edge_lengths[i - 1])
    s = ((zeta - V) * np.conj(vw)).real / lvw**2
    off = abs(_cross(vw, zeta - V)) / lvw
    tol = 1e-12 * K.diameter
    if off > 1e-9 * K.diameter or not (tol < s * lvw < lvw - tol):
        raise PointNotOnBoundary("zeta must lie inside side (V, W)")
    dist = float(abs(zeta - V))
    if dist > lvu / 8 * (1 + 1e-12):
        raise ZetaTooFar(f"|V zeta| = {dist:g} exceeds |VU|/8 = {lvu / 8:g}")
    theta = constants.theta(alpha)
    base = vw / lvw * 1j
    pts = []
    for k in (2, 3):
        hit = _ray_hits_segment(zeta, base * np.exp(1j * k * theta), V, U)
        if hit is None or hit[0] <= 0 or not (0 < hit[1] <= 1 + 1e-12):
            raise ZetaTooFar("tilted ray misses side (V, U]")
        pts.append((V + hit[1] * (U - V), hit[1]))
    (D, sD), (T, sT) = pts
    sa = math.sin(alpha)
    h_coeff = sa * math.sin(theta) / (math.cos(alpha - 2 * theta) * math.cos(alpha - 3 * theta))
    return TiltedFrame(
        vertex=i,
        alpha=alpha,
        zeta=zeta,
        dist=dist,
        theta=theta,
        D=complex(D),
        T=complex(T),
        a=float(abs(T - zeta)),
        b=float(abs(D - zeta)),
        h_coeff=h_coeff,
        t_T=1.0 - float(sT),
        t_D=1.0 - float(sD),
    )
