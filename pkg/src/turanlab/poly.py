"""Polynomials given by their zeros.

Magnitudes go through a log channel, ``log|p| = log|c| + sum log|z - z_j|``,
so degrees in the hundreds on domains with diameter above one neither
overflow nor underflow.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import EvalAtZero
from .geom import Polygon, as_complex, contains

# direct products are used below this degree
DIRECT_MAX_DEGREE = 64
_CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class PolyByZeros:
    zeros: np.ndarray
    leading: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "zeros", as_complex(self.zeros))
        object.__setattr__(self, "leading", complex(self.leading))
        if self.leading == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def n(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        return evaluate(self, z)

    def to_json(self) -> dict:
        return {
            "zeros": [[float(z.real), float(z.imag)] for z in self.zeros],
            "leading": [self.leading.real, self.leading.imag],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolyByZeros":
        lead = data.get("leading", [1.0, 0.0])
        zeros = data["zeros"]
        return cls(np.asarray(zeros, dtype=float).reshape(-1, 2) if len(zeros) else [], complex(*lead))

    def __repr__(self):
        return f"PolyByZeros(n={self.n}, leading={self.leading})"


def load_poly(path) -> PolyByZeros:
    with open(path) as fh:
        return PolyByZeros.from_json(json.load(fh))


def _chunks(z):
    for start in range(0, len(z), _CHUNK):
        yield slice(start, start + _CHUNK)


def log_abs_and_logderiv(p: PolyByZeros, z):
    """Return ``log|p(z)|`` and ``p'/p(z)`` (the latter nan at exact zeros)."""
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    la = np.empty(flat.shape)
    ld = np.empty(flat.shape, dtype=complex)
    c = np.log(abs(p.leading))
    for sl in _chunks(flat):
        diff = flat[sl, None] - p.zeros[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            la[sl] = c + np.log(np.abs(diff)).sum(axis=1)
            ld[sl] = (1.0 / diff).sum(axis=1)
    hit = ~np.isfinite(la)
    ld[hit] = np.nan
    return la.reshape(z.shape), ld.reshape(z.shape)


def log_abs(p: PolyByZeros, z) -> np.ndarray:
    """``log|p(z)|``; ``-inf`` at zeros."""
    return log_abs_and_logderiv(p, z)[0]


def log_abs_deriv(p: PolyByZeros, z) -> np.ndarray:
    """``log|p'(z)|``, exact at zeros of p through the product rule."""
    z = np.asarray(z, dtype=complex)
    la, ld = log_abs_and_logderiv(p, z)
    with np.errstate(divide="ignore"):
        out = np.asarray(la + np.log(np.abs(ld)))
        hit = np.isnan(ld)
        if np.any(hit):
            vals = np.array([_deriv_at_zero(p, w) for w in np.atleast_1d(z[hit])])
            out[hit] = np.log(np.abs(vals))
    return out


def _deriv_at_zero(p: PolyByZeros, w: complex) -> complex:
    diff = w - p.zeros
    mask = diff == 0
    if mask.sum() >= 2:
        return 0j
    return p.leading * np.prod(diff[~mask])


def evaluate(p: PolyByZeros, z):
    """``p(z) = leading * prod(z - z_j)``."""
    z = np.asarray(z, dtype=complex)
    if p.n <= DIRECT_MAX_DEGREE:
        return p.leading * np.prod(z[..., None] - p.zeros, axis=-1)
    la = log_abs(p, z)
    ang = np.angle(p.leading) + np.angle(z[..., None] - p.zeros).sum(axis=-1)
    return np.exp(la) * np.exp(1j * ang)


def deriv_eval(p: PolyByZeros, z):
    """``p'(z)``: p(z) * sum 1/(z - z_j) off the zero set, product rule on it."""
    z = np.asarray(z, dtype=complex)
    pz = evaluate(p, z)
    _, ld = log_abs_and_logderiv(p, z)
    out = pz * ld
    hit = np.isnan(ld)
    if np.any(hit):
        out = np.asarray(out)
        out[hit] = [_deriv_at_zero(p, w) for w in np.atleast_1d(z[hit])]
    return out


def log_deriv(p: PolyByZeros, z, scale: float | None = None):
    """``p'/p(z) = sum 1/(z - z_j)``.

    Raises EvalAtZero when ``z`` is within ``1e-14 * scale`` of a zero;
    ``scale`` defaults to the largest distance from ``z`` to a zero.
    """
    z = np.asarray(z, dtype=complex)
    dist = np.abs(z[..., None] - p.zeros)
    if p.n:
        s = dist.max() if scale is None else scale
        if np.any(dist.min(axis=-1) <= 1e-14 * s):
            raise EvalAtZero("log-derivative requested at a zero of p")
    return (1.0 / (z[..., None] - p.zeros)).sum(axis=-1)


def zeros_in(p: PolyByZeros, K: Polygon, tol: float = 0.0) -> bool:
    """True when every zero lies in K or within ``tol`` of its boundary."""
    return bool(np.all(contains(K, p.zeros, tol)))
