"""Explicit constants of the polygon oscillation bounds.

All functions are closed forms in the vertex angle ``alpha`` (radians),
the exponent ``q``, the diameter ``d`` and the measure parameter ``omega``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

from .errors import OmegaOutOfRange

OMEGA_MAX = 8 / math.e


def lam(q: float) -> float:
    """Threshold factor of the large-value set: (8 pi (q+1))^(-1/q)."""
    return (8 * math.pi * (q + 1)) ** (-1 / q)


def theta(alpha: float) -> float:
    """Tilt angle with 8 sin(2 theta) = sin(alpha)."""
    return 0.5 * math.asin(math.sin(alpha) / 8)


def check_omega(omega):
    if not 0 < omega < OMEGA_MAX:
        raise OmegaOutOfRange(f"omega must lie in (0, 8/e), got {omega!r}")


def tne_constant(alpha: float, omega: float, d: float) -> float:
    """sin^2(alpha) / (2000 d log(8/omega))."""
    check_omega(omega)
    return math.sin(alpha) ** 2 / (2000 * d * math.log(8 / omega))


def omega_alpha(alpha: float) -> float:
    return math.sin(alpha) / 32


def kappa(alpha: float, d: float) -> float:
    return math.sin(alpha) ** 2 / (2000 * d * math.log(256 / math.sin(alpha)))


def mu(alpha: float, q: float, d: float) -> float:
    """Acute-vertex constant [2 kappa^-q + (1 + 2^7/sin^2 a) (8d/sin a)^q]^-1.

    Evaluated in log space so tiny angles do not overflow.
    """
    s = math.sin(alpha)
    t1 = math.log(2) - q * math.log(kappa(alpha, d))
    t2 = math.log1p(128 / s**2) + q * math.log(8 * d / s)
    hi = max(t1, t2)
    return math.exp(-(hi + math.log(math.exp(t1 - hi) + math.exp(t2 - hi))))


def upper_constant(q: float) -> float:
    """Constant of the O(n) upper bound (w/d^2) C_q n."""
    r = math.sqrt(q * q + 3 * q + 1)
    return 121 * (3 * q + 2 + 2 * r) / (5 * q) * (3 + 2 * q + 2 * r) ** (1 / q)


def upper_threshold(q: float, d: float, w: float) -> float:
    """Smallest degree for which the upper bound is asserted."""
    return 2 * (1 + 1 / q) * (d / w) ** 2 * math.log(d / w)


def decay_n0(q: float) -> int:
    """Smallest n with 2^-n < lam(q) n^(-2/q)."""
    lq = lam(q)
    n = 1
    while not (-n * math.log(2) < math.log(lq) - 2 / q * math.log(n)):
        n += 1
    return n


def n0(q: float, d: Optional[float] = None, h: Optional[float] = None,
       clauses=("min_degree", "corner_decay", "depth")) -> tuple[int, str]:
    """Degree threshold and the clause that binds.

    Clauses: ``min_degree`` (n >= 8), ``corner_decay`` (2^-n < lam n^(-2/q)),
    ``depth`` (32 d^4 / h^4, needs ``d`` and ``h``).
    """
    values = {}
    if "min_degree" in clauses:
        values["min_degree"] = 8
    if "corner_decay" in clauses:
        values["corner_decay"] = decay_n0(q)
    if "depth" in clauses:
        if d is None or h is None:
            raise ValueError("depth clause needs d and h")
        x = 32 * d**4 / h**4
        values["depth"] = math.ceil(x * (1 - 1e-12))  # keep float noise off exact integers
    if not values:
        return 1, "none"
    clause = max(values, key=values.get)
    return int(values[clause]), clause


@dataclass(frozen=True)
class Constants:
    lam: float
    theta: Optional[float]
    C: Optional[float]
    omega_alpha: Optional[float]
    kappa: Optional[float]
    mu: Optional[float]
    Cq: float
    n0: int
    n0_clause: str

    def to_dict(self) -> dict:
        return asdict(self)


def constants(alpha: Optional[float], q: float, d: float, omega: Optional[float] = None) -> Constants:
    """Evaluate every closed form at once (alpha-dependent ones need alpha)."""
    if not q > 0 or not d > 0:
        raise ValueError("q and d must be positive")
    if omega is not None:
        check_omega(omega)
    nn, clause = n0(q, clauses=("min_degree", "corner_decay"))
    if alpha is None:
        return Constants(lam(q), None, None, None, None, None, upper_constant(q), nn, clause)
    if not 0 < alpha <= math.pi / 2:
        raise ValueError("alpha must lie in (0, pi/2]")
    return Constants(
        lam=lam(q),
        theta=theta(alpha),
        C=tne_constant(alpha, omega, d) if omega is not None else None,
        omega_alpha=omega_alpha(alpha),
        kappa=kappa(alpha, d),
        mu=mu(alpha, q, d),
        Cq=upper_constant(q),
        n0=nn,
        n0_clause=clause,
    )
