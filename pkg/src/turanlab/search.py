"""Derivative-free search for polynomials of small boundary oscillation.

The zeros of a degree-n polynomial are optimised as 2n real coordinates
with Nelder-Mead.  Points outside K are projected onto K and the squared
violation is added as a penalty, so the search can ride the boundary where
extremal configurations tend to put zeros.
"""
from __future__ import annotations

import csv
import io
import logging
import math
import time
import warnings
from dataclasses import asdict, dataclass, replace

import numpy as np
from scipy.optimize import minimize

from . import capacity, constants
from .errors import NotConverged
from .geom import Polygon, geometry_summary, project
from .poly import PolyByZeros
from .quad import QuadratureSpec, oscillation_log
from .verify import diameter_endpoints, fekete_zeros, random_zeros_in

log = logging.getLogger(__name__)

STRUCTURED_STARTS = ("centroid", "fekete", "boundary", "corner")


@dataclass(frozen=True)
class SearchConfig:
    n: int = 4
    q: float = 2.0
    restarts: int = 8
    max_evals: int = 1500
    step: float = 0.05  # initial simplex edge, in units of d
    seed: int = 0
    penalty: float = 100.0  # weight of squared violation / d^2
    proj_tol: float = 1e-12
    search_rtol: float = 1e-5
    audit_rtol: float = 1e-9

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if not self.q > 0:
            raise ValueError("q must be positive")


CSV_COLUMNS = ["n", "q", "best", "best_over_n", "lower_cK_n", "upper_Cq_n", "restarts", "seed",
               "audited_tol", "upper_applies", "upper_ok", "converged", "best_start", "wall_time"]


@dataclass
class SweepRow:
    n: int
    q: float
    best: float
    best_over_n: float
    lower_cK_n: float
    upper_Cq_n: float
    restarts: int
    seed: int
    audited_tol: float
    upper_applies: bool
    upper_ok: bool
    converged: bool
    best_start: str
    wall_time: float

    def to_dict(self) -> dict:
        return asdict(self)


def start_points(K: Polygon, n: int, idx: int, seed: int) -> tuple[str, np.ndarray]:
    """Initial zeros for restart ``idx``.

    The first four restarts are structured (centroid, Fekete points,
    equally spaced on the boundary, all at a diameter endpoint); later ones
    are uniform in K from ``SeedSequence([seed, idx])``.
    """
    if idx < len(STRUCTURED_STARTS):
        kind = STRUCTURED_STARTS[idx]
        if kind == "centroid":
            return kind, np.full(n, K.centroid)
        if kind == "fekete":
            return kind, fekete_zeros(K, n)
        if kind == "boundary":
            car = capacity.carrier(K)
            return kind, car.point((np.arange(n) + 0.5) / n * car.length)
        return kind, np.full(n, diameter_endpoints(K)[0])
    rng = np.random.default_rng(np.random.SeedSequence([seed, idx]))
    return "random", random_zeros_in(K, n, rng)


def _objective(K: Polygon, cfg: SearchConfig, spec: QuadratureSpec):
    d = K.diameter
    n = cfg.n

    def f(x):
        z = x[:n] + 1j * x[n:]
        zp = project(K, z)
        viol = float(np.sum(np.abs(z - zp) ** 2)) / d**2
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            logM, _ = oscillation_log(PolyByZeros(zp), K, cfg.q, spec)
        return logM + cfg.penalty * viol

    return f


def audit(K: Polygon, zeros, q: float, rtol: float = 1e-9) -> tuple[PolyByZeros, float, float]:
    """Project zeros onto K and evaluate ``M_q`` at tight tolerance."""
    p = PolyByZeros(project(K, np.asarray(zeros, dtype=complex)))
    logM, rel = oscillation_log(p, K, q, QuadratureSpec(rtol=rtol))
    M = math.exp(logM)
    return p, M, M * rel


def minimize_oscillation(K: Polygon, config: SearchConfig) -> tuple[PolyByZeros, SweepRow]:
    """Multi-start Nelder-Mead minimisation of ``M_q(p)`` over zeros in K.

    Each restart's result is audited at ``audit_rtol`` and the smallest
    audited value wins, so adding restarts never raises the reported minimum.
    Raises RuntimeError if the audited value falls below ``c(K) n``, which can
    only come from a numerical defect.
    """
    cfg = config
    t0 = time.perf_counter()
    n, d = cfg.n, K.diameter
    f = _objective(K, cfg, QuadratureSpec(rtol=cfg.search_rtol))
    best = None
    for idx in range(cfg.restarts):
        kind, z0 = start_points(K, n, idx, cfg.seed)
        x0 = np.concatenate([z0.real, z0.imag])
        simplex = np.vstack([x0, x0 + cfg.step * d * np.eye(2 * n)])
        res = minimize(f, x0, method="Nelder-Mead",
                       options={"maxfev": cfg.max_evals, "initial_simplex": simplex,
                                "xatol": 1e-8 * d, "fatol": 1e-10, "adaptive": True})
        p, M, err = audit(K, res.x[:n] + 1j * res.x[n:], cfg.q, cfg.audit_rtol)
        log.debug("restart %d (%s): M = %.10g, evals = %d, success = %s",
                  idx, kind, M, res.nfev, res.success)
        if best is None or M < best[1]:
            best = (p, M, err, bool(res.success), kind)
    p, M, err, conv, kind = best
    if not conv:
        warnings.warn(f"best Nelder-Mead run for n={n} stopped at {cfg.max_evals} evaluations",
                      NotConverged, stacklevel=2)

    gs = geometry_summary(K, cfg.q)
    lower = gs.cK * n
    if M < lower - 3 * err:
        raise RuntimeError(f"audited M_q = {M:.6g} is below c(K) n = {lower:.6g}")
    upper = constants.upper_constant(cfg.q) * gs.w / d**2 * n
    applies = n >= constants.upper_threshold(cfg.q, d, gs.w)
    upper_ok = M <= upper + 3 * err
    if applies and not upper_ok:
        log.warning("n=%d: best M_q = %.6g exceeds the upper bound %.6g", n, M, upper)
    row = SweepRow(n=n, q=cfg.q, best=M, best_over_n=M / n, lower_cK_n=lower, upper_Cq_n=upper,
                   restarts=cfg.restarts, seed=cfg.seed, audited_tol=cfg.audit_rtol,
                   upper_applies=applies, upper_ok=upper_ok, converged=conv, best_start=kind,
                   wall_time=time.perf_counter() - t0)
    return p, row


def sweep(K: Polygon, n_list, q_list, config: SearchConfig = SearchConfig()) -> list[SweepRow]:
    """One minimisation per ``(n, q)``, in the given order."""
    if any(n < 1 for n in n_list):
        raise ValueError("all degrees must be at least 1")
    rows = []
    for q in q_list:
        for n in n_list:
            _, row = minimize_oscillation(K, replace(config, n=int(n), q=float(q)))
            log.info("n=%d q=%g best=%.8g best/n=%.6g", row.n, row.q, row.best, row.best_over_n)
            rows.append(row)
    return rows


def rows_to_csv(rows, timing: bool = True) -> str:
    cols = CSV_COLUMNS if timing else CSV_COLUMNS[:-1]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for r in rows:
        row = r.to_dict()
        for k in ("best", "best_over_n", "lower_cK_n", "upper_Cq_n"):
            row[k] = repr(row[k])
        writer.writerow(row)
    return buf.getvalue()
