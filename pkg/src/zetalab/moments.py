"""Moments M_k(sigma, T) = int_1^T |zeta(sigma + i t)|^{2k} dt."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from .divisor import series_target
from .errors import DomainError, InputError
from .functions import ZetaPower
from .quadrature import DEFAULT_QUADRATURE, Integral, QuadratureConfig, exact_sum, integrate
from .zeta import DEFAULT_ZETA_CONFIG, ZetaEvalConfig

CSV_FIELDS = ("k", "sigma", "T", "integral", "average", "target", "tail_bound", "rel_gap")


@dataclass
class MomentRecord:
    k: int
    sigma: float
    T: float
    integral: float
    average: float
    target: float
    tail_bound: float
    rel_gap: float
    quad_error: float = 0.0

    def row(self):
        return [getattr(self, f) for f in CSV_FIELDS]


def _check(k, sigma, T, max_k):
    if not 1 <= k <= max_k:
        raise DomainError(f"k={k} outside 1..{max_k}")
    if not 0.5 <= sigma <= 2.0:
        raise DomainError(f"sigma={sigma} outside [0.5, 2]")
    if not T >= 1:
        raise DomainError("T must be at least 1")


def _power(k):
    return lambda v, t: np.abs(v[0]) ** (2 * k)


def moment_integral(k, sigma, a, b, qcfg=DEFAULT_QUADRATURE, zcfg=DEFAULT_ZETA_CONFIG) -> Integral:
    """int_a^b |zeta(sigma + i t)|^{2k} dt as a quadrature :class:`Integral`."""
    return integrate([ZetaPower(1, sigma)], _power(k), a, b, qcfg, zcfg)


def _target(k, sigma):
    if sigma <= 0.5:
        return math.nan, math.nan
    tv = series_target(k, sigma)
    return tv.partial_sum, tv.tail_bound


def _record(k, sigma, T, integral, qerr):
    target, tail = _target(k, sigma)
    avg = integral / T
    gap = abs(avg - target) / target if math.isfinite(target) else math.nan
    return MomentRecord(k, sigma, T, integral, avg, target, tail, gap, qerr)


def moment(k: int, sigma: float, T: float, qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
           zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG, max_k: int = 4) -> MomentRecord:
    """Compute M_k(sigma, T) and compare M_k/T with sum d_k(n)^2 n^{-2 sigma}."""
    _check(k, sigma, T, max_k)
    res = moment_integral(k, sigma, 1.0, float(T), qcfg, zcfg)
    return _record(k, sigma, float(T), res.value.real, res.error)


def convergence_sweep(k: int, sigma: float, T_list: Sequence[float],
                      qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                      zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG, max_k: int = 4) -> List[MomentRecord]:
    """Moments along an ascending list of horizons, extending the integral incrementally."""
    T_list = [float(T) for T in T_list]
    if any(b < a for a, b in zip(T_list, T_list[1:])):
        raise InputError("T_list must be sorted ascending")
    out = []
    pieces, err, left = [], 0.0, 1.0
    for T in T_list:
        _check(k, sigma, T, max_k)
        seg = moment_integral(k, sigma, left, T, qcfg, zcfg)
        pieces.append(seg.panel_values)
        err += seg.error
        left = T
        total = exact_sum(np.concatenate(pieces)).real
        out.append(_record(k, sigma, T, total, err))
    return out


@dataclass
class ConvexityVerdict:
    sigma: float
    midpoint_value: float
    chord_value: float
    tolerance: float
    holds: bool


@dataclass
class ConvexityResult:
    points: list = field(default_factory=list)  # (sigma, average)
    verdicts: list = field(default_factory=list)

    @property
    def all_hold(self):
        return all(v.holds for v in self.verdicts)


def convexity_probe(k: int, sigma_grid: Sequence[float], T: float,
                    qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                    zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG, max_k: int = 4) -> ConvexityResult:
    """Midpoint convexity of sigma -> M_k(sigma, T) on an equally spaced grid."""
    grid = [float(s) for s in sigma_grid]
    if len(grid) < 3:
        raise InputError("convexity probe needs at least 3 grid points")
    steps = np.diff(grid)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12):
        raise InputError("sigma grid must be equally spaced")
    vals, errs = [], []
    for s in grid:
        _check(k, s, T, max_k)
        res = moment_integral(k, s, 1.0, float(T), qcfg, zcfg)
        vals.append(res.value.real)
        errs.append(res.error + qcfg.refine_tol * abs(res.value.real))
    out = ConvexityResult(points=[(s, v / T) for s, v in zip(grid, vals)])
    for i in range(1, len(grid) - 1):
        chord = 0.5 * (vals[i - 1] + vals[i + 1])
        tol = errs[i] + 0.5 * (errs[i - 1] + errs[i + 1])
        out.verdicts.append(ConvexityVerdict(grid[i], vals[i], chord, tol, vals[i] <= chord + tol))
    return out
