"""Riemann zeta on the strip 0.4 <= sigma <= 2.5 by Euler-Maclaurin summation.

The fast path is :func:`zeta_many`, a vectorised Euler-Maclaurin evaluator
whose main sum runs in a compiled kernel.  :func:`zeta_oracle` is a slow,
independent route through the alternating eta series (Borwein acceleration)
in multiple precision; it exists for cross-validation only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import mpmath
import numpy as np
from scipy.special import bernoulli

from . import _kernels
from .errors import AccuracyError, DomainError, InputError, PoleError, UnsupportedError

SIGMA_MIN = 0.4
SIGMA_MAX = 2.5
POLE_RADIUS = 1e-6
ORACLE_T_MAX = 2000.0

# B_0..B_26; index 2j holds B_{2j}
_BERNOULLI = bernoulli(26)


@dataclass(frozen=True)
class EvalPoint:
    sigma: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and math.isfinite(self.t)):
            raise DomainError(f"non-finite evaluation point ({self.sigma}, {self.t})")

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.t)


@dataclass(frozen=True)
class ZetaEvalConfig:
    """Euler-Maclaurin settings.

    The main sum uses ``N = ceil(em_terms * max(1, |t|)) + 20`` terms followed
    by ``bernoulli_order`` correction terms.  If the remainder bound exceeds
    ``target_abs_error`` the cutoff is doubled until it does not.
    """

    em_terms: float = 1.0
    bernoulli_order: int = 8
    target_abs_error: float = 1e-9
    t_max: float = 1e5

    def __post_init__(self):
        if not self.em_terms > 0:
            raise InputError("em_terms must be positive")
        if not 1 <= self.bernoulli_order <= 12:
            raise InputError("bernoulli_order must lie in 1..12")
        if not self.target_abs_error > 0:
            raise InputError("target_abs_error must be positive")

    def cutoff(self, t):
        """Main-sum cutoff N for |t| (scalar or array)."""
        return np.ceil(self.em_terms * np.maximum(1.0, np.abs(t))).astype(np.int64) + 20


DEFAULT_ZETA_CONFIG = ZetaEvalConfig()


@dataclass
class GrowthReport:
    t_grid: list
    moduli: list
    ratio_max: float
    fitted_exponent: Optional[float]
    fitted: bool = field(default=True)


class _LogTable:
    """Grow-only table of log n for n = 1..capacity."""

    def __init__(self):
        self.logn = np.zeros(0)

    def get(self, n):
        if n > self.logn.shape[0]:
            cap = max(n, 2 * self.logn.shape[0], 4096)
            self.logn = np.log(np.arange(1, cap + 1, dtype=np.float64))
        return self.logn[:n]


_LOG = _LogTable()


def log_table(n: int) -> np.ndarray:
    """log 1, ..., log n as a float64 array (shared, do not mutate)."""
    return _LOG.get(n)


def _check_region(sigma, t, cfg):
    if not (SIGMA_MIN <= sigma <= SIGMA_MAX):
        raise DomainError(f"sigma={sigma} outside the supported strip [{SIGMA_MIN}, {SIGMA_MAX}]")
    t = np.asarray(t, dtype=np.float64)
    if not np.all(np.isfinite(t)):
        raise DomainError("non-finite t")
    if t.size and np.max(np.abs(t)) > cfg.t_max:
        raise DomainError(f"|t| exceeds t_max={cfg.t_max}")
    if t.size and abs(sigma - 1.0) < POLE_RADIUS:
        if np.min(np.abs(t)) < POLE_RADIUS:
            raise PoleError("evaluation within 1e-6 of the pole s = 1")
    return t


def em_tail(sigma, t, N, order):
    """Euler-Maclaurin terms beyond the main sum sum_{n<N} n^{-s}.

    Returns ``(tail, remainder_bound)`` for s = sigma + i t; ``t`` and ``N``
    broadcast together.
    """
    t = np.asarray(t, dtype=np.float64)
    logN = np.log(np.asarray(N, dtype=np.float64))
    s = sigma + 1j * t
    n_pow = np.exp(-sigma * logN) * (np.cos(t * logN) - 1j * np.sin(t * logN))  # N^{-s}
    Nf = np.exp(logN)
    tail = n_pow * Nf / (s - 1.0) + 0.5 * n_pow
    poch = s.copy()  # s (s+1) ... (s+2j-2)
    power = n_pow / Nf  # N^{-s-2j+1}
    inv_n2 = 1.0 / (Nf * Nf)
    fact = 2.0
    for j in range(1, order + 1):
        tail = tail + (_BERNOULLI[2 * j] / fact) * poch * power
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
        power = power * inv_n2
        fact *= (2 * j + 1) * (2 * j + 2)
    first_omitted = np.abs((_BERNOULLI[2 * order + 2] / fact) * poch * power)
    bound = first_omitted * np.abs(s + 2 * order + 1) / (sigma + 2 * order + 1)
    return tail, bound


def zeta_many(sigma: float, t, cfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> np.ndarray:
    """zeta(sigma + i t) for an array of t at fixed sigma."""
    t_in = _check_region(sigma, t, cfg)
    shape = t_in.shape
    t_flat = t_in.ravel()
    neg = t_flat < 0
    ta = np.abs(t_flat)
    N = cfg.cutoff(ta)
    for _ in range(6):
        _, bound = em_tail(sigma, ta, N, cfg.bernoulli_order)
        bad = bound > cfg.target_abs_error
        if not np.any(bad):
            break
        N = np.where(bad, 2 * N, N)
    else:
        raise AccuracyError("Euler-Maclaurin remainder above target after 6 doublings")
    tail, _ = em_tail(sigma, ta, N, cfg.bernoulli_order)
    nmax = int(N.max()) if N.size else 1
    logn = log_table(nmax)
    amp = np.exp(-sigma * logn)
    main = _kernels.dirichlet_main_sums(ta, N - 1, logn, amp)
    out = main + tail
    out[neg] = np.conj(out[neg])
    return out.reshape(shape)


def zeta_real(x: float) -> float:
    """zeta(x) for real x > 1 (no strip restriction), used for series targets."""
    if not x > 1.0:
        raise DomainError("zeta_real needs x > 1")
    N = 64
    main = math.fsum(n ** -x for n in range(1, N))
    tail, _ = em_tail(x, np.zeros(1), N, 12)
    return main + float(tail[0].real)


def zeta(sigma: float, t: float, cfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> complex:
    """zeta(sigma + i t); negative t is handled by conjugation."""
    EvalPoint(sigma, t)
    return complex(zeta_many(sigma, np.array([t]), cfg)[0])


def abs_pow_2k(sigma: float, t: float, k: int, cfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG,
               max_k: int = 4) -> float:
    """|zeta(sigma + i t)|^{2k}."""
    if not 1 <= k <= max_k:
        raise DomainError(f"k={k} outside 1..{max_k}")
    return abs(zeta(sigma, t, cfg)) ** (2 * k)


@lru_cache(maxsize=64)
def _borwein_weights(n: int, dps: int):
    # d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), cumulative
    with mpmath.workdps(dps):
        term = mpmath.mpf(1)
        acc = term
        d = [acc]
        for i in range(1, n + 1):
            term = term * (n + i - 1) * (n - i + 1) * 4 / ((2 * i) * (2 * i - 1))
            acc = acc + term
            d.append(acc)
        return d


def zeta_oracle(sigma: float, t: float, digits: int = 20) -> complex:
    """Slow reference value from the eta series with Borwein acceleration.

    Uses ``zeta = eta / (1 - 2^{1-s})`` with enough working precision to
    absorb the e^{pi|t|/2} cancellation of the alternating series.
    """
    if abs(t) > ORACLE_T_MAX:
        raise UnsupportedError(f"oracle supports |t| <= {ORACLE_T_MAX}")
    if abs(complex(sigma, t) - 1.0) < POLE_RADIUS:
        raise PoleError("evaluation within 1e-6 of the pole s = 1")
    if t < 0:
        return zeta_oracle(sigma, -t, digits).conjugate()
    growth = math.pi * t / 2 + math.log1p(2 * t)
    n = int(math.ceil((growth + math.log(3.0) + digits * math.log(10)) / math.log(3 + math.sqrt(8))))
    n = 10 * ((n + 9) // 10)
    dps = int(growth / math.log(10)) + digits + 20
    d = _borwein_weights(n, dps)
    with mpmath.workdps(dps):
        s = mpmath.mpc(sigma, t)
        dn = d[n]
        acc = mpmath.mpc(0)
        for k in range(n):
            term = (d[k] - dn) * mpmath.power(k + 1, -s)
            acc = acc + term if k % 2 == 0 else acc - term
        eta = -acc / dn
        val = eta / (1 - mpmath.power(2, 1 - s))
        return complex(val)


def growth_diagnostic(t_grid: Sequence[float], cfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> GrowthReport:
    """Empirical growth of |zeta(1/2 + i t)| on a grid of heights.

    Reports max |zeta| t^{-1/6} and the least-squares slope of log|zeta|
    against log t.  Nothing is asserted against a theoretical exponent.
    """
    t = np.asarray(list(t_grid), dtype=np.float64)
    if t.size == 0:
        raise InputError("empty grid")
    if np.any(np.diff(t) < 0):
        raise InputError("grid must be sorted ascending")
    if t.size > 1 and t[0] == t[-1]:
        raise InputError("degenerate grid: all points equal")
    if t[0] < 10:
        raise InputError("growth grid must start at t >= 10")
    mod = np.abs(zeta_many(0.5, t, cfg))
    ratio_max = float(np.max(mod * t ** (-1.0 / 6.0)))
    keep = mod > 0
    if np.unique(t[keep]).size < 2:
        return GrowthReport(t.tolist(), mod.tolist(), ratio_max, None, fitted=False)
    slope = float(np.polyfit(np.log(t[keep]), np.log(mod[keep]), 1)[0])
    return GrowthReport(t.tolist(), mod.tolist(), ratio_max, slope)
