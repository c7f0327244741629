"""Laplace transforms of |zeta|^{2k} and Abel/Cesaro comparisons.

L(z) = int_1^{t_cut} |zeta(sigma + i t)|^{2k} e^{-z t} dt with z = x + i y.
The neglected tail beyond t_cut is bounded by a polynomial envelope
A t^p of the integrand, fitted to the panel maxima seen during integration:

    int_{t_cut}^oo A t^p e^{-x t} dt <= A t_cut^p e^{-x t_cut} / x / (1 - p / (x t_cut)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .divisor import series_target
from .errors import DomainError, InputError
from .functions import FunctionSpec, ZetaPower
from .moments import moment
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, integrate
from .zeta import DEFAULT_ZETA_CONFIG, ZetaEvalConfig

CUT_FACTOR = 25.0
CSV_FIELDS = ("k", "sigma", "x", "t_cut", "value_re", "value_im", "trunc_bound", "target", "rel_gap")


@dataclass
class LaplaceProbe:
    k: int
    sigma: float
    x: float
    y: float
    t_cut: float
    value: complex
    truncation_bound: float
    quadrature_error: float = 0.0
    envelope: tuple = (0.0, 0.0)  # (A, p) with |f|^2 <= A t^p
    target: float = math.nan

    @property
    def rel_gap(self):
        if not math.isfinite(self.target):
            return math.nan
        return abs(self.x * self.value.real - self.target) / self.target

    def row(self):
        return [self.k, self.sigma, self.x, self.t_cut, self.value.real, self.value.imag,
                self.truncation_bound, self.target, self.rel_gap]


def _envelope(spec_power, t_mid, peak):
    """Smallest A with peak <= A t^p for the given exponent p."""
    p = spec_power
    if peak.size == 0:
        return 0.0, p
    return float(np.max(peak / t_mid ** p)), p


def _tail_bound(A, p, x, t_cut):
    xt = x * t_cut
    if xt <= p:
        return math.inf
    return A * t_cut ** p * math.exp(-xt) / x / (1.0 - p / xt)


def default_cut(x, zcfg=DEFAULT_ZETA_CONFIG):
    """1 + 25/x, so the weight has decayed by e^{-25} over the window, capped at t_max."""
    return min(1.0 + CUT_FACTOR / x, zcfg.t_max)


def laplace_of(spec: FunctionSpec, x: float, y: float = 0.0, t_cut: Optional[float] = None,
               qcfg: QuadratureConfig = DEFAULT_QUADRATURE, zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG,
               growth_exponent: float = 1.0):
    """Laplace transform of |spec|^2 on [1, t_cut]; returns (value, error, trunc_bound, (A, p))."""
    if not x > 0:
        raise DomainError("Laplace transform needs Re z = x > 0")
    t_cut = default_cut(x, zcfg) if t_cut is None else float(t_cut)
    if t_cut < 1:
        raise InputError("t_cut must be at least 1")
    peaks: List[np.ndarray] = []
    mids: List[np.ndarray] = []

    def combine(v, t):
        mod2 = np.abs(v[0]) ** 2
        if t.ndim == 2:
            peaks.append(mod2.max(axis=1))
            mids.append(t.max(axis=1))
        ph = y * t
        return mod2 * np.exp(-x * t) * (np.cos(ph) - 1j * np.sin(ph))

    res = integrate([spec], combine, 1.0, t_cut, qcfg, zcfg)
    peak = np.concatenate(peaks) if peaks else np.zeros(0)
    mid = np.concatenate(mids) if mids else np.zeros(0)
    A, p = _envelope(growth_exponent, mid, peak)
    return res.value, res.error, _tail_bound(A, p, x, t_cut), (A, p)


def _target(k, sigma):
    if sigma <= 0.5:
        return math.nan
    tv = series_target(k, sigma)
    return tv.partial_sum


def laplace(k: int, sigma: float, x: float, y: float = 0.0, t_cut: Optional[float] = None,
            qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
            zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> LaplaceProbe:
    """L_{sigma,k}(x + i y) truncated at t_cut (default min(25/x, t_max))."""
    if not 1 <= k <= 4:
        raise DomainError(f"k={k} outside 1..4")
    spec = ZetaPower(k, sigma)
    # convexity bound: |zeta(sigma+it)|^{2k} grows at most like t^{k max(0, 1-sigma)} up to logs
    p = k * max(0.0, 1.0 - sigma) + 0.5
    value, err, tb, env = laplace_of(spec, x, y, t_cut, qcfg, zcfg, growth_exponent=p)
    tc = default_cut(x, zcfg) if t_cut is None else float(t_cut)
    return LaplaceProbe(k, sigma, x, y, tc, value, tb, err, env, _target(k, sigma))


def abel_probe(k: int, sigma: float, x_list: Sequence[float], t_cut: Optional[float] = None,
               qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
               zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> List[LaplaceProbe]:
    """x L(x) along a descending list of x, compared with sum d_k(n)^2 n^{-2 sigma}."""
    xs = [float(x) for x in x_list]
    if any(b > a for a, b in zip(xs, xs[1:])):
        raise InputError("x_list must be descending")
    return [laplace(k, sigma, x, 0.0, t_cut, qcfg, zcfg) for x in xs]


@dataclass
class AbelCesaro:
    k: int
    sigma: float
    T: float
    cesaro: float
    abel: float
    t_cut: float
    truncation_bound: float

    @property
    def discrepancy(self):
        return abs(self.abel - self.cesaro) / abs(self.cesaro)


def abel_cesaro_compare(k: int, sigma: float, T: float,
                        qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                        zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> AbelCesaro:
    """Cesaro mean M_k/T against the Abel mean x L(x) at x = 1/T."""
    if T < 100:
        raise InputError("abel_cesaro_compare needs T >= 100")
    rec = moment(k, sigma, T, qcfg, zcfg)
    x = 1.0 / T
    lp = laplace(k, sigma, x, 0.0, None, qcfg, zcfg)
    return AbelCesaro(k, sigma, float(T), rec.average, x * lp.value.real, lp.t_cut,
                      x * lp.truncation_bound)


@dataclass
class ContinuityResult:
    sigmas: list
    values: list
    direct: float
    gaps: list = field(default_factory=list)


def line_continuity_probe(k: int, sigma_list: Sequence[float], sigma_limit: float, x: float,
                          t_cut: Optional[float] = None,
                          qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                          zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> ContinuityResult:
    """L along sigma_n -> sigma_limit, with relative gaps to the value at sigma_limit."""
    if not x > 0:
        raise DomainError("x must be positive")
    direct = laplace(k, sigma_limit, x, 0.0, t_cut, qcfg, zcfg).value.real
    values = [laplace(k, s, x, 0.0, t_cut, qcfg, zcfg).value.real for s in sigma_list]
    gaps = [abs(v - direct) / direct for v in values]
    return ContinuityResult([float(s) for s in sigma_list], values, direct, gaps)
