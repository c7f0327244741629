"""Level-set densities and restricted L^2 mass for functions on [1, T].

Level sets of zeta are not located exactly; their measure is a weighted count
of quadrature nodes, with an error of at most the width of every panel in
which the level set starts or stops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from .errors import DomainError, InputError
from .functions import BohrPolynomial, Constant, FunctionSpec, Indicator, SpikeTrain
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, integrate, sample
from .zeta import DEFAULT_ZETA_CONFIG, ZetaEvalConfig

CSV_FIELDS = ("T", "threshold", "density", "mass_fraction")


@dataclass
class ConcentrationProfile:
    f: FunctionSpec
    horizon_T: float
    thresholds: list
    densities: list
    mass_fractions: list
    measures: list = field(default_factory=list)
    measure_errors: list = field(default_factory=list)

    def rows(self):
        return [[self.horizon_T, c, d, m] for c, d, m in zip(self.thresholds, self.densities, self.mass_fractions)]

    def to_json(self):
        return {
            "f": repr(self.f),
            "T": self.horizon_T,
            "thresholds": list(self.thresholds),
            "densities": list(self.densities),
            "mass_fractions": list(self.mass_fractions),
            "measure_errors": list(self.measure_errors),
        }


@dataclass
class EssSupEstimate:
    g: FunctionSpec
    horizon_T: float
    value: float


def concentration_profile(f: FunctionSpec, thresholds: Sequence[float], T: float,
                          qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                          zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> ConcentrationProfile:
    """Density of {|f| > C} in [1, T] and the share of int |f|^2 living there.

    Densities are normalised by T - 1, the length of the window, so that a
    set covering the whole window has density exactly 1.
    """
    C = [float(c) for c in thresholds]
    if any(b < a for a, b in zip(C, C[1:])):
        raise InputError("thresholds must be ascending")
    if not T > 1:
        raise DomainError("concentration profile needs T > 1")
    smp = sample([f], 1.0, float(T), qcfg, zcfg)
    mod = np.abs(smp.values[0])
    mass = smp.weights * mod * mod
    total = math.fsum(mass.tolist())
    per_panel = 2 * qcfg.nodes_per_panel
    widths = smp.panel_width.reshape(-1, per_panel)[:, 0]
    window = float(T) - 1.0
    dens, frac, meas, errs = [], [], [], []
    for c in C:
        above = mod > c
        pm = above.reshape(-1, per_panel)
        full = np.all(pm, axis=1)
        mixed = np.any(pm, axis=1) & ~full
        # panels entirely inside the level set count with their exact width
        partial = (above.reshape(-1, per_panel) & mixed[:, None]).ravel()
        m = math.fsum(widths[full].tolist() + smp.weights[partial].tolist())
        meas.append(m)
        errs.append(math.fsum(widths[mixed].tolist()))
        dens.append(min(1.0, m / window))
        frac.append(math.fsum(mass[above].tolist()) / total if total > 0 else 0.0)
    return ConcentrationProfile(f, float(T), C, dens, frac, meas, errs)


def ess_sup(g: FunctionSpec, T: float) -> EssSupEstimate:
    """Analytic sup bound: exact for Constant and Indicator, coefficient sum for Bohr polynomials."""
    bound = g.sup_bound()
    if bound is None:
        raise InputError(f"{type(g).__name__} is not bounded")
    return EssSupEstimate(g, float(T), float(bound))


@dataclass
class WeightedFunctional:
    ratio: float
    ess_sup: EssSupEstimate
    numerator: complex
    denominator: float
    quadrature_error: float


def weighted_functional(f: FunctionSpec, g: FunctionSpec, T: float, phase_stripped: bool = False,
                        qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                        zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> WeightedFunctional:
    """|int f^2 g| / int |f|^2 over [1, T].

    With ``phase_stripped`` the numerator is int |f|^2 g instead, which is
    what the optimal weight e^{-2 i arg f} g achieves.
    """
    es = ess_sup(g, T)

    def num(v, t):
        f2 = np.abs(v[0]) ** 2 if phase_stripped else v[0] * v[0]
        return f2 * v[1]

    n = integrate([f, g], num, 1.0, float(T), qcfg, zcfg)
    d = integrate([f], lambda v, t: np.abs(v[0]) ** 2, 1.0, float(T), qcfg, zcfg)
    den = d.value.real
    ratio = abs(n.value) / den if den > 0 else 0.0
    return WeightedFunctional(ratio, es, n.value, den, n.error + d.error)


def bounded_approx_gap(f: FunctionSpec, f_N: FunctionSpec, T: float,
                       qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                       zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> float:
    """(1/T) int_1^T |f - f_N|^2 dt."""
    def sq(v, t):
        d = v[0] - v[1]
        return d.real * d.real + d.imag * d.imag

    return integrate([f, f_N], sq, 1.0, float(T), qcfg, zcfg).value.real / T


@dataclass
class SpikeDemoRow:
    T: float
    density: float
    mass_fraction: float
    spike_mass: float


def spike_null_set_demo(spike: SpikeTrain, T_grid: Sequence[float]) -> List[SpikeDemoRow]:
    """Closed-form density of the spike support and the share of int |1 + spike|^2 on it.

    density(T) = sum_{centres <= T} w_n / T.
    """
    rows = []
    for T in T_grid:
        T = float(T)
        n, w = spike.clipped_widths(T)
        h = spike.heights(n)
        centred = n <= T
        density = math.fsum(spike.widths(n[centred]).tolist()) / T
        on = math.fsum(((1.0 + h) ** 2 * w).tolist())
        off = (T - 1.0) - math.fsum(w.tolist())
        total = on + off
        frac = on / total if total > 0 and w.size else 0.0
        rows.append(SpikeDemoRow(T, density, frac, math.fsum((h * h * w).tolist())))
    return rows
