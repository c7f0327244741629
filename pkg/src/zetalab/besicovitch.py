"""Finite-horizon B^2 numerics: means, Fourier coefficients, Bohr partial sums, distances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .divisor import divisor_sieve, series_target, series_value
from .errors import DomainError, InputError
from .functions import (BohrPolynomial, Constant, Difference, Exponential, FunctionSpec, Indicator,
                        LinearCombination, SpikeTrain, ZetaPower)
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, integrate
from .zeta import DEFAULT_ZETA_CONFIG, ZetaEvalConfig

FREQ_TOL = 1e-12

__all__ = [
    "EmpiricalMean", "FourierCoefficient", "B2Distance", "inner_product", "fourier_coefficient",
    "bohr_partial_sum", "b2_distance", "parseval_sum", "cauchy_distance_empirical",
    "FunctionSpec", "ZetaPower", "BohrPolynomial", "Exponential", "Indicator", "Difference",
    "SpikeTrain", "Constant", "LinearCombination",
]


@dataclass
class EmpiricalMean:
    horizon_T: float
    value: complex
    quadrature_error: float


@dataclass
class FourierCoefficient:
    lam: float
    horizon_T: float
    empirical: complex
    predicted: complex
    quadrature_error: float = 0.0

    @property
    def abs_error(self):
        return abs(self.empirical - self.predicted)

    def to_json(self):
        return {
            "lambda": self.lam,
            "T": self.horizon_T,
            "empirical": [self.empirical.real, self.empirical.imag],
            "predicted": [self.predicted.real, self.predicted.imag],
            "abs_error": self.abs_error,
        }


@dataclass
class B2Distance:
    k: int
    sigma: float
    N: int
    T: float
    empirical: float
    analytic_tail: float
    quadrature_error: float

    @property
    def rel_gap(self):
        return abs(self.empirical - self.analytic_tail) / self.analytic_tail


def _cross(v, t):
    return v[0] * np.conj(v[1])


def _sqdiff(v, t):
    d = v[0] - v[1]
    return d.real * d.real + d.imag * d.imag


def _mean(specs, combine, T, qcfg, zcfg):
    if not T >= 1:
        raise DomainError("horizon T must be at least 1")
    res = integrate(specs, combine, 1.0, float(T), qcfg, zcfg)
    return EmpiricalMean(float(T), res.value / T, res.error / T)


def inner_product(f: FunctionSpec, g: FunctionSpec, T: float,
                  qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                  zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> EmpiricalMean:
    """(1/T) int_1^T f conj(g) dt."""
    return _mean([f, g], _cross, T, qcfg, zcfg)


def _check_sigma(sigma, k, max_k=4):
    if not sigma > 0.5:
        raise DomainError("need sigma > 1/2")
    if not 1 <= k <= max_k:
        raise DomainError(f"k={k} outside 1..{max_k}")


def predicted_coefficient(k: int, sigma: float, lam: float) -> complex:
    """d_k(n)/n^sigma when lam = -log n for an integer n, otherwise 0."""
    if lam > FREQ_TOL:
        return 0j
    n = int(round(math.exp(-lam)))
    if n >= 1 and abs(lam + math.log(n)) <= FREQ_TOL:
        return complex(divisor_sieve(k, n)[n] * n ** -sigma)
    return 0j


def fourier_coefficient(k: int, sigma: float, lam: float, T: float,
                        qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                        zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> FourierCoefficient:
    """Empirical <zeta^k, e_lam> at horizon T next to its predicted value."""
    _check_sigma(sigma, k)
    m = inner_product(ZetaPower(k, sigma), Exponential(float(lam)), T, qcfg, zcfg)
    return FourierCoefficient(float(lam), float(T), complex(m.value),
                              predicted_coefficient(k, sigma, lam), m.quadrature_error)


def bohr_partial_sum(k: int, sigma: float, N: int) -> BohrPolynomial:
    """sum_{n <= N} d_k(n) n^{-sigma - i t} as a Bohr polynomial."""
    if N < 1:
        raise InputError("N must be at least 1")
    d = divisor_sieve(k, N)
    return BohrPolynomial(tuple((-math.log(n), complex(d[n] * n ** -sigma)) for n in range(1, N + 1)))


def analytic_tail(k: int, sigma: float, N: int) -> float:
    """sum_{n > N} d_k(n)^2 n^{-2 sigma}."""
    head = math.fsum(float(d) ** 2 * n ** (-2 * sigma)
                     for n, d in enumerate(divisor_sieve(k, N).values[1:].tolist(), start=1))
    target = series_target(k, sigma)
    return target.partial_sum + target.tail_bound - head


def b2_distance(k: int, sigma: float, N: int, T: float,
                qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> B2Distance:
    """(1/T) int_1^T |zeta^k - zeta_{k,N}|^2 next to the series tail beyond N."""
    _check_sigma(sigma, k)
    m = _mean([ZetaPower(k, sigma), bohr_partial_sum(k, sigma, N)], _sqdiff, T, qcfg, zcfg)
    return B2Distance(k, sigma, N, float(T), m.value.real, analytic_tail(k, sigma, N),
                      m.quadrature_error)


def parseval_sum(coeffs: Sequence[FourierCoefficient]) -> float:
    """sum |c|^2 over coefficients with distinct frequencies."""
    lams = [c.lam for c in coeffs]
    if len(set(lams)) != len(lams):
        raise InputError("duplicate frequencies in parseval_sum")
    return math.fsum(abs(c.empirical) ** 2 for c in coeffs)


def cauchy_distance_empirical(k: int, sigma_a: float, sigma_b: float, T: float,
                              qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
                              zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> float:
    """(1/T) int_1^T |zeta^k(sigma_a + it) - zeta^k(sigma_b + it)|^2 dt."""
    _check_sigma(sigma_a, k)
    _check_sigma(sigma_b, k)
    if sigma_a == sigma_b:
        return 0.0
    a, b = sorted((sigma_a, sigma_b))
    return _mean([ZetaPower(k, a), ZetaPower(k, b)], _sqdiff, T, qcfg, zcfg).value.real
