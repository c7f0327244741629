"""Numerical laboratory for zeta moments, divisor series and B^2 diagnostics."""

from .errors import (AccuracyError, DomainError, InputError, PoleError, ResourceError, UnsupportedError,
                     ZetaLabError)
from .zeta import (DEFAULT_ZETA_CONFIG, EvalPoint, GrowthReport, ZetaEvalConfig, abs_pow_2k, growth_diagnostic,
                   zeta, zeta_many, zeta_oracle, zeta_real)
from .divisor import (DirichletSeriesValue, DivisorTable, cauchy_distance_closed_form, divisor_count,
                      divisor_sieve, series_target, series_value)
from .functions import (BohrPolynomial, Constant, Difference, Exponential, FunctionSpec, Indicator,
                        LinearCombination, SpikeTrain, ZetaPower)
from .quadrature import DEFAULT_QUADRATURE, Integral, QuadratureConfig, integrate
from .moments import MomentRecord, convergence_sweep, convexity_probe, moment
from .besicovitch import (B2Distance, EmpiricalMean, FourierCoefficient, b2_distance, bohr_partial_sum,
                          cauchy_distance_empirical, fourier_coefficient, inner_product, parseval_sum)
from .tauberian import LaplaceProbe, abel_cesaro_compare, abel_probe, laplace, laplace_of, line_continuity_probe
from .concentration import (ConcentrationProfile, EssSupEstimate, bounded_approx_gap, concentration_profile,
                            spike_null_set_demo, weighted_functional)

__version__ = "0.1.0"
