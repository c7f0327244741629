"""Symbolic descriptors of functions on [1, oo).

Each descriptor evaluates on a float array of heights given the zeta values
it needs (``zvals[sigma]`` aligned with ``t``), reports its known
discontinuities, and, when bounded, a sup-norm bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import InputError

_EMPTY = np.zeros(0)


class FunctionSpec:
    """Base class; subclasses are frozen dataclasses."""

    piecewise_constant = False

    def evaluate(self, t, zvals):
        raise NotImplementedError

    def zeta_sigmas(self) -> frozenset:
        return frozenset()

    def breakpoints(self, a, b) -> Optional[np.ndarray]:
        """Jump locations in (a, b); ``None`` if discontinuities exist but are unknown."""
        return _EMPTY

    def sup_bound(self) -> Optional[float]:
        """Upper bound for sup |f|, or None when the function is unbounded."""
        return None

    def __sub__(self, other):
        return Difference(self, other)


@dataclass(frozen=True)
class ZetaPower(FunctionSpec):
    """t -> zeta(sigma + i t)^k."""

    k: int
    sigma: float

    def evaluate(self, t, zvals):
        z = zvals[self.sigma]
        return z if self.k == 1 else z ** self.k

    def zeta_sigmas(self):
        return frozenset([self.sigma])


@dataclass(frozen=True)
class Constant(FunctionSpec):
    c: complex = 1.0
    piecewise_constant = True

    def evaluate(self, t, zvals):
        return np.full(np.shape(t), complex(self.c))

    def sup_bound(self):
        return abs(self.c)


@dataclass(frozen=True)
class Exponential(FunctionSpec):
    """e_lambda(t) = exp(i lambda t)."""

    lam: float

    def evaluate(self, t, zvals):
        ph = self.lam * t
        return np.cos(ph) + 1j * np.sin(ph)

    def sup_bound(self):
        return 1.0


@dataclass(frozen=True)
class BohrPolynomial(FunctionSpec):
    """Finite sum of coeff * exp(i lambda t) with distinct frequencies."""

    terms: Tuple[Tuple[float, complex], ...]

    def __post_init__(self):
        lams = [float(lam) for lam, _ in self.terms]
        if len(set(lams)) != len(lams):
            raise InputError("BohrPolynomial frequencies must be distinct")

    def evaluate(self, t, zvals):
        out = np.zeros(np.shape(t), dtype=np.complex128)
        for lam, c in self.terms:
            ph = lam * t
            out += complex(c) * (np.cos(ph) + 1j * np.sin(ph))
        return out

    def sup_bound(self):
        return math.fsum(abs(c) for _, c in self.terms)

    @property
    def frequencies(self):
        return [lam for lam, _ in self.terms]


@dataclass(frozen=True)
class Indicator(FunctionSpec):
    """1 where |base(t)| > threshold, else 0."""

    base: FunctionSpec
    threshold: float

    @property
    def piecewise_constant(self):
        return self.base.piecewise_constant

    def evaluate(self, t, zvals):
        return (np.abs(self.base.evaluate(t, zvals)) > self.threshold).astype(np.complex128)

    def zeta_sigmas(self):
        return self.base.zeta_sigmas()

    def breakpoints(self, a, b):
        if self.base.piecewise_constant:
            return self.base.breakpoints(a, b)
        return None

    def sup_bound(self):
        return 1.0


@dataclass(frozen=True)
class LinearCombination(FunctionSpec):
    """sum of coeff * spec."""

    terms: Tuple[Tuple[complex, FunctionSpec], ...]

    @property
    def piecewise_constant(self):
        return all(f.piecewise_constant for _, f in self.terms)

    def evaluate(self, t, zvals):
        out = np.zeros(np.shape(t), dtype=np.complex128)
        for c, f in self.terms:
            out += complex(c) * f.evaluate(t, zvals)
        return out

    def zeta_sigmas(self):
        return frozenset().union(*(f.zeta_sigmas() for _, f in self.terms))

    def breakpoints(self, a, b):
        parts = [f.breakpoints(a, b) for _, f in self.terms]
        if any(p is None for p in parts):
            return None
        return np.unique(np.concatenate([_EMPTY, *parts]))

    def sup_bound(self):
        bounds = [f.sup_bound() for _, f in self.terms]
        if any(x is None for x in bounds):
            return None
        return math.fsum(abs(c) * x for (c, _), x in zip(self.terms, bounds))


@dataclass(frozen=True)
class Difference(FunctionSpec):
    a: FunctionSpec
    b: FunctionSpec

    @property
    def piecewise_constant(self):
        return self.a.piecewise_constant and self.b.piecewise_constant

    def evaluate(self, t, zvals):
        return self.a.evaluate(t, zvals) - self.b.evaluate(t, zvals)

    def zeta_sigmas(self):
        return self.a.zeta_sigmas() | self.b.zeta_sigmas()

    def breakpoints(self, a, b):
        pa, pb = self.a.breakpoints(a, b), self.b.breakpoints(a, b)
        if pa is None or pb is None:
            return None
        return np.unique(np.concatenate([pa, pb]))

    def sup_bound(self):
        x, y = self.a.sup_bound(), self.b.sup_bound()
        return None if x is None or y is None else x + y


@dataclass(frozen=True)
class SpikeTrain(FunctionSpec):
    """Boxes of height h_n and width w_n centred at n = 2, 3, ..., n_max.

    w_n = width_scale * n^-width_exponent, h_n = height_scale * n^height_exponent.
    ``n_max=None`` means the train is infinite, which requires summable widths.
    """

    width_scale: float = 1.0
    width_exponent: float = 2.0
    height_scale: float = 1.0
    height_exponent: float = 0.0
    n_max: Optional[int] = None

    piecewise_constant = True

    def __post_init__(self):
        if self.width_scale < 0:
            raise InputError("widths must be nonnegative")
        if self.n_max is None and self.width_scale > 0 and self.width_exponent <= 1:
            raise InputError("divergent width sum: width_exponent must exceed 1")
        if self.width_scale * 2.0 ** (-self.width_exponent) >= 1:
            raise InputError("spikes would overlap: need w_2 < 1")

    def _range(self, lo, hi):
        n_lo = max(2, int(math.floor(lo)))
        n_hi = int(math.ceil(hi))
        if self.n_max is not None:
            n_hi = min(n_hi, self.n_max)
        if self.width_scale == 0 or n_hi < n_lo:
            return np.zeros(0, dtype=np.int64)
        return np.arange(n_lo, n_hi + 1, dtype=np.int64)

    def widths(self, n):
        return self.width_scale * np.asarray(n, dtype=np.float64) ** (-self.width_exponent)

    def heights(self, n):
        return self.height_scale * np.asarray(n, dtype=np.float64) ** self.height_exponent

    def evaluate(self, t, zvals):
        t = np.asarray(t, dtype=np.float64)
        n = np.rint(t)
        ok = n >= 2
        if self.n_max is not None:
            ok &= n <= self.n_max
        nn = np.where(ok, n, 2.0)
        inside = ok & (np.abs(t - n) < 0.5 * self.widths(nn)) if self.width_scale > 0 else np.zeros(t.shape, bool)
        return np.where(inside, self.heights(nn), 0.0).astype(np.complex128)

    def breakpoints(self, a, b):
        n = self._range(a - 1, b + 1)
        half = 0.5 * self.widths(n)
        pts = np.concatenate([n - half, n + half])
        return np.unique(pts[(pts > a) & (pts < b)])

    def sup_bound(self):
        if self.width_scale == 0 or self.n_max is not None and self.n_max < 2:
            return 0.0
        if self.height_exponent > 0:
            if self.n_max is None:
                return None
            return abs(self.height_scale) * self.n_max ** self.height_exponent
        return abs(self.height_scale) * 2.0 ** self.height_exponent

    def clipped_widths(self, T, a=1.0):
        """(n, |support_n ∩ [a, T]|) for every spike meeting [a, T]."""
        n = self._range(a - 1, T + 1)
        half = 0.5 * self.widths(n)
        lo = np.maximum(n - half, a)
        hi = np.minimum(n + half, T)
        return n, np.clip(hi - lo, 0.0, None)

    def support_measure(self, T, a=1.0) -> float:
        _, w = self.clipped_widths(T, a)
        return math.fsum(w)

    def integral_of(self, fn, T, a=1.0) -> float:
        """sum over spikes of fn(h_n) * |support_n ∩ [a, T]| (exact, no quadrature)."""
        n, w = self.clipped_widths(T, a)
        return math.fsum(fn(self.heights(n)) * w)
