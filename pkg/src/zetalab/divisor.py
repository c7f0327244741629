"""Divisor functions d_k and the Dirichlet series sum d_k(n)^2 n^{-2 sigma}.

Tail bounds use d_k(n)^2 <= C n^{2 eps}, with C scanned from the sieved
table (C = max_{n <= N} d_k(n)^2 / n^{2 eps}).  This constant is exact on
[1, N] and an honest working assumption beyond it; for k = 1 the bound holds
with eps = 0 and C = 1.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import DomainError, InputError, ResourceError
from .zeta import zeta_real

MAX_K = 6
MAX_N = 10 ** 8
DEFAULT_SERIES_CUTOFF = 10 ** 6
DEFAULT_EPS = 0.1
SIGMA_GUARD = 0.55

CACHE_MAGIC = b"DKTB"
CACHE_VERSION = 1
_HEADER = struct.Struct("<4sIIQ")


@dataclass(frozen=True)
class DivisorTable:
    """d_k(n) for 1 <= n <= limit; ``values[n]`` is d_k(n) and ``values[0]`` is 0."""

    k: int
    limit: int
    values: np.ndarray

    def __getitem__(self, n):
        if not 1 <= n <= self.limit:
            raise IndexError(f"n={n} outside 1..{self.limit}")
        return int(self.values[n])

    def save(self, path):
        """Write the binary cache: header (magic, version, k, N), then d_k(1..N) as <u4."""
        path = Path(path)
        with path.open("wb") as fh:
            fh.write(_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, self.k, self.limit))
            fh.write(self.values[1:].astype("<u4").tobytes())

    @classmethod
    def load(cls, path):
        raw = Path(path).read_bytes()
        magic, version, k, limit = _HEADER.unpack_from(raw)
        if magic != CACHE_MAGIC or version != CACHE_VERSION:
            raise InputError(f"{path}: not a divisor table cache (version {CACHE_VERSION})")
        body = np.frombuffer(raw, dtype="<u4", offset=_HEADER.size)
        if body.shape[0] != limit:
            raise InputError(f"{path}: truncated table")
        values = np.zeros(limit + 1, dtype=np.uint32)
        values[1:] = body
        return cls(k, limit, values)


@dataclass(frozen=True)
class DirichletSeriesValue:
    k: int
    sigma: float
    cutoff: int
    partial_sum: float
    tail_bound: float

    @property
    def upper(self):
        return self.partial_sum + self.tail_bound


@dataclass(frozen=True)
class CauchyDistance:
    """Truncated closed form plus tail bound for ||f_a^k - f_b^k||^2."""

    k: int
    sigma_a: float
    sigma_b: float
    cutoff: int
    partial_sum: float
    tail_bound: float

    @property
    def upper(self):
        return self.partial_sum + self.tail_bound


def divisor_sieve(k: int, N: int) -> DivisorTable:
    """Sieve d_k(1..N) by iterated convolution with the constant function 1."""
    if not 1 <= k <= MAX_K:
        raise ResourceError(f"k={k} outside 1..{MAX_K}")
    if not 1 <= N <= MAX_N:
        raise ResourceError(f"N={N} outside 1..{MAX_N}")
    return _sieve(int(k), int(N))


@lru_cache(maxsize=16)
def _sieve(k, N):
    cur = np.ones(N + 1, dtype=np.uint32)
    cur[0] = 0
    for _ in range(k - 1):
        nxt = np.zeros(N + 1, dtype=np.uint32)
        _kernels.convolve_with_ones(cur, nxt)
        cur = nxt
    cur.setflags(write=False)
    return DivisorTable(k, N, cur)


def divisor_count(k: int, n: int) -> int:
    """d_k(n) for a single n, from the prime factorisation."""
    if n < 1:
        raise DomainError("n must be positive")
    out, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            out *= math.comb(a + k - 1, k - 1)
        p += 1
    if m > 1:
        out *= k
    return out


def _squares_weighted(table, sigma, N):
    d = table.values[1:N + 1].astype(np.float64)
    n = np.arange(1, N + 1, dtype=np.float64)
    return d, n, d * d * np.exp(-2.0 * sigma * np.log(n))


def _tail_eps(k, sigma, eps):
    if k == 1:
        return 0.0
    return min(eps, (2.0 * sigma - 1.0) / 4.0)


def _tail_constant(d, n, k, eps):
    if k == 1:
        return 1.0
    return float(np.max(d * d * np.exp(-2.0 * eps * np.log(n))))


def series_value(k: int, sigma: float, N: int = DEFAULT_SERIES_CUTOFF,
                 eps: float = DEFAULT_EPS) -> DirichletSeriesValue:
    """Partial sum of d_k(n)^2 n^{-2 sigma} over n <= N with a tail bound.

    The tail is bounded by C * integral_N^oo u^{2 eps - 2 sigma} du.  When
    2 sigma - 1 <= 2 eps, eps is reduced to (2 sigma - 1)/4 so the bound
    stays finite.
    """
    if sigma <= SIGMA_GUARD:
        raise DomainError(f"sigma={sigma} <= {SIGMA_GUARD}: series converges too slowly")
    table = divisor_sieve(k, N)
    d, n, terms = _squares_weighted(table, sigma, N)
    partial = math.fsum(terms.tolist())
    e = _tail_eps(k, sigma, eps)
    C = _tail_constant(d, n, k, e)
    expo = 2.0 * sigma - 1.0 - 2.0 * e
    tail = C * N ** (-expo) / expo
    return DirichletSeriesValue(k, sigma, N, partial, tail)


def _check_line(sigma):
    if not 0.5 < sigma <= 2.0:
        raise DomainError(f"sigma={sigma} outside (1/2, 2]")


def cauchy_distance_closed_form(k: int, sigma_a: float, sigma_b: float,
                                N: int = DEFAULT_SERIES_CUTOFF,
                                eps: float = DEFAULT_EPS) -> CauchyDistance:
    """sum_{r <= N} d_k(r)^2 (r^{-sigma_a} - r^{-sigma_b})^2 plus a tail bound.

    This is the B^2 distance between zeta^k on two vertical lines, computed
    from the Fourier coefficients d_k(r) r^{-sigma}.
    """
    _check_line(sigma_a)
    _check_line(sigma_b)
    a, b = sorted((float(sigma_a), float(sigma_b)))
    table = divisor_sieve(k, N)
    d = table.values[1:N + 1].astype(np.float64)
    logn = np.log(np.arange(1, N + 1, dtype=np.float64))
    diff = np.exp(-a * logn) - np.exp(-b * logn)
    partial = math.fsum((d * d * diff * diff).tolist())
    if a == b:
        return CauchyDistance(k, sigma_a, sigma_b, N, partial, 0.0)
    e = _tail_eps(k, a, eps)
    n = np.arange(1, N + 1, dtype=np.float64)
    C = _tail_constant(d, n, k, e)
    # g(u) = u^{2e} (u^{-a} - u^{-b})^2 is eventually decreasing; its integral bounds the tail
    dlog = (2 * e - 2 * a) + 2 * (b - a) * N ** (a - b) / (1 - N ** (a - b))
    if dlog < 0:
        tail = (N ** (1 + 2 * e - 2 * a) / (2 * a - 1 - 2 * e)
                - 2 * N ** (1 + 2 * e - a - b) / (a + b - 1 - 2 * e)
                + N ** (1 + 2 * e - 2 * b) / (2 * b - 1 - 2 * e))
        tail = max(tail, 0.0)
    else:
        tail = N ** (1 + 2 * e - 2 * a) / (2 * a - 1 - 2 * e)
    return CauchyDistance(k, sigma_a, sigma_b, N, partial, C * tail)


@lru_cache(maxsize=256)
def series_target(k: int, sigma: float, N: int = DEFAULT_SERIES_CUTOFF) -> DirichletSeriesValue:
    """Best available value of sum_n d_k(n)^2 n^{-2 sigma}.

    k = 1 and k = 2 have closed forms, zeta(2 sigma) and
    zeta(2 sigma)^4 / zeta(4 sigma); these are returned with zero tail.
    Larger k fall back to :func:`series_value`.
    """
    if sigma <= 0.5:
        raise DomainError("series diverges for sigma <= 1/2")
    if k == 1:
        return DirichletSeriesValue(k, sigma, 0, zeta_real(2 * sigma), 0.0)
    if k == 2:
        return DirichletSeriesValue(k, sigma, 0, zeta_real(2 * sigma) ** 4 / zeta_real(4 * sigma), 0.0)
    return series_value(k, sigma, N)
