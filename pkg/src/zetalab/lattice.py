"""Zeta samples on the canonical panel lattice.

Quadrature panels are ``[1 + p w, 1 + (p + 1) w]`` and every panel carries the
same node offsets, so node ``j`` of panel ``p`` sits at ``1 + p w + o_j``.
Grouping ``B`` consecutive panels into a block with origin ``t_b``, the
Euler-Maclaurin main sum factors as

    sum_n [n^{-sigma} n^{-i t_b}] [n^{-i o_j}] [n^{-i q w}]

i.e. a (J x N) by (N x B) complex matrix product per block.  The last factor
does not depend on the block, so it is built once.  Each block is computed
independently with a fixed cutoff, so cached values do not depend on the
order in which blocks were requested or on the number of worker threads.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .zeta import DEFAULT_ZETA_CONFIG, ZetaEvalConfig, _check_region, em_tail, log_table

BLOCK_PANELS = 64
_CAPACITY_STEP = 16384


class _PhaseTables:
    """n^{-i o_j} (J x cap) and n^{-i q w} (cap x B) for one lattice geometry."""

    def __init__(self, width, offsets):
        self.width = width
        self.offsets = offsets
        self.cap = 0
        self.lock = threading.Lock()
        self.E = None
        self.V = None

    def ensure(self, n):
        with self.lock:
            if n <= self.cap:
                return self.E, self.V
            cap = _CAPACITY_STEP * math.ceil(n / _CAPACITY_STEP)
            logn = log_table(cap)
            ph_e = np.outer(self.offsets, logn)
            self.E = np.cos(ph_e) - 1j * np.sin(ph_e)
            ph_v = np.outer(logn, np.arange(BLOCK_PANELS) * self.width)
            self.V = np.ascontiguousarray(np.cos(ph_v) - 1j * np.sin(ph_v))
            self.cap = cap
            return self.E, self.V


_TABLES: dict = {}
_CACHE: dict = {}
_REGISTRY_LOCK = threading.Lock()


def _tables(width, offsets):
    key = (width, offsets.tobytes())
    with _REGISTRY_LOCK:
        if key not in _TABLES:
            _TABLES[key] = _PhaseTables(width, offsets)
        return _TABLES[key]


def clear_caches():
    """Drop all cached lattice samples and phase tables."""
    with _REGISTRY_LOCK:
        _TABLES.clear()
        _CACHE.clear()


def _block_values(sigma, b, width, offsets, tables, cfg):
    B = BLOCK_PANELS
    t0 = 1.0 + b * B * width
    t_hi = 1.0 + (b + 1) * B * width
    N = int(cfg.cutoff(t_hi))
    t_nodes = t0 + (np.arange(B) * width)[:, None] + offsets[None, :]
    for _ in range(6):
        tail, bound = em_tail(sigma, t_nodes, N, cfg.bernoulli_order)
        if np.max(bound) <= cfg.target_abs_error:
            break
        N *= 2
    E, V = tables.ensure(N - 1)
    logn = log_table(N - 1)
    ph = t0 * logn
    head = np.exp(-sigma * logn) * (np.cos(ph) - 1j * np.sin(ph))
    U = head[None, :] * E[:, : N - 1]
    S = U @ V[: N - 1, :]
    return S.T + tail


class _LineCache:
    def __init__(self, sigma, width, offsets, cfg):
        self.sigma = sigma
        self.width = width
        self.offsets = offsets
        self.cfg = cfg
        self.blocks = {}
        self.lock = threading.Lock()

    def panels(self, p_lo, p_hi, workers=1):
        """Samples for panels p_lo..p_hi-1, shape (p_hi - p_lo, J)."""
        B = BLOCK_PANELS
        b_lo, b_hi = p_lo // B, (p_hi - 1) // B + 1
        missing = [b for b in range(b_lo, b_hi) if b not in self.blocks]
        if missing:
            tables = _tables(self.width, self.offsets)
            tables.ensure(int(self.cfg.cutoff(1.0 + b_hi * B * self.width)))

            def work(b):
                return b, _block_values(self.sigma, b, self.width, self.offsets, tables, self.cfg)

            if workers > 1 and len(missing) > 1:
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    done = list(pool.map(work, missing))
            else:
                done = [work(b) for b in missing]
            with self.lock:
                for b, vals in done:
                    self.blocks[b] = vals
        out = np.concatenate([self.blocks[b] for b in range(b_lo, b_hi)], axis=0)
        start = p_lo - b_lo * B
        return out[start: start + (p_hi - p_lo)]


def lattice_zeta(sigma: float, p_lo: int, p_hi: int, width: float, offsets: np.ndarray,
                 cfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG, workers: int = 1) -> np.ndarray:
    """zeta(sigma + i t) at ``t = 1 + p width + offsets[j]`` for p in [p_lo, p_hi)."""
    offsets = np.asarray(offsets, dtype=np.float64)
    _check_region(sigma, np.array([1.0, 1.0 + p_hi * width]), cfg)
    key = (float(sigma), cfg, float(width), offsets.tobytes())
    with _REGISTRY_LOCK:
        line = _CACHE.get(key)
        if line is None:
            line = _CACHE[key] = _LineCache(float(sigma), float(width), offsets, cfg)
    return line.panels(p_lo, p_hi, workers)
