"""Deterministic Gauss-Legendre panel quadrature on [a, b] subset of [1, oo).

Every panel is integrated twice, once with the n-node rule on the whole panel
and once on its two halves.  The halves are accepted when the two estimates
agree to ``refine_tol`` relative to the panel's L1 mass; otherwise the panel
is halved again, at most ``max_halvings`` times.  Panel results are reduced
with ``math.fsum`` in panel order, so the total is exactly rounded and does
not depend on chunking or on the number of worker threads.

Integrands are described by a list of :class:`FunctionSpec` objects plus a
``combine(values, t)`` callable producing the integrand from their values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import AccuracyError, InputError
from .functions import FunctionSpec
from .lattice import lattice_zeta
from .zeta import DEFAULT_ZETA_CONFIG, ZetaEvalConfig, zeta_many

_CHUNK = 8192
_SNAP = 1e-9


@dataclass(frozen=True)
class QuadratureConfig:
    panel_width: float = 0.25
    nodes_per_panel: int = 8
    refine_tol: float = 1e-6
    max_halvings: int = 12
    workers: int = 1

    def __post_init__(self):
        if not self.panel_width > 0:
            raise InputError("panel_width must be positive")
        if self.nodes_per_panel < 2:
            raise InputError("nodes_per_panel must be at least 2")
        if not self.refine_tol > 0:
            raise InputError("refine_tol must be positive")
        if self.workers < 1:
            raise InputError("workers must be at least 1")


DEFAULT_QUADRATURE = QuadratureConfig()


@lru_cache(maxsize=16)
def panel_rule(n: int):
    """Unit-panel offsets and weights: n coarse nodes, then 2n half-panel nodes."""
    x, w = np.polynomial.legendre.leggauss(n)
    x01, w01 = 0.5 * (x + 1.0), 0.5 * w
    offsets = np.concatenate([x01, 0.5 * x01, 0.5 + 0.5 * x01])
    coarse_w = w01
    fine_w = np.concatenate([0.5 * w01, 0.5 * w01])
    return offsets, coarse_w, fine_w


@dataclass
class Integral:
    """Result of :func:`integrate`.

    ``panel_values`` holds the accepted contribution of every panel in order;
    ``error`` sums the per-panel coarse/fine disagreements (or, for
    integrands with unlocated jumps, width x max|integrand| over the panels
    where a jump was detected).
    """

    value: complex
    error: float
    panel_values: np.ndarray
    crossings: int = 0


def exact_sum(values) -> complex:
    v = np.asarray(values)
    if v.size == 0:
        return 0j
    return complex(math.fsum(v.real.tolist()), math.fsum(np.imag(v).tolist()))


def _column_sum(F, weights):
    # fixed column order keeps each panel's sum independent of the batch shape
    acc = F[:, 0] * weights[0]
    for j in range(1, weights.shape[0]):
        acc = acc + F[:, j] * weights[j]
    return acc


def _evaluate(specs, combine, t, zvals):
    return np.asarray(combine([f.evaluate(t, zvals) for f in specs], t), dtype=np.complex128)


def _sigmas(specs):
    return sorted(frozenset().union(*(f.zeta_sigmas() for f in specs)))


def _generic_values(specs, combine, t, zcfg):
    zvals = {s: zeta_many(s, t, zcfg) for s in _sigmas(specs)}
    return _evaluate(specs, combine, t, zvals)


class _Plan:
    """Split [a, b] into canonical lattice panels plus generic panels."""

    def __init__(self, a, b, qcfg, breaks):
        w = qcfg.panel_width
        self.lattice = None
        generic = []
        if breaks is None or len(breaks) == 0:
            p_lo = math.ceil((a - 1.0) / w - _SNAP)
            p_hi = math.floor((b - 1.0) / w + _SNAP)
            if p_hi > p_lo:
                self.lattice = (p_lo, p_hi)
                left, right = 1.0 + p_lo * w, 1.0 + p_hi * w
                if left - a > _SNAP * w:
                    generic.append((a, left))
                if b - right > _SNAP * w:
                    generic.append((right, b))
            else:
                generic.append((a, b))
            edges = np.array(generic, dtype=np.float64).reshape(-1, 2)
        else:
            p_lo = math.ceil((a - 1.0) / w)
            p_hi = math.floor((b - 1.0) / w)
            grid = 1.0 + w * np.arange(p_lo, p_hi + 1, dtype=np.float64)
            pts = np.unique(np.concatenate([[a, b], grid[(grid > a) & (grid < b)], breaks]))
            edges = np.stack([pts[:-1], pts[1:]], axis=1)
            edges = edges[edges[:, 1] - edges[:, 0] > 1e-14 * max(1.0, abs(b))]
        self.generic = edges
        self.order = self._order(a, w)

    def _order(self, a, w):
        # panels are reported left to right: head generic, lattice, tail generic
        g = self.generic
        if self.lattice is None:
            return [("g", 0, len(g))]
        left = 1.0 + self.lattice[0] * w
        n_head = int(np.sum(g[:, 1] <= left + 1e-12)) if len(g) else 0
        return [("g", 0, n_head), ("l", *self.lattice), ("g", n_head, len(g))]


def _estimates(F, widths, rule):
    offsets, cw, fw = rule
    n = cw.shape[0]
    coarse = _column_sum(F[:, :n], cw) * widths
    fine = _column_sum(F[:, n:], fw) * widths
    l1 = _column_sum(np.abs(F[:, n:]), fw) * widths
    return coarse, fine, l1


def _adaptive(specs, combine, c, d, depth, qcfg, zcfg, rule):
    offsets, cw, fw = rule
    t = c + (d - c) * offsets
    F = _generic_values(specs, combine, t, zcfg)[None, :]
    coarse, fine, l1 = _estimates(F, np.array([d - c]), rule)
    diff = abs(coarse[0] - fine[0])
    if diff <= qcfg.refine_tol * l1[0]:
        return fine[0], diff
    if depth >= qcfg.max_halvings:
        raise AccuracyError(
            f"panel [{c!r}, {d!r}] did not converge after {qcfg.max_halvings} halvings", location=(c, d))
    m = 0.5 * (c + d)
    v1, e1 = _adaptive(specs, combine, c, m, depth + 1, qcfg, zcfg, rule)
    v2, e2 = _adaptive(specs, combine, m, d, depth + 1, qcfg, zcfg, rule)
    return v1 + v2, e1 + e2


def _lattice_values(specs, combine, p_lo, p_hi, qcfg, zcfg, rule):
    offsets = rule[0] * qcfg.panel_width
    t = 1.0 + qcfg.panel_width * np.arange(p_lo, p_hi, dtype=np.float64)[:, None] + offsets[None, :]
    zvals = {s: lattice_zeta(s, p_lo, p_hi, qcfg.panel_width, offsets, zcfg, qcfg.workers)
             for s in _sigmas(specs)}
    return t, _evaluate(specs, combine, t, zvals)


def _iter_blocks(plan, specs, combine, qcfg, zcfg, rule):
    """Yield (left, t, F, widths) batches of panels in left-to-right order."""
    for kind, lo, hi in plan.order:
        if kind == "l":
            for p0 in range(lo, hi, _CHUNK):
                p1 = min(hi, p0 + _CHUNK)
                t, F = _lattice_values(specs, combine, p0, p1, qcfg, zcfg, rule)
                left = 1.0 + qcfg.panel_width * np.arange(p0, p1, dtype=np.float64)
                yield left, t, F, np.full(p1 - p0, qcfg.panel_width)
        elif hi > lo:
            edges = plan.generic[lo:hi]
            for i0 in range(0, len(edges), _CHUNK):
                e = edges[i0:i0 + _CHUNK]
                widths = e[:, 1] - e[:, 0]
                t = e[:, :1] + widths[:, None] * rule[0][None, :]
                F = _generic_values(specs, combine, t, zcfg)
                yield e[:, 0], t, F, widths


def _breakpoints(specs, a, b):
    parts = [f.breakpoints(a, b) for f in specs]
    if any(p is None for p in parts):
        return None
    return np.unique(np.concatenate([np.zeros(0), *parts]))


def integrate(specs: Sequence[FunctionSpec], combine: Callable, a: float, b: float,
              qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
              zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> Integral:
    """Integral over [a, b] of ``combine([f(t) for f in specs], t)``.

    Integrands with jumps at unknown places (indicators of level sets of zeta)
    are summed on the fixed half-panel nodes without refinement, as a node
    count; the reported error then bounds the contribution of panels in which
    a jump was seen.
    """
    if b < a:
        raise InputError("integration limits must satisfy a <= b")
    if a < 1.0:
        raise InputError("integration starts at t >= 1")
    if b == a:
        return Integral(0j, 0.0, np.zeros(0, dtype=np.complex128))
    rule = panel_rule(qcfg.nodes_per_panel)
    breaks = _breakpoints(specs, a, b)
    plan = _Plan(a, b, qcfg, breaks)
    node_mode = breaks is None
    panel_vals, errors = [], []
    crossings = 0
    for left, t, F, widths in _iter_blocks(plan, specs, combine, qcfg, zcfg, rule):
        coarse, fine, l1 = _estimates(F, widths, rule)
        diff = np.abs(coarse - fine)
        bad = diff > qcfg.refine_tol * np.maximum(l1, 0.0)
        if node_mode:
            err = np.where(bad, widths * np.max(np.abs(F), axis=1), 0.0)
            crossings += int(np.count_nonzero(bad))
        else:
            err = diff
            if np.any(bad):
                fine = fine.copy()
                err = err.copy()
                for i in np.flatnonzero(bad):
                    c, d = float(left[i]), float(left[i] + widths[i])
                    m = 0.5 * (c + d)
                    v1, e1 = _adaptive(specs, combine, c, m, 1, qcfg, zcfg, rule)
                    v2, e2 = _adaptive(specs, combine, m, d, 1, qcfg, zcfg, rule)
                    fine[i], err[i] = v1 + v2, e1 + e2
        panel_vals.append(fine)
        errors.append(err)
    vals = np.concatenate(panel_vals) if panel_vals else np.zeros(0, dtype=np.complex128)
    errs = np.concatenate(errors) if errors else np.zeros(0)
    return Integral(exact_sum(vals), math.fsum(errs.tolist()), vals, crossings)


@dataclass
class NodeSample:
    """Half-panel nodes on [a, b] with their quadrature weights and spec values."""

    t: np.ndarray
    weights: np.ndarray
    values: list
    panel_width: np.ndarray


def sample(specs: Sequence[FunctionSpec], a: float, b: float,
           qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
           zcfg: ZetaEvalConfig = DEFAULT_ZETA_CONFIG) -> NodeSample:
    """Values of each spec at the fine nodes of the panel grid over [a, b].

    Used for level-set measures, which are computed by weighted node counts.
    """
    if b <= a:
        raise InputError("sample needs a < b")
    rule = panel_rule(qcfg.nodes_per_panel)
    n = qcfg.nodes_per_panel
    breaks = _breakpoints(specs, a, b)
    plan = _Plan(a, b, qcfg, breaks)
    k = len(specs)
    ts, ws, vs, pw = [], [], [[] for _ in range(k)], []

    def stack(values, t):
        return np.stack(values, axis=-1)

    for _, t, F, widths in _iter_blocks(plan, specs, stack, qcfg, zcfg, rule):
        ts.append(t[:, n:].ravel())
        ws.append((widths[:, None] * rule[2][None, :]).ravel())
        pw.append(np.repeat(widths, 2 * n))
        for i in range(k):
            vs[i].append(F[:, n:, i].ravel())
    return NodeSample(np.concatenate(ts), np.concatenate(ws), [np.concatenate(v) for v in vs],
                      np.concatenate(pw))
