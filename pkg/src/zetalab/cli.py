"""Command-line front end.

    zetalab <command> [flags]

Commands: zeta, moment, coeff, b2dist, cauchy, laplace, abel, conc, growth,
report-all.  Settings may come from a JSON file (--config); flags given on the
command line override it.  Exit status: 0 ok, 1 numerical or acceptance
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from typing import List, Optional

import numpy as np

from . import besicovitch as bz
from . import concentration as cz
from . import moments as mz
from . import tauberian as tz
from .divisor import cauchy_distance_closed_form
from .errors import AccuracyError, ZetaLabError
from .functions import ZetaPower
from .quadrature import QuadratureConfig
from .records import csv_text, emit, json_text
from .report import PRESETS, run_report
from .zeta import DEFAULT_ZETA_CONFIG, SIGMA_MAX, SIGMA_MIN, growth_diagnostic, zeta_many

KINDS = ("zeta", "moment", "coeff", "b2dist", "cauchy", "laplace", "abel", "conc", "growth", "report-all")
MAX_K = 4


@dataclass
class ExperimentConfig:
    kind: str = "report-all"
    k: int = 1
    sigma: float = 0.75
    sigma_b: Optional[float] = None
    t_max: Optional[float] = None
    t_grid: Optional[List[float]] = None
    n: Optional[int] = None
    x: Optional[List[float]] = None
    thresholds: Optional[List[float]] = None
    panel_width: float = 0.25
    tol: float = 1e-6
    workers: int = 1
    format: Optional[str] = None
    out: Optional[str] = None
    preset: str = "desk"

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in fields(cls)}
        clean = {str(k).replace("-", "_"): v for k, v in d.items()}
        unknown = sorted(set(clean) - names)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**clean)

    def quadrature(self):
        return QuadratureConfig(panel_width=float(self.panel_width), refine_tol=float(self.tol),
                                workers=int(self.workers))


def _num(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def validate(config) -> List[str]:
    """Problems preventing ``config`` from running; empty when runnable."""
    if isinstance(config, dict):
        try:
            config = ExperimentConfig.from_dict(config)
        except (TypeError, ValueError) as exc:
            return [str(exc)]
    c = config
    probs = []
    if c.kind not in KINDS:
        return [f"kind: unknown experiment '{c.kind}'"]
    if not isinstance(c.k, int) or isinstance(c.k, bool) or not 1 <= c.k <= MAX_K:
        probs.append(f"k: must be an integer in 1..{MAX_K}, got {c.k!r}")
    lo, hi, closed = {"zeta": (SIGMA_MIN, SIGMA_MAX, True), "moment": (0.5, 2.0, True),
                      "growth": (-math.inf, math.inf, True)}.get(c.kind, (0.5, 2.0, False))
    for name in ("sigma", "sigma_b"):
        v = getattr(c, name)
        if v is None:
            if name == "sigma_b" and c.kind == "cauchy":
                probs.append("sigma_b: required for cauchy")
            continue
        if not _num(v):
            probs.append(f"{name}: not a finite number")
        elif not (lo <= v <= hi if closed else lo < v <= hi):
            probs.append(f"{name}: {v} outside the domain for {c.kind} "
                         f"({'[' if closed else '('}{lo}, {hi}])")
    t_lo = 0.0 if c.kind == "zeta" else 1.0
    if c.t_max is not None and (not _num(c.t_max) or not t_lo <= c.t_max <= DEFAULT_ZETA_CONFIG.t_max):
        probs.append(f"t_max: must lie in [{t_lo:g}, {DEFAULT_ZETA_CONFIG.t_max:g}]")
    if c.t_grid is not None:
        g = c.t_grid
        if not g or not all(_num(t) for t in g):
            probs.append("t_grid: must be a nonempty list of numbers")
        elif any(b < a for a, b in zip(g, g[1:])):
            probs.append("t_grid: must be ascending")
        elif c.kind == "growth" and g[0] < 10:
            probs.append("t_grid: growth grid must start at t >= 10")
        elif max(g) > DEFAULT_ZETA_CONFIG.t_max:
            probs.append("t_grid: exceeds t_max")
    if c.n is not None and (not isinstance(c.n, int) or c.n < 1):
        probs.append("n: must be a positive integer")
    if c.kind == "b2dist" and c.n is None:
        probs.append("n: required for b2dist")
    if c.x is not None:
        if not c.x or not all(_num(x) and x > 0 for x in c.x):
            probs.append("x: values must be positive")
    if c.kind == "laplace" and c.x is None:
        probs.append("x: required for laplace")
    if c.thresholds is not None and any(b < a for a, b in zip(c.thresholds, c.thresholds[1:])):
        probs.append("thresholds: must be ascending")
    if not _num(c.panel_width) or c.panel_width <= 0:
        probs.append("panel_width: must be positive")
    if not _num(c.tol) or c.tol <= 0:
        probs.append("tol: must be positive")
    if not isinstance(c.workers, int) or c.workers < 1:
        probs.append("workers: must be an integer >= 1")
    if c.format not in (None, "csv", "json"):
        probs.append("format: csv or json")
    if c.preset not in PRESETS:
        probs.append(f"preset: one of {', '.join(PRESETS)}")
    return probs


def _floats(text):
    text = text.strip()
    if text.startswith("geom:"):
        a, b, n = text[5:].split(":")
        return [float(v) for v in np.geomspace(float(a), float(b), int(n))]
    return [float(v) for v in text.split(",") if v.strip()]


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--k", type=int, default=S)
    common.add_argument("--sigma", type=float, default=S)
    common.add_argument("--sigma-b", dest="sigma_b", type=float, default=S)
    common.add_argument("--t-max", dest="t_max", type=float, default=S, help="horizon T (or t_cut)")
    common.add_argument("--t-grid", dest="t_grid", type=_floats, default=S,
                        help="comma list, or geom:START:STOP:COUNT")
    common.add_argument("--n", type=int, default=S)
    common.add_argument("--x", type=_floats, default=S, help="comma list of Laplace abscissae")
    common.add_argument("--thresholds", type=_floats, default=S)
    common.add_argument("--panel-width", dest="panel_width", type=float, default=S)
    common.add_argument("--tol", type=float, default=S)
    common.add_argument("--workers", type=int, default=S)
    common.add_argument("--format", choices=("csv", "json"), default=S)
    common.add_argument("--out", default=S)
    common.add_argument("--config", default=S, help="JSON config file; flags override it")
    common.add_argument("--preset", default=S)
    p = argparse.ArgumentParser(prog="zetalab", description="Numerical experiments on zeta moments.")
    sub = p.add_subparsers(dest="kind", required=True)
    for k in KINDS:
        sub.add_parser(k, parents=[common])
    return p


def build_config(argv) -> ExperimentConfig:
    ns = vars(_parser().parse_args(argv))
    base = {}
    path = ns.pop("config", None)
    if path:
        with open(path) as fh:
            base = json.load(fh)
        if not isinstance(base, dict):
            raise ValueError("config file must hold a JSON object")
    base.update(ns)
    return ExperimentConfig.from_dict(base)


def _table(cfg, header, rows, obj=None):
    if (cfg.format or "csv") == "json":
        emit(json_text(obj if obj is not None else [dict(zip(header, r)) for r in rows]), cfg.out)
    else:
        emit(csv_text(header, rows), cfg.out)


def _run_zeta(cfg, q):
    ts = cfg.t_grid or [cfg.t_max if cfg.t_max is not None else 0.0]
    z = zeta_many(cfg.sigma, np.array(ts, dtype=float))
    rows = [[cfg.sigma, t, v.real, v.imag, abs(v)] for t, v in zip(ts, z)]
    _table(cfg, ("sigma", "t", "re", "im", "abs"), rows)


def _run_moment(cfg, q):
    if cfg.t_grid:
        recs = mz.convergence_sweep(cfg.k, cfg.sigma, cfg.t_grid, q)
    else:
        recs = [mz.moment(cfg.k, cfg.sigma, cfg.t_max or 1e4, q)]
    _table(cfg, mz.CSV_FIELDS, [r.row() for r in recs])


def _run_coeff(cfg, q):
    lam = -math.log(cfg.n) if cfg.n is not None else (cfg.x[0] if cfg.x else 0.0)
    fc = bz.fourier_coefficient(cfg.k, cfg.sigma, lam, cfg.t_max or 1e4, q)
    if (cfg.format or "json") == "json":
        emit(json_text(fc.to_json()), cfg.out)
    else:
        emit(csv_text(("lambda", "T", "empirical_re", "empirical_im", "predicted_re", "predicted_im", "abs_error"),
                      [[fc.lam, fc.horizon_T, fc.empirical.real, fc.empirical.imag, fc.predicted.real,
                        fc.predicted.imag, fc.abs_error]]), cfg.out)


def _run_b2(cfg, q):
    Ts = cfg.t_grid or [cfg.t_max or 1e4]
    rows = []
    for T in Ts:
        d = bz.b2_distance(cfg.k, cfg.sigma, cfg.n, T, q)
        rows.append([d.k, d.sigma, d.N, d.T, d.empirical, d.analytic_tail, d.rel_gap])
    _table(cfg, ("k", "sigma", "N", "T", "empirical", "analytic_tail", "rel_gap"), rows)


def _run_cauchy(cfg, q):
    Ts = cfg.t_grid or [cfg.t_max or 1e4]
    cf = cauchy_distance_closed_form(cfg.k, cfg.sigma, cfg.sigma_b)
    rows = []
    for T in Ts:
        emp = bz.cauchy_distance_empirical(cfg.k, cfg.sigma, cfg.sigma_b, T, q)
        ref = cf.partial_sum
        rows.append([cfg.k, cfg.sigma, cfg.sigma_b, T, emp, cf.partial_sum, cf.tail_bound,
                     abs(emp - ref) / ref if ref else math.nan])
    _table(cfg, ("k", "sigma_a", "sigma_b", "T", "empirical", "closed_form_partial", "tail_bound", "rel_gap"), rows)


def _run_laplace(cfg, q):
    rows = [tz.laplace(cfg.k, cfg.sigma, x, 0.0, cfg.t_max, q).row() for x in cfg.x]
    _table(cfg, tz.CSV_FIELDS, rows)


def _run_abel(cfg, q):
    xs = cfg.x or [1e-1, 1e-2, 1e-3]
    rows = [p.row() for p in tz.abel_probe(cfg.k, cfg.sigma, xs, cfg.t_max, q)]
    _table(cfg, tz.CSV_FIELDS, rows)


def _run_conc(cfg, q):
    prof = cz.concentration_profile(ZetaPower(cfg.k, cfg.sigma), cfg.thresholds or [1.0, 2.0, 5.0, 10.0],
                                    cfg.t_max or 1e4, q)
    _table(cfg, cz.CSV_FIELDS, prof.rows(), prof.to_json())


def _run_growth(cfg, q):
    grid = cfg.t_grid or [float(v) for v in np.geomspace(10, 1e4, 20)]
    rep = growth_diagnostic(grid)
    if (cfg.format or "json") == "json":
        emit(json_text(asdict(rep)), cfg.out)
    else:
        rows = [[t, m, m * t ** (-1 / 6)] for t, m in zip(rep.t_grid, rep.moduli)]
        emit(csv_text(("t", "abs_zeta", "ratio"), rows), cfg.out)


def _run_report(cfg, q):
    out = cfg.out or "zetalab-report"
    return run_report(out, cfg.preset, q, echo=lambda s: print(s, file=sys.stderr, flush=True))


RUNNERS = {
    "zeta": _run_zeta, "moment": _run_moment, "coeff": _run_coeff, "b2dist": _run_b2, "cauchy": _run_cauchy,
    "laplace": _run_laplace, "abel": _run_abel, "conc": _run_conc, "growth": _run_growth,
    "report-all": _run_report,
}


def run(cfg: ExperimentConfig) -> int:
    probs = validate(cfg)
    if probs:
        for p in probs:
            print(f"zetalab: {p}", file=sys.stderr)
        return 2
    try:
        status = RUNNERS[cfg.kind](cfg, cfg.quadrature())
    except AccuracyError as exc:
        print(f"zetalab: accuracy failure at {exc.location}: {exc}", file=sys.stderr)
        return 1
    except ZetaLabError as exc:
        print(f"zetalab: {exc}", file=sys.stderr)
        return 1
    return status or 0


def main(argv=None) -> int:
    try:
        cfg = build_config(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (OSError, ValueError, TypeError) as exc:
        print(f"zetalab: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
