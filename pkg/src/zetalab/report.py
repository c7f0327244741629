"""Acceptance checks and the report-all driver.

Each criterion returns a :class:`CriterionResult` holding one or more
:class:`Check` rows.  ``run_report`` executes a preset, writes
deterministic data files (no timestamps) plus a separate metadata.json.
"""

from __future__ import annotations

import itertools
import math
import platform
import time
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Callable, Dict, List

import numpy as np

from . import besicovitch as bz
from . import concentration as cz
from . import moments as mz
from . import tauberian as tz
from .divisor import cauchy_distance_closed_form, divisor_sieve, series_value
from .functions import Constant, Exponential, Indicator, LinearCombination, SpikeTrain, ZetaPower
from .lattice import clear_caches
from .quadrature import QuadratureConfig
from .records import csv_text, json_text
from .zeta import DEFAULT_ZETA_CONFIG, zeta_many, zeta_oracle, zeta_real


@dataclass(frozen=True)
class Preset:
    name: str
    c1_T: float = 2e4
    c2_T: float = 5e4
    c3_T: float = 1e4
    c3_n: tuple = (1, 2, 3, 5)
    c3_off: float = 0.5
    c4_N: int = 10
    c4_T: float = 2e4
    c5_T: float = 2e4
    c6_x: float = 1e-3
    c6_tcut: float = 3e4
    c6_T: float = 2e4
    c7_T: float = 1e4
    c7_grid: tuple = (0.6, 0.7, 0.8)
    c8_points: int = 200
    c8_tmax: float = 1000.0
    c8_orth_T: float = 1e3
    c9_T: float = 2e4
    c9_thresholds: tuple = (1.0, 2.0, 5.0, 10.0)
    c9_T_grid: tuple = (1e2, 1e3, 1e4)
    c10_T: float = 3e3
    extra_k: tuple = ()


PRESETS: Dict[str, Preset] = {
    "desk": Preset("desk"),
    "extended": Preset("extended", c1_T=1e5, c2_T=1e5, c4_T=1e5, c5_T=1e5, c9_T_grid=(1e2, 1e3, 1e4, 1e5),
                       extra_k=(3, 4)),
    "smoke": Preset("smoke", c1_T=2e3, c2_T=2e3, c3_T=1e3, c4_T=2e3, c5_T=2e3, c6_x=1e-2, c6_tcut=2500.0,
                    c6_T=200.0, c7_T=1e3, c8_points=12, c8_tmax=200.0, c8_orth_T=200.0, c9_T=2e3,
                    c9_T_grid=(1e2, 1e3), c10_T=3e3),
}


@dataclass
class Check:
    label: str
    measured: float
    reference: float
    tolerance: float
    passed: bool

    def __post_init__(self):
        self.measured = float(self.measured)
        self.passed = bool(self.passed)


@dataclass
class CriterionResult:
    cid: int
    name: str
    checks: List[Check] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def line(self):
        worst = "; ".join(f"{c.label}: {c.measured:.6g} vs {c.reference:.6g} (tol {c.tolerance:g})"
                          for c in self.checks if not c.passed)
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.cid}: {self.name}" + (f" -- {worst}" if worst else "")


def _rel(label, measured, reference, tol):
    gap = abs(measured - reference) / abs(reference)
    return Check(label, gap, 0.0, tol, gap <= tol), gap


def _bool(label, ok, measured=math.nan, reference=math.nan, tol=0.0):
    return Check(label, float(measured), float(reference), tol, bool(ok))


def c1_second_moment(p, qcfg, zcfg):
    rec = mz.moment(1, 0.75, p.c1_T, qcfg, zcfg)
    chk, _ = _rel("rel_gap M_1(0.75,T)/T vs zeta(1.5)", rec.average, rec.target, 0.05)
    return CriterionResult(1, "second moment k=1 sigma=0.75", [chk], {"record": asdict(rec)})


def c2_fourth_moment(p, qcfg, zcfg):
    rec = mz.moment(2, 0.75, p.c2_T, qcfg, zcfg)
    sv = series_value(2, 0.75)
    exact = rec.target
    bracket = sv.partial_sum <= exact <= sv.upper
    chk, _ = _rel("rel_gap M_2(0.75,T)/T vs zeta(1.5)^4/zeta(3)", rec.average, exact, 0.10)
    checks = [chk, _bool("series partial sum + tail brackets the closed form", bracket,
                         sv.partial_sum, exact)]
    details = {"record": asdict(rec), "series_partial": sv.partial_sum, "series_tail_bound": sv.tail_bound,
               "rel_gap_vs_partial_sum": abs(rec.average - sv.partial_sum) / sv.partial_sum}
    for k in p.extra_k:
        details[f"moment_k{k}"] = asdict(mz.moment(k, 0.75, p.c2_T, qcfg, zcfg))
    return CriterionResult(2, "fourth moment k=2 sigma=0.75", checks, details)


def c3_fourier(p, qcfg, zcfg):
    checks, coeffs = [], []
    for n in p.c3_n:
        fc = bz.fourier_coefficient(1, 0.75, -math.log(n), p.c3_T, qcfg, zcfg)
        coeffs.append(fc.to_json())
        checks.append(Check(f"|c(-log {n}) - n^-0.75|", fc.abs_error, 0.0, 0.02, fc.abs_error <= 0.02))
    fc = bz.fourier_coefficient(1, 0.75, p.c3_off, p.c3_T, qcfg, zcfg)
    coeffs.append(fc.to_json())
    checks.append(Check(f"|c({p.c3_off})| off-frequency", abs(fc.empirical), 0.0, 0.02, abs(fc.empirical) <= 0.02))
    return CriterionResult(3, "Fourier coefficients k=1 sigma=0.75", checks, {"coefficients": coeffs})


def c4_b2(p, qcfg, zcfg):
    d = bz.b2_distance(1, 0.75, p.c4_N, p.c4_T, qcfg, zcfg)
    chk, _ = _rel(f"B2 distance to partial sum N={p.c4_N} vs series tail", d.empirical, d.analytic_tail, 0.10)
    return CriterionResult(4, "B2 distance / Parseval tail", [chk], {"distance": asdict(d)})


def c5_cauchy(p, qcfg, zcfg):
    ref = zeta_real(1.2) - 2 * zeta_real(1.3) + zeta_real(1.4)
    emp = bz.cauchy_distance_empirical(1, 0.6, 0.7, p.c5_T, qcfg, zcfg)
    cf = cauchy_distance_closed_form(1, 0.6, 0.7)
    chk, gap = _rel("empirical Cauchy distance vs zeta(1.2)-2zeta(1.3)+zeta(1.4)", emp, ref, 0.10)
    checks = [chk, _bool("closed form partial + tail brackets the three-zeta value",
                         cf.partial_sum <= ref <= cf.upper, cf.partial_sum, ref)]
    return CriterionResult(5, "Cauchy distance sigma 0.6 / 0.7", checks,
                           {"empirical": emp, "reference": ref, "closed_form_partial": cf.partial_sum,
                            "closed_form_tail_bound": cf.tail_bound})


def c6_abel(p, qcfg, zcfg):
    lp = tz.laplace(1, 0.75, p.c6_x, 0.0, p.c6_tcut, qcfg, zcfg)
    chk, _ = _rel(f"x L(x) at x={p.c6_x:g} vs zeta(1.5)", p.c6_x * lp.value.real, lp.target, 0.05)
    ac = tz.abel_cesaro_compare(1, 0.75, p.c6_T, qcfg, zcfg)
    chk2 = Check(f"Abel vs Cesaro discrepancy at T={p.c6_T:g}", ac.discrepancy, 0.0, 0.10, ac.discrepancy <= 0.10)
    return CriterionResult(6, "Abel probe and Abel/Cesaro consistency", [chk, chk2],
                           {"laplace": lp.row(), "abel_cesaro": asdict(ac) | {"discrepancy": ac.discrepancy}})


def c7_convexity(p, qcfg, zcfg):
    res = mz.convexity_probe(1, p.c7_grid, p.c7_T, qcfg, zcfg)
    checks = [Check(f"midpoint convexity at sigma={v.sigma:g}", v.midpoint_value - v.chord_value, 0.0,
                    v.tolerance, v.holds) for v in res.verdicts]
    return CriterionResult(7, "convexity of M_1 in sigma", checks,
                           {"points": res.points, "verdicts": [asdict(v) for v in res.verdicts]})


def brute_divisor_count(k, n):
    """Ordered k-tuples of positive integers with product n, by exhaustive enumeration."""
    if k == 1:
        return 1
    return sum(brute_divisor_count(k - 1, n // d) for d in range(1, n + 1) if n % d == 0)


def c8_oracles(p, qcfg, zcfg):
    checks = []
    mism = 0
    for k in range(1, 5):
        tab = divisor_sieve(k, 500)
        mism += sum(tab[n] != brute_divisor_count(k, n) for n in range(1, 501))
    checks.append(_bool("sieve vs brute force n<=500 k<=4 (mismatches)", mism == 0, mism, 0))
    rng = np.random.default_rng(20240601)
    sig = rng.uniform(0.5, 2.0, p.c8_points)
    ts = rng.uniform(0.0, p.c8_tmax, p.c8_points)
    worst, conj = 0.0, 0.0
    for s, t in zip(sig, ts):
        z = zeta_many(float(s), np.array([t, -t]), zcfg)
        worst = max(worst, abs(z[0] - zeta_oracle(float(s), float(t))))
        conj = max(conj, abs(z[1] - np.conj(z[0])) / abs(z[0]))
    checks.append(Check(f"max |zeta - oracle| over {p.c8_points} points", worst, 0.0, 1e-8, worst <= 1e-8))
    checks.append(Check("max relative conjugation defect", conj, 0.0, 1e-12, conj <= 1e-12))
    lams = [0.0, 0.3, -0.7, 1.1, 2.5, -math.log(2)]
    ok, ratio = True, 0.0
    for l1, l2 in itertools.combinations(lams, 2):
        m = bz.inner_product(Exponential(l1), Exponential(l2), p.c8_orth_T, qcfg, zcfg)
        bound = 2.0 / (p.c8_orth_T * abs(l1 - l2))
        ratio = max(ratio, abs(m.value) / bound)
        ok &= abs(m.value) <= bound
    checks.append(Check("max |<e1,e2>| / (2/(T|dl|))", ratio, 1.0, 0.0, ok))
    return CriterionResult(8, "oracle suites", checks, {})


def _nonincreasing(xs):
    return all(b <= a for a, b in zip(xs, xs[1:]))


def c9_concentration(p, qcfg, zcfg):
    checks, details = [], {}
    zf = ZetaPower(1, 0.75)
    prof = cz.concentration_profile(zf, p.c9_thresholds, p.c9_T, qcfg, zcfg)
    details["zeta_profile"] = prof.to_json()
    checks.append(_bool("zeta profile densities nonincreasing", _nonincreasing(prof.densities)))
    checks.append(_bool("zeta profile mass fractions nonincreasing", _nonincreasing(prof.mass_fractions)))
    C = p.c9_thresholds[-1]
    wf = cz.weighted_functional(zf, Indicator(zf, C), p.c9_T, True, qcfg, zcfg)
    d = abs(wf.ratio - prof.mass_fractions[-1])
    checks.append(Check(f"zeta: phase-stripped functional vs mass fraction at C={C:g}", d, 0.0,
                        qcfg.refine_tol, d <= qcfg.refine_tol))

    spikes = {"mass_one": SpikeTrain(1.0, 2.0, 1.0, 1.0), "mass_n^-2": SpikeTrain(1.0, 2.0, 1.0, 0.0)}
    worst = 0.0
    for name, sp in spikes.items():
        f = LinearCombination(((1.0, Constant(1.0)), (1.0, sp)))
        demo = cz.spike_null_set_demo(sp, p.c9_T_grid)
        details[f"spike_{name}"] = [asdict(r) for r in demo]
        for row in demo:
            pr = cz.concentration_profile(f, [1.0], row.T, qcfg, zcfg)
            worst = max(worst, abs(pr.measures[0] - sp.support_measure(row.T)) / row.T,
                        abs(pr.mass_fractions[0] - row.mass_fraction))
            gap = cz.bounded_approx_gap(sp, Constant(0.0), row.T, qcfg, zcfg)
            worst = max(worst, abs(gap - row.spike_mass / row.T))
            w = cz.weighted_functional(f, Indicator(f, 1.0), row.T, True, qcfg, zcfg)
            d = abs(w.ratio - pr.mass_fractions[0])
            checks.append(Check(f"spike {name} T={row.T:g}: (a)/(b) identity", d, 0.0, qcfg.refine_tol,
                                d <= qcfg.refine_tol))
    checks.append(Check("spike closed forms vs quadrature (max abs diff)", worst, 0.0, 1e-6, worst <= 1e-6))
    lo = details["spike_mass_n^-2"]
    hi = details["spike_mass_one"]
    checks.append(_bool("mass n^-2 spikes: fraction decreasing along T grid",
                        lo[-1]["mass_fraction"] < lo[0]["mass_fraction"], lo[-1]["mass_fraction"]))
    floor = min(r["mass_fraction"] for r in hi)
    checks.append(_bool("mass 1 spikes: fraction stays above 0.25", floor >= 0.25, floor, 0.25))
    return CriterionResult(9, "concentration diagnostics", checks, details)


def c10_determinism(p, qcfg, zcfg):
    outs = []
    for w in (1, 4, 8):
        clear_caches()
        rec = mz.moment(1, 0.75, p.c10_T, replace(qcfg, workers=w), zcfg)
        outs.append((rec.integral.hex(), rec.quad_error.hex()))
    clear_caches()
    same = all(o == outs[0] for o in outs)
    return CriterionResult(10, "worker-count invariance (in-process)",
                           [_bool("moment integral identical for workers 1/4/8", same)],
                           {"integral_hex": outs[0][0]})


CRITERIA: Dict[int, Callable] = {
    1: c1_second_moment, 2: c2_fourth_moment, 3: c3_fourier, 4: c4_b2, 5: c5_cauchy,
    6: c6_abel, 7: c7_convexity, 8: c8_oracles, 9: c9_concentration, 10: c10_determinism,
}


def run_criterion(cid: int, preset="desk", qcfg: QuadratureConfig = None, zcfg=DEFAULT_ZETA_CONFIG):
    p = PRESETS[preset] if isinstance(preset, str) else preset
    return CRITERIA[cid](p, qcfg or QuadratureConfig(), zcfg)


SUMMARY_FIELDS = ("criterion", "check", "measured", "reference", "tolerance", "passed")


def run_report(out_dir, preset="desk", qcfg: QuadratureConfig = None, zcfg=DEFAULT_ZETA_CONFIG,
               criteria=None, echo=None) -> int:
    """Run the acceptance suite; write data files to ``out_dir``. Returns 0 if all pass, else 1."""
    p = PRESETS[preset]
    qcfg = qcfg or QuadratureConfig()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    started = time.time()
    results, timings = [], {}
    for cid in sorted(criteria or CRITERIA):
        t0 = time.perf_counter()
        r = CRITERIA[cid](p, qcfg, zcfg)
        timings[str(cid)] = time.perf_counter() - t0
        results.append(r)
        if echo:
            echo(r.line())
    rows = [[r.cid, c.label, c.measured, c.reference, c.tolerance, c.passed] for r in results for c in r.checks]
    (out / "summary.csv").write_text(csv_text(SUMMARY_FIELDS, rows))
    (out / "details.json").write_text(json_text({str(r.cid): {"name": r.name, "passed": r.passed,
                                                              "details": r.details} for r in results}))
    moment_rows = [r.details["record"] for r in results if "record" in r.details]
    (out / "moments.csv").write_text(csv_text(mz.CSV_FIELDS, [[m[f] for f in mz.CSV_FIELDS] for m in moment_rows]))
    lap = [r.details["laplace"] for r in results if "laplace" in r.details]
    (out / "laplace.csv").write_text(csv_text(tz.CSV_FIELDS, lap))
    conc = [r.details["zeta_profile"] for r in results if "zeta_profile" in r.details]
    (out / "concentration.csv").write_text(csv_text(cz.CSV_FIELDS, [
        [c["T"], th, d, m] for c in conc for th, d, m in zip(c["thresholds"], c["densities"], c["mass_fractions"])]))
    meta = {
        "preset": preset, "started_unix": started, "elapsed_s": time.time() - started,
        "criterion_seconds": timings, "workers": qcfg.workers, "python": platform.python_version(),
        "numpy": np.__version__, "platform": platform.platform(),
    }
    (out / "metadata.json").write_text(json_text(meta))
    return 0 if all(r.passed for r in results) else 1
