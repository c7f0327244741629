import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetalab import (BohrPolynomial, Constant, Indicator, InputError, LinearCombination, SpikeTrain, ZetaPower,
                     bohr_partial_sum, bounded_approx_gap, concentration_profile, spike_null_set_demo,
                     weighted_functional)


def test_constant_profile():
    p = concentration_profile(Constant(1.0), [0.5, 2.0], 37.0)
    assert p.densities == [1.0, 0.0] and p.mass_fractions == [1.0, 0.0]


@given(st.lists(st.floats(0.0, 12.0), min_size=1, max_size=6))
def test_zeta_profile_monotone(ths):
    p = concentration_profile(ZetaPower(1, 0.75), sorted(ths), 1500.0)
    assert all(b <= a for a, b in zip(p.densities, p.densities[1:]))
    assert all(b <= a for a, b in zip(p.mass_fractions, p.mass_fractions[1:]))
    assert all(0 <= v <= 1 for v in p.densities + p.mass_fractions)


def test_zeta_profile_T2e4():
    p = concentration_profile(ZetaPower(1, 0.75), [1, 2, 5, 10], 2e4)
    assert all(b <= a for a, b in zip(p.densities, p.densities[1:]))
    assert all(b <= a for a, b in zip(p.mass_fractions, p.mass_fractions[1:]))
    print("profile", p.to_json())


def test_unsorted_thresholds():
    with pytest.raises(InputError):
        concentration_profile(Constant(1.0), [2.0, 1.0], 10.0)


def test_weighted_functional_constant_weights():
    sp = SpikeTrain(1.0, 2.0, 1.0, 1.0)
    f = LinearCombination(((1.0, Constant(1.0)), (1.0, sp)))
    w = weighted_functional(f, Constant(1.0), 300.0)
    assert abs(w.ratio - 1) < 1e-12
    for c in (0.5, 2.0, 0.3j):
        w = weighted_functional(ZetaPower(1, 0.8), Constant(c), 300.0)
        assert w.ratio <= abs(c) * (1 + 1e-12) and w.ess_sup.value == abs(c)


def test_ess_sup_values():
    zf = ZetaPower(1, 0.75)
    assert weighted_functional(zf, Indicator(zf, 3.0), 200.0).ess_sup.value == 1.0
    poly = BohrPolynomial(((0.0, 1.0), (1.0, -0.5j)))
    assert weighted_functional(zf, poly, 200.0).ess_sup.value == 1.5
    with pytest.raises(InputError):
        weighted_functional(zf, ZetaPower(1, 0.9), 200.0)
    with pytest.raises(InputError):
        weighted_functional(zf, SpikeTrain(1.0, 2.0, 1.0, 1.0), 200.0)


def test_phase_stripped_matches_mass_fraction():
    zf = ZetaPower(1, 0.75)
    p = concentration_profile(zf, [5.0], 3000.0)
    w = weighted_functional(zf, Indicator(zf, 5.0), 3000.0, phase_stripped=True)
    assert abs(w.ratio - p.mass_fractions[0]) < 1e-9


def test_bounded_approx_gap():
    poly = bohr_partial_sum(2, 0.8, 7)
    assert bounded_approx_gap(poly, poly, 100.0) == 0.0
    gaps = [bounded_approx_gap(ZetaPower(1, 0.75), bohr_partial_sum(1, 0.75, N), 2000.0) for N in (1, 5, 10, 50)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_spike_gap_closed_form_and_trend():
    sp = SpikeTrain(1.0, 2.0, 1.0, 0.5)  # h^2 w = 1/n
    gaps = []
    for T in (1e2, 1e3, 1e4):
        g = bounded_approx_gap(sp, Constant(0.0), T)
        assert abs(g - sp.integral_of(lambda h: h * h, T) / T) < 1e-9
        gaps.append(g)
    assert gaps[-1] < gaps[0]


def test_spike_demo():
    sp = SpikeTrain(1.0, 2.0, 1.0, 1.0)
    rows = spike_null_set_demo(sp, [1e2, 1e3, 1e4])
    for r in rows:
        assert r.density <= (math.pi ** 2 / 6) / r.T
        assert r.mass_fraction > 0.25
    assert rows[-1].density < rows[0].density
    thin = spike_null_set_demo(SpikeTrain(1.0, 2.0, 1.0, 0.0), [1e2, 1e3, 1e4])
    assert thin[-1].mass_fraction < thin[0].mass_fraction
    empty = spike_null_set_demo(SpikeTrain(1.0, 2.0, n_max=1), [10.0, 100.0])
    assert all(r.density == 0 and r.mass_fraction == 0 for r in empty)
    with pytest.raises(InputError):
        SpikeTrain(1.0, 0.5)


def test_spike_demo_matches_quadrature():
    sp = SpikeTrain(1.0, 2.0, 1.0, 1.0)
    f = LinearCombination(((1.0, Constant(1.0)), (1.0, sp)))
    for r in spike_null_set_demo(sp, [50.0, 500.0]):
        p = concentration_profile(f, [1.0], r.T)
        assert abs(p.measures[0] - sp.support_measure(r.T)) < 1e-6
        assert abs(p.mass_fractions[0] - r.mass_fraction) < 1e-6
        w = weighted_functional(f, Indicator(f, 1.0), r.T, phase_stripped=True)
        assert abs(w.ratio - p.mass_fractions[0]) < 1e-9
