import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncring import (
    CODATA2018,
    FluxDomainError,
    FluxPoint,
    InvalidParameterError,
    epsilon0,
    f_nc,
    ground_energy_bruteforce,
    ground_energy_closed,
    j0,
    level_energy,
    occupied_levels,
    persistent_current,
    persistent_current_numeric,
)
from conftest import THETA_TILDE_BOUND, make_ring

# Frozen constant arithmetic from CODATA-2018 values.
F_NC_BOUND = 1.5825605872147644e-05   # R^2 * theta_tilde / hbar^2 at R=1um, bound
EPS0_1UM = 6.104264322461192e-27      # hbar^2/(2 m_e R^2) at R=1um, joules
J0_1UM = 1.4760045462553943e-12       # (e/h) * eps0, amperes


class TestEffectiveFlux:
    def test_headline_value(self):
        ring = make_ring(3, theta_tilde=THETA_TILDE_BOUND)
        assert f_nc(ring) == pytest.approx(F_NC_BOUND, rel=1e-12)

    def test_reported_value_within_tolerance(self):
        ring = make_ring(3, theta_tilde=THETA_TILDE_BOUND)
        assert f_nc(ring) == pytest.approx(1.5828e-5, rel=5e-4)

    def test_zero_deformation(self):
        assert f_nc(make_ring(3)) == 0.0

    def test_radius_squared_scaling(self):
        small = make_ring(3, theta_tilde=1e-63, radius=1e-6)
        large = make_ring(3, theta_tilde=1e-63, radius=2e-6)
        assert f_nc(large) == pytest.approx(4 * f_nc(small), rel=1e-12)


class TestEnergyScales:
    def test_epsilon0_value(self):
        assert epsilon0(make_ring(3)) == pytest.approx(EPS0_1UM, rel=1e-12)

    def test_epsilon0_radius_scaling(self):
        assert epsilon0(make_ring(3, radius=2e-6)) == pytest.approx(EPS0_1UM / 4, rel=1e-12)

    def test_j0_value(self):
        assert j0(make_ring(3)) == pytest.approx(J0_1UM, rel=1e-12)

    def test_alpha_enters_through_effective_mass(self):
        tt = 1e-62
        from ncring import theta_from_constraint
        theta = theta_from_constraint(0.5, tt)
        ring = make_ring(3, theta_tilde=tt, alpha=0.5, theta=theta)
        # m* = m/alpha, so eps0 scales by alpha
        assert epsilon0(ring) == pytest.approx(EPS0_1UM * 0.5, rel=1e-12)


class TestLevelEnergy:
    def test_zero_kinetic_at_offset_origin(self):
        ring = make_ring(1, theta_tilde=THETA_TILDE_BOUND)
        fn = f_nc(ring)
        eps = epsilon0(ring)
        assert level_energy(ring, 0, fn) == pytest.approx(-0.75 * eps * fn**2, rel=1e-12)

    def test_first_level_canonical(self):
        ring = make_ring(1)
        assert level_energy(ring, 1, 0.0) == pytest.approx(epsilon0(ring), rel=1e-12)

    @given(
        n=st.integers(min_value=-30, max_value=30),
        f=st.floats(min_value=-3.0, max_value=3.0, allow_nan=False),
    )
    @settings(max_examples=100)
    def test_invariant_under_unit_shift(self, n, f):
        ring = make_ring(5, theta_tilde=THETA_TILDE_BOUND)
        assert level_energy(ring, n, f) == pytest.approx(
            level_energy(ring, n - 1, f + 1.0), rel=1e-9, abs=1e-40
        )


class TestGroundEnergyClosed:
    def test_single_electron_at_offset_origin(self):
        ring = make_ring(1, theta_tilde=THETA_TILDE_BOUND)
        fn = f_nc(ring)
        eps = epsilon0(ring)
        assert ground_energy_closed(ring, fn) == pytest.approx(-0.75 * eps * fn**2, rel=1e-12)

    def test_three_electrons_zero_flux(self):
        # E(-1) + E(0) + E(+1) = 2*eps0
        ring = make_ring(3)
        assert ground_energy_closed(ring, 0.0) == pytest.approx(2 * epsilon0(ring), rel=1e-12)

    def test_two_electrons_zero_flux(self):
        # E(0) + E(-1) = eps0
        ring = make_ring(2)
        assert ground_energy_closed(ring, 0.0) == pytest.approx(epsilon0(ring), rel=1e-12)


class TestBruteForceOracle:
    @pytest.mark.parametrize("n_el", range(1, 12))
    @pytest.mark.parametrize("f", [0.0, 0.2, 0.45])
    def test_matches_closed_form(self, n_el, f):
        ring = make_ring(n_el, theta_tilde=THETA_TILDE_BOUND)
        closed = ground_energy_closed(ring, f)
        brute = ground_energy_bruteforce(ring, f, window_margin=4)
        assert abs(closed - brute) <= 1e-12 * n_el**3 * epsilon0(ring)

    def test_degenerate_pair_tie_break(self):
        # at f = f_nc the even ground state occupies n = 0 and n = -1
        ring = make_ring(2, theta_tilde=THETA_TILDE_BOUND)
        fn = f_nc(ring)
        occupied = occupied_levels(ring, fn)
        assert sorted(lv.n for lv in occupied) == [-1, 0]
        total = ground_energy_bruteforce(ring, fn)
        assert total == pytest.approx(
            level_energy(ring, 0, fn) + level_energy(ring, -1, fn), rel=1e-12
        )

    def test_periodicity_exact_shift(self):
        ring = make_ring(4, theta_tilde=THETA_TILDE_BOUND)
        assert ground_energy_bruteforce(ring, 0.9) == pytest.approx(
            ground_energy_bruteforce(ring, -0.1), rel=1e-12
        )

    @given(f=st.floats(min_value=-2.0, max_value=2.0, allow_nan=False))
    @settings(max_examples=60, deadline=None)
    def test_periodicity_property(self, f):
        ring = make_ring(5, theta_tilde=THETA_TILDE_BOUND)
        left = ground_energy_bruteforce(ring, f)
        right = ground_energy_bruteforce(ring, f + 1.0)
        assert left == pytest.approx(right, rel=1e-10)

    @given(delta=st.floats(min_value=1e-6, max_value=0.499, allow_nan=False))
    @settings(max_examples=60, deadline=None)
    def test_symmetry_about_offset_origin(self, delta):
        ring = make_ring(6, theta_tilde=THETA_TILDE_BOUND)
        fn = f_nc(ring)
        assert ground_energy_bruteforce(ring, fn + delta) == pytest.approx(
            ground_energy_bruteforce(ring, fn - delta), rel=1e-10
        )

    def test_window_margin_validated(self):
        with pytest.raises(InvalidParameterError):
            ground_energy_bruteforce(make_ring(3), 0.1, window_margin=1)


class TestPersistentCurrent:
    def test_odd_vanishes_at_offset_origin(self):
        ring = make_ring(7, theta_tilde=THETA_TILDE_BOUND)
        assert persistent_current(ring, f_nc(ring)) == 0.0

    def test_even_jump_value_at_offset_origin(self):
        ring = make_ring(8, theta_tilde=THETA_TILDE_BOUND)
        assert persistent_current(ring, f_nc(ring)) == pytest.approx(
            8 * j0(ring), rel=1e-12
        )

    def test_headline_magnitude(self):
        # odd branch at N = 1e5 scale: J = -2 N J0 (f - f_nc) at f = 0.1
        ring = make_ring(100001, theta_tilde=THETA_TILDE_BOUND)
        expected = -2 * 100001 * J0_1UM * (0.1 - F_NC_BOUND)
        assert persistent_current(ring, 0.1) == pytest.approx(expected, rel=1e-12)
        assert persistent_current(ring, 0.1) == pytest.approx(-2.95e-8, rel=1e-2)

    def test_canonical_limit_is_linear(self):
        ring = make_ring(9)
        cur0 = j0(ring)
        for f in (0.05, 0.2, 0.45):
            assert persistent_current(ring, f) == pytest.approx(-2 * 9 * cur0 * f, rel=1e-12)

    def test_odd_in_offset(self):
        ring = make_ring(4, theta_tilde=THETA_TILDE_BOUND)
        fn = f_nc(ring)
        assert persistent_current(ring, fn + 0.3) == pytest.approx(
            -persistent_current(ring, fn - 0.3), rel=1e-12
        )


class TestNumericCurrentOracle:
    @pytest.mark.parametrize("n_el", [1, 2, 3, 5, 8])
    def test_matches_closed_form(self, n_el):
        ring = make_ring(n_el, theta_tilde=THETA_TILDE_BOUND)
        for f in (0.1, 0.2, 0.3):
            numeric = persistent_current_numeric(ring, f, step=1e-6)
            closed = persistent_current(ring, f)
            assert numeric == pytest.approx(closed, rel=1e-6)

    def test_symmetry_point_single_electron(self):
        ring = make_ring(1, theta_tilde=THETA_TILDE_BOUND)
        value = persistent_current_numeric(ring, f_nc(ring), step=1e-6)
        assert abs(value) <= 1e-9 * j0(ring)

    def test_crossing_rejected_odd(self):
        ring = make_ring(3, theta_tilde=THETA_TILDE_BOUND)
        with pytest.raises(FluxDomainError):
            persistent_current_numeric(ring, f_nc(ring) + 0.5, step=1e-6)

    def test_crossing_rejected_even(self):
        ring = make_ring(2, theta_tilde=THETA_TILDE_BOUND)
        with pytest.raises(FluxDomainError):
            persistent_current_numeric(ring, f_nc(ring) + 1e-7, step=1e-6)

    def test_step_validated(self):
        ring = make_ring(3)
        with pytest.raises(InvalidParameterError):
            persistent_current_numeric(ring, 0.2, step=1e-3)


class TestFluxPoint:
    def test_phi_is_exact_multiple(self):
        point = FluxPoint.from_f(0.25)
        assert point.phi == 0.25 * CODATA2018.phi0


class TestRingConfigValidation:
    def test_rejects_large_effective_flux(self):
        with pytest.raises(InvalidParameterError):
            make_ring(3, theta_tilde=1e-50)  # f_nc would be ~0.9

    def test_rejects_nonpositive_radius(self):
        with pytest.raises(InvalidParameterError):
            make_ring(3, radius=0.0)

    def test_rejects_zero_electrons(self):
        with pytest.raises(InvalidParameterError):
            make_ring(0)
