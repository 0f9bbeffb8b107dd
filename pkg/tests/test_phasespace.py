import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncring import (
    CODATA2018,
    ConstraintUnsatisfiableError,
    InvalidParameterError,
    LinearPhaseForm,
    NCParameters,
    PhysicalConstants,
    commutator,
    effective_gauge,
    sw_map,
    theta_from_constraint,
    verify_algebra,
)
from ncring.phasespace import PX, PY, X, Y

HBAR = CODATA2018.hbar

# Moderate magnitudes keep hypothesis away from overflow; the algebra is exact
# at any scale.
coeffs = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
forms = st.builds(LinearPhaseForm, coeffs, coeffs, coeffs, coeffs)


def ulps(value: float, reference: float) -> float:
    if reference == 0.0:
        return abs(value)
    return abs(value - reference) / np.spacing(abs(reference))


class TestConstants:
    def test_h_is_two_pi_hbar(self):
        assert abs(CODATA2018.h - 2 * math.pi * CODATA2018.hbar) <= 1e-12 * CODATA2018.h

    def test_phi0_is_h_over_e(self):
        assert CODATA2018.phi0 == CODATA2018.h / CODATA2018.e

    def test_inconsistent_constants_rejected(self):
        with pytest.raises(InvalidParameterError):
            PhysicalConstants(hbar=1.0, e=1.0, h=7.0, m_e=1.0, phi0=7.0)


class TestNCParameters:
    def test_alpha_one_requires_degenerate_product(self):
        with pytest.raises(InvalidParameterError):
            NCParameters(theta=1e-40, theta_tilde=1e-61, alpha=1.0)

    def test_negative_theta_tilde_rejected(self):
        with pytest.raises(InvalidParameterError):
            NCParameters(theta=0.0, theta_tilde=-1e-61, alpha=1.0)

    @pytest.mark.parametrize("alpha", [0.0, -0.5, 1.2])
    def test_alpha_out_of_range(self, alpha):
        with pytest.raises(InvalidParameterError):
            NCParameters(theta=0.0, theta_tilde=0.0, alpha=alpha)


class TestSwMap:
    def test_canonical_limit_is_identity(self):
        x_hat, y_hat, px_hat, py_hat = sw_map(NCParameters(0.0, 0.0, 1.0))
        assert x_hat == X
        assert y_hat == Y
        assert px_hat == PX
        assert py_hat == PY

    def test_momentum_deformation_coefficients(self):
        # theta = 0, theta_tilde at its bound, alpha = 1
        tt = 1.76e-61
        x_hat, _, px_hat, _ = sw_map(NCParameters(0.0, tt, 1.0))
        assert x_hat == X
        assert px_hat.c_y == tt / (2 * HBAR)
        assert px_hat.c_px == 1.0
        assert px_hat.c_x == 0.0 and px_hat.c_py == 0.0

    def test_off_diagonal_antisymmetry(self):
        tt = 3e-61
        theta = theta_from_constraint(0.7, tt)
        x_hat, y_hat, px_hat, py_hat = sw_map(NCParameters(theta, tt, 0.7))
        assert x_hat.c_py == -y_hat.c_px
        assert px_hat.c_y == -py_hat.c_x
        assert x_hat.c_x == y_hat.c_y == px_hat.c_px == py_hat.c_py


class TestCommutator:
    def test_heisenberg_pair(self):
        assert commutator(X, PX) == HBAR
        assert commutator(Y, PY) == HBAR

    def test_coordinates_commute(self):
        assert commutator(X, Y) == 0.0
        assert commutator(PX, PY) == 0.0

    def test_mapped_positions_give_theta(self):
        # closure of [x_hat, y_hat]: both cross terms contribute theta/2
        tt = 2.5e-61
        for alpha in (0.3, 0.6, 0.9):
            theta = theta_from_constraint(alpha, tt)
            x_hat, y_hat, _, _ = sw_map(NCParameters(theta, tt, alpha))
            assert ulps(commutator(x_hat, y_hat), theta) <= 4

    @given(u=forms, v=forms)
    @settings(max_examples=100)
    def test_antisymmetric(self, u, v):
        assert commutator(u, v) == -commutator(v, u)

    @given(u=forms, v=forms, w=forms, a=coeffs, b=coeffs)
    @settings(max_examples=100)
    def test_bilinear(self, u, v, w, a, b):
        lhs = commutator(a * u + b * v, w)
        rhs = a * commutator(u, w) + b * commutator(v, w)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-22)


class TestVerifyAlgebra:
    def test_canonical_residual_zero(self):
        report = verify_algebra(NCParameters(0.0, 0.0, 1.0))
        assert report.heisenberg_residual == 0.0
        assert report.comm_xy == 0.0
        assert report.comm_pxpy == 0.0
        assert report.comm_xpy == 0.0

    def test_paper_constraint_residual(self):
        # [x_hat, px_hat] = i*hbar*(1 + alpha^2)/2 under the factor-2 constraint
        alpha = 0.9
        tt = 1e-61
        theta = theta_from_constraint(alpha, tt, variant="paper")
        report = verify_algebra(NCParameters(theta, tt, alpha))
        expected = abs((1 + alpha**2) / 2 - 1)
        assert report.heisenberg_residual == pytest.approx(expected, abs=1e-12)
        assert report.heisenberg_residual == pytest.approx(0.095, abs=1e-12)

    def test_closing_constraint_residual_vanishes(self):
        tt = 1e-61
        for alpha in np.linspace(0.05, 1.0, 20):
            theta = theta_from_constraint(float(alpha), tt, variant="heisenberg-closing")
            report = verify_algebra(NCParameters(theta, tt, float(alpha)))
            assert report.heisenberg_residual <= 1e-12

    def test_commutators_match_parameters_exactly(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            alpha = float(rng.uniform(0.05, 1.0))
            tt = float(10.0 ** rng.uniform(-70, -50))
            theta = float(10.0 ** rng.uniform(-45, -30))
            report = verify_algebra(NCParameters(theta, tt, alpha))
            assert ulps(report.comm_xy, theta) <= 4
            assert ulps(report.comm_pxpy, tt) <= 4


class TestThetaFromConstraint:
    def test_alpha_one_gives_zero(self):
        assert theta_from_constraint(1.0, 123.0) == 0.0
        assert theta_from_constraint(1.0, 0.0) == 0.0

    def test_direct_substitution_paper(self):
        # 2*hbar^2*(1/2)*(1/2)/hbar^2 = 1/2 (in m^2)
        alpha = 1 / math.sqrt(2)
        value = theta_from_constraint(alpha, HBAR**2, variant="paper")
        assert value == pytest.approx(0.5, rel=1e-12)

    def test_direct_substitution_closing(self):
        alpha = 1 / math.sqrt(2)
        value = theta_from_constraint(alpha, HBAR**2, variant="heisenberg-closing")
        assert value == pytest.approx(1.0, rel=1e-12)

    def test_product_satisfies_constraint(self):
        for alpha in (0.2, 0.5, 0.8):
            for tt in (1e-61, 3.7e-60):
                theta = theta_from_constraint(alpha, tt, variant="paper")
                assert theta * tt == pytest.approx(
                    2 * HBAR**2 * alpha**2 * (1 - alpha**2), rel=1e-12
                )

    def test_unsatisfiable_without_momentum_deformation(self):
        with pytest.raises(ConstraintUnsatisfiableError):
            theta_from_constraint(0.5, 0.0)

    def test_unknown_variant_rejected(self):
        with pytest.raises(InvalidParameterError):
            theta_from_constraint(0.5, 1.0, variant="factor-3")


class TestEffectiveGauge:
    def test_zero_deformation_zero_field(self):
        gauge = effective_gauge(NCParameters(0.0, 0.0, 0.5), mass=CODATA2018.m_e)
        assert gauge.a_coeff == 0.0
        assert gauge.b_z == 0.0
        assert gauge.m_star == CODATA2018.m_e / 0.5

    def test_field_magnitude_at_bound(self):
        # theta_tilde/(e*hbar) with CODATA-2018 values
        gauge = effective_gauge(NCParameters(0.0, 1.76e-61, 1.0))
        assert gauge.b_z == pytest.approx(1.0416603011040061e-08, rel=1e-12)

    def test_alpha_scaling(self):
        tt = 1e-61
        theta_half = theta_from_constraint(0.5, tt)
        b_half = effective_gauge(NCParameters(theta_half, tt, 0.5)).b_z
        theta_quarter = theta_from_constraint(0.25, tt)
        b_quarter = effective_gauge(NCParameters(theta_quarter, tt, 0.25)).b_z
        assert b_quarter == pytest.approx(4 * b_half, rel=1e-12)

    def test_field_is_twice_slope(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            alpha = float(rng.uniform(0.1, 1.0))
            tt = float(10.0 ** rng.uniform(-70, -50))
            theta = theta_from_constraint(alpha, tt)
            gauge = effective_gauge(NCParameters(theta, tt, alpha))
            assert gauge.b_z == 2 * gauge.a_coeff
