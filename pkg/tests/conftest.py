import pytest

from ncring import CODATA2018, NCParameters, RingConfig

# Headline regime: 1 um ring, momentum noncommutativity at its reported bound.
THETA_TILDE_BOUND = 1.76e-61
RADIUS = 1e-6


def make_ring(n_electrons: int, theta_tilde: float = 0.0, alpha: float = 1.0,
              theta: float = 0.0, radius: float = RADIUS) -> RingConfig:
    return RingConfig(
        radius=radius,
        mass=CODATA2018.m_e,
        n_electrons=n_electrons,
        nc=NCParameters(theta=theta, theta_tilde=theta_tilde, alpha=alpha),
        constants=CODATA2018,
    )


@pytest.fixture
def bound_ring_odd():
    return make_ring(100001, theta_tilde=THETA_TILDE_BOUND)


@pytest.fixture
def bound_ring_even():
    return make_ring(100000, theta_tilde=THETA_TILDE_BOUND)
