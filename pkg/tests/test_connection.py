import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from monopole_bvp.connection import (OMEGA, assemble, compute_b_star, compute_c_star,
                                     compute_d_star, integral_identity,
                                     integral_identity_check, left_envelope, left_remainder,
                                     right_remainder, verify_left_asymptotic,
                                     verify_right_asymptotic)
from monopole_bvp.errors import InsufficientDomain, PhaseQuadrant


class ZeroLeft:
    x_min = -40.0

    def __call__(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))


class UnitRight:
    x_min, x_max = 0.0, 40.0

    def z(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))


def test_reference_values(constants):
    assert constants.b_star == pytest.approx(-0.0005497, abs=5e-7)
    assert constants.c_star == pytest.approx(0.001939, abs=2e-6)
    assert constants.d_star == pytest.approx(4.1728, abs=5e-3)
    assert constants.c_star > 0


def test_degenerate_profiles_give_zero():
    assert compute_b_star(ZeroLeft()) == 0.0
    assert compute_c_star(ZeroLeft()) == 0.0
    assert compute_d_star(UnitRight()) == 0.0


def test_truncation_tails(left, right):
    assert abs(compute_b_star(left, 30) - compute_b_star(left, 25)) <= 1e-8
    assert abs(compute_c_star(left, 30) - compute_c_star(left, 25)) <= 1e-8
    assert abs(compute_d_star(right, 15) - compute_d_star(right, 13)) <= 1e-4


def test_insufficient_domain(left, right):
    with pytest.raises(InsufficientDomain):
        compute_b_star(left, 31.0)
    with pytest.raises(InsufficientDomain):
        compute_d_star(right, right.x_max + 1)


def test_refinement_stability(left, right):
    for f, tol in ((compute_b_star, 1e-8), (compute_c_star, 1e-8)):
        assert abs(f(left, spacing=1e-3) - f(left, spacing=5e-4)) < tol
    assert abs(compute_d_star(right, spacing=1e-3) - compute_d_star(right, spacing=5e-4)) < 1e-6


def test_assemble_reference_example():
    c = assemble(0.1687122, -0.0005497, 0.001939, 4.1728)
    assert c.amplitude_A == pytest.approx(0.19546, abs=1e-5)
    assert c.phase_phi == pytest.approx(0.011455, abs=1e-6)
    assert c.coeff_B == pytest.approx(4.8957, abs=1e-4)


def test_assemble_specialisation():
    a = 0.1687122
    c = assemble(a, 0.0, 0.0, 0.0)
    assert c.amplitude_A == 2 * a / math.sqrt(3)
    assert c.phase_phi == 0.0
    assert c.coeff_B == (2 + a) / 3


def test_phase_quadrant():
    with pytest.raises(PhaseQuadrant):
        assemble(0.1, 0.1, 0.001, 4.0)
    with pytest.raises(PhaseQuadrant):
        assemble(0.1, 0.2, 0.001, 4.0)


def test_connection_values(constants):
    assert constants.amplitude_A == pytest.approx(0.196, abs=1e-3)
    assert constants.phase_phi == pytest.approx(0.0115, abs=5e-4)
    assert constants.phase_phi / math.pi == pytest.approx(0.00375, abs=2e-4)
    assert constants.coeff_B == pytest.approx(4.90, abs=1e-2)
    assert 0 < constants.phase_phi < math.pi / 2


def test_record_is_self_consistent(constants):
    c = constants
    again = assemble(c.a_star, c.b_star, c.c_star, c.d_star)
    assert again == c
    assert c.coeff_B == (2.0 + c.a_star) / 3.0 + c.d_star
    assert c.phase_phi == math.atan2(c.c_star, c.a_star - c.b_star)
    assert c.as_dict()["phase_phi_over_pi"] == c.phase_phi / math.pi


@given(st.floats(0.01, 0.24), st.floats(-0.005, 0.005), st.floats(1e-6, 0.01), st.floats(0, 10))
def test_assemble_formulas(a, b, c, d):
    k = assemble(a, b, c, d)
    assert k.amplitude_A == pytest.approx(2 / math.sqrt(3) * math.sqrt((a - b) ** 2 + c ** 2), rel=1e-14)
    assert 0 < k.phase_phi < math.pi / 2
    assert k.amplitude_A > 0 and k.coeff_B > 0


def test_left_order(left, constants):
    rep = verify_left_asymptotic(left, constants.amplitude_A, constants.phase_phi)
    assert 1.4 <= rep.slope <= 1.6


def test_left_remainder_vanishes_relative(left, constants):
    xs, env = left_envelope(left, constants.amplitude_A, constants.phase_phi, -20.0, -8.0)
    rel = env / np.exp(xs / 2)
    # envelope of R / e^{x/2} near x = -10, -15, -20, decreasing toward -inf
    picks = [rel[np.argmin(np.abs(xs - x))] for x in (-10.0, -15.0, -20.0)]
    assert picks[0] > picks[1] > picks[2]


def test_leading_reconstruction(left, constants):
    c = constants
    xs = np.linspace(-20.0, -8.0, 601)
    lead = (2 / math.sqrt(3)) * ((c.a_star - c.b_star) * np.sin(OMEGA * xs)
                                 + c.c_star * np.cos(OMEGA * xs)) * np.exp(xs / 2)
    err = np.abs(left(xs) - lead)
    assert np.all(err <= 0.1 * np.exp(1.5 * xs) + 1e-10)
    assert np.max(np.abs(left_remainder(left, c.amplitude_A, c.phase_phi, xs) - (left(xs) - lead))) < 1e-12


def test_right_order(pipe, right):
    rep = verify_right_asymptotic(right, pipe.coeff_B_full)
    assert -2.2 <= rep.slope <= -1.8
    K = math.exp(rep.intercept)
    assert abs(right_remainder(right, pipe.coeff_B_full, 5.0)) <= 2 * K * math.exp(-10.0)


def test_right_coefficient_trend(pipe, right):
    B = pipe.coeff_B_full
    gaps = [abs(math.exp(x) * float(right.z(x)) - B) for x in (8.0, 10.0, 12.0)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_integral_identity(right, a_star):
    assert integral_identity_check(right, a_star, 15.0) <= 1e-6
    assert integral_identity_check(right, a_star, 20.0) <= integral_identity_check(right, a_star, 10.0)


def test_integral_identity_degenerate(a_star):
    assert integral_identity(UnitRight()) == 0.0
    assert integral_identity_check(UnitRight(), a_star) == pytest.approx(0.8313, abs=1e-4)
