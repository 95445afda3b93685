import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monopole_bvp.errors import DomainViolation, NoConvergence
from monopole_bvp.integrator import State, integrate, rhs_forward
from monopole_bvp.picard import (CONTRACTION, OMEGA, SELF_MAP_BOUND, GridFunction, apply_T,
                                 contraction_ratio, cumulative_integral, derivative_of_T,
                                 extend_left, iteration_bound, random_field, sign_changes,
                                 solve_fixed_point, sup_distance)

from oracles import crossing

A = 0.1687122157693375
# frozen from tests/oracles.py: backward RK4 (h = 1e-4) from (0, 0, A)
Y_MINUS5 = 0.014818025323117089
FIRST_ZERO = -3.640482264886648
# quadrature slack on top of sqrt(3)/2 (ten cell errors of ~1e-12 on the unit ratio scale)
SLACK = 1e-4

SMALL = dict(horizon=30.0, n=3001)


def test_T_of_zero_closed_form():
    u = GridFunction(30.0, np.zeros(3001))
    t = u.t
    expected = -(2 / math.sqrt(3)) * A * np.sin(OMEGA * t)
    assert np.max(np.abs(apply_T(u, A).values - expected)) < 1e-15


def test_T_vanishes_at_origin():
    rng = np.random.default_rng(3)
    for _ in range(5):
        assert apply_T(random_field(rng, 30.0, 3001), A).values[0] == 0.0


def test_domain_violation():
    with pytest.raises(DomainViolation):
        apply_T(GridFunction(30.0, np.full(101, 0.6)), A)


def test_cumulative_integral_order():
    errs = []
    for n in (101, 201, 401):
        t = np.linspace(0, 3, n)
        errs.append(np.max(np.abs(cumulative_integral(np.cos(t), t[1]) - np.sin(t))))
    assert errs[0] / errs[1] > 12 and errs[1] / errs[2] > 12
    assert errs[-1] < 1e-9


@settings(max_examples=10)
@given(st.integers(0, 2 ** 32 - 1))
def test_contraction_and_self_map(seed):
    rng = np.random.default_rng(seed)
    u1 = random_field(rng, **SMALL)
    u2 = random_field(rng, **SMALL)
    assert contraction_ratio(u1, u2, A) <= CONTRACTION + SLACK
    assert np.max(np.abs(apply_T(u1, A).values)) <= SELF_MAP_BOUND


def test_contraction_fifty_pairs():
    rng = np.random.default_rng(0)
    for _ in range(50):
        u1, u2 = random_field(rng), random_field(rng)
        assert contraction_ratio(u1, u2, A) <= CONTRACTION + SLACK
        assert np.max(np.abs(apply_T(u1, A).values)) <= SELF_MAP_BOUND


def test_sup_distance_needs_same_grid():
    with pytest.raises(ValueError):
        sup_distance(GridFunction(30.0, np.zeros(11)), GridFunction(30.0, np.zeros(12)))


@pytest.fixture(scope="module")
def solved():
    return solve_fixed_point(A)


def test_fixed_point_residual(solved):
    u, rep = solved
    assert rep.final_residual <= 1e-11
    assert sup_distance(apply_T(u, A), u) <= 1e-11
    assert rep.contraction_estimate <= CONTRACTION + SLACK
    assert u.values[0] == 0.0 and u.in_X()


def test_iteration_count_bound(solved):
    _, rep = solved
    zero = GridFunction(30.0, np.zeros(30001))
    first = sup_distance(apply_T(zero, A), zero)
    assert rep.iterations <= iteration_bound(first, 1e-11)


def test_iteration_cap():
    with pytest.raises(NoConvergence):
        solve_fixed_point(A, 30.0, 3001, 1e-11, max_iter=3)


def test_bad_slope_rejected():
    with pytest.raises(ValueError):
        solve_fixed_point(0.3)


def test_small_t_slope(solved):
    u, _ = solved
    t = u.t[1:50]
    assert np.max(np.abs(u.values[1:50] / t + A)) < 0.1 * t[-1] + 1e-8
    assert derivative_of_T(u, A)[0] == pytest.approx(-A, abs=1e-15)


def test_against_backward_oracle(solved):
    left = extend_left(solved[0], A)
    assert float(left(-5.0)) == pytest.approx(Y_MINUS5, abs=1e-8)


def test_cross_validation_with_integrator(solved):
    left = extend_left(solved[0], A)
    traj = integrate(rhs_forward, State(0.0, 0.0, A), -10.0)
    xs = np.linspace(-10.0, 0.0, 10001)
    assert np.max(np.abs(left(xs) - traj.sample(xs)[0])) <= 1e-8


def test_left_branch_bounds(solved):
    left = extend_left(solved[0], A)
    xs = np.linspace(-30.0, 0.0, 30001)
    y = left(xs)
    assert float(left(0.0)) == 0.0
    assert np.all(np.abs(y) <= 0.5 * np.exp(xs / 2))


def test_first_zero(solved):
    left = extend_left(solved[0], A)
    assert abs(float(left(-3.64))) < 1e-3
    xs = np.linspace(-5.0, -1.0, 40001)
    assert crossing(xs, left(xs)) == pytest.approx(FIRST_ZERO, abs=1e-6)


def test_oscillation(solved):
    u, _ = solved
    assert sign_changes(u.values[1:]) >= math.floor(math.sqrt(3) * 30.0 / (2 * math.pi)) - 1


def test_left_branch_domain(solved):
    left = extend_left(solved[0], A)
    with pytest.raises(ValueError):
        left(0.5)
