"""Conformal factor: closed form, fitting, and the CMC initial value problem."""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zmc_minkowski.conformal import (CmcOdeProblem, difeq_residual, fit_closed_form, lambda1_formula,
                                     positivity_domain, rho_cmc_integrate, rho_closed_form, rho_ode_residual)
from zmc_minkowski.errors import DomainError, FitError

LN2 = math.log(2.0)


def test_closed_form_value():
    j = rho_closed_form(1.0, 1.0, 1.0, 1, -LN2)
    assert (float(j.rho), float(j.drho), float(j.ddrho)) == pytest.approx((3 / 16, 1 / 16, -5 / 16))
    assert bool(j.positive)


@pytest.mark.parametrize("u", [-1.0, 0.0, 0.7])
def test_timelike_flat_case_is_cosh(u):
    j = rho_closed_form(0.0, 1.0, 1.0, -1, u)
    assert float(j.rho) == pytest.approx(math.cosh(u))
    assert float(j.drho) == pytest.approx(math.sinh(u))


@pytest.mark.parametrize("rho,drho,ddrho,a,eps,u,expected", [
    (math.e, math.e, math.e, 0.0, 1, 1.0, 1.0),                  # rho = e^u
    (math.cosh(0.4), math.sinh(0.4), math.cosh(0.4), 0.0, -1, 0.4, 0.0),
    (1.0, 0.0, 0.0, 0.5, -1, LN2, -4.0),
])
def test_ode_residual_values(rho, drho, ddrho, a, eps, u, expected):
    assert rho_ode_residual(rho, drho, ddrho, a, eps, u) == pytest.approx(expected)


@given(a=st.floats(-2, 2), A=st.floats(0.1, 5), B=st.floats(0.2, 4), eps=st.sampled_from([1, -1]),
       u=st.floats(-1, 1))
@settings(max_examples=100)
def test_closed_form_solves_ode(a, A, B, eps, u):
    j = rho_closed_form(a, A, B, eps, u)
    scale = abs(j.rho * j.ddrho) + j.drho ** 2 + math.exp(4 * a * u)
    assert abs(rho_ode_residual(j.rho, j.drho, j.ddrho, a, eps, u)) <= 1e-12 * scale


@given(a=st.floats(-1, 1), A=st.floats(0.2, 5), B=st.floats(0.3, 3), u0=st.floats(-0.5, 0.5))
@settings(max_examples=60)
def test_fit_inverts_closed_form(a, A, B, u0):
    j = rho_closed_form(a, A, B, -1, u0)
    f = fit_closed_form(a, -1, u0, float(j.rho), float(j.drho))
    assert f.B == pytest.approx(B, rel=1e-7)
    assert f.A == pytest.approx(A, rel=1e-7)
    u = np.linspace(u0 - 0.5, u0 + 0.5, 5)
    np.testing.assert_allclose(f(u).rho, rho_closed_form(a, A, B, -1, u).rho, rtol=1e-8)


def test_fit_rejects_trigonometric_data():
    # eps = 1 with rho' = 2a rho: B^2 = -1 / s^2 < 0
    with pytest.raises(FitError):
        fit_closed_form(0.0, 1, 0.0, 1.0, 0.0)
    with pytest.raises(FitError):
        fit_closed_form(0.0, 1, 0.0, 0.0, 1.0)


def test_positivity_domain():
    assert positivity_domain(0.0, 1.0, 1.0, -1) == (-math.inf, math.inf)
    lo, hi = positivity_domain(1.0, math.e, 2.0, 1)
    assert (lo, hi) == (-math.inf, pytest.approx(-0.5))


def test_log_linear_solution_when_b_vanishes():
    prob = CmcOdeProblem(0.0, 0.7, 0.0, 1, 0.0, 1.0, 0.5, 1.0)
    traj = rho_cmc_integrate(prob)
    u = np.linspace(0, 1, 11)
    np.testing.assert_allclose(traj(u)[0], np.exp(0.5 * u), rtol=1e-10)


def test_minimal_integration_matches_cosh():
    prob = CmcOdeProblem(0.0, 0.0, 1.0, -1, 0.0, 1.0, 0.0, 1.0)
    traj = rho_cmc_integrate(prob)
    assert traj.status == "completed"
    u = np.linspace(0, 1, 11)
    np.testing.assert_allclose(traj(u)[0], np.cosh(u), rtol=1e-10)


def test_domain_exit_reported():
    # eps = 1, a = 0: rho = -sinh(u) reaches zero at u = 0
    prob = CmcOdeProblem(0.0, 0.0, 1.0, 1, -0.5, math.sinh(0.5), -math.cosh(0.5), 1.0)
    traj = rho_cmc_integrate(prob)
    assert traj.status == "domain_exit"
    assert traj.exit_u == pytest.approx(0.0, abs=1e-6)


@pytest.mark.parametrize("H,eps", [(1.0, 1), (1.0, -1), (0.5, 1)])
def test_cmc_residual(H, eps):
    traj = rho_cmc_integrate(CmcOdeProblem(H, 0.3, 1.0, eps, 0.0, 1.0, 0.2, 0.4))
    assert np.max(np.abs(difeq_residual(traj, np.linspace(0.05, 0.35, 7)))) <= 1e-7


def test_problem_validation():
    with pytest.raises(ValueError):
        CmcOdeProblem(0.0, 0.0, 1.0, 0, 0.0, 1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        CmcOdeProblem(0.0, 0.0, 1.0, 1, 0.0, -1.0, 0.0, 1.0)


def test_lambda1_value():
    pc = lambda1_formula(0.0, 1.0, 1.0, 1, 3 / 16, -LN2)
    assert float(pc.lambda1) == pytest.approx(64 / 9)
    assert float(pc.lambda2) == pytest.approx(-64 / 9)
    assert not pc.umbilic


def test_lambda1_umbilic_when_b_vanishes():
    pc = lambda1_formula(1.0, 0.0, 0.5, -1, 2.0, 0.3)
    assert pc.umbilic
    assert float(pc.lambda1) == float(pc.lambda2) == 1.0
    with pytest.raises(DomainError):
        lambda1_formula(1.0, 1.0, 0.0, 1, 0.0, 0.0)
