"""Conformal factor of intrinsic rotational ZMC and CMC surfaces.

The metric factor solves ``rho rho'' - rho'^2 + eps b^2 e^{4au} = 0`` in the
ZMC case (normalized to ``b = 1`` by a homothety) and
``rho'' = (rho'^2 + eps (H^2 rho^4 - b^2 e^{4au})) / rho`` in general.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, FitError

RHO_FLOOR = 1e-10


@dataclass(frozen=True)
class RhoJet:
    """``rho`` and two derivatives; ``positive`` flags where ``rho > 0``."""

    rho: np.ndarray
    drho: np.ndarray
    ddrho: np.ndarray
    positive: np.ndarray


def rho_closed_form(a, A, B, epsilon, u) -> RhoJet:
    """``rho = e^{2au} (-eps A e^{Bu} + e^{-Bu} / A) / (2B)`` with exact derivatives.

    The sign is kept (not the absolute value); ``positive`` reports where the
    expression is positive.  For ``eps = -1`` it is positive everywhere when
    ``A B > 0``.
    """
    if A <= 0 or B == 0:
        raise ValueError("need A > 0 and B != 0")
    if epsilon not in (-1, 1):
        raise ValueError("epsilon must be +1 or -1")
    u = np.asarray(u, dtype=float)
    p, q = 2 * a + B, 2 * a - B
    c1, c2 = -epsilon * A / (2 * B), 1.0 / (2 * A * B)
    e1, e2 = np.exp(p * u), np.exp(q * u)
    rho = c1 * e1 + c2 * e2
    return RhoJet(rho, c1 * p * e1 + c2 * q * e2, c1 * p * p * e1 + c2 * q * q * e2, rho > 0)


def positivity_domain(a, A, B, epsilon) -> tuple:
    """Interval of ``u`` where the closed-form ``rho`` is positive."""
    if epsilon == -1:
        return (-math.inf, math.inf) if B > 0 else (math.inf, -math.inf)
    u0 = -math.log(A) / B
    return (-math.inf, u0) if B > 0 else (u0, math.inf)


def rho_ode_residual(rho, drho, ddrho, a, epsilon, u):
    """``rho rho'' - rho'^2 + eps e^{4au}``."""
    return np.asarray(rho) * ddrho - np.asarray(drho) ** 2 + epsilon * np.exp(4 * a * np.asarray(u, dtype=float))


@dataclass(frozen=True)
class ConformalFactor:
    """Closed-form conformal factor, optionally negated (``sign = -1``).

    The ODE is invariant under ``rho -> -rho``, so ``sign * rho_closed_form``
    covers the solutions whose closed form is negative where data are given.
    """

    a: float
    A: float
    B: float
    epsilon: int
    sign: int = 1

    def __call__(self, u) -> RhoJet:
        j = rho_closed_form(self.a, self.A, self.B, self.epsilon, u)
        s = self.sign
        return RhoJet(s * j.rho, s * j.drho, s * j.ddrho, s * j.rho > 0)

    def abs_rho(self, u):
        return np.abs(self(u).rho)


def fit_closed_form(a: float, epsilon: int, u0: float, rho0: float, drho0: float) -> ConformalFactor:
    """Invert the closed form: find ``(A, B, sign)`` with ``rho(u0) = rho0``, ``rho'(u0) = drho0``.

    Uses the first integral ``B^2 = (s'^2 - eps) / s^2`` of ``s = rho e^{-2au}``.

    Raises
    ------
    FitError
        When ``B^2 <= 0`` (no exponential solution through the data, e.g. the
        trigonometric solutions available for ``eps = 1``), or ``rho0 == 0``.
    """
    if rho0 == 0:
        raise FitError("rho0 must be nonzero")
    w = math.exp(-2 * a * u0)
    s = rho0 * w
    ds = (drho0 - 2 * a * rho0) * w
    B2 = (ds * ds - epsilon) / (s * s)
    if not B2 > 0:
        raise FitError(f"data admit no exponential closed form (B^2 = {B2:.6g} <= 0)")
    B = math.sqrt(B2)
    # s = c1 e^{Bu} + c2 e^{-Bu}; c1 = -eps A / (2B) * sign, c2 = sign / (2AB)
    c1 = 0.5 * (s + ds / B) * math.exp(-B * u0)
    c2 = 0.5 * (s - ds / B) * math.exp(B * u0)
    if c2 == 0:
        raise FitError("degenerate data: the decaying mode vanishes")
    sign = 1 if c2 > 0 else -1
    A = 1.0 / (2 * B * c2 * sign)
    check = -epsilon * A / (2 * B) * sign
    if not math.isclose(check, c1, rel_tol=1e-8, abs_tol=1e-14):
        raise FitError("data violate the first integral")
    return ConformalFactor(a, A, B, epsilon, sign)


@dataclass(frozen=True)
class CmcOdeProblem:
    """Initial value problem for the CMC conformal factor."""

    H: float
    a: float
    b: float
    epsilon: int
    u0: float
    rho0: float
    drho0: float
    u_end: float

    def __post_init__(self):
        if self.epsilon not in (-1, 1):
            raise ValueError("epsilon must be +1 or -1")
        if not self.rho0 > 0:
            raise ValueError("rho0 must be positive")

    def rhs(self, u, rho, drho):
        """``rho''`` prescribed by the ODE."""
        return (drho ** 2 + self.epsilon * (self.H ** 2 * rho ** 4 - self.b ** 2 * np.exp(4 * self.a * u))) / rho


@dataclass(frozen=True)
class CmcTrajectory:
    """Sampled solution; ``status`` is ``'completed'`` or ``'domain_exit'`` (``rho`` hit the floor)."""

    u: np.ndarray
    rho: np.ndarray
    drho: np.ndarray
    status: str
    exit_u: float | None
    problem: CmcOdeProblem
    dense: object

    def __call__(self, u):
        y = self.dense(np.asarray(u, dtype=float))
        return y[0], y[1]


def rho_cmc_integrate(problem: CmcOdeProblem, rtol: float = 1e-12, atol: float = 1e-14,
                      max_step: float = np.inf) -> CmcTrajectory:
    """Integrate the CMC conformal-factor ODE with an adaptive 8th-order Runge-Kutta scheme.

    Stops with ``status = 'domain_exit'`` if ``rho`` falls to ``1e-10``.

    Raises
    ------
    DomainError
        If the step size underflows before the interval end.
    """
    def f(u, y):
        return [y[1], problem.rhs(u, y[0], y[1])]

    def floor(u, y):
        return y[0] - RHO_FLOOR
    floor.terminal = True
    floor.direction = -1

    sol = solve_ivp(f, (problem.u0, problem.u_end), [problem.rho0, problem.drho0], method="DOP853",
                    rtol=rtol, atol=atol, max_step=max_step, dense_output=True, events=floor)
    if sol.status == -1:
        raise DomainError(f"integration failed: {sol.message}")
    if sol.status == 1:
        return CmcTrajectory(sol.t, sol.y[0], sol.y[1], "domain_exit", float(sol.t_events[0][0]), problem, sol.sol)
    return CmcTrajectory(sol.t, sol.y[0], sol.y[1], "completed", None, problem, sol.sol)


def difeq_residual(traj: CmcTrajectory, u, h: float = 1e-3):
    """Re-substitute a trajectory: ``rho'' - rhs(rho, rho')`` with ``rho''`` from the dense ``rho'``.

    ``rho''`` is a Richardson-extrapolated central difference of the
    interpolated derivative, so the check is independent of the stepper's
    internal stages.  Returned relative to ``1 + |rho''|``.
    """
    u = np.asarray(u, dtype=float)
    d = lambda s: (traj(u + s * h)[1] - traj(u - s * h)[1]) / (2 * s * h)
    dd = (4 * d(0.5) - d(1.0)) / 3
    rho, drho = traj(u)
    return (dd - traj.problem.rhs(u, rho, drho)) / (1 + np.abs(dd))


@dataclass(frozen=True)
class PrincipalCurvatures:
    lambda1: np.ndarray
    lambda2: np.ndarray
    umbilic: bool


def lambda1_formula(H, b, a, sigma, rho, u) -> PrincipalCurvatures:
    """``lambda1 = -sigma H + b e^{2au} / rho^2`` and ``lambda2 = -2 sigma H - lambda1``."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho == 0):
        raise DomainError("rho must be nonzero")
    l1 = -sigma * H + b * np.exp(2 * a * np.asarray(u, dtype=float)) / rho ** 2
    return PrincipalCurvatures(l1, -2 * sigma * H - l1, b == 0)
