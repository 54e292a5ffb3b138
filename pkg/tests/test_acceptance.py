"""Acceptance criteria, each test tagged with ``criterion(n)``.

Grids: ``u, v`` in ``[-L, L]`` with ``L = 2 / (2|a| + |B|)`` (families) or
``2 / rate`` (named surfaces), 41 x 41 nodes, minus the nodes within
``0.1 L`` of a degeneracy line (see ``helpers.py``).
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from helpers import (acceptance_points, all_surfaces, family_grid, family_id, half_width, surface_id,
                     twist_lines)
from zmc_minkowski.bjorling import (BjorlingData, associate_deform, base_curve, bjorling_position,
                                    conjugated_weingarten, frame_closed_form, frame_integrate)
from zmc_minkowski.catalog import catenoid_symmetry_residual, named_surface, theorem_surface
from zmc_minkowski.conformal import (CmcOdeProblem, difeq_residual, rho_cmc_integrate, rho_closed_form,
                                     rho_ode_residual)
from zmc_minkowski.hypernumber import HyperNumber
from zmc_minkowski.kernel import (compatibility_residuals, curvature_summary, extract_twist, first_form,
                                  intrinsic_profile, shape_operator)
from zmc_minkowski.minkowski import MetricSignature, RotationKind
from zmc_minkowski.weierstrass import (IntegerFamily, end_classification, integrate_phi, log_chart_phi,
                                       loop_period, reconstruct_family, residue_period_report)

SURFACES = all_surfaces()
SURFACE_IDS = [surface_id(s) for s in SURFACES]
FAMILIES = family_grid()
FAMILY_IDS = [family_id(p) for p in FAMILIES]


def _u_axis(s, n=41):
    L = half_width(s)
    ax = np.linspace(-L, L, n)
    keep = np.ones(ax.shape, dtype=bool)
    for d in s.degenerate_u:
        keep &= np.abs(ax - d) >= 0.1 * L
    return ax[keep]


# ------------------------------------------------------------------ 1-3

@pytest.mark.criterion(1)
@pytest.mark.parametrize("s", SURFACES, ids=SURFACE_IDS)
def test_zero_mean_curvature(s):
    u, v = acceptance_points(s)
    H = curvature_summary(shape_operator(s.jet(u, v), s.signature), s.signature).H
    assert np.max(np.abs(H)) <= 1e-8


@pytest.mark.criterion(2)
@pytest.mark.parametrize("s", SURFACES, ids=SURFACE_IDS)
def test_stated_first_form(s):
    u, v = acceptance_points(s)
    I = first_form(s.jet(u, v), s.signature)
    E0, G0 = s.stated_first_form(u)
    assert np.max(np.abs(I.E - E0) / np.abs(E0)) <= 1e-10
    assert np.max(np.abs(I.G - G0) / np.abs(G0)) <= 1e-10
    assert np.max(np.abs(I.F)) <= 1e-10


@pytest.mark.criterion(3)
@pytest.mark.parametrize("s", SURFACES, ids=SURFACE_IDS)
def test_twist_linear(s):
    L = half_width(s)
    v = np.linspace(-L, L, 41)
    for u0 in twist_lines(s):
        rep = extract_twist(s.patch, u0, v)
        assert abs(rep.slope_a - s.twist_slope) <= 1e-8
        if s.params is not None:
            assert rep.structure_residual <= 1e-8
            assert rep.fit_residual <= 1e-8


# ------------------------------------------------------------------ 4

@pytest.mark.criterion(4)
@pytest.mark.parametrize("s", SURFACES, ids=SURFACE_IDS)
def test_gauss_codazzi_measured(s):
    # every input, including rho'' and lambda_i', comes from finite differences of measured data
    L = half_width(s)
    v = np.linspace(-L, L, 41)
    rep = extract_twist(s.patch, twist_lines(s)[1], v)
    prof = intrinsic_profile(s.patch, rep)
    r = compatibility_residuals(prof.lambda1, prof.lambda2, prof.rho, prof.alpha, s.signature, prof.kind,
                                _u_axis(s), v)
    assert r.rel_gauss <= 1e-6
    assert r.rel_codazzi <= 1e-6
    assert r.rel_codazzi_raw <= 1e-6


# ------------------------------------------------------------------ 5

@pytest.mark.criterion(5)
@pytest.mark.parametrize("p", FAMILIES, ids=FAMILY_IDS)
def test_closed_form_satisfies_ode(p):
    u = _u_axis(theorem_surface(p), 201)
    j = rho_closed_form(p.a, p.A, p.B, p.epsilon, u)
    res = rho_ode_residual(j.rho, j.drho, j.ddrho, p.a, p.epsilon, u)
    scale = np.abs(j.rho * j.ddrho) + j.drho ** 2 + np.exp(4 * p.a * u)
    assert np.max(np.abs(res) / scale) <= 1e-10


def _unit_interval(p):
    """A unit interval on which the closed-form ``rho`` keeps its sign."""
    d = max(p.degenerate_u, default=None)
    return (0.0, 1.0) if d is None or d < -0.05 else (d + 0.05, d + 1.05)


@pytest.mark.criterion(5)
@pytest.mark.parametrize("p", FAMILIES, ids=FAMILY_IDS)
def test_minimal_integration_matches_closed_form(p):
    lo, hi = _unit_interval(p)
    j0 = rho_closed_form(p.a, p.A, p.B, p.epsilon, lo)
    s = math.copysign(1.0, float(j0.rho))
    prob = CmcOdeProblem(0.0, p.a, 1.0, p.epsilon, lo, s * float(j0.rho), s * float(j0.drho), hi)
    traj = rho_cmc_integrate(prob)
    assert traj.status == "completed"
    u = np.linspace(lo, hi, 101)
    exact = s * rho_closed_form(p.a, p.A, p.B, p.epsilon, u).rho
    rho, _ = traj(u)
    assert np.max(np.abs(rho - exact) / np.abs(exact)) <= 1e-6


@pytest.mark.criterion(5)
@pytest.mark.parametrize("a", [0.0, 0.5, 1.0])
@pytest.mark.parametrize("b", [0.0, 1.0])
@pytest.mark.parametrize("eps", [1, -1])
def test_cmc_difeq_residual(a, b, eps):
    prob = CmcOdeProblem(1.0, a, b, eps, 0.0, 1.0, 0.0, 0.5)
    traj = rho_cmc_integrate(prob)
    hi = traj.exit_u if traj.status == "domain_exit" else 0.5
    u = np.linspace(0.01, hi - 0.01, 50)
    assert np.max(np.abs(difeq_residual(traj, u))) <= 1e-7


# ------------------------------------------------------------------ 6

def _frame_pieces(p, margin=0.05):
    pieces = [(-2.0, 2.0)]
    for d in p.degenerate_u:
        out = []
        for lo, hi in pieces:
            if lo < d < hi:
                out += [(lo, d - margin), (d + margin, hi)]
            else:
                out.append((lo, hi))
        pieces = out
    return [(lo, hi) for lo, hi in pieces if hi - lo > 0.1]


@pytest.mark.criterion(6)
@pytest.mark.parametrize("p", FAMILIES, ids=FAMILY_IDS)
def test_frame_integration(p):
    for lo, hi in _frame_pieces(p):
        traj = frame_integrate(p, (lo, hi))
        u = np.linspace(lo, hi, 201)
        f, g = traj(u), frame_closed_form(p, u)
        scale = 1.0 + max(np.max(np.abs(g.E1)), np.max(np.abs(g.E3)))
        assert max(np.max(np.abs(f.E1 - g.E1)), np.max(np.abs(f.E3 - g.E3))) / scale <= 1e-8
        assert f.gram_defect() / scale ** 2 <= 1e-8
        assert np.max(np.abs(f.E2 - f.E2[0])) <= 1e-12


# ------------------------------------------------------------------ 7

@pytest.mark.criterion(7)
@pytest.mark.parametrize("p", FAMILIES, ids=FAMILY_IDS)
def test_bjorling_reconstruction(p):
    s = theorem_surface(p)
    data = BjorlingData.from_params(p)
    u = _u_axis(s, 21)
    U, V = np.meshgrid(u, np.linspace(-0.5, 0.5, 11), indexing="ij")
    X, Y = bjorling_position(data, U, V), s.position(U, V)
    assert np.max(np.abs(X - Y)) / (1.0 + np.max(np.abs(Y))) <= 1e-6
    c = base_curve(p, u).c
    X0 = bjorling_position(data, u, np.zeros_like(u))
    assert np.max(np.abs(X0 - c)) / (1.0 + np.max(np.abs(c))) <= 1e-12


# ------------------------------------------------------------------ 8

def _up_to_translation(X, Y):
    D = (X - Y).reshape(-1, 3)
    return float(np.max(np.abs(D - D[0])) / (1.0 + np.max(np.abs(Y))))


@pytest.mark.criterion(8)
@pytest.mark.parametrize("p", FAMILIES, ids=FAMILY_IDS)
def test_weierstrass_round_trip(p):
    s = theorem_surface(p)
    u, v = acceptance_points(s)
    assert _up_to_translation(reconstruct_family(p, u, v), s.position(u, v)) <= 1e-6


def _integer_positions(label, U, V, base=0.4):
    fam = IntegerFamily.parse(label)
    phi = log_chart_phi(fam)
    return integrate_phi(phi, U, V, HyperNumber(base, 0.0, phi.unit_square))


@pytest.mark.criterion(8)
def test_et_1_2_is_scaled_reflected_timelike_enneper():
    U, V = np.meshgrid(np.linspace(0.2, 0.6, 7), np.linspace(-0.5, 0.5, 7), indexing="ij")
    ent = named_surface("enneper_timelike").position(U, V)
    assert _up_to_translation(_integer_positions("et:1,2", U, V), 0.5 * ent * np.array([1, 1, -1])) <= 1e-6


@pytest.mark.criterion(8)
def test_et_1_0_is_timelike_catenoid():
    U, V = np.meshgrid(np.linspace(0.2, 0.6, 7), np.linspace(-0.5, 0.5, 7), indexing="ij")
    cat = named_surface("timelike_catenoid").position(U, V)
    assert _up_to_translation(_integer_positions("et:1,0", U, V), cat) <= 1e-6


# ------------------------------------------------------------------ 9

@pytest.mark.criterion(9)
@pytest.mark.parametrize("label", ["es:2,-1", "et:2,1"])
def test_ends_planar_and_enneper(label):
    zero, inf = end_classification(IntegerFamily.parse(label))
    assert (zero.k, zero.classification) == (2, "planar")
    assert (inf.k, inf.classification) == (4, "enneper")
    if label == "es:2,-1":
        assert zero.orders == (2, 2, 0)
        assert inf.orders == (4, 4, 2)


@pytest.mark.criterion(9)
def test_es_2_2_period():
    fam = IntegerFamily.parse("es:2,2")
    rep = residue_period_report(fam)
    assert rep.real_period_over_pi == (0, 1, 0)
    loop = loop_period(fam.phi())
    assert np.max(np.abs(loop - np.array([0.0, math.pi, 0.0]))) <= 1e-8


# ------------------------------------------------------------------ 10

ASSOCIATE_TARGETS = ["enneper_spacelike", "enneper_timelike"]
THETAS = [0.3, 1.0]


def _associate(ident, theta):
    s = named_surface(ident)
    L = half_width(s)
    U, V = np.meshgrid(np.linspace(0.3 * L, L, 9), np.linspace(-L, L, 9), indexing="ij")
    kind = RotationKind.EUCLIDEAN if s.signature.is_spacelike else RotationKind.HYPERBOLIC
    J0 = s.jet(U, V)
    P = associate_deform(s, theta, u0=0.5 * L)
    J = P.jet(U, V)
    return (shape_operator(J0, s.signature).matrix(), shape_operator(J, s.signature).matrix(),
            first_form(J0, s.signature), first_form(J, s.signature), kind)


@pytest.mark.criterion(10)
@pytest.mark.parametrize("theta", THETAS)
@pytest.mark.parametrize("ident", ASSOCIATE_TARGETS)
def test_associate_weingarten_full_angle(ident, theta):
    # literal conjugation by the full deformation angle
    A0, A, _, _, kind = _associate(ident, theta)
    err = float(np.max(np.abs(A - conjugated_weingarten(A0, theta, kind))) / np.max(np.abs(A0)))
    assert err <= 1e-6, f"relative Weingarten mismatch {err:.3g}"


@pytest.mark.criterion(10)
@pytest.mark.parametrize("theta", THETAS)
@pytest.mark.parametrize("ident", ASSOCIATE_TARGETS)
def test_associate_isometric(ident, theta):
    _, _, I0, I, _ = _associate(ident, theta)
    scale = np.max(np.abs(I0.E))
    assert np.max(np.abs(I.E - I0.E)) / scale <= 1e-8
    assert np.max(np.abs(I.G - I0.G)) / scale <= 1e-8
    assert np.max(np.abs(I.F)) / scale <= 1e-8


@pytest.mark.parametrize("theta", THETAS)
@pytest.mark.parametrize("ident", ASSOCIATE_TARGETS)
def test_associate_weingarten_half_angle(ident, theta):
    A0, A, _, _, kind = _associate(ident, theta)
    err = float(np.max(np.abs(A - conjugated_weingarten(A0, -theta / 2, kind))) / np.max(np.abs(A0)))
    assert err <= 1e-6, f"relative Weingarten mismatch {err:.3g}"


# ------------------------------------------------------------------ 11

@pytest.mark.criterion(11)
@pytest.mark.parametrize("theta", [0.1, 0.7, 1.5])
@pytest.mark.parametrize("ident,AB", [("elliptic_catenoid", (1.0, 1.0)), ("elliptic_catenoid", (2.0, 0.5)),
                                      ("timelike_catenoid", (1.0, 1.0)), ("timelike_catenoid", (0.5, 2.0))])
def test_catenoid_symmetry(ident, AB, theta):
    s = named_surface(ident, A=AB[0], B=AB[1])
    U, V = np.meshgrid(np.linspace(-1, 1, 21), np.linspace(-1, 1, 21), indexing="ij")
    assert catenoid_symmetry_residual(s, theta, U, V) <= 1e-10


# ------------------------------------------------------------------ 12

@pytest.mark.criterion(12)
def test_quadratic_twist_breaks_codazzi():
    sig = MetricSignature(1, 1)
    lam = lambda u: 2.0 / (1.0 - np.exp(2 * u)) ** 2
    rho = lambda u: np.abs(np.exp(u) * (np.exp(2 * u) - 1))
    u, v = np.linspace(0.2, 0.6, 21), np.linspace(-1.0, 1.0, 21)
    r = compatibility_residuals(lam, lambda u: -lam(u), rho, lambda v: v ** 2, sig, RotationKind.EUCLIDEAN, u, v)
    assert r.max_codazzi >= 1e-2
    linear = compatibility_residuals(lam, lambda u: -lam(u), rho, lambda v: v, sig, RotationKind.EUCLIDEAN, u, v)
    assert linear.rel_codazzi <= 1e-6
