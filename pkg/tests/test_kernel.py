"""Geometric kernel: jets, fundamental forms, shape operator, twist and compatibility."""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zmc_minkowski.catalog import named_surface
from zmc_minkowski.errors import DegenerateError, DomainError, JetMismatchError
from zmc_minkowski.kernel import (Jet, ShapeOperator, SurfacePatch, compatibility_residuals, curvature_summary, extract_twist,
                                  fd_derivative, fd_jet, first_form, jet, levi_civita_coeffs, self_adjointness_defect,
                                  shape_operator, skew_curvature, unit_normal)
from zmc_minkowski.minkowski import MetricSignature, RotationKind, lorentz_dot

LN2 = math.log(2.0)
SPACELIKE = MetricSignature.spacelike()


def _pseudosphere(u, v):
    return np.stack([np.sinh(u) * np.cos(v), np.sinh(u) * np.sin(v), np.cosh(u)], -1)


def test_spacelike_enneper_point():
    s = named_surface("enneper_spacelike")
    J = s.jet(LN2, 0.0)
    np.testing.assert_allclose(J.X, [14 / 3, 0, -4], atol=1e-14)
    I = first_form(J, s.signature)
    assert (I.E, I.F, I.G) == pytest.approx((36.0, 0.0, 36.0), abs=1e-12)
    N = unit_normal(J, s.signature)
    np.testing.assert_allclose(N, [4 / 3, 0, -5 / 3], atol=1e-14)
    assert lorentz_dot(N, N) == pytest.approx(-1.0)


@pytest.mark.parametrize("v", [0.0, 0.3, 0.7, -1.2])
def test_spacelike_enneper_shape_operator(v):
    s = named_surface("enneper_spacelike")
    A = shape_operator(s.jet(LN2, v), s.signature).matrix()
    lam = 2.0 / 9.0
    np.testing.assert_allclose(A, lam * np.array([[math.cos(2 * v), -math.sin(2 * v)],
                                                  [-math.sin(2 * v), -math.cos(2 * v)]]), atol=1e-14)


def test_spacelike_enneper_curvatures():
    s = named_surface("enneper_spacelike")
    c = curvature_summary(shape_operator(s.jet(LN2, 0.0), s.signature), s.signature)
    assert abs(c.H) <= 1e-15
    assert c.K == pytest.approx((2 / 9) ** 2)
    assert skew_curvature(c.H, c.K, 1) == pytest.approx(2 / 9)
    assert bool(c.diagonalizable) and not bool(c.umbilic)


def test_timelike_enneper_point():
    s = named_surface("enneper_timelike")
    J = s.jet(0.0, 0.0)
    np.testing.assert_allclose(J.X, [1, 2 / 3, 0], atol=1e-15)
    I = first_form(J, s.signature)
    assert (I.E, I.F, I.G) == pytest.approx((4.0, 0.0, -4.0))
    np.testing.assert_allclose(unit_normal(J, s.signature), [0, -1, 0], atol=1e-15)


def test_plane():
    p = SurfacePatch(lambda u, v: Jet(np.stack([u, v, 0 * u], -1), *(np.broadcast_to(c, u.shape + (3,)) for c in
                                      ([1.0, 0, 0], [0, 1.0, 0], [0, 0, 0.0], [0, 0, 0.0], [0, 0, 0.0]))), SPACELIKE)
    J = p.jet(np.array([0.5]), np.array([-0.2]))
    I = first_form(J)
    assert (float(I.E[0]), float(I.F[0]), float(I.G[0])) == (1.0, 0.0, 1.0)
    np.testing.assert_array_equal(shape_operator(J, SPACELIKE).matrix(), np.zeros((1, 2, 2)))


def _pseudosphere_jet(u, v):
    u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
    sh, ch, c, s = np.sinh(u), np.cosh(u), np.cos(v), np.sin(v)
    z = np.zeros_like(u)
    return Jet(np.stack([sh * c, sh * s, ch], -1), np.stack([ch * c, ch * s, sh], -1),
               np.stack([-sh * s, sh * c, z], -1), np.stack([sh * c, sh * s, ch], -1),
               np.stack([-ch * s, ch * c, z], -1), np.stack([-sh * c, -sh * s, z], -1))


def test_pseudosphere_is_umbilic():
    p = SurfacePatch(_pseudosphere_jet, SPACELIKE)
    J = p.jet(np.array([0.4, 0.9]), np.array([0.1, 2.0]))
    A = shape_operator(J, SPACELIKE)
    c = curvature_summary(A, SPACELIKE)
    assert np.all(c.umbilic)
    np.testing.assert_allclose(c.K, -1.0, rtol=1e-13)
    np.testing.assert_allclose(np.abs(c.H), 1.0, rtol=1e-13)


def test_identity_shape_operator():
    c = curvature_summary(ShapeOperator(1.0, 0.0, 0.0, 1.0), SPACELIKE)
    assert (c.H, c.K) == (-1.0, -1.0)
    assert bool(c.umbilic)


def test_degenerate_metric_raises():
    null = SurfacePatch(lambda u, v: fd_jet(lambda a, b: np.stack([a, b, b], -1), u, v))
    with pytest.raises(DegenerateError):
        first_form(null.jet(0.0, 0.0))


def test_degeneracy_line_and_bounds():
    s = named_surface("enneper_spacelike")
    with pytest.raises(DomainError):
        s.jet(0.0, 0.3)
    p = SurfacePatch(lambda u, v: fd_jet(_pseudosphere, u, v), SPACELIKE, u_bounds=(0.1, 1.0))
    with pytest.raises(DomainError):
        p.jet(2.0, 0.0)


def test_jet_validation_catches_wrong_derivatives():
    def bad(u, v):
        J = fd_jet(_pseudosphere, u, v)
        return Jet(J.X, 2 * J.Xu, J.Xv, J.Xuu, J.Xuv, J.Xvv)
    jet(SurfacePatch(lambda u, v: fd_jet(_pseudosphere, u, v)), 0.5, 0.5, validate=True)
    with pytest.raises(JetMismatchError):
        jet(SurfacePatch(bad), 0.5, 0.5, validate=True)


@given(st.floats(0.05, 0.5), st.floats(-2, 2))
@settings(max_examples=30, deadline=None)
def test_shape_operator_self_adjoint(u, v):
    s = named_surface("enneper_timelike")
    J = s.jet(u, v)
    A = shape_operator(J, s.signature)
    assert np.max(np.abs(self_adjointness_defect(J, A))) <= 1e-10 * (1 + np.max(np.abs(A.matrix())))


@pytest.mark.parametrize("f,df,x", [(np.sin, np.cos, 0.3), (np.exp, np.exp, 1.2)])
def test_fd_derivative(f, df, x):
    assert fd_derivative(f, np.array([x]))[0] == pytest.approx(df(x), rel=1e-9)


@pytest.mark.parametrize("kind", ["spacelike", "timelike_I", "timelike_II"])
def test_levi_civita(kind):
    sig = MetricSignature.from_kind(kind)
    a, b, c, d = levi_civita_coeffs(np.array([2.0]), np.array([4.0]), sig)
    assert (a[0], b[0], c[0], d[0]) == (0.0, 0.0, 1.0, -sig.sigma * 1.0)
    with pytest.raises(DegenerateError):
        levi_civita_coeffs(0.0, 1.0, sig)


@pytest.mark.parametrize("ident,kind,slope", [("enneper_spacelike", RotationKind.EUCLIDEAN, 1.0),
                                              ("enneper_timelike", RotationKind.HYPERBOLIC, 1.0)])
def test_twist_extraction(ident, kind, slope):
    s = named_surface(ident)
    rep = extract_twist(s.patch, 0.3, np.linspace(-0.5, 0.5, 21))
    assert rep.rotation_kind is kind
    assert rep.slope_a == pytest.approx(slope, abs=1e-10)
    assert rep.structure_residual <= 1e-10
    assert abs(rep.lambda1 + rep.lambda2) <= 1e-10


def _enneper_data(scale=1.0):
    lam = lambda u: 2.0 / (1.0 - np.exp(2 * u)) ** 2
    rho = lambda u: np.exp(u) * (np.exp(2 * u) - 1)
    return (lambda u: scale * lam(u)), (lambda u: -lam(u)), rho


def test_compatibility_on_enneper_data():
    l1, l2, rho = _enneper_data()
    u, v = np.linspace(0.2, 0.6, 11), np.linspace(-1, 1, 11)
    r = compatibility_residuals(l1, l2, rho, lambda v: v, SPACELIKE, RotationKind.EUCLIDEAN, u, v)
    assert r.system == "spacelike-euclidean"
    assert r.rel_gauss <= 1e-7
    assert r.rel_codazzi <= 1e-7
    assert r.rel_codazzi_raw <= 1e-7


def test_perturbed_curvature_breaks_gauss():
    l1, l2, rho = _enneper_data(scale=1.1)
    u, v = np.linspace(0.2, 0.6, 11), np.linspace(-1, 1, 11)
    r = compatibility_residuals(l1, l2, rho, lambda v: v, SPACELIKE, RotationKind.EUCLIDEAN, u, v)
    assert r.rel_gauss > 0.01
    assert r.max_codazzi > 0.01
