"""Björling frames, base curves, the strip integral and the associate family."""
from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zmc_minkowski.bjorling import (BjorlingData, UntwistedParams, associate_deform, base_curve, bjorling_position,
                                    bjorling_solve, conjugated_weingarten, frame_closed_form, frame_integrate,
                                    path_independence_defect)
from zmc_minkowski.catalog import FamilyParams, named_surface
from zmc_minkowski.conformal import rho_closed_form
from zmc_minkowski.errors import DomainError
from zmc_minkowski.kernel import fd_derivative
from zmc_minkowski.minkowski import RotationKind, rotation

LN2 = math.log(2.0)


def test_spacelike_frame_value():
    f = frame_closed_form(UntwistedParams("spacelike", 1.0, 1.0), -LN2)
    np.testing.assert_allclose(f.E1, [5 / 3, 0, 4 / 3], atol=1e-15)
    np.testing.assert_allclose(f.E2, [0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(f.E3, [-4 / 3, 0, -5 / 3], atol=1e-15)
    assert f.gram_defect() <= 1e-14
    assert f.cross_defect() <= 1e-14


def test_timelike_frame_value():
    f = frame_closed_form(UntwistedParams("timelike_I", 1.0, 1.0), 0.0)
    np.testing.assert_allclose(f.E1, [1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(f.E2, [0, 0, 1], atol=1e-15)
    np.testing.assert_allclose(f.E3, [0, -1, 0], atol=1e-15)


@pytest.mark.parametrize("kind", ["spacelike", "timelike_I", "timelike_II"])
@given(u=st.floats(-1.5, 1.5).filter(lambda x: abs(x) > 0.05))
@settings(max_examples=25, deadline=None)
def test_frame_is_orthonormal(kind, u):
    f = frame_closed_form(UntwistedParams(kind, 1.0, 2.0), u)
    scale = 1 + np.max(np.abs(f.E1)) ** 2
    assert f.gram_defect() <= 1e-13 * scale


def test_frame_degeneracy():
    p = UntwistedParams("spacelike", 1.0, 1.0)
    with pytest.raises(DomainError):
        frame_closed_form(p, 0.0)
    with pytest.raises(DomainError):
        frame_integrate(p, (-1.0, 1.0))


def test_frame_integration_short_range():
    p = FamilyParams("timelike_II", 1.0, 2.0, 3.0)
    traj = frame_integrate(p, (0.0, 1.0), u0=0.5)
    u = np.linspace(0, 1, 11)
    f, g = traj(u), frame_closed_form(p, u)
    np.testing.assert_allclose(f.E1, g.E1, atol=1e-9)
    np.testing.assert_allclose(f.E3, g.E3, atol=1e-9)
    with pytest.raises(DomainError):
        traj(np.array([1.5]))


def test_timelike_base_curve_value():
    c = base_curve(FamilyParams("timelike_I", 1.0, 1.0, 3.0), 0.0).c
    np.testing.assert_allclose(c, [1 / 6, -1 / 5, 0], atol=1e-15)


@pytest.mark.parametrize("p", [FamilyParams("spacelike", 1.0, 1.0, 3.0), FamilyParams("spacelike", 0.5, 2.0, 1.0),
                               FamilyParams("timelike_I", 1.0, 0.5, -2.0), FamilyParams("timelike_II", 2.0, 1.0, 1.0),
                               UntwistedParams("timelike_II", 2.0, 1.0)], ids=str)
def test_base_curve_tangent(p):
    u = np.linspace(0.3, 0.6, 7)
    j = base_curve(p, u)
    rho = rho_closed_form(p.a, p.A, p.B, p.signature.epsilon, u).rho
    np.testing.assert_allclose(j.dc, rho[:, None] * frame_closed_form(p, u).E1, rtol=1e-12, atol=1e-12)
    fd = lambda field: np.stack([fd_derivative(lambda x: getattr(base_curve(p, x), field)[:, k], u)
                                 for k in range(3)], -1)
    np.testing.assert_allclose(j.dc, fd("c"), rtol=1e-8, atol=1e-9)
    np.testing.assert_allclose(j.ddc, fd("dc"), rtol=1e-8, atol=1e-9)


@pytest.mark.parametrize("p", [FamilyParams("spacelike", 1.0, 1.0, 3.0), FamilyParams("timelike_I", 1.0, 1.0, 3.0)],
                         ids=str)
def test_strip_data_and_axis(p):
    data = BjorlingData.from_params(p)
    u = np.linspace(0.2, 0.5, 5)
    chk = data.check(u)
    assert chk["normalization"] <= 1e-12
    assert chk["orthogonality"] <= 1e-12
    np.testing.assert_allclose(bjorling_position(data, u, np.zeros_like(u)), base_curve(p, u).c, atol=1e-14)
    assert path_independence_defect(data, u, np.full_like(u, 0.4), 0.3) <= 1e-10
    assert bjorling_solve(data, u, [-0.1, 0.1]).shape == (5, 2, 3)


def test_untwisted_spacelike_is_mirrored_elliptic_catenoid():
    data = BjorlingData.untwisted("spacelike", 1.0, 1.0)
    cat = named_surface("elliptic_catenoid")
    U, V = np.meshgrid(np.linspace(0.2, 0.6, 4), np.linspace(-0.5, 0.5, 4), indexing="ij")
    np.testing.assert_allclose(bjorling_position(data, U, V), cat.position(U, -V), atol=1e-10)


def test_descriptor_round_trip():
    data = BjorlingData.from_params(FamilyParams("timelike_II", 1.0, 2.0, 3.0))
    again = BjorlingData.from_descriptor(data.to_json())
    assert json.loads(again.to_json()) == json.loads(data.to_json())
    assert BjorlingData.from_descriptor({"type": "untwisted", "kind": "spacelike"}).descriptor["B"] == 1.0
    with pytest.raises(ValueError):
        BjorlingData.from_descriptor({"type": "helix"})


@pytest.mark.parametrize("ident", ["enneper_spacelike", "enneper_timelike"])
def test_associate_zero_angle_is_identity(ident):
    s = named_surface(ident)
    P = associate_deform(s, 0.0, u0=0.3)
    U, V = np.meshgrid(np.linspace(0.2, 0.5, 4), np.linspace(-0.4, 0.4, 4), indexing="ij")
    np.testing.assert_allclose(P.position(U, V), s.position(U, V), atol=1e-12)


@pytest.mark.parametrize("kind", [RotationKind.EUCLIDEAN, RotationKind.HYPERBOLIC])
def test_conjugated_weingarten(kind):
    A = np.array([[0.3, 1.2], [-0.7, 2.0]])
    np.testing.assert_allclose(conjugated_weingarten(A, 0.0, kind), A)
    R = rotation(kind, 0.4).matrix
    np.testing.assert_allclose(conjugated_weingarten(A, 0.4, kind), R @ A @ np.linalg.inv(R), atol=1e-14)
