"""Frames along the base curve, Björling reconstruction and the associate family.

Along ``v = 0`` a twisted ZMC surface carries an orthonormal frame
``{E1, E2, E3}`` with ``E1 = c'/rho``, ``E2`` constant and ``E3`` the unit
normal.  The frame obeys a linear ODE whose coefficient ``h = e^{2au}/rho``
depends only on ``A`` and ``B``.  All closed forms here are rational in
``P = A e^{Bu}`` or are sums of exponentials and a linear term, so they
continue exactly to complex and paracomplex arguments through
:func:`~zmc_minkowski.hypernumber.hyper_exp`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .catalog import KINDS, FamilyParams, NamedSurface
from .errors import DomainError, StructureError
from .hypernumber import COMPLEX, PARACOMPLEX, HyperNumber, hcross, hdot, hvec, hyper_exp
from .kernel import Jet, SurfacePatch
from .minkowski import MetricSignature, RotationKind, lorentz_cross, lorentz_dot, rotation
from .quadrature import real_line_integral, segment_integral
from .terms import jet_from_terms

# (s1, s3) in E1' = s1 h E3, E3' = s3 h E1
_FRAME_SIGNS = {"spacelike": (-1.0, -1.0), "timelike_I": (1.0, -1.0), "timelike_II": (1.0, 1.0)}
# E3 x E1 = k E2 for the frames below
_CROSS_E3_E1 = {"spacelike": -1.0, "timelike_I": -1.0, "timelike_II": 1.0}


@dataclass(frozen=True)
class UntwistedParams:
    """Constant-twist data ``(kind, A, B)``; the twist slope is ``a = 0``."""

    kind: str
    A: float = 1.0
    B: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if not (self.A > 0 and math.isfinite(self.B) and self.B != 0):
            raise ValueError("need A > 0 and B != 0")

    a = 0.0
    branch = "untwisted"

    @property
    def signature(self) -> MetricSignature:
        return MetricSignature.from_kind(self.kind)

    @property
    def degenerate_u(self) -> tuple:
        return () if self.kind == "timelike_I" else (-math.log(self.A) / self.B,)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "a": 0.0, "A": self.A, "B": self.B, "branch": "untwisted"}


def _check_range(params, lo, hi):
    for u0 in params.degenerate_u:
        if lo <= u0 <= hi:
            raise DomainError(f"u-range [{lo:g}, {hi:g}] contains the degeneracy line u = {u0:g}")


# ---------------------------------------------------------------- frames

@dataclass(frozen=True)
class FrameState:
    """Frame ``(E1, E2, E3)`` at one or many values of ``u`` (vectors on the last axis)."""

    u: np.ndarray
    E1: np.ndarray
    E2: np.ndarray
    E3: np.ndarray
    signature: MetricSignature

    def gram_defect(self) -> float:
        """``max |<Ei, Ej> - diag(delta, eps, -sigma)|``."""
        s = self.signature
        target = np.diag([s.delta, s.epsilon, -s.sigma])
        E = (self.E1, self.E2, self.E3)
        return float(max(np.max(np.abs(lorentz_dot(E[i], E[j]) - target[i, j]))
                         for i in range(3) for j in range(3)))

    def cross_defect(self) -> float:
        """``max |E3 - E1 x E2|``."""
        return float(np.max(np.abs(self.E3 - lorentz_cross(self.E1, self.E2))))


def _frame_h(kind, A, B, P):
    """Coupling ``h = 2 B P / (1 - eps P^2)`` (``eps = -1`` only for timelike_I)."""
    return 2 * B * P / (1 + P * P) if kind == "timelike_I" else 2 * B * P / (1 - P * P)


def frame_coefficient(params, u):
    """``h(u) = e^{2au} / rho(u)``, the coefficient of the frame ODE."""
    P = params.A * np.exp(params.B * np.asarray(u, dtype=float))
    return _frame_h(params.kind, params.A, params.B, P)


def _frame_hyper(kind, A, B, z: HyperNumber):
    """``(E1, E2, E3, E3')`` as hypernumber vectors at ``z``."""
    P = hyper_exp(z * B) * A
    P2 = P * P
    one = P2 * 0 + 1
    zero = P2 * 0
    if kind == "spacelike":
        d = (one - P2).reciprocal()
        E1 = hvec((one + P2) * d, zero, P * 2 * d)
        E2 = hvec(zero, one, zero)
        E3 = hvec(-(P * 2) * d, zero, -(one + P2) * d)
    elif kind == "timelike_I":
        d = (one + P2).reciprocal()
        E1 = hvec(P * 2 * d, (one - P2) * d, zero)
        E2 = hvec(zero, zero, one)
        E3 = hvec((one - P2) * d, -(P * 2) * d, zero)
    else:
        d = (one - P2).reciprocal()
        E1 = hvec(P * 2 * d, zero, -(one + P2) * d)
        E2 = hvec(zero, one, zero)
        E3 = hvec((one + P2) * d, zero, -(P * 2) * d)
    h = P * (2 * B) * d
    s3 = _FRAME_SIGNS[kind][1]
    dE3 = HyperNumber(np.asarray(h.re)[..., None], np.asarray(h.im)[..., None], z.unit_square) * E1 * s3
    return E1, E2, E3, dE3


def frame_closed_form(params, u) -> FrameState:
    """Closed-form frame along ``v = 0``.

    Raises
    ------
    DomainError
        If some ``u`` lies on a degeneracy line.
    """
    u = np.asarray(u, dtype=float)
    for u0 in params.degenerate_u:
        if np.any(np.abs(u - u0) <= 1e-12 * (1 + abs(u0))):
            raise DomainError(f"frame degenerates at u = {u0:g}")
    E1, E2, E3, _ = _frame_hyper(params.kind, params.A, params.B, HyperNumber(u, 0.0))
    return FrameState(u, np.asarray(E1.re), np.asarray(E2.re), np.asarray(E3.re), params.signature)


@dataclass(frozen=True)
class FrameTrajectory:
    """Numerically integrated frame with dense output."""

    params: object
    u_range: tuple
    pieces: tuple = field(repr=False)

    def __call__(self, u) -> FrameState:
        u = np.asarray(u, dtype=float)
        flat = u.ravel()
        out = np.empty((flat.size, 9))
        done = np.zeros(flat.size, dtype=bool)
        for lo, hi, sol in self.pieces:
            m = (flat >= lo) & (flat <= hi) & ~done
            if np.any(m):
                out[m] = sol(flat[m]).T
                done |= m
        if not np.all(done):
            raise DomainError("u outside the integrated range")
        out = out.reshape(u.shape + (9,))
        return FrameState(u, out[..., 0:3], out[..., 3:6], out[..., 6:9], self.params.signature)


def frame_integrate(params, u_range, u0: float | None = None, rtol: float = 1e-12,
                    atol: float = 1e-13) -> FrameTrajectory:
    """Integrate ``E1' = s1 h E3``, ``E2' = 0``, ``E3' = s3 h E1`` with DOP853.

    The signs are ``(s1, s3) = (-1, -1)`` for spacelike, ``(+1, -1)`` for
    timelike_I and ``(+1, +1)`` for timelike_II surfaces.  The initial frame
    at ``u0`` (default: the left end of ``u_range``) is the closed form.

    Raises
    ------
    DomainError
        If the range touches a degeneracy line or the integrator fails.
    """
    ua, ub = sorted(map(float, u_range))
    _check_range(params, ua, ub)
    u0 = ua if u0 is None else float(u0)
    if not ua <= u0 <= ub:
        raise DomainError("u0 must lie inside u_range")
    s1, s3 = _FRAME_SIGNS[params.kind]
    f0 = frame_closed_form(params, u0)
    y0 = np.concatenate([f0.E1, f0.E2, f0.E3])

    def rhs(u, y):
        h = float(frame_coefficient(params, u))
        return np.concatenate([s1 * h * y[6:9], np.zeros(3), s3 * h * y[0:3]])

    pieces = []
    for end in (ub, ua):
        if end == u0:
            continue
        sol = solve_ivp(rhs, (u0, end), y0, method="DOP853", rtol=rtol, atol=atol, dense_output=True)
        if not sol.success:
            raise DomainError(f"frame integration failed: {sol.message}")
        pieces.append((min(u0, end), max(u0, end), sol.sol))
    if not pieces:
        pieces.append((u0, u0, lambda x: np.repeat(y0[:, None], np.size(x), axis=1)))
    return FrameTrajectory(params, (ua, ub), tuple(pieces))


# ---------------------------------------------------------------- base curves

@dataclass(frozen=True)
class ExpLinear:
    """``sum_k c_k e^{p_k u} + lin * u``, continued to hypernumbers on demand."""

    exps: tuple = ()
    lin: float = 0.0

    def real(self, u):
        u = np.asarray(u, dtype=float)
        out = [np.zeros(u.shape) for _ in range(3)]
        for c, p in self.exps:
            e = c * np.exp(p * u)
            out[0] = out[0] + e
            out[1] = out[1] + p * e
            out[2] = out[2] + p * p * e
        out[0] = out[0] + self.lin * u
        out[1] = out[1] + self.lin
        return out

    def hyper(self, z: HyperNumber):
        zero = z * 0.0
        out = [zero, zero, zero]
        for c, p in self.exps:
            e = hyper_exp(z * p) * c
            out = [out[0] + e, out[1] + e * p, out[2] + e * (p * p)]
        out[0] = out[0] + z * self.lin
        out[1] = out[1] + self.lin
        return out


def _curve_components(params):
    kind, a, A, B = params.kind, params.a, params.A, params.B
    branch = params.branch
    E = ExpLinear
    if branch == "untwisted":
        if kind == "spacelike":
            return E(((-1 / (2 * A * B * B), -B), (A / (2 * B * B), B))), E(), E((), 1 / B)
        if kind == "timelike_I":
            return E((), 1 / B), E(((-1 / (2 * A * B * B), -B), (-A / (2 * B * B), B))), E()
        return E((), 1 / B), E(), E(((1 / (2 * A * B * B), -B), (-A / (2 * B * B), B)))
    if branch == "generic":
        hi = (A / (2 * B * (2 * a + B)), 2 * a + B)
        lo = (1 / (2 * A * B * (2 * a - B)), 2 * a - B)
        rad = E(((1 / (2 * a * B), 2 * a),))
        if kind == "spacelike":
            return E((hi, lo)), E(), rad
        if kind == "timelike_I":
            return rad, E(((-hi[0], hi[1]), lo)), E()
        return rad, E(), E(((-hi[0], hi[1]), (-lo[0], lo[1])))
    if branch == "B=2a":
        lin = 1 / (4 * A * a)
        quart = A / (16 * a * a)
        rad = E(((1 / (4 * a * a), 2 * a),))
        if kind == "spacelike":
            return E(((quart, 4 * a),), lin), E(), rad
        if kind == "timelike_I":
            return rad, E(((-quart, 4 * a),), lin), E()
        return rad, E(), E(((-quart, 4 * a),), -lin)
    lin = A / (4 * a)
    quart = 1 / (16 * a * a * A)
    rad = E(((-1 / (4 * a * a), 2 * a),))
    if kind == "spacelike":
        return E(((-quart, 4 * a),), -lin), E(), rad
    if kind == "timelike_I":
        return rad, E(((-quart, 4 * a),), lin), E()
    return rad, E(), E(((quart, 4 * a),), lin)


@dataclass(frozen=True)
class CurveJet:
    c: np.ndarray
    dc: np.ndarray
    ddc: np.ndarray


def base_curve(params, u) -> CurveJet:
    """Base curve ``c(u) = X(u, 0)`` with its first two derivatives.

    Generic branches are sums of exponentials; the resonant branches
    ``B = +-2a`` and the untwisted case carry an extra term linear in ``u``.
    ``c'`` equals ``rho E1`` with ``rho`` the signed closed-form factor.

    Raises
    ------
    DomainError
        On a degeneracy line.
    """
    u = np.asarray(u, dtype=float)
    for u0 in params.degenerate_u:
        if np.any(np.abs(u - u0) <= 1e-12 * (1 + abs(u0))):
            raise DomainError(f"u = {u0:g} is excluded")
    cols = [comp.real(u) for comp in _curve_components(params)]
    return CurveJet(*(np.stack([cols[k][i] for k in range(3)], axis=-1) for i in range(3)))


# ---------------------------------------------------------------- Björling data

@dataclass(frozen=True)
class BjorlingData:
    """Analytic base curve and unit normal, continued to ``z = u + unit v``.

    ``curve(z)`` returns ``(c, c', c'')`` and ``normal(z)`` returns
    ``(E3, E3')`` as hypernumber vectors.
    """

    unit_square: int
    signature: MetricSignature
    curve: Callable = field(repr=False)
    normal: Callable = field(repr=False)
    degenerate_u: tuple = ()
    descriptor: dict = field(default_factory=dict)
    integrand: Callable | None = field(default=None, repr=False)

    def strip_integrand(self, z):
        """``(E3 x c', (E3 x c')')`` at ``z``; a supplied closed form wins over the raw product."""
        if self.integrand is not None:
            return self.integrand(z)
        _, dc, ddc = self.curve(z)
        E3, dE3 = self.normal(z)
        return hcross(E3, dc), hcross(dE3, dc) + hcross(E3, ddc)

    @property
    def kind(self) -> str:
        return "complex" if self.unit_square == COMPLEX else "paracomplex"

    @classmethod
    def from_params(cls, params) -> "BjorlingData":
        comps = _curve_components(params)
        kind, A, B = params.kind, params.A, params.B

        def curve(z):
            parts = [c.hyper(z) for c in comps]
            return tuple(hvec(parts[0][i], parts[1][i], parts[2][i]) for i in range(3))

        def normal(z):
            _, _, E3, dE3 = _frame_hyper(kind, A, B, z)
            return E3, dE3

        sig = params.signature
        eps, a = sig.epsilon, params.a
        k = _CROSS_E3_E1[kind]

        def integrand(z):
            # E3 x c' = rho (E3 x E1) = k rho E2: the pole of E3 at 1 = P^2 cancels
            g = hyper_exp(z * (2 * a + B)) * (-eps * A / (2 * B))
            h = hyper_exp(z * (2 * a - B)) * (1 / (2 * A * B))
            rho, drho = g + h, g * (2 * a + B) + h * (2 * a - B)
            zero = rho * 0.0
            if kind == "timelike_I":
                return hvec(zero, zero, rho * k), hvec(zero, zero, drho * k)
            return hvec(zero, rho * k, zero), hvec(zero, drho * k, zero)

        desc = {"type": "untwisted" if isinstance(params, UntwistedParams) else "family", **params.as_dict()}
        us = COMPLEX if sig.is_spacelike else PARACOMPLEX
        return cls(us, sig, curve, normal, tuple(params.degenerate_u), desc, integrand)

    @classmethod
    def untwisted(cls, kind: str, A: float = 1.0, B: float = 1.0) -> "BjorlingData":
        return cls.from_params(UntwistedParams(kind, A, B))

    @classmethod
    def from_descriptor(cls, desc) -> "BjorlingData":
        """Build from a JSON-like descriptor ``{"type": "family"|"untwisted", "kind", "a", "A", "B"}``."""
        if isinstance(desc, str):
            desc = json.loads(desc)
        t = desc.get("type", "family")
        if t == "untwisted":
            return cls.untwisted(desc["kind"], float(desc.get("A", 1.0)), float(desc.get("B", 1.0)))
        if t != "family":
            raise ValueError(f"unknown Björling descriptor type {t!r}")
        return cls.from_params(FamilyParams(desc["kind"], float(desc["a"]), float(desc.get("A", 1.0)),
                                            desc.get("B"), desc.get("branch")))

    def to_json(self) -> str:
        return json.dumps(self.descriptor, sort_keys=True)

    def unit(self) -> HyperNumber:
        return HyperNumber(0.0, 1.0, self.unit_square)

    def check(self, u) -> dict:
        """Residuals of ``<E3, E3> = -sigma`` and ``<E3, c'> = 0`` on the real axis."""
        z = HyperNumber(np.asarray(u, dtype=float), 0.0, self.unit_square)
        _, dc, _ = self.curve(z)
        E3, _ = self.normal(z)
        return {"normalization": float(np.max(np.abs(np.asarray(hdot(E3, E3).re) + self.signature.sigma))),
                "orthogonality": float(np.max(np.abs(np.asarray(hdot(E3, dc).re))))}


def _integrand(data: BjorlingData):
    return lambda w: data.strip_integrand(w)[0]


def _check_points(data, u):
    for u0 in data.degenerate_u:
        if np.any(np.abs(np.asarray(u) - u0) <= 1e-12 * (1 + abs(u0))):
            raise DomainError(f"u = {u0:g} is excluded")


def bjorling_position(data: BjorlingData, u, v, tol: float = 1e-10) -> np.ndarray:
    """``X = Re(c(z) + unit * int_u^z E3(w) x c'(w) dw)`` along the segment from ``u`` to ``z``."""
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    _check_points(data, u)
    us = data.unit_square
    za, zb = HyperNumber(u, np.zeros_like(v), us), HyperNumber(u, v, us)
    integral = segment_integral(_integrand(data), za, zb, tol=tol)
    c, _, _ = data.curve(zb)
    return np.asarray(c.re) + np.asarray((data.unit() * integral).re)


def bjorling_jet(data: BjorlingData, u, v, tol: float = 1e-10) -> Jet:
    """Position by quadrature, derivatives from the analytic ``F' = c' + unit E3 x c'``."""
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    X = bjorling_position(data, u, v, tol)
    z = HyperNumber(u, v, data.unit_square)
    _, dc, ddc = data.curve(z)
    f, df = data.strip_integrand(z)
    e = data.unit()
    F1 = dc + e * f
    F2 = ddc + e * df
    re = lambda w: np.asarray(w.re)
    return Jet(X, re(F1), re(e * F1), re(F2), re(e * F2), data.unit_square * re(F2))


def bjorling_patch(data: BjorlingData, tol: float = 1e-10, name: str = "bjorling") -> SurfacePatch:
    return SurfacePatch(lambda u, v: bjorling_jet(data, u, v, tol), data.signature, data.degenerate_u,
                        name=name, meta={"descriptor": dict(data.descriptor)})


def bjorling_solve(data: BjorlingData, u_grid, v_grid, tol: float = 1e-10) -> np.ndarray:
    """Sample the reconstructed surface on the tensor grid; returns shape ``(nu, nv, 3)``."""
    U, V = np.meshgrid(np.asarray(u_grid, dtype=float), np.asarray(v_grid, dtype=float), indexing="ij")
    return bjorling_position(data, U, V, tol)


def path_independence_defect(data: BjorlingData, u, v, u_ref: float, tol: float = 1e-12) -> float:
    """Compare ``int_{u_ref}^{z} E3 x c'`` along the straight segment and along a rectangle.

    The rectangle goes ``u_ref -> u_ref + unit v -> u + unit v``.  For analytic
    data both agree; the return value is the largest component difference.
    """
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    us = data.unit_square
    f = _integrand(data)
    ref = np.full(u.shape, float(u_ref))
    z0 = HyperNumber(ref, np.zeros_like(v), us)
    z1 = HyperNumber(ref, v, us)
    z = HyperNumber(u, v, us)
    straight = segment_integral(f, z0, z, tol=tol)
    rect = segment_integral(f, z0, z1, tol=tol) + segment_integral(f, z1, z, tol=tol)
    d = straight - rect
    return float(max(np.max(np.abs(d.re)), np.max(np.abs(d.im))))


# ---------------------------------------------------------------- associate family

def _harmonic_defects(J: Jet, signature: MetricSignature):
    us = COMPLEX if signature.is_spacelike else PARACOMPLEX
    scale = 1.0 + np.max(np.abs(J.Xuu), initial=0.0) + np.max(np.abs(J.Xvv), initial=0.0)
    harm = np.max(np.abs(J.Xvv - us * J.Xuu), initial=0.0) / scale
    E, F, G = lorentz_dot(J.Xu, J.Xu), lorentz_dot(J.Xu, J.Xv), lorentz_dot(J.Xv, J.Xv)
    mscale = np.abs(E) + np.abs(G) + 1e-300
    conf = np.max((np.abs(E / signature.delta - G / signature.epsilon) + np.abs(F)) / mscale, initial=0.0)
    return float(harm), float(conf)


def _sample_points(patch: SurfacePatch, u0, v0):
    du = np.linspace(-0.5, 0.5, 5)
    U, V = np.meshgrid(u0 + du, v0 + du, indexing="ij")
    ok = patch.in_domain(U, V, margin=0.05)
    return U[ok], V[ok]


def conjugate_patch(target, u0: float = 0.0, v0: float = 0.0, tol: float = 1e-6) -> SurfacePatch:
    """Conjugate surface ``X*`` with ``X*_u = X_v`` and ``X*_v = -X_u`` (spacelike) or ``X_u`` (timelike).

    Uses exact term conjugates for catalog surfaces; otherwise integrates the
    swapped gradient along ``(u0, v0) -> (u0, v) -> (u, v)``.

    Raises
    ------
    StructureError
        If the input is not harmonic and (para)conformal within ``tol``.
    """
    patch = target.patch if isinstance(target, NamedSurface) else target
    sig = patch.signature
    if sig is None:
        raise StructureError("the patch must declare its causal character")
    us = COMPLEX if sig.is_spacelike else PARACOMPLEX
    U, V = _sample_points(patch, u0, v0)
    if U.size:
        harm, conf = _harmonic_defects(patch.evaluator(U, V), sig)
        if harm > tol or conf > tol:
            raise StructureError(f"input is not a conformal ZMC patch (harmonic {harm:.2e}, conformal {conf:.2e})")
    comps = target.conjugate_components() if isinstance(target, NamedSurface) else None
    if comps is not None:
        ev = lambda u, v: jet_from_terms(comps, u, v)
    else:
        ev_base = patch.evaluator

        def ev(u, v):
            u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
            J = ev_base(u, v)
            col = real_line_integral(lambda t: us * ev_base(np.full(t.shape, u0), t).Xu,
                                     np.full(u.shape, v0), v)
            row = real_line_integral(lambda s: ev_base(s, np.broadcast_to(v, s.shape)).Xv,
                                     np.full(u.shape, u0), u)
            return Jet(col + row, J.Xv, us * J.Xu, J.Xuv, J.Xvv, us * J.Xuv)
    return SurfacePatch(ev, sig, patch.degenerate_u, patch.u_bounds, patch.v_bounds,
                        name=f"conjugate({patch.name})")


def associate_deform(target, theta: float, u0: float = 0.0, v0: float = 0.0, tol: float = 1e-6) -> SurfacePatch:
    """Associate surface ``cos(t) X + sin(t) X*`` (spacelike) or ``cosh(t) X + sinh(t) X*`` (timelike).

    Parameters
    ----------
    target : NamedSurface or SurfacePatch
        A conformal ZMC patch with declared signature.
    theta : float
        Deformation angle (hyperbolic angle for timelike patches).
    """
    patch = target.patch if isinstance(target, NamedSurface) else target
    star = conjugate_patch(target, u0, v0, tol)
    if patch.signature.is_spacelike:
        c, s = math.cos(theta), math.sin(theta)
    else:
        c, s = math.cosh(theta), math.sinh(theta)

    def ev(u, v):
        J, K = patch.evaluator(u, v), star.evaluator(u, v)
        return Jet(*(c * a + s * b for a, b in zip(J.fields(), K.fields())))

    return SurfacePatch(ev, patch.signature, patch.degenerate_u, patch.u_bounds, patch.v_bounds,
                        name=f"associate({patch.name}, {theta:g})", meta={"theta": theta})


def conjugated_weingarten(A, angle: float, kind) -> np.ndarray:
    """``Phi_angle A Phi_{-angle}`` with ``Phi`` the Euclidean or hyperbolic rotation."""
    if hasattr(A, "matrix"):
        A = A.matrix()
    k = RotationKind(kind)
    return rotation(k, angle).matrix @ np.asarray(A) @ rotation(k, -angle).matrix


__all__ = [
    "UntwistedParams", "FrameState", "FrameTrajectory", "frame_coefficient", "frame_closed_form",
    "frame_integrate", "ExpLinear", "CurveJet", "base_curve", "BjorlingData", "bjorling_position",
    "bjorling_jet", "bjorling_patch", "bjorling_solve", "path_independence_defect", "conjugate_patch",
    "associate_deform", "conjugated_weingarten",
]
