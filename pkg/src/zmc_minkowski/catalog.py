"""Closed-form ZMC surfaces with rotational intrinsic metric.

Provides the three twisted families (spacelike, timelike of the first and
second kind; each with a generic branch and the two resonant branches
``B = 2a`` and ``B = -2a``), the named Enneper surfaces and catenoids, and
the conformal reparametrization of surfaces of revolution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError
from .kernel import Jet, SurfacePatch
from .minkowski import MetricSignature, RotationKind
from .terms import ExpWave, Poly, conjugate_terms, jet_from_terms

KINDS = ("spacelike", "timelike_I", "timelike_II")
BRANCHES = ("generic", "B=2a", "B=-2a")
DEGENERACY_MARGIN = 1e-3


@dataclass(frozen=True)
class FamilyParams:
    """Parameters ``(kind, a, A, B)`` of a twisted ZMC family.

    ``branch`` is inferred from ``(a, B)`` when omitted; when only ``branch``
    is given, ``B`` is set to ``2a`` or ``-2a``.  ``A`` must be positive and
    ``B`` nonzero (negative values are needed on the ``B = -2a`` branch for
    ``a > 0``).
    """

    kind: str
    a: float
    A: float = 1.0
    B: float | None = None
    branch: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if not (math.isfinite(self.a) and self.a != 0):
            raise ValueError("twist slope a must be a nonzero real")
        if not (math.isfinite(self.A) and self.A > 0):
            raise ValueError("A must be a positive real")
        a = float(self.a)
        B, branch = self.B, self.branch
        if branch is not None and branch not in BRANCHES:
            raise ValueError(f"unknown branch {branch!r}; expected one of {BRANCHES}")
        if B is None:
            if branch in (None, "generic"):
                raise ValueError("B is required on the generic branch")
            B = 2 * a if branch == "B=2a" else -2 * a
        B = float(B)
        if not (math.isfinite(B) and B != 0):
            raise ValueError("B must be a nonzero real")
        inferred = "B=2a" if math.isclose(B, 2 * a, rel_tol=1e-12) else (
            "B=-2a" if math.isclose(B, -2 * a, rel_tol=1e-12) else "generic")
        if branch is not None and branch != inferred:
            raise ValueError(f"branch {branch!r} is inconsistent with a={a}, B={B} (looks like {inferred!r})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "A", float(self.A))
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "branch", inferred)

    @property
    def signature(self) -> MetricSignature:
        return MetricSignature.from_kind(self.kind)

    @property
    def epsilon(self) -> int:
        return self.signature.epsilon

    @property
    def degenerate_u(self) -> tuple:
        """Lines where the metric degenerates: ``u = -ln(A)/B`` unless the kind is timelike_I."""
        if self.kind == "timelike_I":
            return ()
        return (-math.log(self.A) / self.B,)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "a": self.a, "A": self.A, "B": self.B, "branch": self.branch}


@dataclass(frozen=True)
class NamedSurface:
    """A catalog surface: analytic patch plus the metric and domain it is stated to have."""

    id: str
    patch: SurfacePatch
    components: tuple
    stated_first_form: Callable
    degenerate_u: tuple
    provenance: str
    twist_slope: float
    params: FamilyParams | None = None
    extras: dict = field(default_factory=dict, compare=False)

    @property
    def signature(self) -> MetricSignature:
        return self.patch.signature

    def position(self, u, v):
        return self.patch.position(u, v)

    def jet(self, u, v, **kw) -> Jet:
        return self.patch.jet(u, v, **kw)

    def conjugate_components(self):
        """Exact harmonic conjugates of the coordinates, or ``None`` if not available."""
        us = -1 if self.signature.is_spacelike else 1
        out = [conjugate_terms(c, us) for c in self.components]
        return None if any(c is None for c in out) else tuple(out)


def _patch(components, signature, degenerate_u, name, **bounds) -> SurfacePatch:
    comps = tuple(tuple(c) for c in components)
    return SurfacePatch(lambda u, v: jet_from_terms(comps, u, v), signature, tuple(degenerate_u), name=name,
                        **bounds)


def _conformal_form(signature, rho2):
    def form(u):
        r2 = rho2(np.asarray(u, dtype=float))
        return signature.delta * r2, signature.epsilon * r2
    return form


def family_rho_squared(params: FamilyParams, u):
    """Stated metric factor ``e^{(4a-2B)u} (A^2 e^{2Bu} -+ 1)^2 / (4 A^2 B^2)``."""
    a, A, B = params.a, params.A, params.B
    u = np.asarray(u, dtype=float)
    sgn = 1.0 if params.kind == "timelike_I" else -1.0
    if params.branch == "generic":
        return np.exp((4 * a - 2 * B) * u) * (A * A * np.exp(2 * B * u) + sgn) ** 2 / (4 * A * A * B * B)
    if params.branch == "B=2a":
        return (A * A * np.exp(4 * a * u) + sgn) ** 2 / (16 * a * a * A * A)
    return (A * A + sgn * np.exp(4 * a * u)) ** 2 / (16 * a * a * A * A)


def _family_components(p: FamilyParams):
    a, A, B = p.a, p.A, p.B
    C, S, CH, SH = "cos", "sin", "cosh", "sinh"
    if p.branch == "generic":
        D = 2 * A * B * (4 * a * a - B * B)
        hi, lo = 2 * a + B, 2 * a - B
        if p.kind == "spacelike":
            x1 = (ExpWave(A * A * lo / D, hi, hi, C), ExpWave(hi / D, lo, lo, C))
            x2 = (ExpWave(hi / D, lo, lo, S), ExpWave(-A * A * lo / D, hi, hi, S))
            x3 = (ExpWave(1 / (2 * a * B), 2 * a, 2 * a, C),)
        elif p.kind == "timelike_I":
            x1 = (ExpWave(1 / (2 * a * B), 2 * a, 2 * a, CH),)
            x2 = (ExpWave(hi / D, lo, lo, CH), ExpWave(-A * A * lo / D, hi, hi, CH))
            x3 = (ExpWave(-A * A * lo / D, hi, hi, SH), ExpWave(-hi / D, lo, lo, SH))
        else:
            x1 = (ExpWave(1 / (2 * a * B), 2 * a, 2 * a, CH),)
            x2 = (ExpWave(-A * A * lo / D, hi, hi, SH), ExpWave(hi / D, lo, lo, SH))
            x3 = (ExpWave(-hi / D, lo, lo, CH), ExpWave(-A * A * lo / D, hi, hi, CH))
        return x1, x2, x3
    k = 16 * a * a * A
    if p.branch == "B=2a":
        if p.kind == "spacelike":
            x1 = (ExpWave(A * A / k, 4 * a, 4 * a, C), Poly(4 * a / k, 1, 0))
            x2 = (Poly(4 * a / k, 0, 1), ExpWave(-A * A / k, 4 * a, 4 * a, S))
            x3 = (ExpWave(1 / (4 * a * a), 2 * a, 2 * a, C),)
        elif p.kind == "timelike_I":
            x1 = (ExpWave(1 / (4 * a * a), 2 * a, 2 * a, CH),)
            x2 = (Poly(4 * a / k, 1, 0), ExpWave(-A * A / k, 4 * a, 4 * a, CH))
            x3 = (ExpWave(-A * A / k, 4 * a, 4 * a, SH), Poly(-4 * a / k, 0, 1))
        else:
            x1 = (ExpWave(1 / (4 * a * a), 2 * a, 2 * a, CH),)
            x2 = (Poly(4 * a / k, 0, 1), ExpWave(-A * A / k, 4 * a, 4 * a, SH))
            x3 = (ExpWave(-A * A / k, 4 * a, 4 * a, CH), Poly(-4 * a / k, 1, 0))
        return x1, x2, x3
    # B = -2a
    if p.kind == "spacelike":
        x1 = (ExpWave(-1 / k, 4 * a, 4 * a, C), Poly(-A / (4 * a), 1, 0))
        x2 = (Poly(A / (4 * a), 0, 1), ExpWave(-1 / k, 4 * a, 4 * a, S))
        x3 = (ExpWave(-1 / (4 * a * a), 2 * a, 2 * a, C),)
    elif p.kind == "timelike_I":
        x1 = (ExpWave(-1 / (4 * a * a), 2 * a, 2 * a, CH),)
        x2 = (Poly(4 * a * A * A / k, 1, 0), ExpWave(-1 / k, 4 * a, 4 * a, CH))
        x3 = (Poly(4 * a * A * A / k, 0, 1), ExpWave(1 / k, 4 * a, 4 * a, SH))
    else:
        x1 = (ExpWave(-1 / (4 * a * a), 2 * a, 2 * a, CH),)
        x2 = (Poly(4 * a * A * A / k, 0, 1), ExpWave(-1 / k, 4 * a, 4 * a, SH))
        x3 = (Poly(4 * a * A * A / k, 1, 0), ExpWave(1 / k, 4 * a, 4 * a, CH))
    return x1, x2, x3


_FAMILY_TEXT = {
    "spacelike": "spacelike twisted ZMC family",
    "timelike_I": "timelike twisted ZMC family, metric rho^2(du^2 - dv^2)",
    "timelike_II": "timelike twisted ZMC family, metric rho^2(-du^2 + dv^2)",
}


def theorem_surface(params: FamilyParams) -> NamedSurface:
    """Closed-form ZMC surface with metric factor ``rho`` and twist ``alpha = a v``."""
    comps = _family_components(params)
    sig = params.signature
    name = f"{params.kind}[{params.branch}](a={params.a:g}, A={params.A:g}, B={params.B:g})"
    return NamedSurface(
        id=name,
        patch=_patch(comps, sig, params.degenerate_u, name),
        components=comps,
        stated_first_form=_conformal_form(sig, lambda u: family_rho_squared(params, u)),
        degenerate_u=params.degenerate_u,
        provenance=f"{_FAMILY_TEXT[params.kind]}, {params.branch} branch",
        twist_slope=params.a,
        params=params,
    )


def catalog_first_form(target, u):
    """Stated metric coefficients ``(E, G)`` (``F = 0``) of a family or named surface.

    Raises
    ------
    DomainError
        If some ``u`` lies on a degeneracy line.
    """
    s = target if isinstance(target, NamedSurface) else (
        theorem_surface(target) if isinstance(target, FamilyParams) else named_surface(target))
    u = np.asarray(u, dtype=float)
    for u0 in s.degenerate_u:
        if np.any(np.abs(u - u0) <= 1e-12 * (1 + abs(u0))):
            raise DomainError(f"u = {u0:g} is excluded for {s.id}")
    return s.stated_first_form(u)


def domain_check(params: FamilyParams, u, margin: float = 0.0):
    """``'valid'`` or ``'degenerate'`` (within ``margin`` of an exclusion line), elementwise."""
    u = np.asarray(u, dtype=float)
    bad = np.zeros(u.shape, dtype=bool)
    for u0 in params.degenerate_u:
        bad |= np.abs(u - u0) <= max(margin, 1e-12 * (1 + abs(u0)))
    out = np.where(bad, "degenerate", "valid")
    return str(out) if out.ndim == 0 else out


# ---------------------------------------------------------------- named surfaces

def _enneper_spacelike():
    comps = ((ExpWave(1 / 3, 3, 3, "cos"), ExpWave(1.0, 1, 1, "cos")),
             (ExpWave(1 / 3, 3, 3, "sin"), ExpWave(-1.0, 1, 1, "sin")),
             (ExpWave(-1.0, 2, 2, "cos"),))
    sig = MetricSignature.spacelike()
    rho2 = lambda u: np.exp(2 * u) * (np.exp(2 * u) - 1) ** 2
    return comps, sig, (0.0,), rho2, "spacelike Enneper surface, exponential coordinates", 1.0


def _enneper_timelike():
    comps = ((ExpWave(1.0, 2, 2, "cosh"),),
             (ExpWave(1.0, 1, 1, "cosh"), ExpWave(-1 / 3, 3, 3, "cosh")),
             (ExpWave(1.0, 1, 1, "sinh"), ExpWave(1 / 3, 3, 3, "sinh")))
    sig = MetricSignature.timelike_i()
    rho2 = lambda u: np.exp(2 * u) * (1 + np.exp(2 * u)) ** 2
    return comps, sig, (), rho2, "timelike Enneper surface, exponential coordinates", 1.0


def _enneper_timelike_2():
    comps = ((ExpWave(0.5, 2, 2, "cosh"),),
             (ExpWave(-1 / 6, 3, 3, "sinh"), ExpWave(0.5, 1, 1, "sinh")),
             (ExpWave(-1 / 6, 3, 3, "cosh"), ExpWave(-0.5, 1, 1, "cosh")))
    sig = MetricSignature.timelike_ii()
    rho2 = lambda u: np.exp(2 * u) * (np.exp(2 * u) - 1) ** 2 / 4
    return comps, sig, (0.0,), rho2, "second timelike Enneper surface, exponential coordinates", 1.0


ENNEPER_TIMELIKE_2_POLYNOMIAL = (
    (Poly(0.5, 2, 0), Poly(0.5, 0, 2)),
    (Poly(-0.5, 2, 1), Poly(-1 / 6, 0, 3), Poly(0.5, 0, 1)),
    (Poly(-1 / 6, 3, 0), Poly(-0.5, 1, 2), Poly(-0.5, 1, 0)),
)


def enneper_timelike_2_polynomial() -> SurfacePatch:
    """Polynomial form of the second timelike Enneper surface in coordinates ``(U, V)``."""
    return _patch(ENNEPER_TIMELIKE_2_POLYNOMIAL, None, (), "enneper_timelike_2_polynomial")


def exponential_to_polynomial(u, v):
    """Coordinate change ``(U, V) = (e^u cosh v, e^u sinh v)``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.exp(u) * np.cosh(v), np.exp(u) * np.sinh(v)


def _elliptic_catenoid(A=1.0, B=1.0):
    k1, k2 = -1 / (2 * A * B * B), A / (2 * B * B)
    comps = ((ExpWave(k1, -B, B, "cos"), ExpWave(k2, B, B, "cos")),
             (ExpWave(k1, -B, B, "sin"), ExpWave(k2, B, B, "sin")),
             (Poly(1 / B, 1, 0),))
    sig = MetricSignature.spacelike()
    rho2 = lambda u: ((np.exp(-B * u) / A - A * np.exp(B * u)) / (2 * B)) ** 2
    return comps, sig, (-math.log(A) / B,), rho2, "elliptic catenoid (untwisted spacelike case)", 0.0


def _timelike_catenoid(A=1.0, B=1.0):
    k1, k2 = -1 / (2 * A * B * B), -A / (2 * B * B)
    comps = ((Poly(1 / B, 1, 0),),
             (ExpWave(k1, -B, B, "cosh"), ExpWave(k2, B, B, "cosh")),
             (ExpWave(k1, -B, B, "sinh"), ExpWave(k2, B, B, "sinh")))
    sig = MetricSignature.timelike_i()
    rho2 = lambda u: ((np.exp(-B * u) / A + A * np.exp(B * u)) / (2 * B)) ** 2
    return comps, sig, (), rho2, "timelike catenoid (untwisted timelike case)", 0.0


_NAMED = {
    "enneper_spacelike": _enneper_spacelike,
    "enneper_timelike": _enneper_timelike,
    "enneper_timelike_2": _enneper_timelike_2,
    "elliptic_catenoid": _elliptic_catenoid,
    "timelike_catenoid": _timelike_catenoid,
}
NAMED_IDS = tuple(_NAMED)


def named_surface(id: str, **params) -> NamedSurface:
    """Look up a named surface; catenoids accept ``A`` and ``B`` (default 1)."""
    try:
        builder = _NAMED[id]
    except KeyError:
        raise KeyError(f"unknown surface id {id!r}; known: {', '.join(NAMED_IDS)}") from None
    if params and id not in ("elliptic_catenoid", "timelike_catenoid"):
        raise TypeError(f"{id} takes no parameters")
    for key in ("A", "B"):
        if key in params and not (params[key] > 0):
            raise ValueError(f"{key} must be positive")
    comps, sig, degen, rho2, prov, slope = builder(**params)
    extras = {}
    if id in ("elliptic_catenoid", "timelike_catenoid"):
        extras = {"A": params.get("A", 1.0), "B": params.get("B", 1.0)}
    return NamedSurface(id, _patch(comps, sig, degen, id), comps, _conformal_form(sig, rho2), degen, prov, slope,
                        None, extras)


def catenoid_symmetry_residual(surface: NamedSurface, theta: float, u, v) -> float:
    """``max |Psi_theta X(u, v) - X(u, v + theta / B)|`` for the catenoid's isometry ``Psi_theta``.

    Rotation about the ``x3`` axis for the elliptic catenoid, hyperbolic
    rotation about the ``x1`` axis for the timelike one.
    """
    B = surface.extras.get("B", 1.0)
    X = surface.position(u, v)
    Y = surface.position(u, np.asarray(v) + theta / B)
    c, s = (math.cos(theta), math.sin(theta)) if surface.id == "elliptic_catenoid" else (
        math.cosh(theta), math.sinh(theta))
    if surface.id == "elliptic_catenoid":
        M = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1.0]])
    elif surface.id == "timelike_catenoid":
        M = np.array([[1.0, 0, 0], [0, c, s], [0, s, c]])
    else:
        raise ValueError("symmetry residual is defined for the two catenoids only")
    return float(np.max(np.abs(X @ M.T - Y)))


def isometry_residual(M) -> float:
    """``|M^T J M - J|`` with ``J = diag(1, 1, -1)``."""
    J = np.diag([1.0, 1.0, -1.0])
    return float(np.max(np.abs(M.T @ J @ M - J)))


# ---------------------------------------------------------------- surfaces of revolution

AXIS_CASES = ("timelike", "spacelike_1", "spacelike_2", "lightlike")
Profile = Callable[[np.ndarray], tuple]


def linear_profile(slope: float, offset: float = 0.0) -> Profile:
    """``f(r) = slope * r + offset`` as a 2-jet."""
    return lambda r: (slope * np.asarray(r) + offset, np.full(np.shape(r), float(slope)), np.zeros(np.shape(r)))


def _revolution_pieces(case, f, f1, f2, r, v):
    """Return ``(Y, Y_r, Y_v, Y_rr, Y_rv, Y_vv)`` of the revolution surface."""
    z = np.zeros(np.broadcast(r, v).shape)
    r = r + z
    if case == "timelike":
        c, s = np.cos(v) + z, np.sin(v) + z
        Y = (r * c, r * s, f + z)
        Yr = (c, s, f1 + z)
        Yv = (-r * s, r * c, z)
        Yrr = (z, z, f2 + z)
        Yrv = (-s, c, z)
        Yvv = (-r * c, -r * s, z)
    elif case == "spacelike_1":
        c, s = np.cosh(v) + z, np.sinh(v) + z
        Y = (r, f * c, f * s)
        Yr = (1 + z, f1 * c, f1 * s)
        Yv = (z, f * s, f * c)
        Yrr = (z, f2 * c, f2 * s)
        Yrv = (z, f1 * s, f1 * c)
        Yvv = (z, f * c, f * s)
    elif case == "spacelike_2":
        c, s = np.cosh(v) + z, np.sinh(v) + z
        Y = (r, f * s, f * c)
        Yr = (1 + z, f1 * s, f1 * c)
        Yv = (z, f * c, f * s)
        Yrr = (z, f2 * s, f2 * c)
        Yrv = (z, f1 * c, f1 * s)
        Yvv = (z, f * s, f * c)
    else:
        Y = (f + r * (1 - v * v), -2 * v * r, f - r * (1 + v * v))
        Yr = (f1 + 1 - v * v, -2 * v + z, f1 - 1 - v * v)
        Yv = (-2 * r * v, -2 * r, -2 * r * v)
        Yrr = (f2 + z, z, f2 + z)
        Yrv = (-2 * v + z, -2 + z, -2 * v + z)
        Yvv = (-2 * r, z, -2 * r)
    return tuple(np.stack(t, axis=-1) for t in (Y, Yr, Yv, Yrr, Yrv, Yvv))


@dataclass(frozen=True)
class RevolutionPatch:
    """Conformally reparametrized surface of revolution and its radius function."""

    patch: SurfacePatch
    case: str
    r: Callable
    rho: Callable
    signature: MetricSignature


def revolution_reparametrize(axis_case: str, profile: Profile, delta: int, u_range, r0: float,
                             u0: float | None = None, orientation: int = 1, rtol: float = 1e-12) -> RevolutionPatch:
    """Reparametrize ``Y(r, v)`` by ``r = r(u)`` so that ``I = rho^2 (delta du^2 + eps dv^2)``.

    The radius solves ``r' = orientation * g(r) * sqrt(delta / q(r))`` where
    ``(g, q)`` is ``(r, 1 - f'^2)`` (timelike axis), ``(|f|, 1 + f'^2)``
    (spacelike axis, timelike surface), ``(|f|, 1 - f'^2)`` (spacelike axis,
    second case) or ``(r, f')`` (lightlike axis).

    Parameters
    ----------
    profile : callable
        ``r -> (f, f', f'')``.
    r0 : float
        Initial radius at ``u0`` (default: left end of ``u_range``).
    orientation : {+1, -1}
        Sign choice of the square root.

    Raises
    ------
    DomainError
        If ``delta / q`` is not positive along the solution, or ``g`` reaches 0.
    """
    if axis_case not in AXIS_CASES:
        raise ValueError(f"unknown axis case {axis_case!r}; expected one of {AXIS_CASES}")
    if delta not in (-1, 1) or orientation not in (-1, 1):
        raise ValueError("delta and orientation must be +1 or -1")
    if axis_case == "spacelike_1" and delta != 1:
        raise DomainError("a spacelike axis with hyperbolic cosh/sinh orbits forces delta = 1")
    epsilon = -1 if axis_case == "spacelike_1" else 1
    signature = MetricSignature(delta, epsilon)
    ua, ub = map(float, u_range)
    u0 = ua if u0 is None else float(u0)

    def gq(r):
        f, f1, f2 = profile(r)
        if axis_case == "timelike":
            return r, 1.0, 1 - f1 * f1, -2 * f1 * f2
        if axis_case == "spacelike_1":
            return np.abs(f), np.sign(f) * f1, 1 + f1 * f1, 2 * f1 * f2
        if axis_case == "spacelike_2":
            return np.abs(f), np.sign(f) * f1, 1 - f1 * f1, -2 * f1 * f2
        return r, 1.0, f1, f2

    def speed(r):
        g, g1, q, q1 = gq(np.asarray(r, dtype=float))
        ratio = delta / q
        if np.any(ratio <= 0):
            raise DomainError(f"sign condition violated: delta / q must be positive (axis {axis_case})")
        root = np.sqrt(ratio)
        F = orientation * g * root
        dF = orientation * root * (g1 - g * q1 / (2 * q))
        return F, dF

    def rhs(_, y):
        return [float(speed(y[0])[0])]

    def hit_zero(_, y):
        return float(gq(np.asarray(y[0]))[0])
    hit_zero.terminal = True

    if float(gq(np.asarray(r0))[0]) == 0:
        raise DomainError("initial radius makes the orbit degenerate")
    pieces = []
    for end in (ub, ua):
        if end == u0:
            continue
        sol = solve_ivp(rhs, (u0, end), [r0], method="DOP853", rtol=rtol, atol=rtol * (1 + abs(r0)),
                        dense_output=True, events=hit_zero)
        if sol.status == 1:
            raise DomainError(f"orbit radius reaches 0 at u = {sol.t_events[0][0]:.6g}")
        if not sol.success:
            raise DomainError(sol.message)
        pieces.append((min(u0, end), max(u0, end), sol.sol))

    def r_of(u):
        u = np.asarray(u, dtype=float)
        out = np.full(u.shape, float(r0))
        for lo, hi, s in pieces:
            m = (u >= lo) & (u <= hi) & (u != u0)
            if np.any(m):
                out[m] = s(u[m])[0]
        return out

    def evaluator(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        r = r_of(u)
        f, f1, f2 = profile(r)
        F, dF = speed(r)
        Y, Yr, Yv, Yrr, Yrv, Yvv = _revolution_pieces(axis_case, f, f1, f2, r, v)
        rp = F[..., None]
        rpp = (dF * F)[..., None]
        return Jet(Y, Yr * rp, Yv, Yrr * rp * rp + Yr * rpp, Yrv * rp, Yvv)

    def rho(u):
        g = gq(r_of(u))[0]
        return 2 * g if axis_case == "lightlike" else g

    patch = SurfacePatch(evaluator, signature, (), u_bounds=(ua, ub), name=f"revolution[{axis_case}]")
    return RevolutionPatch(patch, axis_case, r_of, rho, signature)
