"""Fundamental forms, shape operator, curvatures, twist and compatibility residuals.

Everything works on *jets*: the position ``X`` together with its first and
second partial derivatives, each an array of shape ``(..., 3)``.  Grid
sweeps are plain numpy broadcasting.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DegenerateError, DomainError, JetMismatchError, StructureError
from .minkowski import MetricSignature, RotationKind, lorentz_cross, lorentz_dot, rotation

_DEGENERACY_RTOL = 1e-13
UMBILIC_RTOL = 1e-9
RESIDUAL_FLOOR = 1e-3


@dataclass(frozen=True)
class Jet:
    """Second-order jet of a parametrized surface at one or many points."""

    X: np.ndarray
    Xu: np.ndarray
    Xv: np.ndarray
    Xuu: np.ndarray
    Xuv: np.ndarray
    Xvv: np.ndarray

    def fields(self):
        return (self.X, self.Xu, self.Xv, self.Xuu, self.Xuv, self.Xvv)

    def __getitem__(self, idx):
        return Jet(*(np.asarray(f)[idx] for f in self.fields()))

    def map(self, fn) -> "Jet":
        """Apply a linear map (e.g. an ambient isometry) to every field."""
        return Jet(*(fn(f) for f in self.fields()))


Evaluator = Callable[[np.ndarray, np.ndarray], Jet]


@dataclass(frozen=True)
class SurfacePatch:
    """A parametrized surface with an analytic 2-jet.

    Parameters
    ----------
    evaluator : callable
        ``(u, v) -> Jet``; must broadcast over array inputs.
    signature : MetricSignature, optional
        Declared causal character of the induced metric.
    degenerate_u : tuple of float
        Lines ``u = const`` where the metric degenerates.
    u_bounds, v_bounds : (float, float)
        Closed rectangle carrying the parametrization.
    """

    evaluator: Evaluator
    signature: MetricSignature | None = None
    degenerate_u: tuple = ()
    u_bounds: tuple = (-np.inf, np.inf)
    v_bounds: tuple = (-np.inf, np.inf)
    name: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def in_domain(self, u, v, margin: float = 0.0):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        ok = (u >= self.u_bounds[0]) & (u <= self.u_bounds[1]) & (v >= self.v_bounds[0]) & (v <= self.v_bounds[1])
        for u0 in self.degenerate_u:
            ok = ok & (np.abs(u - u0) > max(margin, 1e-12 * (1.0 + abs(u0))))
        return ok

    def position(self, u, v) -> np.ndarray:
        return self.evaluator(np.asarray(u, dtype=float), np.asarray(v, dtype=float)).X

    def jet(self, u, v, validate: bool = False, tol: float = 1e-6) -> Jet:
        return jet(self, u, v, validate=validate, tol=tol)


def jet(patch: SurfacePatch, u, v, validate: bool = False, tol: float = 1e-6) -> Jet:
    """Evaluate the analytic jet, optionally cross-checked against finite differences.

    Raises
    ------
    DomainError
        If a point is outside the rectangle or on a degeneracy line.
    JetMismatchError
        In validation mode, if analytic and FD derivatives disagree by more
        than ``tol * (1 + |X|)``.
    """
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    if not np.all(patch.in_domain(u, v)):
        raise DomainError(f"point outside the domain of patch {patch.name or '<anonymous>'}")
    J = patch.evaluator(u, v)
    if validate:
        F = fd_jet(patch.position, u, v)
        scale = 1.0 + np.max(np.abs(J.X), initial=0.0)
        for name, a, b in zip(("X_u", "X_v", "X_uu", "X_uv", "X_vv"), J.fields()[1:], F.fields()[1:]):
            err = np.max(np.abs(a - b), initial=0.0)
            if err > tol * scale:
                raise JetMismatchError(f"{name}: analytic vs finite difference differ by {err:.3e}")
    return J


def _richardson(d):
    """One Richardson step for a central scheme: ``(4 D(h/2) - D(h)) / 3``."""
    return (4.0 * d(0.5) - d(1.0)) / 3.0


def fd_jet(position: Callable, u, v, h=None) -> Jet:
    """Central-difference jet with one Richardson step, ``h = 1e-4 (1 + |u|)`` by default."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if h is None:
        h = 1e-4 * (1.0 + np.maximum(np.abs(u), np.abs(v)))
    h = np.asarray(h, dtype=float)[..., None]
    hh = h[..., 0]
    X = position(u, v)

    def P(du, dv):
        return position(u + du, v + dv)

    Xu = _richardson(lambda s: (P(s * hh, 0) - P(-s * hh, 0)) / (2 * s * h))
    Xv = _richardson(lambda s: (P(0, s * hh) - P(0, -s * hh)) / (2 * s * h))
    Xuu = _richardson(lambda s: (P(s * hh, 0) - 2 * X + P(-s * hh, 0)) / (s * h) ** 2)
    Xvv = _richardson(lambda s: (P(0, s * hh) - 2 * X + P(0, -s * hh)) / (s * h) ** 2)
    Xuv = _richardson(lambda s: (P(s * hh, s * hh) - P(s * hh, -s * hh) - P(-s * hh, s * hh)
                                 + P(-s * hh, -s * hh)) / (4 * (s * h) ** 2))
    return Jet(X, Xu, Xv, Xuu, Xuv, Xvv)


def fd_derivative(f: Callable, x, order: int = 1, h=None):
    """Central finite difference of a scalar function with one Richardson step."""
    x = np.asarray(x, dtype=float)
    if h is None:
        h = 1e-4 * (1.0 + np.abs(x))
    if order == 1:
        return _richardson(lambda s: (f(x + s * h) - f(x - s * h)) / (2 * s * h))
    if order == 2:
        fx = f(x)
        return _richardson(lambda s: (f(x + s * h) - 2 * fx + f(x - s * h)) / (s * h) ** 2)
    raise ValueError("order must be 1 or 2")


# ---------------------------------------------------------------- forms

@dataclass(frozen=True)
class FirstForm:
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray

    @property
    def det(self):
        return self.E * self.G - self.F * self.F

    def matrix(self):
        return np.stack([np.stack([self.E, self.F], -1), np.stack([self.F, self.G], -1)], -2)


@dataclass(frozen=True)
class SecondForm:
    e: np.ndarray
    f: np.ndarray
    g: np.ndarray

    def matrix(self):
        return np.stack([np.stack([self.e, self.f], -1), np.stack([self.f, self.g], -1)], -2)


@dataclass(frozen=True)
class ShapeOperator:
    """Matrix of the Weingarten map in the coordinate basis ``{d/du, d/dv}``."""

    a11: np.ndarray
    a12: np.ndarray
    a21: np.ndarray
    a22: np.ndarray

    def matrix(self):
        return np.stack([np.stack([self.a11, self.a12], -1), np.stack([self.a21, self.a22], -1)], -2)

    @classmethod
    def from_matrix(cls, M) -> "ShapeOperator":
        M = np.asarray(M)
        return cls(M[..., 0, 0], M[..., 0, 1], M[..., 1, 0], M[..., 1, 1])

    @property
    def trace(self):
        return self.a11 + self.a22

    @property
    def det(self):
        return self.a11 * self.a22 - self.a12 * self.a21


def first_form(J: Jet, signature: MetricSignature | None = None) -> FirstForm:
    """Induced metric ``E = <X_u, X_u>``, ``F = <X_u, X_v>``, ``G = <X_v, X_v>``.

    Raises
    ------
    DegenerateError
        If ``EG - F^2`` vanishes (relative to ``E^2 + F^2 + G^2``) or, when a
        signature is declared, has the wrong sign.
    """
    E = lorentz_dot(J.Xu, J.Xu)
    F = lorentz_dot(J.Xu, J.Xv)
    G = lorentz_dot(J.Xv, J.Xv)
    det = E * G - F * F
    if np.any(np.abs(det) <= _DEGENERACY_RTOL * (E * E + F * F + G * G)):
        raise DegenerateError("degenerate induced metric (EG - F^2 = 0)")
    if signature is not None and np.any(np.sign(det) != signature.sigma):
        raise DegenerateError(f"metric sign does not match declared signature {signature.kind}")
    return FirstForm(E, F, G)


def unit_normal(J: Jet, signature: MetricSignature | None = None) -> np.ndarray:
    """``N = X_u x X_v / sqrt|<X_u x X_v, X_u x X_v>|``; then ``<N, N> = -sigma``."""
    n = lorentz_cross(J.Xu, J.Xv)
    q = lorentz_dot(n, n)
    # <n, n> = -(EG - F^2); compare against the metric's own scale, which stays
    # meaningful under large boosts where Euclidean norms do not
    E, F, G = lorentz_dot(J.Xu, J.Xu), lorentz_dot(J.Xu, J.Xv), lorentz_dot(J.Xv, J.Xv)
    if np.any(np.abs(q) <= _DEGENERACY_RTOL * (E * E + F * F + G * G)):
        raise DegenerateError("X_u x X_v is lightlike or zero")
    if signature is not None and np.any(np.sign(q) != -signature.sigma):
        raise DegenerateError(f"normal causal character does not match declared signature {signature.kind}")
    return n / np.sqrt(np.abs(q))[..., None]


def second_form(J: Jet, N: np.ndarray) -> SecondForm:
    return SecondForm(lorentz_dot(J.Xuu, N), lorentz_dot(J.Xuv, N), lorentz_dot(J.Xvv, N))


def shape_operator(J: Jet, signature: MetricSignature | None = None) -> ShapeOperator:
    """Weingarten matrix ``A = I^{-1} II`` with the normal of :func:`unit_normal`."""
    I = first_form(J, signature)
    II = second_form(J, unit_normal(J, signature))
    d = I.det
    return ShapeOperator(
        (I.G * II.e - I.F * II.f) / d,
        (I.G * II.f - I.F * II.g) / d,
        (I.E * II.f - I.F * II.e) / d,
        (I.E * II.g - I.F * II.f) / d,
    )


def self_adjointness_defect(J: Jet, A: ShapeOperator) -> np.ndarray:
    """``|(I A)_12 - (I A)_21|``; zero for a genuine shape operator."""
    I = first_form(J)
    return np.abs((I.E * A.a12 + I.F * A.a22) - (I.F * A.a11 + I.G * A.a21))


@dataclass(frozen=True)
class CurvatureSummary:
    """Mean and Gauss curvature plus principal curvatures where they are real.

    ``lambda1 >= lambda2``; both are NaN where ``diagonalizable`` is False.
    """

    H: np.ndarray
    K: np.ndarray
    lambda1: np.ndarray
    lambda2: np.ndarray
    diagonalizable: np.ndarray
    umbilic: np.ndarray


def _sigma(signature) -> int:
    return signature.sigma if isinstance(signature, MetricSignature) else int(signature)


def curvature_summary(A: ShapeOperator, signature) -> CurvatureSummary:
    """``H = -sigma tr(A) / 2``, ``K = -sigma det(A)`` and the eigen-structure of ``A``."""
    sigma = _sigma(signature)
    tr = A.trace
    det = A.det
    half = 0.5 * (A.a11 - A.a22)
    disc = half * half + A.a12 * A.a21
    scale = 1.0 + np.abs(A.a11) + np.abs(A.a22) + np.abs(A.a12) + np.abs(A.a21)
    tiny = (1e-12 * scale) ** 2
    offdiag = np.maximum(np.abs(A.a12), np.abs(A.a21))
    repeated = np.abs(disc) <= tiny
    diag_ok = (disc > tiny) | (repeated & (offdiag <= 1e-9 * scale) & (np.abs(half) <= 1e-9 * scale))
    root = np.sqrt(np.where(disc > 0, disc, 0.0))
    l1 = np.where(diag_ok, 0.5 * tr + root, np.nan)
    l2 = np.where(diag_ok, 0.5 * tr - root, np.nan)
    umb = diag_ok & (np.abs(l1 - l2) <= UMBILIC_RTOL * (1.0 + np.abs(l1) + np.abs(l2)))
    return CurvatureSummary(-sigma * tr / 2.0, -sigma * det, l1, l2, diag_ok, umb)


def curvatures(patch: SurfacePatch, u, v) -> CurvatureSummary:
    J = jet(patch, u, v)
    sig = patch.signature
    A = shape_operator(J, sig)
    if sig is None:
        sigma = int(np.sign(np.ravel(first_form(J).det)[0]))
    else:
        sigma = sig.sigma
    return curvature_summary(A, sigma)


def skew_curvature(H, K, sigma):
    """``sqrt(H^2 + sigma K)``, half the gap between principal curvatures.

    Raises
    ------
    ValueError
        If the radicand is negative (complex principal curvatures).
    """
    r = np.asarray(H, dtype=float) ** 2 + _sigma(sigma) * np.asarray(K, dtype=float)
    if np.any(r < -1e-12 * (1.0 + np.asarray(H) ** 2 + np.abs(K))):
        raise ValueError("negative radicand: principal curvatures are complex")
    return np.sqrt(np.maximum(r, 0.0))


# ---------------------------------------------------------------- twist

@dataclass(frozen=True)
class TwistReport:
    """Twist angle samples along ``u = u_fixed`` and their linear fit ``alpha = a v + c``."""

    u_fixed: float
    v: np.ndarray
    alpha: np.ndarray
    slope_a: float
    intercept_c: float
    structure_residual: float
    fit_residual: float
    lambda1: float
    lambda2: float
    rotation_kind: RotationKind

    @property
    def alpha_samples(self):
        return list(zip(self.v.tolist(), self.alpha.tolist()))


def conjugated_form(lambda1, lambda2, alpha, kind) -> np.ndarray:
    """``Phi_{-alpha} diag(lambda1, lambda2) Phi_alpha`` for the rotation kind ``kind``."""
    shape = np.broadcast(np.asarray(lambda1), np.asarray(lambda2), np.asarray(alpha)).shape
    alpha = np.broadcast_to(alpha, shape)
    R = rotation(kind, alpha)
    D = np.zeros(shape + (2, 2))
    D[..., 0, 0] = lambda1
    D[..., 1, 1] = lambda2
    return R.inverse().matrix @ D @ R.matrix


def _default_kind(signature: MetricSignature) -> RotationKind:
    return RotationKind.EUCLIDEAN if signature.is_spacelike else RotationKind.HYPERBOLIC


def twist_angles(A: ShapeOperator, kind) -> np.ndarray:
    """Pointwise twist angle (principal branch) of shape-operator samples."""
    kind = RotationKind(kind)
    if kind is RotationKind.EUCLIDEAN:
        return -0.5 * np.arctan2(2.0 * A.a12, A.a11 - A.a22)
    x = 2.0 * A.a21 / (A.a11 - A.a22)
    if np.any(~np.isfinite(x)) or np.any(np.abs(x) >= 1.0):
        raise StructureError("shape operator is not a hyperbolic conjugate of a diagonal matrix")
    return -0.5 * np.arctanh(x)


def extract_twist(patch: SurfacePatch, u_fixed: float, v_grid, signature: MetricSignature | None = None,
                  kind=None, branch_hint: float | None = None) -> TwistReport:
    """Recover ``alpha(v)`` with ``A = Phi_{-alpha} diag(lambda1, lambda2) Phi_alpha`` along a line.

    The euclidean angle is unwrapped in ``v``; at the sample closest to
    ``v = 0`` the branch with ``lambda1 >= lambda2`` is used unless
    ``branch_hint`` asks for the quarter-turn branch nearest to it.

    Raises
    ------
    StructureError
        On an umbilic line or when no hyperbolic conjugation exists.
    """
    signature = signature or patch.signature
    if signature is None:
        raise ValueError("extract_twist needs a declared or explicit signature")
    kind = RotationKind(kind) if kind is not None else _default_kind(signature)
    v = np.asarray(v_grid, dtype=float)
    u = np.full_like(v, float(u_fixed))
    A = shape_operator(jet(patch, u, v), signature)
    M = A.matrix()
    scale = 1.0 + np.max(np.abs(M))
    spread = np.maximum(np.abs(A.a11 - A.a22), np.maximum(np.abs(A.a12), np.abs(A.a21)))
    if np.all(spread <= UMBILIC_RTOL * scale):
        raise StructureError(f"umbilic line u = {u_fixed}")
    ref = int(np.argmin(np.abs(v)))
    if kind is RotationKind.EUCLIDEAN:
        theta = np.unwrap(np.arctan2(-2.0 * A.a12, A.a11 - A.a22))
        theta = theta - 2 * np.pi * np.round((theta[ref] - np.angle(np.exp(1j * theta[ref]))) / (2 * np.pi))
        alpha = 0.5 * theta
        if branch_hint is not None:
            alpha = alpha + 0.5 * np.pi * np.round((branch_hint - alpha[ref]) / (0.5 * np.pi))
    else:
        alpha = twist_angles(A, kind)
    R = rotation(kind, alpha)
    D = R.matrix @ M @ R.inverse().matrix
    l1 = float(np.mean(D[..., 0, 0]))
    l2 = float(np.mean(D[..., 1, 1]))
    structure = float(np.max(np.abs(M - conjugated_form(l1, l2, alpha, kind))))
    if v.size >= 2:
        slope, intercept = np.polyfit(v, alpha, 1)
        fit = float(np.max(np.abs(alpha - (slope * v + intercept))))
    else:
        slope, intercept, fit = np.nan, float(alpha[0]), 0.0
    return TwistReport(float(u_fixed), v, alpha, float(slope), float(intercept), structure, fit, l1, l2, kind)


# ---------------------------------------------------------------- intrinsic equations

def levi_civita_coeffs(rho, drho, signature: MetricSignature):
    """Connection coefficients in the orthonormal frame ``U = d_u / rho``, ``V = d_v / rho``.

    Returns ``(<nabla_U U>, <nabla_U V>, <nabla_V U, V>, <nabla_V V, U>)``
    in the form ``(0, 0, rho'/rho^2, -delta eps rho'/rho^2)``.
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho == 0):
        raise DegenerateError("rho vanishes")
    k = np.asarray(drho, dtype=float) / rho ** 2
    z = np.zeros_like(k)
    return z, z, k, -signature.sigma * k


CODAZZI_SYSTEMS = {
    (1, RotationKind.EUCLIDEAN): "spacelike-euclidean",
    (-1, RotationKind.HYPERBOLIC): "timelike-hyperbolic",
    (-1, RotationKind.EUCLIDEAN): "timelike-euclidean",
    (1, RotationKind.HYPERBOLIC): "spacelike-hyperbolic",
}


@dataclass(frozen=True)
class CompatibilityResiduals:
    """Gauss and Codazzi residuals on a ``(u, v)`` grid.

    ``codazzi`` holds the two equations of the system selected by the causal
    character and the twist rotation kind; ``codazzi_raw`` the two
    coordinate Codazzi equations they are equivalent to.  The ``*_scale``
    arrays hold the sum of absolute values of each equation's elementary
    terms; dividing by them gives scale-free residuals that stay meaningful
    where the curvatures blow up near a degenerate line.
    """

    system: str
    gauss: np.ndarray
    codazzi: np.ndarray
    codazzi_raw: np.ndarray
    gauss_scale: np.ndarray
    codazzi_scale: np.ndarray
    codazzi_raw_scale: np.ndarray

    @property
    def max_gauss(self) -> float:
        return float(np.max(np.abs(self.gauss)))

    @property
    def max_codazzi(self) -> float:
        return float(np.max(np.abs(self.codazzi)))

    @property
    def max_codazzi_raw(self) -> float:
        return float(np.max(np.abs(self.codazzi_raw)))

    @staticmethod
    def _rel(r, s):
        # where every term of an equation vanishes, compare with a floor tied to the term size along
        # the same u-line (axis -2 of the Codazzi arrays) or, for the Gauss array, on the whole grid;
        # a small share of the global size covers lines on which all terms vanish at once
        glob = np.max(s)
        ref = np.max(s, axis=(0, 2), keepdims=True) if np.ndim(s) == 3 else glob
        floor = RESIDUAL_FLOOR * (ref + RESIDUAL_FLOOR ** 2 * glob) + np.finfo(float).tiny
        return float(np.max(np.abs(r) / (s + floor)))

    @property
    def rel_gauss(self) -> float:
        return self._rel(self.gauss, self.gauss_scale)

    @property
    def rel_codazzi(self) -> float:
        return self._rel(self.codazzi, self.codazzi_scale)

    @property
    def rel_codazzi_raw(self) -> float:
        return self._rel(self.codazzi_raw, self.codazzi_raw_scale)


def _combine(*terms):
    total = sum(terms)
    return total, sum(np.abs(t) for t in terms)


def compatibility_residuals(lambda1, lambda2, rho, alpha, signature: MetricSignature, kind, u, v,
                            derivatives: dict | None = None) -> CompatibilityResiduals:
    """Evaluate the intrinsic compatibility equations for rotational data.

    Parameters
    ----------
    lambda1, lambda2, rho : callables of ``u``
    alpha : callable of ``v``
    kind : RotationKind
        Rotation used in the twist conjugation.
    u, v : 1-D arrays
        Grid axes; Codazzi arrays have shape ``(2, len(u), len(v))``, the
        Gauss array shape ``(len(u),)``.
    derivatives : dict, optional
        Analytic callables ``{"lambda1", "lambda2", "rho", "rho2", "alpha"}``
        for the first (``rho2``: second) derivatives; missing entries use
        finite differences.
    """
    kind = RotationKind(kind)
    derivatives = derivatives or {}
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)

    def d(name, f, x, order=1):
        g = derivatives.get(name)
        return np.asarray(g(x), dtype=float) if g is not None else fd_derivative(f, x, order)

    L1, L2, P = (np.asarray(f(u), dtype=float)[:, None] for f in (lambda1, lambda2, rho))
    dL1 = d("lambda1", lambda1, u)[:, None]
    dL2 = d("lambda2", lambda2, u)[:, None]
    dP = d("rho", rho, u)[:, None]
    ddP = d("rho2", rho, u, 2)
    al = np.asarray(alpha(v), dtype=float)[None, :]
    dal = d("alpha", alpha, v)[None, :]
    eps = signature.epsilon
    sigma = signature.sigma

    p0, p1 = P[:, 0], dP[:, 0]
    gauss, gscale = _combine(L1[:, 0] * L2[:, 0], -eps * ddP / p0 ** 3, eps * p1 ** 2 / p0 ** 4)

    if kind is RotationKind.EUCLIDEAN:
        s, c = np.sin(al), np.cos(al)
        s2, c2 = np.sin(2 * al), np.cos(2 * al)
        if sigma == 1:
            r1 = _combine(s2 * P * dL1, s2 * P * dL2)
            r2 = _combine(-dL1 * s ** 2, dL2 * c ** 2, L1 * dal, -L2 * dal, -L1 * dP / P, L2 * dP / P)
        else:
            r1 = _combine(s2 * P * dL2, -s2 * P * dL1, 2 * s2 * P * dal * L1, -2 * s2 * P * dal * L2)
            r2 = _combine(dL1 * s ** 2, dL2 * c ** 2, c2 * dal * L1, -c2 * dal * L2,
                          -c2 * L1 * dP / P, c2 * L2 * dP / P)
    else:
        sh, ch = np.sinh(al), np.cosh(al)
        if sigma == -1:
            r1 = _combine(np.sinh(2 * al) * P * dL1, np.sinh(2 * al) * P * dL2)
            r2 = _combine(sh ** 2 * dL1, ch ** 2 * dL2, L1 * dal, -L2 * dal, -L1 * dP / P, L2 * dP / P)
        else:
            k = ch * sh * P
            c2 = np.cosh(2 * al)
            r1 = _combine(2 * k * dal * L2, -2 * k * dal * L1, k * dL1, -k * dL2)
            r2 = _combine(-P * sh ** 2 * dL1, P * ch ** 2 * dL2, c2 * P * dal * L1, -c2 * P * dal * L2,
                          -c2 * dP * L1, c2 * dP * L2)

    # coordinate form: A(u, v) = Phi_{-alpha} diag Phi_alpha, differentiated by the chain rule
    M = conjugated_form(L1, L2, al, kind)
    Mu = conjugated_form(dL1, dL2, al, kind)
    if kind is RotationKind.EUCLIDEAN:
        gen = np.array([[0.0, -1.0], [1.0, 0.0]])
    else:
        gen = np.array([[0.0, 1.0], [1.0, 0.0]])
    # d/dalpha (Phi_{-a} D Phi_a) = Phi_{-a} D Phi_a gen - gen Phi_{-a} D Phi_a
    Mv = dal[..., None, None] * (M @ gen - gen @ M)
    a11, a12, a21, a22 = M[..., 0, 0], M[..., 0, 1], M[..., 1, 0], M[..., 1, 1]
    w1 = _combine(P * Mu[..., 0, 1], -P * Mv[..., 0, 0], sigma * dP * a21, dP * a12)
    w2 = _combine(P * Mu[..., 1, 1], -P * Mv[..., 1, 0], -dP * a11, dP * a22)

    return CompatibilityResiduals(
        CODAZZI_SYSTEMS[(sigma, kind)], gauss, np.stack([r1[0], r2[0]]), np.stack([w1[0], w2[0]]),
        gscale, np.stack([r1[1], r2[1]]), np.stack([w1[1], w2[1]]))


@dataclass(frozen=True)
class IntrinsicProfile:
    """Kernel-measured rotational data of a patch: ``lambda_i(u)``, ``rho(u)`` and ``alpha(v)``."""

    lambda1: Callable
    lambda2: Callable
    rho: Callable
    alpha: Callable
    kind: RotationKind
    signature: MetricSignature


def intrinsic_profile(patch: SurfacePatch, twist: TwistReport, v_ref: float | None = None) -> IntrinsicProfile:
    """Build callables for the intrinsic data, measured by the kernel on the patch itself.

    ``alpha`` is the fitted linear twist; ``lambda_i(u)`` diagonalize the
    shape operator at ``(u, v_ref)`` with that twist; ``rho(u) = sqrt|E|``.
    """
    sig = patch.signature
    kind = twist.rotation_kind
    v0 = twist.v[int(np.argmin(np.abs(twist.v)))] if v_ref is None else float(v_ref)
    a, c = twist.slope_a, twist.intercept_c
    alpha0 = a * v0 + c

    def diag(u):
        u = np.asarray(u, dtype=float)
        A = shape_operator(jet(patch, u, np.full_like(u, v0)), sig).matrix()
        R = rotation(kind, np.full(u.shape, alpha0))
        return R.matrix @ A @ R.inverse().matrix

    def rho(u):
        u = np.asarray(u, dtype=float)
        return np.sqrt(np.abs(first_form(jet(patch, u, np.full_like(u, v0))).E))

    return IntrinsicProfile(lambda u: diag(u)[..., 0, 0], lambda u: diag(u)[..., 1, 1], rho,
                            lambda v: a * np.asarray(v, dtype=float) + c, kind, sig)
