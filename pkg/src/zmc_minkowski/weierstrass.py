"""Weierstrass representation of spacelike and timelike ZMC surfaces.

With ``phi = dX/dz`` in (para)conformal coordinates ``z = u + unit v`` the
surface is ``X = 2 Re int phi dz``.  Spacelike data ``(g, omega)`` give

    phi = ((1 + g^2) / 2, i (1 - g^2) / 2, g) f,

and timelike data give

    phi = (g / 2, (1 - g^2) / 4, -tau (1 + g^2) / 4) f,

where ``omega = f dz``.  All functions handled here are finite sums of
terms ``c z^k e^{p z}``, which keeps derivatives, residues and (when no
logarithm appears) antiderivatives exact.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bjorling import UntwistedParams, base_curve
from .catalog import FamilyParams
from .errors import DomainError
from .hypernumber import COMPLEX, PARACOMPLEX, HyperNumber, hvec, hyper_exp, hdot
from .kernel import Jet, SurfacePatch
from .minkowski import MetricSignature
from .quadrature import segment_integral

KIND_OF_UNIT = {COMPLEX: "complex", PARACOMPLEX: "paracomplex"}


# ---------------------------------------------------------------- term sums

@dataclass(frozen=True)
class HTerm:
    """``coef * z**k * exp(p z)`` with a scalar hypernumber coefficient."""

    coef: HyperNumber
    k: int = 0
    p: float = 0

    def __call__(self, z: HyperNumber) -> HyperNumber:
        val = self.coef.as_float() * (z * 0.0 + 1.0)
        if self.k:
            val = val * (z ** self.k)
        if self.p:
            val = val * hyper_exp(z * float(self.p))
        return val


def _is_zero(c: HyperNumber) -> bool:
    return c.re == 0 and c.im == 0


class HSeries:
    """Finite sum of :class:`HTerm` with like terms merged."""

    __slots__ = ("terms", "unit_square")

    def __init__(self, terms, unit_square: int):
        merged: dict = {}
        for t in terms:
            if t.coef.unit_square != unit_square:
                raise ValueError("mixed unit squares")
            key = (int(t.k), t.p)
            merged[key] = merged[key] + t.coef if key in merged else t.coef
        self.terms = tuple(HTerm(c, k, p) for (k, p), c in sorted(merged.items(), key=lambda kv: (kv[0][1], kv[0][0]))
                           if not _is_zero(c))
        self.unit_square = unit_square

    # constructors
    @classmethod
    def constant(cls, c, unit_square: int) -> "HSeries":
        return cls([HTerm(_scalar(c, unit_square))], unit_square)

    @classmethod
    def monomial(cls, c, k: int, unit_square: int) -> "HSeries":
        return cls([HTerm(_scalar(c, unit_square), k, 0)], unit_square)

    @classmethod
    def exponential(cls, c, p: float, unit_square: int) -> "HSeries":
        return cls([HTerm(_scalar(c, unit_square), 0, p)], unit_square)

    # algebra
    def __add__(self, other):
        other = other if isinstance(other, HSeries) else HSeries.constant(other, self.unit_square)
        return HSeries(self.terms + other.terms, self.unit_square)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        other = other if isinstance(other, HSeries) else HSeries.constant(other, self.unit_square)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, HSeries):
            return HSeries([HTerm(a.coef * b.coef, a.k + b.k, a.p + b.p) for a in self.terms for b in other.terms],
                           self.unit_square)
        c = _scalar(other, self.unit_square)
        return HSeries([HTerm(t.coef * c, t.k, t.p) for t in self.terms], self.unit_square)

    __rmul__ = __mul__

    def __call__(self, z: HyperNumber) -> HyperNumber:
        out = z * 0.0
        for t in self.terms:
            out = out + t(z)
        return out

    def derivative(self) -> "HSeries":
        out = []
        for t in self.terms:
            if t.k:
                out.append(HTerm(t.coef * t.k, t.k - 1, t.p))
            if t.p:
                out.append(HTerm(t.coef * t.p, t.k, t.p))
        return HSeries(out, self.unit_square)

    def antiderivative(self) -> "HSeries":
        """Exact primitive for pure monomials (``k != -1``) and pure exponentials.

        Raises
        ------
        ValueError
            For a ``z^{-1}`` term (logarithm) or a mixed ``z^k e^{pz}`` term.
        """
        out = []
        for t in self.terms:
            if t.p == 0:
                if t.k == -1:
                    raise ValueError("z^-1 has a logarithmic primitive")
                out.append(HTerm(t.coef * Fraction(1, t.k + 1) if _exact(t.coef) else t.coef * (1.0 / (t.k + 1)),
                                 t.k + 1, 0))
            elif t.k == 0:
                out.append(HTerm(t.coef * (1.0 / t.p), 0, t.p))
            else:
                raise ValueError("mixed polynomial-exponential terms are not supported")
        return HSeries(out, self.unit_square)

    # monomial bookkeeping
    @property
    def is_laurent(self) -> bool:
        return all(t.p == 0 for t in self.terms)

    def monomials(self):
        """``[(coef, exponent)]`` for Laurent polynomials."""
        if not self.is_laurent:
            raise ValueError("not a Laurent polynomial")
        return [(t.coef, t.k) for t in self.terms]

    def exponents(self):
        return sorted(t.k for t in self.terms if t.p == 0)

    def residue(self) -> HyperNumber:
        """Coefficient of ``z^{-1}``."""
        for t in self.terms:
            if t.p == 0 and t.k == -1:
                return t.coef
        return HyperNumber(Fraction(0), Fraction(0), self.unit_square)

    def __repr__(self):
        return " + ".join(f"({t.coef.re}{t.coef.im:+}u) z^{t.k} e^({t.p}z)" for t in self.terms) or "0"


def _exact(c: HyperNumber) -> bool:
    return isinstance(c.re, numbers.Rational) and isinstance(c.im, numbers.Rational)


def _scalar(c, unit_square) -> HyperNumber:
    if isinstance(c, HyperNumber):
        return c
    if isinstance(c, numbers.Rational) and not isinstance(c, bool):
        return HyperNumber(Fraction(c), Fraction(0), unit_square)
    return HyperNumber(float(c), 0.0, unit_square)


# ---------------------------------------------------------------- data and phi

@dataclass(frozen=True)
class WeierstrassData:
    """Pair ``(g, omega = omega_coeff dz)`` for a complex or paracomplex representation."""

    unit_square: int
    g: HSeries
    omega_coeff: HSeries
    descriptor: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return KIND_OF_UNIT[self.unit_square]


@dataclass(frozen=True)
class HolomorphicDerivative:
    """``phi = (phi1, phi2, phi3)`` as term sums."""

    components: tuple
    unit_square: int

    def __call__(self, z: HyperNumber) -> HyperNumber:
        return hvec(*(c(z) for c in self.components))

    def derivative(self) -> "HolomorphicDerivative":
        return HolomorphicDerivative(tuple(c.derivative() for c in self.components), self.unit_square)

    def conformality_defect(self, z: HyperNumber) -> float:
        """``max |phi1^2 + phi2^2 - phi3^2|`` (both hypernumber parts) at ``z``."""
        q = hdot(self(z), self(z))
        return float(max(np.max(np.abs(q.re)), np.max(np.abs(q.im))))

    @property
    def signature(self) -> MetricSignature:
        return MetricSignature.spacelike() if self.unit_square == COMPLEX else MetricSignature.timelike_i()


def _const(re, im, us):
    return HSeries.constant(HyperNumber(re, im, us), us)


def phi_from_data(data: WeierstrassData) -> HolomorphicDerivative:
    """Null derivative ``phi`` from ``(g, omega)``; exact when the data are exact."""
    us, g, f = data.unit_square, data.g, data.omega_coeff
    g2 = g * g
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    if us == COMPLEX:
        i_half = HyperNumber(Fraction(0), half, us)
        comps = ((g2 + 1) * f * half, (1 - g2) * f * i_half, g * f)
    else:
        tau_quarter = HyperNumber(Fraction(0), -quarter, us)
        comps = (g * f * half, (1 - g2) * f * quarter, (g2 + 1) * f * tau_quarter)
    return HolomorphicDerivative(comps, us)


def recover_data(phi: HolomorphicDerivative, z: HyperNumber):
    """Values of ``(g, omega_coeff)`` at ``z`` recovered from ``phi``.

    Spacelike: ``g = phi3 / (phi1 - i phi2)``, ``omega = phi1 - i phi2``.
    Timelike: ``g = phi1 / (phi2 - tau phi3)``, ``omega = 2 (phi2 - tau phi3)``.
    """
    p1, p2, p3 = (c(z) for c in phi.components)
    e = HyperNumber(0.0, 1.0, phi.unit_square)
    if phi.unit_square == COMPLEX:
        w = p1 - e * p2
        return p3 / w, w
    w = p2 - e * p3
    return p1 / w, w * 2


def weierstrass_from_family(params) -> WeierstrassData:
    """Closed-form data of a twisted family (or an untwisted ``a = 0`` surface).

    spacelike: ``g = e^{-Bz} / A``, ``omega = A e^{(2a+B)z} / (2B) dz``;
    timelike_I: ``g = A e^{Bz}``, ``omega = e^{(2a-B)z} / (AB) dz``;
    timelike_II: both of the timelike_I expressions multiplied by ``tau``.
    """
    a, A, B = params.a, params.A, params.B
    if params.kind == "spacelike":
        us = COMPLEX
        g = HSeries.exponential(1.0 / A, -B, us)
        f = HSeries.exponential(A / (2 * B), 2 * a + B, us)
    else:
        us = PARACOMPLEX
        c = HyperNumber(0.0, 1.0, us) if params.kind == "timelike_II" else HyperNumber(1.0, 0.0, us)
        g = HSeries.exponential(c * A, B, us)
        f = HSeries.exponential(c * (1.0 / (A * B)), 2 * a - B, us)
    return WeierstrassData(us, g, f, {"type": "family", **params.as_dict()})


# ---------------------------------------------------------------- integration

def _pole_on_segment(phi: HolomorphicDerivative, za: HyperNumber, zb: HyperNumber) -> bool:
    if not any(t.k < 0 for c in phi.components for t in c.terms):
        return False
    ar, ai = np.asarray(za.re, float), np.asarray(za.im, float)
    br, bi = np.asarray(zb.re, float), np.asarray(zb.im, float)
    if phi.unit_square == COMPLEX:
        dr, di = br - ar, bi - ai
        L2 = dr * dr + di * di
        t = np.clip(np.where(L2 > 0, -(ar * dr + ai * di) / np.where(L2 > 0, L2, 1), 0), 0, 1)
        dist = np.hypot(ar + t * dr, ai + t * di)
        return bool(np.any(dist <= 1e-12))
    # paracomplex: singular on the null lines re = +-im through 0
    for s in (1.0, -1.0):
        pa, pb = ar + s * ai, br + s * bi
        if np.any(pa * pb <= 0):
            return True
    return False


def integrate_phi(phi: HolomorphicDerivative, u, v, z0=None, x0=None, tol: float = 1e-11) -> np.ndarray:
    """``X(z) = x0 + 2 Re int_{z0}^{z} phi(w) dw`` along straight segments.

    ``z0`` defaults to the real point ``(u, 0)`` below each target, and may be
    a HyperNumber (broadcast against the grid).  ``x0`` is the value at ``z0``.

    Raises
    ------
    DomainError
        If a segment passes through a pole (complex) or crosses a null line
        through a pole (paracomplex).
    """
    us = phi.unit_square
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    zb = HyperNumber(u, v, us)
    za = HyperNumber(u, np.zeros_like(v), us) if z0 is None else HyperNumber(
        np.broadcast_to(np.asarray(z0.re, float), u.shape), np.broadcast_to(np.asarray(z0.im, float), u.shape), us)
    if _pole_on_segment(phi, za, zb):
        raise DomainError("integration path meets a singularity of phi")
    I = segment_integral(phi, za, zb, tol=tol)
    X = 2.0 * np.asarray(I.re)
    if x0 is not None:
        X = X + np.asarray(x0, dtype=float)
    return X


def weierstrass_jet(phi: HolomorphicDerivative, u, v, x_of) -> Jet:
    """Jet with ``X = x_of(u, v)`` and derivatives ``X_u = 2 Re phi``, ``X_v = 2 Re(unit phi)``."""
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    z = HyperNumber(u, v, phi.unit_square)
    e = HyperNumber(0.0, 1.0, phi.unit_square)
    p, dp = phi(z), phi.derivative()(z)
    re = lambda w: 2.0 * np.asarray(w.re)
    return Jet(x_of(u, v), re(p), re(e * p), re(dp), re(e * dp), phi.unit_square * re(dp))


def weierstrass_patch(phi: HolomorphicDerivative, z0: HyperNumber, x0=None, signature: MetricSignature | None = None,
                      name: str = "weierstrass", tol: float = 1e-11) -> SurfacePatch:
    """Patch ``X = x0 + 2 Re int_{z0}^z phi`` (straight segments from the fixed point ``z0``)."""
    x0 = np.zeros(3) if x0 is None else np.asarray(x0, dtype=float)

    def ev(u, v):
        return weierstrass_jet(phi, u, v, lambda uu, vv: integrate_phi(phi, uu, vv, z0, x0, tol))

    return SurfacePatch(ev, signature or phi.signature, name=name)


def reconstruct_family(params, u, v, tol: float = 1e-11) -> np.ndarray:
    """``X(u, v) = c(u) + 2 Re int_u^{u + unit v} phi``: the constant is fixed by ``X(u, 0) = c(u)``."""
    phi = phi_from_data(weierstrass_from_family(params))
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    return integrate_phi(phi, u, v, None, base_curve(params, u).c, tol)


def family_patch(params, tol: float = 1e-11) -> SurfacePatch:
    phi = phi_from_data(weierstrass_from_family(params))

    def ev(u, v):
        return weierstrass_jet(phi, u, v, lambda uu, vv: reconstruct_family(params, uu, vv, tol))

    return SurfacePatch(ev, params.signature, tuple(params.degenerate_u), name="weierstrass-family")


# ---------------------------------------------------------------- integer families

@dataclass(frozen=True)
class IntegerFamily:
    """``E_s(n, m)``: ``g = z^n``, ``omega = z^{-n-m-1} dz``; ``E_t(n, m)``: ``g = z^n``, ``omega = z^{m-n-1} dz``."""

    n: int
    m: int
    kind: str = "spacelike"

    def __post_init__(self):
        if self.kind not in ("spacelike", "timelike"):
            raise ValueError("kind must be 'spacelike' or 'timelike'")
        if int(self.n) != self.n or int(self.m) != self.m:
            raise ValueError("n and m must be integers")
        if self.n == 0:
            raise ValueError("n must be nonzero")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "m", int(self.m))

    @property
    def unit_square(self) -> int:
        return COMPLEX if self.kind == "spacelike" else PARACOMPLEX

    @property
    def label(self) -> str:
        return f"{'es' if self.kind == 'spacelike' else 'et'}:{self.n},{self.m}"

    @classmethod
    def parse(cls, text: str) -> "IntegerFamily":
        """Parse ``es:n,m`` or ``et:n,m``."""
        try:
            prefix, rest = text.split(":", 1)
            n, m = (int(x) for x in rest.split(","))
        except ValueError:
            raise ValueError(f"cannot parse integer family {text!r}; expected es:n,m or et:n,m") from None
        if prefix not in ("es", "et"):
            raise ValueError(f"unknown integer family prefix {prefix!r}")
        return cls(n, m, "spacelike" if prefix == "es" else "timelike")

    def data(self) -> WeierstrassData:
        us = self.unit_square
        k = -self.n - self.m - 1 if self.kind == "spacelike" else self.m - self.n - 1
        return WeierstrassData(us, HSeries.monomial(1, self.n, us), HSeries.monomial(1, k, us),
                               {"type": "integer", "label": self.label})

    def phi(self) -> HolomorphicDerivative:
        return phi_from_data(self.data())


def integer_family_phi(fam: IntegerFamily) -> HolomorphicDerivative:
    return fam.phi()


@dataclass(frozen=True)
class PeriodReport:
    """Residues at ``z = 0`` and the induced real periods or logarithm flags."""

    family: str
    kind: str
    residues: tuple
    real_period_over_pi: tuple | None
    log_terms: tuple

    @property
    def real_period(self):
        """``Re(2 pi i Res)`` per component (complex kind), as floats."""
        if self.real_period_over_pi is None:
            return None
        return tuple(float(c) * math.pi for c in self.real_period_over_pi)

    @property
    def has_periods(self) -> bool:
        return any(self.log_terms)


def residue_period_report(fam: IntegerFamily) -> PeriodReport:
    """Exact residues of ``phi_k dz`` at 0; for complex data ``Re(2 pi i Res) = -2 pi Im(Res)``."""
    phi = fam.phi()
    res = tuple(c.residue() for c in phi.components)
    logs = tuple(not _is_zero(r) for r in res)
    periods = tuple(-2 * Fraction(r.im) for r in res) if fam.kind == "spacelike" else None
    return PeriodReport(fam.label, KIND_OF_UNIT[fam.unit_square], res, periods, logs)


def loop_period(phi: HolomorphicDerivative, radius: float = 1.0, sides: int = 8, tol: float = 1e-13) -> np.ndarray:
    """``Re`` of the loop integral of ``phi dz`` around a regular polygon enclosing 0.

    The polygon is traversed counter-clockwise edge by edge with adaptive
    quadrature, so this is an independent numerical check of the residues.
    The surface ``X = 2 Re int phi`` itself translates by twice this vector.
    """
    if phi.unit_square != COMPLEX:
        raise ValueError("loop periods are defined for complex data only")
    ang = 2 * np.pi * np.arange(sides + 1) / sides
    total = np.zeros(3)
    for k in range(sides):
        za = HyperNumber(radius * math.cos(ang[k]), radius * math.sin(ang[k]))
        zb = HyperNumber(radius * math.cos(ang[k + 1]), radius * math.sin(ang[k + 1]))
        total = total + np.asarray(segment_integral(phi, za, zb, tol=tol).re)
    return total


@dataclass(frozen=True)
class EndReport:
    end: str
    orders: tuple
    k: int
    residues: tuple
    g_injective: bool
    classification: str


def _pole_order_at_zero(series: HSeries) -> int:
    ex = series.exponents()
    return max(0, -min(ex)) if ex else 0


def _pole_order_at_infinity(series: HSeries) -> int:
    # z^e dz = -w^{-e-2} dw with w = 1/z
    ex = series.exponents()
    return max(0, max(ex) + 2) if ex else 0


def end_classification(fam: IntegerFamily) -> tuple:
    """Reports for the ends ``z = 0`` and ``z = infinity``.

    ``k`` is the largest pole order of the ``phi_k dz``.  ``k = 4`` is of
    Enneper type; ``k = 2`` is planar when all residues vanish and of catenoid
    type when some residue is nonzero and ``g`` is injective near the end;
    anything else is reported as unclassified (``k = 0``: not an end).
    """
    phi = fam.phi()
    g_inj = abs(fam.n) == 1
    out = []
    for end, order_fn in (("0", _pole_order_at_zero), ("inf", _pole_order_at_infinity)):
        orders = tuple(order_fn(c) for c in phi.components)
        res = tuple(c.residue() if end == "0" else -c.residue() for c in phi.components)
        k = max(orders)
        nonzero = any(not _is_zero(r) for r in res)
        if k == 0:
            cls = "regular"
        elif k == 4:
            cls = "enneper"
        elif k == 2 and not nonzero:
            cls = "planar"
        elif k == 2 and g_inj:
            cls = "catenoid"
        else:
            cls = "unclassified"
        out.append(EndReport(end, orders, k, res, g_inj, cls))
    return tuple(out)


def log_chart_phi(fam: IntegerFamily) -> HolomorphicDerivative:
    """``phi`` pulled back by ``z = e^{-w}`` (spacelike) or ``z = e^{w}`` (timelike).

    A monomial ``c z^e dz`` becomes ``-c e^{-(e+1) w} dw`` or ``c e^{(e+1) w} dw``.
    """
    phi = fam.phi()
    sgn = -1 if fam.kind == "spacelike" else 1
    comps = []
    for c in phi.components:
        comps.append(HSeries([HTerm(t.coef * sgn, 0, sgn * (t.k + 1)) for t in c.terms], phi.unit_square))
    return HolomorphicDerivative(tuple(comps), phi.unit_square)


def log_chart_family(fam: IntegerFamily):
    """``(params, scale)`` with ``E(n, m) o log-chart = scale * family(params) + const``.

    Spacelike: ``a = m/2, A = 1, B = n`` and ``scale = -2n``; timelike_I:
    the same parameters and ``scale = n``.  ``m = 0`` gives an untwisted surface.
    """
    a = fam.m / 2
    kind = "spacelike" if fam.kind == "spacelike" else "timelike_I"
    params = UntwistedParams(kind, 1.0, float(fam.n)) if fam.m == 0 else FamilyParams(kind, a, 1.0, float(fam.n))
    return params, (-2.0 * fam.n if fam.kind == "spacelike" else float(fam.n))


__all__ = [
    "HTerm", "HSeries", "WeierstrassData", "HolomorphicDerivative", "phi_from_data", "recover_data",
    "weierstrass_from_family", "integrate_phi", "weierstrass_jet", "weierstrass_patch", "reconstruct_family",
    "family_patch", "IntegerFamily", "integer_family_phi", "PeriodReport", "residue_period_report", "loop_period",
    "EndReport", "end_classification", "log_chart_phi", "log_chart_family",
]
