"""Complex (unit^2 = -1) and paracomplex (unit^2 = +1) numbers in one type.

A :class:`HyperNumber` stores real arrays ``re`` and ``im`` plus the square
of its imaginary unit.  Arrays broadcast like numpy arrays, so a single
instance can hold a whole grid of points.  Vector-valued quantities put the
three Minkowski components on a trailing axis (see :func:`hvec`).
"""
from __future__ import annotations

import numbers
from fractions import Fraction

import numpy as np

from .errors import LightlikeCoordinateError

COMPLEX = -1
PARACOMPLEX = 1


def _wrap(x):
    if isinstance(x, (numbers.Rational, float)) and not isinstance(x, bool):
        return x
    if isinstance(x, numbers.Real):
        return float(x)
    return np.asarray(x, dtype=float)


class HyperNumber:
    """``re + unit * im`` with ``unit**2 == unit_square``.

    Parameters
    ----------
    re, im : float, Fraction or array_like
    unit_square : {-1, +1}
        -1 gives the complex numbers, +1 the paracomplex numbers.
    """

    __slots__ = ("re", "im", "unit_square")
    __array_ufunc__ = None  # keep numpy from hijacking ndarray * HyperNumber
    __hash__ = None

    def __init__(self, re, im=0.0, unit_square: int = COMPLEX):
        if unit_square not in (COMPLEX, PARACOMPLEX):
            raise ValueError("unit_square must be -1 (complex) or +1 (paracomplex)")
        object.__setattr__(self, "re", _wrap(re))
        object.__setattr__(self, "im", _wrap(im))
        object.__setattr__(self, "unit_square", int(unit_square))

    def __setattr__(self, name, value):
        raise AttributeError("HyperNumber is immutable")

    # construction helpers
    @classmethod
    def unit(cls, unit_square: int) -> "HyperNumber":
        return cls(0, 1, unit_square)

    @classmethod
    def from_uv(cls, u, v, unit_square: int) -> "HyperNumber":
        """The coordinate ``z = u + unit * v``."""
        return cls(u, v, unit_square)

    def _coerce(self, other) -> "HyperNumber":
        if isinstance(other, HyperNumber):
            if other.unit_square != self.unit_square:
                raise ValueError("cannot mix complex and paracomplex numbers")
            return other
        if isinstance(other, complex):
            raise TypeError("pass HyperNumber, not Python complex")
        return HyperNumber(other, 0, self.unit_square)

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        return HyperNumber(self.re + o.re, self.im + o.im, self.unit_square)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return HyperNumber(self.re - o.re, self.im - o.im, self.unit_square)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return HyperNumber(-self.re, -self.im, self.unit_square)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, HyperNumber):
            if isinstance(other, complex):
                raise TypeError("pass HyperNumber, not Python complex")
            o = _wrap(other)
            return HyperNumber(self.re * o, self.im * o, self.unit_square)
        o = self._coerce(other)
        return HyperNumber(
            self.re * o.re + self.unit_square * self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.unit_square,
        )

    __rmul__ = __mul__

    def conj(self) -> "HyperNumber":
        return HyperNumber(self.re, -self.im, self.unit_square)

    def norm_sq(self):
        """``z * conj(z)``: ``re^2 + im^2`` (complex) or ``re^2 - im^2`` (paracomplex)."""
        return self.re * self.re - self.unit_square * self.im * self.im

    def is_invertible(self, rtol: float = 1e-14):
        n = self.norm_sq()
        if isinstance(n, numbers.Rational):
            return n != 0
        scale = np.asarray(self.re, dtype=float) ** 2 + np.asarray(self.im, dtype=float) ** 2
        return np.abs(n) > rtol * scale

    def reciprocal(self) -> "HyperNumber":
        if not np.all(self.is_invertible()):
            kind = "zero" if self.unit_square == COMPLEX else "zero or lightlike (re^2 = im^2)"
            raise LightlikeCoordinateError(f"division by a non-invertible hypernumber ({kind})")
        n = self.norm_sq()
        return HyperNumber(self.re / n, -self.im / n, self.unit_square)

    def __truediv__(self, other):
        if isinstance(other, HyperNumber):
            return self * self._coerce(other).reciprocal()
        o = _wrap(other)
        if np.any(np.asarray(o, dtype=float) == 0):
            raise LightlikeCoordinateError("division by zero")
        return HyperNumber(self.re / o, self.im / o, self.unit_square)

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, k):
        if not isinstance(k, numbers.Integral):
            raise TypeError("only integer powers are supported")
        if k < 0:
            return (self ** (-k)).reciprocal()
        result = HyperNumber(1, 0, self.unit_square) if isinstance(self.re, numbers.Rational) else \
            HyperNumber(np.ones_like(np.asarray(self.re, dtype=float)), 0, self.unit_square)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, HyperNumber):
            other = self._coerce(other)
        return (self.unit_square == other.unit_square
                and bool(np.all(np.asarray(self.re == other.re)))
                and bool(np.all(np.asarray(self.im == other.im))))

    # array-like behaviour
    @property
    def shape(self):
        return np.broadcast(np.asarray(self.re), np.asarray(self.im)).shape

    def __getitem__(self, idx):
        re, im = np.broadcast_arrays(np.asarray(self.re, dtype=float), np.asarray(self.im, dtype=float))
        return HyperNumber(re[idx], im[idx], self.unit_square)

    def as_float(self) -> "HyperNumber":
        return HyperNumber(np.asarray(self.re, dtype=float) if not isinstance(self.re, Fraction) else float(self.re),
                           np.asarray(self.im, dtype=float) if not isinstance(self.im, Fraction) else float(self.im),
                           self.unit_square)

    def null_components(self):
        """Paracomplex only: the values ``(re + im, re - im)`` on the two null lines."""
        if self.unit_square != PARACOMPLEX:
            raise ValueError("null components exist only for paracomplex numbers")
        return self.re + self.im, self.re - self.im

    def __repr__(self):
        u = "i" if self.unit_square == COMPLEX else "tau"
        return f"HyperNumber({self.re!r} + {self.im!r}{u})"


def hyper_mul(a: HyperNumber, b: HyperNumber) -> HyperNumber:
    if a.unit_square != b.unit_square:
        raise ValueError("cannot multiply complex by paracomplex numbers")
    return a * b


def hyper_exp(z: HyperNumber) -> HyperNumber:
    """Exponential: ``e^re (cos im + i sin im)`` or ``e^re (cosh im + tau sinh im)``."""
    re = np.asarray(z.re, dtype=float)
    im = np.asarray(z.im, dtype=float)
    r = np.exp(re)
    if z.unit_square == COMPLEX:
        return HyperNumber(r * np.cos(im), r * np.sin(im), COMPLEX)
    return HyperNumber(r * np.cosh(im), r * np.sinh(im), PARACOMPLEX)


def hyper_exp_series(z: HyperNumber, terms: int = 30) -> HyperNumber:
    """Truncated power series of exp, used as an independent oracle in tests."""
    total = HyperNumber(1.0, 0.0, z.unit_square)
    term = HyperNumber(1.0, 0.0, z.unit_square)
    for k in range(1, terms):
        term = term * z / k
        total = total + term
    return total


# vector-valued hypernumbers: trailing axis 3

def hvec(x1: HyperNumber, x2: HyperNumber, x3: HyperNumber) -> HyperNumber:
    us = x1.unit_square
    comps = [x1, x2, x3]
    for c in comps:
        if c.unit_square != us:
            raise ValueError("mixed unit squares in hvec")
    re = np.stack(np.broadcast_arrays(*(np.asarray(c.re, dtype=float) for c in comps)), axis=-1)
    im = np.stack(np.broadcast_arrays(*(np.asarray(c.im, dtype=float) for c in comps)), axis=-1)
    return HyperNumber(re, im, us)


def hvec_scale(s: HyperNumber, vec: HyperNumber) -> HyperNumber:
    """Multiply a scalar hypernumber field by a vector-valued one."""
    return HyperNumber(np.asarray(s.re, dtype=float)[..., None], np.asarray(s.im, dtype=float)[..., None],
                       s.unit_square) * vec


def hcross(p: HyperNumber, q: HyperNumber) -> HyperNumber:
    """Lorentzian cross product extended bilinearly to hypernumber vectors."""
    p1, p2, p3 = p[..., 0], p[..., 1], p[..., 2]
    q1, q2, q3 = q[..., 0], q[..., 1], q[..., 2]
    return hvec(p2 * q3 - p3 * q2, p3 * q1 - p1 * q3, -(p1 * q2 - p2 * q1))


def hdot(p: HyperNumber, q: HyperNumber) -> HyperNumber:
    """Lorentzian bilinear form (no conjugation) on hypernumber vectors."""
    return p[..., 0] * q[..., 0] + p[..., 1] * q[..., 1] - p[..., 2] * q[..., 2]


def real_part(z: HyperNumber) -> np.ndarray:
    return np.asarray(z.re, dtype=float)


def is_close(a: HyperNumber, b: HyperNumber, tol: float = 1e-12) -> bool:
    return (a.unit_square == b.unit_square
            and bool(np.all(np.abs(np.asarray(a.re) - np.asarray(b.re)) <= tol))
            and bool(np.all(np.abs(np.asarray(a.im) - np.asarray(b.im)) <= tol)))


def exact(re, im=0, unit_square: int = COMPLEX) -> HyperNumber:
    """Exact hypernumber with ``Fraction`` components."""
    return HyperNumber(Fraction(re), Fraction(im), unit_square)


__all__ = ["HyperNumber", "COMPLEX", "PARACOMPLEX", "hyper_mul", "hyper_exp", "hyper_exp_series",
           "hvec", "hvec_scale", "hcross", "hdot", "real_part", "is_close", "exact"]
