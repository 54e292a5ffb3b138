"""Tiny symbolic algebra for closed-form surfaces.

Each coordinate of a catalog surface is a finite sum of

* exponential-trigonometric terms ``c e^{p u} w(q v)`` with ``w`` one of
  ``cos, sin, cosh, sinh``, and
* polynomial terms ``c u^i v^j``.

Both have exact partial derivatives, so the 2-jet is analytic.  Harmonic
terms (``q = +-p`` for trig, or degree <= 1 polynomials) also have exact
conjugates, which the associate family uses.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .kernel import Jet

_WAVE = {
    "cos": (np.cos, "sin", -1.0),
    "sin": (np.sin, "cos", 1.0),
    "cosh": (np.cosh, "sinh", 1.0),
    "sinh": (np.sinh, "cosh", 1.0),
}


@dataclass(frozen=True)
class ExpWave:
    """``coef * exp(p u) * wave(q v)``."""

    coef: float
    p: float
    q: float
    wave: str

    def _w(self, name, v):
        return _WAVE[name][0](self.q * v)

    def value_and_derivs(self, u, v):
        e = self.coef * np.exp(self.p * u)
        f0 = self._w(self.wave, v)
        dname, dsign = _WAVE[self.wave][1], _WAVE[self.wave][2]
        f1 = dsign * self.q * self._w(dname, v)
        # second derivative: cos'' = -q^2 cos, sin'' = -q^2 sin, cosh'' = q^2 cosh, sinh'' = q^2 sinh
        f2 = (-1.0 if self.wave in ("cos", "sin") else 1.0) * self.q ** 2 * f0
        p = self.p
        return (e * f0, p * e * f0, e * f1, p * p * e * f0, p * e * f1, e * f2)


@dataclass(frozen=True)
class Poly:
    """``coef * u**i * v**j``."""

    coef: float
    i: int
    j: int

    def value_and_derivs(self, u, v):
        c, i, j = self.coef, self.i, self.j

        def m(a, b, k):
            if a < 0 or b < 0:
                return np.zeros(np.broadcast(u, v).shape)
            return k * np.power(u, a) * np.power(v, b) * np.ones(np.broadcast(u, v).shape)

        return (m(i, j, c), m(i - 1, j, c * i), m(i, j - 1, c * j),
                m(i - 2, j, c * i * (i - 1)), m(i - 1, j - 1, c * i * j), m(i, j - 2, c * j * (j - 1)))


def eval_terms(terms, u, v):
    out = None
    for t in terms:
        vals = t.value_and_derivs(u, v)
        out = list(vals) if out is None else [a + b for a, b in zip(out, vals)]
    if out is None:
        z = np.zeros(np.broadcast(u, v).shape)
        out = [z] * 6
    return out


def jet_from_terms(components, u, v) -> Jet:
    """Analytic jet of ``X = (sum c1, sum c2, sum c3)``."""
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    cols = [eval_terms(c, u, v) for c in components]
    return Jet(*(np.stack([cols[k][i] for k in range(3)], axis=-1) for i in range(6)))


def scale_terms(terms, s):
    return tuple(replace(t, coef=t.coef * s) for t in terms)


def conjugate_terms(terms, unit_square: int):
    """Exact conjugate ``Y`` of a harmonic term sum ``X``, up to a constant.

    Spacelike (``unit_square = -1``): ``Y_u = X_v``, ``Y_v = -X_u``.
    Timelike (``unit_square = +1``): ``Y_u = X_v``, ``Y_v = X_u``.
    Returns ``None`` if some term is not harmonic of a supported type.
    """
    if unit_square == -1:
        table = {"cos": ("sin", -1.0), "sin": ("cos", 1.0)}
    else:
        table = {"cosh": ("sinh", 1.0), "sinh": ("cosh", 1.0)}
    out = []
    for t in terms:
        if isinstance(t, ExpWave):
            if t.p == 0 and t.q == 0:
                continue
            if abs(abs(t.q) - abs(t.p)) > 1e-14 * abs(t.p) or t.wave not in table:
                return None
            w, sg = table[t.wave]
            out.append(ExpWave(t.coef * sg * np.sign(t.p * t.q), t.p, t.q, w))
        elif isinstance(t, Poly):
            if (t.i, t.j) == (1, 0):
                out.append(Poly(-t.coef if unit_square == -1 else t.coef, 0, 1))
            elif (t.i, t.j) == (0, 1):
                out.append(Poly(t.coef, 1, 0))
            elif t.i + t.j > 1:
                return None
        else:
            return None
    return tuple(out)
