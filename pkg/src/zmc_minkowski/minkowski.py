"""Lorentzian linear algebra in E^3_1 and the 2x2 tangent-plane isometries.

The ambient metric is ``dx1^2 + dx2^2 - dx3^2``.  Every vector function
accepts arrays whose trailing axis has length 3 and broadcasts over the
leading axes.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

METRIC = np.diag([1.0, 1.0, -1.0])
_SIGN = np.array([1.0, 1.0, -1.0])


def vec3(x1, x2=None, x3=None) -> np.ndarray:
    """Build a (batch of) Minkowski vector(s) and reject non-finite entries.

    Either pass three coordinates or a single array-like with trailing axis 3.
    """
    if x2 is None and x3 is None:
        v = np.asarray(x1, dtype=float)
    else:
        v = np.stack(np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (x1, x2, x3))), axis=-1)
    if v.shape[-1:] != (3,):
        raise ValueError(f"expected trailing axis of length 3, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("Vec3 components must be finite")
    return v


def lorentz_dot(u, v):
    """Lorentzian inner product ``u1 v1 + u2 v2 - u3 v3``."""
    u = np.asarray(u)
    v = np.asarray(v)
    return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] - u[..., 2] * v[..., 2]


def lorentz_norm_sq(v):
    return lorentz_dot(v, v)


def lorentz_cross(u, v) -> np.ndarray:
    """Lorentzian cross product, oriented so that ``<u x v, w> = det(u, v, w)``."""
    c = np.cross(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    c[..., 2] *= -1.0
    return c


def raise_index(v) -> np.ndarray:
    """Apply the metric to a vector (flip the sign of the third component)."""
    return np.asarray(v) * _SIGN


class CausalCharacter(str, enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


def causal_character(v, tol: float | None = None):
    """Classify a vector by the sign of ``<v, v>``.

    Parameters
    ----------
    v : array_like, shape (..., 3)
    tol : float, optional
        Absolute band around zero reported as lightlike.  Defaults to
        ``1e-12 * (1 + |v|_E^2)`` with the Euclidean norm as scale.

    Returns
    -------
    CausalCharacter or ndarray of them
    """
    v = np.asarray(v, dtype=float)
    q = lorentz_dot(v, v)
    if tol is None:
        band = 1e-12 * (1.0 + np.sum(v * v, axis=-1))
    else:
        if tol < 0:
            raise ValueError("tol must be non-negative")
        band = tol

    def one(qq, bb):
        if abs(qq) <= bb:
            return CausalCharacter.LIGHTLIKE
        return CausalCharacter.SPACELIKE if qq > 0 else CausalCharacter.TIMELIKE

    if np.ndim(q) == 0:
        return one(float(q), float(band))
    band = np.broadcast_to(band, q.shape)
    out = np.empty(q.shape, dtype=object)
    for idx in np.ndindex(q.shape):
        out[idx] = one(q[idx], band[idx])
    return out


@dataclass(frozen=True)
class MetricSignature:
    """Signs ``(delta, epsilon)`` of the metric ``rho^2 (delta du^2 + epsilon dv^2)``."""

    delta: int
    epsilon: int

    def __post_init__(self):
        if self.delta not in (-1, 1) or self.epsilon not in (-1, 1):
            raise ValueError("delta and epsilon must be +1 or -1")
        if self.delta == -1 and self.epsilon == -1:
            raise ValueError("delta and epsilon cannot both be -1")

    @property
    def sigma(self) -> int:
        """+1 for a spacelike surface, -1 for a timelike one."""
        return self.delta * self.epsilon

    @property
    def is_spacelike(self) -> bool:
        return self.sigma == 1

    @classmethod
    def spacelike(cls) -> "MetricSignature":
        return cls(1, 1)

    @classmethod
    def timelike_i(cls) -> "MetricSignature":
        return cls(1, -1)

    @classmethod
    def timelike_ii(cls) -> "MetricSignature":
        return cls(-1, 1)

    @classmethod
    def from_kind(cls, kind: str) -> "MetricSignature":
        table = {"spacelike": (1, 1), "timelike_I": (1, -1), "timelike_II": (-1, 1)}
        try:
            return cls(*table[kind])
        except KeyError:
            raise ValueError(f"unknown causal kind {kind!r}; expected one of {sorted(table)}") from None

    @property
    def kind(self) -> str:
        return {(1, 1): "spacelike", (1, -1): "timelike_I", (-1, 1): "timelike_II"}[(self.delta, self.epsilon)]


class RotationKind(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class Rotation2:
    """Euclidean rotation ``R_theta`` or hyperbolic rotation ``G_theta`` of a tangent plane.

    ``angle`` may be an array; ``matrix`` then has shape ``angle.shape + (2, 2)``.
    """

    kind: RotationKind
    angle: float | np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "kind", RotationKind(self.kind))

    @property
    def matrix(self) -> np.ndarray:
        t = np.asarray(self.angle, dtype=float)
        if self.kind is RotationKind.EUCLIDEAN:
            c, s = np.cos(t), np.sin(t)
            rows = ((c, -s), (s, c))
        else:
            c, s = np.cosh(t), np.sinh(t)
            rows = ((c, s), (s, c))
        return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)

    @property
    def entries(self) -> np.ndarray:
        return self.matrix

    def inverse(self) -> "Rotation2":
        return Rotation2(self.kind, -np.asarray(self.angle))

    def __matmul__(self, other):
        if isinstance(other, Rotation2):
            if other.kind is not self.kind:
                raise ValueError("cannot compose a euclidean with a hyperbolic rotation")
            return Rotation2(self.kind, np.asarray(self.angle) + np.asarray(other.angle))
        return self.matrix @ other

    def det(self):
        return np.linalg.det(self.matrix)


def rotation(kind, theta) -> Rotation2:
    """Shorthand for ``Rotation2(kind, theta)``."""
    return Rotation2(RotationKind(kind), theta)
