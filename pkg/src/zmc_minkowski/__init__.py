"""Intrinsic rotational zero-mean-curvature surfaces in Lorentz-Minkowski space."""

__version__ = "0.1.0"
