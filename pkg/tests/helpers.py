"""Shared grids and parameter sets for the test-suite."""
from __future__ import annotations

import itertools

import numpy as np

from zmc_minkowski.catalog import KINDS, NAMED_IDS, FamilyParams, NamedSurface, named_surface, theorem_surface

A_VALUES = (0.5, 1.0, 2.0)
a_VALUES = (0.5, 1.0, 2.0)
B_CHOICES = ("1", "3", "2a", "-2a")

# largest exponential rate in u of each named surface's coordinates
NAMED_RATES = {"enneper_spacelike": 3.0, "enneper_timelike": 3.0, "enneper_timelike_2": 3.0,
               "elliptic_catenoid": 1.0, "timelike_catenoid": 1.0}


def family_grid(kinds=KINDS):
    """Every (kind, a, A, B) of the acceptance parameter grid, duplicates removed."""
    seen, out = set(), []
    for kind, a, A, b in itertools.product(kinds, a_VALUES, A_VALUES, B_CHOICES):
        B = {"1": 1.0, "3": 3.0, "2a": 2 * a, "-2a": -2 * a}[b]
        key = (kind, a, A, B)
        if key not in seen:
            seen.add(key)
            out.append(FamilyParams(kind, a, A, B))
    return out


def family_id(p: FamilyParams) -> str:
    return f"{p.kind}-a{p.a:g}-A{p.A:g}-B{p.B:g}"


def all_surfaces():
    """Named catalog surfaces followed by every theorem surface of the parameter grid."""
    return [named_surface(i) for i in NAMED_IDS] + [theorem_surface(p) for p in family_grid()]


def half_width(s: NamedSurface) -> float:
    """``L = 2 / rate``: keeps every exponential factor within ``e^{+-2}`` on ``|u| <= L``."""
    if s.params is not None:
        return 2.0 / (2 * abs(s.params.a) + abs(s.params.B))
    return 2.0 / NAMED_RATES[s.id]


def acceptance_points(s: NamedSurface, n: int = 41):
    """``(u, v)`` of the ``n x n`` grid on ``[-L, L]^2`` without the nodes within ``0.1 L`` of a degenerate line."""
    L = half_width(s)
    u, v = np.meshgrid(np.linspace(-L, L, n), np.linspace(-L, L, n), indexing="ij")
    keep = np.ones(u.shape, dtype=bool)
    for u0 in s.degenerate_u:
        keep &= np.abs(u - u0) >= 0.1 * L
    return u[keep], v[keep]


def twist_lines(s: NamedSurface):
    """Two lines ``u = +-L/2`` (moved off degenerate lines)."""
    L = half_width(s)
    out = []
    for u0 in (-0.5 * L, 0.5 * L):
        if all(abs(u0 - d) >= 0.1 * L for d in s.degenerate_u):
            out.append(u0)
        else:
            out.append(u0 + 0.2 * L * np.sign(u0))
    return out


def surface_id(s: NamedSurface) -> str:
    return family_id(s.params) if s.params is not None else s.id
