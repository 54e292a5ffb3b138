"""Targets, sampling grids and the verification checks behind the command line.

A *target* is anything that yields a surface patch: a named catalog
surface, a twisted family, an integer Weierstrass family or Björling data.
Checks return :class:`CheckResult` records that are collected into a
:class:`VerificationReport`.
"""
from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Callable

import numpy as np

from . import __version__
from .bjorling import (BjorlingData, UntwistedParams, base_curve, bjorling_patch, bjorling_position,
                       conjugated_weingarten, associate_deform, frame_closed_form, frame_integrate,
                       path_independence_defect)
from .catalog import (BRANCHES, DEGENERACY_MARGIN, KINDS, NAMED_IDS, FamilyParams, NamedSurface,
                      catenoid_symmetry_residual, named_surface, theorem_surface)
from .conformal import rho_closed_form
from .errors import ConfigError, ZmcError
from .hypernumber import HyperNumber
from .kernel import (compatibility_residuals, curvature_summary, extract_twist, first_form, intrinsic_profile,
                     shape_operator)
from .minkowski import RotationKind
from .weierstrass import (IntegerFamily, end_classification, log_chart_family, log_chart_phi, loop_period, reconstruct_family,
                          residue_period_report, weierstrass_patch)

THREADS_ENV = "MINKZMC_THREADS"
# distance kept from a degeneracy line; finite-difference checks lose accuracy like (h / distance)^4
VERIFY_MARGIN = 0.05
# largest euclidean/Lorentzian gradient ratio accepted by verify
KAPPA_MAX = 100.0


class ExclusionError(ConfigError):
    """A sampling grid straddles a degeneracy line of the target."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


# ---------------------------------------------------------------- grids

@dataclass(frozen=True)
class Grid:
    u_min: float = -1.5
    u_max: float = 1.5
    v_min: float = -math.pi
    v_max: float = math.pi
    nu: int = 101
    nv: int = 101

    def __post_init__(self):
        if int(self.nu) < 2 or int(self.nv) < 2:
            raise ConfigError("grid needs nu, nv >= 2")
        if not (self.u_min < self.u_max and self.v_min < self.v_max):
            raise ConfigError("grid bounds must satisfy min < max")
        object.__setattr__(self, "nu", int(self.nu))
        object.__setattr__(self, "nv", int(self.nv))

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """``u_min,u_max,v_min,v_max,nu,nv``."""
        parts = text.split(",")
        if len(parts) != 6:
            raise ConfigError("grid must be u_min,u_max,v_min,v_max,nu,nv")
        try:
            vals = [float(p) for p in parts[:4]] + [int(p) for p in parts[4:]]
        except ValueError:
            raise ConfigError(f"cannot parse grid {text!r}") from None
        return cls(*vals)

    @classmethod
    def from_dict(cls, d: dict) -> "Grid":
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigError(f"bad grid: {exc}") from None

    def axes(self):
        return np.linspace(self.u_min, self.u_max, self.nu), np.linspace(self.v_min, self.v_max, self.nv)

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_GRID = Grid()


def fit_grid(grid: Grid, degenerate_u, margin: float = VERIFY_MARGIN, refuse: bool = False):
    """Shrink ``grid`` to the larger side of every degeneracy line it straddles.

    Returns ``(grid, messages)``.  With ``refuse=True`` a straddling grid
    raises :class:`ExclusionError` instead.
    """
    msgs = []
    for u0 in degenerate_u:
        u0 = float(u0) + 0.0
        if grid.u_min - margin <= u0 <= grid.u_max + margin:
            report = {"degenerate_u": u0, "margin": margin, "grid": grid.as_dict()}
            if refuse:
                raise ExclusionError(f"grid u-range [{grid.u_min:g}, {grid.u_max:g}] straddles the degeneracy "
                                     f"line u = {u0:g}", report)
            left, right = u0 - margin - grid.u_min, grid.u_max - (u0 + margin)
            if max(left, right) <= 0:
                raise ExclusionError("grid lies inside the exclusion margin", report)
            lo, hi = (grid.u_min, u0 - margin) if left >= right else (u0 + margin, grid.u_max)
            grid = Grid(lo, hi, grid.v_min, grid.v_max, grid.nu, grid.nv)
            msgs.append(f"grid shrunk to u in [{lo:.6g}, {hi:.6g}] to avoid the degeneracy line u = {u0:.6g}")
    return grid, msgs


def conditioning(target: "Target", grid: Grid) -> np.ndarray:
    """Ratio of the euclidean to the Lorentzian size of the coordinate gradients on the grid nodes.

    Rounding in a Lorentzian inner product is relative to the euclidean sizes, so a
    residual computed from the jets is amplified by about this factor (or its square
    for curvature quantities).
    """
    u, v = grid.axes()
    U, V = np.meshgrid(u, v, indexing="ij")
    with np.errstate(all="ignore"):
        J = target.patch.jet(U, V)
        eu = np.sum(J.Xu ** 2, axis=-1) + np.sum(J.Xv ** 2, axis=-1)
        lo = np.abs(np.sum(J.Xu ** 2 * _SIGNS, axis=-1)) + np.abs(np.sum(J.Xv ** 2 * _SIGNS, axis=-1))
        k = eu / lo
    return np.where(np.isfinite(k), k, np.inf)


_SIGNS = np.array([1.0, 1.0, -1.0])


def fit_conditioning(grid: Grid, target: "Target", kappa_max: float = KAPPA_MAX, probe: int = 41):
    """Trim the grid rectangle until ``conditioning <= kappa_max`` on a coarse probe.

    Each step drops the boundary row or column with the largest mean log-conditioning.
    """
    coarse = Grid(grid.u_min, grid.u_max, grid.v_min, grid.v_max, min(grid.nu, probe), min(grid.nv, probe))
    k = conditioning(target, coarse)
    if np.max(k) <= kappa_max:
        return grid, []
    u, v = coarse.axes()
    lk = np.log(np.minimum(k, 1e300))
    i0, i1, j0, j1 = 0, u.size, 0, v.size
    while np.max(k[i0:i1, j0:j1]) > kappa_max:
        if i1 - i0 < 3 or j1 - j0 < 3:
            raise ConfigError(f"no well-conditioned sub-rectangle (conditioning > {kappa_max:g} everywhere)")
        sides = {"u0": lk[i0, j0:j1].mean(), "u1": lk[i1 - 1, j0:j1].mean(),
                 "v0": lk[i0:i1, j0].mean(), "v1": lk[i0:i1, j1 - 1].mean()}
        worst = max(sides, key=sides.get)
        if worst == "u0":
            i0 += 1
        elif worst == "u1":
            i1 -= 1
        elif worst == "v0":
            j0 += 1
        else:
            j1 -= 1
    out = Grid(float(u[i0]), float(u[i1 - 1]), float(v[j0]), float(v[j1 - 1]), grid.nu, grid.nv)
    return out, [f"grid trimmed to u in [{out.u_min:.6g}, {out.u_max:.6g}], v in [{out.v_min:.6g}, "
                 f"{out.v_max:.6g}] where the euclidean/Lorentzian conditioning stays below {kappa_max:g}"]


# ---------------------------------------------------------------- targets

@dataclass(frozen=True)
class Target:
    label: str
    category: str
    patch: object = field(repr=False)
    surface: NamedSurface | None = field(default=None, repr=False)
    params: object = None
    family: IntegerFamily | None = None
    bjorling: BjorlingData | None = field(default=None, repr=False)
    provenance: str = ""

    @property
    def signature(self):
        return self.patch.signature

    @property
    def degenerate_u(self) -> tuple:
        return tuple(self.patch.degenerate_u)

    @property
    def twist_slope(self) -> float:
        if self.surface is not None:
            return float(self.surface.twist_slope)
        if self.params is not None:
            return float(self.params.a)
        return 0.0

    @property
    def analytic(self) -> bool:
        """True when jets come from closed forms (no quadrature in the position)."""
        return self.category in ("named", "family")

    def metadata(self) -> dict:
        meta = {"target": self.label, "category": self.category, "provenance": self.provenance,
                "causal_character": "spacelike" if self.signature.is_spacelike else "timelike",
                "exclusions": {"degenerate_u": list(self.degenerate_u)}}
        if self.params is not None:
            meta["params"] = self.params.as_dict()
        if self.surface is not None and self.surface.extras:
            meta["params"] = dict(self.surface.extras)
        return meta


def _kv(parts) -> dict:
    out = {}
    for p in parts:
        if "=" not in p:
            raise ConfigError(f"expected key=value, got {p!r}")
        k, v = p.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _floats(d: dict, keys) -> dict:
    out = {}
    for k in keys:
        if k in d:
            try:
                out[k] = float(d[k])
            except ValueError:
                raise ConfigError(f"{k} must be a number, got {d[k]!r}") from None
    return out


def _family_params(d: dict) -> FamilyParams:
    kind = d.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"family kind must be one of {KINDS}")
    if "a" not in d:
        raise ConfigError("family needs a")
    nums = _floats(d, ("a", "A", "B"))
    try:
        return FamilyParams(kind, nums["a"], nums.get("A", 1.0), nums.get("B"), d.get("branch"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def resolve_target(text) -> Target:
    """Resolve a target string or JSON object.

    Strings: a catalog id (catenoids accept ``:A=..,B=..``),
    ``family:KIND,a=..,A=..,B=..[,branch=..]``, ``es:n,m`` / ``et:n,m`` and
    ``bjorling:KIND,a=..,A=..,B=..`` or ``bjorling:untwisted,kind=..,A=..,B=..``.
    Objects: ``{"type": "named"|"family"|"integer"|"bjorling", ...}``.

    Raises
    ------
    ConfigError
        For unknown or malformed targets.
    """
    if isinstance(text, dict):
        return _resolve_dict(text)
    if not isinstance(text, str) or not text:
        raise ConfigError("empty target")
    head, _, rest = text.partition(":")
    if head in ("es", "et"):
        try:
            fam = IntegerFamily.parse(text)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return _integer_target(fam)
    if head == "family":
        parts = [p for p in rest.split(",") if p]
        if not parts:
            raise ConfigError("family target needs a kind")
        d = {"kind": parts[0], **_kv(parts[1:])}
        return _family_target(_family_params(d))
    if head == "bjorling":
        parts = [p for p in rest.split(",") if p]
        if not parts:
            raise ConfigError("bjorling target needs data")
        if parts[0] == "untwisted":
            d = {"type": "untwisted", **_kv(parts[1:])}
        else:
            d = {"type": "family", "kind": parts[0], **_kv(parts[1:])}
        return _resolve_dict({"type": "bjorling", "data": d})
    if head in NAMED_IDS:
        params = _floats(_kv([p for p in rest.split(",") if p]), ("A", "B")) if rest else {}
        return _named_target(head, params)
    raise ConfigError(f"unknown target {text!r}")


def _resolve_dict(d: dict) -> Target:
    t = d.get("type")
    if t == "named":
        return _named_target(d.get("id"), _floats(d, ("A", "B")))
    if t == "family":
        return _family_target(_family_params(d))
    if t == "integer":
        return resolve_target(d.get("label", ""))
    if t == "bjorling":
        data = d.get("data", d.get("descriptor"))
        if not isinstance(data, dict):
            raise ConfigError("bjorling target needs a 'data' descriptor object")
        try:
            if data.get("type") == "untwisted":
                nums = _floats(data, ("A", "B"))
                bd = BjorlingData.untwisted(data.get("kind"), nums.get("A", 1.0), nums.get("B", 1.0))
            else:
                bd = BjorlingData.from_params(_family_params(data))
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"bad Björling descriptor: {exc}") from None
        return Target("bjorling:" + bd.to_json(), "bjorling", bjorling_patch(bd), bjorling=bd,
                      params=_params_of(bd.descriptor), provenance="Björling reconstruction from base curve and normal")
    raise ConfigError(f"unknown target type {t!r}")


def _params_of(desc: dict):
    if desc.get("type") == "untwisted":
        return UntwistedParams(desc["kind"], desc["A"], desc["B"])
    return FamilyParams(desc["kind"], desc["a"], desc["A"], desc["B"])


def _named_target(id, params) -> Target:
    try:
        s = named_surface(id, **params)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    label = id if not params else id + ":" + ",".join(f"{k}={v:g}" for k, v in sorted(params.items()))
    return Target(label, "named", s.patch, surface=s, provenance=s.provenance)


def _family_target(p: FamilyParams) -> Target:
    s = theorem_surface(p)
    label = f"family:{p.kind},a={p.a:g},A={p.A:g},B={p.B:g}"
    return Target(label, "family", s.patch, surface=s, params=p, provenance=s.provenance)


def _integer_target(fam: IntegerFamily) -> Target:
    phi = log_chart_phi(fam)
    params, _ = log_chart_family(fam)
    patch = replace(weierstrass_patch(phi, HyperNumber(0.0, 0.0, phi.unit_square), name=fam.label),
                    degenerate_u=tuple(params.degenerate_u))
    chart = "z = exp(-w)" if fam.kind == "spacelike" else "z = exp(w)"
    return Target(fam.label, "integer", patch, family=fam, params=params,
                  provenance=f"integer Weierstrass family g = z^n, sampled in the logarithmic chart {chart}")


# ---------------------------------------------------------------- sampling

def thread_count(threads: int | None = None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return 1


def sample(target: Target, u, v, threads: int | None = None) -> np.ndarray:
    """Positions on the tensor grid ``u x v``; rows are evaluated in parallel chunks."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    n = thread_count(threads)

    def rows(chunk):
        U, V = np.meshgrid(u[chunk], v, indexing="ij")
        return target.patch.position(U, V)

    chunks = [c for c in np.array_split(np.arange(u.size), min(n, u.size)) if c.size]
    if n == 1:
        parts = [rows(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            parts = list(pool.map(rows, chunks))
    return np.concatenate(parts, axis=0)


# ---------------------------------------------------------------- checks

@dataclass
class CheckResult:
    name: str
    max_residual: float
    tolerance: float
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "max_residual": _num(self.max_residual), "tolerance": self.tolerance,
                "pass": bool(self.passed), "detail": self.detail}


def _num(x):
    x = float(x)
    return x if math.isfinite(x) else str(x)


@dataclass
class VerificationReport:
    target: str
    checks: list
    environment: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1

    def as_dict(self) -> dict:
        return {"target": self.target, "pass": self.passed, "exit_status": self.exit_status,
                "checks": [c.as_dict() for c in self.checks], "environment": self.environment}


SUITES = {
    "zmc": "mean curvature vanishes (|H| relative to the shape-operator size)",
    "first-form": "induced metric equals the stated conformal metric, or is conformal when none is stated",
    "twist": "shape operator is a rotation conjugate of a diagonal matrix with linear twist angle",
    "codazzi": "Codazzi equations of the rotational data (term-normalized)",
    "gauss": "Gauss equation relating principal curvatures and conformal factor (term-normalized)",
    "frame": "integrated frame along v = 0 matches the closed form and stays orthonormal",
    "bjorling": "Björling reconstruction matches the closed-form surface; paths agree",
    "weierstrass": "Weierstrass reconstruction matches the closed-form surface, or phi is null",
    "periods": "exact residues and real periods confirmed by a numerical loop integral",
    "ends": "pole orders and types of the ends at z = 0 and z = infinity",
    "associate": "associate family is isometric, keeps the twist slope and rotates A by half the angle",
    "catenoid-symmetry": "rotational equivariance of the catenoids",
}

DEFAULT_TOLERANCES = {
    "zmc": 1e-8, "first-form": 1e-10, "twist": 1e-8, "codazzi": 1e-6, "gauss": 1e-6, "frame": 1e-8,
    "bjorling": 1e-6, "weierstrass": 1e-6, "periods": 1e-8, "ends": 0.0, "associate": 1e-6,
    "catenoid-symmetry": 1e-10,
}
QUADRATURE_ZMC_TOL = 1e-6


def _sub(axis, n):
    if axis.size <= n:
        return axis
    return axis[np.linspace(0, axis.size - 1, n).round().astype(int)]


def _mid_u(target, u):
    i = int(np.argmin(np.abs(u - 0.5 * (u[0] + u[-1]))))
    return float(u[i])


def _is_catenoid(t: Target) -> bool:
    return t.category == "named" and t.surface.id in ("elliptic_catenoid", "timelike_catenoid")


def _untwisted_params(t: Target) -> UntwistedParams:
    kind = "spacelike" if t.surface.id == "elliptic_catenoid" else "timelike_I"
    return UntwistedParams(kind, t.surface.extras["A"], t.surface.extras["B"])


def _applicable(name: str, t: Target) -> bool:
    cat = t.category
    if name in ("zmc", "first-form"):
        return True
    if name in ("twist", "codazzi", "gauss", "associate"):
        return cat in ("named", "family")
    if name in ("frame", "bjorling", "weierstrass"):
        return cat in ("family", "bjorling") or _is_catenoid(t) or (cat == "integer" and name == "weierstrass")
    if name in ("periods", "ends"):
        return cat == "integer"
    if name == "catenoid-symmetry":
        return _is_catenoid(t)
    return False


def check_zmc(t: Target, u, v, tol):
    U, V = np.meshgrid(u, v, indexing="ij")
    A = shape_operator(t.patch.jet(U, V), t.signature)
    H = curvature_summary(A, t.signature).H
    size = np.sqrt(np.sum(A.matrix() ** 2, axis=(-2, -1)))
    rel = np.abs(H) / np.maximum(1.0, size)
    return float(np.max(rel)), {"max_abs_H": float(np.max(np.abs(H)))}


def check_first_form(t: Target, u, v, tol):
    U, V = np.meshgrid(u, v, indexing="ij")
    J = t.patch.jet(U, V)
    I = first_form(J, t.signature)
    # euclidean Gram scale: rounding in a Lorentzian product is relative to it, not to |E|
    scale = 0.5 * (np.sum(J.Xu ** 2, axis=-1) + np.sum(J.Xv ** 2, axis=-1))
    if t.surface is not None:
        E0, G0 = t.surface.stated_first_form(U)
        res = np.maximum(np.abs(I.E - E0), np.maximum(np.abs(I.G - G0), np.abs(I.F))) / scale
        return float(np.max(res)), {"mode": "stated metric, relative to the euclidean Gram scale",
                                    "max_rel_to_E": float(np.max(np.abs(I.E - E0) / np.abs(E0)))}
    s = t.signature
    res = (np.abs(I.E / s.delta - I.G / s.epsilon) + np.abs(I.F)) / scale
    return float(np.max(res)), {"mode": "conformality, relative to the euclidean Gram scale"}


def check_twist(t: Target, u, v, tol):
    u0 = _mid_u(t, u)
    rep = extract_twist(t.patch, u0, v)
    M = shape_operator(t.patch.jet(np.full_like(v, u0), v), t.signature).matrix()
    scale = 1.0 + float(np.max(np.abs(M)))
    slope_err = abs(rep.slope_a - t.surface.twist_slope)
    res = max(slope_err, rep.structure_residual / scale, rep.fit_residual)
    return res, {"u_fixed": u0, "slope": rep.slope_a, "expected_slope": t.surface.twist_slope,
                 "intercept": rep.intercept_c, "structure_residual": rep.structure_residual}


def _rho_derivatives(t: Target) -> dict:
    """Closed-form derivatives of ``|rho|`` for family targets; finite differences otherwise."""
    p = t.params
    if t.category != "family":
        return {}

    def jet(u):
        return rho_closed_form(p.a, p.A, p.B, p.epsilon, u)

    return {"rho": lambda u: np.sign(jet(u).rho) * jet(u).drho,
            "rho2": lambda u: np.sign(jet(u).rho) * jet(u).ddrho}


def _compat(t: Target, u, v):
    u0 = _mid_u(t, u)
    rep = extract_twist(t.patch, u0, _sub(v, 41))
    prof = intrinsic_profile(t.patch, rep)
    return compatibility_residuals(prof.lambda1, prof.lambda2, prof.rho, prof.alpha, t.signature, prof.kind,
                                   _sub(u, 41), _sub(v, 41), derivatives=_rho_derivatives(t))


def check_codazzi(t: Target, u, v, tol):
    r = _compat(t, u, v)
    return max(r.rel_codazzi, r.rel_codazzi_raw), {"system": r.system, "abs_codazzi": r.max_codazzi,
                                                   "abs_codazzi_raw": r.max_codazzi_raw}


def check_gauss(t: Target, u, v, tol):
    r = _compat(t, u, v)
    return r.rel_gauss, {"abs_gauss": r.max_gauss}


def _frame_params(t: Target):
    if t.category == "family":
        return t.params
    if t.category == "bjorling":
        return t.params
    return _untwisted_params(t)


def check_frame(t: Target, u, v, tol):
    p = _frame_params(t)
    lo, hi = max(float(u[0]), -2.0), min(float(u[-1]), 2.0)
    traj = frame_integrate(p, (lo, hi))
    uu = np.linspace(lo, hi, 101)
    f, g = traj(uu), frame_closed_form(p, uu)
    scale = 1.0 + max(np.max(np.abs(g.E1)), np.max(np.abs(g.E3)))
    match = max(np.max(np.abs(f.E1 - g.E1)), np.max(np.abs(f.E3 - g.E3))) / scale
    drift = f.gram_defect() / scale ** 2
    e2 = float(np.max(np.abs(f.E2 - f.E2[0])))
    return max(match, drift, e2), {"closed_form_mismatch": match, "orthonormality_drift": drift,
                                   "E2_variation": e2, "u_range": [lo, hi]}


def _reference(t: Target):
    """Closed-form surface matching the Björling/Weierstrass constructions, and a v-mirror flag."""
    if t.category == "family":
        return t.surface, 1.0
    p = _frame_params(t)
    if isinstance(p, UntwistedParams):
        ident = "elliptic_catenoid" if p.kind == "spacelike" else "timelike_catenoid"
        if p.kind == "timelike_II":
            return None, 1.0
        return named_surface(ident, A=p.A, B=p.B), (-1.0 if p.kind == "spacelike" else 1.0)
    return theorem_surface(p), 1.0


def check_bjorling(t: Target, u, v, tol):
    data = t.bjorling if t.bjorling is not None else BjorlingData.from_params(_frame_params(t))
    us, vs = _sub(u, 21), _sub(v, 21)
    U, V = np.meshgrid(us, vs, indexing="ij")
    X = bjorling_position(data, U, V)
    X0 = bjorling_position(data, us, np.zeros_like(us))
    axis = float(np.max(np.abs(X0 - base_curve(_frame_params(t), us).c)))
    ref, mirror = _reference(t)
    detail = {"v0_slice_error": axis}
    res = axis
    if ref is not None:
        Y = ref.position(U, mirror * V)
        err = float(np.max(np.abs(X - Y)) / (1.0 + np.max(np.abs(Y))))
        res = max(res, err)
        detail["relative_sup_error"] = err
        detail["reference"] = ref.id + (" with v -> -v" if mirror < 0 else "")
    path = path_independence_defect(data, us[:5], vs[-5:], float(us[len(us) // 2]))
    detail["path_independence"] = path
    return max(res, path), detail


def check_weierstrass(t: Target, u, v, tol):
    us, vs = _sub(u, 21), _sub(v, 21)
    U, V = np.meshgrid(us, vs, indexing="ij")
    if t.category == "integer":
        phi = log_chart_phi(t.family)
        z = HyperNumber(U, V, phi.unit_square)
        P = phi(z)
        scale = 1.0 + np.max(np.abs(P.re)) ** 2 + np.max(np.abs(P.im)) ** 2
        return phi.conformality_defect(z) / scale, {"mode": "null derivative, relative"}
    p = _frame_params(t)
    X = reconstruct_family(p, U, V)
    ref, mirror = _reference(t)
    if ref is None:
        raise ConfigError("no closed-form reference for this target")
    Y = ref.position(U, mirror * V)
    err = float(np.max(np.abs(X - Y)) / (1.0 + np.max(np.abs(Y))))
    return err, {"reference": ref.id, "mode": "relative sup error, constant fixed by X(u, 0) = c(u)"}


def check_periods(t: Target, u, v, tol):
    rep = residue_period_report(t.family)
    detail = {"residues": [[str(r.re), str(r.im)] for r in rep.residues], "log_terms": list(rep.log_terms)}
    if rep.real_period is None:
        detail["note"] = "paracomplex data: residues give logarithmic (linear in u, v) terms, not periods"
        return 0.0, detail
    loop = loop_period(t.family.phi())
    detail["real_period"] = list(rep.real_period)
    detail["loop_period"] = loop.tolist()
    detail["surface_translation"] = [2 * x for x in rep.real_period]
    return float(np.max(np.abs(loop - np.array(rep.real_period)))), detail


def check_ends(t: Target, u, v, tol):
    ends = end_classification(t.family)
    return 0.0, {e.end: {"orders": list(e.orders), "k": e.k, "type": e.classification} for e in ends}


def check_associate(t: Target, u, v, tol):
    kind = RotationKind.EUCLIDEAN if t.signature.is_spacelike else RotationKind.HYPERBOLIC
    us, vs = _sub(u, 9), _sub(v, 9)
    U, V = np.meshgrid(us, vs, indexing="ij")
    J0 = t.patch.jet(U, V)
    A0 = shape_operator(J0, t.signature).matrix()
    I0 = first_form(J0, t.signature)
    u0 = _mid_u(t, u)
    base = extract_twist(t.patch, u0, vs)
    worst, detail = 0.0, {}
    for theta in (0.3, 1.0):
        P = associate_deform(t.surface, theta, u0=u0)
        J = P.jet(U, V)
        A = shape_operator(J, P.signature).matrix()
        I = first_form(J, P.signature)
        scaleA = np.max(np.abs(A0))
        half = float(np.max(np.abs(A - conjugated_weingarten(A0, -theta / 2, kind))) / scaleA)
        literal = float(np.max(np.abs(A - conjugated_weingarten(A0, theta, kind))) / scaleA)
        iso = float(max(np.max(np.abs(I.E - I0.E)), np.max(np.abs(I.G - I0.G)), np.max(np.abs(I.F)))
                    / np.max(np.abs(I0.E)))
        tw = extract_twist(P, u0, vs, branch_hint=base.intercept_c + theta / 2)
        slope = abs(tw.slope_a - base.slope_a)
        worst = max(worst, half, iso, slope)
        detail[f"theta={theta:g}"] = {"weingarten_half_angle": half, "weingarten_full_angle": literal,
                                      "isometry": iso, "slope_change": slope,
                                      "intercept_shift": tw.intercept_c - base.intercept_c}
    return worst, detail


def check_catenoid_symmetry(t: Target, u, v, tol):
    us, vs = _sub(u, 21), _sub(v, 21)
    U, V = np.meshgrid(us, vs, indexing="ij")
    res = {f"theta={th:g}": catenoid_symmetry_residual(t.surface, th, U, V) for th in (0.1, 1.0)}
    return max(res.values()), res


CHECKS: dict = {
    "zmc": check_zmc, "first-form": check_first_form, "twist": check_twist, "codazzi": check_codazzi,
    "gauss": check_gauss, "frame": check_frame, "bjorling": check_bjorling, "weierstrass": check_weierstrass,
    "periods": check_periods, "ends": check_ends, "associate": check_associate,
    "catenoid-symmetry": check_catenoid_symmetry,
}


def parse_suite(text) -> list:
    names = [s.strip() for s in (text.split(",") if isinstance(text, str) else text) if s.strip()]
    for n in names:
        if n not in SUITES:
            raise ConfigError(f"unknown check {n!r}; known: {', '.join(SUITES)}")
    return names


def run_checks(target: Target, grid: Grid, suite, tolerances: dict | None = None,
               threads: int | None = None) -> VerificationReport:
    """Run the named checks; a check that is not applicable to the target is a configuration error.

    The grid is first moved off degeneracy lines (:data:`VERIFY_MARGIN`) and then trimmed to the
    region where the conditioning stays below :data:`KAPPA_MAX`; both steps emit warnings.
    Checks run on ``threads`` workers; results keep the requested order.
    """
    names = parse_suite(suite)
    for n in names:
        if not _applicable(n, target):
            raise ConfigError(f"check {n!r} does not apply to target {target.label!r} ({target.category})")
    tolerances = dict(tolerances or {})
    for k in tolerances:
        if k not in SUITES:
            raise ConfigError(f"tolerance override for unknown check {k!r}")
    grid, msgs = fit_grid(grid, target.degenerate_u)
    grid, more = fit_conditioning(grid, target)
    msgs += more
    for m in msgs:
        warnings.warn(m, stacklevel=2)
    u, v = grid.axes()
    def one(n):
        tol = float(tolerances.get(n, DEFAULT_TOLERANCES[n]))
        if n == "zmc" and not target.analytic and n not in tolerances:
            tol = QUADRATURE_ZMC_TOL
        try:
            with np.errstate(all="ignore"):
                res, detail = CHECKS[n](target, u, v, tol)
            ok = bool(np.isfinite(res) and res <= tol)
        except ConfigError:
            raise
        except ZmcError as exc:
            res, detail, ok = float("inf"), {"error": f"{type(exc).__name__}: {exc}"}, False
        return CheckResult(n, float(res), tol, ok, detail)

    workers = min(thread_count(threads), len(names))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, names))
    else:
        results = [one(n) for n in names]
    env = {"grid": grid.as_dict(), "grid_messages": msgs, "version": __version__, **target.metadata()}
    return VerificationReport(target.label, results, env)


# ---------------------------------------------------------------- listing

def list_targets() -> dict:
    """Machine-readable catalog of targets and checks."""
    named = []
    for id in NAMED_IDS:
        s = named_surface(id)
        named.append({"id": id, "provenance": s.provenance,
                      "causal_character": "spacelike" if s.signature.is_spacelike else "timelike",
                      "parameters": sorted(s.extras), "degenerate_u": list(s.degenerate_u)})
    return {
        "version": __version__,
        "named_surfaces": named,
        "families": {"syntax": "family:KIND,a=..,A=..,B=..[,branch=..]", "kinds": list(KINDS),
                     "branches": list(BRANCHES),
                     "provenance": "twisted intrinsic rotational ZMC families with linear twist a v"},
        "integer_families": {"syntax": "es:n,m | et:n,m",
                             "provenance": "Weierstrass data g = z^n with monomial omega"},
        "bjorling": {"syntax": "bjorling:KIND,a=..,A=..,B=.. | bjorling:untwisted,kind=..,A=..,B=..",
                     "provenance": "Björling reconstruction from the base curve and unit normal"},
        "suites": [{"name": k, "description": d, "default_tolerance": DEFAULT_TOLERANCES[k]}
                   for k, d in SUITES.items()],
    }


__all__ = ["Grid", "DEFAULT_GRID", "VERIFY_MARGIN", "KAPPA_MAX", "fit_grid", "fit_conditioning", "conditioning", "ExclusionError", "Target", "resolve_target", "sample",
           "thread_count", "CheckResult", "VerificationReport", "SUITES", "DEFAULT_TOLERANCES", "CHECKS",
           "parse_suite", "run_checks", "list_targets"]
