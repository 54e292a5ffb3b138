"""Composite Gauss-Legendre quadrature along straight segments of the hypernumber plane."""
from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import QuadratureError
from .hypernumber import HyperNumber

_NODES = 16


def _expand(x, ndim):
    x = np.asarray(x, dtype=float)
    return x.reshape(x.shape + (1,) * (ndim - x.ndim))


def _panel_rule(panels: int, n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    edges = np.arange(panels)[:, None] / panels
    t = (edges + (x[None, :] + 1.0) / (2.0 * panels)).ravel()
    wt = np.tile(w / (2.0 * panels), panels)
    return t, wt


def _fixed(f, za: HyperNumber, dz: HyperNumber, panels: int, n: int):
    t, wt = _panel_rule(panels, n)
    shape = za.shape
    tt = t.reshape((-1,) + (1,) * len(shape))
    w = HyperNumber(np.asarray(za.re) + tt * np.asarray(dz.re), np.asarray(za.im) + tt * np.asarray(dz.im),
                    za.unit_square)
    vals = f(w)
    ww = wt.reshape((-1,) + (1,) * (np.ndim(vals.re) - 1))
    return np.sum(ww * np.asarray(vals.re), axis=0), np.sum(ww * np.asarray(vals.im), axis=0)


def segment_integral(f: Callable[[HyperNumber], HyperNumber], za: HyperNumber, zb: HyperNumber,
                     tol: float = 1e-10, n: int = _NODES, max_panels: int = 4096) -> HyperNumber:
    """Integrate ``f(w) dw`` along the straight segment from ``za`` to ``zb``.

    ``za`` and ``zb`` may hold arrays of endpoints; ``f`` must accept a
    HyperNumber whose leading axis indexes the quadrature nodes and may
    return extra trailing axes (for instance three vector components).
    Panels are doubled until two successive estimates agree to
    ``tol * max(1, |I|)``.

    Raises
    ------
    QuadratureError
        If ``max_panels`` is reached without convergence.
    """
    za = HyperNumber(*np.broadcast_arrays(np.asarray(za.re, float), np.asarray(za.im, float),
                                          np.asarray(zb.re, float), np.asarray(zb.im, float))[:2],
                     za.unit_square)
    dz = zb - za
    panels = 1
    prev = _fixed(f, za, dz, panels, n)
    while True:
        panels *= 2
        cur = _fixed(f, za, dz, panels, n)
        err = max(np.max(np.abs(cur[0] - prev[0]), initial=0.0), np.max(np.abs(cur[1] - prev[1]), initial=0.0))
        scale = max(1.0, np.max(np.abs(cur[0]), initial=0.0), np.max(np.abs(cur[1]), initial=0.0))
        if err <= tol * scale:
            break
        if panels >= max_panels:
            raise QuadratureError(f"segment quadrature did not converge (err={err:.3e})")
        prev = cur
    ndim = np.ndim(cur[0])
    d = HyperNumber(_expand(dz.re, ndim), _expand(dz.im, ndim), za.unit_square)
    return HyperNumber(cur[0], cur[1], za.unit_square) * d


def real_line_integral(f: Callable[[np.ndarray], np.ndarray], a, b, tol: float = 1e-10, n: int = _NODES,
                       max_panels: int = 4096) -> np.ndarray:
    """Integrate a real (possibly vector-valued) function over ``[a, b]`` elementwise in the endpoints."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)

    def g(w: HyperNumber) -> HyperNumber:
        return HyperNumber(f(np.asarray(w.re)), 0.0)

    res = segment_integral(g, HyperNumber(a, 0.0), HyperNumber(b, 0.0), tol=tol, n=n, max_panels=max_panels)
    return np.asarray(res.re)
