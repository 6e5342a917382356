"""Adaptive Simpson quadrature and a tensor Gauss-Legendre helper."""

from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = ["adaptive_simpson", "gauss_legendre_2d"]


def _simpson(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _recurse(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm, flm, left = _simpson(f, a, fa, m, fm)
    rm, frm, right = _simpson(f, m, fm, b, fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return _recurse(
        f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1
    ) + _recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    max_depth: int = 60,
) -> float:
    """Integrate f over [a, b] to absolute tolerance `tol` with the classic
    adaptive Simpson rule (Richardson-corrected)."""
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    m, fm, whole = _simpson(f, a, fa, b, fb)
    return _recurse(f, a, fa, b, fb, m, fm, whole, tol, max_depth)


def gauss_legendre_2d(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    xlim: tuple[float, float],
    ylim: tuple[float, float],
    nodes: int = 200,
) -> float:
    """Tensor-product Gauss-Legendre integral of f over a rectangle."""
    x, wx = np.polynomial.legendre.leggauss(nodes)
    xa, xb = xlim
    ya, yb = ylim
    xs = 0.5 * (xb - xa) * x + 0.5 * (xb + xa)
    ys = 0.5 * (yb - ya) * x + 0.5 * (yb + ya)
    grid = f(xs[:, None], ys[None, :])
    return float(
        0.25 * (xb - xa) * (yb - ya) * wx @ grid @ wx
    )
