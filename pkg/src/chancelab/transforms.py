"""Densities of functions of random variables, convolution of grid
densities, the correlation coefficient, the bivariate normal density, and
the analytic encounter-problem solver.

Pushforwards are grid-based: the transformed density is evaluated
pointwise as phi(inverse(y)) * |inverse'(y)| on each strictly monotone
piece of the map.  Infinite supports are truncated where the carried mass
is negligible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .distributions import Distribution

__all__ = [
    "GridDensity",
    "MapPiece",
    "MonotoneMap",
    "push_density",
    "convolve",
    "correlation",
    "bivariate_normal_pdf",
    "encounter_probability",
]


@dataclass(frozen=True)
class GridDensity:
    """Non-negative density ordinates on ascending abscissae; must carry
    total mass 1 by the trapezoid rule within `mass_tol`."""

    x: np.ndarray
    y: np.ndarray
    mass_tol: float = 1e-3

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.ndim != 1 or x.shape != y.shape or x.size < 2:
            raise ValueError("need matching 1-d grids of at least two points")
        if np.any(np.diff(x) <= 0):
            raise ValueError("abscissae must be strictly ascending")
        if np.any(y < 0):
            raise ValueError("density ordinates must be non-negative")
        total = float(np.trapezoid(y, x))
        if abs(total - 1.0) > self.mass_tol:
            raise ValueError(f"grid density carries mass {total}, not 1")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def integral(self) -> float:
        return float(np.trapezoid(self.y, self.x))

    def mean(self) -> float:
        return float(np.trapezoid(self.x * self.y, self.x))

    def step(self) -> float:
        steps = np.diff(self.x)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12):
            raise ValueError("grid is not uniform")
        return float(steps[0])

    def to_csv(self) -> str:
        """Two-column CSV rendering for plotting."""
        lines = ["x,density"]
        lines += [f"{a:.12g},{b:.12g}" for a, b in zip(self.x, self.y)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MapPiece:
    """One strictly monotone piece of a map y = f(x) on (lo, hi), given with
    its inverse x = inv(y) and the derivative of the inverse."""

    lo: float
    hi: float
    forward: Callable[[float], float]
    inverse: Callable[[float], float]
    inverse_deriv: Callable[[float], float]


@dataclass(frozen=True)
class MonotoneMap:
    pieces: tuple[MapPiece, ...]

    def __init__(self, pieces: Sequence[MapPiece]):
        pieces = tuple(pieces)
        if not pieces:
            raise ValueError("map needs at least one piece")
        for piece in pieces:
            self._check_piece(piece)
        object.__setattr__(self, "pieces", pieces)

    @staticmethod
    def _check_piece(piece: MapPiece, samples: int = 33):
        lo = piece.lo if math.isfinite(piece.lo) else -20.0
        hi = piece.hi if math.isfinite(piece.hi) else 20.0
        xs = np.linspace(lo + 1e-9, hi - 1e-9, samples)
        ys = [piece.forward(x) for x in xs]
        # round trip must be the identity
        for x, y in zip(xs, ys):
            if abs(piece.inverse(y) - x) > 1e-9 * max(1.0, abs(x)):
                raise ValueError("inverse does not undo the forward map")
        # derivative of the inverse must not change sign inside the piece
        derivs = [piece.inverse_deriv(y) for y in ys]
        signs = {d > 0 for d in derivs if d != 0}
        if len(signs) > 1:
            raise ValueError("map piece is not strictly monotone")


def push_density(
    source: Distribution,
    m: MonotoneMap,
    grid: Sequence[float],
    mass_tol: float = 1e-3,
) -> GridDensity:
    """Density of f(xi) on the given grid, summing phi(inv(y)) |inv'(y)|
    over the monotone pieces whose image contains y.

    `mass_tol` is the normalization check on the resulting grid; pass
    math.inf when the grid deliberately truncates a heavy tail and only
    pointwise values are wanted."""
    grid = np.asarray(grid, dtype=float)
    out = np.zeros_like(grid)
    for piece in m.pieces:
        y_lo = piece.forward(piece.lo) if math.isfinite(piece.lo) else None
        y_hi = piece.forward(piece.hi) if math.isfinite(piece.hi) else None
        bounds = [v for v in (y_lo, y_hi) if v is not None]
        for i, y in enumerate(grid):
            if len(bounds) == 2 and not min(bounds) <= y <= max(bounds):
                continue
            x = piece.inverse(y)
            if not piece.lo <= x <= piece.hi:
                continue
            out[i] += source.pdf(x) * abs(piece.inverse_deriv(y))
    return GridDensity(grid, out, mass_tol=mass_tol)


def convolve(f: GridDensity, g: GridDensity) -> GridDensity:
    """Density of the sum of two independent variables tabulated on uniform
    grids with equal step: the discrete composition scaled by the step."""
    hf, hg = f.step(), g.step()
    if not math.isclose(hf, hg, rel_tol=1e-9):
        raise ValueError(f"grid steps differ: {hf} vs {hg}")
    base = np.convolve(f.y, g.y)
    nf, ng = f.y.size - 1, g.y.size - 1
    y = np.zeros_like(base)
    # trapezoid rule per output point: half weight at the overlap endpoints
    for m in range(base.size):
        k_lo, k_hi = max(0, m - ng), min(nf, m)
        if k_lo < k_hi:
            y[m] = base[m] - 0.5 * (
                f.y[k_lo] * g.y[m - k_lo] + f.y[k_hi] * g.y[m - k_hi]
            )
    y *= hf
    x0 = f.x[0] + g.x[0]
    x = x0 + hf * np.arange(y.size)
    return GridDensity(x, y)


def correlation(sample_pairs: Sequence[tuple[float, float]]) -> float:
    """Pearson correlation coefficient of paired observations."""
    pairs = np.asarray(sample_pairs, dtype=float)
    if pairs.ndim != 2 or pairs.shape[1] != 2 or pairs.shape[0] < 2:
        raise ValueError("need at least two (x, y) pairs")
    x = pairs[:, 0] - pairs[:, 0].mean()
    y = pairs[:, 1] - pairs[:, 1].mean()
    sx = float(np.sqrt((x**2).sum()))
    sy = float(np.sqrt((y**2).sum()))
    if sx == 0.0 or sy == 0.0:
        raise ValueError("correlation undefined for a constant coordinate")
    r = float((x * y).sum() / (sx * sy))
    return max(-1.0, min(1.0, r))


def bivariate_normal_pdf(
    mean_x: float,
    mean_y: float,
    sigma_x: float,
    sigma_y: float,
    r: float,
    x: float,
    y: float,
) -> float:
    """Two-dimensional normal density at (x, y)."""
    if sigma_x <= 0 or sigma_y <= 0:
        raise ValueError("scales must be positive")
    if not abs(r) < 1:
        raise ValueError("degenerate law: |r| must be < 1")
    u = (x - mean_x) / sigma_x
    v = (y - mean_y) / sigma_y
    quad = (u * u - 2.0 * r * u * v + v * v) / (2.0 * (1.0 - r * r))
    norm = 2.0 * math.pi * sigma_x * sigma_y * math.sqrt(1.0 - r * r)
    return math.exp(-quad) / norm


def encounter_probability(window, wait) -> Fraction:
    """Probability that two arrivals uniform on a window of length T meet
    when the first waits w: the area between y = x +/- w in the T x T
    square, 1 - ((T - w)/T)^2, exactly."""
    T, w = Fraction(window), Fraction(wait)
    if not 0 < w <= T:
        raise ValueError("need 0 < wait <= window")
    return 1 - ((T - w) / T) ** 2
