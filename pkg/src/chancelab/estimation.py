"""Observation fitting: least squares via normal equations built from
Gauss brackets, minimax (largest-absolute-residual) fitting by linear
programming, the even-power-norm bridge between the two, and interval
estimation of a measured constant.

Sign convention: observation equations are written a_i x + b_i y + ... +
w_i = 0, so residuals are v_i = a_i xhat + ... + w_i.  Most modern texts
flip the sign of w; watch out when importing data.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import linprog

from .distributions import Normal, Sample

__all__ = [
    "LinearSystem",
    "FitResult",
    "gauss_bracket",
    "least_squares",
    "minimax_fit",
    "pnorm_fit",
    "mean_with_error",
    "confidence_interval",
    "bervi_coverage",
]

CONDITION_WARN = 1e8
IRLS_MAX_ITER = 200
IRLS_TOL = 1e-10


@dataclass(frozen=True)
class LinearSystem:
    """Redundant observation equations a_i x + b_i y + ... + w_i = 0."""

    coefficients: np.ndarray
    free_terms: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.coefficients, dtype=float))
        w = np.asarray(self.free_terms, dtype=float).ravel()
        n, k = a.shape
        if k < 1 or n <= k:
            raise ValueError(
                f"need more observations than unknowns: n={n}, k={k}"
            )
        if w.shape != (n,):
            raise ValueError("free terms must match the observation count")
        if np.linalg.matrix_rank(a, tol=1e-10) < k:
            raise ValueError("coefficient matrix is rank deficient")
        object.__setattr__(self, "coefficients", a)
        object.__setattr__(self, "free_terms", w)

    @property
    def n(self) -> int:
        return self.coefficients.shape[0]

    @property
    def k(self) -> int:
        return self.coefficients.shape[1]

    @classmethod
    def from_csv(cls, text: str) -> "LinearSystem":
        """Parse k coefficient columns followed by a w column; header row
        required."""
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if len(lines) < 2:
            raise ValueError("CSV needs a header row and data rows")
        rows = [
            [float(cell) for cell in ln.split(",")] for ln in lines[1:]
        ]
        data = np.array(rows)
        return cls(data[:, :-1], data[:, -1])


class FitResult(NamedTuple):
    estimates: np.ndarray
    residuals: np.ndarray
    m2: float
    objective: float


def gauss_bracket(u: Sequence[float], v: Sequence[float]) -> float:
    """The bracket [uv] = sum of u_i v_i."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError("bracket arguments must have equal length")
    return float(u @ v)


def _result(sys: LinearSystem, estimates: np.ndarray, objective: float):
    residuals = sys.coefficients @ estimates + sys.free_terms
    m2 = float(residuals @ residuals) / (sys.n - sys.k)
    return FitResult(estimates, residuals, m2, objective)


def least_squares(sys: LinearSystem) -> FitResult:
    """Solve the normal equations [aa]x + [ab]y + ... + [aw] = 0.  The
    variance of unit weight is m2 = [vv]/(n - k)."""
    a = sys.coefficients
    normal = a.T @ a
    cond = np.linalg.cond(normal)
    if cond > CONDITION_WARN:
        warnings.warn(
            f"normal equations badly conditioned (cond={cond:.3g})",
            stacklevel=2,
        )
    try:
        estimates = np.linalg.solve(normal, -(a.T @ sys.free_terms))
    except np.linalg.LinAlgError as exc:
        raise ValueError("singular normal equations") from exc
    res = _result(sys, estimates, 0.0)
    return FitResult(
        res.estimates, res.residuals, res.m2, float(res.residuals @ res.residuals)
    )


def minimax_fit(sys: LinearSystem) -> FitResult:
    """Minimize the largest absolute residual |v_max| by linear programming:
    min t subject to -t <= a_i . x + w_i <= t."""
    n, k = sys.n, sys.k
    a, w = sys.coefficients, sys.free_terms
    # variables: (x_1..x_k, t); constraints A_ub z <= b_ub
    a_ub = np.vstack(
        [
            np.hstack([a, -np.ones((n, 1))]),
            np.hstack([-a, -np.ones((n, 1))]),
        ]
    )
    b_ub = np.concatenate([-w, w])
    c = np.zeros(k + 1)
    c[-1] = 1.0
    opt = linprog(
        c, A_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * (k + 1)
    )
    if not opt.success:
        raise RuntimeError(f"minimax LP failed: {opt.message}")
    return _result(sys, opt.x[:k], float(opt.x[-1]))


def pnorm_fit(sys: LinearSystem, k_exponent: int) -> FitResult:
    """Minimize the even-power criterion sum v_i^(2k) by iteratively
    reweighted least squares.  k = 1 is ordinary least squares; growing k
    drives the estimates toward the minimax solution.

    Weights are |v_i|^(2k-2); the reweighted step is damped by 1/(2k - 1),
    which makes each update the exact Newton step of the convex even-power
    objective.  Iteration cap 200, convergence 1e-10 on the estimates."""
    if k_exponent < 1:
        raise ValueError("exponent index must be at least 1")
    a, w = sys.coefficients, sys.free_terms
    estimates = least_squares(sys).estimates
    if k_exponent == 1:
        res = _result(sys, estimates, 0.0)
        return FitResult(
            res.estimates,
            res.residuals,
            res.m2,
            float((res.residuals**2).sum()),
        )
    power = 2 * k_exponent - 2

    def log_objective(x):
        # log of sum v_i^(2k), computed in scaled form to avoid overflow
        v = a @ x + w
        scale = np.abs(v).max()
        if scale == 0.0:
            return -math.inf
        inner = float(((np.abs(v) / scale) ** (2 * k_exponent)).sum())
        return math.log(inner) + 2 * k_exponent * math.log(scale)

    for _ in range(IRLS_MAX_ITER):
        v = a @ estimates + w
        scale = np.abs(v).max()
        if scale == 0.0:
            break
        u = v / scale  # keeps the high powers in floating range
        weights = np.abs(u) ** power
        wa = a * weights[:, None]
        try:
            full = np.linalg.solve(a.T @ wa, -(wa.T @ v))
        except np.linalg.LinAlgError as exc:
            raise RuntimeError("IRLS normal equations became singular") from exc
        delta = full / (2 * k_exponent - 1)
        # backtrack if the objective would not decrease
        ref = log_objective(estimates)
        for _back in range(60):
            if log_objective(estimates + delta) <= ref:
                break
            delta *= 0.5
        shift = float(np.max(np.abs(delta)))
        estimates = estimates + delta
        if shift < IRLS_TOL:
            break
    else:
        raise RuntimeError(
            f"IRLS did not converge within {IRLS_MAX_ITER} iterations"
        )
    v = a @ estimates + w
    return _result(sys, estimates, float((v ** (2 * k_exponent)).sum()))


class MeanWithError(NamedTuple):
    mean: float
    variance_of_mean: float
    mean_square_error_of_mean: float


def mean_with_error(s: Sample) -> MeanWithError:
    """Arithmetic mean with its variance sum (x_i - xbar)^2 / (n (n-1))
    and the square root of that variance."""
    vals = np.asarray(s.values)
    n = len(vals)
    if n < 2:
        raise ValueError("need at least two observations")
    mean = float(vals.mean())
    var = float(((vals - mean) ** 2).sum() / (n * (n - 1)))
    return MeanWithError(mean, var, math.sqrt(var))


class ConfidenceInterval(NamedTuple):
    low: float
    high: float
    one_sigma_coverage: float  # probability of the xbar +/- m band


def confidence_interval(s: Sample, coverage: float) -> ConfidenceInterval:
    """Two-sided normal interval xbar +/- z m, with z the standard normal
    quantile of (1 + coverage)/2 and m the mean square error of the mean.
    The coverage of the plain +/- m band is reported alongside."""
    if not 0.0 < coverage < 1.0:
        raise ValueError("coverage must lie strictly in (0, 1)")
    est = mean_with_error(s)
    z = Normal(0.0, 1.0).quantile(0.5 * (1.0 + coverage))
    half = z * est.mean_square_error_of_mean
    std = Normal(0.0, 1.0)
    band = std.cdf(1.0) - std.cdf(-1.0)
    return ConfidenceInterval(est.mean - half, est.mean + half, band)


def bervi_coverage(n: int) -> Fraction:
    """Probability that the sample range [x_1, x_n] covers the measured
    constant: exactly 1 - 1/2^(n-1)."""
    if n < 2:
        raise ValueError("need at least two observations")
    return 1 - Fraction(1, 2 ** (n - 1))
