"""Distribution families with pmf/pdf, cdf, moments and quantiles, plus
sample location/scale statistics.

Conventions
-----------
* The uniform and triangular families live on [-a, a] with half-width a.
  The uniform density is 1/(2a), which is what unit area requires.
* The half-Cauchy law has density 2/(pi (1 + x^2)) on [0, inf); its mean
  does not exist and its variance is infinite.  Infinite/undefined moments
  are reported as inf/nan, never raised.
* The normal cdf is computed by adaptive quadrature of the even one-sided
  integrand (absolute tolerance 1e-12), the same decomposition used for
  one-sided normal tables.
* Discrete pmfs are computed in exact rational arithmetic and rendered to
  float at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .quadrature import adaptive_simpson

__all__ = [
    "Moments",
    "Distribution",
    "Uniform",
    "Triangular",
    "Binomial",
    "Poisson",
    "Hypergeometric",
    "Normal",
    "HalfCauchy",
    "EmpiricalGrid",
    "Sample",
    "SampleStats",
    "mass_or_density",
    "cdf",
    "moments",
    "quantile",
    "sample_stats",
    "grouped_moment",
    "grouped_mode",
    "chebyshev_bound",
    "standard_normal_one_sided",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


class Moments(NamedTuple):
    mean: float
    variance: float
    third_central: float
    fourth_central: float


def standard_normal_one_sided(z: float, tol: float = 1e-12) -> float:
    """One-sided normal table value: integral of the standard density from
    0 to z.  Tends to 1/2 as z grows."""
    if z == 0.0:
        return 0.0
    sign = 1.0 if z > 0 else -1.0
    hi = min(abs(z), 40.0)
    val = adaptive_simpson(
        lambda x: math.exp(-0.5 * x * x) / _SQRT_2PI, 0.0, hi, tol=tol
    )
    return sign * val


class Distribution:
    """Base class; subclasses implement pdf-or-pmf, cdf and moments."""

    discrete = False

    def pdf(self, x: float) -> float:
        raise NotImplementedError

    def cdf(self, x: float) -> float:
        raise NotImplementedError

    def moments(self) -> Moments:
        raise NotImplementedError

    def support(self) -> tuple[float, float]:
        raise NotImplementedError

    def quantile(self, p: float) -> float:
        """Smallest x with cdf(x) >= p."""
        if not 0.0 < p < 1.0:
            raise ValueError("quantile level must lie strictly in (0, 1)")
        if self.discrete:
            k = 0
            acc = 0.0
            while True:
                acc = self.cdf(k)
                if acc >= p - 1e-15:
                    return float(k)
                k += 1
        lo, hi = self._bracket(p)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self.cdf(mid) >= p:
                hi = mid
            else:
                lo = mid
            if hi - lo < 1e-13 * max(1.0, abs(hi)):
                break
        return 0.5 * (lo + hi)

    def _bracket(self, p: float) -> tuple[float, float]:
        lo, hi = self.support()
        if math.isinf(lo) or math.isinf(hi):
            lo, hi = -1.0, 1.0
            while self.cdf(lo) > p:
                lo *= 2.0
            while self.cdf(hi) < p:
                hi *= 2.0
        return lo, hi


@dataclass(frozen=True)
class Uniform(Distribution):
    """Uniform on [-a, a] with half-width a; density 1/(2a)."""

    half_width: float

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("half-width must be positive")

    def support(self):
        return -self.half_width, self.half_width

    def pdf(self, x):
        a = self.half_width
        return 1.0 / (2.0 * a) if -a <= x <= a else 0.0

    def cdf(self, x):
        a = self.half_width
        if x <= -a:
            return 0.0
        if x >= a:
            return 1.0
        return (x + a) / (2.0 * a)

    def quantile(self, p):
        if not 0.0 < p < 1.0:
            raise ValueError("quantile level must lie strictly in (0, 1)")
        return self.half_width * (2.0 * p - 1.0)

    def moments(self):
        a = self.half_width
        return Moments(0.0, a * a / 3.0, 0.0, a**4 / 5.0)


@dataclass(frozen=True)
class Triangular(Distribution):
    """Symmetric triangle on [-a, a], peak 1/a at the origin."""

    half_width: float

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("half-width must be positive")

    def support(self):
        return -self.half_width, self.half_width

    def pdf(self, x):
        a = self.half_width
        if -a <= x <= a:
            return (1.0 - abs(x) / a) / a
        return 0.0

    def cdf(self, x):
        a = self.half_width
        if x <= -a:
            return 0.0
        if x >= a:
            return 1.0
        if x <= 0:
            return 0.5 * (1.0 + x / a) ** 2
        return 1.0 - 0.5 * (1.0 - x / a) ** 2

    def quantile(self, p):
        if not 0.0 < p < 1.0:
            raise ValueError("quantile level must lie strictly in (0, 1)")
        a = self.half_width
        if p <= 0.5:
            return a * (math.sqrt(2.0 * p) - 1.0)
        return a * (1.0 - math.sqrt(2.0 * (1.0 - p)))

    def moments(self):
        a = self.half_width
        return Moments(0.0, a * a / 6.0, 0.0, a**4 / 15.0)


def _check_integer(x) -> int:
    if isinstance(x, float):
        if not x.is_integer():
            raise ValueError(f"discrete family needs integer argument, got {x}")
        x = int(x)
    return int(x)


@dataclass(frozen=True)
class Binomial(Distribution):
    """Number of successes in n trials with success probability p."""

    n: int
    p: Fraction

    discrete = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one trial")
        p = Fraction(self.p)
        if not 0 <= p <= 1:
            raise ValueError("success probability outside [0, 1]")
        object.__setattr__(self, "p", p)

    def support(self):
        return 0.0, float(self.n)

    def pmf_exact(self, k: int) -> Fraction:
        k = _check_integer(k)
        if not 0 <= k <= self.n:
            return Fraction(0)
        p, q = self.p, 1 - self.p
        return math.comb(self.n, k) * p**k * q ** (self.n - k)

    def pdf(self, x):
        return float(self.pmf_exact(x))

    def cdf(self, x):
        if x < 0:
            return 0.0
        k = min(int(math.floor(x)), self.n)
        return float(
            sum((self.pmf_exact(j) for j in range(k + 1)), start=Fraction(0))
        )

    def moments(self):
        n, p = self.n, float(self.p)
        q = 1.0 - p
        return Moments(
            n * p,
            n * p * q,
            n * p * q * (q - p),
            n * p * q * (1.0 + 3.0 * (n - 2) * p * q),
        )


@dataclass(frozen=True)
class Poisson(Distribution):
    """Poisson law with rate a: P(k) = a^k e^{-a} / k!."""

    rate: float

    discrete = True

    def __post_init__(self):
        if self.rate <= 0:
            raise ValueError("rate must be positive")

    def support(self):
        return 0.0, math.inf

    def pdf(self, x):
        k = _check_integer(x)
        if k < 0:
            return 0.0
        return math.exp(
            k * math.log(self.rate) - self.rate - math.lgamma(k + 1)
        )

    def cdf(self, x):
        if x < 0:
            return 0.0
        k = int(math.floor(x))
        return sum(self.pdf(j) for j in range(k + 1))

    def moments(self):
        a = self.rate
        return Moments(a, a, a, a + 3.0 * a * a)


@dataclass(frozen=True)
class Hypergeometric(Distribution):
    """Marked items among n draws without replacement: N items, M marked."""

    N: int
    M: int
    n: int

    discrete = True

    def __post_init__(self):
        if not (0 <= self.M <= self.N and 1 <= self.n <= self.N):
            raise ValueError("need 0 <= M <= N and 1 <= n <= N")

    def support(self):
        return float(max(0, self.n - (self.N - self.M))), float(
            min(self.M, self.n)
        )

    def pmf_exact(self, k: int) -> Fraction:
        k = _check_integer(k)
        lo, hi = self.support()
        if not lo <= k <= hi:
            return Fraction(0)
        return Fraction(
            math.comb(self.M, k) * math.comb(self.N - self.M, self.n - k),
            math.comb(self.N, self.n),
        )

    def pdf(self, x):
        return float(self.pmf_exact(x))

    def cdf(self, x):
        lo, hi = self.support()
        if x < lo:
            return 0.0
        k = min(int(math.floor(x)), int(hi))
        return float(
            sum(
                (self.pmf_exact(j) for j in range(int(lo), k + 1)),
                start=Fraction(0),
            )
        )

    def moments(self):
        # exact central sums over the finite support, rendered to float
        lo, hi = (int(v) for v in self.support())
        mean = Fraction(self.n * self.M, self.N)
        cm = [Fraction(0)] * 3
        for k in range(lo, hi + 1):
            pk = self.pmf_exact(k)
            d = k - mean
            for j, power in enumerate((2, 3, 4)):
                cm[j] += pk * d**power
        return Moments(float(mean), *(float(c) for c in cm))


@dataclass(frozen=True)
class Normal(Distribution):
    """Normal law with location a and scale sigma > 0."""

    loc: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    def support(self):
        return -math.inf, math.inf

    def pdf(self, x):
        z = (x - self.loc) / self.scale
        return math.exp(-0.5 * z * z) / (self.scale * _SQRT_2PI)

    def cdf(self, x):
        z = (x - self.loc) / self.scale
        return 0.5 + standard_normal_one_sided(z)

    def moments(self):
        s2 = self.scale * self.scale
        return Moments(self.loc, s2, 0.0, 3.0 * s2 * s2)


@dataclass(frozen=True)
class HalfCauchy(Distribution):
    """Density 2/(pi (1 + x^2)) on [0, inf); mean undefined, variance infinite."""

    def support(self):
        return 0.0, math.inf

    def pdf(self, x):
        return 2.0 / (math.pi * (1.0 + x * x)) if x >= 0 else 0.0

    def cdf(self, x):
        return (2.0 / math.pi) * math.atan(x) if x > 0 else 0.0

    def quantile(self, p):
        if not 0.0 < p < 1.0:
            raise ValueError("quantile level must lie strictly in (0, 1)")
        return math.tan(0.5 * math.pi * p)

    def moments(self):
        return Moments(math.nan, math.inf, math.nan, math.inf)


@dataclass(frozen=True)
class EmpiricalGrid(Distribution):
    """Density tabulated on an ascending grid; must integrate to 1 by the
    trapezoid rule (tolerance 1e-9)."""

    points: tuple[float, ...]
    densities: tuple[float, ...]

    def __post_init__(self):
        pts = tuple(float(x) for x in self.points)
        dens = tuple(float(y) for y in self.densities)
        if len(pts) != len(dens) or len(pts) < 2:
            raise ValueError("need matching grids of at least two points")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("grid abscissae must be strictly ascending")
        if any(y < 0 for y in dens):
            raise ValueError("densities must be non-negative")
        total = np.trapezoid(dens, pts)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"grid density integrates to {total}, not 1")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "densities", dens)

    def support(self):
        return self.points[0], self.points[-1]

    def pdf(self, x):
        lo, hi = self.support()
        if not lo <= x <= hi:
            return 0.0
        return float(np.interp(x, self.points, self.densities))

    def cdf(self, x):
        lo, hi = self.support()
        if x <= lo:
            return 0.0
        if x >= hi:
            return 1.0
        pts = np.asarray(self.points)
        dens = np.asarray(self.densities)
        i = int(np.searchsorted(pts, x, side="right")) - 1
        acc = float(np.trapezoid(dens[: i + 1], pts[: i + 1]))
        acc += 0.5 * (self.pdf(x) + dens[i]) * (x - pts[i])
        return min(acc, 1.0)

    def moments(self):
        pts = np.asarray(self.points)
        dens = np.asarray(self.densities)
        mean = float(np.trapezoid(pts * dens, pts))
        cm = [
            float(np.trapezoid((pts - mean) ** k * dens, pts)) for k in (2, 3, 4)
        ]
        return Moments(mean, *cm)


# ---------------------------------------------------------------------------
# functional front end


def mass_or_density(d: Distribution, x: float) -> float:
    return d.pdf(x)


def cdf(d: Distribution, x: float) -> float:
    return d.cdf(x)


def moments(d: Distribution) -> Moments:
    return d.moments()


def quantile(d: Distribution, p: float) -> float:
    return d.quantile(p)


# ---------------------------------------------------------------------------
# samples


@dataclass(frozen=True)
class Sample:
    """Ordered real observations with optional positive weights."""

    values: tuple[float, ...]
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ValueError("sample must be non-empty")
        object.__setattr__(self, "values", vals)
        if self.weights is not None:
            w = tuple(float(x) for x in self.weights)
            if len(w) != len(vals):
                raise ValueError("weights must match values in length")
            if any(x <= 0 for x in w):
                raise ValueError("weights must be positive")
            object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.values)


class SampleStats(NamedTuple):
    mean: float
    weighted_mean: float
    median: float
    midrange: float
    range: float
    mean_abs: float
    variance: float
    std: float
    skewness: float
    excess: float
    probable_error: float


def _nearest_rank_quantile(sorted_vals: Sequence[float], p: float) -> float:
    """Lower-nearest-rank empirical quantile; ties go to the smaller index."""
    n = len(sorted_vals)
    idx = max(0, math.ceil(p * n) - 1)
    return sorted_vals[idx]


def sample_stats(s: Sample) -> SampleStats:
    """Location and scatter statistics of a sample.

    Sample variance and the central moments behind skewness/excess use
    denominator n - 1.  The median is the middle order statistic (odd n)
    or the half-sum of the two middle ones (even n).  The probable error
    is half the distance between the empirical quartiles.
    """
    vals = np.asarray(s.values)
    n = len(vals)
    if n < 2:
        raise ValueError("dispersion statistics need at least two observations")
    mean = float(vals.mean())
    if s.weights is not None:
        w = np.asarray(s.weights)
        weighted_mean = float((w * vals).sum() / w.sum())
    else:
        weighted_mean = mean
    ordered = np.sort(vals)
    if n % 2 == 1:
        median = float(ordered[n // 2])
    else:
        median = float(0.5 * (ordered[n // 2 - 1] + ordered[n // 2]))
    midrange = float(0.5 * (ordered[0] + ordered[-1]))
    rng = float(ordered[-1] - ordered[0])
    dev = vals - mean
    mean_abs = float(np.abs(dev).mean())
    variance = float((dev**2).sum() / (n - 1))
    std = math.sqrt(variance)
    if std > 0:
        z = dev / std  # standardize first so tiny scales cannot underflow
        skewness = float((z**3).sum() / (n - 1))
        excess = float((z**4).sum() / (n - 1)) - 3.0
    else:
        skewness = excess = math.nan
    q1 = _nearest_rank_quantile(ordered, 0.25)
    q3 = _nearest_rank_quantile(ordered, 0.75)
    probable_error = 0.5 * (q3 - q1)
    return SampleStats(
        mean,
        weighted_mean,
        median,
        midrange,
        rng,
        mean_abs,
        variance,
        std,
        skewness,
        excess,
        probable_error,
    )


def grouped_moment(frequencies: Sequence[tuple[float, int]], order: int) -> float:
    """Raw moment of grouped data: sum of n_x x^s over the total count."""
    if not frequencies:
        raise ValueError("no frequencies given")
    total = 0
    acc = 0.0
    for value, count in frequencies:
        if count <= 0:
            raise ValueError("counts must be positive")
        total += count
        acc += count * float(value) ** order
    return acc / total


def grouped_mode(frequencies: Sequence[tuple[float, int]]) -> float:
    """Most frequent value of grouped data; first one wins on ties."""
    if not frequencies:
        raise ValueError("no frequencies given")
    return max(frequencies, key=lambda vc: vc[1])[0]


def chebyshev_bound(sigma: float, beta: float) -> float:
    """Guaranteed lower bound on P(|xi - E xi| < beta): max(0, 1 - s^2/b^2)."""
    if beta <= 0:
        raise ValueError("deviation bound must be positive")
    if sigma < 0:
        raise ValueError("standard deviation cannot be negative")
    return max(0.0, 1.0 - (sigma * sigma) / (beta * beta))
