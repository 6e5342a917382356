"""Laws of large numbers, the De Moivre-Laplace theorems with measured
approximation error, Nikolaus Bernoulli's bound, and the beta posterior of
an unknown proportion together with its normal limit.

"Exact" binomial quantities are computed in rational arithmetic up to
n = 10**4 and in log-space floating point above that threshold.  Interval
conditions on discrete sums use closed intervals; no continuity correction
is applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .distributions import Normal, standard_normal_one_sided

__all__ = [
    "BinomialApprox",
    "BetaPosterior",
    "bernoulli_sample_size",
    "lln_gap",
    "poisson_lln_gap",
    "dml_local",
    "dml_integral",
    "nb_bound",
    "bayes_posterior_mass",
    "timerding_limit_check",
]

EXACT_LIMIT = 10**4  # rational arithmetic up to here, log-space beyond

_STD_NORMAL = Normal(0.0, 1.0)


def _phi(z: float) -> float:
    if math.isinf(z):
        return 0.0 if z < 0 else 1.0
    return _STD_NORMAL.cdf(z)


def _band_sum_exact(n: int, p: Fraction, lo: int, hi: int) -> Fraction:
    """Exact P(lo <= mu <= hi) for mu ~ binomial(n, p), by integer sums."""
    lo = max(lo, 0)
    hi = min(hi, n)
    if lo > hi:
        return Fraction(0)
    u, v = p.numerator, p.denominator
    w = v - u
    total = 0
    # term(k) = C(n,k) u^k w^(n-k); advance incrementally from k = lo
    term = math.comb(n, lo) * u**lo * w ** (n - lo)
    for k in range(lo, hi + 1):
        total += term
        if k < hi:
            if w == 0:
                term = 0 if k + 1 < n else u**n
                continue
            term = term * (n - k) * u // ((k + 1) * w)
    return Fraction(total, v**n)


def _band_sum_log(n: int, p: float, lo: int, hi: int) -> float:
    lo = max(lo, 0)
    hi = min(hi, n)
    if lo > hi:
        return 0.0
    logs = [
        math.lgamma(n + 1)
        - math.lgamma(k + 1)
        - math.lgamma(n - k + 1)
        + k * math.log(p)
        + (n - k) * math.log1p(-p)
        for k in range(lo, hi + 1)
    ]
    m = max(logs)
    return math.exp(m) * sum(math.exp(x - m) for x in logs)


def binomial_band_probability(n: int, p, lo: int, hi: int) -> float:
    """P(lo <= mu <= hi) for the binomial law; exact rationals up to
    n = 10**4, log-space summation above."""
    if n <= EXACT_LIMIT:
        return float(_band_sum_exact(n, Fraction(p), lo, hi))
    return _band_sum_log(n, float(p), lo, hi)


@dataclass(frozen=True)
class BinomialApprox:
    """Binomial setting for the normal approximation theorems."""

    n: int
    p: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one trial")
        if not 0.0 < float(self.p) < 1.0:
            raise ValueError("p must lie strictly inside (0, 1)")

    @property
    def mean(self) -> float:
        return self.n * float(self.p)

    @property
    def spread(self) -> float:
        p = float(self.p)
        return self.n * p * (1.0 - p)


class SampleSizes(NamedTuple):
    chebyshev_n: int
    exact_n: int


def bernoulli_sample_size(p, eps: float, delta: float) -> SampleSizes:
    """Trial counts guaranteeing P(|mu/n - p| > eps) <= delta: the Chebyshev
    bound ceil(pq/(eps^2 delta)) and the smallest n found by exact binomial
    tail summation.  The exact count never exceeds the Chebyshev one."""
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must lie strictly inside (0, 1)")
    eps = Fraction(eps)
    delta = Fraction(delta)
    if eps <= 0 or not 0 < delta < 1:
        raise ValueError("need eps > 0 and delta in (0, 1)")
    q = 1 - p
    chebyshev_n = math.ceil(p * q / (eps * eps * delta))
    exact_n = None
    for n in range(1, chebyshev_n + 1):
        # band |k - np| <= n eps, complement is the tail
        lo = math.ceil(n * (p - eps))
        hi = math.floor(n * (p + eps))
        inside = _band_sum_exact(n, p, lo, hi)
        if 1 - inside <= delta:
            exact_n = n
            break
    if exact_n is None:
        exact_n = chebyshev_n
    return SampleSizes(chebyshev_n, exact_n)


def lln_gap(p, n: int, eps: float) -> float:
    """Exact P(|mu/n - p| < eps) for binomial frequency, by summation."""
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must lie strictly inside (0, 1)")
    eps = Fraction(eps)
    # strict band: n(p - eps) < k < n(p + eps)
    lo = math.floor(n * (p - eps)) + 1
    hi = math.ceil(n * (p + eps)) - 1
    if n <= EXACT_LIMIT:
        return float(_band_sum_exact(n, p, lo, hi))
    return _band_sum_log(n, float(p), lo, hi)


def poisson_lln_gap(ps: Sequence[float], eps: float) -> float:
    """P(|mu/n - pbar| < eps) for independent non-identical Bernoulli trials,
    by dynamic-programming convolution of the n two-point laws."""
    n = len(ps)
    if n == 0:
        raise ValueError("need at least one trial")
    if n > 10**4:
        raise ValueError("desk scale only: at most 10**4 trials")
    ps = [float(p) for p in ps]
    if any(not 0.0 < p < 1.0 for p in ps):
        raise ValueError("every per-trial probability must lie in (0, 1)")
    dist = [1.0]
    for p in ps:
        nxt = [0.0] * (len(dist) + 1)
        for k, mass in enumerate(dist):
            nxt[k] += mass * (1.0 - p)
            nxt[k + 1] += mass * p
        dist = nxt
    pbar = sum(ps) / n
    return sum(
        mass for k, mass in enumerate(dist) if abs(k / n - pbar) < eps
    )


class LocalApprox(NamedTuple):
    approx: float
    exact: float
    abs_err: float


def dml_local(n: int, p, mu: int) -> LocalApprox:
    """Local normal approximation to the binomial pmf at mu, alongside the
    exact value and the absolute error."""
    if not 0 <= mu <= n:
        raise ValueError("mu must lie in [0, n]")
    pf = float(p)
    npq = n * pf * (1.0 - pf)
    approx = math.exp(-((mu - n * pf) ** 2) / (2.0 * npq)) / math.sqrt(
        2.0 * math.pi * npq
    )
    exact = binomial_band_probability(n, p, mu, mu)
    return LocalApprox(approx, exact, abs(approx - exact))


def dml_integral(n: int, p, a: float, b: float) -> LocalApprox:
    """Integral normal approximation: Phi(b) - Phi(a) versus the exact
    probability that the standardized binomial count lies in [a, b]."""
    if not a < b:
        raise ValueError("need a < b")
    pf = float(p)
    mean = n * pf
    scale = math.sqrt(n * pf * (1.0 - pf))
    approx = _phi(b) - _phi(a)
    lo = 0 if math.isinf(a) else math.ceil(mean + a * scale)
    hi = n if math.isinf(b) else math.floor(mean + b * scale)
    exact = binomial_band_probability(n, p, lo, hi)
    return LocalApprox(approx, exact, abs(approx - exact))


def nb_bound(s: float) -> float:
    """Nikolaus Bernoulli's approximation 1 - exp(-s^2/2) to the probability
    that the standardized binomial count stays within [-s, s]."""
    if s <= 0:
        raise ValueError("s must be positive")
    return 1.0 - math.exp(-0.5 * s * s)


@dataclass(frozen=True)
class BetaPosterior:
    """Posterior of an unknown proportion after p hits and q misses of an
    interval [b, c] inside [0, 1], starting from a uniform prior."""

    p: int
    q: int
    b: Fraction
    c: Fraction

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("hit and miss counts must be non-negative")
        b, c = Fraction(self.b), Fraction(self.c)
        if not 0 <= b < c <= 1:
            raise ValueError("need 0 <= b < c <= 1")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)


def _beta_cdf_exact(p: int, q: int, x: Fraction) -> Fraction:
    """Exact regularized incomplete beta I_x(p+1, q+1), via the binomial-sum
    identity with m = p + q + 1 trials."""
    if x <= 0:
        return Fraction(0)
    if x >= 1:
        return Fraction(1)
    m = p + q + 1
    u, v = x.numerator, x.denominator
    w = v - u
    total = 0
    term = math.comb(m, p + 1) * u ** (p + 1) * w ** (m - p - 1)
    for j in range(p + 1, m + 1):
        total += term
        if j < m:
            term = term * (m - j) * u // ((j + 1) * w)
    return Fraction(total, v**m)


def bayes_posterior_mass(bp: BetaPosterior) -> Fraction:
    """Exact posterior probability that the proportion lies in [b, c]:
    the normalized polynomial integral of u^p (1-u)^q."""
    return _beta_cdf_exact(bp.p, bp.q, bp.c) - _beta_cdf_exact(
        bp.p, bp.q, bp.b
    )


class LimitCheck(NamedTuple):
    posterior_prob: float
    normal_prob: float
    abs_err: float


def timerding_limit_check(p: int, q: int, a: float, b: float) -> LimitCheck:
    """Compare the exact beta-posterior mass of the standardized interval
    (center p/n, scale sqrt(pq/n^3), n = p + q) with the standard normal
    probability of [a, b].  The error shrinks as p and q grow."""
    if p < 10 or q < 10:
        raise ValueError("asymptotic regime needs p, q >= 10")
    if not a < b:
        raise ValueError("need a < b")
    n = p + q
    center = Fraction(p, n)
    scale = math.sqrt(p * q / n**3)
    lo = Fraction(0) if math.isinf(a) else center + Fraction(a * scale)
    hi = Fraction(1) if math.isinf(b) else center + Fraction(b * scale)
    lo = max(Fraction(0), min(lo, Fraction(1)))
    hi = max(Fraction(0), min(hi, Fraction(1)))
    if lo >= hi:
        posterior = 0.0
    else:
        posterior = float(bayes_posterior_mass(BetaPosterior(p, q, lo, hi)))
    normal = _phi(b) - _phi(a)
    return LimitCheck(posterior, normal, abs(posterior - normal))
