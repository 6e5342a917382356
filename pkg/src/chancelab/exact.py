"""Exact rational combinatorial probability.

Everything in this module works with :class:`fractions.Fraction`; no
floating point is used anywhere.  Probabilities come out in lowest terms
with positive denominators, which Fraction guarantees by construction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

__all__ = [
    "FiniteEventSpace",
    "CauseSystem",
    "classical_probability",
    "union_probability",
    "conditional_probability",
    "total_probability",
    "bayes_posteriors",
    "dice_sum_count",
    "points_division",
    "ruin_chances",
    "huygens_draw",
    "de_mere",
    "poisson_urn",
]


def _as_fraction(x) -> Fraction:
    """Convert ints, Fractions and fraction strings ("3/8") to Fraction."""
    if isinstance(x, float):
        raise TypeError(
            "floats are not accepted in exact computations; "
            "pass a Fraction, int, or string like '3/8'"
        )
    return Fraction(x)


def classical_probability(favourable: int, total: int) -> Fraction:
    """Probability of an event with `favourable` out of `total` equally
    possible cases, as an exact fraction in lowest terms."""
    if total < 1:
        raise ValueError("total number of cases must be at least 1")
    if not 0 <= favourable <= total:
        raise ValueError(
            f"favourable cases must lie in [0, {total}], got {favourable}"
        )
    return Fraction(favourable, total)


@dataclass(frozen=True)
class FiniteEventSpace:
    """A finite space of equally possible cases {0..size-1} with named events."""

    size: int
    events: Mapping[str, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("space must contain at least one case")
        normalized = {}
        for name, subset in self.events.items():
            subset = frozenset(subset)
            if not subset <= frozenset(range(self.size)):
                raise ValueError(f"event {name!r} is not a subset of the space")
            normalized[name] = subset
        object.__setattr__(self, "events", normalized)

    def event(self, name: str) -> frozenset[int]:
        try:
            return self.events[name]
        except KeyError:
            raise KeyError(f"unknown event {name!r}") from None

    def probability(self, name: str) -> Fraction:
        return Fraction(len(self.event(name)), self.size)


def union_probability(space: FiniteEventSpace, names: Sequence[str]) -> Fraction:
    """P(union of named events) by inclusion-exclusion over all non-empty
    intersections.  Equals direct counting of the union set."""
    if not names:
        raise ValueError("at least one event name required")
    sets = [space.event(n) for n in names]
    total = Fraction(0)
    for r in range(1, len(sets) + 1):
        sign = 1 if r % 2 == 1 else -1
        for combo in itertools.combinations(sets, r):
            inter = frozenset.intersection(*combo)
            total += sign * Fraction(len(inter), space.size)
    return total


def conditional_probability(
    space: FiniteEventSpace, a: str, given: str
) -> Fraction:
    """P(a | given) = |a ∩ given| / |given| on an equiprobable space."""
    g = space.event(given)
    if not g:
        raise ZeroDivisionError(
            f"conditional probability undefined: P({given!r}) = 0"
        )
    return Fraction(len(space.event(a) & g), len(g))


@dataclass(frozen=True)
class CauseSystem:
    """Mutually exclusive causes B_i with priors P(B_i) and likelihoods
    P(A|B_i), all exact rationals.  Priors must sum to exactly 1."""

    priors: tuple[Fraction, ...]
    likelihoods: tuple[Fraction, ...]

    def __init__(self, priors, likelihoods):
        priors = tuple(_as_fraction(p) for p in priors)
        likelihoods = tuple(_as_fraction(q) for q in likelihoods)
        if len(priors) != len(likelihoods):
            raise ValueError("priors and likelihoods must have equal length")
        if sum(priors) != 1:
            raise ValueError("priors must sum to exactly 1")
        for x in priors + likelihoods:
            if not 0 <= x <= 1:
                raise ValueError(f"probability {x} outside [0, 1]")
        object.__setattr__(self, "priors", priors)
        object.__setattr__(self, "likelihoods", likelihoods)


def total_probability(system: CauseSystem) -> Fraction:
    """P(A) = sum of P(B_i) P(A|B_i) over the cause system."""
    return sum(
        (p * q for p, q in zip(system.priors, system.likelihoods)),
        start=Fraction(0),
    )


def bayes_posteriors(system: CauseSystem) -> list[Fraction]:
    """Posterior probabilities P(B_i|A); they sum to exactly 1."""
    denom = total_probability(system)
    if denom == 0:
        raise ZeroDivisionError("posterior undefined: total probability is 0")
    return [p * q / denom for p, q in zip(system.priors, system.likelihoods)]


def dice_sum_count(dice: int, faces: int, target: int) -> int:
    """Number of ordered outcomes of `dice` fair `faces`-sided dice whose
    points sum to `target`.  Out-of-range targets count 0."""
    if dice < 1:
        raise ValueError("need at least one die")
    if faces < 2:
        raise ValueError("dice need at least two faces")
    # counts[s] = ways to reach sum s with the dice processed so far
    counts = {0: 1}
    for _ in range(dice):
        nxt: dict[int, int] = {}
        for s, c in counts.items():
            for face in range(1, faces + 1):
                nxt[s + face] = nxt.get(s + face, 0) + c
        counts = nxt
    return counts.get(target, 0)


def points_division(needed_a: int, needed_b: int, p) -> Fraction:
    """Fair share of both stakes owed to player A in an interrupted match:
    the probability that A wins `needed_a` rounds before B wins `needed_b`,
    each round going to A with probability p.

    Recursion: S(0,.) = 1, S(.,0) = 0,
    S(a,b) = p S(a-1,b) + (1-p) S(a,b-1).
    """
    if needed_a < 1 or needed_b < 1:
        raise ValueError("both players must still need at least one round")
    p = _as_fraction(p)
    if not 0 < p < 1:
        raise ValueError("round probability must be strictly inside (0, 1)")
    q = 1 - p
    # S[a][b] = probability A collects a wins before B collects b
    table = [[Fraction(0)] * (needed_b + 1) for _ in range(needed_a + 1)]
    for b in range(1, needed_b + 1):
        table[0][b] = Fraction(1)
    for a in range(1, needed_a + 1):
        for b in range(1, needed_b + 1):
            table[a][b] = p * table[a - 1][b] + q * table[a][b - 1]
    return table[needed_a][needed_b]


def ruin_chances(
    counters_a: int, counters_b: int, p_a, p_b
) -> tuple[Fraction, Fraction]:
    """Probabilities (P_A, P_B) that A (resp. B) wins all the counters in
    the classic ruin walk where each round transfers a counter to A with
    probability p_a and to B with probability p_b = 1 - p_a.

    Rounds with no transfer are assumed conditioned away, so p_a + p_b = 1.
    """
    if counters_a < 1 or counters_b < 1:
        raise ValueError("both players must start with at least one counter")
    p_a, p_b = _as_fraction(p_a), _as_fraction(p_b)
    if not 0 < p_a < 1:
        raise ValueError("transfer probability must lie strictly in (0, 1)")
    if p_a + p_b != 1:
        raise ValueError("transfer probabilities must sum to exactly 1")
    n = counters_a + counters_b
    if p_a == p_b:
        win_a = Fraction(counters_a, n)
    else:
        r = p_b / p_a
        win_a = (1 - r**counters_a) / (1 - r**n)
    return win_a, 1 - win_a


def huygens_draw(N: int, M: int, n: int, m: int) -> Fraction:
    """Probability of drawing exactly m marked items in n draws without
    replacement from N items of which M are marked:
    C(M,m) C(N-M,n-m) / C(N,n)."""
    if not (0 <= M <= N and 0 <= n <= N):
        raise ValueError("need 0 <= M <= N and 0 <= n <= N")
    if not (0 <= m <= min(M, n)) or n - m > N - M:
        raise ValueError(f"incompatible counts: cannot draw {m} of {M} marked")
    return Fraction(math.comb(M, m) * math.comb(N - M, n - m), math.comb(N, n))


def de_mere() -> tuple[Fraction, Fraction]:
    """The two De Mere gambles, exactly: P(at least one six in 4 rolls) and
    P(at least one double six in 24 double rolls)."""
    one_six = 1 - Fraction(5, 6) ** 4
    double_six = 1 - Fraction(35, 36) ** 24
    return one_six, double_six


def poisson_urn(n: int) -> Fraction:
    """Probability of drawing white from an urn of n balls whose white count
    is uniformly one of 0..n: the mean of k/n over k, always exactly 1/2."""
    if n < 1:
        raise ValueError("urn must contain at least one ball")
    return Fraction(1, n + 1) * sum(
        (Fraction(k, n) for k in range(n + 1)), start=Fraction(0)
    )
