"""Seeded, reproducible simulations of the classics: Buffon's needle, the
Petersburg doubling game, Bertrand's chord models, the quincunx, and
frequency-versus-probability runs.

Randomness comes from the counter-based Philox 4x64 generator keyed by
(master_seed, stream_id); identical keys give bit-identical results no
matter how the work is scheduled.  Regression values in the test suite are
tied to this generator.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "RngStream",
    "SimReport",
    "buffon_needle",
    "petersburg",
    "neglect_threshold",
    "bertrand_chord",
    "quincunx",
    "encounter_mc",
    "frequency_run",
    "BERTRAND_TARGETS",
]

BERTRAND_TARGETS = {
    "endpoints": 2.0 / 3.0,
    "radial_midpoint": 0.5,
    "area_midpoint": 0.75,
}

PETERSBURG_TOSS_CAP = 64  # payoff overflow guard; P(hit) < 2**-64 per game


@dataclass(frozen=True)
class RngStream:
    """Counter-based random stream: (master_seed, stream_id) -> Philox key."""

    master_seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array(
            [self.master_seed & (2**64 - 1), self.stream_id & (2**64 - 1)],
            dtype=np.uint64,
        )
        return np.random.Generator(np.random.Philox(key=key))

    def substream(self, index: int) -> "RngStream":
        """Derived stream for replication `index`; reduction in index order
        keeps results independent of scheduling."""
        return RngStream(self.master_seed, self.stream_id * 1_000_003 + index + 1)


@dataclass
class SimReport:
    """Estimate with its standard error and, when known, the analytic
    target and the z-score of the discrepancy."""

    name: str
    replications: int
    estimate: float
    standard_error: float
    analytic_target: float | None = None
    z_score: float | None = None
    seed: int | None = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.standard_error < 0:
            raise ValueError("standard error cannot be negative")
        if self.analytic_target is not None and self.z_score is None:
            if self.standard_error > 0:
                self.z_score = (
                    self.estimate - self.analytic_target
                ) / self.standard_error

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "seed": self.seed,
                "n": self.replications,
                "estimate": self.estimate,
                "se": self.standard_error,
                "target": self.analytic_target,
                "z": self.z_score,
            }
        )


def _freq_report(name, hits, n, target, rng: RngStream, **extras) -> SimReport:
    freq = hits / n
    se = math.sqrt(max(freq * (1.0 - freq), 1e-300) / n)
    return SimReport(
        name,
        n,
        freq,
        se,
        analytic_target=target,
        seed=rng.master_seed,
        extras=extras,
    )


def buffon_needle(r: float, a: float, n: int, rng: RngStream) -> SimReport:
    """Throw a needle of half-length r on lines spaced a apart n times.

    Parameterization: distance of the center to the nearest line uniform
    on [0, a/2], acute angle uniform on [0, pi/2]; a hit is distance
    <= r sin(angle).  The crossing probability is 4r/(pi a) and the report
    carries the implied pi estimate in extras["pi_estimate"]."""
    if not 0 < 2 * r < a:
        raise ValueError("need a > 2r > 0 so the needle crosses one line at most")
    if n < 1:
        raise ValueError("need at least one throw")
    g = rng.generator()
    dist = g.uniform(0.0, a / 2.0, size=n)
    angle = g.uniform(0.0, math.pi / 2.0, size=n)
    hits = int(np.count_nonzero(dist <= r * np.sin(angle)))
    target = 4.0 * r / (math.pi * a)
    pi_estimate = (
        4.0 * r / (a * (hits / n)) if hits else math.inf
    )
    return _freq_report(
        "buffon_needle", hits, n, target, rng, pi_estimate=pi_estimate
    )


def petersburg(games: int, rng: RngStream) -> SimReport:
    """Play the doubling game `games` times: payoff 2^(k-1) when the first
    head appears at toss k.  Reports the mean gain (which converges to
    nothing: the game has infinite expectation) and the longest game seen."""
    if games < 1:
        raise ValueError("need at least one game")
    g = rng.generator()
    tosses = np.minimum(g.geometric(0.5, size=games), PETERSBURG_TOSS_CAP)
    gains = np.exp2((tosses - 1).astype(float))
    mean = float(gains.mean())
    se = float(gains.std(ddof=1) / math.sqrt(games)) if games > 1 else 0.0
    return SimReport(
        "petersburg",
        games,
        mean,
        se,
        seed=rng.master_seed,
        extras={
            "max_tosses": int(tosses.max()),
            "capped_games": int(np.count_nonzero(tosses == PETERSBURG_TOSS_CAP)),
        },
    )


def neglect_threshold(p0: float) -> float:
    """Toss index at which the continuation probability of the doubling
    game drops below p0: log2(1/p0)."""
    if not 0.0 < p0 < 1.0:
        raise ValueError("threshold probability must lie in (0, 1)")
    return math.log2(1.0 / p0)


def bertrand_chord(model: str, n: int, rng: RngStream) -> SimReport:
    """Frequency of random chords shorter than the side of the inscribed
    equilateral triangle, under one of the three classic randomizations.

    A chord at center distance d has length 2 sqrt(1 - d^2) (unit circle),
    so it is shorter than sqrt(3) exactly when d > 1/2."""
    if model not in BERTRAND_TARGETS:
        raise ValueError(
            f"unknown model {model!r}; choose from {sorted(BERTRAND_TARGETS)}"
        )
    if n < 1:
        raise ValueError("need at least one throw")
    g = rng.generator()
    if model == "endpoints":
        theta = g.uniform(0.0, 2.0 * math.pi, size=(2, n))
        delta = np.abs(theta[0] - theta[1])
        delta = np.minimum(delta, 2.0 * math.pi - delta)
        shorter = delta < 2.0 * math.pi / 3.0
    elif model == "radial_midpoint":
        d = g.uniform(0.0, 1.0, size=n)
        shorter = d > 0.5
    else:  # area_midpoint: uniform in the disk via sqrt of uniform radius
        d = np.sqrt(g.uniform(0.0, 1.0, size=n))
        shorter = d > 0.5
    hits = int(np.count_nonzero(shorter))
    return _freq_report(
        f"bertrand_{model}", hits, n, BERTRAND_TARGETS[model], rng
    )


def quincunx(
    rows: int, shots: int, rng: RngStream
) -> tuple[np.ndarray, float]:
    """Drop `shots` balls through `rows` pin rows, each row deflecting left
    or right with probability 1/2.  Returns the landing histogram (mass sums
    to shots) and its total-variation distance to the binomial law."""
    if rows < 1 or shots < 1:
        raise ValueError("need at least one row and one shot")
    g = rng.generator()
    rights = g.binomial(rows, 0.5, size=shots)
    hist = np.bincount(rights, minlength=rows + 1)
    pmf = np.array(
        [math.comb(rows, k) / 2.0**rows for k in range(rows + 1)]
    )
    tv = 0.5 * float(np.abs(hist / shots - pmf).sum())
    return hist, tv


def encounter_mc(window: float, wait: float, n: int, rng: RngStream) -> SimReport:
    """Monte Carlo check of the encounter problem: two arrivals uniform on
    [0, window] meet when they differ by at most `wait`."""
    if not 0 < wait <= window:
        raise ValueError("need 0 < wait <= window")
    if n < 1:
        raise ValueError("need at least one replication")
    g = rng.generator()
    x = g.uniform(0.0, window, size=n)
    y = g.uniform(0.0, window, size=n)
    hits = int(np.count_nonzero(np.abs(x - y) <= wait))
    target = 1.0 - ((window - wait) / window) ** 2
    return _freq_report("encounter", hits, n, target, rng)


def frequency_run(
    p: float, n: int, checkpoints: Sequence[int], rng: RngStream
) -> list[tuple[int, float]]:
    """Relative frequency of successes at the given checkpoints of a run of
    n Bernoulli(p) trials."""
    checkpoints = list(checkpoints)
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise ValueError("checkpoints must be strictly ascending")
    if checkpoints and checkpoints[-1] > n:
        raise ValueError("checkpoints cannot exceed the number of trials")
    if not 0.0 <= p <= 1.0:
        raise ValueError("probability outside [0, 1]")
    g = rng.generator()
    trials = g.random(size=n) < p
    cum = np.cumsum(trials)
    return [(c, float(cum[c - 1] / c)) for c in checkpoints]
