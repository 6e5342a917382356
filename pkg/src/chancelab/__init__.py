"""chancelab: a classical-probability laboratory.

Exact rational combinatorics, the classical distribution families, limit
theorems with measured approximation error, Markov urn chains, seeded
Monte Carlo classics, and least-squares/minimax observation fitting,
wrapped in a regression CLI that replays the treatise's worked numbers.
"""

from . import (
    distributions,
    estimation,
    exact,
    limits,
    markov,
    montecarlo,
    quadrature,
    scenarios,
    transforms,
)

__all__ = [
    "distributions",
    "estimation",
    "exact",
    "limits",
    "markov",
    "montecarlo",
    "quadrature",
    "scenarios",
    "transforms",
]

__version__ = "0.1.0"
