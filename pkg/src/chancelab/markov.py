"""Finite homogeneous Markov chains and the two- and three-urn ball
interchange models.

Matrices built from Fractions stay exact through every operation here;
float matrices go through numpy.  Row stochasticity is enforced at
construction (exactly for rationals, 1e-12 for floats).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = [
    "TransitionMatrix",
    "StateDistribution",
    "step",
    "n_step",
    "is_ergodic",
    "stationary",
    "bernoulli_laplace_chain",
    "bernoulli_laplace_stationary",
    "expected_white",
    "three_urn_expected",
]


def _is_exact_row(row) -> bool:
    return all(isinstance(x, (Fraction, int)) for x in row)


@dataclass(frozen=True)
class TransitionMatrix:
    """Square row-stochastic matrix with state labels."""

    states: tuple[str, ...]
    rows: tuple[tuple, ...]

    def __init__(self, states: Sequence[str], rows: Sequence[Sequence]):
        states = tuple(str(s) for s in states)
        k = len(states)
        if len(set(states)) != k:
            raise ValueError("state labels must be distinct")
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != k or any(len(r) != k for r in rows):
            raise ValueError(f"matrix must be {k}x{k}")
        for r in rows:
            if any(not 0 <= x <= 1 for x in r):
                raise ValueError("entries must be probabilities")
            total = sum(r)
            if _is_exact_row(r):
                if total != 1:
                    raise ValueError(f"row sums to {total}, not exactly 1")
            elif abs(float(total) - 1.0) > 1e-12:
                raise ValueError(f"row sums to {total}")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def exact(self) -> bool:
        return all(_is_exact_row(r) for r in self.rows)

    def as_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows])

    def matmul(self, other: "TransitionMatrix") -> "TransitionMatrix":
        if self.states != other.states:
            raise ValueError("state spaces differ")
        k = self.size
        if self.exact and other.exact:
            prod = [
                [
                    sum(
                        (
                            Fraction(self.rows[i][m]) * other.rows[m][j]
                            for m in range(k)
                        ),
                        start=Fraction(0),
                    )
                    for j in range(k)
                ]
                for i in range(k)
            ]
            return TransitionMatrix(self.states, prod)
        arr = self.as_numpy() @ other.as_numpy()
        arr /= arr.sum(axis=1, keepdims=True)  # shed drift, stay stochastic
        return TransitionMatrix(self.states, arr.tolist())

    def to_csv(self) -> str:
        lines = ["state," + ",".join(self.states)]
        for label, row in zip(self.states, self.rows):
            lines.append(
                label + "," + ",".join(_render_entry(x) for x in row)
            )
        return "\n".join(lines) + "\n"


def _render_entry(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.12g}"


@dataclass(frozen=True)
class StateDistribution:
    """Probability vector over the states of a chain."""

    states: tuple[str, ...]
    probabilities: tuple

    def __init__(self, states: Sequence[str], probabilities: Sequence):
        states = tuple(str(s) for s in states)
        probs = tuple(probabilities)
        if len(states) != len(probs):
            raise ValueError("labels and probabilities must match in length")
        if any(not 0 <= p <= 1 for p in probs):
            raise ValueError("entries must be probabilities")
        total = sum(probs)
        if _is_exact_row(probs):
            if total != 1:
                raise ValueError(f"distribution sums to {total}")
        elif abs(float(total) - 1.0) > 1e-12:
            raise ValueError(f"distribution sums to {total}")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "probabilities", probs)

    def as_numpy(self) -> np.ndarray:
        return np.array([float(p) for p in self.probabilities])

    def mean(self, values: Sequence | None = None):
        """Expectation of the given state values (default: state index)."""
        if values is None:
            values = range(len(self.states))
        return sum(p * v for p, v in zip(self.probabilities, values))


def step(d: StateDistribution, P: TransitionMatrix) -> StateDistribution:
    """One evolution step d -> d P."""
    if d.states != P.states:
        raise ValueError("state spaces differ")
    k = P.size
    if _is_exact_row(d.probabilities) and P.exact:
        new = [
            sum(
                (
                    Fraction(d.probabilities[i]) * P.rows[i][j]
                    for i in range(k)
                ),
                start=Fraction(0),
            )
            for j in range(k)
        ]
        return StateDistribution(d.states, new)
    vec = d.as_numpy() @ P.as_numpy()
    vec /= vec.sum()
    return StateDistribution(d.states, vec.tolist())


def n_step(P: TransitionMatrix, n: int) -> TransitionMatrix:
    """P^n by repeated squaring; n = 0 gives the identity."""
    if n < 0:
        raise ValueError("step count must be non-negative")
    one = Fraction(1) if P.exact else 1.0
    zero = Fraction(0) if P.exact else 0.0
    result = TransitionMatrix(
        P.states,
        [
            [one if i == j else zero for j in range(P.size)]
            for i in range(P.size)
        ],
    )
    base = P
    while n:
        if n & 1:
            result = result.matmul(base)
        n >>= 1
        if n:
            base = base.matmul(base)
    return result


def is_ergodic(
    P: TransitionMatrix, max_power: int
) -> tuple[bool, int | None]:
    """Smallest power s <= max_power with P^s strictly positive, tracked on
    the boolean positivity pattern."""
    if max_power < 1:
        raise ValueError("max_power must be at least 1")
    pattern = P.as_numpy() > 0
    current = pattern.copy()
    for s in range(1, max_power + 1):
        if current.all():
            return True, s
        current = (current.astype(int) @ pattern.astype(int)) > 0
    return False, None


class NonErgodicError(ValueError):
    pass


def stationary(P: TransitionMatrix) -> StateDistribution:
    """Limiting distribution pi with pi P = pi, by direct linear solve with
    a normalization row.  Exact when the matrix is rational."""
    ok, _ = is_ergodic(P, P.size * P.size)
    if not ok:
        raise NonErgodicError(
            "chain has no strictly positive power up to k^2; "
            "stationary distribution is not unique"
        )
    k = P.size
    if P.exact:
        # rows of (P^T - I) with the last equation replaced by sum = 1
        aug = [
            [Fraction(P.rows[j][i]) - (1 if i == j else 0) for j in range(k)]
            + [Fraction(0)]
            for i in range(k)
        ]
        aug[-1] = [Fraction(1)] * k + [Fraction(1)]
        pi = _solve_exact(aug)
        return StateDistribution(P.states, pi)
    a = P.as_numpy().T - np.eye(k)
    a[-1, :] = 1.0
    b = np.zeros(k)
    b[-1] = 1.0
    pi = np.linalg.solve(a, b)
    return StateDistribution(P.states, pi.tolist())


def _solve_exact(aug: list[list[Fraction]]) -> list[Fraction]:
    """Gaussian elimination with exact rationals on an augmented system."""
    n = len(aug)
    for col in range(n):
        pivot = next(
            (r for r in range(col, n) if aug[r][col] != 0), None
        )
        if pivot is None:
            raise NonErgodicError("singular stationarity system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [x / inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def bernoulli_laplace_chain(n: int) -> TransitionMatrix:
    """Two-urn interchange chain: n white balls start in urn 1, n black in
    urn 2; each step draws one ball from each urn and swaps them.  State w
    is the number of white balls in urn 1; transitions are exact rationals:
    down w^2/n^2, up (n-w)^2/n^2, stay 2w(n-w)/n^2."""
    if n < 1:
        raise ValueError("each urn needs at least one ball")
    states = [str(w) for w in range(n + 1)]
    n2 = n * n
    rows = []
    for w in range(n + 1):
        row = [Fraction(0)] * (n + 1)
        if w > 0:
            row[w - 1] = Fraction(w * w, n2)
        row[w] = Fraction(2 * w * (n - w), n2)
        if w < n:
            row[w + 1] = Fraction((n - w) * (n - w), n2)
        rows.append(row)
    return TransitionMatrix(states, rows)


def bernoulli_laplace_stationary(n: int) -> list[Fraction]:
    """Closed-form stationary law of the interchange chain:
    pi(w) = C(n, w)^2 / C(2n, n)."""
    denom = math.comb(2 * n, n)
    return [Fraction(math.comb(n, w) ** 2, denom) for w in range(n + 1)]


def expected_white(n: int, r: int) -> float:
    """Expected number of white balls in urn 1 after r interchanges,
    starting from the all-white state: n/2 + (n/2)(1 - 2/n)^r."""
    if r < 0:
        raise ValueError("interchange count must be non-negative")
    if n < 1:
        raise ValueError("each urn needs at least one ball")
    return n / 2.0 + (n / 2.0) * (1.0 - 2.0 / n) ** r


def three_urn_expected(n: int, r: int) -> np.ndarray:
    """Expected colour composition (3x3, rows = urns, columns = colours)
    after r cycles of moving one uniformly drawn ball urn1 -> urn2,
    urn2 -> urn3, urn3 -> urn1.  Starts from n balls of colour i in urn i;
    every entry tends to n/3."""
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    counts = np.eye(3) * float(n)
    for _ in range(r):
        # urn sizes along the cycle are deterministic: n, n+1, n+1, back to n
        moved = counts[0] / n
        counts[0] -= moved
        counts[1] += moved
        moved = counts[1] / (n + 1)
        counts[1] -= moved
        counts[2] += moved
        moved = counts[2] / (n + 1)
        counts[2] -= moved
        counts[0] += moved
    return counts
