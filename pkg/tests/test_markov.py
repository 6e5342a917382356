"""Tests for the Markov chain and urn interchange module."""

import math
from fractions import Fraction

import numpy as np
import pytest

from chancelab import markov


def test_matrix_validation():
    with pytest.raises(ValueError):
        markov.TransitionMatrix(["a", "a"], [[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        markov.TransitionMatrix(["a", "b"], [[1, 0]])
    with pytest.raises(ValueError):
        markov.TransitionMatrix(
            ["a", "b"], [[Fraction(1, 2), Fraction(1, 3)], [0, 1]]
        )
    with pytest.raises(ValueError):
        markov.TransitionMatrix(["a", "b"], [[0.9, 0.2], [0.5, 0.5]])
    with pytest.raises(ValueError):
        markov.TransitionMatrix(["a"], [[2]])


def test_exact_flag_and_matmul():
    P = markov.bernoulli_laplace_chain(2)
    assert P.exact
    sq = P.matmul(P)
    assert sq.exact
    assert all(sum(r) == 1 for r in sq.rows)
    # float path stays stochastic too
    F = markov.TransitionMatrix(["a", "b"], [[0.9, 0.1], [0.5, 0.5]])
    assert not F.exact
    sq2 = F.matmul(F)
    assert np.allclose(sq2.as_numpy().sum(axis=1), 1.0)


def test_n_step():
    F = markov.TransitionMatrix(["a", "b"], [[0.9, 0.1], [0.5, 0.5]])
    assert np.allclose(markov.n_step(F, 0).as_numpy(), np.eye(2))
    assert np.allclose(markov.n_step(F, 1).as_numpy(), F.as_numpy())
    two = markov.n_step(F, 2).as_numpy()
    assert np.allclose(two, [[0.86, 0.14], [0.70, 0.30]])
    with pytest.raises(ValueError):
        markov.n_step(F, -1)


def test_chapman_kolmogorov():
    P = markov.bernoulli_laplace_chain(3)
    left = markov.n_step(P, 5)
    right = markov.n_step(P, 2).matmul(markov.n_step(P, 3))
    assert left.rows == right.rows  # exact rational identity


def test_step():
    P = markov.bernoulli_laplace_chain(2)
    point = markov.StateDistribution(P.states, [0, 1, 0])
    assert markov.step(point, P).probabilities == P.rows[1]
    doubly = markov.TransitionMatrix(
        ["a", "b"], [[Fraction(1, 3), Fraction(2, 3)], [Fraction(2, 3), Fraction(1, 3)]]
    )
    uniform = markov.StateDistribution(["a", "b"], [Fraction(1, 2)] * 2)
    assert markov.step(uniform, doubly).probabilities == uniform.probabilities
    with pytest.raises(ValueError):
        markov.step(uniform, P)


def test_two_step_matches_square():
    F = markov.TransitionMatrix(["a", "b", "c"],
                                [[0.2, 0.5, 0.3], [0.1, 0.1, 0.8], [0.4, 0.4, 0.2]])
    d = markov.StateDistribution(["a", "b", "c"], [0.5, 0.25, 0.25])
    twice = markov.step(markov.step(d, F), F)
    via_square = markov.step(d, markov.n_step(F, 2))
    assert np.allclose(twice.as_numpy(), via_square.as_numpy())


def test_is_ergodic():
    pos = markov.TransitionMatrix(["a", "b"], [[0.5, 0.5], [0.3, 0.7]])
    assert markov.is_ergodic(pos, 5) == (True, 1)
    cycle = markov.TransitionMatrix(["a", "b"], [[0, 1], [1, 0]])
    assert markov.is_ergodic(cycle, 64) == (False, None)
    ok, s = markov.is_ergodic(markov.bernoulli_laplace_chain(3), 16)
    assert ok and s is not None
    with pytest.raises(ValueError):
        markov.is_ergodic(pos, 0)


def test_stationary():
    F = markov.TransitionMatrix(["a", "b"], [[0.9, 0.1], [0.5, 0.5]])
    pi = markov.stationary(F).as_numpy()
    assert np.allclose(pi, [5 / 6, 1 / 6])
    doubly = markov.TransitionMatrix(
        ["a", "b"], [[Fraction(1, 3), Fraction(2, 3)], [Fraction(2, 3), Fraction(1, 3)]]
    )
    assert markov.stationary(doubly).probabilities == (
        Fraction(1, 2),
        Fraction(1, 2),
    )
    cycle = markov.TransitionMatrix(["a", "b"], [[0, 1], [1, 0]])
    with pytest.raises(markov.NonErgodicError):
        markov.stationary(cycle)


def test_stationary_is_fixed_point():
    P = markov.bernoulli_laplace_chain(4)
    pi = markov.stationary(P)
    assert markov.step(pi, P).probabilities == pi.probabilities


def test_bernoulli_laplace_chain():
    swap = markov.bernoulli_laplace_chain(1)
    assert swap.rows == ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)))
    P = markov.bernoulli_laplace_chain(2)
    assert P.rows[1] == (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4))
    for n in (1, 2, 5):
        chain = markov.bernoulli_laplace_chain(n)
        assert all(sum(r) == 1 for r in chain.rows)
    with pytest.raises(ValueError):
        markov.bernoulli_laplace_chain(0)


def test_bernoulli_laplace_stationary_closed_form():
    for n in range(2, 7):
        closed = markov.bernoulli_laplace_stationary(n)
        assert sum(closed) == 1
        solved = markov.stationary(markov.bernoulli_laplace_chain(n))
        assert list(solved.probabilities) == closed


def test_expected_white():
    assert markov.expected_white(5, 0) == 5.0
    assert markov.expected_white(2, 1) == pytest.approx(1.0)
    assert markov.expected_white(10, 500) == pytest.approx(5.0)
    with pytest.raises(ValueError):
        markov.expected_white(2, -1)


def test_expected_white_matches_chain():
    for n in (2, 3, 7):
        P = markov.bernoulli_laplace_chain(n)
        d = markov.StateDistribution(
            P.states, [Fraction(0)] * n + [Fraction(1)]
        )
        for r in range(31):
            assert float(d.mean()) == pytest.approx(
                markov.expected_white(n, r), abs=1e-10
            )
            d = markov.step(d, P)


def test_three_urn_expected():
    start = markov.three_urn_expected(4, 0)
    assert np.allclose(start, np.eye(3) * 4.0)
    late = markov.three_urn_expected(10, 300)
    assert np.allclose(late, 10.0 / 3.0, atol=1e-6)
    # each urn keeps n balls in expectation after every full cycle
    mid = markov.three_urn_expected(6, 17)
    assert np.allclose(mid.sum(axis=1), 6.0)
    assert np.allclose(mid.sum(axis=0), 6.0)  # colours conserved too
    with pytest.raises(ValueError):
        markov.three_urn_expected(0, 1)


def test_matrix_csv():
    P = markov.bernoulli_laplace_chain(2)
    lines = P.to_csv().strip().splitlines()
    assert lines[0] == "state,0,1,2"
    assert lines[2] == "1,1/4,1/2,1/4"
