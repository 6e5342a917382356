"""Tests for the exact rational combinatorics module."""

import itertools
from fractions import Fraction

import pytest

from chancelab import exact


def test_classical_probability_lowest_terms():
    assert exact.classical_probability(25, 216) == Fraction(25, 216)
    assert exact.classical_probability(0, 6) == 0
    assert exact.classical_probability(6, 6) == 1
    p = exact.classical_probability(4, 8)
    assert (p.numerator, p.denominator) == (1, 2)


def test_classical_probability_domain():
    with pytest.raises(ValueError):
        exact.classical_probability(7, 6)
    with pytest.raises(ValueError):
        exact.classical_probability(0, 0)
    with pytest.raises(ValueError):
        exact.classical_probability(-1, 6)


def two_dice_space():
    # case index = 6 * (first roll - 1) + (second roll - 1)
    six_first = frozenset(range(30, 36))
    six_second = frozenset(i for i in range(36) if i % 6 == 5)
    return exact.FiniteEventSpace(
        36, {"six1": six_first, "six2": six_second}
    )


def test_union_two_dice():
    space = two_dice_space()
    assert exact.union_probability(space, ["six1", "six2"]) == Fraction(11, 36)


def test_union_disjoint_is_additive():
    space = exact.FiniteEventSpace(
        10, {"a": frozenset({0, 1, 2}), "b": frozenset({5, 6})}
    )
    assert exact.union_probability(space, ["a", "b"]) == Fraction(5, 10)


def test_union_full_cover():
    space = exact.FiniteEventSpace(
        8,
        {
            "a": frozenset({0, 1, 2, 3}),
            "b": frozenset({3, 4, 5}),
            "c": frozenset({5, 6, 7}),
        },
    )
    assert exact.union_probability(space, ["a", "b", "c"]) == 1


def test_union_matches_direct_counting():
    # inclusion-exclusion must agree with counting the union set itself
    events = {
        "a": frozenset({0, 2, 4, 6}),
        "b": frozenset({1, 2, 3}),
        "c": frozenset({6, 7}),
        "d": frozenset(),
    }
    space = exact.FiniteEventSpace(9, events)
    for r in range(1, 5):
        for names in itertools.combinations(events, r):
            direct = frozenset().union(*(events[n] for n in names))
            assert exact.union_probability(space, list(names)) == Fraction(
                len(direct), 9
            )


def test_union_errors():
    space = two_dice_space()
    with pytest.raises(ValueError):
        exact.union_probability(space, [])
    with pytest.raises(KeyError):
        exact.union_probability(space, ["nope"])


def test_conditional_probability():
    space = two_dice_space()
    # second roll is independent of the first
    assert exact.conditional_probability(space, "six2", "six1") == Fraction(1, 6)
    # A contains the conditioning event
    space2 = exact.FiniteEventSpace(
        6, {"a": frozenset(range(6)), "g": frozenset({1, 2})}
    )
    assert exact.conditional_probability(space2, "a", "g") == 1


def test_conditional_on_null_event():
    space = exact.FiniteEventSpace(4, {"a": frozenset({0}), "z": frozenset()})
    with pytest.raises(ZeroDivisionError):
        exact.conditional_probability(space, "a", "z")


def test_multiplication_identity():
    space = two_dice_space()
    joint = Fraction(
        len(space.event("six1") & space.event("six2")), 36
    )
    assert joint == space.probability("six1") * exact.conditional_probability(
        space, "six2", "six1"
    )


THREE_URNS = exact.CauseSystem(
    [Fraction(1, 3)] * 3,
    [Fraction(1, 3), Fraction(2, 3), Fraction(3, 8)],
)


def test_total_probability_three_urns():
    assert exact.total_probability(THREE_URNS) == Fraction(11, 24)


def test_total_probability_edges():
    sure = exact.CauseSystem([Fraction(1, 2)] * 2, [1, 1])
    assert exact.total_probability(sure) == 1
    high = exact.CauseSystem(
        [Fraction(1, 3)] * 3, [Fraction(99, 100)] * 3
    )
    assert exact.total_probability(high) == Fraction(99, 100)


def test_bayes_posteriors_three_urns():
    post = exact.bayes_posteriors(THREE_URNS)
    assert post == [Fraction(8, 33), Fraction(16, 33), Fraction(9, 33)]
    assert sum(post) == 1


def test_bayes_no_information():
    flat = exact.CauseSystem(
        [Fraction(1, 4)] * 4, [Fraction(1, 2)] * 4
    )
    assert exact.bayes_posteriors(flat) == list(flat.priors)


def test_bayes_zero_likelihood():
    system = exact.CauseSystem(
        [Fraction(1, 2)] * 2, [Fraction(0), Fraction(1, 2)]
    )
    assert exact.bayes_posteriors(system)[0] == 0


def test_bayes_zero_total():
    system = exact.CauseSystem([Fraction(1, 2)] * 2, [0, 0])
    with pytest.raises(ZeroDivisionError):
        exact.bayes_posteriors(system)


def test_cause_system_validation():
    with pytest.raises(ValueError):
        exact.CauseSystem([Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 2)])
    with pytest.raises(ValueError):
        exact.CauseSystem([Fraction(1, 3)] * 2, [Fraction(1, 2)] * 2)
    with pytest.raises(ValueError):
        exact.CauseSystem([Fraction(1, 2), Fraction(1, 2)], [2, 0])


def test_floats_rejected():
    with pytest.raises(TypeError):
        exact.CauseSystem([0.5, 0.5], [0.5, 0.5])
    with pytest.raises(TypeError):
        exact.points_division(2, 3, 0.5)
    with pytest.raises(TypeError):
        exact.ruin_chances(1, 1, 0.5, 0.5)


def test_dice_sum_counts():
    assert exact.dice_sum_count(3, 6, 9) == 25
    assert exact.dice_sum_count(3, 6, 10) == 27
    assert exact.dice_sum_count(3, 6, 11) == 27
    assert exact.dice_sum_count(2, 6, 12) == 1
    assert exact.dice_sum_count(2, 6, 11) == 2
    assert exact.dice_sum_count(2, 6, 99) == 0


def test_dice_sum_totals_and_symmetry():
    for dice, faces in [(2, 6), (3, 6), (3, 4)]:
        counts = [
            exact.dice_sum_count(dice, faces, s)
            for s in range(dice, dice * faces + 1)
        ]
        assert sum(counts) == faces**dice
        assert counts == counts[::-1]  # s <-> d(f+1)-s symmetry


def _points_bruteforce(a, b, p):
    """Probability A reaches a round wins before B reaches b, by enumerating
    every sequence of a+b-1 further rounds."""
    q = 1 - p
    total = Fraction(0)
    n = a + b - 1
    for wins in itertools.product((0, 1), repeat=n):
        if sum(wins) >= a:
            total += p ** sum(wins) * q ** (n - sum(wins))
    return total


def test_points_division():
    assert exact.points_division(1, 2, Fraction(1, 2)) == Fraction(3, 4)
    assert exact.points_division(2, 3, Fraction(1, 2)) == Fraction(11, 16)
    for k in (1, 2, 5):
        assert exact.points_division(k, k, Fraction(1, 2)) == Fraction(1, 2)


def test_points_division_vs_bruteforce():
    for a in range(1, 4):
        for b in range(1, 4):
            for p in (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)):
                assert exact.points_division(a, b, p) == _points_bruteforce(
                    a, b, p
                )


def test_points_complement():
    for a in range(1, 5):
        for b in range(1, 5):
            for p in (Fraction(1, 4), Fraction(2, 5)):
                assert exact.points_division(a, b, p) + exact.points_division(
                    b, a, 1 - p
                ) == 1


def _ruin_oracle(a, b, p):
    """Absorbing-walk win probability for A by exact linear solve of
    u(i) = p u(i+1) + (1-p) u(i-1), u(0) = 0, u(n) = 1."""
    n = a + b
    size = n - 1  # unknowns u(1)..u(n-1)
    aug = [[Fraction(0)] * (size + 1) for _ in range(size)]
    for i in range(1, n):
        row = aug[i - 1]
        row[i - 1] = Fraction(-1)
        if i + 1 < n:
            row[i] = p
        else:
            row[size] -= p
        if i - 1 >= 1:
            row[i - 2] = 1 - p
    # plain Gaussian elimination over the rationals
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col]
        aug[col] = [x / inv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return aug[a - 1][size]


def test_ruin_chances():
    assert exact.ruin_chances(1, 1, Fraction(1, 2), Fraction(1, 2)) == (
        Fraction(1, 2),
        Fraction(1, 2),
    )
    win_a, win_b = exact.ruin_chances(
        12, 12, Fraction(5, 14), Fraction(9, 14)
    )
    assert win_a / win_b == Fraction(5**12, 9**12)
    assert win_a + win_b == 1


def test_ruin_chances_vs_absorbing_oracle():
    for a in range(1, 5):
        for b in range(1, 5):
            for p in (Fraction(1, 2), Fraction(5, 14), Fraction(2, 3)):
                win_a, win_b = exact.ruin_chances(a, b, p, 1 - p)
                assert win_a == _ruin_oracle(a, b, p)
                assert win_a + win_b == 1


def test_ruin_chances_validation():
    with pytest.raises(ValueError):
        exact.ruin_chances(0, 1, Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(ValueError):
        exact.ruin_chances(1, 1, Fraction(1), Fraction(0))
    with pytest.raises(ValueError):
        exact.ruin_chances(1, 1, Fraction(1, 3), Fraction(1, 3))


def test_huygens_draw():
    assert exact.huygens_draw(12, 4, 7, 3) == Fraction(35, 99)
    assert exact.huygens_draw(10, 4, 10, 4) == 1
    assert exact.huygens_draw(10, 0, 4, 0) == 1


def test_huygens_draw_vs_enumeration():
    marked = set(range(4))
    hits = sum(
        1
        for draw in itertools.combinations(range(12), 7)
        if len(marked & set(draw)) == 3
    )
    assert exact.huygens_draw(12, 4, 7, 3) == Fraction(
        hits, 792
    )  # C(12,7) = 792


def test_huygens_draw_validation():
    with pytest.raises(ValueError):
        exact.huygens_draw(5, 6, 2, 1)
    with pytest.raises(ValueError):
        exact.huygens_draw(10, 2, 3, 3)


def test_de_mere():
    one_six, double_six = exact.de_mere()
    assert one_six == Fraction(671, 1296)
    assert double_six == 1 - Fraction(35, 36) ** 24
    assert one_six > Fraction(1, 2) > double_six
    assert round(float(one_six - double_six), 3) == 0.026


def test_poisson_urn():
    for n in (1, 8, 1000):
        assert exact.poisson_urn(n) == Fraction(1, 2)
    with pytest.raises(ValueError):
        exact.poisson_urn(0)
