from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from irgame import (
    BimatrixGame,
    DegenerateGameError,
    NoInteriorEquilibriumError,
    Profile,
    ShapeError,
    best_response_oracle,
    expected_payoff,
    find_dominant_strategy,
    find_pure_equilibria,
    mixed_equilibrium_2x2,
    pure_profile,
    verify_equilibrium,
)


def brute_payoff(matrix, p, q):
    return sum(matrix[j][k] * p[j] * q[k] for j in range(len(p)) for k in range(len(q)))


def brute_pure_equilibria(a, b):
    n, m = len(a), len(a[0])
    out = []
    for j in range(n):
        for k in range(m):
            if all(a[j][k] >= a[i][k] for i in range(n)) and all(
                b[j][k] >= b[j][l] for l in range(m)
            ):
                out.append((j, k))
    return out


def indifference_solution(a, b):
    """Solve both indifference equations in exact rationals."""
    (a11, a12), (a21, a22) = [[Fraction(x) for x in row] for row in a]
    (b11, b12), (b21, b22) = [[Fraction(x) for x in row] for row in b]
    # B indifferent: p*b11 + (1-p)*b21 == p*b12 + (1-p)*b22
    p = (b22 - b21) / ((b11 - b21) - (b12 - b22))
    # A indifferent: q*a11 + (1-q)*a12 == q*a21 + (1-q)*a22
    q = (a22 - a12) / ((a11 - a12) - (a21 - a22))
    return p, q


class TestExpectedPayoff:
    def test_red_right(self, table1):
        gains = expected_payoff(table1, pure_profile(table1, 0, 1))
        assert gains == (25.0, 4.0)

    def test_red_left(self, table1):
        assert expected_payoff(table1, pure_profile(table1, 0, 0)) == (10.0, 11.0)

    def test_uniform(self, table1):
        half = [0.5, 0.5]
        expected_a = brute_payoff(table1.payoff_a.tolist(), half, half)
        expected_b = brute_payoff(table1.payoff_b.tolist(), half, half)
        assert (expected_a, expected_b) == (15.0, 13.75)
        assert expected_payoff(table1, (half, half)) == (15.0, 13.75)

    def test_shape_mismatch(self, table1):
        with pytest.raises(ShapeError):
            expected_payoff(table1, ([1.0, 0.0, 0.0], [1.0, 0.0]))

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(0, 1))
    def test_bilinear(self, seed, t):
        rng = np.random.default_rng(seed)
        n, m = rng.integers(1, 7, size=2)
        game = BimatrixGame(rng.normal(size=(n, m)), rng.normal(size=(n, m)))
        p1, p2 = rng.dirichlet(np.ones(n), size=2)
        q = rng.dirichlet(np.ones(m))
        mixed = expected_payoff(game, (t * p1 + (1 - t) * p2, q))
        g1 = expected_payoff(game, (p1, q))
        g2 = expected_payoff(game, (p2, q))
        for got, x, y in zip(mixed, g1, g2):
            want = t * x + (1 - t) * y
            assert got == pytest.approx(want, rel=1e-12, abs=1e-12)


class TestDominance:
    def test_table1(self, table1):
        assert find_dominant_strategy(table1.payoff_a, "A") == 0
        assert find_dominant_strategy(table1.payoff_b, "B") == 0

    def test_table2_none(self, table2):
        assert find_dominant_strategy(table2.payoff_a, "A") is None
        assert find_dominant_strategy(table2.payoff_b, "B") is None

    def test_duplicate_rows_tie_to_lowest(self):
        m = [[1, 1], [3, 4], [3, 4]]
        assert find_dominant_strategy(m, "A") == 1

    def test_equal_rows_do_not_dominate_distinct_row(self):
        assert find_dominant_strategy([[1, 2], [2, 1]], "A") is None

    def test_weak_dominance(self):
        assert find_dominant_strategy([[1, 2], [1, 3]], "A") == 1

    def test_bad_player(self, table1):
        with pytest.raises(ValueError):
            find_dominant_strategy(table1.payoff_a, "C")


class TestPureEquilibria:
    def test_table2(self, table2):
        assert find_pure_equilibria(table2) == [(0, 0), (1, 1)]

    def test_table3(self, table3):
        assert find_pure_equilibria(table3) == []

    def test_table1(self, table1):
        assert find_pure_equilibria(table1) == [(0, 0)]

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 6), st.integers(1, 6), st.data())
    def test_matches_brute_force(self, n, m, data):
        ints = arrays(np.int64, (n, m), elements=st.integers(-5, 5))
        a, b = data.draw(ints), data.draw(ints)
        game = BimatrixGame(a, b)
        assert find_pure_equilibria(game) == brute_pure_equilibria(a.tolist(), b.tolist())
        for row, col in find_pure_equilibria(game):
            assert verify_equilibrium(game, pure_profile(game, row, col), 1e-9).passed

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(0.1, 10), st.floats(-10, 10))
    def test_affine_invariance(self, seed, scale, shift):
        rng = np.random.default_rng(seed)
        a = rng.integers(-5, 6, size=(4, 3))
        b = rng.integers(-5, 6, size=(4, 3))
        before = find_pure_equilibria(BimatrixGame(a, b))
        # integer-valued scale/shift keep the transformed argmax exact
        s, t = round(scale) or 1, round(shift)
        assert find_pure_equilibria(BimatrixGame(s * a + t, b)) == before


class TestMixed2x2:
    def test_table3(self, table3):
        p, q = indifference_solution(table3.payoff_a.tolist(), table3.payoff_b.tolist())
        assert (p, q) == (Fraction(6, 13), Fraction(1, 2))
        profile = mixed_equilibrium_2x2(table3)
        np.testing.assert_allclose(profile.p, [6 / 13, 7 / 13], rtol=0, atol=1e-15)
        np.testing.assert_allclose(profile.q, [0.5, 0.5], rtol=0, atol=1e-15)

    def test_matching_pennies(self):
        game = BimatrixGame([[1, 0], [0, 1]], [[0, 1], [1, 0]])
        profile = mixed_equilibrium_2x2(game)
        np.testing.assert_allclose(profile.p, [0.5, 0.5])
        np.testing.assert_allclose(profile.q, [0.5, 0.5])

    def test_all_equal_is_degenerate(self):
        game = BimatrixGame([[3, 3], [3, 3]], [[3, 3], [3, 3]])
        with pytest.raises(DegenerateGameError):
            mixed_equilibrium_2x2(game)

    def test_table1_dominance_is_degenerate(self, table1):
        # Red beats Green by 5 in both columns: A can never be made indifferent
        with pytest.raises(DegenerateGameError):
            mixed_equilibrium_2x2(table1)

    def test_no_interior_solution(self):
        game = BimatrixGame([[3, 1], [0, 2]], [[0, 1], [0, 2]])
        with pytest.raises(NoInteriorEquilibriumError) as info:
            mixed_equilibrium_2x2(game)
        assert info.value.p1 == pytest.approx(2.0)

    def test_not_2x2(self):
        with pytest.raises(ShapeError):
            mixed_equilibrium_2x2(BimatrixGame(np.eye(3), np.eye(3)))

    @settings(max_examples=200, deadline=None)
    @given(arrays(np.int64, (2, 2), elements=st.integers(-9, 9)),
           arrays(np.int64, (2, 2), elements=st.integers(-9, 9)))
    def test_indifference_and_verification(self, a, b):
        game = BimatrixGame(a, b)
        try:
            profile = mixed_equilibrium_2x2(game)
        except (DegenerateGameError, NoInteriorEquilibriumError):
            return
        p, q = indifference_solution(a.tolist(), b.tolist())
        assert profile.p[0] == pytest.approx(float(p), abs=1e-12)
        assert profile.q[0] == pytest.approx(float(q), abs=1e-12)
        rows = game.payoff_a @ profile.q
        cols = profile.p @ game.payoff_b
        assert abs(rows[0] - rows[1]) <= 1e-9
        assert abs(cols[0] - cols[1]) <= 1e-9
        assert verify_equilibrium(game, profile, 1e-9).passed

    @settings(max_examples=100, deadline=None)
    @given(arrays(np.int64, (2, 2), elements=st.integers(-9, 9)),
           arrays(np.int64, (2, 2), elements=st.integers(-9, 9)),
           st.floats(0.1, 100), st.floats(-100, 100))
    def test_q_invariant_under_affine_transform_of_a(self, a, b, s, t):
        try:
            before = mixed_equilibrium_2x2(BimatrixGame(a, b))
        except (DegenerateGameError, NoInteriorEquilibriumError):
            return
        if min(before.p.min(), before.q.min()) < 1e-6:
            return  # boundary solutions may round out of [0, 1] after scaling
        after = mixed_equilibrium_2x2(BimatrixGame(s * a + t, b))
        np.testing.assert_allclose(after.q, before.q, atol=1e-9)


class TestVerify:
    def test_table2_red_left(self, table2):
        verdict = verify_equilibrium(table2, pure_profile(table2, 0, 0))
        assert verdict.passed and verdict.worst_violation == 0

    def test_table2_green_left(self, table2):
        verdict = verify_equilibrium(table2, pure_profile(table2, 1, 0))
        assert not verdict.passed
        assert verdict.violation_a == 5.0
        assert verdict.violation_b == 6.0

    def test_table3_mixed(self, table3):
        assert verify_equilibrium(table3, mixed_equilibrium_2x2(table3), 1e-9).passed

    def test_shape_mismatch(self, table2):
        with pytest.raises(ShapeError):
            verify_equilibrium(table2, Profile([1.0], [1.0, 0.0]))

    def test_rejects_non_distribution(self, table2):
        with pytest.raises(ValueError):
            verify_equilibrium(table2, ([0.7, 0.7], [1.0, 0.0]))


class TestBestResponse:
    def test_table1_against_left(self, table1):
        np.testing.assert_array_equal(best_response_oracle(table1, [1, 0], "A"), [1, 0])

    def test_column_argmax(self, table2):
        for col in range(2):
            e = np.eye(2)[col]
            br = best_response_oracle(table2, e, "A")
            assert np.argmax(br) == np.argmax(table2.payoff_a[:, col])

    def test_tie_lowest_index(self, table3):
        np.testing.assert_array_equal(best_response_oracle(table3, [0.5, 0.5], "A"), [1, 0])

    def test_player_b(self, table1):
        np.testing.assert_array_equal(best_response_oracle(table1, [0, 1], "B"), [1, 0])

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_grid_never_beats_pure(self, seed):
        rng = np.random.default_rng(seed)
        game = BimatrixGame(rng.normal(size=(3, 4)), rng.normal(size=(3, 4)))
        q = rng.dirichlet(np.ones(4))
        coarse = best_response_oracle(game, q, "A", grid_steps=1)
        fine = best_response_oracle(game, q, "A", grid_steps=8)
        np.testing.assert_array_equal(coarse, fine)
        assert set(np.unique(fine)) <= {0.0, 1.0}

    def test_bad_grid(self, table1):
        with pytest.raises(ValueError):
            best_response_oracle(table1, [1, 0], "A", grid_steps=0)


def test_game_rejects_mismatched_shapes():
    with pytest.raises(ShapeError):
        BimatrixGame([[1, 2]], [[1], [2]])


def test_game_rejects_nonfinite():
    with pytest.raises(ValueError):
        BimatrixGame([[np.nan]], [[1.0]])
