import random
from fractions import Fraction

import pytest

from patrolgame import LPStatus, MatrixGame, solve_lp, solve_matrix_game

F = Fraction


class TestSolveLP:
    def test_maximize_single_bound(self):
        result = solve_lp([1], [[1]], ["<="], [1], maximize=True)
        assert result.status is LPStatus.OPTIMAL
        assert result.objective == 1
        assert result.x == [1]

    def test_infeasible_reported(self):
        result = solve_lp([1], [[1]], ["<="], [-1], maximize=False)
        assert result.status is LPStatus.INFEASIBLE

    def test_unbounded_reported(self):
        result = solve_lp([1], [[-1]], ["<="], [1], maximize=True)
        assert result.status is LPStatus.UNBOUNDED

    def test_equality_constraint(self):
        result = solve_lp([1, 1], [[1, 1]], ["=="], [2], maximize=False)
        assert result.status is LPStatus.OPTIMAL
        assert result.objective == 2
        assert result.x[0] + result.x[1] == 2

    def test_two_phase_with_geq_rows(self):
        # min x + y s.t. x + 2y >= 4, 3x + y >= 3
        result = solve_lp(
            [1, 1], [[1, 2], [3, 1]], [">=", ">="], [4, 3], maximize=False
        )
        assert result.status is LPStatus.OPTIMAL
        assert result.objective == F(11, 5)
        assert result.x == [F(2, 5), F(9, 5)]

    def test_duals_satisfy_strong_duality(self):
        result = solve_lp(
            [3, 2, 4],
            [[1, 1, 2], [2, 0, 3], [2, 1, 3]],
            [">=", ">=", ">="],
            [4, 5, 7],
            maximize=False,
        )
        assert result.status is LPStatus.OPTIMAL
        assert sum(d * b for d, b in zip(result.duals, [4, 5, 7])) == result.objective
        assert all(d >= 0 for d in result.duals)
        # dual feasibility for a min problem with >= rows: A^T y <= c
        rows = [[1, 1, 2], [2, 0, 3], [2, 1, 3]]
        for j, cj in enumerate([3, 2, 4]):
            assert sum(rows[i][j] * result.duals[i] for i in range(3)) <= cj

    def test_fractional_covering_of_five_node_graph(self, five_node_graph):
        g = five_node_graph
        cols = list(g.edges)
        rows = [
            [F(1) if node in edge else F(0) for edge in cols] for node in g.nodes
        ]
        result = solve_lp([1] * len(cols), rows, [">="] * g.n, [1] * g.n)
        assert result.objective == F(5, 2)

    def test_degenerate_problem_terminates(self):
        # redundant constraints force degenerate pivots; Bland's rule must exit
        result = solve_lp(
            [-1, -1],
            [[1, 0], [1, 0], [0, 1], [1, 1]],
            ["<="] * 4,
            [1, 1, 1, 2],
            maximize=False,
        )
        assert result.status is LPStatus.OPTIMAL
        assert result.objective == -2


class TestMatrixGames:
    def test_matching_pennies_diagonal(self):
        sol = solve_matrix_game([[1, 0], [0, 1]])
        assert sol.value == F(1, 2)
        assert sol.row_strategy == [F(1, 2), F(1, 2)]
        assert sol.col_strategy == [F(1, 2), F(1, 2)]

    def test_single_entry(self):
        sol = solve_matrix_game([[F(3, 7)]])
        assert sol.value == F(3, 7)

    def test_negative_payoffs(self):
        sol = solve_matrix_game([[-1, 1], [1, -1]])
        assert sol.value == 0

    def test_certificate_fields(self):
        sol = solve_matrix_game([[1, 0, 2], [0, 2, 1]])
        assert min(sol.col_guarantees) == sol.value
        assert max(sol.row_guarantees) == sol.value
        assert sum(sol.row_strategy) == 1
        assert sum(sol.col_strategy) == 1

    def test_tall_matrix_uses_same_value_as_wide(self, rng):
        for _ in range(30):
            m = rng.randint(1, 5)
            n = rng.randint(1, 5)
            matrix = [
                [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
                for _ in range(m)
            ]
            sol = solve_matrix_game(matrix)
            transposed = [[-matrix[i][j] for i in range(m)] for j in range(n)]
            assert solve_matrix_game(transposed).value == -sol.value

    def test_scaling_preserves_supports(self, rng):
        for _ in range(20):
            m = rng.randint(2, 4)
            n = rng.randint(2, 4)
            matrix = [
                [F(rng.randint(0, 3)) for _ in range(n)] for _ in range(m)
            ]
            factor = F(rng.randint(1, 5), rng.randint(1, 5))
            base = solve_matrix_game(matrix)
            scaled = solve_matrix_game(
                [[factor * v for v in row] for row in matrix]
            )
            assert scaled.value == factor * base.value
            assert [p > 0 for p in scaled.row_strategy] == [
                p > 0 for p in base.row_strategy
            ]
            assert [q > 0 for q in scaled.col_strategy] == [
                q > 0 for q in base.col_strategy
            ]

    def test_duplicate_row_keeps_value(self, rng):
        for _ in range(20):
            m = rng.randint(1, 4)
            n = rng.randint(1, 4)
            matrix = [
                [F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)
            ]
            base = solve_matrix_game(matrix)
            dup = matrix + [list(matrix[rng.randrange(m)])]
            assert solve_matrix_game(dup).value == base.value

    def test_value_against_pure_strategy_enumeration(self, rng):
        # sanity oracle: the value lies between the maximin and minimax of
        # the pure strategies
        for _ in range(30):
            m = rng.randint(1, 5)
            n = rng.randint(1, 5)
            matrix = [
                [F(rng.randint(-5, 5)) for _ in range(n)] for _ in range(m)
            ]
            sol = solve_matrix_game(matrix)
            pure_maximin = max(min(row) for row in matrix)
            pure_minimax = min(
                max(matrix[i][j] for i in range(m)) for j in range(n)
            )
            assert pure_maximin <= sol.value <= pure_minimax

    def test_rejects_ragged_matrix(self):
        with pytest.raises(ValueError):
            MatrixGame([[1, 2], [3]])

    def test_rejects_empty_matrix(self):
        with pytest.raises(ValueError):
            MatrixGame([])
