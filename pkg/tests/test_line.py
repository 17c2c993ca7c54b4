from fractions import Fraction

import pytest

from patrolgame import (
    GameSpec,
    MixedStrategy,
    OscillationSpec,
    UnsupportedParametersError,
    attacker_guarantee,
    biased_covering_strategy,
    boustrophedon_tour,
    case4_strategy,
    case5_strategy,
    casemap_csv,
    classify_case,
    curves_csv,
    decompose_bound,
    decomposed_case4_strategy,
    decomposition_gap,
    expand_oscillation,
    independent_attack,
    is_decomposable,
    limit_value,
    line_graph,
    line_value,
    patroller_guarantee,
    solve_exact,
    tour_with_end_oscillations,
    unbiased_covering_strategy,
    uniform_attack,
)
from patrolgame.solver import per_attack_interception

F = Fraction


def per_node_minima(n, T, strategy):
    spec = GameSpec(line_graph(n), T)
    probs = per_attack_interception(spec, strategy)
    return [min(probs[i * T : (i + 1) * T]) for i in range(n)]


class TestClassification:
    @pytest.mark.parametrize(
        "n,T,case,value",
        [
            (7, 12, 2, F(1, 4)),
            (7, 3, 4, F(5, 21)),
            (6, 3, 3, F(5, 18)),
            (4, 4, 1, F(1, 2)),
            (5, 3, 5, F(1, 3)),
            (2, 3, 3, F(5, 6)),
            (7, 5, 5, F(1, 4)),
            (9, 3, 4, F(5, 27)),
        ],
    )
    def test_cases_and_values(self, n, T, case, value):
        got = classify_case(n, T)
        assert (got.case_id, got.value) == (case, value)
        assert line_value(n, T) == value

    def test_boundary_is_labeled_case_five(self):
        for T in (3, 5, 7):
            n = 2 * T - 1
            case = classify_case(n, T)
            assert case.case_id == 5
            assert case.boundary
            # both odd-odd formulas coincide there
            assert F(2, n + 1) == F(2 * T - 1, n * T)

    def test_rejects_out_of_range(self):
        with pytest.raises(UnsupportedParametersError):
            classify_case(1, 5)
        with pytest.raises(UnsupportedParametersError):
            classify_case(5, 1)

    @pytest.mark.parametrize("n,expected", [(7, F(1, 4)), (2, F(1)), (6, F(1, 3))])
    def test_limit_value(self, n, expected):
        assert limit_value(n) == expected

    def test_limit_reached_within_one_over_nt(self):
        for n in range(2, 10):
            for T in (19, 20, 49, 50):
                assert abs(line_value(n, T) - limit_value(n)) <= F(1, n * T)


class TestOscillations:
    def test_full_right_bias_repeats_right_node(self):
        strategy = expand_oscillation(OscillationSpec(("1", "2"), "right", F(1)), 3)
        assert len(strategy) == 3
        for walk, p in strategy:
            assert p == F(1, 3)
            assert walk.positions.count("2") == 2

    def test_interception_at_favored_and_other_end(self):
        # favored end: p + (1-p)(T-1)/T; other end: p(T-1)/T + (1-p)
        for T in (3, 5, 7):
            for p in (F(1), F(2, 3), F(6, 7)):
                strategy = expand_oscillation(
                    OscillationSpec(("1", "2"), "right", p), T
                )
                mins = per_node_minima(2, T, strategy)
                assert mins[1] == F(T + p - 1, T)
                assert mins[0] == F(T - p, T)

    def test_left_oscillation_mirrors_right(self):
        left = expand_oscillation(OscillationSpec(("1", "2"), "left", F(2, 3)), 5)
        right = expand_oscillation(OscillationSpec(("1", "2"), "right", F(1, 3)), 5)
        assert dict(left.entries) == dict(right.entries)

    def test_even_period_gives_pure_alternation(self):
        strategy = expand_oscillation(
            OscillationSpec(("3", "4"), "right", F(1, 2)), 6
        )
        assert len(strategy) == 1
        walk = strategy.entries[0][0]
        assert walk.positions == ("3", "4", "3", "4", "3", "4")

    def test_even_period_rejects_bias(self):
        with pytest.raises(UnsupportedParametersError):
            expand_oscillation(OscillationSpec(("1", "2"), "right", F(2, 3)), 4)

    def test_odd_period_family_size_and_occupation(self):
        strategy = expand_oscillation(
            OscillationSpec(("1", "2"), "right", F(1, 2)), 5
        )
        assert len(strategy) == 10
        for walk, p in strategy:
            assert p == F(1, 10)
            repeated = max(set(walk.positions), key=walk.positions.count)
            assert walk.positions.count(repeated) == 3


class TestCoveringStrategies:
    def test_line_seven_even_period(self):
        strategy = unbiased_covering_strategy(line_graph(7), 12)
        assert len(strategy) == 4
        assert all(p == F(1, 4) for _, p in strategy)
        mins = per_node_minima(7, 12, strategy)
        assert min(mins) == F(1, 4)
        assert mins[5] == F(1, 2)  # node 6 sits on two covering edges

    def test_single_edge_guarantees_everything(self):
        spec = GameSpec(line_graph(2), 2)
        strategy = unbiased_covering_strategy(line_graph(2), 2)
        assert patroller_guarantee(spec, strategy) == 1

    def test_line_four_even_period(self):
        spec = GameSpec(line_graph(4), 4)
        strategy = unbiased_covering_strategy(line_graph(4), 4)
        assert len(strategy) == 2
        assert patroller_guarantee(spec, strategy) == F(1, 2)

    def test_odd_period_rejected_for_unbiased(self):
        with pytest.raises(UnsupportedParametersError):
            unbiased_covering_strategy(line_graph(4), 5)

    @pytest.mark.parametrize(
        "n,T,expected",
        [(6, 3, F(5, 18)), (2, 3, F(5, 6)), (4, 5, F(9, 20))],
    )
    def test_biased_covering_guarantees(self, n, T, expected):
        spec = GameSpec(line_graph(n), T)
        strategy = biased_covering_strategy(line_graph(n), T)
        assert patroller_guarantee(spec, strategy) == expected
        assert expected == F(2 * T - 1, n * T)

    def test_even_period_rejected_for_biased(self):
        with pytest.raises(UnsupportedParametersError):
            biased_covering_strategy(line_graph(4), 4)

    def test_biased_covering_on_general_graph(self, triangle):
        spec = GameSpec(triangle, 5)
        strategy = biased_covering_strategy(triangle, 5)
        # covering number 2, so the guarantee is (1/2)(1 - 1/(2T))
        assert patroller_guarantee(spec, strategy) == F(9, 20)


class TestOddOddStrategies:
    def test_case4_equalizes_every_attack(self):
        spec = GameSpec(line_graph(7), 3)
        strategy = case4_strategy(7, 3)
        probs = per_attack_interception(spec, strategy)
        assert set(probs) == {F(5, 21)}

    def test_case4_bias_is_visible_in_repeat_mass(self):
        # the favored (odd) node carries the bias mass p = (2T+n-1)/(2n)
        for n, T, p in ((7, 3, F(6, 7)), (9, 3, F(7, 9))):
            strategy = case4_strategy(n, T)
            odd_repeat_mass = F(0)
            for walk, prob in strategy:
                repeated = max(set(walk.positions), key=walk.positions.count)
                if int(repeated) % 2 == 1:
                    odd_repeat_mass += prob
            assert odd_repeat_mass == p

    def test_case4_nine_nodes(self):
        spec = GameSpec(line_graph(9), 3)
        assert patroller_guarantee(spec, case4_strategy(9, 3)) == F(5, 27)

    def test_case4_rejects_small_n(self):
        with pytest.raises(UnsupportedParametersError):
            case4_strategy(3, 3)

    @pytest.mark.parametrize(
        "n,T,expected", [(5, 3, F(1, 3)), (7, 5, F(1, 4)), (3, 3, F(1, 2))]
    )
    def test_case5_guarantees(self, n, T, expected):
        spec = GameSpec(line_graph(n), T)
        assert patroller_guarantee(spec, case5_strategy(n, T)) == expected

    def test_case5_per_node_profile(self):
        # odd nodes sit exactly at 2/(n+1); even nodes at 2(T-1)/((n-1)T)
        n, T = 5, 5
        mins = per_node_minima(n, T, case5_strategy(n, T))
        for i, value in enumerate(mins):
            if i % 2 == 0:
                assert value == F(2, n + 1)
            else:
                assert value == F(2 * (T - 1), (n - 1) * T)
        assert F(2 * (T - 1), (n - 1) * T) >= F(2, n + 1)

    def test_case5_rejects_large_n(self):
        with pytest.raises(UnsupportedParametersError):
            case5_strategy(9, 3)

    def test_both_constructions_agree_on_the_boundary(self):
        n, T = 5, 3  # n = 2T - 1
        spec = GameSpec(line_graph(n), T)
        assert (
            patroller_guarantee(spec, case4_strategy(n, T))
            == patroller_guarantee(spec, case5_strategy(n, T))
            == F(1, 3)
        )


class TestDecomposition:
    def test_bound_examples(self):
        assert decompose_bound(F(1), F(2, 3))[0] == F(2, 5)
        bound, p1, p2 = decompose_bound(F(1, 3), F(5, 6))
        assert (bound, p1, p2) == (F(5, 21), F(5, 7), F(2, 7))

    def test_bound_symmetric_case(self):
        v = F(3, 7)
        assert decompose_bound(v, v)[0] == v / 2

    def test_bound_rejects_nonpositive(self):
        with pytest.raises(UnsupportedParametersError):
            decompose_bound(F(0), F(1))

    def test_decomposed_seven_three(self):
        spec = GameSpec(line_graph(7), 3)
        strategy = decomposed_case4_strategy(7, 3)
        assert patroller_guarantee(spec, strategy) == F(5, 21)
        # weights 5/7 left, 2/7 right
        left_mass = sum(
            p for w, p in strategy if all(int(v) <= 5 for v in w.positions)
        )
        right_mass = sum(
            p for w, p in strategy if all(int(v) >= 6 for v in w.positions)
        )
        assert (left_mass, right_mass) == (F(5, 7), F(2, 7))
        # the boundary edge (5, 6) is never traversed
        for walk, _ in strategy:
            pos = walk.positions
            for i in range(len(pos)):
                step = {pos[i], pos[(i + 1) % len(pos)]}
                assert step != {"5", "6"}

    @pytest.mark.parametrize("n,T,expected", [(9, 3, F(5, 27)), (11, 5, F(9, 55))])
    def test_decomposed_matches_value(self, n, T, expected):
        spec = GameSpec(line_graph(n), T)
        assert patroller_guarantee(spec, decomposed_case4_strategy(n, T)) == expected

    def test_decomposed_rejects_boundary(self):
        with pytest.raises(UnsupportedParametersError):
            decomposed_case4_strategy(5, 3)

    def test_is_decomposable_case4(self):
        flag, witness = is_decomposable(7, 3)
        assert flag
        assert witness.left_nodes == ("1", "2", "3", "4", "5")
        assert witness.right_nodes == ("6", "7")
        assert (witness.p1, witness.p2) == (F(5, 7), F(2, 7))

    def test_is_decomposable_case5_is_false(self):
        assert is_decomposable(5, 3) == (False, None)
        assert is_decomposable(7, 5) == (False, None)

    def test_is_decomposable_even_cases(self):
        flag, witness = is_decomposable(7, 12)
        assert flag
        assert witness.left_nodes == ("1", "2")
        flag, witness = is_decomposable(6, 3)
        assert flag

    def test_three_nodes_even_period_uses_stationary_half(self):
        flag, witness = is_decomposable(3, 4)
        assert flag
        assert witness.right_nodes == ("3",)
        assert witness.v1 == witness.v2 == 1
        assert witness.p1 == witness.p2 == F(1, 2)

    def test_two_nodes_have_no_split(self):
        assert is_decomposable(2, 4) == (False, None)

    def test_gap_formula_is_exact(self):
        for n, T in [(3, 3), (5, 3), (5, 5), (7, 5), (9, 5), (7, 7), (9, 7)]:
            if classify_case(n, T).case_id != 5:
                continue
            for j in range(1, (n - 1) // 2 + 1):
                gap = decomposition_gap(n, T, j)
                assert gap == F(4 * j, (n + 1) * (2 * j + (2 * T - 1) * (1 + n)))
                assert gap > 0


class TestTour:
    def test_anchored_at_node_three_heading_right(self):
        assert boustrophedon_tour(7, 2).positions == tuple("345676543212")

    def test_two_nodes_degenerates_to_oscillation(self):
        assert boustrophedon_tour(2).positions == ("1", "2")

    def test_phase_uniform_interception_profile(self):
        # each start meets exactly two node-attacks, so the per-node hit
        # counts of the 12 phases sum to 24: profile (2,4,4,4,4,4,2)/12
        n, T = 7, 12
        entries = [(boustrophedon_tour(n, phase), F(1, T)) for phase in range(T)]
        mins = per_node_minima(n, T, MixedStrategy(entries))
        assert mins == [
            F(2, 12),
            F(4, 12),
            F(4, 12),
            F(4, 12),
            F(4, 12),
            F(4, 12),
            F(2, 12),
        ]

    def test_tour_mixture_guarantee_and_profile(self):
        spec = GameSpec(line_graph(7), 12)
        strategy = tour_with_end_oscillations(7)
        probs = per_attack_interception(spec, strategy)
        assert min(probs) == F(1, 4)
        mins = per_node_minima(7, 12, strategy)
        assert mins == [F(1, 4), F(3, 8), F(1, 4), F(1, 4), F(1, 4), F(3, 8), F(1, 4)]


class TestStrategyOptimality:
    """Each construction matches the exact solver on instances within reach."""

    @pytest.mark.parametrize(
        "n,T,builder",
        [
            (4, 4, lambda n, T: unbiased_covering_strategy(line_graph(n), T)),
            (5, 4, lambda n, T: unbiased_covering_strategy(line_graph(n), T)),
            (4, 3, lambda n, T: biased_covering_strategy(line_graph(n), T)),
            (6, 5, lambda n, T: biased_covering_strategy(line_graph(n), T)),
            (5, 3, lambda n, T: case5_strategy(n, T)),
            (3, 5, lambda n, T: case5_strategy(n, T)),
        ],
    )
    def test_construction_achieves_exact_value(self, n, T, builder):
        spec = GameSpec(line_graph(n), T)
        strategy = builder(n, T)
        assert patroller_guarantee(spec, strategy) == solve_exact(spec).value

    @pytest.mark.parametrize(
        "n,T,attack_builder",
        [
            (4, 4, independent_attack),
            (5, 4, independent_attack),
            (4, 3, uniform_attack),
            (7, 3, uniform_attack),
            (5, 3, independent_attack),
        ],
    )
    def test_attack_side_achieves_value(self, n, T, attack_builder):
        spec = GameSpec(line_graph(n), T)
        assert attacker_guarantee(spec, attack_builder(spec)) == line_value(n, T)


class TestCsvEmitters:
    def test_casemap_grid(self):
        text = casemap_csv(2, 9, 2, 9)
        lines = text.strip().split("\n")
        assert lines[0] == "n,T,case,value,boundary"
        assert len(lines) == 65
        row73 = next(l for l in lines if l.startswith("7,3,"))
        assert row73 == "7,3,4,5/21,0"
        row53 = next(l for l in lines if l.startswith("5,3,"))
        assert row53 == "5,3,5,1/3,1"

    def test_casemap_deterministic(self):
        assert casemap_csv(2, 5, 2, 5) == casemap_csv(2, 5, 2, 5)

    def test_casemap_row_7_12(self):
        text = casemap_csv(7, 7, 12, 12)
        assert text.strip().split("\n")[1] == "7,12,2,1/4,0"

    def test_curves_cross_at_boundary(self):
        text = curves_csv(7, 11, 15)
        lines = text.strip().split("\n")
        assert lines[0] == "n,independent_upper,uniform_upper"
        row13 = next(l for l in lines if l.startswith("13,"))
        _, a, b = row13.split(",")
        assert a == b == "1/7"

    def test_curves_values(self):
        text = curves_csv(7, 14, 14)
        assert text.strip().split("\n")[1] == "14,2/15,13/98"
        text = curves_csv(3, 5, 5)
        _, a, b = text.strip().split("\n")[1].split(",")
        assert a == b == "1/3"

    def test_decimal_columns(self):
        text = casemap_csv(2, 2, 2, 2, decimal=True)
        lines = text.strip().split("\n")
        assert lines[0].endswith(",value_decimal")
        assert lines[1].endswith(",1.0")
