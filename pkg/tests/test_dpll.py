import pytest

from edusat import (
    ALL,
    SINGLE,
    And,
    Const,
    Literal,
    Not,
    Or,
    Var,
    evaluate,
    find_pure_literal,
    find_unit_literal,
    iter_partial_models,
    parse,
    solve_dpll,
    solve_naive,
    to_nnf,
    truth_table,
)
from edusat.generator import GenConfig, gen_bool_tree

from brute import model_set

X = [Var(i, f"x{i}") for i in range(8)]


class TestFindUnitLiteral:
    def test_first_conjunct(self):
        f = And((X[0], Or((X[1], X[2]))))
        assert find_unit_literal(f) == Literal(X[0], True)

    def test_disjunction_has_none(self):
        assert find_unit_literal(Or((X[0], X[1]))) is None

    def test_left_to_right_tie_break(self):
        f = And((Not(X[2]), X[0]))
        assert find_unit_literal(f) == Literal(X[2], False)

    def test_bare_literal_is_its_own_unit(self):
        assert find_unit_literal(Not(X[3])) == Literal(X[3], False)


class TestFindPureLiteral:
    def test_positive_pure(self):
        f = And((Or((X[0], X[1])), Or((X[0], Not(X[1])))))
        assert find_pure_literal(f) == Literal(X[0], True)

    def test_impure_variable(self):
        assert find_pure_literal(And((X[0], Not(X[0])))) is None

    def test_lowest_id_among_pure(self):
        # parsed text numbers variables by first occurrence, so x3 is id 0
        f = parse("not x3 and (not x3 or x1) and x1")
        lit = find_pure_literal(f)
        assert lit is not None
        assert (lit.var.name, lit.positive) == ("x3", False)

    def test_lowest_id_with_explicit_ids(self):
        f = And((Not(X[3]), Or((Not(X[3]), X[1])), X[1]))
        assert find_pure_literal(f) == Literal(X[1], True)


class TestSolveNaive:
    def test_contradiction(self):
        result, stats = solve_naive(And((X[0], Not(X[0]))))
        assert result.status == "UNSAT" and result.models == []
        assert stats.unit_propagations == 0
        assert stats.pure_literal_assignments == 0
        assert stats.early_terminations == 0

    def test_all_mode_model_count(self):
        result, _ = solve_naive(Or((X[0], X[1])), ALL)
        assert len(result.models) == 3

    def test_matches_truth_table(self):
        f = gen_bool_tree(GenConfig(num_vars=5, depth=8, seed=21))
        result, _ = solve_naive(f, ALL)
        assert model_set(result.models) == model_set(
            truth_table(f).true_assignments()
        )

    def test_single_mode_returns_one_model(self):
        result, _ = solve_naive(Or((X[0], X[1])), SINGLE)
        assert result.status == "SAT" and len(result.models) == 1
        assert evaluate(Or((X[0], X[1])), result.models[0])


class TestSolveDpll:
    def test_unit_chain(self):
        f = And((X[0], Or((Not(X[0]), X[1]))))
        result, stats = solve_dpll(f)
        assert result.status == "SAT"
        assert result.models == [{X[0]: True, X[1]: True}]
        assert model_set(result.models) == model_set(
            truth_table(f).true_assignments()
        )
        assert stats.unit_propagations == 2
        assert stats.decisions == 0

    def test_pure_literal_path(self):
        f = And((Or((X[0], X[1])), Or((X[0], Not(X[2])))))
        result, stats = solve_dpll(f)
        assert result.status == "SAT"
        assert stats.pure_literal_assignments >= 1
        assert result.models[0][X[0]] is True
        reference, _ = solve_naive(f)
        assert reference.status == "SAT"

    def test_early_termination_at_root(self):
        result, stats = solve_dpll(Const(False))
        assert result.status == "UNSAT"
        assert stats.decisions == 0
        assert stats.early_terminations == 1

    def test_models_are_total(self):
        f = Or((X[0], X[1], X[2]))
        result, _ = solve_dpll(f, ALL)
        assert all(len(m) == 3 for m in result.models)

    @pytest.mark.parametrize("mode", [SINGLE, ALL])
    def test_naive_counters_stay_zero(self, mode):
        _, stats = solve_naive(parse("x0 or not x1"), mode)
        assert stats.unit_propagations == 0
        assert stats.pure_literal_assignments == 0
        assert stats.early_terminations == 0


class TestEngineAgreement:
    @pytest.mark.parametrize("seed", range(60))
    def test_verdicts_and_model_sets(self, seed):
        num_vars = 3 + seed % 6  # up to 8 variables
        f = gen_bool_tree(GenConfig(num_vars=num_vars, depth=5, seed=seed))
        naive, _ = solve_naive(f, ALL)
        heuristic, _ = solve_dpll(f, ALL)
        expected = model_set(truth_table(f).true_assignments())
        assert naive.status == heuristic.status
        assert model_set(naive.models) == expected
        assert model_set(heuristic.models) == expected

    @pytest.mark.parametrize("seed", range(20))
    def test_single_mode_soundness(self, seed):
        f = gen_bool_tree(GenConfig(num_vars=5, depth=7, seed=seed))
        naive, _ = solve_naive(f, SINGLE)
        heuristic, _ = solve_dpll(f, SINGLE)
        assert naive.status == heuristic.status
        for result in (naive, heuristic):
            for model in result.models:
                assert evaluate(f, model) is True


def test_heuristics_reduce_decisions_in_aggregate():
    naive_total = dpll_total = 0
    for seed in range(120):
        f = gen_bool_tree(GenConfig(num_vars=5, depth=8, seed=1000 + seed))
        _, naive_stats = solve_naive(f, SINGLE)
        _, dpll_stats = solve_dpll(f, SINGLE)
        naive_total += naive_stats.decisions
        dpll_total += dpll_stats.decisions
    assert dpll_total < naive_total


def test_iter_partial_models_cover_exactly_the_models():
    for seed in range(15):
        f = gen_bool_tree(GenConfig(num_vars=4, depth=4, seed=seed))
        variables = truth_table(f).variables
        expanded = set()
        for partial in iter_partial_models(f):
            rest = [v for v in variables if v not in partial]
            import itertools

            for values in itertools.product((False, True), repeat=len(rest)):
                model = dict(partial)
                model.update(zip(rest, values))
                key = frozenset(model.items())
                assert key not in expanded  # branches are disjoint
                expanded.add(key)
        assert expanded == model_set(truth_table(f).true_assignments())


def test_nnf_precondition_is_not_required_for_pure_scan():
    # the polarity walk flips through non-literal negations as well
    f = Not(And((X[0], Not(X[1]))))
    lit = find_pure_literal(f)
    assert lit == Literal(X[0], False)
    assert find_pure_literal(to_nnf(f)) == lit
