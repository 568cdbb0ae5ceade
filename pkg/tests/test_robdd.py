import itertools
import random

import pytest

from edusat import (
    And,
    Const,
    Not,
    Or,
    Var,
    condition,
    evaluate,
    free_vars,
    parse,
    truth_table,
)
from edusat.generator import GenConfig, gen_bool_tree
from edusat.robdd import (
    TERM_FALSE,
    TERM_TRUE,
    all_solutions,
    build_bdt,
    build_robdd,
    dag_signature,
    node_count,
    reduce_bdt,
    single_solution,
    to_dot,
)

from brute import model_set, robdd_true_paths

X = [Var(i, f"x{i}") for i in range(8)]

CASE_STUDY = "(x0 and x1) or (x2 and x3) or (x4 and x5) or (x6 and x7)"


def check_structure(d):
    """Post-reduction invariants: no redundant node, no duplicate triple,
    levels strictly increase along every edge."""
    seen = set()
    for nid in range(2, len(d.nodes) + 2):
        level, low, high = d.node(nid)
        assert low != high
        assert (level, low, high) not in seen
        seen.add((level, low, high))
        for child in (low, high):
            if child not in (TERM_FALSE, TERM_TRUE):
                child_level, _, _ = d.node(child)
                assert child_level > level


class TestBuildBdt:
    def test_single_variable(self):
        t = build_bdt(X[0], [X[0]])
        assert t.leaves == (False, True)

    def test_constant_empty_order(self):
        t = build_bdt(Const(True), [])
        assert t.leaves == (True,)
        assert t.node_count == 1

    def test_conjunction_single_true_leaf(self):
        t = build_bdt(And((X[0], X[1])), [X[0], X[1]])
        assert t.leaves == (False, False, False, True)
        assert t.leaf((True, True)) is True
        assert t.node_count == 7

    def test_order_must_cover_formula_variables(self):
        with pytest.raises(ValueError, match="missing"):
            build_bdt(And((X[0], X[1])), [X[0]])

    def test_extra_order_variable_doubles_the_tree(self):
        t = build_bdt(X[1], [X[0], X[1]])
        assert t.leaves == (False, True, False, True)

    def test_leaves_match_evaluate(self):
        f = parse("(x0 or not x1) and (x2 or x0)")
        order = free_vars(f)
        t = build_bdt(f, order)
        for path in itertools.product((False, True), repeat=len(order)):
            assert t.leaf(path) == evaluate(f, dict(zip(order, path)))


class TestReduce:
    def test_constant_true(self):
        d = reduce_bdt(build_bdt(Const(True), []))
        assert d.root == TERM_TRUE
        assert node_count(d) == 0

    def test_contradiction(self):
        d = reduce_bdt(build_bdt(And((X[0], Not(X[0]))), [X[0]]))
        assert d.root == TERM_FALSE

    def test_elimination_of_irrelevant_variable(self):
        d = reduce_bdt(build_bdt(X[1], [X[0], X[1]]))
        assert node_count(d) == 1
        level, low, high = d.node(d.root)
        assert d.order[level] == X[1]
        assert (low, high) == (TERM_FALSE, TERM_TRUE)


class TestBuildRobdd:
    def test_single_variable(self):
        d = build_robdd(X[0], [X[0]])
        assert node_count(d) == 1
        assert d.node(d.root) == (0, TERM_FALSE, TERM_TRUE)

    def test_case_study_both_orders(self):
        f = parse(CASE_STUDY)
        order = free_vars(f)
        for o in (order, list(reversed(order))):
            fast = build_robdd(f, o)
            didactic = reduce_bdt(build_bdt(f, o))
            assert dag_signature(fast) == dag_signature(didactic)
            assert node_count(fast) == node_count(didactic) == 8

    def test_extra_order_variables_allowed(self):
        d = build_robdd(X[1], [X[0], X[1], X[2]])
        assert node_count(d) == 1

    def test_missing_formula_variable_rejected(self):
        with pytest.raises(ValueError, match="missing"):
            build_robdd(And((X[0], X[1])), [X[0]])

    def test_duplicate_order_rejected(self):
        with pytest.raises(ValueError, match="duplicates"):
            build_robdd(X[0], [X[0], X[0]])

    @pytest.mark.parametrize("seed", range(40))
    def test_agrees_with_didactic_route(self, seed):
        num_vars = 2 + seed % 5
        f = gen_bool_tree(GenConfig(num_vars=num_vars, depth=5, seed=seed))
        order = free_vars(f)
        fast = build_robdd(f, order)
        didactic = reduce_bdt(build_bdt(f, order))
        assert dag_signature(fast) == dag_signature(didactic)
        check_structure(fast)
        check_structure(didactic)


class TestSolutions:
    def test_constant_false_has_none(self):
        d = build_robdd(Const(False), [])
        assert all_solutions(d) == []
        assert single_solution(d) is None

    def test_disjunction_all(self):
        d = build_robdd(Or((X[0], X[1])), [X[0], X[1]])
        assert len(all_solutions(d)) == 3

    @pytest.mark.parametrize("seed", range(25))
    def test_all_solutions_match_truth_table(self, seed):
        f = gen_bool_tree(GenConfig(num_vars=5, depth=6, seed=100 + seed))
        d = build_robdd(f, free_vars(f))
        assert model_set(all_solutions(d)) == model_set(
            truth_table(f).true_assignments()
        )

    def test_single_variable(self):
        d = build_robdd(X[0], [X[0]])
        assert single_solution(d) == {X[0]: True}

    def test_constant_true_empty_assignment(self):
        d = build_robdd(Const(True), [])
        assert single_solution(d) == {}

    def test_shortest_with_low_preference(self):
        f = Or((And((X[0], X[1])), X[2]))
        d = build_robdd(f, [X[0], X[1], X[2]])
        assert single_solution(d) == {X[0]: False, X[2]: True}

    @pytest.mark.parametrize("seed", range(25))
    def test_single_solution_minimal_and_sound(self, seed):
        f = gen_bool_tree(GenConfig(num_vars=5, depth=6, seed=200 + seed))
        d = build_robdd(f, free_vars(f))
        partial = single_solution(d)
        paths = robdd_true_paths(d)
        if partial is None:
            assert not paths
            return
        assert len(partial) == min(len(p) for p in paths)
        # every extension of the partial assignment satisfies the formula
        rest = [v for v in free_vars(f) if v not in partial]
        for values in itertools.product((False, True), repeat=len(rest)):
            assert evaluate(f, {**partial, **dict(zip(rest, values))})


class TestDot:
    def test_constant_true(self):
        dot = to_dot(build_robdd(Const(True), []))
        assert dot.count("shape=box") == 1
        assert 'label="1"' in dot
        assert "shape=circle" not in dot

    def test_single_variable_shape(self):
        dot = to_dot(build_robdd(X[0], [X[0]]))
        assert dot.count("shape=circle") == 1
        assert dot.count("shape=box") == 2
        assert "-> n0 [style=dashed]" in dot
        assert "-> n1 [style=solid]" in dot

    def test_case_study_counts(self):
        f = parse(CASE_STUDY)
        dot = to_dot(build_robdd(f, free_vars(f)))
        assert dot.count("shape=circle") == 8
        assert dot.count("shape=box") == 2

    def test_deterministic(self):
        f = parse(CASE_STUDY)
        a = to_dot(build_robdd(f, free_vars(f)))
        b = to_dot(build_robdd(f, free_vars(f)))
        assert a == b


class TestNodeCount:
    def test_constant(self):
        assert node_count(build_robdd(Const(True), [])) == 0

    def test_single_variable(self):
        assert node_count(build_robdd(X[0], [X[0]])) == 1

    def test_case_study(self):
        f = parse(CASE_STUDY)
        assert node_count(build_robdd(f, free_vars(f))) == 8


def random_formula(rng, variables, depth):
    if depth == 0:
        return rng.choice(variables)
    kind = rng.random()
    if kind < 0.2:
        return Not(random_formula(rng, variables, depth - 1))
    parts = tuple(
        random_formula(rng, variables, depth - 1) for _ in range(2)
    )
    return And(parts) if kind < 0.6 else Or(parts)


def test_canonicity_same_semantics_same_dag():
    rng = random.Random(31)
    variables = X[:4]
    order = variables
    equivalent_seen = different_seen = 0
    for _ in range(150):
        f = random_formula(rng, variables, rng.randint(1, 4))
        g = random_formula(rng, variables, rng.randint(1, 4))
        same_semantics = all(
            evaluate(f, dict(zip(variables, values)))
            == evaluate(g, dict(zip(variables, values)))
            for values in itertools.product((False, True), repeat=len(variables))
        )
        same_dag = dag_signature(build_robdd(f, order)) == dag_signature(
            build_robdd(g, order)
        )
        assert same_semantics == same_dag
        equivalent_seen += same_semantics
        different_seen += not same_semantics
    assert equivalent_seen and different_seen  # both directions exercised
