import itertools

import pytest

from edusat import solve_backtracking, solve_min_conflicts
from edusat.npc import (
    GraphInstance,
    NQueensInstance,
    SubsetSumInstance,
    SudokuInstance,
    decode,
    encode_coloring,
    encode_nqueens,
    encode_subset_sum,
    encode_sudoku,
    encode_vertex_cover,
    parse_graph,
    parse_nqueens,
    parse_subset_sum,
    parse_sudoku,
    validate,
)
from edusat.smt import satisfies

from brute import queens_solutions

TRIANGLE = GraphInstance(3, ((0, 1), (1, 2), (0, 2)), 3)


class TestNQueens:
    def test_n1_no_constraints(self):
        formula, bounds = encode_nqueens(NQueensInstance(1))
        assert not formula.atoms
        assert bounds == {"q0": (0, 0)}
        result = solve_backtracking(formula, bounds)
        assert decode(NQueensInstance(1), result.models[0]) == (0,)

    def test_n4_atom_count(self):
        formula, _ = encode_nqueens(NQueensInstance(4))
        # 6 pairs x 3 negated atoms
        assert len(formula.atoms) == 18

    def test_n4_solutions(self):
        inst = NQueensInstance(4)
        formula, bounds = encode_nqueens(inst)
        result = solve_backtracking(formula, bounds, "all")
        assert [decode(inst, m) for m in result.models] == [(1, 3, 0, 2), (2, 0, 3, 1)]

    def test_known_placement_validates(self):
        assert validate(NQueensInstance(4), (1, 3, 0, 2))
        assert (1, 3, 0, 2) in queens_solutions(4)

    def test_row_conflict_rejected(self):
        assert not validate(NQueensInstance(4), (0, 0, 1, 3))

    def test_diagonal_conflict_rejected(self):
        assert not validate(NQueensInstance(4), (0, 1, 3, 2))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_bijection_with_permutation_oracle(self, n):
        inst = NQueensInstance(n)
        formula, bounds = encode_nqueens(inst)
        result = solve_backtracking(formula, bounds, "all")
        decoded = {decode(inst, m) for m in result.models}
        assert decoded == set(queens_solutions(n))
        assert len(result.models) == len(decoded)
        assert all(validate(inst, sol) for sol in decoded)


class TestColoring:
    def test_triangle_two_colors_unsat(self):
        inst = GraphInstance(3, TRIANGLE.edges, 2)
        formula, bounds = encode_coloring(inst)
        assert solve_backtracking(formula, bounds).status == "UNSAT_IN_RANGE"

    def test_triangle_three_colors_all(self):
        formula, bounds = encode_coloring(TRIANGLE)
        result = solve_backtracking(formula, bounds, "all")
        assert len(result.models) == 6
        for model in result.models:
            assert validate(TRIANGLE, decode(TRIANGLE, model))

    def test_edgeless_graph_one_color(self):
        inst = GraphInstance(3, (), 1)
        formula, bounds = encode_coloring(inst)
        result = solve_backtracking(formula, bounds)
        assert decode(inst, result.models[0]) == (0, 0, 0)

    def test_bad_coloring_rejected(self):
        assert not validate(TRIANGLE, (0, 0, 1))

    def test_bijection_with_brute_force(self):
        inst = GraphInstance(4, ((0, 1), (1, 2), (2, 3), (3, 0)), 2)
        formula, bounds = encode_coloring(inst)
        result = solve_backtracking(formula, bounds, "all")
        brute = {
            colors
            for colors in itertools.product(range(inst.k), repeat=inst.num_vertices)
            if all(colors[u] != colors[v] for u, v in inst.edges)
        }
        assert {decode(inst, m) for m in result.models} == brute


class TestSubsetSum:
    def test_empty_instance_target_zero(self):
        inst = SubsetSumInstance((), 0)
        formula, bounds = encode_subset_sum(inst)
        result = solve_backtracking(formula, bounds)
        assert result.status == "SAT"
        assert decode(inst, result.models[0]) == ()

    def test_pair_sums_to_target(self):
        inst = SubsetSumInstance((3, 5), 8)
        formula, bounds = encode_subset_sum(inst)
        result = solve_backtracking(formula, bounds, "all")
        assert [decode(inst, m) for m in result.models] == [(0, 1)]

    def test_bijection_with_brute_force(self):
        values = (3, -2, 7, 1, 4, -5, 9, 2, 6, -1)
        inst = SubsetSumInstance(values, 9)
        formula, bounds = encode_subset_sum(inst)
        result = solve_backtracking(formula, bounds, "all")
        brute = set()
        for mask in range(1 << len(values)):
            chosen = tuple(i for i in range(len(values)) if mask >> i & 1)
            if sum(values[i] for i in chosen) == inst.target:
                brute.add(chosen)
        assert {decode(inst, m) for m in result.models} == brute
        assert all(validate(inst, sol) for sol in brute)

    def test_duplicate_values_distinct_indices(self):
        inst = SubsetSumInstance((2, 2), 2)
        formula, bounds = encode_subset_sum(inst)
        result = solve_backtracking(formula, bounds, "all")
        assert {decode(inst, m) for m in result.models} == {(0,), (1,)}


class TestVertexCover:
    def test_single_edge_budget_one(self):
        inst = GraphInstance(2, ((0, 1),), 1)
        formula, bounds = encode_vertex_cover(inst)
        result = solve_backtracking(formula, bounds)
        assert result.status == "SAT"
        cover = decode(inst, result.models[0], cover=True)
        assert validate(inst, cover, cover=True)

    def test_budget_zero_with_edge_unsat(self):
        inst = GraphInstance(2, ((0, 1),), 0)
        formula, bounds = encode_vertex_cover(inst)
        assert solve_backtracking(formula, bounds).status == "UNSAT_IN_RANGE"

    def test_path_graph_all_covers(self):
        inst = GraphInstance(4, ((0, 1), (1, 2), (2, 3)), 2)
        formula, bounds = encode_vertex_cover(inst)
        result = solve_backtracking(formula, bounds, "all")
        covers = {decode(inst, m, cover=True) for m in result.models}
        brute = set()
        for mask in range(16):
            chosen = frozenset(v for v in range(4) if mask >> v & 1)
            if len(chosen) <= 2 and all(
                u in chosen or v in chosen for u, v in inst.edges
            ):
                brute.add(chosen)
        assert covers == brute

    def test_overfull_cover_rejected(self):
        inst = GraphInstance(3, ((0, 1),), 1)
        assert not validate(inst, frozenset({0, 1}), cover=True)


SOLVED_GRID = (
    (5, 3, 4, 6, 7, 8, 9, 1, 2),
    (6, 7, 2, 1, 9, 5, 3, 4, 8),
    (1, 9, 8, 3, 4, 2, 5, 6, 7),
    (8, 5, 9, 7, 6, 1, 4, 2, 3),
    (4, 2, 6, 8, 5, 3, 7, 9, 1),
    (7, 1, 3, 9, 2, 4, 8, 5, 6),
    (9, 6, 1, 5, 3, 7, 2, 8, 4),
    (2, 8, 7, 4, 1, 9, 6, 3, 5),
    (3, 4, 5, 2, 8, 6, 1, 7, 9),
)


def blank_out(grid, holes):
    grid = [list(row) for row in grid]
    for r, c in holes:
        grid[r][c] = 0
    return tuple(tuple(row) for row in grid)


class TestSudoku:
    def test_validate_solved_grid(self):
        inst = SudokuInstance(blank_out(SOLVED_GRID, [(0, 0)]))
        assert validate(inst, SOLVED_GRID)

    def test_duplicate_in_row_rejected(self):
        bad = [list(row) for row in SOLVED_GRID]
        bad[0][0] = bad[0][1]
        inst = SudokuInstance(blank_out(SOLVED_GRID, [(0, 0)]))
        assert not validate(inst, tuple(tuple(row) for row in bad))

    def test_givens_must_be_preserved(self):
        inst = SudokuInstance(blank_out(SOLVED_GRID, [(0, 0)]))
        changed = [list(row) for row in SOLVED_GRID]
        changed[1][1], changed[1][2] = changed[1][2], changed[1][1]
        assert not validate(inst, tuple(tuple(row) for row in changed))

    def test_conflicting_givens_rejected(self):
        grid = [[0] * 9 for _ in range(9)]
        grid[0][0] = grid[0][8] = 7
        with pytest.raises(ValueError, match="conflict"):
            SudokuInstance(tuple(tuple(row) for row in grid))

    def test_solve_small_blank_set(self):
        holes = [(0, 0), (0, 1), (4, 4), (8, 8)]
        inst = SudokuInstance(blank_out(SOLVED_GRID, holes))
        formula, bounds = encode_sudoku(inst)
        result = solve_backtracking(formula, bounds, "all")
        assert len(result.models) == 1
        assert decode(inst, result.models[0]) == SOLVED_GRID


class TestMinConflictsOnEncodings:
    def test_nqueens_solution_validates(self):
        inst = NQueensInstance(8)
        formula, bounds = encode_nqueens(inst)
        result = solve_min_conflicts(formula, bounds, max_steps=2000, seed=7)
        if result.status == "SAT":
            placement = decode(inst, result.models[0])
            assert validate(inst, placement)
            assert satisfies(formula, result.models[0])
        else:
            assert result.status == "UNKNOWN"


class TestInstanceParsers:
    def test_nqueens(self):
        assert parse_nqueens("8\n") == NQueensInstance(8)
        with pytest.raises(ValueError):
            parse_nqueens("eight")

    def test_graph(self):
        inst = parse_graph("3 3 2\n0 1\n1 2\n0 2\n")
        assert inst.num_vertices == 3 and inst.k == 2
        assert set(inst.edges) == {(0, 1), (1, 2), (0, 2)}

    def test_graph_errors(self):
        with pytest.raises(ValueError, match="header"):
            parse_graph("3 3\n0 1\n")
        with pytest.raises(ValueError, match="edge lines"):
            parse_graph("3 2 2\n0 1\n")
        with pytest.raises(ValueError, match="self-loop"):
            parse_graph("3 1 2\n1 1\n")

    def test_subset_sum(self):
        inst = parse_subset_sum("3 5 7\ntarget 12\n")
        assert inst == SubsetSumInstance((3, 5, 7), 12)
        with pytest.raises(ValueError, match="target"):
            parse_subset_sum("3 5 7\n")

    def test_subset_sum_empty_values(self):
        assert parse_subset_sum("target 0\n") == SubsetSumInstance((), 0)

    def test_sudoku(self):
        text = "\n".join("".join(str(c) for c in row) for row in SOLVED_GRID)
        inst = parse_sudoku(text.replace("5", ".", 1))
        assert inst.grid[0][0] == 0
        with pytest.raises(ValueError, match="9 grid lines"):
            parse_sudoku("123\n")


class TestInstanceInvariants:
    def test_graph_normalizes_edges(self):
        inst = GraphInstance(3, ((1, 0), (0, 1), (2, 1)), 2)
        assert inst.edges == ((0, 1), (1, 2))

    def test_vertex_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            GraphInstance(2, ((0, 5),), 1)

    def test_nonpositive_board(self):
        with pytest.raises(ValueError):
            NQueensInstance(0)
