"""Encoders mapping five classic NP-complete problems onto bounded-integer
formulas, with decoders and native validity checkers.

Problems: n-queens, graph k-coloring, subset sum, vertex cover, and Sudoku.
Every encoding stays inside the comparison fragment (no division), sums are
left-leaning chains of binary additions, and decoded solutions can always be
re-checked by the problem's own rules without touching the solver.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import And, Const, Not, Or, conjoin
from .smt import Add, Atom, IntConst, IntVar, Mul, SmtFormula, Sub


@dataclass(frozen=True)
class NQueensInstance:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("board size must be at least 1")


@dataclass(frozen=True)
class GraphInstance:
    """Undirected graph with a budget ``k``: colors for coloring, cover size
    for vertex cover. Edges are normalized (u < v) and deduplicated."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    k: int

    def __post_init__(self) -> None:
        if self.num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        if self.k < 0:
            raise ValueError("budget must be nonnegative")
        normalized = []
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            edge = (min(u, v), max(u, v))
            if edge not in seen:
                seen.add(edge)
                normalized.append(edge)
        object.__setattr__(self, "edges", tuple(normalized))


@dataclass(frozen=True)
class SubsetSumInstance:
    values: tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))


@dataclass(frozen=True)
class SudokuInstance:
    """9x9 grid, 0 for blank; the given entries must not already conflict."""

    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        grid = tuple(tuple(row) for row in self.grid)
        if len(grid) != 9 or any(len(row) != 9 for row in grid):
            raise ValueError("grid must be 9x9")
        if any(not 0 <= cell <= 9 for row in grid for cell in row):
            raise ValueError("grid entries must be 0..9")
        object.__setattr__(self, "grid", grid)
        for cells in _sudoku_units():
            givens = [grid[r][c] for r, c in cells if grid[r][c] != 0]
            if len(givens) != len(set(givens)):
                raise ValueError("given entries already conflict")


def _not_equal(lhs, rhs) -> Not:
    return Not(Atom("=", lhs, rhs))


def _sum_chain(terms):
    """Left-leaning chain of binary additions; empty sums are the constant 0."""
    if not terms:
        return IntConst(0)
    acc = terms[0]
    for t in terms[1:]:
        acc = Add(acc, t)
    return acc


def encode_nqueens(inst: NQueensInstance) -> tuple[SmtFormula, dict]:
    """One variable per column holding the queen's row index.

    For every column pair: rows differ, and row distance never equals
    column distance in either direction (the two diagonals).
    """
    n = inst.n
    queens = [IntVar(f"q{i}") for i in range(n)]
    constraints = []
    for i in range(n):
        for j in range(i + 1, n):
            diff = Sub(queens[i], queens[j])
            constraints.append(_not_equal(queens[i], queens[j]))
            constraints.append(_not_equal(diff, IntConst(i - j)))
            constraints.append(_not_equal(diff, IntConst(j - i)))
    bounds = {f"q{i}": (0, n - 1) for i in range(n)}
    return SmtFormula.from_tree(conjoin(constraints)), bounds


def encode_coloring(inst: GraphInstance) -> tuple[SmtFormula, dict]:
    """One variable per vertex in [0, k-1]; endpoints of an edge differ."""
    if inst.k < 1:
        raise ValueError("coloring needs at least one color")
    constraints = [
        _not_equal(IntVar(f"c{u}"), IntVar(f"c{v}")) for u, v in inst.edges
    ]
    bounds = {f"c{v}": (0, inst.k - 1) for v in range(inst.num_vertices)}
    return SmtFormula.from_tree(conjoin(constraints)), bounds


def encode_subset_sum(inst: SubsetSumInstance) -> tuple[SmtFormula, dict]:
    """0/1 selector per value; the selected values sum to the target."""
    selectors = [IntVar(f"s{i}") for i in range(len(inst.values))]
    total = _sum_chain(
        [Mul(s, IntConst(v)) for s, v in zip(selectors, inst.values)]
    )
    formula = SmtFormula.from_tree(Atom("=", total, IntConst(inst.target)))
    bounds = {f"s{i}": (0, 1) for i in range(len(inst.values))}
    return formula, bounds


def encode_vertex_cover(inst: GraphInstance) -> tuple[SmtFormula, dict]:
    """0/1 selector per vertex; every edge has a chosen endpoint and at most
    k vertices are chosen."""
    constraints = []
    for u, v in inst.edges:
        constraints.append(
            Or(
                (
                    Atom("=", IntVar(f"s{u}"), IntConst(1)),
                    Atom("=", IntVar(f"s{v}"), IntConst(1)),
                )
            )
        )
    total = _sum_chain([IntVar(f"s{v}") for v in range(inst.num_vertices)])
    constraints.append(Atom("<=", total, IntConst(inst.k)))
    bounds = {f"s{v}": (0, 1) for v in range(inst.num_vertices)}
    return SmtFormula.from_tree(conjoin(constraints)), bounds


def _sudoku_units():
    units = []
    for r in range(9):
        units.append([(r, c) for c in range(9)])
    for c in range(9):
        units.append([(r, c) for r in range(9)])
    for br in range(0, 9, 3):
        for bc in range(0, 9, 3):
            units.append([(br + r, bc + c) for r in range(3) for c in range(3)])
    return units


def encode_sudoku(inst: SudokuInstance) -> tuple[SmtFormula, dict]:
    """One variable in [1, 9] per blank cell; cells sharing a row, column,
    or box must differ. Given cells enter the constraints as constants."""
    grid = inst.grid
    constraints = []
    seen = set()
    for cells in _sudoku_units():
        for a in range(len(cells)):
            for b in range(a + 1, len(cells)):
                (r1, c1), (r2, c2) = cells[a], cells[b]
                pair = ((r1, c1), (r2, c2))
                if pair in seen:
                    continue
                seen.add(pair)
                g1, g2 = grid[r1][c1], grid[r2][c2]
                if g1 and g2:
                    continue  # instance invariant already checked
                if g1:
                    constraints.append(
                        _not_equal(IntVar(f"c{r2}_{c2}"), IntConst(g1))
                    )
                elif g2:
                    constraints.append(
                        _not_equal(IntVar(f"c{r1}_{c1}"), IntConst(g2))
                    )
                else:
                    constraints.append(
                        _not_equal(IntVar(f"c{r1}_{c1}"), IntVar(f"c{r2}_{c2}"))
                    )
    bounds = {
        f"c{r}_{c}": (1, 9)
        for r in range(9)
        for c in range(9)
        if grid[r][c] == 0
    }
    return SmtFormula.from_tree(conjoin(constraints)), bounds


Instance = NQueensInstance | GraphInstance | SubsetSumInstance | SudokuInstance


def decode(problem: Instance, model: dict, *, cover: bool = False):
    """Invert the encoding: turn an integer model into the problem's own
    solution shape. ``cover`` selects vertex-cover decoding for graphs."""
    if isinstance(problem, NQueensInstance):
        return tuple(model[f"q{i}"] for i in range(problem.n))
    if isinstance(problem, GraphInstance):
        if cover:
            return frozenset(
                v for v in range(problem.num_vertices) if model[f"s{v}"] == 1
            )
        return tuple(model[f"c{v}"] for v in range(problem.num_vertices))
    if isinstance(problem, SubsetSumInstance):
        return tuple(
            i for i in range(len(problem.values)) if model[f"s{i}"] == 1
        )
    if isinstance(problem, SudokuInstance):
        return tuple(
            tuple(
                problem.grid[r][c] if problem.grid[r][c] else model[f"c{r}_{c}"]
                for c in range(9)
            )
            for r in range(9)
        )
    raise TypeError(f"unknown problem instance: {problem!r}")


def validate(problem: Instance, solution, *, cover: bool = False) -> bool:
    """Re-check a decoded solution against the problem's native rules,
    independent of any solver machinery."""
    if isinstance(problem, NQueensInstance):
        rows = solution
        n = problem.n
        if len(rows) != n or any(not 0 <= r < n for r in rows):
            return False
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i] == rows[j] or abs(rows[i] - rows[j]) == j - i:
                    return False
        return True
    if isinstance(problem, GraphInstance):
        if cover:
            chosen = solution
            if len(chosen) > problem.k:
                return False
            if any(not 0 <= v < problem.num_vertices for v in chosen):
                return False
            return all(u in chosen or v in chosen for u, v in problem.edges)
        colors = solution
        if len(colors) != problem.num_vertices:
            return False
        if any(not 0 <= c < problem.k for c in colors):
            return False
        return all(colors[u] != colors[v] for u, v in problem.edges)
    if isinstance(problem, SubsetSumInstance):
        indices = list(solution)
        if len(set(indices)) != len(indices):
            return False
        if any(not 0 <= i < len(problem.values) for i in indices):
            return False
        return sum(problem.values[i] for i in indices) == problem.target
    if isinstance(problem, SudokuInstance):
        grid = solution
        if len(grid) != 9 or any(len(row) != 9 for row in grid):
            return False
        if any(not 1 <= cell <= 9 for row in grid for cell in row):
            return False
        for r in range(9):
            for c in range(9):
                given = problem.grid[r][c]
                if given and grid[r][c] != given:
                    return False
        return all(
            len({grid[r][c] for r, c in cells}) == 9 for cells in _sudoku_units()
        )
    raise TypeError(f"unknown problem instance: {problem!r}")


def parse_nqueens(text: str) -> NQueensInstance:
    try:
        n = int(text.strip())
    except ValueError:
        raise ValueError("n-queens instance must be a single integer") from None
    return NQueensInstance(n)


def parse_graph(text: str) -> GraphInstance:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty graph instance")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError("graph header must be 'V E k'")
    try:
        num_vertices, num_edges, k = (int(x) for x in head)
    except ValueError:
        raise ValueError("graph header must be 'V E k'") from None
    if len(lines) - 1 != num_edges:
        raise ValueError(f"expected {num_edges} edge lines, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return GraphInstance(num_vertices, tuple(edges), k)


def parse_subset_sum(text: str) -> SubsetSumInstance:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or not lines[-1].startswith("target"):
        raise ValueError("subset-sum instance needs a final 'target <t>' line")
    parts = lines[-1].split()
    if len(parts) != 2:
        raise ValueError("target line must be 'target <t>'")
    try:
        target = int(parts[1])
        values = tuple(int(tok) for line in lines[:-1] for tok in line.split())
    except ValueError:
        raise ValueError("subset-sum values must be integers") from None
    return SubsetSumInstance(values, target)


def parse_sudoku(text: str) -> SudokuInstance:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if len(lines) != 9:
        raise ValueError("Sudoku instance must have 9 grid lines")
    grid = []
    for line in lines:
        if len(line) != 9:
            raise ValueError(f"Sudoku row must have 9 characters: {line!r}")
        row = []
        for ch in line:
            if ch in ".0":
                row.append(0)
            elif ch.isdigit():
                row.append(int(ch))
            else:
                raise ValueError(f"bad Sudoku cell {ch!r}")
        grid.append(tuple(row))
    return SudokuInstance(tuple(grid))
