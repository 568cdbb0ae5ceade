"""Two complete SAT engines over formula trees.

``solve_naive`` is the baseline: recursive backtracking that assigns
variables in ascending id order (false branch first) and evaluates the
original formula only at total assignments.

``solve_dpll`` works on the negation normal form and conditions the tree at
every assignment, so constant folding doubles as early termination. At each
search node it applies, in order: early termination, unit-clause
propagation, pure-literal assignment, then branching on the lowest
unassigned variable. Pure literals preserve satisfiability but not the
model set, so they are only applied to single-solution queries; in
all-solutions mode both engines return the same total model set.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .formula import (
    And,
    Const,
    Formula,
    Literal,
    Not,
    Or,
    Var,
    condition,
    evaluate,
    free_vars,
    to_nnf,
)

SINGLE = "single"
ALL = "all"

SAT = "SAT"
UNSAT = "UNSAT"


@dataclass
class SolverStats:
    decisions: int = 0
    unit_propagations: int = 0
    pure_literal_assignments: int = 0
    early_terminations: int = 0
    wall_time: float = 0.0


@dataclass
class SatResult:
    status: str  # SAT | UNSAT
    models: list[dict] = field(default_factory=list)


def _check_mode(mode: str) -> None:
    if mode not in (SINGLE, ALL):
        raise ValueError(f"unknown mode {mode!r}")


def _model_key(variables: list[Var]):
    def key(model: dict):
        return tuple(model[v] for v in variables)

    return key


def _as_literal(f: Formula) -> Literal | None:
    if isinstance(f, Var):
        return Literal(f, True)
    if isinstance(f, Not) and isinstance(f.child, Var):
        return Literal(f.child, False)
    return None


def find_unit_literal(f: Formula) -> Literal | None:
    """First literal standing alone as a conjunct of the top-level And.

    A formula that is itself a bare literal counts as its own unit clause.
    """
    lit = _as_literal(f)
    if lit is not None:
        return lit
    if isinstance(f, And):
        for child in f.children:
            lit = _as_literal(child)
            if lit is not None:
                return lit
    return None


def find_pure_literal(f: Formula) -> Literal | None:
    """A variable occurring with only one polarity, lowest id first.

    Positive-pure variables should be assigned true, negative-pure false.
    Polarities accumulate as id bitmasks, and a subtree is skipped once all
    of its variables are already known to be impure.
    """
    pos = neg = 0
    var_of: dict[int, Var] = {}

    def walk(g: Formula, negated: bool) -> None:
        nonlocal pos, neg
        t = type(g)
        if t is Var:
            if negated:
                neg |= g.mask
            else:
                pos |= g.mask
            var_of.setdefault(g.id, g)
        elif t is Not:
            walk(g.child, not negated)
        elif t is And or t is Or:
            for c in g.children:
                if c.mask & ~(pos & neg):
                    walk(c, negated)

    walk(f, False)
    pure = pos ^ neg
    if not pure:
        return None
    vid = (pure & -pure).bit_length() - 1
    return Literal(var_of[vid], bool((pos >> vid) & 1))


def solve_naive(f: Formula, mode: str = SINGLE) -> tuple[SatResult, SolverStats]:
    """Recursive backtracking without deduction; exact and complete."""
    _check_mode(mode)
    stats = SolverStats()
    start = time.perf_counter()
    variables = free_vars(f)
    models: list[dict] = []
    assignment: dict = {}

    def search(depth: int) -> bool:
        if depth == len(variables):
            if evaluate(f, assignment):
                models.append(dict(assignment))
                return True
            return False
        var = variables[depth]
        hit = False
        for value in (False, True):
            stats.decisions += 1
            assignment[var] = value
            if search(depth + 1):
                hit = True
                if mode == SINGLE:
                    break
        del assignment[var]
        return hit

    search(0)
    models.sort(key=_model_key(variables))
    stats.wall_time = time.perf_counter() - start
    return SatResult(SAT if models else UNSAT, models), stats


def solve_dpll(f: Formula, mode: str = SINGLE) -> tuple[SatResult, SolverStats]:
    """Backtracking with early termination, unit clauses, and pure literals."""
    _check_mode(mode)
    stats = SolverStats()
    start = time.perf_counter()
    variables = free_vars(f)
    var_by_id = {v.id: v for v in variables}
    use_pure = mode == SINGLE
    single = mode == SINGLE
    models: list[dict] = []
    assigned: dict = {}

    def emit() -> None:
        rest = [v for v in variables if v not in assigned]
        if single:
            model = dict(assigned)
            model.update((v, False) for v in rest)
            models.append(model)
        else:
            for values in itertools.product((False, True), repeat=len(rest)):
                model = dict(assigned)
                model.update(zip(rest, values))
                models.append(model)

    def descend(g: Formula, var: Var, value: bool) -> bool:
        assigned[var] = value
        hit = search(condition(g, var, value))
        del assigned[var]
        return hit

    def search(g: Formula) -> bool:
        if isinstance(g, Const):
            stats.early_terminations += 1
            if g.value:
                emit()
                return True
            return False
        lit = find_unit_literal(g)
        if lit is not None:
            stats.unit_propagations += 1
            return descend(g, lit.var, lit.positive)
        if use_pure:
            lit = find_pure_literal(g)
            if lit is not None:
                stats.pure_literal_assignments += 1
                return descend(g, lit.var, lit.positive)
        var = var_by_id[(g.mask & -g.mask).bit_length() - 1]
        hit = False
        for value in (False, True):
            stats.decisions += 1
            if descend(g, var, value):
                hit = True
                if single:
                    break
        return hit

    search(to_nnf(f))
    models.sort(key=_model_key(variables))
    stats.wall_time = time.perf_counter() - start
    return SatResult(SAT if models else UNSAT, models), stats


def iter_partial_models(f: Formula):
    """Yield disjoint partial assignments whose total extensions are exactly
    the models of ``f``, in deterministic order. Unassigned variables are
    don't-cares."""
    var_by_id = {v.id: v for v in free_vars(f)}

    def go(g: Formula, acc: dict):
        if isinstance(g, Const):
            if g.value:
                yield dict(acc)
            return
        lit = find_unit_literal(g)
        if lit is not None:
            yield from go(
                condition(g, lit.var, lit.positive),
                {**acc, lit.var: lit.positive},
            )
            return
        var = var_by_id[(g.mask & -g.mask).bit_length() - 1]
        for value in (False, True):
            yield from go(condition(g, var, value), {**acc, var: value})

    yield from go(to_nnf(f), {})
