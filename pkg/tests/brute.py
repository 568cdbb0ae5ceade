"""Brute-force oracles the solver tests check against.

Everything here enumerates exhaustively and leans only on ``evaluate`` /
``eval_atom``, staying independent of the search code under test.
"""

from __future__ import annotations

import itertools

from edusat import evaluate, free_vars
from edusat.robdd import TERM_FALSE, TERM_TRUE, Robdd
from edusat.smt import SmtFormula, satisfies, smt_free_vars


def model_set(models) -> set:
    return {frozenset(m.items()) for m in models}


def enumerate_models(f, variables=None) -> list[dict]:
    """Every satisfying total assignment, by direct product enumeration."""
    variables = free_vars(f) if variables is None else list(variables)
    models = []
    for values in itertools.product((False, True), repeat=len(variables)):
        assignment = dict(zip(variables, values))
        if evaluate(f, assignment):
            models.append(assignment)
    return models


def box_scan(f: SmtFormula, bounds: dict) -> list[dict]:
    """Every satisfying integer point of the box, scanned directly."""
    names = sorted(bounds)
    ranges = [range(bounds[n][0], bounds[n][1] + 1) for n in names]
    assert set(smt_free_vars(f)) <= set(names)
    points = []
    for values in itertools.product(*ranges):
        point = dict(zip(names, values))
        if satisfies(f, point):
            points.append(point)
    return points


def queens_solutions(n: int) -> list[tuple[int, ...]]:
    """All n-queens placements via row permutations plus a diagonal check."""
    out = []
    for rows in itertools.permutations(range(n)):
        if all(
            abs(rows[i] - rows[j]) != j - i
            for i in range(n)
            for j in range(i + 1, n)
        ):
            out.append(rows)
    return out


def robdd_true_paths(d: Robdd) -> list[dict]:
    """All root-to-true paths of a diagram, without don't-care expansion."""
    paths = []

    def walk(nid: int, taken: dict) -> None:
        if nid == TERM_FALSE:
            return
        if nid == TERM_TRUE:
            paths.append(dict(taken))
            return
        level, low, high = d.node(nid)
        var = d.order[level]
        walk(low, {**taken, var: False})
        walk(high, {**taken, var: True})

    walk(d.root, {})
    return paths


def formula_depth(f) -> int:
    from edusat import And, Const, Not, Or, Var

    if isinstance(f, (Var, Const)):
        return 0
    if isinstance(f, Not):
        return 1 + formula_depth(f.child)
    return 1 + max(formula_depth(c) for c in f.children)
