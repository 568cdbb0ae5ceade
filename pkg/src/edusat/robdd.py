"""Reduced ordered binary decision diagrams.

Two construction routes are provided and pinned to each other by tests: the
didactic one (build the complete binary decision tree, then reduce it
bottom-up with the elimination and isomorphism rules) and the practical one
(Shannon expansion with a hash-consed unique table, which never materializes
the full tree).

Node ids 0 and 1 are the reserved terminals; decision nodes start at 2 and
store ``(level, low, high)`` where ``level`` indexes the variable order, the
low edge means "assign false" and the high edge "assign true". After
reduction no node has ``low == high`` and no two nodes share a triple, which
makes the diagram canonical for its order: two formulas with the same
semantics produce the same DAG.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .formula import Const, Formula, Var, condition, evaluate, free_vars

TERM_FALSE = 0
TERM_TRUE = 1

MAX_BDT_VARS = 20
MAX_ROBDD_VARS = 30


@dataclass(frozen=True, slots=True)
class Bdt:
    """Complete (unreduced) binary decision tree over an ordered variable
    list, stored as its leaf row: the leaf for a root-to-bottom path holds
    the formula's value under that path's assignment, first variable as the
    most significant path bit."""

    order: tuple[Var, ...]
    leaves: tuple[bool, ...]

    @property
    def node_count(self) -> int:
        return 2 ** (len(self.order) + 1) - 1

    def leaf(self, path: tuple[bool, ...]) -> bool:
        if len(path) != len(self.order):
            raise ValueError("path length must match the variable order")
        index = 0
        for bit in path:
            index = (index << 1) | bit
        return self.leaves[index]


@dataclass(frozen=True)
class Robdd:
    order: tuple[Var, ...]
    nodes: tuple[tuple[int, int, int], ...]  # id 2 + i -> (level, low, high)
    root: int

    def node(self, nid: int) -> tuple[int, int, int]:
        return self.nodes[nid - 2]

    def var_at(self, level: int) -> Var:
        return self.order[level]


class _Builder:
    def __init__(self) -> None:
        self.nodes: list[tuple[int, int, int]] = []
        self.unique: dict[tuple[int, int, int], int] = {}

    def make(self, level: int, low: int, high: int) -> int:
        if low == high:  # elimination rule
            return low
        key = (level, low, high)
        nid = self.unique.get(key)
        if nid is None:  # isomorphism rule via the unique table
            nid = len(self.nodes) + 2
            self.nodes.append(key)
            self.unique[key] = nid
        return nid

    def finish(self, order, root: int) -> Robdd:
        return Robdd(tuple(order), tuple(self.nodes), root)


def _check_order(f: Formula, order, limit: int) -> list[Var]:
    """Orders may list extra variables the formula never mentions, but every
    formula variable must appear."""
    order = list(order)
    if len(set(order)) != len(order):
        raise ValueError("variable order contains duplicates")
    if len(order) > limit:
        raise ValueError(f"order has {len(order)} variables; limit is {limit}")
    missing = set(free_vars(f)) - set(order)
    if missing:
        names = ", ".join(v.name for v in sorted(missing))
        raise ValueError(f"order is missing formula variables: {names}")
    return order


def build_bdt(f: Formula, order) -> Bdt:
    """Evaluate the formula at every path of the complete decision tree."""
    order = _check_order(f, order, MAX_BDT_VARS)
    n = len(order)
    leaves = []
    assignment: dict = {}
    for index in range(1 << n):
        for j, var in enumerate(order):
            assignment[var] = bool((index >> (n - 1 - j)) & 1)
        leaves.append(evaluate(f, assignment))
    return Bdt(tuple(order), tuple(leaves))


def reduce_bdt(t: Bdt) -> Robdd:
    """Bottom-up reduction: merge terminals, share isomorphic subtrees, and
    drop nodes whose low and high children coincide."""
    builder = _Builder()
    ids = [TERM_TRUE if value else TERM_FALSE for value in t.leaves]
    for level in range(len(t.order) - 1, -1, -1):
        ids = [
            builder.make(level, ids[k], ids[k + 1]) for k in range(0, len(ids), 2)
        ]
    return builder.finish(t.order, ids[0])


def build_robdd(f: Formula, order) -> Robdd:
    """Shannon expansion with a unique table; allows extra order variables
    that the formula never mentions (they simply produce no nodes)."""
    order = _check_order(f, order, MAX_ROBDD_VARS)
    level_of = {var: i for i, var in enumerate(order)}
    builder = _Builder()
    memo: dict[Formula, int] = {}

    def build(g: Formula) -> int:
        if isinstance(g, Const):
            return TERM_TRUE if g.value else TERM_FALSE
        nid = memo.get(g)
        if nid is None:
            var = min(free_vars(g), key=level_of.__getitem__)
            low = build(condition(g, var, False))
            high = build(condition(g, var, True))
            nid = builder.make(level_of[var], low, high)
            memo[g] = nid
        return nid

    return builder.finish(order, build(f))


def _reachable(d: Robdd) -> list[int]:
    seen: set[int] = set()
    stack = [d.root]
    while stack:
        nid = stack.pop()
        if nid in seen or nid in (TERM_FALSE, TERM_TRUE):
            continue
        seen.add(nid)
        _, low, high = d.node(nid)
        stack.append(low)
        stack.append(high)
    return sorted(seen)


def node_count(d: Robdd) -> int:
    """Reachable decision nodes, excluding the terminals."""
    return len(_reachable(d))


def all_solutions(d: Robdd) -> list[dict]:
    """All total assignments over the order that reach the true terminal.

    Variables skipped along a path (eliminated nodes) are expanded over both
    values, so the result matches exhaustive enumeration exactly.
    """
    paths: list[dict[int, bool]] = []

    def walk(nid: int, taken: dict[int, bool]) -> None:
        if nid == TERM_FALSE:
            return
        if nid == TERM_TRUE:
            paths.append(dict(taken))
            return
        level, low, high = d.node(nid)
        taken[level] = False
        walk(low, taken)
        taken[level] = True
        walk(high, taken)
        del taken[level]

    walk(d.root, {})
    n = len(d.order)
    models: list[dict] = []
    for taken in paths:
        rest = [level for level in range(n) if level not in taken]
        for values in itertools.product((False, True), repeat=len(rest)):
            model = {d.order[level]: value for level, value in taken.items()}
            model.update((d.order[level], value) for level, value in zip(rest, values))
            models.append(model)
    variables = list(d.order)
    models.sort(key=lambda m: tuple(m[v] for v in variables))
    return models


def single_solution(d: Robdd) -> dict | None:
    """A minimum-length path to the true terminal as a partial assignment.

    Fewest assigned variables wins; ties prefer the low edge. Returns None
    when the diagram is the false terminal, and an empty assignment when it
    is the true terminal.
    """
    distance: dict[int, float] = {TERM_TRUE: 0, TERM_FALSE: float("inf")}

    def dist(nid: int) -> float:
        cached = distance.get(nid)
        if cached is None:
            _, low, high = d.node(nid)
            cached = 1 + min(dist(low), dist(high))
            distance[nid] = cached
        return cached

    if dist(d.root) == float("inf"):
        return None
    model: dict = {}
    nid = d.root
    while nid != TERM_TRUE:
        level, low, high = d.node(nid)
        if dist(low) <= dist(high):
            model[d.order[level]] = False
            nid = low
        else:
            model[d.order[level]] = True
            nid = high
    return model


def to_dot(d: Robdd) -> str:
    """Graphviz text: decision nodes as circles labeled with variable names,
    terminals as boxes labeled 0/1, low edges dashed, high edges solid.
    Nodes appear in store order, so output is deterministic."""
    reachable = _reachable(d)
    terminals = {d.root} & {TERM_FALSE, TERM_TRUE}
    for nid in reachable:
        _, low, high = d.node(nid)
        terminals |= {low, high} & {TERM_FALSE, TERM_TRUE}
    lines = ["digraph robdd {"]
    for t in sorted(terminals):
        lines.append(f'  n{t} [shape=box, label="{t}"];')
    for nid in reachable:
        level, _, _ = d.node(nid)
        lines.append(f'  n{nid} [shape=circle, label="{d.var_at(level).name}"];')
    for nid in reachable:
        _, low, high = d.node(nid)
        lines.append(f"  n{nid} -> n{low} [style=dashed];")
        lines.append(f"  n{nid} -> n{high} [style=solid];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dag_signature(d: Robdd):
    """Canonical nested-tuple form of the reachable DAG, independent of node
    ids; equal signatures mean identical diagrams."""
    memo: dict[int, object] = {TERM_FALSE: "0", TERM_TRUE: "1"}

    def sig(nid: int):
        cached = memo.get(nid)
        if cached is None:
            level, low, high = d.node(nid)
            cached = (d.var_at(level).name, sig(low), sig(high))
            memo[nid] = cached
        return cached

    return sig(d.root)
