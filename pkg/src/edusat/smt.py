"""Bounded-integer satisfiability: arithmetic atoms over Boolean structure.

An ``SmtFormula`` is a Boolean tree whose leaves reference entries in a
deduplicated atom table; each ``Atom`` compares two integer terms built from
``+ - * //`` (floor division). Solving is restricted to a finite search box:
an inclusive ``[lo, hi]`` range per variable.

Two solvers are provided. ``solve_backtracking`` abstracts the formula into
a Boolean skeleton, enumerates the skeleton's partial models lazily, and for
each one searches the integer box by recursive backtracking, pruning a branch
the moment a fully-bound atom disagrees with its required truth value. It is
complete within the box. ``solve_min_conflicts`` is a seeded local search:
start from a random point, repeatedly pick a random variable occurring in a
violated constraint and move it to the value with the fewest conflicts. It
may answer UNKNOWN after ``max_steps`` even when a model exists.
"""

from __future__ import annotations

import operator
import random
import re
import time
from dataclasses import dataclass, field
from typing import Iterable, Union

from . import dpll
from .formula import And, Const, Formula, Not, Or, Var

SAT = "SAT"
UNSAT_IN_RANGE = "UNSAT_IN_RANGE"
UNKNOWN = "UNKNOWN"

# variable name -> inclusive (lo, hi) search range
DomainBounds = dict


@dataclass(frozen=True, slots=True)
class IntConst:
    value: int


@dataclass(frozen=True, slots=True)
class IntVar:
    name: str


@dataclass(frozen=True, slots=True)
class Add:
    left: "IntTerm"
    right: "IntTerm"


@dataclass(frozen=True, slots=True)
class Sub:
    left: "IntTerm"
    right: "IntTerm"


@dataclass(frozen=True, slots=True)
class Mul:
    left: "IntTerm"
    right: "IntTerm"


@dataclass(frozen=True, slots=True)
class FloorDiv:
    left: "IntTerm"
    right: "IntTerm"


IntTerm = Union[IntConst, IntVar, Add, Sub, Mul, FloorDiv]

COMPARISONS = {
    ">": operator.gt,
    "<": operator.lt,
    "<=": operator.le,
    ">=": operator.ge,
    "=": operator.eq,
}


@dataclass(frozen=True, slots=True)
class Atom:
    op: str
    lhs: IntTerm
    rhs: IntTerm

    # leaf protocol of the shared Boolean node classes
    mask = 0
    has_const = False
    has_not = False

    def __post_init__(self) -> None:
        if self.op not in COMPARISONS:
            raise ValueError(f"unknown comparison operator {self.op!r}")


@dataclass(frozen=True, slots=True)
class AtomRef:
    """Leaf of an SmtFormula tree: an index into the shared atom table."""

    index: int

    # leaf protocol of the shared Boolean node classes
    mask = 0
    has_const = False
    has_not = False


@dataclass(frozen=True, slots=True)
class SmtFormula:
    tree: object  # Const | AtomRef | Not | And | Or over AtomRef leaves
    atoms: tuple[Atom, ...]

    @classmethod
    def from_tree(cls, raw) -> "SmtFormula":
        """Wrap a Boolean tree whose leaves are Atom values, deduplicating
        structurally identical atoms into one table entry."""
        table: dict[Atom, int] = {}

        def walk(node):
            if isinstance(node, Atom):
                idx = table.setdefault(node, len(table))
                return AtomRef(idx)
            if isinstance(node, (Const, AtomRef)):
                return node
            if isinstance(node, Not):
                return Not(walk(node.child))
            children = tuple(walk(c) for c in node.children)
            return And(children) if isinstance(node, And) else Or(children)

        tree = walk(raw)
        return cls(tree, tuple(table))


def _natural_key(name: str):
    # "q10" sorts after "q2"
    return tuple(
        (1, int(part)) if part.isdigit() else (0, part)
        for part in re.split(r"(\d+)", name)
    )


def term_vars(t: IntTerm) -> set[str]:
    if isinstance(t, IntConst):
        return set()
    if isinstance(t, IntVar):
        return {t.name}
    return term_vars(t.left) | term_vars(t.right)


def atom_vars(atom: Atom) -> set[str]:
    return term_vars(atom.lhs) | term_vars(atom.rhs)


def smt_free_vars(f: SmtFormula) -> list[str]:
    """Variable names appearing in any atom, in natural sort order."""
    names: set[str] = set()
    for atom in f.atoms:
        names |= atom_vars(atom)
    return sorted(names, key=_natural_key)


def eval_term(t: IntTerm, assignment: dict) -> int:
    """Exact integer evaluation; ``//`` rounds toward minus infinity."""
    if isinstance(t, IntConst):
        return t.value
    if isinstance(t, IntVar):
        try:
            return assignment[t.name]
        except KeyError:
            raise ValueError(f"integer variable {t.name!r} is unbound") from None
    if isinstance(t, Add):
        return eval_term(t.left, assignment) + eval_term(t.right, assignment)
    if isinstance(t, Sub):
        return eval_term(t.left, assignment) - eval_term(t.right, assignment)
    if isinstance(t, Mul):
        return eval_term(t.left, assignment) * eval_term(t.right, assignment)
    if isinstance(t, FloorDiv):
        return eval_term(t.left, assignment) // eval_term(t.right, assignment)
    raise TypeError(f"not an integer term: {t!r}")


def eval_atom(atom: Atom, assignment: dict) -> bool:
    return COMPARISONS[atom.op](
        eval_term(atom.lhs, assignment), eval_term(atom.rhs, assignment)
    )


def evaluate_smt(f: SmtFormula, assignment: dict) -> bool:
    """Truth of the formula at an integer point. Division by zero propagates."""

    def walk(node) -> bool:
        if isinstance(node, Const):
            return node.value
        if isinstance(node, AtomRef):
            return eval_atom(f.atoms[node.index], assignment)
        if isinstance(node, Not):
            return not walk(node.child)
        if isinstance(node, And):
            return all(walk(c) for c in node.children)
        return any(walk(c) for c in node.children)

    return walk(f.tree)


def satisfies(f: SmtFormula, assignment: dict) -> bool:
    """Like evaluate_smt, but a division by zero simply fails to satisfy."""
    try:
        return evaluate_smt(f, assignment)
    except ZeroDivisionError:
        return False


def abstract(f: SmtFormula) -> tuple[Formula, dict]:
    """Boolean skeleton of the formula plus the variable-to-atom mapping.

    Each distinct atom becomes a fresh Boolean variable ``b<i>``; the mapping
    is a bijection onto the atom table.
    """

    def walk(node) -> Formula:
        if isinstance(node, Const):
            return node
        if isinstance(node, AtomRef):
            return Var(node.index, f"b{node.index}")
        if isinstance(node, Not):
            return Not(walk(node.child))
        children = tuple(walk(c) for c in node.children)
        return And(children) if isinstance(node, And) else Or(children)

    mapping = {Var(i, f"b{i}"): atom for i, atom in enumerate(f.atoms)}
    return walk(f.tree), mapping


def _literal_constraints(f: SmtFormula) -> list[tuple[int, bool]]:
    """Deduplicated (atom index, required polarity) leaves of the negation
    normal form, in first-occurrence order."""
    out: list[tuple[int, bool]] = []
    seen: set[tuple[int, bool]] = set()

    def walk(node, negate: bool) -> None:
        if isinstance(node, Const):
            return
        if isinstance(node, AtomRef):
            key = (node.index, not negate)
            if key not in seen:
                seen.add(key)
                out.append(key)
            return
        if isinstance(node, Not):
            walk(node.child, not negate)
            return
        for c in node.children:
            walk(c, negate)

    walk(f.tree, False)
    return out


def conflicts(f: SmtFormula, assignment: dict) -> tuple[int, set[str]]:
    """Count violated atom constraints at a total integer point.

    A constraint is an atom together with the polarity it must take; it is
    violated when the atom evaluates to the wrong truth value or when its
    evaluation divides by zero. Returns the violation count and the set of
    variables occurring in at least one violated constraint.
    """
    count = 0
    conflicted: set[str] = set()
    for idx, want in _literal_constraints(f):
        atom = f.atoms[idx]
        try:
            ok = eval_atom(atom, assignment) == want
        except ZeroDivisionError:
            ok = False
        if not ok:
            count += 1
            conflicted |= atom_vars(atom)
    return count, conflicted


@dataclass
class SmtStats:
    iterations: int = 0
    conflicts_examined: int = 0
    wall_time: float = 0.0


@dataclass
class SmtResult:
    status: str  # SAT | UNSAT_IN_RANGE | UNKNOWN
    models: list[dict]
    stats: SmtStats = field(default_factory=SmtStats)


def _check_bounds(f: SmtFormula, bounds: dict) -> list[str]:
    for name, (lo, hi) in bounds.items():
        if lo > hi:
            raise ValueError(f"empty range for {name!r}: [{lo}, {hi}]")
    missing = [name for name in smt_free_vars(f) if name not in bounds]
    if missing:
        raise ValueError(f"missing bounds for: {', '.join(missing)}")
    return sorted(bounds, key=_natural_key)


def solve_backtracking(f: SmtFormula, bounds: dict, mode: str = "single") -> SmtResult:
    """Complete search over the integer box.

    Pipeline: abstract the formula, enumerate partial Boolean models of the
    skeleton one at a time, and for each model backtrack over the integer
    variables, checking every atom as soon as all of its variables are bound.
    An atom must match the truth value its Boolean literal was assigned;
    division by zero rejects the candidate branch outright.
    """
    if mode not in ("single", "all"):
        raise ValueError(f"unknown mode {mode!r}")
    start = time.perf_counter()
    names = _check_bounds(f, bounds)
    position = {name: i for i, name in enumerate(names)}
    skeleton, atom_of = abstract(f)
    stats = SmtStats()
    found: dict[tuple, dict] = {}

    for bool_model in dpll.iter_partial_models(skeleton):
        # constraints indexed by the assignment depth at which they are ready
        ready: list[list[tuple[Atom, bool]]] = [[] for _ in names]
        feasible = True
        for bvar, want in bool_model.items():
            atom = atom_of[bvar]
            avars = atom_vars(atom)
            if not avars:
                stats.conflicts_examined += 1
                try:
                    ok = eval_atom(atom, {}) == want
                except ZeroDivisionError:
                    ok = False
                if not ok:
                    feasible = False
                    break
                continue
            ready[max(position[v] for v in avars)].append((atom, want))
        if not feasible:
            continue

        point: dict[str, int] = {}

        def search(depth: int) -> bool:
            if depth == len(names):
                key = tuple(point[n] for n in names)
                if key not in found:
                    found[key] = dict(point)
                return True
            name = names[depth]
            lo, hi = bounds[name]
            hit = False
            for value in range(lo, hi + 1):
                stats.iterations += 1
                point[name] = value
                ok = True
                for atom, want in ready[depth]:
                    stats.conflicts_examined += 1
                    try:
                        matches = eval_atom(atom, point) == want
                    except ZeroDivisionError:
                        matches = False
                    if not matches:
                        ok = False
                        break
                if ok and search(depth + 1):
                    hit = True
                    if mode == "single":
                        break
            point.pop(name, None)
            return hit

        if search(0) and mode == "single":
            break

    stats.wall_time = time.perf_counter() - start
    models = [found[key] for key in sorted(found)]
    if mode == "single":
        models = models[:1]
    status = SAT if models else UNSAT_IN_RANGE
    return SmtResult(status, models, stats)


def solve_min_conflicts(
    f: SmtFormula, bounds: dict, max_steps: int, seed: int = 0
) -> SmtResult:
    """Seeded min-conflicts repair loop; incomplete but often fast.

    Initialization is uniform inside the box. Each step picks a uniformly
    random variable from the violated constraints and moves it to the
    in-range value minimizing the conflict count (ties favor the smallest
    value). Returns UNKNOWN once ``max_steps`` repairs are exhausted.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    start = time.perf_counter()
    names = _check_bounds(f, bounds)
    rng = random.Random(seed)
    stats = SmtStats()

    constraints = _literal_constraints(f)
    by_var: dict[str, list[tuple[Atom, bool]]] = {name: [] for name in names}
    for idx, want in constraints:
        atom = f.atoms[idx]
        for v in atom_vars(atom):
            by_var[v].append((atom, want))

    point = {name: rng.randint(*bounds[name]) for name in names}

    def violated_vars() -> list[str]:
        bad: set[str] = set()
        for idx, want in constraints:
            atom = f.atoms[idx]
            try:
                ok = eval_atom(atom, point) == want
            except ZeroDivisionError:
                ok = False
            if not ok:
                bad |= atom_vars(atom)
        return sorted(bad & set(names), key=_natural_key)

    def local_conflicts(name: str) -> int:
        count = 0
        for atom, want in by_var[name]:
            stats.conflicts_examined += 1
            try:
                ok = eval_atom(atom, point) == want
            except ZeroDivisionError:
                ok = False
            if not ok:
                count += 1
        return count

    def finish(status: str, models: list[dict]) -> SmtResult:
        stats.wall_time = time.perf_counter() - start
        return SmtResult(status, models, stats)

    for _ in range(max_steps):
        if satisfies(f, point):
            return finish(SAT, [dict(point)])
        candidates = violated_vars()
        stats.iterations += 1
        if not candidates:
            # nothing repairable (e.g. only constant atoms are violated);
            # the step still counts so the termination contract holds
            continue
        name = rng.choice(candidates)
        lo, hi = bounds[name]
        best_value, best_count = point[name], None
        for value in range(lo, hi + 1):
            point[name] = value
            count = local_conflicts(name)
            if best_count is None or count < best_count:
                best_value, best_count = value, count
        point[name] = best_value

    if satisfies(f, point):
        return finish(SAT, [dict(point)])
    return finish(UNKNOWN, [])
