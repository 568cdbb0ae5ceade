"""Boolean formula trees and the operations every solver builds on.

A formula is an immutable tree of ``Const``, ``Var``, ``Not``, ``And``, ``Or``
nodes; ``And``/``Or`` are n-ary with at least two children. Equality and
hashing are structural, so formulas can be memoized, deduplicated, and
compared directly in tests. Nodes are plain slotted classes rather than
dataclasses: the solvers rebuild trees constantly, so each node caches its
structural hash and a bitmask of the variable ids below it, letting
``condition`` skip whole subtrees the substituted variable never touches.
Treat nodes as immutable; nothing in the package mutates them after
construction.

A variable is the pair ``(id, name)``. Constructors hand out ids: the text
parser and the random generator number variables densely in first-occurrence
order, while the DIMACS reader keeps the numbering declared in the file.
Branching order, truth-table layout, and tie-breaking are all defined on
ascending ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

# 2**24 packed rows is about 2 MB and enumerates in seconds; beyond that the
# exhaustive table stops being a practical oracle.
MAX_TRUTH_TABLE_VARS = 24


class Var:
    __slots__ = ("id", "name", "mask", "has_const", "has_not", "_hash")

    def __init__(self, id: int, name: str):
        self.id = id
        self.name = name
        self.mask = 1 << id
        self.has_const = False
        self.has_not = False
        self._hash = hash((Var, id, name))

    def __eq__(self, other):
        return self is other or (
            type(other) is Var and self.id == other.id and self.name == other.name
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.id, self.name) < (other.id, other.name)

    def __repr__(self):
        return f"Var({self.id}, {self.name!r})"


class Const:
    __slots__ = ("value", "mask", "has_const", "has_not", "_hash")

    def __init__(self, value: bool):
        self.value = value
        self.mask = 0
        self.has_const = True
        self.has_not = False
        self._hash = hash((Const, value))

    def __eq__(self, other):
        return self is other or (type(other) is Const and self.value == other.value)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Const({self.value})"


class Not:
    __slots__ = ("child", "mask", "has_const", "has_not", "_hash")

    def __init__(self, child: "Formula"):
        self.child = child
        self.mask = child.mask
        self.has_const = child.has_const
        self.has_not = True
        self._hash = hash((Not, hash(child)))

    def __eq__(self, other):
        return self is other or (
            type(other) is Not
            and self._hash == other._hash
            and self.child == other.child
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Not({self.child!r})"


class _Junction:
    __slots__ = ("children", "mask", "has_const", "has_not", "_hash")

    def __init__(self, children: tuple["Formula", ...]):
        if len(children) < 2:
            raise ValueError(f"{type(self).__name__} requires at least two children")
        mask = 0
        has_const = has_not = False
        for c in children:
            mask |= c.mask
            has_const = has_const or c.has_const
            has_not = has_not or c.has_not
        self.children = children
        self.mask = mask
        self.has_const = has_const
        self.has_not = has_not
        self._hash = hash((type(self), children))

    def __eq__(self, other):
        return self is other or (
            type(other) is type(self)
            and self._hash == other._hash
            and self.children == other.children
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self.children!r})"


class And(_Junction):
    __slots__ = ()


class Or(_Junction):
    __slots__ = ()


Formula = Union[Const, Var, Not, And, Or]

Assignment = dict  # Var -> bool; may be partial


@dataclass(frozen=True)
class Literal:
    var: Var
    positive: bool

    def negated(self) -> "Literal":
        return Literal(self.var, not self.positive)


def conjoin(children) -> Formula:
    """Build the conjunction of a sequence, folding constants.

    An empty sequence conjoins to true; a false child annihilates.
    """
    kept = []
    for child in children:
        if isinstance(child, Const):
            if not child.value:
                return Const(False)
        else:
            kept.append(child)
    if not kept:
        return Const(True)
    if len(kept) == 1:
        return kept[0]
    return And(tuple(kept))


def disjoin(children) -> Formula:
    """Build the disjunction of a sequence, folding constants.

    An empty sequence disjoins to false; a true child annihilates.
    """
    kept = []
    for child in children:
        if isinstance(child, Const):
            if child.value:
                return Const(True)
        else:
            kept.append(child)
    if not kept:
        return Const(False)
    if len(kept) == 1:
        return kept[0]
    return Or(tuple(kept))


def evaluate(f: Formula, assignment: dict) -> bool:
    """Standard Boolean semantics, computed on the unmodified tree."""
    t = type(f)
    if t is Var:
        try:
            return assignment[f]
        except KeyError:
            raise ValueError(f"variable {f.name!r} is unbound") from None
    if t is Const:
        return f.value
    if t is Not:
        return not evaluate(f.child, assignment)
    if t is And:
        for c in f.children:
            if not evaluate(c, assignment):
                return False
        return True
    if t is Or:
        for c in f.children:
            if evaluate(c, assignment):
                return True
        return False
    raise TypeError(f"not a formula node: {f!r}")


def condition(f: Formula, var: Var, value: bool) -> Formula:
    """Substitute ``value`` for ``var`` and constant-fold bottom-up.

    The result contains neither ``var`` nor any constant below the root, so a
    formula that collapses is detected the moment it collapses. Subtrees the
    variable never occurs in are returned unchanged (shared, not rebuilt);
    the variable-mask check makes that a constant-time skip.
    """
    t = type(f)
    if t is Const:
        return f
    vid = var.id
    if not (f.mask >> vid) & 1 and not f.has_const:
        return f
    if t is Var:
        return Const(value) if f == var else f
    if t is Not:
        child = condition(f.child, var, value)
        if type(child) is Const:
            return Const(not child.value)
        return f if child is f.child else Not(child)
    is_and = t is And
    kept = []
    changed = False
    for c in f.children:
        if not (c.mask >> vid) & 1 and not c.has_const:
            kept.append(c)
            continue
        cc = condition(c, var, value)
        if type(cc) is Const:
            if cc.value != is_and:
                # false child of And / true child of Or annihilates
                return Const(not is_and)
            changed = True  # identity element: drop it
            continue
        changed = changed or cc is not c
        kept.append(cc)
    if not changed:
        return f
    if not kept:
        return Const(is_and)
    if len(kept) == 1:
        return kept[0]
    return And(tuple(kept)) if is_and else Or(tuple(kept))


def to_nnf(f: Formula) -> Formula:
    """Push negations down to the variables (De Morgan, double negation).

    Subtrees containing no negation are already in normal form and are
    shared rather than rebuilt."""

    def walk(g: Formula, negate: bool) -> Formula:
        if not negate and not g.has_not:
            return g
        t = type(g)
        if t is Const:
            return Const(g.value ^ negate)
        if t is Var:
            return Not(g) if negate else g
        if t is Not:
            return walk(g.child, not negate)
        children = tuple(walk(c, negate) for c in g.children)
        if t is And:
            return Or(children) if negate else And(children)
        return And(children) if negate else Or(children)

    return walk(f, False)


def free_vars(f: Formula) -> list[Var]:
    """All variables of ``f``, sorted by ascending id, duplicate-free."""
    seen: set[Var] = set()
    seen_mask = 0

    def walk(g: Formula) -> None:
        nonlocal seen_mask
        if not (g.mask & ~seen_mask):
            return  # nothing new below
        t = type(g)
        if t is Var:
            seen.add(g)
            seen_mask |= g.mask
        elif t is Not:
            walk(g.child)
        else:
            for c in g.children:
                walk(c)

    walk(f)
    return sorted(seen)


@dataclass(frozen=True)
class TruthTable:
    """Exhaustive evaluation of a formula over its variables.

    Row ``r`` assigns variable ``j`` (in ``variables`` order) the bit
    ``(r >> (n - 1 - j)) & 1``, i.e. rows count up lexicographically with
    the last variable toggling fastest. Outputs are packed into one int
    with bit ``r`` holding row ``r``'s value.
    """

    variables: tuple[Var, ...]
    outputs: int

    @property
    def num_rows(self) -> int:
        return 1 << len(self.variables)

    def value(self, row: int) -> bool:
        if not 0 <= row < self.num_rows:
            raise IndexError(f"row {row} out of range")
        return bool((self.outputs >> row) & 1)

    def assignment(self, row: int) -> dict:
        n = len(self.variables)
        return {v: bool((row >> (n - 1 - j)) & 1) for j, v in enumerate(self.variables)}

    def rows(self) -> Iterator[tuple[tuple[bool, ...], bool]]:
        n = len(self.variables)
        for r in range(self.num_rows):
            inputs = tuple(bool((r >> (n - 1 - j)) & 1) for j in range(n))
            yield inputs, bool((self.outputs >> r) & 1)

    def true_rows(self) -> Iterator[int]:
        bits = self.outputs
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def true_assignments(self) -> list[dict]:
        return [self.assignment(r) for r in self.true_rows()]


def _var_masks(n: int) -> list[int]:
    """Per-variable input patterns with one bit lane per truth-table row."""
    masks = []
    total_rows = 1 << n
    for j in range(n):
        pos = n - 1 - j
        half = 1 << pos
        period = half * 2
        chunk = ((1 << half) - 1) << half
        repeats = total_rows // period
        repunit = ((1 << (repeats * period)) - 1) // ((1 << period) - 1)
        masks.append(chunk * repunit)
    return masks


def truth_table(f: Formula) -> TruthTable:
    """Enumerate every assignment of ``free_vars(f)``.

    All ``2**n`` rows are evaluated at once by treating Python ints as wide
    bit vectors: each variable becomes its input-pattern mask and the tree
    collapses with bitwise operators.
    """
    variables = free_vars(f)
    n = len(variables)
    if n > MAX_TRUTH_TABLE_VARS:
        raise ValueError(
            f"formula has {n} variables; truth tables support at most "
            f"{MAX_TRUTH_TABLE_VARS}"
        )
    full = (1 << (1 << n)) - 1
    mask_of = dict(zip(variables, _var_masks(n)))

    def bits_of(g: Formula) -> int:
        if isinstance(g, Const):
            return full if g.value else 0
        if isinstance(g, Var):
            return mask_of[g]
        if isinstance(g, Not):
            return full ^ bits_of(g.child)
        acc = bits_of(g.children[0])
        if isinstance(g, And):
            for c in g.children[1:]:
                acc &= bits_of(c)
        else:
            for c in g.children[1:]:
                acc |= bits_of(c)
        return acc

    return TruthTable(tuple(variables), bits_of(f))
