"""Seeded random generators for Boolean trees and integer-atom formulas.

Randomness comes from a small counter-based splitmix64 stream. Every tree
node derives independent child streams from its own state, so generation is
reproducible bit for bit across platforms and Python versions, and changing
one subtree's draws never shifts another's.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import And, Const, Formula, Not, Or, Var
from .smt import Add, Atom, FloorDiv, IntConst, IntVar, Mul, SmtFormula, Sub

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15  # splitmix64 increment
_SPLIT_SALT = 0xD1B54A32D192ED03


def _mix64(x: int) -> int:
    """splitmix64 finalizer."""
    x &= _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


class SplitStream:
    """Deterministic 64-bit stream with cheap independent child streams."""

    __slots__ = ("_state", "_draws")

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._draws = 0

    def draw(self) -> int:
        self._draws += 1
        return _mix64(self._state + self._draws * _GOLDEN)

    def child(self, index: int) -> "SplitStream":
        return SplitStream(_mix64(self._state ^ ((index + 1) * _SPLIT_SALT)))

    def unit(self) -> float:
        return self.draw() / 2.0**64

    def below(self, n: int) -> int:
        # modulo bias is < n / 2**64, irrelevant at these sizes
        return self.draw() % n

    def int_in(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]


@dataclass(frozen=True)
class GenConfig:
    """Shape parameters for random Boolean trees.

    ``p_not``/``p_and``/``p_or`` are the node-kind probabilities for internal
    nodes; leaves appear exactly when the depth budget runs out, so the split
    is conditioned on creating an internal node.
    """

    num_vars: int
    depth: int
    p_not: float = 0.1
    p_and: float = 0.45
    p_or: float = 0.45
    seed: int = 0

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("num_vars must be at least 1")
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        probs = (self.p_not, self.p_and, self.p_or)
        if min(probs) < 0 or abs(sum(probs) - 1.0) > 1e-9:
            raise ValueError("node-kind probabilities must be nonnegative and sum to 1")


def _relabel_first_occurrence(f: Formula) -> Formula:
    # dense ids in first-occurrence order keep parse(render(f)) == f
    mapping: dict[str, Var] = {}

    def walk(g: Formula) -> Formula:
        if isinstance(g, Var):
            var = mapping.get(g.name)
            if var is None:
                var = Var(len(mapping), g.name)
                mapping[g.name] = var
            return var
        if isinstance(g, Const):
            return g
        if isinstance(g, Not):
            return Not(walk(g.child))
        children = tuple(walk(c) for c in g.children)
        return And(children) if isinstance(g, And) else Or(children)

    return walk(f)


def gen_bool_tree(cfg: GenConfig) -> Formula:
    """Random tree of at most ``cfg.depth`` edge-depth; every leaf is one of
    x0..x{num_vars-1} drawn uniformly, identical seeds give identical trees."""

    def node(rng: SplitStream, budget: int) -> Formula:
        if budget == 0:
            k = rng.below(cfg.num_vars)
            return Var(k, f"x{k}")
        r = rng.unit()
        if r < cfg.p_not:
            return Not(node(rng.child(0), budget - 1))
        kind = And if r < cfg.p_not + cfg.p_and else Or
        return kind(
            (node(rng.child(0), budget - 1), node(rng.child(1), budget - 1))
        )

    return _relabel_first_occurrence(node(SplitStream(cfg.seed), cfg.depth))


_ATOM_OPS = (">", "<", "<=", ">=", "=")
_TERM_OPS = ("+", "-", "*", "//")


def gen_smt_formula(
    num_vars: int,
    depth: int,
    coeff_range: tuple[int, int] = (-10, 10),
    seed: int = 0,
) -> SmtFormula:
    """Random integer-atom formula with the Boolean skeleton of
    ``gen_bool_tree`` and comparison atoms at the leaves.

    Term constants come from ``coeff_range``; divisors are nonzero constants
    so generated formulas never hard-code a division by zero.
    """
    if num_vars < 1:
        raise ValueError("num_vars must be at least 1")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    lo, hi = coeff_range
    if lo > hi:
        raise ValueError(f"empty coefficient range [{lo}, {hi}]")
    nonzero = [c for c in range(lo, hi + 1) if c != 0]

    def term(rng: SplitStream, budget: int) -> object:
        if budget == 0 or rng.unit() < 0.35:
            if rng.unit() < 0.6:
                k = rng.below(num_vars)
                return IntVar(f"x{k}")
            return IntConst(rng.int_in(lo, hi))
        op = rng.choice(_TERM_OPS)
        if op == "//" and nonzero:
            return FloorDiv(term(rng.child(0), budget - 1), IntConst(rng.choice(nonzero)))
        left = term(rng.child(0), budget - 1)
        right = term(rng.child(1), budget - 1)
        if op == "+":
            return Add(left, right)
        if op == "-":
            return Sub(left, right)
        if op == "*":
            return Mul(left, right)
        return Add(left, right)  # "//" with no usable divisor

    def atom(rng: SplitStream) -> Atom:
        op = rng.choice(_ATOM_OPS)
        lhs = term(rng.child(0), 1)
        rhs = term(rng.child(1), 0)
        return Atom(op, lhs, rhs)

    def node(rng: SplitStream, budget: int):
        if budget == 0:
            return atom(rng.child(2))
        r = rng.unit()
        if r < 0.1:
            return Not(node(rng.child(0), budget - 1))
        kind = And if r < 0.55 else Or
        return kind(
            (node(rng.child(0), budget - 1), node(rng.child(1), budget - 1))
        )

    return SmtFormula.from_tree(node(SplitStream(seed), depth))
