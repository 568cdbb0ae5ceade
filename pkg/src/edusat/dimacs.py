"""DIMACS CNF reader and writer.

The reader keeps the file's declared variable numbering: DIMACS variable
``k`` becomes ``Var(k - 1, "x<k>")``. The writer accepts CNF-shaped trees
only (a conjunction of literal clauses) and emits ``id + 1``, so a parsed
file round-trips to the same clause multiset.
"""

from __future__ import annotations

from .formula import And, Const, Formula, Not, Or, Var, conjoin, disjoin


def from_dimacs(text: str) -> Formula:
    header = None
    literals: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise ValueError(f"duplicate header on line {lineno}")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"malformed header on line {lineno}: {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ValueError(f"malformed header on line {lineno}: {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise ValueError(f"malformed header on line {lineno}: {line!r}")
            continue
        if header is None:
            raise ValueError(f"clause before header on line {lineno}")
        for tok in line.split():
            try:
                literals.append(int(tok))
            except ValueError:
                raise ValueError(f"bad literal {tok!r} on line {lineno}") from None
    if header is None:
        raise ValueError("missing 'p cnf' header")
    num_vars, num_clauses = header

    clauses: list[list[int]] = []
    current: list[int] = []
    for lit in literals:
        if lit == 0:
            clauses.append(current)
            current = []
            continue
        if abs(lit) > num_vars:
            raise ValueError(f"literal {lit} out of range (header declares {num_vars})")
        current.append(lit)
    if current:
        raise ValueError("last clause is not terminated by 0")
    if len(clauses) != num_clauses:
        raise ValueError(
            f"header declares {num_clauses} clauses but {len(clauses)} were found"
        )

    def literal_node(lit: int) -> Formula:
        var = Var(abs(lit) - 1, f"x{abs(lit)}")
        return var if lit > 0 else Not(var)

    return conjoin(disjoin(literal_node(l) for l in clause) for clause in clauses)


def _literal_int(node: Formula) -> int | None:
    if isinstance(node, Var):
        return node.id + 1
    if isinstance(node, Not) and isinstance(node.child, Var):
        return -(node.child.id + 1)
    return None


def _clause_ints(node: Formula) -> list[int]:
    lit = _literal_int(node)
    if lit is not None:
        return [lit]
    if isinstance(node, Or):
        lits = []
        for child in node.children:
            lit = _literal_int(child)
            if lit is None:
                raise ValueError("clause contains a non-literal child")
            lits.append(lit)
        return lits
    raise ValueError(f"not a clause: {node!r}")


def to_dimacs(f: Formula) -> str:
    """Serialize a CNF-shaped formula (And of Or-of-literal clauses)."""
    if isinstance(f, Const):
        clauses = [] if f.value else [[]]
    elif isinstance(f, And):
        clauses = [_clause_ints(child) for child in f.children]
    else:
        clauses = [_clause_ints(f)]
    num_vars = max((abs(l) for clause in clauses for l in clause), default=0)
    lines = [f"p cnf {num_vars} {len(clauses)}"]
    lines.extend(" ".join(str(l) for l in clause + [0]) for clause in clauses)
    return "\n".join(lines) + "\n"
