"""Teaching-oriented satisfiability toolkit.

Boolean formulas with naive and heuristic DPLL engines, reduced ordered
binary decision diagrams, bounded-integer SMT solving (backtracking and
min-conflicts), encoders for five classic NP-complete problems, random
formula generators, and a command-line front-end with a benchmark harness.
"""

from . import npc
from .dimacs import from_dimacs, to_dimacs
from .dpll import (
    ALL,
    SINGLE,
    SatResult,
    SolverStats,
    find_pure_literal,
    find_unit_literal,
    iter_partial_models,
    solve_dpll,
    solve_naive,
)
from .formula import (
    And,
    Const,
    Formula,
    Literal,
    Not,
    Or,
    TruthTable,
    Var,
    condition,
    conjoin,
    disjoin,
    evaluate,
    free_vars,
    to_nnf,
    truth_table,
)
from .generator import GenConfig, SplitStream, gen_bool_tree, gen_smt_formula
from .parsing import ParseError, parse, parse_smt, render, render_smt
from .robdd import (
    Bdt,
    Robdd,
    all_solutions,
    build_bdt,
    build_robdd,
    dag_signature,
    node_count,
    reduce_bdt,
    single_solution,
    to_dot,
)
from .smt import (
    Add,
    Atom,
    DomainBounds,
    FloorDiv,
    IntConst,
    IntTerm,
    IntVar,
    Mul,
    SmtFormula,
    SmtResult,
    SmtStats,
    Sub,
    abstract,
    conflicts,
    eval_atom,
    eval_term,
    evaluate_smt,
    solve_backtracking,
    solve_min_conflicts,
)

__version__ = "0.1.0"
