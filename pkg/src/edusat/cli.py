"""Command-line interface.

Subcommands: ``solve`` (Boolean formulas through any engine), ``smt``
(bounded-integer formulas), ``npc`` (the five encoded problems), ``gen``
(random formula files), ``viz`` (DOT export of a diagram), and ``bench``
(timed batches comparing engines, with accuracy recomputed from scratch).

Exit codes: 0 satisfiable, 1 unsatisfiable (or unsatisfiable in range),
2 usage or parse error, 3 unknown (min-conflicts gave up), 4 internal
consistency failure (a solution failed verification or engines disagreed).
The ``EDUSAT_SEED`` environment variable supplies the default seed.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field

from . import dimacs, npc, robdd, smt
from .dpll import ALL, SINGLE, solve_dpll, solve_naive
from .formula import evaluate, free_vars
from .generator import GenConfig, gen_bool_tree, gen_smt_formula
from .parsing import ParseError, parse, parse_smt, render, render_smt

EXIT_SAT = 0
EXIT_UNSAT = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3
EXIT_INTERNAL = 4


class SolverDisagreement(Exception):
    """Engines returned different answers; carries the offending formula."""

    def __init__(self, formula_text: str, detail: str):
        super().__init__(f"{detail}; formula: {formula_text}")
        self.formula_text = formula_text


@dataclass
class RunReport:
    """Per-formula records plus batch aggregates for a multi-engine run."""

    records: list[dict] = field(default_factory=list)
    totals: dict = field(default_factory=dict)
    agreement: bool = True

    def add(self, engine: str, verdict: str, model_count: int, time_s: float) -> None:
        self.records.append(
            {
                "engine": engine,
                "verdict": verdict,
                "models": model_count,
                "time_s": time_s,
            }
        )
        self.totals[engine] = self.totals.get(engine, 0.0) + time_s


def _default_seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get("EDUSAT_SEED")
    return int(env) if env else 0


def _model_set(models) -> set:
    return {frozenset(m.items()) for m in models}


def _read_input(args) -> str:
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            return fh.read()
    if getattr(args, "input", None) is not None:
        return args.input
    raise ValueError("no formula given (pass it inline or with -f)")


def _parse_order(text: str, f):
    names = [part.strip() for part in text.split(",") if part.strip()]
    by_name = {v.name: v for v in free_vars(f)}
    if sorted(names) != sorted(by_name):
        raise ValueError(
            f"order must be a permutation of: {', '.join(sorted(by_name))}"
        )
    return [by_name[name] for name in names]


def _format_bool_model(model) -> str:
    items = sorted(model.items())
    return " ".join(f"{v.name}={'true' if val else 'false'}" for v, val in items)


def _json_bool_model(model) -> dict:
    return {v.name: val for v, val in sorted(model.items())}


def _verify_total_models(f, models) -> bool:
    return all(evaluate(f, m) for m in models)


def _verify_partial_model(f, partial) -> bool:
    # every extension over the untouched variables must satisfy f
    rest = [v for v in free_vars(f) if v not in partial]
    return all(
        evaluate(f, {**partial, **dict(zip(rest, values))})
        for values in itertools.product((False, True), repeat=len(rest))
    )


def _robdd_solve(f, order, mode):
    start = time.perf_counter()
    diagram = robdd.build_robdd(f, order)
    if mode == ALL:
        models = robdd.all_solutions(diagram)
        verdict = "SAT" if models else "UNSAT"
    else:
        single = robdd.single_solution(diagram)
        models = [] if single is None else [single]
        verdict = "UNSAT" if single is None else "SAT"
    return verdict, models, time.perf_counter() - start


def cmd_solve(args) -> int:
    text = _read_input(args)
    f = dimacs.from_dimacs(text) if args.dimacs else parse(text)
    mode = args.mode
    order = _parse_order(args.order, f) if args.order else free_vars(f)

    engines = ["naive", "dpll", "robdd"] if args.engine == "all" else [args.engine]
    report = RunReport()
    results = {}
    for engine in engines:
        if engine == "naive":
            result, stats = solve_naive(f, mode)
            verdict, models, elapsed = result.status, result.models, stats.wall_time
        elif engine == "dpll":
            result, stats = solve_dpll(f, mode)
            verdict, models, elapsed = result.status, result.models, stats.wall_time
        else:
            verdict, models, elapsed = _robdd_solve(f, order, mode)

        total = mode == ALL or engine in ("naive", "dpll")
        ok = (
            _verify_total_models(f, models)
            if total
            else all(_verify_partial_model(f, m) for m in models)
        )
        if not ok:
            print(f"internal error: {engine} returned a non-model", file=sys.stderr)
            return EXIT_INTERNAL
        results[engine] = (verdict, models)
        report.add(engine, verdict, len(models), elapsed)

    verdicts = {v for v, _ in results.values()}
    report.agreement = len(verdicts) == 1 and (
        mode == SINGLE
        or len({frozenset(map(frozenset, map(dict.items, m))) for _, m in results.values()}) == 1
    )
    if args.engine == "all" and not report.agreement:
        print(f"internal error: engines disagree on {render(f)}", file=sys.stderr)
        return EXIT_INTERNAL

    verdict = next(iter(verdicts))
    if args.format == "json":
        for record in report.records:
            engine = record["engine"]
            print(
                json.dumps(
                    {
                        "engine": engine,
                        "verdict": record["verdict"],
                        "models": [_json_bool_model(m) for m in results[engine][1]],
                        "time_s": record["time_s"],
                    }
                )
            )
    else:
        print(verdict)
        for engine in engines:
            _, models = results[engine]
            prefix = f"[{engine}] " if len(engines) > 1 else ""
            for m in models:
                print(f"{prefix}{_format_bool_model(m)}")
        if len(engines) > 1:
            print(f"agreement: {'true' if report.agreement else 'false'}")
    return EXIT_SAT if verdict == "SAT" else EXIT_UNSAT


_BOUND_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)=(-?\d+)\.\.(-?\d+)$")


def parse_bounds(text: str) -> dict:
    bounds = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        m = _BOUND_RE.match(part)
        if m is None:
            raise ValueError(f"bad bound {part!r} (expected name=lo..hi)")
        bounds[m.group(1)] = (int(m.group(2)), int(m.group(3)))
    return bounds


def _format_int_model(model) -> str:
    return ", ".join(f"{name} = {model[name]}" for name in sorted(model, key=smt._natural_key))


def cmd_smt(args) -> int:
    text = _read_input(args)
    f = parse_smt(text)
    bounds = parse_bounds(args.bounds)
    if args.method == "backtracking":
        result = smt.solve_backtracking(f, bounds, args.mode)
    else:
        if args.mode == ALL:
            raise ValueError("min-conflicts only answers single-solution queries")
        result = smt.solve_min_conflicts(
            f, bounds, args.max_steps, _default_seed(args.seed)
        )
    for model in result.models:
        if not smt.satisfies(f, model):
            print("internal error: solver returned a non-model", file=sys.stderr)
            return EXIT_INTERNAL
    print(result.status)
    for model in result.models:
        print(_format_int_model(model))
    if result.status == smt.SAT:
        return EXIT_SAT
    if result.status == smt.UNKNOWN:
        return EXIT_UNKNOWN
    return EXIT_UNSAT


_NPC_PARSERS = {
    "nqueens": npc.parse_nqueens,
    "coloring": npc.parse_graph,
    "subsetsum": npc.parse_subset_sum,
    "sudoku": npc.parse_sudoku,
    "vertexcover": npc.parse_graph,
}

_NPC_ENCODERS = {
    "nqueens": npc.encode_nqueens,
    "coloring": npc.encode_coloring,
    "subsetsum": npc.encode_subset_sum,
    "sudoku": npc.encode_sudoku,
    "vertexcover": npc.encode_vertex_cover,
}


def _format_solution(problem_name: str, solution) -> str:
    if problem_name == "nqueens":
        return "rows: " + " ".join(str(r) for r in solution)
    if problem_name == "coloring":
        return "colors: " + " ".join(str(c) for c in solution)
    if problem_name == "subsetsum":
        return "indices: " + " ".join(str(i) for i in solution)
    if problem_name == "vertexcover":
        return "cover: " + " ".join(str(v) for v in sorted(solution))
    return "\n".join("".join(str(c) for c in row) for row in solution)


def cmd_npc(args) -> int:
    if args.problem == "nqueens" and re.fullmatch(r"\d+", args.instance.strip()):
        instance_text = args.instance
    else:
        with open(args.instance, "r", encoding="utf-8") as fh:
            instance_text = fh.read()
    problem = _NPC_PARSERS[args.problem](instance_text)
    formula, bounds = _NPC_ENCODERS[args.problem](problem)

    if args.method == "backtracking":
        result = smt.solve_backtracking(formula, bounds, args.mode)
    else:
        if args.mode == ALL:
            raise ValueError("min-conflicts only answers single-solution queries")
        result = smt.solve_min_conflicts(
            formula, bounds, args.max_steps, _default_seed(args.seed)
        )

    if result.status == smt.UNKNOWN:
        print(smt.UNKNOWN)
        return EXIT_UNKNOWN
    if result.status == smt.UNSAT_IN_RANGE:
        print(smt.UNSAT_IN_RANGE)
        return EXIT_UNSAT

    cover = args.problem == "vertexcover"
    solutions = []
    for model in result.models:
        solution = npc.decode(problem, model, cover=cover)
        if not npc.validate(problem, solution, cover=cover):
            print("internal error: decoded solution failed validation", file=sys.stderr)
            return EXIT_INTERNAL
        solutions.append(solution)
    print(smt.SAT)
    for solution in solutions:
        print(_format_solution(args.problem, solution))
    if args.mode == ALL:
        print(f"count: {len(solutions)}")
    return EXIT_SAT


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text.strip())
    if m is None:
        raise ValueError(f"bad range {text!r} (expected lo..hi)")
    return int(m.group(1)), int(m.group(2))


def cmd_gen(args) -> int:
    seed = _default_seed(args.seed)
    lines = []
    for i in range(args.count):
        if args.kind == "bool":
            cfg = GenConfig(num_vars=args.num_vars, depth=args.depth, seed=seed + i)
            lines.append(render(gen_bool_tree(cfg)))
        else:
            formula = gen_smt_formula(
                args.num_vars, args.depth, parse_range(args.coeff_range), seed + i
            )
            lines.append(render_smt(formula))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_SAT


def cmd_viz(args) -> int:
    text = _read_input(args)
    f = parse(text)
    order = _parse_order(args.order, f) if args.order else free_vars(f)
    diagram = robdd.build_robdd(f, order)
    dot = robdd.to_dot(diagram)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        sys.stdout.write(dot)
    print(f"nodes: {robdd.node_count(diagram)}", file=sys.stderr)
    return EXIT_SAT


def _bench_formulas(count: int, num_vars: int, depth: int, seed: int):
    return [
        gen_bool_tree(GenConfig(num_vars=num_vars, depth=depth, seed=seed + i))
        for i in range(count)
    ]


def run_dpll_bench(counts, num_vars, depth, mode, seed) -> list[dict]:
    """One row per batch size: aggregate naive and heuristic solve times plus
    recomputed accuracy (substitute-back and cross-engine agreement)."""
    rows = []
    for count in counts:
        formulas = _bench_formulas(count, num_vars, depth, seed)
        report = RunReport()
        naive_decisions = dpll_decisions = 0
        correct = 0
        for f in formulas:
            naive_result, naive_stats = solve_naive(f, mode)
            dpll_result, dpll_stats = solve_dpll(f, mode)
            report.add("naive", naive_result.status, len(naive_result.models), naive_stats.wall_time)
            report.add("dpll", dpll_result.status, len(dpll_result.models), dpll_stats.wall_time)
            naive_decisions += naive_stats.decisions
            dpll_decisions += dpll_stats.decisions
            ok = (
                naive_result.status == dpll_result.status
                and _verify_total_models(f, naive_result.models)
                and _verify_total_models(f, dpll_result.models)
            )
            if ok and mode == ALL:
                ok = _model_set(naive_result.models) == _model_set(dpll_result.models)
            if not ok:
                report.agreement = False
                raise SolverDisagreement(render(f), "naive and dpll engines disagree")
            correct += 1
        rows.append(
            {
                "suite": "dpll",
                "count": count,
                "mode": mode,
                "vars": num_vars,
                "depth": depth,
                "naive_s": report.totals["naive"],
                "dpll_s": report.totals["dpll"],
                "naive_decisions": naive_decisions,
                "dpll_decisions": dpll_decisions,
                "accuracy": correct / count,
            }
        )
    return rows


def run_robdd_bench(counts, num_vars, depth, seed) -> list[dict]:
    """One row per batch size with single- and all-solutions timings.

    The decision tree is built untimed; the timed section spans reduction
    through solution extraction. Accuracy substitutes solutions back into the
    formula and cross-checks verdicts and model sets against the naive engine.
    """
    rows = []
    for count in counts:
        formulas = _bench_formulas(count, num_vars, depth, seed)
        single_s = multiple_s = 0.0
        single_ok = multiple_ok = 0
        for f in formulas:
            order = free_vars(f)
            tree = robdd.build_bdt(f, order)
            reference, _ = solve_naive(f, ALL)

            start = time.perf_counter()
            diagram = robdd.reduce_bdt(tree)
            single = robdd.single_solution(diagram)
            single_s += time.perf_counter() - start
            if single is None:
                ok = reference.status == "UNSAT"
            else:
                ok = _verify_partial_model(f, single)
            if not ok:
                raise SolverDisagreement(render(f), "single-solution check failed")
            single_ok += 1

            start = time.perf_counter()
            diagram = robdd.reduce_bdt(tree)
            models = robdd.all_solutions(diagram)
            multiple_s += time.perf_counter() - start
            ok = _verify_total_models(f, models) and _model_set(models) == _model_set(
                reference.models
            )
            if not ok:
                raise SolverDisagreement(render(f), "all-solutions check failed")
            multiple_ok += 1
        rows.append(
            {
                "suite": "robdd",
                "count": count,
                "vars": num_vars,
                "depth": depth,
                "single_s": single_s,
                "multiple_s": multiple_s,
                "accuracy_single": single_ok / count,
                "accuracy_multiple": multiple_ok / count,
            }
        )
    return rows


def _print_table(rows, columns) -> None:
    header = [name for name, _ in columns]
    rendered = [
        [fmt.format(row[name]) for name, fmt in columns] for row in rows
    ]
    widths = [
        max(len(header[i]), max(len(r[i]) for r in rendered))
        for i in range(len(columns))
    ]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for r in rendered:
        print("  ".join(cell.ljust(w) for cell, w in zip(r, widths)))


def cmd_bench(args) -> int:
    counts = [int(part) for part in args.counts.split(",") if part.strip()]
    seed = _default_seed(args.seed)
    try:
        if args.suite == "dpll":
            rows = run_dpll_bench(counts, args.num_vars, args.depth, args.mode, seed)
            columns = [
                ("count", "{}"),
                ("mode", "{}"),
                ("vars", "{}"),
                ("depth", "{}"),
                ("naive_s", "{:.4f}"),
                ("dpll_s", "{:.4f}"),
                ("naive_decisions", "{}"),
                ("dpll_decisions", "{}"),
                ("accuracy", "{:.0%}"),
            ]
        else:
            rows = run_robdd_bench(counts, args.num_vars, args.depth, seed)
            columns = [
                ("count", "{}"),
                ("vars", "{}"),
                ("depth", "{}"),
                ("single_s", "{:.4f}"),
                ("multiple_s", "{:.4f}"),
                ("accuracy_single", "{:.0%}"),
                ("accuracy_multiple", "{:.0%}"),
            ]
    except SolverDisagreement as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.format == "json":
        for row in rows:
            print(json.dumps(row))
    else:
        _print_table(rows, columns)
    return EXIT_SAT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edusat",
        description="SAT, bounded-integer SMT, and reduction playground",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a Boolean formula")
    p.add_argument("input", nargs="?", help="formula text")
    p.add_argument("-f", "--file", help="read the formula from a file")
    p.add_argument("--dimacs", action="store_true", help="input is DIMACS CNF")
    p.add_argument("-e", "--engine", choices=["naive", "dpll", "robdd", "all"], default="dpll")
    p.add_argument("-m", "--mode", choices=[SINGLE, ALL], default=SINGLE)
    p.add_argument("--order", help="comma-separated variable order for robdd")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("smt", help="solve a bounded-integer formula")
    p.add_argument("input", nargs="?", help="formula text")
    p.add_argument("-f", "--file", help="read the formula from a file")
    p.add_argument("--bounds", required=True, help="e.g. x=0..10,y=-5..5")
    p.add_argument("--method", choices=["backtracking", "minconflicts"], default="backtracking")
    p.add_argument("-m", "--mode", choices=[SINGLE, ALL], default=SINGLE)
    p.add_argument("--max-steps", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_smt)

    p = sub.add_parser("npc", help="solve an encoded NP-complete problem")
    p.add_argument("problem", choices=sorted(_NPC_PARSERS))
    p.add_argument("instance", help="instance file (or n for nqueens)")
    p.add_argument("--method", choices=["backtracking", "minconflicts"], default="backtracking")
    p.add_argument("-m", "--mode", choices=[SINGLE, ALL], default=SINGLE)
    p.add_argument("--max-steps", type=int, default=10000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_npc)

    p = sub.add_parser("gen", help="generate random formulas")
    p.add_argument("kind", choices=["bool", "smt"])
    p.add_argument("-n", "--num-vars", type=int, required=True)
    p.add_argument("-d", "--depth", type=int, required=True)
    p.add_argument("-c", "--count", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--coeff-range", default="-10..10", help="constants for smt atoms")
    p.add_argument("-o", "--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("viz", help="export a decision diagram as DOT")
    p.add_argument("input", nargs="?", help="formula text")
    p.add_argument("-f", "--file", help="read the formula from a file")
    p.add_argument("--order", help="comma-separated variable order")
    p.add_argument("-o", "--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_viz)

    p = sub.add_parser("bench", help="timed engine comparison on random batches")
    p.add_argument("suite", choices=["dpll", "robdd"])
    p.add_argument("--counts", default="10,100,1000")
    p.add_argument("-n", "--num-vars", type=int, default=5)
    p.add_argument("-d", "--depth", type=int, default=8)
    p.add_argument("-m", "--mode", choices=[SINGLE, ALL], default=SINGLE)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
