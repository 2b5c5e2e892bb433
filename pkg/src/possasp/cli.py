"""Command-line front end: parsing, the five semantics, the three decision
tasks and the QBF reduction.  Batch-oriented; output is text or stable JSON.

Exit codes: 0 query true / consistent answer sets found; 1 query false / none;
2 usage or parse error; 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import baseline, classical, kernel, newsem, qbf, strong, syntax, weak
from .kernel import CapExceededError, Clause, ONE, certainty_str
from .syntax import KIND_STRONG, ParseError, Program

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_CAP = 3

GRID_NOTICE = ("note: enumeration is grid-complete, not [0,1]-complete; "
               "answer-set families outside the grid are not listed")


class UsageError(Exception):
    pass


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _parse_level(text: str) -> Fraction:
    try:
        return kernel.certainty(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("bad level %r: %s" % (text, exc))


def _parse_grid(text: str, program: Program):
    if text is None or text == "certplus":
        return syntax.cert_plus(program)
    try:
        return tuple(sorted({kernel.certainty(part) for part in text.split(",")}))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("bad grid %r: %s" % (text, exc))


def _parse_query(text: str):
    """A clause with an optional '@ level' suffix (default level 1)."""
    if text is None:
        raise UsageError("--query is required for brave/cautious")
    clause_text, _, level_text = text.partition("@")
    level = _parse_level(level_text.strip()) if level_text.strip() else ONE
    try:
        clause = syntax.parse_clause(clause_text.strip())
    except ParseError as exc:
        raise UsageError("bad query clause: %s" % exc)
    return clause, level


def pick_semantics(program: Program, requested: str) -> str:
    """'auto': weighted programs go to new/strong/weak by kind; crisp literal
    programs to classical; crisp clausal programs to weak (their classical
    counterpart)."""
    if requested != "auto":
        return requested
    if program.mode == "clausal":
        return "weak"
    if not program.weighted:
        return "classical"
    return "strong" if program.kind == KIND_STRONG else "new"


def _entry(key, value) -> dict:
    text = str(key)
    if isinstance(key, Clause) and not key.is_unit():
        text = "(%s)" % text
    return {"key": text, "value": certainty_str(value)}


def _valuation_json(valuation) -> list:
    return [_entry(k, v) for k, v in valuation.entries.items()]


def _interpretation_json(interp) -> list:
    return [{"key": str(l), "value": "1"} for l in sorted(interp, key=str)]


def _solve(program: Program, semantics: str, grid_text, notices: list):
    """Returns (serialized answer sets, consistency flags)."""
    if semantics == "classical":
        if program.mode == "clausal":
            raise UsageError("classical semantics needs a literal-mode program")
        sets = classical.answer_sets(program)
        flags = [classical.is_consistent(i) for i in sets]
        return [_interpretation_json(i) for i in sets], flags
    if semantics == "baseline":
        answers = baseline.nicolas_answer_sets(program)
        return [_valuation_json(v) for v in answers], [True] * len(answers)
    if semantics == "new":
        if program.has_naf():
            notices.append(GRID_NOTICE)
            grid = _parse_grid(grid_text, program)
            answers = newsem.normal_answer_sets(program, grid)
            flags = [newsem.answer_set_distribution(program, v).is_normalized()
                     for v in answers]
            return [_valuation_json(v) for v in answers], flags
        result = newsem.simple_answer_set(program)
        if not result.consistent:
            notices.append("program is inconsistent (no normalized model)")
        return [_valuation_json(result.valuation)], [result.consistent]
    if semantics == "strong":
        if program.has_naf():
            notices.append(GRID_NOTICE)
        grid = _parse_grid(grid_text, program)
        pairs = strong.strong_answer_models(program, grid)
        return ([_valuation_json(v) for v, _ in pairs],
                [pi.is_normalized() for _, pi in pairs])
    if semantics == "weak":
        if program.has_naf():
            notices.append(GRID_NOTICE)
        grid = _parse_grid(grid_text, program)
        pairs = weak.weak_answer_models(program, grid)
        return ([_valuation_json(v) for v, _ in pairs],
                [pi.is_normalized() for _, pi in pairs])
    raise UsageError("unknown semantics %r" % semantics)


def _query_values(program: Program, semantics: str, clause: Clause, level, grid_text):
    """(holds-per-consistent-answer-set) booleans for a query clause/literal."""
    if semantics == "weak":
        grid = None if grid_text in (None, "certplus") else _parse_grid(grid_text, program)
        pairs = weak.weak_answer_models(program, grid) if grid is not None else \
            weak._consistent_models(program)
        if grid is not None:
            pairs = [(v, pi) for v, pi in pairs if pi.is_normalized()]
        return [pi.necessity(clause) >= level for _, pi in pairs]
    if not clause.is_unit():
        raise UsageError("semantics %r queries single literals, not clauses" % semantics)
    literal = clause.literals[0]
    if semantics == "classical":
        sets = [i for i in classical.answer_sets(program) if classical.is_consistent(i)]
        return [literal in interp for interp in sets]
    if semantics == "baseline":
        return [v.value(literal) >= level for v in baseline.nicolas_answer_sets(program)]
    if semantics == "new":
        if program.has_naf():
            grid = _parse_grid(grid_text, program)
            answers = newsem.normal_answer_sets(program, grid)
            return [v.value(literal) >= level for v in answers
                    if newsem.answer_set_distribution(program, v).is_normalized()]
        result = newsem.simple_answer_set(program)
        return [result.valuation.value(literal) >= level] if result.consistent else []
    if semantics == "strong":
        grid = _parse_grid(grid_text, program)
        pairs = strong.strong_answer_models(program, grid)
        return [v.value(literal) >= level for v, pi in pairs if pi.is_normalized()]
    raise UsageError("unknown semantics %r" % semantics)


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return
    for notice in payload.get("notices", ()):
        out.write("%s\n" % notice)
    if "answer_sets" in payload:
        sets = payload["answer_sets"]
        flags = payload.get("consistent", [True] * len(sets))
        if not sets:
            out.write("no answer sets\n")
        for i, (entries, flag) in enumerate(zip(sets, flags), 1):
            body = ", ".join(
                e["key"] if e["value"] == "1" else "%s^%s" % (e["key"], e["value"])
                for e in entries)
            suffix = "" if flag else "  (inconsistent)"
            out.write("answer set %d: {%s}%s\n" % (i, body, suffix))
    if "result" in payload:
        out.write("%s\n" % ("yes" if payload["result"] else "no"))
    if "program" in payload:
        out.write(payload["program"] + "\n")
    if "classification" in payload:
        info = payload["classification"]
        out.write("kind: %s\nmode: %s\nweighted: %s\natoms: %s\nrules: %d\n" % (
            info["kind"], info["mode"], "yes" if info["weighted"] else "no",
            " ".join(info["atoms"]), info["rules"]))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="possasp",
        description="Possibilistic ASP solver: classical, baseline, new, "
                    "strong and weak semantics, plus an exists-forall QBF reduction.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, query=False):
        p.add_argument("file", help="program file, or - for stdin")
        p.add_argument("--semantics", default="auto",
                       choices=["classical", "baseline", "new", "strong", "weak", "auto"])
        p.add_argument("--grid", default=None,
                       help="'certplus' (default) or a comma list of certainties")
        p.add_argument("--max-atoms", type=int, default=None,
                       help="world cap override (also env PASP_MAX_ATOMS)")
        p.add_argument("--format", default="text", choices=["text", "json"])
        if query:
            p.add_argument("--query", default=None,
                           help="clause such as 'a|b|-c', optional '@ level'")
            p.add_argument("--level", default=None, help="certainty threshold")

    common(sub.add_parser("solve", help="enumerate answer sets"))
    common(sub.add_parser("brave", help="clause/literal entailed by some consistent "
                                        "answer set"), query=True)
    common(sub.add_parser("cautious", help="clause/literal entailed by every "
                                           "consistent answer set"), query=True)
    common(sub.add_parser("exists", help="consistent answer set existence"))
    common(sub.add_parser("check", help="parse and classify only"))
    reduce_p = sub.add_parser("reduce-qbf", help="reduce an exists-forall QBF to a "
                                                 "clausal program")
    reduce_p.add_argument("file", help="QBF file, or - for stdin")
    reduce_p.add_argument("--format", default="text", choices=["text", "json"])
    return parser


def _apply_world_cap(args) -> None:
    cap = getattr(args, "max_atoms", None)
    if cap is None:
        env = os.environ.get("PASP_MAX_ATOMS")
        cap = int(env) if env else None
    if cap is not None:
        kernel.set_world_cap(cap)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    out = sys.stdout
    try:
        _apply_world_cap(args)
        if args.command == "reduce-qbf":
            formula = qbf.parse_qbf(_read_source(args.file))
            program = qbf.reduce_qbf(formula)
            payload = {"command": "reduce-qbf", "qbf": str(formula),
                       "program": syntax.program_to_text(program)}
            _emit(payload, args.format, out)
            return EXIT_TRUE

        program = syntax.parse_program(_read_source(args.file))
        semantics = pick_semantics(program, args.semantics)
        notices: list = []

        if args.command == "check":
            payload = {"command": "check",
                       "classification": {
                           "kind": program.kind, "mode": program.mode,
                           "weighted": program.weighted,
                           "atoms": list(program.herbrand),
                           "rules": len(program.rules)},
                       "semantics": semantics}
            _emit(payload, args.format, out)
            return EXIT_TRUE

        if args.command == "solve":
            sets, flags = _solve(program, semantics, args.grid, notices)
            order = sorted(range(len(sets)), key=lambda i: json.dumps(sets[i]))
            payload = {"command": "solve", "semantics": semantics,
                       "answer_sets": [sets[i] for i in order],
                       "consistent": [flags[i] for i in order],
                       "notices": notices}
            _emit(payload, args.format, out)
            return EXIT_TRUE if any(flags) else EXIT_FALSE

        if args.command == "exists":
            sets, flags = _solve(program, semantics, args.grid, notices)
            result = any(flags)
            payload = {"command": "exists", "semantics": semantics, "result": result}
            _emit(payload, args.format, out)
            return EXIT_TRUE if result else EXIT_FALSE

        if args.command in ("brave", "cautious"):
            clause, level = _parse_query(args.query)
            if args.level is not None:
                level = _parse_level(args.level)
            values = _query_values(program, semantics, clause, level, args.grid)
            result = any(values) if args.command == "brave" else all(values)
            payload = {"command": args.command, "semantics": semantics,
                       "query": str(clause), "level": certainty_str(level),
                       "result": result}
            _emit(payload, args.format, out)
            return EXIT_TRUE if result else EXIT_FALSE

        raise UsageError("unknown command %r" % args.command)
    except (ParseError, UsageError, ValueError, OSError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_USAGE
    except CapExceededError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_CAP


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
