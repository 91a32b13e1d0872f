"""Command-line front end.

Exit codes: 0 success / predicate true, 1 predicate false or table mismatch,
2 usage or parse error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from gdebruijn.automata import (
    TheoremViolation,
    UniformLanguage,
    dfa_to_dot,
    minimal_dfa,
    verify_conjugate_theorem,
    verify_theorem1,
)
from gdebruijn.construct import construct_subgraph, generate
from gdebruijn.enumeration import Budget, BudgetExceeded, count_gdb, list_gdb, max_sc_search
from gdebruijn.graph import DeBruijnSubgraph, to_dot
from gdebruijn.tables import table1_rows, table2_rows, table3_rows, table4_rows
from gdebruijn.words import (
    CircularWord,
    circular_factors,
    format_word,
    gamma_profile,
    ilog,
    is_generalized_de_bruijn,
    parse_word,
)

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

MAX_DOT_VERTICES = 4096
MAX_LISTED_MISSING = 4096


class UsageError(Exception):
    pass


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _err(text: str) -> None:
    sys.stderr.write(text if text.endswith("\n") else text + "\n")


def _budget(args) -> Budget:
    env = Budget.from_env()
    return Budget(
        max_nodes=args.max_nodes if args.max_nodes is not None else env.max_nodes,
        max_seconds=args.max_seconds if args.max_seconds is not None else env.max_seconds,
    )


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _aligned(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in header]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) if c.isdigit() else c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _read_word(text: str | None, k: int | None) -> CircularWord:
    if text is None or text == "-":
        text = sys.stdin.read()
    try:
        return parse_word(text, k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_nk(n: int, k: int) -> None:
    if k < 2:
        raise UsageError(f"--k must be >= 2, got {k}")
    if n < 1:
        raise UsageError(f"--n must be >= 1, got {n}")


def cmd_gen(args) -> int:
    _check_nk(args.n, args.k)
    w = generate(args.n, args.k)
    if args.format == "json":
        _out(json.dumps({"N": args.n, "k": args.k, "word": str(w)}))
    elif args.format == "dot":
        r = ilog(args.n, args.k)
        if r == 0:
            raise UsageError("words shorter than k are not built from a graph")
        _out(to_dot(construct_subgraph(args.n, r, args.k), all_vertices=False))
    else:
        _out(str(w))
    return EXIT_OK


def _missing_factors(w: CircularWord, i: int) -> list[str] | None:
    if w.k**i > MAX_LISTED_MISSING:
        return None
    present = circular_factors(w, i)
    missing = []
    for code in range(w.k**i):
        letters = []
        for _ in range(i):
            code, a = divmod(code, w.k)
            letters.append(a)
        factor = tuple(reversed(letters))
        if factor not in present:
            missing.append(format_word(factor, w.k))
    return missing


def cmd_check(args) -> int:
    w = _read_word(args.word, args.k)
    n, k = len(w), w.k
    r = ilog(n, k)
    profile = gamma_profile(w)
    ok = is_generalized_de_bruijn(w)
    short = [i for i in profile.missing() if i <= r]
    missing = {i: _missing_factors(w, i) for i in short}
    if args.format == "json":
        _out(json.dumps({
            "word": str(w),
            "N": n,
            "k": k,
            "r": r,
            "gamma_r": profile.values[r],
            "gamma_r_plus_1": profile.values[r + 1],
            "conditions": [profile.values[r] == k**r, profile.values[r + 1] == n],
            "profile": list(profile.values),
            "deficient_lengths": profile.missing(),
            "missing_factors": {str(i): m for i, m in missing.items()},
            "generalized_de_bruijn": ok,
        }))
    else:
        verdict = "OK" if ok else "FAIL"
        _out(f"{verdict} {w} (N={n}, k={k}, r={r})")
        _out(f"gamma_{r} = {profile.values[r]} (need {k**r}), gamma_{r + 1} = {profile.values[r + 1]} (need {n})")
        for i in profile.missing():
            line = f"gamma_{i} = {profile.values[i]} < {min(k**i, n)}"
            if missing.get(i):
                line += "; missing factors: " + " ".join(missing[i])
            _out(line)
    return EXIT_OK if ok else EXIT_FALSE


def _read_language(path: str, k: int | None) -> UniformLanguage:
    try:
        handle = sys.stdin if path == "-" else open(path, encoding="utf-8")
    except OSError as exc:
        raise UsageError(str(exc)) from None
    words: list[CircularWord] = []
    length = None
    with handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                w = parse_word(text, k)
            except ValueError as exc:
                raise UsageError(f"line {lineno}: {exc}") from None
            if length is None:
                length = len(w)
            elif len(w) != length:
                raise UsageError(f"line {lineno}: word of length {len(w)}, expected {length}")
            words.append(w)
    if not words:
        raise UsageError(f"{path}: no words")
    alphabet = k if k is not None else max(w.k for w in words)
    return UniformLanguage(frozenset(w.letters for w in words), alphabet)


def cmd_sc(args) -> int:
    try:
        if args.conjugates_of is not None:
            w = _read_word(args.conjugates_of, args.k)
            lang = UniformLanguage.conjugates_of(w)
            report = verify_conjugate_theorem(w)
        else:
            lang = _read_language(args.words, args.k)
            report = verify_theorem1(lang)
    except TheoremViolation as exc:
        _err(f"bound violated: {exc}")
        return EXIT_FALSE
    if args.format == "json":
        _out(report.to_json())
    elif args.format == "dot":
        _out(dfa_to_dot(minimal_dfa(lang), show_dead=not args.no_dead))
    else:
        _out(f"sc={report.sc} bound={report.bound} equality={str(report.equality).lower()}")
        _out(f"m={report.m} N={report.N} k={report.k} r={report.r} v={report.v}")
        _out(f"d={report.d} refined_bound={report.refined_bound}")
        _out(f"condition_a={report.condition_a} condition_b={report.condition_b}")
        if report.generalized_de_bruijn is not None:
            _out(f"generalized_de_bruijn={str(report.generalized_de_bruijn).lower()}")
        if report.kind == "uniform" and not report.bound_applies:
            note = "N = 3r" if report.N == 3 * report.r else f"N < 3r+1 = {3 * report.r + 1}"
            _out(f"note: {note}; the bound is not guaranteed here")
    return EXIT_OK


def _emit_count(result, fmt: str) -> None:
    data = result.to_dict()
    if fmt == "json":
        _out(json.dumps(data))
    elif fmt == "csv":
        _out(_csv(["N", "k", "least", "count", "complete"], [[data["N"], data["k"], data["least"], data["count"], data["complete"]]]))
    else:
        flag = "" if result.complete else "  (INCOMPLETE: budget exhausted)"
        _out(f"N={result.N} k={result.k} count={result.count} least={data['least']}{flag}")


def cmd_count(args) -> int:
    _check_nk(args.n, args.k)
    try:
        result = count_gdb(args.n, args.k, budget=_budget(args), jobs=args.jobs)
    except BudgetExceeded as exc:
        _err(f"budget exhausted: {exc}")
        if exc.partial is not None:
            _emit_count(exc.partial, args.format)
        return EXIT_BUDGET
    _emit_count(result, args.format)
    return EXIT_OK


def cmd_list(args) -> int:
    _check_nk(args.n, args.k)
    try:
        words = list_gdb(args.n, args.k, limit=args.limit, budget=_budget(args), jobs=args.jobs)
    except BudgetExceeded as exc:
        _err(f"budget exhausted: {exc}")
        return EXIT_BUDGET
    texts = [str(w) for w in words]
    if args.format == "json":
        _out(json.dumps({"N": args.n, "k": args.k, "words": texts}))
    elif args.format == "csv":
        _out(_csv(["word"], [[t] for t in texts]))
    else:
        _out("\n".join(texts) if texts else "")
    return EXIT_OK


def cmd_maxsc(args) -> int:
    _check_nk(args.n, args.k)
    try:
        result = max_sc_search(args.n, args.k, budget=_budget(args), jobs=args.jobs)
    except BudgetExceeded as exc:
        _err(f"budget exhausted: {exc}")
        return EXIT_BUDGET
    if args.format == "json":
        _out(json.dumps(result.to_dict()))
    elif args.format == "csv":
        _out(_csv(["k", "N", "max_sc", "words"], [[result.k, result.N, result.max_sc, ",".join(result.words)]]))
    else:
        _out(f"N={result.N} k={result.k} max_sc={result.max_sc} words={', '.join(result.words)}")
    return EXIT_OK


_TABLE_HEADERS = {
    1: ["N", "least", "count"],
    2: ["N", "max_sc"],
    3: ["k", "N", "words"],
    4: ["N", "count"],
}


def cmd_table(args) -> int:
    budget = _budget(args)
    try:
        if args.table == 1:
            rows = table1_rows(args.max_n or 22, budget, args.jobs, min_n=args.min_n or 1)
        elif args.table == 2:
            rows = table2_rows(args.max_n or 10, budget, args.jobs, min_n=args.min_n or 1)
        elif args.table == 3:
            rows = table3_rows(budget, args.jobs, max_n=args.max_n)
        else:
            rows = table4_rows(args.max_n or 33, budget, args.jobs, min_n=args.min_n or 32, formula_only=args.formula)
    except BudgetExceeded as exc:
        _err(f"budget exhausted: {exc}; output is partial")
        return EXIT_BUDGET

    header = list(_TABLE_HEADERS[args.table])
    body = []
    for row in rows:
        values = [",".join(row.values)] if args.table == 3 else list(row.values)
        line = list(row.key) + values
        if args.verify:
            line.append({True: "ok", False: "MISMATCH", None: "no reference"}[row.matches])
        body.append(line)
    if args.verify:
        header.append("verify")

    if args.format == "json":
        _out(json.dumps([dict(zip(header, line)) for line in body]))
    elif args.format == "csv":
        _out(_csv(header, body))
    else:
        _out(_aligned(header, body))
    if args.verify and any(row.matches is not True for row in rows):
        return EXIT_FALSE
    return EXIT_OK


def cmd_dot(args) -> int:
    if args.graph is not None:
        n, k = args.graph
        if k < 2 or n < 0:
            raise UsageError("need order n >= 0 and alphabet size k >= 2")
        if k**n > args.max_vertices:
            raise UsageError(f"G_{n}^{k} has {k**n} vertices, above the cap of {args.max_vertices}")
        _out(to_dot(DeBruijnSubgraph.full(k, n), name=f"G_{n}_{k}"))
    else:
        lang = _read_language(args.dfa_of, args.k)
        _out(dfa_to_dot(minimal_dfa(lang), show_dead=not args.no_dead))
    return EXIT_OK


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-nodes", type=int, default=None, help="search node limit (env GDB_MAX_NODES)")
    p.add_argument("--max-seconds", type=float, default=None, help="wall-clock limit (env GDB_MAX_SECONDS)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes; output does not depend on it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gdebruijn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="print a generalized de Bruijn word")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="test whether a word is generalized de Bruijn")
    p.add_argument("word", nargs="?", help="word, or '-' / omitted to read stdin")
    p.add_argument("--k", type=int, default=None, help="alphabet size (default: largest letter + 1, at least 2)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sc", help="state complexity of a uniform-length language")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--words", help="file with one word per line ('-' for stdin)")
    src.add_argument("--conjugates-of", help="use the set of rotations of this word")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.add_argument("--no-dead", action="store_true", help="omit the dead state in dot output")
    p.set_defaults(func=cmd_sc)

    for name, func, help_text in [
        ("count", cmd_count, "count generalized de Bruijn words up to rotation"),
        ("list", cmd_list, "list least rotations of generalized de Bruijn words"),
        ("maxsc", cmd_maxsc, "maximum sc(C(w)) over all words of length N"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, default=2)
        p.add_argument("--format", choices=["text", "json", "csv"], default="text")
        if name == "list":
            p.add_argument("--limit", type=int, default=None)
        _add_budget(p)
        p.set_defaults(func=func)

    p = sub.add_parser("table", help="recompute a published table")
    p.add_argument("--table", type=int, choices=[1, 2, 3, 4], required=True)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--min-n", type=int, default=None)
    p.add_argument("--verify", action="store_true", help="compare with the embedded reference values")
    p.add_argument("--formula", action="store_true", help="table 4: only rows N = 2^n, by the closed form")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    _add_budget(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("dot", help="graphviz source for G_n^k or a minimal DFA")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", type=int, nargs=2, metavar=("N", "K"))
    src.add_argument("--dfa-of", metavar="FILE")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--no-dead", action="store_true")
    p.add_argument("--max-vertices", type=int, default=MAX_DOT_VERTICES)
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _err(f"{parser.prog} {args.command}: error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
