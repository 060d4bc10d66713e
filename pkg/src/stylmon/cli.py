"""Command-line interface.

Exit codes: 0 success / identity holds, 1 identity fails / nothing found,
2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import congruence, stylic, tropical, verify
from .words import OversizedInputError, Word

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def dump_json(obj) -> str:
    """The single structured-output format; stable so that parse + re-dump is byte-identical."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _word(text: str, rank: int) -> Word:
    try:
        return Word.parse(text, rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _identity(text: str, involution: bool = False) -> congruence.Identity:
    try:
        return congruence.Identity.parse(text, involution or None)
    except congruence.IdentityParseError as exc:
        raise UsageError(str(exc)) from exc


def _table(rank: int) -> stylic.MonoidTable:
    try:
        return stylic.enumerate_monoid(rank)
    except OversizedInputError as exc:
        raise UsageError(f"{exc} (raise it with STYLIC_MAX_RANK)") from exc


def cmd_tableau(args) -> tuple[int, dict, str]:
    t = stylic.n_tableau(_word(args.word, args.rank))
    return EXIT_OK, {"word": args.word, "rank": args.rank, "tableau": t.to_json()}, str(t)


def cmd_matrix(args) -> tuple[int, dict, str]:
    w = _word(args.word, args.rank)
    m = tropical.rho(w)
    if args.semiring == "trunc":
        m = tropical.truncate(m, args.rank)
    elif args.semiring == "bool":
        m = tropical.to_boolean(m)
    record = {"word": args.word, "rank": args.rank, "semiring": str(m.kind), "matrix": m.to_json()}
    return EXIT_OK, record, str(m)


def cmd_check(args) -> tuple[int, dict, str]:
    ident = _identity(args.identity, args.involution)
    if ident.involution:
        method = "brute-force"
        verdict = congruence.brute_force_check(ident, _table(args.rank))
    else:
        method = "simon"
        verdict = congruence.check_identity_styl(ident, args.rank)
    record = {"identity": str(ident), "rank": args.rank, "method": method, **verdict.to_json()}
    if verdict.holds:
        text = f"{ident} holds in styl_{args.rank}"
    elif verdict.witness_kind == "word":
        text = (
            f"{ident} fails in styl_{args.rank}\n"
            f"witness: {verdict.witness['word']} is a subsequence of the {verdict.witness['side']} only"
        )
    else:
        ev = ", ".join(f"{x} -> {w}" for x, w in verdict.witness["evaluation"].items())
        text = (
            f"{ident} fails in styl_{args.rank}\nevaluation: {ev}\n"
            f"lhs -> {verdict.witness['lhs']}, rhs -> {verdict.witness['rhs']}"
        )
    return (EXIT_OK if verdict.holds else EXIT_NEGATIVE), record, text


def cmd_witness(args) -> tuple[int, dict, str]:
    ident = _identity(args.identity)
    if ident.involution:
        raise UsageError("witness construction needs an identity without stars")
    if congruence.check_identity_styl(ident, args.rank).holds:
        return EXIT_NEGATIVE, {"identity": str(ident), "rank": args.rank, "witness": None}, (
            f"{ident} holds in styl_{args.rank}; no witness"
        )
    wit = congruence.witness_evaluation(ident, args.rank)
    lines = [
        f"{ident} fails in styl_{args.rank}",
        f"distinguishing word: {congruence.format_varword(wit.word)} ({wit.side})",
        "evaluation: " + ", ".join(f"{x} -> {w}" for x, w in sorted(wit.values.items())),
        f"letter {wit.target} reaches row {wit.target} on the {wit.side} only",
        "N(lhs):",
        str(wit.lhs_tableau),
        "N(rhs):",
        str(wit.rhs_tableau),
    ]
    return EXIT_OK, wit.to_json(), "\n".join(lines)


def cmd_enumerate(args) -> tuple[int, dict, str]:
    m = _table(args.rank)
    record: dict = {"rank": args.rank, "size": len(m), "zero_index": m.zero_index}
    lines = [f"|styl_{args.rank}| = {len(m)}"]
    if args.table:
        names = [str(stylic.canonical_word(t)) for t in m.elements]
        record["elements"] = names
        record["product"] = [list(r) for r in m.product]
        record["involution"] = list(m.involution)
        width = max(len(s) for s in names)
        lines.append(" " * width + " | " + " ".join(s.rjust(width) for s in names))
        for name, row in zip(names, m.product):
            lines.append(name.rjust(width) + " | " + " ".join(names[j].rjust(width) for j in row))
    if args.jtrivial:
        record["j_trivial"] = stylic.is_j_trivial(m)
        lines.append(f"J-trivial: {record['j_trivial']}")
    return EXIT_OK, record, "\n".join(lines)


def cmd_verify(args) -> tuple[int, dict, str]:
    results = verify.run_all(args.rank, seed=args.seed, samples=args.samples)
    ok = all(r.passed for r in results)
    record = {
        "rank": args.rank,
        "seed": args.seed,
        "samples": args.samples,
        "passed": ok,
        "suites": [r.to_json() for r in results],
    }
    lines = [f"verify rank={args.rank} seed={args.seed} samples={args.samples}"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"  {status} {r.name}: {r.checked} checks, {r.mismatches} mismatches")
    return (EXIT_OK if ok else EXIT_NEGATIVE), record, "\n".join(lines)


def cmd_search(args) -> tuple[int, dict, str]:
    ident = _identity(args.identity)
    res = congruence.tropical_counterexample_search(
        ident, args.rank, entry_bound=args.bound, budget=args.budget, seed=args.seed
    )
    record = {"identity": str(ident), "rank": args.rank, **res.to_json()}
    head = f"search {ident} in U_{args.rank + 1}(T): seed={res.seed} bound={res.entry_bound} budget={res.budget}"
    if not res.found:
        return EXIT_NEGATIVE, record, f"{head}\nnot found after {res.samples} samples"
    lines = [head, f"found after {res.samples} samples"]
    for x, m in sorted(res.assignment.items()):
        lines += [f"{x} =", str(m)]
    lines += ["lhs =", str(res.lhs), "rhs =", str(res.rhs)]
    return EXIT_OK, record, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stylmon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *, word=False, identity=False):
        p = sub.add_parser(name, help=help_text)
        if word:
            p.add_argument("word")
        if identity:
            p.add_argument("identity", help='e.g. "xxyx = xyxx"')
        p.add_argument("--rank", "-n", type=int, required=True)
        p.add_argument("--json", action="store_true", help="print one JSON document")
        p.set_defaults(func=func)
        return p

    add("tableau", cmd_tableau, "print the N-tableau of a word", word=True)
    p = add("matrix", cmd_matrix, "print the tropical image of a word", word=True)
    p.add_argument("--semiring", choices=("trop", "trunc", "bool"), default="trop")
    p = add("check", cmd_check, "decide an identity in styl_n", identity=True)
    p.add_argument("--involution", action="store_true", help="treat as an involution identity")
    add("witness", cmd_witness, "build a falsifying evaluation", identity=True)
    p = add("enumerate", cmd_enumerate, "enumerate styl_n")
    p.add_argument("--table", action="store_true", help="include the Cayley table")
    p.add_argument("--jtrivial", action="store_true", help="test J-triviality")
    p = add("verify", cmd_verify, "run the seeded oracle suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p = add("search", cmd_search, "search U_{n+1}(T) for a counterexample", identity=True)
    p.add_argument("--bound", type=int, default=congruence.SEARCH_ENTRY_BOUND)
    p.add_argument("--budget", type=int, default=congruence.SEARCH_BUDGET)
    p.add_argument("--seed", type=int, default=congruence.SEARCH_SEED)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.rank < 1:
        parser.error("--rank must be >= 1")
    try:
        code, record, text = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(dump_json(record) if args.json else text, file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
