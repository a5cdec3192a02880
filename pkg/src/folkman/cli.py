"""Command-line front end.

Subcommands: sums, color, prob, verify, bound-table, exact, cnf,
check-cert.  Exit codes: 0 the requested check passed, 1 it failed or was
inconclusive, 2 usage error, 3 malformed input, 4 file I/O failure.

Outputs are reproducible byte for byte: every report records the run
configuration (k, n, seeds, mode, version) in its header and contains no
timestamps; thread counts never change any output.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import __version__
from .bounds import check_first_moment, table_to_csv
from .coloring import (
    coloring_to_text,
    doubling_coloring,
    exact_mono_probability,
    load_coloring,
    mc_mono_frequency,
    uniform_coloring,
)
from .errors import BudgetExceeded, FolkmanError, RejectedInput
from .search import folkman_exact, import_model, parse_model_text, to_cnf
from .sumset_core import as_kset, equal_sum_disjoint_pair, finite_sums, is_sum_distinct
from .verifier import find_witness, verify_theorem, witness_line

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BAD_INPUT = 3
EXIT_IO = 4


def _parse_set(text: str) -> tuple:
    try:
        parts = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise RejectedInput(f"malformed set literal {text!r}") from None
    return as_kset(parts)


def _emit(out_path: Optional[str], text: str) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as f:
            f.write(text)


def _fmt_set(a) -> str:
    return "{" + ",".join(str(x) for x in a) + "}"


def _cmd_sums(args) -> int:
    a = _parse_set(args.set)
    s = finite_sums(a)
    lines = [
        f"# folkman v{__version__} sums set={','.join(map(str, a))}",
        "sums " + ",".join(str(x) for x in s.members()),
        f"count {s.count}",
        f"sum_distinct {'true' if is_sum_distinct(a) else 'false'}",
    ]
    pair = equal_sum_disjoint_pair(a)
    if pair is None:
        lines.append("pair none")
    else:
        lines.append(f"pair {_fmt_set(pair.first)} {_fmt_set(pair.second)}")
    _emit(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_color(args) -> int:
    if args.kind == "doubling":
        c = doubling_coloring(args.n, args.seed)
    else:
        c = uniform_coloring(args.n, args.seed)
    _emit(args.out, coloring_to_text(c))
    return EXIT_OK


def _cmd_prob(args) -> int:
    a = _parse_set(args.set)
    p = exact_mono_probability(a)
    log2 = "-inf" if p.impossible else str(p.numerator_log2)
    lines = [
        f"# folkman v{__version__} prob set={','.join(map(str, a))} mc={args.mc}",
        f"exact probability={p.probability()} log2={log2} "
        f"distinct_odd_parts={p.distinct_odd_parts}",
    ]
    if args.mc:
        freq = mc_mono_frequency(a, args.mc)
        lines.append(f"montecarlo seeds={args.mc} frequency={freq!r}")
    _emit(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = verify_theorem(
        args.k, args.seeds, mode=args.mode, threads=args.threads, n=args.n
    )
    lines = [
        f"# folkman v{__version__} verify k={args.k} n={report.n} "
        f"seeds=0..{args.seeds - 1} mode={args.mode}"
    ]
    if args.verbose:
        for seed, w in report.per_seed:
            if w is None:
                lines.append(f"seed={seed} witnesses=0")
            else:
                c = doubling_coloring(report.n, seed)
                lines.append(witness_line(w, c))
    lines.append(report.summary_line())
    _emit(args.out, "\n".join(lines) + "\n")
    return EXIT_OK if report.witnesses_found == 0 else EXIT_CHECK_FAILED


def _cmd_bound_table(args) -> int:
    rows = check_first_moment(args.kmin, args.kmax, exact_limit=args.exact_limit)
    header = (
        f"# folkman v{__version__} bound-table kmin={args.kmin} "
        f"kmax={args.kmax} exact_limit={args.exact_limit}\n"
    )
    _emit(args.out, header + table_to_csv(rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_CHECK_FAILED


def _cmd_exact(args) -> int:
    lines = [
        f"# folkman v{__version__} exact k={args.k} nmax={args.nmax} "
        f"budget={args.budget}"
    ]
    mismatches = []

    def sink(n: int, sat: Optional[bool], nodes: int) -> None:
        word = "none" if sat is None else ("true" if sat else "false")
        row = f"n={n} satisfiable={word} nodes={nodes}"
        if args.naive:
            from .search import enumerate_decide

            ref = enumerate_decide(n, args.k)
            row += f" naive={'true' if ref else 'false'}"
            if ref != sat:
                mismatches.append(n)
        lines.append(row)

    try:
        value = folkman_exact(
            args.k,
            args.nmax,
            constraint_budget=args.budget,
            node_budget=args.budget,
            sink=sink,
        )
    except BudgetExceeded as e:
        lines.append(f"inconclusive nodes={e.nodes}")
        _emit(args.out, "\n".join(lines) + "\n")
        print(f"folkman: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    lines.append(f"F k={args.k} value={value if value is not None else 'none'}")
    _emit(args.out, "\n".join(lines) + "\n")
    if mismatches:
        print(
            f"folkman: decide and the naive enumerator disagree at n={mismatches}",
            file=sys.stderr,
        )
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _cmd_cnf(args) -> int:
    _emit(args.out, to_cnf(args.n, args.k))
    return EXIT_OK


def _cmd_check_cert(args) -> int:
    if args.coloring is not None:
        c = load_coloring(args.coloring)
    else:
        if args.n is None:
            raise RejectedInput("--model needs --n to size the coloring")
        with open(args.model) as f:
            model = parse_model_text(f.read())
        c = import_model(model, args.n)
    w = find_witness(c, args.k, mode="generic", threads=args.threads)
    head = f"# folkman v{__version__} check-cert k={args.k} n={c.n} kind={c.kind}"
    if w is None:
        _emit(args.out, head + "\ncertificate ok\n")
        return EXIT_OK
    _emit(args.out, head + "\ncertificate invalid " + witness_line(w, c) + "\n")
    return EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="folkman",
        description="Folkman-number lower bound machinery: sum sets, "
        "doubling colorings, bound tables, witness search, exact tiny-k "
        "values, CNF export.",
    )
    ap.add_argument("--version", action="version", version=f"folkman {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sums", help="print S(A), sum-distinctness, equal-sum pair")
    p.add_argument("--set", required=True, help="comma-separated elements, e.g. 1,2,3")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sums)

    p = sub.add_parser("color", help="emit a coloring file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=("uniform", "doubling"), default="doubling")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("prob", help="exact (and Monte Carlo) monochromatic probability")
    p.add_argument("--set", required=True)
    p.add_argument("--mc", type=int, default=0, help="Monte Carlo seed count")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_prob)

    p = sub.add_parser("verify", help="witness-freeness over sampled doubling colorings")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument(
        "--mode",
        choices=("generic", "sum-distinct-pruned"),
        default="sum-distinct-pruned",
    )
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--n", type=int, default=None, help="override the default n")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bound-table", help="CSV of the first-moment chain")
    p.add_argument("--kmin", type=int, default=4)
    p.add_argument("--kmax", type=int, default=64)
    p.add_argument("--exact-limit", type=int, default=24, dest="exact_limit")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bound_table)

    p = sub.add_parser("exact", help="exact F(k) sweep for tiny k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument(
        "--naive", action="store_true", help="cross-check each n against enumeration"
    )
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("cnf", help="export DIMACS CNF")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_cnf)

    p = sub.add_parser("check-cert", help="validate a coloring or solver model")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--coloring", default=None, help="coloring file to validate")
    src.add_argument("--model", default=None, help="solver model file")
    p.add_argument("--n", type=int, default=None, help="n for --model")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_check_cert)

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse already printed usage or version info
        return int(e.code) if e.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except RejectedInput as e:
        print(f"folkman: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as e:
        print(f"folkman: {e}", file=sys.stderr)
        return EXIT_IO
    except BudgetExceeded as e:
        print(f"folkman: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except FolkmanError as e:
        print(f"folkman: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
