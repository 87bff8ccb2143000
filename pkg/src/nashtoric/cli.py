"""Command-line interface.

Exit codes:
    0   success (iterate: every branch ended smooth)
    1   verify-counterexample: at least one check failed
    2   usage or input-file parse error
    3   generated semigroup is not pointed
    4   requested base has zero determinant
    5   generators do not span the full lattice
    6   requested base column is not in the Hilbert basis
    10  iterate: a cycle (chart isomorphic to an ancestor) was found
    11  iterate: depth limit reached with open branches and no cycle
    12  iterate: exploration truncated by a resource guard
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import lattice
from .blowup import REJECTED, chart_with_explicit_generators, enumerate_bases
from .driver import IterationOptions, check_against, iterate, write_log
from .errors import DegenerateInputError, DimensionError, LatticeSpanError, NotPointedError, SingularMatrixError
from .semigroup import DEFAULT_SIEVE_DEPTH, AffineSemigroup, hilbert_basis, pointedness_certificate
from .verify import perturbed_b, run_checks

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_NOT_POINTED = 3
EXIT_SINGULAR_BASE = 4
EXIT_NOT_SPANNING = 5
EXIT_BASE_NOT_IN_BASIS = 6
EXIT_CYCLE = 10
EXIT_DEPTH_EXHAUSTED = 11
EXIT_TRUNCATED = 12


class InputError(Exception):
    pass


def parse_matrix(text: str) -> list[lattice.Vector]:
    """Parse whitespace-separated integer rows; returns the columns."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in stripped.split()])
        except ValueError:
            raise InputError(f"line {lineno}: expected integers, got {stripped!r}") from None
    if not rows:
        raise InputError("no matrix rows found")
    if any(len(r) != len(rows[0]) for r in rows):
        raise InputError("rows have different lengths")
    if len(rows[0]) < len(rows):
        raise InputError(f"need at least {len(rows)} columns for rank {len(rows)}")
    return lattice.columns(rows)


def format_matrix(cols: Sequence[Sequence[int]], indent: str = "") -> str:
    """Rows of the matrix with the given columns, right-aligned."""
    if not cols:
        return indent + "(empty)"
    width = max(len(str(x)) for c in cols for x in c)
    return "\n".join(indent + " ".join(str(x).rjust(width) for x in row) for row in zip(*cols))


def read_matrix_file(path) -> list[lattice.Vector]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from None
    return parse_matrix(text)


def _print_semigroup(s: AffineSemigroup, out) -> None:
    print(f"hilbert basis ({len(s.hilbert_basis)} elements, as columns):", file=out)
    print(format_matrix(s.hilbert_basis, "  "), file=out)
    print("certificate: " + " ".join(map(str, s.certificate)), file=out)


def cmd_hilbert_basis(args, out) -> int:
    cols = read_matrix_file(args.input)
    nonzero = [c for c in cols if any(c)]
    if not nonzero:
        raise InputError("all columns are zero")
    if pointedness_certificate(nonzero) is None:
        print("pointed: no", file=out)
        return EXIT_NOT_POINTED
    s = hilbert_basis(cols, sieve_depth=args.sieve_depth)
    print("pointed: yes", file=out)
    _print_semigroup(s, out)
    return EXIT_OK


def cmd_blowup(args, out) -> int:
    cols = read_matrix_file(args.input)
    if args.explicit_generators:
        gens = list(cols)
        index_map = list(range(len(cols)))
    else:
        s = hilbert_basis(cols, sieve_depth=args.sieve_depth)
        members = set(s.hilbert_basis)
        # keep the file's column order so --base indices refer to the file
        index_map, gens = [], []
        for i, c in enumerate(cols):
            if c in members and c not in gens:
                index_map.append(i)
                gens.append(c)
    print("generators (as columns):", file=out)
    print(format_matrix(gens, "  "), file=out)
    if args.base:
        try:
            wanted = [int(t) - 1 for t in args.base.split(",")]
        except ValueError:
            raise InputError(f"bad --base value {args.base!r}") from None
        base = []
        for i in wanted:
            if i not in index_map:
                print(f"error: column {i + 1} is not a Hilbert basis element", file=out)
                return EXIT_BASE_NOT_IN_BASIS
            base.append(index_map.index(i))
        d = len(gens[0])
        if len(base) != d:
            raise InputError(f"--base needs {d} indices")
        det = lattice.det_columns([gens[i] for i in base])
        if det == 0:
            print(f"error: base {args.base} has zero determinant", file=out)
            return EXIT_SINGULAR_BASE
        bases = [tuple(base)]
    else:
        bases = enumerate_bases(gens)
    for b in bases:
        chart = chart_with_explicit_generators(gens, b, sieve_depth=args.sieve_depth,
                                               time_budget=args.time_budget)
        label = ",".join(str(index_map[i] + 1) for i in b)
        print(f"\nchart base {label}  det {chart.base_det}", file=out)
        print(f"G_A ({len(chart.ga_set)} elements):", file=out)
        print(format_matrix(chart.ga_set, "  "), file=out)
        if chart.result == REJECTED:
            print("S_A: non-pointed (rejected)", file=out)
        elif isinstance(chart.result, str):
            print(f"S_A: {chart.result}", file=out)
        else:
            smooth = len(chart.result.hilbert_basis) == chart.result.rank and lattice.is_unimodular(
                chart.result.hilbert_basis)
            print("S_A: smooth" if smooth else "S_A:", file=out)
            _print_semigroup(chart.result, out)
    return EXIT_OK


def cmd_iterate(args, out) -> int:
    seed = read_matrix_file(args.input)
    targets = [hilbert_basis(read_matrix_file(p)) for p in args.check_against]
    options = IterationOptions(sieve_depth=args.sieve_depth, global_dedup=not args.no_global_dedup,
                               max_charts=args.max_charts, time_budget=args.time_budget)
    report = iterate(seed, args.max_depth, options, workers=args.workers)
    if args.log:
        write_log(report, args.log)
    print(f"nodes: {len(report.nodes)}", file=out)
    for depth, counts in sorted(report.statistics.items()):
        summary = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
        print(f"depth {depth}: {summary}", file=out)
    for node_id, anc, w in report.cycles:
        n = report.node(node_id)
        print(f"cycle: node {node_id} (depth {n.depth}) is isomorphic to ancestor {anc}", file=out)
        print(f"  map rows: {[list(r) for r in w.matrix]}", file=out)
    for j, path in enumerate(args.check_against):
        for node_id, tj, w in check_against(report, targets[j:j + 1]):
            n = report.node(node_id)
            print(f"hit: node {node_id} (depth {n.depth}, {n.status}) is isomorphic to {path}", file=out)
            print(f"  map rows: {[list(r) for r in w.matrix]}", file=out)
    for node_id, why in report.truncations:
        print(f"warning: truncated at node {node_id}: {why}", file=out)
    if report.truncated:
        print("result: truncated", file=out)
        return EXIT_TRUNCATED
    if report.cycles:
        print("result: cycle found", file=out)
        return EXIT_CYCLE
    if report.terminated:
        print("result: terminated", file=out)
        return EXIT_OK
    print("result: depth exhausted", file=out)
    return EXIT_DEPTH_EXHAUSTED


def cmd_verify(args, out) -> int:
    results = run_checks(perturbed_b()) if args.perturb else run_checks()
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        print(f"[{tag}] {r.name}" + (f"  ({r.detail})" if r.detail else ""), file=out)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=out)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nashtoric", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--sieve-depth", type=int, default=DEFAULT_SIEVE_DEPTH)
        p.add_argument("--time-budget", type=float, default=None,
                       help="seconds allowed per chart Hilbert basis")

    p = sub.add_parser("hilbert-basis", help="Hilbert basis and pointedness certificate")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_hilbert_basis)

    p = sub.add_parser("blowup", help="charts of one Nash blowup")
    p.add_argument("input")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--base", help="1-based column indices, e.g. 1,4,6")
    g.add_argument("--all", action="store_true", help="every nonsingular base (default)")
    p.add_argument("--explicit-generators", action="store_true",
                   help="use the file's columns verbatim instead of the Hilbert basis")
    common(p)
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("iterate", help="iterated Nash blowups with cycle detection")
    p.add_argument("input")
    p.add_argument("--max-depth", type=int, required=True)
    p.add_argument("--log")
    p.add_argument("--check-against", action="append", default=[], metavar="FILE")
    p.add_argument("--max-charts", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-global-dedup", action="store_true")
    common(p)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("verify-counterexample", help="check every claim about the built-in example")
    p.add_argument("--perturb", action="store_true", help="test mode: use a corrupted B")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except (InputError, DegenerateInputError, DimensionError) as exc:
        print(f"error: {exc}", file=out)
        return EXIT_PARSE
    except NotPointedError as exc:
        print(f"pointed: no ({exc})", file=out)
        return EXIT_NOT_POINTED
    except SingularMatrixError as exc:
        print(f"error: {exc}", file=out)
        return EXIT_SINGULAR_BASE
    except LatticeSpanError as exc:
        print(f"error: {exc}", file=out)
        return EXIT_NOT_SPANNING


if __name__ == "__main__":
    sys.exit(main())
