"""Command-line interface.

Subcommands:
    chains    full eigenstructure of a matrix file (or one factor of it)
    factors   factored characteristic polynomial
    minpolys  minimal annihilating polynomial of every basis vector
    genmat    deterministic block-structure test matrix generator
    bench     seeded benchmark suites with per-stage timings

Exit codes: 0 success, 2 chain verification failure, 3 input error.
All input and output is exact; floats never appear.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import bench_suite, format_table
from .genmat import block_matrix, block_spec, scramble
from .io import format_matrix, parse_matrix, read_matrix, write_matrix
from .pipeline import PipelineOptions, report_to_json, run_full
from .poly import PolyQ, format_poly, format_poly_coeffs, parse_poly

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_INPUT = 3


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with the input-error exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _factored_str(factorization) -> str:
    return str(factorization)


def _load_matrix(path: str):
    if path == "-":
        return parse_matrix(sys.stdin.read())
    return read_matrix(path)


def cmd_chains(args) -> int:
    a = _load_matrix(args.matrix)
    options = PipelineOptions(
        use_reduction=not args.no_reduce,
        verify=args.verify,
        jobs=args.jobs,
        factor=parse_poly(args.factor) if args.factor else None,
    )
    report = run_full(a, options)
    print(f"matrix order {report.n}")
    print(f"characteristic polynomial: {_factored_str(report.char_factorization)}")
    for fr in report.factor_reports:
        counts = ", ".join(f"{c} of length {l}" for l, c in sorted(fr.basis_counts.items(), reverse=True))
        print(f"factor {format_poly(fr.factor)}: multiplicity {fr.char_multiplicity}, "
              f"tower height {fr.min_multiplicity}, chains: {counts}")
        for i, chain in enumerate(fr.chains, start=1):
            print(f"  chain {i} (length {chain.length}):")
            for k, pv in zip(range(chain.length, 0, -1), chain.vectors):
                entries = "; ".join(format_poly(pv.entry(row)) for row in range(pv.order))
                print(f"    p^({k}) = [{entries}]")
        if fr.verifications is not None:
            for i, verification in enumerate(fr.verifications, start=1):
                status = "ok" if verification.passed else "FAILED"
                print(f"  chain {i} verification: {status}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report_to_json(report), fh, indent=2)
        print(f"wrote {args.json}")
    if args.verify and not report.verified:
        print("chain verification FAILED", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_factors(args) -> int:
    a = _load_matrix(args.matrix)
    from .annihilator import build_annihilator_table

    table = build_annihilator_table(a)
    for f, m in table.char_factorization:
        print(f"{format_poly(f)}   multiplicity {m}   coeffs {format_poly_coeffs(f)}")
    return EXIT_OK


def cmd_minpolys(args) -> int:
    a = _load_matrix(args.matrix)
    from .annihilator import build_annihilator_table

    table = build_annihilator_table(a)
    for j, pi in enumerate(table.min_polys, start=1):
        parts = []
        for data in table.factors:
            exponent = data.exponents[j - 1]
            if exponent == 1:
                parts.append(f"({format_poly(data.poly)})")
            elif exponent > 1:
                parts.append(f"({format_poly(data.poly)})^{exponent}")
        print(f"{j}: {' '.join(parts) if parts else format_poly(pi)}")
    return EXIT_OK


def _parse_spec(text: str):
    blocks = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        poly_text, _, lengths_text = part.partition(":")
        if not lengths_text:
            raise ValueError(f"malformed block spec {part!r}; expected '<coeffs>:<l1,l2,...>'")
        f = parse_poly(poly_text)
        lengths = [int(x) for x in lengths_text.split(",") if x.strip()]
        blocks.append((f, lengths))
    return block_spec(blocks)


def cmd_genmat(args) -> int:
    spec = _parse_spec(args.spec)
    a = block_matrix(spec)
    if args.steps != 0:
        a = scramble(a, seed=args.seed, steps=args.steps, coeff_bound=args.coeff_bound)
    if args.output == "-":
        sys.stdout.write(format_matrix(a))
    else:
        write_matrix(args.output, a)
        print(f"wrote {args.output} (order {spec.order})")
    return EXIT_OK


def cmd_bench(args) -> int:
    degrees = [int(x) for x in args.degrees.split(",") if x.strip()]
    rows = bench_suite(args.suite, degrees, args.seed,
                       use_reduction=not args.no_reduce, verify=not args.no_verify)
    sys.stdout.write(format_table(rows))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([row.as_dict() for row in rows], fh, indent=2)
        print(f"wrote {args.json}")
    if any(not row.verified for row in rows):
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="geneig",
                     description="Exact generalized eigenspaces as symbolic Jordan chains")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chains", parents=[], help="compute Jordan chains of a matrix file")
    p.add_argument("matrix", help="matrix file path, or - for stdin")
    p.add_argument("--factor", help="restrict to one irreducible factor "
                                    "(ascending coefficients, e.g. 5,1,1)")
    p.add_argument("--no-reduce", action="store_true",
                   help="disable the generating-set reduction heuristic")
    p.add_argument("--verify", action="store_true",
                   help="verify every chain symbolically; exit 2 on failure")
    p.add_argument("--jobs", type=int, default=1, help="factors processed in parallel")
    p.add_argument("--json", help="write the full report as JSON to this path")
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("factors", help="factored characteristic polynomial")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_factors)

    p = sub.add_parser("minpolys", help="minimal annihilating polynomial per basis vector")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_minpolys)

    p = sub.add_parser("genmat", help="generate a block-structure test matrix")
    p.add_argument("--spec", required=True,
                   help="'<coeffs>:<l1,l2,...>[;<coeffs>:<...>]', e.g. '5,1,1:3,2;−2,1:1'".replace("−", "-"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=None,
                   help="elementary similarity steps (default 4n; 0 disables)")
    p.add_argument("--coeff-bound", type=int, default=2)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_genmat)

    p = sub.add_parser("bench", help="run a benchmark suite")
    p.add_argument("--suite", required=True, choices=["paper71", "paper72"])
    p.add_argument("--degrees", required=True, help="comma-separated factor degrees, e.g. 2,4,6")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-reduce", action="store_true")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--json", help="write machine-readable rows to this path")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (OSError, ValueError) as exc:
        print(f"geneig: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
