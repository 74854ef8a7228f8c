"""Batch command-line front end.

    unified-apostol gen --k 1 --m 1 --alphas 1 --order 4 --format csv
    unified-apostol verify --suite all --seed 7 --report json
    unified-apostol basis --family stirling2 --n 4
    unified-apostol bbh --x 1 --a 1 --b 2 --k 1 --m 1 --order 2

Exit codes: 0 success, 1 a verification FAIL, 2 mathematical-domain error,
64 usage error. Rationals are read and written as ``p/q`` strings.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import __version__
from . import combinatorial_bases as cb
from .exact_algebra import ArgumentError, PoleError, XPoly, as_fraction
from .reports import FAIL, INCONCLUSIVE, fmt
from .suite import SUITES, SuiteConfig, run_suite
from .unified_family import DEFAULT_ORDER, FamilyParams, family_numbers, family_polynomials

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64

FORMATS = ("table", "csv", "json")
BASIS_FAMILIES = (
    "stirling1", "stirling2", "genstirling1", "genstirling2", "lah", "hermite", "laguerre", "jacobi",
)

log = logging.getLogger("unified_apostol")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class OutputDocument:
    format: str
    payload: dict
    rows: tuple[tuple[str, ...], ...] = ()  # csv rows
    lines: tuple[str, ...] = ()  # table lines

    def render(self) -> str:
        if self.format == "json":
            return json.dumps(self.payload, indent=2) + "\n"
        if self.format == "csv":
            return "".join(",".join(row) + "\n" for row in self.rows)
        return "".join(line + "\n" for line in self.lines)


# ---------------------------------------------------------------------------
# argument types


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ArgumentError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_list(text: str) -> tuple[Fraction, ...]:
    if not text.strip():
        return ()
    return tuple(_rational(part.strip()) for part in text.split(","))


def _natural(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = _natural(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


_NEGATIVE = re.compile(r"^-\d")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse would read "--log-a -1/2" as two flags; rewrite it as "--log-a=-1/2"
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


# ---------------------------------------------------------------------------
# formatting helpers


def _coeff_strings(p: XPoly) -> list[str]:
    return [fmt(c) for c in p.coeffs] or ["0"]


def _aligned(rows: Sequence[Sequence[str]]) -> list[str]:
    if not rows:
        return []
    widths = [max(len(r[i]) for r in rows if i < len(r)) for i in range(max(map(len, rows)))]
    return ["  ".join(cell.rjust(widths[i]) for i, cell in enumerate(r)).rstrip() for r in rows]


def _params_from(args) -> FamilyParams:
    if args.r is not None and args.r != len(args.alphas):
        raise UsageError(f"--r {args.r} does not match {len(args.alphas)} value(s) in --alphas")
    return FamilyParams(args.k, args.m, args.alphas, args.log_a, args.log_b, args.log_c)


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args) -> OutputDocument:
    params = _params_from(args)
    N = args.order
    payload = {"params": params.to_dict(), "order": N}
    if args.numbers:
        values = family_numbers(params, N)
        payload["numbers"] = [fmt(v) for v in values]
        rows = ((*payload["numbers"],),)
        lines = tuple(_aligned([["n", "M_n"]] + [[str(n), fmt(v)] for n, v in enumerate(values)]))
        return OutputDocument(args.format, payload, rows, lines)
    polys = family_polynomials(params, N)
    if args.at is not None:
        values = polys.at(args.at)
        payload["at"] = fmt(args.at)
        payload["values"] = [fmt(v) for v in values]
        rows = ((*payload["values"],),)
        head = ["n", f"M_n({fmt(args.at)})"]
        lines = tuple(_aligned([head] + [[str(n), fmt(v)] for n, v in enumerate(values)]))
        return OutputDocument(args.format, payload, rows, lines)
    payload["polynomials"] = [[fmt(c) for c in p.coeffs] for p in polys]
    rows = tuple((str(n), *_coeff_strings(p)) for n, p in enumerate(polys))
    lines = tuple(f"M_{n}(x) = {p}" for n, p in enumerate(polys))
    return OutputDocument(args.format, payload, rows, lines)


def cmd_verify(args) -> OutputDocument:
    cfg = SuiteConfig(args.suite, args.order, args.samples, args.seed, args.factorial_mode)
    reports = run_suite(cfg)
    counts = {v: sum(r.verdict == v for r in reports) for v in ("PASS", FAIL, INCONCLUSIVE)}
    payload = {
        "params": {
            "suite": cfg.suite, "samples": cfg.samples, "seed": cfg.seed,
            "factorial_mode": cfg.factorial_mode,
        },
        "order": cfg.order,
        "summary": counts,
        "reports": [r.to_dict() for r in reports],
    }
    rows = [("id", "verdict", "residual", "params")]
    lines = []
    for r in reports:
        rows.append((r.id, r.verdict, r.residual.to_dict()["kind"], json.dumps(r.params)))
        lines.append(f"{r.id:<18} {r.verdict:<12} {r.params}")
        for note in r.notes:
            lines.append(f"{'':<18} note: {note}")
    lines.append(f"total {len(reports)}: " + ", ".join(f"{k} {v}" for k, v in counts.items()))
    return OutputDocument(args.format, payload, tuple(rows), tuple(lines))


def _triangle(mat: cb.ConnectionMatrix) -> list[list[str]]:
    return [[str(n)] + [fmt(mat(n, k)) for k in range(len(mat.entries[n]))] for n in range(mat.n_max + 1)]


def cmd_basis(args) -> OutputDocument:
    fam, n = args.family, args.n
    params = {"family": fam, "n": n}
    if fam in ("stirling1", "stirling2"):
        kind = cb.Kind.FIRST if fam == "stirling1" else cb.Kind.SECOND
        table = _triangle(cb.stirling_matrix(kind, n))
    elif fam in ("genstirling1", "genstirling2"):
        if args.nodes is None:
            raise UsageError(f"--nodes is required for {fam}")
        kind = cb.Kind.FIRST if fam == "genstirling1" else cb.Kind.SECOND
        params["nodes"] = [fmt(a) for a in args.nodes]
        table = _triangle(cb.gen_stirling_matrix(kind, n, args.nodes))
    elif fam == "lah":
        if args.nodes is None or args.target_nodes is None:
            raise UsageError("lah needs --nodes (source) and --target-nodes")
        r = args.r if args.r is not None else n
        params.update(r=r, nodes=[fmt(a) for a in args.nodes], target_nodes=[fmt(b) for b in args.target_nodes])
        table = _triangle(cb.gen_lah(r, args.nodes, args.target_nodes, n))
    else:
        p = cb.classical_orthopoly(fam, n, args.alpha, args.beta)
        if fam != "hermite":
            params["alpha"] = fmt(args.alpha)
        if fam == "jacobi":
            params["beta"] = fmt(args.beta)
        payload = {"params": params, "order": n, "polynomials": [[fmt(c) for c in p.coeffs]]}
        return OutputDocument(args.format, payload, ((*_coeff_strings(p),),), (f"{fam}_{n}(x) = {p}",))
    payload = {"params": params, "order": n, "triangle": [row[1:] for row in table]}
    return OutputDocument(args.format, payload, tuple(map(tuple, table)), tuple(_aligned(table)))


def cmd_bbh(args) -> OutputDocument:
    values = cb.bbh_basis(args.x, args.k, args.m, args.a, args.b, args.order, args.factorial_mode)
    params = {
        "x": fmt(args.x), "a": fmt(args.a), "b": fmt(args.b), "k": args.k, "m": args.m,
        "factorial_mode": cb.FactorialMode(args.factorial_mode).value,
    }
    payload = {"params": params, "order": args.order, "values": [fmt(v) for v in values]}
    lines = _aligned([["n", "p_n"]] + [[str(n), fmt(v)] for n, v in enumerate(values)])
    return OutputDocument(args.format, payload, ((*payload["values"],),), tuple(lines))


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unified-apostol", description="Exact unified Apostol-type polynomials and identity checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="coefficient table of M_0..M_N")
    gen.add_argument("--k", type=_natural, required=True)
    gen.add_argument("--m", type=_positive, required=True)
    gen.add_argument("--r", type=_natural, help="checked against the length of --alphas")
    gen.add_argument("--alphas", type=_rational_list, required=True, help="comma-separated rationals")
    gen.add_argument("--log-a", type=_rational, default=Fraction(0))
    gen.add_argument("--log-b", type=_rational, default=Fraction(1))
    gen.add_argument("--log-c", type=_rational, default=Fraction(1))
    gen.add_argument("--order", type=_natural, default=DEFAULT_ORDER)
    gen.add_argument("--numbers", action="store_true", help="print M_n(0) instead of polynomials")
    gen.add_argument("--at", type=_rational, help="evaluate the polynomials at this rational")
    gen.add_argument("--format", choices=FORMATS, default="csv")
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", help="run the identity verification suite")
    ver.add_argument("--suite", choices=("all",) + SUITES, default="all")
    ver.add_argument("--order", type=_natural, default=10)
    ver.add_argument("--samples", type=_natural, default=5)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--factorial-mode", choices=[m.value for m in cb.FactorialMode],
                     default=cb.DEFAULT_FACTORIAL_MODE.value)
    ver.add_argument("--report", "--format", dest="format", choices=FORMATS, default="table")
    ver.set_defaults(func=cmd_verify)

    bas = sub.add_parser("basis", help="Stirling, Lah and orthogonal-polynomial tables")
    bas.add_argument("--family", choices=BASIS_FAMILIES, required=True)
    bas.add_argument("--n", type=_natural, required=True)
    bas.add_argument("--nodes", type=_rational_list)
    bas.add_argument("--target-nodes", type=_rational_list)
    bas.add_argument("--r", type=_natural, help="Lah column count (defaults to --n)")
    bas.add_argument("--alpha", type=_rational, default=Fraction(0))
    bas.add_argument("--beta", type=_rational, default=Fraction(0))
    bas.add_argument("--format", choices=FORMATS, default="csv")
    bas.set_defaults(func=cmd_basis)

    bbh = sub.add_parser("bbh", help="unified Bleimann-Butzer-Hahn basis values")
    for name in ("--x", "--a", "--b"):
        bbh.add_argument(name, type=_rational, required=True)
    bbh.add_argument("--k", type=_natural, required=True)
    bbh.add_argument("--m", type=_positive, default=1)
    bbh.add_argument("--order", type=_natural, default=DEFAULT_ORDER)
    bbh.add_argument("--factorial-mode", choices=[m.value for m in cb.FactorialMode],
                     default=cb.DEFAULT_FACTORIAL_MODE.value)
    bbh.add_argument("--format", choices=FORMATS, default="csv")
    bbh.set_defaults(func=cmd_bbh)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        doc = args.func(args)
    except UsageError as exc:
        print(f"unified-apostol: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PoleError as exc:
        print(f"unified-apostol: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ArgumentError as exc:
        print(f"unified-apostol: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(doc.render())
    if args.command == "verify":
        failed = [r["id"] for r in doc.payload["reports"] if r["verdict"] == FAIL]
        stray = [r["id"] for r in doc.payload["reports"] if r["verdict"] == INCONCLUSIVE and r["id"] != "LAH_9999"]
        if failed or stray:
            log.warning("failed: %s", ", ".join(failed + stray))
            return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
