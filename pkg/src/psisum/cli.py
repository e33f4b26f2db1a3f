"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
3 size cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import catalog, harness
from .arith import is_prime, psi_cyclic, ratio_to_decimal
from .bounds import BoundContext, check_prop22, f, g, odd_order_bound
from .groups import CapExceeded, FiniteGroup, from_permutations, psi, read_permutation_file

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    target: Optional[str] = None
    fmt: str = "plain"
    out: Optional[str] = None
    cache: Optional[str] = None
    jobs: int = 1
    max_n: int = 1000
    perm_file: Optional[str] = None


def _group_from_args(cfg: CliConfig) -> FiniteGroup:
    if cfg.perm_file:
        if cfg.target:
            raise UsageError("give either a descriptor or --perm-file, not both")
        try:
            gens = read_permutation_file(cfg.perm_file)
        except OSError as exc:
            raise UsageError(str(exc)) from exc
        return from_permutations(gens)
    if not cfg.target:
        raise UsageError("a descriptor or --perm-file is required")
    return catalog.build(cfg.target)


def _table(header: Sequence[str], rows: list[list], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() for r in [header, *rows]]
    return "\n".join(lines) + "\n"


def _emit(text: str, cfg: CliConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _odd_order(cfg: CliConfig) -> int:
    try:
        n = int(cfg.target)
    except (TypeError, ValueError):
        raise UsageError(f"expected an odd order, got {cfg.target!r}") from None
    if n < 1 or n % 2 == 0:
        raise UsageError(f"order must be odd and positive, got {n}")
    if n > catalog.ENUM_CAP:
        raise CapExceeded(f"order {n} exceeds the enumeration cap {catalog.ENUM_CAP}")
    return n


def cmd_psi(cfg: CliConfig) -> int:
    _emit(f"{psi(_group_from_args(cfg))}\n", cfg)
    return EXIT_OK


def cmd_ratio(cfg: CliConfig) -> int:
    G = _group_from_args(cfg)
    x = Fraction(psi(G), psi_cyclic(G.order))
    _emit(f"{x.numerator}/{x.denominator} ({ratio_to_decimal(x)})\n", cfg)
    return EXIT_OK


def cmd_bounds(cfg: CliConfig) -> int:
    try:
        q = int(cfg.target)
    except (TypeError, ValueError):
        raise UsageError(f"expected an odd prime, got {cfg.target!r}") from None
    if q < 3 or not is_prime(q):
        raise UsageError(f"expected an odd prime, got {q}")
    ctx = BoundContext.for_prime(q)
    verdict = check_prop22(q)
    header = ["q", "p", "q1", "f_q", "f_p", "g_q_q1", "g_q_q1_vs_f_p", "odd_order_bound"]
    row = [q, ctx.p, ctx.q1, f(q), f(ctx.p), g(q, ctx.q1), verdict.value, odd_order_bound(q)]
    if cfg.fmt == "plain":
        lines = [f"{h} = {v}" + (f" ({ratio_to_decimal(v)})" if isinstance(v, Fraction) else "") for h, v in zip(header, row)]
        _emit("\n".join(lines) + "\n", cfg)
    else:
        _emit(_table(header, [[str(v) for v in row]], cfg.fmt), cfg)
    return EXIT_OK


def cmd_enumerate(cfg: CliConfig) -> int:
    n = _odd_order(cfg)
    prof = harness.order_profile(n)
    rows = [
        [n, prof.tier.value, c.descriptor, c.psi, str(Fraction(c.psi, prof.psi_cyclic))]
        for c in sorted(prof.classes, key=lambda c: c.descriptor)
    ]
    _emit(_table(["n", "tier", "descriptor", "psi", "ratio"], rows, cfg.fmt), cfg)
    return EXIT_OK


def cmd_scan(cfg: CliConfig) -> int:
    n = _odd_order(cfg)
    tier = harness.order_profile(n).tier.value
    rows = [
        [n, tier, d, value, str(x), ratio_to_decimal(x)]
        for d, value, x in harness.scan_extremal(n)
    ]
    _emit(_table(["n", "tier", "descriptor", "psi", "ratio", "decimal"], rows, cfg.fmt), cfg)
    return EXIT_OK


def cmd_verify(cfg: CliConfig) -> int:
    if cfg.target not in harness.THEOREM_IDS:
        raise UsageError(f"unknown id {cfg.target!r}; choose from {', '.join(harness.THEOREM_IDS)}")
    report = harness.run(cfg.target, cfg.max_n, jobs=cfg.jobs)
    _emit(harness.FORMATTERS[cfg.fmt](report), cfg)
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {
    "psi": cmd_psi,
    "ratio": cmd_ratio,
    "bounds": cmd_bounds,
    "enumerate": cmd_enumerate,
    "scan": cmd_scan,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("csv", "json", "plain"), default="plain")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--cache", metavar="PATH", help="JSON file of enumerated descriptors by order")
    common.add_argument("--jobs", type=int, default=1, metavar="K")

    parser = argparse.ArgumentParser(prog="psisum", description="Sums of element orders of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("psi", "sum of element orders"), ("ratio", "psi(G)/psi(C_n)")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("target", nargs="?", metavar="DESCRIPTOR")
        p.add_argument("--perm-file", metavar="PATH", help="one generator per line, cycle notation")
    p = sub.add_parser("bounds", parents=[common], help="bound values for an odd prime q")
    p.add_argument("target", metavar="Q")
    for name, helptext in (("enumerate", "classes of an odd order"), ("scan", "classes by psi, descending")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("target", metavar="N")
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("target", metavar="ID", help=", ".join(harness.THEOREM_IDS))
    p.add_argument("--max-n", type=int, default=1000)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = CliConfig(
        command=args.command,
        target=args.target,
        fmt=args.fmt,
        out=args.out,
        cache=args.cache,
        jobs=args.jobs,
        max_n=getattr(args, "max_n", 1000),
        perm_file=getattr(args, "perm_file", None),
    )
    if cfg.jobs < 1:
        print("psisum: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        if cfg.cache:
            harness.load_cache(cfg.cache)
        code = COMMANDS[cfg.command](cfg)
        if cfg.cache:
            harness.save_cache(cfg.cache)
        return code
    except (UsageError, catalog.DescriptorError, ValueError) as exc:
        print(f"psisum: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"psisum: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
