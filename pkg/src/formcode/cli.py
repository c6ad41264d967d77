"""Command-line front end: ``formcode <subcommand> [options]``.

Exit status 0 on success, 1 on a domain error (one line on stderr of the
form ``error kind=<tag> reason=<text>``), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import codes
from .channel import ChannelConfig, simulate
from .codes import CSV_HEADER, build_code, build_family_code, code_params, read_generators, table_row
from .errors import FormcodeError
from .gf import field_for_order
from .homopoly import count_normalized, format_poly
from .irreducibles import count_irreducible
from .subspace import dist, load_subspace


def _add_space(p: argparse.ArgumentParser, need_e: bool = True) -> None:
    p.add_argument("--q", type=int, default=2, help="field order (prime power)")
    p.add_argument("--n", type=int, default=2, help="number of variables minus one")
    if need_e:
        p.add_argument("--e", type=int, required=True, help="generator degree")


def _add_family(p: argparse.ArgumentParser, custom: bool = True) -> None:
    choices = ["irr", "linear", "custom"] if custom else ["irr", "linear"]
    p.add_argument("--family", choices=choices, default="irr")
    if custom:
        p.add_argument("--generators", help="file of generator polynomials (family custom)")
    p.add_argument(
        "--override-capacity", action="store_true", help="lift the enumeration guard"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="formcode", description="Equidistant subspace codes from coprime forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="print N(e) and I(e)")
    _add_space(p)
    p.add_argument("--csv", action="store_true", help="emit q,n,e,N_e,I_e")

    p = sub.add_parser("enumerate", help="stream the generators of a family")
    _add_space(p)
    _add_family(p, custom=False)

    p = sub.add_parser("build", help="write a code in the text serialization")
    _add_space(p)
    _add_family(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("params", help="print the parameter CSV row of a code")
    _add_space(p)
    _add_family(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="check every pairwise distance by rank computation")
    p.add_argument("--no-header", action="store_true")

    p = sub.add_parser("table", help="parameter grid over e <= e-max, d <= d-max")
    _add_space(p, need_e=False)
    p.add_argument("--e-max", type=int, default=5)
    p.add_argument("--d-max", type=int, default=10)
    p.add_argument("--family", choices=["irr", "linear"], default="irr")

    p = sub.add_parser("dist", help="subspace distance between two subspace files")
    p.add_argument("file_a")
    p.add_argument("file_b")

    p = sub.add_parser("simulate", help="channel simulation with minimum-distance decoding")
    _add_space(p)
    _add_family(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--rho", type=int, default=0)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-header", action="store_true")
    return parser


def _code_from_args(args) -> codes.SubspaceCode:
    if args.family == "custom":
        if not args.generators:
            raise FormcodeError("family custom needs --generators FILE")
        with open(args.generators, encoding="utf-8") as fh:
            gens = read_generators(fh, args.q, args.n)
        if any(g.e != args.e for g in gens):
            raise FormcodeError(f"generators must all have degree {args.e}")
        return build_code(gens, args.d, tag="custom")
    return build_family_code(args.family, args.q, args.n, args.e, args.d, args.override_capacity)


def _cmd_count(args, out) -> None:
    q = field_for_order(args.q).q
    n_e, i_e = count_normalized(q, args.n, args.e), count_irreducible(q, args.n, args.e)
    if args.csv:
        print("q,n,e,N_e,I_e", file=out)
        print(f"{q},{args.n},{args.e},{n_e},{i_e}", file=out)
    else:
        print(f"N={n_e}", file=out)
        print(f"I={i_e}", file=out)


def _cmd_enumerate(args, out) -> None:
    for g in codes.family_generators(args.family, args.q, args.n, args.e, args.override_capacity):
        print(format_poly(g), file=out)


def _cmd_build(args, out) -> None:
    code = _code_from_args(args)
    if args.out:
        codes.save_code(code, args.out)
    else:
        codes.write_code(code, out)


def _cmd_params(args, out) -> None:
    q = field_for_order(args.q).q
    if args.verify or args.family == "custom":
        code = _code_from_args(args)
        params = code_params(code, verify=args.verify)
        row = codes.TableRow(args.e, args.d, params, args.d == 2 * args.e)
    else:
        row = table_row(q, args.n, args.e, args.d, codes.family_size(args.family, q, args.n, args.e))
    if not args.no_header:
        print(CSV_HEADER, file=out)
    print(row.csv(), file=out)


def _cmd_table(args, out) -> None:
    print(CSV_HEADER, file=out)
    for row in codes.parameter_table(args.q, args.n, args.e_max, args.d_max, args.family):
        print(row.csv(), file=out)


def _cmd_dist(args, out) -> None:
    print(dist(load_subspace(args.file_a), load_subspace(args.file_b)), file=out)


def _cmd_simulate(args, out) -> None:
    code = _code_from_args(args)
    report = simulate(code, ChannelConfig(args.rho, args.t, args.seed), args.trials)
    if not args.no_header:
        print(report.CSV_HEADER, file=out)
    print(report.csv(), file=out)
    print(f"# rng={report.rng}", file=sys.stderr)


COMMANDS = {
    "count": _cmd_count,
    "enumerate": _cmd_enumerate,
    "build": _cmd_build,
    "params": _cmd_params,
    "table": _cmd_table,
    "dist": _cmd_dist,
    "simulate": _cmd_simulate,
}


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args, out)
    except FormcodeError as exc:
        reason = " ".join(str(exc).split())
        print(f"error kind={exc.kind} reason={reason}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error kind=io reason={exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
