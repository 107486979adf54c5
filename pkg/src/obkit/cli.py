"""Command-line interface.

Exit codes: 0 success, 1 validation error, 2 unsupported (non-planar) page.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import contact, homology, openbook, search
from .fileformat import ParseError, parse_open_book, serialize_open_book
from .homology import AbelianGroup

EXIT_OK, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise openbook.ValidationError(message)


def _load(path: str) -> openbook.OpenBook:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise openbook.ValidationError(f"{path}: {exc.strerror}") from None
    try:
        return parse_open_book(text)
    except ParseError as exc:
        raise openbook.ValidationError(f"{path}: {exc}") from None


def _holes(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise openbook.ValidationError(f"bad hole list {text!r}") from None


def _sign(text: str) -> int:
    table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    if text not in table:
        raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")
    return table[text]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="obkit", description="Planar open book toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("norm", "h1", "catalog"):
        sub.add_parser(name).add_argument("file")

    p = sub.add_parser("plumb")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("stabilize")
    p.add_argument("file")
    p.add_argument("--sign", type=_sign, default=1)
    p.add_argument("--holes", default="", help="comma-separated attach holes")

    p = sub.add_parser("seifert")
    for name in ("p", "q", "r"):
        p.add_argument(name, type=int)

    p = sub.add_parser("d3")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("search")
    p.add_argument("--max-boundary", type=int, default=3)
    p.add_argument("--min-boundary", type=int, default=1)
    p.add_argument("--max-total-exponent", type=int, default=4)
    p.add_argument("--exponent-bound", type=int)
    p.add_argument("--target", help="group such as 'Z/5' or 'Z^2 + Z/2'")
    p.add_argument("--norm-cap", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mode", choices=("report", "cg", "additivity"), default="report")

    p = sub.add_parser("verify-annulus")
    p.add_argument("m", type=int)
    return parser


def _dispatch(args) -> str:
    cmd = args.command
    if cmd == "norm":
        return str(openbook.norm(_load(args.file)))
    if cmd == "h1":
        return str(homology.h1(_load(args.file)))
    if cmd == "catalog":
        entry = contact.catalog_lookup(_load(args.file))
        if entry is None:
            return "not in catalog"
        return (
            f"manifold: {entry.manifold_name}\n"
            f"structure: {entry.label}\n"
            f"h1: {entry.h1}\n"
            f"hg_upper_bound: {entry.hg_upper_bound}"
        )
    if cmd == "plumb":
        return serialize_open_book(openbook.plumb(_load(args.a), _load(args.b))).rstrip("\n")
    if cmd == "stabilize":
        ob = openbook.stabilize(_load(args.file), args.sign, _holes(args.holes))
        return serialize_open_book(ob).rstrip("\n")
    if cmd == "seifert":
        return str(homology.seifert_h1(args.p, args.q, args.r))
    if cmd == "d3":
        try:
            a, b = contact.HalfInteger.parse(args.a), contact.HalfInteger.parse(args.b)
        except ValueError as exc:
            raise openbook.ValidationError(str(exc)) from None
        return str(contact.d3_connected_sum(a, b))
    if cmd == "search":
        try:
            target = AbelianGroup.parse(args.target) if args.target else None
            config = search.SearchConfig(
                max_boundary=args.max_boundary,
                max_total_exponent=args.max_total_exponent,
                exponent_bound=args.exponent_bound,
                target=target,
                norm_cap=args.norm_cap,
                min_boundary=args.min_boundary,
            )
        except ValueError as exc:
            raise openbook.ValidationError(str(exc)) from None
        if args.mode == "cg":
            if target is None:
                raise openbook.ValidationError("--mode cg needs --target")
            found = search.cg_upper_bound(config)
            if found is None:
                return f"no open book with H1 = {target} within bounds"
            ob, n = found
            return (
                f"norm {n}: upper bound for cg of some manifold with H1 = {target}\n"
                + serialize_open_book(ob).rstrip("\n")
            )
        if args.mode == "additivity":
            return search.additivity_csv(search.additivity_experiment(config, args.jobs)).rstrip("\n")
        return search.search(config, jobs=args.jobs).to_csv().rstrip("\n")
    if cmd == "verify-annulus":
        try:
            return search.verify_annulus_family(args.m).to_text().rstrip("\n")
        except ValueError as exc:
            raise openbook.ValidationError(str(exc)) from None
    raise AssertionError(cmd)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    # fractions like -1/2 would otherwise be read as options
    if argv and argv[0] in ("d3", "seifert") and "--" not in argv:
        argv.insert(1, "--")
    try:
        args = build_parser().parse_args(argv)
        out = _dispatch(args)
    except openbook.UnsupportedPageError as exc:
        print(f"unsupported page: {exc}", file=stderr)
        return EXIT_UNSUPPORTED
    except (ParseError, openbook.ValidationError, contact.PreconditionError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    print(out, file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
