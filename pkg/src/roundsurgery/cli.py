"""Command-line front end.

Every subcommand is a thin shim over one library operation: it reads diagram
files (``-`` for standard input), calls the operation, and writes either a
canonical diagram or a stable key:value report to standard output.

Exit codes: 0 success, 1 parse diagnostics or validation violations,
2 an operation rejected its input, 3 search exhausted without a result.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import analysis, homology
from .bridge import (
    BridgeError,
    KirbyDiagram,
    dehn_to_joint_pairs,
    joint_pair_to_dehn,
    kirby_to_round1,
    round1_to_kirby,
)
from .model import DehnDiagram, RoundDiagram, SurgeryError
from .moves import MoveDescriptor, MoveKind, apply_move, bounded_equivalence_search
from .textio import ParseError, parse, print_diagram, validate_any

_RANGE_RE = re.compile(r"(-?[0-9]+)\.\.(-?[0-9]+)\Z")

_KIND_ALIASES = {v.value.lower(): v for v in MoveKind}
_KIND_ALIASES.update(
    {
        "kirby1_add": MoveKind.KIRBY1_ADD,
        "kirby1_del": MoveKind.KIRBY1_DEL,
        "kirby2_slide": MoveKind.KIRBY2_SLIDE,
        "eq_move1": MoveKind.EQ_MOVE1,
        "shuffle_a": MoveKind.SHUFFLE_A,
        "shuffle_b": MoveKind.SHUFFLE_B,
        "eq_move3_add": MoveKind.EQ_MOVE3_ADD,
        "eq_move3_del": MoveKind.EQ_MOVE3_DEL,
        "eq_move4": MoveKind.EQ_MOVE4,
    }
)

#  friendly --args key -> MoveDescriptor field
_ARG_FIELDS = {
    "pair": "pair",
    "i": "pair",
    "pair2": "pair2",
    "j": "pair2",
    "component": "component",
    "a": "component",
    "c": "component",
    "component2": "component2",
    "b": "component2",
    "variant": "variant",
    "k": "k",
    "k1": "k",
    "k2": "k2",
    "delta": "delta",
    "sign": "sign",
}
_INT_FIELDS = {"pair", "pair2", "k", "k2", "delta", "sign"}


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load(path: str, want: type | None = None):
    try:
        doc = parse(_read(path))
    except ParseError as exc:
        for d in exc.diagnostics:
            print(f"{path}:{d}", file=sys.stderr)
        raise _CliError("input does not parse", 1) from exc
    if want is not None and not isinstance(doc.diagram, want):
        raise _CliError(f"{path}: expected a {want.__name__} document, got {doc.kind}", 2)
    return doc.diagram


def _parse_ks(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise _CliError(f"bad k list {text!r}", 2) from exc


def _parse_range(text: str) -> range:
    m = _RANGE_RE.match(text)
    if not m:
        raise _CliError(f"bad range {text!r}, expected A..B", 2)
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise _CliError(f"empty range {text!r}", 2)
    return range(lo, hi + 1)


def _parse_move(kind_text: str, args_text: str) -> MoveDescriptor:
    kind = _KIND_ALIASES.get(kind_text.lower())
    if kind is None:
        raise _CliError(f"unknown move kind {kind_text!r}", 2)
    fields: dict[str, object] = {}
    if args_text:
        for piece in args_text.split(","):
            name, sep, value = piece.partition("=")
            if not sep:
                raise _CliError(f"bad move argument {piece!r}, expected key=value", 2)
            field = _ARG_FIELDS.get(name.strip())
            if field is None:
                raise _CliError(f"unknown move argument {name!r}", 2)
            value = value.strip()
            if field in _INT_FIELDS:
                try:
                    value = int(value)
                except ValueError as exc:
                    raise _CliError(f"argument {name} must be an integer, got {value!r}", 2) from exc
            fields[field] = value
    return MoveDescriptor(kind, **fields)


def _cmd_validate(args) -> int:
    try:
        doc = parse(_read(args.file))
    except ParseError as exc:
        for d in exc.diagnostics:
            print(f"{args.file}:{d}")
        return 1
    violations = validate_any(doc.diagram)
    if violations:
        for v in violations:
            print(f"violation: {v}")
        return 1
    print("ok")
    return 0


def _cmd_to_dehn(args) -> int:
    r = _load(args.file, RoundDiagram)
    print(print_diagram(joint_pair_to_dehn(r)), end="")
    return 0


def _cmd_to_round(args) -> int:
    d = _load(args.file, DehnDiagram)
    result = dehn_to_joint_pairs(d, _parse_ks(args.k), int(args.pad_sign))
    print(print_diagram(result), end="")
    return 0


def _cmd_kirby_export(args) -> int:
    r = _load(args.file, RoundDiagram)
    print(print_diagram(round1_to_kirby(r)), end="")
    return 0


def _cmd_kirby_import(args) -> int:
    k = _load(args.file, KirbyDiagram)
    print(print_diagram(kirby_to_round1(k)), end="")
    return 0


def _cmd_move(args) -> int:
    diagram = _load(args.file)
    move = _parse_move(args.kind, args.args)
    print(print_diagram(apply_move(diagram, move)), end="")
    return 0


def _cmd_homology(args) -> int:
    diagram = _load(args.file)
    if isinstance(diagram, RoundDiagram):
        group = homology.first_homology_round(diagram)
    elif isinstance(diagram, DehnDiagram):
        group = homology.first_homology(diagram)
    else:
        raise _CliError("homology of a KIRBY document is not defined here", 2)
    print(f"H1: {group}")
    return 0


def _cmd_is_trivial(args) -> int:
    r = _load(args.file, RoundDiagram)
    print(f"trivial: {'true' if analysis.is_trivial(r) else 'false'}")
    return 0


def _cmd_split(args) -> int:
    r = _load(args.file, RoundDiagram)
    blocks = analysis.split_connected_sum(r)
    print("\n".join(print_diagram(b) for b in blocks), end="")
    return 0


def _cmd_suture(args) -> int:
    r = _load(args.file, RoundDiagram)
    w = analysis.suture_slope(r, args.pair)
    print(f"pair: {w.pair_index}")
    print(f"n: {w.n}")
    print(f"slope: {w.slope}")
    return 0


def _cmd_foliations(args) -> int:
    r = _load(args.file, RoundDiagram)
    result = analysis.taut_foliation_family(r, args.pair, _parse_range(args.range))
    if isinstance(result, analysis.FoliationRefusal):
        print(f"refused: {result.reason}")
    else:
        for w in result:
            print(f"foliation: n={w.n} slope={w.slope}")
    return 0


def _cmd_search(args) -> int:
    r1 = _load(args.file1, RoundDiagram)
    r2 = _load(args.file2, RoundDiagram)
    found = bounded_equivalence_search(r1, r2, args.depth, _parse_range(args.k_range))
    if found is None:
        print("no move sequence found within the depth bound", file=sys.stderr)
        return 3
    for move in found:
        print(move.to_line())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roundsurgery",
        description="Round surgery diagram calculus: conversions, moves, homology.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        return p

    p = cmd("validate", _cmd_validate, "check a diagram file, report violations")
    p.add_argument("file")
    p = cmd("to-dehn", _cmd_to_dehn, "joint pairs -> integral Dehn diagram")
    p.add_argument("file")
    p = cmd("to-round", _cmd_to_round, "integral Dehn diagram -> joint pairs")
    p.add_argument("file")
    p.add_argument("--k", default="", help="comma-separated k, one per resulting pair")
    p.add_argument("--pad-sign", default="1", choices=("+1", "1", "-1"), help="framing of the padding unknot")
    p = cmd("kirby-export", _cmd_kirby_export, "pure round 1-surgery pair -> Kirby diagram")
    p.add_argument("file")
    p = cmd("kirby-import", _cmd_kirby_import, "Kirby diagram -> pure round 1-surgery pair")
    p.add_argument("file")
    p = cmd("move", _cmd_move, "apply one move and print the result")
    p.add_argument("file")
    p.add_argument("--kind", required=True)
    p.add_argument("--args", default="", help="comma-separated key=value move arguments")
    p = cmd("homology", _cmd_homology, "first homology of the presented manifold")
    p.add_argument("file")
    p = cmd("is-trivial", _cmd_is_trivial, "is every round 2-surgery coefficient 1/0?")
    p.add_argument("file")
    p = cmd("split", _cmd_split, "split into connected-sum summands")
    p.add_argument("file")
    p = cmd("suture", _cmd_suture, "suture slope lk - n of one pair")
    p.add_argument("file")
    p.add_argument("--pair", type=int, required=True)
    p = cmd("foliations", _cmd_foliations, "taut foliation witnesses for a range of n")
    p.add_argument("file")
    p.add_argument("--pair", type=int, required=True)
    p.add_argument("--range", required=True, help="inclusive A..B")
    p = cmd("search", _cmd_search, "bounded breadth-first move-sequence search")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--k-range", dest="k_range", required=True, help="inclusive A..B")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (BridgeError, SurgeryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
