"""The diagram DSL: a line-oriented parser and a canonical printer.

Grammar (one statement per line, ``#`` starts a comment, blank lines are
ignored on input):

    document := header line*
    header   := "ROUND" | "DEHN" | "KIRBY"
    comp     := "COMP" id "knot="expr ["framing="int] ["fibred"]
    pair     := "PAIR" id id "n1="int "n2="int ["m="rat]        (ROUND)
    loose    := "LOOSE" id "m="rat                              (ROUND)
    lk       := "LK" id id int
    handle1  := "HANDLE1" id                                    (KIRBY)
    handle2  := "HANDLE2" id "framing="int ["over="id:int{,id:int}]  (KIRBY)
    rat      := int | int "/" nat          (1/0 is the infinity slope)
    expr     := name | "band(" expr ",cable(" expr "," int "))"

DEHN components carry ``framing=``; ROUND and KIRBY components must not.
In KIRBY documents every COMP is the attaching knot of exactly one HANDLE2.

Canonical form (what :func:`print_diagram` emits, and what the 30-file test
corpus is byte-frozen against): LF line endings, single spaces, no comments,
COMP lines sorted by id, PAIR lines in diagram order, LOOSE/HANDLE/LK lines
sorted, zero linking entries omitted, integral slopes printed without a
denominator.  Printing then parsing is the identity on every valid diagram,
which makes the canonical text the structural-equality normal form used
across the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .bridge import KirbyDiagram, TwoHandle, validate_kirby
from .model import (
    Atom,
    BandSum,
    Cable,
    DehnDiagram,
    FramedComponent,
    JointPair,
    KnotExpr,
    LinkingMatrix,
    LooseKnot,
    Rational,
    RoundDiagram,
    validate_diagram,
)

AnyDiagram = Union[RoundDiagram, DehnDiagram, KirbyDiagram]

_ID_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.-]*\Z")
_INT_RE = re.compile(r"-?[0-9]+\Z")
_NAT_RE = re.compile(r"[0-9]+\Z")

HEADERS = ("ROUND", "DEHN", "KIRBY")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.message}"


class ParseError(Exception):
    """Raised when a document does not parse; carries every diagnostic."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


@dataclass
class DiagramDocument:
    """A parsed document: its header kind, the diagram value, and the source
    line of each component (for later tooling diagnostics)."""

    kind: str
    diagram: AnyDiagram
    positions: dict[str, int] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Scalar sub-parsers


def _parse_int(token: str, line: int, col: int, diags: list[Diagnostic]) -> Optional[int]:
    if not _INT_RE.match(token):
        diags.append(Diagnostic(line, col, f"expected an integer, got {token!r}"))
        return None
    return int(token)


def _parse_rational(token: str, line: int, col: int, diags: list[Diagnostic]) -> Optional[Rational]:
    if "/" in token:
        num, _, den = token.partition("/")
        if not _INT_RE.match(num) or not _NAT_RE.match(den):
            diags.append(Diagnostic(line, col, f"expected INT/NAT, got {token!r}"))
            return None
        return Rational(int(num), int(den))
    value = _parse_int(token, line, col, diags)
    return None if value is None else Rational(value)


def _parse_id(token: str, line: int, col: int, diags: list[Diagnostic]) -> Optional[str]:
    if not _ID_RE.match(token):
        diags.append(Diagnostic(line, col, f"invalid identifier {token!r}"))
        return None
    return token


class _KnotSyntax(Exception):
    def __init__(self, offset: int, message: str):
        self.offset = offset
        self.message = message


def _parse_knot(text: str) -> KnotExpr:
    expr, end = _knot_expr(text, 0)
    if end != len(text):
        raise _KnotSyntax(end, "trailing characters after knot expression")
    return expr


def _knot_expr(text: str, at: int) -> tuple[KnotExpr, int]:
    if text.startswith("band(", at):
        left, at = _knot_expr(text, at + len("band("))
        at = _expect(text, at, ",cable(")
        of, at = _knot_expr(text, at)
        at = _expect(text, at, ",")
        m = re.compile(r"-?[0-9]+").match(text, at)
        if not m:
            raise _KnotSyntax(at, "expected a framing integer")
        at = _expect(text, m.end(), "))")
        return BandSum(left, Cable(of, int(m.group()))), at
    m = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.-]*").match(text, at)
    if not m:
        raise _KnotSyntax(at, "expected a knot name or band(...)")
    return Atom(m.group()), m.end()


def _expect(text: str, at: int, want: str) -> int:
    if not text.startswith(want, at):
        raise _KnotSyntax(at, f"expected {want!r}")
    return at + len(want)


def _keyed(
    token: str, key: str, line: int, col: int, diags: list[Diagnostic]
) -> Optional[str]:
    prefix = key + "="
    if not token.startswith(prefix):
        diags.append(Diagnostic(line, col, f"expected {prefix}..., got {token!r}"))
        return None
    return token[len(prefix):]


# ---------------------------------------------------------------------------
# Statement records


@dataclass
class _Stmt:
    line: int
    kind: str
    tokens: list[tuple[str, int]]  # (token, column)


def _tokenize(raw: str) -> list[tuple[str, int]]:
    body = raw.split("#", 1)[0].rstrip("\r")
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", body)]


def parse(text: str) -> DiagramDocument:
    """Parse a document, or raise :class:`ParseError` carrying one
    positioned diagnostic per problem (lexical, syntactic and semantic)."""
    diags: list[Diagnostic] = []
    stmts: list[_Stmt] = []
    header: Optional[str] = None

    for line_no, raw in enumerate(text.split("\n"), start=1):
        tokens = _tokenize(raw)
        if not tokens:
            continue
        word, col = tokens[0]
        if header is None:
            if word in HEADERS and len(tokens) == 1:
                header = word
            else:
                diags.append(Diagnostic(line_no, col, f"expected a header (one of {', '.join(HEADERS)})"))
                header = "ROUND"  # keep scanning for more diagnostics
            continue
        if word in HEADERS:
            diags.append(Diagnostic(line_no, col, "duplicate header"))
            continue
        if word not in ("COMP", "PAIR", "LOOSE", "LK", "HANDLE1", "HANDLE2"):
            diags.append(Diagnostic(line_no, col, f"unknown statement {word!r}"))
            continue
        stmts.append(_Stmt(line_no, word, tokens[1:]))

    if header is None:
        diags.append(Diagnostic(1, 1, "empty document"))
        raise ParseError(diags)

    allowed = {
        "ROUND": {"COMP", "PAIR", "LOOSE", "LK"},
        "DEHN": {"COMP", "LK"},
        "KIRBY": {"COMP", "HANDLE1", "HANDLE2", "LK"},
    }[header]
    for s in stmts:
        if s.kind not in allowed:
            diags.append(Diagnostic(s.line, 1, f"{s.kind} is not allowed in a {header} document"))
    stmts = [s for s in stmts if s.kind in allowed]

    builder = {"ROUND": _build_round, "DEHN": _build_dehn, "KIRBY": _build_kirby}[header]
    diagram = builder(stmts, diags)
    if diags:
        raise ParseError(sorted(diags, key=lambda d: (d.line, d.col)))
    positions = {}
    for s in stmts:
        if s.kind in ("COMP", "HANDLE1", "HANDLE2") and s.tokens:
            positions.setdefault(s.tokens[0][0], s.line)
    return DiagramDocument(header, diagram, positions)


def _take(stmt: _Stmt, index: int, diags: list[Diagnostic], what: str) -> Optional[tuple[str, int]]:
    if index >= len(stmt.tokens):
        diags.append(Diagnostic(stmt.line, 1, f"{stmt.kind}: missing {what}"))
        return None
    return stmt.tokens[index]


def _no_extra(stmt: _Stmt, index: int, diags: list[Diagnostic]) -> None:
    if len(stmt.tokens) > index:
        token, col = stmt.tokens[index]
        diags.append(Diagnostic(stmt.line, col, f"unexpected token {token!r}"))


@dataclass
class _Comp:
    line: int
    id: str
    knot: KnotExpr
    framing: Optional[int]
    fibred: bool


def _parse_comp(
    stmt: _Stmt, diags: list[Diagnostic], expect_framing: bool, allow_fibred: bool = True
) -> Optional[_Comp]:
    before = len(diags)
    got = _take(stmt, 0, diags, "component id")
    if got is None:
        return None
    cid = _parse_id(got[0], stmt.line, got[1], diags)
    got = _take(stmt, 1, diags, "knot=EXPR")
    if got is None:
        return None
    knot_text = _keyed(got[0], "knot", stmt.line, got[1], diags)
    knot: Optional[KnotExpr] = None
    if knot_text is not None:
        try:
            knot = _parse_knot(knot_text)
        except _KnotSyntax as exc:
            col = got[1] + len("knot=") + exc.offset
            diags.append(Diagnostic(stmt.line, col, exc.message))
    index = 2
    framing = None
    if expect_framing:
        got = _take(stmt, index, diags, "framing=INT")
        if got is not None:
            value = _keyed(got[0], "framing", stmt.line, got[1], diags)
            if value is not None:
                framing = _parse_int(value, stmt.line, got[1] + len("framing="), diags)
        index += 1
    elif index < len(stmt.tokens) and stmt.tokens[index][0].startswith("framing="):
        token, col = stmt.tokens[index]
        diags.append(Diagnostic(stmt.line, col, "framing= is only allowed in DEHN documents"))
        index += 1
    fibred = False
    if allow_fibred and index < len(stmt.tokens) and stmt.tokens[index][0] == "fibred":
        fibred = True
        index += 1
    _no_extra(stmt, index, diags)
    if len(diags) > before or cid is None or knot is None:
        return None
    return _Comp(stmt.line, cid, knot, framing, fibred)


def _collect_comps(
    stmts: list[_Stmt], diags: list[Diagnostic], expect_framing: bool, allow_fibred: bool = True
) -> dict[str, _Comp]:
    comps: dict[str, _Comp] = {}
    for s in stmts:
        if s.kind != "COMP":
            continue
        comp = _parse_comp(s, diags, expect_framing, allow_fibred)
        if comp is None:
            continue
        if comp.id in comps:
            diags.append(Diagnostic(s.line, s.tokens[0][1], f"duplicate component {comp.id}"))
            continue
        comps[comp.id] = comp
    return comps


def _collect_lk(
    stmts: list[_Stmt], diags: list[Diagnostic], known: dict
) -> list[tuple[str, str, int]]:
    # known maps acceptable ids to anything; only membership matters
    entries: list[tuple[str, str, int]] = []
    seen: dict[tuple[str, str], tuple[int, int]] = {}
    for s in stmts:
        if s.kind != "LK":
            continue
        before = len(diags)
        ga = _take(s, 0, diags, "component id")
        gb = _take(s, 1, diags, "component id")
        gv = _take(s, 2, diags, "linking number")
        if None in (ga, gb, gv):
            continue
        a = _parse_id(ga[0], s.line, ga[1], diags)
        b = _parse_id(gb[0], s.line, gb[1], diags)
        v = _parse_int(gv[0], s.line, gv[1], diags)
        _no_extra(s, 3, diags)
        if len(diags) > before or a is None or b is None or v is None:
            continue
        if a == b:
            diags.append(Diagnostic(s.line, ga[1], f"linking of {a} with itself is not allowed"))
            continue
        for cid, col in ((a, ga[1]), (b, gb[1])):
            if cid not in known:
                diags.append(Diagnostic(s.line, col, f"unknown component {cid}"))
        if len(diags) > before:
            continue
        key = (a, b) if a <= b else (b, a)
        if key in seen:
            _, prev_v = seen[key]
            kind = "symmetry conflict" if prev_v != v else "duplicate entry"
            diags.append(
                Diagnostic(s.line, ga[1], f"linking of {key[0]} and {key[1]} already given ({kind})")
            )
            continue
        seen[key] = (s.line, v)
        entries.append((a, b, v))
    return entries


def _build_round(stmts: list[_Stmt], diags: list[Diagnostic]) -> RoundDiagram:
    comps = _collect_comps(stmts, diags, expect_framing=False)
    used: dict[str, int] = {}
    pairs: list[JointPair] = []
    loose: list[LooseKnot] = []

    def claim(cid: str, line: int, col: int) -> Optional[FramedComponent]:
        if cid not in comps:
            diags.append(Diagnostic(line, col, f"unknown component {cid}"))
            return None
        if cid in used:
            diags.append(Diagnostic(line, col, f"component {cid} already used on line {used[cid]}"))
            return None
        used[cid] = line
        c = comps[cid]
        return FramedComponent(c.id, c.knot, c.fibred)

    for s in stmts:
        if s.kind == "PAIR":
            before = len(diags)
            g1 = _take(s, 0, diags, "component id")
            g2 = _take(s, 1, diags, "component id")
            g3 = _take(s, 2, diags, "n1=INT")
            g4 = _take(s, 3, diags, "n2=INT")
            if None in (g1, g2, g3, g4):
                continue
            n1_text = _keyed(g3[0], "n1", s.line, g3[1], diags)
            n2_text = _keyed(g4[0], "n2", s.line, g4[1], diags)
            n1 = _parse_int(n1_text, s.line, g3[1], diags) if n1_text is not None else None
            n2 = _parse_int(n2_text, s.line, g4[1], diags) if n2_text is not None else None
            m: Optional[Rational] = None
            index = 4
            if index < len(s.tokens):
                token, col = s.tokens[index]
                m_text = _keyed(token, "m", s.line, col, diags)
                if m_text is not None:
                    m = _parse_rational(m_text, s.line, col + 2, diags)
                    if m is not None:
                        for msg in _m_violations(m):
                            diags.append(Diagnostic(s.line, col + 2, msg))
                index += 1
            _no_extra(s, index, diags)
            if len(diags) > before:
                continue
            if g1[0] == g2[0]:
                diags.append(Diagnostic(s.line, g2[1], "a pair needs two distinct components"))
                continue
            c1 = claim(g1[0], s.line, g1[1])
            c2 = claim(g2[0], s.line, g2[1])
            if c1 is None or c2 is None or n1 is None or n2 is None:
                continue
            pairs.append(JointPair(c1, n1, c2, n2, m))
        elif s.kind == "LOOSE":
            before = len(diags)
            g1 = _take(s, 0, diags, "component id")
            g2 = _take(s, 1, diags, "m=RAT")
            if None in (g1, g2):
                continue
            m_text = _keyed(g2[0], "m", s.line, g2[1], diags)
            m = _parse_rational(m_text, s.line, g2[1] + 2, diags) if m_text is not None else None
            if m is not None:
                for msg in _m_violations(m):
                    diags.append(Diagnostic(s.line, g2[1] + 2, msg))
            _no_extra(s, 2, diags)
            if len(diags) > before or m is None:
                continue
            c = claim(g1[0], s.line, g1[1])
            if c is None:
                continue
            loose.append(LooseKnot(c, m))

    for cid, comp in comps.items():
        if cid not in used:
            diags.append(Diagnostic(comp.line, 1, f"component {cid} is not part of any pair or loose knot"))
    entries = _collect_lk(stmts, diags, comps)
    return RoundDiagram(pairs, loose, LinkingMatrix(entries))


def _m_violations(m: Rational) -> list[str]:
    if m.q == 0 and m.p != 1:
        return [f"infinity slope must be written 1/0, got {m.p}/0"]
    if not m.is_reduced:
        return [f"coefficient {m} is not reduced"]
    return []


def _build_dehn(stmts: list[_Stmt], diags: list[Diagnostic]) -> DehnDiagram:
    comps = _collect_comps(stmts, diags, expect_framing=True)
    entries = _collect_lk(stmts, diags, comps)
    components = [FramedComponent(c.id, c.knot, c.fibred) for c in comps.values()]
    framing = {c.id: c.framing for c in comps.values() if c.framing is not None}
    return DehnDiagram(components, framing, LinkingMatrix(entries))


def _build_kirby(stmts: list[_Stmt], diags: list[Diagnostic]) -> KirbyDiagram:
    comps = _collect_comps(stmts, diags, expect_framing=False, allow_fibred=False)
    one_handles: dict[str, int] = {}
    handle2: dict[str, tuple[int, int, tuple[tuple[str, int], ...]]] = {}

    for s in stmts:
        if s.kind == "HANDLE1":
            got = _take(s, 0, diags, "handle id")
            if got is None:
                continue
            hid = _parse_id(got[0], s.line, got[1], diags)
            _no_extra(s, 1, diags)
            if hid is None:
                continue
            if hid in one_handles or hid in comps:
                diags.append(Diagnostic(s.line, got[1], f"duplicate id {hid}"))
                continue
            one_handles[hid] = s.line

    for s in stmts:
        if s.kind != "HANDLE2":
            continue
        before = len(diags)
        g1 = _take(s, 0, diags, "2-handle id")
        g2 = _take(s, 1, diags, "framing=INT")
        if None in (g1, g2):
            continue
        hid = _parse_id(g1[0], s.line, g1[1], diags)
        fr_text = _keyed(g2[0], "framing", s.line, g2[1], diags)
        framing = _parse_int(fr_text, s.line, g2[1], diags) if fr_text is not None else None
        over: list[tuple[str, int]] = []
        index = 2
        if index < len(s.tokens):
            token, col = s.tokens[index]
            over_text = _keyed(token, "over", s.line, col, diags)
            if over_text is not None:
                for piece in over_text.split(","):
                    hpart, sep, cpart = piece.partition(":")
                    if not sep or not _ID_RE.match(hpart) or not _INT_RE.match(cpart):
                        diags.append(Diagnostic(s.line, col, f"expected over=id:INT,..., got {piece!r}"))
                        continue
                    if hpart not in one_handles:
                        diags.append(Diagnostic(s.line, col, f"unknown 1-handle {hpart}"))
                        continue
                    over.append((hpart, int(cpart)))
            index += 1
        _no_extra(s, index, diags)
        if len(diags) > before or hid is None or framing is None:
            continue
        if hid in handle2:
            diags.append(Diagnostic(s.line, g1[1], f"duplicate 2-handle {hid}"))
            continue
        if hid not in comps:
            diags.append(Diagnostic(s.line, g1[1], f"2-handle {hid} has no COMP line for its knot"))
            continue
        handle2[hid] = (s.line, framing, tuple(over))

    for cid, comp in comps.items():
        if cid not in handle2:
            diags.append(Diagnostic(comp.line, 1, f"component {cid} is not attached to any 2-handle"))

    two_handles = [
        TwoHandle(hid, comps[hid].knot, framing, over)
        for hid, (_line, framing, over) in handle2.items()
    ]
    entries = _collect_lk(stmts, diags, handle2)
    return KirbyDiagram(one_handles, two_handles, LinkingMatrix(entries))


# ---------------------------------------------------------------------------
# Canonical printer


def format_knot(expr: KnotExpr) -> str:
    if isinstance(expr, Atom):
        return expr.label
    return f"band({format_knot(expr.left)},cable({format_knot(expr.right.of)},{expr.right.framing}))"


def format_rational(r: Rational) -> str:
    return str(r)


def _comp_line(c: FramedComponent, framing: Optional[int] = None) -> str:
    line = f"COMP {c.id} knot={format_knot(c.knot)}"
    if framing is not None:
        line += f" framing={framing}"
    if c.fibred:
        line += " fibred"
    return line


def _lk_lines(lk: LinkingMatrix) -> list[str]:
    return [f"LK {a} {b} {v}" for (a, b), v in lk.items()]


def print_diagram(d: AnyDiagram) -> str:
    """Render a diagram in canonical form (ends with a newline)."""
    if isinstance(d, RoundDiagram):
        lines = ["ROUND"]
        lines += [_comp_line(c) for c in sorted(d.components(), key=lambda c: c.id)]
        for p in d.pairs:
            line = f"PAIR {p.c1.id} {p.c2.id} n1={p.n1} n2={p.n2}"
            if p.m is not None:
                line += f" m={format_rational(p.m)}"
            lines.append(line)
        lines += [f"LOOSE {l.component.id} m={format_rational(l.m)}" for l in d.loose]
        lines += _lk_lines(d.lk)
    elif isinstance(d, DehnDiagram):
        lines = ["DEHN"]
        lines += [_comp_line(c, d.framing[c.id]) for c in d.components]
        lines += _lk_lines(d.lk)
    elif isinstance(d, KirbyDiagram):
        lines = ["KIRBY"]
        lines += [_comp_line(FramedComponent(h.id, h.knot)) for h in d.two_handles]
        lines += [f"HANDLE1 {hid}" for hid in d.one_handles]
        for h in d.two_handles:
            line = f"HANDLE2 {h.id} framing={h.framing}"
            if h.runs_over:
                line += " over=" + ",".join(f"{hid}:{count}" for hid, count in h.runs_over)
            lines.append(line)
        lines += _lk_lines(d.lk)
    else:
        raise TypeError(f"not a diagram: {d!r}")
    return "\n".join(lines) + "\n"


def kind_of(d: AnyDiagram) -> str:
    if isinstance(d, RoundDiagram):
        return "ROUND"
    if isinstance(d, DehnDiagram):
        return "DEHN"
    return "KIRBY"


def validate_any(d: AnyDiagram) -> list[str]:
    if isinstance(d, KirbyDiagram):
        return validate_kirby(d)
    return validate_diagram(d)
