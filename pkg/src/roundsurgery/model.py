"""Shared data model for round and Dehn surgery diagrams.

A diagram here is a framed link in the 3-sphere described purely
combinatorially: knot types are opaque expression trees, and all geometric
content lives in integer framings, rational round 2-surgery coefficients and
the symmetric matrix of pairwise linking numbers.  Equality of knots is
structural equality of their expressions; no attempt is made to decide
isotopy.

Every value is immutable after construction.  Containers deliberately accept
ill-formed data (an unreduced coefficient, an asymmetric linking entry) so
that :func:`validate_diagram` can report the problem instead of the
constructor hiding it; operations in the other modules assume their inputs
validate cleanly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

ComponentId = str


class SurgeryError(Exception):
    """An operation was applied to a diagram that violates its preconditions."""


class UnknownComponentError(SurgeryError):
    """A referenced component id is not present in the diagram."""


class CoordinateError(SurgeryError):
    """A coordinate-change matrix is not unimodular."""


# ---------------------------------------------------------------------------
# Knot expressions


@dataclass(frozen=True)
class Atom:
    """An opaque knot type, identified by its label alone."""

    label: str


@dataclass(frozen=True)
class Cable:
    """The framing curve of ``of``: a parallel push-off with linking number
    ``framing`` against its companion.  Appears only as the right-hand side
    of a :class:`BandSum`."""

    of: "KnotExpr"
    framing: int


@dataclass(frozen=True)
class BandSum:
    """Band connected sum of ``left`` with the framing curve ``right``."""

    left: "KnotExpr"
    right: Cable


KnotExpr = Union[Atom, BandSum]

#: The conventional label for an unknotted component.  Moves that require an
#: unknot (blow-downs, padding components) recognise exactly this atom.
UNKNOT = Atom("unknot")


@lru_cache(maxsize=None)
def knot_token(expr: KnotExpr) -> tuple:
    """A primitive, hashable, totally ordered encoding of a knot expression.

    Malformed expressions still get a token (from their repr) so that
    diagrams holding them can be built and handed to validate_diagram."""
    if isinstance(expr, Atom):
        return ("A", expr.label)
    if isinstance(expr, BandSum):
        if isinstance(expr.right, Cable):
            return ("B", knot_token(expr.left), ("C", knot_token(expr.right.of), expr.right.framing))
        return ("B?", knot_token(expr.left), repr(expr.right))
    return ("X?", repr(expr))


def _knot_violations(expr: object, where: str) -> list[str]:
    if isinstance(expr, Atom):
        return []
    if isinstance(expr, BandSum):
        out = []
        if isinstance(expr.right, Cable):
            out.extend(_knot_violations(expr.right.of, where))
        else:
            out.append(f"{where}: band sum right-hand side must be a cable")
        out.extend(_knot_violations(expr.left, where))
        return out
    return [f"{where}: not a knot expression (cable outside a band sum?)"]


# ---------------------------------------------------------------------------
# Surgery coefficients


@dataclass(frozen=True)
class Rational:
    """A surgery slope p/q with q >= 0; q == 0 encodes the infinity slope 1/0.

    Stored exactly as given.  Reducedness (gcd(|p|, q) == 1, and p == 1 when
    q == 0) is a diagram invariant checked by :func:`validate_diagram`.
    """

    p: int
    q: int = 1

    @classmethod
    def reduced(cls, p: int, q: int = 1) -> "Rational":
        """Construct the reduced form of p/q (q may be negative here)."""
        if q == 0:
            if p == 0:
                raise SurgeryError("0/0 is not a slope")
            return cls(1, 0)
        if q < 0:
            p, q = -p, -q
        g = math.gcd(p, q)
        return cls(p // g, q // g)

    @classmethod
    def infinity(cls) -> "Rational":
        return cls(1, 0)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    @property
    def is_integer(self) -> bool:
        return self.q == 1

    @property
    def is_reduced(self) -> bool:
        if self.q < 0:
            return False
        if self.q == 0:
            return self.p == 1
        return math.gcd(abs(self.p), self.q) == 1

    def as_int(self) -> int:
        if not self.is_integer:
            raise SurgeryError(f"{self} is not an integer slope")
        return self.p

    def __str__(self) -> str:
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"


# ---------------------------------------------------------------------------
# Components and linking


@dataclass(frozen=True)
class FramedComponent:
    """One link component.  ``fibred`` is caller-supplied metadata consumed
    by the analysis module; it is never inferred."""

    id: ComponentId
    knot: KnotExpr
    fibred: bool = False

    def token(self) -> tuple:
        try:
            return self._token
        except AttributeError:
            token = (self.id, knot_token(self.knot), int(self.fibred))
            object.__setattr__(self, "_token", token)
            return token


class LinkingMatrix:
    """Pairwise linking numbers keyed by unordered component pairs.

    Entries are kept as given (possibly duplicated or asymmetric) so that
    validation can point at conflicts; lookups, equality and iteration use
    the canonical symmetric form with zero entries dropped.
    """

    __slots__ = ("_raw", "_canon", "_conflicts", "_hash", "_token")

    def __init__(self, entries: Iterable[tuple[ComponentId, ComponentId, int]] = ()):
        raw = tuple((a, b, int(v)) for (a, b, v) in entries)
        canon: dict[tuple[str, str], int] = {}
        conflicts = set()
        for a, b, v in raw:
            key = (a, b) if a <= b else (b, a)
            if key in canon and canon[key] != v:
                conflicts.add(key)
            canon[key] = v
        self._raw = raw
        self._canon = {k: v for k, v in canon.items() if v != 0}
        self._conflicts = tuple(sorted(conflicts))
        self._token = tuple(sorted(self._canon.items())) if not conflicts else ("raw",) + raw
        self._hash = hash(self._token)

    @classmethod
    def from_dict(cls, entries: Mapping[tuple[ComponentId, ComponentId], int]) -> "LinkingMatrix":
        return cls((a, b, v) for (a, b), v in entries.items())

    def get(self, a: ComponentId, b: ComponentId) -> int:
        key = (a, b) if a <= b else (b, a)
        return self._canon.get(key, 0)

    def conflicts(self) -> tuple[tuple[ComponentId, ComponentId], ...]:
        return self._conflicts

    def items(self) -> Iterator[tuple[tuple[ComponentId, ComponentId], int]]:
        """Canonical nonzero entries, sorted by unordered key."""
        return iter(sorted(self._canon.items()))

    def raw_entries(self) -> tuple[tuple[ComponentId, ComponentId, int], ...]:
        return self._raw

    def ids(self) -> frozenset[ComponentId]:
        return frozenset(x for a, b, _ in self._raw for x in (a, b))

    def diagonal_keys(self) -> list[ComponentId]:
        return sorted({a for a, b, _ in self._raw if a == b})

    def with_entries(self, updates: Mapping[tuple[ComponentId, ComponentId], int]) -> "LinkingMatrix":
        """A new matrix with the given unordered entries replaced."""
        merged = dict(self._canon)
        for (a, b), v in updates.items():
            key = (a, b) if a <= b else (b, a)
            if v == 0:
                merged.pop(key, None)
            else:
                merged[key] = v
        return LinkingMatrix((a, b, v) for (a, b), v in merged.items())

    def restricted(self, keep: Iterable[ComponentId]) -> "LinkingMatrix":
        keep = set(keep)
        return LinkingMatrix(
            (a, b, v) for (a, b), v in self._canon.items() if a in keep and b in keep
        )

    def token(self) -> tuple:
        return self._token

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinkingMatrix):
            return NotImplemented
        return self._token == other._token

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{a}-{b}: {v}" for (a, b), v in self.items())
        return f"LinkingMatrix({{{inner}}})"


# ---------------------------------------------------------------------------
# Diagrams


@dataclass(frozen=True)
class JointPair:
    """A round 1-surgery link of two components.  When ``m`` is present the
    pair is a joint pair: ``c2`` is simultaneously a round 2-surgery knot
    with coefficient ``m`` (the coefficient always sits on ``c2``)."""

    c1: FramedComponent
    n1: int
    c2: FramedComponent
    n2: int
    m: Optional[Rational] = None

    @property
    def is_joint(self) -> bool:
        return self.m is not None

    def token(self) -> tuple:
        try:
            return self._token
        except AttributeError:
            mtok = (0, self.m.p, self.m.q) if self.m is not None else (1, 0, 0)
            token = (self.c1.token(), self.n1, self.c2.token(), self.n2, mtok)
            object.__setattr__(self, "_token", token)
            return token


@dataclass(frozen=True)
class LooseKnot:
    """A round 2-surgery knot not in a pair; it always contributes a
    disconnected summand to the surgered manifold."""

    component: FramedComponent
    m: Rational

    def token(self) -> tuple:
        return (self.component.token(), self.m.p, self.m.q)


class RoundDiagram:
    """An ordered list of round 1-surgery pairs, optional standalone round
    2-surgery knots, and the linking matrix over all components.

    Pair order is meaningful (moves address pairs by index); loose knots are
    kept sorted by component id.
    """

    __slots__ = ("pairs", "loose", "lk", "_ids", "_key", "_hash")

    def __init__(
        self,
        pairs: Iterable[JointPair] = (),
        loose: Iterable[LooseKnot] = (),
        lk: Optional[LinkingMatrix] = None,
    ):
        self.pairs = tuple(pairs)
        self.loose = tuple(sorted(loose, key=lambda l: l.component.id))
        self.lk = lk if lk is not None else LinkingMatrix()
        self._ids = frozenset(c.id for c in self.components())
        self._key = (
            tuple(p.token() for p in self.pairs),
            tuple(l.token() for l in self.loose),
            self.lk.token(),
        )
        self._hash = hash(self._key)

    def components(self) -> Iterator[FramedComponent]:
        for p in self.pairs:
            yield p.c1
            yield p.c2
        for l in self.loose:
            yield l.component

    @property
    def ids(self) -> frozenset[ComponentId]:
        return self._ids

    def component(self, cid: ComponentId) -> FramedComponent:
        for c in self.components():
            if c.id == cid:
                return c
        raise UnknownComponentError(f"no component {cid!r}")

    def pair(self, index: int) -> JointPair:
        if not 0 <= index < len(self.pairs):
            raise SurgeryError(f"pair index {index} out of range (have {len(self.pairs)} pairs)")
        return self.pairs[index]

    def key(self) -> tuple:
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RoundDiagram):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"RoundDiagram(pairs={len(self.pairs)}, loose={len(self.loose)})"


class DehnDiagram:
    """An integral Dehn surgery presentation: framed components plus the
    linking matrix.

    Components are kept sorted by id; that id order is also the pairing
    order used when converting to round surgery pairs, so callers choose a
    pairing by choosing ids.
    """

    __slots__ = ("components", "framing", "lk", "_ids", "_key", "_hash")

    def __init__(
        self,
        components: Iterable[FramedComponent],
        framing: Mapping[ComponentId, int],
        lk: Optional[LinkingMatrix] = None,
    ):
        self.components = tuple(sorted(components, key=lambda c: c.id))
        self.framing = dict(framing)
        self.lk = lk if lk is not None else LinkingMatrix()
        self._ids = frozenset(c.id for c in self.components)
        self._key = (
            tuple(c.token() for c in self.components),
            tuple(sorted(self.framing.items())),
            self.lk.token(),
        )
        self._hash = hash(self._key)

    @property
    def ids(self) -> frozenset[ComponentId]:
        return self._ids

    def component(self, cid: ComponentId) -> FramedComponent:
        for c in self.components:
            if c.id == cid:
                return c
        raise UnknownComponentError(f"no component {cid!r}")

    def framing_of(self, cid: ComponentId) -> int:
        if cid not in self.framing:
            raise UnknownComponentError(f"no framing for {cid!r}")
        return self.framing[cid]

    def key(self) -> tuple:
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DehnDiagram):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"DehnDiagram(components={len(self.components)})"


Diagram = Union[RoundDiagram, DehnDiagram]


# ---------------------------------------------------------------------------
# Torus slopes and coordinate changes


@dataclass(frozen=True)
class TorusSlope:
    """The class a*(1,0) + b*(0,1) of a simple closed curve on the torus.
    Must be primitive: gcd(|a|, |b|) == 1, which also rules out (0, 0)."""

    a: int
    b: int

    def __post_init__(self):
        if math.gcd(self.a, self.b) != 1:
            raise ValueError(f"slope ({self.a}, {self.b}) is not primitive")


Matrix2 = Sequence[Sequence[int]]


def change_coordinates(mat: Matrix2, s: TorusSlope) -> TorusSlope:
    """Rewrite a slope under a self-homeomorphism of the torus given by a
    unimodular 2x2 integer matrix (acting on column vectors).

    Composition matches matrix multiplication:
    change_coordinates(A, change_coordinates(B, s)) equals
    change_coordinates(A @ B, s).
    """
    (m00, m01), (m10, m11) = mat[0], mat[1]
    det = m00 * m11 - m01 * m10
    if det not in (1, -1):
        raise CoordinateError(f"matrix has determinant {det}, expected +-1")
    return TorusSlope(m00 * s.a + m01 * s.b, m10 * s.a + m11 * s.b)


# ---------------------------------------------------------------------------
# Validation and elementary queries


def _rational_violations(r: Rational, where: str) -> list[str]:
    if not isinstance(r, Rational):
        return [f"{where}: coefficient is not a rational slope"]
    if r.q < 0:
        return [f"{where}: denominator of {r.p}/{r.q} is negative"]
    if not r.is_reduced:
        if r.q == 0:
            return [f"{where}: infinity slope must be written 1/0, got {r.p}/0"]
        return [f"{where}: coefficient {r} is not reduced"]
    return []


def _lk_violations(lk: LinkingMatrix, known: frozenset[ComponentId]) -> list[str]:
    out = []
    for a, b in lk.conflicts():
        out.append(f"lk({a}, {b}): conflicting asymmetric entries")
    for cid in lk.diagonal_keys():
        out.append(f"lk({cid}, {cid}): diagonal entries are not allowed (framings live on diagrams)")
    for cid in sorted(lk.ids() - known):
        out.append(f"lk: unknown component {cid}")
    return out


def validate_diagram(d: Diagram) -> list[str]:
    """Check every structural invariant; return one message per violation.

    An empty list means the diagram is well-formed.  Violations are
    reported, never raised, so the caller can surface all of them at once.
    """
    out: list[str] = []
    if isinstance(d, RoundDiagram):
        seen: set[ComponentId] = set()
        for c in d.components():
            if c.id in seen:
                out.append(f"component {c.id}: duplicate id")
            seen.add(c.id)
            out.extend(_knot_violations(c.knot, f"component {c.id}"))
        for i, p in enumerate(d.pairs):
            if p.m is not None:
                out.extend(_rational_violations(p.m, f"pair {i} ({p.c1.id}, {p.c2.id})"))
        for l in d.loose:
            out.extend(_rational_violations(l.m, f"loose knot {l.component.id}"))
        out.extend(_lk_violations(d.lk, d.ids))
    elif isinstance(d, DehnDiagram):
        seen = set()
        for c in d.components:
            if c.id in seen:
                out.append(f"component {c.id}: duplicate id")
            seen.add(c.id)
            out.extend(_knot_violations(c.knot, f"component {c.id}"))
        for cid in sorted(d.ids - set(d.framing)):
            out.append(f"component {cid}: missing framing")
        for cid in sorted(set(d.framing) - d.ids):
            out.append(f"framing for unknown component {cid}")
        out.extend(_lk_violations(d.lk, d.ids))
    else:
        raise SurgeryError(f"not a diagram: {d!r}")
    return out


def linking_number(d: Diagram, a: ComponentId, b: ComponentId) -> int:
    """The linking number of two distinct components of a diagram."""
    if a == b:
        raise SurgeryError(f"linking number of {a!r} with itself is not defined here")
    for cid in (a, b):
        if cid not in d.ids:
            raise UnknownComponentError(f"no component {cid!r}")
    return d.lk.get(a, b)


def fresh_id(prefix: str, used: Iterable[ComponentId]) -> ComponentId:
    """The smallest ``prefix<n>`` (n >= 1) not in ``used``.  Deterministic,
    which keeps move application reproducible inside the search."""
    used = set(used)
    n = 1
    while f"{prefix}{n}" in used:
        n += 1
    return f"{prefix}{n}"
