"""Moves on surgery diagrams and a bounded equivalence search.

Dehn diagrams carry the two classical Kirby moves: blow-up/blow-down of a
(+-1)-framed unknot, and the handle slide, under which the slid component
gets framing n_a + n_b + 2*lk(a, b) and absorbs b's linking row.

Round diagrams of joint pairs carry four equivalence moves:

  1. recoefficient one pair:      (n1, n2, m) -> (n1 - n2 + k, k, m)
  2. shuffle moves A and B, which change which component carries the round
     2-surgery coefficient (within a pair, or across two pairs)
  3. add/delete an unlinked unknot pair whose Dehn image is two
     (+-1)-framed unknots
  4. six band-sum slide variants, one per choice of slid component and
     partner among two pairs; each commutes with the handle slide through
     the joint-pair/Dehn correspondence.

Every move is a pure function returning a new diagram.  The free integer k
appearing in the round moves never changes the corresponding Dehn diagram;
it is the gauge freedom of the joint-pair presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence

from .model import (
    BandSum,
    Cable,
    ComponentId,
    DehnDiagram,
    Diagram,
    FramedComponent,
    JointPair,
    LinkingMatrix,
    Rational,
    RoundDiagram,
    SurgeryError,
    UNKNOT,
    fresh_id,
)


class MoveError(SurgeryError):
    """The move's preconditions do not hold on this diagram."""


class MoveKind(str, Enum):
    KIRBY1_ADD = "Kirby1Add"
    KIRBY1_DEL = "Kirby1Del"
    KIRBY2_SLIDE = "Kirby2Slide"
    EQ_MOVE1 = "EqMove1"
    SHUFFLE_A = "ShuffleA"
    SHUFFLE_B = "ShuffleB"
    EQ_MOVE3_ADD = "EqMove3Add"
    EQ_MOVE3_DEL = "EqMove3Del"
    EQ_MOVE4 = "EqMove4"


#: The six slide variants: which component of pair i slides, and over which
#: component of pair i or j.  "12over21" reads: the round 2-surgery knot of
#: pair i slides over the first component of pair j.
EQ_MOVE4_VARIANTS = ("11over12", "11over21", "11over22", "12over11", "12over21", "12over22")
_SINGLE_PAIR_VARIANTS = ("11over12", "12over11")


@dataclass(frozen=True)
class MoveDescriptor:
    """One move plus all of its arguments, in a form that can be sorted,
    printed and replayed."""

    kind: MoveKind
    pair: Optional[int] = None
    pair2: Optional[int] = None
    component: Optional[ComponentId] = None
    component2: Optional[ComponentId] = None
    variant: Optional[str] = None
    k: Optional[int] = None
    k2: Optional[int] = None
    delta: Optional[int] = None
    sign: Optional[int] = None

    def sort_key(self) -> tuple:
        def num(x):
            return (0, 0) if x is None else (1, x)

        def txt(x):
            return (0, "") if x is None else (1, x)

        return (
            self.kind.value,
            num(self.pair),
            num(self.pair2),
            txt(self.component),
            txt(self.component2),
            txt(self.variant),
            num(self.k),
            num(self.k2),
            num(self.delta),
            num(self.sign),
        )

    def to_line(self) -> str:
        parts = [self.kind.value]
        for name in ("pair", "pair2", "component", "component2", "variant", "k", "k2", "delta", "sign"):
            value = getattr(self, name)
            if value is not None:
                parts.append(f"{name}={value}")
        return " ".join(parts)


MoveSequence = tuple[MoveDescriptor, ...]


# ---------------------------------------------------------------------------
# Kirby moves on Dehn diagrams


def kirby1_add(d: DehnDiagram, sign: int) -> DehnDiagram:
    """Blow up: adjoin a fresh unknot with framing +-1, unlinked from
    everything."""
    if sign not in (1, -1):
        raise MoveError(f"blow-up framing must be +1 or -1, got {sign}")
    new = FramedComponent(fresh_id("u", d.ids), UNKNOT)
    framing = dict(d.framing)
    framing[new.id] = sign
    return DehnDiagram((*d.components, new), framing, d.lk)


def kirby1_del(d: DehnDiagram, c: ComponentId) -> DehnDiagram:
    """Blow down an unlinked (+-1)-framed unknot."""
    comp = d.component(c)
    if comp.knot != UNKNOT:
        raise MoveError(f"{c} is not an unknot; cannot blow down")
    if d.framing[c] not in (1, -1):
        raise MoveError(f"{c} has framing {d.framing[c]}, expected +-1")
    linked = [x for x in sorted(d.ids) if x != c and d.lk.get(c, x) != 0]
    if linked:
        raise MoveError(f"{c} links {', '.join(linked)}; cannot blow down")
    framing = {k: v for k, v in d.framing.items() if k != c}
    keep = [x for x in d.components if x.id != c]
    return DehnDiagram(keep, framing, d.lk.restricted(k for k in d.ids if k != c))


def kirby2_slide(d: DehnDiagram, a: ComponentId, b: ComponentId) -> DehnDiagram:
    """Handle slide of component a over component b.

    a becomes the band sum of a with b's framing curve; its framing becomes
    n_a + n_b + 2*lk(a, b), it absorbs b's linking row, and lk(a, b) grows
    by b's framing.  Everything else is untouched.  Only the
    orientation-preserving band sum is modelled; reversed slides are out of
    scope.
    """
    if a == b:
        raise MoveError("cannot slide a component over itself")
    ca, cb = d.component(a), d.component(b)
    na, nb = d.framing[a], d.framing[b]
    slid = FramedComponent(a, BandSum(ca.knot, Cable(cb.knot, nb)), ca.fibred)
    framing = dict(d.framing)
    framing[a] = na + nb + 2 * d.lk.get(a, b)
    updates = {(a, x): d.lk.get(a, x) + d.lk.get(b, x) for x in d.ids if x not in (a, b)}
    updates[(a, b)] = d.lk.get(a, b) + nb
    comps = [slid if x.id == a else x for x in d.components]
    return DehnDiagram(comps, framing, d.lk.with_entries(updates))


# ---------------------------------------------------------------------------
# Equivalence moves on round diagrams of joint pairs


def _joint(r: RoundDiagram, index: int) -> tuple[JointPair, int]:
    p = r.pair(index)
    if p.m is None:
        raise MoveError(f"pair {index} ({p.c1.id}, {p.c2.id}) is not a joint pair")
    if not p.m.is_integer:
        raise MoveError(f"pair {index} has non-integral coefficient {p.m}")
    return p, p.m.p


def _replace_pair(r: RoundDiagram, index: int, new: JointPair, lk: Optional[LinkingMatrix] = None) -> RoundDiagram:
    pairs = list(r.pairs)
    pairs[index] = new
    return RoundDiagram(pairs, r.loose, r.lk if lk is None else lk)


def eq_move1(r: RoundDiagram, pair_index: int, k: int) -> RoundDiagram:
    """Regauge one joint pair: (n1, n2, m) -> (n1 - n2 + k, k, m).
    Taking k = n2 is the identity."""
    p, _ = _joint(r, pair_index)
    return _replace_pair(r, pair_index, JointPair(p.c1, p.n1 - p.n2 + k, p.c2, k, p.m))


def shuffle_a(r: RoundDiagram, pair_index: int, k: int) -> RoundDiagram:
    """Move the round 2-surgery coefficient to the other component of a
    joint pair.  The components swap roles; the new pair is
    (k - n1 + n2, k) with coefficient n1 + m - n2 on the new second slot."""
    p, m = _joint(r, pair_index)
    new = JointPair(p.c2, k - p.n1 + p.n2, p.c1, k, Rational(p.n1 + m - p.n2))
    return _replace_pair(r, pair_index, new)


def shuffle_b(r: RoundDiagram, i: int, j: int, k1: int, k2: int) -> RoundDiagram:
    """Exchange the round 2-surgery knots of two joint pairs.

    Pair i keeps its first component and adopts pair j's second component
    (still carrying m_i); symmetrically for pair j.  Valid for any k1, k2,
    but only k2 = k1 + m_i - m_j preserves the Dehn framing multiset.
    """
    if i == j:
        raise MoveError("shuffle of type B needs two distinct pairs")
    pi, mi = _joint(r, i)
    pj, mj = _joint(r, j)
    new_i = JointPair(pi.c1, pi.n1 - pi.n2 + mi - mj + k1, pj.c2, k2, Rational(mi))
    new_j = JointPair(pj.c1, pj.n1 - pj.n2 + mj - mi + k2, pi.c2, k1, Rational(mj))
    pairs = list(r.pairs)
    pairs[i] = new_i
    pairs[j] = new_j
    return RoundDiagram(pairs, r.loose, r.lk)


#: Legal (delta, sign) combinations for move 3: exactly those whose Dehn
#: image is a pair of (+-1)-framed unknots, i.e. |delta + sign| == 1.
_MOVE3_COMBOS = ((0, 1), (0, -1), (2, -1), (-2, 1))


def eq_move3_add(r: RoundDiagram, k: int, delta: int, sign: int) -> RoundDiagram:
    """Adjoin an unlinked joint pair of unknots with coefficients
    (k + delta, k, m = sign).

    delta is 0 or +-2 and sign is +-1, constrained so the pair's Dehn image
    consists of two (+-1)-framed unknots (|delta + sign| == 1); other
    combinations would change the manifold."""
    if (delta, sign) not in _MOVE3_COMBOS:
        raise MoveError(
            f"(delta, sign) = ({delta}, {sign}) does not yield +-1 Dehn framings"
        )
    u1 = fresh_id("u", r.ids)
    u2 = fresh_id("u", set(r.ids) | {u1})
    pair = JointPair(
        FramedComponent(u1, UNKNOT), k + delta, FramedComponent(u2, UNKNOT), k, Rational(sign)
    )
    return RoundDiagram((*r.pairs, pair), r.loose, r.lk)


def eq_move3_del(r: RoundDiagram, pair_index: int) -> RoundDiagram:
    """Delete a pair matching the eq_move3_add pattern: two unlinked unknots
    with coefficients (k + delta, k, +-1) and |delta + sign| == 1."""
    p, m = _joint(r, pair_index)
    if p.c1.knot != UNKNOT or p.c2.knot != UNKNOT:
        raise MoveError(f"pair {pair_index} is not a pair of unknots")
    if m not in (1, -1):
        raise MoveError(f"pair {pair_index} has coefficient {m}, expected +-1")
    delta = p.n1 - p.n2
    if (delta, m) not in _MOVE3_COMBOS:
        raise MoveError(
            f"pair {pair_index} coefficients ({p.n1}, {p.n2}, {m}) do not match "
            "the (k + delta, k, +-1) pattern"
        )
    for cid in (p.c1.id, p.c2.id):
        linked = [x for x in sorted(r.ids) if x != cid and r.lk.get(cid, x) != 0]
        if linked:
            raise MoveError(f"{cid} links {', '.join(linked)}; cannot delete the pair")
    pairs = [q for t, q in enumerate(r.pairs) if t != pair_index]
    keep = r.ids - {p.c1.id, p.c2.id}
    return RoundDiagram(pairs, r.loose, r.lk.restricted(keep))


def _slide_lk(lk: LinkingMatrix, ids: Iterable[ComponentId], s: ComponentId, t: ComponentId, f: int) -> LinkingMatrix:
    # Same row bookkeeping as the Dehn handle slide, with f the partner's
    # Dehn framing.
    updates = {(s, x): lk.get(s, x) + lk.get(t, x) for x in ids if x not in (s, t)}
    updates[(s, t)] = lk.get(s, t) + f
    return lk.with_entries(updates)


def _banded(c: FramedComponent, over: FramedComponent, f: int) -> FramedComponent:
    return FramedComponent(c.id, BandSum(c.knot, Cable(over.knot, f)), c.fibred)


def eq_move4(r: RoundDiagram, variant: str, i: int, j: Optional[int] = None, k: int = 0) -> RoundDiagram:
    """Band-sum slide on joint pairs; the variant names the slid component
    and the partner (see EQ_MOVE4_VARIANTS).

    Coefficients transform so that converting to a Dehn diagram commutes
    exactly with the corresponding handle slide; the free k regauges the
    pair as in eq_move1.
    """
    if variant not in EQ_MOVE4_VARIANTS:
        raise MoveError(f"unknown variant {variant!r}")
    single = variant in _SINGLE_PAIR_VARIANTS
    if single:
        if j is not None and j != i:
            raise MoveError(f"variant {variant} acts on a single pair; drop j")
        pi, mi = _joint(r, i)
        l12 = r.lk.get(pi.c1.id, pi.c2.id)
        if variant == "11over12":
            slid, over, f = pi.c1, pi.c2, mi
            n1 = pi.n1 - pi.n2 + mi + 2 * l12 + k
            new_m = mi
        else:  # 12over11
            slid, over, f = pi.c2, pi.c1, pi.n1 - pi.n2 + mi
            n1 = -mi - 2 * l12 + k
            new_m = 2 * mi + pi.n1 - pi.n2 + 2 * l12
        new_c1 = _banded(pi.c1, over, f) if slid is pi.c1 else pi.c1
        new_c2 = _banded(pi.c2, over, f) if slid is pi.c2 else pi.c2
        new_pair = JointPair(new_c1, n1, new_c2, k, Rational(new_m))
        lk = _slide_lk(r.lk, r.ids, slid.id, over.id, f)
        return _replace_pair(r, i, new_pair, lk)

    if j is None:
        raise MoveError(f"variant {variant} needs a second pair index")
    if i == j:
        raise MoveError(f"variant {variant} needs two distinct pairs")
    pi, mi = _joint(r, i)
    pj, mj = _joint(r, j)
    fj1 = pj.n1 - pj.n2 + mj  # Dehn framing of pair j's first component
    if variant == "11over21":
        slid, over, f = pi.c1, pj.c1, fj1
        n1 = pi.n1 + pj.n1 - (pi.n2 + pj.n2) + mj + 2 * r.lk.get(slid.id, over.id) + k
        new_m = mi
    elif variant == "11over22":
        slid, over, f = pi.c1, pj.c2, mj
        n1 = pi.n1 - pi.n2 + mj + 2 * r.lk.get(slid.id, over.id) + k
        new_m = mi
    elif variant == "12over21":
        slid, over, f = pi.c2, pj.c1, fj1
        la = r.lk.get(slid.id, over.id)
        n1 = (pi.n1 - pi.n2) - (pj.n1 - pj.n2) - mj - 2 * la + k
        new_m = mi + mj + pj.n1 - pj.n2 + 2 * la
    else:  # 12over22
        slid, over, f = pi.c2, pj.c2, mj
        la = r.lk.get(slid.id, over.id)
        n1 = pi.n1 - pi.n2 - mj - 2 * la + k
        new_m = mi + mj + 2 * la
    new_c1 = _banded(pi.c1, over, f) if slid is pi.c1 else pi.c1
    new_c2 = _banded(pi.c2, over, f) if slid is pi.c2 else pi.c2
    new_pair = JointPair(new_c1, n1, new_c2, k, Rational(new_m))
    lk = _slide_lk(r.lk, r.ids, slid.id, over.id, f)
    return _replace_pair(r, i, new_pair, lk)


def normalize_k(r: RoundDiagram, ks: Sequence[int]) -> RoundDiagram:
    """Regauge every pair at once (eq_move1 with ks[i] on pair i).  With
    ks[i] = m_i and a +-1 Dehn image this lands on a diagram whose round
    coefficients are all +-1."""
    if len(ks) != len(r.pairs):
        raise MoveError(f"need {len(r.pairs)} k values, got {len(ks)}")
    out = r
    for index, k in enumerate(ks):
        out = eq_move1(out, index, k)
    return out


# ---------------------------------------------------------------------------
# Replay and bounded search


_DEHN_KINDS = frozenset((MoveKind.KIRBY1_ADD, MoveKind.KIRBY1_DEL, MoveKind.KIRBY2_SLIDE))


def apply_move(d: Diagram, move: MoveDescriptor) -> Diagram:
    """Apply a descriptor to a diagram.  Raises MoveError when the move's
    arguments or preconditions do not fit."""
    kind = move.kind
    wanted = DehnDiagram if kind in _DEHN_KINDS else RoundDiagram
    if not isinstance(d, wanted):
        raise MoveError(f"{kind.value} does not apply to {type(d).__name__}")
    if kind is MoveKind.KIRBY1_ADD:
        return kirby1_add(d, _required(move.sign, "sign"))
    if kind is MoveKind.KIRBY1_DEL:
        return kirby1_del(d, _required(move.component, "component"))
    if kind is MoveKind.KIRBY2_SLIDE:
        return kirby2_slide(d, _required(move.component, "component"), _required(move.component2, "component2"))
    if kind is MoveKind.EQ_MOVE1:
        return eq_move1(d, _required(move.pair, "pair"), _required(move.k, "k"))
    if kind is MoveKind.SHUFFLE_A:
        return shuffle_a(d, _required(move.pair, "pair"), _required(move.k, "k"))
    if kind is MoveKind.SHUFFLE_B:
        return shuffle_b(
            d,
            _required(move.pair, "pair"),
            _required(move.pair2, "pair2"),
            _required(move.k, "k"),
            _required(move.k2, "k2"),
        )
    if kind is MoveKind.EQ_MOVE3_ADD:
        return eq_move3_add(d, _required(move.k, "k"), _required(move.delta, "delta"), _required(move.sign, "sign"))
    if kind is MoveKind.EQ_MOVE3_DEL:
        return eq_move3_del(d, _required(move.pair, "pair"))
    if kind is MoveKind.EQ_MOVE4:
        return eq_move4(d, _required(move.variant, "variant"), _required(move.pair, "pair"), move.pair2, _required(move.k, "k"))
    raise MoveError(f"unknown move kind {kind!r}")


def _required(value, name: str):
    if value is None:
        raise MoveError(f"move is missing argument {name!r}")
    return value


def apply_sequence(d: Diagram, seq: Iterable[MoveDescriptor]) -> Diagram:
    for move in seq:
        d = apply_move(d, move)
    return d


def _deletable(r: RoundDiagram, index: int) -> bool:
    p = r.pairs[index]
    if p.m is None or not p.m.is_integer or p.m.p not in (1, -1):
        return False
    if p.c1.knot != UNKNOT or p.c2.knot != UNKNOT:
        return False
    if (p.n1 - p.n2, p.m.p) not in _MOVE3_COMBOS:
        return False
    for cid in (p.c1.id, p.c2.id):
        for x in r.ids:
            if x != cid and r.lk.get(cid, x) != 0:
                return False
    return True


def _enumerate_moves(r: RoundDiagram, ks: tuple[int, ...]) -> Iterator[MoveDescriptor]:
    # Yield in ascending sort_key order so breadth-first search returns the
    # lexicographically least sequence among the shortest ones.
    n = len(r.pairs)
    joint = [p.m is not None and p.m.is_integer for p in r.pairs]
    for i in range(n):
        if joint[i]:
            for k in ks:
                yield MoveDescriptor(MoveKind.EQ_MOVE1, pair=i, k=k)
    for k in ks:
        for delta, sign in ((-2, 1), (0, -1), (0, 1), (2, -1)):
            yield MoveDescriptor(MoveKind.EQ_MOVE3_ADD, k=k, delta=delta, sign=sign)
    for i in range(n):
        if _deletable(r, i):
            yield MoveDescriptor(MoveKind.EQ_MOVE3_DEL, pair=i)
    double_variants = tuple(v for v in EQ_MOVE4_VARIANTS if v not in _SINGLE_PAIR_VARIANTS)
    for i in range(n):
        if not joint[i]:
            continue
        for variant in _SINGLE_PAIR_VARIANTS:
            for k in ks:
                yield MoveDescriptor(MoveKind.EQ_MOVE4, pair=i, variant=variant, k=k)
        for j in range(n):
            if j == i or not joint[j]:
                continue
            for variant in double_variants:
                for k in ks:
                    yield MoveDescriptor(MoveKind.EQ_MOVE4, pair=i, pair2=j, variant=variant, k=k)
    for i in range(n):
        if joint[i]:
            for k in ks:
                yield MoveDescriptor(MoveKind.SHUFFLE_A, pair=i, k=k)
    for i in range(n):
        if not joint[i]:
            continue
        for j in range(n):
            if j == i or not joint[j]:
                continue
            for k1 in ks:
                for k2 in ks:
                    yield MoveDescriptor(MoveKind.SHUFFLE_B, pair=i, pair2=j, k=k1, k2=k2)


def _dedup_key(r: RoundDiagram) -> tuple:
    # States are identified up to reordering of their pairs, which keeps the
    # frontier small; the goal test still uses exact structural equality.
    pairs, loose, lk = r.key()
    return (tuple(sorted(pairs)), loose, lk)


def _goal_candidates(
    state: RoundDiagram, goal: RoundDiagram, ks_set: frozenset[int]
) -> Iterator[MoveDescriptor]:
    """Moves that could possibly turn ``state`` into ``goal``, in the same
    canonical order as _enumerate_moves.

    Every round move writes its free parameter k into the second coefficient
    of the pair it rewrites, so for a fixed kind and target the parameters
    are forced by the goal; this collapses the innermost search level from
    O(|k_range|^2) candidates per target to one.
    """
    n = len(state.pairs)
    n_goal = len(goal.pairs)
    joint = [p.m is not None and p.m.is_integer for p in state.pairs]
    if n_goal == n:
        for i in range(n):
            if joint[i] and goal.pairs[i].n2 in ks_set:
                yield MoveDescriptor(MoveKind.EQ_MOVE1, pair=i, k=goal.pairs[i].n2)
    if n_goal == n + 1 and goal.pairs:
        added = goal.pairs[-1]
        if added.m is not None and added.m.is_integer:
            delta, sign, k = added.n1 - added.n2, added.m.p, added.n2
            if (delta, sign) in _MOVE3_COMBOS and k in ks_set:
                yield MoveDescriptor(MoveKind.EQ_MOVE3_ADD, k=k, delta=delta, sign=sign)
    if n_goal == n - 1:
        for i in range(n):
            if _deletable(state, i):
                yield MoveDescriptor(MoveKind.EQ_MOVE3_DEL, pair=i)
    if n_goal == n:
        double_variants = tuple(v for v in EQ_MOVE4_VARIANTS if v not in _SINGLE_PAIR_VARIANTS)
        for i in range(n):
            if not joint[i] or goal.pairs[i].n2 not in ks_set:
                continue
            k = goal.pairs[i].n2
            for variant in _SINGLE_PAIR_VARIANTS:
                yield MoveDescriptor(MoveKind.EQ_MOVE4, pair=i, variant=variant, k=k)
            for j in range(n):
                if j == i or not joint[j]:
                    continue
                for variant in double_variants:
                    yield MoveDescriptor(MoveKind.EQ_MOVE4, pair=i, pair2=j, variant=variant, k=k)
        for i in range(n):
            if joint[i] and goal.pairs[i].n2 in ks_set:
                yield MoveDescriptor(MoveKind.SHUFFLE_A, pair=i, k=goal.pairs[i].n2)
        for i in range(n):
            if not joint[i]:
                continue
            for j in range(n):
                if j == i or not joint[j]:
                    continue
                k1, k2 = goal.pairs[j].n2, goal.pairs[i].n2
                if k1 in ks_set and k2 in ks_set:
                    yield MoveDescriptor(MoveKind.SHUFFLE_B, pair=i, pair2=j, k=k1, k2=k2)


def bounded_equivalence_search(
    r1: RoundDiagram,
    r2: RoundDiagram,
    depth: int,
    k_range: Iterable[int],
) -> Optional[MoveSequence]:
    """Breadth-first search for a move sequence carrying r1 to a diagram
    structurally equal to r2, trying all free parameters from k_range.

    Returns the lexicographically least sequence among the shortest ones, or
    None if r2 is unreachable within the depth bound.  Absence of a result
    is not a proof of inequivalence.
    """
    if depth < 0:
        raise MoveError(f"depth must be non-negative, got {depth}")
    ks = tuple(sorted(set(int(k) for k in k_range)))
    if r1 == r2:
        return ()
    if depth == 0:
        return None
    ks_set = frozenset(ks)
    frontier: list[tuple[RoundDiagram, MoveSequence]] = [(r1, ())]
    seen = {_dedup_key(r1)}
    for level in range(depth):
        # On the last level only a goal-shaped move can help, and its free
        # parameters are forced by r2, so enumerate just those candidates.
        last = level == depth - 1
        next_frontier: list[tuple[RoundDiagram, MoveSequence]] = []
        for state, path in frontier:
            candidates = _goal_candidates(state, r2, ks_set) if last else _enumerate_moves(state, ks)
            for move in candidates:
                try:
                    new = apply_move(state, move)
                except MoveError:
                    continue
                if new == r2:
                    return path + (move,)
                if not last:
                    key = _dedup_key(new)
                    if key not in seen:
                        seen.add(key)
                        next_frontier.append((new, path + (move,)))
        frontier = next_frontier
    return None
