"""First homology of surgered 3-manifolds via Smith normal form.

The presentation matrix of H1 for an integral Dehn diagram is the symmetric
integer matrix with framings on the diagonal and linking numbers off it; the
group is its cokernel.  All arithmetic is exact: intermediate entries during
the reduction can grow far beyond machine width even for small inputs, so
Python's unbounded integers are load-bearing here, not a convenience.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bridge import joint_pair_to_dehn
from .model import DehnDiagram, RoundDiagram, SurgeryError

#: Rectangular matrix of exact integers, row-major.
IntegerMatrix = list[list[int]]

#: Pivot selection policies for the reduction.  Both yield the same diagonal;
#: the second exists so tests can witness uniqueness of the normal form.
PIVOT_MIN_ABS = "min_abs"
PIVOT_ROW_MAJOR = "row_major"


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group in canonical form: free rank plus
    invariant factors d1 | d2 | ... with every di >= 2."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2 (1s are dropped, 0s become free rank)")
            if prev is not None and d % prev != 0:
                raise ValueError(f"invariant factors {prev}, {d} break the divisibility chain")
            prev = d

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @classmethod
    def from_factors(cls, factors: list[int], extra_free: int = 0) -> "AbelianGroup":
        """Canonicalise raw diagonal entries: drop units, zeros become Z."""
        torsion = tuple(sorted(abs(d) for d in factors if abs(d) >= 2))
        rank = extra_free + sum(1 for d in factors if d == 0)
        return cls(rank, torsion)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def identity_matrix(n: int) -> IntegerMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matrix_multiply(a: IntegerMatrix, b: IntegerMatrix) -> IntegerMatrix:
    if a and b and len(a[0]) != len(b):
        raise SurgeryError("matrix dimensions do not match")
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)] for i in range(len(a))]


def determinant(m: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise SurgeryError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _check_rectangular(m: IntegerMatrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(row) != cols for row in m):
        raise SurgeryError("matrix is not rectangular")
    return rows, cols


def _select_pivot(d: IntegerMatrix, t: int, rows: int, cols: int, policy: str):
    if policy == PIVOT_ROW_MAJOR:
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0:
                    return i, j
        return None
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            v = abs(d[i][j])
            if v != 0 and (best is None or v < best[0]):
                best = (v, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(
    m: IntegerMatrix, pivot: str = PIVOT_MIN_ABS
) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Diagonalise an integer matrix by unimodular row and column operations.

    Returns (d, u, v) with u @ m @ v == d, u and v unimodular, and d diagonal
    with non-negative entries satisfying d1 | d2 | ... .  The default pivot
    policy picks the smallest nonzero absolute value (ties broken row-major);
    ``pivot=PIVOT_ROW_MAJOR`` picks the first nonzero entry instead.  The
    resulting diagonal is the same either way.
    """
    if pivot not in (PIVOT_MIN_ABS, PIVOT_ROW_MAJOR):
        raise SurgeryError(f"unknown pivot policy {pivot!r}")
    rows, cols = _check_rectangular(m)
    d = [row[:] for row in m]
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def row_op(i, j, q):  # row_i -= q * row_j, on d and u
        d[i] = [x - q * y for x, y in zip(d[i], d[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j, on d and v
        for row in d:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while True:
        found = _select_pivot(d, t, rows, cols, pivot)
        if found is None:
            break
        pi, pj = found
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            p = d[t][t]
            # Reduce the pivot column and row by floor quotients; whatever
            # remains is a residue strictly smaller than |p|.
            for i in range(t + 1, rows):
                if d[i][t] != 0:
                    row_op(i, t, d[i][t] // p)
            for j in range(t + 1, cols):
                if d[t][j] != 0:
                    col_op(j, t, d[t][j] // p)
            residue = None  # (|value|, kind, index) with the smallest |value|
            for i in range(t + 1, rows):
                if d[i][t] != 0 and (residue is None or abs(d[i][t]) < residue[0]):
                    residue = (abs(d[i][t]), "row", i)
            for j in range(t + 1, cols):
                if d[t][j] != 0 and (residue is None or abs(d[t][j]) < residue[0]):
                    residue = (abs(d[t][j]), "col", j)
            if residue is not None:
                # Promote the smallest residue to be the new, strictly
                # smaller pivot and reduce again.
                if residue[1] == "row":
                    swap_rows(t, residue[2])
                else:
                    swap_cols(t, residue[2])
                continue
            # Column and row are clear.  Make the pivot divide the whole
            # remaining submatrix before moving on: this is what guarantees
            # the divisibility chain of the final diagonal.
            bad_row = None
            for i in range(t + 1, rows):
                if any(d[i][j] % p != 0 for j in range(t + 1, cols)):
                    bad_row = i
                    break
            if bad_row is None:
                break
            row_op(t, bad_row, -1)  # pull the offending row into row t
        t += 1

    rank = t
    for i in range(rank):
        if d[i][i] < 0:
            d[i] = [-x for x in d[i]]
            u[i] = [-x for x in u[i]]
    return d, u, v


def invariant_factors(m: IntegerMatrix) -> list[int]:
    d, _, _ = smith_normal_form(m)
    n = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(n)]


def presentation_matrix(d: DehnDiagram) -> IntegerMatrix:
    """Framings on the diagonal, linking numbers off it, components in id
    order."""
    comps = [c.id for c in d.components]
    return [
        [d.framing[a] if a == b else d.lk.get(a, b) for b in comps]
        for a in comps
    ]


def cokernel(m: IntegerMatrix) -> AbelianGroup:
    """The cokernel of m acting on column vectors, in canonical form."""
    rows, cols = _check_rectangular(m)
    if rows == 0:
        return AbelianGroup(0)
    if cols == 0:
        return AbelianGroup(rows)
    factors = invariant_factors(m)
    return AbelianGroup.from_factors(factors, extra_free=rows - len(factors))


def first_homology(d: DehnDiagram) -> AbelianGroup:
    """H1 of the 3-manifold presented by an integral Dehn diagram."""
    return cokernel(presentation_matrix(d))


def first_homology_round(r: RoundDiagram) -> AbelianGroup:
    """H1 of the manifold of a joint-pair round diagram, computed through
    its Dehn surgery presentation."""
    return first_homology(joint_pair_to_dehn(r))
