"""The GL_n(Q) action on preorders: pullback, stabilizers, orbit witnesses.

phi acts by comparing through it: u <= v in the transformed preorder iff
phi(u) <= phi(v) in the original.  On canonical rows this is multiplication
by phi^T applied to each rational coefficient layer, followed by
re-canonicalization.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    SingularMatrix,
    TypeMismatch,
    WitnessNotFound,
)
from .lattice import decompose
from .linalg import FieldVector, mat_inverse, mat_mul, mat_vec, rref, solve_exact
from .preorder import Preorder, from_rows

Q = Fraction


class Automorphism:
    """An invertible rational n x n matrix acting on Q^n."""

    __slots__ = ("matrix", "n")

    def __init__(self, matrix: Sequence[Sequence]):
        rows = tuple(tuple(Q(x) for x in row) for row in matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("automorphism matrix must be square")
        self.matrix = rows
        self.n = n
        try:
            mat_inverse([list(r) for r in rows])
        except SingularMatrix:
            raise SingularMatrix("automorphism matrix must be invertible") from None

    @classmethod
    def identity(cls, n: int) -> "Automorphism":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, n: int, lam) -> "Automorphism":
        return cls([[lam if i == j else 0 for j in range(n)] for i in range(n)])

    def inverse(self) -> "Automorphism":
        return Automorphism(mat_inverse([list(r) for r in self.matrix]))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """Matrix product self @ other (apply other's coordinates first)."""
        return Automorphism(mat_mul([list(r) for r in self.matrix],
                                    [list(r) for r in other.matrix]))

    def image(self, u: Sequence) -> tuple[Fraction, ...]:
        return mat_vec([list(r) for r in self.matrix], [Q(x) for x in u])

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"Automorphism({[[str(x) for x in row] for row in self.matrix]})"

    def to_json(self) -> dict:
        return {"matrix": [[str(x) for x in row] for row in self.matrix]}

    @classmethod
    def from_json(cls, obj: dict) -> "Automorphism":
        return cls([[Q(x) for x in row] for row in obj["matrix"]])


def _apply_matrix(matrix: Sequence[Sequence[Fraction]], p: Preorder) -> Preorder:
    n = p.n
    transposed = [[matrix[r][c] for r in range(n)] for c in range(n)]
    new_rows = []
    for row in p.rows:
        layers = [mat_vec(transposed, layer) for layer in row.layers()]
        new_rows.append(FieldVector.from_layers(p.field, layers))
    return from_rows(new_rows, n, field=p.field)


def apply(phi: Automorphism, p: Preorder) -> Preorder:
    """Pullback of p through phi: classify u by the sign of phi(u) under p."""
    if phi.n != p.n:
        raise DimensionMismatch(f"automorphism on Q^{phi.n}, preorder on Q^{p.n}")
    return _apply_matrix(phi.matrix, p)


def is_stabilizer(phi: Automorphism, p: Preorder) -> bool:
    return apply(phi, p).equals(p)


# ---------------------------------------------------------------------------
# orbit witnesses
# ---------------------------------------------------------------------------

def orbit_witness(p: Preorder, q: Preorder) -> Automorphism:
    """An automorphism carrying p to q, for preorders of equal type.

    Recursive block construction: change coordinates so both level-1 kernels
    become the trailing coordinates, solve a rational system matching the
    leading rows entry-by-entry inside the Q-span of their entries, recurse on
    the kernels, and assemble the block matrix.  The rational system can be
    unsolvable inside the session field, in which case no witness is
    returned rather than an unverified guess.
    """
    if p.field != q.field:
        raise FieldMismatch("preorders over different number fields")
    if p.n != q.n:
        raise DimensionMismatch("preorders on different ambient dimensions")
    if p.type_vec != q.type_vec:
        raise TypeMismatch(f"types differ: {p.type_vec} vs {q.type_vec}")
    matrix = _witness_matrix(p, q)
    phi = Automorphism(matrix)
    if not apply(phi, p).equals(q):
        raise WitnessNotFound("constructed automorphism failed verification")
    return phi


def _witness_matrix(p: Preorder, q: Preorder) -> list[list[Fraction]]:
    n = p.n
    if p.rank == 0:
        return [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]
    d1 = p.type_vec[0]
    s_mat = _good_coordinates(p)
    t_mat = _good_coordinates(q)
    pt = _apply_matrix(s_mat, p)
    qt = _apply_matrix(t_mat, q)
    head_p = pt.rows[0].entries[:d1]
    head_q = qt.rows[0].entries[:d1]
    m = _entry_span_map(head_p, head_q)
    a_block = [[m[j][i] for j in range(d1)] for i in range(d1)]  # A = M^T
    rest_p = decompose(pt, 1)[1]
    rest_q = decompose(qt, 1)[1]
    b_block = _witness_matrix(rest_p, rest_q)
    full = [[Q(0)] * n for _ in range(n)]
    for i in range(d1):
        for j in range(d1):
            full[i][j] = a_block[i][j]
    for i in range(n - d1):
        for j in range(n - d1):
            full[d1 + i][d1 + j] = b_block[i][j]
    t_inv = mat_inverse([list(r) for r in t_mat])
    return mat_mul(mat_mul([list(r) for r in s_mat], full), t_inv)


def _good_coordinates(p: Preorder) -> list[list[Fraction]]:
    """Columns: echelon-selected complement of the level-1 kernel, then its basis."""
    w1 = p.flag[1]
    cols: list[list[Fraction]] = []
    for j in w1.complement_coords():
        cols.append([Q(1) if i == j else Q(0) for i in range(p.n)])
    for b in w1.basis:
        cols.append(list(b))
    return [[cols[c][r] for c in range(p.n)] for r in range(p.n)]


def _entry_span_map(head_p, head_q) -> list[list[Fraction]]:
    """Rational M with M . head_p = head_q entry-wise, inside Q(alpha).

    Writes every target entry as a rational combination of the source entries
    (solving on coefficient layers); the source entries of a canonical leading
    row are Q-linearly independent, so M is invertible whenever it exists.
    """
    d1 = len(head_p)
    deg = len(head_p[0].coeffs)
    h_cols = [[head_p[j].coeffs[i] for j in range(d1)] for i in range(deg)]
    rows = []
    for target in head_q:
        sol = solve_exact(h_cols, list(target.coeffs))
        if sol is None:
            raise WitnessNotFound(
                "target row entries lie outside the Q-span of the source entries"
            )
        rows.append(list(sol))
    red, pivots = rref([list(r) for r in rows])
    if len(pivots) != d1:
        raise WitnessNotFound("entry-span map is singular")
    return rows
