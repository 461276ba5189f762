"""Order structure of the space of preorders: refinement, meet, truncation,
composition along isolated subgroups, and quotients.

Coarsenings of a preorder are exactly its row-prefix truncations, and the
level-k truncation determines every coarser level, so refinement and meet
reduce to truncation comparisons on canonical forms.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BasisError, FieldMismatch, NotContained, RangeError
from .linalg import FieldVector, RationalSubspace, mat_inverse, rational_kernel
from .preorder import Preorder, from_rows

Q = Fraction


def truncate(p: Preorder, k: int) -> Preorder:
    """The preorder defined by the first k canonical rows."""
    if not 0 <= k <= p.rank:
        raise RangeError(f"truncation level {k} outside 0..{p.rank}")
    if k == p.rank:
        return p
    return Preorder(p.field, p.n, p.rows[:k], p.flag[: k + 1], p.type_vec[:k])


def refines(coarse: Preorder, fine: Preorder) -> bool:
    """True iff fine refines coarse, i.e. coarse is a truncation of fine."""
    if coarse.field != fine.field:
        raise FieldMismatch("preorders over different number fields")
    if coarse.n != fine.n:
        raise FieldMismatch("preorders on different ambient dimensions")
    return coarse.rank <= fine.rank and truncate(fine, coarse.rank).equals(coarse)


def meet(p: Preorder, q: Preorder) -> Preorder:
    """Greatest lower bound: the deepest common truncation.

    Levels with equal truncations are downward closed, so scanning k from
    min(rank(p), rank(q)) downward and returning the first match is exact.
    """
    if p.field != q.field or p.n != q.n:
        raise FieldMismatch("preorders not comparable")
    for k in range(min(p.rank, q.rank), -1, -1):
        tp = truncate(p, k)
        if tp.equals(truncate(q, k)):
            return tp
    raise AssertionError("unreachable: level 0 truncations always agree")


def _dual_basis_vectors(basis: list[tuple[Fraction, ...]], n: int) -> list[tuple[Fraction, ...]]:
    """Vectors d_j in span(basis) with d_j . basis_i = delta_ij (Gram inverse)."""
    gram = [[sum((x * y for x, y in zip(bi, bj)), Q(0)) for bj in basis] for bi in basis]
    try:
        ginv = mat_inverse(gram)
    except Exception as exc:
        raise BasisError("basis vectors are not linearly independent") from exc
    duals = []
    for j in range(len(basis)):
        d = [Q(0)] * n
        for i, bi in enumerate(basis):
            c = ginv[j][i]
            if c:
                for t in range(n):
                    d[t] += c * bi[t]
        duals.append(tuple(d))
    return duals


def compose(p: Preorder, r: Preorder, basis) -> Preorder:
    """Lexicographic composition: p first, then r on the residue group of p.

    Each row of r, read as a functional in the coordinates given by `basis`,
    is lifted to the ambient space through the dual basis of `basis` inside
    the residue group (extended by zero on the orthogonal complement); the
    lifted rows are stacked after p's rows and canonicalized.
    """
    if p.field != r.field:
        raise FieldMismatch("preorders over different number fields")
    residue = p.residue_group()
    basis = [tuple(Q(x) for x in b) for b in basis]
    if len(basis) != residue.dim:
        raise BasisError(f"expected {residue.dim} basis vectors, got {len(basis)}")
    for b in basis:
        if len(b) != p.n or not residue.contains(b):
            raise BasisError("basis vector outside the residue group")
    if r.n != residue.dim:
        raise BasisError(f"residue preorder must live on Q^{residue.dim}")
    if not basis:
        return p
    duals = _dual_basis_vectors(basis, p.n)
    lifted = []
    for row in r.rows:
        d = p.field.degree
        layers = [[Q(0)] * p.n for _ in range(d)]
        for coeff, dual in zip(row.entries, duals):
            for j in range(d):
                cj = coeff.coeffs[j]
                if cj:
                    for t in range(p.n):
                        layers[j][t] += cj * dual[t]
        lifted.append(FieldVector.from_layers(p.field, layers))
    return from_rows(list(p.rows) + lifted, p.n, field=p.field)


def decompose(p: Preorder, k: int) -> tuple[Preorder, Preorder, list[tuple[Fraction, ...]]]:
    """Split p into (truncation at k, restriction to its residue group, basis).

    The restriction is expressed in the reduced-echelon basis of the level-k
    kernel: restricted row entries are the dot products of the basis vectors
    with the deeper rows.  compose() inverts the split exactly.
    """
    if not 0 <= k <= p.rank:
        raise RangeError(f"decomposition level {k} outside 0..{p.rank}")
    head = truncate(p, k)
    w = p.flag[k]
    basis = [tuple(b) for b in w.basis]
    restricted = []
    for row in p.rows[k:]:
        restricted.append(FieldVector(p.field, tuple(row.dot(b) for b in basis)))
    rest = from_rows(restricted, w.dim, field=p.field)
    return head, rest, basis


def quotient(p: Preorder, h: RationalSubspace) -> Preorder:
    """The induced preorder on Q^n / H for H inside the residue group.

    Output coordinates are the non-pivot columns of H's echelon basis; rows
    vanish on H, so selecting those columns realizes the quotient relation.
    """
    if h.n != p.n:
        raise FieldMismatch("subgroup lives in a different ambient dimension")
    residue = p.residue_group()
    for b in h.basis:
        if not residue.contains(b):
            raise NotContained("subgroup is not contained in the residue group")
    keep = h.complement_coords()
    rows = [FieldVector(p.field, tuple(row.entries[i] for i in keep)) for row in p.rows]
    return from_rows(rows, len(keep), field=p.field)
