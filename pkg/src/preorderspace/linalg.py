"""Exact linear algebra over Q, and over Q(alpha) via coefficient layers.

Rational subspaces are stored with a reduced row-echelon basis (pivots scaled
to 1, eliminated above and below), so equal subspaces have identical
representations and subspace equality is a plain tuple comparison.

A vector over Q(alpha) splits into deg(alpha) rational "layers"
v = sum_j v_j alpha^j.  Since 1, alpha, ..., alpha^{d-1} are Q-linearly
independent, a rational vector is orthogonal to v iff it is orthogonal to
every layer; kernels over the field therefore reduce to rational nullspaces
of stacked layer matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch, SingularMatrix
from .realfield import FieldElement, NumberField

Q = Fraction
QVec = tuple[Fraction, ...]


def _as_qvec(v: Sequence) -> QVec:
    return tuple(Q(x) for x in v)


def _normalize_row(row: list[Fraction]) -> list[Fraction]:
    # scale to coprime integers first; keeps the elimination entries small
    den = lcm(*(c.denominator for c in row)) if row else 1
    ints = [int(c * den) for c in row]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    return [Q(c) for c in ints]


def rref(rows: Iterable[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot column indices)."""
    mat = [_normalize_row([Q(x) for x in r]) for r in rows]
    mat = [r for r in mat if any(r)]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    piv_r = 0
    for col in range(ncols):
        sel = next((r for r in range(piv_r, len(mat)) if mat[r][col] != 0), None)
        if sel is None:
            continue
        mat[piv_r], mat[sel] = mat[sel], mat[piv_r]
        inv = 1 / mat[piv_r][col]
        mat[piv_r] = [c * inv for c in mat[piv_r]]
        for r in range(len(mat)):
            if r != piv_r and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[piv_r])]
        pivots.append(col)
        piv_r += 1
        if piv_r == len(mat):
            break
    return mat[:piv_r], pivots


def nullspace_basis(constraints: list[Sequence[Fraction]], n: int) -> list[QVec]:
    """RREF basis of {q in Q^n : c . q = 0 for every constraint row c}."""
    red, pivots = rref(constraints)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * n
        v[f] = Q(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    red_basis, _ = rref(basis)
    return [tuple(r) for r in red_basis]


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> QVec:
    return tuple(sum((a * b for a, b in zip(row, v)), Q(0)) for row in m)


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Q(0)) for col in bt] for row in a]


def mat_inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(row) + [Q(1) if i == j else Q(0) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in red]


def solve_exact(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]):
    """One solution of A x = b over Q, or None when inconsistent."""
    rows = len(a)
    ncols = len(a[0]) if rows else 0
    aug = [list(a[i]) + [Q(b[i])] for i in range(rows)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Q(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return tuple(x)


class RationalSubspace:
    """A subspace of Q^n in canonical reduced row-echelon basis form."""

    __slots__ = ("n", "basis", "_proj")

    def __init__(self, n: int, basis: Sequence[QVec], _canonical: bool = False):
        self.n = n
        if _canonical:
            self.basis = tuple(tuple(v) for v in basis)
        else:
            red, _ = rref([list(v) for v in basis]) if basis else ([], [])
            self.basis = tuple(tuple(r) for r in red)
        self._proj = None

    @classmethod
    def from_spanning(cls, vectors: Iterable[Sequence], n: int) -> "RationalSubspace":
        vecs = [_as_qvec(v) for v in vectors]
        for v in vecs:
            if len(v) != n:
                raise DimensionMismatch(f"vector length {len(v)} != ambient {n}")
        return cls(n, vecs)

    @classmethod
    def full(cls, n: int) -> "RationalSubspace":
        ident = [tuple(Q(1) if i == j else Q(0) for j in range(n)) for i in range(n)]
        return cls(n, ident, _canonical=True)

    @classmethod
    def zero(cls, n: int) -> "RationalSubspace":
        return cls(n, [], _canonical=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, c in enumerate(row) if c != 0) for row in self.basis)

    def complement_coords(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(i for i in range(self.n) if i not in piv)

    def contains(self, v: Sequence) -> bool:
        w = list(_as_qvec(v))
        if len(w) != self.n:
            raise DimensionMismatch("vector length does not match ambient dimension")
        for row in self.basis:
            p = next(i for i, c in enumerate(row) if c != 0)
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return not any(w)

    def coords(self, v: Sequence) -> QVec:
        """Coordinates of a member vector in the echelon basis (pivot reading)."""
        w = _as_qvec(v)
        t = tuple(w[p] for p in self.pivots)
        recon = [Q(0)] * self.n
        for c, row in zip(t, self.basis):
            for i, x in enumerate(row):
                recon[i] += c * x
        if tuple(recon) != w:
            raise DimensionMismatch("vector is not in the subspace")
        return t

    def orthogonal_complement(self) -> "RationalSubspace":
        return RationalSubspace(self.n, nullspace_basis([list(b) for b in self.basis], self.n),
                                _canonical=True)

    def intersect(self, other: "RationalSubspace") -> "RationalSubspace":
        if self.n != other.n:
            raise DimensionMismatch("ambient dimensions differ")
        duals = [list(b) for b in self.orthogonal_complement().basis]
        duals += [list(b) for b in other.orthogonal_complement().basis]
        return RationalSubspace(self.n, nullspace_basis(duals, self.n), _canonical=True)

    def join(self, other: "RationalSubspace") -> "RationalSubspace":
        if self.n != other.n:
            raise DimensionMismatch("ambient dimensions differ")
        return RationalSubspace(self.n, list(self.basis) + list(other.basis))

    def projection_matrix(self) -> list[list[Fraction]]:
        """Orthogonal projection onto the subspace: P = B^T (B B^T)^{-1} B."""
        if self._proj is None:
            k = self.dim
            if k == 0:
                self._proj = [[Q(0)] * self.n for _ in range(self.n)]
            else:
                b = [list(r) for r in self.basis]
                gram = [[sum((x * y for x, y in zip(r1, r2)), Q(0)) for r2 in b] for r1 in b]
                ginv = mat_inverse(gram)
                gb = mat_mul(ginv, b)
                bt = [[b[r][c] for r in range(k)] for c in range(self.n)]
                self._proj = mat_mul(bt, gb)
        return self._proj

    def __eq__(self, other):
        if not isinstance(other, RationalSubspace):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self):
        return f"RationalSubspace(n={self.n}, dim={self.dim})"


class FieldVector:
    """A vector with entries in a shared NumberField."""

    __slots__ = ("field", "entries")

    def __init__(self, field: NumberField, entries: Sequence[FieldElement]):
        entries = tuple(entries)
        for e in entries:
            if e.field != field:
                raise FieldMismatch("entry from a different number field")
        self.field = field
        self.entries = entries

    @classmethod
    def from_rationals(cls, field: NumberField, values: Sequence) -> "FieldVector":
        return cls(field, tuple(field.from_rational(Q(v)) for v in values))

    @classmethod
    def from_layers(cls, field: NumberField, layers: Sequence[Sequence[Fraction]]) -> "FieldVector":
        n = len(layers[0])
        entries = []
        for i in range(n):
            entries.append(FieldElement(field, tuple(layers[j][i] for j in range(field.degree))))
        return cls(field, tuple(entries))

    @property
    def n(self) -> int:
        return len(self.entries)

    def layers(self) -> list[QVec]:
        d = self.field.degree
        return [tuple(e.coeffs[j] for e in self.entries) for j in range(d)]

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def dot(self, q: Sequence) -> FieldElement:
        if len(q) != self.n:
            raise DimensionMismatch("dot: lengths differ")
        d = self.field.degree
        acc = [Q(0)] * d
        for qi, e in zip(q, self.entries):
            if qi:
                f = Q(qi)
                for j in range(d):
                    acc[j] += f * e.coeffs[j]
        return FieldElement(self.field, acc)

    def add(self, other: "FieldVector") -> "FieldVector":
        return FieldVector(self.field, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def sub(self, other: "FieldVector") -> "FieldVector":
        return FieldVector(self.field, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, factor) -> "FieldVector":
        return FieldVector(self.field, tuple(e * factor for e in self.entries))

    def __eq__(self, other):
        if not isinstance(other, FieldVector):
            return NotImplemented
        return self.field == other.field and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(e.coeffs for e in self.entries))

    def __str__(self):
        return "(" + ",".join(str(e) for e in self.entries) + ")"

    def __repr__(self):
        return f"FieldVector{self}"

    def to_json(self):
        return [e.to_json() for e in self.entries]

    @classmethod
    def from_json(cls, field: NumberField, obj) -> "FieldVector":
        return cls(field, tuple(FieldElement.from_json(field, x) for x in obj))


def rational_kernel(rows: Sequence[FieldVector], n: int) -> RationalSubspace:
    """{q in Q^n : q . r = 0 for every row}, via stacked rational layers."""
    constraints: list[list[Fraction]] = []
    for r in rows:
        if r.n != n:
            raise DimensionMismatch("row length does not match ambient dimension")
        for layer in r.layers():
            if any(layer):
                constraints.append(list(layer))
    if rows:
        f0 = rows[0].field
        for r in rows[1:]:
            if r.field != f0:
                raise FieldMismatch("rows from different number fields")
    return RationalSubspace(n, nullspace_basis(constraints, n), _canonical=True)


def project(v: FieldVector, w: RationalSubspace) -> FieldVector:
    """Orthogonal projection of v onto the real span of w, layer by layer."""
    if v.n != w.n:
        raise DimensionMismatch("vector and subspace dimensions differ")
    p = w.projection_matrix()
    new_layers = [mat_vec(p, layer) for layer in v.layers()]
    return FieldVector.from_layers(v.field, new_layers)


def dot(q: Sequence, v: FieldVector) -> FieldElement:
    return v.dot(q)
