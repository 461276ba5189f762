"""Preorders on Q^n in canonical kernel-flag normal form.

A preorder is stored as s rows over the session number field, each row
orthogonally projected onto the real span of the rational kernel of the rows
before it, and scaled so its first nonzero entry is +1 or -1.  Together with
the strictly decreasing chain of rational kernels this representation is
unique for the binary relation it defines: two matrices describe the same
preorder exactly when their canonical forms agree entry-wise.

Classifying an integer vector u against the rows (sign of the first nonzero
dot product) realizes the lexicographic comparison u <= v iff
(u.r_1, ..., u.r_s) <=_lex (v.r_1, ..., v.r_s).
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch
from .linalg import FieldVector, RationalSubspace, project, rational_kernel
from .realfield import FieldElement, NumberField

Q = Fraction


class Sign(enum.IntEnum):
    NEG = -1
    ZERO = 0
    POS = 1

    def flip(self) -> "Sign":
        return Sign(-int(self))

    @property
    def symbol(self) -> str:
        return {Sign.NEG: "-", Sign.ZERO: "0", Sign.POS: "+"}[self]

    @classmethod
    def from_symbol(cls, s: str) -> "Sign":
        return {"-": cls.NEG, "0": cls.ZERO, "+": cls.POS}[s]


class Preorder:
    """Canonical form of a bi-invariant preorder on Q^n (equivalently Z^n)."""

    __slots__ = ("field", "n", "rows", "flag", "type_vec")

    def __init__(self, field: NumberField, n: int, rows: Sequence[FieldVector],
                 flag: Sequence[RationalSubspace], type_vec: Sequence[int]):
        # trusted constructor; use from_rows() to canonicalize arbitrary rows
        self.field = field
        self.n = n
        self.rows = tuple(rows)
        self.flag = tuple(flag)
        self.type_vec = tuple(type_vec)
        assert sum(self.type_vec) + self.degree == n
        assert self.rank + self.degree <= n

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def degree(self) -> int:
        return self.flag[-1].dim

    def type_of(self) -> tuple[int, ...]:
        return self.type_vec

    def residue_group(self) -> RationalSubspace:
        return self.flag[-1]

    def isolated_chain(self) -> tuple[RationalSubspace, ...]:
        return tuple(reversed(self.flag))

    def is_trivial(self) -> bool:
        return not self.rows

    # --- sign classification -------------------------------------------------

    def _check_vector(self, u: Sequence) -> tuple[Fraction, ...]:
        if len(u) != self.n:
            raise DimensionMismatch(f"vector length {len(u)} != ambient {self.n}")
        vec = tuple(Q(x) for x in u)
        dens = [x.denominator for x in vec if x.denominator != 1]
        if dens:
            m = lcm(*dens)
            vec = tuple(x * m for x in vec)
        return vec

    def sign_of(self, u: Sequence) -> Sign:
        """Sign of the first row with nonzero dot product; ZERO if all vanish.

        Rational input is cleared to an integer vector first, which does not
        change the classification.
        """
        vec = self._check_vector(u)
        if not any(vec):
            return Sign.ZERO
        for row in self.rows:
            s = row.dot(vec).sign()
            if s:
                return Sign(s)
        return Sign.ZERO

    def compare(self, u: Sequence, v: Sequence) -> Sign:
        """sign_of(u - v): POS means u strictly dominates v."""
        return self.sign_of([Q(a) - Q(b) for a, b in zip(u, v)])

    def in_O(self, u: Sequence) -> bool:
        return self.sign_of(u) != Sign.NEG

    def in_U(self, u: Sequence) -> bool:
        return self.sign_of(u) == Sign.POS

    # --- identity ------------------------------------------------------------

    def equals(self, other: "Preorder") -> bool:
        if self.field != other.field or self.n != other.n:
            return False
        return self.rows == other.rows

    __eq__ = equals

    def __hash__(self):
        return hash((self.n, tuple(tuple(e.coeffs for e in r.entries) for r in self.rows)))

    def key(self):
        return (self.n, tuple(tuple(e.coeffs for e in r.entries) for r in self.rows))

    def matrix_str(self) -> str:
        return "lex[" + ";".join(str(r) for r in self.rows) + "]"

    def __repr__(self):
        return (f"Preorder({self.matrix_str()}, rank={self.rank}, "
                f"degree={self.degree}, type={self.type_vec})")

    # --- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "field": self.field.to_json(),
            "rows": [r.to_json() for r in self.rows],
            "rank": self.rank,
            "degree": self.degree,
            "type": list(self.type_vec),
        }

    @classmethod
    def from_json(cls, obj: dict, field: NumberField | None = None) -> "Preorder":
        if field is None:
            if "field" in obj:
                field = NumberField.from_json(obj["field"])
            else:
                field = NumberField.rational()
        n = int(obj["n"])
        raw = [FieldVector.from_json(field, row) for row in obj.get("rows", [])]
        return from_rows(raw, n, field=field)


def from_rows(raw_rows: Sequence[FieldVector], n: int,
              field: NumberField | None = None) -> Preorder:
    """Canonicalize defining rows into a Preorder with the same relation.

    Walks the rows in order keeping the rational kernel W of what has been
    accepted so far: each row is projected onto the real span of W (dropped if
    the projection vanishes, which happens exactly when the row is redundant
    at its position) and rescaled by the inverse of the absolute value of its
    first nonzero entry.  Positive rescaling and projection never change the
    lexicographic comparison, so the output relation matches the input.
    """
    if field is None:
        if raw_rows:
            field = raw_rows[0].field
        else:
            field = NumberField.rational()
    rows: list[FieldVector] = []
    w = RationalSubspace.full(n)
    flag = [w]
    type_vec: list[int] = []
    for r in raw_rows:
        if r.field != field:
            raise FieldMismatch("rows from different number fields")
        if r.n != n:
            raise DimensionMismatch(f"row length {r.n} != ambient {n}")
        p = project(r, w)
        if p.is_zero():
            continue
        lead = next(e for e in p.entries if not e.is_zero())
        p = p.scale(lead.abs().inverse())
        w_next = w.intersect(rational_kernel([p], n))
        type_vec.append(w.dim - w_next.dim)
        rows.append(p)
        flag.append(w_next)
        w = w_next
    return Preorder(field, n, rows, flag, type_vec)
