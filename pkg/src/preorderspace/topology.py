"""Patch-topology machinery: box fingerprints, the ultrametric distance,
isolation tests, perturbation witnesses, sphere projection, and finite
fragments of the refinement tree with DOT export.

The filtration is fixed as the max-norm boxes G_k = {-k..k}^n.  Restrictions
of two preorders to G_k agree as binary relations exactly when their sign
functions agree on G_{2k}, because differences of box points fill the doubled
box; distances are therefore computed by scanning box shells for the first
sign mismatch.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import FieldMismatch, Isolated, TrivialPreorder, WitnessNotFound
from .lattice import refines, truncate
from .linalg import FieldVector, RationalSubspace
from .preorder import Preorder, Sign, from_rows

Q = Fraction


# ---------------------------------------------------------------------------
# box enumeration
# ---------------------------------------------------------------------------

def _lex_positive(u: tuple[int, ...]) -> bool:
    for x in u:
        if x:
            return x > 0
    return False


def half_box(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Lex-positive representatives of G_k \\ {0}; signs at -u follow by negation."""
    for u in itertools.product(range(-k, k + 1), repeat=n):
        if _lex_positive(u):
            yield u


def half_shell(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Lex-positive points with max-norm exactly k."""
    for u in itertools.product(range(-k, k + 1), repeat=n):
        if max(abs(x) for x in u) == k and _lex_positive(u):
            yield u


class Fingerprint:
    """Sign classification of a preorder on the box G_k.

    Only lex-positive representatives are stored; the sign at -u is the
    negation of the sign at u and the origin is always ZERO.
    """

    __slots__ = ("n", "level", "signs")

    def __init__(self, n: int, level: int, signs: dict[tuple[int, ...], Sign]):
        self.n = n
        self.level = level
        self.signs = signs

    def sign(self, u: Sequence[int]) -> Sign:
        u = tuple(int(x) for x in u)
        if not any(u):
            return Sign.ZERO
        if _lex_positive(u):
            return self.signs[u]
        return self.signs[tuple(-x for x in u)].flip()

    def __eq__(self, other):
        if not isinstance(other, Fingerprint):
            return NotImplemented
        return (self.n, self.level, self.signs) == (other.n, other.level, other.signs)

    def __hash__(self):
        return hash((self.n, self.level, tuple(sorted(self.signs.items()))))

    def restrict(self, level: int) -> "Fingerprint":
        if level > self.level:
            raise ValueError("cannot restrict to a larger box")
        kept = {u: s for u, s in self.signs.items() if max(abs(x) for x in u) <= level}
        return Fingerprint(self.n, level, kept)

    def to_json(self) -> dict:
        entries = [{"u": list(u), "s": s.symbol} for u, s in sorted(self.signs.items())]
        return {"level": self.level, "signs": entries}


def fingerprint(p: Preorder, k: int) -> Fingerprint:
    """Evaluate sign_of on every stored representative of G_k."""
    if k < 0:
        raise ValueError("fingerprint level must be >= 0")
    signs = {u: p.sign_of(u) for u in half_box(p.n, k)}
    return Fingerprint(p.n, k, signs)


# ---------------------------------------------------------------------------
# ultrametric distance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Distance:
    """Exact 1/m, exact zero, or a verified upper bound 1/bound_m.

    The metric is only semi-decidable from finite boxes, so callers pick a
    resolution m_max and distances beyond it are reported as AtMost values
    rather than guessed.
    """

    kind: str  # "zero" | "exact" | "at_most"
    m: int

    @classmethod
    def zero(cls) -> "Distance":
        return cls("zero", 0)

    @classmethod
    def exact(cls, m: int) -> "Distance":
        return cls("exact", m)

    @classmethod
    def at_most(cls, bound_m: int) -> "Distance":
        return cls("at_most", bound_m)

    @property
    def upper_bound(self) -> Fraction:
        return Q(0) if self.kind == "zero" else Q(1, self.m)

    @property
    def is_exact(self) -> bool:
        return self.kind != "at_most"

    def __str__(self):
        if self.kind == "zero":
            return "0"
        if self.kind == "exact":
            return f"1/{self.m}"
        return f"≤1/{self.m}"


def distance(p: Preorder, q: Preorder, m_max: int) -> Distance:
    """Ultrametric patch distance resolved down to 1/m_max.

    d = 1/m where m is minimal with the G_m restrictions differing; the first
    sign mismatch on shell l gives m = ceil(l/2).  Shells are scanned in
    order, so the reported level is the exact first mismatch.
    """
    if p.field != q.field or p.n != q.n:
        raise FieldMismatch("preorders not comparable")
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    if p.equals(q):
        return Distance.zero()
    for level in range(1, 2 * m_max + 1):
        for u in half_shell(p.n, level):
            if p.sign_of(u) != q.sign_of(u):
                return Distance.exact((level + 1) // 2)
    return Distance.at_most(m_max + 1)


def first_disagreement_level(p: Preorder, q: Preorder, level_max: int) -> int | None:
    """Smallest box level with a sign mismatch, or None up to level_max."""
    for level in range(1, level_max + 1):
        for u in half_shell(p.n, level):
            if p.sign_of(u) != q.sign_of(u):
                return level
    return None


# ---------------------------------------------------------------------------
# isolation and perturbation witnesses
# ---------------------------------------------------------------------------

def is_isolated(p: Preorder) -> bool:
    """Isolated in the patch topology iff degree >= n - 1."""
    return p.degree >= p.n - 1


def sphere_point(p: Preorder) -> FieldVector:
    """Projective representative of the rank-one coarsening's direction."""
    if p.rank == 0:
        raise TrivialPreorder("the trivial preorder has no sphere direction")
    return p.rows[0]


def _parallel(a: FieldVector, b: FieldVector) -> bool:
    n = a.n
    for i in range(n):
        for j in range(i + 1, n):
            if not (a.entries[i] * b.entries[j] - a.entries[j] * b.entries[i]).is_zero():
                return False
    return True


def _perturbation_directions(p: Preorder, budget: int = 8) -> list[FieldVector]:
    """Deterministic candidate directions for first-row perturbation.

    Rational vectors orthogonal to the level-1 kernel keep the kernel (hence
    the deeper rows' behavior) intact, so they come first; the second row
    itself reproduces the tie-breaking of level 2 on any fixed box and covers
    the case of a rational first row.
    """
    out: list[FieldVector] = []
    w1perp = p.flag[1].orthogonal_complement()
    for b in w1perp.basis:
        z = FieldVector.from_rationals(p.field, b)
        if not _parallel(z, p.rows[0]):
            out.append(z)
    if p.rank >= 2:
        out.append(p.rows[1])
    for b in w1perp.basis:
        z = FieldVector.from_rationals(p.field, tuple(-x for x in b))
        if not _parallel(z, p.rows[0]):
            out.append(z)
    return out[:budget]


MAX_EPS_EXP = 40


def perturb_in_ball(p: Preorder, m: int, want_same_type: bool = False) -> Preorder:
    """A different preorder agreeing with p on the box G_{2m}.

    Searches candidate rows (row_1 + eps z, row_2, ..., row_s) over the
    deterministic direction list with eps = 1/2, 1/4, ...; every candidate is
    verified exactly (fingerprint equality on G_{2m}, and rank, degree and
    type preservation when requested) before being returned.
    """
    for cand in _perturbation_candidates(p, m, want_same_type):
        return cand
    raise WitnessNotFound("perturbation search budget exhausted")


def same_type_neighbors(p: Preorder, m: int, count: int) -> list[Preorder]:
    """count pairwise distinct same-type preorders in the 1/(m+1) ball."""
    if count < 1:
        raise ValueError("count must be >= 1")
    found: list[Preorder] = []
    for cand in _perturbation_candidates(p, m, want_same_type=True):
        if all(not cand.equals(w) for w in found):
            found.append(cand)
            if len(found) == count:
                return found
    raise WitnessNotFound(
        f"found only {len(found)} of {count} same-type neighbors within budget"
    )


def _perturbation_candidates(p: Preorder, m: int, want_same_type: bool) -> Iterator[Preorder]:
    if m < 1:
        raise ValueError("m must be >= 1")
    if is_isolated(p):
        raise Isolated(f"degree {p.degree} >= n-1 = {p.n - 1}: isolated point")
    reference = fingerprint(p, 2 * m)
    for z in _perturbation_directions(p):
        eps = Q(1, 2)
        for _ in range(MAX_EPS_EXP):
            candidate_rows = [p.rows[0].add(z.scale(eps))] + list(p.rows[1:])
            cand = from_rows(candidate_rows, p.n, field=p.field)
            eps = eps / 2
            if cand.equals(p):
                continue
            if want_same_type and cand.type_vec != p.type_vec:
                continue
            if fingerprint(cand, 2 * m) == reference:
                yield cand


# ---------------------------------------------------------------------------
# finite fragments of the refinement tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FragmentGraph:
    """Deduplicated preorders with the cover relation of refinement.

    Edges are covers within the enumerated node set; covers in the full
    infinite tree are not computable from a fragment.
    """

    nodes: tuple[Preorder, ...]
    edges: tuple[tuple[int, int], ...]
    root: int


def enumerate_fragment(candidate_rows: Sequence[FieldVector], n: int, max_rank: int,
                       field=None) -> FragmentGraph:
    """All preorders from ordered tuples of at most max_rank candidate rows."""
    if field is None and candidate_rows:
        field = candidate_rows[0].field
    if field is None:
        from .realfield import NumberField

        field = NumberField.rational()
    seen: dict = {}
    for length in range(0, max_rank + 1):
        for combo in itertools.product(range(len(candidate_rows)), repeat=length):
            pre = from_rows([candidate_rows[i] for i in combo], n, field=field)
            seen.setdefault(pre.key(), pre)
    nodes = sorted(seen.values(), key=lambda p: (p.rank, p.matrix_str()))
    idx = {p.key(): i for i, p in enumerate(nodes)}
    less = [[False] * len(nodes) for _ in nodes]
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            if i != j and refines(a, b):
                less[i][j] = True
    edges = []
    for i in range(len(nodes)):
        for j in range(len(nodes)):
            if less[i][j] and not any(less[i][k] and less[k][j] for k in range(len(nodes))):
                edges.append((i, j))
    trivial = from_rows([], n, field=field)
    return FragmentGraph(tuple(nodes), tuple(edges), idx[trivial.key()])


def to_dot(g: FragmentGraph) -> str:
    """Deterministic Graphviz digraph; byte-identical for identical inputs."""
    lines = ["digraph fragment {", "  node [shape=box];"]
    for i, p in enumerate(g.nodes):
        label = f"{p.matrix_str()} rank={p.rank} degree={p.degree} type=({','.join(map(str, p.type_vec))})"
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in g.edges:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
