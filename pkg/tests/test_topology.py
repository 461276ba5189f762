import itertools
import random
from fractions import Fraction as Q

import pytest

from preorderspace import (
    Distance,
    FieldVector,
    Isolated,
    NumberField,
    Sign,
    TrivialPreorder,
    distance,
    enumerate_fragment,
    fingerprint,
    from_rows,
    is_isolated,
    perturb_in_ball,
    refines,
    same_type_neighbors,
    sphere_point,
    to_dot,
)
from preorderspace.topology import first_disagreement_level, half_box

QF = NumberField.rational()


@pytest.fixture(scope="module")
def sqrt2():
    return NumberField((-2, 0, 1), (1, 2))


def fv(field, *entries):
    return FieldVector.from_rationals(field, entries)


def rand_preorder(rng, field, n):
    rows = [FieldVector(field, tuple(
        field.element([Q(rng.randint(-2, 2), rng.randint(1, 2))] +
                      [Q(rng.randint(-2, 2))] * (field.degree - 1))
        for _ in range(n))) for _ in range(rng.randint(0, n))]
    return from_rows(rows, n, field=field)


# --- fingerprints -----------------------------------------------------------

def test_fingerprint_trivial():
    p = from_rows([], 2, field=QF)
    fp = fingerprint(p, 3)
    assert all(s == Sign.ZERO for s in fp.signs.values())
    assert fp.sign((0, 0)) == Sign.ZERO


def test_fingerprint_axis():
    p = from_rows([fv(QF, 1, 0)], 2, field=QF)
    fp = fingerprint(p, 1)
    assert fp.sign((1, 0)) == Sign.POS
    assert fp.sign((-1, 0)) == Sign.NEG
    assert fp.sign((0, 1)) == Sign.ZERO
    assert fp.sign((0, -1)) == Sign.ZERO


def test_fingerprint_irrational(sqrt2):
    p = from_rows([FieldVector(sqrt2, (sqrt2.one(), sqrt2.alpha()))], 2, field=sqrt2)
    fp = fingerprint(p, 1)
    assert fp.sign((1, -1)) == Sign.NEG  # 1 - sqrt2 < 0


def test_fingerprint_symmetry_storage():
    p = from_rows([fv(QF, 1, 2)], 2, field=QF)
    fp = fingerprint(p, 2)
    for u in fp.signs:
        assert fp.sign(tuple(-x for x in u)) == fp.sign(u).flip()


def relations_equal_on_box(p, q, k):
    """Brute force over ordered pairs of box points."""
    pts = list(itertools.product(range(-k, k + 1), repeat=p.n))
    for u, v in itertools.product(pts, repeat=2):
        le_p = p.compare(u, v) != Sign.POS
        le_q = q.compare(u, v) != Sign.POS
        if le_p != le_q:
            return False
    return True


def test_difference_set_law_exhaustive(sqrt2):
    # restriction equality on G_k as pair relations == fingerprint equality at 2k
    rng = random.Random(73)
    pairs = []
    lex = from_rows([fv(sqrt2, 1, 0), fv(sqrt2, 0, 1)], 2, field=sqrt2)
    for k in (1, 2, 3):
        row = FieldVector(sqrt2, (sqrt2.one(), sqrt2.alpha() * Q(1, 2 * k)))
        pairs.append((from_rows([row], 2, field=sqrt2), lex))
    for _ in range(6):
        pairs.append((rand_preorder(rng, sqrt2, 2), rand_preorder(rng, sqrt2, 2)))
    for p, q in pairs:
        for k in (1, 2, 3):
            assert relations_equal_on_box(p, q, k) == (fingerprint(p, 2 * k) == fingerprint(q, 2 * k))


def test_fingerprint_json_deterministic():
    p = from_rows([fv(QF, 1, 2)], 2, field=QF)
    blob = fingerprint(p, 1).to_json()
    assert blob["level"] == 1
    assert blob["signs"] == sorted(blob["signs"], key=lambda e: e["u"])
    assert {"u": [1, 0], "s": "+"} in blob["signs"]


# --- distance ----------------------------------------------------------------

def test_distance_identity_and_symmetry():
    p = from_rows([fv(QF, 1, 0)], 2, field=QF)
    q = from_rows([fv(QF, -1, 0)], 2, field=QF)
    assert distance(p, p, 5) == Distance.zero()
    assert str(distance(p, q, 4)) == "1/1"
    assert distance(p, q, 4) == distance(q, p, 4)


def test_distance_at_most():
    p = from_rows([fv(QF, 1, 10**6)], 2, field=QF)
    q = from_rows([fv(QF, 1, 10**6 + 1)], 2, field=QF)
    d = distance(p, q, 4)
    assert d == Distance.at_most(5)
    assert str(d) == "≤1/5"


def test_distance_vs_pair_restriction_oracle(sqrt2):
    rng = random.Random(79)
    for i in range(25):
        field = sqrt2 if i % 2 else QF
        p = rand_preorder(rng, field, 2)
        q = rand_preorder(rng, field, 2)
        d = distance(p, q, 4)
        if p.equals(q):
            assert d.kind == "zero"
            continue
        agree = [relations_equal_on_box(p, q, k) for k in (1, 2, 3, 4)]
        if d.kind == "exact":
            m = d.m
            assert not agree[m - 1]
            if m >= 2:
                assert agree[m - 2]
        else:
            assert all(agree)


def test_ultrametric_inequality(sqrt2):
    rng = random.Random(83)
    for i in range(60):
        field = sqrt2 if i % 2 else QF
        a, b, c = (rand_preorder(rng, field, 2) for _ in range(3))
        dab = distance(a, b, 5).upper_bound
        dbc = distance(b, c, 5).upper_bound
        dac = distance(a, c, 5).upper_bound
        assert dac <= max(dab, dbc)


def test_ball_inside_subbasic_open(sqrt2):
    rng = random.Random(89)
    for _ in range(40):
        p = rand_preorder(rng, sqrt2, 2)
        q = rand_preorder(rng, sqrt2, 2)
        u = (rng.randint(-3, 3), rng.randint(-3, 3))
        if not any(u):
            continue
        ht = max(abs(x) for x in u)
        if fingerprint(p, ht) == fingerprint(q, ht) and q.in_O(u):
            assert p.in_O(u)


# --- isolation and witnesses --------------------------------------------------

def test_isolation_dichotomy(sqrt2):
    assert is_isolated(from_rows([], 2, field=QF))
    assert is_isolated(from_rows([fv(QF, 1, 0)], 2, field=QF))
    p_irr = from_rows([FieldVector(sqrt2, (sqrt2.one(), sqrt2.alpha()))], 2, field=sqrt2)
    assert not is_isolated(p_irr)
    lex3 = from_rows([fv(QF, 1, 0, 0), fv(QF, 0, 1, 0)], 3, field=QF)
    assert not is_isolated(lex3)


def test_perturb_isolated_raises():
    with pytest.raises(Isolated):
        perturb_in_ball(from_rows([fv(QF, 1, 0)], 2, field=QF), 3)
    with pytest.raises(Isolated):
        same_type_neighbors(from_rows([], 2, field=QF), 3, 1)


def test_perturb_contract(sqrt2):
    p = from_rows([FieldVector(sqrt2, (sqrt2.one(), sqrt2.alpha()))], 2, field=sqrt2)
    w = perturb_in_ball(p, 5, want_same_type=True)
    assert not w.equals(p)
    assert fingerprint(w, 10) == fingerprint(p, 10)
    assert (w.rank, w.degree) == (p.rank, p.degree)


def test_neighbors_deterministic_and_distinct(sqrt2):
    p = from_rows([FieldVector(sqrt2, (sqrt2.one(), sqrt2.alpha()))], 2, field=sqrt2)
    ns = same_type_neighbors(p, 3, 3)
    assert len(ns) == 3
    for i, a in enumerate(ns):
        assert fingerprint(a, 6) == fingerprint(p, 6)
        assert a.type_vec == p.type_vec
        for b in ns[i + 1:]:
            assert not a.equals(b)
    single = same_type_neighbors(p, 3, 1)
    assert single[0].equals(ns[0])
    assert perturb_in_ball(p, 3, want_same_type=True).equals(ns[0])


def test_sphere_point():
    assert sphere_point(from_rows([fv(QF, 1, 0), fv(QF, 0, 1)], 2, field=QF)) == fv(QF, 1, 0)
    assert sphere_point(from_rows([fv(QF, 3, 4)], 2, field=QF)) == fv(QF, 1, Q(4, 3))
    with pytest.raises(TrivialPreorder):
        sphere_point(from_rows([], 2, field=QF))


def test_sphere_point_irrational(sqrt2):
    row = FieldVector(sqrt2, (sqrt2.one(), sqrt2.alpha()))
    assert sphere_point(from_rows([row], 2, field=sqrt2)) == row


# --- fragments ---------------------------------------------------------------

def test_fragment_line():
    cands = [fv(QF, 1), fv(QF, -1)]
    g = enumerate_fragment(cands, 1, 1, field=QF)
    assert len(g.nodes) == 3
    assert len(g.edges) == 2
    assert all(i == g.root for i, _ in g.edges)
    assert g.nodes[g.root].is_trivial()


def test_fragment_axes_count():
    cands = [fv(QF, 1, 0), fv(QF, -1, 0), fv(QF, 0, 1), fv(QF, 0, -1)]
    g = enumerate_fragment(cands, 2, 2, field=QF)
    assert len(g.nodes) == 13  # 1 trivial + 4 rank-one + 8 rank-two
    ranks = [p.rank for p in g.nodes]
    assert ranks.count(0) == 1 and ranks.count(1) == 4 and ranks.count(2) == 8
    # every non-root node has exactly one parent inside the fragment
    children = {j for _, j in g.edges}
    assert children == set(range(len(g.nodes))) - {g.root}
    parents = [i for i, _ in g.edges]
    for i, j in g.edges:
        assert refines(g.nodes[i], g.nodes[j])


def test_fragment_empty():
    g = enumerate_fragment([], 2, 2, field=QF)
    assert len(g.nodes) == 1 and not g.edges


def test_dot_output():
    cands = [fv(QF, 1), fv(QF, -1)]
    g = enumerate_fragment(cands, 1, 1, field=QF)
    dot = to_dot(g)
    assert dot == to_dot(enumerate_fragment(cands, 1, 1, field=QF))
    assert dot.startswith("digraph fragment {")
    assert dot.count("->") == 2
    assert 'label="lex[] rank=0 degree=1 type=()"' in dot


# --- first_disagreement_level utility ----------------------------------------

def test_first_disagreement_levels(sqrt2):
    lex = from_rows([fv(sqrt2, 1, 0), fv(sqrt2, 0, 1)], 2, field=sqrt2)
    for k in (1, 2, 3, 4):
        row = FieldVector(sqrt2, (sqrt2.one(), sqrt2.alpha() * Q(1, 2 * k)))
        pk = from_rows([row], 2, field=sqrt2)
        import math
        assert first_disagreement_level(pk, lex, 40) == math.isqrt(2 * k * k) + 1
