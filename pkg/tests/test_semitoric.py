from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from momentforge.delzant import corner_chop, polygon
from momentforge.errors import (
    CutCollisionError,
    LengthMismatchError,
    MarkCollisionError,
    MarkNotInteriorError,
    NonVerticalEdgeError,
    SizeOutOfRangeError,
    ValidityError,
)
from momentforge.fixtures import (
    cp2_graph,
    cp2_triangle,
    five_blowup_graph,
    five_blowup_marked,
    four_blowup_polygon,
)
from momentforge.karshon import BlowupMove, blowup, graphs_equal
from momentforge.lattice import point
from momentforge.semitoric import (
    DELZANT,
    FAKE,
    HIDDEN,
    GroupElement,
    MarkedWeightedPolygon,
    act,
    all_up,
    canonicalize,
    check_marked_delzant,
    classify_corner,
    height_invariant,
    identity,
    karshon_of_semitoric,
    orbits_equal,
    semitoric_blowup,
    toric_blowup_st,
)
from strategies import group_elements, marked_polygons

F = Fraction


def pts(P):
    return {(p.x, p.y) for p in P.vertices}


def hull_oracle(points):
    """Corner set of the convex hull, computed by sympy."""
    H = sp.convex_hull(*[sp.Point(oracles.R(x), oracles.R(y)) for x, y in points])
    return {(oracles.Q(p.x), oracles.Q(p.y)) for p in H.vertices}


# the group action

def test_identity_action():
    W = five_blowup_marked()
    assert act(W, identity(1)) == W
    assert act(W, GroupElement()) == W


def test_flip_shears_right_of_the_cut():
    W = five_blowup_marked()
    flipped = act(W, GroupElement(0, 0, (-1,)))
    assert flipped.signs == (-1,)
    assert flipped.marks == W.marks
    # oracle: refine the boundary at x = 1/4 and lift x > 1/4 by x - 1/4
    boundary = [(p.x, p.y) for p in W.polygon.vertices] + [(F(1, 4), F(1, 16))]
    lifted = [(x, y + max(F(0), x - F(1, 4))) for x, y in boundary]
    assert pts(flipped.polygon) == hull_oracle(lifted)
    # the old fake corner stays put but is now a straight boundary point
    assert flipped.polygon.upper_y(F(1, 4)) == F(11, 16)
    assert act(flipped, GroupElement(0, 0, (-1,))) == W


def test_flip_keeps_graph():
    W = five_blowup_marked()
    flipped = act(W, GroupElement(0, 0, (-1,)))
    assert check_marked_delzant(flipped).valid
    i = flipped.polygon.index_of(point("1/4", "1/16"))
    assert classify_corner(flipped, i).kind == FAKE
    assert graphs_equal(karshon_of_semitoric(flipped), karshon_of_semitoric(W))


def test_orbits_of_shifted_polygon():
    W = MarkedWeightedPolygon(four_blowup_polygon())
    moved = act(W, GroupElement(1, 5, ()))
    assert orbits_equal(W, moved)
    assert not orbits_equal(W, MarkedWeightedPolygon(cp2_triangle()))


def test_canonical_rule():
    W = canonicalize(act(five_blowup_marked(), GroupElement(2, -3, (-1,))))
    low = W.polygon.lower_chain()
    slope = (low[1].y - low[0].y) / (low[1].x - low[0].x)
    assert 0 <= slope < 1
    assert low[0].y == 0 or W.polygon.vertical_edge("min")[0].y == 0
    assert all(s == 1 for s in W.signs)


# corners

def test_corner_kinds_of_five_blowup():
    W = five_blowup_marked()
    P = W.polygon
    i = P.index_of(point("1/4", "11/16"))
    v, w = tuple(P.arriving(i)), tuple(P.departing(i))
    assert (v, w) == ((-2, 1), (-2, -1))
    sheared = (w[0], w[1] - w[0])  # T^{-1}
    assert oracles.det(v, sheared) == 0
    assert classify_corner(W, i).kind == FAKE and classify_corner(W, i).m == 1
    assert str(classify_corner(W, i)) == "Fake(1)"
    j = P.index_of(point(1, 0))
    assert oracles.det(tuple(P.arriving(j)), tuple(P.departing(j))) == 1
    assert classify_corner(W, j).kind == DELZANT


def test_hidden_corner():
    W = semitoric_blowup(MarkedWeightedPolygon(polygon((0, 0), (3, 0), (1, 2), (0, 2))), "min", 1, F(1, 2))
    assert pts(W.polygon) == {(0, 0), (3, 0), (1, 2), (0, 1)}
    i = W.polygon.index_of(point(1, 2))
    v, w = tuple(W.polygon.arriving(i)), tuple(W.polygon.departing(i))
    assert (v, w) == ((-1, 1), (-1, -1))
    assert oracles.det(v, (w[0], w[1] - w[0])) == 1
    kind = classify_corner(W, i)
    assert kind.kind == HIDDEN and kind.m == 1


def test_marked_validity():
    assert check_marked_delzant(five_blowup_marked()).valid
    P = five_blowup_marked().polygon
    off = MarkedWeightedPolygon(P, (point("5/16", "3/8"),))
    assert not check_marked_delzant(off).valid
    assert check_marked_delzant(MarkedWeightedPolygon(four_blowup_polygon())).valid


def test_marked_polygon_errors():
    P = five_blowup_marked().polygon
    with pytest.raises(LengthMismatchError):
        MarkedWeightedPolygon(P, (point("1/4", "3/8"),), (1, 1))
    with pytest.raises(ValidityError):
        MarkedWeightedPolygon(P, (point("1/4", "3/8"),), (2,))
    with pytest.raises(MarkCollisionError):
        MarkedWeightedPolygon(P, (point("1/4", "3/8"), point("1/4", "3/8")))
    with pytest.raises(MarkNotInteriorError):
        MarkedWeightedPolygon(P, (point("1/4", "1/16"),))


# blowups

def test_toric_blowup_without_marks_is_a_chop():
    P = four_blowup_polygon()
    for i in range(len(P)):
        W = toric_blowup_st(MarkedWeightedPolygon(P), i, F(1, 64))
        assert W.polygon == corner_chop(P, i, F(1, 64))


def test_toric_blowup_away_from_the_cut():
    W = five_blowup_marked()
    i = W.polygon.index_of(point(1, 0))
    V = toric_blowup_st(W, i, F(1, 8))
    assert pts(V.polygon) == set(oracles.chop([(p.x, p.y) for p in W.polygon.vertices], i, F(1, 8)))
    assert {(F(7, 8), F(0)), (F(7, 8), F(1, 8))} <= pts(V.polygon)
    assert V.marks == W.marks and V.signs == W.signs


def test_toric_blowup_hitting_the_cut():
    W = five_blowup_marked()
    with pytest.raises(CutCollisionError):
        toric_blowup_st(W, W.polygon.index_of(point("3/8", "5/8")), F(1, 16))


def test_toric_blowup_swallowing_a_mark():
    W = semitoric_blowup(MarkedWeightedPolygon(polygon((0, 0), (4, 0), (0, 4))), "min", 1, F(1, 2))
    with pytest.raises(MarkCollisionError):
        toric_blowup_st(W, W.polygon.index_of(point(0, 0)), 2)


def test_semitoric_blowup_reproduces_five_blowup_polygon():
    W = semitoric_blowup(MarkedWeightedPolygon(four_blowup_polygon()), "min", F(1, 4), F(3, 8))
    assert W == five_blowup_marked()
    assert pts(W.polygon) == {(F(1, 8), F(1, 8)), (F(3, 8), 0), (1, 0), (F(3, 8), F(5, 8)),
                              (F(1, 4), F(11, 16)), (F(1, 8), F(5, 8)), (0, F(1, 2)), (0, F(1, 4))}
    assert W.marks == (point("1/4", "3/8"),) and W.signs == (1,)


def mirror_oracle(P, j):
    """Upper boundary pushed down by j - x left of j, lower boundary kept."""
    upper = [(p.x, p.y) for p in P.upper_chain()] + [(j, P.upper_y(j))]
    lower = [(p.x, p.y) for p in P.lower_chain()]
    moved = [(x, y - (j - x)) if x <= j else (x, y) for x, y in upper]
    return hull_oracle(moved + lower)


def test_semitoric_blowup_triangle():
    W = semitoric_blowup(MarkedWeightedPolygon(cp2_triangle()), "min", F(1, 2), F(1, 4))
    assert pts(W.polygon) == mirror_oracle(cp2_triangle(), F(1, 2))
    assert [(p.x, p.y) for p in W.polygon.lower_chain()] == [(0, 0), (1, 0)]
    assert [(p.x, p.y) for p in W.polygon.upper_chain()] == [(0, F(1, 2)), (F(1, 2), F(1, 2)), (1, 0)]
    assert W.marks == (point("1/2", "1/4"),)


def test_semitoric_blowup_errors():
    W = MarkedWeightedPolygon(four_blowup_polygon())
    with pytest.raises(SizeOutOfRangeError):
        semitoric_blowup(W, "min", F(1, 2), F(1, 4))
    with pytest.raises(SizeOutOfRangeError):
        semitoric_blowup(W, "min", 0, F(1, 4))
    with pytest.raises(NonVerticalEdgeError):
        semitoric_blowup(W, "max", F(1, 8), F(1, 4))
    with pytest.raises(MarkNotInteriorError):
        semitoric_blowup(W, "min", F(1, 4), 5)


def test_graphs_of_marked_polygons():
    assert graphs_equal(karshon_of_semitoric(MarkedWeightedPolygon(cp2_triangle())), cp2_graph())
    G = karshon_of_semitoric(five_blowup_marked())
    assert graphs_equal(G, five_blowup_graph())
    assert oracles.graph_data(G) == ([(0, F(1, 4))], [F(1, 8), F(1, 8), F(1, 4), F(3, 8), F(3, 8), 1],
                                     [(F(1, 8), F(3, 8), 2)] * 2)


def test_height_invariant():
    W = five_blowup_marked()
    # lower boundary at x = 1/4 between (1/8,1/8) and (3/8,0)
    x, y = sp.symbols("x y")
    low = sp.Line(sp.Point(sp.Rational(1, 8), sp.Rational(1, 8)), sp.Point(sp.Rational(3, 8), 0))
    y = sp.solve(low.equation(x, y).subs(x, sp.Rational(1, 4)), y)[0]
    assert height_invariant(W, 0) == F(3, 8) - oracles.Q(y) == F(5, 16)
    assert height_invariant(act(W, GroupElement(0, 7, (1,))), 0) == F(5, 16)


# properties

@settings(max_examples=200)
@given(st.data())
def test_graph_is_orbit_invariant(data):
    W = data.draw(marked_polygons())
    g = data.draw(group_elements(len(W.marks)))
    assert graphs_equal(karshon_of_semitoric(act(W, g)), karshon_of_semitoric(W))


@settings(max_examples=200)
@given(st.data())
def test_canonicalize_idempotent(data):
    W = data.draw(marked_polygons())
    V = act(W, data.draw(group_elements(len(W.marks))))
    C = canonicalize(V)
    assert canonicalize(C) == C
    assert orbits_equal(W, V)


@settings(max_examples=200)
@given(st.data())
def test_group_laws(data):
    W = data.draw(marked_polygons())
    n = len(W.marks)
    g1, g2 = data.draw(group_elements(n)), data.draw(group_elements(n))
    assert act(act(W, g1), g2) == act(W, g2.compose(g1))
    assert act(act(W, g1), g1.inverse()) == W


@settings(max_examples=200)
@given(marked_polygons())
def test_generated_polygons_are_valid(W):
    assert check_marked_delzant(W).valid
    assert check_marked_delzant(all_up(W)).valid


@settings(max_examples=200)
@given(marked_polygons(max_marks=1), st.sampled_from(("min", "max")), st.integers(1, 3),
       st.integers(-2, 2), st.integers(-3, 3))
def test_blowup_commutes_with_shear_and_shift(W, end, k, m, t):
    P = W.polygon
    edge = P.vertical_edge(end)
    if edge is None:
        return
    lam = min(edge[1].y - edge[0].y, P.xmax - P.xmin) * F(k, 4)
    j = P.xmin + lam if end == "min" else P.xmax - lam
    top = min([c.y for c in W.marks if c.x == j] + [P.upper_y(j)])
    h = (P.lower_y(j) + top) / 2
    try:
        B = semitoric_blowup(W, end, lam, h)
    except (SizeOutOfRangeError, MarkNotInteriorError):
        return
    g = GroupElement(m, t, (1,) * len(W.marks))
    V = act(W, g)
    hV = V.polygon.lower_y(j) + (h - P.lower_y(j))
    BV = semitoric_blowup(V, end, lam, hV)
    assert canonicalize(B) == canonicalize(BV)
    assert check_marked_delzant(B).valid
    # the graph effect is a B1 move of the same size on the surface at that end
    G = karshon_of_semitoric(W)
    fat_id = next(v.id for v in G.fat_vertices() if v.j == (P.xmin if end == "min" else P.xmax))
    assert graphs_equal(karshon_of_semitoric(B), blowup(G, BlowupMove("B1", fat_id, lam, end)))


@settings(max_examples=200)
@given(st.data())
def test_height_invariant_is_orbit_invariant(data):
    W = data.draw(marked_polygons())
    g = data.draw(group_elements(len(W.marks)))
    A, B = canonicalize(W), canonicalize(act(W, g))
    for k in range(len(A.marks)):
        assert height_invariant(A, k) == height_invariant(B, k)
