"""Worked examples used throughout the tests, the CLI demos and the docs.

Graphs are written out vertex by vertex as read off the pictures; the test
suite checks each one against an independent construction.
"""
from .delzant import polygon
from .karshon import KarshonGraph, ZkEdge, fat, isolated
from .semitoric import MarkedWeightedPolygon
from .lattice import point


def cp2_triangle():
    return polygon((0, 0), (1, 0), (0, 1))


def cp2_graph():
    return KarshonGraph((fat("f", 0, 1), isolated("t", 1)))


def four_blowup_polygon():
    return polygon(("1/8", "1/8"), ("3/8", 0), (1, 0), ("3/8", "5/8"),
                   ("1/8", "3/4"), (0, "3/4"), (0, "1/4"))


def four_blowup_graph():
    return KarshonGraph(
        (fat("f", 0, "1/2"), isolated("a", "1/8"), isolated("b", "3/8"),
         isolated("c", "1/8"), isolated("d", "3/8"), isolated("t", 1)),
        (ZkEdge("a", "b", 2), ZkEdge("c", "d", 2)),
    )


def five_blowup_marked():
    P = polygon(("1/8", "1/8"), ("3/8", 0), (1, 0), ("3/8", "5/8"), ("1/4", "11/16"),
                ("1/8", "5/8"), (0, "1/2"), (0, "1/4"))
    return MarkedWeightedPolygon(P, (point("1/4", "3/8"),), (1,))


def five_blowup_graph():
    return KarshonGraph(
        (fat("f", 0, "1/4"), isolated("a", "1/8"), isolated("b", "3/8"),
         isolated("c", "1/8"), isolated("d", "3/8"), isolated("m", "1/4"), isolated("t", 1)),
        (ZkEdge("a", "b", 2), ZkEdge("c", "d", 2)),
    )


def six_blowup_graph():
    return KarshonGraph(
        (fat("f", 0, "1/4"), isolated("t", 1),
         isolated("a", "1/8"), isolated("b", "3/8"),
         isolated("c", "1/8"), isolated("d", "3/8"),
         isolated("g", "1/8"), isolated("h", "3/8")),
        (ZkEdge("a", "b", 2), ZkEdge("c", "d", 2), ZkEdge("g", "h", 2)),
    )


def s2t2_graph(area=1, s=1):
    return KarshonGraph((fat("s0", 0, area, 1), fat("s1", s, area, 1)))


def efstathiou_martynchuk_graph():
    return KarshonGraph(
        (isolated("A", -3), isolated("B", -1), isolated("C", 1), isolated("D", 3)),
        (ZkEdge("A", "C", 2), ZkEdge("B", "D", 2)),
    )


def hirzebruch_polygon():
    return polygon((0, 0), (15, 0), (3, 4), (0, 4))


def hirzebruch_graph():
    return KarshonGraph((fat("f", 0, 4), isolated("u", 3), isolated("w", 15)),
                        (ZkEdge("u", "w", 3),))


def walkthrough_graph():
    """Final graph of the Hirzebruch walkthrough: one B3 at the top, three
    seeds of size 1 on the bottom surface, two of them grown into islands."""
    return KarshonGraph(
        (fat("f", 0, 1), isolated("u", 3), isolated("x", 12), isolated("y", 14),
         isolated("t1", "1/2"), isolated("t2", "3/2"),
         isolated("b1", "1/2"), isolated("b2", 1), isolated("b3", "7/4"),
         isolated("m", 1)),
        (ZkEdge("u", "x", 3), ZkEdge("x", "y", 2), ZkEdge("t1", "t2", 2),
         ZkEdge("b1", "b2", 2), ZkEdge("b2", "b3", 3)),
    )


GRAPHS = {
    "cp2": cp2_graph,
    "cp2-4-blowups": four_blowup_graph,
    "cp2-5-blowups": five_blowup_graph,
    "cp2-6-blowups": six_blowup_graph,
    "s2xt2": s2t2_graph,
    "efstathiou-martynchuk": efstathiou_martynchuk_graph,
    "hirzebruch": hirzebruch_graph,
    "walkthrough": walkthrough_graph,
}

POLYGONS = {
    "cp2-triangle": cp2_triangle,
    "cp2-4-blowups": four_blowup_polygon,
    "hirzebruch": hirzebruch_polygon,
}

MARKED = {
    "cp2-5-blowups": five_blowup_marked,
}
