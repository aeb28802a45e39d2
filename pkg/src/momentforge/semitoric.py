"""Marked weighted polygons: representatives of the semitoric polygon
invariant, the group acting on them, corner classification, the two kinds
of blowup, and extraction of the underlying Karshon graph."""
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .delzant import RationalPolygon, chop_simplex, corner_chop, from_boundary
from .errors import (
    CutCollisionError,
    IndexOutOfRangeError,
    LengthMismatchError,
    MarkCollisionError,
    MarkNotInteriorError,
    NonVerticalEdgeError,
    NotDelzantError,
    SizeOutOfRangeError,
    ValidityError,
)
from .karshon import FAT, ISOLATED, GraphVertex, KarshonGraph, ZkEdge
from .lattice import (
    RatPoint2,
    chop_region_contains,
    cut_shear,
    det2,
    rational,
    shear,
)


@dataclass(frozen=True)
class MarkedWeightedPolygon:
    polygon: RationalPolygon
    marks: tuple = ()
    signs: tuple = ()

    def __post_init__(self):
        marks = tuple(m if isinstance(m, RatPoint2) else RatPoint2(*m) for m in self.marks)
        signs = tuple(self.signs) if self.signs else (1,) * len(marks)
        if len(signs) != len(marks):
            raise LengthMismatchError(f"{len(marks)} marks but {len(signs)} signs")
        if any(s not in (1, -1) for s in signs):
            raise ValidityError("cut signs must be +1 or -1")
        if len(set(marks)) != len(marks):
            raise MarkCollisionError("two marks at the same point")
        for m in marks:
            if not self.polygon.contains(m, strict=True):
                raise MarkNotInteriorError(f"mark {m!r} is not interior")
        pairs = sorted(zip(marks, signs))
        object.__setattr__(self, "marks", tuple(p[0] for p in pairs))
        object.__setattr__(self, "signs", tuple(p[1] for p in pairs))

    def cut_end(self, k):
        """Point where the cut of mark k meets the boundary."""
        c = self.marks[k]
        if self.signs[k] > 0:
            return RatPoint2(c.x, self.polygon.upper_y(c.x))
        return RatPoint2(c.x, self.polygon.lower_y(c.x))

    def cuts_through(self, p):
        return sum(1 for k in range(len(self.marks)) if self.cut_end(k) == p)


@dataclass(frozen=True)
class GroupElement:
    """T^shear_power followed by a vertical shift, together with sign flips."""
    shear_power: int = 0
    vertical_shift: Fraction = Fraction(0)
    sign_flips: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertical_shift", rational(self.vertical_shift))
        object.__setattr__(self, "sign_flips", tuple(self.sign_flips))

    def compose(self, first):
        """self after first."""
        if len(self.sign_flips) != len(first.sign_flips):
            raise LengthMismatchError("group elements act on different mark counts")
        return GroupElement(self.shear_power + first.shear_power,
                            self.vertical_shift + first.vertical_shift,
                            tuple(a * b for a, b in zip(self.sign_flips, first.sign_flips)))

    def inverse(self):
        return GroupElement(-self.shear_power, -self.vertical_shift, self.sign_flips)


def identity(count):
    return GroupElement(0, 0, (1,) * count)


def _refined_boundary(P: RationalPolygon, xs):
    """Boundary walk with extra points where the lines x in xs cross edges."""
    out = []
    for i in range(len(P)):
        a, b = P.edge(i)
        out.append(a)
        inner = [x for x in set(xs) if min(a.x, b.x) < x < max(a.x, b.x)]
        inner.sort(reverse=b.x < a.x)
        for x in inner:
            out.append(RatPoint2(x, a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)))
    return out


def act(W: MarkedWeightedPolygon, g: GroupElement) -> MarkedWeightedPolygon:
    flips = g.sign_flips if g.sign_flips else (1,) * len(W.marks)
    if len(flips) != len(W.marks):
        raise LengthMismatchError(f"{len(flips)} sign flips for {len(W.marks)} marks")
    powers = [e * (1 - f) // 2 for e, f in zip(W.signs, flips)]

    def sigma(p):
        for c, u in zip(W.marks, powers):
            if u:
                p = cut_shear(c.x, False, u < 0, p)
        p = shear(g.shear_power, p)
        return RatPoint2(p.x, p.y + g.vertical_shift)

    pts = _refined_boundary(W.polygon, [c.x for c in W.marks])
    poly = from_boundary([sigma(p) for p in pts])
    return MarkedWeightedPolygon(poly, tuple(sigma(c) for c in W.marks),
                                 tuple(e * f for e, f in zip(W.signs, flips)))


def all_up(W: MarkedWeightedPolygon) -> MarkedWeightedPolygon:
    if all(s > 0 for s in W.signs):
        return W
    return act(W, GroupElement(0, 0, W.signs))


def canonicalize(W: MarkedWeightedPolygon) -> MarkedWeightedPolygon:
    """Orbit representative: cuts up, first lower edge slope in [0, 1),
    lowest point of the left end at height 0."""
    W = all_up(W)
    low = W.polygon.lower_chain()
    a, b = low[0], low[1]
    m = -floor((b.y - a.y) / (b.x - a.x))
    t = -(m * a.x + a.y)
    return act(W, GroupElement(m, t, (1,) * len(W.marks)))


def orbits_equal(W1, W2) -> bool:
    return canonicalize(W1) == canonicalize(W2)


# corners

@dataclass(frozen=True)
class CornerKind:
    kind: str
    m: int = 0

    def __str__(self):
        return self.kind if self.kind in (DELZANT, VIOLATING) else f"{self.kind}({self.m})"


DELZANT, HIDDEN, FAKE, VIOLATING = "Delzant", "Hidden", "Fake", "Violating"


def classify_corner(W: MarkedWeightedPolygon, i) -> CornerKind:
    P = W.polygon
    v, w = P.arriving(i), P.departing(i)
    m = W.cuts_through(P[i])
    if m == 0:
        return CornerKind(DELZANT) if det2(v, w) == 1 else CornerKind(VIOLATING)
    d = det2(v, shear(-m, w))
    if d == 0:
        return CornerKind(FAKE, m)
    if d == 1:
        return CornerKind(HIDDEN, m)
    return CornerKind(VIOLATING, m)


@dataclass
class MarkedReport:
    valid: bool
    violations: list
    corners: list

    def __bool__(self):
        return self.valid


def check_marked_delzant(W: MarkedWeightedPolygon) -> MarkedReport:
    P = W.polygon
    bad = []
    verts = set(P.vertices)
    for k in range(len(W.marks)):
        end = W.cut_end(k)
        if end not in verts:
            bad.append((f"mark {k}", f"cut meets the boundary at {end!r}, not a vertex"))
    kinds = []
    for i in range(len(P)):
        kind = classify_corner(W, i)
        kinds.append(kind)
        if kind.kind == VIOLATING:
            bad.append((i, f"corner {P[i]!r} violates the corner condition"))
    return MarkedReport(not bad, bad, kinds)


# blowups

def _triangle_slice(tri, x):
    ys = []
    for a, b in zip(tri, tri[1:] + tri[:1]):
        if a.x == b.x == x:
            ys += [a.y, b.y]
        elif min(a.x, b.x) <= x <= max(a.x, b.x) and a.x != b.x:
            ys.append(a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x))
    return (min(ys), max(ys)) if ys else None


def toric_blowup_st(W: MarkedWeightedPolygon, i, lam) -> MarkedWeightedPolygon:
    lam = rational(lam)
    P = W.polygon
    if not 0 <= i < len(P):
        raise IndexOutOfRangeError(f"vertex index {i} out of range")
    if classify_corner(W, i).kind != DELZANT:
        raise NotDelzantError(f"corner {i} is not a Delzant corner")
    x, u1, u2 = chop_simplex(P, i, lam)
    tri = [x, x.translate(u1, lam), x.translate(u2, lam)]
    for c in W.marks:
        if chop_region_contains(x, u1, u2, lam, c, closed=True):
            raise MarkCollisionError(f"chop simplex contains mark {c!r}")
    for k, c in enumerate(W.marks):
        sl = _triangle_slice(tri, c.x)
        if sl is None:
            continue
        end = W.cut_end(k)
        lo, hi = min(c.y, end.y), max(c.y, end.y)
        if sl[0] <= hi and lo <= sl[1]:
            raise CutCollisionError(f"chop simplex meets the cut at x={c.x}")
    return MarkedWeightedPolygon(corner_chop(P, i, lam), W.marks, W.signs)


def semitoric_blowup(W: MarkedWeightedPolygon, end, lam, height) -> MarkedWeightedPolygon:
    lam, height = rational(lam), rational(height)
    if any(s < 0 for s in W.signs):
        raise ValidityError("semitoric blowup needs every cut pointing up")
    P = W.polygon
    edge = P.vertical_edge(end)
    if edge is None:
        raise NonVerticalEdgeError(f"the {end} end of the polygon is not a vertical edge")
    A = edge[1].y - edge[0].y
    if not (0 < lam < A and lam < P.xmax - P.xmin):
        raise SizeOutOfRangeError(f"size {lam} outside (0, min({A}, {P.xmax - P.xmin}))")
    mirror = end == "min"
    j = P.xmin + lam if mirror else P.xmax - lam
    lower = P.lower_chain()
    upper = P.upper_chain()
    if all(p.x != j for p in upper):
        upper.append(RatPoint2(j, P.upper_y(j)))
        upper.sort()
    upper = [cut_shear(j, mirror, True, p) for p in upper]
    new = from_boundary(lower + upper[::-1])
    if not new.contains(RatPoint2(j, height), strict=True):
        raise MarkNotInteriorError(f"height {height} is not interior at x={j}")
    for c in W.marks:
        if not new.contains(c, strict=True):
            raise MarkNotInteriorError(f"existing mark {c!r} falls outside the blown up polygon")
    return MarkedWeightedPolygon(new, W.marks + (RatPoint2(j, height),), W.signs + (1,))


def height_invariant(W: MarkedWeightedPolygon, k) -> Fraction:
    if not 0 <= k < len(W.marks):
        raise IndexOutOfRangeError(f"mark index {k} out of range")
    c = W.marks[k]
    return c.y - W.polygon.lower_y(c.x)


def karshon_of_semitoric(W: MarkedWeightedPolygon) -> KarshonGraph:
    """Vertex ids: e<i> vertical edges, p<i> corners, c<k> marks (indices
    refer to the all-cuts-up representative)."""
    W = all_up(W)
    report = check_marked_delzant(W)
    if not report.valid:
        raise ValidityError(f"marked polygon is not valid: {report.violations}")
    P = W.polygon
    n = len(P)
    kinds = report.corners
    vertical = [P[i].x == P[i + 1].x for i in range(n)]
    on_fat = set()
    verts = []
    for i in range(n):
        if vertical[i]:
            a, b = P.edge(i)
            verts.append(GraphVertex(f"e{i}", FAT, a.x, abs(b.y - a.y), 0))
            on_fat.update((i, (i + 1) % n))
    for i in range(n):
        if i not in on_fat and kinds[i].kind != FAKE:
            verts.append(GraphVertex(f"p{i}", ISOLATED, P[i].x))
    for k, c in enumerate(W.marks):
        verts.append(GraphVertex(f"c{k}", ISOLATED, c.x))
    edges = []
    for i in range(n):
        if kinds[i].kind == FAKE or vertical[i]:
            continue
        # walk a chain from a non-fake corner through fake ones
        ks = set()
        j = i
        while True:
            if vertical[j % n]:
                raise ValidityError("a chain of edges runs into a vertical edge")
            ks.add(abs(P.departing(j).a))
            j += 1
            if kinds[j % n].kind != FAKE:
                break
        if len(ks) != 1:
            raise ValidityError(f"edge chain from corner {i} mixes labels {sorted(ks)}")
        (k,) = ks
        if k >= 2:
            a, b = i % n, j % n
            if a in on_fat or b in on_fat:
                raise ValidityError("a labelled chain ends on a fixed surface")
            edges.append(ZkEdge(f"p{a}", f"p{b}", k))
    return KarshonGraph(tuple(verts), tuple(edges))
