"""Rational convex polygons, the Delzant corner condition, corner chops, and
the Karshon graph of the circle picked out by a primitive covector."""
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ChopTooLargeError,
    IneffectiveActionError,
    InvalidPolygonError,
    NonPrimitiveError,
    NotDelzantError,
)
from .karshon import GraphVertex, KarshonGraph, ZkEdge, FAT, ISOLATED
from .lattice import (
    LatticeVector,
    RatPoint2,
    chop_region_contains,
    det2,
    lattice_length,
    pairing,
    primitive_direction,
    rational,
)


def _cross(o, a, b):
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


@dataclass(frozen=True)
class RationalPolygon:
    """Strictly convex polygon, vertices counterclockwise.

    The vertex list is rotated to start at the lexicographically smallest
    vertex, so equal polygons compare equal and indices are reproducible.
    A clockwise input is reversed rather than rejected.
    """
    vertices: tuple

    def __post_init__(self):
        pts = [p if isinstance(p, RatPoint2) else RatPoint2(*p) for p in self.vertices]
        n = len(pts)
        if n < 3:
            raise InvalidPolygonError("a polygon needs at least three vertices")
        if len(set(pts)) != n:
            raise InvalidPolygonError("repeated vertex")
        area2 = sum(_cross(pts[0], pts[i], pts[i + 1]) for i in range(1, n - 1))
        if area2 < 0:
            pts.reverse()
        for i in range(n):
            if _cross(pts[i - 1], pts[i], pts[(i + 1) % n]) <= 0:
                raise InvalidPolygonError(f"not strictly convex at {pts[i]!r}")
        # convex turns all left but total winding could exceed one turn
        if sum(1 for i in range(n) if pts[i] < pts[i - 1] and pts[i] < pts[(i + 1) % n]) != 1:
            raise InvalidPolygonError("vertex list winds more than once")
        start = pts.index(min(pts))
        object.__setattr__(self, "vertices", tuple(pts[start:] + pts[:start]))

    def __len__(self):
        return len(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i % len(self.vertices)]

    def edge(self, i):
        """Edge from vertex i to vertex i+1."""
        return self[i], self[i + 1]

    def arriving(self, i):
        return primitive_direction(self[i - 1], self[i])

    def departing(self, i):
        return primitive_direction(self[i], self[i + 1])

    def index_of(self, p):
        p = p if isinstance(p, RatPoint2) else RatPoint2(*p)
        try:
            return self.vertices.index(p)
        except ValueError:
            raise InvalidPolygonError(f"{p!r} is not a vertex") from None

    def area(self) -> Fraction:
        pts = self.vertices
        s = sum(pts[i].x * pts[i - len(pts) + 1].y - pts[i - len(pts) + 1].x * pts[i].y
                for i in range(len(pts)))
        return Fraction(s) / 2

    def contains(self, q, strict=True):
        for i in range(len(self)):
            c = _cross(self[i], self[i + 1], q)
            if c < 0 or (strict and c == 0):
                return False
        return True

    @property
    def xmin(self):
        return min(p.x for p in self.vertices)

    @property
    def xmax(self):
        return max(p.x for p in self.vertices)

    def lower_chain(self):
        """Lower boundary, left to right, starting at the lowest leftmost point."""
        n = len(self)
        start = min(range(n), key=lambda i: (self[i].x, self[i].y))
        out = [self[start]]
        i = start
        while True:
            nxt = self[i + 1]
            if nxt.x <= out[-1].x:
                break
            out.append(nxt)
            i += 1
        return out

    def upper_chain(self):
        """Upper boundary, left to right, starting at the highest leftmost point."""
        n = len(self)
        start = max(range(n), key=lambda i: (-self[i].x, self[i].y))
        out = [self[start]]
        i = start
        while True:
            prv = self[i - 1]
            if prv.x <= out[-1].x:
                break
            out.append(prv)
            i -= 1
        return out

    def lower_y(self, x):
        return _chain_y(self.lower_chain(), rational(x))

    def upper_y(self, x):
        return _chain_y(self.upper_chain(), rational(x))

    def vertical_edge(self, end):
        """(bottom, top) of the vertical edge at the min or max end, or None."""
        x = self.xmin if end == "min" else self.xmax
        pts = sorted(p for p in self.vertices if p.x == x)
        if len(pts) == 2:
            return pts[0], pts[1]
        return None

    def __repr__(self):
        inner = ", ".join(repr(p)[9:] for p in self.vertices)
        return f"RationalPolygon[{inner}]"


def _chain_y(chain, x):
    for a, b in zip(chain, chain[1:]):
        if a.x <= x <= b.x:
            return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)
    if len(chain) == 1 and chain[0].x == x:
        return chain[0].y
    raise InvalidPolygonError(f"x={x} is outside the polygon")


def polygon(*points) -> RationalPolygon:
    return RationalPolygon(tuple(RatPoint2(rational(x), rational(y)) for x, y in points))


def hull(points) -> RationalPolygon:
    """Convex hull with collinear points dropped (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) < 3:
        raise InvalidPolygonError("hull of fewer than three points")
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return RationalPolygon(tuple(lower[:-1] + upper[:-1]))


def from_boundary(points) -> RationalPolygon:
    """Polygon through a closed counterclockwise boundary walk, dropping
    repeated and collinear points.  Raises if the walk is not convex."""
    pts = []
    for p in points:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            if _cross(pts[i - 1], pts[i], pts[(i + 1) % len(pts)]) == 0:
                del pts[i]
                changed = True
                break
    return RationalPolygon(tuple(pts))


def transform(P: RationalPolygon, matrix, shift=(0, 0)) -> RationalPolygon:
    """Image under x -> M x + shift with M an integer matrix of determinant 1."""
    (a, b), (c, d) = matrix
    sx, sy = rational(shift[0]), rational(shift[1])
    return RationalPolygon(tuple(RatPoint2(a * p.x + b * p.y + sx, c * p.x + d * p.y + sy)
                                 for p in P.vertices))


@dataclass
class DelzantReport:
    valid: bool
    violations: list

    def __bool__(self):
        return self.valid


def check_delzant(P: RationalPolygon) -> DelzantReport:
    bad = []
    for i in range(len(P)):
        d = det2(P.arriving(i), P.departing(i))
        if d != 1:
            bad.append((i, f"det = {d} at {P[i]!r}"))
    return DelzantReport(not bad, bad)


def chop_simplex(P: RationalPolygon, i, lam):
    """(corner, u_prev, u_next) spanning the chop at vertex i."""
    return P[i], primitive_direction(P[i], P[i - 1]), primitive_direction(P[i], P[i + 1])


def corner_chop(P: RationalPolygon, i, lam) -> RationalPolygon:
    lam = rational(lam)
    n = len(P)
    if not 0 <= i < n:
        raise InvalidPolygonError(f"vertex index {i} out of range")
    if lam <= 0:
        raise ChopTooLargeError("chop size must be positive")
    if det2(P.arriving(i), P.departing(i)) != 1:
        raise NotDelzantError(f"vertex {i} is not a Delzant corner")
    x, u1, u2 = chop_simplex(P, i, lam)
    for j in range(n):
        if j != i and chop_region_contains(x, u1, u2, lam, P[j], closed=True):
            raise ChopTooLargeError(f"chop of size {lam} at vertex {i} reaches vertex {j}")
    pts = list(P.vertices)
    pts[i:i + 1] = [x.translate(u1, lam), x.translate(u2, lam)]
    return RationalPolygon(tuple(pts))


def karshon_of_restriction(P: RationalPolygon, xi) -> KarshonGraph:
    """Graph of the circle action generated by J = <xi, .> on the toric
    manifold of P.  Vertex ids: p<i> for corners, e<i> for fixed edges."""
    xi = xi if isinstance(xi, LatticeVector) else LatticeVector(*xi)
    if not xi.is_primitive():
        raise NonPrimitiveError(f"{xi!r} is not primitive")
    report = check_delzant(P)
    if not report.valid:
        raise NotDelzantError(f"polygon is not Delzant: {report.violations}")
    n = len(P)
    pairs = [pairing(xi, P.departing(i)) for i in range(n)]
    for i in range(n):
        if pairs[i] == 0 and pairs[i - 1] == 0:
            raise IneffectiveActionError("two adjacent edges are fixed")
    on_fat = set()
    verts = []
    for i in range(n):
        if pairs[i] == 0:
            a, b = P.edge(i)
            verts.append(GraphVertex(f"e{i}", FAT, pairing(xi, a), lattice_length(a, b), 0))
            on_fat.update((i, (i + 1) % n))
    for i in range(n):
        if i not in on_fat:
            verts.append(GraphVertex(f"p{i}", ISOLATED, pairing(xi, P[i])))
    edges = []
    for i in range(n):
        k = abs(pairs[i])
        if k >= 2:
            edges.append(ZkEdge(f"p{i}", f"p{(i + 1) % n}", k))
    return KarshonGraph(tuple(verts), tuple(edges))
