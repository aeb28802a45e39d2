"""Minimal models: recognition of a minimal Karshon graph and realization
of a recognized model as a graph (and, when possible, a polygon)."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .delzant import RationalPolygon, karshon_of_restriction, polygon, transform
from .errors import CatalogMismatchError
from .karshon import (
    KarshonGraph,
    derive_weights,
    fat,
    graphs_equal,
    translate,
)
from .lattice import LatticeVector, rational

CP2 = "cp2"
HIRZEBRUCH = "hirzebruch"
RULED = "ruled"


def _egcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def frame_matrix(xi: LatticeVector):
    """Integer matrix of determinant 1 whose first row is xi."""
    g, x, y = _egcd(xi.a, xi.b)
    assert g == 1
    return ((xi.a, xi.b), (-y, x))


@dataclass(frozen=True)
class MinimalModelDescriptor:
    """One member of the minimal catalog.

    cp2: triangle of size ``scale``.  hirzebruch: the trapezoid
    (0,0),(a+n b,0),(a,b),(0,b).  ruled: two surfaces of genus ``genus`` at
    distance ``s`` with areas a and a + n s.  ``xi`` picks the circle inside
    the torus for the toric kinds; ``offset`` is added to every J-value.
    """
    kind: str
    scale: Fraction = None
    n: int = None
    a: Fraction = None
    b: Fraction = None
    genus: int = 0
    s: Fraction = None
    xi: LatticeVector = None
    offset: Fraction = Fraction(0)

    def base_polygon(self):
        if self.kind == CP2:
            c = self.scale
            return polygon((0, 0), (c, 0), (0, c))
        if self.kind == HIRZEBRUCH:
            a, b, n = self.a, self.b, self.n
            return polygon((0, 0), (a + n * b, 0), (a, b), (0, b))
        if self.kind == RULED and self.genus == 0:
            s, a, n = self.s, self.a, self.n
            return polygon((0, 0), (s, 0), (s, a + n * s), (0, a))
        return None

    def frame_polygon(self) -> RationalPolygon:
        """A polygon whose restriction to xi = (1,0) is the realized graph,
        or None for ruled surfaces of positive genus."""
        P0 = self.base_polygon()
        if P0 is None:
            return None
        xi = self.xi or LatticeVector(1, 0)
        return transform(P0, frame_matrix(xi), (self.offset, 0))

    def graph(self) -> KarshonGraph:
        if self.kind == RULED:
            return KarshonGraph((
                fat("s0", self.offset, self.a, self.genus),
                fat("s1", self.offset + self.s, self.a + self.n * self.s, self.genus),
            ))
        G = karshon_of_restriction(self.base_polygon(), self.xi)
        return translate(G, self.offset)


def realize(descriptor: MinimalModelDescriptor) -> KarshonGraph:
    return descriptor.graph()


def _signature(G: KarshonGraph):
    lo = G.jmin
    return sorted((v.j - lo, v.kind, v.area or Fraction(0)) for v in G.vertices)


def _xi_order(bound):
    out = []
    for p, q in product(range(-bound, bound + 1), repeat=2):
        v = LatticeVector(p, q)
        if v.is_primitive():
            out.append(v)
    first = LatticeVector(1, 0)
    out.sort(key=lambda v: (v != first, max(abs(v.a), abs(v.b)), abs(v.a) + abs(v.b), -v.a, -v.b))
    return out


def _try(G, sig, desc):
    try:
        R = karshon_of_restriction(desc.base_polygon(), desc.xi)
    except ValueError:
        return None
    if _signature(R) != sig:
        return None
    offset = G.jmin - R.jmin
    R = translate(R, offset)
    if graphs_equal(R, G):
        return MinimalModelDescriptor(**{**desc.__dict__, "offset": offset})
    return None


def match_minimal(G: KarshonGraph):
    """The catalog entry realizing G, or None when G is not in the catalog."""
    fats = G.fat_vertices()
    others = [v for v in G.vertices if not v.is_fat]
    if len(fats) == 2 and not others:
        lo, hi = sorted(fats, key=lambda v: v.j)
        s = hi.j - lo.j
        n = (hi.area - lo.area) / s
        if lo.genus == hi.genus and n.denominator == 1:
            xi = LatticeVector(1, 0) if lo.genus == 0 else None
            return MinimalModelDescriptor(RULED, genus=lo.genus, s=s, a=lo.area,
                                          n=int(n), xi=xi, offset=lo.j)
        return None
    if any(v.genus for v in fats) or len(G.vertices) > 4:
        return None
    W = max(max(abs(w) for w in derive_weights(G, v.id)) for v in G.vertices)
    sig = _signature(G)
    L = G.jmax - G.jmin
    js = sorted({v.j for v in G.vertices})
    diffs = sorted({b - a for a in js for b in js if b > a})
    areas = sorted({v.area for v in fats})
    for xi in _xi_order(max(W, 1)):
        p, q = xi.a, xi.b
        r = max(0, p, q) - min(0, p, q)
        found = _try(G, sig, MinimalModelDescriptor(CP2, scale=L / r, xi=xi))
        if found:
            return found
        if p == 0:
            continue
        bs = [d / abs(q) for d in diffs] if q else areas
        as_ = [d / abs(p) for d in diffs]
        nmax = (W + abs(q)) // abs(p)
        for n in range(0, nmax + 1):
            for a in as_:
                for b in bs:
                    found = _try(G, sig, MinimalModelDescriptor(HIRZEBRUCH, n=n, a=a, b=b, xi=xi))
                    if found:
                        return found
    return None


def require_minimal(G: KarshonGraph) -> MinimalModelDescriptor:
    desc = match_minimal(G)
    if desc is None:
        raise CatalogMismatchError("graph is not a member of the minimal catalog")
    return desc


def descriptor_from_fields(kind, xi=None, offset=0, **fields) -> MinimalModelDescriptor:
    conv = {}
    for key, val in fields.items():
        if val is None:
            continue
        conv[key] = int(val) if key in ("n", "genus") else rational(val)
    if xi is not None and not isinstance(xi, LatticeVector):
        xi = LatticeVector(*xi)
    return MinimalModelDescriptor(kind, xi=xi, offset=rational(offset), **conv)


__all__ = [
    "CP2", "HIRZEBRUCH", "RULED", "MinimalModelDescriptor", "match_minimal",
    "realize", "require_minimal", "frame_matrix", "descriptor_from_fields",
]
