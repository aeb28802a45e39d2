"""Karshon graphs of Hamiltonian circle actions on 4-manifolds, with the
blowup and blowdown calculus.

Vertex ids are opaque strings.  Operations never mutate; they hand back new
graphs whose fresh vertices get deterministic ids, so replaying a move list
always produces the same labels.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import (
    CaseMismatchError,
    ExtremalLevelError,
    InadmissibleMoveError,
    InvalidGraphError,
)
from .lattice import format_rational, rational

ISOLATED = "isolated"
FAT = "fat"
CASES = ("B1", "B2", "B3", "B4")
SIDES = ("min", "max")


@dataclass(frozen=True)
class GraphVertex:
    id: str
    kind: str
    j: Fraction
    area: Fraction = None
    genus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "j", rational(self.j))
        if self.kind == FAT:
            if self.area is None:
                raise InvalidGraphError(f"fat vertex {self.id} needs an area")
            object.__setattr__(self, "area", rational(self.area))
            if self.area <= 0:
                raise InvalidGraphError(f"fat vertex {self.id} has non-positive area")
            if not isinstance(self.genus, int) or self.genus < 0:
                raise InvalidGraphError(f"fat vertex {self.id} has a bad genus")
        elif self.kind == ISOLATED:
            if self.area is not None or self.genus:
                raise InvalidGraphError(f"isolated vertex {self.id} carries surface data")
        else:
            raise InvalidGraphError(f"unknown vertex kind {self.kind!r}")

    @property
    def is_fat(self):
        return self.kind == FAT

    def key(self):
        return (self.j, 0 if self.is_fat else 1, self.area or Fraction(0), self.genus)


def isolated(id, j):
    return GraphVertex(id, ISOLATED, rational(j))


def fat(id, j, area, genus=0):
    return GraphVertex(id, FAT, rational(j), rational(area), genus)


@dataclass(frozen=True)
class ZkEdge:
    u: str
    v: str
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise InvalidGraphError(f"edge label must be an integer >= 2, got {self.k!r}")
        if self.u == self.v:
            raise InvalidGraphError("an edge needs two distinct endpoints")
        if self.v < self.u:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)

    def other(self, vid):
        return self.v if vid == self.u else self.u


@dataclass(frozen=True, eq=False)
class KarshonGraph:
    vertices: tuple
    edges: tuple = ()
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if not self.vertices:
            raise InvalidGraphError("a Karshon graph has at least one vertex")
        index = {}
        for v in self.vertices:
            if v.id in index:
                raise InvalidGraphError(f"duplicate vertex id {v.id!r}")
            index[v.id] = v
        object.__setattr__(self, "_index", index)
        seen = set()
        for e in self.edges:
            for end in (e.u, e.v):
                if end not in index:
                    raise InvalidGraphError(f"edge endpoint {end!r} is not a vertex")
                if index[end].is_fat:
                    raise InvalidGraphError(f"edge touches fat vertex {end!r}")
            if index[e.u].j == index[e.v].j:
                raise InvalidGraphError(f"edge {e.u}-{e.v} joins vertices at equal J")
            if (e.u, e.v) in seen:
                raise InvalidGraphError(f"two edges join {e.u} and {e.v}")
            seen.add((e.u, e.v))

    # structural equality (id sensitive); use graphs_equal for isomorphism
    def __eq__(self, other):
        if not isinstance(other, KarshonGraph):
            return NotImplemented
        return (sorted(self.vertices, key=lambda v: v.id) == sorted(other.vertices, key=lambda v: v.id)
                and sorted(self.edges, key=_edge_sort) == sorted(other.edges, key=_edge_sort))

    def __hash__(self):
        return hash(canonical_form(self))

    def vertex(self, vid) -> GraphVertex:
        try:
            return self._index[vid]
        except KeyError:
            raise InvalidGraphError(f"no vertex {vid!r}") from None

    def has_vertex(self, vid):
        return vid in self._index

    @property
    def ids(self):
        return [v.id for v in self.vertices]

    @property
    def jmin(self):
        return min(v.j for v in self.vertices)

    @property
    def jmax(self):
        return max(v.j for v in self.vertices)

    def is_extremal(self, vid):
        j = self.vertex(vid).j
        return j == self.jmin or j == self.jmax

    def incident(self, vid):
        return [(e, e.other(vid)) for e in self.edges if vid in (e.u, e.v)]

    def fat_vertices(self):
        return [v for v in self.vertices if v.is_fat]

    def components(self):
        """Connected components under the stored edges, as frozensets of ids."""
        parent = {v.id: v.id for v in self.vertices}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in self.edges:
            ra, rb = find(e.u), find(e.v)
            if ra != rb:
                parent[ra] = rb
        groups = {}
        for v in self.vertices:
            groups.setdefault(find(v.id), set()).add(v.id)
        return [frozenset(g) for g in groups.values()]

    def replace(self, remove=(), add_vertices=(), add_edges=(), drop_edges=()):
        remove = set(remove)
        drop = set((min(a, b), max(a, b)) for a, b in drop_edges)
        verts = [v for v in self.vertices if v.id not in remove] + list(add_vertices)
        edges = [e for e in self.edges
                 if e.u not in remove and e.v not in remove and (e.u, e.v) not in drop]
        return KarshonGraph(tuple(verts), tuple(edges) + tuple(add_edges))

    def __repr__(self):
        return f"KarshonGraph({canonical_form(self)!r})"


def _edge_sort(e):
    return (e.u, e.v, e.k)


# weights and orbit counts

def _weights_raw(vid, j, edge_dirs, at_min, at_max, is_fat):
    if is_fat:
        return (0, 1) if at_min else (-1, 0)
    ws = [k if up else -k for k, up in edge_dirs]
    if len(ws) > 2:
        raise InvalidGraphError(f"vertex {vid} meets {len(ws)} edges")
    if at_min and not at_max:
        ws += [1] * (2 - len(ws))
    elif at_max and not at_min:
        ws += [-1] * (2 - len(ws))
    else:
        if not ws:
            ws = [-1, 1]
        elif len(ws) == 1:
            ws.append(-1 if ws[0] > 0 else 1)
    return tuple(sorted(ws))


def derive_weights(G: KarshonGraph, vid):
    """The two weights at a fixed point, sorted ascending.

    An edge going up from the vertex contributes +k, an edge going down -k;
    missing weights are +-1 with the sign forced by the position of the vertex.
    """
    v = G.vertex(vid)
    dirs = [(e.k, G.vertex(o).j > v.j) for e, o in G.incident(vid)]
    return _weights_raw(vid, v.j, dirs, v.j == G.jmin, v.j == G.jmax, v.is_fat)


def orbit_counts(G: KarshonGraph, j):
    """(nonfree, nonfree_nonfixed) orbit counts on the level J = j."""
    j = rational(j)
    if not G.jmin < j < G.jmax:
        raise ExtremalLevelError(f"level {j} is not strictly between the extremes")
    spheres = 0
    for e in G.edges:
        a, b = sorted((G.vertex(e.u).j, G.vertex(e.v).j))
        if a < j < b:
            spheres += 1
    points = sum(1 for v in G.vertices if v.j == j)
    return spheres + points, spheres


def _order_pairs(jvals, edges, extremal):
    """Partial order on raw data: jvals maps id -> J, edges are id pairs."""
    parent = {i: i for i in jvals}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    out = set()
    for a in jvals:
        for b in jvals:
            if jvals[a] < jvals[b] and (a in extremal or b in extremal or find(a) == find(b)):
                out.add((a, b))
    return out


def partial_order(G: KarshonGraph):
    jvals = {v.id: v.j for v in G.vertices}
    lo, hi = G.jmin, G.jmax
    ext = {i for i, j in jvals.items() if j in (lo, hi)}
    return _order_pairs(jvals, [(e.u, e.v) for e in G.edges], ext)


# moves

@dataclass(frozen=True)
class BlowupMove:
    case: str
    target: str
    size: Fraction
    side: str = None

    def __post_init__(self):
        if self.case not in CASES:
            raise CaseMismatchError(f"unknown blowup case {self.case!r}")
        object.__setattr__(self, "size", rational(self.size))
        if self.size <= 0:
            raise InadmissibleMoveError("blowup size must be positive")
        if self.side is not None and self.side not in SIDES:
            raise CaseMismatchError(f"side must be min or max, got {self.side!r}")
        if self.case == "B4" and self.side is not None:
            raise CaseMismatchError("B4 moves happen at interior vertices and take no side")

    def retarget(self, target):
        return BlowupMove(self.case, target, self.size, self.side)

    def __str__(self):
        parts = [self.case, self.target, format_rational(self.size)]
        if self.side:
            parts.append(self.side)
        return ":".join(parts)


def _classify_target(G: KarshonGraph, m: BlowupMove):
    """Check that the move's case fits its target; return (side, n, mm)."""
    v = G.vertex(m.target)
    at_min, at_max = v.j == G.jmin, v.j == G.jmax
    side = "min" if at_min else ("max" if at_max else None)
    if m.side is not None and side is not None and m.side != side and m.case != "B4":
        raise CaseMismatchError(f"{m.target} sits at the {side}, not the {m.side}")
    if m.case == "B1":
        if not v.is_fat:
            raise CaseMismatchError("B1 needs a fat vertex")
        return side, 0, 0
    if v.is_fat:
        raise CaseMismatchError(f"{m.case} needs an isolated vertex")
    w = derive_weights(G, m.target)
    if m.case == "B4":
        if side is not None:
            raise CaseMismatchError("B4 needs an interior vertex")
        return None, -w[0], w[1]
    if side is None:
        raise CaseMismatchError(f"{m.case} needs an extremal vertex")
    n, mm = (w[0], w[1]) if side == "min" else (-w[1], -w[0])
    if m.case == "B2":
        if (n, mm) != (1, 1):
            raise CaseMismatchError(f"B2 needs weights of absolute value 1, got {w}")
    elif not 0 < n < mm:
        raise CaseMismatchError(f"B3 needs weights 0 < n < m, got {w}")
    return side, n, mm


def _fresh_ids(G: KarshonGraph, count):
    out, i = [], 0
    while len(out) < count:
        cand = f"n{i}"
        if not G.has_vertex(cand):
            out.append(cand)
        i += 1
    return out


def _transform(G: KarshonGraph, m: BlowupMove, lam, info):
    """Raw image of a move: ({id: (kind, j, area, genus)}, [(u, v, k)])."""
    side, n, mm = info
    verts = {v.id: (v.kind, v.j, v.area, v.genus) for v in G.vertices}
    edges = [(e.u, e.v, e.k) for e in G.edges]
    t = m.target
    kind, j, area, genus = verts[t]
    inward = 1 if side == "min" else -1
    if m.case == "B1":
        (new,) = _fresh_ids(G, 1)
        verts[t] = (kind, j, area - lam, genus)
        verts[new] = (ISOLATED, j + inward * lam, None, 0)
        return verts, edges
    if m.case == "B2":
        verts[t] = (FAT, j + inward * lam, lam, 0)
        return verts, edges
    (other,) = _fresh_ids(G, 1)
    if m.case == "B3":
        j1, j2, newk = j + inward * n * lam, j + inward * mm * lam, mm - n
    else:
        j1, j2, newk = j - n * lam, j + mm * lam, mm + n
    verts[t] = (ISOLATED, j1, None, 0)
    verts[other] = (ISOLATED, j2, None, 0)
    out = []
    for a, b, k in edges:
        if t in (a, b):
            nb = b if a == t else a
            # B3 moves the m-labelled edge, B4 moves the upward edge
            if m.case == "B3":
                moved = k == mm
            else:
                moved = G.vertex(nb).j > j
            if moved:
                out.append((other, nb, k))
                continue
        out.append((a, b, k))
    if newk >= 2:
        out.append((t, other, newk))
    return verts, out


def _build(verts, edges):
    vs = []
    for vid, (kind, j, area, genus) in verts.items():
        vs.append(GraphVertex(vid, kind, j, area, genus))
    return KarshonGraph(tuple(vs), tuple(ZkEdge(a, b, k) for a, b, k in edges))


def _infinitesimal(G: KarshonGraph, m: BlowupMove, info):
    """A size small enough that the move's combinatorics match the limit."""
    js = sorted({v.j for v in G.vertices})
    gap = min((b - a for a, b in zip(js, js[1:])), default=Fraction(1))
    coef = max(info[1], info[2], 1)
    eps = gap / (4 * (coef + 1))
    if m.case == "B1":
        eps = min(eps, G.vertex(m.target).area / 2)
    return eps


def admissible(G: KarshonGraph, m: BlowupMove) -> bool:
    info = _classify_target(G, m)
    lam = m.size
    verts, edges = _transform(G, m, lam, info)
    if any(kind == FAT and area <= 0 for kind, _, area, _ in verts.values()):
        return False
    eps = _infinitesimal(G, m, info)
    everts, eedges = _transform(G, m, eps, info)
    ejs = {i: d[1] for i, d in everts.items()}
    lo, hi = min(ejs.values()), max(ejs.values())
    ext = {i for i, j in ejs.items() if j in (lo, hi)}
    order = _order_pairs(ejs, [(a, b) for a, b, _ in eedges], ext)
    for a, b in order:
        if not verts[a][1] < verts[b][1]:
            return False
    return True


def blowup(G: KarshonGraph, m: BlowupMove) -> KarshonGraph:
    if not admissible(G, m):
        raise InadmissibleMoveError(f"move {m} is not admissible")
    info = _classify_target(G, m)
    verts, edges = _transform(G, m, m.size, info)
    return _build(verts, edges)


# canonical forms

def _component_order(G: KarshonGraph, comp):
    """Canonical ordering of one component via colour refinement plus
    individualisation; components are small, so exhaustive branching is fine."""
    adj = {i: [] for i in comp}
    for e in G.edges:
        if e.u in adj:
            adj[e.u].append((e.k, e.v))
            adj[e.v].append((e.k, e.u))
    keys = {i: G.vertex(i).key() for i in comp}

    def rank(sig):
        levels = sorted(set(sig.values()))
        pos = {s: n for n, s in enumerate(levels)}
        return {i: pos[s] for i, s in sig.items()}

    def refine(colors):
        while True:
            sig = {i: (colors[i], tuple(sorted((k, colors[o]) for k, o in adj[i]))) for i in comp}
            new = rank(sig)
            if len(set(new.values())) == len(set(colors.values())):
                return new
            colors = new

    def encode(order):
        pos = {i: n for n, i in enumerate(order)}
        vs = tuple(keys[i] for i in order)
        es = tuple(sorted((min(pos[i], pos[o]), max(pos[i], pos[o]), k)
                          for i in comp for k, o in adj[i] if pos[i] < pos[o]))
        return (vs, es)

    def search(colors):
        colors = refine(colors)
        classes = {}
        for i, c in colors.items():
            classes.setdefault(c, []).append(i)
        if len(classes) == len(comp):
            order = sorted(comp, key=lambda i: colors[i])
            return encode(order), order
        c = min(c for c, members in classes.items() if len(members) > 1)
        best = None
        for v in sorted(classes[c]):
            trial = {i: (colors[i], 0 if i == v else 1) for i in comp}
            res = search(rank(trial))
            if best is None or res[0] < best[0]:
                best = res
        return best

    return search(rank(keys))


def canonical_order(G: KarshonGraph):
    """Vertex ids in canonical order (isomorphic graphs give matching orders)."""
    comp_info = {}
    by_code = {}
    for comp in G.components():
        code, order = _component_order(G, comp)
        by_code.setdefault(code, []).append(order)
    for code, orders in by_code.items():
        orders.sort(key=lambda o: o[0])
        for rank_, order in enumerate(orders):
            for n, i in enumerate(order):
                comp_info[i] = (code, n, rank_)
    return sorted(G.ids, key=lambda i: (G.vertex(i).key(),) + comp_info[i])


def canonical_form(G: KarshonGraph) -> str:
    order = canonical_order(G)
    pos = {i: n for n, i in enumerate(order)}
    lines = ["karshon-graph"]
    for i in order:
        v = G.vertex(i)
        if v.is_fat:
            lines.append(f"vertex fat j={format_rational(v.j)} area={format_rational(v.area)} genus={v.genus}")
        else:
            lines.append(f"vertex isolated j={format_rational(v.j)}")
    for a, b, k in sorted((min(pos[e.u], pos[e.v]), max(pos[e.u], pos[e.v]), e.k) for e in G.edges):
        lines.append(f"edge {a} {b} k={k}")
    return "\n".join(lines)


def parse_canonical(text: str) -> KarshonGraph:
    lines = text.strip().splitlines()
    if not lines or lines[0] != "karshon-graph":
        raise InvalidGraphError("not a canonical graph text")
    verts, edges = [], []
    for line in lines[1:]:
        parts = line.split()
        fields = dict(p.split("=", 1) for p in parts if "=" in p)
        if parts[0] == "vertex":
            vid = f"v{len(verts)}"
            if parts[1] == FAT:
                verts.append(fat(vid, fields["j"], fields["area"], int(fields["genus"])))
            else:
                verts.append(isolated(vid, fields["j"]))
        elif parts[0] == "edge":
            edges.append(ZkEdge(f"v{parts[1]}", f"v{parts[2]}", int(fields["k"])))
        else:
            raise InvalidGraphError(f"bad canonical line {line!r}")
    return KarshonGraph(tuple(verts), tuple(edges))


def canonical_graph(G: KarshonGraph) -> KarshonGraph:
    return parse_canonical(canonical_form(G))


def relabel(G: KarshonGraph, mapping) -> KarshonGraph:
    verts = [GraphVertex(mapping[v.id], v.kind, v.j, v.area, v.genus) for v in G.vertices]
    edges = [ZkEdge(mapping[e.u], mapping[e.v], e.k) for e in G.edges]
    return KarshonGraph(tuple(verts), tuple(edges))


def graphs_equal(G1: KarshonGraph, G2: KarshonGraph) -> bool:
    return canonical_form(G1) == canonical_form(G2)


def isomorphism(G1: KarshonGraph, G2: KarshonGraph):
    """A vertex map G1 -> G2 preserving all labels, or None."""
    if canonical_form(G1) != canonical_form(G2):
        return None
    return dict(zip(canonical_order(G1), canonical_order(G2)))


def translate(G: KarshonGraph, dj) -> KarshonGraph:
    dj = rational(dj)
    verts = [GraphVertex(v.id, v.kind, v.j + dj, v.area, v.genus) for v in G.vertices]
    return KarshonGraph(tuple(verts), G.edges)


# global consistency

def dh_consistent(G: KarshonGraph) -> bool:
    """Check the piecewise linear Duistermaat-Heckman profile forced by the
    weights: it must close up at both ends with the right slopes, with an
    integral self-intersection for a minimal surface, and stay positive."""
    lo, hi = G.jmin, G.jmax
    if lo == hi:
        return False
    L = hi - lo
    bottom = [v for v in G.vertices if v.j == lo]
    top = [v for v in G.vertices if v.j == hi]
    if len(bottom) != 1 or len(top) != 1:
        return False
    bottom, top = bottom[0], top[0]
    breaks = []
    for v in G.vertices:
        if lo < v.j < hi:
            w = derive_weights(G, v.id)
            if w[0] >= 0 or w[1] <= 0:
                return False
            breaks.append((v.j, Fraction(1, w[0] * w[1])))
    s_val = sum((c * (hi - j) for j, c in breaks), Fraction(0))
    s_slope = sum((c for _, c in breaks), Fraction(0))
    if top.is_fat:
        f_hi = top.area
    else:
        wa, wb = derive_weights(G, top.id)
        f_hi = Fraction(0)
        end_slope = Fraction(-1, wa * wb)
    if bottom.is_fat:
        f_lo = bottom.area
        e = (f_lo + s_val - f_hi) / L
        if e.denominator != 1:
            return False
        s0 = -e
    else:
        wa, wb = derive_weights(G, bottom.id)
        f_lo = Fraction(0)
        s0 = Fraction(1, wa * wb)
        if f_lo + s0 * L + s_val != f_hi:
            return False
    final = s0 + s_slope
    if top.is_fat:
        if final.denominator != 1:
            return False
    elif final != end_slope:
        return False

    def f(t):
        return f_lo + s0 * (t - lo) + sum((c * (t - j) for j, c in breaks if j < t), Fraction(0))

    points = sorted({lo, hi} | {j for j, _ in breaks})
    samples = points[1:-1] + [(a + b) / 2 for a, b in zip(points, points[1:])]
    return all(f(t) > 0 for t in samples)


def structural_violations(G: KarshonGraph):
    out = []
    lo, hi = G.jmin, G.jmax
    if lo == hi:
        return ["all vertices sit at one J-value"]
    for end, name in ((lo, "minimum"), (hi, "maximum")):
        level = [v for v in G.vertices if v.j == end]
        if len(level) > 1:
            out.append(f"the {name} level holds {len(level)} vertices")
    for v in G.vertices:
        if v.is_fat and lo < v.j < hi:
            out.append(f"fat vertex {v.id} at interior J={format_rational(v.j)}")
    for v in G.vertices:
        if v.is_fat:
            continue
        inc = G.incident(v.id)
        ups = [e.k for e, o in inc if G.vertex(o).j > v.j]
        downs = [e.k for e, o in inc if G.vertex(o).j < v.j]
        if len(inc) > 2:
            out.append(f"vertex {v.id} meets {len(inc)} edges")
            continue
        if lo < v.j < hi and (len(ups) > 1 or len(downs) > 1):
            out.append(f"interior vertex {v.id} meets two edges in the same direction")
            continue
        w = derive_weights(G, v.id)
        if gcd(w[0], w[1]) != 1:
            out.append(f"vertex {v.id} has non-coprime weights {w}")
    if not out:
        try:
            if not dh_consistent(G):
                out.append("Duistermaat-Heckman profile is inconsistent")
        except InvalidGraphError as exc:
            out.append(str(exc))
    return out


# blowdowns

def _candidate_ok(G, Gp, move):
    try:
        if structural_violations(Gp):
            return False
        if not admissible(Gp, move):
            return False
        return graphs_equal(blowup(Gp, move), G)
    except (InvalidGraphError, CaseMismatchError, InadmissibleMoveError):
        return False


def _raw_candidates(G: KarshonGraph):
    """(move, contracted graph, removed ids) for every pattern match."""
    lo, hi = G.jmin, G.jmax
    out = []
    fats = G.fat_vertices()
    weights = {v.id: derive_weights(G, v.id) for v in G.vertices}

    def side_of(v):
        return "min" if v.j == lo else "max"

    # B1: an edgeless interior point next to a surface
    for F in fats:
        side = side_of(F)
        for v in G.vertices:
            if v.is_fat or not lo < v.j < hi or G.incident(v.id):
                continue
            lam = v.j - F.j if side == "min" else F.j - v.j
            Gp = G.replace(remove=[v.id, F.id],
                           add_vertices=[fat(F.id, F.j, F.area + lam, F.genus)])
            out.append((BlowupMove("B1", F.id, lam, side), Gp, (v.id,)))
    # B2: a sphere at an extreme shrinks back to a point
    for F in fats:
        if F.genus != 0:
            continue
        side = side_of(F)
        lam = F.area
        j = F.j - lam if side == "min" else F.j + lam
        Gp = G.replace(remove=[F.id], add_vertices=[isolated(F.id, j)])
        out.append((BlowupMove("B2", F.id, lam, side), Gp, (F.id,)))
    # B3: two vertices next to an extreme merge into one
    for u in G.vertices:
        if u.is_fat or u.j not in (lo, hi):
            continue
        side = side_of(u)
        sgn = 1 if side == "min" else -1
        wa, wb = (abs(x) for x in weights[u.id])
        for c, n in {(wa, wb), (wb, wa)}:
            if c >= 2:
                partners = [o for e, o in G.incident(u.id) if e.k == c]
            else:
                partners = [v.id for v in G.vertices
                            if not v.is_fat and lo < v.j < hi and v.id != u.id]
            for wid in partners:
                w = G.vertex(wid)
                mm = n + c
                if tuple(sorted((-sgn * c, sgn * mm))) != weights[wid]:
                    continue
                lam = sgn * (w.j - u.j) / c
                if lam <= 0:
                    continue
                pid = u.id
                new_edges = []
                for e, o in G.incident(u.id):
                    if o != wid:
                        new_edges.append(ZkEdge(pid, o, e.k))
                for e, o in G.incident(wid):
                    if o != u.id and e.k == mm:
                        new_edges.append(ZkEdge(pid, o, e.k))
                try:
                    Gp = G.replace(remove=[u.id, wid],
                                   add_vertices=[isolated(pid, u.j - sgn * n * lam)],
                                   add_edges=new_edges)
                except InvalidGraphError:
                    continue
                out.append((BlowupMove("B3", pid, lam, side), Gp, (u.id, wid)))
    # B4: an edge between two interior points collapses
    for e in G.edges:
        a, b = G.vertex(e.u), G.vertex(e.v)
        low, up = (a, b) if a.j < b.j else (b, a)
        if not (lo < low.j < hi and lo < up.j < hi):
            continue
        wl, wu = weights[low.id], weights[up.id]
        n = -wl[0]
        mm = wu[1]
        if wl[1] != e.k or wu[0] != -e.k or n < 1 or mm < 1 or n + mm != e.k:
            continue
        lam = (up.j - low.j) / e.k
        pid = low.id
        new_edges = []
        for f, o in G.incident(low.id):
            if o != up.id:
                new_edges.append(ZkEdge(pid, o, f.k))
        for f, o in G.incident(up.id):
            if o != low.id:
                new_edges.append(ZkEdge(pid, o, f.k))
        try:
            Gp = G.replace(remove=[low.id, up.id],
                           add_vertices=[isolated(pid, low.j + n * lam)],
                           add_edges=new_edges)
        except InvalidGraphError:
            continue
        out.append((BlowupMove("B4", pid, lam), Gp, (low.id, up.id)))
    return out


_PRIORITY = {"B1": 0, "B4": 1, "B3": 2, "B2": 3}


def blowdown_candidates(G: KarshonGraph):
    """Every verified blowdown of G, as (inverse blowup move, contracted graph).

    Sorted by the deterministic selection rule: smallest size first, then
    interior contractions (B1, B4) before extremal ones (B3, B2), then
    smallest (J, canonical position) among the vertices the blowdown removes.
    """
    if len(G.vertices) < 2 or structural_violations(G):
        return []
    pos = {i: n for n, i in enumerate(canonical_order(G))}
    found = []
    for move, Gp, removed in _raw_candidates(G):
        if _candidate_ok(G, Gp, move):
            key = min((G.vertex(i).j, pos[i]) for i in removed)
            found.append((move.size, _PRIORITY[move.case], key, move, Gp))
    found.sort(key=lambda t: t[:3])
    return [(move, Gp) for *_, move, Gp in found]


def is_minimal(G: KarshonGraph) -> bool:
    return not blowdown_candidates(G)


@dataclass(frozen=True)
class Step:
    """One blowup in a chain: blowup(before, move) is isomorphic to after."""
    before: KarshonGraph
    move: BlowupMove
    after: KarshonGraph


def reduce_steps(G: KarshonGraph, accept=None, candidates=None):
    """Blow G down until accept(minimal graph) holds.

    Depth first with backtracking: a path ending in a graph outside the
    catalog is abandoned for the next candidate.  Returns (minimal, steps)
    with steps in forward blowup order.
    """
    from .catalog import match_minimal

    if accept is None:
        accept = lambda H: match_minimal(H) is not None  # noqa: E731
    if candidates is None:
        candidates = blowdown_candidates
    dead = set()

    def dfs(H):
        cands = candidates(H)
        if not cands:
            return (H, []) if accept(H) else None
        key = canonical_form(H)
        if key in dead:
            return None
        for move, Hp in cands:
            res = dfs(Hp)
            if res is not None:
                return res[0], res[1] + [Step(Hp, move, H)]
        dead.add(key)
        return None

    res = dfs(G)
    if res is None:
        raise InvalidGraphError("no sequence of blowdowns reaches a minimal model")
    return res


def replay_steps(start: KarshonGraph, steps):
    """Apply a chain of steps from start, retargeting each move through an
    isomorphism so the moves refer to the labels actually present.
    Returns (final graph, retargeted moves)."""
    F, moves = start, []
    for st in steps:
        iso = isomorphism(st.before, F)
        if iso is None:
            raise InvalidGraphError("step chain lost track of the graph")
        m = st.move.retarget(iso[st.move.target])
        F = blowup(F, m)
        moves.append(m)
    return F, moves


def reduce_to_minimal(G: KarshonGraph):
    """(minimal graph, blowup moves in application order).  Replaying the
    moves from the minimal graph gives a graph equal to G."""
    Gmin, steps = reduce_steps(G)
    return Gmin, replay_steps(Gmin, steps)[1]


@dataclass
class ValidationReport:
    valid: bool
    violations: list
    minimal: KarshonGraph = None
    moves: list = None
    descriptor: object = None

    def __bool__(self):
        return self.valid


def validate(G: KarshonGraph) -> ValidationReport:
    from .catalog import match_minimal

    problems = structural_violations(G)
    if problems:
        return ValidationReport(False, problems)
    try:
        Gmin, moves = reduce_to_minimal(G)
    except InvalidGraphError as exc:
        return ValidationReport(False, [str(exc)])
    return ValidationReport(True, [], Gmin, moves, match_minimal(Gmin))
