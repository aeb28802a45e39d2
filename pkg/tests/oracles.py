"""Independent reference computations used to derive expected values.

Nothing here imports momentforge: the formulas are re-derived from scratch
with sympy (or plain integer arithmetic), so agreement with the library is
evidence rather than tautology.  Graphs are plain dicts:
``verts = {id: (j, area_or_None)}`` and ``edges = [(u, v, k)]``.
"""
from fractions import Fraction
from math import gcd

import sympy as sp


def R(x):
    return sp.Rational(str(x))


def Q(x):
    """Back to a plain Fraction for comparison with library values."""
    x = R(x)
    return Fraction(int(x.p), int(x.q))


def prim(p, q):
    """Primitive integer direction from p to q."""
    dx, dy = R(q[0]) - R(p[0]), R(q[1]) - R(p[1])
    den = sp.ilcm(dx.q, dy.q)
    a, b = int(dx * den), int(dy * den)
    g = gcd(a, b)
    return a // g, b // g


def det(v, w):
    return int(sp.Matrix([[v[0], w[0]], [v[1], w[1]]]).det())


def area(points):
    return abs(sp.Polygon(*[sp.Point(R(x), R(y)) for x, y in points]).area)


def corner_conditions(points):
    """det(arriving, departing) at each vertex of a ccw polygon."""
    n = len(points)
    out = []
    for i in range(n):
        v = prim(points[i - 1], points[i])
        w = prim(points[i], points[(i + 1) % n])
        out.append(det(v, w))
    return out


def chop(points, i, lam):
    """Corner chop by walking lam lattice units along both edges at i."""
    n = len(points)
    p = points[i]
    back = prim(p, points[i - 1])
    fwd = prim(p, points[(i + 1) % n])
    lam = R(lam)
    a = (R(p[0]) + lam * back[0], R(p[1]) + lam * back[1])
    b = (R(p[0]) + lam * fwd[0], R(p[1]) + lam * fwd[1])
    out = []
    for k, q in enumerate(points):
        if k == i:
            out += [a, b]
        else:
            out.append((R(q[0]), R(q[1])))
    return [(Q(x), Q(y)) for k, (x, y) in enumerate(out) if (x, y) != out[k - 1]]


def in_open_simplex(x, u1, u2, lam, q):
    t1, t2 = sp.symbols("t1 t2")
    sol = sp.solve([R(x[0]) + t1 * u1[0] + t2 * u2[0] - R(q[0]),
                    R(x[1]) + t1 * u1[1] + t2 * u2[1] - R(q[1])], [t1, t2])
    return sol[t1] > 0 and sol[t2] > 0 and sol[t1] + sol[t2] < R(lam)


def weights(verts, edges, vid):
    """Weights by the sphere rules: -k at a north pole, +k at a south pole,
    +-1 defaults, 0 on a fixed surface."""
    js = [j for j, _ in verts.values()]
    lo, hi = min(js), max(js)
    j, area_ = verts[vid]
    if area_ is not None:
        return (0, 1) if j == lo else (-1, 0)
    ws = []
    for u, v, k in edges:
        if vid in (u, v):
            other = v if u == vid else u
            ws.append(k if verts[other][0] > j else -k)
    if j == lo:
        ws += [1] * (2 - len(ws))
    elif j == hi:
        ws += [-1] * (2 - len(ws))
    else:
        if not any(w > 0 for w in ws):
            ws.append(1)
        if not any(w < 0 for w in ws):
            ws.append(-1)
    return tuple(sorted(ws))


def orbit_counts(verts, edges, j):
    j = R(j)
    nn = sum(1 for u, v, _ in edges
             if min(R(verts[u][0]), R(verts[v][0])) < j < max(R(verts[u][0]), R(verts[v][0])))
    at = sum(1 for jj, _ in verts.values() if R(jj) == j)
    return nn + at, nn


def restriction(points, xi):
    """Karshon data of a Delzant polygon for the circle xi, as a multiset
    description: sorted lists of fats (j, area), isolated j's, edges (j1, j2, k)."""
    n = len(points)
    pair = [R(xi[0]) * R(p[0]) + R(xi[1]) * R(p[1]) for p in points]
    fats, on_fat, edges = [], set(), []
    for i in range(n):
        a, b = points[i], points[(i + 1) % n]
        d = prim(a, b)
        k = abs(xi[0] * d[0] + xi[1] * d[1])
        if k == 0:
            length = max(abs(R(b[0]) - R(a[0])), abs(R(b[1]) - R(a[1]))) / max(abs(d[0]), abs(d[1]))
            fats.append((pair[i], length))
            on_fat.update((i, (i + 1) % n))
        elif k >= 2:
            edges.append(tuple(sorted((pair[i], pair[(i + 1) % n]))) + (k,))
    iso = sorted(pair[i] for i in range(n) if i not in on_fat)
    return sorted(fats), iso, sorted(edges)


def graph_data(G):
    """The same multiset description computed from a library graph."""
    fats = sorted((R(v.j), R(v.area)) for v in G.vertices if v.kind == "fat")
    iso = sorted(R(v.j) for v in G.vertices if v.kind != "fat")
    edges = sorted(tuple(sorted((R(G.vertex(e.u).j), R(G.vertex(e.v).j)))) + (e.k,) for e in G.edges)
    return fats, iso, edges


# blowups done by hand on dict graphs

def blowup_b1(verts, edges, fat_id, lam, new_id):
    verts = dict(verts)
    j, a = verts[fat_id]
    js = [jj for jj, _ in verts.values()]
    inward = 1 if j == min(js) else -1
    verts[fat_id] = (j, R(a) - R(lam))
    verts[new_id] = (R(j) + inward * R(lam), None)
    return verts, list(edges)


def blowup_b4(verts, edges, vid, lam, new_id):
    """Interior vertex with weights (-n, m): split into J - n lam (keeps the
    id and the downward edge) and J + m lam (takes the upward edge)."""
    w = weights(verts, edges, vid)
    n, m = -w[0], w[1]
    j = R(verts[vid][0])
    verts = dict(verts)
    verts[vid] = (j - n * R(lam), None)
    verts[new_id] = (j + m * R(lam), None)
    out = []
    for u, v, k in edges:
        if vid in (u, v):
            other = v if u == vid else u
            if R(verts[other][0]) > j:
                out.append((new_id, other, k))
                continue
        out.append((u, v, k))
    if n + m >= 2:
        out.append((vid, new_id, n + m))
    return verts, out


def blowup_b3_max(verts, edges, vid, lam, new_id):
    """Max vertex with weights (-m, -n), 0 < n < m."""
    w = weights(verts, edges, vid)
    m, n = -w[0], -w[1]
    j = R(verts[vid][0])
    verts = dict(verts)
    verts[vid] = (j - n * R(lam), None)
    verts[new_id] = (j - m * R(lam), None)
    out = []
    for u, v, k in edges:
        if vid in (u, v) and k == m:
            other = v if u == vid else u
            out.append((new_id, other, k))
        else:
            out.append((u, v, k))
    if m - n >= 2:
        out.append((vid, new_id, m - n))
    return verts, out


def canonical_data(verts, edges):
    fats = sorted((R(j), R(a)) for j, a in verts.values() if a is not None)
    iso = sorted(R(j) for j, a in verts.values() if a is None)
    es = sorted(tuple(sorted((R(verts[u][0]), R(verts[v][0])))) + (k,) for u, v, k in edges)
    return fats, iso, es
