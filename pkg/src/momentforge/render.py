"""Deterministic SVG pictures of graphs, polygons and certificates."""
from xml.sax.saxutils import escape

from .delzant import RationalPolygon
from .karshon import KarshonGraph, canonical_order
from .lattice import format_rational
from .semitoric import MarkedWeightedPolygon

WIDTH = 640
MARGIN = 48
ROW = 56


def _n(x):
    return f"{float(x):.2f}"


def _svg(width, height, body):
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_n(width)}" height="{_n(height)}" viewBox="0 0 {_n(width)} {_n(height)}">')
    style = ('<style>text{font-family:sans-serif;font-size:11px}'
             '.edge,.axis{stroke:#000;stroke-width:1.2}.cut{stroke:#000;fill:none}'
             '.mark{stroke:#000;stroke-width:1.6;fill:none}</style>')
    return "\n".join([head, style, *body, "</svg>"]) + "\n"


def graph_svg(G: KarshonGraph) -> str:
    lo, hi = G.jmin, G.jmax
    span = (hi - lo) or 1
    inner = WIDTH - 2 * MARGIN

    def xof(j):
        return MARGIN + (j - lo) / span * inner

    order = {vid: n for n, vid in enumerate(canonical_order(G))}
    comps = sorted(G.components(), key=lambda c: min(order[i] for i in c))
    pos, row = {}, 0
    for comp in comps:
        if all(G.vertex(i).is_fat for i in comp):
            continue
        seen = {}
        for vid in sorted(comp, key=order.get):
            v = G.vertex(vid)
            dy = seen.get(v.j, 0)
            seen[v.j] = dy + 1
            pos[vid] = (xof(v.j), MARGIN + row * ROW + dy * 14)
        row += max(seen.values())
    rows = max(row, 1)
    height = 2 * MARGIN + rows * ROW
    body = []
    axis_y = height - MARGIN / 2
    body.append(f'<line class="axis" x1="{_n(MARGIN)}" y1="{_n(axis_y)}" '
                f'x2="{_n(WIDTH - MARGIN)}" y2="{_n(axis_y)}"/>')
    for j in sorted({v.j for v in G.vertices}):
        body.append(f'<text x="{_n(xof(j))}" y="{_n(axis_y + 14)}" text-anchor="middle">'
                    f'{escape(format_rational(j))}</text>')
    for v in sorted(G.fat_vertices(), key=lambda v: v.j):
        cy = MARGIN + (rows * ROW - ROW) / 2
        ry = rows * ROW / 2
        body.append(f'<ellipse class="fat" cx="{_n(xof(v.j))}" cy="{_n(cy)}" rx="10.00" '
                    f'ry="{_n(ry)}" fill="#000"/>')
        label = f"A={format_rational(v.area)}" + (f" g={v.genus}" if v.genus else "")
        body.append(f'<text x="{_n(xof(v.j))}" y="{_n(cy - ry - 6)}" text-anchor="middle">'
                    f'{escape(label)}</text>')
    for e in G.edges:
        (x1, y1), (x2, y2) = pos[e.u], pos[e.v]
        body.append(f'<line class="edge" x1="{_n(x1)}" y1="{_n(y1)}" x2="{_n(x2)}" y2="{_n(y2)}"/>')
        body.append(f'<text x="{_n((x1 + x2) / 2)}" y="{_n((y1 + y2) / 2 - 5)}" '
                    f'text-anchor="middle">{e.k}</text>')
    for vid in sorted(pos, key=order.get):
        x, y = pos[vid]
        body.append(f'<circle class="vertex" cx="{_n(x)}" cy="{_n(y)}" r="4.00" fill="#000"/>')
    return _svg(WIDTH, height, body)


def _frame(P: RationalPolygon):
    xs = [p.x for p in P.vertices]
    ys = [p.y for p in P.vertices]
    x0, y0 = min(xs), min(ys)
    size = max(max(xs) - x0, max(ys) - y0) or 1
    scale = (WIDTH - 2 * MARGIN) / size
    height = 2 * MARGIN + (max(ys) - y0) * scale

    def to(p):
        return MARGIN + (p.x - x0) * scale, height - MARGIN - (p.y - y0) * scale
    return to, height


def polygon_svg(shape) -> str:
    W = shape if isinstance(shape, MarkedWeightedPolygon) else MarkedWeightedPolygon(shape)
    P = W.polygon
    to, height = _frame(P)
    pts = " ".join(f"{_n(x)},{_n(y)}" for x, y in map(to, P.vertices))
    body = [f'<polygon class="region" points="{pts}" fill="#ddd" stroke="#000" stroke-width="1.2"/>']
    for k, c in enumerate(W.marks):
        (x1, y1), (x2, y2) = to(c), to(W.cut_end(k))
        body.append(f'<line class="cut" x1="{_n(x1)}" y1="{_n(y1)}" x2="{_n(x2)}" y2="{_n(y2)}" '
                    f'stroke-dasharray="4 3"/>')
        body.append(f'<path class="mark" d="M{_n(x1 - 5)} {_n(y1 - 5)} L{_n(x1 + 5)} {_n(y1 + 5)} '
                    f'M{_n(x1 - 5)} {_n(y1 + 5)} L{_n(x1 + 5)} {_n(y1 - 5)}"/>')
    return _svg(WIDTH, height, body)


def render_svg(doc) -> str:
    from .documents import Document, document_for
    from .extension import ExtensionCertificate, replay_certificate

    payload = doc.payload if isinstance(doc, Document) else document_for(doc).payload
    if isinstance(payload, KarshonGraph):
        return graph_svg(payload)
    if isinstance(payload, (RationalPolygon, MarkedWeightedPolygon)):
        return polygon_svg(payload)
    if isinstance(payload, ExtensionCertificate):
        G, _ = replay_certificate(payload)
        return graph_svg(G)
    raise TypeError(f"cannot render {type(payload).__name__}")


__all__ = ["render_svg", "graph_svg", "polygon_svg"]
