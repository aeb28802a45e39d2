"""JSON documents: a strict subset of JSON with exact rationals written as
"p/q" strings, wrapped in a {kind, version, payload} envelope."""
import json
from dataclasses import dataclass

from .catalog import MinimalModelDescriptor, descriptor_from_fields
from .delzant import RationalPolygon
from .errors import ParseError, SemanticError, VersionError
from .extension import ExtensionCertificate, IslandPlan
from .karshon import FAT, ISOLATED, BlowupMove, GraphVertex, KarshonGraph, ZkEdge
from .lattice import LatticeVector, RatPoint2, format_rational, rational
from .semitoric import MarkedWeightedPolygon

VERSION = "1"
GRAPH = "karshon-graph"
POLYGON = "delzant-polygon"
MARKED = "semitoric-polygon"
CERTIFICATE = "certificate"
KINDS = (GRAPH, POLYGON, MARKED, CERTIFICATE)


@dataclass(frozen=True)
class Document:
    kind: str
    payload: object
    version: str = VERSION


def document_for(value) -> Document:
    if isinstance(value, KarshonGraph):
        return Document(GRAPH, value)
    if isinstance(value, RationalPolygon):
        return Document(POLYGON, value)
    if isinstance(value, MarkedWeightedPolygon):
        return Document(MARKED, value)
    if isinstance(value, ExtensionCertificate):
        return Document(CERTIFICATE, value)
    raise TypeError(f"no document kind for {type(value).__name__}")


# encoding

def _q(x):
    return format_rational(x)


def _pt(p):
    return [_q(p.x), _q(p.y)]


def encode_graph(G: KarshonGraph):
    verts = []
    for v in G.vertices:
        d = {"id": v.id, "kind": v.kind, "j": _q(v.j)}
        if v.is_fat:
            d["area"] = _q(v.area)
            d["genus"] = v.genus
        verts.append(d)
    edges = [{"u": e.u, "v": e.v, "k": e.k} for e in G.edges]
    return {"vertices": verts, "edges": edges}


def encode_polygon(P: RationalPolygon):
    return {"vertices": [_pt(p) for p in P.vertices]}


def encode_marked(W: MarkedWeightedPolygon):
    return {"vertices": [_pt(p) for p in W.polygon.vertices],
            "marks": [{"at": _pt(c), "sign": s} for c, s in zip(W.marks, W.signs)]}


def encode_move(m: BlowupMove):
    d = {"case": m.case, "target": m.target, "size": _q(m.size)}
    if m.side is not None:
        d["side"] = m.side
    return d


def encode_descriptor(d: MinimalModelDescriptor):
    out = {"kind": d.kind}
    for name in ("scale", "a", "b", "s"):
        val = getattr(d, name)
        if val is not None:
            out[name] = _q(val)
    if d.n is not None:
        out["n"] = d.n
    out["genus"] = d.genus
    out["xi"] = [d.xi.a, d.xi.b] if d.xi is not None else None
    out["offset"] = _q(d.offset)
    return out


def encode_certificate(c: ExtensionCertificate):
    trace = None
    if c.polygon_trace is not None:
        trace = []
        for label, shape in c.polygon_trace:
            if isinstance(shape, MarkedWeightedPolygon):
                trace.append({"stage": label, "kind": MARKED, "payload": encode_marked(shape)})
            else:
                trace.append({"stage": label, "kind": POLYGON, "payload": encode_polygon(shape)})
    return {
        "minimal": encode_descriptor(c.minimal),
        "stage1": [encode_move(m) for m in c.stage1_moves],
        "islands": [{"seed_j": _q(p.seed_j), "seed_size": _q(p.seed_size), "side": p.side,
                     "flap_moves": [encode_move(m) for m in p.flap_moves]}
                    for p in c.stage2_islands],
        "polygon_trace": trace,
    }


_ENCODERS = {GRAPH: encode_graph, POLYGON: encode_polygon, MARKED: encode_marked,
             CERTIFICATE: encode_certificate}


def to_json(doc: Document):
    return {"kind": doc.kind, "version": doc.version, "payload": _ENCODERS[doc.kind](doc.payload)}


def dumps(obj, level=0) -> str:
    """Indented JSON that keeps arrays of scalars (points, xi) on one line."""
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {dumps(v, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return "[" + ", ".join(json.dumps(x, ensure_ascii=False) for x in obj) + "]"
        return "[\n" + ",\n".join(inner + dumps(x, level + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def serialize(doc) -> str:
    if not isinstance(doc, Document):
        doc = document_for(doc)
    return dumps(to_json(doc)) + "\n"


# decoding

class _Reader:
    """Decoding context that can point at the source text on bad literals."""

    def __init__(self, text):
        self.text = text

    def where(self, literal):
        needle = json.dumps(literal)
        idx = self.text.find(needle)
        if idx < 0:
            return None, None
        line = self.text.count("\n", 0, idx) + 1
        col = idx - (self.text.rfind("\n", 0, idx) + 1) + 1
        return line, col

    def rat(self, value, what):
        if isinstance(value, bool) or not isinstance(value, (int, str)):
            raise SemanticError(f"{what}: expected a rational string, got {value!r}")
        try:
            return rational(value)
        except (ValueError, ZeroDivisionError) as exc:
            line, col = self.where(value)
            raise ParseError(f"{what}: {exc}", line, col) from None

    def int_(self, value, what):
        if isinstance(value, bool) or not isinstance(value, int):
            raise SemanticError(f"{what}: expected an integer, got {value!r}")
        return value

    def obj(self, value, what, required, optional=()):
        if not isinstance(value, dict):
            raise SemanticError(f"{what}: expected an object")
        missing = [k for k in required if k not in value]
        if missing:
            raise SemanticError(f"{what}: missing {', '.join(missing)}")
        extra = [k for k in value if k not in required and k not in optional]
        if extra:
            raise SemanticError(f"{what}: unknown field {', '.join(extra)}")
        return value

    def arr(self, value, what):
        if not isinstance(value, list):
            raise SemanticError(f"{what}: expected an array")
        return value

    def point(self, value, what):
        value = self.arr(value, what)
        if len(value) != 2:
            raise SemanticError(f"{what}: a point has two coordinates")
        return RatPoint2(self.rat(value[0], what), self.rat(value[1], what))

    def graph(self, p):
        p = self.obj(p, "graph", ("vertices",), ("edges",))
        verts = []
        for n, v in enumerate(self.arr(p["vertices"], "vertices")):
            where = f"vertex {n}"
            kind = v.get("kind") if isinstance(v, dict) else None
            if kind == FAT:
                v = self.obj(v, where, ("id", "kind", "j", "area"), ("genus",))
                verts.append(GraphVertex(str(v["id"]), FAT, self.rat(v["j"], where),
                                         self.rat(v["area"], where),
                                         self.int_(v.get("genus", 0), where)))
            elif kind == ISOLATED:
                v = self.obj(v, where, ("id", "kind", "j"))
                verts.append(GraphVertex(str(v["id"]), ISOLATED, self.rat(v["j"], where)))
            else:
                raise SemanticError(f"{where}: kind must be fat or isolated")
        edges = []
        for n, e in enumerate(self.arr(p.get("edges", []), "edges")):
            e = self.obj(e, f"edge {n}", ("u", "v", "k"))
            edges.append(ZkEdge(str(e["u"]), str(e["v"]), self.int_(e["k"], f"edge {n}")))
        return KarshonGraph(tuple(verts), tuple(edges))

    def polygon(self, p):
        p = self.obj(p, "polygon", ("vertices",))
        return RationalPolygon(tuple(self.point(v, "polygon vertex")
                                     for v in self.arr(p["vertices"], "vertices")))

    def marked(self, p):
        p = self.obj(p, "semitoric polygon", ("vertices",), ("marks",))
        P = self.polygon({"vertices": p["vertices"]})
        marks, signs = [], []
        for n, m in enumerate(self.arr(p.get("marks", []), "marks")):
            m = self.obj(m, f"mark {n}", ("at",), ("sign",))
            marks.append(self.point(m["at"], f"mark {n}"))
            signs.append(self.int_(m.get("sign", 1), f"mark {n}"))
        return MarkedWeightedPolygon(P, tuple(marks), tuple(signs))

    def move(self, m, what="move"):
        m = self.obj(m, what, ("case", "target", "size"), ("side",))
        return BlowupMove(m["case"], str(m["target"]), self.rat(m["size"], what), m.get("side"))

    def descriptor(self, d):
        d = self.obj(d, "minimal", ("kind",), ("scale", "n", "a", "b", "genus", "s", "xi", "offset"))
        fields = {}
        for name in ("scale", "a", "b", "s"):
            if d.get(name) is not None:
                fields[name] = self.rat(d[name], f"minimal.{name}")
        for name in ("n", "genus"):
            if d.get(name) is not None:
                fields[name] = self.int_(d[name], f"minimal.{name}")
        xi = d.get("xi")
        if xi is not None:
            xi = self.arr(xi, "minimal.xi")
            xi = LatticeVector(self.int_(xi[0], "xi"), self.int_(xi[1], "xi"))
        return descriptor_from_fields(d["kind"], xi=xi,
                                      offset=self.rat(d.get("offset", "0"), "offset"), **fields)

    def certificate(self, p):
        p = self.obj(p, "certificate", ("minimal",), ("stage1", "islands", "polygon_trace"))
        stage1 = tuple(self.move(m, "stage1 move") for m in self.arr(p.get("stage1", []), "stage1"))
        plans = []
        for n, isl in enumerate(self.arr(p.get("islands", []), "islands")):
            isl = self.obj(isl, f"island {n}", ("seed_j", "seed_size", "side"), ("flap_moves",))
            plans.append(IslandPlan(self.rat(isl["seed_j"], "seed_j"),
                                    self.rat(isl["seed_size"], "seed_size"), isl["side"],
                                    tuple(self.move(m, "flap move")
                                          for m in self.arr(isl.get("flap_moves", []), "flap_moves"))))
        trace = p.get("polygon_trace")
        if trace is not None:
            out = []
            for n, t in enumerate(self.arr(trace, "polygon_trace")):
                t = self.obj(t, f"trace {n}", ("stage", "kind", "payload"))
                shape = self.marked(t["payload"]) if t["kind"] == MARKED else self.polygon(t["payload"])
                out.append((t["stage"], shape))
            trace = tuple(out)
        return ExtensionCertificate(self.descriptor(p["minimal"]), stage1, tuple(plans), trace)


def _locate(text, token):
    """Line and column of the first occurrence of token outside strings."""
    in_str = esc = False
    line, col = 1, 1
    for i, ch in enumerate(text):
        if in_str:
            if esc:
                esc = False
            elif ch == "\\":
                esc = True
            elif ch == '"':
                in_str = False
        elif ch == '"':
            in_str = True
        elif text.startswith(token, i):
            return line, col
        if ch == "\n":
            line, col = line + 1, 1
        else:
            col += 1
    return None, None


class _Rejected(ValueError):
    def __init__(self, message, token):
        super().__init__(message)
        self.token = token


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise _Rejected(f"duplicate key {k!r}", json.dumps(k))
        out[k] = v
    return out


def _reject_float(text):
    raise _Rejected(f"non-integer number {text}; write rationals as strings", text)


def _reject_constant(text):
    raise _Rejected(f"{text} is not allowed", text)


def load_json(text: str):
    try:
        return json.loads(text, object_pairs_hook=_no_duplicates,
                          parse_float=_reject_float, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    except _Rejected as exc:
        raise ParseError(str(exc), *_locate(text, exc.token)) from None


def parse(text: str) -> Document:
    data = load_json(text)
    if not isinstance(data, dict):
        raise ParseError("a document is a JSON object", 1, 1)
    for key in ("kind", "version", "payload"):
        if key not in data:
            raise ParseError(f"document envelope lacks {key!r}")
    extra = set(data) - {"kind", "version", "payload"}
    if extra:
        raise ParseError(f"unknown envelope field {sorted(extra)[0]!r}")
    if data["version"] != VERSION:
        raise VersionError(f"unsupported document version {data['version']!r}")
    kind = data["kind"]
    r = _Reader(text)
    decoders = {GRAPH: r.graph, POLYGON: r.polygon, MARKED: r.marked, CERTIFICATE: r.certificate}
    if kind not in decoders:
        raise ParseError(f"unknown document kind {kind!r}")
    return Document(kind, decoders[kind](data["payload"]))


def parse_move(spec: str) -> BlowupMove:
    """Move grammar: CASE:TARGET:SIZE[:SIDE], e.g. B4:v3:1/2 or B1:f:1/4:min."""
    parts = spec.split(":")
    if len(parts) not in (3, 4):
        raise ParseError(f"move spec {spec!r} should look like CASE:TARGET:SIZE[:SIDE]")
    try:
        size = rational(parts[2])
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"move size: {exc}") from None
    return BlowupMove(parts[0].upper(), parts[1], size, parts[3] if len(parts) == 4 else None)
