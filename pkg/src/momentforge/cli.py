"""Command-line entry point.  Exit codes: 0 success, 1 validation or
semantic failure, 2 parse/usage error."""
import argparse
import json
import os
import sys

from . import documents as docs
from .delzant import RationalPolygon, check_delzant, corner_chop, karshon_of_restriction
from .errors import MomentForgeError, ParseError
from .extension import (
    ClassifiedOnly,
    build_certificate,
    classify_extension,
    replay_certificate,
    verify_certificate,
)
from .karshon import (
    KarshonGraph,
    blowdown_candidates,
    blowup,
    canonical_graph,
    validate,
)
from .lattice import LatticeVector, format_rational, rational
from .render import render_svg
from .semitoric import (
    MarkedWeightedPolygon,
    canonicalize,
    check_marked_delzant,
    karshon_of_semitoric,
    semitoric_blowup,
    toric_blowup_st,
)

OK, INVALID, BAD_INPUT = 0, 1, 2


class Failure(Exception):
    """A command result that is well-formed but negative (exit 1)."""


def _color():
    mode = os.environ.get("MOMENTFORGE_COLOR", "auto").lower()
    if mode == "never":
        return False
    if mode == "always":
        return True
    return sys.stderr.isatty() and "NO_COLOR" not in os.environ


def _diag(level, message):
    tag = f"{level}:"
    if _color():
        tag = ("\x1b[31m" if level == "error" else "\x1b[33m") + tag + "\x1b[0m"
    print(f"{tag} {message}", file=sys.stderr)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise ParseError(f"{path} is not UTF-8") from None


def _load(path, *kinds):
    doc = docs.parse(_read(path))
    if kinds and doc.kind not in kinds:
        raise Failure(f"{path}: expected {' or '.join(kinds)}, got {doc.kind}")
    return doc


def _emit_doc(value):
    sys.stdout.write(docs.serialize(value))


def _emit_json(obj):
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _marked(doc):
    p = doc.payload
    return p if isinstance(p, MarkedWeightedPolygon) else MarkedWeightedPolygon(p)


# commands

def cmd_validate(a):
    doc = _load(a.file)
    p = doc.payload
    if isinstance(p, KarshonGraph):
        r = validate(p)
        _emit_json({
            "valid": r.valid,
            "violations": list(r.violations),
            "moves": [str(m) for m in (r.moves or [])],
            "minimal": docs.encode_descriptor(r.descriptor) if r.descriptor else None,
        })
        ok = r.valid
    elif isinstance(p, RationalPolygon):
        r = check_delzant(p)
        _emit_json({"valid": r.valid, "violations": [[i, s] for i, s in r.violations]})
        ok = r.valid
    elif isinstance(p, MarkedWeightedPolygon):
        r = check_marked_delzant(p)
        _emit_json({"valid": r.valid, "violations": [[i, s] for i, s in r.violations],
                    "corners": [str(c) for c in r.corners]})
        ok = r.valid
    else:
        log = []
        try:
            replay_certificate(p, log)
            ok = True
        except MomentForgeError as exc:
            log.append(str(exc))
            ok = False
        _emit_json({"valid": ok, "log": log})
    return OK if ok else INVALID


def cmd_canonical(a):
    p = _load(a.file).payload
    if isinstance(p, KarshonGraph):
        _emit_doc(canonical_graph(p))
    elif isinstance(p, MarkedWeightedPolygon):
        _emit_doc(canonicalize(p))
    elif isinstance(p, RationalPolygon):
        _emit_doc(p)
    else:
        raise Failure("certificates have no canonical form")
    return OK


def cmd_blowup(a):
    G = _load(a.file, docs.GRAPH).payload
    _emit_doc(blowup(G, docs.parse_move(a.move)))
    return OK


def cmd_blowdown(a):
    G = _load(a.file, docs.GRAPH).payload
    out = [{"move": str(m), "graph": docs.encode_graph(H)} for m, H in blowdown_candidates(G)]
    _emit_json(out)
    return OK


def cmd_chop(a):
    doc = _load(a.file, docs.POLYGON, docs.MARKED)
    lam = _rat(a.size)
    if doc.kind == docs.POLYGON:
        _emit_doc(corner_chop(doc.payload, a.vertex, lam))
    else:
        _emit_doc(toric_blowup_st(doc.payload, a.vertex, lam))
    return OK


def cmd_st_blowup(a):
    W = _marked(_load(a.file, docs.POLYGON, docs.MARKED))
    _emit_doc(semitoric_blowup(W, a.end, _rat(a.size), _rat(a.height)))
    return OK


def cmd_restrict(a):
    P = _load(a.file, docs.POLYGON).payload
    try:
        xa, xb = (int(t) for t in a.xi.split(","))
    except ValueError:
        raise ParseError(f"--xi expects two integers a,b, got {a.xi!r}") from None
    _emit_doc(karshon_of_restriction(P, LatticeVector(xa, xb)))
    return OK


def cmd_to_karshon(a):
    doc = _load(a.file, docs.POLYGON, docs.MARKED)
    if doc.kind == docs.POLYGON:
        _emit_doc(karshon_of_restriction(doc.payload, LatticeVector(1, 0)))
    else:
        _emit_doc(karshon_of_semitoric(doc.payload))
    return OK


def _class_json(c):
    return {"best": c.best, "requires_degenerate": c.requires_degenerate,
            "witness_levels": [format_rational(j) for j in c.witness_levels]}


def cmd_classify(a):
    G = _load(a.file, docs.GRAPH).payload
    _emit_json(_class_json(classify_extension(G)))
    return OK


def cmd_extend(a):
    G = _load(a.file, docs.GRAPH).payload
    result = build_certificate(G, trace=a.trace)
    if isinstance(result, ClassifiedOnly):
        _emit_json({"classified_only": _class_json(result.extension_class)})
    else:
        _emit_doc(result)
    return OK


def cmd_replay(a):
    c = _load(a.cert, docs.CERTIFICATE).payload
    G, art = replay_certificate(c)
    for line in art.log:
        _diag("info", line)
    _emit_doc(G)
    return OK


def cmd_verify(a):
    c = _load(a.cert, docs.CERTIFICATE).payload
    G = _load(a.graph, docs.GRAPH).payload
    r = verify_certificate(c, G)
    _emit_json({"ok": r.ok, "graph_matches": r.graph_matches, "error": r.error, "log": r.log})
    return OK if r.ok else INVALID


def cmd_render(a):
    svg = render_svg(_load(a.file))
    if a.output in (None, "-"):
        sys.stdout.write(svg)
    else:
        with open(a.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return OK


def _rat(text):
    try:
        return rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


def build_parser():
    ap = argparse.ArgumentParser(prog="momentforge",
                                 description="Karshon graphs, Delzant and semitoric polygons.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help, *files):
        p = sub.add_parser(name, help=help)
        for f in files:
            p.add_argument(f)
        p.set_defaults(fn=fn)
        return p

    add("validate", cmd_validate, "check any document", "file")
    add("canonical", cmd_canonical, "print the canonical representative", "file")
    p = add("blowup", cmd_blowup, "apply a graph blowup", "file")
    p.add_argument("--move", required=True, help="CASE:TARGET:SIZE[:SIDE]")
    add("blowdown", cmd_blowdown, "list admissible blowdowns", "file")
    p = add("chop", cmd_chop, "corner chop (toric blowup)", "file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--size", required=True)
    p = add("st-blowup", cmd_st_blowup, "semitoric blowup on a vertical edge", "file")
    p.add_argument("--end", choices=("min", "max"), required=True)
    p.add_argument("--size", required=True)
    p.add_argument("--height", required=True)
    p = add("restrict", cmd_restrict, "graph of the circle action xi", "file")
    p.add_argument("--xi", required=True, help="a,b")
    add("to-karshon", cmd_to_karshon, "graph of a polygon", "file")
    add("classify", cmd_classify, "extendability class of a graph", "file")
    p = add("extend", cmd_extend, "build an extension certificate", "file")
    p.add_argument("--trace", action="store_true", help="include the polygon trace")
    add("replay", cmd_replay, "replay a certificate", "cert")
    add("verify", cmd_verify, "check a certificate against a graph", "cert", "graph")
    p = add("render", cmd_render, "draw a document as SVG", "file")
    p.add_argument("-o", "--output")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        _diag("error", str(exc))
        return BAD_INPUT
    except (Failure, MomentForgeError) as exc:
        kind = getattr(exc, "kind", None)
        _diag("error", f"{kind}: {exc}" if kind else str(exc))
        return INVALID
    except ValueError as exc:
        _diag("error", str(exc))
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
