import xml.etree.ElementTree as ET

from hypothesis import given, settings

from momentforge.documents import document_for
from momentforge.extension import build_certificate
from momentforge.fixtures import cp2_graph, five_blowup_marked, four_blowup_polygon, walkthrough_graph
from momentforge.render import graph_svg, polygon_svg, render_svg
from strategies import marked_polygons

NS = "{http://www.w3.org/2000/svg}"


def tags(svg, tag, cls=None):
    root = ET.fromstring(svg)
    return [e for e in root.iter(NS + tag) if cls is None or e.get("class") == cls]


def test_cp2_graph_picture():
    svg = graph_svg(cp2_graph())
    assert len(tags(svg, "ellipse", "fat")) == 1
    assert len(tags(svg, "circle", "vertex")) == 1
    assert tags(svg, "line", "edge") == []


def test_five_blowup_picture():
    svg = polygon_svg(five_blowup_marked())
    assert svg.count("stroke-dasharray") == 1
    assert len(tags(svg, "path", "mark")) == 1
    assert len(tags(svg, "polygon")) == 1


def test_plain_polygon_has_no_cut():
    svg = render_svg(document_for(four_blowup_polygon()))
    assert "stroke-dasharray" not in svg and tags(svg, "path", "mark") == []


def test_certificate_picture_shows_the_replayed_graph():
    svg = render_svg(document_for(build_certificate(walkthrough_graph())))
    assert len(tags(svg, "ellipse", "fat")) == 1
    assert len(tags(svg, "circle", "vertex")) == 9
    assert len(tags(svg, "line", "edge")) == 5


def test_output_is_deterministic():
    doc = document_for(walkthrough_graph())
    assert render_svg(doc) == render_svg(doc)


@settings(max_examples=50)
@given(marked_polygons())
def test_marked_pictures_are_well_formed(W):
    svg = polygon_svg(W)
    assert len(tags(svg, "path", "mark")) == len(W.marks)
    assert svg == polygon_svg(W)
