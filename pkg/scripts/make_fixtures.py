"""Regenerate fixtures/*.json from momentforge.fixtures."""
import pathlib

from momentforge import documents as docs
from momentforge.extension import build_certificate
from momentforge.fixtures import GRAPHS, MARKED, POLYGONS, walkthrough_graph

out = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
out.mkdir(exist_ok=True)
for prefix, table in (("graph", GRAPHS), ("polygon", POLYGONS), ("semitoric", MARKED)):
    for name, build in table.items():
        (out / f"{prefix}-{name}.json").write_text(docs.serialize(build()), encoding="utf-8")
cert = build_certificate(walkthrough_graph(), trace=True)
(out / "certificate-walkthrough.json").write_text(docs.serialize(cert), encoding="utf-8")
