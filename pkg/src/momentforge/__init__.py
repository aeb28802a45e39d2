"""momentforge: exact combinatorics of Hamiltonian circle actions on
4-manifolds.  Karshon graphs with their blowup calculus, Delzant and
semitoric polygons, and extension certificates for hypersemitoric systems."""
from .catalog import MinimalModelDescriptor, match_minimal, realize, require_minimal
from .delzant import (
    RationalPolygon,
    check_delzant,
    corner_chop,
    karshon_of_restriction,
    polygon,
)
from .documents import Document, parse, serialize
from . import errors
from .errors import *  # noqa: F401,F403
from .extension import (
    ClassifiedOnly,
    ExtensionCertificate,
    ExtensionClass,
    build_certificate,
    classify_extension,
    decompose,
    replay_certificate,
    verify_certificate,
)
from .karshon import (
    BlowupMove,
    GraphVertex,
    KarshonGraph,
    ZkEdge,
    admissible,
    blowdown_candidates,
    blowup,
    canonical_form,
    derive_weights,
    fat,
    graphs_equal,
    is_minimal,
    isolated,
    orbit_counts,
    partial_order,
    reduce_to_minimal,
    validate,
)
from .lattice import LatticeVector, RatPoint2, cut_shear, point, rational
from .render import render_svg
from .semitoric import (
    GroupElement,
    MarkedWeightedPolygon,
    act,
    canonicalize,
    check_marked_delzant,
    classify_corner,
    karshon_of_semitoric,
    semitoric_blowup,
    toric_blowup_st,
)

__version__ = "0.1.0"

__all__ = [
    "MinimalModelDescriptor", "match_minimal", "realize", "require_minimal", "RationalPolygon",
    "check_delzant", "corner_chop", "karshon_of_restriction", "polygon", "Document", "parse",
    "serialize", "ClassifiedOnly", "ExtensionCertificate", "ExtensionClass",
    "build_certificate", "classify_extension", "decompose", "replay_certificate",
    "verify_certificate", "BlowupMove", "GraphVertex", "KarshonGraph", "ZkEdge", "admissible",
    "blowdown_candidates", "blowup", "canonical_form", "derive_weights", "fat", "graphs_equal",
    "is_minimal", "isolated", "orbit_counts", "partial_order", "reduce_to_minimal", "validate",
    "LatticeVector", "RatPoint2", "cut_shear", "point", "rational", "render_svg",
    "GroupElement", "MarkedWeightedPolygon", "act", "canonicalize", "check_marked_delzant",
    "classify_corner", "karshon_of_semitoric", "semitoric_blowup", "toric_blowup_st",
    "__version__",
] + [n for n in dir(errors) if n.endswith("Error")]
