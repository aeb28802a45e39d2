"""Extendability of a circle action to toric, semitoric or hypersemitoric
systems, with replayable certificates for the constructive case."""
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import MinimalModelDescriptor, realize, require_minimal
from .errors import (
    CaseMismatchError,
    InadmissibleMoveError,
    InvalidGraphError,
    MomentForgeError,
)
from .karshon import (
    BlowupMove,
    KarshonGraph,
    Step,
    _candidate_ok,
    blowdown_candidates,
    blowup,
    canonical_form,
    fat,
    graphs_equal,
    orbit_counts,
    reduce_steps,
    replay_steps,
    validate,
)
from .semitoric import (
    MarkedWeightedPolygon,
    karshon_of_semitoric,
    semitoric_blowup,
    toric_blowup_st,
)

TORIC = "Toric"
SEMITORIC = "Semitoric"
HYPERSEMITORIC = "HypersemitoricOnly"


@dataclass(frozen=True)
class ExtensionClass:
    best: str
    requires_degenerate: bool
    witness_levels: tuple = ()


def sample_levels(G: KarshonGraph):
    """Interior J-values plus midpoints between consecutive J-values; orbit
    counts are constant between breakpoints so these cover every case."""
    js = sorted({v.j for v in G.vertices})
    mids = [(a + b) / 2 for a, b in zip(js, js[1:])]
    return sorted(set(js[1:-1]) | set(mids))


def classify_extension(G: KarshonGraph, check=True) -> ExtensionClass:
    if check:
        report = validate(G)
        if not report.valid:
            raise InvalidGraphError("; ".join(report.violations))
    counts = {j: orbit_counts(G, j) for j in sample_levels(G)}
    toric_bad = tuple(j for j, (nf, _) in counts.items() if nf > 2)
    semi_bad = tuple(j for j, (_, nn) in counts.items() if nn > 2)
    fats = G.fat_vertices()
    genus0 = all(v.genus == 0 for v in fats)
    degenerate = len(fats) < 2 and bool(semi_bad)
    if genus0 and not toric_bad:
        return ExtensionClass(TORIC, degenerate, ())
    if genus0 and not semi_bad:
        return ExtensionClass(SEMITORIC, degenerate, toric_bad)
    return ExtensionClass(HYPERSEMITORIC, degenerate, semi_bad)


# decomposition

@dataclass
class Island:
    vertex_ids: frozenset
    seed_id: str = None
    seed_j: Fraction = None
    steps: list = field(default_factory=list)


@dataclass
class Decomposition:
    extremal: list
    islands: list
    reduced: KarshonGraph


def _restricted(S, cases):
    def candidates(H):
        out = []
        live = S & set(H.ids)
        for move, Hp in blowdown_candidates(H):
            if move.case not in cases:
                continue
            removed = (set(H.ids) - set(Hp.ids)) | {move.target}
            if removed <= live:
                out.append((move, Hp))
        return out
    return candidates


def decompose(G: KarshonGraph, check=True) -> Decomposition:
    if check and not validate(G).valid:
        raise InvalidGraphError("graph is not valid")
    lo, hi = G.jmin, G.jmax
    extremal, islands = [], []
    for comp in G.components():
        if any(G.vertex(i).j in (lo, hi) for i in comp):
            extremal.append(comp)
        else:
            islands.append(Island(comp))
    order = {i: n for n, i in enumerate(_stable_order(G))}
    islands.sort(key=lambda isl: min(order[i] for i in isl.vertex_ids))
    extremal.sort(key=lambda c: min(order[i] for i in c))
    H = G
    for isl in reversed(islands):
        S = set(isl.vertex_ids)

        def single(K, S=S):
            return len(S & set(K.ids)) == 1

        try:
            H, steps = reduce_steps(H, accept=single, candidates=_restricted(S, ("B4",)))
        except InvalidGraphError:
            raise InvalidGraphError("an island does not reduce to a single point") from None
        (isl.seed_id,) = S & set(H.ids)
        isl.seed_j = H.vertex(isl.seed_id).j
        isl.steps = steps
    return Decomposition(extremal, islands, H)


def _stable_order(G):
    from .karshon import canonical_order
    return canonical_order(G)


# certificates

@dataclass(frozen=True)
class IslandPlan:
    seed_j: Fraction
    seed_size: Fraction
    side: str
    flap_moves: tuple = ()


@dataclass(frozen=True)
class ExtensionCertificate:
    minimal: MinimalModelDescriptor
    stage1_moves: tuple = ()
    stage2_islands: tuple = ()
    polygon_trace: tuple = None


@dataclass(frozen=True)
class ClassifiedOnly:
    extension_class: ExtensionClass


def _fat_on(F: KarshonGraph, side):
    j = F.jmin if side == "min" else F.jmax
    for v in F.fat_vertices():
        if v.j == j:
            return v
    return None


def _seed_step(H, sid):
    """Remove an edgeless seed by an inverse B1, preferring the min surface."""
    seed = H.vertex(sid)
    sides = [s for s in ("min", "max") if _fat_on(H, s) is not None]
    for side in sides:
        F = _fat_on(H, side)
        lam = abs(seed.j - F.j)
        Hp = H.replace(remove=[sid, F.id], add_vertices=[fat(F.id, F.j, F.area + lam, F.genus)])
        move = BlowupMove("B1", F.id, lam, side)
        if _candidate_ok(H, Hp, move):
            return Step(Hp, move, H)
    raise InvalidGraphError(f"seed at J={seed.j} cannot be absorbed by a surface")


def build_certificate(G: KarshonGraph, trace=True):
    report = validate(G)
    if not report.valid:
        raise InvalidGraphError("; ".join(report.violations))
    if not G.fat_vertices():
        return ClassifiedOnly(classify_extension(G, check=False))
    dec = decompose(G, check=False)
    H = dec.reduced
    seed_steps = []
    for isl in reversed(dec.islands):
        st = _seed_step(H, isl.seed_id)
        seed_steps.append(st)
        H = st.before
    seed_steps.reverse()
    Gmin, stage1_steps = reduce_steps(H)
    desc = require_minimal(Gmin)
    R = realize(desc)
    F, stage1 = replay_steps(R, stage1_steps)
    F, seeds = replay_steps(F, seed_steps)
    plans = []
    for isl, seed in zip(dec.islands, seeds):
        F, flaps = replay_steps(F, isl.steps)
        plans.append(IslandPlan(isl.seed_j, seed.size, seed.side, tuple(flaps)))
    if not graphs_equal(F, G):
        raise InvalidGraphError("certificate replay does not reproduce the graph")
    cert = ExtensionCertificate(desc, tuple(stage1), tuple(plans), None)
    if trace and desc.frame_polygon() is not None:
        tr = polygon_trace(cert)
        if tr is not None:
            cert = ExtensionCertificate(desc, tuple(stage1), tuple(plans), tuple(tr))
    return cert


def _seed_move(F, plan):
    fv = _fat_on(F, plan.side)
    if fv is None:
        raise InadmissibleMoveError(f"no surface at the {plan.side} to blow up")
    return BlowupMove("B1", fv.id, plan.seed_size, plan.side)


def polygon_trace(cert: ExtensionCertificate):
    """Replay stages 1 and 2 on polygons: corner chops, then semitoric
    blowups on the vertical edges.  None when some graph move has no
    polygon counterpart of the same size."""
    P = cert.minimal.frame_polygon()
    if P is None:
        return None
    W = MarkedWeightedPolygon(P)
    F = realize(cert.minimal)
    out = [("minimal", P)]
    for n, m in enumerate(cert.stage1_moves):
        F = blowup(F, m)
        x = None if m.case == "B1" else _target_j(cert, n)
        found = None
        for i in range(len(W.polygon)):
            if m.case == "B1" or W.polygon[i].x != x:
                continue
            try:
                W2 = toric_blowup_st(W, i, m.size)
            except MomentForgeError:
                continue
            if graphs_equal(karshon_of_semitoric(W2), F):
                found = W2
                break
        if found is None:
            return None
        W = found
        out.append((f"stage1:{n}", W.polygon))
    for n, plan in enumerate(cert.stage2_islands):
        F = blowup(F, _seed_move(F, plan))
        P = W.polygon
        j = P.xmin + plan.seed_size if plan.side == "min" else P.xmax - plan.seed_size
        try:
            low = P.lower_y(j)
            top = min([c.y for c in W.marks if c.x == j] + [P.upper_y(j)])
            W = semitoric_blowup(W, plan.side, plan.seed_size, (low + top) / 2)
        except MomentForgeError:
            return None
        if not graphs_equal(karshon_of_semitoric(W), F):
            return None
        out.append((f"stage2:{n}", W))
    return out


def _target_j(cert, n):
    F = realize(cert.minimal)
    for m in cert.stage1_moves[:n]:
        F = blowup(F, m)
    return F.vertex(cert.stage1_moves[n].target).j


@dataclass
class ReplayArtifacts:
    after_stage1: KarshonGraph
    after_seeds: KarshonGraph
    polygon_trace: list
    log: list


def replay_certificate(c: ExtensionCertificate, log=None):
    """(final graph, ReplayArtifacts).  Raises InadmissibleMoveError on a
    corrupt certificate."""
    log = [] if log is None else log
    F = realize(c.minimal)
    log.append(f"minimal: {c.minimal.kind} realized with {len(F.vertices)} vertices")
    for m in c.stage1_moves:
        F = _apply(F, m, "stage1", log)
    after1 = F
    for n, plan in enumerate(c.stage2_islands):
        F = _apply(F, _seed_move(F, plan), f"stage2 seed {n}", log)
    seeds = F
    for n, plan in enumerate(c.stage2_islands):
        log.append(f"stage3 island {n}: flap from seed at J={plan.seed_j}")
        for m in plan.flap_moves:
            F = _apply(F, m, f"stage3 island {n}", log)
    tr = polygon_trace(c) if c.polygon_trace is not None else None
    return F, ReplayArtifacts(after1, seeds, tr, log)


def _apply(F, m, label, log):
    try:
        out = blowup(F, m)
    except (InadmissibleMoveError, CaseMismatchError, InvalidGraphError) as exc:
        log.append(f"{label}: {m} FAILED ({exc})")
        raise InadmissibleMoveError(f"{label}: {m} is not admissible: {exc}") from exc
    log.append(f"{label}: {m} admissible")
    return out


@dataclass
class VerificationReport:
    ok: bool
    graph_matches: bool
    log: list
    error: str = None

    def __bool__(self):
        return self.ok


def verify_certificate(c: ExtensionCertificate, G: KarshonGraph) -> VerificationReport:
    log = []
    # minimal surfaces must keep positive area once the seeds are removed
    for side in ("min", "max"):
        total = sum((p.seed_size for p in c.stage2_islands if p.side == side), Fraction(0))
        fv = _fat_on(G, side) if G.fat_vertices() else None
        if total and fv is not None:
            log.append(f"area check {side}: surface {fv.area} + seeds {total} > 0")
    try:
        F, _ = replay_certificate(c, log)
    except MomentForgeError as exc:
        return VerificationReport(False, False, log, str(exc))
    match = graphs_equal(F, G)
    if not match:
        log.append("replayed graph differs from the target")
        log.append("replayed: " + canonical_form(F).replace("\n", "; "))
    return VerificationReport(match, match, log, None if match else "graph mismatch")


__all__ = [
    "TORIC", "SEMITORIC", "HYPERSEMITORIC", "ExtensionClass", "classify_extension",
    "Island", "Decomposition", "decompose", "IslandPlan", "ExtensionCertificate",
    "ClassifiedOnly", "build_certificate", "polygon_trace", "replay_certificate",
    "verify_certificate", "VerificationReport", "ReplayArtifacts", "sample_levels",
]
