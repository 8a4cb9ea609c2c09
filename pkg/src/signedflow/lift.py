"""Integer lifts of Z_3-(pre)flows and the nowhere-zero 8-flow pipeline."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .certificate import FlowCertificate, verify_flow
from .connectivity import bridges, cyclic_edge_connectivity
from .cycles import has_two_disjoint_negative_cycles
from .decomposition import (
    POSITIVE,
    CycleList,
    SubdividedInstance,
    build_cycle_list,
    subdivide_for_parity,
    validate_cycle_list,
)
from .errors import BugReport, PreconditionError
from .graph import (
    Edge,
    EdgeFunction,
    Orientation,
    SignedGraph,
    boundary,
    default_orientation,
    is_balanced,
)
from .matching import AuxiliaryGraph, build_auxiliary_graph, is_perfect, maximum_matching
from .oracle import OracleBudget, forced_zero_edges, oracle_flow_search
from .textio import format_sg
from .z3 import construct_z3_preflow, unit_circulation

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Lifting
# ---------------------------------------------------------------------------


def lift_to_4preflow(
    g: SignedGraph,
    t: Orientation,
    phi: EdgeFunction,
    m: frozenset[int] | None = None,
    aux: AuxiliaryGraph | None = None,
) -> EdgeFunction:
    """Integer psi congruent to phi with |psi| <= 3, zero boundary at degree-3
    vertices and boundary +-1 at degree-2 vertices.

    ``m`` must be a perfect matching of the auxiliary graph (computed if omitted).
    """
    aux = aux or build_auxiliary_graph(g, t, phi)
    if m is None:
        m = maximum_matching(aux.h)
    if not is_perfect(aux.h, m):
        raise PreconditionError("the matching is not perfect in the auxiliary graph")
    gn, tn = aux.g_norm, aux.t_norm
    psi: dict[int, int] = {}
    for e, dec in aux.deciding.items():
        if e in aux.virtual:
            psi[e] = 1
        elif aux.phi_norm[e] != 0:
            psi[e] = -2 if dec in m else 1

    def tau_at(e: int, v: int) -> int:
        if e in aux.virtual:
            return aux.virtual[e][1]
        return tn.at(gn, e, v)

    def halves(v: int) -> list[int]:
        out = [e for e, _ in gn.incident(v)]
        return out + [ve for ve, (x, _) in aux.virtual.items() if x == v]

    for e, (whole, _, bridge, _) in aux.gadget_map.items():
        u, u2, _, _ = aux.gadget_ends[e]
        if (whole in m) == (bridge in m):
            psi[e] = 0
            continue
        rest = sum(tau_at(f, u) * psi[f] for f in halves(u) if f != e)
        psi[e] = -rest * tau_at(e, u)
        if abs(psi[e]) != 3:
            raise BugReport(f"gadget at zero edge {e} gives psi = {psi[e]}", format_sg(g, t, phi))
    for v in gn.vertices:
        total = sum(tau_at(f, v) * psi[f] for f in halves(v))
        if total != 0:
            raise BugReport(f"lift leaves boundary {total} at vertex {v}", format_sg(g, t, phi))

    # undo the normalisation: flipped edges change sign, switching changes nothing
    out = {e: (-psi[e] if e in aux.flipped else psi[e]) for e in g.edge_ids}
    res = EdgeFunction(out)
    bd = boundary(g, t, res)
    for e in g.edge_ids:
        if (out[e] - phi[e]) % 3:
            raise BugReport(f"psi({e}) = {out[e]} is not congruent to phi", format_sg(g, t, phi))
    for v in g.vertices:
        want = (0,) if g.degree(v) == 3 else (1, -1)
        if bd[v] not in want:
            raise BugReport(f"boundary {bd[v]} at vertex {v} of degree {g.degree(v)}", format_sg(g, t, phi))
    return res


def _check_z3_flow(g: SignedGraph, t: Orientation, phi: EdgeFunction) -> None:
    if phi.modulus != 3:
        raise PreconditionError("phi must be a Z_3 function")
    bd = boundary(g, t, phi)
    bad = [v for v, x in bd.items() if x]
    if bad:
        raise PreconditionError(f"phi is not a Z_3-flow: nonzero boundary at {bad}")


def z3flow_to_3flow(g: SignedGraph, t: Orientation, phi: EdgeFunction) -> EdgeFunction:
    """Nowhere-zero 3-flow congruent to a nowhere-zero Z_3-flow on a cubic graph.

    After flipping every edge to value 1, a perfect matching M of g gives
    psi = -2 on M and 1 elsewhere.
    """
    if not g.is_cubic():
        raise PreconditionError("g must be cubic")
    _check_z3_flow(g, t, phi)
    if phi.zeros():
        raise PreconditionError("phi must be nowhere-zero")
    m = maximum_matching(g)
    if not is_perfect(g, m):
        raise BugReport("cubic graph without a perfect matching; is it 2-connected?", format_sg(g, t))
    return lift_to_4preflow(g, t, phi, m)


def expand_triple_zeros(
    g: SignedGraph, t: Orientation, phi: EdgeFunction
) -> tuple[SignedGraph, Orientation, EdgeFunction, dict[int, tuple[int, ...]]]:
    """Replace every vertex meeting three zero edges by a positive directed
    triangle carrying value 1; returns the new graph and the triangles."""
    triples = [v for v in g.vertices if all(phi[e] == 0 for e, _ in g.incident(v))]
    table = dict(g.edge_table)
    tau = dict(t.tau)
    vals = dict(phi.values)
    verts = list(g.vertices)
    next_v = max(verts) + 1
    next_e = max(g.edge_ids) + 1
    triangles = {}
    for x in triples:
        corners = []
        for e, side in g.incident(x):
            c = next_v
            next_v += 1
            verts.append(c)
            corners.append(c)
            table[e] = table[e]._replace(u=c) if side == 0 else table[e]._replace(v=c)
        tri = []
        for i in range(3):
            a, b = corners[i], corners[(i + 1) % 3]
            table[next_e] = Edge(a, b, 1)
            tau[next_e] = (1, -1)
            vals[next_e] = 1
            tri.append(next_e)
            next_e += 1
        triangles[x] = tuple(tri)
        verts.remove(x)
    g2 = SignedGraph(tuple(verts), tuple(table.items()))
    return g2, Orientation(tau), EdgeFunction(vals, 3), triangles


def z3flow_to_4flow(g: SignedGraph, t: Orientation, phi: EdgeFunction) -> EdgeFunction:
    """4-flow congruent to any Z_3-flow of a 2-connected cubic graph."""
    if not g.is_cubic():
        raise PreconditionError("g must be cubic")
    _check_z3_flow(g, t, phi)
    if not phi.zeros():
        return z3flow_to_3flow(g, t, phi)
    if len(phi.zeros()) == g.m:
        return EdgeFunction({e: 0 for e in g.edge_ids})
    g2, t2, phi2, _ = expand_triple_zeros(g, t, phi)
    aux = build_auxiliary_graph(g2, t2, phi2)
    m = maximum_matching(aux.h)
    if not is_perfect(aux.h, m):
        raise BugReport("auxiliary graph has no perfect matching", format_sg(g, t, phi))
    psi2 = lift_to_4preflow(g2, t2, phi2, m, aux)
    psi = EdgeFunction({e: psi2[e] for e in g.edge_ids})
    bd = boundary(g, t, psi)
    if any(bd.values()):
        raise BugReport("restriction of the lifted flow is not a flow", format_sg(g, t, phi))
    return psi


# ---------------------------------------------------------------------------
# The 2-preflow and the assembly
# ---------------------------------------------------------------------------


def build_tau_2preflow(
    inst: SubdividedInstance,
    t_star: Orientation,
    psi: EdgeFunction,
    cover_positive: bool = True,
) -> EdgeFunction:
    """tau in {-1, 0, 1} on G* with boundary -2 * d(psi)(x_i) at each x_i and 0 elsewhere.

    Support: the special and even ordinary starred cycles.  With
    ``cover_positive`` every positive cycle also carries a +-1
    circulation, so that tau is nonzero wherever psi may vanish.
    """
    gs = inst.g_star
    bpsi = boundary(gs, t_star, psi)
    tau = {e: 0 for e in gs.edge_ids}
    for i, x in inst.x_map.items():
        d = bpsi[x]
        if d not in (1, -1):
            raise PreconditionError(f"boundary of psi at subdivision vertex {x} is {d}, not +-1")
        c = inst.cycles[i].cycle
        base = unit_circulation(gs, t_star, c, at=x)
        bx = sum(t_star.at(gs, e, x) * base[e] for e in c.edges if x in gs.ends(e))
        if bx not in (2, -2):
            raise BugReport(f"cycle through {x} is not negative", format_sg(gs, t_star))
        scale = -2 * d // bx
        for e, y in base.items():
            tau[e] = scale * y
    if cover_positive:
        for ent in inst.cycles:
            if ent.cls == POSITIVE and ent.cycle.kind == "cycle":
                tau.update(unit_circulation(gs, t_star, ent.cycle))
    res = EdgeFunction(tau)
    bt = boundary(gs, t_star, res)
    for v in gs.vertices:
        want = -2 * bpsi[v] if v in inst.x_map.values() else 0
        if bt[v] != want:
            raise BugReport(f"2-preflow has boundary {bt[v]} at {v}, expected {want}", format_sg(gs))
    return res


@dataclass
class PipelineTrace:
    """Per-phase record of a pipeline run."""

    steps: list[tuple[str, str]] = field(default_factory=list)

    def add(self, phase: str, text: str) -> None:
        log.debug("%s: %s", phase, text)
        self.steps.append((phase, text))

    def __str__(self) -> str:
        return "\n".join(f"[{p}] {line}" for p, text in self.steps for line in text.splitlines())


def _fmt(f: EdgeFunction, ids) -> str:
    return " ".join(f"{e}:{f.values[e]}" for e in ids)


def run_pipeline(
    g: SignedGraph,
    t: Orientation,
    trace: PipelineTrace | None = None,
    cycle_list: CycleList | None = None,
) -> FlowCertificate:
    """The construction proper, for inputs with two disjoint negative cycles.

    ``cycle_list`` replaces the built decomposition; it must pass
    ``validate_cycle_list``.
    """
    trace = trace or PipelineTrace()
    if cycle_list is None:
        cl = build_cycle_list(g, check_preconditions=False)
    else:
        report = validate_cycle_list(g, cycle_list)
        if not report.ok:
            raise PreconditionError(f"cycle list is invalid:\n{report}")
        cl = cycle_list
    trace.add("cycle list", cl.describe() + ("\n" + "\n".join(cl.notes) if cl.notes else ""))
    inst = subdivide_for_parity(g, cl)
    ts = inst.extend_orientation(t)
    gs = inst.g_star
    trace.add("G*", f"{gs.n} vertices, {gs.m} edges; subdivision vertices {sorted(inst.x_map.values())}")
    pre = construct_z3_preflow(inst, ts)
    phi = pre.phi
    trace.add("phi", _fmt(phi, gs.edge_ids) + f"\nswitched internally at {sorted(pre.switched)}")
    aux = build_auxiliary_graph(gs, ts, phi)
    m = maximum_matching(aux.h)
    if not is_perfect(aux.h, m):
        raise BugReport("auxiliary graph has no perfect matching", format_sg(g, t))
    trace.add(
        "matching",
        f"auxiliary graph: {aux.h.n} vertices, {len(aux.h.edges)} edges, "
        f"{len(aux.gadget_map)} gadget(s); perfect matching of size {len(m)}",
    )
    psi = lift_to_4preflow(gs, ts, phi, m, aux)
    trace.add("psi", _fmt(psi, gs.edge_ids))
    tau = build_tau_2preflow(inst, ts, psi)
    trace.add("tau", _fmt(tau, gs.edge_ids))
    total = {e: tau[e] + 2 * psi[e] for e in gs.edge_ids}
    for e, x in total.items():
        if x == 0 or abs(x) > 7:
            raise BugReport(f"tau + 2 psi has value {x} on edge {e}", format_sg(g, t))
    if any(boundary(gs, ts, EdgeFunction(total)).values()):
        raise BugReport("tau + 2 psi is not a flow on G*", format_sg(g, t))
    # contract each subdivision vertex: its two edges carry the same value
    for e, new in inst.split.values():
        if total[e] != total[new]:
            raise BugReport(f"edges {e} and {new} disagree at a subdivision vertex", format_sg(g, t))
    values = EdgeFunction({e: total[e] for e in g.edge_ids})
    cert = FlowCertificate(t, values, 8, True, method="pipeline")
    report = verify_flow(g, cert, 8)
    if not report.ok:
        raise BugReport(f"pipeline certificate failed verification: {report}", format_sg(g, t))
    cert.report = report.boundary
    cert.notes = list(cl.notes)
    trace.add("flow", _fmt(values, g.edge_ids))
    return cert


# ---------------------------------------------------------------------------
# Admissibility and the front door
# ---------------------------------------------------------------------------


@dataclass
class Admissibility:
    admissible: bool
    reason: str
    forced_zero: tuple[int, ...] = ()


def epsilon_is_one(g: SignedGraph) -> int | None:
    """An edge whose deletion balances an unbalanced g (so some switching
    has exactly one negative edge), or None."""
    if is_balanced(g).balanced:
        return None
    for e in g.edge_ids:
        if is_balanced(g.delete_edges([e])).balanced:
            return e
    return None


def admissibility(g: SignedGraph) -> Admissibility:
    if not g.is_connected():
        raise PreconditionError("admissibility is decided for connected graphs")
    br = bridges(g)
    if br:
        raise PreconditionError(f"graph has bridges {list(br)}")
    e1 = epsilon_is_one(g)
    forced = forced_zero_edges(g)
    if (e1 is None) == bool(forced):
        raise BugReport("admissibility tests disagree", format_sg(g))
    if e1 is not None:
        return Admissibility(False, f"switching-equivalent to a signature whose only negative edge is {e1}", forced)
    if has_two_disjoint_negative_cycles(g) is not None:
        return Admissibility(True, "two vertex-disjoint negative cycles")
    return Admissibility(True, "no switching has exactly one negative edge")


def is_flow_admissible(g: SignedGraph) -> bool:
    return admissibility(g).admissible


def construct_8flow(
    g: SignedGraph,
    orientation: Orientation | None = None,
    trace: PipelineTrace | None = None,
    budget: OracleBudget | None = None,
    check_connectivity: bool = True,
) -> FlowCertificate:
    """Verified nowhere-zero flow of a cyclically 5-edge-connected cubic signed graph.

    Graphs with two vertex-disjoint negative cycles go through the
    construction (an 8-flow); the others are handed to the oracle, which
    returns a flow with the least possible k.
    """
    if not g.is_cubic():
        raise PreconditionError("g is not cubic")
    if check_connectivity:
        lam = cyclic_edge_connectivity(g)
        if lam < 5:
            raise PreconditionError(f"cyclic edge-connectivity is {lam}, needs at least 5")
    adm = admissibility(g)
    if not adm.admissible:
        raise PreconditionError(f"not flow-admissible: {adm.reason}")
    t = orientation or default_orientation(g)
    t.check(g)
    trace = trace or PipelineTrace()
    if has_two_disjoint_negative_cycles(g) is None:
        trace.add("delegate", "no two vertex-disjoint negative cycles; using the oracle")
        res = oracle_flow_search(g, 8, budget)
        if res is None:
            raise BugReport("oracle found no flow on an admissible graph", format_sg(g))
        cert = res.certificate
        cert.notes.append(f"delegated to the oracle ({res.nodes_explored} nodes)")
        trace.add("flow", _fmt(cert.values, g.edge_ids))
        return cert
    return run_pipeline(g, t, trace)

