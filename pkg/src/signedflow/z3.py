"""Z_3 boundary correctors on cycles and the global Z_3-preflow on G*."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .decomposition import ORDINARY, POSITIVE, SubdividedInstance
from .errors import BugReport, PreconditionError, Unsolvable
from .graph import (
    EdgeFunction,
    GeneralizedCycle,
    Orientation,
    SignedGraph,
    boundary,
    switch,
    switch_orientation,
)
from .textio import format_sg


@dataclass(frozen=True)
class BoundaryTarget:
    """Prescribed Z_3 boundary on the vertices of one cycle."""

    values: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "values", {v: x % 3 for v, x in self.values.items()})

    def __getitem__(self, v: int) -> int:
        return self.values.get(v, 0)


def _walk(g: SignedGraph, t: Orientation, c: GeneralizedCycle):
    """Per position i: (tau of edges[i-1] at vertices[i], tau of edges[i] at vertices[i])."""
    return [
        (t.at(g, c.edges[i - 1], v), t.at(g, c.edges[i], v)) for i, v in enumerate(c.vertices)
    ]


def conservation_weights(g: SignedGraph, c: GeneralizedCycle) -> dict[int, int]:
    """Vertex weights ``lam`` with ``sum lam(v) * d(tau)(v) = 0`` for every ``tau`` on E(c).

    Exists exactly when ``c`` is positive; for an all-positive cycle it is
    the constant 1.
    """
    if c.sign != 1:
        raise PreconditionError("conservation weights exist only for positive cycles")
    lam = {c.vertices[0]: 1}
    for i in range(len(c) - 1):
        lam[c.vertices[i + 1]] = lam[c.vertices[i]] * g.sign(c.edges[i])
    return lam


def solve_cycle_boundary(
    g: SignedGraph, t: Orientation, c: GeneralizedCycle, b: BoundaryTarget | Mapping[int, int]
) -> EdgeFunction:
    """A Z_3 function on E(c) whose boundary, restricted to V(c), equals ``b``.

    Values are propagated around the cycle from ``vertices[0]`` with the
    value of the first edge kept as an unknown ``s``; the closing equation
    is then linear in ``s``.  Its coefficient is invertible exactly for
    negative cycles (unique solution); for positive cycles ``s = 0`` is
    used and solvability is the conservation identity.
    """
    if not isinstance(b, BoundaryTarget):
        b = BoundaryTarget(b)
    if c.kind != "cycle":
        raise PreconditionError("a single vertex carries no cycle edges")
    n = len(c)
    halves = _walk(g, t, c)
    # y_i = alpha_i + gamma_i * s  (mod 3)
    alpha, gamma = [0] * n, [0] * n
    alpha[0], gamma[0] = 0, 1
    for i in range(1, n):
        a, bb = halves[i]
        alpha[i] = (b[c.vertices[i]] - a * alpha[i - 1]) * bb % 3
        gamma[i] = (-a * gamma[i - 1]) * bb % 3
    a0, b0 = halves[0]
    const = a0 * alpha[n - 1] % 3
    coef = (a0 * gamma[n - 1] + b0) % 3
    rhs = (b[c.vertices[0]] - const) % 3
    if coef:
        s = rhs * coef % 3  # coef is its own inverse mod 3
    elif rhs == 0:
        s = 0
    else:
        lam = conservation_weights(g, c)
        total = sum(lam[v] * b[v] for v in c.vertices) % 3
        raise Unsolvable(
            f"positive cycle: weighted boundary sum is {total}, must be 0",
            certificate={"weights": lam, "weighted_sum": total},
        )
    vals = {c.edges[i]: (alpha[i] + gamma[i] * s) % 3 for i in range(n)}
    return EdgeFunction(vals, 3)


def odd_negative_unit_boundary(g: SignedGraph, t: Orientation, c: GeneralizedCycle) -> EdgeFunction:
    """Values in {1, -1} on a negative odd cycle making every vertex a source or sink."""
    if c.kind != "cycle" or c.sign != -1 or len(c) % 2 == 0:
        raise PreconditionError("needs a negative cycle of odd length")
    vals = {}
    label = 1
    for i, e in enumerate(c.edges):
        v = c.vertices[i]
        vals[e] = label * t.at(g, e, v)
        label *= -g.sign(e)
    return EdgeFunction(vals, 3)


def unit_circulation(
    g: SignedGraph, t: Orientation, c: GeneralizedCycle, at: int | None = None
) -> dict[int, int]:
    """Integer values in {1, -1} on E(c) with zero boundary on V(c) minus ``at``.

    For a positive cycle and ``at=None`` this is a circulation.  For a
    negative cycle the boundary at ``at`` is then +-2.
    """
    verts, edges = list(c.vertices), list(c.edges)
    n = len(verts)
    start = 0 if at is None else verts.index(at)
    vals = {edges[start]: 1}
    for step in range(1, n):
        i = (start + step) % n
        v = verts[i]
        prev, nxt = edges[i - 1], edges[i]
        vals[nxt] = -t.at(g, prev, v) * vals[prev] * t.at(g, nxt, v)
    return vals


# ---------------------------------------------------------------------------
# The global preflow
# ---------------------------------------------------------------------------


@dataclass
class Z3Preflow:
    """Result of the back-to-front construction.

    ``phi`` is reported against the caller's signature and orientation;
    ``switched`` is the vertex set switched internally so every positive
    starred cycle is all-positive (values are unaffected by that switch).
    """

    phi: EdgeFunction
    switched: frozenset[int]
    log: list[str] = field(default_factory=list)


def _positive_cycle_switch(g: SignedGraph, inst: SubdividedInstance) -> frozenset[int]:
    x = set()
    for ent in inst.cycles:
        c = ent.cycle
        if ent.cls != POSITIVE or c.kind != "cycle":
            continue
        flip = False
        for i, e in enumerate(c.edges[:-1]):
            flip ^= g.sign(e) < 0
            if flip:
                x.add(c.vertices[i + 1])
    return frozenset(x)


def check_preflow(g: SignedGraph, t: Orientation, f: EdgeFunction) -> list[str]:
    """Violations of "boundary nonzero exactly at vertices of degree 1 or 2"."""
    problems = []
    bd = boundary(g, t, f)
    for v in g.vertices:
        low = g.degree(v) in (1, 2)
        if low and bd[v] == 0:
            problems.append(f"vertex {v} has degree {g.degree(v)} but zero boundary")
        if not low and bd[v] != 0:
            problems.append(f"vertex {v} has degree {g.degree(v)} and boundary {bd[v]}")
    return problems


def _balance_f_edges(phi: dict[int, int], f_edges: list[int], total) -> bool:
    """Set F to +1, then negate the first subset (by size, then lexicographically)
    that makes ``total()`` vanish."""
    for e in f_edges:
        phi[e] = 1
    for size in range(len(f_edges) + 1):
        for sub in combinations(f_edges, size):
            for e in sub:
                phi[e] = 2
            if total() == 0:
                return True
            for e in sub:
                phi[e] = 1
    return False


def construct_z3_preflow(inst: SubdividedInstance, t: Orientation) -> Z3Preflow:
    """Z_3-preflow on ``inst.g_star`` whose zero edges lie on positive or special cycles."""
    gs = inst.g_star
    t.check(gs)
    x_switch = _positive_cycle_switch(gs, inst)
    g = switch(gs, x_switch)
    tw = switch_orientation(gs, t, x_switch)
    entries = list(inst.cycles)
    owner = {v: k for k, ent in enumerate(entries) for v in ent.cycle.vertices}
    phi: dict[int, int] = {}
    log: list[str] = []

    def bd(v: int) -> int:
        return sum(tw.tau[e][side] * phi[e] for e, side in g.incident(v) if e in phi) % 3

    def fail(msg: str):
        raise BugReport(msg, format_sg(gs, t))

    for k in range(len(entries) - 1, -1, -1):
        ent = entries[k]
        c = ent.cycle
        on_cycle = set(c.edges)
        chords, f_edges, later = [], [], []
        for e, (u, v, _) in g.edge_table:
            ku, kv = owner[u], owner[v]
            if ku != k and kv != k:
                continue
            if e in on_cycle:
                continue
            if ku == k and kv == k:
                chords.append(e)
            elif min(ku, kv) < k:
                f_edges.append(e)
            else:
                later.append(e)

        if ent.cls == POSITIVE:
            if len(f_edges) < 2:
                fail(f"positive entry {k + 1} has {len(f_edges)} edges to earlier entries")
            for e in chords:
                phi[e] = 1
            if not _balance_f_edges(phi, f_edges, lambda: sum(bd(v) for v in c.vertices) % 3):
                fail(f"no +-1 choice on F balances positive entry {k + 1}")
            if c.kind == "cycle":
                tau = solve_cycle_boundary(g, tw, c, {v: -bd(v) for v in c.vertices})
                phi.update(tau.values)
            log.append(f"C{k + 1} positive: {len(chords)} chord(s), |F|={len(f_edges)}")

        elif ent.cls == ORDINARY:
            if chords:
                fail(f"ordinary entry {k + 1} has a chord")
            if len(later) > 1:
                fail(f"ordinary entry {k + 1} has {len(later)} edges to later entries")
            tau = odd_negative_unit_boundary(g, tw, c)
            for e in c.edges:
                phi[e] = tau[e]
            if later:
                e = later[0]
                w = g.ends(e)[0] if owner[g.ends(e)[0]] == k else g.ends(e)[1]
                # boundary at w from the later edge alone, then from tau
                ext = tw.at(g, e, w) * phi[e] % 3
                own = (bd(w) - ext) % 3
                if own != -ext % 3:
                    for e2 in c.edges:
                        phi[e2] = -phi[e2] % 3
            for e in f_edges:
                v = g.ends(e)[0] if owner[g.ends(e)[0]] == k else g.ends(e)[1]
                phi[e] = (-bd(v) * tw.at(g, e, v)) % 3
                if phi[e] == 0:
                    fail(f"ordinary entry {k + 1}: F edge {e} would be zero")
            log.append(f"C{k + 1} ordinary: length {len(c)}, w={'yes' if later else 'no'}")

        else:  # special
            x = inst.x_map[k]
            for e in chords + f_edges:
                phi[e] = 1
            target = {v: (1 if v == x else -bd(v)) for v in c.vertices}
            tau = solve_cycle_boundary(g, tw, c, target)
            phi.update(tau.values)
            log.append(f"C{k + 1} special: {len(chords)} chord(s), |F|={len(f_edges)}")

    missing = [e for e in g.edge_ids if e not in phi]
    if missing:
        fail(f"edges left unassigned: {missing}")
    f = EdgeFunction(phi, 3)
    problems = check_preflow(g, tw, f)
    if problems:
        fail("result is not a preflow: " + "; ".join(problems))
    zeros = f.zeros()
    seen: set[int] = set()
    for e in zeros:
        u, v = g.ends(e)
        if u in seen or v in seen:
            fail("zero set is not a matching")
        seen.update((u, v))
        cls = entries[owner[u]].cls
        if owner[u] != owner[v] or e not in entries[owner[u]].cycle.edge_set or cls == ORDINARY:
            fail(f"zero edge {e} is not on a positive or special cycle")
    # switching keeps the values; the boundary merely changes sign on x_switch
    return Z3Preflow(f, x_switch, log)
