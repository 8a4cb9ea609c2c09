"""Cycle enumeration and the structure searches used to build cycle lists.

Every search here is exhaustive at desk scale and breaks ties by the sorted
vertex tuple, so results are deterministic.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import networkx as nx

from .connectivity import blocks, is_two_connected, vertex_connectivity
from .errors import BudgetExceeded, BugReport, GraphStructureError, PreconditionError
from .graph import (
    GeneralizedCycle,
    Path,
    SignedGraph,
    is_balanced,
    switch,
)
from .textio import format_sg

MAX_CYCLE_SPACE_DIM = 22

GOOD = "good"
USABLE_NEGATIVE = "usable_negative"
NEITHER = "neither"


# ---------------------------------------------------------------------------
# Cycle enumeration
# ---------------------------------------------------------------------------


def _cycle_space_basis(g: SignedGraph, pos: dict[int, int]) -> list[int]:
    parent: dict[int, tuple[int, int] | None] = {}
    depth: dict[int, int] = {}
    tree: set[int] = set()
    for root in g.vertices:
        if root in parent:
            continue
        parent[root], depth[root] = None, 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e, y in g.neighbors(x):
                if y not in parent:
                    parent[y] = (x, e)
                    depth[y] = depth[x] + 1
                    tree.add(e)
                    queue.append(y)
    basis = []
    for e, (u, v, _) in g.edge_table:
        if e in tree:
            continue
        mask = 1 << pos[e]
        a, b = u, v
        while a != b:
            if depth[a] >= depth[b]:
                a, pe = parent[a]
            else:
                b, pe = parent[b]
            mask ^= 1 << pos[pe]
        basis.append(mask)
    return basis


@lru_cache(maxsize=1024)
def enumerate_cycles(g: SignedGraph) -> tuple[GeneralizedCycle, ...]:
    """All cycles of ``g``, sorted by ``(sorted vertices, edges)``.

    In a subcubic graph every element of the binary cycle space is a disjoint
    union of cycles, so the cycles are exactly its connected elements; they
    are visited in Gray-code order.
    """
    ids = g.edge_ids
    pos = {e: i for i, e in enumerate(ids)}
    basis = _cycle_space_basis(g, pos)
    if len(basis) > MAX_CYCLE_SPACE_DIM:
        raise BudgetExceeded(
            f"cycle space dimension {len(basis)} exceeds {MAX_CYCLE_SPACE_DIM}"
        )
    ends = [g.ends(e) for e in ids]
    inc: dict[int, list[int]] = {v: [] for v in g.vertices}
    for i, (u, v) in enumerate(ends):
        inc[u].append(i)
        inc[v].append(i)

    neg_mask = sum(1 << pos[e] for e in g.negative_edges())

    def trace_cycle(mask: int) -> GeneralizedCycle | None:
        """The cycle formed by ``mask``, or None if it is not a single cycle."""
        low = (mask & -mask).bit_length() - 1
        start, cur = ends[low]
        verts, order = [start], [low]
        prev = low
        while cur != start:
            for i in inc[cur]:
                if i != prev and mask >> i & 1:
                    break
            else:
                return None
            verts.append(cur)
            order.append(i)
            u, v = ends[i]
            cur = v if cur == u else u
            prev = i
        if len(order) != mask.bit_count():
            return None
        # canonical form: start at the least vertex, smaller edge id first
        n = len(verts)
        k = verts.index(min(verts))
        fwd_v = verts[k:] + verts[:k]
        fwd_e = order[k:] + order[:k]
        back_v = [fwd_v[0]] + fwd_v[:0:-1]
        back_e = [fwd_e[(-1 - j) % n] for j in range(n)]
        if ids[back_e[0]] < ids[fwd_e[0]]:
            fwd_v, fwd_e = back_v, back_e
        sign = -1 if (mask & neg_mask).bit_count() % 2 else 1
        return GeneralizedCycle(tuple(fwd_v), tuple(ids[i] for i in fwd_e), sign)

    cycles = []
    mask = 0
    for i in range(1, 1 << len(basis)):
        mask ^= basis[(i & -i).bit_length() - 1]
        c = trace_cycle(mask)
        if c is not None:
            cycles.append(c)
    cycles.sort(key=GeneralizedCycle.sort_key)
    return tuple(cycles)


def negative_cycles(g: SignedGraph) -> tuple[GeneralizedCycle, ...]:
    return tuple(c for c in enumerate_cycles(g) if c.sign == -1)


def negative_cycle_edge_sets(g: SignedGraph) -> frozenset[frozenset[int]]:
    return frozenset(c.edge_set for c in negative_cycles(g))


def is_induced(g: SignedGraph, c: GeneralizedCycle) -> bool:
    vs = c.vertex_set
    return all(
        e in c.edge_set for e, (u, v, _) in g.edge_table if u in vs and v in vs
    )


def has_two_disjoint_negative_cycles(
    g: SignedGraph,
) -> tuple[GeneralizedCycle, GeneralizedCycle] | None:
    for c in negative_cycles(g):
        witness = is_balanced(g.delete_vertices(c.vertices))
        if not witness.balanced:
            return c, witness.witness_cycle
    return None


# ---------------------------------------------------------------------------
# Thetas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Theta:
    """Two branch vertices joined by three internally disjoint paths."""

    branch_vertices: tuple[int, int]
    branches: tuple[Path, Path, Path]

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(e for p in self.branches for e in p.edges)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.branches for v in p.vertices)

    def cycles(self, g: SignedGraph) -> tuple[GeneralizedCycle, ...]:
        p = self.branches
        return tuple(
            GeneralizedCycle.from_edges(g, p[i].edges + p[j].edges)
            for i, j in ((0, 1), (0, 2), (1, 2))
        )

    def is_unbalanced(self, g: SignedGraph) -> bool:
        return any(c.sign == -1 for c in self.cycles(g))

    def check(self, g: SignedGraph) -> None:
        a, b = self.branch_vertices
        if a == b or len(self.branches) != 3:
            raise GraphStructureError("a theta needs two branch vertices and three branches")
        interiors = []
        for p in self.branches:
            if {p.vertices[0], p.vertices[-1]} != {a, b} or len(p.edges) != len(p.vertices) - 1:
                raise GraphStructureError("theta branch does not join the branch vertices")
            for i, e in enumerate(p.edges):
                if set(g.ends(e)) != {p.vertices[i], p.vertices[i + 1]}:
                    raise GraphStructureError(f"edge {e} does not join consecutive branch vertices")
            interiors.append(set(p.vertices[1:-1]))
        if len(set(self.branches[0].edges) | set(self.branches[1].edges) | set(self.branches[2].edges)) != sum(
            len(p.edges) for p in self.branches
        ):
            raise GraphStructureError("theta branches share an edge")
        for i in range(3):
            for j in range(i + 1, 3):
                if interiors[i] & interiors[j]:
                    raise GraphStructureError("theta branches are not internally disjoint")
            if interiors[i] & {a, b}:
                raise GraphStructureError("theta branch revisits a branch vertex")


def _path_from_edges(g: SignedGraph, start: int, edges: Iterable[int]) -> Path:
    remaining = set(edges)
    verts, order = [start], []
    cur = start
    while remaining:
        for e in sorted(remaining):
            if cur in g.ends(e):
                break
        else:
            raise GraphStructureError("edges do not form a path from the start vertex")
        remaining.discard(e)
        order.append(e)
        cur = g.other_end(e, cur)
        verts.append(cur)
    return Path(tuple(verts), tuple(order))


def _theta_from_cycles(
    g: SignedGraph, c: GeneralizedCycle, d: GeneralizedCycle
) -> Theta | None:
    shared = c.edge_set & d.edge_set
    if not shared or shared == c.edge_set or shared == d.edge_set:
        return None
    deg: dict[int, int] = {}
    for e in shared:
        for x in g.ends(e):
            deg[x] = deg.get(x, 0) + 1
    if any(x > 2 for x in deg.values()) or len(deg) != len(shared) + 1:
        return None
    if set(deg) != set(c.vertex_set & d.vertex_set):
        return None
    ends_ = sorted(x for x, k in deg.items() if k == 1)
    if len(ends_) != 2:
        return None
    a, b = ends_
    try:
        branches = (
            _path_from_edges(g, a, shared),
            _path_from_edges(g, a, c.edge_set - shared),
            _path_from_edges(g, a, d.edge_set - shared),
        )
    except GraphStructureError:
        return None
    branches = tuple(sorted(branches, key=lambda p: (len(p.edges), p.edges)))
    return Theta((a, b), branches)


def enumerate_thetas(g: SignedGraph) -> list[Theta]:
    """Every theta subgraph, found as pairs of cycles meeting in one path."""
    cycles = enumerate_cycles(g)
    seen: set[frozenset[int]] = set()
    out = []
    for i, c in enumerate(cycles):
        for d in cycles[i + 1 :]:
            th = _theta_from_cycles(g, c, d)
            if th is None or th.edges in seen:
                continue
            seen.add(th.edges)
            out.append(th)
    out.sort(key=lambda t: (sorted(t.vertices), sorted(t.edges)))
    return out


def find_unbalanced_theta(g: SignedGraph) -> Theta | None:
    """An unbalanced theta, if any.

    A graph has one exactly when some block is unbalanced and is not a single
    cycle; the theta is a negative cycle of that block plus an ear.
    """
    for verts, edges in sorted(blocks(g), key=lambda b: sorted(b[0])):
        if len(edges) <= len(verts):
            continue
        block = g.edge_subgraph(edges)
        cert = is_balanced(block)
        if cert.balanced:
            continue
        neg = cert.witness_cycle
        on_neg = neg.vertex_set
        for s in neg.vertices:
            extra = [(e, y) for e, y in block.neighbors(s) if e not in neg.edge_set]
            if extra:
                break
        else:  # pragma: no cover - a block that is not a cycle has a vertex of degree 3
            raise BugReport("block with more edges than vertices has no ear", format_sg(g))
        e0, y = min(extra)
        if y in on_neg:
            ear = Path((s, y), (e0,))
        else:
            prev = {y: (s, e0)}
            queue = deque([y])
            end = None
            while queue and end is None:
                x = queue.popleft()
                for e, z in block.neighbors(x):
                    if z == s or z in prev or e in neg.edge_set:
                        continue
                    prev[z] = (x, e)
                    if z in on_neg:
                        end = z
                        break
                    queue.append(z)
            if end is None:  # pragma: no cover - blocks are 2-connected
                raise BugReport("no ear found in a 2-connected block", format_sg(g))
            vs, es = [end], []
            cur = end
            while cur != s:
                p, e = prev[cur]
                es.append(e)
                vs.append(p)
                cur = p
            ear = Path(tuple(reversed(vs)), tuple(reversed(es)))
        t = ear.vertices[-1]
        arc1, arc2 = neg.path_between(s, t)
        return Theta((s, t), (ear, arc1, arc2))
    return None


def has_unbalanced_theta(g: SignedGraph) -> bool:
    return find_unbalanced_theta(g) is not None


# ---------------------------------------------------------------------------
# Usable and good generalized cycles
# ---------------------------------------------------------------------------


def classify_generalized_cycle(gp: SignedGraph, c: GeneralizedCycle) -> str:
    """``good``, ``usable_negative`` or ``neither``; degrees are taken in ``gp``."""
    if c.kind == "single_vertex":
        return GOOD if gp.degree(c.vertices[0]) <= 1 else NEITHER
    deg2 = sum(1 for v in c.vertices if gp.degree(v) == 2)
    if c.sign == 1:
        return GOOD if deg2 >= 2 else NEITHER
    return USABLE_NEGATIVE if len(c.vertices) - deg2 <= 1 else NEITHER


def usable_cycles(gp: SignedGraph) -> Iterator[GeneralizedCycle]:
    """Usable generalized cycles: single vertices, then good cycles, then negatives."""
    for v in gp.vertices:
        if gp.degree(v) <= 1:
            yield GeneralizedCycle.single(v)
    cycles = enumerate_cycles(gp)
    for c in cycles:
        if c.sign == 1 and classify_generalized_cycle(gp, c) == GOOD:
            yield c
    for c in cycles:
        if c.sign == -1 and classify_generalized_cycle(gp, c) == USABLE_NEGATIVE:
            yield c


def find_usable_cycle(gp: SignedGraph) -> GeneralizedCycle:
    if gp.n == 0:
        raise PreconditionError("the graph is empty")
    for c in usable_cycles(gp):
        return c
    raise BugReport("no usable generalized cycle exists", format_sg(gp))


# ---------------------------------------------------------------------------
# Thetas with subdivision vertices on their branches
# ---------------------------------------------------------------------------


def _suppressed_structure(h: SignedGraph) -> tuple[list[int], list[tuple[int, int, int]]]:
    """Branch vertices and chains ``(a, b, #interior)`` of a subdivided graph."""
    if any(h.degree(v) < 2 for v in h.vertices):
        raise PreconditionError("a subdivision of a 3-connected graph has no vertex of degree < 2")
    core = [v for v in h.vertices if h.degree(v) >= 3]
    if not core:
        raise PreconditionError("graph is a cycle, not a subdivided 3-connected graph")
    seen_edges: set[int] = set()
    chains = []
    for a in core:
        for e, w in h.neighbors(a):
            if e in seen_edges:
                continue
            seen_edges.add(e)
            interior = 0
            prev, cur = e, w
            while h.degree(cur) == 2:
                interior += 1
                (e1, x1), (e2, x2) = h.neighbors(cur)
                nxt, nv = (e2, x2) if e1 == prev else (e1, x1)
                seen_edges.add(nxt)
                prev, cur = nxt, nv
            chains.append((a, cur, interior))
    return core, chains


def find_theta_with_degree2(h: SignedGraph) -> Theta:
    """Theta whose branches all meet V_2(h), or two of whose branches meet it twice."""
    core, chains = _suppressed_structure(h)
    k = sum(c[2] for c in chains)
    if k < 4:
        raise PreconditionError(f"needs at least 4 subdivision vertices, found {k}")
    if any(c[2] > k - 2 for c in chains):
        raise PreconditionError("an original edge is subdivided more than k - 2 times")
    pairs = {frozenset(c[:2]) for c in chains}
    if any(len(p) == 1 for p in pairs) or len(pairs) != len(chains):
        raise PreconditionError("suppressed graph is not simple")
    base = nx.Graph()
    base.add_nodes_from(core)
    base.add_edges_from((a, b) for a, b, _ in chains)
    if len(core) < 4 or nx.node_connectivity(base) < 3:
        raise PreconditionError("suppressed graph is not 3-connected")
    deg2 = set(h.vertices_of_degree(2))
    for th in enumerate_thetas(h):
        counts = sorted(sum(1 for v in p.vertices[1:-1] if v in deg2) for p in th.branches)
        if counts[0] >= 1 or counts[1] >= 2:
            return th
    raise BugReport("no theta with subdivision vertices on its branches", format_sg(h))


# ---------------------------------------------------------------------------
# Negative cycles across a balanced split
# ---------------------------------------------------------------------------


def extend_to_negative_cycle(g: SignedGraph, h: SignedGraph) -> tuple[Path, Path] | None:
    """Paths ``P`` in ``h`` and ``Q`` in ``g - E(h)`` whose union is a negative cycle.

    ``h`` is a connected subgraph of ``g`` (same edge ids); both ``h`` and
    ``g - E(h)`` must be balanced.  Returns None when ``g`` is balanced.
    """
    for e in h.edge_ids:
        if not g.has_edge(e) or g.edge(e) != h.edge(e):
            raise PreconditionError(f"edge {e} of h is not an edge of g")
    if not h.is_connected():
        raise PreconditionError("h is not connected")
    if not is_balanced(h).balanced:
        raise PreconditionError("balance check failed: h is not balanced")
    rest = g.delete_edges(h.edge_ids)
    rest_cert = is_balanced(rest)
    if not rest_cert.balanced:
        raise PreconditionError("balance check failed: g - E(h) is not balanced")
    if is_balanced(g).balanced:
        return None
    flip = [v for v, side in rest_cert.bipartition.items() if side]
    gs = switch(g, flip)
    hs = gs.edge_subgraph(h.edge_ids)
    if hs.n == 0:
        hs = gs.induced(h.vertices)
    part = is_balanced(hs).bipartition
    in_h = set(h.vertices)
    u0 = sorted(v for v in in_h if part[v] == 0)
    h_edges = set(h.edge_ids)
    prev: dict[int, tuple[int, int] | None] = {v: None for v in u0}
    queue = deque(u0)
    end = None
    while queue and end is None:
        x = queue.popleft()
        if x in in_h and prev[x] is not None:
            continue
        for e, z in g.neighbors(x):
            if e in h_edges or z in prev:
                continue
            if z in in_h:
                if part[z] == 1:
                    prev[z] = (x, e)
                    end = z
                    break
                continue
            prev[z] = (x, e)
            queue.append(z)
    if end is None:
        raise BugReport("unbalanced graph has no U0-U1 path outside h", format_sg(g))
    qv, qe = [end], []
    cur = end
    while prev[cur] is not None:
        p, e = prev[cur]
        qe.append(e)
        qv.append(p)
        cur = p
    q = Path(tuple(reversed(qv)), tuple(reversed(qe)))
    start = q.vertices[0]
    prev_h: dict[int, tuple[int, int] | None] = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x == end:
            break
        for e, z in h.neighbors(x):
            if z not in prev_h:
                prev_h[z] = (x, e)
                queue.append(z)
    pv, pe = [end], []
    cur = end
    while prev_h[cur] is not None:
        p, e = prev_h[cur]
        pe.append(e)
        pv.append(p)
        cur = p
    p_path = Path(tuple(reversed(pv)), tuple(reversed(pe)))
    cyc = GeneralizedCycle.from_edges(g, p_path.edges + q.edges)
    if cyc.sign != -1:
        raise BugReport("P + Q is not a negative cycle", format_sg(g))
    return p_path, q


# ---------------------------------------------------------------------------
# Fragile pairs and the first special cycle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FragilePair:
    good: GeneralizedCycle
    negative: GeneralizedCycle


def _edge_removal_profile(g: SignedGraph, c: GeneralizedCycle):
    rest = g.delete_edges(c.edges)
    return has_unbalanced_theta(rest), negative_cycle_edge_sets(rest)


def check_fragile_pair(g: SignedGraph, c0: GeneralizedCycle, c1: GeneralizedCycle) -> list[str]:
    """Failed postconditions of a fragile pair (empty when it is valid)."""
    problems = []
    if classify_generalized_cycle(g, c0) != GOOD or c0.kind != "cycle":
        problems.append("C0 is not a good cycle")
    if c1.kind != "cycle" or c1.sign != -1:
        problems.append("C1 is not a negative cycle")
    t0, n0 = _edge_removal_profile(g, c0)
    t1, n1 = _edge_removal_profile(g, c1)
    if t0:
        problems.append("g - E(C0) has an unbalanced theta")
    if t1:
        problems.append("g - E(C1) has an unbalanced theta")
    if n0 != n1:
        problems.append("g - E(C0) and g - E(C1) have different negative cycles")
    return problems


def fragile_hypotheses(g: SignedGraph) -> list[str]:
    """Checkable hypotheses of the fragile-pair search that fail on ``g``."""
    problems = []
    if not is_two_connected(g):
        problems.append("g is not 2-connected")
    if not has_unbalanced_theta(g):
        problems.append("g has no unbalanced theta")
    for c in enumerate_cycles(g):
        if c.sign == 1 and classify_generalized_cycle(g, c) == GOOD:
            if has_unbalanced_theta(g.delete_edges(c.edges)):
                problems.append(
                    f"good cycle on {sorted(c.vertices)} leaves an unbalanced theta"
                )
                break
    return problems


def find_fragile_pair(g: SignedGraph) -> FragilePair:
    """A good cycle and a negative cycle whose removals both kill every
    unbalanced theta and leave the same negative cycles."""
    problems = fragile_hypotheses(g)
    if problems:
        raise PreconditionError("; ".join(problems))
    cycles = enumerate_cycles(g)
    good = [c for c in cycles if c.sign == 1 and classify_generalized_cycle(g, c) == GOOD]
    profiles = {}
    for c in cycles:
        if c.sign == -1:
            theta, negs = _edge_removal_profile(g, c)
            if not theta:
                profiles.setdefault(negs, c)
    for c0 in good:
        theta, negs = _edge_removal_profile(g, c0)
        if not theta and negs in profiles:
            return FragilePair(c0, profiles[negs])
    raise BugReport("no fragile pair found", format_sg(g))


@dataclass(frozen=True)
class SpanningPair:
    first: GeneralizedCycle
    second: GeneralizedCycle


@dataclass(frozen=True)
class FirstCycle:
    first: GeneralizedCycle
    theta: Theta


def initial_special(g: SignedGraph, rng: random.Random | None = None) -> SpanningPair | FirstCycle:
    """Two negative cycles partitioning V(g), or a negative cycle whose
    vertex-deletion leaves an unbalanced theta.

    The first cycle is the shortest such one (ties in enumeration order),
    or a uniformly random one when ``rng`` is given.
    """
    if vertex_connectivity(g) < 3:
        raise PreconditionError("g is not 3-connected")
    neg = negative_cycles(g)
    by_vertices: dict[frozenset[int], GeneralizedCycle] = {}
    for c in neg:
        by_vertices.setdefault(c.vertex_set, c)
    allv = frozenset(g.vertices)
    for c in neg:
        other = by_vertices.get(allv - c.vertex_set)
        if other is not None:
            return SpanningPair(c, other)
    order = sorted(neg, key=len)
    if rng:
        rng.shuffle(order)
    for c in order:
        th = find_unbalanced_theta(g.delete_vertices(c.vertices))
        if th is not None:
            return FirstCycle(c, th)
    if has_two_disjoint_negative_cycles(g):
        raise BugReport("two disjoint negative cycles but no first special cycle", format_sg(g))
    raise PreconditionError("g does not have two vertex-disjoint negative cycles")
