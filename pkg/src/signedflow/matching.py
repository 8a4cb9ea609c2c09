"""Maximum matchings in general multigraphs and the auxiliary matching graph.

``maximum_matching`` is Edmonds' blossom algorithm in its breadth-first
form (augmenting-path search with blossom contraction through a ``base``
array), deterministic in vertex and edge-id order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .connectivity import edge_cuts_of_size
from .errors import BugReport, PreconditionError
from .graph import EdgeFunction, GeneralizedCycle, Orientation, SignedGraph, flip_edge, switch, switch_orientation
from .textio import format_sg


@dataclass(frozen=True)
class UGraph:
    """Unsigned multigraph: ``edges[id] = (u, v)``; loops are not allowed."""

    vertices: tuple[int, ...]
    edges: Mapping[int, tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        object.__setattr__(self, "edges", dict(sorted(self.edges.items())))
        vs = set(self.vertices)
        for e, (u, v) in self.edges.items():
            if u == v or u not in vs or v not in vs:
                raise PreconditionError(f"edge {e} = ({u}, {v}) is a loop or leaves the vertex set")

    @classmethod
    def from_signed(cls, g: SignedGraph) -> "UGraph":
        return cls(g.vertices, {e: (u, v) for e, (u, v, _) in g.edge_table})

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "UGraph":
        return cls(tuple(range(n)), dict(enumerate(pairs)))

    def to_signed(self) -> SignedGraph:
        return SignedGraph.build(self.vertices, {e: (u, v, 1) for e, (u, v) in self.edges.items()})

    @property
    def n(self) -> int:
        return len(self.vertices)

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for e, (u, v) in self.edges.items():
            adj[u].append((e, v))
            adj[v].append((e, u))
        return adj


def _as_ugraph(h: UGraph | SignedGraph) -> UGraph:
    return UGraph.from_signed(h) if isinstance(h, SignedGraph) else h


# ---------------------------------------------------------------------------
# Blossom algorithm
# ---------------------------------------------------------------------------


def maximum_matching(h: UGraph | SignedGraph) -> frozenset[int]:
    """Edge ids of a maximum-cardinality matching."""
    h = _as_ugraph(h)
    verts = list(h.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    adj: list[list[int]] = [[] for _ in range(n)]
    edge_of: dict[tuple[int, int], int] = {}
    for e, (u, v) in h.edges.items():
        a, b = idx[u], idx[v]
        key = (min(a, b), max(a, b))
        if key not in edge_of:
            edge_of[key] = e
            adj[a].append(b)
            adj[b].append(a)
    for row in adj:
        row.sort()

    match = [-1] * n
    # greedy start keeps the search short; any matching is a valid start
    for v in range(n):
        if match[v] == -1:
            for w in adj[v]:
                if match[w] == -1:
                    match[v], match[w] = w, v
                    break

    def find_path(root: int) -> int:
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return augment(to, parent)
                    used[match[to]] = True
                    queue.append(match[to])
        return 0

    def augment(v: int, parent: list[int]) -> int:
        while v != -1:
            pv = parent[v]
            ppv = match[pv]
            match[v], match[pv] = pv, v
            v = ppv
        return 1

    for v in range(n):
        if match[v] == -1:
            find_path(v)
    chosen = set()
    for a in range(n):
        b = match[a]
        if b > a:
            chosen.add(edge_of[(a, b)])
    return frozenset(chosen)


def is_matching(h: UGraph | SignedGraph, m: Iterable[int]) -> bool:
    h = _as_ugraph(h)
    seen: set[int] = set()
    for e in m:
        if e not in h.edges:
            return False
        u, v = h.edges[e]
        if u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def is_perfect(h: UGraph | SignedGraph, m: Iterable[int]) -> bool:
    h = _as_ugraph(h)
    m = list(m)
    return is_matching(h, m) and 2 * len(m) == h.n


def matching_number_bruteforce(h: UGraph | SignedGraph) -> int:
    """Exact matching number by memoised search over vertex subsets (small graphs)."""
    h = _as_ugraph(h)
    verts = list(h.vertices)
    if len(verts) > 24:
        raise PreconditionError("brute-force matching is limited to 24 vertices")
    idx = {v: i for i, v in enumerate(verts)}
    nbr = [0] * len(verts)
    for u, v in h.edges.values():
        nbr[idx[u]] |= 1 << idx[v]
        nbr[idx[v]] |= 1 << idx[u]

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == 0:
            return 0
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        result = best(rest)
        cand = nbr[i] & rest
        while cand:
            bit = cand & -cand
            result = max(result, 1 + best(rest ^ bit))
            cand ^= bit
        return result

    return best((1 << len(verts)) - 1)


def odd_components(h: UGraph | SignedGraph, removed: Iterable[int]) -> int:
    h = _as_ugraph(h)
    removed = set(removed)
    adj = h.adjacency()
    seen = set(removed)
    odd = 0
    for s in h.vertices:
        if s in seen:
            continue
        seen.add(s)
        size, stack = 0, [s]
        while stack:
            x = stack.pop()
            size += 1
            for _, y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        odd += size % 2
    return odd


def tutte_witness(h: UGraph | SignedGraph) -> frozenset[int] | None:
    """A set X with ``|X| < odd(h - X)``, or None if h has a perfect matching.

    Uses the Gallai-Edmonds decomposition: D is the set of vertices missed
    by some maximum matching and X = N(D) - D.
    """
    h = _as_ugraph(h)
    nu = len(maximum_matching(h))
    if 2 * nu == h.n:
        return None
    adj = h.adjacency()
    d = set()
    for v in h.vertices:
        rest = UGraph(
            tuple(x for x in h.vertices if x != v),
            {e: uv for e, uv in h.edges.items() if v not in uv},
        )
        if len(maximum_matching(rest)) == nu:
            d.add(v)
    x = frozenset(w for v in d for _, w in adj[v] if w not in d)
    if odd_components(h, x) <= len(x):
        raise BugReport("Gallai-Edmonds set is not a Tutte witness")
    return x


# ---------------------------------------------------------------------------
# Auxiliary graph
# ---------------------------------------------------------------------------


@dataclass
class AuxiliaryGraph:
    """The unsigned graph whose perfect matchings drive the integer lift.

    Built on a normalised copy of (g, tau, phi): every zero edge positive
    (``switched``), every nonzero value equal to 1 (``flipped``).

    ``edge_origin[hid] = (source_edge, part)`` where ``part`` is ``"whole"``,
    ``"near0"``, ``"mid"``, ``"near1"`` (pieces of a subdivided edge, near
    its first or second end) or ``("bridge", zero_edge)`` for the new edge
    e' of a gadget (then ``source_edge`` is None).  Edges ``>= virtual_base``
    in ``g_plus`` are the edges to the apex w.
    ``gadget_map[e] = (e, f1 part, e', f2' part)`` lists the h-edges of the
    4-cycle for every zero edge e.
    """

    h: UGraph
    g: SignedGraph
    g_norm: SignedGraph
    t_norm: Orientation
    phi_norm: EdgeFunction
    switched: frozenset[int]
    flipped: frozenset[int]
    virtual: dict[int, tuple[int, int]]  # virtual edge id -> (vertex, tau at vertex)
    edge_origin: dict[int, tuple]
    deciding: dict[int, int | None]  # source/virtual edge -> h-edge deciding psi
    gadget_map: dict[int, tuple[int, int, int, int]]
    gadget_ends: dict[int, tuple[int, int, int, int]] = field(default_factory=dict)


def build_auxiliary_graph(g: SignedGraph, t: Orientation, phi: EdgeFunction) -> AuxiliaryGraph:
    if phi.modulus != 3:
        raise PreconditionError("phi must be a Z_3 function")
    t.check(g)
    for v in g.vertices:
        if g.degree(v) not in (2, 3):
            raise PreconditionError(f"vertex {v} has degree {g.degree(v)}; degrees must be 2 or 3")
    zeros = [e for e in g.edge_ids if phi[e] == 0]
    covered: set[int] = set()
    for e in zeros:
        u, v = g.ends(e)
        if u in covered or v in covered:
            raise PreconditionError(f"zero edges do not form a matching (edge {e})")
        covered.update((u, v))

    # normalise: zero edges positive, nonzero values 1
    sw = frozenset(g.ends(e)[0] for e in zeros if g.sign(e) < 0)
    gn = switch(g, sw)
    tn = switch_orientation(g, t, sw)
    fn = EdgeFunction(phi.values, 3)
    flipped = frozenset(e for e in g.edge_ids if phi[e] == 2)
    for e in sorted(flipped):
        tn, fn = flip_edge(gn, tn, fn, e)

    # virtual edges to the apex w at degree-2 vertices
    next_id = max(g.edge_ids, default=-1) + 1
    virtual: dict[int, tuple[int, int]] = {}
    for v in gn.vertices:
        if gn.degree(v) == 2:
            own = sum(tn.tau[e][s] * fn[e] for e, s in gn.incident(v)) % 3
            tau_v = 1 if own == 2 else -1  # makes the boundary at v vanish
            virtual[next_id] = (v, tau_v)
            next_id += 1

    def halves_at(v: int):
        """(edge, tau at v) for the non-virtual and virtual half-edges at v."""
        out = [(e, tn.tau[e][s]) for e, s in gn.incident(v)]
        out += [(ve, tv) for ve, (x, tv) in virtual.items() if x == v]
        return out

    # which end of which edge receives a subdivision vertex
    sub_at: dict[tuple[int, int], int] = {}  # (edge, vertex) -> zero edge
    pick: dict[int, tuple[int, int]] = {}
    for e in zeros:
        u, u2 = gn.ends(e)
        others_u = sorted((f, tv) for f, tv in halves_at(u) if f != e)
        others_u2 = sorted((f, tv) for f, tv in halves_at(u2) if f != e)
        pos_u = [f for f, tv in others_u if tv == 1]
        neg_u2 = [f for f, tv in others_u2 if tv == -1]
        if len(pos_u) != 1 or len(neg_u2) != 1:
            raise BugReport(
                f"zero edge {e}: half-edges at its ends are not one positive, one negative",
                format_sg(g, t, phi),
            )
        f1, f2p = pos_u[0], neg_u2[0]
        pick[e] = (f1, f2p)
        sub_at[(f1, u)] = e
        sub_at[(f2p, u2)] = e

    verts = list(gn.vertices)
    next_v = max(verts, default=-1) + 1
    h_edges: dict[int, tuple[int, int]] = {}
    origin: dict[int, tuple] = {}
    deciding: dict[int, int | None] = {}
    sub_vertex: dict[tuple[int, int], int] = {}
    part_id: dict[tuple[int, str], int] = {}
    hid = 0

    def add(u: int, v: int, org: tuple) -> int:
        nonlocal hid
        h_edges[hid] = (u, v)
        origin[hid] = org
        hid += 1
        return hid - 1

    chains = [(e, gn.ends(e)) for e in gn.edge_ids]
    chains += [(ve, (x, None)) for ve, (x, _) in virtual.items()]
    for e, (a, b) in chains:
        pts: list[tuple[int | None, str]] = [(a, "end0")]
        if (e, a) in sub_at:
            sub_vertex[(e, a)] = next_v
            pts.append((next_v, "sub0"))
            verts.append(next_v)
            next_v += 1
        if b is not None and (e, b) in sub_at:
            sub_vertex[(e, b)] = next_v
            pts.append((next_v, "sub1"))
            verts.append(next_v)
            next_v += 1
        pts.append((b, "end1"))
        # parts between consecutive points; the deciding part touches no original end
        # that carries a subdivision, i.e. it is the part between the inner points
        parts = []
        for (p, pk), (q, qk) in zip(pts, pts[1:]):
            if pk == "end0" and qk == "end1":
                name = "whole"
            elif pk == "end0":
                name = "near0"
            elif qk == "end1":
                name = "near1"
            else:
                name = "mid"
            parts.append((p, q, name))
        sub0 = (e, a) in sub_at
        sub1 = b is not None and (e, b) in sub_at
        decide_name = {
            (False, False): "whole",
            (True, False): "near1",
            (False, True): "near0",
            (True, True): "mid",
        }[(sub0, sub1)]
        deciding[e] = None
        for p, q, name in parts:
            if q is None:  # the part reaching the apex w is deleted with w
                continue
            i = add(p, q, (e, name))
            part_id[(e, name)] = i
            if name == decide_name:
                deciding[e] = i

    gadget_map = {}
    gadget_ends = {}
    for e in zeros:
        u, u2 = gn.ends(e)
        f1, f2p = pick[e]
        a1 = sub_vertex[(f1, u)]
        a2 = sub_vertex[(f2p, u2)]
        bridge = add(a1, a2, (None, ("bridge", e)))
        near_f1 = "near0" if _end_index(gn, virtual, f1, u) == 0 else "near1"
        near_f2 = "near0" if _end_index(gn, virtual, f2p, u2) == 0 else "near1"
        gadget_map[e] = (part_id[(e, "whole")], part_id[(f1, near_f1)], bridge, part_id[(f2p, near_f2)])
        gadget_ends[e] = (u, u2, a1, a2)

    h = UGraph(tuple(verts), h_edges)
    return AuxiliaryGraph(
        h=h,
        g=g,
        g_norm=gn,
        t_norm=tn,
        phi_norm=fn,
        switched=sw,
        flipped=flipped,
        virtual=virtual,
        edge_origin=origin,
        deciding=deciding,
        gadget_map=gadget_map,
        gadget_ends=gadget_ends,
    )


def _end_index(g: SignedGraph, virtual: dict, e: int, v: int) -> int:
    if e in virtual:
        return 0
    return g.side_at(e, v)


# ---------------------------------------------------------------------------
# Sufficient conditions for a perfect matching in subcubic graphs
# ---------------------------------------------------------------------------


def straddles(h: SignedGraph, cycle_edges: Iterable[int], side: Iterable[int]) -> bool:
    """True if the cycle has an edge inside ``side`` and an edge inside its complement."""
    side = set(side)
    inside = outside = False
    for e in cycle_edges:
        u, v = h.ends(e)
        if u in side and v in side:
            inside = True
        elif u not in side and v not in side:
            outside = True
    return inside and outside


@dataclass
class HypothesisReport:
    results: dict[str, tuple[bool, list[str]]]

    @property
    def ok(self) -> bool:
        return all(p for p, _ in self.results.values())

    def __str__(self) -> str:
        lines = []
        for name, (passed, wit) in self.results.items():
            extra = f" ({'; '.join(wit[:5])})" if wit else ""
            lines.append(f"[{'pass' if passed else 'FAIL'}] {name}{extra}")
        return "\n".join(lines)


def check_pm_hypotheses(
    h: SignedGraph | UGraph,
    xs: list[int],
    cs: list[GeneralizedCycle | Iterable[int]],
    nontrivial_only: bool = True,
) -> HypothesisReport:
    """Diagnostic check of sufficient conditions for a perfect matching in a subcubic graph.

    Cuts of size 3 and 4 are enumerated exhaustively (desk-scale graphs).
    With ``nontrivial_only`` a cut is skipped when one side holds fewer than
    two degree-3 vertices: such a cut comes from a single vertex of the
    underlying cubic graph, and every cycle of length >= 4 through a
    degree-2 vertex straddles the 3-cut around it and one neighbour.
    """
    g = h.to_signed() if isinstance(h, UGraph) else h
    cyc_edges = [tuple(c.edges) if isinstance(c, GeneralizedCycle) else tuple(c) for c in cs]
    cyc_verts = [{x for e in es for x in g.ends(e)} for es in cyc_edges]
    res: dict[str, tuple[bool, list[str]]] = {}

    v2 = set(g.vertices_of_degree(2))
    res["even number of degree-2 vertices"] = (len(v2) % 2 == 0, [] if len(v2) % 2 == 0 else [f"|V2| = {len(v2)}"])

    wit = []
    if len(xs) != len(cs):
        wit.append("xs and cs differ in length")
    for i, (x, vs, es) in enumerate(zip(xs, cyc_verts, cyc_edges)):
        if x not in v2:
            wit.append(f"x{i + 1} = {x} does not have degree 2")
        if x not in vs:
            wit.append(f"x{i + 1} = {x} is not on its cycle")
        if len(es) % 2 == 0:
            wit.append(f"cycle {i + 1} has even length {len(es)}")
    res["x_i of degree 2 on odd cycles C_i"] = (not wit, wit)

    wit = []
    for i in range(len(cyc_verts)):
        for j in range(i + 1, len(cyc_verts)):
            common = cyc_verts[i] & cyc_verts[j]
            if common:
                wit.append(f"cycles {i + 1} and {j + 1} share {sorted(common)}")
    res["cycles pairwise disjoint"] = (not wit, wit)

    others = v2 - set(xs)
    res["fewer than 6 other degree-2 vertices"] = (
        len(others) < 6,
        [] if len(others) < 6 else [f"{len(others)} others: {sorted(others)}"],
    )

    wit3, wit4 = [], []
    if g.is_connected():
        deg3 = set(g.vertices_of_degree(3))
        for cut in edge_cuts_of_size(g, (3, 4)):
            if nontrivial_only and min(len(deg3 & cut.side), len(deg3 - cut.side)) < 2:
                continue
            if len(cut) == 3:
                for i, es in enumerate(cyc_edges):
                    if straddles(g, es, cut.side):
                        wit3.append(f"cycle {i + 1} straddles cut {cut.edges}")
            else:
                hits = [i for i, es in enumerate(cyc_edges) if straddles(g, es, cut.side)]
                if len(hits) >= 2:
                    wit4.append(f"cycles {hits[0] + 1}, {hits[1] + 1} straddle cut {cut.edges}")
    res["no 3-edge-cut straddled"] = (not wit3, wit3)
    res["no 4-edge-cut straddled by two cycles"] = (not wit4, wit4)
    return HypothesisReport(res)
