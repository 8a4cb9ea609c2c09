"""Connectivity: blocks, vertex connectivity, cyclic edge-connectivity, paths, cuts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

import networkx as nx

from .errors import NotEnoughPaths, PreconditionError
from .graph import SignedGraph


@dataclass(frozen=True)
class EdgeCut:
    side: frozenset[int]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


def to_networkx(g: SignedGraph) -> nx.Graph:
    """Simple undirected graph; ``capacity`` counts parallel edges."""
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    for _, (u, v, _) in g.edge_table:
        if h.has_edge(u, v):
            h[u][v]["capacity"] += 1
        else:
            h.add_edge(u, v, capacity=1)
    return h


# ---------------------------------------------------------------------------
# Blocks
# ---------------------------------------------------------------------------


def blocks(g: SignedGraph) -> list[tuple[frozenset[int], tuple[int, ...]]]:
    """Biconnected components as ``(vertices, edges)``; bridges are one-edge blocks.

    Isolated vertices form blocks without edges.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out: list[tuple[frozenset[int], tuple[int, ...]]] = []
    stack: list[int] = []
    counter = [0]

    def dfs(v: int, parent_edge: int | None) -> None:
        disc[v] = low[v] = counter[0]
        counter[0] += 1
        for e, w in g.neighbors(v):
            if e == parent_edge:
                continue
            if w not in disc:
                stack.append(e)
                dfs(w, e)
                low[v] = min(low[v], low[w])
                if low[w] >= disc[v]:
                    comp = []
                    while True:
                        x = stack.pop()
                        comp.append(x)
                        if x == e:
                            break
                    verts = frozenset(x for f in comp for x in g.ends(f))
                    out.append((verts, tuple(sorted(comp))))
            elif disc[w] < disc[v]:
                stack.append(e)
                low[v] = min(low[v], disc[w])

    for v in g.vertices:
        if v not in disc:
            if g.degree(v) == 0:
                disc[v] = low[v] = counter[0]
                counter[0] += 1
                out.append((frozenset([v]), ()))
            else:
                dfs(v, None)
    return out


def bridges(g: SignedGraph) -> tuple[int, ...]:
    return tuple(sorted(es[0] for _, es in blocks(g) if len(es) == 1))


def is_two_connected(g: SignedGraph) -> bool:
    if g.n < 2 or not g.is_connected():
        return False
    bl = blocks(g)
    return len(bl) == 1 and len(bl[0][1]) >= 2


# ---------------------------------------------------------------------------
# Vertex connectivity, paths, cuts
# ---------------------------------------------------------------------------


def vertex_connectivity(g: SignedGraph) -> int:
    """Size of a minimum vertex cut (n - 1 for complete graphs, 0 if disconnected)."""
    if g.n <= 1:
        return 0
    return nx.node_connectivity(to_networkx(g))


def disjoint_paths(
    g: SignedGraph, source: int | Iterable[int], targets: Iterable[int], k: int
) -> list[tuple[int, ...]]:
    """``k`` paths from ``source`` to ``targets`` (vertex lists).

    Paths are pairwise disjoint except at a shared single source vertex, and
    each path meets ``targets`` only at its last vertex.
    """
    if k < 1:
        raise PreconditionError("k must be at least 1")
    targets = set(targets)
    h = to_networkx(g)
    src_node, sink = ("source",), ("sink",)
    if isinstance(source, int):
        if source in targets:
            raise PreconditionError("source vertex is itself a target")
        s = source
    else:
        sources = set(source)
        if sources & targets:
            raise PreconditionError("source and target sets intersect")
        s = src_node
        h.add_node(s)
        for v in sorted(sources):
            h.add_edge(s, v)
    h.add_node(sink)
    for t in sorted(targets):
        h.add_edge(t, sink)
    try:
        raw = list(nx.node_disjoint_paths(h, s, sink))
    except nx.NetworkXNoPath:
        raw = []
    if len(raw) < k:
        raise NotEnoughPaths(k, len(raw))
    paths = []
    for p in raw:
        p = [x for x in p if x not in (src_node, sink)]
        for i, x in enumerate(p):
            if x in targets:
                p = p[: i + 1]
                break
        paths.append(tuple(p))
    paths.sort(key=lambda p: (len(p), p))
    return paths[:k]


def min_cut_between(g: SignedGraph, a: Iterable[int], b: Iterable[int]) -> EdgeCut:
    """Minimum edge cut separating vertex set ``a`` from ``b``."""
    a, b = set(a), set(b)
    if not a or not b or a & b:
        raise PreconditionError("vertex sets must be nonempty and disjoint")
    h = nx.DiGraph()
    for u, v, data in to_networkx(g).edges(data=True):
        h.add_edge(u, v, capacity=data["capacity"])
        h.add_edge(v, u, capacity=data["capacity"])
    h.add_nodes_from(g.vertices)
    s, t = ("s",), ("t",)
    for v in a:
        h.add_edge(s, v)  # no capacity attribute means infinite
    for v in b:
        h.add_edge(v, t)
    _, (reach, _) = nx.minimum_cut(h, s, t)
    side = frozenset(x for x in reach if x != s)
    return EdgeCut(side, g.boundary_edges(side))


# ---------------------------------------------------------------------------
# Small edge cuts
# ---------------------------------------------------------------------------


def _connected_sets_small_cut(
    g: SignedGraph, root: int, k: int, forbidden: frozenset[int] = frozenset()
) -> Iterator[tuple[frozenset[int], int]]:
    """Connected vertex sets containing ``root`` with at most ``k`` boundary edges.

    Branches on the smallest vertex adjacent to the current set: include it,
    or exclude it for good (its edges to the set become cut edges).
    """
    adj = {v: [w for _, w in g.neighbors(v)] for v in g.vertices}

    def rec(inside: set[int], outside: set[int], committed: int):
        frontier = None
        for x in inside:
            for w in adj[x]:
                if w not in inside and w not in outside and (frontier is None or w < frontier):
                    frontier = w
        if frontier is None:
            yield frozenset(inside), committed
            return
        w = frontier
        to_out = sum(1 for y in adj[w] if y in outside)
        if committed + to_out <= k:
            inside.add(w)
            yield from rec(inside, outside, committed + to_out)
            inside.remove(w)
        to_in = sum(1 for y in adj[w] if y in inside)
        if committed + to_in <= k:
            outside.add(w)
            yield from rec(inside, outside, committed + to_in)
            outside.remove(w)

    start_cost = sum(1 for y in adj[root] if y in forbidden)
    if start_cost <= k:
        yield from rec({root}, set(forbidden), start_cost)


def _has_cycle(g: SignedGraph, verts: Iterable[int]) -> bool:
    """True if the induced subgraph on ``verts`` is not a forest."""
    sub = g.induced(verts)
    return sub.m > sub.n - len(sub.components())


def cyclic_edge_connectivity(g: SignedGraph) -> float:
    """Least ``|delta(X)|`` such that both sides induce a subgraph with a cycle.

    Returns ``math.inf`` when no such cut exists.  A minimum cyclic cut can be
    chosen with both sides connected, so only connected sets containing the
    smallest vertex are enumerated, by increasing cut bound.
    """
    if not g.is_cubic():
        raise PreconditionError("cyclic edge-connectivity is defined here for cubic graphs")
    comps = g.components()
    if len(comps) > 1:
        return 0
    root = g.vertices[0]
    allv = set(g.vertices)
    for k in range(0, g.m + 1):
        for side, cut in _connected_sets_small_cut(g, root, k):
            if len(side) == g.n or cut != len(g.boundary_edges(side)):
                continue
            if _has_cycle(g, side) and _has_cycle(g, allv - side):
                return cut
    return math.inf


def cyclic_edge_connectivity_bruteforce(g: SignedGraph) -> float:
    """Exhaustive over all vertex subsets; for cross-checking on small graphs."""
    vs = list(g.vertices)
    best = math.inf
    allv = set(vs)
    rest = vs[1:]
    for r in range(0, len(rest) + 1):
        for extra in combinations(rest, r):
            side = {vs[0], *extra}
            if len(side) == len(vs):
                continue
            if _has_cycle(g, side) and _has_cycle(g, allv - side):
                best = min(best, len(g.boundary_edges(side)))
    return best


def min_cyclic_cut(g: SignedGraph, bound: int) -> EdgeCut | None:
    """A cyclic edge cut with at most ``bound`` edges, if one exists."""
    root = g.vertices[0]
    allv = set(g.vertices)
    for side, cut in _connected_sets_small_cut(g, root, bound):
        if len(side) < g.n and _has_cycle(g, side) and _has_cycle(g, allv - side):
            return EdgeCut(side, g.boundary_edges(side))
    return None


def edge_cuts_of_size(g: SignedGraph, sizes: Iterable[int]) -> Iterator[EdgeCut]:
    """All edge cuts ``delta(X)`` (X nonempty, proper) of the given sizes.

    ``X`` is reported as the side containing the smallest vertex.  Connected
    graphs only: a cut is identified by its edge set.
    """
    if not g.is_connected():
        raise PreconditionError("edge cut enumeration requires a connected graph")
    ids = g.edge_ids
    root = g.vertices[0]
    for size in sorted(set(sizes)):
        for chosen in combinations(ids, size):
            rest = g.delete_edges(chosen)
            comps = rest.components()
            if len(comps) < 2:
                continue
            comp_of = {v: i for i, c in enumerate(comps) for v in c}
            colour: dict[int, int] = {comp_of[root]: 0}
            adj: dict[int, list[int]] = {}
            ok = True
            for e in chosen:
                u, v = g.ends(e)
                cu, cv = comp_of[u], comp_of[v]
                if cu == cv:
                    ok = False
                    break
                adj.setdefault(cu, []).append(cv)
                adj.setdefault(cv, []).append(cu)
            if not ok:
                continue
            queue = [comp_of[root]]
            while queue and ok:
                c = queue.pop()
                for d in adj.get(c, []):
                    if d not in colour:
                        colour[d] = 1 - colour[c]
                        queue.append(d)
                    elif colour[d] == colour[c]:
                        ok = False
                        break
            if not ok or len(colour) != len(comps):
                continue
            side = frozenset(v for v in g.vertices if colour[comp_of[v]] == 0)
            yield EdgeCut(side, tuple(chosen))
