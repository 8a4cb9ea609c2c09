"""Fixtures and generators shared by the test modules."""

from __future__ import annotations

import random
from itertools import product

from signedflow.cycles import enumerate_cycles
from signedflow.decomposition import CycleEntry, CycleList, random_valid_cycle_list  # noqa: F401
from signedflow.generators import cube, dodecahedron, generalized_petersen, heawood, k4, petersen, prism
from signedflow.errors import Unsolvable
from signedflow.graph import EdgeFunction, GeneralizedCycle, SignedGraph, boundary, default_orientation
from signedflow.z3 import solve_cycle_boundary

# one outer and one inner edge: both pentagons become negative
FLAGSHIP_NEGATIVES = (0, 10)


def flagship() -> SignedGraph:
    return petersen(FLAGSHIP_NEGATIVES)


def small_cubic_fixtures() -> dict[str, SignedGraph]:
    """2-connected cubic graphs with at most 14 vertices."""
    return {
        "k4": k4(),
        "prism3": prism(3),
        "cube": cube(),
        "prism5": prism(5),
        "petersen": petersen(),
        "prism6": prism(6),
        "gp6_2": generalized_petersen(6, 2),
        "gp7_2": generalized_petersen(7, 2),
        "heawood": heawood(),
    }


def pipeline_bases() -> dict[str, SignedGraph]:
    """Cyclically 5-edge-connected cubic graphs cheap enough for sweeps."""
    return {
        "petersen": petersen(),
        "dodecahedron": dodecahedron(),
        "gp8_3": generalized_petersen(8, 3),
    }


def random_signature(g: SignedGraph, rng: random.Random, lo: int = 1, hi: int | None = None) -> SignedGraph:
    hi = hi or max(lo, g.m // 2)
    return g.with_negative(rng.sample(list(g.edge_ids), rng.randint(lo, hi)))


def dodecahedron_bands() -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Edge lists of two opposite pentagonal faces and the 10-cycle between them."""
    g = dodecahedron()
    cycles = enumerate_cycles(g)
    fives = [c for c in cycles if len(c) == 5]
    by_vertices = {c.vertex_set: c for c in cycles}
    allv = frozenset(g.vertices)
    for a in fives:
        for b in fives:
            if a.vertex_set & b.vertex_set:
                continue
            mid = by_vertices.get(allv - a.vertex_set - b.vertex_set)
            if mid is not None:
                return a.edges, mid.edges, b.edges
    raise AssertionError("dodecahedron has no face/ring/face partition")


def band_list(negatives, classes) -> tuple[SignedGraph, CycleList]:
    """A dodecahedron signature and a hand-made list on its three bands."""
    g = dodecahedron(negatives)
    bands = dodecahedron_bands()
    entries = tuple(
        CycleEntry(GeneralizedCycle.from_edges(g, es), cls) for es, cls in zip(bands, classes)
    )
    return g, CycleList(entries, g, ())


def _strategies():
    from hypothesis import strategies as st

    @st.composite
    def signed_subcubic_graphs(draw, max_n: int = 8, min_m: int = 0):
        """Random subcubic signed multigraphs (parallel edges allowed, no loops)."""
        n = draw(st.integers(2, max_n))
        deg = [0] * n
        edges = []
        pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
        for u, v in pairs:
            if u != v and deg[u] < 3 and deg[v] < 3:
                deg[u] += 1
                deg[v] += 1
                edges.append((u, v, draw(st.sampled_from((1, -1)))))
        if len(edges) < min_m:
            from hypothesis import assume

            assume(False)
        return SignedGraph.build(n, edges)

    return signed_subcubic_graphs


signed_subcubic_graphs = _strategies()


def pipeline_corpus(seed: int = 0, per_base: int = 12) -> list[tuple[str, SignedGraph]]:
    """Signed graphs with two vertex-disjoint negative cycles: every such
    switching class of Petersen plus random signatures of larger bases."""
    from signedflow.cycles import has_two_disjoint_negative_cycles
    from signedflow.oracle import switching_classes

    out = []
    for c in switching_classes(petersen()):
        if has_two_disjoint_negative_cycles(c) is not None:
            out.append((f"petersen{list(c.negative_edges())}", c))
    rng = random.Random(seed)
    for name, g0 in pipeline_bases().items():
        if name == "petersen":
            continue
        found = 0
        while found < per_base:
            g = random_signature(g0, rng, 2)
            if has_two_disjoint_negative_cycles(g) is not None:
                out.append((f"{name}{list(g.negative_edges())}", g))
                found += 1
    return out


def cycle_graph(signs):
    n = len(signs)
    g = SignedGraph.build(n, [(i, (i + 1) % n, s) for i, s in enumerate(signs)])
    return g, GeneralizedCycle.from_edges(g, range(n))


def reachable_boundaries(g, t):
    """Map each achievable boundary vector to one Z_3 assignment (3^|E| brute force)."""
    out = {}
    for vals in product(range(3), repeat=g.m):
        f = EdgeFunction(dict(zip(g.edge_ids, vals)), 3)
        bd = boundary(g, t, f)
        out.setdefault(tuple(bd[v] for v in g.vertices), f)
    return out


def solver_agrees_with_bruteforce(signs, t=None) -> int:
    g, c = cycle_graph(signs)
    t = t or default_orientation(g)
    reach = reachable_boundaries(g, t)
    checked = 0
    for target in product(range(3), repeat=g.n):
        b = dict(zip(g.vertices, target))
        try:
            f = solve_cycle_boundary(g, t, c, b)
        except Unsolvable as exc:
            assert target not in reach
            lam = exc.certificate["weights"]
            assert sum(lam[v] * b[v] for v in g.vertices) % 3 != 0
        else:
            assert target in reach
            bd = boundary(g, t, f)
            assert all(bd[v] == b[v] for v in g.vertices)
        checked += 1
    return checked
