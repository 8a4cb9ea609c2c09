import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import flagship
from signedflow.cycles import enumerate_cycles
from signedflow.generators import cube, dodecahedron, petersen, prism
from signedflow.graph import EdgeFunction, default_orientation, subdivide_edge
from signedflow.matching import (
    UGraph,
    build_auxiliary_graph,
    check_pm_hypotheses,
    is_matching,
    is_perfect,
    matching_number_bruteforce,
    maximum_matching,
    odd_components,
    tutte_witness,
)
from signedflow.oracle import enumerate_z3_flows


def cycle_ugraph(n):
    return UGraph.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def random_ugraph(rng, max_n=12):
    n = rng.randint(1, max_n)
    p = rng.random()
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    # a few parallel edges
    pairs += [rng.choice(pairs) for _ in range(rng.randint(0, 2))] if pairs else []
    return UGraph.from_pairs(n, pairs)


def test_small_examples():
    m = maximum_matching(cycle_ugraph(4))
    assert len(m) == 2 and is_perfect(cycle_ugraph(4), m)
    m = maximum_matching(cycle_ugraph(5))
    assert len(m) == 2 and not is_perfect(cycle_ugraph(5), m)
    m = maximum_matching(petersen())
    assert len(m) == 5 and is_perfect(petersen(), m)
    assert matching_number_bruteforce(petersen()) == 5


def test_blossom_matches_bruteforce_on_random_graphs():
    rng = random.Random(2024)
    for _ in range(1000):
        h = random_ugraph(rng)
        m = maximum_matching(h)
        assert is_matching(h, m)
        assert len(m) == matching_number_bruteforce(h)


@given(st.integers(1, 10), st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=30))
def test_tutte_witness_certifies_no_perfect_matching(n, pairs):
    pairs = [(u, v) for u, v in pairs if u != v and u < n and v < n]
    h = UGraph.from_pairs(n, pairs)
    x = tutte_witness(h)
    if x is None:
        assert is_perfect(h, maximum_matching(h))
    else:
        assert odd_components(h, x) > len(x)
        # deficiency formula
        assert h.n - 2 * len(maximum_matching(h)) == odd_components(h, x) - len(x)


def test_aux_graph_without_zeros_is_the_graph():
    g = cube()
    t = default_orientation(g)
    phi = next(f for f in enumerate_z3_flows(g) if not f.zeros())
    aux = build_auxiliary_graph(g, t, phi)
    assert aux.h.n == g.n and len(aux.h.edges) == g.m
    assert not aux.gadget_map


def test_aux_graph_with_one_zero_edge():
    g = prism(3)
    t = default_orientation(g)
    phi = next(f for f in enumerate_z3_flows(g) if len(f.zeros()) == 1)
    aux = build_auxiliary_graph(g, t, phi)
    assert aux.h.n == g.n + 2 and len(aux.h.edges) == g.m + 3
    assert list(aux.gadget_map) == list(phi.zeros())


def test_aux_graph_with_degree_two_vertices_and_no_zeros():
    g, x = subdivide_edge(flagship(), 0)
    g, y = subdivide_edge(g, 10)
    # a nowhere-zero preflow: value 1 everywhere after flipping
    t = default_orientation(g)
    phi = EdgeFunction({e: 1 for e in g.edge_ids}, 3)
    aux = build_auxiliary_graph(g, t, phi)
    assert aux.h.n == g.n and len(aux.h.edges) == g.m


def subdivided_dodecahedron():
    # edges 0 and 5 lie on opposite faces
    h, x1 = subdivide_edge(dodecahedron(), 0)
    h, x2 = subdivide_edge(h, 5)
    odd = [c for c in enumerate_cycles(h) if len(c) % 2]
    for a in odd:
        for b in odd:
            if x1 in a.vertex_set and x2 in b.vertex_set and not a.vertex_set & b.vertex_set:
                return h, [x1, x2], [a, b]
    raise AssertionError("no disjoint odd cycles through the subdivision vertices")


def test_pm_hypotheses_hold_and_matching_is_perfect():
    h, xs, cs = subdivided_dodecahedron()
    report = check_pm_hypotheses(h, xs, cs)
    assert report.ok, str(report)
    assert is_perfect(h, maximum_matching(h))


def test_pm_hypotheses_literal_cut_reading_flags_trivial_cuts():
    h, xs, cs = subdivided_dodecahedron()
    report = check_pm_hypotheses(h, xs, cs, nontrivial_only=False)
    assert not report.results["no 3-edge-cut straddled"][0]


def test_pm_hypotheses_without_cycles():
    h, _ = subdivide_edge(petersen(), 0)
    h, _ = subdivide_edge(h, 10)
    assert check_pm_hypotheses(h, [], []).ok
    assert is_perfect(h, maximum_matching(h))


def test_pm_hypotheses_odd_degree_two_count():
    h, x = subdivide_edge(petersen(), 0)
    report = check_pm_hypotheses(h, [], [])
    assert not report.results["even number of degree-2 vertices"][0]


def test_pm_hypotheses_straddled_three_cut():
    g = prism(3)
    five = next(c for c in enumerate_cycles(g) if len(c) == 5)
    h, x = subdivide_edge(g, five.edges[0])
    c = [e for e in five.edges] + [max(h.edge_ids)]
    report = check_pm_hypotheses(h, [x], [c], nontrivial_only=False)
    passed, witnesses = report.results["no 3-edge-cut straddled"]
    assert not passed and any("straddles cut" in w for w in witnesses)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_even_cycles_have_perfect_matchings(n):
    assert tutte_witness(cycle_ugraph(n)) is None
