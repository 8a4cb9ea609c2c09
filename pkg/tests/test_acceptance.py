"""The eight acceptance criteria, one test each.

Every test records a one-line summary; the conftest hook prints a PASS/FAIL
line per criterion at the end of the run.  Run standalone with
``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from itertools import product

import pytest

from helpers import (
    band_list,
    flagship,
    pipeline_corpus,
    random_signature,
    random_valid_cycle_list,
    small_cubic_fixtures,
    solver_agrees_with_bruteforce,
)
from signedflow.census import census
from signedflow.certificate import FlowCertificate, verify_flow
from signedflow.decomposition import (
    ORDINARY,
    POSITIVE,
    SPECIAL,
    CycleEntry,
    CycleList,
    build_cycle_list,
    subdivide_for_parity,
    validate_cycle_list,
)
from signedflow.generators import petersen
from signedflow.graph import GeneralizedCycle, boundary, default_orientation
from signedflow.lift import construct_8flow, is_flow_admissible, z3flow_to_3flow, z3flow_to_4flow
from signedflow.matching import (
    UGraph,
    build_auxiliary_graph,
    is_perfect,
    matching_number_bruteforce,
    maximum_matching,
)
from signedflow.oracle import NONE, enumerate_z3_flows, oracle_flow_exists, oracle_flow_number
from signedflow.z3 import construct_z3_preflow

pytestmark = pytest.mark.acceptance


def z3_flow_corpus(seed=0, signatures=3, per_signature=15):
    """(graph, orientation, flows) on 2-connected cubic fixtures <= 14 vertices."""
    rng = random.Random(seed)
    out = []
    for g0 in small_cubic_fixtures().values():
        for g in [g0] + [random_signature(g0, rng) for _ in range(signatures)]:
            t = default_orientation(g)
            flows = enumerate_z3_flows(g, t, max_edges=21)
            out.append((g, t, flows if len(flows) <= per_signature else rng.sample(flows, per_signature)))
    return out


def test_criterion_1_flagship_under_five_seconds(record_property):
    g = flagship()
    start = time.perf_counter()
    cert = construct_8flow(g)
    report = verify_flow(g, cert, 8)
    elapsed = time.perf_counter() - start
    exact = all(isinstance(x, int) for _, x in cert.values.items())
    record_property("summary", f"flagship 8-flow verified={report.ok} in {elapsed:.3f}s")
    assert report.ok and cert.bound_k == 8 and exact
    assert all(cert.values[e] != 0 for e in g.edge_ids)
    assert elapsed < 5


def test_criterion_2_petersen_census(record_property):
    start = time.perf_counter()
    rows = census(petersen())
    elapsed = time.perf_counter() - start
    routes = {r.route for r in rows}
    bad = [r.negatives for r in rows if not r.consistent]
    record_property(
        "summary",
        f"{len(rows)} classes ({sum(r.route == 'pipeline' for r in rows)} pipeline, "
        f"{sum(r.route == 'delegated' for r in rows)} delegated, "
        f"{sum(r.route == 'rejected' for r in rows)} rejected), {len(bad)} inconsistent, {elapsed:.1f}s",
    )
    assert len(rows) == 64
    assert routes == {"pipeline", "delegated", "rejected"}
    assert not bad
    assert elapsed < 600


def test_criterion_3_oracle_anchors(record_property):
    p = petersen()
    number = oracle_flow_number(p)
    four = oracle_flow_exists(p, 4).kind
    one_neg = petersen([0])
    admissible = is_flow_admissible(one_neg)
    no_flow = all(oracle_flow_exists(one_neg, k).kind == NONE for k in (2, 4, 6, 8))
    record_property(
        "summary",
        f"flow number {number}, 4-flow {four}, one negative edge admissible={admissible} oracle none={no_flow}",
    )
    assert number == 5 and four == NONE
    assert not admissible and no_flow


def test_criterion_4_four_flow_lifts(record_property):
    checked = failures = 0
    for g, t, flows in z3_flow_corpus():
        for phi in flows:
            psi = z3flow_to_4flow(g, t, phi)
            ok = (
                all(abs(psi[e]) <= 3 and (psi[e] - phi[e]) % 3 == 0 for e in g.edge_ids)
                and not any(boundary(g, t, psi).values())
            )
            checked += 1
            failures += not ok
    record_property("summary", f"{checked} Z3-flows lifted to 4-flows, {failures} failures")
    assert checked >= 100 and failures == 0


def test_criterion_5_three_flow_lifts(record_property):
    checked = failures = 0
    for g, t, _ in z3_flow_corpus(per_signature=10**9):
        for phi in enumerate_z3_flows(g, t, max_edges=21):
            if phi.zeros():
                continue
            psi = z3flow_to_3flow(g, t, phi)
            report = verify_flow(g, FlowCertificate(t, psi, 3, True), 3)
            congruent = all((psi[e] - phi[e]) % 3 == 0 for e in g.edge_ids)
            checked += 1
            failures += not (report.ok and congruent)
    record_property("summary", f"{checked} nowhere-zero Z3-flows lifted to 3-flows, {failures} failures")
    assert checked > 0 and failures == 0


def test_criterion_6_matching_engine(record_property):
    rng = random.Random(6)
    graphs = mismatches = 0
    while graphs < 1000:
        n = rng.randint(1, 12)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < rng.uniform(0.1, 0.6)]
        h = UGraph.from_pairs(n, pairs)
        mismatches += len(maximum_matching(h)) != matching_number_bruteforce(h)
        graphs += 1
    aux_graphs = imperfect = 0
    for _, g in pipeline_corpus():
        lists = [build_cycle_list(g)]
        extra = random_valid_cycle_list(g, rng)
        if extra is not None:
            lists.append(extra)
        for cl in lists:
            inst = subdivide_for_parity(g, cl)
            ts = inst.extend_orientation(default_orientation(g))
            phi = construct_z3_preflow(inst, ts).phi
            aux = build_auxiliary_graph(inst.g_star, ts, phi)
            aux_graphs += 1
            imperfect += not is_perfect(aux.h, maximum_matching(aux.h))
    record_property(
        "summary",
        f"{graphs} random graphs, {mismatches} size mismatches; {aux_graphs} auxiliary graphs, {imperfect} imperfect",
    )
    assert mismatches == 0 and imperfect == 0


def _drop_vertex(cl):
    last = cl.entries[-1]
    if last.cycle.kind == "single_vertex":
        return CycleList(cl.entries[:-1], cl.host), last.cycle.vertices[0]
    keep = CycleEntry(GeneralizedCycle.single(last.cycle.vertices[0]), POSITIVE)
    return CycleList(cl.entries[:-1] + (keep,), cl.host), last.cycle.vertices[1]


def test_criterion_7_cycle_list_validator(record_property):
    outputs = invalid = 0
    mutants = missed = 0
    for _, g in pipeline_corpus():
        for seed in (None, 1, 2):
            cl = build_cycle_list(g, rng=None if seed is None else random.Random(seed))
            outputs += 1
            if not validate_cycle_list(g, cl).ok:
                invalid += 1
                continue
            # drop a vertex: condition 1 names it
            bad, v = _drop_vertex(cl)
            rep = validate_cycle_list(g, bad)
            mutants += 1
            missed += not (1 in rep.failed() and any(f"vertex {v} " in w for w in rep[1].witnesses))
            # reclassify the first entry: condition 2
            bad = CycleList((CycleEntry(cl[0].cycle, ORDINARY),) + cl.entries[1:], g)
            mutants += 1
            missed += 2 not in validate_cycle_list(g, bad).failed()
            # reclassify a later odd special entry as ordinary: condition 7
            for i, ent in enumerate(cl.entries[1:], start=1):
                if ent.cls == SPECIAL and len(ent.cycle) % 2:
                    bad = CycleList(cl.entries[:i] + (CycleEntry(ent.cycle, ORDINARY),) + cl.entries[i + 1 :], g)
                    mutants += 1
                    missed += 7 not in validate_cycle_list(g, bad).failed()
                    break
    # hand-made lists exercise the ordinary and positive-cycle conditions
    g, cl = band_list([0, 5, 3], [SPECIAL, SPECIAL, ORDINARY])
    for i, cls, cond in ((2, SPECIAL, 3), (1, ORDINARY, 6), (1, POSITIVE, 0)):
        entries = list(cl.entries)
        entries[i] = CycleEntry(entries[i].cycle, cls)
        mutants += 1
        missed += cond not in validate_cycle_list(g, CycleList(tuple(entries), g)).failed()
    g, cl = band_list([0, 5], [SPECIAL, POSITIVE, SPECIAL])
    mutants += 1
    missed += 2 not in validate_cycle_list(g, CycleList((cl[1], cl[0], cl[2]), g)).failed()
    record_property(
        "summary",
        f"{outputs} built lists, {invalid} invalid; {mutants} mutants, {missed} missed",
    )
    assert invalid == 0 and missed == 0


def test_criterion_8_boundary_solver(record_property):
    cases = 0
    for length in range(2, 7):
        for signs in product((1, -1), repeat=length):
            cases += solver_agrees_with_bruteforce(signs)
    record_property("summary", f"{cases} (cycle, boundary) cases agree with brute force")
    assert cases == sum(2**n * 3**n for n in range(2, 7))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
