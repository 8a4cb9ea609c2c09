import random

import pytest

from helpers import (
    band_list,
    flagship,
    pipeline_bases,
    random_signature,
    random_valid_cycle_list,
    small_cubic_fixtures,
)
from signedflow.certificate import FlowCertificate, verify_flow
from signedflow.cycles import has_two_disjoint_negative_cycles
from signedflow.decomposition import ORDINARY, POSITIVE, SPECIAL, build_cycle_list, subdivide_for_parity
from signedflow.errors import PreconditionError
from signedflow.generators import cube, k4, petersen, prism
from signedflow.graph import EdgeFunction, Orientation, SignedGraph, boundary, default_orientation
from signedflow.lift import (
    PipelineTrace,
    admissibility,
    build_tau_2preflow,
    construct_8flow,
    epsilon_is_one,
    is_flow_admissible,
    lift_to_4preflow,
    run_pipeline,
    z3flow_to_3flow,
    z3flow_to_4flow,
)
from signedflow.matching import build_auxiliary_graph, is_perfect, maximum_matching
from signedflow.oracle import enumerate_z3_flows
from signedflow.z3 import construct_z3_preflow


def assert_lift(g, t, phi, psi, bound=3):
    assert all(abs(psi[e]) <= bound for e in g.edge_ids)
    assert all((psi[e] - phi[e]) % 3 == 0 for e in g.edge_ids)
    assert not any(boundary(g, t, psi).values())


def flagship_stage():
    g = flagship()
    t = default_orientation(g)
    inst = subdivide_for_parity(g, build_cycle_list(g))
    ts = inst.extend_orientation(t)
    phi = construct_z3_preflow(inst, ts).phi
    return inst, ts, phi


# ---------------------------------------------------------------------------
# lift_to_4preflow
# ---------------------------------------------------------------------------


def test_constant_one_on_bipartite_cubic_gives_three_flow():
    # the cube is bipartite: orient every edge from the even to the odd side
    g = cube()
    color = {v: bin(v).count("1") % 2 for v in g.vertices}  # labels follow bit patterns
    tau = {}
    for e, (u, v, _) in g.edge_table:
        tau[e] = (1, -1) if color[u] == 0 else (-1, 1)
    t = Orientation(tau)
    phi = EdgeFunction({e: 1 for e in g.edge_ids}, 3)
    if any(boundary(g, t, phi).values()):
        pytest.skip("cube labelling is not bit-pattern based")
    m = maximum_matching(g)
    psi = lift_to_4preflow(g, t, phi, m)
    assert {psi[e] for e in g.edge_ids} <= {1, -2}
    assert {e for e in g.edge_ids if psi[e] == -2} == set(m)
    assert_lift(g, t, phi, psi)


def test_zero_edge_value_follows_gadget_matching():
    rng = random.Random(11)
    checked = zeros_seen = 0
    for g in (prism(4), cube(), petersen(), prism(5)):
        t = default_orientation(g)
        for phi in enumerate_z3_flows(g, t):
            if not phi.zeros() or len(phi.zeros()) == g.m:
                continue
            if any(all(phi[e] == 0 for e, _ in g.incident(v)) for v in g.vertices):
                continue
            aux = build_auxiliary_graph(g, t, phi)
            m = maximum_matching(aux.h)
            assert is_perfect(aux.h, m)
            psi = lift_to_4preflow(g, t, phi, m, aux)
            assert_lift(g, t, phi, psi)
            for e, (whole, _, bridge, _) in aux.gadget_map.items():
                zeros_seen += 1
                if (whole in m) == (bridge in m):
                    assert psi[e] == 0
                else:
                    assert abs(psi[e]) == 3
            checked += 1
            if rng.random() < 0.5 and checked > 40:
                break
    assert checked >= 40 and zeros_seen > 0


def test_flagship_psi_range_and_boundary():
    inst, ts, phi = flagship_stage()
    gs = inst.g_star
    aux = build_auxiliary_graph(gs, ts, phi)
    psi = lift_to_4preflow(gs, ts, phi, aux=aux)
    # the range is stated for the frame where every nonzero phi value is 1
    normalised = {-psi[e] if e in aux.flipped else psi[e] for e in gs.edge_ids}
    assert normalised <= {-3, -2, 0, 1, 3}
    assert all((psi[e] - phi[e]) % 3 == 0 for e in gs.edge_ids)
    bd = boundary(gs, ts, psi)
    xs = set(inst.x_map.values())
    assert len(xs) == 2
    for v, x in bd.items():
        assert (x in (1, -1)) if v in xs else x == 0


def test_lift_rejects_imperfect_matching():
    inst, ts, phi = flagship_stage()
    with pytest.raises(PreconditionError):
        lift_to_4preflow(inst.g_star, ts, phi, frozenset())


# ---------------------------------------------------------------------------
# Z_3 flows to integer flows
# ---------------------------------------------------------------------------


def nowhere_zero_z3_flows(g, t):
    return [phi for phi in enumerate_z3_flows(g, t, max_edges=21) if not phi.zeros()]


def test_k4_has_no_nowhere_zero_z3_flow():
    # K4 is cubic but not bipartite, so the constant-one example cannot exist
    g = k4()
    assert nowhere_zero_z3_flows(g, default_orientation(g)) == []


def test_petersen_has_no_nowhere_zero_z3_flow():
    g = petersen()
    assert nowhere_zero_z3_flows(g, default_orientation(g)) == []


def test_odd_prisms_have_no_nowhere_zero_z3_flow():
    # an all-positive cubic graph has one exactly when it is bipartite
    for k in (3, 5):
        g = prism(k)
        assert nowhere_zero_z3_flows(g, default_orientation(g)) == []


@pytest.mark.parametrize("name", ["prism4", "cube", "prism6", "heawood", "signed"])
def test_three_flow_lift_on_fixtures(name):
    if name == "prism4":
        g = prism(4)
    elif name == "signed":
        g = petersen([2, 3, 4, 5, 6, 9, 11])
    else:
        g = small_cubic_fixtures()[name]
    t = default_orientation(g)
    flows = nowhere_zero_z3_flows(g, t)
    assert flows
    for phi in flows:
        psi = z3flow_to_3flow(g, t, phi)
        assert_lift(g, t, phi, psi, bound=2)
        assert verify_flow(g, FlowCertificate(t, psi, 3, True), 3).ok


def test_three_flow_lift_preconditions():
    g = prism(3)
    t = default_orientation(g)
    with pytest.raises(PreconditionError):
        z3flow_to_3flow(g, t, EdgeFunction({e: 0 for e in g.edge_ids}, 3))
    with pytest.raises(PreconditionError):
        z3flow_to_3flow(g, t, EdgeFunction({e: 1 for e in g.edge_ids}, 3))


def test_four_flow_of_zero_flow_is_zero():
    g = cube()
    t = default_orientation(g)
    psi = z3flow_to_4flow(g, t, EdgeFunction({e: 0 for e in g.edge_ids}, 3))
    assert psi.zeros() == g.edge_ids


def test_four_flow_mixed_zero_sets_on_eight_vertices():
    checked = 0
    for g in (cube(), prism(4)):
        t = default_orientation(g)
        for phi in enumerate_z3_flows(g, t):
            if 0 < len(phi.zeros()) < g.m:
                psi = z3flow_to_4flow(g, t, phi)
                assert_lift(g, t, phi, psi)
                checked += 1
    assert checked > 100


def test_four_flow_on_signed_fixtures():
    rng = random.Random(5)
    for g in (petersen(), prism(5), cube()):
        for _ in range(3):
            h = random_signature(g, rng)
            t = default_orientation(h)
            flows = enumerate_z3_flows(h, t)
            for phi in rng.sample(flows, min(25, len(flows))):
                assert_lift(h, t, phi, z3flow_to_4flow(h, t, phi))


# ---------------------------------------------------------------------------
# tau and the assembly
# ---------------------------------------------------------------------------


def test_flagship_tau_two_preflow():
    inst, ts, phi = flagship_stage()
    gs = inst.g_star
    psi = lift_to_4preflow(gs, ts, phi)
    tau = build_tau_2preflow(inst, ts, psi)
    support = set()
    for i in inst.x_map:
        support |= set(inst.cycles[i].cycle.edges)
    assert all(len(inst.cycles[i].cycle) == 6 for i in inst.x_map)
    for e in gs.edge_ids:
        assert (tau[e] in (1, -1)) if e in support else tau[e] == 0
    bt, bpsi = boundary(gs, ts, tau), boundary(gs, ts, psi)
    for v in gs.vertices:
        assert bt[v] == (-2 * bpsi[v] if v in inst.x_map.values() else 0)
        if v in inst.x_map.values():
            assert bt[v] in (2, -2)


def test_tau_rejects_psi_without_unit_boundary():
    inst, ts, _ = flagship_stage()
    zero = EdgeFunction({e: 0 for e in inst.g_star.edge_ids})
    with pytest.raises(PreconditionError):
        build_tau_2preflow(inst, ts, zero)


def test_tau_supported_on_one_cycle_with_odd_ordinary_rest():
    g, cl = band_list([0, 5, 3], [SPECIAL, SPECIAL, ORDINARY])
    inst = subdivide_for_parity(g, cl)
    ts = inst.extend_orientation(default_orientation(g))
    phi = construct_z3_preflow(inst, ts).phi
    psi = lift_to_4preflow(inst.g_star, ts, phi)
    tau = build_tau_2preflow(inst, ts, psi, cover_positive=False)
    support = {e for e in inst.g_star.edge_ids if tau[e]}
    allowed = set()
    for i in inst.x_map:
        allowed |= set(inst.cycles[i].cycle.edges)
    assert support == allowed
    assert all(inst.cycles[i].cls != ORDINARY or i not in inst.x_map for i in range(len(inst.cycles)))


def test_flagship_construct_and_trace():
    trace = PipelineTrace()
    g = flagship()
    cert = construct_8flow(g, trace=trace)
    assert cert.method == "pipeline"
    assert verify_flow(g, cert, 8).ok
    assert all(cert.values[e] != 0 and abs(cert.values[e]) <= 7 for e in g.edge_ids)
    phases = [p for p, _ in trace.steps]
    assert phases == ["cycle list", "G*", "phi", "matching", "psi", "tau", "flow"]


def test_construct_rejects_one_negative_edge():
    with pytest.raises(PreconditionError, match="admissible"):
        construct_8flow(petersen([0]))


def test_construct_rejects_low_cyclic_connectivity():
    with pytest.raises(PreconditionError, match="cyclic edge-connectivity"):
        construct_8flow(prism(3))


def test_all_positive_petersen_delegates_to_oracle():
    g = petersen()
    cert = construct_8flow(g)
    assert cert.method == "oracle"
    assert cert.bound_k == 5
    assert verify_flow(g, cert, 5).ok


def test_pipeline_on_built_lists():
    rng = random.Random(2)
    runs = 0
    for g0 in pipeline_bases().values():
        for _ in range(8):
            g = random_signature(g0, rng, 2)
            if has_two_disjoint_negative_cycles(g) is None:
                continue
            for seed in (None, rng.random()):
                cl = build_cycle_list(g, rng=None if seed is None else random.Random(seed))
                cert = run_pipeline(g, default_orientation(g), cycle_list=cl)
                assert verify_flow(g, cert, 8).ok
                runs += 1
    assert runs >= 10


def test_pipeline_on_hand_made_band_lists():
    cases = [
        ([0, 5, 3], [SPECIAL, SPECIAL, ORDINARY]),
        ([0, 5], [SPECIAL, POSITIVE, SPECIAL]),
        ([0, 5, 3, 8], [SPECIAL, POSITIVE, SPECIAL]),
    ]
    for negatives, classes in cases:
        g, cl = band_list(negatives, classes)
        cert = run_pipeline(g, default_orientation(g), cycle_list=cl)
        assert verify_flow(g, cert, 8).ok


def test_pipeline_on_random_valid_lists():
    rng = random.Random(8)
    runs = 0
    for g0 in pipeline_bases().values():
        for _ in range(15):
            g = random_signature(g0, rng, 2)
            if has_two_disjoint_negative_cycles(g) is None:
                continue
            cl = random_valid_cycle_list(g, rng)
            if cl is None:
                continue
            t = Orientation({e: (a := rng.choice((1, -1)), -g.sign(e) * a) for e in g.edge_ids})
            cert = run_pipeline(g, t, cycle_list=cl)
            assert verify_flow(g, cert, 8).ok
            runs += 1
    assert runs >= 10


def test_pipeline_rejects_invalid_list():
    g, cl = band_list([0, 5, 3], [SPECIAL, SPECIAL, ORDINARY])
    bad = type(cl)(cl.entries[:2], g, ())
    with pytest.raises(PreconditionError, match="invalid"):
        run_pipeline(g, default_orientation(g), cycle_list=bad)


# ---------------------------------------------------------------------------
# Verifier and admissibility
# ---------------------------------------------------------------------------


def flagship_certificate():
    g = flagship()
    return g, construct_8flow(g)


def test_verifier_catches_zero_value():
    g, cert = flagship_certificate()
    vals = dict(cert.values.values)
    vals[3] = 0
    report = verify_flow(g, FlowCertificate(cert.orientation, EdgeFunction(vals), 8, True))
    assert not report.ok
    assert any(v.startswith("edge 3: value is zero") for v in report.violations)
    # without the zero check only the broken boundary is reported
    lax = verify_flow(g, FlowCertificate(cert.orientation, EdgeFunction(vals), 8, True), require_nowhere_zero=False)
    assert lax.violations and all(v.startswith("vertex") for v in lax.violations)


def test_verifier_catches_bound():
    g, cert = flagship_certificate()
    k = max(abs(x) for _, x in cert.values.items())
    report = verify_flow(g, cert, k)
    assert not report.ok
    assert any("exceeds" in v for v in report.violations)


def test_verifier_catches_bad_orientation_and_boundary():
    g, cert = flagship_certificate()
    tau = dict(cert.orientation.tau)
    a, b = tau[0]
    tau[0] = (a, -b)
    report = verify_flow(g, FlowCertificate(Orientation(tau), cert.values, 8, True))
    assert any("do not match sign" in v for v in report.violations)
    vals = dict(cert.values.values)
    vals[1] += 1
    report = verify_flow(g, FlowCertificate(cert.orientation, EdgeFunction(vals), 8, True))
    assert any(v.startswith("vertex") for v in report.violations)


def test_verifier_accepts_and_rejects_non_integers():
    g, cert = flagship_certificate()
    assert verify_flow(g, cert).ok
    vals = dict(cert.values.values)
    vals[2] = 1.0
    report = verify_flow(g, FlowCertificate(cert.orientation, EdgeFunction(vals), 8, True))
    assert any("not an integer" in v for v in report.violations)


def test_admissibility_examples():
    assert not is_flow_admissible(petersen([0]))
    assert epsilon_is_one(petersen([0])) is not None
    adm = admissibility(flagship())
    assert adm.admissible and "disjoint" in adm.reason
    assert is_flow_admissible(petersen())
    assert is_flow_admissible(cube())


def test_admissibility_needs_bridgeless_connected():
    with pytest.raises(PreconditionError):
        admissibility(SignedGraph.build(3, [(0, 1, 1), (1, 2, 1)]))
