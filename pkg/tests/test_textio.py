from pathlib import Path

import pytest
from hypothesis import given

from helpers import flagship, signed_subcubic_graphs, small_cubic_fixtures
from signedflow.connectivity import cyclic_edge_connectivity
from signedflow.errors import ParseError, PreconditionError
from signedflow.generators import flower_snark, generate, generator_names, petersen, prism
from signedflow.graph import default_orientation
from signedflow.lift import construct_8flow
from signedflow.textio import export_dot, format_sg, parse_sg, read_sg

DATA = Path(__file__).parent / "data"


def same_graph(a, b):
    return a.vertices == b.vertices and dict(a.edge_table) == dict(b.edge_table)


def test_single_positive_edge():
    doc = parse_sg("sg 2 1\n0 1 +")
    assert doc.graph.n == 2 and doc.graph.m == 1
    assert doc.graph.sign(0) == 1
    assert doc.orientation is None and doc.flow is None


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("sg 2 1\n0 0 +", "loop"),
        ("", "empty"),
        ("graph 2 1\n0 1 +", "header"),
        ("sg 2 2\n0 1 +", "expected 2 edge lines"),
        ("sg 2 1\n0 2 +", "out of range"),
        ("sg 2 1\n0 1 *", "sign"),
        ("sg 2 1\n0 x +", "integer"),
        ("sg 2 1\n0 1 +\nor\n1 1", "tau(h)tau(h')"),
        ("sg 2 1\n0 1 +\nor\n1 2", "-1 or 1"),
        ("sg 2 1\n0 1 +\nflow 3", "too short"),
        ("sg 2 1\n0 1 +\nbogus", "unexpected"),
        ("sg 5 4\n0 1 +\n0 2 +\n0 3 +\n0 4 +", "degree"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_sg(text)
    assert fragment in str(info.value)


def test_parse_error_has_line_and_column():
    with pytest.raises(ParseError) as info:
        parse_sg("# comment\nsg 2 1\n0   x +\n")
    assert info.value.line == 3
    assert info.value.column == 5


def test_petersen_file_round_trip():
    text = (DATA / "petersen.sg").read_text()
    doc = parse_sg(text)
    assert (doc.graph.n, doc.graph.m) == (10, 15)
    assert same_graph(doc.graph, petersen())
    assert format_sg(doc.graph) == text


def test_certificate_file_round_trip():
    doc = read_sg(DATA / "flagship_8flow.sg")
    again = parse_sg(format_sg(doc.graph, doc.orientation, doc.flow, doc.bound))
    assert same_graph(doc.graph, again.graph)
    assert again.orientation.tau == doc.orientation.tau
    assert again.flow.values == doc.flow.values
    assert again.bound == doc.bound == 8


@given(signed_subcubic_graphs(max_n=8))
def test_round_trip_random(g):
    t = default_orientation(g)
    doc = parse_sg(format_sg(g, t))
    assert same_graph(doc.graph, g)
    assert doc.orientation.tau == t.tau


def test_round_trip_fixture_corpus():
    for g in list(small_cubic_fixtures().values()) + [flagship(), flower_snark(5)]:
        assert same_graph(parse_sg(format_sg(g)).graph, g)


def test_relabelled_output_is_parseable():
    g = petersen().delete_vertices([0])
    doc = parse_sg(format_sg(g))
    assert (doc.graph.n, doc.graph.m) == (g.n, g.m)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def test_flagship_fixture_is_cyclically_five_connected():
    g = generate("petersen", [0, 10])
    assert g.negative_edges() == (0, 10)
    assert cyclic_edge_connectivity(g) == 5


def test_flower_snark_structure():
    g = generate("flower_snark(5)")
    assert g.n == 20 and g.is_cubic() and g.is_connected()
    assert not g.negative_edges()


def test_prism_three_is_rejected():
    g = generate("prism(3)")
    assert cyclic_edge_connectivity(g) == 3
    with pytest.raises(PreconditionError):
        construct_8flow(g)


def test_generator_errors():
    with pytest.raises(PreconditionError):
        generate("no_such_graph")
    with pytest.raises(PreconditionError):
        generate("petersen", [15])
    assert "petersen" in generator_names()
    assert same_graph(generate("prism", params=[4]), prism(4))


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------


def edge_lines(dot):
    return [line for line in dot.splitlines() if " -- " in line]


def test_dot_positive_edge_is_solid():
    lines = edge_lines(export_dot(parse_sg("sg 2 1\n0 1 +").graph))
    assert len(lines) == 1 and "dashed" not in lines[0]


def test_dot_negative_edge_is_dashed():
    lines = edge_lines(export_dot(parse_sg("sg 2 1\n0 1 -").graph))
    assert len(lines) == 1 and "style=dashed" in lines[0]


def test_dot_with_certificate_labels_every_edge():
    g = flagship()
    cert = construct_8flow(g)
    dot = export_dot(g, cert)
    lines = edge_lines(dot)
    assert len(lines) == 15
    assert all("label=" in line for line in lines)
    assert sum("dashed" in line for line in lines) == 2
    assert dot.startswith("graph G {") and dot.rstrip().endswith("}")
