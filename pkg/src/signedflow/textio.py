"""The plain-text signed graph format (``.sg``).

::

    # comment
    sg <n> <m>
    <u> <v> <+|->          (m lines, edge ids are line order, vertices 0-indexed)
    or                     (optional orientation block)
    <tau(h_u)> <tau(h_v)>  (m lines of -1/1)
    flow <k>               (optional flow block)
    <value>                (m integer lines)
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import GraphStructureError, ParseError
from .graph import EdgeFunction, Orientation, SignedGraph

_TOKEN = re.compile(r"\S+")


@dataclass(frozen=True)
class SgDocument:
    graph: SignedGraph
    orientation: Orientation | None = None
    flow: EdgeFunction | None = None
    bound: int | None = None


def is_contiguous(g: SignedGraph) -> bool:
    return g.vertices == tuple(range(g.n)) and g.edge_ids == tuple(range(g.m))


def format_sg(
    g: SignedGraph,
    orientation: Orientation | None = None,
    flow: EdgeFunction | None = None,
    bound: int | None = None,
) -> str:
    """Serialize; graphs with gaps in their ids are relabelled in id order."""
    lines = []
    vmap = {v: i for i, v in enumerate(g.vertices)}
    ids = g.edge_ids
    if not is_contiguous(g):
        lines.append("# relabelled; original vertex ids: " + " ".join(map(str, g.vertices)))
        lines.append("# original edge ids: " + " ".join(map(str, ids)))
    lines.append(f"sg {g.n} {g.m}")
    for e in ids:
        u, v, s = g.edge(e)
        lines.append(f"{vmap[u]} {vmap[v]} {'+' if s > 0 else '-'}")
    if orientation is not None:
        lines.append("or")
        for e in ids:
            a, b = orientation.tau[e]
            lines.append(f"{a} {b}")
    if flow is not None:
        if bound is None:
            bound = max((abs(x) for x in flow.values.values()), default=0) + 1
        lines.append(f"flow {bound}")
        for e in ids:
            lines.append(str(flow.values[e]))
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if tokens:
            yield lineno, tokens


def _int(tok: tuple[str, int], lineno: int, what: str) -> int:
    s, col = tok
    try:
        return int(s)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {s!r}", lineno, col) from None


def parse_sg(text: str) -> SgDocument:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    it = iter(lines)
    lineno, toks = next(it)
    if toks[0][0] != "sg" or len(toks) != 3:
        raise ParseError("expected header 'sg <n> <m>'", lineno, toks[0][1])
    n = _int(toks[1], lineno, "vertex count")
    m = _int(toks[2], lineno, "edge count")
    if n < 0 or m < 0:
        raise ParseError("counts must be nonnegative", lineno, toks[1][1])
    edges = []
    last = lineno
    for _ in range(m):
        try:
            lineno, toks = next(it)
        except StopIteration:
            raise ParseError(f"expected {m} edge lines, found {len(edges)}", last + 1) from None
        last = lineno
        if len(toks) != 3:
            raise ParseError("edge line needs '<u> <v> <+|->'", lineno, toks[0][1])
        u = _int(toks[0], lineno, "vertex")
        v = _int(toks[1], lineno, "vertex")
        for val, tok in ((u, toks[0]), (v, toks[1])):
            if not 0 <= val < n:
                raise ParseError(f"vertex {val} out of range 0..{n - 1}", lineno, tok[1])
        if u == v:
            raise ParseError(f"loop at vertex {u} is not allowed", lineno, toks[0][1])
        if toks[2][0] not in ("+", "-"):
            raise ParseError(f"sign must be '+' or '-', got {toks[2][0]!r}", lineno, toks[2][1])
        edges.append((u, v, 1 if toks[2][0] == "+" else -1))
    try:
        g = SignedGraph.build(n, edges)
    except GraphStructureError as exc:
        raise ParseError(str(exc)) from None
    orientation = None
    flow = None
    bound = None
    for lineno, toks in it:
        word = toks[0][0]
        if word == "or" and len(toks) == 1 and orientation is None:
            tau = {}
            for e in range(m):
                try:
                    lineno, toks = next(it)
                except StopIteration:
                    raise ParseError("orientation block is too short", lineno + 1) from None
                if len(toks) != 2:
                    raise ParseError("orientation line needs two values", lineno, toks[0][1])
                a = _int(toks[0], lineno, "orientation")
                b = _int(toks[1], lineno, "orientation")
                if a not in (1, -1) or b not in (1, -1):
                    raise ParseError("orientation values must be -1 or 1", lineno, toks[0][1])
                if a * b != -g.sign(e):
                    raise ParseError(
                        f"orientation of edge {e} violates tau(h)tau(h') = -sigma(e)",
                        lineno,
                        toks[0][1],
                    )
                tau[e] = (a, b)
            orientation = Orientation(tau)
        elif word == "flow" and len(toks) == 2 and flow is None:
            bound = _int(toks[1], lineno, "flow bound")
            vals = {}
            for e in range(m):
                try:
                    lineno, toks = next(it)
                except StopIteration:
                    raise ParseError("flow block is too short", lineno + 1) from None
                if len(toks) != 1:
                    raise ParseError("flow line needs one integer", lineno, toks[0][1])
                vals[e] = _int(toks[0], lineno, "flow value")
            flow = EdgeFunction(vals)
        else:
            raise ParseError(f"unexpected {word!r}", lineno, toks[0][1])
    return SgDocument(g, orientation, flow, bound)


def read_sg(path) -> SgDocument:
    with open(path) as fh:
        return parse_sg(fh.read())


def _arrow(tau: int) -> str:
    # a half-edge with direction -1 points into its vertex
    return "normal" if tau < 0 else "inv"


def export_dot(g: SignedGraph, cert=None, name: str = "G") -> str:
    """Graphviz text; negative edges are dashed.

    With a certificate (anything with ``orientation`` and ``values``) each
    edge is labelled with its value and half-edge directions, and the
    directions are also drawn as arrowheads at both ends.
    """
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in g.vertices:
        lines.append(f"  {v};")
    for e in g.edge_ids:
        u, v, s = g.edge(e)
        attrs = [f'id="e{e}"']
        if s < 0:
            attrs.append("style=dashed")
        if cert is not None:
            a, b = cert.orientation.tau[e]
            x = cert.values.values.get(e)
            attrs.append(f'label="e{e}: {x} ({a:+d},{b:+d})"')
            attrs.append(f"dir=both arrowtail={_arrow(a)} arrowhead={_arrow(b)}")
        lines.append(f"  {u} -- {v} [{' '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
