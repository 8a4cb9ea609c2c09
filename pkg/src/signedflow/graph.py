"""Signed and bidirected multigraphs.

Every edge consists of two half-edges.  A half-edge is addressed as
``(edge_id, side)`` where ``side`` 0 is the half at ``ends(e)[0]`` and
side 1 the half at ``ends(e)[1]``.  Orientations store, per edge, the pair
``(tau(h0), tau(h1))`` with ``+1`` meaning "directed away from the vertex".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import DomainError, GraphStructureError

POSITIVE = 1
NEGATIVE = -1


class Edge(NamedTuple):
    u: int
    v: int
    sign: int


class Path(NamedTuple):
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


@dataclass(frozen=True)
class SignedGraph:
    """Immutable subcubic signed multigraph with integer vertex/edge ids.

    Loops are rejected, parallel edges are allowed.
    """

    vertices: tuple[int, ...]
    edge_table: tuple[tuple[int, Edge], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        table = tuple(sorted((int(i), Edge(*e)) for i, e in self.edge_table))
        object.__setattr__(self, "edge_table", table)
        vs = set(self.vertices)
        seen = set()
        degree = dict.fromkeys(self.vertices, 0)
        for eid, (u, v, s) in table:
            if eid in seen:
                raise GraphStructureError(f"duplicate edge id {eid}")
            seen.add(eid)
            if s not in (1, -1):
                raise GraphStructureError(f"edge {eid} has sign {s!r}, expected +1 or -1")
            if u not in vs or v not in vs:
                raise GraphStructureError(f"edge {eid} has an end outside the vertex set")
            if u == v:
                raise GraphStructureError(f"edge {eid} is a loop at vertex {u}")
            degree[u] += 1
            degree[v] += 1
        for v, d in degree.items():
            if d > 3:
                raise GraphStructureError(f"vertex {v} has degree {d} > 3")

    # -- construction -----------------------------------------------------

    @classmethod
    def build(
        cls,
        vertices: int | Iterable[int],
        edges: Iterable[tuple[int, int, int]] | Mapping[int, tuple[int, int, int]],
    ) -> "SignedGraph":
        """Build from ``(u, v, sign)`` triples (ids 0, 1, ...) or an id mapping."""
        if isinstance(vertices, int):
            vertices = range(vertices)
        if isinstance(edges, Mapping):
            items = [(i, Edge(*e)) for i, e in edges.items()]
        else:
            items = [(i, Edge(*e)) for i, e in enumerate(edges)]
        return cls(tuple(vertices), tuple(items))

    # -- accessors --------------------------------------------------------

    @cached_property
    def _edges(self) -> dict[int, Edge]:
        return dict(self.edge_table)

    @cached_property
    def _incidence(self) -> dict[int, tuple[tuple[int, int], ...]]:
        inc: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for eid, (u, v, _) in self.edge_table:
            inc[u].append((eid, 0))
            inc[v].append((eid, 1))
        return {v: tuple(hs) for v, hs in inc.items()}

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edge_table)

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(eid for eid, _ in self.edge_table)

    def edge(self, e: int) -> Edge:
        try:
            return self._edges[e]
        except KeyError:
            raise GraphStructureError(f"no edge {e}") from None

    def ends(self, e: int) -> tuple[int, int]:
        u, v, _ = self.edge(e)
        return u, v

    def sign(self, e: int) -> int:
        return self.edge(e).sign

    def has_edge(self, e: int) -> bool:
        return e in self._edges

    def has_vertex(self, v: int) -> bool:
        return v in self._incidence

    def incident(self, v: int) -> tuple[tuple[int, int], ...]:
        """Half-edges ``(edge, side)`` at ``v``."""
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def other_end(self, e: int, v: int) -> int:
        a, b = self.ends(e)
        if v == a:
            return b
        if v == b:
            return a
        raise GraphStructureError(f"vertex {v} is not an end of edge {e}")

    def side_at(self, e: int, v: int) -> int:
        a, b = self.ends(e)
        if v == a:
            return 0
        if v == b:
            return 1
        raise GraphStructureError(f"vertex {v} is not an end of edge {e}")

    def neighbors(self, v: int) -> Iterator[tuple[int, int]]:
        """Yield ``(edge, neighbour)`` pairs."""
        for e, side in self._incidence[v]:
            yield e, self._edges[e][1 - side]

    def negative_edges(self) -> tuple[int, ...]:
        return tuple(e for e, ed in self.edge_table if ed.sign < 0)

    def is_cubic(self) -> bool:
        return all(len(h) == 3 for h in self._incidence.values())

    def vertices_of_degree(self, d: int) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if len(self._incidence[v]) == d)

    def edges_between(self, a: Iterable[int], b: Iterable[int]) -> tuple[int, ...]:
        a, b = set(a), set(b)
        return tuple(
            e
            for e, (u, v, _) in self.edge_table
            if (u in a and v in b) or (u in b and v in a)
        )

    def boundary_edges(self, x: Iterable[int]) -> tuple[int, ...]:
        """The edge cut delta(X)."""
        x = set(x)
        return tuple(e for e, (u, v, _) in self.edge_table if (u in x) != (v in x))

    # -- derived graphs ---------------------------------------------------

    def with_signs(self, signs: Mapping[int, int]) -> "SignedGraph":
        table = tuple((e, ed._replace(sign=signs.get(e, ed.sign))) for e, ed in self.edge_table)
        return SignedGraph(self.vertices, table)

    def with_negative(self, negatives: Iterable[int]) -> "SignedGraph":
        neg = set(negatives)
        for e in neg:
            self.edge(e)
        return SignedGraph(
            self.vertices,
            tuple((e, ed._replace(sign=-1 if e in neg else 1)) for e, ed in self.edge_table),
        )

    def induced(self, keep: Iterable[int]) -> "SignedGraph":
        keep = set(keep)
        return SignedGraph(
            tuple(v for v in self.vertices if v in keep),
            tuple((e, ed) for e, ed in self.edge_table if ed.u in keep and ed.v in keep),
        )

    def delete_vertices(self, drop: Iterable[int]) -> "SignedGraph":
        drop = set(drop)
        return self.induced(v for v in self.vertices if v not in drop)

    def delete_edges(self, drop: Iterable[int]) -> "SignedGraph":
        drop = set(drop)
        return SignedGraph(
            self.vertices, tuple((e, ed) for e, ed in self.edge_table if e not in drop)
        )

    def edge_subgraph(self, keep: Iterable[int]) -> "SignedGraph":
        """Subgraph formed by ``keep`` and the ends of those edges."""
        keep = set(keep)
        table = tuple((e, ed) for e, ed in self.edge_table if e in keep)
        verts = {x for _, ed in table for x in (ed.u, ed.v)}
        return SignedGraph(tuple(verts), table)

    def components(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for _, y in self.neighbors(x):
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __repr__(self) -> str:
        neg = len(self.negative_edges())
        return f"SignedGraph(n={self.n}, m={self.m}, negative={neg})"


# ---------------------------------------------------------------------------
# Orientations and edge functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """Half-edge directions: ``tau[e] = (tau(h0), tau(h1))``."""

    tau: Mapping[int, tuple[int, int]]

    def at(self, g: SignedGraph, e: int, v: int) -> int:
        return self.tau[e][g.side_at(e, v)]

    def check(self, g: SignedGraph) -> None:
        for e, (_, _, s) in g.edge_table:
            if e not in self.tau:
                raise GraphStructureError(f"orientation misses edge {e}")
            a, b = self.tau[e]
            if a not in (1, -1) or b not in (1, -1):
                raise GraphStructureError(f"orientation of edge {e} is not +-1")
            if a * b != -s:
                raise GraphStructureError(
                    f"orientation of edge {e} violates tau(h)tau(h') = -sigma(e)"
                )


def default_orientation(g: SignedGraph) -> Orientation:
    """Orient every edge away from its first end."""
    return Orientation({e: (1, -s) for e, (_, _, s) in g.edge_table})


@dataclass(frozen=True)
class EdgeFunction:
    """Edge values over the integers (``modulus=None``) or Z_3 (``modulus=3``).

    Residues are stored canonically in ``{0, 1, 2}``.
    """

    values: Mapping[int, int]
    modulus: int | None = None

    def __post_init__(self):
        vals = dict(self.values)
        if self.modulus is not None:
            vals = {e: x % self.modulus for e, x in vals.items()}
        object.__setattr__(self, "values", vals)

    def __getitem__(self, e: int) -> int:
        return self.values[e]

    def get(self, e: int, default: int = 0) -> int:
        return self.values.get(e, default)

    def items(self):
        return self.values.items()

    def zeros(self) -> tuple[int, ...]:
        return tuple(sorted(e for e, x in self.values.items() if x == 0))

    def reduce(self, modulus: int) -> "EdgeFunction":
        return EdgeFunction(self.values, modulus)

    def signed(self, e: int) -> int:
        """Value as an integer; Z_3 residue 2 is reported as -1."""
        x = self.values[e]
        if self.modulus == 3 and x == 2:
            return -1
        return x

    def __add__(self, other: "EdgeFunction") -> "EdgeFunction":
        keys = set(self.values) | set(other.values)
        return EdgeFunction(
            {e: self.get(e) + other.get(e) for e in keys}, self.modulus
        )

    def scale(self, c: int) -> "EdgeFunction":
        return EdgeFunction({e: c * x for e, x in self.values.items()}, self.modulus)


def boundary(g: SignedGraph, t: Orientation, f: EdgeFunction) -> dict[int, int]:
    """Net outflow ``sum_{h at v} tau(h) f(e_h)`` at every vertex."""
    out = {}
    for v in g.vertices:
        total = 0
        for e, side in g.incident(v):
            if e not in f.values:
                raise DomainError(f"edge function has no value on edge {e}")
            total += t.tau[e][side] * f.values[e]
        out[v] = total % f.modulus if f.modulus else total
    return out


def flip_edge(
    g: SignedGraph, t: Orientation, f: EdgeFunction, e: int
) -> tuple[Orientation, EdgeFunction]:
    """Reverse both half-edges of ``e`` and negate ``f(e)``; boundary is unchanged."""
    g.edge(e)
    tau = dict(t.tau)
    a, b = tau[e]
    tau[e] = (-a, -b)
    vals = dict(f.values)
    vals[e] = -vals[e]
    return Orientation(tau), EdgeFunction(vals, f.modulus)


# ---------------------------------------------------------------------------
# Switching and balance
# ---------------------------------------------------------------------------


def switch(g: SignedGraph, x: Iterable[int]) -> SignedGraph:
    """Negate the signature on the edge cut delta(x)."""
    x = set(x)
    return SignedGraph(
        g.vertices,
        tuple(
            (e, ed._replace(sign=-ed.sign) if (ed.u in x) != (ed.v in x) else ed)
            for e, ed in g.edge_table
        ),
    )


def switch_orientation(g: SignedGraph, t: Orientation, x: Iterable[int]) -> Orientation:
    """Orientation matching ``switch(g, x)``: half-edges at ``x`` are reversed.

    Any edge function keeps its values; its boundary changes sign on ``x``.
    """
    x = set(x)
    tau = {}
    for e, (u, v, _) in g.edge_table:
        a, b = t.tau[e]
        tau[e] = (-a if u in x else a, -b if v in x else b)
    return Orientation(tau)


@dataclass(frozen=True, eq=False)
class GeneralizedCycle:
    """A cycle, or a single vertex (``edges`` empty, ``sign`` None).

    ``edges[i]`` joins ``vertices[i]`` and ``vertices[i+1]`` (cyclically).
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    sign: int | None

    @property
    def kind(self) -> str:
        return "cycle" if self.edges else "single_vertex"

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneralizedCycle):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def sort_key(self) -> tuple:
        return (tuple(sorted(self.vertices)), self.edges)

    @classmethod
    def single(cls, v: int) -> "GeneralizedCycle":
        return cls((v,), (), None)

    @classmethod
    def from_edges(cls, g: SignedGraph, edges: Iterable[int]) -> "GeneralizedCycle":
        """Canonical cycle through ``edges``; raises if they do not form one cycle."""
        edges = list(edges)
        eset = set(edges)
        if not edges or len(eset) != len(edges):
            raise GraphStructureError("a cycle needs a nonempty set of distinct edges")
        at: dict[int, list[int]] = {}
        for e in edges:
            u, v = g.ends(e)
            at.setdefault(u, []).append(e)
            at.setdefault(v, []).append(e)
        for v, es in at.items():
            if len(es) != 2:
                raise GraphStructureError(f"vertex {v} has degree {len(es)} in the edge set")
        start = min(at)
        first = min(at[start])
        verts = [start]
        order = [first]
        cur, prev = g.other_end(first, start), first
        while cur != start:
            verts.append(cur)
            a, b = at[cur]
            nxt = b if a == prev else a
            order.append(nxt)
            cur, prev = g.other_end(nxt, cur), nxt
        if len(order) != len(edges):
            raise GraphStructureError("edge set is a disjoint union of several cycles")
        sign = 1
        for e in order:
            sign *= g.sign(e)
        return cls(tuple(verts), tuple(order), sign)

    def path_between(self, a: int, b: int) -> tuple[Path, Path]:
        """The two arcs of the cycle from ``a`` to ``b``."""
        n = len(self.vertices)
        i, j = self.vertices.index(a), self.vertices.index(b)
        fwd_v, fwd_e = [a], []
        k = i
        while k != j:
            fwd_e.append(self.edges[k])
            k = (k + 1) % n
            fwd_v.append(self.vertices[k])
        back_v, back_e = [a], []
        k = i
        while k != j:
            k2 = (k - 1) % n
            back_e.append(self.edges[k2])
            k = k2
            back_v.append(self.vertices[k])
        return Path(tuple(fwd_v), tuple(fwd_e)), Path(tuple(back_v), tuple(back_e))


@dataclass(frozen=True)
class BalanceCertificate:
    """Either a switching bipartition (balanced) or a negative witness cycle."""

    bipartition: Mapping[int, int] | None = None
    witness_cycle: GeneralizedCycle | None = None

    @property
    def balanced(self) -> bool:
        return self.bipartition is not None

    def __bool__(self) -> bool:
        return self.balanced

    def check(self, g: SignedGraph) -> bool:
        if self.bipartition is not None:
            part = self.bipartition
            return all(
                (part[u] != part[v]) == (s < 0) for _, (u, v, s) in g.edge_table
            )
        c = self.witness_cycle
        return c is not None and cycle_sign(g, c) == -1


def is_balanced(g: SignedGraph) -> BalanceCertificate:
    """Spanning-forest labelling; a violated non-tree edge closes a negative cycle."""
    label: dict[int, int] = {}
    parent: dict[int, tuple[int, int] | None] = {}
    depth: dict[int, int] = {}
    tree_edges: set[int] = set()
    for root in g.vertices:
        if root in label:
            continue
        label[root], parent[root], depth[root] = 0, None, 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e, y in g.neighbors(x):
                if y not in label:
                    label[y] = label[x] ^ (g.sign(e) < 0)
                    parent[y] = (x, e)
                    depth[y] = depth[x] + 1
                    tree_edges.add(e)
                    queue.append(y)
    for e, (u, v, s) in g.edge_table:
        if e in tree_edges:
            continue
        if label[u] ^ label[v] ^ (s < 0):
            path_edges = [e]
            a, b = u, v
            while a != b:
                if depth[a] >= depth[b]:
                    a, pe = parent[a]
                else:
                    b, pe = parent[b]
                path_edges.append(pe)
            return BalanceCertificate(witness_cycle=GeneralizedCycle.from_edges(g, path_edges))
    return BalanceCertificate(bipartition=label)


def cycle_sign(g: SignedGraph, c: GeneralizedCycle | Iterable[int]) -> int:
    """Product of edge signs along a cycle of ``g``."""
    edges = c.edges if isinstance(c, GeneralizedCycle) else tuple(c)
    for e in edges:
        if not g.has_edge(e):
            raise GraphStructureError(f"edge {e} is not in the graph")
    cyc = GeneralizedCycle.from_edges(g, edges)
    return cyc.sign


# ---------------------------------------------------------------------------
# Subdivision
# ---------------------------------------------------------------------------


def subdivide_edge(g: SignedGraph, e: int) -> tuple[SignedGraph, int]:
    """Replace ``e = uv`` by a path ``u - x - v``.

    The edge ``u - x`` keeps the id ``e`` and the sign of ``e``; the edge
    ``x - v`` is positive and gets id ``max(edge ids) + 1``.  The new vertex
    ``x`` gets id ``max(vertex ids) + 1``.
    """
    u, v, s = g.edge(e)
    x = max(g.vertices) + 1
    new_id = max(g.edge_ids) + 1
    table = [(i, ed) for i, ed in g.edge_table if i != e]
    table.append((e, Edge(u, x, s)))
    table.append((new_id, Edge(x, v, 1)))
    return SignedGraph(g.vertices + (x,), tuple(table)), x


def subdivided_orientation(
    g: SignedGraph, t: Orientation, e: int, new_edge: int
) -> Orientation:
    """Extend ``t`` across ``subdivide_edge(g, e)``.

    The two halves at the new vertex point in opposite directions, so a
    function with zero boundary there takes equal values on both new edges.
    """
    s = g.sign(e)
    a, b = t.tau[e]
    tau = dict(t.tau)
    tau[e] = (a, -s * a)
    tau[new_edge] = (s * a, b)
    return Orientation(tau)
