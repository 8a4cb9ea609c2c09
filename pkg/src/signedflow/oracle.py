"""Exhaustive ground truth for small instances.

Flow search is plain backtracking over edges in id order with values tried
in increasing order, so the first certificate found is the
lexicographically least one.  Two sound prunings are applied: a vertex
with one undecided edge forces that edge's value, and a vertex whose
partial boundary exceeds what its undecided edges can cancel is dead.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .certificate import FlowCertificate, verify_flow
from .errors import BudgetExceeded, BugReport, PreconditionError
from .graph import EdgeFunction, Orientation, SignedGraph, default_orientation

FOUND, NONE, TIMEOUT = "found", "none", "timeout"


@dataclass
class OracleBudget:
    max_nodes: int = 5_000_000
    max_seconds: float = 120.0


@dataclass
class OracleResult:
    kind: str
    certificate: FlowCertificate | None
    nodes_explored: int
    k: int

    @property
    def found(self) -> bool:
        return self.kind == FOUND


def oracle_flow_exists(
    g: SignedGraph,
    k: int,
    orientation: Orientation | None = None,
    budget: OracleBudget | None = None,
) -> OracleResult:
    """Search for a nowhere-zero k-flow under a fixed orientation."""
    if k < 2:
        raise PreconditionError("k must be at least 2")
    budget = budget or OracleBudget()
    t = orientation or default_orientation(g)
    t.check(g)
    edges = list(g.edge_ids)
    m = len(edges)
    pos = {e: i for i, e in enumerate(edges)}
    ends = [g.ends(e) for e in edges]
    taus = [t.tau[e] for e in edges]
    inc = {v: [(pos[e], side) for e, side in g.incident(v)] for v in g.vertices}
    cap = k - 1
    values = [x for x in range(-cap, cap + 1) if x]

    val: list[int | None] = [None] * m
    partial = {v: 0 for v in g.vertices}
    open_count = {v: len(inc[v]) for v in g.vertices}
    nodes = 0
    deadline = time.monotonic() + budget.max_seconds

    def set_value(i: int, x: int, trail: list[int]) -> bool:
        queue = [(i, x)]
        while queue:
            j, y = queue.pop()
            if val[j] is not None:
                if val[j] != y:
                    return False
                continue
            val[j] = y
            trail.append(j)
            for side in (0, 1):
                v = ends[j][side]
                partial[v] += taus[j][side] * y
                open_count[v] -= 1
            for side in (0, 1):
                v = ends[j][side]
                r = open_count[v]
                p = partial[v]
                if r == 0:
                    if p != 0:
                        return False
                elif r == 1:
                    jj, ss = next((a, s) for a, s in inc[v] if val[a] is None)
                    need = -p * taus[jj][ss]
                    if need == 0 or abs(need) > cap:
                        return False
                    queue.append((jj, need))
                elif abs(p) > r * cap:
                    return False
        return True

    def undo(trail: list[int]) -> None:
        for j in reversed(trail):
            y = val[j]
            for side in (0, 1):
                v = ends[j][side]
                partial[v] -= taus[j][side] * y
                open_count[v] += 1
            val[j] = None
        trail.clear()

    def dfs(i: int) -> bool:
        nonlocal nodes
        while i < m and val[i] is not None:
            i += 1
        if i == m:
            return True
        for x in values:
            nodes += 1
            if nodes > budget.max_nodes:
                raise BudgetExceeded(f"node budget {budget.max_nodes} exhausted")
            if nodes % 4096 == 0 and time.monotonic() > deadline:
                raise BudgetExceeded(f"time budget {budget.max_seconds}s exhausted")
            trail: list[int] = []
            if set_value(i, x, trail) and dfs(i + 1):
                return True
            undo(trail)
        return False

    # isolated vertices are fine; vertices of degree 1 can never balance
    if any(len(inc[v]) == 1 for v in g.vertices):
        return OracleResult(NONE, None, 0, k)
    try:
        ok = dfs(0)
    except BudgetExceeded:
        return OracleResult(TIMEOUT, None, nodes, k)
    if not ok:
        return OracleResult(NONE, None, nodes, k)
    flow = EdgeFunction({e: val[i] for i, e in enumerate(edges)})
    cert = FlowCertificate(t, flow, k, True, method="oracle")
    report = verify_flow(g, cert, k)
    if not report.ok:
        raise BugReport(f"oracle produced an invalid certificate: {report}")
    cert.report = report.boundary
    return OracleResult(FOUND, cert, nodes, k)


def oracle_flow_search(
    g: SignedGraph, cap: int = 8, budget: OracleBudget | None = None
) -> OracleResult | None:
    """The first k = 2..cap with a nowhere-zero k-flow, or None."""
    for k in range(2, cap + 1):
        res = oracle_flow_exists(g, k, budget=budget)
        if res.kind == TIMEOUT:
            raise BudgetExceeded(f"oracle timed out at k={k} after {res.nodes_explored} nodes")
        if res.found:
            return res
    return None


def oracle_flow_number(g: SignedGraph, cap: int = 8, budget: OracleBudget | None = None) -> int | None:
    res = oracle_flow_search(g, cap, budget)
    return None if res is None else res.k


# ---------------------------------------------------------------------------
# Linear algebra: Z_3 flows and real flow support
# ---------------------------------------------------------------------------


def _incidence_rows(g: SignedGraph, t: Orientation) -> list[list[int]]:
    col = {e: i for i, e in enumerate(g.edge_ids)}
    rows = []
    for v in g.vertices:
        row = [0] * g.m
        for e, side in g.incident(v):
            row[col[e]] += t.tau[e][side]
        rows.append(row)
    return rows


def _rref(rows, inv, reduce=lambda x: x):
    """Reduced row echelon form over a field with element inverse ``inv``."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        iv = inv(rows[r][c])
        rows[r] = [reduce(x * iv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [reduce(a - f * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _kernel_basis(rows, pivots, ncols, neg):
    pivset = set(pivots)
    basis = []
    for f in (c for c in range(ncols) if c not in pivset):
        vec = [0] * ncols
        vec[f] = 1
        for row, p in zip(rows, pivots):
            vec[p] = neg(row[f])
        basis.append(vec)
    return basis


def enumerate_z3_flows(
    g: SignedGraph, orientation: Orientation | None = None, max_edges: int = 20
) -> list[EdgeFunction]:
    """All Z_3-flows (kernel of the boundary map), sorted by value vector."""
    if g.m > max_edges:
        raise BudgetExceeded(f"{g.m} edges exceed the enumeration limit {max_edges}")
    t = orientation or default_orientation(g)
    if g.m == 0:
        return [EdgeFunction({}, 3)]
    rows = [[x % 3 for x in row] for row in _incidence_rows(g, t)]
    # 1 and 2 are their own inverses mod 3
    red, piv = _rref(rows, lambda a: a, lambda x: x % 3)
    basis = _kernel_basis(red, piv, g.m, lambda x: -x % 3)
    flows = set()
    for coeffs in product(range(3), repeat=len(basis)):
        vec = [0] * g.m
        for c, b in zip(coeffs, basis):
            if c:
                vec = [(a + c * y) % 3 for a, y in zip(vec, b)]
        flows.add(tuple(vec))
    ids = g.edge_ids
    return [EdgeFunction(dict(zip(ids, vec)), 3) for vec in sorted(flows)]


def forced_zero_edges(g: SignedGraph, orientation: Orientation | None = None) -> tuple[int, ...]:
    """Edges that vanish in every real flow (exact rational elimination).

    A nowhere-zero integer flow exists exactly when this is empty: a generic
    rational combination of a kernel basis is then nowhere-zero, and
    clearing denominators gives an integer flow.
    """
    t = orientation or default_orientation(g)
    if g.m == 0:
        return ()
    rows = [[Fraction(x) for x in row] for row in _incidence_rows(g, t)]
    red, piv = _rref(rows, lambda a: 1 / a)
    pivset = set(piv)
    free = [c for c in range(g.m) if c not in pivset]
    forced = []
    for row, p in zip(red, piv):
        if all(row[f] == 0 for f in free):
            forced.append(g.edge_ids[p])
    return tuple(sorted(forced))


def frustration_index_bruteforce(g: SignedGraph) -> int:
    """Least number of negative edges over all switchings (2^(n-1) subsets)."""
    verts = list(g.vertices)
    if len(verts) > 24:
        raise PreconditionError("brute-force frustration index is limited to 24 vertices")
    idx = {v: i for i, v in enumerate(verts)}
    edges = [(1 << idx[u], 1 << idx[v], s) for _, (u, v, s) in g.edge_table]
    best = g.m
    for mask in range(1 << max(len(verts) - 1, 0)):
        neg = 0
        for bu, bv, s in edges:
            crossing = bool(mask & bu) != bool(mask & bv)
            if (s < 0) != crossing:
                neg += 1
        best = min(best, neg)
    return best


# ---------------------------------------------------------------------------
# Switching classes
# ---------------------------------------------------------------------------


def canonical_signature(g: SignedGraph) -> SignedGraph:
    """The switching-equivalent signature whose sign vector, read in edge-id
    order with positive before negative, is least.

    Greedy is exact: an edge whose ends are not yet linked by earlier edges
    can be made positive without affecting them.
    """
    parent = {v: v for v in g.vertices}
    parity = {v: 0 for v in g.vertices}  # switch(v) xor switch(root)

    def find(v: int) -> tuple[int, int]:
        p = 0
        while parent[v] != v:
            p ^= parity[v]
            v = parent[v]
        return v, p

    signs = {}
    for e, (u, v, s) in g.edge_table:
        ru, pu = find(u)
        rv, pv = find(v)
        neg = s < 0
        if ru != rv:
            # choose the relative switch so this edge becomes positive
            parent[rv] = ru
            parity[rv] = pu ^ pv ^ neg
            signs[e] = 1
        else:
            signs[e] = -1 if neg ^ pu ^ pv else 1
    return g.with_signs(signs)


def switching_classes(g: SignedGraph) -> list[SignedGraph]:
    """One canonical representative per switching class of the underlying graph."""
    if g.n > 24:
        raise PreconditionError("switching class enumeration is limited to 24 vertices")
    base = g.with_negative(())
    # non-tree edges of a spanning forest carry all the freedom
    seen: set[int] = set()
    tree: set[int] = set()
    for root in base.vertices:
        if root in seen:
            continue
        seen.add(root)
        stack = [root]
        while stack:
            x = stack.pop()
            for e, y in base.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    tree.add(e)
                    stack.append(y)
    free = [e for e in base.edge_ids if e not in tree]
    reps = {}
    for bits in product((0, 1), repeat=len(free)):
        h = base.with_negative([e for e, b in zip(free, bits) if b])
        c = canonical_signature(h)
        reps[c.negative_edges()] = c
    return [reps[key] for key in sorted(reps, key=lambda neg: [e in neg for e in base.edge_ids])]

