"""Switching-class census: route every class of a cubic graph through
``construct_8flow`` and cross-check the routing independently."""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .certificate import verify_flow
from .cycles import enumerate_cycles
from .errors import PreconditionError
from .graph import SignedGraph
from .lift import construct_8flow
from .oracle import OracleBudget, forced_zero_edges, frustration_index_bruteforce, oracle_flow_exists, switching_classes

PIPELINE, DELEGATED, REJECTED = "pipeline", "delegated", "rejected"


@dataclass
class CensusRow:
    negatives: tuple[int, ...]
    route: str
    k: int | None
    seconds: float
    frustration: int
    disjoint_pair: bool
    consistent: bool
    detail: str = ""


def _disjoint_negative_pair(g: SignedGraph) -> bool:
    """Pairwise check over all cycles, independent of the search in ``cycles``."""
    neg = [c for c in enumerate_cycles(g) if c.sign < 0]
    return any(not (a.vertex_set & b.vertex_set) for a, b in combinations(neg, 2))


def census(base: SignedGraph, reject_check_k: int = 6, budget: OracleBudget | None = None) -> list[CensusRow]:
    """One row per switching class of ``base``.

    A row is consistent when the route matches independent evidence:
    pipeline runs need a disjoint negative pair found by brute force and a
    verified 8-flow; delegated runs need no such pair and a verified oracle
    flow; rejections need frustration index 1, a forced zero edge and no
    oracle flow with values below ``reject_check_k``.
    """
    rows = []
    for g in switching_classes(base):
        fr = frustration_index_bruteforce(g)
        pair = _disjoint_negative_pair(g)
        start = time.perf_counter()
        try:
            cert = construct_8flow(g, budget=budget)
        except PreconditionError as exc:
            secs = time.perf_counter() - start
            no_flow = oracle_flow_exists(g, reject_check_k, budget=budget).kind == "none"
            ok = fr == 1 and bool(forced_zero_edges(g)) and no_flow and not pair
            rows.append(CensusRow(g.negative_edges(), REJECTED, None, secs, fr, pair, ok, str(exc)))
            continue
        secs = time.perf_counter() - start
        verified = verify_flow(g, cert, cert.bound_k).ok
        route = PIPELINE if cert.method == "pipeline" else DELEGATED
        if route == PIPELINE:
            ok = verified and pair and cert.bound_k == 8
        else:
            ok = verified and not pair and cert.bound_k <= 6
        rows.append(CensusRow(g.negative_edges(), route, cert.bound_k, secs, fr, pair, ok))
    return rows


def format_census(rows: list[CensusRow]) -> str:
    lines = [f"{'negative edges':<28} {'route':<10} {'k':>2} {'frus':>4} {'pair':>4} {'ok':>3} {'sec':>7}"]
    for r in rows:
        k = "-" if r.k is None else str(r.k)
        neg = ",".join(map(str, r.negatives)) or "(none)"
        lines.append(
            f"{neg:<28} {r.route:<10} {k:>2} {r.frustration:>4} {'y' if r.disjoint_pair else 'n':>4} "
            f"{'y' if r.consistent else 'N':>3} {r.seconds:7.3f}"
        )
    counts = {route: sum(r.route == route for r in rows) for route in (PIPELINE, DELEGATED, REJECTED)}
    lines.append(
        f"{len(rows)} classes: {counts[PIPELINE]} pipeline, {counts[DELEGATED]} delegated, "
        f"{counts[REJECTED]} rejected; {sum(not r.consistent for r in rows)} inconsistent"
    )
    return "\n".join(lines)
