"""Ordered generalized-cycle decompositions and the parity subdivision.

A cycle list partitions V(G) into generalized cycles, each classified as
``positive`` (positive cycles and single vertices), ``ordinary`` or
``special`` (negative cycles).  ``validate_cycle_list`` checks the seven
structural conditions the flow construction relies on.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Iterator

from .connectivity import cyclic_edge_connectivity
from .cycles import (
    enumerate_cycles,
    FirstCycle,
    SpanningPair,
    find_fragile_pair,
    find_usable_cycle,
    fragile_hypotheses,
    has_unbalanced_theta,
    initial_special,
    is_induced,
    negative_cycles,
    usable_cycles,
)
from .errors import BugReport, GraphStructureError, PreconditionError
from .graph import GeneralizedCycle, Orientation, SignedGraph, subdivide_edge, subdivided_orientation
from .textio import format_sg

log = logging.getLogger(__name__)

POSITIVE = "positive"
ORDINARY = "ordinary"
SPECIAL = "special"


@dataclass(frozen=True)
class CycleEntry:
    cycle: GeneralizedCycle
    cls: str

    @property
    def is_negative(self) -> bool:
        return self.cls in (ORDINARY, SPECIAL)


@dataclass(frozen=True)
class CycleList:
    entries: tuple[CycleEntry, ...]
    host: SignedGraph
    notes: tuple[str, ...] = ()

    def __iter__(self) -> Iterator[CycleEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> CycleEntry:
        return self.entries[i]

    def describe(self) -> str:
        rows = []
        for i, ent in enumerate(self.entries, start=1):
            rows.append(f"C{i} {ent.cls:8s} len={len(ent.cycle):2d} vertices={list(ent.cycle.vertices)}")
        return "\n".join(rows)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

CONDITION_NAMES = {
    0: "entries are generalized cycles of the host with consistent classes",
    1: "vertex-disjoint and covering V(G)",
    2: "first entry is special",
    3: "at most one special entry besides the first",
    4: "every ordinary cycle is induced",
    5: "every positive entry has >= 2 edges to earlier entries",
    6: "every ordinary entry has <= 1 edge to later entries",
    7: "#even ordinary + #special is even",
}


@dataclass
class ConditionResult:
    condition: int
    passed: bool
    witnesses: list[str] = field(default_factory=list)

    @property
    def name(self) -> str:
        return CONDITION_NAMES[self.condition]


@dataclass
class ValidationReport:
    results: list[ConditionResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> list[int]:
        return [r.condition for r in self.results if not r.passed]

    def __getitem__(self, condition: int) -> ConditionResult:
        return next(r for r in self.results if r.condition == condition)

    def __str__(self) -> str:
        lines = []
        for r in self.results:
            status = "pass" if r.passed else "FAIL"
            extra = f" ({'; '.join(r.witnesses)})" if r.witnesses else ""
            lines.append(f"[{status}] {r.condition}: {r.name}{extra}")
        return "\n".join(lines)


def validate_cycle_list(g: SignedGraph, cl: CycleList) -> ValidationReport:
    """Check conditions 1-7 (plus well-formedness as condition 0); never raises."""
    entries = list(cl.entries)
    res = {i: ConditionResult(i, True) for i in range(8)}

    def fail(i: int, msg: str) -> None:
        res[i].passed = False
        res[i].witnesses.append(msg)

    for k, ent in enumerate(entries, start=1):
        c = ent.cycle
        if ent.cls not in (POSITIVE, ORDINARY, SPECIAL):
            fail(0, f"C{k} has unknown class {ent.cls!r}")
            continue
        try:
            if c.kind == "single_vertex":
                if len(c.vertices) != 1 or not g.has_vertex(c.vertices[0]):
                    raise GraphStructureError("not a vertex of the host")
                sign = None
            else:
                ref = GeneralizedCycle.from_edges(g, c.edges)
                if ref.vertex_set != c.vertex_set:
                    raise GraphStructureError("vertex list does not match the edges")
                sign = ref.sign
        except GraphStructureError as exc:
            fail(0, f"C{k}: {exc}")
            continue
        if ent.cls == POSITIVE and sign == -1:
            fail(0, f"C{k} is classified positive but is a negative cycle")
        if ent.cls != POSITIVE and sign != -1:
            fail(0, f"C{k} is classified {ent.cls} but is not a negative cycle")

    owner: dict[int, int] = {}
    for k, ent in enumerate(entries, start=1):
        for v in ent.cycle.vertices:
            if v in owner:
                fail(1, f"vertex {v} lies on C{owner[v]} and C{k}")
            else:
                owner[v] = k
    for v in g.vertices:
        if v not in owner:
            fail(1, f"vertex {v} is not covered")
    for v in owner:
        if not g.has_vertex(v):
            fail(1, f"vertex {v} is not in the host")

    if not entries or entries[0].cls != SPECIAL:
        fail(2, "C1 is not special" if entries else "list is empty")
    specials = [k for k, ent in enumerate(entries, start=1) if ent.cls == SPECIAL]
    if len([k for k in specials if k != 1]) > 1:
        fail(3, "special entries: " + ", ".join(f"C{k}" for k in specials))

    position = owner
    for k, ent in enumerate(entries, start=1):
        c = ent.cycle
        if ent.cls == ORDINARY and c.kind == "cycle" and not is_induced(g, c):
            fail(4, f"C{k} has a chord")
        if ent.cls in (POSITIVE, ORDINARY):
            earlier = later = 0
            for v in c.vertices:
                if not g.has_vertex(v):
                    continue
                for e, w in g.neighbors(v):
                    p = position.get(w)
                    if p is None or p == k:
                        continue
                    if p < k:
                        earlier += 1
                    else:
                        later += 1
            if ent.cls == POSITIVE and earlier < 2:
                fail(5, f"C{k} has {earlier} edge(s) to earlier entries")
            if ent.cls == ORDINARY and later > 1:
                fail(6, f"C{k} has {later} edges to later entries")

    even_ord = sum(
        1 for ent in entries if ent.cls == ORDINARY and len(ent.cycle) % 2 == 0
    )
    if (even_ord + len(specials)) % 2:
        fail(7, f"{even_ord} even ordinary + {len(specials)} special is odd")
    return ValidationReport([res[i] for i in range(8)])


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def _classify(c: GeneralizedCycle) -> str:
    return ORDINARY if c.sign == -1 else POSITIVE


def _even_negative_count(g: SignedGraph) -> int:
    return sum(1 for c in negative_cycles(g) if len(c) % 2 == 0)


def _destroy_last_theta(
    rest: SignedGraph, specials: int, even_ordinary: int, notes: list[str]
) -> tuple[GeneralizedCycle, str]:
    """Pick the entry after which no unbalanced theta remains, keeping the
    running parity (specials + even ordinary + even negative cycles left) even."""

    def parity_ok(c: GeneralizedCycle, cls: str, after: SignedGraph) -> bool:
        s = specials + (cls == SPECIAL)
        o = even_ordinary + (cls == ORDINARY and len(c) % 2 == 0)
        return (s + o + _even_negative_count(after)) % 2 == 0

    problems = fragile_hypotheses(rest)
    if not problems:
        pair = find_fragile_pair(rest)
        for c, cls in ((pair.good, POSITIVE), (pair.negative, SPECIAL)):
            after = rest.delete_vertices(c.vertices)
            if not has_unbalanced_theta(after) and parity_ok(c, cls, after):
                notes.append(f"fragile pair used; chose {cls} cycle on {sorted(c.vertices)}")
                return c, cls
        raise BugReport("neither cycle of the fragile pair fixes the parity", format_sg(rest))
    notes.append("fragile-pair hypotheses fail (" + "; ".join(problems) + "); direct search")
    candidates = [(c, _classify(c)) for c in usable_cycles(rest)]
    candidates += [(c, SPECIAL) for c in negative_cycles(rest)]
    for c, cls in candidates:
        after = rest.delete_vertices(c.vertices)
        if has_unbalanced_theta(after):
            continue
        if parity_ok(c, cls, after):
            notes.append(f"direct search chose {cls} cycle on {sorted(c.vertices)}")
            return c, cls
    raise BugReport("no entry destroys the last unbalanced theta with even parity", format_sg(rest))


def build_cycle_list(
    g: SignedGraph, check_preconditions: bool = True, rng: random.Random | None = None
) -> CycleList:
    """Ordered decomposition of a cyclically 5-edge-connected cubic signed graph.

    By default the first usable cycle (in enumeration order) is taken at
    every step.  With ``rng`` the choice is uniform among the valid ones,
    which reaches lists with ordinary and long positive entries.
    """
    if check_preconditions:
        if not g.is_cubic():
            raise PreconditionError("g is not cubic")
        lam = cyclic_edge_connectivity(g)
        if lam < 5:
            raise PreconditionError(f"g has cyclic edge-connectivity {lam} < 5")
    start = initial_special(g, rng)
    notes: list[str] = []
    if isinstance(start, SpanningPair):
        notes.append("two negative cycles span V(G)")
        entries = (CycleEntry(start.first, SPECIAL), CycleEntry(start.second, SPECIAL))
        return CycleList(entries, g, tuple(notes))
    assert isinstance(start, FirstCycle)
    entries = [CycleEntry(start.first, SPECIAL)]
    specials, even_ordinary = 1, 0
    rest = g.delete_vertices(start.first.vertices)

    while has_unbalanced_theta(rest):
        chosen = None
        pool = list(usable_cycles(rest)) if rng else usable_cycles(rest)
        if rng:
            rng.shuffle(pool)
        for c in pool:
            after = rest.delete_vertices(c.vertices)
            if has_unbalanced_theta(after):
                chosen, rest_next = c, after
                break
        if chosen is not None:
            cls = _classify(chosen)
            even_ordinary += cls == ORDINARY and len(chosen) % 2 == 0
            entries.append(CycleEntry(chosen, cls))
            rest = rest_next
            continue
        c, cls = _destroy_last_theta(rest, specials, even_ordinary, notes)
        specials += cls == SPECIAL
        even_ordinary += cls == ORDINARY and len(c) % 2 == 0
        entries.append(CycleEntry(c, cls))
        rest = rest.delete_vertices(c.vertices)
        break

    while rest.n:
        c = rng.choice(list(usable_cycles(rest))) if rng else find_usable_cycle(rest)
        entries.append(CycleEntry(c, _classify(c)))
        rest = rest.delete_vertices(c.vertices)

    cl = CycleList(tuple(entries), g, tuple(notes))
    report = validate_cycle_list(g, cl)
    if not report.ok:
        raise BugReport(f"constructed cycle list is invalid:\n{report}", format_sg(g))
    return cl


# ---------------------------------------------------------------------------
# Parity subdivision
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubdividedInstance:
    """``g_star`` subdivides one edge of each special or even ordinary cycle.

    ``x_map[i]`` is the new degree-2 vertex on entry ``i`` (0-based) and
    ``split[i] = (old_edge, new_edge)`` records which edge was split.
    """

    g: SignedGraph
    g_star: SignedGraph
    cycles: CycleList
    x_map: dict[int, int]
    split: dict[int, tuple[int, int]]

    def extend_orientation(self, t: Orientation) -> Orientation:
        cur_g, cur_t = self.g, t
        for i in sorted(self.split):
            e, new = self.split[i]
            cur_t = subdivided_orientation(cur_g, cur_t, e, new)
            cur_g, _ = subdivide_edge(cur_g, e)
        return cur_t


def subdivide_for_parity(g: SignedGraph, cl: CycleList) -> SubdividedInstance:
    report = validate_cycle_list(g, cl)
    if not report.ok:
        raise PreconditionError(f"invalid cycle list:\n{report}")
    gs = g
    x_map: dict[int, int] = {}
    split: dict[int, tuple[int, int]] = {}
    new_entries = []
    for i, ent in enumerate(cl.entries):
        c = ent.cycle
        if ent.cls == SPECIAL or (ent.cls == ORDINARY and len(c) % 2 == 0):
            e = min(c.edges)
            gs, x = subdivide_edge(gs, e)
            new_edge = max(gs.edge_ids)
            x_map[i] = x
            split[i] = (e, new_edge)
            c = GeneralizedCycle.from_edges(gs, c.edges + (new_edge,))
        new_entries.append(CycleEntry(c, ent.cls))
    if not x_map:
        raise PreconditionError("no special or even ordinary cycle to subdivide")
    star = CycleList(tuple(new_entries), gs, cl.notes)
    for ent in star:
        if ent.cls == ORDINARY and len(ent.cycle) % 2 == 0:
            raise BugReport("ordinary cycle of even length after subdivision", format_sg(g))
    if len(gs.vertices_of_degree(2)) % 2:
        raise BugReport("odd number of degree-2 vertices after subdivision", format_sg(g))
    return SubdividedInstance(g, gs, star, x_map, split)


def random_valid_cycle_list(g: SignedGraph, rng: random.Random, tries: int = 50) -> CycleList | None:
    """A random list passing the validator, or None.

    Cycles are drawn greedily from what is left; when only the parity
    condition fails, one odd negative entry is reclassified.
    """
    cycles = enumerate_cycles(g)
    negs = [c for c in cycles if c.sign == -1]
    if not negs:
        return None
    for _ in range(tries):
        first = rng.choice(negs)
        entries = [CycleEntry(first, SPECIAL)]
        left = set(g.vertices) - first.vertex_set
        while left:
            inside = [c for c in cycles if c.vertex_set <= left]
            if inside and rng.random() < 0.85:
                c = rng.choice(inside)
            else:
                c = GeneralizedCycle.single(rng.choice(sorted(left)))
            if c.kind == "single_vertex" or c.sign == 1:
                cls = POSITIVE
            else:
                cls = rng.choice([ORDINARY, ORDINARY, SPECIAL])
            entries.append(CycleEntry(c, cls))
            left -= c.vertex_set
        cl = CycleList(tuple(entries), g, ())
        report = validate_cycle_list(g, cl)
        if report.ok:
            return cl
        if report.failed() == [7]:
            for i in range(1, len(entries)):
                ent = entries[i]
                if ent.cls != POSITIVE and len(ent.cycle) % 2:
                    flipped = SPECIAL if ent.cls == ORDINARY else ORDINARY
                    trial = entries[:i] + [CycleEntry(ent.cycle, flipped)] + entries[i + 1 :]
                    cl = CycleList(tuple(trial), g, ())
                    if validate_cycle_list(g, cl).ok:
                        return cl
    return None
