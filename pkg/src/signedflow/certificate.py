"""Flow certificates and an independent verifier.

``verify_flow`` recomputes everything from the edge table: it does not use
the boundary helper or anything produced by the constructors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import EdgeFunction, Orientation, SignedGraph


@dataclass
class FlowCertificate:
    orientation: Orientation
    values: EdgeFunction
    bound_k: int
    nowhere_zero: bool
    report: dict[int, int] = field(default_factory=dict)
    method: str = "pipeline"
    notes: list[str] = field(default_factory=list)


@dataclass
class VerificationReport:
    ok: bool
    violations: list[str]
    boundary: dict[int, int]

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "certificate verified"
        return "certificate rejected:\n" + "\n".join(f"  - {v}" for v in self.violations)


def verify_flow(
    g: SignedGraph,
    cert: FlowCertificate,
    k: int | None = None,
    require_nowhere_zero: bool = True,
) -> VerificationReport:
    """Check orientation validity, value bounds, zero boundary and zero-freeness."""
    k = cert.bound_k if k is None else k
    tau = cert.orientation.tau
    vals = cert.values.values
    bad: list[str] = []
    net = {v: 0 for v in g.vertices}
    for e, (u, v, s) in g.edge_table:
        if e not in tau:
            bad.append(f"edge {e}: no orientation")
            continue
        a, b = tau[e]
        if {a, b} - {1, -1}:
            bad.append(f"edge {e}: half-edge directions {a}, {b} are not +-1")
        elif a * b != -s:
            bad.append(f"edge {e}: directions {a}, {b} do not match sign {s:+d}")
        if e not in vals:
            bad.append(f"edge {e}: no value")
            continue
        x = vals[e]
        if not isinstance(x, int):
            bad.append(f"edge {e}: value {x!r} is not an integer")
            continue
        if abs(x) > k - 1:
            bad.append(f"edge {e}: |{x}| exceeds {k - 1}")
        if require_nowhere_zero and x == 0:
            bad.append(f"edge {e}: value is zero")
        net[u] += a * x
        net[v] += b * x
    for v, total in net.items():
        if total != 0:
            bad.append(f"vertex {v}: boundary {total}")
    extra = set(vals) - set(g.edge_ids)
    if extra:
        bad.append(f"values given on unknown edges {sorted(extra)}")
    return VerificationReport(not bad, bad, net)
