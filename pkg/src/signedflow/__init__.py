"""Constructive nowhere-zero flows on signed cubic graphs, with exhaustive
cross-checks for small instances."""

from .certificate import FlowCertificate, VerificationReport, verify_flow
from .connectivity import cyclic_edge_connectivity, disjoint_paths, vertex_connectivity
from .cycles import enumerate_cycles, has_two_disjoint_negative_cycles, negative_cycles
from .decomposition import build_cycle_list, subdivide_for_parity, validate_cycle_list
from .errors import (
    BudgetExceeded,
    BugReport,
    GraphStructureError,
    ParseError,
    PreconditionError,
    SignedFlowError,
    Unsolvable,
)
from .generators import generate
from .graph import (
    EdgeFunction,
    GeneralizedCycle,
    Orientation,
    SignedGraph,
    boundary,
    default_orientation,
    is_balanced,
    switch,
)
from .lift import admissibility, construct_8flow, is_flow_admissible, z3flow_to_3flow, z3flow_to_4flow
from .matching import maximum_matching
from .oracle import enumerate_z3_flows, oracle_flow_exists, oracle_flow_number, switching_classes
from .textio import export_dot, format_sg, parse_sg
from .z3 import construct_z3_preflow, solve_cycle_boundary

__version__ = "0.1.0"
