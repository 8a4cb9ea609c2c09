"""Command-line driver.

Exit codes: 0 success, 1 domain failure (rejected certificate, inadmissible
or out-of-scope graph, exhausted budget), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
import time

from .certificate import FlowCertificate, verify_flow
from .connectivity import bridges, cyclic_edge_connectivity
from .cycles import has_two_disjoint_negative_cycles
from .errors import BudgetExceeded, BugReport, ParseError, PreconditionError, SignedFlowError
from .generators import generate, generator_names
from .graph import default_orientation, is_balanced
from .lift import PipelineTrace, admissibility, construct_8flow
from .oracle import FOUND, OracleBudget, oracle_flow_exists, oracle_flow_search
from .textio import SgDocument, export_dot, format_sg, parse_sg

OK, DOMAIN_FAILURE, USAGE = 0, 1, 2


def _read(path: str) -> SgDocument:
    text = sys.stdin.read() if path == "-" else open(path).read()
    return parse_sg(text)


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _budget(args) -> OracleBudget:
    return OracleBudget(max_nodes=args.budget_nodes, max_seconds=args.budget_seconds)


def cmd_inspect(args) -> int:
    g = _read(args.file).graph
    print(f"vertices {g.n}, edges {g.m}, negative edges {list(g.negative_edges())}")
    print(f"cubic: {g.is_cubic()}")
    print(f"balanced: {is_balanced(g).balanced}")
    lam = cyclic_edge_connectivity(g) if g.is_cubic() else None
    if lam is not None:
        print(f"cyclic edge-connectivity: {lam}")
    pair = has_two_disjoint_negative_cycles(g)
    print(f"two disjoint negative cycles: {'yes' if pair else 'no'}")
    if pair:
        for c in pair:
            print(f"  cycle on vertices {list(c.vertices)}")
    if not g.is_connected() or bridges(g):
        print("flow-admissible: undecided (graph must be connected and bridgeless)")
        return DOMAIN_FAILURE
    adm = admissibility(g)
    print(f"flow-admissible: {adm.admissible} ({adm.reason})")
    if adm.forced_zero:
        print(f"edges zero in every flow: {list(adm.forced_zero)}")
    return OK if adm.admissible else DOMAIN_FAILURE


def cmd_construct(args) -> int:
    doc = _read(args.file)
    trace = PipelineTrace()
    start = time.perf_counter()
    cert = construct_8flow(doc.graph, doc.orientation, trace=trace, budget=_budget(args))
    elapsed = time.perf_counter() - start
    if args.trace:
        print(trace, file=sys.stderr)
    header = f"# method {cert.method}, {elapsed:.3f}s\n"
    _write(header + format_sg(doc.graph, cert.orientation, cert.values, cert.bound_k), args.output)
    return OK


def cmd_verify(args) -> int:
    doc = _read(args.file)
    if doc.orientation is None or doc.flow is None:
        print("error: certificate needs an 'or' block and a 'flow' block", file=sys.stderr)
        return USAGE
    k = args.k or doc.bound
    cert = FlowCertificate(doc.orientation, doc.flow, k, True)
    report = verify_flow(doc.graph, cert, k)
    print(f"k={k}: {report}")
    return OK if report.ok else DOMAIN_FAILURE


def cmd_oracle(args) -> int:
    doc = _read(args.file)
    g = doc.graph
    if args.k is not None:
        res = oracle_flow_exists(g, args.k, doc.orientation, _budget(args))
        print(f"nowhere-zero {args.k}-flow: {res.kind} ({res.nodes_explored} nodes)")
        if res.found:
            _write(format_sg(g, res.certificate.orientation, res.certificate.values, args.k), args.output)
        return OK if res.kind == FOUND else DOMAIN_FAILURE
    res = oracle_flow_search(g, args.cap, _budget(args))
    if res is None:
        print(f"no nowhere-zero k-flow for k <= {args.cap}")
        return DOMAIN_FAILURE
    print(f"flow number: {res.k}")
    _write(format_sg(g, res.certificate.orientation, res.certificate.values, res.k), args.output)
    return OK


def cmd_generate(args) -> int:
    try:
        negatives = [int(x) for x in args.negatives.split(",") if x.strip()] if args.negatives else []
        g = generate(args.name)
        if args.random_negatives:
            rng = random.Random(args.seed)
            negatives = sorted(rng.sample(list(g.edge_ids), args.random_negatives))
        g = generate(args.name, negatives)
    except (PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    _write(format_sg(g, default_orientation(g) if args.orientation else None), args.output)
    return OK


def cmd_export(args) -> int:
    doc = _read(args.file)
    cert = None
    if doc.orientation is not None and doc.flow is not None:
        cert = FlowCertificate(doc.orientation, doc.flow, doc.bound or 0, True)
    _write(export_dot(doc.graph, cert), args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signedflow", description="Nowhere-zero flows on signed cubic graphs")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    def with_budget(sp):
        sp.add_argument("--budget-nodes", type=int, default=5_000_000, help="oracle node budget")
        sp.add_argument("--budget-seconds", type=float, default=120.0, help="oracle time budget")

    sp = sub.add_parser("inspect", help="balance, connectivity and admissibility")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_inspect)

    sp = sub.add_parser("construct", help="build a verified nowhere-zero 8-flow")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp.add_argument("--trace", action="store_true", help="print the per-phase log to stderr")
    with_budget(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="check a flow certificate")
    sp.add_argument("file")
    sp.add_argument("-k", type=int, help="bound to check against (default: the file's)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="flow number or k-flow existence by exhaustive search")
    sp.add_argument("file")
    sp.add_argument("-k", type=int, help="decide existence of a nowhere-zero k-flow")
    sp.add_argument("--cap", type=int, default=8, help="largest k tried for the flow number")
    sp.add_argument("-o", "--output")
    with_budget(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("generate", help=f"named graphs: {', '.join(generator_names())}")
    sp.add_argument("name", help="e.g. petersen, prism(4), flower_snark(5)")
    sp.add_argument("--negatives", help="comma-separated negative edge ids")
    sp.add_argument("--random-negatives", type=int, metavar="N", help="choose N negative edges at random")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--orientation", action="store_true", help="include the default orientation")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("export", help="Graphviz DOT, labelled when the file holds a flow")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except BugReport as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return DOMAIN_FAILURE
    except (PreconditionError, BudgetExceeded, SignedFlowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_FAILURE


if __name__ == "__main__":
    sys.exit(main())
