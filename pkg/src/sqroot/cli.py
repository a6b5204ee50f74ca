"""Command-line front end.

Subcommands: square, reduce, solve, verify, roundtrip, export-dot.

Exit codes: 0 every requested check passed (or the answer is YES);
10 a decision procedure answered NO; 20 inconclusive (budget exhausted);
1 a verification failed; 2 input, format, or usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import formats
from .errors import Error
from .graphs import Graph, square, verify_square_root
from .planarity import is_apex_with, is_planar
from .reductions import (
    APEX_LABELS,
    ColoringReduction,
    color_to_setsplit,
    coloring_to_partition,
    extend_coloring,
    partition_to_root,
    root_to_partition,
    setsplit_to_graph,
    solve_coloring_bruteforce,
)
from .setsplit import solve_setsplit_bruteforce, validate_instance, verify_partition
from .solver import SolveConfig, certify_no_root, solve_square_root

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2
EXIT_NO = 10
EXIT_INCONCLUSIVE = 20

SCHEMA_VERSION = 1
DEFAULT_MAX_GROUND_SET = 13


@dataclass
class Report:
    """Pipeline report; the printed lines and the JSON carry the same data."""

    command: str
    stages: list[dict] = field(default_factory=list)
    exit_code: int = EXIT_OK

    def stage(self, name: str, status: str, seconds: float, **data) -> None:
        entry = {
            "name": name,
            "status": status,
            "seconds": round(seconds, 6),
            "data": data,
        }
        self.stages.append(entry)
        detail = " ".join(f"{k}={v}" for k, v in data.items())
        print(f"[{self.command}] {name}: {status} ({entry['seconds']}s)"
              + (f" {detail}" if detail else ""))

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "stages": self.stages,
            "exit_code": self.exit_code,
        }

    def write(self, path: str | None) -> None:
        if path:
            formats.dump_json(path, self.to_dict())


class _StageFailed(Exception):
    def __init__(self, exit_code: int):
        self.exit_code = exit_code


def _guarded(report: Report, name: str, fn):
    """Evaluate fn, converting package errors into a failed stage."""
    t0 = time.perf_counter()
    try:
        return fn()
    except Error as exc:
        report.stage(name, "fail", time.perf_counter() - t0, error=str(exc))
        raise _StageFailed(EXIT_ERROR) from exc


def _run_stage(report: Report, name: str, fn):
    t0 = time.perf_counter()
    result = _guarded(report, name, fn)
    report.stage(name, "ok", time.perf_counter() - t0)
    return result


def _check_stage(report: Report, name: str, ok: bool, fail_code: int = EXIT_FAIL, **data):
    report.stage(name, "ok" if ok else "fail", 0.0, **data)
    if not ok:
        raise _StageFailed(fail_code)


# -- subcommands ----------------------------------------------------------------

def cmd_square(args) -> int:
    report = Report("square")
    try:
        g = _run_stage(report, "parse-input", lambda: formats.read_graph(args.input))
        t0 = time.perf_counter()
        sq = square(g)
        formats.write_graph(args.output, sq)
        report.stage(
            "square", "ok", time.perf_counter() - t0,
            input_n=g.n, input_m=g.m, output_n=sq.n, output_m=sq.m,
        )
    except _StageFailed as exc:
        report.exit_code = exc.exit_code
    report.write(args.report)
    return report.exit_code


def _write_gadget(args, report: Report, gg) -> None:
    formats.write_graph(args.output, gg.graph)
    roles_path = args.roles_out or f"{args.output}.roles.json"
    formats.dump_json(roles_path, formats.roles_to_dict(gg.roles))
    report.stage("write-output", "ok", 0.0, graph=str(args.output), roles=str(roles_path))


def cmd_reduce(args) -> int:
    report = Report("reduce")
    try:
        if args.kind == "coloring-setsplit":
            g = _run_stage(report, "parse-input", lambda: formats.read_graph(args.input))
            red = _run_stage(report, "reduce-coloring", lambda: color_to_setsplit(g))
            formats.dump_json(args.output, formats.instance_to_dict(red.instance))
            roles_path = args.roles_out or f"{args.output}.roles.json"
            formats.dump_json(roles_path, formats.roles_to_dict(red.element_roles))
            report.stage(
                "write-output", "ok", 0.0,
                elements=len(red.instance.ground_set),
                subsets=len(red.instance.collection),
                instance=str(args.output), roles=str(roles_path),
            )
        elif args.kind == "setsplit-graph":
            inst = _run_stage(
                report, "parse-input",
                lambda: formats.instance_from_dict(formats.load_json(args.input)),
            )
            gg = _run_stage(report, "reduce-gadget", lambda: setsplit_to_graph(inst))
            report.stage("gadget-size", "ok", 0.0, n=gg.graph.n, m=gg.graph.m)
            _write_gadget(args, report, gg)
        else:  # full
            g = _run_stage(report, "parse-input", lambda: formats.read_graph(args.input))
            red = _run_stage(report, "reduce-coloring", lambda: color_to_setsplit(g))
            report.stage(
                "instance-size", "ok", 0.0,
                elements=len(red.instance.ground_set),
                subsets=len(red.instance.collection),
            )
            gg = _run_stage(report, "reduce-gadget", lambda: setsplit_to_graph(red.instance))
            report.stage("gadget-size", "ok", 0.0, n=gg.graph.n, m=gg.graph.m)
            if args.instance_out:
                formats.dump_json(args.instance_out, formats.instance_to_dict(red.instance))
            _write_gadget(args, report, gg)
    except _StageFailed as exc:
        report.exit_code = exc.exit_code
    report.write(args.report)
    return report.exit_code


def cmd_solve(args) -> int:
    report = Report("solve")
    try:
        if args.kind == "setsplit":
            inst = _run_stage(
                report, "parse-input",
                lambda: formats.instance_from_dict(formats.load_json(args.input)),
            )
            budget = 3 ** args.max_ground_set
            t0 = time.perf_counter()
            if 3 ** len(inst.ground_set) > budget:
                report.stage(
                    "solve-setsplit", "ok", time.perf_counter() - t0,
                    verdict="inconclusive",
                    reason=f"ground set larger than --max-ground-set={args.max_ground_set}",
                )
                report.exit_code = EXIT_INCONCLUSIVE
            else:
                witness = solve_setsplit_bruteforce(inst, budget)
                if witness is None:
                    report.stage("solve-setsplit", "ok", time.perf_counter() - t0, verdict="no")
                    report.exit_code = EXIT_NO
                else:
                    out = args.output or f"{args.input}.witness.json"
                    formats.dump_json(out, formats.partition_to_dict(witness))
                    report.stage(
                        "solve-setsplit", "ok", time.perf_counter() - t0,
                        verdict="yes", witness=str(out),
                    )
        else:  # sqroot
            g = _run_stage(report, "parse-input", lambda: formats.read_graph(args.input))
            t0 = time.perf_counter()
            outcome = solve_square_root(
                g, SolveConfig(args.budget_nodes, bool(args.transcript))
            )
            if args.transcript:
                Path(args.transcript).write_text("\n".join(outcome.transcript) + "\n")
            if outcome.kind == "root":
                out = args.output or f"{args.input}.root"
                formats.write_graph(out, outcome.root)
                report.stage(
                    "solve-sqroot", "ok", time.perf_counter() - t0,
                    verdict="yes", nodes=outcome.nodes_explored, root=str(out),
                )
            elif outcome.kind == "no-root":
                report.stage(
                    "solve-sqroot", "ok", time.perf_counter() - t0,
                    verdict="no", nodes=outcome.nodes_explored,
                )
                report.exit_code = EXIT_NO
            else:
                report.stage(
                    "solve-sqroot", "ok", time.perf_counter() - t0,
                    verdict="inconclusive", nodes=outcome.nodes_explored,
                )
                report.exit_code = EXIT_INCONCLUSIVE
    except _StageFailed as exc:
        report.exit_code = exc.exit_code
    report.write(args.report)
    return report.exit_code


def cmd_verify(args) -> int:
    report = Report("verify")
    try:
        if args.kind == "square-root":
            h = _run_stage(report, "parse-root", lambda: formats.read_graph(args.inputs[0]))
            g = _run_stage(report, "parse-square", lambda: formats.read_graph(args.inputs[1]))
            ok = _guarded(report, "square-root", lambda: verify_square_root(h, g))
            if ok:
                _check_stage(report, "square-root", True)
            else:
                sq = square(h)
                missing = sorted(g.edges - sq.edges)
                extra = sorted(sq.edges - g.edges)
                _check_stage(
                    report, "square-root", False,
                    uncovered=[f"{u}-{v}" for u, v in missing[:5]],
                    spurious=[f"{u}-{v}" for u, v in extra[:5]],
                )
        elif args.kind == "partition":
            inst = _run_stage(
                report, "parse-instance",
                lambda: formats.instance_from_dict(formats.load_json(args.inputs[0])),
            )
            witness = _run_stage(
                report, "parse-witness",
                lambda: formats.partition_from_dict(formats.load_json(args.inputs[1])),
            )
            ok = _guarded(report, "partition", lambda: verify_partition(inst, witness))
            _check_stage(report, "partition", ok)
        else:  # apex
            g = _run_stage(report, "parse-input", lambda: formats.read_graph(args.inputs[0]))
            apex = [v for v in (args.apex or "").split(",") if v]
            cert = _guarded(report, "apex", lambda: is_apex_with(g, set(apex)))
            _check_stage(
                report, "apex", cert.remainder_planar,
                apex_size=len(cert.apex_set),
            )
    except _StageFailed as exc:
        report.exit_code = exc.exit_code
    report.write(args.report)
    return report.exit_code


def cmd_roundtrip(args) -> int:
    report = Report("roundtrip")
    try:
        g = _run_stage(report, "parse-input", lambda: formats.read_graph(args.input))
        _check_stage(report, "input-planar", is_planar(g), EXIT_ERROR, n=g.n, m=g.m)
        red: ColoringReduction = _run_stage(
            report, "reduce-coloring", lambda: color_to_setsplit(g)
        )
        n_elems = len(red.instance.ground_set)
        _check_stage(
            report, "validate-instance", not validate_instance(red.instance),
            elements=n_elems, subsets=len(red.instance.collection),
        )
        if n_elems > args.max_ground_set:
            report.stage(
                "size-gate", "fail", 0.0,
                reason=f"{n_elems} elements exceed --max-ground-set={args.max_ground_set}",
            )
            raise _StageFailed(EXIT_INCONCLUSIVE)
        gg = _run_stage(report, "reduce-gadget", lambda: setsplit_to_graph(red.instance))
        report.stage("gadget-size", "ok", 0.0, n=gg.graph.n, m=gg.graph.m)

        t0 = time.perf_counter()
        coloring = solve_coloring_bruteforce(g)
        report.stage(
            "color-bruteforce", "ok", time.perf_counter() - t0,
            colorable=coloring is not None,
        )
        if coloring is not None:
            lifted = _run_stage(report, "extend-coloring", lambda: extend_coloring(red, coloring))
            p = _run_stage(report, "coloring-to-partition",
                           lambda: coloring_to_partition(red, lifted))
            _check_stage(report, "verify-partition", verify_partition(red.instance, p))
            h = _run_stage(report, "partition-to-root", lambda: partition_to_root(gg, p))
            _check_stage(report, "verify-root", verify_square_root(h, gg.graph),
                         root_m=h.m)
            cert = is_apex_with(h, APEX_LABELS)
            _check_stage(report, "apex-check", cert.remainder_planar,
                         apex=",".join(sorted(APEX_LABELS)))
            extracted = _run_stage(report, "extract-partition",
                                   lambda: root_to_partition(gg, h))
            _check_stage(
                report, "partition-agreement",
                extracted.parts[0] == p.parts[0]
                and extracted.parts[1] == p.parts[1]
                and extracted.parts[2] >= p.parts[2],
            )
            if args.root_out:
                formats.write_graph(args.root_out, h)
        else:
            t0 = time.perf_counter()
            outcome = solve_square_root(gg.graph, SolveConfig(args.budget_nodes))
            if outcome.kind == "inconclusive":
                report.stage(
                    "solve-root", "fail", time.perf_counter() - t0,
                    verdict="inconclusive", nodes=outcome.nodes_explored,
                )
                raise _StageFailed(EXIT_INCONCLUSIVE)
            _check_stage(
                report, "solve-root", outcome.kind == "no-root",
                verdict=outcome.kind, nodes=outcome.nodes_explored,
            )
            _check_stage(report, "certify-no-root", certify_no_root(gg.graph, outcome))
    except _StageFailed as exc:
        report.exit_code = exc.exit_code
    report.write(args.report)
    return report.exit_code


def cmd_export_dot(args) -> int:
    report = Report("export-dot")
    try:
        g = _run_stage(report, "parse-input", lambda: formats.read_graph(args.input))
        roles = None
        if args.roles:
            roles = _run_stage(
                report, "parse-roles",
                lambda: formats.roles_from_dict(formats.load_json(args.roles)),
            )
            missing = sorted(v for v in g.vertices if v not in roles)
            for v in missing:
                print(f"warning: no role for {v!r}, using default styling", file=sys.stderr)
        dot = formats.graph_to_dot(g, roles)
        Path(args.output).write_text(dot)
        report.stage("write-output", "ok", 0.0, output=str(args.output))
    except _StageFailed as exc:
        report.exit_code = exc.exit_code
    report.write(args.report)
    return report.exit_code


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqroot",
        description="Graph squares, square roots, and the set-splitting gadget pipeline.",
        epilog="Exit codes: 0 pass/YES, 10 NO, 20 inconclusive, 1 check failed, 2 errors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("square", help="write the square of a graph")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--report", help="write a JSON pipeline report")
    p.set_defaults(func=cmd_square)

    p = sub.add_parser("reduce", help="run one or both reductions")
    p.add_argument("kind", choices=["coloring-setsplit", "setsplit-graph", "full"])
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--roles-out", help="role map path (default: <output>.roles.json)")
    p.add_argument("--instance-out", help="with `full`: also write the instance JSON")
    p.add_argument("--report")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="decide an instance and write a witness on YES")
    p.add_argument("kind", choices=["setsplit", "sqroot"])
    p.add_argument("input")
    p.add_argument("-o", "--output", help="witness path")
    p.add_argument("--budget-nodes", type=int, default=SolveConfig().budget_nodes,
                   help="search-node budget for sqroot (default %(default)s)")
    p.add_argument("--max-ground-set", type=int, default=DEFAULT_MAX_GROUND_SET,
                   help="largest ground set for setsplit (default %(default)s)")
    p.add_argument("--transcript", help="dump the sqroot search transcript to a file")
    p.add_argument("--report")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a witness against an instance")
    p.add_argument("kind", choices=["square-root", "partition", "apex"])
    p.add_argument("inputs", nargs="+",
                   help="square-root: <root> <square>; partition: <instance> <witness>; "
                        "apex: <graph>")
    p.add_argument("--apex", help="comma-separated vertex labels to delete")
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("roundtrip", help="drive the whole pipeline from a planar graph")
    p.add_argument("input")
    p.add_argument("--budget-nodes", type=int, default=SolveConfig().budget_nodes)
    p.add_argument("--max-ground-set", type=int, default=DEFAULT_MAX_GROUND_SET)
    p.add_argument("--root-out", help="write the constructed root when one exists")
    p.add_argument("--report")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("export-dot", help="write a DOT rendering, styled by roles")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--roles", help="role map JSON for styling")
    p.add_argument("--report")
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (Error, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
