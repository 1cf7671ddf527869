"""Command-line entry point.

Exit codes: 0 verified/found, 1 definitively no, 2 budget exhausted,
3 bad input.  Every command produces a report dict; ``--format json``
prints it as JSON, the default text form prints the same fields line by
line (see `render_text` / `parse_text_report`).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from contextlib import contextmanager
from pathlib import Path

from .cdc import build_6cdc, cover_violations
from .coloring import (
    Budget,
    BudgetExhausted,
    Status,
    find_kotzig_coloring,
    find_semi_kotzig_coloring,
    is_kotzig,
    is_parity_coloring,
    is_proper,
    is_semi_kotzig,
)
from .formats import (
    FormatError,
    frame_doc_from,
    parse_coloring,
    parse_cover,
    parse_frame,
    parse_graph,
    parse_graph6,
    serialize_coloring,
    serialize_cover,
    serialize_frame,
    serialize_graph,
)
from .frame import FrameError, find_semi_kotzig_frame, verify_frame, verify_semi_kotzig_frame
from .generate import generate_planted_instance
from .graph import CIRCUIT, CubicGraph, GraphError, classify_components
from .oracle import brute_force_kcdc

EXIT_OK, EXIT_NO, EXIT_INDETERMINATE, EXIT_INPUT = 0, 1, 2, 3
STATUS_NAMES = {EXIT_OK: "ok", EXIT_NO: "no", EXIT_INDETERMINATE: "indeterminate", EXIT_INPUT: "input-error"}
DEFAULT_BUDGET = 1_000_000
BUDGET_ENV = "KOTZIG_CDC_BUDGET"


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


class Run:
    """Collects timings and details while a command executes."""

    def __init__(self, command: str):
        self.command = command
        self.timings: dict[str, float] = {}
        self.details: dict = {}

    @contextmanager
    def stage(self, name: str):
        t = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - t, 6)

    def report(self, code: int, message: str, document: str | None = None) -> tuple[int, dict]:
        return code, {
            "command": self.command,
            "exit": code,
            "status": STATUS_NAMES[code],
            "message": message,
            "details": self.details,
            "document": document,
            "timings": self.timings,
        }


def _read(path: str | None, what: str) -> str:
    if path is None:
        raise InputError(f"--{what} is required")
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc.strerror}") from None


def load_graph(path: str | None) -> CubicGraph:
    text = _read(path, "graph")
    words = text.split()
    if words and words[0] not in ("cubic-multigraph", "multigraph"):
        g = parse_graph6(words[0])
    else:
        g = parse_graph(text)
    if isinstance(g, CubicGraph):
        return g
    return CubicGraph.from_multigraph(g)


def _budget(args) -> Budget:
    if args.budget is not None:
        return Budget(args.budget)
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return Budget(int(env))
        except ValueError:
            raise InputError(f"{BUDGET_ENV} must be an integer, got {env!r}") from None
    return Budget(DEFAULT_BUDGET)


def _load_coloring(path: str) -> dict[int, int]:
    return parse_coloring(_read(path, "coloring"))


def cmd_verify_kotzig(args, run: Run):
    g = load_graph(args.graph)
    if args.coloring:
        c = _load_coloring(args.coloring)
        with run.stage("check"):
            ok = is_parity_coloring(g, g.edge_ids, c) and is_kotzig(g, c)
        if ok:
            return run.report(EXIT_OK, "coloring is Kotzig", serialize_coloring(c))
        return run.report(EXIT_NO, "coloring is not Kotzig")
    with run.stage("search"):
        res = find_kotzig_coloring(g, _budget(args))
    run.details["steps"] = res.steps
    return _search_report(run, res, "Kotzig coloring", lambda w: serialize_coloring(w.coloring))


def cmd_verify_semi_kotzig(args, run: Run):
    g = load_graph(args.graph)
    if args.coloring:
        c = _load_coloring(args.coloring)
        with run.stage("check"):
            if not is_parity_coloring(g, g.edge_ids, c) or not is_proper(g, c):
                return run.report(EXIT_NO, "coloring is not a proper 3-edge-coloring")
            try:
                ok = is_semi_kotzig(g, c, _budget(args))
            except BudgetExhausted:
                return run.report(EXIT_INDETERMINATE, "budget exhausted while checking switchings")
        if ok:
            return run.report(EXIT_OK, "coloring is semi-Kotzig", serialize_coloring(c))
        return run.report(EXIT_NO, "coloring is not semi-Kotzig")
    with run.stage("search"):
        res = find_semi_kotzig_coloring(g, _budget(args))
    run.details["steps"] = res.steps
    if res.found:
        run.details["t"] = res.value.t
    return _search_report(run, res, "semi-Kotzig coloring", lambda w: serialize_coloring(w.coloring))


def _search_report(run: Run, res, what: str, render):
    if res.status is Status.FOUND:
        return run.report(EXIT_OK, f"found {what}", render(res.value))
    if res.status is Status.NONE:
        return run.report(EXIT_NO, f"no {what} exists")
    return run.report(EXIT_INDETERMINATE, f"budget exhausted searching for {what}")


def _check_classification(g: CubicGraph, doc) -> None:
    """The document's component labels must match the actual components."""
    actual_circuits, actual_core = set(), None
    for edges, kind in classify_components(g, doc.h_edges):
        if kind == CIRCUIT:
            actual_circuits.add(edges)
        else:
            actual_core = edges
    declared = {frozenset(c) for c in doc.circuits}
    core = frozenset(doc.core) if doc.core else None
    if declared != actual_circuits or core != actual_core:
        raise FrameError("misclassified", "frame document components disagree with the graph")


def _load_frame(args, g: CubicGraph, run: Run):
    doc = parse_frame(_read(args.frame, "frame"))
    try:
        g.check_edges(doc.h_edges)
    except GraphError as exc:
        raise FrameError("unknown-edge", str(exc)) from None
    with run.stage("verify-frame"):
        verify_frame(g, doc.h_edges)
        _check_classification(g, doc)
        return verify_semi_kotzig_frame(g, doc.h_edges, _budget(args), seed=doc.colors or None)


def cmd_verify_frame(args, run: Run):
    g = load_graph(args.graph)
    try:
        sk = _load_frame(args, g, run)
    except FrameError as exc:
        run.details["reason"] = exc.reason
        return run.report(EXIT_NO, str(exc))
    except BudgetExhausted as exc:
        return run.report(EXIT_INDETERMINATE, str(exc))
    run.details["circuits"] = len(sk.frame.circuits)
    run.details["core"] = sk.frame.core is not None
    return run.report(EXIT_OK, "semi-Kotzig frame verified", serialize_frame(frame_doc_from(sk.frame, sk.witness)))


def cmd_find_frame(args, run: Run):
    g = load_graph(args.graph)
    with run.stage("find-frame"):
        res = find_semi_kotzig_frame(g, _budget(args), max_core=args.max_core)
    run.details["steps"] = res.steps
    return _search_report(
        run, res, "semi-Kotzig frame", lambda sk: serialize_frame(frame_doc_from(sk.frame, sk.witness))
    )


def cmd_build_cdc(args, run: Run):
    g = load_graph(args.graph)
    if args.frame:
        try:
            sk = _load_frame(args, g, run)
        except FrameError as exc:
            run.details["reason"] = exc.reason
            return run.report(EXIT_NO, str(exc))
        except BudgetExhausted as exc:
            return run.report(EXIT_INDETERMINATE, str(exc))
    else:
        with run.stage("find-frame"):
            res = find_semi_kotzig_frame(g, _budget(args), max_core=args.max_core)
        if not res.found:
            code = EXIT_NO if res.status is Status.NONE else EXIT_INDETERMINATE
            return run.report(code, "no semi-Kotzig frame found")
        sk = res.value
    with run.stage("build"):
        try:
            cover = build_6cdc(g, sk)
        except GraphError as exc:
            return run.report(EXIT_NO, str(exc))
    with run.stage("verify-cdc"):
        problems = cover_violations(g, cover.members)
    if problems:
        # build_6cdc checks its own output, so this would be a bug
        run.details["violations"] = problems
        return run.report(EXIT_NO, "constructed cover failed verification")
    run.details["members"] = len(cover)
    run.details["sources"] = list(cover.sources)
    return run.report(EXIT_OK, f"verified double cover with {len(cover)} even subgraphs", serialize_cover(cover.members))


def cmd_verify_cdc(args, run: Run):
    g = load_graph(args.graph)
    members = parse_cover(_read(args.cover, "cover"))
    with run.stage("verify-cdc"):
        problems = cover_violations(g, members)
    if problems:
        run.details["violations"] = problems
        return run.report(EXIT_NO, problems[0])
    run.details["members"] = len(members)
    return run.report(EXIT_OK, f"verified double cover with {len(members)} even subgraphs")


def cmd_oracle_cdc(args, run: Run):
    g = load_graph(args.graph)
    with run.stage("oracle"):
        try:
            res = brute_force_kcdc(g, args.k, _budget(args))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    run.details["steps"] = res.steps
    return _search_report(run, res, f"double cover with at most {args.k} even subgraphs", serialize_cover)


def cmd_gen(args, run: Run):
    try:
        lengths = [int(x) for x in args.lengths.split(",") if x] if args.lengths else []
    except ValueError:
        raise InputError(f"--lengths must be comma-separated integers, got {args.lengths!r}") from None
    with run.stage("generate"):
        try:
            g, doc = generate_planted_instance(args.seed, args.catalog, lengths)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    graph_text = serialize_graph(g)
    if args.out:
        graph_path = Path(args.out + ".graph")
        doc.graph_ref = graph_path.name
        graph_path.write_text(graph_text)
        Path(args.out + ".frame").write_text(serialize_frame(doc))
    run.details["vertices"] = g.vertex_count
    run.details["edges"] = g.edge_count
    return run.report(EXIT_OK, "generated planted instance", graph_text + "---\n" + serialize_frame(doc))


COMMANDS = {
    "verify-kotzig": cmd_verify_kotzig,
    "verify-semi-kotzig": cmd_verify_semi_kotzig,
    "verify-frame": cmd_verify_frame,
    "find-frame": cmd_find_frame,
    "build-cdc": cmd_build_cdc,
    "verify-cdc": cmd_verify_cdc,
    "oracle-cdc": cmd_oracle_cdc,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--graph", help="edge-list or graph6 file")
    common.add_argument("--frame", help="frame document")
    common.add_argument("--budget", type=int, help=f"step budget (default ${BUDGET_ENV} or {DEFAULT_BUDGET})")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="kotzig-cdc", description="Semi-Kotzig frames and 6-even-subgraph double covers")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("verify-kotzig", "verify-semi-kotzig"):
            p.add_argument("--coloring", help="coloring document (color <id> <c> lines)")
        if name in ("find-frame", "build-cdc"):
            p.add_argument("--max-core", type=int, default=12)
        if name == "verify-cdc":
            p.add_argument("--cover", help="cover document")
        if name == "oracle-cdc":
            p.add_argument("--k", type=int, default=6)
        if name == "gen":
            p.add_argument("--catalog", type=int, default=0)
            p.add_argument("--lengths", default="4")
            p.add_argument("--out", help="write <out>.graph and <out>.frame")
    return parser


def _execute(argv: list[str]) -> tuple[int, dict, str]:
    run = Run(argv[0] if argv else "")
    fmt = "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        run.command = args.command
        code, report = COMMANDS[args.command](args, run)
    except (InputError, FormatError, GraphError) as exc:
        code, report = run.report(EXIT_INPUT, str(exc))
    return code, report, fmt


def run_command(argv: list[str]) -> tuple[int, dict]:
    code, report, _ = _execute(argv)
    return code, report


def render_text(report: dict) -> str:
    rows = [f"{key}: {json.dumps(report[key])}" for key in ("command", "exit", "status", "message", "details")]
    rows += [f"timing {stage}: {secs}" for stage, secs in report["timings"].items()]
    if report["document"] is not None:
        rows.append("document:")
        rows.append(report["document"].rstrip("\n"))
    return "\n".join(rows) + "\n"


def parse_text_report(text: str) -> dict:
    """Inverse of `render_text`."""
    report: dict = {"timings": {}, "document": None}
    lines = text.splitlines()
    for i, line in enumerate(lines):
        if line == "document:":
            report["document"] = "\n".join(lines[i + 1:]) + "\n"
            break
        key, value = line.split(": ", 1)
        if key.startswith("timing "):
            report["timings"][key[len("timing "):]] = float(value)
        else:
            report[key] = json.loads(value)
    return report


def main(argv: list[str] | None = None) -> int:
    code, report, fmt = _execute(sys.argv[1:] if argv is None else argv)
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        sys.stdout.write(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
