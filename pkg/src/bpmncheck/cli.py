"""Command line interface: analyze, generate, bench, serve.

Exit codes: 0 all properties fulfilled, 1 violations found, 2 usage or
parse error, 3 exploration bound exceeded (unknown verdicts present).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bench import run_benchmark
from .bpmn_xml import parse_bpmn, serialize_bpmn
from .diagnostics import diagnosis_document, render_text, to_json
from .errors import BpmnCheckError
from .explorer import ExplorationLimits
from .generators import BranchParams, gen_growing_sequence, gen_parallel_branches
from .properties import diagnose

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2
EXIT_BOUND = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bpmncheck",
        description="Explicit-state control-flow verification for BPMN models.",
    )
    parser.add_argument("--version", action="version", version=f"bpmncheck {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="check a BPMN file for control-flow errors")
    p.add_argument("file", type=Path)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-states", type=int, default=None)
    p.add_argument("--lenient", action="store_true", help="downgrade unsupported elements to tasks")
    p.add_argument("--no-fixes", action="store_true", help="skip quick-fix suggestions")

    p = sub.add_parser("generate", help="write a synthetic benchmark model")
    p.add_argument("--suite", choices=("branches", "growing"), required=True)
    p.add_argument("--branches", type=int, help="parallel branch count (branches suite)")
    p.add_argument("--length", type=int, default=1, help="tasks per branch (branches suite)")
    p.add_argument("--elements", type=int, help="flow-node budget (growing suite)")
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("bench", help="run a timed benchmark suite")
    p.add_argument("--suite", choices=("branches", "growing", "dir"), required=True)
    p.add_argument(
        "--params",
        help="comma-separated rows: n:L pairs (branches) or element counts (growing)",
    )
    p.add_argument("--dir", type=Path, help="directory of .bpmn files (dir suite)")
    p.add_argument("--repetitions", type=int, default=10)
    p.add_argument("--max-states", type=int, default=None)
    p.add_argument("--csv", type=Path, help="also write the report as CSV")

    p = sub.add_parser("serve", help="run the local HTTP analysis service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _limits(max_states: int | None) -> ExplorationLimits | None:
    if max_states is None:
        return None
    return ExplorationLimits(max_states=max_states)


def cmd_analyze(args) -> int:
    try:
        xml = args.file.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        model = parse_bpmn(xml, lenient=args.lenient)
        diagnosis = diagnose(model, _limits(args.max_states), with_fixes=not args.no_fixes)
    except BpmnCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    document = diagnosis_document(args.file.name, diagnosis)
    if args.format == "json":
        print(to_json(document))
    else:
        print(render_text(document), end="")
    if diagnosis.violations:
        return EXIT_VIOLATIONS
    if diagnosis.has_unknown:
        return EXIT_BOUND
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        if args.suite == "branches":
            if args.branches is None:
                raise ValueError("--branches is required for the branches suite")
            model = gen_parallel_branches(BranchParams(args.branches, args.length))
        else:
            if args.elements is None:
                raise ValueError("--elements is required for the growing suite")
            model = gen_growing_sequence(args.elements)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args.out.write_text(serialize_bpmn(model, diagram=True), encoding="utf-8")
    print(f"wrote {args.out}")
    return EXIT_OK


def _parse_bench_params(suite: str, text: str | None):
    if not text:
        return None
    rows = []
    for part in text.split(","):
        part = part.strip()
        if suite == "branches":
            n, _, length = part.partition(":")
            rows.append((int(n), int(length or "1")))
        else:
            rows.append(int(part))
    return rows


def cmd_bench(args) -> int:
    try:
        if args.suite == "dir":
            if args.dir is None:
                raise ValueError("--dir is required for the dir suite")
            files = sorted(str(p) for p in args.dir.glob("*.bpmn"))
            if not files:
                raise ValueError(f"no .bpmn files in {args.dir}")
            params = files
        else:
            params = _parse_bench_params(args.suite, args.params)
        report = run_benchmark(
            args.suite,
            params=params,
            repetitions=args.repetitions,
            limits=_limits(args.max_states),
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.to_text(), end="")
    if args.csv:
        args.csv.write_text(report.to_csv(), encoding="utf-8")
        print(f"wrote {args.csv}")
    return EXIT_VIOLATIONS if report.failed else EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "analyze": cmd_analyze,
        "generate": cmd_generate,
        "bench": cmd_bench,
        "serve": cmd_serve,
    }[args.command]
    return handler(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
