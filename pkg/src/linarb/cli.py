"""Command line surface: check, check-all, partition, validate, audit, oracle.

Every command prints one JSON report (stdout by default, --out to a file)
with an embedded run manifest.  Exit codes are a stable contract:

    0  success / reducible / valid
    1  validation found violations, or the oracle found no partition
    2  not reducible by the standard proof
    3  time budget exhausted (checkpoint written)
    4  maximum degree above 9
    5  unreadable or malformed input
"""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import time
from typing import Optional

from . import __version__
from .coloring import (
    ColoringError,
    PartitionSpec,
    SearchSizeError,
    brute_force_partition,
    format_coloring,
    parse_coloring,
    validate,
)
from .configurations import (
    Configuration,
    ConfigurationError,
    catalog,
    catalog_family,
    load_configuration,
)
from .discharge import audit
from .graphs import (
    DegreeCapError,
    EmbeddingError,
    FormatError,
    GraphError,
    parse_graph6,
    parse_rotation_system,
)
from .partitioner import ReductionError, partition
from .reducer import (
    CheckpointMismatch,
    TimeBudgetExceeded,
    check_reducible,
    load_checkpoint,
)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_NOT_REDUCIBLE = 2
EXIT_BUDGET = 3
EXIT_DEGREE_CAP = 4
EXIT_BAD_INPUT = 5


def _manifest(command: str, inputs: dict, options: dict, seed=None) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "options": options,
        "seed": seed,
        "versions": {"linarb": __version__, "python": platform.python_version()},
    }


def _emit(report: dict, out_path: Optional[str]) -> None:
    text = json.dumps(report, sort_keys=True, indent=2)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None


def _workers(args) -> int:
    env = os.environ.get("LINARB_WORKERS")
    if env:
        return max(1, int(env))
    if args.workers is not None:
        return max(1, args.workers)
    return os.cpu_count() or 1


def _resolve_configs(spec: str) -> list[Configuration]:
    if spec.endswith(".json") or os.path.sep in spec or os.path.exists(spec):
        return [load_configuration(spec)]
    return catalog_family(spec)


def _run_checks(entries: list[Configuration], args, manifest: dict) -> int:
    workers = _workers(args)
    deadline = None if args.time_budget is None else time.perf_counter() + args.time_budget
    checkpoint_path = args.checkpoint or "linarb-checkpoint.json"
    resume = load_checkpoint(args.resume) if args.resume else None
    if resume is not None:
        wanted = [i for i, c in enumerate(entries) if c.to_json() == resume["config"]]
        if not wanted:
            raise CheckpointMismatch("checkpoint configuration is not among those to check")
        entries = entries[wanted[0]:]

    results = []
    status = "complete"
    exhausted = False
    for conf in entries:
        budget = None
        if deadline is not None:
            budget = deadline - time.perf_counter()
            if budget <= 0:
                budget = 0.0
        try:
            report = check_reducible(
                conf,
                args.anchor,
                workers=workers,
                symmetry=args.symmetry,
                time_budget=budget,
                checkpoint_path=checkpoint_path,
                resume=resume,
            )
        except TimeBudgetExceeded:
            status = "time-budget-exhausted"
            exhausted = True
            break
        resume = None
        results.append(report.to_json())

    out = {"manifest": manifest, "results": results, "status": status}
    if exhausted:
        out["checkpoint"] = checkpoint_path
    _emit(out, args.out)
    if exhausted:
        return EXIT_BUDGET
    if any(r["verdict"] != "reducible" for r in results):
        return EXIT_NOT_REDUCIBLE
    return EXIT_OK


def cmd_check(args) -> int:
    entries = _resolve_configs(args.config)
    manifest = _manifest(
        "check",
        {"config": args.config},
        {
            "anchor_policy": args.anchor,
            "workers": _workers(args),
            "symmetry": args.symmetry,
            "time_budget": args.time_budget,
        },
    )
    return _run_checks(entries, args, manifest)


def cmd_check_all(args) -> int:
    manifest = _manifest(
        "check-all",
        {},
        {
            "anchor_policy": args.anchor,
            "workers": _workers(args),
            "symmetry": args.symmetry,
            "time_budget": args.time_budget,
        },
    )
    code = _run_checks(catalog(), args, manifest)
    # C3 is known not to yield to the standard proof; check-all reports the
    # verdicts and fails only on budget exhaustion.
    return EXIT_OK if code == EXIT_NOT_REDUCIBLE else code


def cmd_partition(args) -> int:
    g = parse_graph6(_read(args.graph))
    if g.max_degree > 9:
        print(f"maximum degree {g.max_degree} exceeds 9", file=sys.stderr)
        return EXIT_DEGREE_CAP
    trace: Optional[list] = [] if args.trace else None
    coloring = partition(g, trace=trace)
    violations = validate(g, coloring, PartitionSpec(4, 1))
    with open(args.coloring, "w", encoding="utf-8") as fh:
        fh.write(format_coloring(coloring))
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            json.dump(trace, fh, sort_keys=True, indent=2)
    report = {
        "manifest": _manifest(
            "partition",
            {"graph": args.graph},
            {"coloring": args.coloring, "trace": args.trace},
        ),
        "vertices": g.n,
        "edges": len(g.edges),
        "valid": not violations,
        "violations": [str(v) for v in violations],
    }
    _emit(report, args.out)
    return EXIT_OK if not violations else EXIT_VIOLATIONS


def cmd_validate(args) -> int:
    g = parse_graph6(_read(args.graph))
    coloring = parse_coloring(_read(args.coloring))
    spec = PartitionSpec(args.forests, args.matchings)
    violations = validate(g, coloring, spec)
    report = {
        "manifest": _manifest(
            "validate",
            {"graph": args.graph, "coloring": args.coloring},
            {"forests": args.forests, "matchings": args.matchings},
        ),
        "valid": not violations,
        "violations": [str(v) for v in violations],
    }
    _emit(report, args.out)
    return EXIT_OK if not violations else EXIT_VIOLATIONS


def cmd_audit(args) -> int:
    pg = parse_rotation_system(_read(args.rotation))
    result = audit(pg)
    report = {
        "manifest": _manifest(
            "audit", {"rotation": args.rotation}, {"transfers": args.transfers}
        ),
        **result.to_json(include_transfers=args.transfers),
    }
    _emit(report, args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = parse_graph6(_read(args.graph))
    spec = PartitionSpec(args.forests, args.matchings)
    coloring = brute_force_partition(g, spec, max_edges=args.max_edges)
    report = {
        "manifest": _manifest(
            "oracle",
            {"graph": args.graph},
            {
                "forests": args.forests,
                "matchings": args.matchings,
                "max_edges": args.max_edges,
            },
        ),
        "satisfiable": coloring is not None,
        "coloring": None
        if coloring is None
        else {f"{u} {v}": c for (u, v), c in sorted(coloring.items())},
    }
    _emit(report, args.out)
    return EXIT_OK if coloring is not None else EXIT_VIOLATIONS


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linarb",
        description="Reducibility checking, discharging audit and edge "
        "partition into four linear forests and a matching.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_check_options(p):
        p.add_argument("--anchor", choices=["default", "try-all"], default="default")
        p.add_argument("--workers", type=int, default=None,
                       help="parallel workers (default: cpu count; env LINARB_WORKERS overrides)")
        p.add_argument("--symmetry", action="store_true",
                       help="canonize classes under color permutations (off by default)")
        p.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
        p.add_argument("--checkpoint", default=None, metavar="PATH")
        p.add_argument("--resume", default=None, metavar="PATH")
        p.add_argument("--out", default=None, metavar="PATH")

    p = sub.add_parser("check", help="check one configuration family or JSON file")
    p.add_argument("config", help="catalog name (C1..C10, or an exact instance) or JSON path")
    add_check_options(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("check-all", help="check the whole catalog")
    add_check_options(p)
    p.set_defaults(func=cmd_check_all)

    p = sub.add_parser("partition", help="partition a graph6 file")
    p.add_argument("graph")
    p.add_argument("coloring", help="output coloring file")
    p.add_argument("--trace", default=None, metavar="PATH", help="write reduction trace JSON")
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("validate", help="validate a coloring file against a graph6 file")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--forests", type=int, default=4)
    p.add_argument("--matchings", type=int, default=1)
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("audit", help="discharging audit of a rotation-system file")
    p.add_argument("rotation")
    p.add_argument("--transfers", action="store_true", help="include the full transcript")
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("oracle", help="brute-force partition search")
    p.add_argument("graph")
    p.add_argument("--forests", type=int, default=4)
    p.add_argument("--matchings", type=int, default=1)
    p.add_argument("--max-edges", type=int, default=25)
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TimeBudgetExceeded as exc:
        print(f"time budget exhausted; checkpoint at {exc.path}", file=sys.stderr)
        return EXIT_BUDGET
    except DegreeCapError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DEGREE_CAP
    except (
        FormatError,
        GraphError,
        EmbeddingError,
        ColoringError,
        ConfigurationError,
        CheckpointMismatch,
        SearchSizeError,
        ReductionError,
        json.JSONDecodeError,
    ) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
