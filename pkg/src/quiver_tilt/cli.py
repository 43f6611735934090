"""Command-line interface for quiver-tilt."""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional

from quiver_tilt.config import Config, configure_logging
from quiver_tilt.exceptions import QuiverTiltError
from quiver_tilt.repro import ReproReport
from quiver_tilt.tilting import TiltingReport
from quiver_tilt.workbench import Workbench


def create_parser() -> argparse.ArgumentParser:
    """Create the CLI argument parser."""
    parser = argparse.ArgumentParser(
        prog="qt",
        description="quiver-tilt - exact Hom, Ext and tilting computations over quiver algebras",
    )
    parser.add_argument("--config", help="Path to a YAML configuration file")
    parser.add_argument("--field", help="Ground field: Q or F<p> (overrides config and file)")
    parser.add_argument("--seed", type=int, help="Seed for randomized searches")
    parser.add_argument("--json", metavar="PATH", help="Also write the report as JSON to PATH")

    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    # Info command
    info_parser = subparsers.add_parser("info", help="Dimension, basis and Hom table of an algebra")
    info_parser.add_argument("file", help="Quiver file or builtin:R|S|A10|E")

    # Hom command
    hom_parser = subparsers.add_parser("hom", help="Dimension of Hom(M, N)")
    hom_parser.add_argument("file", help="Quiver file or builtin algebra")
    hom_parser.add_argument("m", help="Source module spec (P3, S2, I2-5, interval:2:5 or a file)")
    hom_parser.add_argument("n", help="Target module spec")
    hom_parser.add_argument("--basis", action="store_true", help="Include an explicit basis")

    # Ext command
    ext_parser = subparsers.add_parser("ext", help="Dimension of Ext^d(M, N)")
    ext_parser.add_argument("file", help="Quiver file or builtin algebra")
    ext_parser.add_argument("m", help="Source module spec")
    ext_parser.add_argument("n", help="Target module spec")
    ext_parser.add_argument("degree", type=int, help="Ext degree")

    # Resolve command
    resolve_parser = subparsers.add_parser("resolve", help="Minimal projective resolution of M")
    resolve_parser.add_argument("file", help="Quiver file or builtin algebra")
    resolve_parser.add_argument("m", help="Module spec")
    resolve_parser.add_argument("--max-len", type=int, help="Longest resolution computed")

    # Tilt-verify command
    tilt_parser = subparsers.add_parser("tilt-verify", help="Verify a tilting candidate")
    tilt_parser.add_argument("file", help="Quiver file or builtin algebra")
    tilt_parser.add_argument("complex", help="Complex file or builtin:paper|regular|p1-shift")
    tilt_parser.add_argument("--target", help="Algebra End(T) should be isomorphic to")

    # Classify command
    classify_parser = subparsers.add_parser("classify", help="Dynkin type and finite-type certificate")
    classify_parser.add_argument("file", help="Quiver file or builtin algebra")

    # Paper-repro command
    repro_parser = subparsers.add_parser("paper-repro", help="Reproduce the claims about R and S")
    repro_parser.add_argument("--fields", help="Comma-separated fields (default from config)")
    repro_parser.add_argument(
        "--corrupt", type=int, metavar="K", help="Flip the sign of the differential of summand T_K"
    )

    return parser


def write_json(path: Optional[str], report: Any) -> None:
    """Write a report with stable key order and no timestamps."""
    if not path:
        return
    Path(path).write_text(json.dumps(report, indent=2) + "\n")


def format_tilting(report: TiltingReport) -> list[str]:
    """Text summary of a tilting report."""
    orth, gen, end, pres = (
        report.self_orthogonality, report.generation, report.endomorphism, report.presentation
    )
    lines = [
        f"Candidate: {report.candidate} over {report.field}",
        f"  Self-orthogonality: {'PASS' if orth.passed else 'FAIL'} "
        f"(shifts {min(orth.shifts)}..{max(orth.shifts)}, {orth.computed} computed)",
    ]
    for entry in orth.nonzero:
        lines.append(f"    Hom(T{entry.source}, T{entry.target}[{entry.shift}]) = {entry.dimension}")
    lines.append(f"  Generation: {gen.status.value}")
    for vertex, recipe in gen.witnesses.items():
        lines.append(f"    P{vertex} <- {recipe}")
    if gen.failed or gen.missing:
        lines.append(f"    failed: {gen.failed}  missing: {gen.missing}")
    lines.append(f"  End(T): dimension {end.dimension}, associative {end.associative}")
    lines.append(f"  Quiver of End(T): {', '.join(pres.arrows) or '(no arrows)'}")
    lines.append(f"  Relations: {len(pres.relations)}  radical: {pres.radical_method}")
    if pres.target is not None:
        status = "PASS" if pres.matched else "FAIL"
        lines.append(f"  Isomorphic to {pres.target}: {status} ({pres.reason})")
    lines.append(f"Result: {'PASS' if report.passed else 'FAIL'}")
    return lines


def cmd_info(bench: Workbench, args) -> int:
    """Handle info command."""
    info = bench.info(bench.load_algebra(args.file))
    write_json(args.json, info)

    vertices = info["vertices"]
    print(f"Algebra {info['algebra']} over {info['field']}")
    print(f"  Vertices: {len(vertices)}  Arrows: {len(info['arrows'])}  Dimension: {info['dimension']}")
    for relation in info["relations"]:
        print(f"  Relation: {relation}")
    print("  dim e_j A e_i (row i, column j):")
    width = max(len(v) for v in vertices) + 1
    print(" " * (width + 2) + "".join(v.rjust(width) for v in vertices))
    for i in vertices:
        row = "".join(str(info["hom_dimensions"][i][j]).rjust(width) for j in vertices)
        print(f"  {i.rjust(width)}{row}")
    return 0


def cmd_hom(bench: Workbench, args) -> int:
    """Handle hom command."""
    a = bench.load_algebra(args.file)
    result = bench.hom(a, args.m, args.n, basis=args.basis)
    write_json(args.json, result)

    print(f"dim Hom({args.m}, {args.n}) = {result['dimension']}")
    for k, element in enumerate(result.get("basis", [])):
        print(f"  basis[{k}]:")
        for vertex, rows in element.items():
            if rows:
                print(f"    {vertex}: {rows}")
    return 0


def cmd_ext(bench: Workbench, args) -> int:
    """Handle ext command."""
    a = bench.load_algebra(args.file)
    result = bench.ext(a, args.m, args.n, args.degree)
    write_json(args.json, result)
    print(f"dim Ext^{args.degree}({args.m}, {args.n}) = {result['dimension']}")
    return 0


def cmd_resolve(bench: Workbench, args) -> int:
    """Handle resolve command."""
    a = bench.load_algebra(args.file)
    result = bench.resolve(a, args.m, args.max_len)
    write_json(args.json, result)

    suffix = "" if result["complete"] else " (truncated)"
    print(f"Projective resolution of {args.m}: length {result['length']}{suffix}")
    for term in result["terms"]:
        print(f"  degree {term['degree']}: {' + '.join(term['projectives']) or '0'}")
    return 0


def cmd_tilt_verify(bench: Workbench, args) -> int:
    """Handle tilt-verify command."""
    a = bench.load_algebra(args.file)
    target = bench.load_algebra(args.target) if args.target else None
    report = bench.tilt_verify(a, args.complex, target=target)
    write_json(args.json, report.model_dump(mode="json"))

    for line in format_tilting(report):
        print(line)
    return 0 if report.passed else 1


def cmd_classify(bench: Workbench, args) -> int:
    """Handle classify command."""
    result = bench.classify(bench.load_algebra(args.file))
    write_json(args.json, result)

    print(f"Algebra {result['algebra']}:")
    for component in result["components"]:
        arms = f" arms {component['arm_profile']}" if component.get("arm_profile") else ""
        print(f"  Component {component['vertices']}: {component['type']}{arms}")
    finite = result["finite_type"]
    count = finite.get("indecomposable_count")
    print(f"  Representation type: {finite['status']}" + (f" ({count} indecomposables)" if count else ""))
    if finite.get("method"):
        print(f"  Method: {finite['method']}")
    return 0


def cmd_paper_repro(bench: Workbench, args) -> int:
    """Handle paper-repro command."""
    fields = [f.strip() for f in args.fields.split(",")] if args.fields else None
    report: ReproReport = bench.paper_repro(fields, corrupt_summand=args.corrupt)
    write_json(args.json, report.model_dump(mode="json"))

    for line in report.summary_lines():
        print(line)
    failures = report.failures()
    print(f"Result: {'PASS' if report.passed else 'FAIL'}" + (f" ({', '.join(failures)})" if failures else ""))
    return 0 if report.passed else 1


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point for CLI."""
    parser = create_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 1

    config = Config.from_yaml(args.config) if args.config else Config.from_default_locations()
    configure_logging(config.logging)

    try:
        bench = Workbench(config, field=args.field, seed=args.seed)

        # Route to command handler
        handlers = {
            "info": cmd_info,
            "hom": cmd_hom,
            "ext": cmd_ext,
            "resolve": cmd_resolve,
            "tilt-verify": cmd_tilt_verify,
            "classify": cmd_classify,
            "paper-repro": cmd_paper_repro,
        }

        handler = handlers.get(args.command)
        if handler:
            return handler(bench, args)
        else:
            print(f"Unknown command: {args.command}", file=sys.stderr)
            return 1

    except (QuiverTiltError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
