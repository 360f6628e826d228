"""Command-line entry point: validate problem files, check monic / GP, build tensors, run suites."""

import argparse
import json
import sys
import time

from algebra.homological import OracleConfig, Verdict
from config import (
    DEFAULT_SEED, EXIT_INPUT_ERROR, EXIT_INTERNAL, EXIT_NEGATIVE, EXIT_OK, EXIT_UNKNOWN, GP_DEPTH,
    GP_MODES, REPORT_FORMATS, SUITE_KINDS,
)
from dsl.parser import SpecError, SpecFile, read_spec
from dsl.printer import print_spec, with_rep
from dsl.reports import Report, digest
from lab import monic_samples, run_suite
from monic.conditions import TheoremViolation, check_monic, verify_thm23
from monic.gorenstein import check_image_gp, is_gp
from monic.triangular import coker_phi, inductive_verify, quotient_identity_report, triangular_split
from representations.constructions import tensor_pv


def log(message: str):
    print(message, file=sys.stderr)


def cmd_validate(spec: SpecFile, args) -> tuple[Report, int]:
    per_vertex = {str(v): {"rep_dims": {name: x.dim_vector[v] for name, x in spec.reps.items()}}
                  for v in spec.quiver.vertices}
    details = {
        "field": spec.field.name,
        "algebra": {"name": spec.algebra_name, "vertices": len(spec.base.vertices),
                    "dim": spec.base.dim},
        "quiver": {"name": spec.quiver_name, "vertices": len(spec.quiver.vertices),
                   "arrows": len(spec.quiver.arrows), "relations": len(spec.bound.ideal.generators),
                   "nonzero_paths": len(spec.bound.nonzero_paths)},
        "modules": {name: list(m.dim_vector) for name, m in spec.modules.items()},
        "reps": list(spec.reps),
    }
    return Report("validate", digest(spec.text), "valid", per_vertex=per_vertex, details=details), EXIT_OK


def cmd_check_monic(spec: SpecFile, args) -> tuple[Report, int]:
    x = spec.rep(args.rep)
    report = check_monic(x)
    details = {"rep": x.name, "m1": report.m1, "m2": report.m2}
    body = [f"  {line}" for line in report.failures()]
    if report.overall:
        identities = verify_thm23(x)
        details["kernel_image_identities"] = identities.to_dict()
        if not identities.ok:
            raise TheoremViolation(f"kernel/image identities fail on monic {x.name}",
                                   {"failure": identities.first_failure()})
    out = Report("check-monic", digest(spec.text), "monic" if report.overall else "not-monic",
                 per_vertex={str(v): c.to_dict() for v, c in report.per_vertex.items()},
                 per_arrow={a: c.to_dict() for a, c in report.per_arrow.items()},
                 details=details, body=body)
    return out, EXIT_OK if report.overall else EXIT_NEGATIVE


def cmd_check_gp(spec: SpecFile, args) -> tuple[Report, int]:
    x = spec.rep(args.rep)
    config = OracleConfig(args.mode, args.depth, seed=args.seed)
    decision = is_gp(x, config)
    log(f"monic={decision.monic.overall}, condition (G): {decision.g.status.value}")
    inductive = inductive_verify(x, config, direct=not args.skip_direct)
    details = {"rep": x.name, "mode": args.mode, "decision": decision.to_dict(),
               "cross_check": inductive.to_dict()}
    if decision.monic.overall:
        images = check_image_gp(x, config, decision)
        details["images"] = {p: v.label() for p, v in images.items()}
    if len(x.algebra.quiver.vertices) >= 2:
        split = triangular_split(x)
        details["triangular_split"] = split.to_dict()
        if split.phi_injective:
            details["triangular_split"]["coker_dims"] = {str(v): d for v, d in coker_phi(split).dim_vector.items()}
            details["quotient_identity"] = quotient_identity_report(split, config)
    g = decision.g
    per_vertex = {str(v): {"branch": g.branches[v].label(), "quotient": g.quotients[v].label(),
                           "quotient_dim": g.quotient_dims[v], "m1": decision.monic.per_vertex[v].ok}
                  for v in x.algebra.quiver.vertices}
    per_arrow = {a: {"m2": c.ok} for a, c in decision.monic.per_arrow.items()}
    body = [f"  {r}" for r in decision.reasons]
    verdict = decision.status.value
    out = Report("check-gp", digest(spec.text), verdict, seed=args.seed, depth=args.depth,
                 per_vertex=per_vertex, per_arrow=per_arrow, details=details, body=body)
    code = {Verdict.GP: EXIT_OK, Verdict.NOT_GP: EXIT_NEGATIVE, Verdict.UNKNOWN: EXIT_UNKNOWN}
    return out, code[decision.status]


def cmd_construct(spec: SpecFile, args) -> tuple[Report, int]:
    m = spec.module(args.module)
    v = spec.vertex(args.vertex)
    name = args.name or f"{args.module}_P{v}"
    if name in spec.reps:
        raise SpecError(f"rep {name} already exists; pick another --name")
    x = tensor_pv(spec.lam, m, v, name=name)
    text = print_spec(with_rep(spec, x, name))
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    log(f"wrote {name} to {args.output}")
    details = {"rep": name, "module": args.module, "vertex": str(v), "output": args.output,
               "dims": {str(i): d for i, d in x.dim_vector.items()}}
    return Report("construct tensor", digest(spec.text), "written", details=details), EXIT_OK


def cmd_suite(spec: SpecFile, args) -> tuple[Report, int]:
    kinds = SUITE_KINDS if args.kind == "all" else [args.kind]
    reports = []
    for kind in kinds:
        log(f"suite {kind}: running...")
        suite = run_suite(kind, spec.lam, args.samples, args.seed, jobs=args.jobs, depth=args.depth,
                          mode=args.mode)
        log(f"suite {kind}: {len(suite.rows)} samples, {suite.failures} failures, "
            f"{suite.count('unknown')} unknown, {suite.elapsed_ms:.0f} ms")
        reports.append(suite)
    failures = sum(r.failures for r in reports)
    details = {r.suite: r.to_dict() for r in reports}
    for r in reports:
        if r.suite == "corollary":
            details[r.suite]["monic_samples"] = monic_samples(r)
    body = [line for r in reports for line in r.to_text().splitlines()]
    witnesses = [w for r in reports for w in r.witnesses]
    out = Report("suite", digest(spec.text), "pass" if failures == 0 else "fail", seed=args.seed,
                 depth=args.depth, witnesses=witnesses, details=details, body=body,
                 elapsed_ms=sum(r.elapsed_ms for r in reports))
    return out, EXIT_OK if failures == 0 else EXIT_NEGATIVE


COMMANDS = {
    "validate": cmd_validate,
    "check-monic": cmd_check_monic,
    "check-gp": cmd_check_gp,
    "construct": cmd_construct,
    "suite": cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Monic representations and Gorenstein-projective modules over A ⊗ kQ/I"
    )
    parser.add_argument("--report", choices=REPORT_FORMATS, default="text", help="Report format (default text)")
    parser.add_argument("--field", type=str, default=None,
                        help="Override the file's field: a prime or 'rational'")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="Parse a problem file and validate every rep")
    p.add_argument("file")

    p = sub.add_parser("check-monic", help="Check conditions (m1) and (m2)")
    p.add_argument("file")
    p.add_argument("--rep", required=True, help="Name of the rep to check")

    p = sub.add_parser("check-gp", help="Decide Gorenstein-projectivity via monic + (G)")
    p.add_argument("file")
    p.add_argument("--rep", required=True)
    p.add_argument("--mode", choices=GP_MODES, default="auto", help="Oracle for A-modules")
    p.add_argument("--depth", type=int, default=GP_DEPTH, help="Ext depth of the bounded oracle")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--skip-direct", action="store_true",
                   help="Skip the bounded oracle run on the rep as a Λ-module")

    p = sub.add_parser("construct", help="Build a representation and write it in file format")
    p.add_argument("what", choices=["tensor"], help="Construction (tensor: M ⊗ P(v))")
    p.add_argument("file")
    p.add_argument("--module", required=True, help="Name of the A-module M")
    p.add_argument("--vertex", required=True, help="Vertex v of Q")
    p.add_argument("-o", "--output", required=True, help="Output problem file")
    p.add_argument("--name", default=None, help="Name of the new rep")

    p = sub.add_parser("suite", help="Run a property suite on samples over the file's Λ")
    p.add_argument("file")
    p.add_argument("--kind", choices=SUITE_KINDS + ["all"], default="closure")
    p.add_argument("--samples", type=int, default=None, help="Samples per kind (default per-kind counts)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1, help="Worker threads")
    p.add_argument("--depth", type=int, default=GP_DEPTH)
    p.add_argument("--mode", choices=GP_MODES, default="auto")
    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.time()
    try:
        spec = read_spec(args.file, args.field)
        report, code = COMMANDS[args.command](spec, args)
    except TheoremViolation as exc:
        log(f"internal error: {exc}")
        log(json.dumps(exc.witness, sort_keys=True, default=str))
        return EXIT_INTERNAL
    except (ValueError, OSError) as exc:
        log(f"error: {exc}")
        return EXIT_INPUT_ERROR
    report.elapsed_ms = report.elapsed_ms or (time.time() - start) * 1000
    print(report.render(args.report))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
