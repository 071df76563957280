"""Command-line surface.

Subcommands: generate, face, neighborly, verify, check.  Exit-code
contract: 0 = verified / face / k-neighborly, 1 = refuted / non-face /
counterexample found, 2 = error (bad input, guard violation, or an
internal inconsistency between the two LP routes).

All emitted files are JSON with rationals serialized as exact "p/q"
strings; no floats appear anywhere.
"""

from __future__ import annotations

import argparse
import json
import sys

from .faces import (
    FaceCertificate,
    InternalInconsistencyError,
    NonFaceWitness,
    certificate_from_json,
    is_face,
    k_neighborly_scan,
    verify_face_certificate,
    verify_nonface_witness,
)
from .families import VertexSet, generate
from .scenarios import SCENARIOS, run_scenario

GUARDS = {
    "thm1": (2, 3),
    "prop1": (3, 5),
    "lemma1": (4, 5),
    "thm2": (2, 3),
    "phi-not-3-neighborly": (3, 5),
    "qap-3-neighborly": (3, 4),
    "nonisomorphism": (3, 3),
    "corollary-3n-face": (2, 3),
}


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _write_json(data: dict, path: str | None) -> None:
    text = json.dumps(data, indent=1, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_generate(args) -> int:
    family, n = args.family, args.n
    if family == "bqp":
        if n > 16 and not args.force:
            print(f"error: bqp guard is m <= 16 (got {n}); use --force to override", file=sys.stderr)
            return 2
    else:
        if n > 7 and not args.force:
            print(f"error: {family} guard is n <= 7 (got {n}); use --force to override", file=sys.stderr)
            return 2
        if n > 5:
            _warn(f"{family}({n}) has {n}! = large vertex count; generation may be slow")
    try:
        vs = generate(family, n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    vs.save(args.out)
    print(f"wrote {len(vs)} vertices of {family}({n}) (ambient dim {vs.scheme.ambient_dim}) to {args.out}")
    return 0


def cmd_face(args) -> int:
    vs = VertexSet.load(args.vertices)
    subset = tuple(int(s) for s in args.subset.split(","))
    result = is_face(vs, subset)
    if isinstance(result, FaceCertificate):
        data = result.to_json(subset)
        _write_json(data, args.out)
        print(f"face: subset {list(subset)} is the vertex set of a face (gap {data['epsilon']})")
        return 0
    data = result.to_json(subset)
    _write_json(data, args.out)
    print(f"non-face: subset {list(subset)} shares a point with the hull of the rest")
    return 1


def cmd_neighborly(args) -> int:
    vs = VertexSet.load(args.vertices)
    if len(vs) > 100 and args.k >= 3 and not args.fix_first and not args.stop_at_first:
        _warn(f"exhaustive {args.k}-subset scan over {len(vs)} vertices is long-running")
    report = k_neighborly_scan(
        vs,
        args.k,
        fix_first=args.fix_first,
        stop_at_first=args.stop_at_first,
        jobs=args.jobs,
    )
    data = report.to_json()
    if args.out:
        _write_json(data, args.out)
    if report.counterexample_subset is None:
        print(
            f"{args.k}-neighborly: {report.faces_certified}/{report.total_subsets} "
            "subsets certified as faces"
        )
        if not args.out:
            _write_json(data, None)
        return 0
    print(
        f"not {args.k}-neighborly: counterexample {list(report.counterexample_subset)} "
        f"after {report.total_subsets} subsets"
    )
    if not args.out:
        _write_json(data, None)
    return 1


def cmd_verify(args) -> int:
    name = args.scenario
    if name not in SCENARIOS:
        print(f"error: unknown scenario {name!r}; choose from {sorted(SCENARIOS)}", file=sys.stderr)
        return 2
    _, param_name = SCENARIOS[name]
    param = args.k if (param_name == "k" and args.k is not None) else args.n
    if param is None:
        lo, _ = GUARDS[name]
        param = lo
    lo, hi = GUARDS[name]
    if not lo <= param <= hi and not args.force:
        print(
            f"error: scenario {name} guard is {param_name} in [{lo}, {hi}] (got {param}); "
            "use --force to override",
            file=sys.stderr,
        )
        return 2
    report = run_scenario(name, param, jobs=args.jobs)
    for step in report.steps:
        mark = "PASS" if step.passed else "FAIL"
        print(f"[{mark}] {name} {param_name}={param}: {step.name}")
    if args.out:
        _write_json(report.to_json(), args.out)
    print(f"scenario {name}: {'verified' if report.passed else 'refuted'} in {report.duration_seconds:.2f}s")
    return 0 if report.passed else 1


def cmd_check(args) -> int:
    vs = VertexSet.load(args.vertices)
    with open(args.certificate) as fh:
        data = json.load(fh)
    try:
        subset, cert = certificate_from_json(data)
    except (KeyError, ValueError) as exc:
        print(f"error: malformed certificate: {exc}", file=sys.stderr)
        return 2
    if isinstance(cert, FaceCertificate):
        if len(cert.normal) != vs.scheme.ambient_dim:
            print("error: certificate ambient dimension does not match the vertex file", file=sys.stderr)
            return 2
        ok = verify_face_certificate(vs, subset, cert)
    else:
        if len(cert.point) != vs.scheme.ambient_dim:
            print("error: witness ambient dimension does not match the vertex file", file=sys.stderr)
            return 2
        ok = verify_nonface_witness(vs, subset, cert)
    print("certificate verifies" if ok else "certificate FAILS verification")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyface",
        description="exact vertex generators, face certificates, and scenario verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a vertex-set JSON file")
    g.add_argument("--family", required=True, choices=("bqp", "qap", "phi"))
    g.add_argument("--n", required=True, type=int)
    g.add_argument("--out", required=True)
    g.add_argument("--force", action="store_true", help="override the desk-scale guard")
    g.set_defaults(func=cmd_generate)

    f = sub.add_parser("face", help="certify a vertex subset as face or non-face")
    f.add_argument("--vertices", required=True)
    f.add_argument("--subset", required=True, help="comma-separated vertex indices, e.g. 0,1,2")
    f.add_argument("--out", default=None, help="write the certificate JSON here")
    f.set_defaults(func=cmd_face)

    n = sub.add_parser("neighborly", help="scan k-subsets for face status")
    n.add_argument("--vertices", required=True)
    n.add_argument("--k", required=True, type=int)
    n.add_argument("--fix-first", action="store_true", help="scan only subsets containing vertex 0")
    n.add_argument("--stop-at-first", action="store_true", help="stop at the first counterexample")
    n.add_argument("--jobs", type=int, default=1)
    n.add_argument("--out", default=None)
    n.set_defaults(func=cmd_neighborly)

    v = sub.add_parser("verify", help="run a named verification scenario")
    v.add_argument("scenario", choices=sorted(SCENARIOS))
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--k", type=int, default=None)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out", default=None)
    v.add_argument("--force", action="store_true", help="override the scenario parameter guard")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("check", help="re-verify an emitted certificate by substitution")
    c.add_argument("--vertices", required=True)
    c.add_argument("--certificate", required=True)
    c.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
