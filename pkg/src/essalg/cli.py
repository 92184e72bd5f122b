"""``essalg`` command line: load a presentation file, run one kernel operation, print a JSON report.

Exit codes: 0 computed (whatever the verdict), 1 selftest or report replay
failed, 2 input or parse error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from essalg import __version__
from essalg.errors import InputError, ResourceError
from essalg.io import load_file, load_lie_module, load_object, read_json
from essalg.nc_algebra import NCPresentation, standardization_factors, standardize
from essalg.parsing import split_list
from essalg.ring_core import CommPresentation, default_budget, krull_dimension

SCHEMA = 1
EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3
PRESENTATIONS = ("nc_presentation", "comm_presentation")


def _commutative(P) -> CommPresentation:
    return P if isinstance(P, CommPresentation) else standardize(P)


def _file_info(path: str) -> dict:
    data = Path(path).read_bytes()
    return {"file": path, "sha256": hashlib.sha256(data).hexdigest()}


# -- subcommands ------------------------------------------------------------------
# each returns (result payload, verdict or None)


def cmd_krull(args):
    P = load_file(args.file, PRESENTATIONS)
    A = _commutative(P)
    return {"krull_dimension": krull_dimension(A), "algebra": repr(A)}, None


def cmd_degeneracy(args):
    from essalg.dimension_theory import degeneracy_verdict

    A = _commutative(load_file(args.file, PRESENTATIONS))
    seq = split_list(args.sequence) if args.sequence else None
    return {"algebra": repr(A)}, degeneracy_verdict(A, seq)


def cmd_hochschild(args):
    from essalg.homology import dual_bimodule, hchdim_lower_bound, hochschild_dims, regular_bimodule

    A = load_file(args.file, "findim_algebra")
    if args.bimodule:
        M = load_file(args.bimodule, "bimodule")
        if M.A.quadruples() != A.quadruples() or M.A.unit != A.unit:
            raise InputError("the bimodule is over a different algebra")
        M.A = A
        family = [M]
    else:
        family = [regular_bimodule(A), dual_bimodule(A)]
    dims = {M.name: hochschild_dims(A, M, args.n_max, args.normalized, args.jobs) for M in family}
    return {"hochschild_dims": dims, "normalized": args.normalized}, hchdim_lower_bound(A, family, args.n_max,
                                                                                       args.jobs)


def cmd_lie(args):
    from essalg.lie_env import chevalley_eilenberg_dims, lie_quasifree_verdict

    g = load_file(args.file, "lie_algebra")
    M = load_lie_module(read_json(args.module), g) if args.module else None
    n_max = min(args.n_max, g.dim) if args.n_max is not None else g.dim
    dims = chevalley_eilenberg_dims(g, M, n_max, args.jobs)
    result = {"cohomology_dims": dims, "coefficients": "module" if M else "trivial"}
    return result, lie_quasifree_verdict(g, n_max) if M is None else None


def cmd_standardize(args):
    P = load_file(args.file, PRESENTATIONS)
    S = standardize(P)
    factors = [{"factor": f.label, "algebra": f.algebra.to_json(), "zero_ring": f.algebra.is_zero_ring(),
                "reduced_basis": [str(g) for g in f.algebra.ideal.basis]}
               for f in standardization_factors(P)]
    return {"standardization": S.to_json(), "reduced_basis": [str(g) for g in S.ideal.basis],
            "factors": factors}, None


def cmd_smooth(args):
    from essalg.smoothness import essential_check, jacobian_smooth, kahler_presentation, unramified_check

    P = load_file(args.file, PRESENTATIONS)
    if args.essential:
        return {"mode": args.mode}, essential_check(P, args.mode)
    if isinstance(P, NCPresentation):
        raise InputError("non-essential smoothness needs a commutative presentation; use --essential")
    K = kahler_presentation(P)
    result = {"jacobian": K.to_strings(), "mode": args.mode}
    if args.mode == "unramified":
        result["unramified"] = unramified_check(P)
        return result, None
    verdict = jacobian_smooth(P)
    if args.mode == "etale":
        result["unramified"] = unramified_check(P)
    return result, verdict


def cmd_cover(args):
    from essalg.essential_geometry import CoverCandidate, cover_check
    from essalg.verdict import Verdict

    P = load_file(args.file, PRESENTATIONS)
    res = cover_check(CoverCandidate(P, split_list(args.elements)))
    tag = "verified" if res.verified else "failed"
    witness = {"coefficients": res.coefficients, "elements": res.elements}
    if res.evidence is not None:
        witness["ideal"] = res.evidence
    provenance = ["partition of unity found by ideal membership and re-verified by expansion",
                  "each chart certified as the localization at its element"] if res.verified else [res.reason]
    return res.to_json(), Verdict(tag, witness, provenance)


def cmd_localize(args):
    from essalg.essential_geometry import verify_essential_localization

    data = read_json(args.file)
    nu = load_object(data, "morphism")
    at = args.at or data.get("invert")
    if not at:
        raise InputError("no element to invert: pass --at or set 'invert' in the morphism file")
    wit = data.get("witness")
    witness = (wit["psi"], wit["psi_inv"]) if wit else None
    return {"inverted": at}, verify_essential_localization(nu, at, witness)


def cmd_points(args):
    from essalg.points_enum import enumerate_homs

    A = load_file(args.file, PRESENTATIONS)
    B = load_file(args.target, "findim_algebra")
    ps = enumerate_homs(A, B, unital_only=not args.nonunital, commutative=args.commutative)
    return ps.to_json(), None


def cmd_selftest(args):
    from essalg.acceptance import run_all

    results = run_all(args.only)
    for r in results:
        print(r.line(), file=sys.stderr)
    return {"criteria": [r.to_json() for r in results], "passed": all(r.passed for r in results)}, None


COMMANDS = {
    "krull": cmd_krull, "degeneracy": cmd_degeneracy, "hochschild": cmd_hochschild,
    "lie-cohomology": cmd_lie, "standardize": cmd_standardize, "smooth": cmd_smooth,
    "cover": cmd_cover, "localize": cmd_localize, "points": cmd_points, "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="essalg", description="Exact verdicts on finitely presented algebras.")
    p.add_argument("--version", action="version", version=f"essalg {__version__}")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent rank computations")
    p.add_argument("--verify-report", metavar="REPORT", help="replay a saved report and check it reproduces")
    sub = p.add_subparsers(dest="command")

    s = sub.add_parser("krull", help="Krull dimension (of the standardization for associative input)")
    s.add_argument("file")
    s = sub.add_parser("degeneracy", help="not-quasi-free test for a commutative algebra")
    s.add_argument("file")
    s.add_argument("--sequence", help="candidate regular sequence, comma separated")
    s = sub.add_parser("hochschild", help="Hochschild cohomology of a finite-dimensional algebra")
    s.add_argument("file")
    s.add_argument("--bimodule", help="bimodule file (default: A and its dual)")
    s.add_argument("--n-max", type=int, default=3)
    s.add_argument("--normalized", action="store_true")
    s = sub.add_parser("lie-cohomology", help="Chevalley-Eilenberg cohomology of a Lie algebra")
    s.add_argument("file")
    s.add_argument("--module", help="module file with action matrices (default: trivial)")
    s.add_argument("--n-max", type=int)
    s = sub.add_parser("standardize", help="standardization and its product factors")
    s.add_argument("file")
    s = sub.add_parser("smooth", help="Jacobian smoothness, or essential smoothness with --essential")
    s.add_argument("file")
    s.add_argument("--essential", action="store_true")
    s.add_argument("--mode", choices=["smooth", "unramified", "etale"], default="smooth")
    s = sub.add_parser("cover", help="check an essential-Zariski cover")
    s.add_argument("file")
    s.add_argument("--elements", required=True, help="comma separated elements of the standardization")
    s = sub.add_parser("localize", help="verify an essential localization (morphism file)")
    s.add_argument("file")
    s.add_argument("--at", help="element to invert (overrides the file)")
    s = sub.add_parser("points", help="enumerate Hom(A, B) for a small algebra B over GF(p)")
    s.add_argument("file")
    s.add_argument("--target", required=True, help="findim_algebra file over GF(2), GF(3) or GF(5)")
    s.add_argument("--nonunital", action="store_true", help="allow maps that do not preserve the unit")
    s.add_argument("--commutative", action="store_true", help="require generator images to commute")
    s = sub.add_parser("selftest", help="run the acceptance criteria")
    s.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    return p


def run(argv: list[str]) -> tuple[dict, int]:
    """Execute ``argv`` and return (report, exit code)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verify_report:
        return verify_report(args.verify_report)
    if not args.command:
        parser.error("a subcommand is required")
    budget = default_budget()
    report: dict = {"schema": SCHEMA, "command": args.command, "argv": list(argv),
                    "budget": {"degree": budget.degree, "pairs": budget.pairs}}
    if getattr(args, "file", None):
        try:
            report["input"] = _file_info(args.file)
        except OSError as exc:
            return _error(report, "input", f"cannot read {args.file}: {exc.strerror}"), EXIT_INPUT
    start = time.perf_counter()
    try:
        result, verdict = COMMANDS[args.command](args)
    except ResourceError as exc:
        return _error(report, "resource", str(exc), {"budget": exc.budget, "limit": exc.limit}), EXIT_RESOURCE
    except InputError as exc:
        return _error(report, "input", str(exc)), EXIT_INPUT
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    report["result"] = result
    if verdict is not None:
        report["verdict"] = verdict.tag
        report["witness"] = verdict.witness
        report["provenance"] = verdict.provenance
        report["notes"] = verdict.notes
    code = EXIT_OK
    if args.command == "selftest" and not result["passed"]:
        code = EXIT_FAILED
    return report, code


def _error(report: dict, kind: str, message: str, extra: dict | None = None) -> dict:
    report["error"] = {"kind": kind, "message": message, **(extra or {})}
    return report


def _strip_timing(report: dict) -> dict:
    out = {k: v for k, v in report.items() if k != "timing"}
    if out.get("command") == "selftest" and "result" in out:
        out["result"] = {**out["result"], "criteria": [
            {k: v for k, v in c.items() if k != "seconds"} for c in out["result"]["criteria"]]}
    return out


def _replay_witness(report: dict) -> list[str]:
    """Kind-specific re-checks of the witness, independent of the rerun comparison."""
    problems = []
    cmd = report.get("command")
    witness = report.get("witness") or {}
    path = build_parser().parse_args(report["argv"]).file
    if cmd == "cover" and report.get("verdict") == "verified":
        A = _commutative(load_file(path, PRESENTATIONS))
        ys = [A.parse(y) for y in witness["coefficients"]]
        fs = [A.parse(f) for f in witness["elements"]]
        total = sum((y * f for y, f in zip(ys, fs)), A.ring.zero())
        if not A.normal_form(total - 1).is_zero():
            problems.append("partition of unity does not sum to 1")
    if cmd == "degeneracy" and witness.get("path") == "sequence":
        from essalg.dimension_theory import is_regular_sequence

        cert = witness["certificate"]
        A = _commutative(load_file(path, PRESENTATIONS))
        again = is_regular_sequence(A, cert["sequence"])
        if not again.ok or again.to_json()["steps"] != cert["steps"]:
            problems.append("regular-sequence certificate does not replay")
    return problems


def verify_report(path: str) -> tuple[dict, int]:
    saved = read_json(path)
    if saved.get("schema") != SCHEMA or "argv" not in saved:
        raise InputError(f"{path} is not an essalg report")
    fresh, code = run(saved["argv"])
    problems = []
    if _strip_timing(fresh) != _strip_timing(saved):
        problems.append("rerun differs from the saved report")
    if "error" not in saved:
        problems.extend(_replay_witness(saved))
    out = {"schema": SCHEMA, "command": "verify-report", "report": path,
           "replayed": not problems, "problems": problems}
    return out, EXIT_OK if not problems else EXIT_FAILED


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        report, code = run(argv)
    except InputError as exc:
        report, code = {"schema": SCHEMA, "error": {"kind": "input", "message": str(exc)}}, EXIT_INPUT
    except ResourceError as exc:
        report = {"schema": SCHEMA, "error": {"kind": "resource", "message": str(exc),
                                               "budget": exc.budget, "limit": exc.limit}}
        code = EXIT_RESOURCE
    json.dump(report, sys.stdout, sort_keys=True, indent=2, default=str)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
