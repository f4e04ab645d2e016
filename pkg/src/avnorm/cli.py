"""Command-line interface.

Subcommands::

    cone-info PATH               structural facts about a cone spec
    project PATH POINT           metric projection of an inline point, e.g. "1,-1"
    avn-build PATH               validate an operator spec and print it self-contained
    avn-verify PATH              run the axiom suite plus claimed or requested properties
    paper-demo ID [--dim N]      reproduce a worked example (ska, latt, primitiv, exx,
                                 nopro, cons, exavn, prop2)
    suite DIR                    coisotone-projection and self-dual lattice suites over
                                 every ``*.json`` cone spec in DIR

Every subcommand accepts ``--tol`` (membership tolerance), ``--samples``,
``--seed``, ``--format text|json`` and ``--out PATH``.

Exit codes:

0  everything passed
1  a check failed or was inconclusive, or an operator is not proper
2  malformed input or configuration (bad JSON, schema errors, unnormalized
   range-one vector, bad weights, mismatched cone ranges, unknown example)
3  input the package does not support (singular generators, non-pointed or
   lower-dimensional cones, too many generators, dimension mismatches)
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import errors
from .cones import (
    dual_cone,
    generator_matrix,
    halfspace_normals,
    is_coisotone,
    is_full_dimensional,
    is_pointed,
    is_selfdual_simplicial,
    is_simplicial,
)
from .demos import DEMOS, run_demo
from .numeric import DEFAULT_TOL, ToleranceConfig
from .projection import project
from .report import PASS, SuiteResult, dumps, format_vec
from .specio import cone_to_dict, load_cone, load_operator, operator_to_dict, parse_point
from .verification import run_axiom_suite, theorem_fooo_suite, theorem_hlatt_suite

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_UNSUPPORTED = 3

_CONFIG_ERRORS = (
    errors.ParseError,
    errors.NormalizationError,
    errors.BadWeights,
    errors.ConeRangeMismatch,
    errors.UnknownExample,
    errors.BoundednessViolation,
)
_UNSUPPORTED_ERRORS = (
    errors.UnsupportedRepresentation,
    errors.TooManyGenerators,
    errors.NotPointed,
    errors.NotFullDimensional,
    errors.SingularMatrix,
    errors.DimensionMismatch,
)
_CHECK_ERRORS = (errors.NotProper, errors.AxiomViolation)


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, _CONFIG_ERRORS):
        return EXIT_CONFIG
    if isinstance(exc, _UNSUPPORTED_ERRORS):
        return EXIT_UNSUPPORTED
    if isinstance(exc, _CHECK_ERRORS):
        return EXIT_CHECK_FAILED
    return EXIT_CONFIG


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL.membership_tol,
                        help="membership tolerance (default %(default)g)")
    common.add_argument("--samples", type=_positive_int, default=DEFAULT_TOL.sample_count,
                        help="samples per check (default %(default)d)")
    common.add_argument("--seed", type=int, default=DEFAULT_TOL.seed, help="random seed (default %(default)d)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="avnorm", description="Asymmetric vector norms on ordered R^n.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("cone-info", parents=[common], help="structural facts about a cone spec")
    p.add_argument("path", type=Path)
    p = sub.add_parser("project", parents=[common], help="metric projection of a point onto a cone")
    p.add_argument("path", type=Path)
    p.add_argument("point", help="comma-separated coordinates, e.g. 1,-1")
    p = sub.add_parser("avn-build", parents=[common], help="validate and re-serialize an operator spec")
    p.add_argument("path", type=Path)
    p = sub.add_parser("avn-verify", parents=[common], help="verify an operator spec")
    p.add_argument("path", type=Path)
    p = sub.add_parser("paper-demo", parents=[common], help="reproduce a worked example")
    p.add_argument("example", choices=sorted(DEMOS), metavar="ID", help=", ".join(DEMOS))
    p.add_argument("--dim", type=_positive_int, help="ambient dimension where the example has one")
    p = sub.add_parser("suite", parents=[common], help="run cone suites over a directory of cone specs")
    p.add_argument("directory", type=Path)
    return parser


def tolerance_from_args(args) -> ToleranceConfig:
    return DEFAULT_TOL.with_(membership_tol=args.tol, sample_count=args.samples, seed=args.seed)


# -- subcommands ---------------------------------------------------------------
# each returns (payload dict, text, exit code)


def _generators_or_none(k):
    try:
        g = generator_matrix(k)
    except errors.AvnError:
        return None
    return None if g is None else (g.T + 0.0).tolist()


def _dual_generators(k):
    """Extreme rays of the dual: facet normals of a generator cone, else a direct generator form."""
    if k.kind == "generators":
        try:
            return (halfspace_normals(k) + 0.0).tolist()
        except errors.AvnError:
            return None
    return _generators_or_none(dual_cone(k))


def cmd_cone_info(args, tol):
    k = load_cone(args.path)
    simplicial = is_simplicial(k)
    info = {
        "cone": cone_to_dict(k),
        "kind": k.kind,
        "dim": k.dim,
        "pointed": is_pointed(k, tol),
        "full_dimensional": is_full_dimensional(k),
        "simplicial": simplicial,
        "coisotone": is_coisotone(k, tol) if k.kind == "simplicial" else None,
        "self_dual": is_selfdual_simplicial(k, tol) if k.kind == "simplicial" else None,
    }
    dual = _dual_generators(k)
    info["dual_generators"] = dual
    info["polar_generators"] = None if dual is None else [[-c + 0.0 for c in v] for v in dual]
    info["summary"] = _cone_summary(info)
    lines = [info["summary"], f"kind: {k.kind}", f"dimension: {k.dim}"]
    for key in ("pointed", "full_dimensional", "simplicial", "coisotone", "self_dual"):
        lines.append(f"{key.replace('_', '-')}: {_yn(info[key])}")
    for key in ("dual_generators", "polar_generators"):
        vecs = info[key]
        shown = "not computable" if vecs is None else ", ".join(format_vec(v) for v in vecs)
        lines.append(f"{key.replace('_', ' ')}: {shown}")
    return info, "\n".join(lines), EXIT_PASS


def _yn(v):
    return "n/a" if v is None else ("yes" if v else "no")


def _cone_summary(info) -> str:
    parts = ["simplicial" if info["simplicial"] else info["kind"]]
    parts.append("pointed" if info["pointed"] else "NOT pointed")
    if info["coisotone"] is not None:
        parts.append("coisotone" if info["coisotone"] else "NOT coisotone")
    if info["self_dual"]:
        parts.append("self-dual")
    return ", ".join(parts)


def cmd_project(args, tol):
    k = load_cone(args.path)
    x = parse_point(args.point, k.dim)
    res = project(k, x, tol)
    payload = {
        "cone": cone_to_dict(k),
        "point": x.tolist(),
        "projection": res.projected.tolist(),
        "residual": res.residual.tolist(),
        "inner_product": res.inner,
        "active_face": sorted(int(i) for i in res.active_face),
    }
    text = "\n".join([
        f"x       = {format_vec(x)}",
        f"Px      = {format_vec(res.projected)}",
        f"(I-P)x  = {format_vec(res.residual)}",
        f"<Px, (I-P)x> = {res.inner!r}",
        f"active face: {payload['active_face']}",
    ])
    return payload, text, EXIT_PASS


def cmd_avn_build(args, tol):
    spec = load_operator(args.path, tol)
    payload = operator_to_dict(spec.operator, spec.verify)
    return payload, dumps(payload), EXIT_PASS


def _suite_out(suite: SuiteResult):
    return suite.to_dict(), suite.to_text(), EXIT_PASS if suite.verdict == PASS else EXIT_CHECK_FAILED


def cmd_avn_verify(args, tol):
    spec = load_operator(args.path, tol)
    return _suite_out(run_axiom_suite(spec.operator, tol, extra=spec.verify))


def cmd_paper_demo(args, tol):
    return _suite_out(run_demo(args.example, tol, dim=args.dim))


def cmd_suite(args, tol):
    directory = args.directory
    if not directory.is_dir():
        raise errors.ParseError(f"{directory} is not a directory")
    suites, skipped = [], []
    for path in sorted(directory.glob("*.json")):
        k = load_cone(path)
        if k.kind != "simplicial":
            skipped.append({"file": path.name, "reason": f"{k.kind} cone; the suites need a simplicial cone"})
            continue
        for suite in (theorem_fooo_suite(k, tol), theorem_hlatt_suite(k, tol)):
            suites.append((path.name, suite))
    verdicts = [s.verdict for _, s in suites]
    overall = PASS if verdicts and all(v == PASS for v in verdicts) else (
        "fail" if "fail" in verdicts else "inconclusive")
    payload = {
        "directory": directory.name,
        "verdict": overall,
        "suites": [dict(file=name, **s.to_dict()) for name, s in suites],
        "skipped": skipped,
    }
    lines = [f"{len(suites)} suites over {directory}: {overall.upper()}"]
    for name, s in suites:
        lines.append(f"[{name}]")
        lines.append(s.to_text())
    for item in skipped:
        lines.append(f"skipped {item['file']}: {item['reason']}")
    return payload, "\n".join(lines), EXIT_PASS if overall == PASS else EXIT_CHECK_FAILED


COMMANDS = {
    "cone-info": cmd_cone_info,
    "project": cmd_project,
    "avn-build": cmd_avn_build,
    "avn-verify": cmd_avn_verify,
    "paper-demo": cmd_paper_demo,
    "suite": cmd_suite,
}


def _emit(text: str, out: Path | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


_POINT = re.compile(r"^-[0-9.]")


def _protect_points(argv: list[str]) -> list[str]:
    """Move inline points such as ``-1,1`` behind ``--`` so they are not read as options."""
    if "--" in argv:
        return argv
    points = [a for a in argv if _POINT.match(a)]
    if not points:
        return argv
    return [a for a in argv if not _POINT.match(a)] + ["--"] + points


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_protect_points(argv))
    try:
        tol = tolerance_from_args(args)
        payload, text, code = COMMANDS[args.command](args, tol)
    except errors.AvnError as exc:
        code = exit_code_for(exc)
        msg = f"{type(exc).__name__}: {exc}"
        print(f"error: {msg}", file=sys.stderr)
        if args.format == "json":
            _emit(dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}), args.out)
        return code
    if args.format == "json":
        payload = dict(payload) if args.command == "avn-build" else {"command": args.command, **payload}
        _emit(dumps(payload), args.out)
    else:
        _emit(text, args.out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
