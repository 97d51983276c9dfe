"""Command-line front end.

Exit codes: 0 success, 1 transport infeasible, 2 usage error, 3 a plan or
casebook verdict failed verification, 4 bad input or I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import casebook
from .cochain import (
    TopCochain,
    coboundary_of_values,
    discrepancy_csv,
    discrepancy_series,
    integrate,
    mass_cochain,
)
from .geometry import (
    GeometryError,
    Patch,
    chair_partial_region,
    get_system,
    render_svg,
    supertile,
)
from .scalar import Scalar
from .transport import (
    TransportProblem,
    hall_feasible,
    solve_pe_coboundary,
    stepwise_plan_from_flux,
    verify_plan,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_INPUT = 4


class InputError(Exception):
    pass


def parse_cochain(text: str, system) -> TopCochain:
    """``"NE:1,SW:-1"`` (missing labels are 0) or a casebook name such as ``f2``."""
    system = get_system(system)
    text = text.strip()
    if ":" not in text:
        case = casebook.CASES.get(system.name)
        if case is None or text not in case().cochains:
            raise InputError(f"unknown distribution {text!r}")
        return case().cochains[text]
    rule = {lab: Scalar(0) for lab in system.labels}
    for part in text.split(","):
        lab, _, val = part.partition(":")
        lab = lab.strip()
        if lab not in rule:
            raise InputError(f"label {lab!r} is not a {system.name} prototile")
        try:
            rule[lab] = Scalar.parse(val)
        except ValueError as e:
            raise InputError(str(e)) from None
    return mass_cochain(rule, system)


def parse_radius(text: str):
    try:
        return Scalar.parse(text)
    except ValueError:
        pass
    try:
        return Fraction(text)
    except ValueError:
        raise InputError(f"not a radius: {text!r}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot write {path}: {e}") from None


def _patch(args) -> Patch:
    if getattr(args, "patch", None):
        try:
            return Patch.from_json(Path(args.patch).read_text(encoding="utf-8"))
        except OSError as e:
            raise InputError(f"cannot read {args.patch}: {e}") from None
    return supertile(args.system, args.proto, args.level)


def _default_proto(args) -> None:
    if getattr(args, "proto", None) is None:
        args.proto = get_system(args.system).labels[0]


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# verbs


def cmd_gen(args) -> int:
    patch = supertile(args.system, args.proto, args.level)
    if args.svg:
        _write(args.svg, render_svg(patch))
    if args.out:
        _write(args.out, patch.to_json() + "\n")
    if args.out != "-":
        print(f"{args.system} {args.proto} level {args.level}: {len(patch)} tiles, "
              f"boundary {patch.boundary_measure()}")
    return EXIT_OK


def cmd_integrate(args) -> int:
    alpha = parse_cochain(args.alpha, args.system)
    if args.region is not None:
        if get_system(args.system).name != "chair":
            raise InputError("--region is only defined for the chair system")
        target = chair_partial_region(args.region)
    else:
        target = _patch(args)
    print(integrate(alpha, target))
    return EXIT_OK


def cmd_discrepancy(args) -> int:
    alpha = parse_cochain(args.alpha, args.system)
    if args.family == "Rn":
        if get_system(args.system).name != "chair":
            raise InputError("the Rn family is only defined for the chair system")
        fam = [chair_partial_region(n) for n in range(args.min, args.max + 1)]
    else:
        fam = [(f"{args.proto}{m}", supertile(args.system, args.proto, m)) for m in range(args.min, args.max + 1)]
    _write(args.out, discrepancy_csv(discrepancy_series(alpha, fam)))
    return EXIT_OK


def cmd_transport(args) -> int:
    patch = _patch(args)
    src = parse_cochain(args.source, args.system)
    tgt = parse_cochain(args.target, args.system)
    band = None if args.closed else args.slack_band
    res = hall_feasible(TransportProblem(patch, src, tgt, args.r, band))
    out = {"feasible": res.feasible, "certificate": res.certificate}
    code = EXIT_OK if res.feasible else EXIT_INFEASIBLE
    if res.feasible and res.plan is not None and args.plan:
        _write(args.plan, res.plan.to_json() + "\n")
    _write(args.out, _dumps(out))
    return code


def cmd_solve_pe(args) -> int:
    patch = _patch(args)
    alpha = parse_cochain(args.alpha, args.system)
    res = solve_pe_coboundary(alpha, patch, parse_radius(args.R))
    _write(args.out, _dumps(res.to_dict()))
    return EXIT_OK


def cmd_stepwise(args) -> int:
    patch = _patch(args)
    bg = Scalar.parse(args.background)
    src = parse_cochain(args.source, args.system).shifted(bg)
    tgt = parse_cochain(args.target, args.system).shifted(bg)
    sol = solve_pe_coboundary(src - tgt, patch, parse_radius(args.R))
    if not sol.exact:
        _write(args.out, _dumps({"ok": False, "message": "no strongly PE flux at this radius",
                                 "solve": sol.to_dict()}))
        return EXIT_VERIFY
    beta = {k: v for k, v in sol.beta.items() if len(patch.faces[k]) == 2}
    plan = stepwise_plan_from_flux(beta, src, patch)
    full = {k: beta.get(k, Scalar(0)) for k in patch.faces}
    delta = coboundary_of_values(full, patch)
    s = src.values(patch)
    end = [s[i] - delta[i] for i in range(len(patch))]
    t = tgt.values(patch)
    reached = all(end[i] == t[i] for i in sol.interior)
    report = verify_plan(plan, s, end, patch, plan.meta.get("max_step_displacement", 0.0))
    if args.plan:
        _write(args.plan, plan.to_json() + "\n")
    body = {"ok": report.ok and reached, "report": report.to_dict(), "target_reached_on_interior": reached,
            "meta": plan.meta, "n_moves": len(plan.moves)}
    _write(args.out, _dumps(body))
    return EXIT_OK if body["ok"] else EXIT_VERIFY


def cmd_casebook(args) -> int:
    names = sorted(casebook.CASES) if args.case == "all" else [args.case]
    reports = [casebook.run_case(n) for n in names]
    if args.format == "json":
        text = _dumps([r.to_dict() for r in reports])
    else:
        text = "".join(r.to_text() for r in reports)
    _write(args.out, text)
    return EXIT_OK if all(r.all_match for r in reports) else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser


def _system_args(p, patch=True, level=True):
    p.add_argument("--system", choices=["fibonacci", "chair"], required=True)
    if patch:
        p.add_argument("--patch", help="patch JSON file (instead of --proto/--level)")
    if level:
        p.add_argument("--proto", help="prototile label of the supertile (default: first label)")
        p.add_argument("--level", type=int, default=3)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tiletransport", description="Mass transport on substitution tilings.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    p = sub.add_parser("gen", help="generate a supertile patch")
    _system_args(p, patch=False)
    p.add_argument("--out", help="write patch JSON here ('-' for stdout)")
    p.add_argument("--svg", help="write an SVG rendering here")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("integrate", help="integrate a cochain over a patch or region")
    _system_args(p)
    p.add_argument("--alpha", required=True, help='cochain, e.g. "NE:1,SW:-1"')
    p.add_argument("--region", type=int, help="integrate over the chair region R_n instead")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("discrepancy", help="integral against boundary over a family (CSV)")
    _system_args(p, patch=False, level=False)
    p.add_argument("--alpha", required=True)
    p.add_argument("--family", choices=["Rn", "supertile"], default="supertile")
    p.add_argument("--proto")
    p.add_argument("--min", type=int, default=1)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_discrepancy)

    p = sub.add_parser("transport", help="decide bounded transport and emit a plan or a cut")
    _system_args(p)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--slack-band", type=float, default=0.0)
    p.add_argument("--closed", action="store_true", help="no exchange with the outside at all")
    p.add_argument("--plan", help="write the plan JSON here when feasible")
    p.add_argument("--out")
    p.set_defaults(func=cmd_transport)

    p = sub.add_parser("solve-pe", help="look for a strongly PE flux with given coboundary")
    _system_args(p)
    p.add_argument("--alpha", required=True)
    p.add_argument("--R", required=True, help="collar radius, exact (e.g. 2, 5/2, 1+1φ)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve_pe)

    p = sub.add_parser("stepwise", help="build and verify the stepwise PE transport plan")
    _system_args(p)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--R", required=True)
    p.add_argument("--background", default="1", help="constant mass added to both distributions")
    p.add_argument("--plan")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stepwise)

    p = sub.add_parser("casebook", help="recompute the worked examples and compare verdicts")
    p.add_argument("--case", choices=["fibonacci", "chair", "all"], default="all")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_casebook)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "proto"):
        _default_proto(args)
    try:
        return args.func(args)
    except (InputError, GeometryError, ValueError, KeyError) as e:
        print(f"tiletransport: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
