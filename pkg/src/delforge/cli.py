"""Command-line front door.

Exit codes: 0 means the claim was verified, 1 means the claim was refuted
(the certificate carries the witness), 2 means the input or environment was
unusable.  The enumeration node budget is capped by the DELFORGE_MAX_ENUM
environment variable (default 10^8); exceeding it is an error, never a
silent partial answer.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

from . import serialize
from .constructions import (
    DelaunayInstance,
    construct_cross_polytope,
    construct_half_cube,
    construct_pn,
    pn_form,
)
from .delaunay import verify_delaunay
from .extremality import certify_extreme
from .lattice import DEFAULT_MAX_ENUM, EnumerationLimitError
from .symmetry import automorphisms

ENV_MAX_ENUM = "DELFORGE_MAX_ENUM"

_FAMILIES = {
    "pn": construct_pn,
    "half-cube": construct_half_cube,
    "cross-polytope": construct_cross_polytope,
}


def _max_enum() -> int:
    raw = os.environ.get(ENV_MAX_ENUM)
    if raw is None:
        return DEFAULT_MAX_ENUM
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_MAX_ENUM} must be an integer, got {raw!r}")
    if value <= 0:
        raise ValueError(f"{ENV_MAX_ENUM} must be positive, got {value}")
    return value


def _load_instance(path: str) -> DelaunayInstance:
    return serialize.instance_from_dict(serialize.load_json(path))


def _say(quiet: bool, message: str) -> None:
    if not quiet:
        print(message)


def _cmd_construct(args) -> int:
    inst = _FAMILIES[args.family](args.dim)
    serialize.dump_json(serialize.instance_to_dict(inst), args.out)
    _say(args.quiet, f"{inst.label}: {len(inst.vertices)} vertices -> {args.out}")
    return 0


def _cmd_verify_delaunay(args) -> int:
    inst = _load_instance(args.input_path)
    cert = verify_delaunay(inst, max_nodes=_max_enum())
    serialize.dump_json(serialize.sphere_certificate_to_dict(cert), args.out)
    if cert.verified:
        _say(args.quiet, f"verified: {cert.on_sphere_count} lattice points, all on the sphere")
        return 0
    witness = None if cert.witness is None else tuple(str(c) for c in cert.witness)
    _say(args.quiet, f"refuted: witness {witness}")
    return 1


def _cmd_certify_extreme(args) -> int:
    inst = _load_instance(args.input_path)
    cert = certify_extreme(inst, max_nodes=_max_enum())
    serialize.dump_json(serialize.extremality_certificate_to_dict(cert), args.out)
    if cert.is_extreme:
        _say(args.quiet, "extreme: quadric kernel has dimension 1")
        return 0
    _say(args.quiet, f"not extreme: quadric kernel has dimension {cert.kernel_dim}")
    return 1


def _cmd_symmetry(args) -> int:
    inst = _load_instance(args.input_path)
    report = automorphisms(inst)
    serialize.dump_json(serialize.symmetry_report_to_dict(report), args.out)
    _say(args.quiet, f"group order {report.group_order}, {report.orbit_count} vertex orbits")
    return 0


def _expected_center(n: int) -> tuple[Fraction, ...]:
    return (Fraction(1, 2),) * (n - 1) + (Fraction(-1, n - 3),)


def _expected_radius_sq(n: int) -> Fraction:
    return Fraction((n - 2) ** 2, 4 * (n - 3))


def _stated_center(n: int) -> tuple[Fraction, ...]:
    return (Fraction(0),) * (n - 1) + (Fraction(-1, n - 3),)


def _stated_radius_sq(n: int) -> Fraction:
    return Fraction((n - 2) ** 2, n - 3)


def _format_vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _cmd_report(args) -> int:
    n = args.dim
    report: dict = {"family": "pn", "dim": n}
    checks: dict[str, bool] = {}
    out = sys.stdout

    def emit(line: str) -> None:
        if not args.quiet:
            print(line, file=out)

    def finish(code: int) -> int:
        report["checks"] = checks
        report["all_passed"] = bool(checks) and all(checks.values())
        if args.out:
            serialize.dump_json(report, args.out)
        return code

    try:
        inst = construct_pn(n)
        expected_count = 1 + 2 ** (n - 2) + 2 * (n - 1)
        report["vertex_count"] = len(inst.vertices)
        checks["vertex_count"] = len(inst.vertices) == expected_count
        emit(f"three-layer family, dimension {n}: {len(inst.vertices)} vertices")

        max_nodes = _max_enum()
        sphere = verify_delaunay(inst, max_nodes=max_nodes)
        report["empty_sphere"] = serialize.sphere_certificate_to_dict(sphere)
        checks["delaunay"] = sphere.verified and sphere.on_sphere_count == len(inst.vertices)

        extremal = certify_extreme(inst, sphere=sphere)
        report["extremality"] = serialize.extremality_certificate_to_dict(extremal)
        checks["extreme"] = extremal.is_extreme
        checks["recovered_form"] = extremal.recovered_form == pn_form(n)
        emit(
            f"(i) extremality: quadric kernel dimension {extremal.kernel_dim}"
            + (
                ", certified metric diag(1, ..., 1, "
                + str(Fraction(n - 3, 4))
                + ")"
                if extremal.is_extreme
                else " (not extreme)"
            )
        )

        exp_center = _expected_center(n)
        exp_radius_sq = _expected_radius_sq(n)
        checks["center_formula"] = sphere.center == exp_center
        checks["radius_formula"] = sphere.radius_sq == exp_radius_sq
        stated_center = _stated_center(n)
        stated_radius_sq = _stated_radius_sq(n)
        stated_matches = (
            sphere.center == stated_center and sphere.radius_sq == stated_radius_sq
        )
        report["stated_circumsphere"] = {
            "center": serialize.vector_to_json(stated_center),
            "radius_sq": serialize.format_rational(stated_radius_sq),
            "matches_computed": stated_matches,
        }
        emit(
            f"(ii) circumsphere: center {_format_vec(sphere.center)}, "
            f"r^2 = {sphere.radius_sq}; {sphere.on_sphere_count} lattice points "
            "in the closed ball, all on the sphere"
            if sphere.verified
            else f"(ii) circumsphere check failed, witness {sphere.witness}"
        )
        emit(
            f"     commonly stated variant: center {_format_vec(stated_center)}, "
            f"r^2 = {stated_radius_sq} -> "
            + ("matches" if stated_matches else "MISMATCH, the certified values above are exact")
        )

        sym = automorphisms(inst)
        report["symmetry"] = serialize.symmetry_report_to_dict(sym)
        if n == 6:
            checks["group_order"] = sym.group_order == 51840
            checks["orbits"] = sym.orbit_count == 1
        else:
            checks["group_order"] = sym.group_order == math.factorial(n - 1) * 2 ** (n - 2)
            orbit_sizes = sorted(len(o) for o in sym.orbits)
            checks["orbits"] = sym.orbit_count == 3 and orbit_sizes == sorted(
                (1, 2 ** (n - 2), 2 * (n - 1))
            )
        emit(
            f"(iii) symmetry: group order {sym.group_order}, "
            f"{sym.orbit_count} vertex orbit(s) of sizes "
            f"{sorted(len(o) for o in sym.orbits)}"
        )
    except Exception as exc:  # stage failure: keep the partial report
        report["error"] = str(exc)
        if args.out:
            serialize.dump_json(report, args.out)
        print(f"error: {exc}", file=sys.stderr)
        return 2

    all_passed = bool(checks) and all(checks.values())
    emit("result: all checks passed" if all_passed else f"result: FAILED {sorted(k for k, v in checks.items() if not v)}")
    return finish(0 if all_passed else 1)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delforge",
        description=(
            "Construct lattice Delaunay polytope candidates and emit exact "
            "certificates for empty-sphere, extremality, and symmetry claims."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_construct = sub.add_parser("construct", help="build a vertex family and write it as JSON")
    p_construct.add_argument("--family", choices=sorted(_FAMILIES), required=True)
    p_construct.add_argument("--dim", type=int, required=True)
    p_construct.add_argument("--out", required=True, help="output instance file")
    p_construct.add_argument("--quiet", action="store_true")
    p_construct.set_defaults(func=_cmd_construct)

    for name, func, blurb in (
        ("verify-delaunay", _cmd_verify_delaunay, "certify the empty-sphere property"),
        ("certify-extreme", _cmd_certify_extreme, "certify extremality via the quadric kernel"),
        ("symmetry", _cmd_symmetry, "compute the isometry group and vertex orbits"),
    ):
        p = sub.add_parser(name, help=blurb)
        p.add_argument("--in", dest="input_path", required=True, help="instance JSON file")
        p.add_argument("--out", required=True, help="certificate output file")
        p.add_argument("--quiet", action="store_true")
        p.set_defaults(func=func)

    p_report = sub.add_parser(
        "report", help="run construct, verify, certify, and symmetry for one even dimension"
    )
    p_report.add_argument("--dim", type=int, required=True)
    p_report.add_argument("--out", help="optional consolidated JSON report file")
    p_report.add_argument("--quiet", action="store_true")
    p_report.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EnumerationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
