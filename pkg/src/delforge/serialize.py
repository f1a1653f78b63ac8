"""JSON wire formats.

Rationals are serialized as the decimal string "p/q", with "/q" omitted when
the denominator is 1 (so "-1/3" and "2").  All emitters are deterministic:
the same object always produces the same bytes.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .constructions import DelaunayInstance
from .delaunay import SphereCertificate
from .exactlin import Matrix, Rational, Vector
from .extremality import ExtremalityCertificate, QuadricTriple
from .lattice import Lattice
from .symmetry import SymmetryReport

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def format_rational(x: Rational) -> str:
    return str(x)


def parse_rational(s: str) -> Rational:
    if not isinstance(s, str) or not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational string: {s!r}")
    return Fraction(s)


def vector_to_json(v: Vector) -> list[str]:
    return [format_rational(x) for x in v]


def vector_from_json(data) -> Vector:
    return tuple(parse_rational(x) for x in data)


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [vector_to_json(row) for row in m]


def matrix_from_json(data) -> Matrix:
    rows = tuple(vector_from_json(row) for row in data)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix rows have unequal lengths")
    return rows


def lattice_to_dict(lat: Lattice) -> dict[str, Any]:
    return {"dim": lat.dim, "basis": matrix_to_json(lat.basis)}


def lattice_from_dict(data: dict) -> Lattice:
    return Lattice(dim=int(data["dim"]), basis=matrix_from_json(data["basis"]))


def instance_to_dict(inst: DelaunayInstance) -> dict[str, Any]:
    return {
        "label": inst.label,
        "dim": inst.dim,
        "form": matrix_to_json(inst.form),
        "lattice": lattice_to_dict(inst.lattice),
        "vertices": [vector_to_json(v) for v in inst.vertices],
    }


def instance_from_dict(data: dict) -> DelaunayInstance:
    return DelaunayInstance(
        label=str(data["label"]),
        dim=int(data["dim"]),
        form=matrix_from_json(data["form"]),
        lattice=lattice_from_dict(data["lattice"]),
        vertices=tuple(vector_from_json(v) for v in data["vertices"]),
    )


def sphere_certificate_to_dict(cert: SphereCertificate) -> dict[str, Any]:
    return {
        "center": vector_to_json(cert.center),
        "radius_sq": format_rational(cert.radius_sq),
        "status": "verified" if cert.verified else "refuted",
        "witness": None if cert.witness is None else vector_to_json(cert.witness),
        "on_sphere_count": cert.on_sphere_count,
    }


def sphere_certificate_from_dict(data: dict) -> SphereCertificate:
    witness = data.get("witness")
    return SphereCertificate(
        center=vector_from_json(data["center"]),
        radius_sq=parse_rational(data["radius_sq"]),
        on_sphere_count=int(data["on_sphere_count"]),
        verified=data["status"] == "verified",
        witness=None if witness is None else vector_from_json(witness),
    )


def extremality_certificate_to_dict(cert: ExtremalityCertificate) -> dict[str, Any]:
    return {
        "kernel_dim": cert.kernel_dim,
        "is_extreme": cert.is_extreme,
        "kernel_basis": [
            {
                "Q": matrix_to_json(t.q),
                "b": vector_to_json(t.b),
                "s": format_rational(t.s),
            }
            for t in cert.kernel_basis
        ],
        "recovered_form": None
        if cert.recovered_form is None
        else matrix_to_json(cert.recovered_form),
    }


def extremality_certificate_from_dict(data: dict) -> ExtremalityCertificate:
    basis = tuple(
        QuadricTriple(
            q=matrix_from_json(t["Q"]),
            b=vector_from_json(t["b"]),
            s=parse_rational(t["s"]),
        )
        for t in data["kernel_basis"]
    )
    recovered = data.get("recovered_form")
    return ExtremalityCertificate(
        kernel_dim=int(data["kernel_dim"]),
        kernel_basis=basis,
        recovered_form=None if recovered is None else matrix_from_json(recovered),
        is_extreme=bool(data["is_extreme"]),
    )


def symmetry_report_to_dict(report: SymmetryReport) -> dict[str, Any]:
    return {
        "group_order": str(report.group_order),
        "orbit_count": report.orbit_count,
        "orbits": [list(o) for o in report.orbits],
        "generators": [list(g) for g in report.generators],
    }


def symmetry_report_from_dict(data: dict) -> SymmetryReport:
    return SymmetryReport(
        generators=tuple(tuple(int(x) for x in g) for g in data["generators"]),
        group_order=int(data["group_order"]),
        orbit_count=int(data["orbit_count"]),
        orbits=tuple(tuple(int(x) for x in o) for o in data["orbits"]),
    )


def dump_json(data: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("expected a JSON object at the top level")
    return data
