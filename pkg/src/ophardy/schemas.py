"""JSON schemas for function specs and verification reports, and their ingestion.

Complex numbers are ``[re, im]`` pairs; a matrix is a list of rows of pairs.
"""
from __future__ import annotations

import json

import jsonschema
import numpy as np

from .errors import SchemaError, ValidationError
from .gallery import NAMES, GallerySpec, build
from .verify import VerificationReport
from .grid import CircleFunction, CircleGrid, FourierPolynomial, PoissonExtension, Sampled, TaylorPolynomial

COMPLEX = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
MATRIX = {
    "type": "array",
    "minItems": 1,
    "items": {"type": "array", "minItems": 1, "items": COMPLEX},
}
_MODE_KEY = "^-?(0|[1-9][0-9]*)$"

GALLERY_SPEC = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "GallerySpec",
    "type": "object",
    "required": ["type"],
    "additionalProperties": False,
    "properties": {
        "type": {"enum": list(NAMES)},
        "dim": {"type": "integer", "minimum": 1},
        "coeffs": {
            "type": "object",
            "minProperties": 1,
            "propertyNames": {"pattern": _MODE_KEY},
            "additionalProperties": MATRIX,
        },
        "degree": {"type": "integer", "minimum": 0},
        "seed": {"type": "integer"},
        "analytic": {"type": "boolean"},
    },
    "allOf": [
        {
            "if": {"properties": {"type": {"const": "matrix_polynomial"}}},
            "then": {"anyOf": [{"required": ["coeffs"]}, {"required": ["dim", "degree"]}]},
            "else": {
                "required": ["dim"],
                "not": {"anyOf": [{"required": [k]} for k in ("coeffs", "degree", "seed", "analytic")]},
            },
        }
    ],
}

CIRCLE_FUNCTION = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "CircleFunction",
    "oneOf": [
        {
            "type": "object",
            "required": ["type", "coeffs"],
            "additionalProperties": False,
            "properties": {
                "type": {"const": "fourier_polynomial"},
                "coeffs": {
                    "type": "object",
                    "minProperties": 1,
                    "propertyNames": {"pattern": _MODE_KEY},
                    "additionalProperties": MATRIX,
                },
            },
        },
        {
            "type": "object",
            "required": ["type", "n_points", "values"],
            "additionalProperties": False,
            "properties": {
                "type": {"const": "sampled"},
                "n_points": {"type": "integer", "minimum": 1},
                "values": {"type": "array", "minItems": 1, "items": MATRIX},
            },
        },
    ],
}

DISK_FUNCTION = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "DiskFunction",
    "oneOf": [
        {
            "type": "object",
            "required": ["type", "coeffs"],
            "additionalProperties": False,
            "properties": {
                "type": {"const": "taylor_polynomial"},
                "coeffs": {"type": "array", "minItems": 1, "items": MATRIX},
                "label": {"type": "string"},
            },
        },
        {
            "type": "object",
            "required": ["type", "boundary"],
            "additionalProperties": False,
            "properties": {
                "type": {"const": "poisson_extension"},
                "boundary": {"type": "object"},
                "grid": {"type": "integer", "minimum": 1},
            },
        },
    ],
}

VERIFICATION_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "VerificationReport",
    "type": "object",
    "required": ["claim", "tol", "rows"],
    "properties": {
        "claim": {"enum": ["isometry", "contraction", "adjoint", "roundtrip", "containment"]},
        "tol": {"type": "number", "minimum": 0},
        "params": {"type": "object"},
        "rows": {"type": "array", "items": {"type": "object"}},
        "verdict": {"enum": ["pass", "fail"]},
        "spec": {},
    },
}

SCHEMAS = {
    "gallery_spec": GALLERY_SPEC,
    "circle_function": CIRCLE_FUNCTION,
    "disk_function": DISK_FUNCTION,
    "verification_report": VERIFICATION_REPORT,
}

_KIND = {name: "gallery_spec" for name in NAMES}
_KIND.update(
    fourier_polynomial="circle_function",
    sampled="circle_function",
    taylor_polynomial="disk_function",
    poisson_extension="disk_function",
)


def _path(prefix: str, parts) -> str:
    out = prefix
    for p in parts:
        out = f"{out}[{p}]" if isinstance(p, int) else (f"{out}.{p}" if out else str(p))
    return out


def validate(doc, schema: dict, prefix: str = "") -> None:
    """Raise :class:`SchemaError` naming the path of the most relevant violation."""
    validator = jsonschema.Draft202012Validator(schema)
    err = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if err is not None:
        raise SchemaError(err.message, _path(prefix, err.absolute_path))


def matrix_from_json(rows) -> np.ndarray:
    if len({len(row) for row in rows}) != 1:
        raise ValidationError("matrix rows have different lengths")
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)


def matrix_to_json(m) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(m)]


def _coeff_map(doc: dict) -> dict:
    return {int(k): matrix_from_json(v) for k, v in doc.items()}


def from_document(doc, prefix: str = ""):
    """Build a :class:`GallerySpec`, circle function or disk function from a parsed document."""
    if not isinstance(doc, dict):
        raise SchemaError("spec must be a JSON object", prefix)
    kind = doc.get("type")
    if not isinstance(kind, str) or kind not in _KIND:
        raise SchemaError(f"unknown type {kind!r}; expected one of {sorted(_KIND)}", _path(prefix, ["type"]))
    validate(doc, SCHEMAS[_KIND[kind]], prefix)
    if _KIND[kind] == "gallery_spec":
        params = {k: doc[k] for k in ("degree", "seed", "analytic") if k in doc}
        if "coeffs" in doc:
            params["coeffs"] = _coeff_map(doc["coeffs"])
        return GallerySpec(kind, doc.get("dim"), params)
    if kind == "fourier_polynomial":
        return FourierPolynomial(_coeff_map(doc["coeffs"]))
    if kind == "sampled":
        mats = [matrix_from_json(m) for m in doc["values"]]
        if len({m.shape for m in mats}) != 1:
            raise ValidationError(f"{_path(prefix, ['values'])}: sampled matrices have mismatched shapes")
        return Sampled(CircleGrid(doc["n_points"]), np.stack(mats))
    if kind == "taylor_polynomial":
        return TaylorPolynomial([matrix_from_json(m) for m in doc["coeffs"]], doc.get("label"))
    boundary = from_document(doc["boundary"], _path(prefix, ["boundary"]))
    if isinstance(boundary, GallerySpec):
        boundary = build(boundary)
    if not isinstance(boundary, CircleFunction):
        raise SchemaError("boundary must be a circle function", _path(prefix, ["boundary"]))
    grid = CircleGrid(doc["grid"]) if "grid" in doc else None
    return PoissonExtension(boundary, grid)


def parse_spec(data):
    """Parse JSON text or bytes into a validated construction."""
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    return from_document(doc)


def parse_report(doc: dict) -> VerificationReport:
    validate(doc, VERIFICATION_REPORT)
    return VerificationReport.from_dict(doc)
