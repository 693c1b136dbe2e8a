"""JSON forms for spaces, vectors, matrices, algebra elements, polynomials.

All scalars travel as exact strings (decimal integers or "a/b" fractions);
plain JSON integers are accepted on input.  Vectors and matrices use the
original (pre-diagonalization) basis; algebra elements map blade bitmasks
(as decimal strings) to scalars.
"""

from __future__ import annotations

import json

from .clifford import CliffordElem
from .errors import ParseError
from .quadspace import Isometry, QuadSpace, make_space
from .scalars import Field, Poly


def parse_field(spec) -> Field:
    if spec == "Q":
        return Field.rational()
    if isinstance(spec, str) and spec.startswith("Fp:"):
        try:
            p = int(spec[3:])
        except ValueError as exc:
            raise ParseError(f"bad field spec {spec!r}") from exc
        try:
            return Field.prime(p)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown field spec {spec!r}; expected 'Q' or 'Fp:<p>'")


def emit_field(field: Field) -> str:
    return "Q" if field.kind == "Q" else f"Fp:{field.p}"


def _scalar(field: Field, v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ParseError(f"scalar must be an integer or exact string, got {v!r}")
    try:
        return field.parse(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {v!r}: {exc}") from exc


def parse_space(obj) -> QuadSpace:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "field" not in obj or "gram" not in obj:
        raise ParseError("space JSON needs 'field' and 'gram'")
    field = parse_field(obj["field"])
    gram = obj["gram"]
    if not isinstance(gram, list) or not gram or any(len(r) != len(gram) for r in gram):
        raise ParseError("gram must be a nonempty square matrix")
    rows = tuple(tuple(_scalar(field, x) for x in r) for r in gram)
    try:
        return make_space(rows, field)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def emit_space(space: QuadSpace) -> dict:
    F = space.field
    return {
        "field": emit_field(F),
        "gram": [[F.fmt(x) for x in row] for row in space.gram],
    }


def parse_vector(obj, space: QuadSpace):
    if not isinstance(obj, list) or len(obj) != space.dim:
        raise ParseError(f"vector must be a list of length {space.dim}")
    return tuple(_scalar(space.field, x) for x in obj)


def emit_vector(v, field: Field):
    return [field.fmt(x) for x in v]


def parse_matrix(obj, space: QuadSpace) -> Isometry:
    if (
        not isinstance(obj, list)
        or len(obj) != space.dim
        or any(len(r) != space.dim for r in obj)
    ):
        raise ParseError(f"matrix must be {space.dim}x{space.dim}")
    rows = tuple(tuple(_scalar(space.field, x) for x in r) for r in obj)
    try:
        return Isometry(rows, space)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def emit_matrix(m, field: Field):
    rows = m.matrix if isinstance(m, Isometry) else m
    return [[field.fmt(x) for x in row] for row in rows]


def parse_element(obj, space: QuadSpace) -> CliffordElem:
    if isinstance(obj, dict) and "terms" in obj:
        obj = obj["terms"]
    if not isinstance(obj, dict):
        raise ParseError("element JSON must be {'<mask>': '<scalar>', ...}")
    terms = {}
    for key, val in obj.items():
        try:
            mask = int(key)
        except ValueError as exc:
            raise ParseError(f"bad blade mask {key!r}") from exc
        if not 0 <= mask < (1 << space.dim):
            raise ParseError(f"blade mask {mask} out of range for dim {space.dim}")
        terms[mask] = _scalar(space.field, val)
    return CliffordElem.make(space, terms)


def emit_element(elem: CliffordElem) -> dict:
    F = elem.space.field
    return {str(m): F.fmt(c) for m, c in elem.terms}


def parse_poly(obj, field: Field) -> Poly:
    if not isinstance(obj, list):
        raise ParseError("polynomial JSON must be a coefficient list, ascending")
    return Poly.make([_scalar(field, c) for c in obj], field)


def emit_poly(p: Poly) -> list:
    return [p.field.fmt(c) for c in p.coeffs]


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read JSON from {path}: {exc}") from exc
