"""JSON spec files for fields, codes, GMP codes and QT codes.

Formats::

    field   {"p": 3, "k": 2, "modulus": [2, 2, 1]}  or  {"preset": "paper-F9"}
    code    {"gen": "<matrix>"}
            {"constacyclic": {"m": 7, "lambda": "1", "g": "1+x+x^2+x^4"}}
    gmp     {"field": .., "m": .., "T": "<matrix>" | {"t_lambda": "<elem>"},
             "codes": [<code>, ..], "mats": ["<matrix>", ..]}
    qt      {"field": .., "m": .., "lambda": "<elem>", "ell": .., "gpm": [["<poly>", ..], ..]}

Matrix values are either literals (``"0,1;1,a^2"``) or nested lists of
element strings/ints.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from gmpkit.code import LinearCode
from gmpkit.field import GF, FieldError, field_from_spec
from gmpkit.gmp import GmpSpec
from gmpkit.matrix import Matrix, ShapeError
from gmpkit.qt import QtCode, match_t_lambda, t_lambda
from gmpkit.ring import Poly, PolyError, RingSpec


class SpecError(ValueError):
    """Malformed spec file; the message names the offending field."""


def load_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"{path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise SpecError(f"{path}: top level must be a JSON object")
    return obj


def _require(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise SpecError(f"{where}: missing field {key!r}")
    return obj[key]


def parse_field(obj: Any, where: str = "field") -> GF:
    try:
        return field_from_spec(obj)
    except (FieldError, TypeError, ValueError) as exc:
        raise SpecError(f"{where}: {exc}") from None


def parse_matrix(field: GF, value: Any, where: str) -> Matrix:
    try:
        if isinstance(value, str):
            return Matrix.parse(field, value)
        if isinstance(value, list):
            return Matrix.from_entries(field, value)
    except (FieldError, ShapeError) as exc:
        raise SpecError(f"{where}: {exc}") from None
    raise SpecError(f"{where}: expected a matrix literal or list of rows")


def parse_poly(field: GF, value: Any, where: str) -> Poly:
    try:
        if isinstance(value, int):
            return Poly.of(field, [value])
        return Poly.parse(field, value)
    except (FieldError, PolyError) as exc:
        raise SpecError(f"{where}: {exc}") from None


def parse_elem(field: GF, value: Any, where: str) -> int:
    try:
        return field.code(value if isinstance(value, int) else str(value))
    except FieldError as exc:
        raise SpecError(f"{where}: {exc}") from None


def parse_code(field: GF, frag: Any, where: str = "code") -> LinearCode:
    if not isinstance(frag, dict):
        raise SpecError(f"{where}: code spec must be an object")
    if "gen" in frag:
        gen = parse_matrix(field, frag["gen"], f"{where}.gen")
        try:
            return LinearCode(gen)
        except ShapeError as exc:
            raise SpecError(f"{where}: {exc}") from None
    if "constacyclic" in frag:
        cc = frag["constacyclic"]
        w = f"{where}.constacyclic"
        if not isinstance(cc, dict):
            raise SpecError(f"{w}: expected an object")
        m = int(_require(cc, "m", w))
        lam = parse_elem(field, cc.get("lambda", 1), f"{w}.lambda")
        try:
            ring = RingSpec(field, m, lam)
        except PolyError as exc:
            raise SpecError(f"{w}: {exc}") from None
        g = parse_poly(field, _require(cc, "g", w), f"{w}.g")
        try:
            return LinearCode.constacyclic(ring, g, allow_zero=bool(cc.get("allow_zero", False)))
        except ValueError as exc:
            raise SpecError(f"{w}: {exc}") from None
    raise SpecError(f"{where}: expected 'gen' or 'constacyclic'")


def code_to_json(code: LinearCode) -> dict:
    if code.generator_poly is not None and code.ring is not None:
        ring = code.ring
        return {
            "constacyclic": {
                "m": ring.m,
                "lambda": ring.field.format(ring.lam),
                "g": str(code.generator_poly),
            }
        }
    return {"gen": code.gen.to_literal()}


def parse_gmp_spec(obj: dict, where: str = "gmp") -> GmpSpec:
    field = parse_field(_require(obj, "field", where), f"{where}.field")
    T_val = _require(obj, "T", where)
    if isinstance(T_val, dict) and "t_lambda" in T_val:
        m = int(_require(obj, "m", where))
        lam = parse_elem(field, T_val["t_lambda"], f"{where}.T.t_lambda")
        try:
            T = t_lambda(field, m, lam)
        except ValueError as exc:
            raise SpecError(f"{where}.T: {exc}") from None
    else:
        T = parse_matrix(field, T_val, f"{where}.T")
    if "m" in obj and int(obj["m"]) != T.rows:
        raise SpecError(f"{where}.T: has {T.rows} rows but m={obj['m']}")
    codes_val = _require(obj, "codes", where)
    if not isinstance(codes_val, list) or not codes_val:
        raise SpecError(f"{where}.codes: need a non-empty list of code specs")
    codes = [parse_code(field, c, f"{where}.codes[{i}]") for i, c in enumerate(codes_val)]
    mats_val = _require(obj, "mats", where)
    if not isinstance(mats_val, list) or not mats_val:
        raise SpecError(f"{where}.mats: need a non-empty list of matrices")
    mats = [parse_matrix(field, a, f"{where}.mats[{k}]") for k, a in enumerate(mats_val)]
    try:
        return GmpSpec(T, codes, mats)
    except (ShapeError, FieldError) as exc:
        raise SpecError(f"{where}: {exc}") from None


def gmp_spec_to_json(spec: GmpSpec) -> dict:
    field = spec.field
    lam = match_t_lambda(spec.T)
    T: Any = {"t_lambda": field.format(lam)} if lam is not None else spec.T.to_literal()
    return {
        "field": field.spec(),
        "m": spec.m,
        "T": T,
        "codes": [code_to_json(c) for c in spec.codes],
        "mats": [a.to_literal() for a in spec.mats],
    }


def parse_qt_spec(obj: dict, where: str = "qt") -> QtCode:
    field = parse_field(_require(obj, "field", where), f"{where}.field")
    m = int(_require(obj, "m", where))
    lam = parse_elem(field, obj.get("lambda", 1), f"{where}.lambda")
    try:
        ring = RingSpec(field, m, lam)
    except PolyError as exc:
        raise SpecError(f"{where}: {exc}") from None
    rows = _require(obj, "gpm", where)
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SpecError(f"{where}.gpm: expected a non-empty list of rows")
    gpm = [
        [ring(parse_poly(field, e, f"{where}.gpm[{i}][{j}]")) for j, e in enumerate(row)]
        for i, row in enumerate(rows)
    ]
    try:
        code = QtCode(ring, gpm)
    except (ShapeError, FieldError) as exc:
        raise SpecError(f"{where}.gpm: {exc}") from None
    if "ell" in obj and int(obj["ell"]) != code.ell:
        raise SpecError(f"{where}.gpm: rows have {code.ell} entries but ell={obj['ell']}")
    return code


def qt_spec_to_json(code: QtCode) -> dict:
    field = code.field
    return {
        "field": field.spec(),
        "m": code.m,
        "lambda": field.format(code.ring.lam),
        "ell": code.ell,
        "gpm": code.to_strings(),
    }
