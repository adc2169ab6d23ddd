"""Serialization (JSON/CSV with exact fractions), the equation file format,
and atomic writes.

Exact scalars travel as decimal-free numerator/denominator strings; float
scalars as decimal strings.  Every JSON document carries schema_version.
Files are written to a temporary sibling and renamed, so failures leave no
partial outputs.
"""

from __future__ import annotations

import csv
import io as _io
import json
import os
from fractions import Fraction

from .bipoly import BiPoly
from .equation import EquationCoeffs
from .linalg import Mat, PolyVec
from .qcalc import QParam
from .scalars import QQ

SCHEMA_VERSION = 1


class EquationParseError(ValueError):
    pass


def frac_str(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def scalar_json(v, exact: bool):
    if exact:
        v = Fraction(v)
        return {"num": str(v.numerator), "den": str(v.denominator)}
    return {"value": mp_str(v)}


def mp_str(v) -> str:
    import mpmath

    return mpmath.nstr(v, 40)


def poly_to_json(p: BiPoly) -> list:
    out = []
    for (i, j), c in sorted(p.coeffs.items()):
        rec = {"i": i, "j": j}
        rec.update(scalar_json(c, p.field.exact))
        out.append(rec)
    return out


def poly_from_json(records, field=QQ) -> BiPoly:
    coeffs = {}
    for rec in records:
        if "num" in rec:
            coeffs[(rec["i"], rec["j"])] = Fraction(int(rec["num"]), int(rec["den"]))
        else:
            coeffs[(rec["i"], rec["j"])] = field.of(rec["value"])
    return BiPoly(coeffs, field)


def mat_to_json(m: Mat) -> list:
    if m.field.exact:
        return [[frac_str(v) for v in row] for row in m.rows]
    return [[mp_str(v) for v in row] for row in m.rows]


def polyvec_to_json(v: PolyVec) -> list:
    return [poly_to_json(p) for p in v.entries]


def document(kind: str, payload: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **payload}


def write_json_atomic(path: str, obj) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")
    os.replace(tmp, path)


def _json_default(v):
    if isinstance(v, Fraction):
        return frac_str(v)
    if isinstance(v, tuple):
        return list(v)
    return str(v)


def write_csv_atomic(path: str, header, rows) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    os.replace(tmp, path)


def csv_text(header, rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# equation file format (structured key = value text)
# ---------------------------------------------------------------------------

_POLY_KEYS = ("c11", "c22", "a12a", "a12d", "b1", "b2")


def parse_poly_terms(text: str) -> BiPoly:
    """Polynomial as whitespace-separated 'i,j:coeff' items with exact
    fraction coefficients, e.g. '2,0:1/2 0,0:-3'."""
    coeffs = {}
    for item in text.split():
        try:
            mono, val = item.split(":")
            i_s, j_s = mono.split(",")
            key = (int(i_s), int(j_s))
        except ValueError:
            raise EquationParseError(f"bad polynomial term {item!r}") from None
        if key in coeffs:
            raise EquationParseError(f"duplicate exponent pair in {item!r}")
        try:
            coeffs[key] = Fraction(val)
        except (ValueError, ZeroDivisionError):
            raise EquationParseError(f"bad coefficient in {item!r}") from None
    return BiPoly(coeffs, QQ)


def poly_terms_str(p: BiPoly) -> str:
    return " ".join(f"{i},{j}:{frac_str(c)}" for (i, j), c in sorted(p.coeffs.items()))


def parse_equation_text(text: str) -> EquationCoeffs:
    """Parse the key-value equation format; either the six polynomials or a
    named preset with its parameters."""
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise EquationParseError(f"line {lineno}: expected 'key = value'")
        key, val = (part.strip() for part in line.split("=", 1))
        if key in fields:
            raise EquationParseError(f"line {lineno}: duplicate key {key!r}")
        fields[key.lower()] = val

    if "q" not in fields:
        raise EquationParseError("missing q")
    try:
        qp = QParam(Fraction(fields["q"]))
    except (ValueError, ZeroDivisionError) as exc:
        raise EquationParseError(f"bad q: {exc}") from None

    preset = fields.get("preset")
    if preset is not None:
        if preset != "big-q-jacobi":
            raise EquationParseError(f"unknown preset {preset!r}")
        from .bigqjacobi import BigQJacobiParams, preset_equation

        try:
            params = BigQJacobiParams(*(Fraction(fields[k]) for k in "abcd"), qp)
        except KeyError as exc:
            raise EquationParseError(f"preset needs parameter {exc}") from None
        except (ValueError, ZeroDivisionError) as exc:
            raise EquationParseError(str(exc)) from None
        return preset_equation(params)

    missing = [k for k in _POLY_KEYS if k not in fields]
    if missing:
        raise EquationParseError(f"missing polynomial keys: {', '.join(missing)}")
    polys = {k: parse_poly_terms(fields[k]) for k in _POLY_KEYS}
    return EquationCoeffs(qp, *(polys[k] for k in _POLY_KEYS))


def parse_equation_file(path: str) -> EquationCoeffs:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_equation_text(fh.read())


def equation_to_text(E: EquationCoeffs) -> str:
    lines = [f"q = {frac_str(E.qp.q)}"]
    for key, p in zip(_POLY_KEYS, E.polys()):
        lines.append(f"{key} = {poly_terms_str(p)}")
    return "\n".join(lines) + "\n"
