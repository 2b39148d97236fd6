"""JSON/CSV encodings. Rationals are always decimal strings, never floats."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .cyclo import CycloNumber


def rational_to_json(q) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rational_from_json(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def cyclo_to_json(x: CycloNumber) -> dict:
    return {"conductor": x.m, "coeffs": [rational_to_json(c) for c in x.coeffs]}


def cyclo_from_json(d: dict) -> CycloNumber:
    return CycloNumber(d["conductor"], [rational_from_json(c) for c in d["coeffs"]])


def scalar_to_json(x):
    if isinstance(x, CycloNumber):
        if x.is_rational():
            return rational_to_json(x.to_rational())
        return cyclo_to_json(x)
    return rational_to_json(x)


def scalar_to_text(x) -> str:
    return str(x)


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def rows_to_csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row.get(k, "") for k in fields})
    return buf.getvalue()
