"""JSON input: arrangements, weights and local-system data."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .arrangement import Arrangement, ArrangementError
from .rings import RingError, RingSpec, parse_ring_spec


class SchemaError(ValueError):
    pass


@dataclass
class ParsedInput:
    arrangement: Arrangement
    ring: RingSpec | None = None
    lam: list | None = None
    q_sqrt: list | None = None
    seed: int | None = None


def parse_rational(x: Any, where: str) -> Fraction:
    if isinstance(x, bool):
        raise SchemaError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"{where}: invalid rational {x!r}") from None
    raise SchemaError(f"{where}: expected an integer or a \"p/q\" string, got {x!r}")


def arrangement_from_obj(obj: Any) -> Arrangement:
    if not isinstance(obj, dict):
        raise SchemaError("top level: expected an object")
    if "dim" not in obj:
        raise SchemaError("missing field 'dim'")
    if "hyperplanes" not in obj:
        raise SchemaError("missing field 'hyperplanes'")
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise SchemaError(f"field 'dim': expected a non-negative integer, got {dim!r}")
    hs = obj["hyperplanes"]
    if not isinstance(hs, list):
        raise SchemaError("field 'hyperplanes': expected a list")
    rows = []
    for j, row in enumerate(hs):
        where = f"hyperplanes[{j}]"
        if not isinstance(row, list) or len(row) != dim + 1:
            raise SchemaError(f"{where}: expected a list of {dim + 1} entries [a_1..a_{dim}, b]")
        rows.append([parse_rational(x, f"{where}[{i}]") for i, x in enumerate(row)])
    try:
        return Arrangement.from_equations(dim, rows)
    except ArrangementError as e:
        raise SchemaError(str(e)) from None


def split_values(text: str) -> list:
    """``"1,2,3"`` or a JSON array (for cyclotomic coefficient lists)."""
    text = text.strip()
    if text.startswith("["):
        try:
            vals = json.loads(text)
        except json.JSONDecodeError as e:
            raise SchemaError(f"malformed JSON list {text!r}: {e.msg}") from None
        if not isinstance(vals, list):
            raise SchemaError(f"expected a list, got {text!r}")
        return vals
    return [v.strip() for v in text.split(",") if v.strip()]


def coerce_values(ring: RingSpec, values: list, what: str) -> list:
    out = []
    for j, v in enumerate(values):
        try:
            out.append(ring(v if not isinstance(v, list) else [parse_rational(c, f"{what}[{j}]") for c in v]))
        except (RingError, ValueError, TypeError) as e:
            raise SchemaError(f"{what}[{j}]: {e}") from None
    return out


def parse_obj(obj: Any) -> ParsedInput:
    A = arrangement_from_obj(obj)
    ring = None
    if "ring" in obj:
        try:
            ring = parse_ring_spec(str(obj["ring"]))
        except RingError as e:
            raise SchemaError(f"field 'ring': {e}") from None
    out = ParsedInput(A, ring)
    for key, attr in (("lambda", "lam"), ("q_sqrt", "q_sqrt")):
        if key in obj:
            vals = obj[key]
            if not isinstance(vals, list) or len(vals) != A.n:
                raise SchemaError(f"field '{key}': expected a list of {A.n} entries")
            if ring is None:
                raise SchemaError(f"field '{key}' requires field 'ring'")
            setattr(out, attr, coerce_values(ring, vals, key))
    if "seed" in obj:
        if not isinstance(obj["seed"], int):
            raise SchemaError("field 'seed': expected an integer")
        out.seed = obj["seed"]
    return out


def load_json(path: str | Path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"line {e.lineno} column {e.colno}: {e.msg}") from None


def parse_arrangement_file(path: str | Path) -> ParsedInput:
    try:
        return parse_obj(load_json(path))
    except SchemaError as e:
        raise SchemaError(f"{path}: {e}") from None


def arrangement_to_obj(A: Arrangement) -> dict:
    return {"dim": A.dim, "hyperplanes": [[str(x) if isinstance(x, Fraction) else x for x in r] for r in A.to_rows()]}


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=True, default=str)
