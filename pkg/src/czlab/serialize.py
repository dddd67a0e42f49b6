"""JSON and CSV formats.

Rationals travel as ``"p/q"`` strings so nothing passes through a float.
"""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .errors import ParseError, SchemaError
from .rotations import FixedPointTable, MarkedSpectrum, Rotation
from .spectral import (
    Angle,
    DecoratedEigenvalue,
    IndexSequence,
    JumpSequence,
    PathDescriptor,
    validate_descriptor,
)
from .torus import LiftedPath

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError as exc:
            raise SchemaError(f"zero denominator in {value!r}") from exc
    raise SchemaError(f"expected a rational as 'p/q' or an integer, got {value!r}")


def _int(obj: dict, key: str, default: Any = ...) -> int:
    if key not in obj:
        if default is ...:
            raise SchemaError(f"missing field {key!r}")
        return default
    value = obj[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"field {key!r} must be an integer, got {value!r}")
    return value


def _object(obj: Any, what: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{what} must be a JSON object")
    return obj


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# descriptors

def descriptor_to_json(d: PathDescriptor, horizon: int | None = None) -> dict:
    return {
        "loop": d.loop,
        "mult_minus_one": d.mult_minus_one,
        "hyperbolic_pairs": d.hyperbolic_pairs,
        "elliptic": [
            {
                "theta_num": e.theta.numerator,
                "theta_den": e.theta.denominator,
                "multiplicity": e.multiplicity,
                "signature": e.signature,
            }
            for e in d.elliptic
        ],
        "horizon": horizon if horizon is not None else d.horizon,
    }


def descriptor_from_json(obj: Any) -> PathDescriptor:
    """Parse and validate a descriptor for the horizon it declares.

    ``horizon`` may be null only when there are no elliptic entries.
    """
    obj = _object(obj, "descriptor")
    horizon = obj.get("horizon")
    if horizon is not None and (not isinstance(horizon, int) or isinstance(horizon, bool)):
        raise SchemaError(f"horizon must be an integer, got {horizon!r}")
    raw = obj.get("elliptic", [])
    if not isinstance(raw, list):
        raise SchemaError("elliptic must be a list")
    if raw and horizon is None:
        raise SchemaError("a descriptor with elliptic entries needs a horizon")
    entries = []
    for item in raw:
        item = _object(item, "elliptic entry")
        den = _int(item, "theta_den")
        if den <= 0:
            raise SchemaError("theta_den must be positive")
        theta = Fraction(_int(item, "theta_num"), den)
        entries.append(
            DecoratedEigenvalue(Angle(theta, horizon), _int(item, "multiplicity"), _int(item, "signature"))
        )
    d = PathDescriptor(
        _int(obj, "loop", 0), _int(obj, "mult_minus_one", 0), _int(obj, "hyperbolic_pairs", 0), tuple(entries)
    )
    return validate_descriptor(d, horizon) if horizon is not None else d


def load_descriptor(path: str | Path) -> PathDescriptor:
    return descriptor_from_json(load_json(path))


def load_pool(path: str | Path) -> list[PathDescriptor]:
    obj = load_json(path)
    if isinstance(obj, dict):
        obj = obj.get("pool")
    if not isinstance(obj, list):
        raise SchemaError("pool must be a list of descriptors (or {'pool': [...]})")
    return [descriptor_from_json(x) for x in obj]


# rotations and tables

def rotation_to_json(r: Rotation) -> dict:
    return {"n": r.n, "angles": [format_fraction(a) for a in r.angles], "horizon": r.horizon}


def rotation_from_json(obj: Any) -> dict:
    """Fields for :func:`make_rotation`: ``n``, raw angles and horizon."""
    obj = _object(obj, "rotation")
    angles = obj.get("angles")
    if not isinstance(angles, list):
        raise SchemaError("angles must be a list")
    return {"n": _int(obj, "n"), "raw_angles": [parse_fraction(a) for a in angles], "horizon": _int(obj, "horizon", 1)}


def table_to_json(t: FixedPointTable) -> dict:
    out: dict[str, Any] = {"n": t.n, "delta": [format_fraction(x) for x in t.delta]}
    if t.descriptors is not None:
        out["descriptors"] = [descriptor_to_json(d) for d in t.descriptors]
    return out


def table_from_json(obj: Any) -> FixedPointTable:
    obj = _object(obj, "table")
    delta = obj.get("delta")
    if not isinstance(delta, list):
        raise SchemaError("delta must be a list")
    descriptors = obj.get("descriptors")
    if descriptors is not None:
        if not isinstance(descriptors, list):
            raise SchemaError("descriptors must be a list")
        descriptors = tuple(descriptor_from_json(d) for d in descriptors)
    return FixedPointTable(_int(obj, "n"), tuple(parse_fraction(x) for x in delta), descriptors)


# paths

def path_from_json(obj: Any) -> LiftedPath:
    obj = _object(obj, "path")
    points = obj.get("points")
    if not isinstance(points, list) or not all(isinstance(p, list) for p in points):
        raise SchemaError("points must be a list of coordinate lists")
    try:
        return LiftedPath(tuple(tuple(parse_fraction(c) for c in p) for p in points))
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from exc


def path_to_json(path: LiftedPath) -> dict:
    return {"points": [[format_fraction(c) for c in p] for p in path.points]}


# CSV

def _csv(header: Iterable[str], rows: Iterable[Iterable[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def sequences_to_csv(mu: IndexSequence, jumps: JumpSequence) -> str:
    if len(mu) != len(jumps):
        raise ValueError("index and jump sequences differ in length")
    return _csv(("k", "mu", "jump"), ((k, m, j) for k, (m, j) in enumerate(zip(mu, jumps), start=1)))


def spectrum_to_csv(s: MarkedSpectrum) -> str:
    return _csv(("label", "index", "value"), ((l, i, format_fraction(v)) for l, i, v in s.rows()))


def jumps_from_csv(text: str) -> JumpSequence:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or "jump" not in reader.fieldnames or "k" not in reader.fieldnames:
        raise SchemaError("CSV needs a header with at least 'k' and 'jump'")
    values = []
    for expected, row in enumerate(reader, start=1):
        try:
            k, jump = int(row["k"]), int(row["jump"])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad CSV row {row}") from exc
        if k != expected:
            raise SchemaError(f"rows must be k = 1, 2, ...; got k = {k} at row {expected}")
        values.append(jump)
    return JumpSequence(tuple(values))
