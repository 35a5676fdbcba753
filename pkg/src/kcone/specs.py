"""JSON descriptions of spaces.

Every top-level document carries ``"schema": 1``.  Unknown fields are
rejected.  Lengths and angles are JSON numbers or strings such as ``"pi"``,
``"pi/2"`` or ``"3*pi/4"``.

Kinds: ``circle``, ``interval``, ``sphere``, ``suspension``, ``finite_net``
(direction spaces); ``cone``, ``glued``, ``polygon``, ``round_sphere``.
"""

from __future__ import annotations

import json
import math
import re
from typing import Any

from .cone import ConeSpace
from .dirspace import Circle, DirectionSpace, FiniteNet, Interval, Sphere, Suspension
from .errors import SchemaError
from .glue import (
    AntipodalCircle,
    AntipodalSphere,
    FinitePairing,
    GluedSpace,
    Identity,
    IntervalReflection,
    Involution,
    PolygonGluing,
    ReflectionCircle,
    ReflectionSphere,
)
from .comparison import RoundSphere

__all__ = ["SCHEMA_VERSION", "parse_number", "load_document", "space_from_spec", "sigma_from_spec", "phi_from_spec", "to_document"]

SCHEMA_VERSION = 1

_PI = re.compile(r"^\s*(?:(\d+(?:\.\d*)?)\s*\*?\s*)?pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


def parse_number(value: Any, where: str = "$") -> float:
    """A JSON number, or a multiple of pi written as ``"a*pi/b"``."""
    if isinstance(value, bool):
        raise SchemaError(f"{where}: expected a number, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        m = _PI.match(value)
        if m:
            a = float(m.group(1)) if m.group(1) else 1.0
            b = float(m.group(2)) if m.group(2) else 1.0
            return a * math.pi / b
        try:
            return float(value)
        except ValueError:
            pass
    raise SchemaError(f"{where}: expected a number or a multiple of pi, got {value!r}")


def load_document(text: str) -> dict:
    """Parse JSON text, reporting the line and column of syntax errors."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SchemaError("$: top-level JSON value must be an object")
    if "schema" not in doc:
        raise SchemaError('$: missing required field "schema"')
    if doc["schema"] != SCHEMA_VERSION:
        raise SchemaError(f"$.schema: unsupported schema version {doc['schema']!r} (expected {SCHEMA_VERSION})")
    return {k: v for k, v in doc.items() if k != "schema"}


def _fields(obj: Any, where: str, required: tuple, optional: tuple = ()) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    allowed = set(required) | set(optional) | {"kind"}
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise SchemaError(f"{where}: unknown field(s) {', '.join(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise SchemaError(f"{where}: missing field(s) {', '.join(missing)}")
    return obj


def _kind(obj: Any, where: str) -> str:
    if not isinstance(obj, dict) or not isinstance(obj.get("kind"), str):
        raise SchemaError(f'{where}: expected an object with a string "kind"')
    return obj["kind"]


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: expected an integer")
    return value


def sigma_from_spec(obj: Any, where: str = "$") -> DirectionSpace:
    kind = _kind(obj, where)
    if kind == "circle":
        _fields(obj, where, (), ("length",))
        return Circle(parse_number(obj.get("length", 2 * math.pi), f"{where}.length"))
    if kind == "interval":
        _fields(obj, where, ("theta",))
        return Interval(parse_number(obj["theta"], f"{where}.theta"))
    if kind == "sphere":
        _fields(obj, where, ("dim",))
        return Sphere(_int(obj["dim"], f"{where}.dim"))
    if kind == "suspension":
        _fields(obj, where, ("inner",))
        return Suspension(sigma_from_spec(obj["inner"], f"{where}.inner"))
    if kind == "finite_net":
        _fields(obj, where, ("matrix",))
        m = obj["matrix"]
        if not isinstance(m, list) or not all(isinstance(row, list) for row in m):
            raise SchemaError(f"{where}.matrix: expected a list of rows")
        rows = [[parse_number(x, f"{where}.matrix[{i}][{j}]") for j, x in enumerate(row)] for i, row in enumerate(m)]
        return FiniteNet(rows)
    raise SchemaError(f"{where}.kind: unknown direction-space kind {kind!r}")


def phi_from_spec(obj: Any, where: str = "$") -> Involution:
    kind = _kind(obj, where)
    simple = {
        "identity": Identity,
        "antipodal_circle": AntipodalCircle,
        "antipodal_sphere": AntipodalSphere,
        "interval_reflection": IntervalReflection,
    }
    if kind in simple:
        _fields(obj, where, ())
        return simple[kind]()
    if kind == "reflection_circle":
        _fields(obj, where, (), ("axis",))
        return ReflectionCircle(parse_number(obj.get("axis", 0.0), f"{where}.axis"))
    if kind == "reflection_sphere":
        _fields(obj, where, ("normal",))
        n = obj["normal"]
        if not isinstance(n, list):
            raise SchemaError(f"{where}.normal: expected a list of numbers")
        return ReflectionSphere([parse_number(x, f"{where}.normal[{i}]") for i, x in enumerate(n)])
    if kind == "finite_pairing":
        _fields(obj, where, ("pairs",))
        pairs = obj["pairs"]
        if not isinstance(pairs, list):
            raise SchemaError(f"{where}.pairs: expected a list of index pairs")
        out = []
        for i, p in enumerate(pairs):
            if not isinstance(p, list) or len(p) != 2:
                raise SchemaError(f"{where}.pairs[{i}]: expected a pair of indices")
            out.append((_int(p[0], f"{where}.pairs[{i}][0]"), _int(p[1], f"{where}.pairs[{i}][1]")))
        return FinitePairing(out)
    raise SchemaError(f"{where}.kind: unknown involution kind {kind!r}")


def _cone(obj: Any, where: str) -> ConeSpace:
    _fields(obj, where, ("kappa", "R", "sigma"))
    return ConeSpace(
        sigma_from_spec(obj["sigma"], f"{where}.sigma"),
        parse_number(obj["kappa"], f"{where}.kappa"),
        parse_number(obj["R"], f"{where}.R"),
    )


def space_from_spec(obj: Any, where: str = "$"):
    """Build a cone, glued cone, polygon gluing, round sphere or direction space."""
    kind = _kind(obj, where)
    if kind == "cone":
        return _cone(obj, where)
    if kind == "glued":
        _fields(obj, where, ("cone", "phi"), ("non_admissible",))
        flag = obj.get("non_admissible", False)
        if not isinstance(flag, bool):
            raise SchemaError(f"{where}.non_admissible: expected a boolean")
        cone = _cone(obj["cone"], f"{where}.cone")
        return GluedSpace(cone, phi_from_spec(obj["phi"], f"{where}.phi"), non_admissible=flag)
    if kind == "polygon":
        _fields(obj, where, ("vertices",))
        v = obj["vertices"]
        if not isinstance(v, list) or not all(isinstance(p, list) and len(p) == 2 for p in v):
            raise SchemaError(f"{where}.vertices: expected a list of [x, y] pairs")
        return PolygonGluing([[parse_number(c, f"{where}.vertices[{i}]") for c in p] for i, p in enumerate(v)])
    if kind == "round_sphere":
        _fields(obj, where, (), ("rho", "dim"))
        return RoundSphere(parse_number(obj.get("rho", 1.0), f"{where}.rho"), _int(obj.get("dim", 2), f"{where}.dim"))
    return sigma_from_spec(obj, where)


def to_document(space) -> dict:
    """Inverse of :func:`space_from_spec` for the supported kinds."""
    if isinstance(space, GluedSpace):
        spec = {"kind": "glued", "cone": space.cone.to_spec(), "phi": space.phi.to_spec()}
        if space.non_admissible:
            spec["non_admissible"] = True
    else:
        spec = space.to_spec()
    return {"schema": SCHEMA_VERSION, **spec}
