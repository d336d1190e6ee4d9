"""JSON interchange: polytopes, exact scalars, reports.

Polytope files look like ``{"dim": 2, "vertices": [["1", "0"], ["-1/2", "3"]]}``;
coordinates may also be integers or ``[num, den]`` pairs.  Every rational is
written back as a ``"p/q"`` string.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from pathlib import Path

from .bodies import named
from .exact import PiScaled, as_fraction, fraction_str
from .polytope import VPolytope, hull


def polytope_to_json(p: VPolytope) -> dict:
    return {"dim": p.ambient_dim, "vertices": [[fraction_str(x) for x in v] for v in p.vertices]}


def polytope_from_json(doc: dict) -> VPolytope:
    try:
        dim = int(doc["dim"])
        verts = [[as_fraction(x) for x in v] for v in doc["vertices"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed polytope document: {exc}") from None
    if not verts or any(len(v) != dim for v in verts):
        raise ValueError("vertex coordinates do not match 'dim'")
    return hull(verts)


def load_body(spec: str) -> VPolytope:
    """``@hexagon`` / ``@cube:3`` style names, or a path to a polytope JSON file."""
    if spec.startswith("@"):
        return named(spec)
    try:
        doc = json.loads(Path(spec).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{spec}: not valid JSON ({exc})") from None
    return polytope_from_json(doc)


def _decimal_bounds(lo: Fraction, hi: Fraction, digits: int = 20) -> list[str]:
    scale = 10 ** digits

    def fmt(k: int) -> str:
        sign = "-" if k < 0 else ""
        q, r = divmod(abs(k), scale)
        return f"{sign}{q}.{r:0{digits}d}"

    return [fmt(math.floor(lo * scale)), fmt(math.ceil(hi * scale))]


def scalar_json(x):
    """Exact scalar as ``"p/q"``; pi multiples as coefficient, power and an interval."""
    if isinstance(x, PiScaled):
        if x.is_rational():
            return fraction_str(x.coeff)
        return {"coeff": fraction_str(x.coeff), "pi_power": x.pi_power,
                "interval": _decimal_bounds(*x.enclosure(96))}
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return fraction_str(x)
    return x


def to_jsonable(obj):
    if isinstance(obj, (Fraction, PiScaled)):
        return scalar_json(obj)
    if isinstance(obj, VPolytope):
        return polytope_to_json(obj)
    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: to_jsonable(v) for k, v in asdict(obj).items()}
    if isinstance(obj, dict):
        return {(k if isinstance(k, str) else str(k)): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def report_json(r) -> dict:
    """A :class:`~latnum.bounds.BoundReport` as plain JSON data."""
    return {"name": r.name, "lhs": scalar_json(r.lhs), "rhs": scalar_json(r.rhs),
            "holds": r.holds, "equality": r.equality,
            "slack": None if r.slack is None else scalar_json(r.slack),
            "details": to_jsonable(r.details)}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
