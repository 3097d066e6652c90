"""JSON encoding of polytopes, fans, lattices and scalings.

Rationals travel as canonical ``"p/q"`` strings (``"p"`` for integers);
JSON integers are accepted on input, floats are rejected.  Decoders raise
:class:`MalformedInput` naming the offending path, e.g. ``$.rays[2][0]``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import MalformedInput
from .kernel import format_rat


def rat_to_json(x) -> str:
    return format_rat(x)


def vec_to_json(v) -> list:
    return [format_rat(x) for x in v]


def mat_to_json(rows) -> list:
    return [vec_to_json(r) for r in rows]


def rat_from_json(x: Any, path: str = "$") -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise MalformedInput(path, f"expected a rational string or integer, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(path, f"not a rational: {x!r}") from None


def vec_from_json(v: Any, path: str = "$", length: int = None) -> tuple:
    if not isinstance(v, list):
        raise MalformedInput(path, "expected a list")
    if length is not None and len(v) != length:
        raise MalformedInput(path, f"expected {length} entries, got {len(v)}")
    return tuple(rat_from_json(x, f"{path}[{i}]") for i, x in enumerate(v))


def mat_from_json(rows: Any, path: str = "$") -> tuple:
    if not isinstance(rows, list) or not rows:
        raise MalformedInput(path, "expected a non-empty list of rows")
    first = vec_from_json(rows[0], f"{path}[0]")
    return (first,) + tuple(vec_from_json(r, f"{path}[{i}]", len(first))
                            for i, r in enumerate(rows[1:], 1))


def _field(obj: Any, key: str, path: str):
    if not isinstance(obj, dict):
        raise MalformedInput(path, "expected an object")
    if key not in obj:
        raise MalformedInput(f"{path}.{key}", "missing")
    return obj[key]


def polytope_from_json(obj: Any, path: str = "$"):
    from .polytope import hull
    verts = mat_from_json(_field(obj, "vertices", path), f"{path}.vertices")
    return hull(verts)


def fan_from_json(obj: Any, path: str = "$"):
    """``{"apex": [...], "rays": [...], "cones": [[ray ids], ...]}``; apex optional."""
    from .fan import Fan
    rays = mat_from_json(_field(obj, "rays", path), f"{path}.rays")
    d = len(rays[0])
    apex = None
    if "apex" in obj:
        apex = vec_from_json(obj["apex"], f"{path}.apex", d)
    cones = _field(obj, "cones", path)
    if not isinstance(cones, list) or not cones:
        raise MalformedInput(f"{path}.cones", "expected a non-empty list")
    cells = []
    for i, c in enumerate(cones):
        p = f"{path}.cones[{i}]"
        if not isinstance(c, list) or not c:
            raise MalformedInput(p, "expected a non-empty list of ray indices")
        for j, r in enumerate(c):
            if isinstance(r, bool) or not isinstance(r, int) or not 0 <= r < len(rays):
                raise MalformedInput(f"{p}[{j}]", f"not a ray index: {r!r}")
        cells.append(c)
    return Fan(rays, cells, apex)


def lattice_from_json(obj: Any, path: str = "$"):
    from .parallelohedra import Lattice
    if isinstance(obj, dict) and "basis" in obj:
        return Lattice(basis=mat_from_json(obj["basis"], f"{path}.basis"))
    if isinstance(obj, dict) and "gram" in obj:
        return Lattice(gram=mat_from_json(obj["gram"], f"{path}.gram"))
    raise MalformedInput(path, "expected an object with \"basis\" or \"gram\"")


def scaling_from_json(obj: Any, F, path: str = "$"):
    """``{facet id: {"m": [...], "t": "p/q"}}`` checked against the fan's normals."""
    from .scaling import WeightedScaling
    if not isinstance(obj, dict):
        raise MalformedInput(path, "expected an object")
    normals, weights = {}, {}
    for key, entry in obj.items():
        p = f"{path}.{key}"
        try:
            h = int(key)
        except ValueError:
            raise MalformedInput(p, "facet id must be an integer") from None
        if h not in F.facet_normals:
            raise MalformedInput(p, f"fan has no facet {h}")
        m = vec_from_json(_field(entry, "m", p), f"{p}.m", F.dim)
        if m != F.facet_normals[h]:
            raise MalformedInput(f"{p}.m", "does not match the fan's oriented facet normal")
        t = rat_from_json(_field(entry, "t", p), f"{p}.t")
        if t <= 0:
            raise MalformedInput(f"{p}.t", "weight must be positive")
        normals[h], weights[h] = m, t
    return WeightedScaling(normals, weights)


def dumps(obj: Any, pretty: bool = False) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, trailing newline."""
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput("$", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
