"""JSON/CSV encodings.  Every rational is a string ``"p/q"`` (or ``"p"``)."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .exactgeom import InputError, format_rat, format_vec, vec
from .norm import PolytopalNorm
from .polytope import Face, Polytope
from .steiner import SteinerTreeResult


def ball_to_json(P: Polytope, facets: bool = False) -> dict:
    out: dict[str, Any] = {"dim": P.dim, "vertices": [format_vec(v) for v in P.vertices]}
    if facets:
        out["facets"] = [format_vec(u) for u in P.facets]
    return out


def ball_from_json(obj: Any) -> Polytope:
    """Only the vertices are read; facets in the payload are ignored and recomputed."""
    if isinstance(obj, list):
        obj = {"vertices": obj}
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise InputError("ball JSON needs a 'vertices' list")
    try:
        pts = [vec(p) for p in obj["vertices"]]
    except TypeError as exc:
        raise InputError("malformed vertex list") from exc
    P = Polytope.from_vertices(pts)
    if "dim" in obj and obj["dim"] != P.dim:
        raise InputError(f"declared dim {obj['dim']} but vertices have dimension {P.dim}")
    return P


def norm_from_json(obj: Any) -> PolytopalNorm:
    return PolytopalNorm(ball_from_json(obj))


def points_from_json(obj: Any) -> list[tuple]:
    if isinstance(obj, dict):
        obj = obj.get("points", obj.get("terminals"))
    if not isinstance(obj, list):
        raise InputError("points JSON must be a list of vectors")
    try:
        return [vec(p) for p in obj]
    except TypeError as exc:
        raise InputError("malformed point list") from exc


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def face_to_json(F: Face) -> dict:
    return {
        "dim": F.dim,
        "vertices": [format_vec(v) for v in F.vertices],
        "functional": format_vec(F.functional),
    }


def tree_to_json(r: SteinerTreeResult) -> dict:
    return {
        "level": r.level.value,
        "length": format_rat(r.length),
        "terminals": [format_vec(p) for p in r.terminals],
        "steinerPositions": [format_vec(p) for p in r.steiner_positions],
        "edges": [list(e) for e in r.edges],
        "topologiesChecked": r.topologies_checked,
    }


def tree_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    fields = ["name", "terminals", "steinerPoints", "level", "length"]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: row.get(k, "") for k in fields})
    return buf.getvalue()


def as_float(obj: Any) -> Any:
    """Display copy of a payload with rational strings rendered as decimals."""
    if isinstance(obj, dict):
        return {k: as_float(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [as_float(v) for v in obj]
    if isinstance(obj, str):
        try:
            q = Fraction(obj)
        except (ValueError, ZeroDivisionError):
            return obj
        return float(q)
    return obj
