"""UTF-8 JSON interchange for every entity, plus the file sniffer the CLI uses.

Formats (field names follow the type definitions):

  space        {"points": [...], "minOpen": {"x": ["x", "y"]},
                "tails": {"t": {"attach": ["x"]}}}
  externology  {"L": [...], "D": [...]} — optionally with "space": {...}
  sequence     {"prefix": [<point>...], "threads":
                 [{"const": <point>} | {"walk": {"tail": "t", "a": 1, "b": 0}}],
                optional "universe": {"points": [...], "tails": [...]}}
  map          {"onPoints": {"x": <point>}, "onTails": {"t":
                 {"toTail": {"tail": "u", "a": 1, "b": 0}, "exceptions": {"3": <point>}}
                 | {"toConst": <point>, "exceptions": {...}}}}
  evset        {"finite": [...], "tails": {"t": {"eventual": true, "flips": [0, 2]}}}

A <point> is a plain string (finite point), {"id": "x"}, or
{"tail": "t", "index": 3}.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import EvSet, FinitePoint, PointRef, TailPoint, Universe, ev_set, make_universe
from .errors import ParseError, PresentationError
from .exteriority import ExtSpace, make_ext_space
from .maps import SpaceMap, TailToConst, TailToTail, make_map
from .sequences import ConstThread, Seq, WalkThread, make_seq
from .spaces import Space, validate_space


def point_to_json(p: PointRef) -> Any:
    if isinstance(p, FinitePoint):
        return p.id
    return {"tail": p.tail, "index": p.index}


def point_from_json(raw: Any, path: tuple = ()) -> PointRef:
    if isinstance(raw, str):
        return FinitePoint(raw)
    if isinstance(raw, dict):
        if "tail" in raw:
            if not isinstance(raw.get("index"), int):
                raise ParseError("tail point needs an integer index", path)
            return TailPoint(str(raw["tail"]), raw["index"])
        if "id" in raw:
            return FinitePoint(str(raw["id"]))
    raise ParseError(f"not a point reference: {raw!r}", path)


def space_to_json(space: Space) -> dict:
    return {
        "points": list(space.points),
        "minOpen": {x: list(u) for x, u in space.min_open},
        "tails": {t: {"attach": list(a)} for t, a in space.attach},
    }


def space_from_json(raw: Any, path: tuple = ()) -> Space:
    if not isinstance(raw, dict):
        raise ParseError("space must be an object", path)
    points = raw.get("points", [])
    min_open = raw.get("minOpen", {})
    tails_raw = raw.get("tails", {})
    if not isinstance(points, list):
        raise ParseError("points must be a list", path + ("points",))
    if not isinstance(min_open, dict):
        raise ParseError("minOpen must be an object", path + ("minOpen",))
    if not isinstance(tails_raw, dict):
        raise ParseError("tails must be an object", path + ("tails",))
    attach = {}
    for t, row in tails_raw.items():
        if not isinstance(row, dict) or not isinstance(row.get("attach", []), list):
            raise ParseError("tail entry needs an attach list", path + ("tails", t))
        attach[t] = row.get("attach", [])
    try:
        return validate_space(points, min_open, tails_raw.keys(), attach)
    except PresentationError as exc:
        raise ParseError(str(exc), path) from exc


def universe_to_json(uni: Universe) -> dict:
    return {"points": list(uni.points), "tails": list(uni.tails)}


def universe_from_json(raw: Any, path: tuple = ()) -> Universe:
    if not isinstance(raw, dict):
        raise ParseError("universe must be an object", path)
    try:
        return make_universe(raw.get("points", []), raw.get("tails", []))
    except PresentationError as exc:
        raise ParseError(str(exc), path) from exc


def evset_to_json(s: EvSet) -> dict:
    return {
        "finite": list(s.finite),
        "tails": {t: {"eventual": ev, "flips": list(fl)} for t, ev, fl in s.rows},
    }


def evset_from_json(raw: Any, universe: Universe, path: tuple = ()) -> EvSet:
    if not isinstance(raw, dict):
        raise ParseError("evset must be an object", path)
    tails = raw.get("tails", {})
    if not isinstance(tails, dict):
        raise ParseError("tails must be an object", path + ("tails",))
    try:
        return ev_set(
            universe,
            raw.get("finite", []),
            {t: bool(row.get("eventual", False)) for t, row in tails.items()},
            {t: row.get("flips", []) for t, row in tails.items()},
        )
    except PresentationError as exc:
        raise ParseError(str(exc), path) from exc


def seq_to_json(s: Seq, with_universe: bool = True) -> dict:
    threads = []
    for th in s.threads:
        if isinstance(th, ConstThread):
            threads.append({"const": point_to_json(th.point)})
        else:
            threads.append({"walk": {"tail": th.tail, "a": th.a, "b": th.b}})
    out = {"prefix": [point_to_json(p) for p in s.prefix], "threads": threads}
    if with_universe:
        out["universe"] = universe_to_json(s.universe)
    return out


def seq_from_json(raw: Any, universe: Universe | None = None, path: tuple = ()) -> Seq:
    if not isinstance(raw, dict):
        raise ParseError("sequence must be an object", path)
    if universe is None:
        if "universe" not in raw:
            raise ParseError("sequence needs a universe (inline or from a space)", path)
        universe = universe_from_json(raw["universe"], path + ("universe",))
    prefix = [
        point_from_json(p, path + ("prefix", i)) for i, p in enumerate(raw.get("prefix", []))
    ]
    threads = []
    for i, th in enumerate(raw.get("threads", [])):
        tpath = path + ("threads", i)
        if not isinstance(th, dict):
            raise ParseError("thread must be an object", tpath)
        if "const" in th:
            threads.append(ConstThread(point_from_json(th["const"], tpath + ("const",))))
        elif "walk" in th:
            w = th["walk"]
            if not isinstance(w, dict):
                raise ParseError("walk must be an object", tpath + ("walk",))
            threads.append(
                WalkThread(str(w.get("tail")), int(w.get("a", 1)), int(w.get("b", 0)))
            )
        else:
            raise ParseError("thread must be const or walk", tpath)
    try:
        return make_seq(universe, prefix, threads)
    except PresentationError as exc:
        raise ParseError(str(exc), path) from exc


def map_to_json(f: SpaceMap) -> dict:
    tails = {}
    for t, img in f.on_tails:
        exc = {str(m): point_to_json(p) for m, p in img.exceptions}
        if isinstance(img, TailToTail):
            tails[t] = {"toTail": {"tail": img.tail, "a": img.a, "b": img.b}, "exceptions": exc}
        else:
            tails[t] = {"toConst": point_to_json(img.point), "exceptions": exc}
    return {
        "onPoints": {x: point_to_json(p) for x, p in f.on_points},
        "onTails": tails,
        "dom": space_to_json(f.dom),
        "cod": space_to_json(f.cod),
    }


def map_from_json(
    raw: Any, dom: Space | None = None, cod: Space | None = None, path: tuple = ()
) -> SpaceMap:
    if not isinstance(raw, dict):
        raise ParseError("map must be an object", path)
    if dom is None:
        if "dom" not in raw:
            raise ParseError("map needs a domain (inline or from a space file)", path)
        dom = space_from_json(raw["dom"], path + ("dom",))
    if cod is None:
        if "cod" not in raw:
            raise ParseError("map needs a codomain (inline or from a space file)", path)
        cod = space_from_json(raw["cod"], path + ("cod",))
    on_points = {
        x: point_from_json(p, path + ("onPoints", x))
        for x, p in raw.get("onPoints", {}).items()
    }
    on_tails = {}
    for t, img in raw.get("onTails", {}).items():
        tpath = path + ("onTails", t)
        if not isinstance(img, dict):
            raise ParseError("tail image must be an object", tpath)
        exc = []
        for m, p in img.get("exceptions", {}).items():
            try:
                idx = int(m)
            except ValueError as exc2:
                raise ParseError("exception keys are indices", tpath + ("exceptions", m)) from exc2
            exc.append((idx, point_from_json(p, tpath + ("exceptions", m))))
        if "toTail" in img:
            tt = img["toTail"]
            on_tails[t] = TailToTail(
                str(tt.get("tail")), int(tt.get("a", 1)), int(tt.get("b", 0)), tuple(exc)
            )
        elif "toConst" in img:
            on_tails[t] = TailToConst(
                point_from_json(img["toConst"], tpath + ("toConst",)), tuple(exc)
            )
        else:
            raise ParseError("tail image must be toTail or toConst", tpath)
    try:
        return make_map(dom, cod, on_points, on_tails)
    except PresentationError as exc3:
        raise ParseError(str(exc3), path) from exc3


def ext_to_json(e: ExtSpace) -> dict:
    return {"space": space_to_json(e.space), "L": list(e.ext.limits), "D": list(e.ext.tails)}


def ext_from_json(raw: Any, space: Space | None = None, path: tuple = ()) -> ExtSpace:
    if not isinstance(raw, dict):
        raise ParseError("externology must be an object", path)
    if space is None:
        if "space" not in raw:
            raise ParseError("externology needs a space (inline or from a space file)", path)
        space = space_from_json(raw["space"], path + ("space",))
    try:
        return make_ext_space(space, raw.get("L", []), raw.get("D", []))
    except PresentationError as exc:
        raise ParseError(str(exc), path) from exc


def entity_to_json(entity) -> dict:
    if isinstance(entity, Space):
        return space_to_json(entity)
    if isinstance(entity, ExtSpace):
        return ext_to_json(entity)
    if isinstance(entity, Seq):
        return seq_to_json(entity)
    if isinstance(entity, SpaceMap):
        return map_to_json(entity)
    if isinstance(entity, EvSet):
        return evset_to_json(entity)
    raise PresentationError(f"cannot serialize {type(entity).__name__}")


def parse_entity(path: str | Path):
    """Sniff and validate one entity file; raises ParseError with a field path."""
    p = Path(path)
    if not p.exists():
        raise ParseError(f"no such file: {p}")
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return entity_from_json(raw)


def entity_from_json(raw: Any):
    if not isinstance(raw, dict):
        raise ParseError("entity must be a JSON object")
    if "minOpen" in raw or ("points" in raw and "L" not in raw and "threads" not in raw):
        return space_from_json(raw)
    if "L" in raw or "D" in raw:
        return ext_from_json(raw)
    if "threads" in raw:
        return seq_from_json(raw)
    if "onPoints" in raw or "onTails" in raw:
        return map_from_json(raw)
    if "finite" in raw:
        raise ParseError("evsets are parsed against a space; use eval with a space file")
    raise ParseError("unrecognized entity shape")


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
