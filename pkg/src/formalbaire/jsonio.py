"""JSON forms of sequences, points, operations, cover witnesses, maps and fans.

Only finite objects serialize: generated tails and generated sup-nodes are
API-only. Table-backed maps list values at canonical cell addresses, where a
default family is written at its representative index.
"""

from __future__ import annotations

from typing import Any

from .brouwer import BrouwerOp, LazySup, Leaf, Sup
from .errors import InvalidFan, SchemaError
from .fans import FanTree, make_fan
from .formal import CovWitness, FormalMap
from .seq import Cycle, FinSeq, Point, finseq


def seq_from_json(obj: Any) -> FinSeq:
    if not isinstance(obj, list):
        raise SchemaError(f"finite sequence must be an array, got {obj!r}")
    try:
        return finseq(obj)
    except ValueError as e:
        raise SchemaError(str(e)) from None


def point_from_json(obj: Any) -> Point:
    """``{"prefix": [...], "tail": "zeros" | {"cycle": [...]}}``; a bare array means prefix then zeros."""
    if isinstance(obj, list):
        return Point(seq_from_json(obj))
    if not isinstance(obj, dict) or "prefix" not in obj:
        raise SchemaError("point must be an object with a 'prefix'")
    prefix = seq_from_json(obj["prefix"])
    tail = obj.get("tail", "zeros")
    if tail == "zeros":
        return Point(prefix)
    if isinstance(tail, dict) and set(tail) == {"cycle"}:
        c = seq_from_json(tail["cycle"])
        if not c:
            raise SchemaError("cycle must be non-empty")
        return Point(prefix, Cycle(c))
    raise SchemaError(f"unknown tail {tail!r}")


def point_to_json(alpha: Point) -> dict:
    if alpha.tail == "zeros":
        return {"prefix": list(alpha.prefix), "tail": "zeros"}
    if isinstance(alpha.tail, Cycle):
        return {"prefix": list(alpha.prefix), "tail": {"cycle": list(alpha.tail.items)}}
    raise SchemaError("points with generated tails are not serializable")


def op_from_json(obj: Any) -> BrouwerOp:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SchemaError(f"operation must be {{'leaf': v}} or {{'sup': ...}}, got {obj!r}")
    if "leaf" in obj:
        v = obj["leaf"]
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise SchemaError(f"leaf value must be an integer >= 1, got {v!r}")
        return Leaf(v)
    if "sup" in obj:
        body = obj["sup"]
        if not isinstance(body, dict) or set(body) != {"children", "default"}:
            raise SchemaError("sup needs exactly 'children' and 'default'")
        if not isinstance(body["children"], list):
            raise SchemaError("sup children must be an array")
        return Sup(tuple(op_from_json(c) for c in body["children"]), op_from_json(body["default"]))
    raise SchemaError(f"unknown operation key {next(iter(obj))!r}")


def op_to_json(gamma: BrouwerOp) -> dict:
    if isinstance(gamma, Leaf):
        return {"leaf": gamma.value}
    if isinstance(gamma, LazySup):
        raise SchemaError("generated operations are not serializable")
    return {"sup": {"children": [op_to_json(c) for c in gamma.children], "default": op_to_json(gamma.default)}}


def cov_from_json(obj: Any) -> CovWitness:
    if not isinstance(obj, dict) or set(obj) != {"root", "shape"}:
        raise SchemaError("cover witness needs exactly 'root' and 'shape'")
    try:
        return CovWitness(seq_from_json(obj["root"]), op_from_json(obj["shape"]))
    except ValueError as e:
        raise SchemaError(str(e)) from None


def cov_to_json(W: CovWitness) -> dict:
    return {"root": list(W.root), "shape": op_to_json(W.shape)}


def map_from_json(obj: Any) -> FormalMap:
    if not isinstance(obj, dict) or set(obj) != {"witness", "values"}:
        raise SchemaError("formal map needs exactly 'witness' and 'values'")
    W = cov_from_json(obj["witness"])
    if not isinstance(obj["values"], list):
        raise SchemaError("map values must be an array")
    pairs = []
    for entry in obj["values"]:
        if not isinstance(entry, dict) or set(entry) != {"addr", "n"}:
            raise SchemaError("each map value is {'addr': [...], 'n': v}")
        n = entry["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise SchemaError(f"map value must be a natural number, got {n!r}")
        pairs.append((seq_from_json(entry["addr"]), n))
    return FormalMap.from_table(W, pairs)


def map_to_json(r: FormalMap) -> dict:
    if r.pairs is None:
        raise SchemaError("only table-backed maps are serializable")
    return {
        "witness": cov_to_json(r.witness),
        "values": [{"addr": list(a), "n": n} for a, n in r.pairs],
    }


def fan_from_json(obj: Any) -> FanTree:
    if not isinstance(obj, dict):
        raise SchemaError("fan spec must be an object")
    try:
        return make_fan(obj)
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"bad fan spec: {e}") from None
    except InvalidFan as e:
        raise SchemaError(str(e)) from None


def detect_kind(obj: Any) -> str:
    """Which of op / cov / map a parsed JSON value looks like."""
    if isinstance(obj, dict):
        if "leaf" in obj or "sup" in obj:
            return "op"
        if "root" in obj and "shape" in obj:
            return "cov"
        if "witness" in obj and "values" in obj:
            return "map"
    raise SchemaError("input is not an operation, cover witness or formal map")
