"""JSON instance and report files (schema version "1").

Complex scalars are ``[re, im]`` pairs, complex matrices are nested arrays of
such pairs, real vectors are plain arrays.  Maps and bounds are objects tagged
by ``"type"``; payloads are tagged by ``"kind"``.  Non-finite floats are
written as ``null``.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from . import __version__
from .bounds import Box, Ratio
from .catalog import FAMILIES
from .catalog.instances import (
    CSInstance,
    DiscreteData,
    GrussInstance,
    GrussLemmaInstance,
    HilbertInstance,
    OimsInstance,
    OperatorInstance,
    QuadratureData,
    VarianceInstance,
)
from .catalog.report import InequalityReport, Verdict
from .errors import OpIneqError
from .maps import MAP_TYPES

SCHEMA_VERSION = "1"


class SchemaError(ValueError):
    """Malformed file; ``field`` is a dotted path to the offending entry."""

    def __init__(self, field: str, msg: str):
        super().__init__(f"{field}: {msg}")
        self.field = field


# field kinds: cmat, cvec, rvec, complex, real, int, ints, map, bounds, oims; trailing "?" = optional
MAP_FIELDS = {
    "VectorState": (("x", "cvec"),),
    "StateMixture": (("vectors", "cmat"),),
    "WeightedDiagState": (("w", "rvec"),),
    "NormalizedTrace": (("dim", "int"),),
    "Compression": (("V", "cmat"),),
    "Pinching": (("blocks", "ints"),),
    "PartialTraceLeft": (("n", "int"), ("k", "int")),
    "Identity": (("dim", "int"),),
}
BOUNDS_FIELDS = {
    "Ratio": (Ratio, (("m", "real"), ("M", "real"))),
    "Box": (Box, (("m1", "real"), ("M1", "real"), ("m2", "real"), ("M2", "real"))),
}
_OIMS = (("A", "cmat"), ("B", "cmat"), ("phi", "map"), ("bounds", "bounds"))
PAYLOADS = {
    "operator": (OperatorInstance, (("A", "cmat"), ("B", "cmat?"), ("phi", "map"), ("bounds", "bounds"))),
    "discrete": (DiscreteData, (("a", "rvec"), ("b", "rvec"), ("bounds", "bounds"), ("w", "rvec?"))),
    "integral": (QuadratureData, (("f", "rvec"), ("g", "rvec"), ("mu", "rvec"), ("bounds", "bounds"))),
    "hilbert": (HilbertInstance, (("T", "cmat"), ("S", "cmat"), ("xi", "cmat"), ("bounds", "bounds"))),
    "gruss_lemma": (GrussLemmaInstance, (("phi", "map"), ("A", "cmat"), ("M", "complex"), ("m", "complex"))),
    "cs_left": (CSInstance, (("phi", "map"), ("A", "cmat"), ("B", "cmat"))),
    "gruss_product": (
        GrussInstance,
        (("phi", "map"), ("A", "cmat"), ("B", "cmat"), ("M1", "complex"), ("m1", "complex"), ("M2", "complex"), ("m2", "complex")),
    ),
    "oims": (OimsInstance, _OIMS),
    "variance": (VarianceInstance, (("base", "oims"), ("X", "cmat"), ("m", "real"), ("M", "real"))),
}
PAYLOAD_OF_TYPE = {cls: kind for kind, (cls, _) in PAYLOADS.items()}


# ---------------------------------------------------------------- encoding


def _num(v: float):
    v = float(v)
    return v if math.isfinite(v) else None


def _encode(kind: str, value):
    kind = kind.rstrip("?")
    if kind == "cmat":
        arr = np.asarray(value, dtype=np.complex128)
        return [[[_num(z.real), _num(z.imag)] for z in row] for row in arr]
    if kind == "cvec":
        return [[_num(z.real), _num(z.imag)] for z in np.asarray(value, dtype=np.complex128).reshape(-1)]
    if kind == "rvec":
        return [_num(v) for v in np.asarray(value, dtype=float).reshape(-1)]
    if kind == "complex":
        z = complex(value)
        return [_num(z.real), _num(z.imag)]
    if kind == "real":
        return _num(value)
    if kind == "int":
        return int(value)
    if kind == "ints":
        return [int(v) for v in value]
    if kind == "map":
        return encode_map(value)
    if kind == "bounds":
        return encode_bounds(value)
    if kind == "oims":
        return {name: _encode(k, getattr(value, name)) for name, k in _OIMS}
    raise ValueError(kind)


def encode_map(phi) -> dict:
    name = type(phi).__name__
    if name not in MAP_FIELDS:
        raise ValueError(f"map type {name} is not serializable")
    return {"type": name, **{f: _encode(k, getattr(phi, f)) for f, k in MAP_FIELDS[name]}}


def encode_bounds(bounds) -> dict:
    name = type(bounds).__name__
    return {"type": name, **{f: _encode(k, getattr(bounds, f)) for f, k in BOUNDS_FIELDS[name][1]}}


def encode_instance(family: str, instance) -> dict:
    kind = PAYLOAD_OF_TYPE[type(instance)]
    payload = {"kind": kind}
    for name, k in PAYLOADS[kind][1]:
        value = getattr(instance, name)
        if value is not None:
            payload[name] = _encode(k, value)
    return {"schema_version": SCHEMA_VERSION, "family": family, "payload": payload}


# ---------------------------------------------------------------- decoding


def _real(v, path) -> float:
    if v is None:
        return math.nan
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(path, f"expected a number, got {type(v).__name__}")
    return float(v)


def _complex(v, path) -> complex:
    if isinstance(v, list):
        if len(v) != 2:
            raise SchemaError(path, "complex numbers are [re, im] pairs")
        return complex(_real(v[0], f"{path}[0]"), _real(v[1], f"{path}[1]"))
    return complex(_real(v, path))


def _list(v, path) -> list:
    if not isinstance(v, list):
        raise SchemaError(path, f"expected an array, got {type(v).__name__}")
    return v


def _decode(kind: str, v, path: str):
    kind = kind.rstrip("?")
    if kind == "cmat":
        rows = [[_complex(z, f"{path}[{i}][{j}]") for j, z in enumerate(_list(r, f"{path}[{i}]"))] for i, r in enumerate(_list(v, path))]
        if not rows or len({len(r) for r in rows}) != 1:
            raise SchemaError(path, "matrix rows must be non-empty and of equal length")
        return np.array(rows, dtype=np.complex128)
    if kind == "cvec":
        return np.array([_complex(z, f"{path}[{i}]") for i, z in enumerate(_list(v, path))], dtype=np.complex128)
    if kind == "rvec":
        return np.array([_real(z, f"{path}[{i}]") for i, z in enumerate(_list(v, path))], dtype=float)
    if kind == "complex":
        return _complex(v, path)
    if kind == "real":
        return _real(v, path)
    if kind == "int":
        if isinstance(v, bool) or not isinstance(v, int):
            raise SchemaError(path, "expected an integer")
        return v
    if kind == "ints":
        return tuple(_decode("int", z, f"{path}[{i}]") for i, z in enumerate(_list(v, path)))
    if kind == "map":
        return decode_map(v, path)
    if kind == "bounds":
        return decode_bounds(v, path)
    if kind == "oims":
        return _build(OimsInstance, _OIMS, v, path)
    raise ValueError(kind)


def _obj(v, path) -> dict:
    if not isinstance(v, dict):
        raise SchemaError(path, f"expected an object, got {type(v).__name__}")
    return v


def _fields(spec, obj: dict, path: str) -> dict:
    out = {}
    for name, kind in spec:
        if name not in obj or obj[name] is None and kind.endswith("?"):
            if kind.endswith("?"):
                out[name] = None
                continue
            raise SchemaError(f"{path}.{name}", "missing field")
        out[name] = _decode(kind, obj[name], f"{path}.{name}")
    return out


def _build(cls, spec, v, path):
    kwargs = _fields(spec, _obj(v, path), path)
    try:
        return cls(**kwargs)
    except (ValueError, OpIneqError) as exc:
        raise SchemaError(path, str(exc)) from None


def decode_map(v, path: str = "phi"):
    obj = _obj(v, path)
    name = obj.get("type")
    if name not in MAP_FIELDS:
        raise SchemaError(f"{path}.type", f"unknown map type {name!r}")
    return _build(MAP_TYPES[name], MAP_FIELDS[name], obj, path)


def decode_bounds(v, path: str = "bounds"):
    obj = _obj(v, path)
    name = obj.get("type")
    if name not in BOUNDS_FIELDS:
        raise SchemaError(f"{path}.type", f"unknown bounds type {name!r}")
    cls, spec = BOUNDS_FIELDS[name]
    return _build(cls, spec, obj, path)


def decode_instance(doc, path: str = "$") -> tuple[str, Any]:
    obj = _obj(doc, path)
    if obj.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"{path}.schema_version", f"expected {SCHEMA_VERSION!r}, got {obj.get('schema_version')!r}")
    family = obj.get("family")
    if family not in FAMILIES:
        raise SchemaError(f"{path}.family", f"unknown family {family!r}")
    payload = _obj(obj.get("payload"), f"{path}.payload")
    kind = payload.get("kind")
    if kind != FAMILIES[family].kind:
        raise SchemaError(f"{path}.payload.kind", f"{family} needs payload kind {FAMILIES[family].kind!r}, got {kind!r}")
    cls, spec = PAYLOADS[kind]
    return family, _build(cls, spec, payload, f"{path}.payload")


def decode_instances(doc) -> list[tuple[str, Any]]:
    """Accept a single instance object or an array of them."""
    if isinstance(doc, list):
        return [decode_instance(d, f"$[{i}]") for i, d in enumerate(doc)]
    return [decode_instance(doc)]


# ---------------------------------------------------------------- reports


def record_of(report: InequalityReport) -> dict:
    return {
        "family": report.family,
        "hypothesis_ok": bool(report.hypothesis_ok),
        "gap_min": _num(report.gap_min),
        "rel_slack": _num(report.rel_slack),
        "verdict": report.verdict.value,
    }


def summarize(records: Iterable[dict]) -> dict:
    records = list(records)
    counts = Counter(r["verdict"] for r in records)
    min_gap: dict[str, Any] = {}
    for r in records:
        fam, g = r["family"], r["gap_min"]
        min_gap.setdefault(fam, None)
        if g is not None and (min_gap[fam] is None or g < min_gap[fam]):
            min_gap[fam] = g
    return {"counts": {v.value: counts.get(v.value, 0) for v in Verdict}, "min_gap_min": min_gap, "total": len(records)}


def make_report_file(records: list[dict], meta: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "meta": {"tool_version": __version__, **meta},
        "records": records,
        "summary": summarize(records),
    }


_RECORD_FIELDS = {"family": str, "hypothesis_ok": bool, "verdict": str}


def validate_report(doc) -> dict:
    obj = _obj(doc, "$")
    if obj.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError("$.schema_version", f"expected {SCHEMA_VERSION!r}")
    _obj(obj.get("meta"), "$.meta")
    verdicts = {v.value for v in Verdict}
    for i, r in enumerate(_list(obj.get("records"), "$.records")):
        path = f"$.records[{i}]"
        _obj(r, path)
        for name, typ in _RECORD_FIELDS.items():
            if not isinstance(r.get(name), typ):
                raise SchemaError(f"{path}.{name}", f"expected {typ.__name__}")
        if r["verdict"] not in verdicts:
            raise SchemaError(f"{path}.verdict", f"unknown verdict {r['verdict']!r}")
        for name in ("gap_min", "rel_slack"):
            if name not in r:
                raise SchemaError(f"{path}.{name}", "missing field")
            _real(r[name], f"{path}.{name}")
    summary = _obj(obj.get("summary"), "$.summary")
    if summary.get("counts") != summarize(obj["records"])["counts"]:
        raise SchemaError("$.summary.counts", "counts disagree with the records")
    return obj


def dumps(doc) -> str:
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def read_json(path) -> Any:
    """Parse a UTF-8 JSON file; ``OSError`` propagates, bad JSON becomes ``SchemaError``."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None


def write_json(path, doc) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")
