"""
File formats: phase-list JSON, scenario JSON and CSV tables.

Phase vectors are stored as lists of phases in radians, never as complex
numbers. JSON is canonical (sorted keys, floats at 17 significant digits)
so a config that is loaded and re-saved is byte-identical.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import jsonschema
import numpy as np

from .array import ArrayGeometry, DualPolConfig, ElementPattern
from .errors import InvalidArgument
from .link import LinkBudget
from .montecarlo import SCHEMES, Scenario
from .sequences import PhaseVector

CSV_DIGITS = 9
JSON_DIGITS = 17


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise InvalidArgument(f"cannot serialize non-finite float {x}")
    s = format(x, f".{JSON_DIGITS}g")
    # keep floats recognisable as floats on reload
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def canonical_dumps(obj) -> str:
    """JSON text with sorted keys and fixed float formatting."""
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {canonical_dumps(v)}" for k, v in sorted(obj.items()))
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(canonical_dumps(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None or isinstance(obj, str):
        return json.dumps(bool(obj) if isinstance(obj, np.bool_) else obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    raise InvalidArgument(f"cannot serialize {type(obj).__name__}")


def write_json(path, obj):
    Path(path).write_text(canonical_dumps(obj) + "\n")


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise InvalidArgument(f"{path}: {exc.strerror}") from exc


def phases_to_vector(phases, where="phases") -> PhaseVector:
    if not isinstance(phases, list) or not phases:
        raise InvalidArgument(f"{where}: expected a nonempty list of phases in radians")
    for i, p in enumerate(phases):
        if isinstance(p, bool) or not isinstance(p, (int, float)):
            raise InvalidArgument(f"{where}[{i}]: expected a number, got {p!r}")
    return PhaseVector.from_phases(phases)


def vector_to_phases(v: PhaseVector) -> list[float]:
    return [float(p) for p in v.phases]


_PAIR_KEYS = (("u", "v"), ("phi_h", "phi_v"))


def parse_pair(doc, where="pair") -> tuple[PhaseVector, PhaseVector]:
    """Two phase lists from ``{"u", "v"}``, ``{"phi_h", "phi_v"}`` or ``[[..], [..]]``."""
    if isinstance(doc, list) and len(doc) == 2 and all(isinstance(x, list) for x in doc):
        a, b = doc
        names = ("[0]", "[1]")
    elif isinstance(doc, dict):
        for ka, kb in _PAIR_KEYS:
            if ka in doc and kb in doc:
                a, b = doc[ka], doc[kb]
                names = (ka, kb)
                break
        else:
            raise InvalidArgument(f"{where}: a pair is required (keys u/v or phi_h/phi_v)")
    else:
        raise InvalidArgument(f"{where}: a pair of phase lists is required")
    u = phases_to_vector(a, f"{where}.{names[0]}")
    v = phases_to_vector(b, f"{where}.{names[1]}")
    if len(u) != len(v):
        raise InvalidArgument(f"{where}: sequences differ in length ({len(u)} vs {len(v)})")
    return u, v


def load_pair(path):
    return parse_pair(read_json(path), str(path))


def load_config(path) -> DualPolConfig:
    return DualPolConfig(*load_pair(path))


def config_doc(config: DualPolConfig, **meta) -> dict:
    return {"phi_h": vector_to_phases(config.phi_h), "phi_v": vector_to_phases(config.phi_v), **meta}


def pair_doc(u: PhaseVector, v: PhaseVector, **meta) -> dict:
    return {"u": vector_to_phases(u), "v": vector_to_phases(v), **meta}


def _num():
    return {"type": "number"}


def _block(props, required=()):
    return {"type": "object", "properties": props, "additionalProperties": False, "required": list(required)}


_RANGE = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

SCENARIO_SCHEMA = _block(
    {
        "geometry": _block({
            "m_per_pol": {"type": "integer", "minimum": 1},
            "spacing_wl": {"type": "number", "exclusiveMinimum": 0},
            "incident_angle_deg": {"type": "number", "minimum": -90, "maximum": 90},
        }),
        "pattern": _block({
            "peak_gain_dbi": _num(),
            "boresight_deg": _num(),
            "width_deg": {"type": "number", "exclusiveMinimum": 0},
            "floor_db": {"type": "number", "exclusiveMinimum": 0},
        }),
        "budget": _block({
            "tx_power_dbm": _num(),
            "noise_dbm": _num(),
            "tx_ris_distance_m": {"type": "number", "exclusiveMinimum": 0},
            "pathloss_intercept_db": _num(),
            "pathloss_slope": {"type": "number", "exclusiveMinimum": 0},
        }),
        "users": _block({
            "k": {"type": "integer", "minimum": 1},
            "dist_range_m": _RANGE,
            "angle_range_deg": _RANGE,
        }),
        "scheme": {"enum": list(SCHEMES)},
        "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
    }
)


def parse_scenario(doc, where="scenario") -> Scenario:
    """Scenario from its JSON document; missing fields take the defaults."""
    try:
        jsonschema.validate(doc, SCENARIO_SCHEMA)
    except jsonschema.ValidationError as exc:
        loc = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InvalidArgument(f"{where}: at {loc}: {exc.message}") from None
    g, p, b, u = (doc.get(k, {}) for k in ("geometry", "pattern", "budget", "users"))
    dflt = Scenario()
    geom = ArrayGeometry(
        g.get("m_per_pol", dflt.geom.m_per_pol),
        g.get("spacing_wl", dflt.geom.spacing_wl),
        np.radians(g["incident_angle_deg"]) if "incident_angle_deg" in g else dflt.geom.incident_angle,
    )
    ep = dflt.pattern
    pattern = ElementPattern(
        p.get("peak_gain_dbi", ep.peak_gain_dbi),
        np.radians(p["boresight_deg"]) if "boresight_deg" in p else ep.boresight,
        np.radians(p["width_deg"]) if "width_deg" in p else ep.width,
        p.get("floor_db", ep.floor_db),
    )
    budget = LinkBudget(**{k: b.get(k, getattr(dflt.budget, k)) for k in LinkBudget.__dataclass_fields__})
    return Scenario(
        geom=geom,
        pattern=pattern,
        budget=budget,
        k_users=u.get("k", dflt.k_users),
        dist_range_m=tuple(u.get("dist_range_m", dflt.dist_range_m)),
        angle_range=tuple(np.radians(u["angle_range_deg"])) if "angle_range_deg" in u else dflt.angle_range,
        scheme=doc.get("scheme", dflt.scheme),
        seed=doc.get("seed", dflt.seed),
    )


def load_scenario(path) -> Scenario:
    return parse_scenario(read_json(path), str(path))


def write_csv(path, header, columns):
    """Columns of floats, printed at fixed significant digits."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*columns):
            w.writerow([format(float(x), f".{CSV_DIGITS}g") for x in row])
