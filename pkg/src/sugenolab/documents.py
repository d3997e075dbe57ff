"""JSON documents: semicopula / capacity descriptors, instances and campaigns."""

from __future__ import annotations

import json
from collections.abc import Mapping
from pathlib import Path

from .capacity import Capacity, FiniteSpace, SimpleFunction, make_capacity
from .homogeneity import CampaignConfig, Instance
from .semicopula import BUILTIN_NAMES, Semicopula, builtin, ordinal_sum


class DocumentError(ValueError):
    """A document failed to parse or validate; the message names the key path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def _require(doc, key, path):
    if not isinstance(doc, Mapping):
        raise DocumentError(path, "expected an object")
    if key not in doc:
        raise DocumentError(f"{path}.{key}" if path else key, "missing key")
    return doc[key]


def _guard(path, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except DocumentError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        raise DocumentError(path, str(msg)) from exc


# -- semicopulas ------------------------------------------------------------------


def _semicopula(desc) -> Semicopula:
    if isinstance(desc, str):
        return builtin(desc)
    if not isinstance(desc, Mapping) or "type" not in desc:
        raise ValueError("semicopula descriptor needs a 'type'")
    kind = desc["type"]
    if kind == "ordinal_sum":
        summands = desc.get("summands", [])
        if not isinstance(summands, list):
            raise ValueError("summands must be a list")
        return ordinal_sum([(item["lo"], item["hi"], item["base"]) for item in summands])
    if kind in BUILTIN_NAMES:
        return builtin(kind)
    raise ValueError(f"unknown semicopula type {kind!r}")


def parse_semicopula(desc, path: str = "semicopula") -> Semicopula:
    return _guard(path, _semicopula, desc)


# -- capacities -------------------------------------------------------------------


def _capacity(space: FiniteSpace, desc) -> Capacity:
    if not isinstance(desc, Mapping) or "type" not in desc:
        raise ValueError("capacity descriptor needs a 'type'")
    kind = desc["type"]
    if kind == "table":
        values = desc.get("values")
        if not isinstance(values, Mapping):
            raise ValueError("table capacity needs a 'values' object")
        return make_capacity(space, dict(values))
    params = {k: v for k, v in desc.items() if k != "type"}
    return make_capacity(space, kind, **params)


def parse_capacity(space: FiniteSpace, desc, path: str = "capacity") -> Capacity:
    return _guard(path, _capacity, space, desc)


# -- instances --------------------------------------------------------------------


def load_instance(doc) -> Instance:
    labels = _require(doc, "space", "")
    if not isinstance(labels, list):
        raise DocumentError("space", "expected a list of point labels")
    space = _guard("space", FiniteSpace, tuple(labels))
    mu = parse_capacity(space, _require(doc, "capacity", ""))
    fvals = _require(doc, "function", "")
    if not isinstance(fvals, Mapping):
        raise DocumentError("function", "expected an object mapping labels to values")
    f = _guard("function", SimpleFunction.from_mapping, space, fvals)
    s = parse_semicopula(_require(doc, "semicopula", ""))
    a = _require(doc, "a", "")
    return _guard("a", Instance, s, mu, f, a)


def dump_instance(inst: Instance) -> dict:
    return inst.to_dict()


def load_campaign(doc, seed_override=None) -> tuple[Semicopula, CampaignConfig]:
    s = parse_semicopula(_require(doc, "semicopula", ""))
    fields = {}
    for key in ("trials", "seed", "max_points", "expect", "continuous", "capacity_mode", "tolerance"):
        if key in doc:
            fields[key] = doc[key]
    for key in ("trials", "seed", "max_points"):
        if key in fields and (isinstance(fields[key], bool) or not isinstance(fields[key], int)):
            raise DocumentError(key, "expected an integer")
    if "value_grid" in doc:
        grid = doc["value_grid"]
        if not isinstance(grid, list):
            raise DocumentError("value_grid", "expected a list of numbers")
        fields["value_grid"] = tuple(grid)
    if seed_override is not None:
        fields["seed"] = seed_override
    config = _guard("campaign", CampaignConfig, **fields)
    return s, config


def dump_campaign(s: Semicopula, config: CampaignConfig) -> dict:
    d = config.to_dict()
    d["semicopula"] = s.descriptor
    return d


# -- text ---------------------------------------------------------------------------


def dumps(obj) -> str:
    """Canonical JSON text; floats use the shortest repr that round-trips exactly."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def read_json(path) -> object:
    p = Path(path)
    try:
        return json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DocumentError("", f"cannot read {p}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError("", f"{p} is not valid JSON ({exc.msg} at line {exc.lineno})") from exc
