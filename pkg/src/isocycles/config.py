"""JSON system configurations and the bundled fixtures.

Numbers may be JSON strings (``"-25/101"``, ``"0.149717"``) or bare JSON
numbers; both are read as exact rationals, decimals in base 10.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .algebra import as_scalar
from .centers import AffineMap, CenterSpec, LinearCenterParams, PiecewiseSystem
from .errors import ConfigError, IsoCyclesError

FIXTURE_NAMES = (
    "lc-s3", "lc-s4", "s1-s3", "s1-s4", "s2-s2", "s2-s3",
    "s2-s4", "s1-s2", "s3-s3", "s3-s4", "s4-s4",
)
DEFAULT_BOX = (-50.0, 50.0, -50.0, 50.0)
LC_KEYS = ("A", "B", "C", "D", "omega")
MAP_KEYS = ("a", "b", "c", "alpha", "beta", "gamma")


@dataclass(frozen=True)
class SystemConfig:
    name: str
    system: PiecewiseSystem
    # (y1_min, y1_max, y2_min, y2_max) on the switching line
    box: tuple[float, float, float, float] = DEFAULT_BOX
    tol: Optional[float] = None
    reference_pairs: tuple[tuple[Fraction, Fraction], ...] = field(default=(), compare=False)


def _scalar(value, where: str) -> Fraction:
    if isinstance(value, bool) or value is None:
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    try:
        return as_scalar(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{where}: cannot read {value!r} as an exact number") from exc


def _center(doc, where: str) -> CenterSpec:
    if not isinstance(doc, dict):
        raise ConfigError(f"{where}: expected an object")
    family = doc.get("family")
    params = doc.get("params")
    if not isinstance(params, dict):
        raise ConfigError(f"{where}.params: expected an object")
    keys = LC_KEYS if family == "Lc" else MAP_KEYS
    missing = [k for k in keys if k not in params]
    if missing:
        raise ConfigError(f"{where}.params: missing {', '.join(missing)}")
    unknown = sorted(set(params) - set(keys))
    if unknown:
        raise ConfigError(f"{where}.params: unknown field(s) {', '.join(unknown)}")
    vals = {k: _scalar(params[k], f"{where}.params.{k}") for k in keys}
    try:
        if family == "Lc":
            return CenterSpec("Lc", LinearCenterParams(**vals))
        if family not in ("S1", "S2", "S3", "S4"):
            raise ConfigError(f"{where}.family: unknown family {family!r}")
        return CenterSpec(family, AffineMap(**vals))
    except ConfigError as exc:
        raise ConfigError(f"{where}: {exc}") from None
    except IsoCyclesError as exc:
        raise ConfigError(f"{where}.params: {exc}") from None


def parse_box(value) -> tuple[float, float, float, float]:
    if isinstance(value, str):
        value = value.split(",")
    try:
        box = tuple(float(as_scalar(v)) for v in value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"box: cannot parse {value!r}") from exc
    if len(box) != 4 or not (box[0] < box[1] and box[2] < box[3]):
        raise ConfigError(f"box: need x0<x1 and y0<y1, got {value!r}")
    return box


def config_from_dict(doc: dict, default_name: str = "system") -> SystemConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config: expected a JSON object")
    plus = _center(doc.get("plus"), "plus")
    minus = _center(doc.get("minus"), "minus")
    name = str(doc.get("name", default_name))
    box = parse_box(doc["box"]) if "box" in doc else DEFAULT_BOX
    tol = doc.get("tol")
    if tol is not None:
        tol = float(_scalar(tol, "tol"))
        if tol <= 0:
            raise ConfigError("tol: must be positive")
    refs = tuple(
        (_scalar(a, "reference_pairs"), _scalar(b, "reference_pairs"))
        for a, b in doc.get("reference_pairs", ())
    )
    return SystemConfig(name, PiecewiseSystem(plus, minus, name), box, tol, refs)


def _json_number(s: str):
    # keep decimals exact: parse as Decimal, then Fraction
    return Fraction(Decimal(s))


def load_config(source) -> SystemConfig:
    """Load a config from a path, or a bundled fixture by bare name."""
    path = Path(source)
    if not path.exists() and str(source) in FIXTURE_NAMES:
        return load_fixture(str(source))
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {source}: {exc}") from exc
    try:
        doc = json.loads(text, parse_float=_json_number)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: invalid JSON ({exc})") from exc
    return config_from_dict(doc, default_name=path.stem)


def load_fixture(name: str) -> SystemConfig:
    if name not in FIXTURE_NAMES:
        raise ConfigError(f"unknown fixture {name!r}")
    text = resources.files("isocycles.fixtures").joinpath(f"{name}.json").read_text("utf-8")
    return config_from_dict(json.loads(text, parse_float=_json_number), default_name=name)


def _fmt(q: Fraction) -> str:
    return str(q)


def _center_to_dict(spec: CenterSpec) -> dict:
    return {"family": spec.family, "params": {k: _fmt(v) for k, v in spec.params.as_dict().items()}}


def config_to_dict(cfg: SystemConfig) -> dict:
    doc = {
        "name": cfg.name,
        "plus": _center_to_dict(cfg.system.plus),
        "minus": _center_to_dict(cfg.system.minus),
        "box": [repr(float(v)) for v in cfg.box],
    }
    if cfg.tol is not None:
        doc["tol"] = repr(cfg.tol)
    if cfg.reference_pairs:
        doc["reference_pairs"] = [[_fmt(a), _fmt(b)] for a, b in cfg.reference_pairs]
    return doc


def dump_config(cfg: SystemConfig, path) -> None:
    Path(path).write_text(json.dumps(config_to_dict(cfg), indent=2) + "\n", encoding="utf-8")


__all__ = [
    "DEFAULT_BOX",
    "FIXTURE_NAMES",
    "SystemConfig",
    "config_from_dict",
    "config_to_dict",
    "dump_config",
    "load_config",
    "load_fixture",
    "parse_box",
]
