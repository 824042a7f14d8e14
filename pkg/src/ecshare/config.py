"""JSON scheme configuration files and their canonical echo.

    {
      "field": {"p": 2, "r": 3, "modulus": [1, 1, 0, 1]},
      "curve": {"a1": "000", "a2": "000", "a3": "001", "a4": "000", "a6": "000"},
      "m": 3,
      "D": ["(010,011)", ...]           # or "all-nonzero" with an optional "dealer"
      "dealer": "(x,y)",
      "seed": 0,
      "claims": {"minimal_qualified": [[...]], "minimal_qualified_complements": [[...]]}
    }

Field elements use the text encoding of :mod:`ecshare.field`; points are
``"inf"`` or ``"(x,y)"``.  Missing curve coefficients default to zero and the
modulus defaults to the built-in table.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .curve import CurveError, CurveSpec, Point, enumerate_points
from .field import FieldError, GF, FieldSpec
from .lsss import SchemeConfig, SchemeError

TOP_KEYS = {"field", "curve", "m", "D", "dealer", "seed", "claims"}
FIELD_KEYS = {"p", "r", "modulus"}
CURVE_KEYS = {"a1", "a2", "a3", "a4", "a6"}
CLAIM_KEYS = {"minimal_qualified", "minimal_qualified_complements"}
ALL_NONZERO = "all-nonzero"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class LoadedConfig:
    curve: CurveSpec
    scheme: SchemeConfig | None
    claims: dict[str, list[list[Point]]] = field(default_factory=dict)


def _reject_unknown(obj: dict, allowed: set, where: str):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be an object")
    extra = set(obj) - allowed
    if extra:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(sorted(extra))}")


def parse_field(obj: dict) -> FieldSpec:
    _reject_unknown(obj, FIELD_KEYS, "field")
    try:
        p, r = int(obj["p"]), int(obj.get("r", 1))
        modulus = obj.get("modulus")
        return GF(p, r, tuple(int(d) for d in modulus) if modulus else None)
    except KeyError:
        raise ConfigError("field.p is required") from None
    except (FieldError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid field: {exc}") from None


def parse_curve(F: FieldSpec, obj: dict) -> CurveSpec:
    _reject_unknown(obj, CURVE_KEYS, "curve")
    try:
        coeffs = {k: F.parse(obj[k]) if k in obj else 0 for k in sorted(CURVE_KEYS)}
        return CurveSpec(F, **coeffs)
    except (FieldError, CurveError) as exc:
        raise ConfigError(f"invalid curve: {exc}") from None


def _point(c: CurveSpec, text) -> Point:
    try:
        return c.parse_point(text)
    except (FieldError, CurveError) as exc:
        raise ConfigError(str(exc)) from None


def parse_config(obj: dict[str, Any], require_scheme: bool = True) -> LoadedConfig:
    _reject_unknown(obj, TOP_KEYS, "config")
    if "field" not in obj or "curve" not in obj:
        raise ConfigError("config needs 'field' and 'curve'")
    F = parse_field(obj["field"])
    c = parse_curve(F, obj["curve"])
    if "m" not in obj or "D" not in obj:
        if require_scheme:
            raise ConfigError("config needs 'm' and 'D'")
        return LoadedConfig(c, None)
    D_spec = obj["D"]
    if D_spec == ALL_NONZERO:
        affine = [p for p in enumerate_points(c) if not p.is_infinity]
        if not affine:
            raise ConfigError("curve has no affine points")
        dealer = _point(c, obj["dealer"]) if "dealer" in obj else affine[0]
        if dealer not in affine:
            raise ConfigError("dealer must be an affine point of the curve")
        D = [dealer] + [p for p in affine if p != dealer]
    elif isinstance(D_spec, list):
        if "dealer" in obj:
            raise ConfigError("'dealer' only applies to D = \"all-nonzero\"")
        D = [_point(c, t) for t in D_spec]
    else:
        raise ConfigError(f"D must be a point list or {ALL_NONZERO!r}")
    seed = obj.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError("seed must be an integer")
    m = obj["m"]
    if not isinstance(m, int) or isinstance(m, bool):
        raise ConfigError("m must be an integer")
    try:
        scheme = SchemeConfig(c, m, tuple(D), seed)
    except SchemeError as exc:
        raise ConfigError(str(exc)) from None
    claims = {}
    if "claims" in obj:
        _reject_unknown(obj["claims"], CLAIM_KEYS, "claims")
        for key, sets in obj["claims"].items():
            claims[key] = [[_point(c, t) for t in group] for group in sets]
    return LoadedConfig(c, scheme, claims)


def load_config(path: str | Path, require_scheme: bool = True) -> LoadedConfig:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None
    return parse_config(obj, require_scheme)


def echo_config(loaded: LoadedConfig) -> dict[str, Any]:
    """Canonical JSON form; parsing it back yields an equal SchemeConfig."""
    c = loaded.curve
    F = c.field
    out: dict[str, Any] = {
        "field": {"p": F.p, "r": F.r, "modulus": list(F.modulus)},
        "curve": {k: F.format(getattr(c, k)) for k in ("a1", "a2", "a3", "a4", "a6")},
    }
    if loaded.scheme is not None:
        sc = loaded.scheme
        out["m"] = sc.m
        out["D"] = [c.format_point(p) for p in sc.D]
        out["seed"] = sc.rng_seed
    if loaded.claims:
        out["claims"] = {k: [[c.format_point(p) for p in g] for g in v] for k, v in loaded.claims.items()}
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
