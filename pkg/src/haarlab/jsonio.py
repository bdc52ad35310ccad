"""JSON encodings shared by the CLI and the verification reports.

Rationals travel as reduced ``"p/q"`` strings (``"3"``, ``"-5/8"``), intervals as
``"root"`` or ``"level/index"``.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from fractions import Fraction
from typing import Any

from .dyadic import DyadicInterval, IntervalSet
from .errors import SchemaError
from .haar import HaarExpansion, StepFunction


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(raw: Any) -> Fraction:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise SchemaError(f"rationals must be strings like '3' or '-5/8', got {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if not isinstance(raw, str):
        raise SchemaError(f"expected a rational string, got {raw!r}")
    text = raw.strip()
    try:
        num, _, den = text.partition("/")
        if den:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"invalid rational {raw!r}") from None


def interval_list(intervals: Iterable[DyadicInterval]) -> list[str]:
    return [str(i) for i in IntervalSet(intervals)]


def parse_interval_list(raw: Any) -> IntervalSet:
    if not isinstance(raw, list):
        raise SchemaError("interval sets are JSON lists of 'root' / 'level/index' strings")
    out = []
    for item in raw:
        if not isinstance(item, str):
            raise SchemaError(f"invalid interval {item!r}")
        out.append(DyadicInterval.parse(item))
    return IntervalSet(out)


def step_function_to_json(f: StepFunction) -> dict:
    return {"resolution": f.resolution, "values": [format_rational(v) for v in f.values]}


def step_function_from_json(raw: Any) -> StepFunction:
    if not isinstance(raw, Mapping) or "values" not in raw:
        raise SchemaError('step functions look like {"resolution": N, "values": ["p/q", ...]}')
    values = raw["values"]
    if not isinstance(values, list) or not values:
        raise SchemaError("'values' must be a nonempty list")
    resolution = raw.get("resolution")
    if resolution is None:
        resolution = len(values).bit_length() - 1
    if isinstance(resolution, bool) or not isinstance(resolution, int) or resolution < 0:
        raise SchemaError(f"invalid resolution {resolution!r}")
    if len(values) != 1 << resolution:
        raise SchemaError(f"resolution {resolution} needs {1 << resolution} values, got {len(values)}")
    return StepFunction.from_values([parse_rational(v) for v in values], resolution)


def expansion_to_json(expansion: Mapping[DyadicInterval, Fraction]) -> dict:
    coeffs = expansion if isinstance(expansion, HaarExpansion) else HaarExpansion(expansion)
    return {"coeffs": {str(i): format_rational(coeffs[i]) for i in coeffs}}


def expansion_from_json(raw: Any) -> HaarExpansion:
    if not isinstance(raw, Mapping) or not isinstance(raw.get("coeffs"), Mapping):
        raise SchemaError('expansions look like {"coeffs": {"level/index": "p/q", ...}}')
    return HaarExpansion({DyadicInterval.parse(k): parse_rational(v) for k, v in raw["coeffs"].items()})


def dumps(payload: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(payload, indent=2, ensure_ascii=False)
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)
