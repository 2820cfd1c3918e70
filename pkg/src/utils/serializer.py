"""Serialization of reports: JSON-safe conversion, canonical JSON and pandas tables."""

import hashlib
import json
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel


def to_jsonable(obj: Any) -> Any:
    """
    Convert models, rationals, enums, numpy values and containers to JSON-safe values.

    Args:
        obj: Object to convert (dict, list, Pydantic model, Fraction, or primitive)

    Returns:
        Structure made of dicts with string keys, lists, strings, numbers, booleans and None
    """
    if isinstance(obj, Enum):
        return to_jsonable(obj.value)

    if obj is None or isinstance(obj, (bool, str)):
        return obj

    if isinstance(obj, Fraction):
        return str(obj)

    if isinstance(obj, (int, float)):
        return obj

    if isinstance(obj, np.generic):
        return obj.item()

    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]

    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json", by_alias=True)

    if isinstance(obj, dict):
        return {str(to_jsonable(key)): to_jsonable(value) for key, value in obj.items()}

    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(item) for item in items]

    return str(obj)


def canonical_json(obj: Any) -> str:
    """Sorted keys, compact separators, no ASCII escaping."""
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(obj: Any) -> str:
    """sha256 of the canonical JSON encoding."""
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def _is_simple(value: Any) -> bool:
    return isinstance(value, (str, int, float, bool, type(None)))


def flatten(obj: Any, prefix: str = "") -> List[Tuple[str, str]]:
    """
    Flatten a JSON-safe structure to (dotted key, text) rows.

    Lists of simple values stay on one row in compact form; everything else is expanded.
    """
    rows: List[Tuple[str, str]] = []
    if isinstance(obj, dict):
        if not obj:
            rows.append((prefix or ".", "{}"))
        for key, value in obj.items():
            rows.extend(flatten(value, f"{prefix}.{key}" if prefix else str(key)))
    elif isinstance(obj, list):
        if not obj:
            rows.append((prefix or ".", "[]"))
        elif all(_is_simple(item) for item in obj):
            rows.append((prefix or ".", "(" + ", ".join(_text(item) for item in obj) + ")"))
        else:
            for i, item in enumerate(obj):
                rows.extend(flatten(item, f"{prefix}.{i}" if prefix else str(i)))
    else:
        rows.append((prefix or ".", _text(obj)))
    return rows


def _text(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def to_frame(payload: Any) -> pd.DataFrame:
    """Two-column DataFrame (key, value) of a flattened payload."""
    rows = flatten(to_jsonable(payload))
    return pd.DataFrame(rows, columns=["key", "value"])


def render_table(payload: Any) -> str:
    """Plain-text table of a payload, one row per leaf (weight maps give one row per weight)."""
    frame = to_frame(payload)
    if frame.empty:
        return ""
    return frame.to_string(index=False, justify="left")


def load_json(text: str) -> Dict[str, Any]:
    """Parse a UTF-8 JSON document that must be an object."""
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("expected a JSON object")
    return data
