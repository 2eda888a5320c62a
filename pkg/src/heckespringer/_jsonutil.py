"""Byte-stable JSON emission: every dict is rebuilt with sorted keys
(numeric-aware, so {"2": ..} sorts before {"10": ..}) before dumping."""

from __future__ import annotations

import json

__all__ = ["canonical", "dumps"]


def _key_order(k: str):
    try:
        return (0, int(k), "")
    except (TypeError, ValueError):
        return (1, 0, str(k))


def canonical(obj):
    if isinstance(obj, dict):
        return {
            str(k): canonical(obj[k])
            for k in sorted(obj, key=lambda k: _key_order(str(k)))
        }
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError("floats are banned from output documents")
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(canonical(obj), indent=2) + "\n"
