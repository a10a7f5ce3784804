# -*- coding: utf-8 -*-
from __future__ import annotations

from typing import Any, Final, Iterable, Mapping, Sequence, Tuple

__all__ = [
    "Itemset",
    "KULC_TOLERANCE",
    "PRUNE",
    "POSTFILTER",
    "KULC_MODES",
    "LU_SU",
    "TWU_ONLY",
    "BOUNDS_MODES",
    "UTIL",
    "SUP",
    "KULC",
    "CANDIDATES",
    "PATTERNS",
    "NODES_VISITED",
    "NODES_PRUNED_BY_KULC",
    "SECONDARY_ROOT",
    "PRIMARY_ROOT",
    "WALL_TIME",
    "PEAK_MEMORY",
    "PEAK_MEMORY_SOURCE",
    "HUMAN_READABLE",
    "format_kulc",
    "format_value",
    "key_value_block",
    "aligned_table",
    "median",
    "parse_list",
    "json_dumps",
]

Itemset = Tuple[int, ...]

# verification tolerance for Kulc values, thresholds are compared without one
KULC_TOLERANCE: Final[float] = 1e-9

PRUNE: Final[str] = "prune"
POSTFILTER: Final[str] = "postfilter"
KULC_MODES: Final[tuple[str, ...]] = (PRUNE, POSTFILTER)

LU_SU: Final[str] = "lu-su"
TWU_ONLY: Final[str] = "twu-only"
BOUNDS_MODES: Final[tuple[str, ...]] = (LU_SU, TWU_ONLY)

UTIL: Final[str] = "#UTIL:"
SUP: Final[str] = "#SUP:"
KULC: Final[str] = "#KULC:"

CANDIDATES: Final[str] = "candidates"
PATTERNS: Final[str] = "patterns"
NODES_VISITED: Final[str] = "nodes_visited"
NODES_PRUNED_BY_KULC: Final[str] = "nodes_pruned_by_kulc"
SECONDARY_ROOT: Final[str] = "secondary_root"
PRIMARY_ROOT: Final[str] = "primary_root"
WALL_TIME: Final[str] = "wall_time"
PEAK_MEMORY: Final[str] = "peak_memory"
PEAK_MEMORY_SOURCE: Final[str] = "peak_memory_source"

HUMAN_READABLE: Final[dict[str, str]] = {
    "dataset": "Dataset",
    "min_util": "minUtil",
    "min_cor": "minCor",
    "bounds_mode": "Bounds",
    "kulc_mode": "Kulc mode",
    CANDIDATES: "Candidates",
    PATTERNS: "Patterns",
    WALL_TIME: "Time [s]",
    PEAK_MEMORY: "Memory [B]",
    PEAK_MEMORY_SOURCE: "Memory source",
}


def format_kulc(value: float) -> str:
    return f"{value:.4f}"


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def key_value_block(data: Mapping[str, Any]) -> str:
    """flat `key=value` lines, keys with `None` values omitted"""
    return "".join(f"{key}={format_value(value)}\n" for key, value in data.items() if value is not None)


def aligned_table(columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    header: list[str] = [HUMAN_READABLE.get(column, column) for column in columns]
    cells: list[list[str]] = [[format_value(value) for value in row] for row in rows]

    def is_number(text: str) -> bool:
        try:
            float(text)
        except ValueError:
            return False
        return True

    widths: list[int] = [
        max([len(header[i])] + [len(row[i]) for row in cells]) for i in range(len(columns))
    ]
    lines: list[str] = [" ".join(f"{h:<{w}}" for h, w in zip(header, widths)).rstrip()]
    for row in cells:
        lines.append(
            " ".join((f"{c:>{w}}" if is_number(c) else f"{c:<{w}}") for c, w in zip(row, widths)).rstrip()
        )
    return "\n".join(lines) + "\n"


def median(values: Sequence[float]) -> float:
    if not values:
        raise ValueError("Empty sequence provided")
    import numpy as np

    return float(np.median(np.asarray(values, dtype=float)))


def parse_list(text: str, item_type: type = float) -> list[Any]:
    """parse a comma-separated list, like `0.1,0.2,0.3`"""
    return [item_type(part.strip()) for part in text.split(",") if part.strip()]


def json_dumps(data: Mapping[str, Any]) -> bytes:
    try:
        import orjson
    except ImportError:
        import json

        return json.dumps(data, ensure_ascii=True, separators=(",", ":")).encode("ascii")
    else:
        return orjson.dumps(data)

