# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
import sys
from os import PathLike
from typing import Any, BinaryIO, Final, Iterable, Iterator, NamedTuple, Sequence, TextIO

from .dataset import Database, Opener
from .miner import MiningParams, MiningStats, mine
from .utils import (
    CANDIDATES,
    LU_SU,
    PATTERNS,
    PEAK_MEMORY,
    PEAK_MEMORY_SOURCE,
    PRUNE,
    TWU_ONLY,
    WALL_TIME,
    aligned_table,
    json_dumps,
    median,
)

__all__ = [
    "BenchRow",
    "BenchReport",
    "PeakMemoryTracker",
    "run_bench",
    "ScalabilityPoint",
    "ScalabilitySeries",
    "linear_fit",
    "scalability_series",
]

logger: logging.Logger = logging.getLogger("bench")

TRACEMALLOC: Final[str] = "tracemalloc"


class BenchRow(NamedTuple):
    dataset: str
    min_util: float
    min_cor: float
    bounds_mode: str
    kulc_mode: str
    candidates: int
    patterns: int
    wall_time: float
    peak_memory: int | None = None
    peak_memory_source: str | None = None

    def as_dict(self) -> dict[str, Any]:
        return dict((key, value) for key, value in self._asdict().items() if value is not None)


class BenchReport:
    COLUMNS: Final[tuple[str, ...]] = (
        "dataset",
        "min_util",
        "min_cor",
        "bounds_mode",
        "kulc_mode",
        CANDIDATES,
        PATTERNS,
        WALL_TIME,
        PEAK_MEMORY,
        PEAK_MEMORY_SOURCE,
    )

    def __init__(self, rows: Iterable[BenchRow] = ()) -> None:
        self.rows: list[BenchRow] = list(rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[BenchRow]:
        return iter(self.rows)

    def append(self, row: BenchRow) -> None:
        self.rows.append(row)

    def table(self) -> str:
        return aligned_table(self.COLUMNS, self.rows)

    def dump_table(self, target: TextIO = sys.stdout) -> None:
        target.write(self.table())

    def save_table(self, path: str | PathLike[str]) -> None:
        f: TextIO
        with Opener(path).open("w", newline="\n") as f:
            self.dump_table(f)

    def save(self, path: str | PathLike[str]) -> None:
        """write the rows as JSON Lines"""
        f: BinaryIO
        with Opener(path).open("wb") as f:
            row: BenchRow
            for row in self.rows:
                f.write(json_dumps(row.as_dict()) + b"\n")


class PeakMemoryTracker:
    """
    The peak of the memory allocated by Python within a block

    The block runs under `tracemalloc`. The peak is counted from the traced size at the entry,
    so that whatever has been allocated or freed before the block does not count.
    """

    def __init__(self) -> None:
        self.peak: int | None = None
        self.source: str | None = None
        self._started: bool = False
        self._baseline: int = 0

    def __enter__(self) -> PeakMemoryTracker:
        import tracemalloc

        self._started = not tracemalloc.is_tracing()
        if self._started:
            tracemalloc.start()
        if hasattr(tracemalloc, "reset_peak"):  # Python 3.9+
            tracemalloc.reset_peak()
        self._baseline = tracemalloc.get_traced_memory()[0]
        return self

    def __exit__(self, *_: Any) -> None:
        import tracemalloc

        self.peak = max(0, tracemalloc.get_traced_memory()[1] - self._baseline)
        self.source = TRACEMALLOC
        if self._started:
            tracemalloc.stop()


def _timed_run(db: Database, params: MiningParams, repeat: int) -> tuple[MiningStats, float]:
    if repeat < 1:
        raise ValueError(f"Invalid number of repetitions: {repeat}")
    times: list[float] = []
    stats: MiningStats | None = None
    for _ in range(repeat):
        memory: PeakMemoryTracker
        with PeakMemoryTracker() as memory:
            _, stats = mine(db, params)
        stats.peak_memory = memory.peak
        stats.peak_memory_source = memory.source
        times.append(stats.wall_time)
    return stats, median(times)


def run_bench(
    db: Database,
    min_utils: Sequence[float],
    min_cors: Sequence[float],
    *,
    bounds_modes: Sequence[str] = (LU_SU, TWU_ONLY),
    kulc_modes: Sequence[str] = (PRUNE,),
    repeat: int = 1,
    absolute: bool = False,
    max_pattern_length: int | None = None,
) -> BenchReport:
    """
    Mine with every combination of the thresholds and the modes

    :param Database db: The transactions, loaded beforehand, so that loading is not timed.
    :param min_utils: The utility thresholds.
    :param min_cors: The correlation thresholds.
    :param bounds_modes: The ways to bound the search.
    :param kulc_modes: The ways to apply the correlation threshold.
    :param int repeat: The number of runs to take the median wall time of.
    :param bool absolute: Whether the utility thresholds are absolute.
    :param max_pattern_length: The limit on the pattern length, if any.
    :return: A row per combination.
    """
    report: BenchReport = BenchReport()
    min_util: float
    min_cor: float
    bounds_mode: str
    kulc_mode: str
    for min_util in min_utils:
        for min_cor in min_cors:
            for bounds_mode in bounds_modes:
                for kulc_mode in kulc_modes:
                    params: MiningParams = MiningParams(
                        min_util=min_util,
                        min_cor=min_cor,
                        kulc_mode=kulc_mode,
                        bounds_mode=bounds_mode,
                        max_pattern_length=max_pattern_length,
                        absolute=absolute,
                    ).validate()
                    stats: MiningStats
                    wall_time: float
                    stats, wall_time = _timed_run(db, params, repeat)
                    report.append(
                        BenchRow(
                            dataset=db.name,
                            min_util=min_util,
                            min_cor=min_cor,
                            bounds_mode=bounds_mode,
                            kulc_mode=kulc_mode,
                            candidates=stats.candidates,
                            patterns=stats.patterns,
                            wall_time=wall_time,
                            peak_memory=stats.peak_memory,
                            peak_memory_source=stats.peak_memory_source,
                        )
                    )
                    logger.info(
                        f"{db.name}: minUtil {min_util}, minCor {min_cor}, {bounds_mode}, {kulc_mode}: "
                        f"{stats.candidates} candidates, {stats.patterns} patterns, {wall_time:.4f} s"
                    )
    return report


class ScalabilityPoint(NamedTuple):
    fraction: float
    transactions: int
    wall_time: float
    candidates: int
    patterns: int


class ScalabilitySeries(NamedTuple):
    points: list[ScalabilityPoint]
    slope: float
    intercept: float

    def fitted(self, transactions: int) -> float:
        return self.slope * transactions + self.intercept

    def worst_ratio(self) -> float:
        """the largest ratio of a measured time to the fitted one"""
        ratios: list[float] = [
            p.wall_time / self.fitted(p.transactions)
            for p in self.points
            if self.fitted(p.transactions) > 0.0
        ]
        return max(ratios, default=0.0)


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """the least-squares line through the points, as (slope, intercept)"""
    if len(xs) != len(ys):
        raise ValueError("Different numbers of coordinates")
    if len(xs) < 2:
        raise ValueError("At least two points required")
    import numpy as np

    slope: float
    intercept: float
    slope, intercept = np.polyfit(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float), 1)
    return float(slope), float(intercept)


def scalability_series(
    db: Database,
    params: MiningParams,
    fractions: Sequence[float] = (0.2, 0.4, 0.6, 0.8, 1.0),
    *,
    repeat: int = 1,
) -> ScalabilitySeries:
    """time the mining on the leading shares of the transactions and fit a line to the times"""
    params.validate()
    points: list[ScalabilityPoint] = []
    fraction: float
    for fraction in fractions:
        part: Database = db.head(fraction)
        stats: MiningStats
        wall_time: float
        stats, wall_time = _timed_run(part, params, repeat)
        points.append(
            ScalabilityPoint(
                fraction=fraction,
                transactions=len(part),
                wall_time=wall_time,
                candidates=stats.candidates,
                patterns=stats.patterns,
            )
        )
        logger.info(f"{part.name}: {len(part)} transactions in {wall_time:.4f} s")
    slope: float
    intercept: float
    slope, intercept = linear_fit([p.transactions for p in points], [p.wall_time for p in points])
    return ScalabilitySeries(points=points, slope=slope, intercept=intercept)
