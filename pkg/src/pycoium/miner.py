# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
import time
from typing import Any, Callable, NamedTuple, Sequence

from .bounds import NodePartition, UtilityBinArray, compute_lu, compute_su, compute_twu, partition
from .dataset import Database
from .preprocess import (
    ItemOrder,
    ItemStats,
    OrderedDatabase,
    build_order,
    build_secondary_root,
    compute_item_stats,
    compute_primary_root,
    rewrite_database,
)
from .projection import ProjectedView, extend, root_view
from .utils import (
    BOUNDS_MODES,
    CANDIDATES,
    KULC_MODES,
    LU_SU,
    NODES_PRUNED_BY_KULC,
    NODES_VISITED,
    PATTERNS,
    PEAK_MEMORY,
    PEAK_MEMORY_SOURCE,
    PRIMARY_ROOT,
    PRUNE,
    SECONDARY_ROOT,
    TWU_ONLY,
    WALL_TIME,
    Itemset,
)

__all__ = ["MiningParams", "CohuiRecord", "MiningStats", "kulc", "emit_singletons", "Miner", "mine", "record_key"]

logger: logging.Logger = logging.getLogger("miner")


class MiningParams(NamedTuple):
    min_util: float
    min_cor: float
    kulc_mode: str = PRUNE
    bounds_mode: str = LU_SU
    max_pattern_length: int | None = None
    absolute: bool = False

    def validate(self) -> MiningParams:
        if self.min_util < 0.0:
            raise ValueError(f"Negative utility threshold: {self.min_util}")
        if not self.absolute and self.min_util > 1.0:
            raise ValueError(f"Relative utility threshold out of [0, 1]: {self.min_util}")
        if not 0.0 <= self.min_cor <= 1.0:
            raise ValueError(f"Correlation threshold out of [0, 1]: {self.min_cor}")
        if self.kulc_mode not in KULC_MODES:
            raise ValueError(f"Unknown Kulc mode: {self.kulc_mode}")
        if self.bounds_mode not in BOUNDS_MODES:
            raise ValueError(f"Unknown bounds mode: {self.bounds_mode}")
        if self.max_pattern_length is not None and self.max_pattern_length < 1:
            raise ValueError(f"Invalid maximal pattern length: {self.max_pattern_length}")
        return self

    def threshold(self, total_utility: int) -> float:
        """the absolute utility threshold for a database with the given total utility"""
        if self.absolute:
            return float(self.min_util)
        return self.min_util * total_utility


class CohuiRecord(NamedTuple):
    itemset: Itemset
    utility: int
    support: int
    kulc: float


def record_key(record: CohuiRecord) -> tuple[int, Itemset]:
    """records go by length, then lexicographically"""
    return len(record.itemset), record.itemset


class MiningStats:
    def __init__(self) -> None:
        self.candidates: int = 0
        self.patterns: int = 0
        self.nodes_visited: int = 0
        self.nodes_pruned_by_kulc: int = 0
        self.secondary_root: int = 0
        self.primary_root: int = 0
        self.wall_time: float = 0.0
        self.peak_memory: int | None = None
        self.peak_memory_source: str | None = None

    def __repr__(self) -> str:
        return f"MiningStats({', '.join(f'{key}={value!r}' for key, value in self.to_dict().items())})"

    def to_dict(self) -> dict[str, Any]:
        return {
            CANDIDATES: self.candidates,
            PATTERNS: self.patterns,
            NODES_VISITED: self.nodes_visited,
            NODES_PRUNED_BY_KULC: self.nodes_pruned_by_kulc,
            SECONDARY_ROOT: self.secondary_root,
            PRIMARY_ROOT: self.primary_root,
            WALL_TIME: self.wall_time,
            PEAK_MEMORY: self.peak_memory,
            PEAK_MEMORY_SOURCE: self.peak_memory_source,
        }


def kulc(support: int, member_supports: Sequence[int]) -> float:
    """
    The Kulczynski measure of an itemset: the mean of sup(X) / sup(i) over the members

    :param int support: The support of the itemset.
    :param member_supports: The supports of the single members.
    :return: A number in [0, 1].
    """
    if not member_supports:
        raise ValueError("No members given")
    if any(s <= 0 for s in member_supports):
        raise ValueError(f"Non-positive member support in {list(member_supports)}")
    return sum(support / s for s in member_supports) / len(member_supports)


def emit_singletons(
    secondary: Sequence[int],
    singleton_utilities: Sequence[int],
    threshold: float,
    sink: Callable[[Sequence[int], int], None],
) -> None:
    """pass every secondary rank whose single-item utility reaches the threshold to the sink"""
    rank: int
    for rank in secondary:
        if singleton_utilities[rank] >= threshold:
            sink([rank], singleton_utilities[rank])


class Miner:
    """The depth-first search over the rank-ordered set-enumeration tree"""

    def __init__(self, odb: OrderedDatabase, params: MiningParams, threshold: float) -> None:
        self.odb: OrderedDatabase = odb
        self.order: ItemOrder = odb.order
        self.params: MiningParams = params
        self.threshold: float = threshold
        self.prune: bool = params.kulc_mode == PRUNE
        self.records: list[CohuiRecord] = []
        self.stats: MiningStats = MiningStats()
        self._supports: tuple[int, ...] = odb.singleton_supports
        self._ua_lu: UtilityBinArray = UtilityBinArray(odb.item_count)
        self._ua_su: UtilityBinArray = UtilityBinArray(odb.item_count)

    def emit(self, ranks: Sequence[int], utility: int, support: int, kulc_value: float) -> None:
        self.records.append(
            CohuiRecord(itemset=self.order.itemset(ranks), utility=utility, support=support, kulc=kulc_value)
        )

    def _emit_singleton(self, ranks: Sequence[int], utility: int) -> None:
        self.emit(ranks, utility, self._supports[ranks[0]], 1.0)

    def partition(self, view: ProjectedView, candidates: list[int]) -> NodePartition:
        if self.params.bounds_mode == TWU_ONLY:
            compute_twu(view, self._ua_lu, candidates)
            return partition(self._ua_lu, self._ua_lu, candidates, self.threshold)
        compute_lu(view, self._ua_lu, candidates)
        compute_su(view, self._ua_su, candidates)
        return partition(self._ua_lu, self._ua_su, candidates, self.threshold)

    def search(self, view: ProjectedView, prefix: list[int], primary: Sequence[int], secondary: Sequence[int]) -> None:
        """
        Extend the prefix α with every primary rank, report the correlated high-utility extensions,
        and descend into the promising ones

        :param ProjectedView view: The projection of α.
        :param list[int] prefix: The ranks of α.
        :param primary: The ranks to extend α with.
        :param secondary: The ranks allowed to appear in the extensions.
        """
        max_length: int | None = self.params.max_pattern_length
        i: int
        for i in primary:
            self.stats.candidates += 1
            beta_view: ProjectedView
            utility: int
            support: int
            beta_view, utility, support = extend(view, i)
            if not support:
                continue
            beta: list[int] = prefix + [i]
            kulc_value: float = kulc(support, [self._supports[rank] for rank in beta])
            # singletons are reported once by `emit_singletons`
            if len(beta) > 1 and utility >= self.threshold and kulc_value >= self.params.min_cor:
                self.emit(beta, utility, support, kulc_value)
            if self.prune and kulc_value < self.params.min_cor:
                self.stats.nodes_pruned_by_kulc += 1
                continue
            if max_length is not None and len(beta) >= max_length:
                continue
            candidates: list[int] = [z for z in secondary if z > i]
            if not candidates:
                continue
            node: NodePartition = self.partition(beta_view, candidates)
            if node.primary:
                self.stats.nodes_visited += 1
                self.search(beta_view, beta, node.primary, node.secondary)

    def run(self, primary: Sequence[int]) -> list[CohuiRecord]:
        secondary: list[int] = list(range(self.odb.item_count))
        self.stats.secondary_root = len(secondary)
        self.stats.primary_root = len(primary)
        emit_singletons(secondary, self.odb.singleton_utilities, self.threshold, self._emit_singleton)
        if primary:
            self.stats.nodes_visited += 1
            self.search(root_view(self.odb), [], primary, secondary)
        self.records.sort(key=record_key)
        self.stats.patterns = len(self.records)
        return self.records


def mine(db: Database, params: MiningParams) -> tuple[list[CohuiRecord], MiningStats]:
    """
    Find the correlated high-utility itemsets

    :param Database db: The transactions.
    :param MiningParams params: The thresholds and the modes.
    :return: The records sorted by length and then lexicographically, and the run counters.
    """
    params.validate()
    start: float = time.perf_counter()
    threshold: float = params.threshold(db.total_utility)
    logger.debug(f"absolute utility threshold {threshold} of TU = {db.total_utility}")
    if not db or threshold > db.total_utility:
        stats: MiningStats = MiningStats()
        stats.wall_time = time.perf_counter() - start
        return [], stats

    item_stats: ItemStats = compute_item_stats(db)
    secondary: frozenset[int] = build_secondary_root(item_stats, threshold)
    order: ItemOrder = build_order(secondary, item_stats)
    odb: OrderedDatabase = rewrite_database(db, order, secondary, stats=item_stats, threshold=threshold)
    primary: list[int]
    if params.bounds_mode == TWU_ONLY:
        primary = list(range(odb.item_count))
    else:
        primary = compute_primary_root(odb, threshold)
    logger.debug(f"{len(secondary)} secondary and {len(primary)} primary items at the root")

    miner: Miner = Miner(odb, params, threshold)
    records: list[CohuiRecord] = miner.run(primary)
    miner.stats.wall_time = time.perf_counter() - start
    logger.info(
        f"{len(records)} patterns, {miner.stats.candidates} candidates, "
        f"{miner.stats.nodes_pruned_by_kulc} subtrees pruned by Kulc in {miner.stats.wall_time:.3f} s"
    )
    return records, miner.stats
