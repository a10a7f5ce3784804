# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
from functools import cmp_to_key
from typing import AbstractSet, Iterable, NamedTuple, Sequence

from .dataset import Database, Transaction

__all__ = [
    "ItemStats",
    "ItemOrder",
    "OrderedDatabase",
    "compute_item_stats",
    "build_secondary_root",
    "build_order",
    "compare_transactions",
    "rewrite_database",
    "compute_primary_root",
]

logger: logging.Logger = logging.getLogger("preprocess")


class ItemStats(NamedTuple):
    """The first database scan: TWU, support, and utility of every single item"""

    twu: dict[int, int]
    support: dict[int, int]
    utility: dict[int, int]


class ItemOrder:
    """the total order ≻ on items: TWU ascending, ties broken by the ascending original id"""

    def __init__(self, items: Iterable[int]) -> None:
        self._inverse: tuple[int, ...] = tuple(items)
        self._rank: dict[int, int] = dict((item, rank) for rank, item in enumerate(self._inverse))
        if len(self._rank) != len(self._inverse):
            raise ValueError("Duplicate items in the order")

    def __len__(self) -> int:
        return len(self._inverse)

    def __contains__(self, item: int) -> bool:
        return item in self._rank

    def __repr__(self) -> str:
        return f"ItemOrder({list(self._inverse)!r})"

    @property
    def rank(self) -> dict[int, int]:
        return self._rank.copy()

    @property
    def inverse(self) -> tuple[int, ...]:
        return self._inverse

    def rank_of(self, item: int) -> int:
        return self._rank[item]

    def item_of(self, rank: int) -> int:
        return self._inverse[rank]

    def itemset(self, ranks: Iterable[int]) -> tuple[int, ...]:
        """the original ids of the ranks, sorted ascending"""
        return tuple(sorted(self._inverse[rank] for rank in ranks))

    def ranks(self, items: Iterable[int]) -> list[int]:
        """the ranks of the items in the mining order"""
        return sorted(self._rank[item] for item in items)


class OrderedDatabase:
    """
    The database after the root pruning: items renamed to their ranks, transactions sorted by ≻_T

    The transactions are stored in flat arrays, the entries of the transaction `t`
    are `items[starts[t]:ends[t]]` and `utilities[starts[t]:ends[t]]`, sorted by rank.
    """

    def __init__(
        self,
        order: ItemOrder,
        rows: Sequence[tuple[int, Sequence[tuple[int, int]]]],
        singleton_supports: Sequence[int],
        singleton_utilities: Sequence[int],
        absolute_threshold: float,
        total_utility: int,
    ) -> None:
        self.order: ItemOrder = order
        self.items: list[int] = []
        self.utilities: list[int] = []
        self.starts: list[int] = []
        self.ends: list[int] = []
        self.tids: list[int] = []
        self.tus: list[int] = []
        tid: int
        entries: Sequence[tuple[int, int]]
        for tid, entries in rows:
            self.starts.append(len(self.items))
            self.items.extend(rank for rank, _ in entries)
            self.utilities.extend(utility for _, utility in entries)
            self.ends.append(len(self.items))
            self.tids.append(tid)
            self.tus.append(sum(utility for _, utility in entries))
        self.singleton_supports: tuple[int, ...] = tuple(singleton_supports)
        self.singleton_utilities: tuple[int, ...] = tuple(singleton_utilities)
        self.absolute_threshold: float = absolute_threshold
        self.total_utility: int = total_utility

    def __len__(self) -> int:
        return len(self.tids)

    def __bool__(self) -> bool:
        return bool(self.tids)

    @property
    def item_count(self) -> int:
        return len(self.order)

    def transaction(self, index: int) -> list[tuple[int, int]]:
        """the (rank, utility) entries of a transaction"""
        start: int = self.starts[index]
        end: int = self.ends[index]
        return list(zip(self.items[start:end], self.utilities[start:end]))

    def original_transaction(self, index: int) -> dict[int, int]:
        """the entries of a transaction with the original item ids"""
        return dict((self.order.item_of(rank), utility) for rank, utility in self.transaction(index))


def compute_item_stats(db: Database) -> ItemStats:
    twu: dict[int, int] = dict()
    support: dict[int, int] = dict()
    utility: dict[int, int] = dict()
    t: Transaction
    for t in db:
        item: int
        u: int
        for item, u in zip(t.items, t.utilities):
            twu[item] = twu.get(item, 0) + t.tu
            support[item] = support.get(item, 0) + 1
            utility[item] = utility.get(item, 0) + u
    return ItemStats(twu=twu, support=support, utility=utility)


def build_secondary_root(stats: ItemStats, threshold: float) -> frozenset[int]:
    """the items whose TWU, that is lu(∅, i), reaches the threshold"""
    return frozenset(item for item, twu in stats.twu.items() if twu >= threshold)


def build_order(secondary: AbstractSet[int], stats: ItemStats) -> ItemOrder:
    return ItemOrder(sorted(secondary, key=lambda item: (stats.twu[item], item)))


def compare_transactions(a: tuple[Sequence[int], int], b: tuple[Sequence[int], int]) -> int:
    """
    The ≻_T order of two rewritten transactions given as (ranks, tid)

    The items are compared from the last one backwards, the first unequal position decides,
    the lower rank goes first. When one transaction is a back suffix of the other one,
    the shorter goes first. Transactions with the same items are ordered by tid.

    :return: A negative number if `a` precedes `b`, a positive one if `b` precedes `a`, and 0 for the same tid.
    """
    ranks_a, tid_a = a
    ranks_b, tid_b = b
    i: int = len(ranks_a) - 1
    j: int = len(ranks_b) - 1
    while i >= 0 and j >= 0:
        if ranks_a[i] != ranks_b[j]:
            return ranks_a[i] - ranks_b[j]
        i -= 1
        j -= 1
    if len(ranks_a) != len(ranks_b):
        return len(ranks_a) - len(ranks_b)
    return tid_a - tid_b


def rewrite_database(
    db: Database,
    order: ItemOrder,
    secondary: AbstractSet[int],
    *,
    stats: ItemStats | None = None,
    threshold: float = 0.0,
) -> OrderedDatabase:
    """
    Keep the secondary items only, rename them to ranks, drop empty transactions, and sort by ≻_T

    :param Database db: The loaded database.
    :param ItemOrder order: The order of exactly the secondary items.
    :param secondary: The items to keep.
    :param ItemStats stats: The first-scan statistics to take the singleton supports and utilities from.
        They do not change with the removal of other items. Computed when not given.
    :param float threshold: The absolute utility threshold to record.
    :return: The rewritten database.
    """
    if set(order.inverse) != set(secondary):
        raise ValueError("The order must cover exactly the secondary items")
    if stats is None:
        stats = compute_item_stats(db)

    rank: dict[int, int] = order.rank
    rows: list[tuple[int, list[tuple[int, int]]]] = []
    t: Transaction
    for t in db:
        entries: list[tuple[int, int]] = sorted(
            (rank[item], utility) for item, utility in zip(t.items, t.utilities) if item in rank
        )
        if entries:
            rows.append((t.tid, entries))

    def sort_key(row: tuple[int, list[tuple[int, int]]]) -> tuple[list[int], int]:
        return [r for r, _ in row[1]], row[0]

    transaction_key = cmp_to_key(compare_transactions)
    rows.sort(key=lambda row: transaction_key(sort_key(row)))

    odb: OrderedDatabase = OrderedDatabase(
        order=order,
        rows=rows,
        singleton_supports=[stats.support[item] for item in order.inverse],
        singleton_utilities=[stats.utility[item] for item in order.inverse],
        absolute_threshold=threshold,
        total_utility=db.total_utility,
    )
    logger.debug(f"rewritten {len(odb)} of {len(db)} transactions over {len(order)} items")
    return odb


def compute_primary_root(odb: OrderedDatabase, threshold: float) -> list[int]:
    """the ranks whose subtree utility at the root reaches the threshold"""
    from .bounds import UtilityBinArray, compute_su
    from .projection import root_view

    candidates: list[int] = list(range(odb.item_count))
    su: UtilityBinArray = compute_su(root_view(odb), UtilityBinArray(odb.item_count), candidates)
    return [rank for rank in candidates if su[rank] >= threshold]
