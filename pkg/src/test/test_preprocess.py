#!/usr/bin/env python3
# -*- coding: utf-8 -*-
from __future__ import annotations


def _shop_ordered(threshold: float = 33.4):
    from pycoium.preprocess import build_order, build_secondary_root, compute_item_stats, rewrite_database

    from sample_databases import shop

    db = shop()
    stats = compute_item_stats(db)
    secondary = build_secondary_root(stats, threshold)
    return rewrite_database(db, build_order(secondary, stats), secondary, stats=stats, threshold=threshold)


def test_item_stats():
    from pycoium.preprocess import ItemStats, compute_item_stats

    from sample_databases import A, B, C, D, E, F, shop

    stats: ItemStats = compute_item_stats(shop())
    assert stats.twu == {A: 108, B: 114, C: 149, D: 109, E: 85, F: 87}
    assert stats.support == {A: 5, B: 5, C: 7, D: 5, E: 4, F: 4}
    assert stats.utility == {A: 44, B: 20, C: 18, D: 51, E: 22, F: 12}


def test_order():
    from pycoium.preprocess import ItemOrder, ItemStats, build_order, build_secondary_root, compute_item_stats

    from sample_databases import A, B, C, D, E, F, shop

    stats: ItemStats = compute_item_stats(shop())
    assert build_secondary_root(stats, 33.4) == {A, B, C, D, E, F}
    assert build_secondary_root(stats, 100) == {A, B, C, D}
    assert build_secondary_root(stats, 150) == frozenset()

    order: ItemOrder = build_order(build_secondary_root(stats, 33.4), stats)
    assert order.inverse == (E, F, A, D, B, C)
    assert order.rank_of(A) == 2
    assert order.item_of(5) == C
    assert order.itemset([5, 0, 2]) == (A, C, E)
    assert order.ranks([C, E]) == [0, 5]

    # ties in TWU go by the item id
    tied: ItemStats = ItemStats(twu={7: 10, 3: 10, 5: 4}, support={}, utility={})
    assert build_order({3, 5, 7}, tied).inverse == (5, 3, 7)


def test_transaction_order():
    from pycoium.preprocess import compare_transactions

    # the last items decide, the lower rank first
    assert compare_transactions(([0, 2], 1), ([1], 2)) > 0
    assert compare_transactions(([1], 2), ([0, 2], 1)) < 0
    # then the ones before
    assert compare_transactions(([0, 4, 5], 3), ([2, 4, 5], 1)) < 0
    # a back suffix of another transaction goes first
    assert compare_transactions(([3], 1), ([2, 3], 2)) < 0
    # the same items go by tid
    assert compare_transactions(([1, 3], 4), ([1, 3], 2)) > 0
    assert compare_transactions(([1, 3], 4), ([1, 3], 4)) == 0


def test_rewrite():
    from pycoium.preprocess import OrderedDatabase

    from sample_databases import A, C, E

    odb: OrderedDatabase = _shop_ordered()
    assert odb.tids == [2, 3, 4, 8, 5, 6, 1, 7]
    assert odb.item_count == 6
    assert odb.transaction(0) == [(0, 6), (1, 2), (2, 8), (4, 2)]
    assert odb.transaction(7) == [(0, 10), (1, 2), (2, 4), (3, 9), (4, 4), (5, 2)]
    assert odb.original_transaction(1) == {E: 4, A: 16, C: 3}
    assert odb.tus == [18, 23, 17, 13, 25, 21, 19, 31]
    assert odb.singleton_supports == (4, 4, 5, 5, 5, 7)
    assert odb.singleton_utilities == (22, 12, 44, 51, 20, 18)
    assert odb.total_utility == 167
    assert odb.absolute_threshold == 33.4


def test_rewrite_drops_items():
    from pycoium.preprocess import OrderedDatabase

    from sample_databases import A, B, C, D

    # E and F have TWU below 100
    odb: OrderedDatabase = _shop_ordered(100)
    assert odb.order.inverse == (A, D, B, C)
    assert len(odb) == 8
    assert sum(odb.tus) == 167 - 22 - 12
    assert odb.transaction(odb.tids.index(3)) == [(0, 16), (3, 3)]

    # nothing survives
    assert not _shop_ordered(150)


def test_primary_root():
    from pycoium.preprocess import OrderedDatabase, compute_primary_root

    odb: OrderedDatabase = _shop_ordered()
    assert compute_primary_root(odb, 33.4) == [0, 1, 2, 3]
    assert compute_primary_root(odb, 82) == [0, 3]
    assert compute_primary_root(odb, 84) == [0]
    assert compute_primary_root(odb, 86) == []


def test_transaction_order_on_random_rows():
    from random import Random

    from pycoium.preprocess import compare_transactions

    def sign(value: int) -> int:
        return (value > 0) - (value < 0)

    def random_row(rng: Random) -> tuple[list[int], int]:
        return sorted(rng.sample(range(6), rng.randint(1, 4))), rng.randint(1, 3)

    rng: Random = Random(0x70)
    for _ in range(2000):
        a: tuple[list[int], int] = random_row(rng)
        b: tuple[list[int], int] = random_row(rng)
        c: tuple[list[int], int] = random_row(rng)
        assert compare_transactions(a, a) == 0
        assert sign(compare_transactions(a, b)) == -sign(compare_transactions(b, a)), (a, b)
        assert (compare_transactions(a, b) == 0) == (a == b), (a, b)
        if compare_transactions(a, b) <= 0 and compare_transactions(b, c) <= 0:
            assert compare_transactions(a, c) <= 0, (a, b, c)
        if compare_transactions(a, b) < 0 and compare_transactions(b, c) < 0:
            assert compare_transactions(a, c) < 0, (a, b, c)


def test_rewrite_of_random_databases():
    from random import Random

    from pycoium.dataset import itemset_support, itemset_utility
    from pycoium.preprocess import (
        ItemStats,
        OrderedDatabase,
        build_order,
        build_secondary_root,
        compare_transactions,
        compute_item_stats,
        rewrite_database,
    )

    from sample_databases import random_database

    rng: Random = Random(0x5E)
    for _ in range(40):
        db = random_database(rng)
        stats: ItemStats = compute_item_stats(db)
        threshold: float = rng.choice([0.0, 0.2, 0.4, 0.6]) * db.total_utility
        secondary: frozenset[int] = build_secondary_root(stats, threshold)
        odb: OrderedDatabase = rewrite_database(db, build_order(secondary, stats), secondary, stats=stats)
        assert odb.item_count == len(secondary)

        rank: int
        item: int
        for rank, item in enumerate(odb.order.inverse):
            # counted again over the rewritten rows and over the original ones
            support: int = sum(1 for t in range(len(odb)) if rank in odb.items[odb.starts[t] : odb.ends[t]])
            assert support == odb.singleton_supports[rank] == itemset_support([item], db), (db, item)
            assert odb.singleton_utilities[rank] == itemset_utility([item], db), (db, item)

        t: int
        for t in range(len(odb)):
            original: dict[int, int] = db.transactions[odb.tids[t] - 1].as_dict()
            assert odb.original_transaction(t) == dict((i, u) for i, u in original.items() if i in secondary)
            assert odb.tus[t] == sum(u for i, u in original.items() if i in secondary)
        for t in range(1, len(odb)):
            assert (
                compare_transactions(
                    (odb.items[odb.starts[t - 1] : odb.ends[t - 1]], odb.tids[t - 1]),
                    (odb.items[odb.starts[t] : odb.ends[t]], odb.tids[t]),
                )
                < 0
            )
        assert len(odb) == sum(1 for t in db if secondary.intersection(t.items))


if __name__ == "__main__":
    import sys
    from os import path

    sys.path = list(
        set(sys.path)
        | {path.abspath(path.join(__file__, path.pardir, path.pardir)), path.abspath(path.dirname(__file__))}
    )

    test_item_stats()
    test_order()
    test_transaction_order()
    test_rewrite()
    test_rewrite_drops_items()
    test_primary_root()
    test_transaction_order_on_random_rows()
    test_rewrite_of_random_databases()
