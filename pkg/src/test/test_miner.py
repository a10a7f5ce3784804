#!/usr/bin/env python3
# -*- coding: utf-8 -*-
from __future__ import annotations

# itemset: (utility, support) at minUtil 0.2 and minCor 0.3
SHOP_PATTERNS: dict[tuple[int, ...], tuple[int, int]] = {
    (1,): (44, 5),
    (4,): (51, 5),
    (1, 3): (45, 4),
    (1, 5): (48, 3),
    (2, 4): (60, 4),
    (3, 4): (64, 5),
    (1, 2, 4): (34, 2),
    (1, 2, 5): (34, 2),
    (1, 3, 5): (39, 2),
    (2, 3, 4): (71, 4),
    (3, 4, 5): (34, 2),
    (1, 2, 3, 4): (38, 2),
    (1, 2, 5, 6): (38, 2),
    (2, 3, 4, 6): (38, 2),
}
STRONGLY_CORRELATED: list[tuple[int, ...]] = [(1,), (4,), (1, 3), (1, 5), (2, 4), (3, 4), (2, 3, 4)]


def test_kulc():
    from pycoium.miner import kulc

    assert kulc(3, [5, 5]) == 0.6
    assert kulc(4, [4]) == 1.0
    assert abs(kulc(4, [5, 7, 5]) - 0.7238095238095) < 1e-12
    assert kulc(0, [3, 4]) == 0.0

    for bad in ([], [3, 0]):
        try:
            kulc(1, bad)
        except ValueError:
            pass
        else:
            assert False, f"{bad} accepted"


def test_params():
    from pycoium.miner import MiningParams

    assert MiningParams(0.2, 0.3).threshold(167) == 0.2 * 167
    assert MiningParams(40, 0.3, absolute=True).validate().threshold(167) == 40.0

    bad: MiningParams
    for bad in (
        MiningParams(1.5, 0.3),
        MiningParams(-0.1, 0.3),
        MiningParams(0.2, 1.1),
        MiningParams(0.2, -0.1),
        MiningParams(0.2, 0.3, kulc_mode="maybe"),
        MiningParams(0.2, 0.3, bounds_mode="none"),
        MiningParams(0.2, 0.3, max_pattern_length=0),
    ):
        try:
            bad.validate()
        except ValueError:
            pass
        else:
            assert False, f"{bad} accepted"


def test_shop():
    from pycoium.miner import CohuiRecord, MiningParams, MiningStats, kulc, mine
    from pycoium.preprocess import compute_item_stats
    from pycoium.utils import POSTFILTER, PRUNE

    from sample_databases import shop

    db = shop()
    supports: dict[int, int] = compute_item_stats(db).support
    kulc_mode: str
    for kulc_mode in (PRUNE, POSTFILTER):
        records: list[CohuiRecord]
        stats: MiningStats
        records, stats = mine(db, MiningParams(0.2, 0.3, kulc_mode=kulc_mode))
        assert [r.itemset for r in records] == list(SHOP_PATTERNS), kulc_mode
        assert dict((r.itemset, (r.utility, r.support)) for r in records) == SHOP_PATTERNS
        record: CohuiRecord
        for record in records:
            assert abs(record.kulc - kulc(record.support, [supports[item] for item in record.itemset])) < 1e-12
        assert stats.patterns == 14
        assert stats.secondary_root == 6
        assert stats.primary_root == 4
        assert stats.patterns <= stats.candidates + 2

        records, _ = mine(db, MiningParams(0.2, 0.5, kulc_mode=kulc_mode))
        assert [r.itemset for r in records] == STRONGLY_CORRELATED, kulc_mode

    records, _ = mine(db, MiningParams(33.4, 0.3, absolute=True))
    assert len(records) == 14


def test_correlation_filters_high_utility():
    from pycoium.miner import MiningParams, mine

    from sample_databases import A, B, D, shop

    records, _ = mine(shop(), MiningParams(0.1, 0.7))
    found: dict[tuple[int, ...], float] = dict((r.itemset, r.kulc) for r in records)
    assert abs(found[(B, D)] - 0.8) < 1e-12
    # u(A, B) = 26 passes 16.7, Kulc 0.6 does not pass 0.7
    assert (A, B) not in found

    records, _ = mine(shop(), MiningParams(0.1, 0.6))
    assert (A, B) in [r.itemset for r in records]


def test_empty_results():
    from pycoium.dataset import Database
    from pycoium.miner import MiningParams, mine

    from sample_databases import shop

    records, stats = mine(shop(), MiningParams(1.0, 0.0))
    assert records == []
    records, stats = mine(shop(), MiningParams(200, 0.0, absolute=True))
    assert records == []
    assert stats.candidates == 0
    records, stats = mine(Database(), MiningParams(0.2, 0.3))
    assert records == []
    assert stats.patterns == 0


def test_max_pattern_length():
    from pycoium.miner import MiningParams, mine

    from sample_databases import shop

    records, _ = mine(shop(), MiningParams(0.2, 0.3, max_pattern_length=2))
    assert [r.itemset for r in records] == [i for i in SHOP_PATTERNS if len(i) <= 2]
    records, _ = mine(shop(), MiningParams(0.2, 0.3, max_pattern_length=1))
    assert [r.itemset for r in records] == [(1,), (4,)]


def test_emit_singletons():
    from pycoium.miner import emit_singletons

    utilities: list[int] = [22, 12, 44, 51, 20, 18]
    found: list[tuple[list[int], int]] = []

    def sink(ranks, utility):
        found.append((list(ranks), utility))

    emit_singletons(range(6), utilities, 33.4, sink)
    assert found == [([2], 44), ([3], 51)]
    found.clear()
    emit_singletons(range(6), utilities, 52, sink)
    assert found == []
    emit_singletons(range(6), utilities, 0, sink)
    assert len(found) == 6


def test_search_below_a():
    from pycoium.miner import Miner, MiningParams
    from pycoium.preprocess import build_order, build_secondary_root, compute_item_stats, rewrite_database
    from pycoium.projection import extend, root_view
    from pycoium.utils import POSTFILTER

    from sample_databases import shop

    db = shop()
    stats = compute_item_stats(db)
    secondary = build_secondary_root(stats, 33.4)
    odb = rewrite_database(db, build_order(secondary, stats), secondary, stats=stats, threshold=33.4)

    miner: Miner = Miner(odb, MiningParams(0.2, 0.3, kulc_mode=POSTFILTER), 33.4)
    # A has the rank 2, Primary(A) = {D, C}, Secondary(A) = {D, B, C}
    miner.search(extend(root_view(odb), 2)[0], [2], [3, 5], [3, 4, 5])
    # A, D is below the threshold, yet A, D, B and A, D, B, C are not
    assert sorted((r.itemset, r.utility) for r in miner.records) == [
        ((1, 2, 3, 4), 38),
        ((1, 2, 4), 34),
        ((1, 3), 45),
    ]
    # A, D; A, D, B; A, D, B, C; A, C
    assert miner.stats.candidates == 4

    miner = Miner(odb, MiningParams(0.2, 0.3), 33.4)
    miner.search(extend(root_view(odb), 2)[0], [2], [], [3, 4, 5])
    assert miner.records == []
    assert miner.stats.candidates == 0


def test_kulc_pruning():
    from pycoium.dataset import load_database
    from pycoium.miner import MiningParams, mine
    from pycoium.utils import POSTFILTER, PRUNE

    from sample_databases import KULC_GROWS

    db = load_database(KULC_GROWS.splitlines())
    complete, complete_stats = mine(db, MiningParams(3, 0.35, kulc_mode=POSTFILTER, absolute=True))
    assert [r.itemset for r in complete] == [(2,), (3,), (1, 2, 3)]
    assert complete_stats.nodes_pruned_by_kulc == 0

    pruned, pruned_stats = mine(db, MiningParams(3, 0.35, kulc_mode=PRUNE, absolute=True))
    assert [r.itemset for r in pruned] == [(2,), (3,)]
    assert pruned_stats.nodes_pruned_by_kulc > 0
    assert pruned_stats.candidates < complete_stats.candidates


def test_bounds_modes():
    from random import Random

    from pycoium.miner import MiningParams, mine
    from pycoium.utils import LU_SU, POSTFILTER, TWU_ONLY

    from sample_databases import random_database

    rng: Random = Random(20240607)
    for _ in range(50):
        db = random_database(rng)
        min_util: float = rng.uniform(0.0, 0.4)
        min_cor: float = rng.uniform(0.0, 1.0)
        tight, tight_stats = mine(db, MiningParams(min_util, min_cor, POSTFILTER, LU_SU))
        loose, loose_stats = mine(db, MiningParams(min_util, min_cor, POSTFILTER, TWU_ONLY))
        assert tight == loose
        assert tight_stats.candidates <= loose_stats.candidates


def test_monotonicity():
    from random import Random

    from pycoium.miner import MiningParams, mine
    from pycoium.utils import KULC_MODES

    from sample_databases import random_database

    rng: Random = Random(42)
    for _ in range(50):
        db = random_database(rng)
        min_util: float = rng.uniform(0.0, 0.4)
        min_cor: float = rng.uniform(0.0, 0.9)
        stricter_util: float = min_util + rng.uniform(0.0, 0.2)
        stricter_cor: float = min(1.0, min_cor + rng.uniform(0.0, 0.3))
        kulc_mode: str
        for kulc_mode in KULC_MODES:
            loose, _ = mine(db, MiningParams(min_util, min_cor, kulc_mode))
            loose_set: set[tuple[int, ...]] = set(r.itemset for r in loose)
            for params in (
                MiningParams(stricter_util, min_cor, kulc_mode),
                MiningParams(min_util, stricter_cor, kulc_mode),
                MiningParams(stricter_util, stricter_cor, kulc_mode),
            ):
                strict, _ = mine(db, params)
                assert set(r.itemset for r in strict) <= loose_set, (db, params)


def test_determinism():
    from pycoium.miner import MiningParams, mine

    from sample_databases import shop

    first, _ = mine(shop(), MiningParams(0.1, 0.2))
    second, _ = mine(shop(), MiningParams(0.1, 0.2))
    assert first == second


if __name__ == "__main__":
    import sys
    from os import path

    sys.path = list(
        set(sys.path)
        | {path.abspath(path.join(__file__, path.pardir, path.pardir)), path.abspath(path.dirname(__file__))}
    )

    test_kulc()
    test_params()
    test_shop()
    test_correlation_filters_high_utility()
    test_empty_results()
    test_max_pattern_length()
    test_emit_singletons()
    test_search_below_a()
    test_kulc_pruning()
    test_bounds_modes()
    test_monotonicity()
    test_determinism()
