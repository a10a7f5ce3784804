# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, NamedTuple, Sequence

from .dataset import Database
from .miner import CohuiRecord, MiningParams, kulc, record_key
from .utils import KULC_TOLERANCE, Itemset, format_kulc

__all__ = [
    "OracleRefusal",
    "Caps",
    "OracleResult",
    "ReferenceScanner",
    "enumerate_all",
    "Mismatch",
    "DiffReport",
    "compare",
    "PruningLoss",
    "audit_pruning",
    "Counterexample",
    "kulc_growth_counterexamples",
]

logger: logging.Logger = logging.getLogger("oracle")


class OracleRefusal(RuntimeError):
    pass


class Caps(NamedTuple):
    max_items: int = 20
    max_length: int | None = None

    def lattice_limit(self) -> int:
        return 2**self.max_items - 1


class OracleResult(NamedTuple):
    records: list[CohuiRecord]
    enumerated: int


class ReferenceScanner:
    """Plain full-database scans, one per question"""

    def __init__(self, db: Database) -> None:
        self.transactions: list[dict[int, int]] = [t.as_dict() for t in db]
        self.items: list[int] = db.items
        self._supports: dict[int, int] = dict((item, self.support((item,))) for item in self.items)

    def support(self, itemset: Iterable[int]) -> int:
        members: frozenset[int] = frozenset(itemset)
        return sum(1 for t in self.transactions if members.issubset(t))

    def utility(self, itemset: Iterable[int]) -> int:
        members: frozenset[int] = frozenset(itemset)
        return sum(sum(t[item] for item in members) for t in self.transactions if members.issubset(t))

    def twu(self, item: int) -> int:
        return sum(sum(t.values()) for t in self.transactions if item in t)

    def kulc(self, itemset: Sequence[int], support: int | None = None) -> float:
        if support is None:
            support = self.support(itemset)
        return kulc(support, [self._supports[item] for item in itemset])

    def mining_order(self, itemset: Iterable[int]) -> list[int]:
        """the members in the order the search adds them: TWU ascending, then by id"""
        return sorted(itemset, key=lambda item: (self.twu(item), item))

    def prefixes(self, itemset: Iterable[int]) -> Iterator[tuple[int, ...]]:
        """the proper prefixes of two or more members along the mining order"""
        ordered: list[int] = self.mining_order(itemset)
        length: int
        for length in range(2, len(ordered)):
            yield tuple(ordered[:length])


def lattice_size(item_count: int, max_length: int | None = None) -> int:
    if max_length is None or max_length > item_count:
        max_length = item_count
    return sum(comb(item_count, k) for k in range(1, max_length + 1))


def enumerate_all(db: Database, params: MiningParams, caps: Caps = Caps()) -> OracleResult:
    """
    Evaluate every itemset over the items of the database

    :param Database db: The transactions.
    :param MiningParams params: The thresholds; the Kulc mode and the bounds mode are irrelevant here.
    :param Caps caps: The limits on the lattice to evaluate.
    :return: The itemsets that occur, reach the utility threshold, and are correlated enough,
        and the number of the itemsets evaluated.
    """
    params.validate()
    scanner: ReferenceScanner = ReferenceScanner(db)
    max_length: int | None = caps.max_length
    if params.max_pattern_length is not None:
        max_length = min(max_length or params.max_pattern_length, params.max_pattern_length)
    size: int = lattice_size(len(scanner.items), max_length)
    if size > caps.lattice_limit():
        raise OracleRefusal(
            f"{len(scanner.items)} items make {size} itemsets to evaluate, "
            f"more than the limit of {caps.lattice_limit()}, consider limiting the pattern length"
        )
    if max_length is None:
        max_length = len(scanner.items)

    threshold: float = params.threshold(db.total_utility)
    records: list[CohuiRecord] = []
    enumerated: int = 0
    length: int
    for length in range(1, max_length + 1):
        itemset: Itemset
        for itemset in combinations(scanner.items, length):
            enumerated += 1
            support: int = scanner.support(itemset)
            if not support:
                continue
            utility: int = scanner.utility(itemset)
            if utility < threshold:
                continue
            kulc_value: float = scanner.kulc(itemset, support)
            if kulc_value >= params.min_cor:
                records.append(CohuiRecord(itemset=itemset, utility=utility, support=support, kulc=kulc_value))
    records.sort(key=record_key)
    logger.debug(f"{enumerated} itemsets evaluated, {len(records)} qualify")
    return OracleResult(records=records, enumerated=enumerated)


class Mismatch(NamedTuple):
    mined: CohuiRecord
    reference: CohuiRecord

    def __str__(self) -> str:
        return (
            f"{' '.join(map(str, self.mined.itemset))}: "
            f"utility {self.mined.utility} vs {self.reference.utility}, "
            f"support {self.mined.support} vs {self.reference.support}, "
            f"Kulc {format_kulc(self.mined.kulc)} vs {format_kulc(self.reference.kulc)}"
        )


class DiffReport:
    def __init__(
        self,
        missing: Sequence[CohuiRecord] = (),
        spurious: Sequence[CohuiRecord] = (),
        mismatches: Sequence[Mismatch] = (),
    ) -> None:
        self.missing: list[CohuiRecord] = list(missing)
        self.spurious: list[CohuiRecord] = list(spurious)
        self.mismatches: list[Mismatch] = list(mismatches)

    def __bool__(self) -> bool:
        return bool(self.missing or self.spurious or self.mismatches)

    def __len__(self) -> int:
        return len(self.missing) + len(self.spurious) + len(self.mismatches)

    def __repr__(self) -> str:
        return (
            f"DiffReport(missing={len(self.missing)}, spurious={len(self.spurious)}, "
            f"mismatches={len(self.mismatches)})"
        )

    def lines(self) -> list[str]:
        lines: list[str] = []
        record: CohuiRecord
        for record in self.missing:
            lines.append(f"missing: {' '.join(map(str, record.itemset))}")
        for record in self.spurious:
            lines.append(f"spurious: {' '.join(map(str, record.itemset))}")
        mismatch: Mismatch
        for mismatch in self.mismatches:
            lines.append(f"mismatch: {mismatch}")
        return lines


def compare(mined: Iterable[CohuiRecord], reference: OracleResult | Iterable[CohuiRecord]) -> DiffReport:
    """
    Tell the differences between two result sets

    Utilities and supports must match exactly, Kulc values within `KULC_TOLERANCE`.
    """
    if isinstance(reference, OracleResult):
        reference = reference.records
    found: dict[Itemset, CohuiRecord] = dict((record.itemset, record) for record in mined)
    expected: dict[Itemset, CohuiRecord] = dict((record.itemset, record) for record in reference)

    def keyed(records: Iterable[CohuiRecord]) -> list[CohuiRecord]:
        return sorted(records, key=record_key)

    report: DiffReport = DiffReport(
        missing=keyed(r for i, r in expected.items() if i not in found),
        spurious=keyed(r for i, r in found.items() if i not in expected),
    )
    itemset: Itemset
    for itemset in sorted(found.keys() & expected.keys(), key=lambda i: (len(i), i)):
        a: CohuiRecord = found[itemset]
        b: CohuiRecord = expected[itemset]
        if a.utility != b.utility or a.support != b.support or abs(a.kulc - b.kulc) > KULC_TOLERANCE:
            report.mismatches.append(Mismatch(mined=a, reference=b))
    return report


class PruningLoss(NamedTuple):
    """a pattern missing from the pruned result and the prefix whose Kulc cut its branch off, if any"""

    record: CohuiRecord
    prefix: Itemset | None
    prefix_kulc: float | None

    @property
    def explained(self) -> bool:
        return self.prefix is not None

    def __str__(self) -> str:
        itemset: str = " ".join(map(str, self.record.itemset))
        if self.prefix is None:
            return f"lost without a cause: {itemset}"
        return (
            f"lost to Kulc pruning: {itemset} (Kulc {format_kulc(self.record.kulc)}) "
            f"below the prefix {' '.join(map(str, sorted(self.prefix)))} (Kulc {format_kulc(self.prefix_kulc)})"
        )


def audit_pruning(
    pruned: Iterable[CohuiRecord],
    complete: Iterable[CohuiRecord],
    db: Database,
    params: MiningParams,
) -> list[PruningLoss]:
    """
    Trace the patterns that the Kulc pruning lost

    :param pruned: The result with the subtree pruning by Kulc.
    :param complete: The complete result, by the post-filtering miner or by the exhaustive enumeration.
    :param Database db: The transactions.
    :param MiningParams params: The thresholds used.
    :return: A loss per pattern in `complete` but not in `pruned`, with the first prefix
        along the mining order whose Kulc is below the correlation threshold.
    """
    kept: set[Itemset] = set(record.itemset for record in pruned)
    scanner: ReferenceScanner = ReferenceScanner(db)
    losses: list[PruningLoss] = []
    record: CohuiRecord
    for record in sorted(complete, key=record_key):
        if record.itemset in kept:
            continue
        loss: PruningLoss = PruningLoss(record=record, prefix=None, prefix_kulc=None)
        prefix: tuple[int, ...]
        for prefix in scanner.prefixes(record.itemset):
            prefix_kulc: float = scanner.kulc(prefix)
            if prefix_kulc < params.min_cor:
                loss = PruningLoss(record=record, prefix=prefix, prefix_kulc=prefix_kulc)
                break
        if loss.explained:
            logger.warning(str(loss))
        else:
            logger.error(str(loss))
        losses.append(loss)
    return losses


class Counterexample(NamedTuple):
    itemset: Itemset
    kulc: float
    prefix: Itemset
    prefix_kulc: float


def kulc_growth_counterexamples(records: Iterable[CohuiRecord], db: Database) -> list[Counterexample]:
    """find the prefixes along the mining order with the Kulc lower than that of the whole pattern"""
    scanner: ReferenceScanner = ReferenceScanner(db)
    found: list[Counterexample] = []
    record: CohuiRecord
    for record in records:
        prefix: tuple[int, ...]
        for prefix in scanner.prefixes(record.itemset):
            prefix_kulc: float = scanner.kulc(prefix)
            if prefix_kulc < record.kulc - KULC_TOLERANCE:
                counterexample: Counterexample = Counterexample(
                    itemset=record.itemset,
                    kulc=record.kulc,
                    prefix=tuple(sorted(prefix)),
                    prefix_kulc=prefix_kulc,
                )
                logger.warning(
                    f"Kulc grows along the mining order: {' '.join(map(str, counterexample.prefix))} "
                    f"has {format_kulc(prefix_kulc)}, "
                    f"{' '.join(map(str, record.itemset))} has {format_kulc(record.kulc)}"
                )
                found.append(counterexample)
    return found
