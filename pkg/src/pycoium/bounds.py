# -*- coding: utf-8 -*-
from __future__ import annotations

from typing import Collection, Iterable, NamedTuple, Sequence

from .projection import ProjectedView, suffix_scan

__all__ = [
    "BoundsInvariantError",
    "UtilityBinArray",
    "NodePartition",
    "compute_lu",
    "compute_su",
    "compute_twu",
    "partition",
]


class BoundsInvariantError(RuntimeError):
    pass


class UtilityBinArray:
    """
    Dense accumulators indexed by rank

    Every computation records the ranks it may touch, and the next reset zeroes just them.
    """

    __slots__ = ("bins", "_touched")

    def __init__(self, size: int) -> None:
        self.bins: list[int] = [0] * size
        self._touched: Iterable[int] = ()

    def __len__(self) -> int:
        return len(self.bins)

    def __getitem__(self, rank: int) -> int:
        return self.bins[rank]

    def reset(self) -> None:
        bins: list[int] = self.bins
        rank: int
        for rank in self._touched:
            bins[rank] = 0
        self._touched = ()

    def touch(self, ranks: Iterable[int]) -> None:
        self._touched = ranks

    def values(self, ranks: Iterable[int]) -> list[int]:
        return [self.bins[rank] for rank in ranks]


class NodePartition(NamedTuple):
    secondary: list[int]
    primary: list[int]


def _selection(ua: UtilityBinArray, candidates: Sequence[int] | None) -> Collection[int]:
    ua.reset()
    if candidates is None:
        candidates = range(len(ua))
    ua.touch(candidates)
    if isinstance(candidates, range):
        return candidates
    return frozenset(candidates)


class _RowAccumulator:
    """
    Keep the candidate entries of a projected row and add the share of the row to the bins at its end

    The other ranks are treated as removed.
    """

    __slots__ = ("bins", "selected", "prefix", "tu", "ranks", "utilities")

    def __init__(self, ua: UtilityBinArray, selected: Collection[int]) -> None:
        self.bins: list[int] = ua.bins
        self.selected: Collection[int] = selected
        self.prefix: int = 0
        self.tu: int = 0
        self.ranks: list[int] = []
        self.utilities: list[int] = []

    def row(self, prefix_utility: int, transaction_utility: int) -> None:
        self.prefix = prefix_utility
        self.tu = transaction_utility
        self.ranks = []
        self.utilities = []

    def entry(self, rank: int, utility: int) -> None:
        if rank in self.selected:
            self.ranks.append(rank)
            self.utilities.append(utility)

    def row_end(self) -> None:
        raise NotImplementedError


class _LocalUtility(_RowAccumulator):
    def row_end(self) -> None:
        total: int = self.prefix + sum(self.utilities)
        rank: int
        for rank in self.ranks:
            self.bins[rank] += total


class _SubtreeUtility(_RowAccumulator):
    def row_end(self) -> None:
        # back to front, keeping the utility of the items past the current one
        remaining: int = 0
        index: int
        for index in range(len(self.ranks) - 1, -1, -1):
            utility: int = self.utilities[index]
            self.bins[self.ranks[index]] += self.prefix + utility + remaining
            remaining += utility


class _TransactionUtility(_RowAccumulator):
    def row_end(self) -> None:
        rank: int
        for rank in self.ranks:
            self.bins[rank] += self.tu


def compute_lu(view: ProjectedView, ua: UtilityBinArray, candidates: Sequence[int] | None = None) -> UtilityBinArray:
    """
    Fill the bins with the local utility lu(α, z)

    Every projected transaction adds u(α, T) + re(α, T) to the bins of all its suffix items.
    Only the candidate ranks (all if not given) take part, the others are treated as removed.
    """
    suffix_scan(view, _LocalUtility(ua, _selection(ua, candidates)))
    return ua


def compute_su(view: ProjectedView, ua: UtilityBinArray, candidates: Sequence[int] | None = None) -> UtilityBinArray:
    """
    Fill the bins with the subtree utility su(α, z)

    A single back-to-front pass over each projected transaction keeps the utility of the items past z.
    """
    suffix_scan(view, _SubtreeUtility(ua, _selection(ua, candidates)))
    return ua


def compute_twu(view: ProjectedView, ua: UtilityBinArray, candidates: Sequence[int] | None = None) -> UtilityBinArray:
    """fill the bins with the TWU of α ∪ {z}: the whole transaction utility goes to every suffix item"""
    suffix_scan(view, _TransactionUtility(ua, _selection(ua, candidates)))
    return ua


def partition(
    ua_lu: UtilityBinArray,
    ua_su: UtilityBinArray,
    candidates: Iterable[int],
    threshold: float,
) -> NodePartition:
    """split the candidates into the secondary (lu ≥ threshold) and the primary (su ≥ threshold) ranks"""
    secondary: list[int] = []
    primary: list[int] = []
    rank: int
    for rank in sorted(candidates):
        lu: int = ua_lu[rank]
        su: int = ua_su[rank]
        if su > lu:
            raise BoundsInvariantError(f"su = {su} exceeds lu = {lu} for rank {rank}")
        if lu >= threshold:
            secondary.append(rank)
            if su >= threshold:
                primary.append(rank)
    return NodePartition(secondary=secondary, primary=primary)
