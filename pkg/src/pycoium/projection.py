# -*- coding: utf-8 -*-
from __future__ import annotations

from typing import Iterator, Protocol, Sequence

from .preprocess import OrderedDatabase

__all__ = ["ProjectedView", "SuffixVisitor", "root_view", "extend", "suffix_scan"]


class ProjectedView:
    """
    The projection α-D over the shared ordered database

    For every transaction containing α, a row holds the transaction index,
    the offset just past the last item of α, and the prefix utility u(α, T).
    No transaction is copied; the rows keep the ≻_T order of the base.
    """

    __slots__ = ("base", "rows", "offsets", "prefixes", "depth")

    def __init__(
        self,
        base: OrderedDatabase,
        rows: Sequence[int],
        offsets: Sequence[int],
        prefixes: Sequence[int],
        depth: int,
    ) -> None:
        self.base: OrderedDatabase = base
        self.rows: Sequence[int] = rows
        self.offsets: Sequence[int] = offsets
        self.prefixes: Sequence[int] = prefixes
        self.depth: int = depth

    def __len__(self) -> int:
        return len(self.rows)

    def __bool__(self) -> bool:
        return bool(self.rows)

    def __iter__(self) -> Iterator[tuple[int, int, int]]:
        return zip(self.rows, self.offsets, self.prefixes)

    def __repr__(self) -> str:
        return f"ProjectedView(depth={self.depth}, rows={len(self)})"

    @property
    def tids(self) -> list[int]:
        return [self.base.tids[t] for t in self.rows]

    @property
    def utility(self) -> int:
        """u(α), the sum of the prefix utilities"""
        return sum(self.prefixes)

    def suffix(self, index: int) -> list[tuple[int, int]]:
        """the (rank, utility) entries of the row past α"""
        t: int = self.rows[index]
        start: int = self.offsets[index]
        end: int = self.base.ends[t]
        return list(zip(self.base.items[start:end], self.base.utilities[start:end]))

    def suffixes(self) -> Iterator[tuple[int, int, list[int], list[int]]]:
        """
        Iterate over the rows

        :return: An iterator over (prefix utility, utility of the rewritten transaction,
            suffix ranks, suffix utilities) tuples.
        """
        items: list[int] = self.base.items
        utilities: list[int] = self.base.utilities
        ends: list[int] = self.base.ends
        tus: list[int] = self.base.tus
        t: int
        offset: int
        prefix: int
        for t, offset, prefix in zip(self.rows, self.offsets, self.prefixes):
            end: int = ends[t]
            yield prefix, tus[t], items[offset:end], utilities[offset:end]


class SuffixVisitor(Protocol):
    def row(self, prefix_utility: int, transaction_utility: int) -> None:
        pass

    def entry(self, rank: int, utility: int) -> None:
        pass

    def row_end(self) -> None:
        pass


def root_view(odb: OrderedDatabase) -> ProjectedView:
    return ProjectedView(
        base=odb,
        rows=list(range(len(odb))),
        offsets=list(odb.starts),
        prefixes=[0] * len(odb),
        depth=0,
    )


def extend(view: ProjectedView, z: int) -> tuple[ProjectedView, int, int]:
    """
    Project α-D onto β = α ∪ {z}

    :param ProjectedView view: The projection of α.
    :param int z: The rank to append, it must follow all the ranks of α.
    :return: The projection of β, u(β), and sup(β).
    """
    items: list[int] = view.base.items
    utilities: list[int] = view.base.utilities
    ends: list[int] = view.base.ends
    rows: list[int] = []
    offsets: list[int] = []
    prefixes: list[int] = []
    t: int
    offset: int
    prefix: int
    for t, offset, prefix in zip(view.rows, view.offsets, view.prefixes):
        position: int
        for position in range(offset, ends[t]):
            rank: int = items[position]
            if rank == z:
                rows.append(t)
                offsets.append(position + 1)
                prefixes.append(prefix + utilities[position])
                break
            if rank > z:
                break
    return ProjectedView(view.base, rows, offsets, prefixes, view.depth + 1), sum(prefixes), len(rows)


def suffix_scan(view: ProjectedView, visitor: SuffixVisitor) -> None:
    """
    Visit the prefix utility of every row, then its suffix entries in the rank order

    The visitor is told the utility of the rewritten transaction along with the prefix utility,
    and `row_end` closes every row.
    """
    prefix: int
    tu: int
    ranks: list[int]
    utilities: list[int]
    for prefix, tu, ranks, utilities in view.suffixes():
        visitor.row(prefix, tu)
        rank: int
        utility: int
        for rank, utility in zip(ranks, utilities):
            visitor.entry(rank, utility)
        visitor.row_end()
