# -*- coding: utf-8 -*-
from __future__ import annotations

import bz2
import gzip
import logging
import lzma
from contextlib import contextmanager
from os import PathLike
from pathlib import Path
from typing import TYPE_CHECKING, BinaryIO, Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence, TextIO

from .utils import KULC, SUP, UTIL, Itemset, format_kulc

if TYPE_CHECKING:
    from .miner import CohuiRecord

__all__ = [
    "DatasetFormatError",
    "Transaction",
    "Database",
    "Opener",
    "parse_spmf_line",
    "load_database",
    "read_database",
    "format_spmf_line",
    "dump_database",
    "save_database",
    "itemset_utility",
    "itemset_support",
    "format_record",
    "dump_records",
    "save_records",
    "canonical",
]

logger: logging.Logger = logging.getLogger("dataset")

# SPMF files may carry metadata and comments in lines starting with these
COMMENT_PREFIXES: tuple[str, ...] = ("#", "%", "@")


class DatasetFormatError(ValueError):
    def __init__(self, message: str, line_number: int = 0, line: str = "") -> None:
        self.line_number: int = line_number
        self.line: str = line
        if line_number:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class Transaction(NamedTuple):
    """a transaction with the per-item utilities u(i, T) as the unit of record"""

    tid: int
    items: tuple[int, ...]
    utilities: tuple[int, ...]
    tu: int

    def __len__(self) -> int:
        return len(self.items)

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.items, self.utilities))


class Database:
    def __init__(
        self,
        transactions: Iterable[Transaction] = (),
        profits: Mapping[int, int] | None = None,
        *,
        name: str = "",
    ) -> None:
        self._transactions: tuple[Transaction, ...] = tuple(transactions)
        self._total_utility: int = sum(t.tu for t in self._transactions)
        self._profits: dict[int, int] | None = dict(profits) if profits is not None else None
        self.name: str = name

    def __len__(self) -> int:
        return len(self._transactions)

    def __bool__(self) -> bool:
        return bool(self._transactions)

    def __iter__(self) -> Iterator[Transaction]:
        return iter(self._transactions)

    def __repr__(self) -> str:
        return f"Database({self.name!r}, transactions={len(self)}, total_utility={self._total_utility})"

    @property
    def transactions(self) -> tuple[Transaction, ...]:
        return self._transactions

    @property
    def total_utility(self) -> int:
        return self._total_utility

    @property
    def items(self) -> list[int]:
        return sorted(set(item for t in self._transactions for item in t.items))

    @property
    def profits(self) -> dict[int, int]:
        """
        The external utility of every item

        Files in the SPMF format carry no profit table; then each item is given a unit profit,
        and the per-item utility plays the role of the quantity.
        """
        if self._profits is not None:
            return self._profits.copy()
        return dict.fromkeys(self.items, 1)

    def head(self, fraction: float) -> Database:
        """take the leading share of the transactions"""
        if not 0.0 <= fraction <= 1.0:
            raise ValueError(f"Invalid fraction: {fraction}")
        count: int = round(len(self._transactions) * fraction)
        return Database(self._transactions[:count], self._profits, name=f"{self.name}[{fraction:g}]")

    @classmethod
    def from_quantities(
        cls,
        rows: Iterable[Iterable[tuple[int, int]]],
        profits: Mapping[int, int],
        *,
        name: str = "",
    ) -> Database:
        """
        Build a database from the (item, quantity) pairs and the external utility table

        :param rows: The transactions, each one is a sequence of (item, purchase quantity) pairs.
        :param profits: The unit profit of every item.
        :param str name: The label for the reports.
        :return: A database with u(i, T) = quantity × profit(i).
        """
        transactions: list[Transaction] = []
        tid: int
        row: Iterable[tuple[int, int]]
        for tid, row in enumerate(rows, start=1):
            pairs: list[tuple[int, int]] = list(row)
            items: tuple[int, ...] = tuple(item for item, _ in pairs)
            if len(set(items)) != len(items):
                raise ValueError(f"Duplicate item in transaction {tid}")
            missing: list[int] = [item for item in items if item not in profits]
            if missing:
                raise ValueError(f"No profit for items {missing} in transaction {tid}")
            if any(quantity < 1 for _, quantity in pairs):
                raise ValueError(f"Non-positive quantity in transaction {tid}")
            utilities: tuple[int, ...] = tuple(quantity * profits[item] for item, quantity in pairs)
            transactions.append(Transaction(tid=tid, items=items, utilities=utilities, tu=sum(utilities)))
        return cls(transactions, profits, name=name)


class Opener:
    OPENERS_BY_SUFFIX: dict[str, Callable] = {
        ".gz": gzip.open,
        ".bz2": bz2.open,
        ".xz": lzma.open,
        ".lzma": lzma.open,
    }

    OPENERS_BY_SIGNATURE: dict[bytes, Callable] = {
        b"\x1F\x8B": gzip.open,
        b"BZh": bz2.open,
        b"\xFD\x37\x7A\x58\x5A\x00": lzma.open,
    }

    def __init__(self, path: str | PathLike[str]) -> None:
        self._path: Path = Path(path)
        self._opener: Callable = open
        if self._path.suffix in Opener.OPENERS_BY_SUFFIX:
            self._opener = Opener.OPENERS_BY_SUFFIX[self._path.suffix]
            return
        if self._path.is_file():
            max_signature_length: int = max(map(len, Opener.OPENERS_BY_SIGNATURE.keys()))
            f: BinaryIO
            with self._path.open("rb") as f:
                init_bytes: bytes = f.read(max_signature_length)
            key: bytes
            value: Callable
            for key, value in Opener.OPENERS_BY_SIGNATURE.items():
                if init_bytes.startswith(key):
                    self._opener = value
                    return

    @contextmanager
    def open(self, mode: str, encoding: str | None = None, newline: str | None = None) -> Iterator[TextIO | BinaryIO]:
        """
        Open a file in a safe way. Create a temporary file when writing.

        See https://stackoverflow.com/a/29491523/8554611, https://stackoverflow.com/a/2333979/8554611
        """
        writing: bool = "w" in mode.casefold()
        if encoding is None and "b" not in mode.casefold():
            encoding = "ascii"
        if "b" not in mode.casefold() and self._opener is not open and "t" not in mode:
            mode += "t"
        tmp_path: Path = self._path.with_name(self._path.name + ".part")

        # manually open and close the file here to close it before replacing if writing
        file: TextIO | BinaryIO = self._opener(
            tmp_path if writing else self._path,
            mode=mode,
            encoding=encoding,
            newline=newline,
        )
        try:
            yield file
        except BaseException:
            file.close()
            # keep the previous file intact
            if writing:
                tmp_path.unlink(missing_ok=True)
            raise
        else:
            file.close()
            if writing:
                tmp_path.replace(self._path)


def _parse_integers(text: str, what: str, line_number: int, line: str) -> list[int]:
    try:
        values: list[int] = [int(token) for token in text.split()]
    except ValueError:
        raise DatasetFormatError(f"non-integer token among the {what}: {text!r}", line_number, line) from None
    if any(value < 0 for value in values):
        raise DatasetFormatError(f"negative value among the {what}: {text!r}", line_number, line)
    return values


def parse_spmf_line(
    line: str,
    tid: int,
    *,
    line_number: int = 0,
    merge_duplicates: bool = False,
    trust_sum: bool = False,
) -> Transaction:
    """
    Parse a transaction in the SPMF transaction-utility format

    :param str line: `<item>( <item>)*:<TU>:<util>( <util>)*`
    :param int tid: The sequence number to assign.
    :param int line_number: The line number to report errors with, `tid` is used if not set.
    :param bool merge_duplicates: Sum the utilities of a repeated item instead of failing.
    :param bool trust_sum: Replace a wrong declared transaction utility with the sum of the item utilities.
    :return: The parsed transaction.
    """
    line_number = line_number or tid
    text: str = line.rstrip("\r\n")
    fields: list[str] = text.split(":")
    if len(fields) != 3:
        raise DatasetFormatError(f"expected 3 colon-separated fields, got {len(fields)}", line_number, line)
    items: list[int] = _parse_integers(fields[0], "items", line_number, line)
    try:
        declared_tu: int = int(fields[1])
    except ValueError:
        raise DatasetFormatError(f"non-integer transaction utility: {fields[1]!r}", line_number, line) from None
    utilities: list[int] = _parse_integers(fields[2], "utilities", line_number, line)
    if not items:
        raise DatasetFormatError("no items", line_number, line)
    if len(items) != len(utilities):
        raise DatasetFormatError(
            f"item/utility count mismatch: {len(items)} items, {len(utilities)} utilities", line_number, line
        )

    if len(set(items)) != len(items):
        if not merge_duplicates:
            raise DatasetFormatError("duplicate item", line_number, line)
        merged: dict[int, int] = dict()
        item: int
        utility: int
        for item, utility in zip(items, utilities):
            merged[item] = merged.get(item, 0) + utility
        items, utilities = list(merged.keys()), list(merged.values())

    tu: int = sum(utilities)
    if tu != declared_tu:
        if not trust_sum:
            raise DatasetFormatError(
                f"declared transaction utility {declared_tu} differs from the sum {tu}", line_number, line
            )
        logger.warning(f"line {line_number}: declared transaction utility {declared_tu} replaced with {tu}")
    return Transaction(tid=tid, items=tuple(items), utilities=tuple(utilities), tu=tu)


def load_database(
    source: Iterable[str],
    *,
    merge_duplicates: bool = False,
    trust_sum: bool = False,
    name: str = "",
) -> Database:
    """
    Load a database in the SPMF transaction-utility format

    :param source: A text stream or any other iterable of lines.
    :param bool merge_duplicates: Sum the utilities of an item repeated within a line.
    :param bool trust_sum: Recompute the transaction utilities that differ from the declared ones.
    :param str name: The label for the reports.
    :return: A database with the transactions numbered from 1 in the order of appearance.
    """
    transactions: list[Transaction] = []
    line_number: int
    line: str
    for line_number, line in enumerate(source, start=1):
        if not line.strip() or line.startswith(COMMENT_PREFIXES):
            continue
        transactions.append(
            parse_spmf_line(
                line,
                len(transactions) + 1,
                line_number=line_number,
                merge_duplicates=merge_duplicates,
                trust_sum=trust_sum,
            )
        )
    db: Database = Database(transactions, name=name)
    logger.debug(f"loaded {len(db)} transactions, TU = {db.total_utility}")
    return db


def read_database(path: str | PathLike[str], **kwargs: bool) -> Database:
    """load a plain or compressed file, see :func:`load_database` for the options"""
    path = Path(path)
    f: TextIO
    with Opener(path).open("r") as f:
        return load_database(f, name=path.name, **kwargs)


def format_spmf_line(transaction: Transaction) -> str:
    return ":".join(
        (
            " ".join(map(str, transaction.items)),
            str(transaction.tu),
            " ".join(map(str, transaction.utilities)),
        )
    )


def dump_database(db: Database, target: TextIO) -> None:
    t: Transaction
    for t in db:
        target.write(format_spmf_line(t) + "\n")


def save_database(db: Database, path: str | PathLike[str]) -> None:
    f: TextIO
    with Opener(path).open("w", newline="\n") as f:
        dump_database(db, f)


def itemset_utility(itemset: Iterable[int], db: Database) -> int:
    """u(X): the utility of X summed over the transactions containing all of X"""
    members: frozenset[int] = frozenset(itemset)
    if not members:
        raise ValueError("Empty itemset")
    total: int = 0
    t: Transaction
    for t in db:
        utilities: dict[int, int] = t.as_dict()
        if members.issubset(utilities):
            total += sum(utilities[item] for item in members)
    return total


def itemset_support(itemset: Iterable[int], db: Database) -> int:
    members: frozenset[int] = frozenset(itemset)
    if not members:
        raise ValueError("Empty itemset")
    return sum(1 for t in db if members.issubset(t.items))


def format_record(record: CohuiRecord) -> str:
    return " ".join(
        (
            " ".join(map(str, record.itemset)),
            UTIL,
            str(record.utility),
            SUP,
            str(record.support),
            KULC,
            format_kulc(record.kulc),
        )
    )


def dump_records(records: Iterable[CohuiRecord], target: TextIO) -> None:
    record: CohuiRecord
    for record in records:
        target.write(format_record(record) + "\n")


def save_records(records: Iterable[CohuiRecord], path: str | PathLike[str]) -> None:
    f: TextIO
    with Opener(path).open("w", newline="\n") as f:
        dump_records(records, f)


def canonical(itemset: Iterable[int]) -> Itemset:
    return tuple(sorted(set(itemset)))
