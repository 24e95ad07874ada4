"""Timestamped transaction database.

A database is an ordered list of (timestamp, itemset) rows with strictly
increasing non-negative integer timestamps (one transaction per timestamp).
Item tokens are interned to dense integer ids in order of first appearance;
the original tokens are kept in a symbol table.

The canonical text format is one transaction per line::

    <timestamp><TAB><item> <item> ...

Lines starting with ``#`` are comments.  Timestamps must appear in strictly
ascending order unless duplicate merging is requested, in which case rows
sharing a timestamp are replaced by the union of their itemsets.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

MAX_TIMESTAMP = 2**63 - 1


class DbFormatError(ValueError):
    """Malformed database text.  ``line_no`` is 1-based."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class TransactionDB:
    """Immutable transaction database.

    ``transactions`` holds ``(timestamp, items)`` pairs sorted by timestamp,
    where ``items`` is a tuple of item ids in ascending order.  ``symbols``
    maps item id -> token, ``ids`` maps token -> item id.
    """

    transactions: tuple[tuple[int, tuple[int, ...]], ...]
    symbols: tuple[str, ...]
    ids: dict[str, int] = field(repr=False)
    n_dropped_empty: int = 0

    @property
    def t_max(self) -> int | None:
        """Last timestamp, or None for an empty database."""
        return self.transactions[-1][0] if self.transactions else None

    @property
    def n_items(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.transactions)

    def token(self, item: int) -> str:
        return self.symbols[item]

    def tokens(self, items: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.symbols[i] for i in items)


def from_rows(
    rows: Iterable[tuple[int, Iterable[str]]], *, merge_duplicates: bool = False
) -> TransactionDB:
    """Build a database from in-memory ``(timestamp, tokens)`` rows.

    Tokens are interned in the order they are first seen.  Rows with an
    empty itemset are dropped and counted.  Raises :class:`DbFormatError`
    on ordering violations; row numbers stand in for line numbers.
    """
    symbols: list[str] = []
    ids: dict[str, int] = {}

    def intern(token: str) -> int:
        item = ids.get(token)
        if item is None:
            item = len(symbols)
            ids[token] = item
            symbols.append(token)
        return item

    merged: dict[int, set[int]] = {}
    ordered: list[tuple[int, set[int]]] = []
    dropped = 0
    prev_ts = -1
    for line_no, (ts, tokens) in enumerate(rows, start=1):
        if not isinstance(ts, int) or isinstance(ts, bool):
            raise DbFormatError(line_no, f"timestamp is not an integer: {ts!r}")
        if ts < 0:
            raise DbFormatError(line_no, f"negative timestamp {ts}")
        if ts > MAX_TIMESTAMP:
            raise DbFormatError(line_no, f"timestamp {ts} exceeds the 63-bit range")
        items = {intern(tok) for tok in tokens}
        if merge_duplicates:
            merged.setdefault(ts, set()).update(items)
        else:
            if ts == prev_ts:
                raise DbFormatError(
                    line_no, f"duplicate timestamp {ts} (enable duplicate merging)"
                )
            if ts < prev_ts:
                raise DbFormatError(line_no, f"timestamp {ts} is not strictly increasing")
            prev_ts = ts
            ordered.append((ts, items))

    pairs = sorted(merged.items()) if merge_duplicates else ordered
    transactions = []
    for ts, items in pairs:
        if not items:
            dropped += 1
            continue
        transactions.append((ts, tuple(sorted(items))))
    return TransactionDB(
        transactions=tuple(transactions),
        symbols=tuple(symbols),
        ids=ids,
        n_dropped_empty=dropped,
    )


def _parse_lines(lines: Iterable[str]) -> Iterator[tuple[int, list[str]]]:
    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        ts_part, _, item_part = line.partition("\t")
        ts_text = ts_part.strip()
        try:
            ts = int(ts_text, 10)
        except ValueError:
            raise DbFormatError(line_no, f"bad timestamp field {ts_text!r}") from None
        # from_rows re-checks range/ordering, but it numbers rows after
        # comment/blank removal; validate here so errors carry file line numbers.
        if ts < 0:
            raise DbFormatError(line_no, f"negative timestamp {ts}")
        if ts > MAX_TIMESTAMP:
            raise DbFormatError(line_no, f"timestamp {ts} exceeds the 63-bit range")
        yield line_no, ts, item_part.split()


def load_db(stream: Iterable[str], *, merge_duplicates: bool = False) -> TransactionDB:
    """Parse the canonical text format from an iterable of lines.

    Errors report the 1-based line number of the offending data line.
    """
    rows = []
    prev_ts = -1
    for line_no, ts, tokens in _parse_lines(stream):
        if not merge_duplicates:
            if ts == prev_ts:
                raise DbFormatError(
                    line_no, f"duplicate timestamp {ts} (enable duplicate merging)"
                )
            if ts < prev_ts:
                raise DbFormatError(line_no, f"timestamp {ts} is not strictly increasing")
            prev_ts = ts
        rows.append((ts, tokens))
    return from_rows(rows, merge_duplicates=merge_duplicates)


def read_db(path: str | Path, *, merge_duplicates: bool = False) -> TransactionDB:
    with open(path, "r", encoding="utf-8") as handle:
        return load_db(handle, merge_duplicates=merge_duplicates)


def save_db(db: TransactionDB, stream) -> None:
    """Write the canonical serialization; items appear in interning order."""
    for ts, items in db.transactions:
        stream.write(f"{ts}\t{' '.join(db.symbols[i] for i in items)}\n")


def write_db(db: TransactionDB, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        save_db(db, handle)


def build_item_index(db: TransactionDB) -> dict[int, list[int]]:
    """Occurrence list per item, keyed by item id in ascending order.

    Every interned item occurs in at least one kept transaction, so no
    list is empty.
    """
    occ: dict[int, list[int]] = {item: [] for item in range(db.n_items)}
    for ts, items in db.transactions:
        for item in items:
            occ[item].append(ts)
    return occ


def occ_intersect(a: list[int], b: list[int]) -> list[int]:
    """Sorted intersection of two sorted occurrence lists (linear merge)."""
    out: list[int] = []
    i = j = 0
    len_a, len_b = len(a), len(b)
    while i < len_a and j < len_b:
        x, y = a[i], b[j]
        if x == y:
            out.append(x)
            i += 1
            j += 1
        elif x < y:
            i += 1
        else:
            j += 1
    return out


def interval_support(occ: list[int], start: int, width: int) -> int:
    """Number of occurrences inside the closed window [start, start+width]."""
    return bisect_right(occ, start + width) - bisect_left(occ, start)
