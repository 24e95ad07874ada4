"""Brute-force reference implementations.

These are the ground truth for every exactness test: no candidate pruning,
no region restriction, no skipping.  Occurrence lists are recomputed by
filtering transactions directly and every admissible window start is
evaluated, so none of the miner's shortcuts are shared.
"""

from __future__ import annotations

import random
from itertools import combinations

import numpy as np

from .db import TransactionDB, from_rows
from .intervals import Interval
from .miner import MiningCounters, MiningParams, MiningResult


class EnumerationBoundError(ValueError):
    """Input has too many distinct items to enumerate all itemsets."""


def brute_dense_intervals(
    occ: list[int], width: int, min_support: int, t_max: int | None
) -> list[Interval]:
    """Maximal dense intervals by evaluating every admissible start.

    Admissible starts are 0..t_max-width (none when width > t_max, since an
    emitted interval may not reach past t_max).  Dense starts are decomposed
    into maximal runs [a, b], each emitted as [a, b+width].
    """
    if t_max is None or width > t_max or not occ:
        return []
    last = t_max - width
    occ_arr = np.asarray(occ, dtype=np.int64)
    starts = np.arange(last + 1, dtype=np.int64)
    counts = np.searchsorted(occ_arr, starts + width, side="right") - np.searchsorted(
        occ_arr, starts, side="left"
    )
    dense = np.flatnonzero(counts >= min_support)
    if dense.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(dense) > 1)
    run_starts = np.concatenate(([dense[0]], dense[breaks + 1]))
    run_ends = np.concatenate((dense[breaks], [dense[-1]]))
    return [(int(a), int(b) + width) for a, b in zip(run_starts, run_ends)]


def brute_mine(
    db: TransactionDB,
    params: MiningParams,
    *,
    max_enum_items: int = 16,
) -> MiningResult:
    """Enumerate every non-empty itemset (up to ``params.max_len``), compute
    its occurrences by direct transaction filtering, and keep the itemsets
    with a non-empty dense-interval list.

    Refuses databases with more than ``max_enum_items`` distinct items.
    """
    if db.n_items > max_enum_items:
        raise EnumerationBoundError(
            f"{db.n_items} distinct items exceed the enumeration bound {max_enum_items}"
        )
    rows = [(ts, frozenset(items)) for ts, items in db.transactions]
    top = db.n_items if params.max_len is None else min(db.n_items, params.max_len)
    entries = []
    for size in range(1, top + 1):
        for combo in combinations(range(db.n_items), size):
            wanted = frozenset(combo)
            occ = [ts for ts, items in rows if wanted <= items]
            intervals = brute_dense_intervals(occ, params.window, params.min_support, db.t_max)
            if intervals:
                entries.append((tuple(sorted(db.tokens(combo))), intervals))
    entries.sort(key=lambda entry: (len(entry[0]), entry[0]))
    return MiningResult(params, db.t_max, entries, MiningCounters(), [])


def random_db(
    rng: random.Random,
    *,
    max_items: int = 8,
    max_trans: int = 60,
    t_max_bound: int = 300,
) -> TransactionDB:
    """Small random database for randomized exactness testing."""
    n_items = rng.randint(1, max_items)
    tokens = [f"i{i}" for i in range(n_items)]
    n_trans = rng.randint(1, max_trans)
    stamps = sorted(rng.sample(range(t_max_bound + 1), min(n_trans, t_max_bound + 1)))
    rows = []
    for ts in stamps:
        size = rng.randint(1, n_items)
        rows.append((ts, rng.sample(tokens, size)))
    return from_rows(rows)


def random_params(rng: random.Random) -> MiningParams:
    return MiningParams(window=rng.randint(1, 50), min_support=rng.randint(1, 6))
