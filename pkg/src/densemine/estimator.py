"""scikit-learn style front end for the miner."""

from __future__ import annotations

from pathlib import Path

import pandas as pd
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .db import TransactionDB, from_rows, read_db
from .miner import MODES, MiningParams, MiningResult, mine


def as_transaction_db(X) -> TransactionDB:
    """Coerce estimator input to a :class:`TransactionDB`.

    Accepts a TransactionDB, a path to a canonical database file, or an
    iterable of ``(timestamp, items)`` rows where items are tokens.
    """
    if isinstance(X, TransactionDB):
        return X
    if isinstance(X, (str, Path)):
        return read_db(X)
    try:
        rows = [(ts, [str(tok) for tok in items]) for ts, items in X]
    except (TypeError, ValueError) as err:
        raise TypeError(
            "X must be a TransactionDB, a path, or an iterable of "
            "(timestamp, items) rows"
        ) from err
    return from_rows(rows)


def check_mining_params(window, min_support, max_len, mode) -> MiningParams:
    """Validate estimator hyper-parameters, returning the core params."""
    for name, value in (("window", window), ("min_support", min_support)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ValueError(f"{name} must be a positive integer, got {value!r}")
    if max_len is not None and (not isinstance(max_len, int) or max_len < 1):
        raise ValueError(f"max_len must be a positive integer or None, got {max_len!r}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return MiningParams(window=window, min_support=min_support, max_len=max_len, mode=mode)


class DensePatternMiner(BaseEstimator):
    """Mine itemsets that are locally frequent inside a sliding time window.

    A pattern qualifies when at least ``min_support`` of its occurrences
    fall inside some window of width ``window``; the miner reports every
    such pattern together with all maximal dense intervals.

    Parameters
    ----------
    window : int, default=10
        Window width in time units; windows are closed on both sides.
    min_support : int, default=3
        Minimum number of occurrences inside a window.
    max_len : int or None, default=None
        Optional cap on pattern length.
    mode : {"baseline", "intersect", "full"}, default="full"
        Search-effort variant; the output is identical in all three.
    n_threads : int, default=1
        Worker threads for candidate evaluation within a level.  Results
        are merged deterministically regardless of the thread count.

    Examples
    --------
    >>> rows = [(1, "ab"), (3, "abc"), (5, "bc"), (7, "abc"),
    ...         (9, "ab"), (20, "abc"), (22, "bc"), (25, "abc")]
    >>> miner = DensePatternMiner(window=10, min_support=3)
    >>> miner.fit_discover(rows)
      itemset            intervals
    0    (a,)            [(0, 13)]
    1    (b,)  [(0, 15), (15, 25)]
    2    (c,)  [(0, 13), (15, 25)]
    3  (a, b)            [(0, 13)]
    4  (b, c)  [(0, 13), (15, 25)]
    """

    def __init__(self, *, window=10, min_support=3, max_len=None, mode="full", n_threads=1):
        self.window = window
        self.min_support = min_support
        self.max_len = max_len
        self.mode = mode
        self.n_threads = n_threads

    def fit(self, X, y=None):
        """Mine the database; the full result lands in ``result_``."""
        params = check_mining_params(self.window, self.min_support, self.max_len, self.mode)
        db = as_transaction_db(X)
        self.result_: MiningResult = mine(db, params, threads=self.n_threads)
        self.n_patterns_ = self.result_.n_patterns
        self.t_max_ = self.result_.t_max
        return self

    def discover(self, min_len: int = 1) -> pd.DataFrame:
        """Fitted patterns as a DataFrame with itemset and interval columns."""
        if not hasattr(self, "result_"):
            raise NotFittedError("call fit before discover")
        rows = [
            {"itemset": tokens, "intervals": intervals}
            for tokens, intervals in self.result_.entries
            if len(tokens) >= min_len
        ]
        return pd.DataFrame(rows, columns=["itemset", "intervals"])

    def fit_discover(self, X, y=None, min_len: int = 1) -> pd.DataFrame:
        return self.fit(X, y).discover(min_len)
