"""Level-wise exact miner for window-dense itemsets.

Search proceeds by pattern size: size-k survivors are joined into size-(k+1)
candidates, candidates with a non-dense subset are pruned, each remaining
candidate's occurrence list is intersected from its items' lists, and its
dense intervals are detected by scanning.  Three modes differ only in how
much interval-search work they do; their pattern/interval output is
identical:

* ``baseline``  - every pattern is scanned over the full start range at
  unit step;
* ``intersect`` - patterns of size >= 2 are scanned only inside the
  intersection of their items' singleton dense regions, still at unit step;
* ``full``      - region restriction plus the skipping scan.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .db import TransactionDB, build_item_index, occ_intersect
from .intervals import Interval, region_intersect
from .scan import Range, ScanResult, scan, scan_unit_step

MODES = ("baseline", "intersect", "full")

Pattern = tuple[int, ...]


@dataclass(frozen=True)
class MiningParams:
    """Window width, minimum in-window support, optional size cap, mode."""

    window: int
    min_support: int
    max_len: int | None = None
    mode: str = "full"

    def __post_init__(self):
        if self.window < 1:
            raise ValueError("window must be a positive integer")
        if self.min_support < 1:
            raise ValueError("min_support must be a positive integer")
        if self.max_len is not None and self.max_len < 1:
            raise ValueError("max_len must be a positive integer when set")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


@dataclass
class MiningCounters:
    """Work counters.  ``candidates_pruned`` counts candidates discarded
    before any scan: subset pruning, empty occurrence list, empty candidate
    region."""

    window_evals: int = 0
    candidates_generated: int = 0
    candidates_pruned: int = 0


@dataclass
class MiningResult:
    """Dense patterns with their dense-interval lists, canonically ordered.

    ``entries`` maps are stored as a list of ``(tokens, intervals)`` pairs
    sorted by (pattern length, lexicographic tokens); tokens within a
    pattern are sorted lexicographically and intervals by start.
    """

    params: MiningParams
    t_max: int | None
    entries: list[tuple[tuple[str, ...], list[Interval]]]
    counters: MiningCounters = field(default_factory=MiningCounters)
    level_seconds: list[tuple[int, float]] = field(default_factory=list)

    @property
    def n_patterns(self) -> int:
        return len(self.entries)

    def patterns_by_length(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for tokens, _ in self.entries:
            counts[len(tokens)] = counts.get(len(tokens), 0) + 1
        return counts

    def as_dict(self) -> dict[tuple[str, ...], list[Interval]]:
        return {tokens: intervals for tokens, intervals in self.entries}


def apriori_join(patterns: list[Pattern]) -> list[Pattern]:
    """Join size-k patterns sharing their first k-1 items into size-(k+1)
    candidates.  Input must be sorted; output is sorted and duplicate-free."""
    out: list[Pattern] = []
    n = len(patterns)
    i = 0
    while i < n:
        prefix = patterns[i][:-1]
        j = i
        while j < n and patterns[j][:-1] == prefix:
            j += 1
        block = patterns[i:j]
        for a, b in combinations(block, 2):
            out.append(a + (b[-1],))
        i = j
    return out


def prune_subsets(candidates: list[Pattern], prev: set[Pattern]) -> list[Pattern]:
    """Keep candidates all of whose size-(k-1) subsets survived level k-1."""
    kept = []
    for cand in candidates:
        if all(cand[:i] + cand[i + 1 :] in prev for i in range(len(cand))):
            kept.append(cand)
    return kept


def cand_ranges(
    pattern: Pattern,
    singleton_intervals: dict[int, list[Interval]],
    width: int,
    t_max: int,
) -> list[Range]:
    """Admissible start ranges for a pattern, from its items' dense regions.

    The pattern's dense intervals can only live inside the point-set
    intersection of its items' singleton dense intervals; components
    shorter than the window width cannot host one.  Each surviving
    component [s, e] admits starts s..e-width.
    """
    region = region_intersect(*(singleton_intervals[item] for item in pattern))
    return [(s, e - width) for s, e in region if e - s >= width]


def unrestricted_range(width: int, t_max: int) -> list[Range]:
    """Start range admitting every window that fits inside [0, t_max]."""
    if width > t_max:
        return []
    return [(0, t_max - width)]


def mine(db: TransactionDB, params: MiningParams, *, threads: int = 1) -> MiningResult:
    """Enumerate every dense pattern of (db, params) with its dense intervals.

    Output is mode-independent; only counters and timings vary.  With
    ``threads > 1`` candidates within a level are evaluated concurrently and
    merged back in canonical order, so results are deterministic.
    """
    counters = MiningCounters()
    levels: list[tuple[int, float]] = []
    found: list[tuple[Pattern, list[Interval]]] = []

    t_max = db.t_max
    if t_max is None or params.window > t_max:
        return MiningResult(params, t_max, [], counters, levels)

    width, min_support = params.window, params.min_support
    unit_step = params.mode in ("baseline", "intersect")
    full_range = unrestricted_range(width, t_max)
    index = build_item_index(db)

    def scan_occ(occ: list[int], ranges: list[Range]) -> ScanResult:
        if unit_step:
            return scan_unit_step(occ, width, min_support, ranges)
        return scan(occ, width, min_support, ranges)

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        def run_level(tasks, evaluate):
            if pool is None:
                return [evaluate(task) for task in tasks]
            return list(pool.map(evaluate, tasks))

        # level 1: singletons over the unrestricted range
        level_clock = time.perf_counter()
        singleton_intervals: dict[int, list[Interval]] = {}
        survivors: list[Pattern] = []

        def eval_item(item: int) -> ScanResult:
            return scan_occ(index[item], full_range)

        for item, result in zip(sorted(index), run_level(sorted(index), eval_item)):
            counters.window_evals += result.window_evals
            if result.intervals:
                singleton_intervals[item] = result.intervals
                survivors.append((item,))
                found.append(((item,), result.intervals))
        levels.append((1, time.perf_counter() - level_clock))

        size = 2
        while survivors and (params.max_len is None or size <= params.max_len):
            level_clock = time.perf_counter()
            candidates = apriori_join(survivors)
            counters.candidates_generated += len(candidates)
            kept = prune_subsets(candidates, set(survivors))
            counters.candidates_pruned += len(candidates) - len(kept)

            def eval_candidate(cand: Pattern):
                occ = index[cand[0]]
                for item in cand[1:]:
                    occ = occ_intersect(occ, index[item])
                    if not occ:
                        return None, 0
                if params.mode == "baseline":
                    ranges = full_range
                else:
                    ranges = cand_ranges(cand, singleton_intervals, width, t_max)
                    if not ranges:
                        return None, 0
                result = scan_occ(occ, ranges)
                return result.intervals, result.window_evals

            survivors = []
            for cand, (intervals, evals) in zip(kept, run_level(kept, eval_candidate)):
                counters.window_evals += evals
                if intervals:
                    survivors.append(cand)
                    found.append((cand, intervals))
                elif intervals is None:
                    counters.candidates_pruned += 1
            levels.append((size, time.perf_counter() - level_clock))
            size += 1
    finally:
        if pool is not None:
            pool.shutdown()

    entries = [(tuple(sorted(db.tokens(pattern))), intervals) for pattern, intervals in found]
    entries.sort(key=lambda entry: (len(entry[0]), entry[0]))
    return MiningResult(params, t_max, entries, counters, levels)
