"""Dense-interval detection for one occurrence list over start ranges.

A window start ``l`` is *dense* when the closed window ``[l, l+width]``
holds at least ``min_support`` occurrences.  ``scan`` walks each admissible
start range and emits every maximal run of dense starts ``[s, d]`` as the
interval ``[s, d + width]``, using two shortcuts that provably cannot
change the output:

* skip-ahead on a dense window: every start up to the first of the last
  ``min_support`` occurrences in the window is itself dense, so the walk
  resumes just past that position;
* skip-ahead on a sparse window: no window can become dense before it
  reaches the next occurrence, so the walk jumps to the first start whose
  window touches it.

``scan_unit_step`` is the unoptimized variant that evaluates the support
at every start of every range; it exists for ablation runs and as a
skip-free reference for the optimized walk.  Both report how many window
evaluations they performed.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

import numpy as np

Range = tuple[int, int]


@dataclass(frozen=True)
class ScanResult:
    intervals: list[tuple[int, int]]
    window_evals: int


def initial_start(occ: list[int], range_start: int, width: int, min_support: int) -> int | None:
    """First start worth evaluating in a range, or None to skip the range.

    With fewer than ``min_support`` occurrences at or after ``range_start``
    no window in the range can be dense.  Otherwise no window starting
    before ``occ[j + min_support - 1] - width`` can hold ``min_support``
    occurrences, so the walk begins there (clipped to the range start and 0).
    """
    j = bisect_left(occ, range_start)
    if j + min_support > len(occ):
        return None
    return max(range_start, max(0, occ[j + min_support - 1] - width))


def keep_position(occ: list[int], start: int, width: int, min_support: int) -> int:
    """First of the last ``min_support`` occurrences in a dense window.

    Precondition: the window ``[start, start+width]`` holds at least
    ``min_support`` occurrences.  Every start in ``[start, keep]`` is dense,
    because the last ``min_support`` occurrences stay inside the shifted
    window.
    """
    lo = bisect_left(occ, start)
    cnt = bisect_right(occ, start + width) - lo
    if cnt < min_support:
        raise ValueError("keep_position called on a window that is not dense")
    return occ[lo + cnt - min_support]


def advance_on_sparse(occ: list[int], start: int, width: int) -> int | None:
    """Next start to evaluate after a sparse window, or None to stop.

    Jumps to the first start whose window reaches the first occurrence
    beyond ``start + width``; returns None when no such occurrence exists.
    """
    nxt = bisect_right(occ, start + width)
    if nxt >= len(occ):
        return None
    return max(start + 1, occ[nxt] - width)


_MAX_END = 2**63


def _in_recorded(recorded: list[tuple[int, int]], start: int) -> int | None:
    idx = bisect_right(recorded, (start, _MAX_END)) - 1
    if idx >= 0 and recorded[idx][1] >= start:
        return recorded[idx][1]
    return None


def scan(
    occ: list[int],
    width: int,
    min_support: int,
    ranges: list[Range],
    *,
    use_recorded: bool = True,
) -> ScanResult:
    """Maximal dense intervals whose start runs intersect the given ranges.

    ``ranges`` must be sorted by start and pairwise disjoint, with every
    ``range_end + width <= t_max`` guaranteed by the caller.  Emitted
    intervals are sorted by start.  ``recorded`` keeps the start runs
    already proven dense during this call so they are never re-walked;
    it stores start runs ``[s, d]`` rather than emitted intervals, since
    the interval ``[s, d+width]`` also covers starts in ``(d, d+width]``
    that were never certified.
    """
    intervals: list[tuple[int, int]] = []
    recorded: list[tuple[int, int]] = []
    evals = 0

    def register(run_start: int, run_end: int) -> None:
        intervals.append((run_start, run_end + width))
        recorded.append((run_start, run_end))

    for range_start, range_end in ranges:
        start = initial_start(occ, range_start, width, min_support)
        if start is None:
            continue
        in_dense = False
        run_start = run_end = 0
        while start <= range_end:
            if use_recorded:
                skip_to = _in_recorded(recorded, start)
                if skip_to is not None:
                    start = skip_to + 1
                    continue
            lo = bisect_left(occ, start)
            cnt = bisect_right(occ, start + width) - lo
            evals += 1
            if cnt < min_support:
                if in_dense and run_end + width - run_start >= width:
                    register(run_start, run_end)
                in_dense = False
                nxt = lo + cnt  # first occurrence beyond start + width
                if nxt >= len(occ):
                    break
                start = max(start + 1, occ[nxt] - width)
            else:
                keep = occ[lo + cnt - min_support]
                if not in_dense:
                    run_start, run_end, in_dense = start, keep, True
                else:
                    run_end = max(run_end, keep)
                if keep + 1 > range_end:
                    run_end = min(run_end, range_end)
                    break
                start = keep + 1
        if in_dense and run_end + width - run_start >= width:
            register(run_start, run_end)
    return ScanResult(intervals, evals)


def scan_unit_step(
    occ: list[int],
    width: int,
    min_support: int,
    ranges: list[Range],
) -> ScanResult:
    """Evaluate the support at every start of every range (no skipping).

    The per-start support array for a whole range is materialized in one
    go: the support changes only where a start crosses an occurrence entry
    (occ - width) or exit (occ + 1) point, so segment values are computed
    at those edges and expanded.  Every start still gets its own evaluated,
    thresholded support value and is charged one window evaluation.
    """
    intervals: list[tuple[int, int]] = []
    evals = 0
    occ_arr = np.asarray(occ, dtype=np.int64)
    for range_start, range_end in ranges:
        evals += range_end - range_start + 1
        enters = occ_arr - width
        leaves = occ_arr + 1
        edges = np.unique(np.concatenate(([range_start], enters, leaves, [range_end + 1])))
        edges = edges[(edges >= range_start) & (edges <= range_end + 1)]
        seg_values = np.searchsorted(occ_arr, edges[:-1] + width, side="right") - np.searchsorted(
            occ_arr, edges[:-1], side="left"
        )
        counts = np.repeat(seg_values.astype(np.int32), np.diff(edges))
        dense = counts >= min_support
        flips = np.flatnonzero(dense[1:] != dense[:-1]) + 1
        bounds = [0, *flips.tolist(), len(dense)]
        for a, b in zip(bounds[:-1], bounds[1:]):
            if dense[a]:
                intervals.append((range_start + a, range_start + b - 1 + width))
    return ScanResult(intervals, evals)
