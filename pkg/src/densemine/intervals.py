"""Closed-interval lists and disjoint-region algebra.

An interval is an ``(s, e)`` pair of integers with ``s <= e``, read as the
closed real interval [s, e].  Two kinds of lists appear:

* dense-interval lists: starts strictly increasing and ends strictly
  increasing; overlap is allowed, containment is not.  These are reported
  to the user as-is.
* region lists: pairwise disjoint, non-abutting (``e_i < s_{i+1}``), used
  as point sets when restricting searches.  Abutting or overlapping input
  intervals cover the same points, so they are coalesced.

Measure is duration: ``|[s, e]| = e - s``, zero for single points.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Interval = tuple[int, int]


def coalesce(intervals: Iterable[Interval]) -> list[Interval]:
    """Merge overlapping or abutting intervals into a canonical region list."""
    merged: list[Interval] = []
    for s, e in sorted(intervals):
        if merged and s <= merged[-1][1]:
            if e > merged[-1][1]:
                merged[-1] = (merged[-1][0], e)
        else:
            merged.append((s, e))
    return merged


def _intersect_two(a: Sequence[Interval], b: Sequence[Interval]) -> list[Interval]:
    out: list[Interval] = []
    i = j = 0
    while i < len(a) and j < len(b):
        s = max(a[i][0], b[j][0])
        e = min(a[i][1], b[j][1])
        if s <= e:
            out.append((s, e))
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    return out


def region_intersect(*lists: Iterable[Interval]) -> list[Interval]:
    """Point-set intersection of one or more interval lists.

    Each input is treated as the union of its closed intervals; the result
    is the maximal disjoint decomposition of the common points.
    """
    if not lists:
        raise ValueError("region_intersect needs at least one interval list")
    acc = coalesce(lists[0])
    for other in lists[1:]:
        if not acc:
            return []
        acc = _intersect_two(acc, coalesce(other))
    return coalesce(acc)


def region_union_measure(intervals: Iterable[Interval]) -> int:
    """Duration of the union of the given intervals."""
    return sum(e - s for s, e in coalesce(intervals))


def contains_point(region: Sequence[Interval], x: int) -> bool:
    """Membership test against a coalesced region list."""
    for s, e in region:
        if s <= x <= e:
            return True
        if s > x:
            break
    return False


def validate_region_list(intervals: Sequence[Interval]) -> None:
    prev_end = None
    for s, e in intervals:
        if s > e:
            raise ValueError(f"interval ({s}, {e}) has s > e")
        if prev_end is not None and s <= prev_end:
            raise ValueError("region list is not disjoint and non-abutting")
        prev_end = e


def validate_dense_list(
    intervals: Sequence[Interval], width: int, t_max: int
) -> None:
    prev: Interval | None = None
    for s, e in intervals:
        if e - s < width:
            raise ValueError(f"interval ({s}, {e}) is shorter than the window width")
        if s < 0 or e > t_max:
            raise ValueError(f"interval ({s}, {e}) exceeds [0, {t_max}]")
        if prev is not None and (s <= prev[0] or e <= prev[1]):
            raise ValueError("dense-interval list starts/ends are not strictly increasing")
        prev = (s, e)
