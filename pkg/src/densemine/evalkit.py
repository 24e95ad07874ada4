"""Evaluation metrics for predicted pattern sets against ground truth.

A pattern set maps a pattern (tuple of item tokens, lexicographically
sorted) to a list of closed intervals.  Truth entries must have at least
one interval; predictions may have none (interval-less methods).

All interval arithmetic uses duration measure on unions, so abutting
intervals never count a shared endpoint twice.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .db import TransactionDB, build_item_index, occ_intersect
from .intervals import Interval, region_intersect, region_union_measure

PatternSet = Mapping[tuple[str, ...], list[Interval]]


def _filtered(patterns: PatternSet, min_len: int) -> dict[tuple[str, ...], list[Interval]]:
    return {p: iv for p, iv in patterns.items() if len(p) >= min_len}


def f1(pred: PatternSet, truth: PatternSet, min_len: int = 2) -> float:
    """Harmonic-mean agreement between the two pattern sets.

    Both sides are filtered to patterns of length >= min_len first.  When
    both filtered sets are empty the score is reported as 0.
    """
    p = set(_filtered(pred, min_len))
    t = set(_filtered(truth, min_len))
    if not p and not t:
        return 0.0
    return 2 * len(p & t) / (len(p) + len(t))


def _overlap_measure(a: Sequence[Interval], b: Sequence[Interval]) -> int:
    if not a or not b:
        return 0
    return region_union_measure(region_intersect(a, b))


def mean_jaccard(pred: PatternSet, truth: PatternSet, min_len: int = 2) -> float | None:
    """Average temporal-overlap Jaccard over all truth patterns.

    A truth pattern absent from the predictions contributes 0.  Undefined
    (None) when the filtered truth set is empty.
    """
    t = _filtered(truth, min_len)
    if not t:
        return None
    p = _filtered(pred, min_len)
    total = 0.0
    for pattern, truth_iv in t.items():
        pred_iv = p.get(pattern, [])
        union = region_union_measure(list(truth_iv) + list(pred_iv))
        if union == 0:
            continue  # both coverages are degenerate points; contributes 0
        total += _overlap_measure(truth_iv, pred_iv) / union
    return total / len(t)


def mean_temporal_precision(
    pred: PatternSet, truth: PatternSet, min_len: int = 2
) -> float | None:
    """Average fraction of predicted coverage that overlaps the truth,
    over correctly identified patterns only.

    A matched pattern whose predicted coverage has zero measure contributes
    0.  Undefined (None) when no pattern matches.
    """
    p = _filtered(pred, min_len)
    t = _filtered(truth, min_len)
    matched = sorted(set(p) & set(t))
    if not matched:
        return None
    total = 0.0
    for pattern in matched:
        pred_measure = region_union_measure(p[pattern])
        if pred_measure == 0:
            continue
        total += _overlap_measure(t[pattern], p[pattern]) / pred_measure
    return total / len(matched)


@dataclass
class MetricsReport:
    f1: float
    mean_jaccard: float | None
    mean_tp: float | None
    counts: dict[str, int]
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        def cell(value):
            return "undefined" if value is None else value

        return {
            "f1": self.f1,
            "mean_jaccard": cell(self.mean_jaccard),
            "mean_tp": cell(self.mean_tp),
            "counts": self.counts,
            "warnings": self.warnings,
        }


def evaluate(pred: PatternSet, truth: PatternSet, min_len: int = 2) -> MetricsReport:
    p = _filtered(pred, min_len)
    t = _filtered(truth, min_len)
    matched = set(p) & set(t)
    notes = []
    if not p and not t:
        notes.append("both pattern sets are empty after the length filter; F1 reported as 0")
    if not t:
        notes.append("truth set is empty after the length filter; mean Jaccard undefined")
    if not matched:
        notes.append("no pattern matched; mean temporal precision undefined")
    for pattern in sorted(matched):
        if region_union_measure(p[pattern]) == 0:
            notes.append(
                f"matched pattern {' '.join(pattern)} has zero predicted coverage; "
                "contributes 0 to temporal precision"
            )
    return MetricsReport(
        f1=f1(pred, truth, min_len),
        mean_jaccard=mean_jaccard(pred, truth, min_len),
        mean_tp=mean_temporal_precision(pred, truth, min_len),
        counts={"pred": len(p), "truth": len(t), "matched": len(matched)},
        warnings=notes,
    )


def span_reference(
    db: TransactionDB, patterns: Iterable[tuple[str, ...]]
) -> dict[tuple[str, ...], list[Interval]]:
    """Degenerate reference predictor: one interval per pattern from its
    first to its last occurrence.  Patterns that never occur are skipped
    with a warning."""
    index = build_item_index(db)
    out: dict[tuple[str, ...], list[Interval]] = {}
    for pattern in patterns:
        key = tuple(sorted(pattern))
        try:
            ids = [db.ids[token] for token in key]
        except KeyError:
            warnings.warn(f"span_reference: pattern {' '.join(key)} never occurs; skipped")
            continue
        occ = index[ids[0]]
        for item in ids[1:]:
            occ = occ_intersect(occ, index[item])
            if not occ:
                break
        if not occ:
            warnings.warn(f"span_reference: pattern {' '.join(key)} never occurs; skipped")
            continue
        out[key] = [(occ[0], occ[-1])]
    return out


def promo_overlap_ratio(
    intervals: Sequence[Interval], promo: Sequence[Interval]
) -> float | None:
    """Duration-weighted fraction of the intervals covered by promo periods.

    Promo periods are unioned into a region first; each interval then
    contributes its own overlap, so splitting an interval into abutting
    pieces does not change the ratio.  Undefined (None) when the intervals
    have zero total duration.
    """
    total = sum(e - s for s, e in intervals)
    if total == 0:
        return None
    region = region_intersect(promo) if promo else []
    covered = sum(_overlap_measure([iv], region) for iv in intervals)
    return covered / total


def expand_day_timestamps(records: Iterable[tuple[int, int, int]]) -> list[int]:
    """Spread day-resolution records over 1000 slots per day.

    Each record is (day, rank_within_day, n_day) with 0 <= rank < n_day and
    n_day <= 1000; the timestamp is day*1000 + floor(rank*1000/n_day), so
    sorted input yields strictly increasing timestamps and floor(ts/1000)
    recovers the day.
    """
    out = []
    for day, rank, n_day in records:
        if n_day < 1 or n_day > 1000:
            raise ValueError(f"n_day must be in 1..1000, got {n_day} (slot collision risk)")
        if not 0 <= rank < n_day:
            raise ValueError(f"rank {rank} out of range for n_day={n_day}")
        if day < 0:
            raise ValueError(f"day must be non-negative, got {day}")
        out.append(day * 1000 + (rank * 1000) // n_day)
    return out
