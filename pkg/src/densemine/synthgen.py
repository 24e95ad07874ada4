"""Deterministic synthetic data: background transactions plus planted
dense patterns, with ground truth.

Background baskets draw their length from Normal(mean_basket,
max(1, mean_basket / 3)) rounded and clipped, and their items uniformly
without replacement from the non-reserved part of the item universe.
Inter-transaction gaps are uniform integers in [gap_lo, gap_hi] outside
planted intervals; inside one, timestamps are respaced evenly so the
interval spans exactly ``interval_len``.

Planted patterns take the reserved items (never used by the background),
chopped into disjoint sets of ``pattern_len``; each pattern's items are
unioned into ``occ_per_interval`` consecutive background transactions per
placement, with placements spread evenly over the timeline.  A pattern of
length n therefore yields 2**n - n - 1 dense sub-patterns of length >= 2
by construction, and nothing else co-occurs.

Everything is reproducible from the seed: four independently seeded
Mersenne Twister streams (lengths, items, gaps, placement) keep the output
stable under refactoring of any one stage.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .db import TransactionDB, from_rows
from .intervals import Interval
from .serialize import canonical_entries, dump_patterns, patterns_to_dict


@dataclass(frozen=True)
class GenParams:
    n_transactions: int
    n_items: int
    mean_basket: float
    n_patterns: int = 50
    pattern_len: int = 5
    interval_len: int = 10_000
    intervals_per_pattern: int = 1
    occ_per_interval: int = 100
    gap_lo: int = 5
    gap_hi: int = 10
    seed: int = 0

    def __post_init__(self):
        positive = {
            "n_transactions": self.n_transactions,
            "n_items": self.n_items,
            "n_patterns": self.n_patterns,
            "pattern_len": self.pattern_len,
            "interval_len": self.interval_len,
            "intervals_per_pattern": self.intervals_per_pattern,
            "occ_per_interval": self.occ_per_interval,
        }
        for name, value in positive.items():
            if value < 1:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.mean_basket <= 0:
            raise ValueError("mean_basket must be positive")
        if not 1 <= self.gap_lo <= self.gap_hi:
            raise ValueError("need 1 <= gap_lo <= gap_hi")
        if self.n_items <= self.n_reserved:
            raise ValueError(
                f"n_items={self.n_items} leaves no background items after "
                f"reserving {self.n_reserved} for planted patterns"
            )
        if self.n_transactions < self.n_placements * self.occ_per_interval:
            raise ValueError("n_transactions is too small to host all placements")
        if self.occ_per_interval > 1 and self.interval_len < self.occ_per_interval - 1:
            raise ValueError("interval_len too short for distinct in-interval timestamps")

    @property
    def n_reserved(self) -> int:
        return self.n_patterns * self.pattern_len

    @property
    def n_placements(self) -> int:
        return self.n_patterns * self.intervals_per_pattern


@dataclass(frozen=True)
class GroundTruth:
    """Planted patterns (as token tuples) with their planted intervals."""

    entries: tuple[tuple[tuple[str, ...], tuple[Interval, ...]], ...]
    pattern_len: int
    t_max: int

    @property
    def n_planted(self) -> int:
        return len(self.entries)

    @property
    def expected_len_ge2(self) -> int:
        """Dense sub-patterns of length >= 2 implied by the planted sets."""
        return self.n_planted * (2**self.pattern_len - self.pattern_len - 1)

    @property
    def expected_total(self) -> int:
        return self.expected_len_ge2 + self.n_planted * self.pattern_len


def _streams(seed: int) -> tuple[random.Random, ...]:
    return tuple(
        random.Random(f"densemine-synth-{seed}-{purpose}")
        for purpose in ("lengths", "items", "gaps", "placement")
    )


def generate(params: GenParams) -> tuple[TransactionDB, GroundTruth]:
    rng_len, rng_items, rng_gaps, rng_place = _streams(params.seed)

    n_background_items = params.n_items - params.n_reserved
    sigma = max(1.0, params.mean_basket / 3.0)
    baskets: list[list[int]] = []
    for _ in range(params.n_transactions):
        size = round(rng_len.gauss(params.mean_basket, sigma))
        size = min(max(size, 0), n_background_items)
        if size == 0:
            continue
        baskets.append(rng_items.sample(range(n_background_items), size))

    n_kept = len(baskets)
    n_placed = params.n_placements * params.occ_per_interval
    if n_kept < n_placed:
        raise ValueError("timeline too short for the requested placements")

    # reserved items, permuted then chopped into disjoint pattern sets
    reserved = list(range(n_background_items, params.n_items))
    rng_place.shuffle(reserved)
    pattern_items = [
        sorted(reserved[p * params.pattern_len : (p + 1) * params.pattern_len])
        for p in range(params.n_patterns)
    ]

    # placement b (in timeline order) belongs to pattern b % n_patterns and
    # occupies a contiguous block of transactions; blocks are spread evenly.
    spare = n_kept - n_placed
    lead = spare // (params.n_placements + 1)
    block_starts = [
        lead * (b + 1) + b * params.occ_per_interval for b in range(params.n_placements)
    ]
    block_of: dict[int, tuple[int, int]] = {}
    for b, start in enumerate(block_starts):
        for j in range(params.occ_per_interval):
            block_of[start + j] = (b, j)

    tokens = [str(i) for i in range(params.n_items)]
    rows: list[tuple[int, list[str]]] = []
    planted_intervals: list[list[Interval]] = [[] for _ in range(params.n_patterns)]
    now = 0
    block_origin = 0
    for idx, basket in enumerate(baskets):
        membership = block_of.get(idx)
        if membership is None:
            now += rng_gaps.randint(params.gap_lo, params.gap_hi)
            rows.append((now, [tokens[i] for i in basket]))
            continue
        b, j = membership
        pattern = b % params.n_patterns
        if j == 0:
            now += rng_gaps.randint(params.gap_lo, params.gap_hi)
            block_origin = now
            if params.occ_per_interval > 1:
                planted_intervals[pattern].append(
                    (block_origin, block_origin + params.interval_len)
                )
            else:
                planted_intervals[pattern].append((block_origin, block_origin))
        else:
            step = params.interval_len / (params.occ_per_interval - 1)
            now = block_origin + round(j * step)
        items = sorted(set(basket) | set(pattern_items[pattern]))
        rows.append((now, [tokens[i] for i in items]))

    db = from_rows(rows)
    entries = tuple(
        (
            tuple(sorted(tokens[i] for i in pattern_items[p])),
            tuple(sorted(planted_intervals[p])),
        )
        for p in range(params.n_patterns)
    )
    truth = GroundTruth(entries=entries, pattern_len=params.pattern_len, t_max=now)
    return db, truth


def ground_truth_to_dict(truth: GroundTruth, params: GenParams | None = None) -> dict:
    meta = {}
    if params is not None:
        meta = {
            "t": params.n_transactions,
            "i": params.n_items,
            "b": params.mean_basket,
            "n_patterns": params.n_patterns,
            "pattern_len": params.pattern_len,
            "interval_len": params.interval_len,
            "intervals_per_pattern": params.intervals_per_pattern,
            "occ_per_interval": params.occ_per_interval,
            "seed": params.seed,
        }
    entries = canonical_entries(truth.entries)
    return patterns_to_dict(entries, params=meta, t_max=truth.t_max)


def write_ground_truth(truth: GroundTruth, sink, params: GenParams | None = None) -> None:
    dump_patterns(ground_truth_to_dict(truth, params), sink)
