"""Canonical JSON for pattern sets (mining results and ground truth).

Schema::

    {"params": {...}, "t_max": <int or null>,
     "patterns": [{"items": ["tok", ...], "intervals": [[s, e], ...]}, ...]}

Patterns are sorted by (length, lexicographic item tokens), tokens within
a pattern lexicographically, intervals by start.  Serialization is
byte-stable for a given input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .intervals import Interval
from .miner import MiningResult

Entries = list[tuple[tuple[str, ...], list[Interval]]]


class PatternFileError(ValueError):
    """Pattern-set JSON that does not match the canonical schema."""


def canonical_entries(entries: Iterable[tuple[Iterable[str], Iterable[Interval]]]) -> Entries:
    out: Entries = [
        (tuple(sorted(tokens)), sorted((int(s), int(e)) for s, e in intervals))
        for tokens, intervals in entries
    ]
    out.sort(key=lambda entry: (len(entry[0]), entry[0]))
    return out


def patterns_to_dict(entries: Entries, *, params: dict | None = None, t_max: int | None = None) -> dict:
    return {
        "params": params or {},
        "t_max": t_max,
        "patterns": [
            {"items": list(tokens), "intervals": [[s, e] for s, e in intervals]}
            for tokens, intervals in entries
        ],
    }


def result_to_dict(result: MiningResult) -> dict:
    params = {
        "W": result.params.window,
        "sigma": result.params.min_support,
        "k_max": result.params.max_len,
    }
    return patterns_to_dict(result.entries, params=params, t_max=result.t_max)


def dump_patterns(data: dict, sink) -> None:
    json.dump(data, sink, separators=(",", ":"), ensure_ascii=False)
    sink.write("\n")


def write_result(result: MiningResult, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        dump_patterns(result_to_dict(result), handle)


@dataclass(frozen=True)
class PatternFile:
    params: dict
    t_max: int | None
    entries: Entries

    def as_dict(self) -> dict[tuple[str, ...], list[Interval]]:
        return {tokens: intervals for tokens, intervals in self.entries}


def parse_patterns(data: dict) -> PatternFile:
    if not isinstance(data, dict) or not isinstance(data.get("patterns"), list):
        raise PatternFileError("expected an object with a 'patterns' list")
    entries = []
    for i, entry in enumerate(data["patterns"]):
        if not isinstance(entry, dict):
            raise PatternFileError(f"patterns[{i}] is not an object")
        items = entry.get("items")
        intervals = entry.get("intervals")
        if not isinstance(items, list) or not items or not all(isinstance(t, str) for t in items):
            raise PatternFileError(f"patterns[{i}].items must be a non-empty list of strings")
        if not isinstance(intervals, list):
            raise PatternFileError(f"patterns[{i}].intervals must be a list")
        parsed = []
        for pair in intervals:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
                or pair[0] > pair[1]
            ):
                raise PatternFileError(f"patterns[{i}] has a malformed interval {pair!r}")
            parsed.append((pair[0], pair[1]))
        entries.append((tuple(items), parsed))
    t_max = data.get("t_max")
    if t_max is not None and not isinstance(t_max, int):
        raise PatternFileError("t_max must be an integer or null")
    params = data.get("params") or {}
    if not isinstance(params, dict):
        raise PatternFileError("params must be an object")
    return PatternFile(params=params, t_max=t_max, entries=canonical_entries(entries))


def load_patterns(path: str | Path) -> PatternFile:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as err:
            raise PatternFileError(f"invalid JSON: {err}") from None
    return parse_patterns(data)
