"""Benchmark harness: timed mining runs with peak-memory reporting.

Peak memory prefers the OS high-water resident figure (ru_maxrss); when
the resource module is unavailable a tracemalloc allocator high-water is
used instead, and the source is recorded next to the number.
"""

from __future__ import annotations

import csv
import json
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .db import TransactionDB, read_db
from .miner import MiningParams, MiningResult, mine

CSV_HEADER = [
    "t",
    "i",
    "b",
    "seed",
    "mode",
    "rep",
    "wall_ms",
    "peak_mib",
    "window_evals",
    "patterns_total",
    "patterns_len_ge2",
    "mem_source",
]

try:
    import resource

    def peak_memory_mib() -> tuple[float, str]:
        # ru_maxrss is KiB on Linux; it only ever grows within a process.
        return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0, "ru_maxrss"

except ImportError:  # pragma: no cover - non-POSIX fallback
    import tracemalloc

    def peak_memory_mib() -> tuple[float, str]:
        if not tracemalloc.is_tracing():
            tracemalloc.start()
        _, peak = tracemalloc.get_traced_memory()
        return peak / (1024.0 * 1024.0), "tracemalloc"


@dataclass
class BenchRecord:
    """One measured mining run."""

    t: int | None
    i: int | None
    b: float | None
    seed: int | None
    mode: str
    rep: int
    wall_ms: float
    peak_mib: float
    window_evals: int
    patterns_total: int
    patterns_len_ge2: int
    mem_source: str
    phases_ms: dict[str, float] = field(default_factory=dict)

    def csv_row(self) -> list:
        return [
            "" if self.t is None else self.t,
            "" if self.i is None else self.i,
            "" if self.b is None else self.b,
            "" if self.seed is None else self.seed,
            self.mode,
            self.rep,
            round(self.wall_ms, 3),
            round(self.peak_mib, 3),
            self.window_evals,
            self.patterns_total,
            self.patterns_len_ge2,
            self.mem_source,
        ]


def timed_mine(
    db: TransactionDB, params: MiningParams, *, threads: int = 1, load_ms: float = 0.0
) -> tuple[MiningResult, BenchRecord]:
    clock = time.perf_counter()
    result = mine(db, params, threads=threads)
    wall_ms = (time.perf_counter() - clock) * 1000.0
    peak, source = peak_memory_mib()
    by_len = result.patterns_by_length()
    phases = {"load": round(load_ms, 3)}
    for level, seconds in result.level_seconds:
        phases[f"level_{level}"] = round(seconds * 1000.0, 3)
    phases["total"] = round(load_ms + wall_ms, 3)
    record = BenchRecord(
        t=len(db),
        i=db.n_items,
        b=None,
        seed=None,
        mode=params.mode,
        rep=0,
        wall_ms=wall_ms,
        peak_mib=peak,
        window_evals=result.counters.window_evals,
        patterns_total=result.n_patterns,
        patterns_len_ge2=sum(n for length, n in by_len.items() if length >= 2),
        mem_source=source,
        phases_ms=phases,
    )
    return result, record


def bench_db(
    db: TransactionDB,
    params_base: MiningParams,
    modes: Iterable[str],
    repeat: int,
    *,
    threads: int = 1,
    warmup: bool = True,
    config: dict | None = None,
) -> list[BenchRecord]:
    """Measured repetitions per mode; one unmeasured warm-up precedes them."""
    config = config or {}
    records = []
    for mode in modes:
        params = MiningParams(
            window=params_base.window,
            min_support=params_base.min_support,
            max_len=params_base.max_len,
            mode=mode,
        )
        if warmup:
            mine(db, params, threads=threads)
        for rep in range(1, repeat + 1):
            _, record = timed_mine(db, params, threads=threads)
            record.rep = rep
            record.t = config.get("t", record.t)
            record.i = config.get("i", record.i)
            record.b = config.get("b")
            record.seed = config.get("seed")
            records.append(record)
    return records


def write_csv(records: list[BenchRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        for record in records:
            writer.writerow(record.csv_row())


def plot_data(records: list[BenchRecord]) -> dict:
    """Aggregate series of wall time / memory / work versus t, grouped by
    (i, b, mode)."""
    groups: dict[tuple, list[BenchRecord]] = {}
    for record in records:
        groups.setdefault((record.i, record.b, record.mode), []).append(record)
    series = []
    for (i, b, mode), recs in sorted(groups.items(), key=lambda kv: (str(kv[0]))):
        points = {}
        for record in recs:
            points.setdefault(record.t, []).append(record)
        rows = []
        for t in sorted(points):
            walls = [r.wall_ms for r in points[t]]
            rows.append(
                {
                    "t": t,
                    "mean_wall_ms": round(statistics.fmean(walls), 3),
                    "median_wall_ms": round(statistics.median(walls), 3),
                    "mean_peak_mib": round(statistics.fmean(r.peak_mib for r in points[t]), 3),
                    "mean_window_evals": round(
                        statistics.fmean(r.window_evals for r in points[t]), 1
                    ),
                }
            )
        series.append({"i": i, "b": b, "mode": mode, "points": rows})
    return {"series": series}


def write_plot_data(records: list[BenchRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(plot_data(records), handle, indent=2)
        handle.write("\n")


def load_for_bench(path: str | Path) -> tuple[TransactionDB, float]:
    clock = time.perf_counter()
    db = read_db(path)
    return db, (time.perf_counter() - clock) * 1000.0
