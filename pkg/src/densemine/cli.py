"""Command-line front end.

Subcommands: mine, gen, eval, oracle-check, bench.  Exit codes: 0 success,
1 check failure (oracle mismatch), 2 bad flags or infeasible parameters,
3 input parse/schema error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import replace

from . import bench as benchmod
from .db import DbFormatError, TransactionDB, read_db, save_db, write_db
from .evalkit import evaluate, promo_overlap_ratio
from .miner import MODES, MiningParams, mine
from .oracle import EnumerationBoundError, brute_mine, random_db, random_params
from .serialize import (
    PatternFileError,
    dump_patterns,
    load_patterns,
    result_to_dict,
    write_result,
)
from .synthgen import GenParams, generate, write_ground_truth

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _mining_params(args) -> MiningParams:
    try:
        return MiningParams(
            window=args.window,
            min_support=args.minsup,
            max_len=getattr(args, "kmax", None),
            mode=getattr(args, "mode", "full"),
        )
    except ValueError as err:
        raise UsageError(str(err)) from None


def cmd_mine(args) -> int:
    params = _mining_params(args)
    db, load_ms = benchmod.load_for_bench(args.input)
    result, record = benchmod.timed_mine(db, params, threads=args.threads, load_ms=load_ms)
    by_length = result.patterns_by_length()
    if args.min_len > 1:
        result.entries = [e for e in result.entries if len(e[0]) >= args.min_len]
    if args.out:
        write_result(result, args.out)
    else:
        dump_patterns(result_to_dict(result), sys.stdout)
    if args.bench:
        payload = {
            "params": {
                "W": params.window,
                "sigma": params.min_support,
                "k_max": params.max_len,
                "mode": params.mode,
                "threads": args.threads,
                "min_len": args.min_len,
            },
            "phases_ms": record.phases_ms,
            "peak_mib": round(record.peak_mib, 3),
            "mem_source": record.mem_source,
            "counters": {
                "window_evals": result.counters.window_evals,
                "candidates_generated": result.counters.candidates_generated,
                "candidates_pruned": result.counters.candidates_pruned,
            },
            "patterns_by_length": {str(k): v for k, v in sorted(by_length.items())},
        }
        with open(args.bench, "w", encoding="utf-8", newline="\n") as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")
    return EXIT_OK


def _gen_params(args) -> GenParams:
    try:
        return GenParams(
            n_transactions=args.t,
            n_items=args.i,
            mean_basket=args.b,
            n_patterns=args.patterns,
            pattern_len=args.pattern_len,
            interval_len=args.interval_len,
            intervals_per_pattern=args.intervals_per_pattern,
            occ_per_interval=args.occ_per_interval,
            gap_lo=args.gap_lo,
            gap_hi=args.gap_hi,
            seed=args.seed,
        )
    except ValueError as err:
        raise UsageError(str(err)) from None


def cmd_gen(args) -> int:
    params = _gen_params(args)
    try:
        db, truth = generate(params)
    except ValueError as err:
        raise UsageError(str(err)) from None
    write_db(db, args.out)
    if args.truth:
        with open(args.truth, "w", encoding="utf-8", newline="\n") as handle:
            write_ground_truth(truth, handle, params)
    _log(
        f"generated {len(db)} transactions over {db.n_items} items, "
        f"t_max={db.t_max}, {truth.n_planted} planted patterns"
    )
    return EXIT_OK


def cmd_eval(args) -> int:
    pred = load_patterns(args.pred)
    truth = load_patterns(args.truth)
    report = evaluate(pred.as_dict(), truth.as_dict(), min_len=args.min_len)
    payload = report.as_dict()
    if args.promo:
        with open(args.promo, "r", encoding="utf-8") as handle:
            try:
                promo_spec = json.load(handle)
            except json.JSONDecodeError as err:
                raise PatternFileError(f"invalid promo JSON: {err}") from None
        if not isinstance(promo_spec, dict) or "periods" not in promo_spec:
            raise PatternFileError("promo file must be {'scale': int, 'periods': [[s, e], ...]}")
        scale = promo_spec.get("scale", 1)
        promo_region = [(int(s) * scale, int(e) * scale) for s, e in promo_spec["periods"]]
        table = {}
        for tokens, intervals in pred.entries:
            ratio = promo_overlap_ratio(intervals, promo_region)
            table[" ".join(tokens)] = "undefined" if ratio is None else round(ratio, 6)
        payload["r_promo"] = table
    with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
    return EXIT_OK


def _dump_counterexample(db: TransactionDB, params: MiningParams) -> str:
    import io

    buf = io.StringIO()
    save_db(db, buf)
    return (
        f"window={params.window} min_support={params.min_support} mode-divergent input:\n"
        + buf.getvalue()
    )


def _modes_disagree(db: TransactionDB, params: MiningParams, mine_fn) -> bool:
    expected = brute_mine(db, params).entries
    for mode in MODES:
        got = mine_fn(db, replace(params, mode=mode)).entries
        if got != expected:
            return True
    return False


def _shrink(db: TransactionDB, params: MiningParams, mine_fn) -> TransactionDB:
    """Greedily drop transactions, then items, while the mismatch persists."""
    from .db import from_rows

    rows = [(ts, list(db.tokens(items))) for ts, items in db.transactions]
    changed = True
    while changed:
        changed = False
        for idx in range(len(rows) - 1, -1, -1):
            trial = rows[:idx] + rows[idx + 1 :]
            if not trial:
                continue
            candidate = from_rows(trial)
            if _modes_disagree(candidate, params, mine_fn):
                rows = trial
                changed = True
        for idx, (ts, tokens) in enumerate(rows):
            if len(tokens) <= 1:
                continue
            for tok in list(tokens):
                trimmed = [t for t in tokens if t != tok]
                trial = rows[:idx] + [(ts, trimmed)] + rows[idx + 1 :]
                candidate = from_rows(trial)
                if _modes_disagree(candidate, params, mine_fn):
                    rows = trial
                    tokens = trimmed
                    changed = True
    return from_rows(rows)


def run_oracle_trials(
    trials: int,
    *,
    max_items: int = 8,
    max_trans: int = 60,
    t_max_bound: int = 300,
    seed: int = 0,
    mine_fn=mine,
    log=_log,
) -> tuple[bool, str | None]:
    """Random databases through the miner (all modes) versus brute force.

    Returns (ok, counterexample_dump); on mismatch the failing input is
    shrunk before being reported.
    """
    rng = random.Random(seed)
    clock = time.perf_counter()
    for trial in range(trials):
        db = random_db(rng, max_items=max_items, max_trans=max_trans, t_max_bound=t_max_bound)
        params = random_params(rng)
        if _modes_disagree(db, params, mine_fn):
            small = _shrink(db, params, mine_fn)
            dump = _dump_counterexample(small, params)
            log(f"mismatch on trial {trial + 1}:\n{dump}")
            return False, dump
    log(f"{trials} randomized trials matched brute force "
        f"({time.perf_counter() - clock:.1f}s)")
    return True, None


def cmd_oracle_check(args) -> int:
    if args.input:
        params = _mining_params(args)
        db = read_db(args.input)
        try:
            if _modes_disagree(db, params, mine):
                _log("MISMATCH against brute force")
                _log(_dump_counterexample(db, params))
                return EXIT_MISMATCH
        except EnumerationBoundError as err:
            raise UsageError(str(err)) from None
        _log("ok: all modes match brute force on the given input")
        return EXIT_OK
    ok, _ = run_oracle_trials(
        args.trials,
        max_items=args.max_items,
        max_trans=args.max_trans,
        seed=args.seed,
    )
    return EXIT_OK if ok else EXIT_MISMATCH


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def cmd_bench(args) -> int:
    params = _mining_params(args)
    modes = MODES if args.modes == "all" else tuple(args.modes.split(","))
    for mode in modes:
        if mode not in MODES:
            raise UsageError(f"unknown mode {mode!r}")
    records = []
    if args.inputs:
        for path in args.inputs:
            db, _ = benchmod.load_for_bench(path)
            avg_len = (
                round(sum(len(items) for _, items in db.transactions) / len(db), 2)
                if len(db)
                else 0
            )
            records.extend(
                benchmod.bench_db(
                    db,
                    params,
                    modes,
                    args.repeat,
                    threads=args.threads,
                    warmup=not args.no_warmup,
                    config={"t": len(db), "i": db.n_items, "b": avg_len, "seed": None},
                )
            )
    else:
        if not (args.grid_t and args.grid_i and args.grid_b):
            raise UsageError("provide --inputs or all of --grid-t/--grid-i/--grid-b")
        for t in _parse_int_list(args.grid_t):
            for i in _parse_int_list(args.grid_i):
                for b in _parse_int_list(args.grid_b):
                    try:
                        gen = GenParams(
                            n_transactions=t, n_items=i, mean_basket=b, seed=args.seed
                        )
                        db, _ = generate(gen)
                    except ValueError as err:
                        raise UsageError(str(err)) from None
                    records.extend(
                        benchmod.bench_db(
                            db,
                            params,
                            modes,
                            args.repeat,
                            threads=args.threads,
                            warmup=not args.no_warmup,
                            config={"t": t, "i": i, "b": b, "seed": args.seed},
                        )
                    )
    benchmod.write_csv(records, args.out)
    if args.plot_data:
        benchmod.write_plot_data(records, args.plot_data)
    _log(f"wrote {len(records)} bench rows to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="densemine",
        description="Exact mining of window-dense itemsets and their dense intervals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mine = sub.add_parser("mine", help="mine a database file")
    p_mine.add_argument("--input", required=True)
    p_mine.add_argument("--window", type=int, required=True)
    p_mine.add_argument("--minsup", type=int, required=True)
    p_mine.add_argument("--kmax", type=int, default=None)
    p_mine.add_argument("--mode", choices=MODES, default="full")
    p_mine.add_argument("--min-len", type=int, default=1, dest="min_len")
    p_mine.add_argument("--out", default=None)
    p_mine.add_argument("--bench", default=None)
    p_mine.add_argument("--threads", type=int, default=1)
    p_mine.set_defaults(func=cmd_mine)

    p_gen = sub.add_parser("gen", help="generate a synthetic database plus ground truth")
    p_gen.add_argument("--t", type=int, required=True, help="transaction count")
    p_gen.add_argument("--i", type=int, required=True, help="item universe size")
    p_gen.add_argument("--b", type=float, required=True, help="mean basket length")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--patterns", type=int, default=50)
    p_gen.add_argument("--pattern-len", type=int, default=5, dest="pattern_len")
    p_gen.add_argument("--interval-len", type=int, default=10_000, dest="interval_len")
    p_gen.add_argument(
        "--intervals-per-pattern", type=int, default=1, dest="intervals_per_pattern"
    )
    p_gen.add_argument(
        "--occ-per-interval", type=int, default=100, dest="occ_per_interval"
    )
    p_gen.add_argument("--gap-lo", type=int, default=5, dest="gap_lo")
    p_gen.add_argument("--gap-hi", type=int, default=10, dest="gap_hi")
    p_gen.add_argument("--out", required=True)
    p_gen.add_argument("--truth", default=None)
    p_gen.set_defaults(func=cmd_gen)

    p_eval = sub.add_parser("eval", help="score predictions against ground truth")
    p_eval.add_argument("--pred", required=True)
    p_eval.add_argument("--truth", required=True)
    p_eval.add_argument("--min-len", type=int, default=2, dest="min_len")
    p_eval.add_argument("--promo", default=None)
    p_eval.add_argument("--out", required=True)
    p_eval.set_defaults(func=cmd_eval)

    p_check = sub.add_parser("oracle-check", help="compare the miner with brute force")
    p_check.add_argument("--trials", type=int, default=1000)
    p_check.add_argument("--max-items", type=int, default=8, dest="max_items")
    p_check.add_argument("--max-trans", type=int, default=60, dest="max_trans")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--input", default=None)
    p_check.add_argument("--window", type=int, default=None)
    p_check.add_argument("--minsup", type=int, default=None)
    p_check.set_defaults(func=cmd_oracle_check)

    p_bench = sub.add_parser("bench", help="benchmark grid over generated or given data")
    p_bench.add_argument("--grid-t", default=None, dest="grid_t")
    p_bench.add_argument("--grid-i", default=None, dest="grid_i")
    p_bench.add_argument("--grid-b", default=None, dest="grid_b")
    p_bench.add_argument("--inputs", nargs="*", default=None)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--window", type=int, required=True)
    p_bench.add_argument("--minsup", type=int, required=True)
    p_bench.add_argument("--kmax", type=int, default=None)
    p_bench.add_argument("--repeat", type=int, default=3)
    p_bench.add_argument("--modes", default="all")
    p_bench.add_argument("--threads", type=int, default=1)
    p_bench.add_argument("--no-warmup", action="store_true", dest="no_warmup")
    p_bench.add_argument("--out", required=True)
    p_bench.add_argument("--plot-data", default=None, dest="plot_data")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "oracle-check" and args.input and (
        args.window is None or args.minsup is None
    ):
        parser.error("--input requires --window and --minsup")
    try:
        return args.func(args)
    except UsageError as err:
        _log(f"error: {err}")
        return EXIT_USAGE
    except (DbFormatError, PatternFileError) as err:
        _log(f"parse error: {err}")
        return EXIT_PARSE
    except OSError as err:
        _log(f"i/o error: {err}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
