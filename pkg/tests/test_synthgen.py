import io
import statistics
from dataclasses import replace

import pytest

from densemine import (
    GenParams,
    MiningParams,
    brute_dense_intervals,
    generate,
    load_patterns,
    mine,
    write_ground_truth,
)
from densemine.serialize import parse_patterns
import json

SMALL = GenParams(
    n_transactions=3000,
    n_items=300,
    mean_basket=3,
    n_patterns=4,
    pattern_len=3,
    interval_len=400,
    occ_per_interval=40,
    seed=7,
)
SMALL_MINING = MiningParams(window=100, min_support=8)


@pytest.fixture(scope="module")
def small_synth():
    return generate(SMALL)


def test_same_seed_is_identical_and_other_seed_differs(small_synth):
    db, truth = small_synth
    db2, truth2 = generate(SMALL)
    assert db.transactions == db2.transactions
    assert truth == truth2
    db3, _ = generate(replace(SMALL, seed=8))
    assert db.transactions != db3.transactions


def test_planted_items_occur_only_as_full_patterns(small_synth):
    db, truth = small_synth
    expected_occurrences = SMALL.occ_per_interval * SMALL.intervals_per_pattern
    for tokens, _ in truth.entries:
        ids = {db.ids[t] for t in tokens}
        with_any = [ts for ts, items in db.transactions if ids & set(items)]
        with_all = [ts for ts, items in db.transactions if ids <= set(items)]
        assert with_any == with_all
        assert len(with_all) == expected_occurrences


def test_planted_interval_geometry(small_synth):
    _, truth = small_synth
    all_intervals = [iv for _, ivs in truth.entries for iv in ivs]
    assert all(e - s == SMALL.interval_len for s, e in all_intervals)
    ordered = sorted(all_intervals)
    assert all(a[1] < b[0] for a, b in zip(ordered, ordered[1:]))
    sets = [frozenset(tokens) for tokens, _ in truth.entries]
    assert all(a.isdisjoint(b) for i, a in enumerate(sets) for b in sets[i + 1 :])


def test_background_gap_statistics(small_synth):
    db, truth = small_synth
    planted = sorted(iv for _, ivs in truth.entries for iv in ivs)

    def inside(ts):
        return any(s <= ts <= e for s, e in planted)

    stamps = [ts for ts, _ in db.transactions]
    outside_gaps = [
        b - a for a, b in zip(stamps, stamps[1:]) if not (inside(a) and inside(b))
    ]
    mean = statistics.fmean(outside_gaps)
    assert SMALL.gap_lo <= mean <= SMALL.gap_hi
    assert all(g >= SMALL.gap_lo for g in outside_gaps)


def test_expected_pattern_counts_properties(small_synth):
    _, truth = small_synth
    assert truth.n_planted == 4
    assert truth.expected_len_ge2 == 4 * (2**3 - 3 - 1)
    assert truth.expected_total == truth.expected_len_ge2 + 12


def test_mining_recovers_exactly_the_planted_structure(small_synth):
    db, truth = small_synth
    result = mine(db, SMALL_MINING)
    occ_of = {}
    for tokens, _ in truth.entries:
        ids = {db.ids[t] for t in tokens}
        occ_of[tokens] = [ts for ts, items in db.transactions if ids <= set(items)]
    expected = {}
    for tokens, _ in truth.entries:
        reference = brute_dense_intervals(
            occ_of[tokens], SMALL_MINING.window, SMALL_MINING.min_support, db.t_max
        )
        for mask in range(1, 2 ** len(tokens)):
            subset = tuple(t for i, t in enumerate(tokens) if mask >> i & 1)
            expected[tuple(sorted(subset))] = reference
    assert result.as_dict() == expected
    assert result.n_patterns == truth.expected_total


def test_infeasible_and_invalid_params_rejected():
    with pytest.raises(ValueError):
        GenParams(n_transactions=100, n_items=300, mean_basket=3, occ_per_interval=40)
    with pytest.raises(ValueError):
        GenParams(n_transactions=3000, n_items=10, mean_basket=3)  # no background items
    with pytest.raises(ValueError):
        GenParams(n_transactions=3000, n_items=300, mean_basket=3, gap_lo=0)
    with pytest.raises(ValueError):
        GenParams(n_transactions=3000, n_items=300, mean_basket=3, gap_lo=9, gap_hi=5)
    with pytest.raises(ValueError):
        GenParams(
            n_transactions=3000,
            n_items=300,
            mean_basket=3,
            interval_len=10,
            occ_per_interval=40,
        )


def test_ground_truth_round_trip(small_synth, tmp_path):
    _, truth = small_synth
    buf = io.StringIO()
    write_ground_truth(truth, buf, SMALL)
    parsed = parse_patterns(json.loads(buf.getvalue()))
    assert parsed.t_max == truth.t_max
    assert {tokens: tuple(map(tuple, ivs)) for tokens, ivs in parsed.entries} == {
        tokens: ivs for tokens, ivs in truth.entries
    }
    path = tmp_path / "truth.json"
    path.write_text(buf.getvalue(), encoding="utf-8")
    assert load_patterns(path).entries == parsed.entries
