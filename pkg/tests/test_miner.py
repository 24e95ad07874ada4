import random
from dataclasses import replace

import pytest

from densemine import (
    MODES,
    MiningParams,
    apriori_join,
    brute_mine,
    cand_ranges,
    from_rows,
    mine,
    prune_subsets,
)
from densemine.intervals import contains_point, region_intersect, validate_dense_list
from densemine.oracle import random_db, random_params

from .conftest import EXAMPLE_EXPECTED


def test_mine_worked_example_exactly(example_db, example_params):
    result = mine(example_db, example_params)
    assert result.entries == EXAMPLE_EXPECTED
    assert result.t_max == 25


def test_min_support_one_with_window_spanning_everything():
    db = from_rows([(0, ["x"]), (4, ["y"]), (9, ["x", "y"])])
    result = mine(db, MiningParams(window=9, min_support=1))
    as_map = result.as_dict()
    assert as_map[("x",)] == [(0, 9)]
    assert as_map[("y",)] == [(0, 9)]


def test_window_wider_than_timeline_yields_nothing():
    db = from_rows([(0, ["x"]), (4, ["x"])])
    assert mine(db, MiningParams(window=5, min_support=1)).entries == []


def test_invalid_params_rejected():
    for bad in (
        dict(window=0, min_support=3),
        dict(window=10, min_support=0),
        dict(window=10, min_support=3, max_len=0),
        dict(window=10, min_support=3, mode="turbo"),
    ):
        with pytest.raises(ValueError):
            MiningParams(**bad)


def test_apriori_join_cases():
    assert apriori_join([(0,), (1,), (2,)]) == [(0, 1), (0, 2), (1, 2)]
    assert apriori_join([(0, 1), (0, 2), (1, 2)]) == [(0, 1, 2)]
    assert apriori_join([(3,)]) == []


def test_prune_subsets_cases():
    assert prune_subsets([(0, 1, 2)], {(0, 1), (1, 2)}) == []
    assert prune_subsets([(0, 1, 2)], {(0, 1), (0, 2), (1, 2)}) == [(0, 1, 2)]
    assert prune_subsets([], {(0, 1)}) == []


def test_cand_ranges_from_singleton_interval_lists(example_db):
    a, b, c = (example_db.ids[t] for t in "abc")
    singles = {a: [(0, 13)], b: [(0, 15), (15, 25)], c: [(0, 13), (15, 25)]}
    assert cand_ranges((b, c), singles, 10, 25) == [(0, 3), (15, 15)]
    assert cand_ranges((a, b), singles, 10, 25) == [(0, 3)]
    disjoint = {a: [(0, 10)], b: [(12, 25)]}
    assert cand_ranges((a, b), disjoint, 10, 25) == []


def test_kmax_truncates_pattern_length(example_db, example_params):
    capped = mine(example_db, replace(example_params, max_len=1))
    assert all(len(tokens) == 1 for tokens, _ in capped.entries)
    assert len(capped.entries) == 3


def test_modes_agree_and_counters_are_ordered():
    rng = random.Random(21)
    for _ in range(150):
        db = random_db(rng)
        params = random_params(rng)
        results = {mode: mine(db, replace(params, mode=mode)) for mode in MODES}
        assert results["full"].entries == results["intersect"].entries == results["baseline"].entries
        evals = {mode: results[mode].counters.window_evals for mode in MODES}
        assert evals["full"] <= evals["intersect"] <= evals["baseline"]


def test_matches_oracle_across_modes():
    rng = random.Random(22)
    for _ in range(200):
        db = random_db(rng)
        params = random_params(rng)
        expected = brute_mine(db, params).entries
        for mode in MODES:
            result = mine(db, replace(params, mode=mode))
            assert result.entries == expected
            for _, intervals in result.entries:
                assert intervals
                validate_dense_list(intervals, params.window, db.t_max)


def test_downward_closure_of_output():
    rng = random.Random(23)
    for _ in range(100):
        db = random_db(rng)
        params = random_params(rng)
        patterns = {tokens for tokens, _ in mine(db, params).entries}
        for tokens in patterns:
            if len(tokens) > 1:
                for i in range(len(tokens)):
                    assert tokens[:i] + tokens[i + 1 :] in patterns


def test_emitted_intervals_stay_inside_singleton_regions():
    rng = random.Random(24)
    for _ in range(150):
        db = random_db(rng)
        params = random_params(rng)
        result = mine(db, params)
        singles = {tokens[0]: intervals for tokens, intervals in result.entries if len(tokens) == 1}
        for tokens, intervals in result.entries:
            if len(tokens) < 2:
                continue
            region = region_intersect(*(singles[t] for t in tokens))
            for s, e in intervals:
                assert contains_point(region, s) and contains_point(region, e)
                assert any(rs <= s and e <= re for rs, re in region)


def test_threaded_mining_is_deterministic(example_db, example_params):
    solo = mine(example_db, example_params, threads=1)
    multi = mine(example_db, example_params, threads=4)
    assert solo.entries == multi.entries
    assert solo.counters == multi.counters
    rng = random.Random(25)
    for _ in range(20):
        db = random_db(rng, max_items=6, max_trans=40)
        params = random_params(rng)
        assert mine(db, params, threads=3).entries == mine(db, params).entries


def test_counters_account_for_generation_and_pruning(example_db, example_params):
    result = mine(example_db, example_params)
    # three pairs generated from the three dense singletons, one triple
    # candidate never forms because {a,c} fails
    assert result.counters.candidates_generated == 3
    assert result.counters.candidates_pruned == 0
    assert result.counters.window_evals > 0
    assert [k for k, _ in result.level_seconds] == [1, 2, 3]
