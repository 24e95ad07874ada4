import io
import json

import pytest

from densemine import MiningParams, load_db, mine, read_db, write_result
from densemine.db import DbFormatError
from densemine.serialize import (
    PatternFileError,
    canonical_entries,
    load_patterns,
    parse_patterns,
    result_to_dict,
)

from .conftest import EXAMPLE


def test_result_round_trips_through_json(tmp_path):
    result = mine(read_db(EXAMPLE), MiningParams(window=10, min_support=3))
    path = tmp_path / "result.json"
    write_result(result, path)
    loaded = load_patterns(path)
    assert loaded.t_max == result.t_max
    assert loaded.params == {"W": 10, "sigma": 3, "k_max": None}
    assert loaded.entries == result.entries


def test_canonical_entries_sorts_patterns_and_intervals():
    entries = canonical_entries(
        [
            (("c", "b"), [(5, 9), (0, 4)]),
            (("a",), [(1, 2)]),
            (("b", "c", "a"), [(0, 3)]),
        ]
    )
    assert entries == [
        (("a",), [(1, 2)]),
        (("b", "c"), [(0, 4), (5, 9)]),
        (("a", "b", "c"), [(0, 3)]),
    ]


def test_empty_result_serializes_with_null_t_max(tmp_path):
    result = mine(load_db(io.StringIO("")), MiningParams(window=10, min_support=3))
    path = tmp_path / "empty.json"
    write_result(result, path)
    data = json.loads(path.read_text())
    assert data["t_max"] is None
    assert data["patterns"] == []


@pytest.mark.parametrize(
    "payload",
    [
        [],
        {"patterns": "nope"},
        {"patterns": [{"items": [], "intervals": []}]},
        {"patterns": [{"items": ["a", 3], "intervals": []}]},
        {"patterns": [{"items": ["a"], "intervals": [[1]]}]},
        {"patterns": [{"items": ["a"], "intervals": [[5, 2]]}]},
        {"patterns": [{"items": ["a"], "intervals": [[1, "x"]]}]},
        {"patterns": [], "t_max": "soon"},
        {"patterns": [], "params": 7},
    ],
)
def test_parse_patterns_rejects_bad_shapes(payload):
    with pytest.raises(PatternFileError):
        parse_patterns(payload)


def test_load_patterns_rejects_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(PatternFileError):
        load_patterns(path)


def test_loader_enforces_timestamp_bound():
    too_big = 2**63
    with pytest.raises(DbFormatError):
        load_db(io.StringIO(f"{too_big}\ta\n"))
    load_db(io.StringIO(f"{too_big - 1}\ta\n"))  # top of the range is fine
