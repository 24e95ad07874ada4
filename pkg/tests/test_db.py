import io
import random

import pytest
from hypothesis import given, strategies as st

from densemine import (
    DbFormatError,
    MiningParams,
    build_item_index,
    from_rows,
    interval_support,
    load_db,
    mine,
    occ_intersect,
    save_db,
)
from .conftest import EXAMPLE, OCC


def test_example_file_shape(example_db):
    assert example_db.t_max == 25
    assert example_db.n_items == 3
    assert len(example_db) == 8
    assert example_db.symbols == ("a", "b", "c")


def test_item_index_matches_known_occurrences(example_db):
    index = build_item_index(example_db)
    assert index[example_db.ids["a"]] == OCC["a"]
    assert index[example_db.ids["c"]] == OCC["c"]
    assert list(index) == [0, 1, 2]


def test_single_transaction_index():
    db = from_rows([(0, ["a"])])
    assert build_item_index(db) == {0: [0]}


def test_empty_stream_gives_empty_db():
    db = load_db(io.StringIO(""))
    assert db.t_max is None
    assert len(db) == 0
    assert mine(db, MiningParams(window=5, min_support=1)).entries == []


def test_merge_duplicates_unions_itemsets():
    db = load_db(io.StringIO("7\ta\n7\tb\n"), merge_duplicates=True)
    assert len(db) == 1
    ts, items = db.transactions[0]
    assert ts == 7
    assert db.tokens(items) == ("a", "b")


def test_duplicate_timestamp_rejected_with_line_number():
    with pytest.raises(DbFormatError) as err:
        load_db(io.StringIO("7\ta\n7\tb\n"))
    assert err.value.line_no == 2


def test_out_of_order_timestamp_rejected():
    with pytest.raises(DbFormatError) as err:
        load_db(io.StringIO("9\ta\n7\tb\n"))
    assert err.value.line_no == 2


@pytest.mark.parametrize("bad", ["x\ta", "-3\ta", "1.5\ta", "\ta b"])
def test_malformed_timestamp_rejected(bad):
    with pytest.raises(DbFormatError) as err:
        load_db(io.StringIO(bad + "\n"))
    assert err.value.line_no == 1


def test_comments_and_blanks_keep_line_numbers():
    with pytest.raises(DbFormatError) as err:
        load_db(io.StringIO("# header\n\n5\ta\nbogus\ta\n"))
    assert err.value.line_no == 4


def test_empty_itemset_dropped_and_counted():
    db = load_db(io.StringIO("1\ta\n2\t\n3\tb\n"))
    assert len(db) == 2
    assert db.n_dropped_empty == 1


def test_interning_follows_first_appearance():
    db = load_db(io.StringIO("1\tzebra apple\n2\tmango apple\n"))
    assert db.symbols == ("zebra", "apple", "mango")


def test_save_reproduces_canonical_file_bytes(example_db):
    text = EXAMPLE.read_text(encoding="utf-8")
    buf = io.StringIO()
    save_db(example_db, buf)
    assert buf.getvalue() == text


def test_save_load_is_a_fixed_point():
    rng = random.Random(5)
    rows = []
    ts = 0
    for _ in range(40):
        ts += rng.randint(1, 5)
        rows.append((ts, [rng.choice("pqrst") for _ in range(rng.randint(1, 4))]))
    db = from_rows(rows)
    first = io.StringIO()
    save_db(db, first)
    second = io.StringIO()
    save_db(load_db(io.StringIO(first.getvalue())), second)
    assert first.getvalue() == second.getvalue()


def test_occ_intersect_known_values():
    assert occ_intersect(OCC["a"], OCC["c"]) == [3, 7, 20, 25]
    assert occ_intersect(OCC["a"], []) == []
    assert occ_intersect(OCC["a"], OCC["a"]) == OCC["a"]


@given(
    st.lists(st.integers(0, 100), unique=True).map(sorted),
    st.lists(st.integers(0, 100), unique=True).map(sorted),
)
def test_occ_intersect_matches_membership_filter(a, b):
    assert occ_intersect(a, b) == [x for x in a if x in set(b)]


def test_interval_support_known_values():
    assert interval_support(OCC["ab"], 1, 10) == 4
    assert interval_support(OCC["ab"], 15, 10) == 2
    assert interval_support([], 3, 10) == 0


@given(
    st.lists(st.integers(0, 120), unique=True).map(sorted),
    st.integers(0, 120),
    st.integers(1, 40),
)
def test_interval_support_counts_directly(occ, start, width):
    assert interval_support(occ, start, width) == sum(
        1 for t in occ if start <= t <= start + width
    )
