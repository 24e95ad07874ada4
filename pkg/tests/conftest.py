import random
from pathlib import Path

import pytest

from densemine import GenParams, MiningParams, generate, read_db

DATA = Path(__file__).parent / "data"
EXAMPLE = DATA / "example_small.txt"

# dense patterns of the worked example at window=10, min_support=3
EXAMPLE_EXPECTED = [
    (("a",), [(0, 13)]),
    (("b",), [(0, 15), (15, 25)]),
    (("c",), [(0, 13), (15, 25)]),
    (("a", "b"), [(0, 13)]),
    (("b", "c"), [(0, 13), (15, 25)]),
]

OCC = {
    "a": [1, 3, 7, 9, 20, 25],
    "b": [1, 3, 5, 7, 9, 20, 22, 25],
    "c": [3, 5, 7, 20, 22, 25],
    "ab": [1, 3, 7, 9, 20, 25],
    "ac": [3, 7, 20, 25],
    "bc": [3, 5, 7, 20, 22, 25],
    "abc": [3, 7, 20, 25],
}


@pytest.fixture(scope="session")
def example_db():
    return read_db(EXAMPLE)


@pytest.fixture(scope="session")
def example_params():
    return MiningParams(window=10, min_support=3)


DESK_GEN = GenParams(n_transactions=100_000, n_items=10_000, mean_basket=5, seed=1)
DESK_MINING = MiningParams(window=1000, min_support=9)


@pytest.fixture(scope="session")
def desk_synthetic():
    """Default-embedding synthetic dataset at desk scale (shared: slow)."""
    return generate(DESK_GEN)


def random_occ(rng: random.Random, t_max: int, max_n: int = 40) -> list[int]:
    n = rng.randint(0, min(max_n, t_max + 1))
    return sorted(rng.sample(range(t_max + 1), n))
