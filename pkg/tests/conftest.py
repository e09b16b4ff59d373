from functools import lru_cache

import pytest

from drinfeld_delta.verification import builtin_points, prepare_point

TEST_PRECISION = 200
TEST_BOUND = 4
TEST_ORDER = 20
TEST_TARGET_DIGITS = 40

RANK_TWO_POINTS = ["q2r2-a", "q2r2-b", "q2r2-c", "q3r2-a", "q3r2-b", "q3r2-c"]
RANK_THREE_POINTS = ["q2r3-a", "q2r3-b"]


@lru_cache(maxsize=None)
def prepared(name: str, precision: int = TEST_PRECISION, bound: int = TEST_BOUND):
    (spec,) = [spec for spec in builtin_points() if spec.name == name]
    return prepare_point(spec, precision, bound)


@pytest.fixture(scope="session")
def point_q2r2():
    return prepared("q2r2-a")


@pytest.fixture(scope="session")
def point_q3r2():
    return prepared("q3r2-a")


@pytest.fixture(scope="session")
def point_q2r3():
    return prepared("q2r3-a")
