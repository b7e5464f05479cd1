import pytest

from zlincat.builders import (PermGroupData, cyclic_group, cyclic_shift_data,
                              graded_category, group_ring_category,
                              integer_category, orbit_category, sum_of_fields,
                              zmod_category)


@pytest.fixture(scope="session")
def corpus():
    """The categories every randomized suite runs over."""
    return {
        "integers": integer_category(),
        "integers-mod-4": zmod_category(4),
        "integers-mod-5": zmod_category(5),
        "group-ring-c2": group_ring_category(cyclic_group(2)),
        "cyclic-shift-2": graded_category(cyclic_shift_data(2)),
        "sum-of-fields-2-3": sum_of_fields([2, 3]),
        "orbit-c2": orbit_category(
            PermGroupData(degree=2, generators=[(1, 0)], family=[[], [(1, 0)]])),
    }


@pytest.fixture(scope="session")
def zcat_int(corpus):
    return corpus["integers"]


@pytest.fixture(scope="session")
def zcat_mod4(corpus):
    return corpus["integers-mod-4"]


@pytest.fixture(scope="session")
def zcat_mod5(corpus):
    return corpus["integers-mod-5"]
