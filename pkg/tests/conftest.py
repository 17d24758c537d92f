import pytest

import toposcope as tc


@pytest.fixture(scope="session")
def delta1():
    return tc.build_delta1()


@pytest.fixture(scope="session")
def delta2():
    return tc.build_delta_trunc(2)


@pytest.fixture(scope="session")
def two_point_cone():
    return tc.build_two_point_cone()


@pytest.fixture(scope="session")
def all_sites(delta1, delta2, two_point_cone):
    return {"delta1": delta1, "delta2": delta2, "two_point_cone": two_point_cone}


@pytest.fixture(scope="session")
def parallel_edges():
    return tc.build_parallel_edges()


def delta1_raw():
    """A fresh raw description of the reflexive-graph site, for mutation tests."""
    return {
        "name": "delta1",
        "objects": ["O0", "O1"],
        "morphisms": [
            ("id0", "O0", "O0"), ("id1", "O1", "O1"),
            ("d0", "O0", "O1"), ("d1", "O0", "O1"),
            ("s", "O1", "O0"), ("e0", "O1", "O1"), ("e1", "O1", "O1"),
        ],
        "identities": {"O0": "id0", "O1": "id1"},
        "compose": [
            ("s", "d0", "id0"), ("s", "d1", "id0"),
            ("d0", "s", "e0"), ("d1", "s", "e1"),
            ("s", "e0", "s"), ("s", "e1", "s"),
            ("e0", "d0", "d0"), ("e0", "d1", "d0"),
            ("e1", "d0", "d1"), ("e1", "d1", "d1"),
            ("e0", "e0", "e0"), ("e0", "e1", "e0"),
            ("e1", "e0", "e1"), ("e1", "e1", "e1"),
        ],
    }


def terminal_category():
    return tc.validate_category({
        "name": "point",
        "objects": ["*"],
        "morphisms": [("id", "*", "*")],
        "identities": {"*": "id"},
        "compose": [],
    })


def discrete_two():
    return tc.validate_category({
        "name": "discrete2",
        "objects": ["A", "B"],
        "morphisms": [("idA", "A", "A"), ("idB", "B", "B")],
        "identities": {"A": "idA", "B": "idB"},
        "compose": [],
    })


def pointless_site():
    """Terminal object T plus an object B with no points (hom(T, B) empty)."""
    return tc.validate_category({
        "name": "pointless",
        "objects": ["B", "T"],
        "morphisms": [("idB", "B", "B"), ("idT", "T", "T"), ("b", "B", "T")],
        "identities": {"B": "idB", "T": "idT"},
        "compose": [],
    })
