"""Shared fixtures: small named graphs and memoized atlases."""

from __future__ import annotations

import pytest

from pantsorbit import build_orbit_graph, enumerate_orbits, from_edge_list


@pytest.fixture
def dumbbell():
    return from_edge_list(2, [(0, 0), (0, 1), (1, 1)])


@pytest.fixture
def theta():
    return from_edge_list(2, [(0, 1), (0, 1), (0, 1)])


@pytest.fixture
def k4():
    return from_edge_list(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


_ATLASES: dict = {}


@pytest.fixture(scope="session")
def atlas_for():
    """Memoized atlas factory; adjacency included."""

    def get(genus: int):
        if genus not in _ATLASES:
            _ATLASES[genus] = build_orbit_graph(enumerate_orbits(genus))
        return _ATLASES[genus]

    return get
