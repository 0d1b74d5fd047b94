import pytest

from propercycles.cycles import CycleView
from propercycles.graph import EdgeColoredGraph, matching_k4, monochromatic, rainbow_k3

ACCEPTANCE_KEY = pytest.StashKey[list]()


def planted(cycle_colors, w_colors, n=None):
    """Cycle 0..l-1 with edge (i, i+1) colored cycle_colors[i], outside vertex
    w = l with c(w, i) = w_colors[i]; every other edge gets a fresh color."""
    ell = len(cycle_colors)
    n = n or ell + 1
    fixed = {}
    for i, col in enumerate(cycle_colors):
        fixed[tuple(sorted((i, (i + 1) % ell)))] = col
    for i, col in enumerate(w_colors):
        fixed[(i, ell)] = col
    fresh = iter(range(100, 1000))
    g = EdgeColoredGraph.from_function(n, lambda i, j: fixed.get((i, j), next(fresh)))
    return g, CycleView(tuple(range(ell))), ell


@pytest.fixture
def k3():
    return rainbow_k3()


@pytest.fixture
def mono4():
    return monochromatic(4)


@pytest.fixture
def match4():
    return matching_k4()


@pytest.fixture
def planted7():
    # P1 = {v0, v1}, P2 = {v2, v3}, P3 = {v4, v5}; triangle w v1 v2 has color 2
    return planted([1, 2, 3, 4, 5, 6], [1, 2, 2, 3, 9, 9])


@pytest.fixture
def planted7_repeats():
    # P1 = {v0, v1, v2}, P2 = {v3, v4}, P3 = {v5}; cycle colors repeat so R is cut short
    return planted([1, 2, 1, 2, 3, 4], [1, 2, 1, 1, 2, 9])


@pytest.fixture
def planted7_extension():
    # P3 carries two colors, so w can be inserted between v4 and v5
    return planted([1, 2, 3, 4, 5, 6], [1, 2, 2, 3, 9, 10])


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
