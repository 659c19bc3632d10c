"""Shared brute-force oracles and corpus helpers for the test suite."""

import itertools

import pytest

from abcover.generators import SplitMix64, random_multigraph, random_weights
from abcover.graph import Multigraph


def brute_degree2_edge_sets(g: Multigraph) -> set[frozenset[int]]:
    """All edge subsets in which every vertex has degree 0 or 2 (loop = 2)."""
    out = set()
    for k in range(g.m + 1):
        for sub in itertools.combinations(range(g.m), k):
            deg = [0] * g.n
            for e in sub:
                u, v = g.edges[e]
                deg[u] += 1
                deg[v] += 1
            if all(x in (0, 2) for x in deg):
                out.add(frozenset(sub))
    return out


def count_components(n: int, edges) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(n)})


def random_weighted_graphs(seed: int, count: int, n_max: int, m_max: int,
                           connected: bool = False, complex_weights: bool = True):
    rng = SplitMix64(seed)
    for _ in range(count):
        n = 1 + rng.below(n_max)
        m = rng.below(m_max + 1)
        if connected:
            m = max(m, n - 1)
        g = random_multigraph(n, m, rng.next_u64(), connected=connected)
        yield g, random_weights(g, rng.next_u64(), complex_weights=complex_weights)


@pytest.fixture
def rng():
    return SplitMix64(20240601)


# acceptance lines are collected here and echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
