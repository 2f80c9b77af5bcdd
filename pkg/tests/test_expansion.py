import random
from fractions import Fraction as F

import pytest

from skelab import rng
from skelab.errors import ResourceCapError
from skelab.expansion import (
    boundary_size,
    degree_upper_bound,
    exact_cheeger,
    local_search_upper_bound,
)
from skelab.skeleton import MethodTag, SkeletonGraph, VertexSet, build_exact_skeleton, sample_vertex_set


def graph_from_edges(n, masks, edges):
    V = VertexSet(n, masks)
    adj = {m: set() for m in V.masks}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return SkeletonGraph(V, {m: frozenset(s) for m, s in adj.items()}, MethodTag("exact"))


def four_cycle():
    return build_exact_skeleton(VertexSet(2, range(4)))


def test_exact_cheeger_examples():
    assert exact_cheeger(four_cycle()).value == 1
    two = graph_from_edges(2, [0, 3], [(0, 3)])
    assert exact_cheeger(two).value == 1
    path3 = graph_from_edges(2, [0, 1, 3], [(0, 1), (1, 3)])
    res = exact_cheeger(path3)
    assert res.value == 1 and len(res.witness) == 1


def test_exact_cheeger_witness_recomputes():
    rnd = random.Random(4)
    for trial in range(25):
        V = sample_vertex_set(4, F(3, 5), rng.mix64(100, trial))
        if len(V) < 2:
            continue
        G = build_exact_skeleton(V)
        res = exact_cheeger(G)
        assert 1 <= len(res.witness) <= len(V) // 2
        assert res.value == F(boundary_size(G, res.witness), len(res.witness))


def test_exact_cheeger_limits():
    with pytest.raises(ValueError):
        exact_cheeger(graph_from_edges(2, [0], []))
    with pytest.raises(ResourceCapError):
        exact_cheeger(
            graph_from_edges(5, range(27), [(i, i + 1) for i in range(26)])
        )


def test_degree_upper_bound_examples():
    assert degree_upper_bound(four_cycle()).value == 2
    star = graph_from_edges(3, [0, 1, 2, 4], [(0, 1), (0, 2), (0, 4)])
    assert degree_upper_bound(star).value == 1
    k4 = graph_from_edges(
        2, range(4), [(a, b) for a in range(4) for b in range(a + 1, 4)]
    )
    assert degree_upper_bound(k4).value == 3


def test_local_search_examples():
    assert local_search_upper_bound(four_cycle(), seed=0).value == 1
    parts = [(0, 1), (1, 3), (0, 2), (2, 3), (4, 5)]
    disconnected = graph_from_edges(3, range(6), parts)
    assert local_search_upper_bound(disconnected, seed=0).value == 0


def test_bound_ordering_on_random_instances():
    rnd = random.Random(9)
    for trial in range(20):
        V = sample_vertex_set(4, F(7, 10), rng.mix64(200, trial))
        if len(V) < 2:
            continue
        G = build_exact_skeleton(V)
        exact = exact_cheeger(G).value
        local = local_search_upper_bound(G, seed=trial).value
        degree = degree_upper_bound(G).value
        assert exact <= local <= degree
