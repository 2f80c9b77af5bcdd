import random
from fractions import Fraction as F
from pathlib import Path

import pytest

from skelab import rng
from skelab.errors import ResourceCapError
from skelab.hypercube import Vertex, ball, hamming
from skelab.skeleton import (
    VertexSet,
    alpha_full_vertices,
    build_exact_skeleton,
    build_Gd,
    cube_criterion_edge,
    dumps_graph,
    dumps_vertex_set,
    edge_length_histogram,
    full_degree_vertices,
    is_edge_exact,
    loads_graph,
    loads_vertex_set,
    nonedge_filter_a,
    nonedge_filter_b,
    sample_vertex_set,
)

GOLDEN = Path(__file__).parent / "goldens" / "sample_n3_p1-2_seed42.txt"


def B(s):
    return Vertex.from_bits(s)


def full_cube(n):
    return VertexSet(n, range(1 << n))


def test_sampling_edge_cases():
    assert len(sample_vertex_set(3, 1, 9)) == 8
    assert len(sample_vertex_set(3, 0, 9)) == 0
    with pytest.raises(ValueError):
        sample_vertex_set(3, F(3, 2), 9)
    with pytest.raises(ResourceCapError):
        sample_vertex_set(21, F(1, 2), 9)


def test_sampling_golden_stream():
    V = sample_vertex_set(3, F(1, 2), 42)
    assert dumps_vertex_set(V) == GOLDEN.read_text()


def test_sampling_is_deterministic_and_order_free():
    a = sample_vertex_set(10, F(7, 10), 123)
    b = sample_vertex_set(10, F(7, 10), 123)
    assert a == b and a.members == b.members
    # inclusion decisions are per-point, independent of enumeration order
    kept = [m for m in reversed(range(1 << 10)) if rng.coin(123, m, 7, 10)]
    assert sorted(kept) == [v.bits for v in a.members]
    assert sample_vertex_set(10, F(7, 10), 124) != a


def test_float_probability_means_decimal():
    assert sample_vertex_set(6, 0.7, 5) == sample_vertex_set(6, F(7, 10), 5)


def test_vertex_set_serialization_round_trip():
    V = sample_vertex_set(5, F(3, 10), 77)
    assert loads_vertex_set(dumps_vertex_set(V)) == V
    explicit = VertexSet(4, [0, 3, 9])
    text = dumps_vertex_set(explicit)
    assert text.splitlines()[0] == "n=4 p=- seed=-"
    assert loads_vertex_set(text) == explicit


def test_is_edge_exact_examples():
    V = VertexSet(2, [0b00, 0b11])
    assert is_edge_exact(Vertex(0, 2), Vertex(3, 2), V)
    V = full_cube(2)
    assert not is_edge_exact(Vertex(0, 2), Vertex(3, 2), V)
    even = VertexSet(3, [0b000, 0b011, 0b101, 0b110])
    assert is_edge_exact(B("000"), B("011"), even)
    with pytest.raises(ValueError):
        is_edge_exact(Vertex(0, 2), Vertex(0, 2), V)
    with pytest.raises(ValueError):
        is_edge_exact(Vertex(0, 3), Vertex(1, 3), VertexSet(3, [0]))


def test_cube_criterion_examples():
    V = VertexSet(2, [0b00, 0b11])
    assert cube_criterion_edge(Vertex(0, 2), Vertex(3, 2), V)
    V = VertexSet(2, [0b00, 0b01, 0b11])
    assert not cube_criterion_edge(Vertex(0, 2), Vertex(3, 2), V)
    V = VertexSet(3, [B("000").bits, B("110").bits, B("101").bits])
    assert cube_criterion_edge(B("000"), B("110"), V)


def test_nonedge_filter_a_examples():
    V = VertexSet(3, [v.bits for v in ball(Vertex(0, 3), 1)] + [B("011").bits])
    assert nonedge_filter_a(Vertex(0, 3), B("011"), V)
    V = VertexSet(3, [B("000").bits, B("011").bits])
    assert not nonedge_filter_a(B("000"), B("011"), V)
    V = VertexSet(3, [v.bits for v in ball(Vertex(0, 3), 1)])
    assert not nonedge_filter_a(B("000"), B("100"), V)


def test_nonedge_filter_b_examples():
    V = full_cube(2)
    s, t = nonedge_filter_b(Vertex(0, 2), Vertex(3, 2), V)
    assert {s.bits, t.bits} == {1, 2} and s.bits < t.bits
    V = VertexSet(3, [B("000").bits, B("100").bits])
    assert nonedge_filter_b(B("000"), B("100"), V) is None
    V = VertexSet(3, [B("000").bits, B("111").bits, B("100").bits, B("011").bits])
    s, t = nonedge_filter_b(B("000"), B("111"), V)
    assert {s.to_bits(), t.to_bits()} == {"100", "011"}
    assert (s ^ t) == B("000") ^ B("111")


def test_build_gd_examples():
    n = 4
    G = build_Gd(full_cube(n), 1)
    assert G.edge_count == n * (1 << (n - 1))
    assert build_Gd(full_cube(n), 2).edge_count == 0
    even = VertexSet(3, [0b000, 0b011, 0b101, 0b110])
    G = build_Gd(even, 2)
    assert G.edge_count == 6  # K4
    assert all(hamming(u, v) == 2 for u, v in G.edges())


def test_exact_skeleton_of_full_cube_is_hypercube():
    for n in (2, 3, 4):
        V = full_cube(n)
        G = build_exact_skeleton(V)
        expected = {
            (a, a ^ (1 << i))
            for a in range(1 << n)
            for i in range(n)
            if a < a ^ (1 << i)
        }
        assert set(G.edge_masks()) == expected


def test_exact_skeleton_degenerate_and_caps():
    assert build_exact_skeleton(VertexSet(3, [5])).edge_count == 0
    with pytest.raises(ResourceCapError):
        build_exact_skeleton(VertexSet(9, range(301)))


def test_criterion_soundness_small_sweep():
    # every criterion edge is an exact edge; every filter certificate is a
    # non-edge; 30 instances here, the full 200 live in the acceptance suite
    rnd = random.Random(0)
    for trial in range(30):
        n = rnd.choice([3, 4, 5])
        p = rnd.choice([F(3, 10), F(1, 2), F(4, 5)])
        V = sample_vertex_set(n, p, rng.mix64(31, trial))
        if len(V) < 2:
            continue
        exact = build_exact_skeleton(V)
        for d in range(1, n + 1):
            for u, v in build_Gd(V, d).edges():
                assert exact.has_edge(u, v)
        members = V.members
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                if nonedge_filter_a(u, v, V) or nonedge_filter_b(u, v, V):
                    assert not exact.has_edge(u, v)


def test_full_degree_certification():
    V = VertexSet(3, [v.bits for v in ball(Vertex(0, 3), 1)])
    assert full_degree_vertices(V) == [Vertex(0, 3)]
    assert full_degree_vertices(full_cube(3)) == list(full_cube(3).members)
    assert full_degree_vertices(VertexSet(3, [0b000, 0b001, 0b010])) == []
    # a full-degree vertex has criterion degree n and filter-(a) certificates
    # against every sampled vertex at distance >= 2
    V = sample_vertex_set(6, F(4, 5), 1)
    G1 = build_Gd(V, 1)
    for u in full_degree_vertices(V):
        assert G1.degree(u) == 6
        for v in V.members:
            if hamming(u, v) >= 2:
                assert nonedge_filter_a(u, v, V)


def test_alpha_full_examples():
    V = VertexSet(3, [v.bits for v in ball(Vertex(0, 3), 1)])
    assert Vertex(0, 3) in alpha_full_vertices(V, F(1, 2))
    assert alpha_full_vertices(VertexSet(3, [0]), F(1, 2)) == []
    assert len(alpha_full_vertices(full_cube(4), F(1, 100))) == 16
    with pytest.raises(ValueError):
        alpha_full_vertices(V, 0)


def test_edge_length_histogram():
    assert edge_length_histogram(build_exact_skeleton(full_cube(2))) == {1: 4}
    single = build_exact_skeleton(VertexSet(2, [0b00, 0b11]))
    assert edge_length_histogram(single) == {2: 1}
    empty = build_exact_skeleton(VertexSet(2, [0b00]))
    assert edge_length_histogram(empty) == {}


def test_graph_serialization_round_trip():
    V = sample_vertex_set(4, F(3, 5), 8)
    G = build_Gd(V, 1)
    text = dumps_graph(G)
    back = loads_graph(text, vertices=V)
    assert back.adj == G.adj
    assert str(back.method) == str(G.method)
    assert text.splitlines()[0] == f"method=cube_criterion(1) n=4"
