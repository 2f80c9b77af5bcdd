import random
from math import comb

import pytest

from skelab.hypercube import (
    Vertex,
    all_vertices,
    avoids,
    ball,
    cube_points,
    grid_partition,
    hamming,
    project,
    sphere,
    support,
    unit,
    weight_masks,
    xor,
)


def V(s):
    return Vertex.from_bits(s)


def test_hamming_examples():
    assert hamming(V("000"), V("000")) == 0
    assert hamming(V("00000"), V("11100")) == 3
    assert hamming(V("0101"), V("1010")) == 4


def test_hamming_requires_equal_dimensions():
    with pytest.raises(ValueError):
        hamming(V("01"), V("011"))


def test_xor_examples():
    assert xor(V("011"), V("101")) == V("110")
    assert xor(V("0110"), Vertex(0, 4)) == V("0110")
    assert xor(V("11100"), V("00010")) == V("11110")
    assert xor(V("101"), V("101")) == Vertex(0, 3)


def test_support_examples():
    assert support(V("000")) == ()
    assert support(V("101")) == (1, 3)
    assert support(V("11100")) == (1, 2, 3)


def test_cube_points_examples():
    assert {v.to_bits() for v in cube_points(V("00"), V("11"))} == {"00", "01", "10", "11"}
    assert cube_points(V("01"), V("01")) == [V("01")]
    assert {v.to_bits() for v in cube_points(V("000"), V("110"))} == {"000", "010", "100", "110"}


def test_cube_points_brute_force_condition():
    # every point of the enclosing subcube, nothing else
    rnd = random.Random(7)
    for _ in range(50):
        n = rnd.randrange(1, 7)
        x, y = Vertex(rnd.randrange(1 << n), n), Vertex(rnd.randrange(1 << n), n)
        expected = [
            z
            for z in all_vertices(n)
            if all(
                min((x.bits >> i) & 1, (y.bits >> i) & 1)
                <= (z.bits >> i) & 1
                <= max((x.bits >> i) & 1, (y.bits >> i) & 1)
                for i in range(n)
            )
        ]
        got = cube_points(x, y)
        assert got == expected
        assert len(got) == 2 ** hamming(x, y)
        assert x in got and y in got


def test_sphere_and_ball_counts():
    x = Vertex(0, 3)
    assert sphere(x, 0) == [x]
    assert {v.to_bits() for v in sphere(x, 1)} == {"100", "010", "001"}
    assert len(sphere(Vertex(0, 4), 2)) == 6
    assert ball(Vertex(0, 2), 0) == [Vertex(0, 2)]
    assert len(ball(Vertex(0, 3), 1)) == 4
    assert len(ball(Vertex(0, 4), 4)) == 16
    for n in range(1, 7):
        for r in range(n + 1):
            assert len(sphere(Vertex(0, n), r)) == comb(n, r)
    with pytest.raises(ValueError):
        sphere(Vertex(0, 3), 4)


def test_sphere_is_sorted_ascending():
    pts = sphere(V("0101"), 2)
    assert [p.bits for p in pts] == sorted(p.bits for p in pts)


def test_project_examples():
    assert project(V("10110"), 2) == V("101")
    assert project(V("0110"), 0) == V("0110")
    assert project(V("11111"), 4) == V("1")
    with pytest.raises(ValueError):
        project(V("101"), 3)


def test_project_contracts_distances():
    rnd = random.Random(3)
    for _ in range(100):
        n = rnd.randrange(2, 8)
        d = rnd.randrange(1, n)
        x, y = Vertex(rnd.randrange(1 << n), n), Vertex(rnd.randrange(1 << n), n)
        assert hamming(project(x, d), project(y, d)) <= hamming(x, y)


def test_avoids_examples():
    assert avoids(V("00000"), V("11100"), V("00000"), V("00011"))
    assert not avoids(V("000"), V("110"), V("000"), V("011"))
    x = V("0110")
    assert avoids(x, x, V("0000"), V("1111"))


def test_grid_partition_examples():
    assert grid_partition(1, 1) == [[(1, 1)]]
    assert grid_partition(2, 3) == [
        [(1, 1), (2, 2)],
        [(1, 2), (2, 3)],
        [(1, 3), (2, 1)],
    ]
    with pytest.raises(ValueError):
        grid_partition(3, 2)


def test_grid_partition_defining_properties():
    for n in range(1, 51):
        for m in range(1, n + 1):
            classes = grid_partition(m, n)
            assert len(classes) == n
            seen = set()
            for cls in classes:
                assert len(cls) == m
                assert len({a for a, _ in cls}) == m
                assert len({b for _, b in cls}) == m
                seen.update(cls)
            assert seen == {(a, b) for a in range(1, m + 1) for b in range(1, n + 1)}


def test_weight_masks_ascending_and_complete():
    for n in range(1, 9):
        for d in range(n + 1):
            masks = weight_masks(n, d)
            assert len(masks) == comb(n, d)
            assert list(masks) == sorted(masks)
            assert all(m.bit_count() == d for m in masks)


def test_vertex_string_round_trip_and_validation():
    for s in ("0", "1", "10110", "0000000001"):
        assert Vertex.from_bits(s).to_bits() == s
    with pytest.raises(ValueError):
        Vertex.from_bits("012")
    with pytest.raises(ValueError):
        Vertex(4, 2)
    with pytest.raises(ValueError):
        Vertex(0, 64)
    assert unit(3, 5) == V("00100")


def test_hamming_equals_support_of_xor():
    rnd = random.Random(11)
    for _ in range(200):
        n = rnd.randrange(1, 12)
        x, y = Vertex(rnd.randrange(1 << n), n), Vertex(rnd.randrange(1 << n), n)
        assert hamming(x, y) == len(support(xor(x, y)))
