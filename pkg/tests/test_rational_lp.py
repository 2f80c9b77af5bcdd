import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from skelab.hypercube import Vertex
from skelab.rational_lp import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    LpProblem,
    convex_membership,
    simplex_solve,
)


def test_bounded_single_variable():
    out = simplex_solve(LpProblem([F(1)], [[F(1)]], [F(1)], ["<="]))
    assert out.status == OPTIMAL
    assert out.value == 1
    assert out.solution == [F(1)]


def test_unbounded_without_constraints():
    out = simplex_solve(LpProblem([F(1)], [], [], []))
    assert out.status == UNBOUNDED


def test_contradictory_equalities_infeasible():
    out = simplex_solve(LpProblem([F(0)], [[F(1)], [F(1)]], [F(1), F(2)], ["=", "="]))
    assert out.status == INFEASIBLE


def test_solution_resubstitutes_exactly():
    rnd = random.Random(20)
    solved = 0
    for _ in range(60):
        m, k = rnd.randrange(1, 4), rnd.randrange(1, 5)
        rows = [[F(rnd.randrange(0, 6)) for _ in range(k)] for _ in range(m)]
        rhs = [F(rnd.randrange(0, 9)) for _ in range(m)]
        senses = [rnd.choice(["<=", "="]) for _ in range(m)]
        obj = [F(rnd.randrange(-3, 6)) for _ in range(k)]
        out = simplex_solve(LpProblem(obj, rows, rhs, senses))
        if out.status != OPTIMAL:
            continue
        solved += 1
        assert all(x >= 0 for x in out.solution)
        for row, b, s in zip(rows, rhs, senses):
            lhs = sum(a * x for a, x in zip(row, out.solution))
            assert lhs == b if s == "=" else lhs <= b
        assert sum(c * x for c, x in zip(obj, out.solution)) == out.value
    assert solved > 20


def _solve3(rows, rhs):
    """Exact 3x3 linear solve by Gaussian elimination; None when singular."""
    a = [row[:] + [b] for row, b in zip(rows, rhs)]
    x = [F(0)] * 3
    for col in range(3):
        piv = next((r for r in range(col, 3) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        a[col] = [v / a[col][col] for v in a[col]]
        for r in range(3):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    for i in range(3):
        x[i] = a[i][3]
    return x


def _polyhedron_vertices(ineqs):
    """Vertices of {x in R^3 : row . x <= rhs for all (row, rhs)} by
    enumerating all tight triples."""
    verts = []
    for trio in combinations(range(len(ineqs)), 3):
        rows = [ineqs[i][0] for i in trio]
        rhs = [ineqs[i][1] for i in trio]
        x = _solve3(rows, rhs)
        if x is None:
            continue
        if all(sum(a * v for a, v in zip(row, x)) <= b for row, b in ineqs):
            verts.append(x)
    return verts


def test_strong_duality_on_random_3x3():
    # primal: max c.x s.t. Ax <= b, x >= 0, with positive A so both sides
    # are bounded; oracle = exhaustive vertex enumeration of both polyhedra
    rnd = random.Random(99)
    for _ in range(50):
        A = [[F(rnd.randrange(1, 6)) for _ in range(3)] for _ in range(3)]
        b = [F(rnd.randrange(1, 10)) for _ in range(3)]
        c = [F(rnd.randrange(0, 8)) for _ in range(3)]

        primal = simplex_solve(LpProblem(c, A, b, ["<="] * 3))
        assert primal.status == OPTIMAL

        primal_ineqs = [(A[i], b[i]) for i in range(3)]
        primal_ineqs += [([F(-1 if j == i else 0) for j in range(3)], F(0)) for i in range(3)]
        pverts = _polyhedron_vertices(primal_ineqs)
        assert pverts, "feasible polytope has vertices"
        best_primal = max(sum(ci * xi for ci, xi in zip(c, x)) for x in pverts)
        assert primal.value == best_primal

        # dual: min b.y s.t. A^T y >= c, y >= 0 == max (-b).y s.t. -A^T y <= -c
        At = [[A[r][col] for r in range(3)] for col in range(3)]
        dual = simplex_solve(
            LpProblem([-bi for bi in b], [[-a for a in row] for row in At], [-ci for ci in c], ["<="] * 3)
        )
        assert dual.status == OPTIMAL
        dual_ineqs = [([-a for a in At[i]], -c[i]) for i in range(3)]
        dual_ineqs += [([F(-1 if j == i else 0) for j in range(3)], F(0)) for i in range(3)]
        dverts = _polyhedron_vertices(dual_ineqs)
        best_dual = min(sum(bi * yi for bi, yi in zip(b, y)) for y in dverts)
        assert -dual.value == best_dual
        assert best_primal == best_dual


def test_fraction_arithmetic_is_exact_for_big_operands():
    rnd = random.Random(5)
    for _ in range(100):
        a, b = rnd.getrandbits(200), rnd.getrandbits(180) + 1
        c, d = rnd.getrandbits(190), rnd.getrandbits(170) + 1
        x, y = F(a, b), F(c, d)
        assert (x + y) - y == x
        assert (x * y) / y == x if y else True


def test_convex_membership_examples():
    assert convex_membership([F(1, 2), F(1, 2)], [Vertex.from_bits("01"), Vertex.from_bits("10")])
    assert not convex_membership([F(1, 2), F(1, 2)], [Vertex.from_bits("00"), Vertex.from_bits("01")])
    gens = [Vertex.from_bits("100"), Vertex.from_bits("010"), Vertex.from_bits("001")]
    assert convex_membership([F(1, 3)] * 3, gens)
    with pytest.raises(ValueError):
        convex_membership([F(1)], [])


def test_malformed_problem_rejected():
    with pytest.raises(ValueError):
        LpProblem([F(1)], [[F(1), F(2)]], [F(1)], ["<="])
    with pytest.raises(ValueError):
        LpProblem([F(1)], [[F(1)]], [F(1)], ["<"])
