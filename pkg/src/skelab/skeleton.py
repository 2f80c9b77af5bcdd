"""Random vertex sets and polytope skeleton graphs.

Three routes to the skeleton of conv(V) for V inside {0,1}^n:

* ``build_exact_skeleton`` — ground truth. A pair uv is an edge iff the
  midpoint LP "maximize the weight placed outside {u,v} among convex
  representations of (u+v)/2" has optimum exactly 0; any positive optimum
  exhibits a higher-dimensional face through the midpoint. Representations
  of the midpoint can only use vertices of cube(u,v) (coordinates where u
  and v agree pin every generator), so the LP is solved on cube(u,v) & V.
* ``build_Gd`` — the sufficient subcube criterion: uv at distance d is
  accepted when cube(u,v) contains no third sampled point. Always a
  subgraph of the exact skeleton.
* ``nonedge_filter_a`` / ``nonedge_filter_b`` — certified non-edges: a
  fully sampled unit sphere around u, or an interior pair s,t of cube(u,v)
  with s xor t = u xor v, both sampled.

Sampling draws one Bernoulli decision per cube point from a counter-based
stream keyed by (seed, bitmask), so membership is independent of
iteration order and identical triples (n, p, seed) rebuild identical sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import rng
from .errors import ResourceCapError
from .hypercube import Vertex, cube_points, subset_masks, weight_masks
from .rational_lp import OPTIMAL, LpProblem, simplex_solve

SAMPLING_MAX_DIM = 20  # enumeration-based sampling walks all 2^n points
EXACT_SKELETON_MAX_VERTICES = 300  # LP oracle budget


def as_probability(value) -> Fraction:
    """Normalize a probability to an exact Fraction in [0, 1].

    Floats go through their shortest decimal repr, so 0.7 means 7/10.
    """
    if isinstance(value, float):
        frac = Fraction(repr(value))
    else:
        frac = Fraction(value)
    if not 0 <= frac <= 1:
        raise ValueError(f"probability {frac} outside [0, 1]")
    return frac


def as_alpha(value) -> Fraction:
    f = as_probability(value)
    if f == 0:
        raise ValueError("alpha must be in (0, 1]")
    return f


class VertexSet:
    """A subset of {0,1}^n with optional sampling provenance."""

    __slots__ = ("n", "members", "p", "seed", "_masks")

    def __init__(
        self,
        n: int,
        members: Iterable[Vertex | int],
        p: Fraction | None = None,
        seed: int | None = None,
    ):
        self.n = n
        masks = set()
        for m in members:
            if isinstance(m, Vertex):
                if m.n != n:
                    raise ValueError(f"dimension mismatch: {m.n} != {n}")
                masks.add(m.bits)
            else:
                if not 0 <= m < (1 << n):
                    raise ValueError(f"mask {m:#x} out of range for n={n}")
                masks.add(m)
        self._masks = frozenset(masks)
        self.members = tuple(Vertex(b, n) for b in sorted(masks))
        self.p = p
        self.seed = seed

    @property
    def masks(self) -> frozenset[int]:
        return self._masks

    @property
    def provenance(self) -> str:
        return "explicit" if self.p is None else f"sampled(p={self.p}, seed={self.seed})"

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v) -> bool:
        if isinstance(v, Vertex):
            return v.n == self.n and v.bits in self._masks
        return v in self._masks

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VertexSet)
            and self.n == other.n
            and self._masks == other._masks
        )

    def __repr__(self) -> str:
        return f"VertexSet(n={self.n}, size={len(self)}, {self.provenance})"


def sample_vertex_set(n: int, p, seed: int) -> VertexSet:
    """Include each of the 2^n points independently with probability p."""
    if n < 1:
        raise ValueError("dimension must be positive")
    if n > SAMPLING_MAX_DIM:
        raise ResourceCapError(
            f"enumeration-based sampling capped at n={SAMPLING_MAX_DIM}, got {n}"
        )
    prob = as_probability(p)
    num, den = prob.numerator, prob.denominator
    members = [b for b in range(1 << n) if rng.coin(seed, b, num, den)]
    return VertexSet(n, members, p=prob, seed=seed)


@dataclass(frozen=True)
class MethodTag:
    """How a skeleton graph was constructed."""

    kind: str  # 'exact' | 'cube_criterion' | 'union'
    d: int | None = None
    parts: tuple["MethodTag", ...] = ()

    def __str__(self) -> str:
        if self.kind == "cube_criterion":
            return f"cube_criterion({self.d})"
        if self.kind == "union":
            return "union(" + ",".join(str(p) for p in self.parts) + ")"
        return self.kind


def parse_method(text: str) -> MethodTag:
    text = text.strip()
    if text == "exact":
        return MethodTag("exact")
    if text.startswith("cube_criterion(") and text.endswith(")"):
        return MethodTag("cube_criterion", d=int(text[len("cube_criterion(") : -1]))
    if text.startswith("union(") and text.endswith(")"):
        inner = text[len("union(") : -1]
        parts, depth, start = [], 0, 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                parts.append(inner[start:i])
                start = i + 1
        parts.append(inner[start:])
        return MethodTag("union", parts=tuple(parse_method(p) for p in parts))
    raise ValueError(f"unknown method tag {text!r}")


class SkeletonGraph:
    """Adjacency over a VertexSet, tagged with its construction method."""

    __slots__ = ("vertex_set", "adj", "method")

    def __init__(self, vertex_set: VertexSet, adj: dict[int, frozenset[int]], method: MethodTag):
        self.vertex_set = vertex_set
        self.adj = {m: frozenset(adj.get(m, ())) for m in vertex_set.masks}
        self.method = method

    @property
    def n(self) -> int:
        return self.vertex_set.n

    def has_edge(self, u: Vertex | int, v: Vertex | int) -> bool:
        ub = u.bits if isinstance(u, Vertex) else u
        vb = v.bits if isinstance(v, Vertex) else v
        return vb in self.adj.get(ub, ())

    def neighbors(self, v: Vertex | int) -> tuple[Vertex, ...]:
        vb = v.bits if isinstance(v, Vertex) else v
        return tuple(Vertex(b, self.n) for b in sorted(self.adj[vb]))

    def degree(self, v: Vertex | int) -> int:
        vb = v.bits if isinstance(v, Vertex) else v
        return len(self.adj[vb])

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        n = self.n
        return [
            (Vertex(u, n), Vertex(v, n))
            for u in sorted(self.adj)
            for v in sorted(self.adj[u])
            if u < v
        ]

    def edge_masks(self) -> list[tuple[int, int]]:
        return [(u, v) for u in sorted(self.adj) for v in sorted(self.adj[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj.values()) // 2

    def __repr__(self) -> str:
        return (
            f"SkeletonGraph(n={self.n}, vertices={len(self.vertex_set)}, "
            f"edges={self.edge_count}, method={self.method})"
        )


def _require_member_pair(u: Vertex, v: Vertex, V: VertexSet) -> None:
    if u.n != V.n or v.n != V.n:
        raise ValueError(f"dimension mismatch with vertex set of n={V.n}")
    if u == v:
        raise ValueError("u and v must be distinct")
    if u.bits not in V.masks or v.bits not in V.masks:
        raise ValueError("u and v must belong to the vertex set")


def is_edge_exact(u: Vertex, v: Vertex, V: VertexSet) -> bool:
    """LP adjacency oracle: is the segment [u, v] a 1-face of conv(V)?"""
    _require_member_pair(u, v, V)
    ub, vb = u.bits, v.bits
    both = ub & vb
    either = ub | vb
    cube_members = sorted(
        w for w in V.masks if w & ~either == 0 and both & ~w == 0
    )
    diff_positions = [i for i in range(V.n) if (ub ^ vb) >> i & 1]
    half = Fraction(1, 2)
    rows = [
        [Fraction((w >> i) & 1) for w in cube_members] for i in diff_positions
    ]
    rows.append([Fraction(1)] * len(cube_members))
    rhs = [half] * len(diff_positions) + [Fraction(1)]
    objective = [Fraction(0) if w in (ub, vb) else Fraction(1) for w in cube_members]
    outcome = simplex_solve(
        LpProblem(objective=objective, rows=rows, rhs=rhs, senses=["="] * len(rows))
    )
    if outcome.status != OPTIMAL:
        raise AssertionError(f"midpoint LP should be solvable, got {outcome.status}")
    return outcome.value == 0


def cube_criterion_edge(u: Vertex, v: Vertex, V: VertexSet) -> bool:
    """True iff cube(u, v) meets V only in {u, v} (a sufficient edge test)."""
    _require_member_pair(u, v, V)
    for z in cube_points(u, v):
        if z.bits != u.bits and z.bits != v.bits and z.bits in V.masks:
            return False
    return True


def nonedge_filter_a(u: Vertex, v: Vertex, V: VertexSet) -> bool:
    """Certified non-edge when the unit sphere around u is fully sampled
    and v lies outside it."""
    _require_member_pair(u, v, V)
    ub = u.bits
    if (ub ^ v.bits).bit_count() == 1:
        return False
    for i in range(V.n):
        if ub ^ (1 << i) not in V.masks:
            return False
    return True


def nonedge_filter_b(u: Vertex, v: Vertex, V: VertexSet) -> tuple[Vertex, Vertex] | None:
    """First interior pair (s, t) of cube(u, v) with s xor t = u xor v and
    both sampled; such a pair certifies uv is not an edge."""
    _require_member_pair(u, v, V)
    ub, vb = u.bits, v.bits
    diff = ub ^ vb
    if diff.bit_count() == 1:
        return None
    base = ub & vb
    for s_free in subset_masks(diff):
        s = base | s_free
        if s == ub or s == vb:
            continue
        t = s ^ diff
        if s in V.masks and t in V.masks:
            return (Vertex(s, V.n), Vertex(t, V.n))
    return None


def build_Gd(V: VertexSet, d: int) -> SkeletonGraph:
    """Graph of all distance-d pairs passing the subcube criterion."""
    if not 1 <= d <= V.n:
        raise ValueError(f"d={d} out of range for n={V.n}")
    masks = V.masks
    adj: dict[int, set[int]] = {m: set() for m in masks}
    steps = weight_masks(V.n, d)
    for x in masks:
        for s in steps:
            y = x ^ s
            if y < x or y not in masks:
                continue
            ok = True
            for sub in subset_masks(s):
                z = x ^ sub
                if z != x and z != y and z in masks:
                    ok = False
                    break
            if ok:
                adj[x].add(y)
                adj[y].add(x)
    return SkeletonGraph(V, {m: frozenset(s) for m, s in adj.items()}, MethodTag("cube_criterion", d=d))


def build_exact_skeleton(V: VertexSet) -> SkeletonGraph:
    """LP-certified skeleton of conv(V); quadratic in |V|, one LP per pair."""
    if len(V) > EXACT_SKELETON_MAX_VERTICES:
        raise ResourceCapError(
            f"exact skeleton capped at |V|={EXACT_SKELETON_MAX_VERTICES}, got {len(V)}"
        )
    members = V.members
    adj: dict[int, set[int]] = {m: set() for m in V.masks}
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if is_edge_exact(u, v, V):
                adj[u.bits].add(v.bits)
                adj[v.bits].add(u.bits)
    return SkeletonGraph(V, {m: frozenset(s) for m, s in adj.items()}, MethodTag("exact"))


def union_graphs(a: SkeletonGraph, b: SkeletonGraph) -> SkeletonGraph:
    if a.vertex_set.masks != b.vertex_set.masks or a.n != b.n:
        raise ValueError("graphs must share a vertex set")
    adj = {m: frozenset(a.adj[m] | b.adj[m]) for m in a.adj}
    return SkeletonGraph(a.vertex_set, adj, MethodTag("union", parts=(a.method, b.method)))


def is_alpha_full(x: Vertex, V: VertexSet, alpha) -> bool:
    """Does x have at least (1 - alpha) n of its unit sphere sampled?"""
    a = as_alpha(alpha)
    count = sum(1 for i in range(V.n) if x.bits ^ (1 << i) in V.masks)
    return Fraction(count) >= (1 - a) * V.n


def alpha_full_vertices(V: VertexSet, alpha) -> list[Vertex]:
    a = as_alpha(alpha)
    threshold = (1 - a) * V.n
    out = []
    for x in V.members:
        count = sum(1 for i in range(V.n) if x.bits ^ (1 << i) in V.masks)
        if Fraction(count) >= threshold:
            out.append(x)
    return out


def full_degree_vertices(V: VertexSet) -> list[Vertex]:
    """Members whose whole unit ball is sampled; the subcube criterion plus
    filter (a) then certify their skeleton degree is exactly n."""
    out = []
    for x in V.members:
        if all(x.bits ^ (1 << i) in V.masks for i in range(V.n)):
            out.append(x)
    return out


def edge_length_histogram(G: SkeletonGraph) -> dict[int, int]:
    hist: dict[int, int] = {}
    for u, v in G.edge_masks():
        h = (u ^ v).bit_count()
        hist[h] = hist.get(h, 0) + 1
    return dict(sorted(hist.items()))


# File formats: a vertex set is a "n=.. p=.. seed=.." header plus one hex
# bitmask per line; a graph is a "method=.. n=.." header plus hex edge pairs.


def dumps_vertex_set(V: VertexSet) -> str:
    p = "-" if V.p is None else str(V.p)
    seed = "-" if V.seed is None else str(V.seed)
    lines = [f"n={V.n} p={p} seed={seed}"]
    lines.extend(f"{v.bits:x}" for v in V.members)
    return "\n".join(lines) + "\n"


def loads_vertex_set(text: str) -> VertexSet:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("missing vertex set header")
    fields = dict(tok.split("=", 1) for tok in lines[0].split())
    n = int(fields["n"])
    p = None if fields.get("p", "-") == "-" else Fraction(fields["p"])
    seed = None if fields.get("seed", "-") == "-" else int(fields["seed"])
    members = [int(ln, 16) for ln in lines[1:]]
    return VertexSet(n, members, p=p, seed=seed)


def save_vertex_set(V: VertexSet, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps_vertex_set(V))


def load_vertex_set(path) -> VertexSet:
    with open(path) as fh:
        return loads_vertex_set(fh.read())


def dumps_graph(G: SkeletonGraph) -> str:
    lines = [f"method={G.method} n={G.n}"]
    lines.extend(f"{u:x} {v:x}" for u, v in G.edge_masks())
    return "\n".join(lines) + "\n"


def loads_graph(text: str, vertices: VertexSet | None = None) -> SkeletonGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("method="):
        raise ValueError("missing graph header")
    fields = dict(tok.split("=", 1) for tok in lines[0].split())
    method = parse_method(fields["method"])
    n = int(fields["n"])
    pairs = []
    seen = set()
    for ln in lines[1:]:
        a, b = ln.split()
        u, v = int(a, 16), int(b, 16)
        pairs.append((u, v))
        seen.update((u, v))
    if vertices is None:
        vertices = VertexSet(n, seen)
    adj: dict[int, set[int]] = {m: set() for m in vertices.masks}
    for u, v in pairs:
        adj[u].add(v)
        adj[v].add(u)
    return SkeletonGraph(vertices, {m: frozenset(s) for m, s in adj.items()}, method)


def save_graph(G: SkeletonGraph, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps_graph(G))


def load_graph(path, vertices: VertexSet | None = None) -> SkeletonGraph:
    with open(path) as fh:
        return loads_graph(fh.read(), vertices)
