"""Ground-truth edge-expansion of small graphs.

h(G) = min |boundary(U)| / |U| over nonempty U with |U| <= |V|/2. The exact
computation enumerates the 2^(|V|-1) subsets containing a fixed anchor
vertex in Gray-code order, updating the boundary incrementally on each
single-vertex flip; each state is scored for the subset itself and for its
complement, whichever sides are small enough. All quotients are exact
rationals; ties break toward the smallest witness bitmask over the sorted
vertex order, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import rng
from .errors import ResourceCapError
from .hypercube import Vertex
from .skeleton import SkeletonGraph

EXACT_CHEEGER_MAX_VERTICES = 26  # ~10^8 incremental steps worst case


@dataclass(frozen=True)
class CheegerResult:
    value: Fraction
    witness: tuple[Vertex, ...]
    method: str


def boundary_size(G: SkeletonGraph, subset) -> int:
    """Number of edges with exactly one endpoint in `subset`."""
    masks = {v.bits if isinstance(v, Vertex) else v for v in subset}
    return sum(1 for u, v in G.edge_masks() if (u in masks) != (v in masks))


def _index_graph(G: SkeletonGraph):
    members = sorted(G.adj)
    index = {m: i for i, m in enumerate(members)}
    nb = [0] * len(members)
    for m, nbrs in G.adj.items():
        acc = 0
        for w in nbrs:
            acc |= 1 << index[w]
        nb[index[m]] = acc
    deg = [b.bit_count() for b in nb]
    return members, nb, deg


def exact_cheeger(G: SkeletonGraph) -> CheegerResult:
    """Global minimum quotient cut by anchored subset enumeration."""
    m = len(G.vertex_set)
    if m < 2:
        raise ValueError("need at least 2 vertices")
    if m > EXACT_CHEEGER_MAX_VERTICES:
        raise ResourceCapError(
            f"exact enumeration capped at {EXACT_CHEEGER_MAX_VERTICES} vertices, got {m}"
        )
    members, nb, deg = _index_graph(G)
    full = (1 << m) - 1
    best: tuple[int, int, int] | None = None  # (boundary, size, witness mask)

    def consider(boundary: int, size: int, witness: int) -> None:
        nonlocal best
        if best is None:
            best = (boundary, size, witness)
            return
        bb, bs, bw = best
        # boundary/size < bb/bs, exactly
        lhs = boundary * bs
        rhs = bb * size
        if lhs < rhs or (lhs == rhs and witness < bw):
            best = (boundary, size, witness)

    cur = 1  # anchor = index 0
    size = 1
    boundary = deg[0]
    half = m // 2

    def score(cur: int, size: int, boundary: int) -> None:
        if size <= half:
            consider(boundary, size, cur)
        csize = m - size
        if csize and csize <= half:
            consider(boundary, csize, full ^ cur)

    score(cur, size, boundary)
    for t in range(1, 1 << (m - 1)):
        v = (t & -t).bit_length()  # flip vertex index v in 1..m-1
        bit = 1 << v
        if cur & bit:
            cur ^= bit
            boundary -= deg[v] - 2 * (nb[v] & cur).bit_count()
            size -= 1
        else:
            boundary += deg[v] - 2 * (nb[v] & cur).bit_count()
            cur |= bit
            size += 1
        score(cur, size, boundary)

    b, s, w = best
    witness = tuple(Vertex(members[i], G.n) for i in range(m) if (w >> i) & 1)
    return CheegerResult(Fraction(b, s), witness, "exact")


def degree_upper_bound(G: SkeletonGraph) -> CheegerResult:
    """h(G) <= min degree: a singleton's boundary is its degree."""
    if len(G.vertex_set) < 2:
        raise ValueError("need at least 2 vertices")
    vb = min(sorted(G.adj), key=lambda m: (len(G.adj[m]), m))
    return CheegerResult(
        Fraction(len(G.adj[vb])), (Vertex(vb, G.n),), "degree_upper_bound"
    )


def local_search_upper_bound(G: SkeletonGraph, seed: int) -> CheegerResult:
    """Randomized greedy growth plus single-swap descent, 32 restarts.

    Every evaluated subset gives a valid upper bound, so the result is
    always >= the exact value.
    """
    m = len(G.vertex_set)
    if m < 2:
        raise ValueError("need at least 2 vertices")
    members, nb, deg = _index_graph(G)
    half = m // 2
    full_idx = range(m)
    best: tuple[int, int, int] | None = None

    def consider(boundary: int, size: int, witness: int) -> None:
        nonlocal best
        if best is None:
            best = (boundary, size, witness)
            return
        bb, bs, bw = best
        lhs, rhs = boundary * bs, bb * size
        if lhs < rhs or (lhs == rhs and witness < bw):
            best = (boundary, size, witness)

    def delta_add(v: int, cur: int) -> int:
        return deg[v] - 2 * (nb[v] & cur).bit_count()

    for v in full_idx:  # singleton cuts, so the result never beats min degree
        consider(deg[v], 1, 1 << v)

    for restart in range(32):
        r = rng.spawn(seed, 0x6C73, restart)
        start = r.randrange(m)
        cur = 1 << start
        boundary = deg[start]
        size = 1
        consider(boundary, size, cur)
        while size < half:
            cand = min(
                (v for v in full_idx if not (cur >> v) & 1),
                key=lambda v: (delta_add(v, cur), members[v]),
            )
            boundary += delta_add(cand, cur)
            cur |= 1 << cand
            size += 1
            consider(boundary, size, cur)
        # single-swap hill descent on the final set
        for _ in range(200):
            improved = False
            for u in [v for v in full_idx if (cur >> v) & 1]:
                without = cur ^ (1 << u)
                b_removed = boundary - deg[u] + 2 * (nb[u] & without).bit_count()
                for w in full_idx:
                    if (cur >> w) & 1 or w == u:
                        continue
                    b_new = b_removed + delta_add(w, without)
                    if b_new < boundary:
                        cur = without | (1 << w)
                        boundary = b_new
                        consider(boundary, size, cur)
                        improved = True
                        break
                if improved:
                    break
            if not improved:
                break

    b, s, w = best
    witness = tuple(Vertex(members[i], G.n) for i in range(m) if (w >> i) & 1)
    return CheegerResult(Fraction(b, s), witness, "local_search_upper_bound")
