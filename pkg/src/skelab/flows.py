"""All-pairs flows on distance-d cube graphs and their rerouting into
sampled skeletons.

Q_n^d joins points at Hamming distance exactly d; for odd d it is
connected, vertex- and edge-transitive. Three layers live here:

* the symmetric all-pairs flow on Q_n^d: spreading each pair's unit
  uniformly over shortest paths loads every edge equally, so the per-edge
  congestion is exactly S/D where S is the total BFS distance from any
  fixed vertex and D = C(n, d) the degree;
* single-path simulation: draw one shortest path per pair and compare the
  maximum load against twice the ideal congestion;
* rerouting into G_d(V): a backbone shortest path in Q_n^d is replaced by
  nearby sampled vertices z_i (one per backbone vertex, at distance d,
  chosen under support-disjointness constraints that force
  dist(z_{i-1}, z_i) = 3d), consecutive z's are stitched with 7-edge "pure
  paths" whose detour legs t, u live on fresh coordinates, and the
  resulting walk is loop-erased. Per-edge loads feed the congestion bound
  h >= |V| / (2 max-load), certified only when every pair of an all-pairs
  run was routed.

Pure paths require n >= 5d (the detours need 2d coordinates outside the
3d differing ones). Below that scale, and whenever a candidate set or
pure-path set comes up empty, a pair falls back to its backbone verbatim
when that backbone already lies in G_d(V); otherwise the pair is recorded
as a failure and the run can only report an estimate.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import rng
from .errors import ResourceCapError
from .hypercube import Vertex, weight_masks
from .skeleton import (
    MethodTag,
    SkeletonGraph,
    VertexSet,
    alpha_full_vertices,
    as_alpha,
    build_Gd,
)


@dataclass(frozen=True)
class QndPath:
    """A path in Q_n^d: consecutive vertices at Hamming distance exactly d."""

    n: int
    d: int
    vertices: tuple[Vertex, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("empty path")
        for v in self.vertices:
            if v.n != self.n:
                raise ValueError(f"dimension mismatch: {v.n} != {self.n}")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if (a.bits ^ b.bits).bit_count() != self.d:
                raise ValueError("consecutive vertices must be at distance d")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


def canonical_thirds(x: Vertex, y: Vertex) -> tuple[Vertex, Vertex, Vertex]:
    """Split supp(x xor y) (size 3d) into its first, middle and last d
    coordinates; the three resulting masks xor back to x xor y."""
    diff = x.bits ^ y.bits
    positions = [i for i in range(x.n) if (diff >> i) & 1]
    if len(positions) % 3:
        raise ValueError(f"distance {len(positions)} is not divisible by 3")
    d = len(positions) // 3
    masks = []
    for part in (positions[:d], positions[d : 2 * d], positions[2 * d :]):
        acc = 0
        for i in part:
            acc |= 1 << i
        masks.append(acc)
    return tuple(Vertex(m, x.n) for m in masks)


@dataclass(frozen=True)
class PurePath:
    """The 8-vertex, 7-edge detour object between endpoints at distance 3d.

    x0=x, x1=x+t, x2=x+t+u, then three middle steps through the canonical
    thirds f1, f2, f3 of supp(x xor y), then x6=y+u, x7=y. The supports of
    t, u and x xor y are pairwise disjoint, so every step has length d.
    """

    x: Vertex
    y: Vertex
    t: Vertex
    u: Vertex
    f1: Vertex
    f2: Vertex
    f3: Vertex
    vertices: tuple[Vertex, ...]


def pure_path(x: Vertex, y: Vertex, t: Vertex, u: Vertex) -> PurePath:
    n = x.n
    if any(v.n != n for v in (y, t, u)):
        raise ValueError("dimension mismatch")
    diff = x.bits ^ y.bits
    d3 = diff.bit_count()
    if d3 % 3:
        raise ValueError(f"endpoint distance {d3} is not 3d")
    d = d3 // 3
    if t.weight != d or u.weight != d:
        raise ValueError(f"detours must have weight {d}")
    if t.bits & u.bits or t.bits & diff or u.bits & diff:
        raise ValueError("supports of t, u and x xor y must be pairwise disjoint")
    f1, f2, f3 = canonical_thirds(x, y)
    seq = _pure_path_masks(x.bits, y.bits, t.bits, u.bits, f1.bits, f2.bits, f3.bits)
    return PurePath(x, y, t, u, f1, f2, f3, tuple(Vertex(b, n) for b in seq))


def _pure_path_masks(xb, yb, t, u, f1, f2, f3):
    m1 = xb ^ t
    m2 = m1 ^ u
    m3 = m2 ^ f1
    m4 = m3 ^ f2
    return (xb, m1, m2, m3, m4, m4 ^ f3, yb ^ u, yb)


@lru_cache(maxsize=None)
def qnd_distances(n: int, d: int) -> tuple[int, ...]:
    """BFS distances from the all-zeros vertex in Q_n^d."""
    if d % 2 == 0:
        raise ValueError(f"Q_n^d is disconnected for even d={d}")
    if not 1 <= d <= n:
        raise ValueError(f"d={d} out of range for n={n}")
    if n > 20:
        raise ResourceCapError(f"BFS over 2^{n} vertices refused (cap n=20)")
    steps = weight_masks(n, d)
    dist = [-1] * (1 << n)
    dist[0] = 0
    frontier = [0]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for m in frontier:
            for s in steps:
                w = m ^ s
                if dist[w] < 0:
                    dist[w] = level
                    nxt.append(w)
        frontier = nxt
    unreached = dist.count(-1)
    if unreached:
        raise ValueError(
            f"Q_{n}^{d} is disconnected: {unreached} of {1 << n} vertices unreached"
        )
    return tuple(dist)


def qnd_distance_profile(n: int, d: int) -> list[tuple[int, int]]:
    """(distance, vertex count) layers of Q_n^d seen from any vertex."""
    dist = qnd_distances(n, d)
    counts = Counter(dist)
    return sorted(counts.items())


def symmetric_flow_congestion(n: int, d: int) -> Fraction:
    """Per-edge congestion S/D of the uniform shortest-path all-pairs flow.

    Q_n^d is edge-transitive and the flow is automorphism-invariant, so all
    edges carry the same load; summing path lengths over pairs gives
    N*S/2 total load spread over N*D/2 edges. Always at most n*N/D.
    """
    dist = qnd_distances(n, d)
    return Fraction(sum(dist), comb(n, d))


def sample_backbone_path(x: Vertex, y: Vertex, n: int, d: int, rand) -> QndPath:
    """One shortest x-y path in Q_n^d.

    d = 1: a uniformly random monotone path (random order of the differing
    coordinates). d >= 3: random greedy descent, uniform among neighbors
    strictly closer to y — still automorphism-invariant, though not the
    uniform distribution over geodesics.
    """
    if x.n != n or y.n != n:
        raise ValueError("dimension mismatch")
    if x == y:
        raise ValueError("endpoints must differ")
    masks = _backbone_masks(x.bits, y.bits, n, d, rand)
    return QndPath(n, d, tuple(Vertex(b, n) for b in masks))


def _backbone_masks(xb: int, yb: int, n: int, d: int, rand) -> list[int]:
    if d == 1:
        coords = [i for i in range(n) if (xb ^ yb) >> i & 1]
        rand.shuffle(coords)
        seq = [xb]
        cur = xb
        for i in coords:
            cur ^= 1 << i
            seq.append(cur)
        return seq
    dist = qnd_distances(n, d)
    steps = weight_masks(n, d)
    seq = [xb]
    cur = xb
    while cur != yb:
        here = dist[cur ^ yb]
        closer = [s for s in steps if dist[cur ^ s ^ yb] == here - 1]
        cur ^= closer[rand.randrange(len(closer))]
        seq.append(cur)
    return seq


class CongestionLedger:
    """Per-edge accumulated loads plus pair coverage."""

    __slots__ = ("loads", "pairs_routed", "pairs_attempted", "mode", "pair_count")

    def __init__(self, mode: str = "exact_all_pairs", pair_count: int | None = None):
        if mode not in ("exact_all_pairs", "sampled"):
            raise ValueError(f"unknown ledger mode {mode!r}")
        self.loads: dict[tuple[int, int], Fraction] = {}
        self.pairs_routed = 0
        self.pairs_attempted = 0
        self.mode = mode
        self.pair_count = pair_count

    def add_path(self, masks, weight: Fraction = Fraction(1)) -> None:
        if weight < 0:
            raise ValueError("loads must stay nonnegative")
        for a, b in zip(masks, masks[1:]):
            key = (a, b) if a < b else (b, a)
            self.loads[key] = self.loads.get(key, Fraction(0)) + weight

    def max_load(self) -> Fraction:
        if not self.loads:
            raise ValueError("empty ledger")
        return max(self.loads.values())

    def merge(self, other: "CongestionLedger") -> None:
        for key, w in other.loads.items():
            self.loads[key] = self.loads.get(key, Fraction(0)) + w
        self.pairs_routed += other.pairs_routed
        self.pairs_attempted += other.pairs_attempted

    @property
    def failures(self) -> int:
        return self.pairs_attempted - self.pairs_routed

    def __repr__(self) -> str:
        return (
            f"CongestionLedger(mode={self.mode}, edges={len(self.loads)}, "
            f"routed={self.pairs_routed}/{self.pairs_attempted})"
        )


def select_paths_randomized(n: int, d: int, pairs, rand) -> CongestionLedger:
    """One random shortest path per pair; loads count path memberships.

    With C the symmetric-flow congestion, the maximum load stays below 2C
    in almost every trial — the single-path simulation of the ideal flow.
    """
    total = comb(1 << n, 2)
    mode = "exact_all_pairs" if len(pairs) == total else "sampled"
    ledger = CongestionLedger(mode, pair_count=len(pairs))
    for x, y in pairs:
        ledger.pairs_attempted += 1
        ledger.add_path(_backbone_masks(x.bits, y.bits, n, d, rand))
        ledger.pairs_routed += 1
    return ledger


def enumerate_pure_paths(
    x: Vertex, y: Vertex, V: VertexSet, G: SkeletonGraph
) -> list[PurePath]:
    """All pure paths between x and y whose 8 vertices are sampled and
    whose 7 steps are edges of G (a cube-criterion graph)."""
    if G.method.kind != "cube_criterion":
        raise ValueError("graph must carry a cube_criterion method tag")
    d = G.method.d
    n = V.n
    if x.n != n or y.n != n:
        raise ValueError("dimension mismatch")
    if x.bits not in V.masks or y.bits not in V.masks:
        raise ValueError("endpoints must be sampled")
    diff = x.bits ^ y.bits
    if diff.bit_count() != 3 * d:
        raise ValueError(f"endpoint distance {diff.bit_count()} is not 3d={3 * d}")
    if 5 * d > n:
        raise ValueError(f"pure paths need n >= 5d, got n={n}, d={d}")
    f1, f2, f3 = (f.bits for f in canonical_thirds(x, y))
    xb, yb = x.bits, y.bits
    masks = V.masks
    adj = G.adj
    out = []
    for t in weight_masks(n, d):
        if t & diff:
            continue
        blocked = diff | t
        for u in weight_masks(n, d):
            if u & blocked:
                continue
            seq = _pure_path_masks(xb, yb, t, u, f1, f2, f3)
            if any(m not in masks for m in seq[1:7]):
                continue
            if any(b not in adj[a] for a, b in zip(seq, seq[1:])):
                continue
            out.append(pure_path(x, y, Vertex(t, n), Vertex(u, n)))
    return out


def count_pure_paths_through_edge(e: tuple[Vertex, Vertex], n: int, d: int) -> int:
    """Exact number of pure paths of Q_n^d containing the edge e.

    Pure paths are counted as parameterizations (x, y, t, u) — both
    endpoint orientations are distinct objects. Exhaustive over all
    quadruples; refuses instances past the C(n,d)^4 > 1e9 budget.
    """
    a, b = e
    if a.n != n or b.n != n:
        raise ValueError("dimension mismatch")
    if (a.bits ^ b.bits).bit_count() != d:
        raise ValueError("e must be an edge of Q_n^d")
    if 5 * d > n:
        raise ValueError(f"no pure path fits: n={n} < 5d={5 * d}")
    if comb(n, d) ** 4 > 10**9:
        raise ResourceCapError("pure-path census over this (n, d) refused")
    ea, eb = a.bits, b.bits
    ekey = (ea, eb) if ea < eb else (eb, ea)
    count = 0
    zero_v = Vertex(0, n)
    for dm in weight_masks(n, 3 * d):
        f1, f2, f3 = (f.bits for f in canonical_thirds(zero_v, Vertex(dm, n)))
        detours = []
        for t in weight_masks(n, d):
            if t & dm:
                continue
            # admissible for any x with x xor y = dm
            for u in weight_masks(n, d):
                if u & (dm | t):
                    continue
                detours.append((t, u))
        for xb in range(1 << n):
            yb = xb ^ dm
            for t, u in detours:
                seq = _pure_path_masks(xb, yb, t, u, f1, f2, f3)
                for p, q in zip(seq, seq[1:]):
                    if ((p, q) if p < q else (q, p)) == ekey:
                        count += 1
                        break
    return count


@dataclass(frozen=True)
class RerouteConfig:
    """Knobs for the rerouting construction.

    repair_with_G1 enables the dense-regime endpoint repair: an
    almost-fully-sampled endpoint is left through a 3-step path in G_1(V)
    instead of a single G_d(V) edge; it requires d = 3, and only then is
    the alpha-fullness filter applied to candidate vertices.
    """

    d: int
    repair_with_G1: bool = False
    alpha: Fraction = Fraction(1, 2)
    pair_budget: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.d % 2 == 0 or self.d < 1:
            raise ValueError(f"d must be odd and positive, got {self.d}")
        as_alpha(self.alpha)
        if self.repair_with_G1 and self.d != 3:
            raise ValueError("G_1 repair pairs with d = 3")
        if self.pair_budget is not None and self.pair_budget < 1:
            raise ValueError("pair budget must be positive")


@dataclass(frozen=True)
class RerouteFailure:
    x: Vertex
    y: Vertex
    reason: str


@dataclass
class RerouteReport:
    attempted: int = 0
    routed: int = 0
    direct_routed: int = 0  # pairs rescued by their backbone lying in G_d(V)
    failures: list[RerouteFailure] = field(default_factory=list)


@dataclass(frozen=True)
class ExpansionBound:
    value: Fraction
    certified: bool
    max_load: Fraction
    vertex_count: int
    failures: int

    @property
    def kind(self) -> str:
        return "certified" if self.certified else "estimate"


def loop_erase(masks) -> list[int]:
    """Reduce a walk to a simple path by cutting cycles at first revisits."""
    pos: dict[int, int] = {}
    out: list[int] = []
    for v in masks:
        if v in pos:
            for w in out[pos[v] + 1 :]:
                del pos[w]
            del out[pos[v] + 1 :]
        else:
            pos[v] = len(out)
            out.append(v)
    return out


def _layered_g1_reach(G1: SkeletonGraph, start: int) -> tuple[set[int], set[int], set[int]]:
    """Vertices of G_1(V) reachable from start by sphere-monotone paths of
    length 1, 2, 3 (each step increases the Hamming distance to start)."""
    t1 = set(G1.adj[start])
    t2 = set()
    for w in t1:
        for z in G1.adj[w]:
            if (z ^ start).bit_count() == 2:
                t2.add(z)
    t3 = set()
    for w in t2:
        for z in G1.adj[w]:
            if (z ^ start).bit_count() == 3:
                t3.add(z)
    return t1, t2, t3


def _g1_repair_path(G1: SkeletonGraph, start: int, t2set: set[int], goal: int) -> list[int]:
    """Reconstruct a 3-step monotone path start -> goal in G_1(V)."""
    for mid2 in sorted(G1.adj[goal]):
        if mid2 in t2set and (mid2 ^ start).bit_count() == 2:
            for mid1 in sorted(G1.adj[mid2]):
                if (mid1 ^ start).bit_count() == 1 and mid1 in G1.adj[start]:
                    return [start, mid1, mid2, goal]
    raise AssertionError("layered search promised a repair path")


def reroute_flow(V: VertexSet, config: RerouteConfig):
    """Route one unit between selected sampled pairs through
    G_1(V) union G_d(V) and account per-edge loads.

    Returns (CongestionLedger, RerouteReport). Failed pairs abort only
    themselves; a certificate requires an all-pairs run with no failures.
    """
    if len(V) == 0:
        raise ValueError("empty vertex set")
    n, d = V.n, config.d
    qnd_distances(n, d)  # validates connectivity before any work
    Gd = build_Gd(V, d)
    G1 = Gd if d == 1 else build_Gd(V, 1)
    repair = config.repair_with_G1
    afull = (
        frozenset(v.bits for v in alpha_full_vertices(V, config.alpha))
        if repair
        else frozenset()
    )
    members = [v.bits for v in V.members]
    total = comb(len(members), 2)
    if config.pair_budget is None or config.pair_budget >= total:
        pairs = [
            (a, b)
            for i, a in enumerate(members)
            for b in members[i + 1 :]
        ]
        ledger = CongestionLedger("exact_all_pairs", pair_count=total)
    else:
        picker = rng.spawn(config.seed, 0x70616972)  # pair-selection stream
        chosen: set[tuple[int, int]] = set()
        while len(chosen) < config.pair_budget:
            i = picker.randrange(len(members))
            j = picker.randrange(len(members))
            if i != j:
                a, b = members[i], members[j]
                chosen.add((a, b) if a < b else (b, a))
        pairs = sorted(chosen)
        ledger = CongestionLedger("sampled", pair_count=config.pair_budget)
    report = RerouteReport()
    machinery = n >= 5 * d
    steps_d = weight_masks(n, d)

    for idx, (xm, ym) in enumerate(pairs):
        ledger.pairs_attempted += 1
        report.attempted += 1
        rand = rng.spawn(config.seed, 0x726F757465, idx)  # per-pair stream
        backbone = _backbone_masks(xm, ym, n, d, rand)
        walk = None
        reason = "pure paths need n >= 5d"
        if machinery:
            walk, reason = _pure_path_walk(
                backbone, V, Gd, G1, afull, repair, rand, d, steps_d
            )
        if walk is None:
            if all(a in Gd.adj and b in Gd.adj[a] for a, b in zip(backbone, backbone[1:])):
                walk = backbone
                report.direct_routed += 1
            else:
                report.failures.append(
                    RerouteFailure(Vertex(xm, n), Vertex(ym, n), reason)
                )
                continue
        path = loop_erase(walk)
        ledger.add_path(path)
        ledger.pairs_routed += 1
        report.routed += 1
    return ledger, report


def _pure_path_walk(backbone, V, Gd, G1, afull, repair, rand, d, steps_d):
    """One stitched walk along the backbone, or (None, reason)."""
    n = V.n
    k = len(backbone) - 1
    z = [0] * (k + 1)
    repair_paths: dict[int, list[int]] = {}

    def endpoint_candidates(i: int, avoid: int):
        base = backbone[i]
        if repair and base in afull:
            _, t2set, t3set = _layered_g1_reach(G1, base)
            cands = sorted(
                w
                for w in t3set
                if w not in afull and (w ^ base) & avoid == 0
            )
            return cands, t2set
        cands = sorted(
            w
            for w in Gd.adj.get(base, ())
            if (not repair or w not in afull) and (w ^ base) & avoid == 0
        )
        return cands, None

    # endpoints first: z_0, then z_k (with the k = 1 cross-avoidance)
    cands, t2set = endpoint_candidates(0, backbone[0] ^ backbone[1])
    if not cands:
        return None, "empty candidate set at endpoint 0"
    z[0] = cands[rand.randrange(len(cands))]
    if t2set is not None:
        repair_paths[0] = _g1_repair_path(G1, backbone[0], t2set, z[0])

    avoid_k = backbone[k - 1] ^ backbone[k]
    if k == 1:
        avoid_k |= backbone[0] ^ z[0]
    cands, t2set = endpoint_candidates(k, avoid_k)
    if not cands:
        return None, "empty candidate set at endpoint k"
    z[k] = cands[rand.randrange(len(cands))]
    if t2set is not None:
        repair_paths[k] = _g1_repair_path(G1, backbone[k], t2set, z[k])

    masks = V.masks
    for i in range(1, k):
        avoid = (
            (backbone[i - 1] ^ backbone[i])
            | (backbone[i] ^ backbone[i + 1])
            | (backbone[i - 1] ^ z[i - 1])
        )
        if i == k - 1:
            avoid |= backbone[k] ^ z[k]
        base = backbone[i]
        cands = sorted(
            base ^ s
            for s in steps_d
            if s & avoid == 0
            and base ^ s in masks
            and (not repair or base ^ s not in afull)
        )
        if not cands:
            return None, f"empty candidate set at step {i}"
        z[i] = cands[rand.randrange(len(cands))]

    walk = list(repair_paths.get(0, [backbone[0], z[0]]))
    for i in range(1, k + 1):
        a, b = z[i - 1], z[i]
        if (a ^ b).bit_count() != 3 * d:
            return None, f"detour distance broke at stitch {i}"
        options = enumerate_pure_paths(Vertex(a, n), Vertex(b, n), V, Gd)
        if not options:
            return None, f"no pure path for stitch {i}"
        choice = options[rand.randrange(len(options))]
        walk.extend(v.bits for v in choice.vertices[1:])
    tail = repair_paths.get(k, [backbone[k], z[k]])
    walk.extend(reversed(tail[:-1]))
    return walk, None


def expansion_lower_bound(ledger: CongestionLedger, vertex_count: int) -> ExpansionBound:
    """h >= |V| / (2 max-load); a certificate only for clean all-pairs runs."""
    if not ledger.loads:
        raise ValueError("empty ledger")
    max_load = ledger.max_load()
    certified = ledger.mode == "exact_all_pairs" and ledger.failures == 0
    return ExpansionBound(
        value=Fraction(vertex_count) / (2 * max_load),
        certified=certified,
        max_load=max_load,
        vertex_count=vertex_count,
        failures=ledger.failures,
    )


def ledger_csv_lines(ledger: CongestionLedger) -> list[str]:
    lines = ["edge_u_hex,edge_v_hex,load_numerator,load_denominator"]
    for (a, b), w in sorted(ledger.loads.items()):
        lines.append(f"{a:x},{b:x},{w.numerator},{w.denominator}")
    return lines


def ledger_summary(ledger: CongestionLedger, bound: ExpansionBound | None = None) -> dict:
    out = {
        "max_load": str(ledger.max_load()) if ledger.loads else None,
        "pairs_routed": ledger.pairs_routed,
        "pairs_attempted": ledger.pairs_attempted,
        "mode": ledger.mode,
        "pair_count": ledger.pair_count,
    }
    if bound is not None:
        out["bound"] = str(bound.value)
        out["bound_kind"] = bound.kind
    return out
