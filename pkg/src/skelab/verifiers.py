"""Property suites behind `skelab verify`.

Each check runs a seeded desk-scale experiment and reports trial and
violation counts; a command exit status of 0 means zero violations. The
check ids are short catalog names ("2.6", "3.1", ...) kept stable for
scripting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import comb, factorial

from . import rng
from .expansion import boundary_size
from .flows import (
    count_pure_paths_through_edge,
    enumerate_pure_paths,
    select_paths_randomized,
    symmetric_flow_congestion,
)
from .hypercube import Vertex, all_vertices, grid_partition, project, weight_masks
from .skeleton import (
    VertexSet,
    build_exact_skeleton,
    build_Gd,
    nonedge_filter_a,
    nonedge_filter_b,
    sample_vertex_set,
)


@dataclass
class VerifyResult:
    check: str
    trials: int
    violations: int
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _criterion_instances(count: int, seed: int):
    """Seeded (V, n, p) stream cycling n in 3..6 and p in {.3, .5, .8},
    skipping sets too small to have a pair."""
    grid = [(n, Fraction(num, 10)) for n in (3, 4, 5, 6) for num in (3, 5, 8)]
    idx = 0
    produced = 0
    while produced < count:
        n, p = grid[idx % len(grid)]
        V = sample_vertex_set(n, p, rng.mix64(seed, idx))
        idx += 1
        if len(V) < 2:
            continue
        produced += 1
        yield V


def verify_criterion_soundness(instances: int = 200, seed: int = 0) -> VerifyResult:
    """Cube-criterion edges must be exact edges; filter certificates must
    land on exact non-edges. Zero tolerance either way."""
    edge_violations = 0
    filter_violations = 0
    for V in _criterion_instances(instances, seed):
        exact = build_exact_skeleton(V)
        for d in range(1, V.n + 1):
            for u, v in build_Gd(V, d).edge_masks():
                if not exact.has_edge(u, v):
                    edge_violations += 1
        members = V.members
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                certified = nonedge_filter_a(u, v, V) or (
                    nonedge_filter_b(u, v, V) is not None
                )
                if certified and exact.has_edge(u, v):
                    filter_violations += 1
    return VerifyResult(
        "criterion-soundness",
        trials=instances,
        violations=edge_violations + filter_violations,
        details={
            "edge_violations": edge_violations,
            "filter_violations": filter_violations,
        },
    )


def verify_edge_criterion(instances: int = 200, seed: int = 0) -> VerifyResult:
    res = verify_criterion_soundness(instances, seed)
    return VerifyResult(
        "2.6", res.trials, res.details["edge_violations"], res.details
    )


def verify_nonedge_filters(instances: int = 200, seed: int = 0) -> VerifyResult:
    res = verify_criterion_soundness(instances, seed)
    return VerifyResult(
        "2.7", res.trials, res.details["filter_violations"], res.details
    )


def verify_grid_partition(max_n: int = 50) -> VerifyResult:
    """Every m <= n <= max_n: n classes of size m, rows and columns distinct
    within a class, classes disjoint and covering the grid."""
    trials = 0
    violations = 0
    for n in range(1, max_n + 1):
        for m in range(1, n + 1):
            trials += 1
            classes = grid_partition(m, n)
            ok = len(classes) == n
            seen = set()
            for cls in classes:
                rows = {a for a, _ in cls}
                cols = {b for _, b in cls}
                ok &= len(cls) == m and len(rows) == m and len(cols) == m
                seen.update(cls)
            ok &= len(seen) == m * n and all(
                1 <= a <= m and 1 <= b <= n for a, b in seen
            )
            if not ok:
                violations += 1
    return VerifyResult("2.4-partition", trials, violations)


def verify_path_selection(
    n: int = 6, d: int = 1, trials: int = 20, min_successes: int = 19, seed: int = 0
) -> VerifyResult:
    """All-pairs single-path selection on Q_n^d keeps every edge load at
    most 2C in nearly every trial, C being the symmetric-flow congestion."""
    c2 = 2 * symmetric_flow_congestion(n, d)
    pairs = [
        (Vertex(a, n), Vertex(b, n))
        for a in range(1 << n)
        for b in range(a + 1, 1 << n)
    ]
    successes = 0
    worst = Fraction(0)
    for t in range(trials):
        ledger = select_paths_randomized(n, d, pairs, rng.spawn(seed, 0x32_33, t))
        load = ledger.max_load()
        worst = max(worst, load)
        if load <= c2:
            successes += 1
    return VerifyResult(
        "2.3",
        trials,
        violations=0 if successes >= min_successes else 1,
        details={
            "successes": successes,
            "min_successes": min_successes,
            "two_c": str(c2),
            "worst_max_load": str(worst),
        },
    )


def verify_projection_monotonicity(instances: int = 50, seed: int = 0) -> VerifyResult:
    """Projecting away d coordinates cannot grow a cut: |bd_G(A)| is at
    least |bd_H(pi_d(A))| with exact skeletons on both sides."""
    trials = 0
    violations = 0
    idx = 0
    while trials < instances:
        n = (4, 5, 6)[idx % 3]
        p = (Fraction(2, 5), Fraction(3, 5))[idx % 2]
        d = (1, 2)[idx % 2]
        V = sample_vertex_set(n, p, rng.mix64(seed, 0x70726F6A, idx))
        idx += 1
        if len(V) < 2:
            continue
        trials += 1
        picker = rng.spawn(seed, 0x41, idx)
        subset = [v for v in V.members if picker.random() < 0.5]
        if not subset:
            subset = [V.members[0]]
        G = build_exact_skeleton(V)
        W = VertexSet(n - d, {project(v, d).bits for v in V.members})
        H = build_exact_skeleton(W)
        B = {project(v, d).bits for v in subset}
        if boundary_size(G, subset) < boundary_size(H, B):
            violations += 1
    return VerifyResult("2.9", trials, violations)


def verify_symmetric_congestion(max_n: int = 10) -> VerifyResult:
    """S/D <= nN/D for all odd d <= n <= max_n, plus exact per-edge
    uniformity of the all-pairs uniform flow at d = 1, n <= 6."""
    trials = 0
    violations = 0
    for n in range(1, max_n + 1):
        for d in range(1, n + 1, 2):
            if n >= 2 and d == n:
                continue  # perfect matching, disconnected
            trials += 1
            c = symmetric_flow_congestion(n, d)
            if c > Fraction(n * (1 << n), comb(n, d)):
                violations += 1
    uniform_checked = []
    for n in range(2, 7):
        trials += 1
        expected = symmetric_flow_congestion(n, 1)
        loads = _exact_uniform_flow_loads(n)
        if len(loads) != n * (1 << (n - 1)) or any(
            w != expected for w in loads.values()
        ):
            violations += 1
        uniform_checked.append(n)
    return VerifyResult(
        "3.1",
        trials,
        violations,
        details={"uniform_edge_check_n": uniform_checked},
    )


def _exact_uniform_flow_loads(n: int) -> dict[tuple[int, int], Fraction]:
    """Per-edge loads of the exact uniform shortest-path all-pairs flow on
    Q_n (d = 1), by enumerating every monotone path of every pair."""
    loads: dict[tuple[int, int], Fraction] = {}
    for x in range(1 << n):
        for y in range(x + 1, 1 << n):
            coords = [i for i in range(n) if (x ^ y) >> i & 1]
            w = Fraction(1, factorial(len(coords)))
            for order in permutations(coords):
                cur = x
                for i in order:
                    nxt = cur ^ (1 << i)
                    key = (cur, nxt) if cur < nxt else (nxt, cur)
                    loads[key] = loads.get(key, Fraction(0)) + w
                    cur = nxt
    return loads


def verify_pure_path_edge_counts(
    cases=((5, 1), (6, 1), (7, 1)), edges_per_case: int = 5, seed: int = 0
) -> VerifyResult:
    """Per-edge pure-path counts are edge-independent and within the
    14 * 3^(3d) * D^4 budget; the D-growth exponent is reported."""
    trials = 0
    violations = 0
    counts = {}
    for n, d in cases:
        picker = rng.spawn(seed, 0x33_33, n, d)
        steps = weight_masks(n, d)
        seen = set()
        case_counts = []
        while len(seen) < edges_per_case:
            a = picker.randrange(1 << n)
            b = a ^ steps[picker.randrange(len(steps))]
            key = (a, b) if a < b else (b, a)
            if key in seen:
                continue
            seen.add(key)
            trials += 1
            c = count_pure_paths_through_edge(
                (Vertex(key[0], n), Vertex(key[1], n)), n, d
            )
            case_counts.append(c)
            if c > 14 * 3 ** (3 * d) * comb(n, d) ** 4:
                violations += 1
        if len(set(case_counts)) != 1:
            violations += 1
        counts[(n, d)] = case_counts[0]
    exponent = None
    if len(counts) >= 2:
        import math

        pts = sorted(
            (math.log(comb(n, d)), math.log(c)) for (n, d), c in counts.items() if c
        )
        mx = sum(p[0] for p in pts) / len(pts)
        my = sum(p[1] for p in pts) / len(pts)
        sxx = sum((p[0] - mx) ** 2 for p in pts)
        exponent = sum((p[0] - mx) * (p[1] - my) for p in pts) / sxx
    return VerifyResult(
        "3.3",
        trials,
        violations,
        details={
            "per_edge_counts": {f"n={n},d={d}": c for (n, d), c in counts.items()},
            "growth_exponent_vs_D": round(exponent, 3) if exponent else None,
        },
    )


def verify_pure_path_statistics(
    n: int = 16, p=Fraction(7, 10), pairs: int = 100, seed: int = 0
) -> VerifyResult:
    """Pure-path counts at d = 1: exactly (n-3)(n-4) between any
    distance-3 pair on the full cube (n in 5..8), and a sampled-set mean
    within 20% of (n-3)(n-4) p^6."""
    trials = 0
    violations = 0
    for fn in range(5, 9):
        full = VertexSet(fn, range(1 << fn))
        G = build_Gd(full, 1)
        expected = (fn - 3) * (fn - 4)
        picker = rng.spawn(seed, 0x66756C6C, fn)
        checked = 0
        for x in all_vertices(fn):
            for m in weight_masks(fn, 3):
                y = Vertex(x.bits ^ m, fn)
                if y.bits < x.bits:
                    continue
                if fn >= 7 and picker.random() > 0.05:
                    continue  # spot-check the larger cubes
                trials += 1
                checked += 1
                if len(enumerate_pure_paths(x, y, full, G)) != expected:
                    violations += 1
        if checked == 0:
            violations += 1

    prob = Fraction(p)
    V = sample_vertex_set(n, prob, rng.mix64(seed, 0x73616D70))
    G = build_Gd(V, 1)
    picker = rng.spawn(seed, 0x7061697273)
    members = V.members
    total = 0
    drawn = 0
    while drawn < pairs:
        x = members[picker.randrange(len(members))]
        sphere3 = [
            Vertex(x.bits ^ m, n)
            for m in weight_masks(n, 3)
            if x.bits ^ m in V.masks
        ]
        if not sphere3:
            continue
        y = sphere3[picker.randrange(len(sphere3))]
        total += len(enumerate_pure_paths(x, y, V, G))
        drawn += 1
    trials += 1
    mean = Fraction(total, pairs)
    target = (n - 3) * (n - 4) * prob**6
    within = abs(mean - target) <= Fraction(1, 5) * target
    if not within:
        violations += 1
    return VerifyResult(
        "3.4-empirical",
        trials,
        violations,
        details={
            "sample_mean": str(mean),
            "target": str(target),
            "relative_error": float(abs(mean - target) / target),
        },
    )


CHECKS = {
    "2.3": lambda seed: verify_path_selection(seed=seed),
    "2.4-partition": lambda seed: verify_grid_partition(),
    "2.6": lambda seed: verify_edge_criterion(seed=seed),
    "2.7": lambda seed: verify_nonedge_filters(seed=seed),
    "2.9": lambda seed: verify_projection_monotonicity(seed=seed),
    "3.1": lambda seed: verify_symmetric_congestion(),
    "3.3": lambda seed: verify_pure_path_edge_counts(seed=seed),
    "3.4-empirical": lambda seed: verify_pure_path_statistics(seed=seed),
}


def run_check(check_id: str, seed: int = 0) -> VerifyResult:
    if check_id not in CHECKS:
        raise ValueError(
            f"unknown check id {check_id!r}; known: {', '.join(sorted(CHECKS))}"
        )
    return CHECKS[check_id](seed)
