"""Depth-two superconcentrator verification and degree-decomposition audits.

Verification treats each (S, T, k) query as a unit-capacity flow problem with
split middle vertices, so the flow value is the maximum number of vertex
disjoint V-M-W paths. The audits reproduce the bookkeeping of the two lower
bound arguments at instance scale: degree balancing, the High/Medium/Low split
against (n/k) times a threshold, the disjoint ladder of k values, and the
entropy condition on the middle-vertex profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .bounds import (
    NormalizedProfile,
    asymmetric_condition,
    asymmetric_value_at,
    profile_from_family,
    symmetric_condition,
)
from .core import (
    BicliqueFamily,
    LayeredGraph,
    RandomSource,
    SubsetSampler,
    bits,
    mask_of,
    transpose_masks,
)

__all__ = [
    "ScVerdict",
    "MiddleDecomposition",
    "EdgeAuditReport",
    "TradeoffReport",
    "max_disjoint_paths",
    "verify_superconcentrator",
    "middle_bicliques",
    "decompose",
    "balance_degrees",
    "layered_flip",
    "normalize_for_tradeoff",
    "threshold_ladder",
    "medium_band",
    "edge_lower_bound_audit",
    "tradeoff_audit",
]

DEFAULT_PAIR_BUDGET = 2_000_000


# ---------------------------------------------------------------------------
# Unit-capacity flow
# ---------------------------------------------------------------------------


class _Dinic:
    def __init__(self, n_nodes: int):
        self.adj: list[list[list[int]]] = [[] for _ in range(n_nodes)]

    def add_edge(self, u: int, v: int) -> None:
        # Unit capacities only: [to, cap, index of reverse edge].
        self.adj[u].append([v, 1, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        n = len(self.adj)
        while True:
            level = [-1] * n
            level[s] = 0
            queue = [s]
            for u in queue:
                for edge in self.adj[u]:
                    if edge[1] > 0 and level[edge[0]] < 0:
                        level[edge[0]] = level[u] + 1
                        queue.append(edge[0])
            if level[t] < 0:
                return flow
            it = [0] * n

            def augment(u: int) -> int:
                if u == t:
                    return 1
                while it[u] < len(self.adj[u]):
                    edge = self.adj[u][it[u]]
                    v = edge[0]
                    if edge[1] > 0 and level[v] == level[u] + 1 and augment(v):
                        edge[1] -= 1
                        self.adj[v][edge[2]][1] += 1
                        return 1
                    it[u] += 1
                return 0

            while augment(s):
                flow += 1


def max_disjoint_paths(g: LayeredGraph, sources: Iterable[int], sinks: Iterable[int]) -> int:
    """Maximum number of vertex-disjoint V->M->W paths from S to T."""
    s_list = sorted(set(sources))
    t_set = set(sinks)
    t_mask = mask_of(t_set)
    # Nodes: 0 source, 1 sink, then S, then M split in/out, then T.
    m = g.m
    t_list = sorted(t_set)
    base_s = 2
    base_m_in = base_s + len(s_list)
    base_m_out = base_m_in + m
    base_t = base_m_out + m
    net = _Dinic(base_t + len(t_list))
    t_pos = {w: base_t + j for j, w in enumerate(t_list)}
    for u in range(m):
        net.add_edge(base_m_in + u, base_m_out + u)
        row = g.adj_mw[u] & t_mask
        for w in bits(row):
            net.add_edge(base_m_out + u, t_pos[w])
    for j in range(len(t_list)):
        net.add_edge(base_t + j, 1)
    for i, v in enumerate(s_list):
        net.add_edge(0, base_s + i)
        for u in bits(g.adj_vm[v]):
            net.add_edge(base_s + i, base_m_in + u)
    return net.max_flow(0, 1)


@dataclass(frozen=True)
class ScVerdict:
    """Verification outcome. Sampled mode can refute but never certify."""

    is_superconcentrator: bool
    counterexample: Optional[tuple[int, tuple[int, ...], tuple[int, ...], int]]
    k_checked: tuple[int, ...]
    mode: str
    pairs_checked: int
    seed: Optional[int] = None
    stream_id: Optional[int] = None

    @property
    def certified(self) -> bool:
        return self.is_superconcentrator and self.mode == "exhaustive"

    def to_json(self) -> dict:
        ce = None
        if self.counterexample is not None:
            k, s, t, flow = self.counterexample
            ce = {"k": k, "S": list(s), "T": list(t), "max_flow": flow}
        return {
            "is_superconcentrator": self.is_superconcentrator,
            "certified": self.certified,
            "counterexample": ce,
            "k_checked": list(self.k_checked),
            "mode": self.mode,
            "pairs_checked": self.pairs_checked,
            "seed": self.seed,
            "stream_id": self.stream_id,
        }


def verify_superconcentrator(
    g: LayeredGraph,
    k_values: Iterable[int] | str = "all",
    mode: str = "exhaustive",
    samples: int = 100,
    rng: Optional[RandomSource] = None,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> ScVerdict:
    """Check k disjoint paths for every (or a sampled set of) S, T pairs.

    Exhaustive mode enumerates all C(n,k)^2 pairs per k and is complete;
    sampled mode draws ``samples`` uniform pairs per k and can only refute.
    """
    n = g.n
    if k_values == "all":
        ks = list(range(1, n + 1))
    else:
        ks = sorted(set(int(k) for k in k_values))
        if any(k < 1 or k > n for k in ks):
            raise ValueError(f"k values must lie in [1, {n}]")
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown verification mode {mode!r}")

    pairs_checked = 0
    if mode == "exhaustive":
        total = sum(math.comb(n, k) ** 2 for k in ks)
        if total > pair_budget:
            raise ValueError(
                f"exhaustive verification needs {total} pair checks, budget is {pair_budget}"
            )
        for k in ks:
            for s_combo in combinations(range(n), k):
                for t_combo in combinations(range(n), k):
                    pairs_checked += 1
                    flow = max_disjoint_paths(g, s_combo, t_combo)
                    if flow < k:
                        return ScVerdict(
                            False, (k, s_combo, t_combo, flow), tuple(ks), mode, pairs_checked
                        )
        return ScVerdict(True, None, tuple(ks), mode, pairs_checked)

    if rng is None:
        raise ValueError("sampled verification requires a random source")
    gen = rng.rng()
    sampler = SubsetSampler(n, gen)
    for k in ks:
        for _ in range(samples):
            s_combo = tuple(sorted(sampler.draw_list(k)))
            t_combo = tuple(sorted(sampler.draw_list(k)))
            pairs_checked += 1
            flow = max_disjoint_paths(g, s_combo, t_combo)
            if flow < k:
                return ScVerdict(
                    False,
                    (k, s_combo, t_combo, flow),
                    tuple(ks),
                    mode,
                    pairs_checked,
                    rng.seed,
                    rng.stream_id,
                )
    return ScVerdict(True, None, tuple(ks), mode, pairs_checked, rng.seed, rng.stream_id)


# ---------------------------------------------------------------------------
# Decomposition and balancing
# ---------------------------------------------------------------------------


def middle_bicliques(
    g: LayeredGraph, restrict: Iterable[int], k: int = 1
) -> BicliqueFamily:
    """One biclique per selected middle vertex: (V in-neighbors, W out-neighbors).

    Bicliques appear in ascending middle-vertex order, so callers can map
    family indices back to middle ids by sorting their selection.
    """
    in_masks = g.middle_in_masks()
    order = sorted(set(restrict))
    if any(u < 0 or u >= g.m for u in order):
        raise ValueError(f"middle selection outside [0, {g.m})")
    pairs = [(list(bits(in_masks[u])), list(bits(g.adj_mw[u]))) for u in order]
    return BicliqueFamily.from_index_lists(g.n, k, pairs)


@dataclass(frozen=True)
class MiddleDecomposition:
    """Three-way split of the middle layer against (n/k) * base thresholds."""

    k: int
    threshold_base: float
    degree_basis: str  # "balanced" | "v" | "w"
    high: tuple[int, ...]
    medium: tuple[int, ...]
    low: tuple[int, ...]
    high_edges_v: int
    high_edges_w: int
    medium_edges_v: int
    medium_edges_w: int
    low_edges_v: int
    low_edges_w: int

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "threshold_base": self.threshold_base,
            "degree_basis": self.degree_basis,
            "high": list(self.high),
            "medium": list(self.medium),
            "low": list(self.low),
            "edges": {
                "high": [self.high_edges_v, self.high_edges_w],
                "medium": [self.medium_edges_v, self.medium_edges_w],
                "low": [self.low_edges_v, self.low_edges_w],
            },
        }


def decompose(
    g: LayeredGraph, k: int, threshold_base: float, degree: str = "balanced"
) -> MiddleDecomposition:
    """Partition middle vertices into High/Medium/Low by degree against
    (n/k) * threshold_base and (n/k) / threshold_base."""
    if not 1 <= k <= g.n:
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}")
    if threshold_base <= 1.0:
        raise ValueError(f"threshold base must exceed 1, got {threshold_base}")
    if degree not in ("balanced", "v", "w"):
        raise ValueError(f"unknown degree basis {degree!r}")
    in_deg = g.in_degrees()
    out_deg = g.out_degrees()
    if degree == "balanced":
        for u in range(g.m):
            if in_deg[u] != out_deg[u]:
                raise ValueError(
                    f"middle vertex {u} has degrees ({in_deg[u]}, {out_deg[u]}); "
                    "balance the graph first or pick an explicit degree basis"
                )
        deg = in_deg
    elif degree == "v":
        deg = in_deg
    else:
        deg = out_deg

    hi_cut = (g.n / k) * threshold_base
    lo_cut = (g.n / k) / threshold_base
    high, medium, low = [], [], []
    for u in range(g.m):
        if deg[u] >= hi_cut:
            high.append(u)
        elif deg[u] < lo_cut:
            low.append(u)
        else:
            medium.append(u)

    def tally(selection: list[int]) -> tuple[int, int]:
        return sum(in_deg[u] for u in selection), sum(out_deg[u] for u in selection)

    hv, hw = tally(high)
    mv, mw = tally(medium)
    lv, lw = tally(low)
    return MiddleDecomposition(
        k=k,
        threshold_base=threshold_base,
        degree_basis=degree,
        high=tuple(high),
        medium=tuple(medium),
        low=tuple(low),
        high_edges_v=hv,
        high_edges_w=hw,
        medium_edges_v=mv,
        medium_edges_w=mw,
        low_edges_v=lv,
        low_edges_w=lw,
    )


def balance_degrees(g: LayeredGraph, a: float | int = 1, b: float | int = 1) -> LayeredGraph:
    """Pad edges so every middle vertex has deg_V / deg_W = a/b within integer
    rounding. Never removes edges; raises if a vertex would need more than n
    neighbors, or if the padding would more than double the total edge count
    (beyond the per-vertex rounding allowance). Added edges go to the smallest
    available vertex indices, so the result is deterministic."""
    if a <= 0 or b <= 0:
        raise ValueError(f"target ratio parts must be positive, got ({a}, {b})")
    ratio = Fraction(a) / Fraction(b)
    n, m = g.n, g.m
    in_masks = g.middle_in_masks()
    out_masks = list(g.adj_mw)
    full = (1 << n) - 1
    half = Fraction(1, 2)

    new_in = list(in_masks)
    for u in range(m):
        dv = in_masks[u].bit_count()
        dw = out_masks[u].bit_count()
        if dv == 0 and dw == 0:
            continue
        target: Optional[tuple[int, int]] = None
        if ratio <= 1:
            for y in range(dw, n + 1):
                x = int(ratio * y + half)
                if x >= dv and x <= n:
                    target = (x, y)
                    break
        else:
            for x in range(dv, n + 1):
                y = int(x / ratio + half)
                if y >= dw and y <= n:
                    target = (x, y)
                    break
        if target is None:
            raise ValueError(
                f"cannot balance middle vertex {u} (degrees {dv}, {dw}) to {a}:{b} within n={n}"
            )
        x, y = target
        if x > dv:
            extra = list(bits(full & ~new_in[u]))[: x - dv]
            if len(extra) < x - dv:
                raise ValueError(f"middle vertex {u} needs in-degree {x} > n={n}")
            new_in[u] |= mask_of(extra)
        if y > dw:
            extra = list(bits(full & ~out_masks[u]))[: y - dw]
            if len(extra) < y - dw:
                raise ValueError(f"middle vertex {u} needs out-degree {y} > n={n}")
            out_masks[u] = out_masks[u] | mask_of(extra)

    balanced = LayeredGraph(
        n, m, tuple(transpose_masks(new_in, n)), tuple(out_masks)
    )
    before = g.vm_edge_count + g.mw_edge_count
    after = balanced.vm_edge_count + balanced.mw_edge_count
    if before and after > 2 * before + m:
        raise ValueError(
            f"balancing to {a}:{b} would grow total edges {before} -> {after}, "
            "more than the promised factor two"
        )
    return balanced


def layered_flip(g: LayeredGraph) -> LayeredGraph:
    """Swap the roles of V and W (reverse every edge)."""
    new_vm = transpose_masks(g.adj_mw, g.n)  # per old-W vertex: middles reaching it
    new_mw = transpose_masks(g.adj_vm, g.m)  # per middle: old-V vertices feeding it
    return LayeredGraph(g.n, g.m, tuple(new_vm), tuple(new_mw))


def normalize_for_tradeoff(g: LayeredGraph) -> tuple[LayeredGraph, bool]:
    """Orient so the V side has the smaller average degree, then balance every
    middle vertex to the graph's own a:b ratio."""
    flipped = g.vm_edge_count > g.mw_edge_count
    if flipped:
        g = layered_flip(g)
    if g.vm_edge_count == 0 or g.mw_edge_count == 0:
        raise ValueError("tradeoff normalization needs edges in both layers")
    return balance_degrees(g, g.vm_edge_count, g.mw_edge_count), flipped


# ---------------------------------------------------------------------------
# Ladders and audits
# ---------------------------------------------------------------------------


def medium_band(n: int, k: int, threshold_base: float) -> tuple[float, float]:
    """Degree interval [lo, hi) that lands a middle vertex in Medium(k)."""
    return (n / k) / threshold_base, (n / k) * threshold_base


def threshold_ladder(n: int, threshold_base: float, max_rungs: int = 512) -> list[int]:
    """Integer k values spanning [n^{1/4}, n^{3/4}] whose Medium bands are
    pairwise disjoint.

    Consecutive rungs grow by at least threshold_base^2, which makes band
    disjointness exact by construction; rounding never shrinks the gap because
    each next rung is bumped until its band clears the previous one.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    t = float(threshold_base)
    if t <= 1.0:
        raise ValueError(f"threshold base must exceed 1, got {threshold_base}")
    lo = math.ceil(n ** 0.25)
    hi = math.floor(n ** 0.75)
    rungs: list[int] = []
    k = lo
    while k <= hi and len(rungs) < max_rungs:
        rungs.append(k)
        nxt = max(math.ceil(k * t * t), k + 1)
        # Guard against float rounding: the next band's upper end must not
        # poke above this band's lower end (bands are half-open).
        while medium_band(n, nxt, t)[1] > medium_band(n, k, t)[0]:
            nxt += 1
        k = nxt
    return rungs


def _ladder_disjointness(n: int, ladder: Sequence[int], t: float) -> bool:
    bands = [medium_band(n, k, t) for k in ladder]
    # k ascending means bands descending; adjacent half-open bands may touch.
    return all(bands[i + 1][1] <= bands[i][0] for i in range(len(bands) - 1))


@dataclass(frozen=True)
class EdgeAuditReport:
    """Instance-scale audit of the edge lower-bound argument."""

    n: int
    m: int
    constant: float
    threshold_base: float
    ladder: tuple[int, ...]
    ladder_min_required: int
    ladder_long_enough: bool
    bands: tuple[tuple[float, float], ...]
    bands_disjoint: bool
    medium_sets_disjoint: bool
    per_k: tuple[dict, ...]
    total_edges: int
    total_edges_balanced: int
    total_edge_target: float
    total_edges_ok: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "constant": self.constant,
            "threshold_base": self.threshold_base,
            "ladder": list(self.ladder),
            "ladder_min_required": self.ladder_min_required,
            "ladder_long_enough": self.ladder_long_enough,
            "bands": [list(band) for band in self.bands],
            "bands_disjoint": self.bands_disjoint,
            "medium_sets_disjoint": self.medium_sets_disjoint,
            "per_k": list(self.per_k),
            "total_edges": self.total_edges,
            "total_edges_balanced": self.total_edges_balanced,
            "total_edge_target": self.total_edge_target,
            "total_edges_ok": self.total_edges_ok,
        }


def edge_lower_bound_audit(g: LayeredGraph, constant: float) -> EdgeAuditReport:
    """Audit the (log n)^2-threshold decomposition across the k ladder.

    Per rung: checks |High(k)| < k, evaluates the two-branch condition on the
    Medium+Low middle-vertex profile (both the plain form and the variant with
    alpha^2 kept only on Low), and compares Medium-incident edges with
    (constant/2) n log2 n. Asymptotic claims are reported, never asserted.
    """
    n = g.n
    if n < 2:
        raise ValueError("audit needs n >= 2")
    balanced = balance_degrees(g, 1, 1)
    log_n = math.log2(n)
    t = log_n ** 2
    if t <= 1.0:
        raise ValueError(f"n={n} gives threshold base {t} <= 1; audit undefined")
    ladder = threshold_ladder(n, t)
    bands = tuple(medium_band(n, k, t) for k in ladder)
    loglog = math.log2(log_n) if log_n > 1 else 0.0
    min_required = math.floor(0.1 * log_n / loglog) if loglog > 0 else 0

    per_k = []
    medium_sets = []
    for k in ladder:
        dec = decompose(balanced, k, t, degree="balanced")
        medium_sets.append(set(dec.medium))
        selection = sorted(dec.medium + dec.low)
        fam = middle_bicliques(balanced, selection, k)
        profile = profile_from_family(fam)
        sym_lhs = symmetric_condition(profile, 0.0).lhs
        low_set = set(dec.low)
        fixedk_lhs = 0.0
        for idx, u in enumerate(selection):
            alpha = profile.entries[idx].alpha
            fixedk_lhs += alpha * alpha if u in low_set else alpha
        medium_edges = dec.medium_edges_v  # balanced: V side equals W side
        target = 0.5 * constant * n * log_n
        per_k.append(
            {
                "k": k,
                "high_count": len(dec.high),
                "medium_count": len(dec.medium),
                "low_count": len(dec.low),
                "high_premise_ok": len(dec.high) < k,
                "medium_edges_per_side": medium_edges,
                "medium_edge_target": target,
                "medium_edges_ok": medium_edges >= target,
                "symmetric_lhs": sym_lhs,
                "fixedk_lhs": fixedk_lhs,
                "rhs": constant * k * log_n,
            }
        )

    disjoint = all(
        not (medium_sets[i] & medium_sets[j])
        for i in range(len(medium_sets))
        for j in range(i + 1, len(medium_sets))
    )
    total = g.vm_edge_count + g.mw_edge_count
    target_total = (constant / 20.0) * n * log_n ** 2 / loglog if loglog > 0 else 0.0
    return EdgeAuditReport(
        n=n,
        m=g.m,
        constant=constant,
        threshold_base=t,
        ladder=tuple(ladder),
        ladder_min_required=min_required,
        ladder_long_enough=len(ladder) >= min_required,
        bands=bands,
        bands_disjoint=_ladder_disjointness(n, ladder, t),
        medium_sets_disjoint=disjoint,
        per_k=tuple(per_k),
        total_edges=total,
        total_edges_balanced=balanced.vm_edge_count + balanced.mw_edge_count,
        total_edge_target=target_total,
        total_edges_ok=total >= target_total,
    )


@dataclass(frozen=True)
class TradeoffReport:
    """Instance-scale audit of the V/W average-degree tradeoff argument."""

    n: int
    m: int
    constant: float
    a: float
    b: float
    ladder: tuple[int, ...]
    ladder_length: int
    per_k_medium_v_edges: tuple[int, ...]
    k0: int
    k0_v_edges: int
    pigeonhole_bound: float  # a * n / L
    pigeonhole_exact: bool
    high_count_k0: int
    high_premise_ok: bool
    medium_sets_disjoint: bool
    asymmetric_min: float
    asymmetric_argmin: tuple[int, ...]
    value_at_low: float
    condition_rhs: float
    tradeoff_lhs: float  # a log2((a+b)/a) log2 b
    rhs_scale: float  # (log2 n)^2
    tradeoff_ok: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "constant": self.constant,
            "a": self.a,
            "b": self.b,
            "ladder": list(self.ladder),
            "ladder_length": self.ladder_length,
            "per_k_medium_v_edges": list(self.per_k_medium_v_edges),
            "k0": self.k0,
            "k0_v_edges": self.k0_v_edges,
            "pigeonhole_bound": self.pigeonhole_bound,
            "pigeonhole_exact": self.pigeonhole_exact,
            "high_count_k0": self.high_count_k0,
            "high_premise_ok": self.high_premise_ok,
            "medium_sets_disjoint": self.medium_sets_disjoint,
            "asymmetric_min": self.asymmetric_min,
            "asymmetric_argmin": list(self.asymmetric_argmin),
            "value_at_low": self.value_at_low,
            "condition_rhs": self.condition_rhs,
            "tradeoff_lhs": self.tradeoff_lhs,
            "rhs_scale": self.rhs_scale,
            "tradeoff_ok": self.tradeoff_ok,
        }


def tradeoff_audit(g: LayeredGraph, constant: float) -> TradeoffReport:
    """Audit the asymmetric condition on the b^2-threshold ladder.

    Requires a graph already normalized with ``normalize_for_tradeoff`` (V side
    average at most W side average, per-vertex degrees in the a:b ratio). The
    chosen k0 minimizes V-to-Medium edges, and the pigeonhole bound
    min <= a n / L is checked exactly in integer arithmetic.
    """
    n = g.n
    evm, emw = g.vm_edge_count, g.mw_edge_count
    if evm == 0 or emw == 0:
        raise ValueError("tradeoff audit needs edges in both layers")
    a_frac = Fraction(evm, n)
    b_frac = Fraction(emw, n)
    if a_frac > b_frac:
        raise ValueError("V side average exceeds W side; run normalize_for_tradeoff first")
    a = float(a_frac)
    b = float(b_frac)
    if b <= 1.0:
        raise ValueError(f"W side average degree {b} <= 1: threshold base undefined")
    ratio = a_frac / b_frac
    in_deg = g.in_degrees()
    out_deg = g.out_degrees()
    for u in range(g.m):
        if in_deg[u] == 0 and out_deg[u] == 0:
            continue
        if abs(in_deg[u] - float(ratio) * out_deg[u]) > 1.0 + 1e-9:
            raise ValueError(
                f"middle vertex {u} has degrees ({in_deg[u]}, {out_deg[u]}) off the "
                f"{evm}:{emw} ratio; run normalize_for_tradeoff first"
            )

    t = b * b
    ladder = threshold_ladder(n, t)
    if not ladder:
        raise ValueError(f"no ladder rungs inside [n^(1/4), n^(3/4)] for n={n}")
    decs = [decompose(g, k, t, degree="w") for k in ladder]
    medium_v_edges = tuple(dec.medium_edges_v for dec in decs)
    best = min(range(len(ladder)), key=lambda i: (medium_v_edges[i], ladder[i]))
    k0 = ladder[best]
    dec0 = decs[best]
    length = len(ladder)
    # min * L <= total V->M edges, exactly, because the Medium sets are disjoint.
    pigeonhole_exact = medium_v_edges[best] * length <= evm

    medium_sets = [set(dec.medium) for dec in decs]
    disjoint = all(
        not (medium_sets[i] & medium_sets[j])
        for i in range(len(medium_sets))
        for j in range(i + 1, len(medium_sets))
    )

    selection = sorted(dec0.medium + dec0.low)
    fam = middle_bicliques(g, selection, k0)
    profile = profile_from_family(fam)
    live_positions = [i for i, e in enumerate(profile.entries) if not e.degenerate]
    live_profile = NormalizedProfile(
        profile.n,
        profile.k,
        tuple(profile.entries[i] for i in live_positions),
        profile.in_theorem_regime,
    )
    low_set = set(dec0.low)
    live_low = [
        j for j, i in enumerate(live_positions) if selection[i] in low_set
    ]
    asym = asymmetric_condition(live_profile, constant)
    value_at_low = asymmetric_value_at(live_profile, live_low)

    log_n = math.log2(n)
    tradeoff_lhs = a * math.log2((a + b) / a) * math.log2(b)
    rhs_scale = log_n ** 2
    return TradeoffReport(
        n=n,
        m=g.m,
        constant=constant,
        a=a,
        b=b,
        ladder=tuple(ladder),
        ladder_length=length,
        per_k_medium_v_edges=medium_v_edges,
        k0=k0,
        k0_v_edges=medium_v_edges[best],
        pigeonhole_bound=a * n / length,
        pigeonhole_exact=pigeonhole_exact,
        high_count_k0=len(dec0.high),
        high_premise_ok=len(dec0.high) < k0,
        medium_sets_disjoint=disjoint,
        asymmetric_min=asym.min_over_x,
        asymmetric_argmin=tuple(sorted(asym.argmin_x)),
        value_at_low=value_at_low,
        condition_rhs=asym.rhs,
        tradeoff_lhs=tradeoff_lhs,
        rhs_scale=rhs_scale,
        tradeoff_ok=tradeoff_lhs >= constant * rhs_scale,
    )
