"""Random-deletion refuter: finds k x k independent sets in under-provisioned
biclique families.

One trial deletes a uniformly chosen side of every attacked biclique
(symmetric mode attacks the large ones; asymmetric mode attacks the unmarked
ones with side probabilities p_i and 1 - p_i), keeps the half of each side
whose deletion exponent d_v is smallest, optionally rebalances survival so
every kept vertex survives with probability exactly 2^-d, and then searches
the surviving rectangle for a witness against the kept bicliques only. Any
witness found is re-verified against the full union graph before it is
reported: an attacked biclique has a deleted side disjoint from the
survivors, so it cannot contribute an edge between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .bounds import NormalizedProfile, asymmetric_condition, profile_from_family
from .core import BicliqueFamily, BipartiteGraph, RandomSource, bits, union_of
from .witness import WitnessConfig, has_kxk_independent_set

__all__ = [
    "AttackConfig",
    "DeletionTrace",
    "SurvivorStatistics",
    "classify",
    "run_attack",
    "run_attack_trials",
    "survivor_statistics",
]


@dataclass(frozen=True)
class AttackConfig:
    """Knobs for the deletion refuter; trials >= 1 and an explicit seed."""

    mode: str  # "symmetric" | "asymmetric"
    rng: RandomSource
    trials: int = 1
    marked: Optional[frozenset[int]] = None  # asymmetric; default: binding argmin
    truncation: str = "exact"  # "exact" (force survival 2^-d) | "none"
    fixed_d: Optional[float] = None  # override the median-based threshold
    witness_config: WitnessConfig = field(default_factory=WitnessConfig)

    def __post_init__(self) -> None:
        if self.mode not in ("symmetric", "asymmetric"):
            raise ValueError(f"unknown attack mode {self.mode!r}")
        if self.truncation not in ("exact", "none"):
            raise ValueError(f"unknown truncation {self.truncation!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


def classify(
    profile: NormalizedProfile, mode: str, marked: Optional[Iterable[int]] = None
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split indices into (attacked, kept).

    Symmetric mode attacks indices with alpha > 1; asymmetric mode attacks the
    complement of the marked set.
    """
    r = len(profile.entries)
    if mode == "symmetric":
        attacked = tuple(i for i, e in enumerate(profile.entries) if e.alpha > 1.0)
        kept = tuple(i for i, e in enumerate(profile.entries) if e.alpha <= 1.0)
        return attacked, kept
    if mode != "asymmetric":
        raise ValueError(f"unknown attack mode {mode!r}")
    if marked is None:
        live = [i for i, e in enumerate(profile.entries) if not e.degenerate]
        live_profile = NormalizedProfile(
            profile.n,
            profile.k,
            tuple(profile.entries[i] for i in live),
            profile.in_theorem_regime,
        )
        argmin = asymmetric_condition(live_profile, 0.0).argmin_x
        marked_set = {live[j] for j in argmin}
        # Degenerate (empty) bicliques cannot be side-deleted; keep them.
        marked_set.update(i for i, e in enumerate(profile.entries) if e.degenerate)
    else:
        marked_set = set(marked)
        if not marked_set <= set(range(r)):
            raise ValueError(f"marked set {sorted(marked_set)} not within 0..{r - 1}")
    attacked = tuple(i for i in range(r) if i not in marked_set)
    kept = tuple(i for i in range(r) if i in marked_set)
    return attacked, kept


@dataclass(frozen=True)
class DeletionTrace:
    """Full record of one deletion trial."""

    mode: str
    truncation: str
    trial: int
    seed: int
    stream_id: int
    n: int
    k: int
    marked: Optional[tuple[int, ...]]
    attacked: tuple[int, ...]
    kept: tuple[int, ...]
    deleted_side: tuple[str, ...]  # aligned with `attacked`
    d_left: float
    d_right: float
    d_v_left: tuple[float, ...]
    d_v_right: tuple[float, ...]
    s_v_left: tuple[int, ...]
    s_v_right: tuple[int, ...]
    v_prime_mask: int
    w_prime_mask: int
    x_surv_mask: int
    y_surv_mask: int
    attacked_edge_pairs_surviving: int
    kept_edge_sum_surviving: int
    kept_union_edges_surviving: int
    kept_edge_sum_expectation: float
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]]
    witness_search_complete: bool
    found: bool

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "truncation": self.truncation,
            "trial": self.trial,
            "seed": self.seed,
            "stream_id": self.stream_id,
            "n": self.n,
            "k": self.k,
            "marked": list(self.marked) if self.marked is not None else None,
            "attacked": list(self.attacked),
            "kept": list(self.kept),
            "deleted_side": list(self.deleted_side),
            "d_left": self.d_left,
            "d_right": self.d_right,
            "d_v_left": list(self.d_v_left),
            "d_v_right": list(self.d_v_right),
            "s_v_left": list(self.s_v_left),
            "s_v_right": list(self.s_v_right),
            "v_prime": list(bits(self.v_prime_mask)),
            "w_prime": list(bits(self.w_prime_mask)),
            "x_surv": list(bits(self.x_surv_mask)),
            "y_surv": list(bits(self.y_surv_mask)),
            "attacked_edge_pairs_surviving": self.attacked_edge_pairs_surviving,
            "kept_edge_sum_surviving": self.kept_edge_sum_surviving,
            "kept_union_edges_surviving": self.kept_union_edges_surviving,
            "kept_edge_sum_expectation": self.kept_edge_sum_expectation,
            "witness": [list(self.witness[0]), list(self.witness[1])] if self.witness else None,
            "witness_search_complete": self.witness_search_complete,
            "found": self.found,
        }


class _AttackPlan:
    """Everything about an attack that does not depend on the coin flips."""

    def __init__(self, family: BicliqueFamily, config: AttackConfig):
        self.family = family
        self.config = config
        n = family.n
        profile = profile_from_family(family)
        self.profile = profile
        if config.mode == "asymmetric":
            self.attacked, self.kept = classify(profile, "asymmetric", config.marked)
            self.marked: Optional[tuple[int, ...]] = self.kept
        else:
            self.attacked, self.kept = classify(profile, "symmetric")
            self.marked = None

        self.left_masks = family.left_masks()
        self.right_masks = family.right_masks()

        # Side-deletion probabilities for attacked indices: delete the right
        # side of biclique i with probability p_i, the left side otherwise.
        self.p: dict[int, float] = {}
        for i in self.attacked:
            e = profile.entries[i]
            if config.mode == "asymmetric":
                if e.degenerate:
                    raise ValueError(
                        f"cannot attack empty biclique {i}: alpha + beta = 0"
                    )
                self.p[i] = e.p
            else:
                self.p[i] = 0.5

        d_v_left = [0.0] * n
        d_v_right = [0.0] * n
        s_v_left = [0] * n
        s_v_right = [0] * n
        for i in self.attacked:
            p = self.p[i]
            # Members exist on a side only if that side is nonempty, in which
            # case the corresponding probability is strictly positive.
            if self.left_masks[i]:
                w_left = math.log2(1.0 / p)
                for v in bits(self.left_masks[i]):
                    d_v_left[v] += w_left
                    s_v_left[v] += 1
            if self.right_masks[i]:
                w_right = math.log2(1.0 / (1.0 - p))
                for w in bits(self.right_masks[i]):
                    d_v_right[w] += w_right
                    s_v_right[w] += 1
        self.d_v_left = tuple(d_v_left)
        self.d_v_right = tuple(d_v_right)
        self.s_v_left = tuple(s_v_left)
        self.s_v_right = tuple(s_v_right)

        half = (n + 1) // 2
        if config.fixed_d is not None:
            self.d_left = self.d_right = float(config.fixed_d)
        else:
            self.d_left = sorted(d_v_left)[half - 1]
            self.d_right = sorted(d_v_right)[half - 1]
        self.v_prime = [v for v in range(n) if d_v_left[v] <= self.d_left][:half]
        self.w_prime = [w for w in range(n) if d_v_right[w] <= self.d_right][:half]
        self.v_prime_mask = sum(1 << v for v in self.v_prime)
        self.w_prime_mask = sum(1 << w for w in self.w_prime)

        self.full_adj = union_of(family).adj
        self.kept_edge_sum_expectation = sum(
            self.left_masks[i].bit_count()
            * self.right_masks[i].bit_count()
            * 2.0 ** -(self.d_left + self.d_right)
            for i in self.kept
        )


def _compress(mask: int, positions: dict[int, int]) -> int:
    out = 0
    for v in bits(mask):
        out |= 1 << positions[v]
    return out


def _run_trial(plan: _AttackPlan, trial: int) -> DeletionTrace:
    config = plan.config
    n = plan.family.n
    k = plan.family.k
    gen = config.rng.derive(trial).rng()

    deleted_side = []
    deleted_left_union = 0
    deleted_right_union = 0
    for i in plan.attacked:
        if gen.random() < plan.p[i]:
            deleted_side.append("right")
            deleted_right_union |= plan.right_masks[i]
        else:
            deleted_side.append("left")
            deleted_left_union |= plan.left_masks[i]

    x_surv = plan.v_prime_mask & ~deleted_left_union
    y_surv = plan.w_prime_mask & ~deleted_right_union

    if config.truncation == "exact":
        # Rebalance so each focus vertex survives with probability exactly
        # 2^-d: a stage-one survivor (probability 2^-d_v) is kept with
        # probability 2^-(d - d_v). Coin order is left side ascending, then
        # right side ascending, one coin per stage-one survivor.
        kept_mask = 0
        for v in plan.v_prime:
            if x_surv >> v & 1:
                if gen.random() < 2.0 ** -(plan.d_left - plan.d_v_left[v]):
                    kept_mask |= 1 << v
        x_surv = kept_mask
        kept_mask = 0
        for w in plan.w_prime:
            if y_surv >> w & 1:
                if gen.random() < 2.0 ** -(plan.d_right - plan.d_v_right[w]):
                    kept_mask |= 1 << w
        y_surv = kept_mask

    attacked_pairs = 0
    for i in plan.attacked:
        attacked_pairs += (plan.left_masks[i] & x_surv).bit_count() * (
            plan.right_masks[i] & y_surv
        ).bit_count()

    kept_edge_sum = 0
    for i in plan.kept:
        kept_edge_sum += (plan.left_masks[i] & x_surv).bit_count() * (
            plan.right_masks[i] & y_surv
        ).bit_count()

    left_ids = list(bits(x_surv))
    right_ids = list(bits(y_surv))
    witness = None
    search_complete = True
    kept_union_edges = 0
    if len(left_ids) >= k and len(right_ids) >= k:
        left_pos = {v: idx for idx, v in enumerate(left_ids)}
        right_pos = {w: idx for idx, w in enumerate(right_ids)}
        rows = [0] * len(left_ids)
        for i in plan.kept:
            sub_right = _compress(plan.right_masks[i] & y_surv, right_pos)
            if not sub_right:
                continue
            for v in bits(plan.left_masks[i] & x_surv):
                rows[left_pos[v]] |= sub_right
        kept_union_edges = sum(row.bit_count() for row in rows)
        sub_graph = BipartiteGraph(len(left_ids), len(right_ids), tuple(rows))
        result = has_kxk_independent_set(sub_graph, k, config.witness_config)
        search_complete = result.complete
        if result.found:
            s = tuple(left_ids[i] for i in result.S.indices())
            t = tuple(right_ids[j] for j in result.T.indices())
            t_mask = sum(1 << w for w in t)
            for v in s:
                if plan.full_adj[v] & t_mask:
                    raise AssertionError(
                        "internal error: witness not independent in the full union graph"
                    )
            witness = (s, t)

    return DeletionTrace(
        mode=config.mode,
        truncation=config.truncation,
        trial=trial,
        seed=config.rng.seed,
        stream_id=config.rng.stream_id,
        n=n,
        k=k,
        marked=plan.marked,
        attacked=plan.attacked,
        kept=plan.kept,
        deleted_side=tuple(deleted_side),
        d_left=plan.d_left,
        d_right=plan.d_right,
        d_v_left=plan.d_v_left,
        d_v_right=plan.d_v_right,
        s_v_left=plan.s_v_left,
        s_v_right=plan.s_v_right,
        v_prime_mask=plan.v_prime_mask,
        w_prime_mask=plan.w_prime_mask,
        x_surv_mask=x_surv,
        y_surv_mask=y_surv,
        attacked_edge_pairs_surviving=attacked_pairs,
        kept_edge_sum_surviving=kept_edge_sum,
        kept_union_edges_surviving=kept_union_edges,
        kept_edge_sum_expectation=plan.kept_edge_sum_expectation,
        witness=witness,
        witness_search_complete=search_complete,
        found=witness is not None,
    )


def run_attack(family: BicliqueFamily, config: AttackConfig) -> DeletionTrace:
    """Run trials until a witness is found; return its trace, or the last
    trial's trace if none succeeds. A fruitless attack is evidence, not an
    error."""
    plan = _AttackPlan(family, config)
    trace = None
    for trial in range(1, config.trials + 1):
        trace = _run_trial(plan, trial)
        if trace.found:
            return trace
    return trace


def run_attack_trials(family: BicliqueFamily, config: AttackConfig) -> list[DeletionTrace]:
    """Run every trial regardless of success; for statistics gathering."""
    plan = _AttackPlan(family, config)
    return [_run_trial(plan, trial) for trial in range(1, config.trials + 1)]


@dataclass(frozen=True)
class SurvivorStatistics:
    """Aggregates over exact-truncation traces of one (family, config)."""

    trials: int
    found_count: int
    d_left: float
    d_right: float
    mean_ratio_left: float
    mean_ratio_right: float
    min_ratio_left: float
    min_ratio_right: float
    frac_ratio_ge_quarter_left: float
    frac_ratio_ge_quarter_right: float
    survival_freq_left: dict[int, float]
    survival_freq_right: dict[int, float]
    mean_kept_edge_sum: float
    kept_edge_sum_expectation: float

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "found_count": self.found_count,
            "d_left": self.d_left,
            "d_right": self.d_right,
            "mean_ratio_left": self.mean_ratio_left,
            "mean_ratio_right": self.mean_ratio_right,
            "min_ratio_left": self.min_ratio_left,
            "min_ratio_right": self.min_ratio_right,
            "frac_ratio_ge_quarter_left": self.frac_ratio_ge_quarter_left,
            "frac_ratio_ge_quarter_right": self.frac_ratio_ge_quarter_right,
            "survival_freq_left": {str(v): f for v, f in sorted(self.survival_freq_left.items())},
            "survival_freq_right": {str(v): f for v, f in sorted(self.survival_freq_right.items())},
            "mean_kept_edge_sum": self.mean_kept_edge_sum,
            "kept_edge_sum_expectation": self.kept_edge_sum_expectation,
        }


def survivor_statistics(traces: Sequence[DeletionTrace]) -> SurvivorStatistics:
    """Empirical survivor concentration: |X| / (n 2^-d) per side, the fraction
    of trials clearing 1/4, per-vertex survival frequencies, and the surviving
    kept-edge sum against its product-form expectation."""
    if not traces:
        raise ValueError("no traces given")
    first = traces[0]
    if any(t.truncation != "exact" for t in traces):
        raise ValueError("survivor statistics requires exact truncation traces")
    if any(
        (t.d_left, t.d_right, t.n, t.v_prime_mask, t.w_prime_mask)
        != (first.d_left, first.d_right, first.n, first.v_prime_mask, first.w_prime_mask)
        for t in traces
    ):
        raise ValueError("traces must come from a single family and configuration")

    n = first.n
    denom_left = n * 2.0 ** -first.d_left
    denom_right = n * 2.0 ** -first.d_right
    ratios_left = [t.x_surv_mask.bit_count() / denom_left for t in traces]
    ratios_right = [t.y_surv_mask.bit_count() / denom_right for t in traces]
    trials = len(traces)

    counts_left = {v: 0 for v in bits(first.v_prime_mask)}
    counts_right = {w: 0 for w in bits(first.w_prime_mask)}
    for t in traces:
        for v in bits(t.x_surv_mask):
            counts_left[v] += 1
        for w in bits(t.y_surv_mask):
            counts_right[w] += 1

    return SurvivorStatistics(
        trials=trials,
        found_count=sum(1 for t in traces if t.found),
        d_left=first.d_left,
        d_right=first.d_right,
        mean_ratio_left=sum(ratios_left) / trials,
        mean_ratio_right=sum(ratios_right) / trials,
        min_ratio_left=min(ratios_left),
        min_ratio_right=min(ratios_right),
        frac_ratio_ge_quarter_left=sum(1 for x in ratios_left if x >= 0.25) / trials,
        frac_ratio_ge_quarter_right=sum(1 for x in ratios_right if x >= 0.25) / trials,
        survival_freq_left={v: c / trials for v, c in counts_left.items()},
        survival_freq_right={w: c / trials for w, c in counts_right.items()},
        mean_kept_edge_sum=sum(t.kept_edge_sum_surviving for t in traces) / trials,
        kept_edge_sum_expectation=first.kept_edge_sum_expectation,
    )
