"""Bitset-backed data model: vertex sets, bicliques, bipartite and layered graphs.

Vertices are dense integer indices 0..n-1 per side; sets of vertices are
arbitrary-precision integer bitmasks, which keeps unions, intersections and
popcounts cheap at the scales this library targets. All container types are
immutable after construction; randomized operations draw from an explicit
seeded source so that every run is reproducible bit for bit.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Side",
    "VertexSet",
    "Biclique",
    "BicliqueFamily",
    "BipartiteGraph",
    "LayeredGraph",
    "RandomSource",
    "SubsetSampler",
    "SchemaError",
    "mask_of",
    "bits",
    "union_of",
    "transpose",
    "transpose_masks",
    "lint_family",
    "family_to_json",
    "family_from_json",
    "graph_to_json",
    "graph_from_json",
    "layered_to_json",
    "layered_from_json",
    "canonical_dumps",
    "save_json",
    "load_json",
]


class SchemaError(ValueError):
    """A document does not satisfy the on-disk JSON schema."""


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    MIDDLE = "middle"


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class VertexSet:
    """A subset of one side's vertices, stored as a bitmask over 0..n-1."""

    side: Side
    n: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"ground-set size must be >= 0, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(
                f"vertex set has members outside [0, {self.n}) on side {self.side.value}"
            )

    @classmethod
    def from_indices(cls, side: Side, n: int, indices: Iterable[int]) -> "VertexSet":
        return cls(side, n, mask_of(indices))

    def cardinality(self) -> int:
        return self.mask.bit_count()

    def indices(self) -> list[int]:
        return list(bits(self.mask))

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.mask >> v & 1)


@dataclass(frozen=True)
class Biclique:
    """A complete bipartite subgraph, given by its two vertex sets.

    The edge set is implicitly left x right and is never materialized
    edge by edge. Empty bicliques are legal but useless; ``lint_family``
    reports them.
    """

    left: VertexSet
    right: VertexSet

    def __post_init__(self) -> None:
        if self.left.side is not Side.LEFT or self.right.side is not Side.RIGHT:
            raise ValueError("biclique sides must be (LEFT, RIGHT)")

    @property
    def edge_count(self) -> int:
        return self.left.cardinality() * self.right.cardinality()

    @property
    def is_empty(self) -> bool:
        return self.left.mask == 0 or self.right.mask == 0


@dataclass(frozen=True)
class BicliqueFamily:
    """An ordered list of bicliques over two n-vertex sides, with a target k."""

    n: int
    k: int
    bicliques: tuple[Biclique, ...] = ()

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.n:
            raise ValueError(f"k must satisfy 1 <= k <= n, got k={self.k}, n={self.n}")
        for idx, b in enumerate(self.bicliques):
            if b.left.n != self.n or b.right.n != self.n:
                raise ValueError(
                    f"bicliques[{idx}] is over ground sets of size "
                    f"({b.left.n}, {b.right.n}), expected {self.n}"
                )

    @classmethod
    def from_index_lists(
        cls, n: int, k: int, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]
    ) -> "BicliqueFamily":
        bicliques = tuple(
            Biclique(
                VertexSet.from_indices(Side.LEFT, n, left),
                VertexSet.from_indices(Side.RIGHT, n, right),
            )
            for left, right in pairs
        )
        return cls(n, k, bicliques)

    @property
    def size(self) -> int:
        return len(self.bicliques)

    def left_masks(self) -> list[int]:
        return [b.left.mask for b in self.bicliques]

    def right_masks(self) -> list[int]:
        return [b.right.mask for b in self.bicliques]

    def side_cardinalities(self) -> list[tuple[int, int]]:
        return [(b.left.cardinality(), b.right.cardinality()) for b in self.bicliques]


def lint_family(family: BicliqueFamily) -> list[str]:
    """Report legal-but-suspect content (currently: empty bicliques)."""
    notes = []
    for idx, b in enumerate(family.bicliques):
        if b.is_empty:
            notes.append(f"bicliques[{idx}] is empty ({b.left.cardinality()}x{b.right.cardinality()})")
    return notes


@dataclass(frozen=True)
class BipartiteGraph:
    """Dense bipartite graph: one right-neighbor bitmask per left vertex."""

    n_left: int
    n_right: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n_left:
            raise ValueError(f"adjacency has {len(self.adj)} rows, expected {self.n_left}")
        for v, row in enumerate(self.adj):
            if row < 0 or row >> self.n_right:
                raise ValueError(f"adjacency row {v} has neighbors outside [0, {self.n_right})")

    @classmethod
    def empty(cls, n_left: int, n_right: int) -> "BipartiteGraph":
        return cls(n_left, n_right, (0,) * n_left)

    @classmethod
    def from_edges(cls, n_left: int, n_right: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        rows = [0] * n_left
        for v, w in edges:
            if not 0 <= v < n_left or not 0 <= w < n_right:
                raise ValueError(f"edge ({v}, {w}) outside {n_left}x{n_right}")
            rows[v] |= 1 << w
        return cls(n_left, n_right, tuple(rows))

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj)

    def has_edge(self, v: int, w: int) -> bool:
        return bool(self.adj[v] >> w & 1)

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def average_degree(self) -> float:
        if self.n_left == 0:
            return 0.0
        return self.edge_count / self.n_left


def transpose_masks(rows: Sequence[int], n_cols: int) -> list[int]:
    cols = [0] * n_cols
    for r, row in enumerate(rows):
        bit = 1 << r
        for c in bits(row):
            cols[c] |= bit
    return cols


def union_of(family: BicliqueFamily) -> BipartiteGraph:
    """Union graph of a family: edge (v, w) present iff some biclique has v on
    the left and w on the right. Idempotent and order-independent."""
    rows = [0] * family.n
    for b in family.bicliques:
        right = b.right.mask
        if not right:
            continue
        for v in bits(b.left.mask):
            rows[v] |= right
    return BipartiteGraph(family.n, family.n, tuple(rows))


def transpose(g: BipartiteGraph) -> BipartiteGraph:
    return BipartiteGraph(g.n_right, g.n_left, tuple(transpose_masks(g.adj, g.n_right)))


@dataclass(frozen=True)
class LayeredGraph:
    """Tripartite V-M-W graph; all edges go V->M or M->W. |V| = |W| = n."""

    n: int
    m: int
    adj_vm: tuple[int, ...]  # per V vertex, bitmask over M
    adj_mw: tuple[int, ...]  # per M vertex, bitmask over W

    def __post_init__(self) -> None:
        if len(self.adj_vm) != self.n:
            raise ValueError(f"adj_vm has {len(self.adj_vm)} rows, expected {self.n}")
        if len(self.adj_mw) != self.m:
            raise ValueError(f"adj_mw has {len(self.adj_mw)} rows, expected {self.m}")
        for v, row in enumerate(self.adj_vm):
            if row < 0 or row >> self.m:
                raise ValueError(f"adj_vm row {v} has neighbors outside [0, {self.m})")
        for u, row in enumerate(self.adj_mw):
            if row < 0 or row >> self.n:
                raise ValueError(f"adj_mw row {u} has neighbors outside [0, {self.n})")

    @classmethod
    def from_edge_lists(
        cls,
        n: int,
        m: int,
        edges_vm: Iterable[tuple[int, int]],
        edges_mw: Iterable[tuple[int, int]],
    ) -> "LayeredGraph":
        vm = [0] * n
        for v, u in edges_vm:
            if not 0 <= v < n or not 0 <= u < m:
                raise ValueError(f"V->M edge ({v}, {u}) outside {n}x{m}")
            vm[v] |= 1 << u
        mw = [0] * m
        for u, w in edges_mw:
            if not 0 <= u < m or not 0 <= w < n:
                raise ValueError(f"M->W edge ({u}, {w}) outside {m}x{n}")
            mw[u] |= 1 << w
        return cls(n, m, tuple(vm), tuple(mw))

    def middle_in_masks(self) -> list[int]:
        """Per middle vertex, the bitmask of its V-side in-neighbors."""
        return transpose_masks(self.adj_vm, self.m)

    def in_degrees(self) -> list[int]:
        return [mask.bit_count() for mask in self.middle_in_masks()]

    def out_degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj_mw]

    @property
    def vm_edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj_vm)

    @property
    def mw_edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj_mw)


# ---------------------------------------------------------------------------
# Seeded randomness
# ---------------------------------------------------------------------------

_RNG_DOMAIN = "zarank.rng.v1"


def _digest_seed(*parts: int | str) -> int:
    payload = ":".join(str(p) for p in parts).encode("utf-8")
    return int.from_bytes(hashlib.sha256(payload).digest(), "big")


@dataclass(frozen=True)
class RandomSource:
    """Seed plus stream id; equal (seed, stream_id) gives identical draws.

    Parallel workers should each own a distinct ``stream_id``; sub-tasks of a
    single worker derive further independent sources with ``derive``.
    """

    seed: int
    stream_id: int = 0

    def rng(self) -> random.Random:
        return random.Random(_digest_seed(_RNG_DOMAIN, self.seed, self.stream_id))

    def derive(self, *labels: int) -> "RandomSource":
        return RandomSource(_digest_seed(_RNG_DOMAIN, self.seed, self.stream_id, *labels), 0)


class SubsetSampler:
    """Uniform m-subsets of [0, n) by partial Fisher-Yates.

    The index array persists across draws; each draw does m swaps and then
    undoes them, so a draw costs O(m) instead of O(n). Starting from any
    permutation the first m entries after the swaps are a uniform ordered
    sample, hence a uniform subset.
    """

    def __init__(self, n: int, rng: random.Random):
        self.n = n
        self._rng = rng
        self._arr = list(range(n))

    def draw_list(self, m: int) -> list[int]:
        if not 0 <= m <= self.n:
            raise ValueError(f"subset size {m} outside [0, {self.n}]")
        arr = self._arr
        randrange = self._rng.randrange
        swaps = []
        for i in range(m):
            j = randrange(i, self.n)
            arr[i], arr[j] = arr[j], arr[i]
            swaps.append(j)
        out = arr[:m]
        for i in range(m - 1, -1, -1):
            j = swaps[i]
            arr[i], arr[j] = arr[j], arr[i]
        return out

    def draw_mask(self, m: int) -> int:
        return mask_of(self.draw_list(m))


# ---------------------------------------------------------------------------
# JSON schemas
# ---------------------------------------------------------------------------


def _require_int(doc: dict, key: str, where: str) -> int:
    if key not in doc:
        raise SchemaError(f"{where}: missing required key '{key}'")
    value = doc[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{where}.{key}: expected an integer, got {value!r}")
    return value


def _index_list(raw: object, n: int, where: str) -> list[int]:
    if not isinstance(raw, list):
        raise SchemaError(f"{where}: expected a list of vertex indices")
    out = []
    for pos, value in enumerate(raw):
        if not isinstance(value, int) or isinstance(value, bool):
            raise SchemaError(f"{where}[{pos}]: expected an integer, got {value!r}")
        if not 0 <= value < n:
            raise SchemaError(f"{where}[{pos}]: vertex index {value} out of range for n={n}")
        out.append(value)
    return out


def _edge_list(raw: object, n_from: int, n_to: int, where: str) -> list[tuple[int, int]]:
    if not isinstance(raw, list):
        raise SchemaError(f"{where}: expected a list of [from, to] pairs")
    out = []
    for pos, pair in enumerate(raw):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise SchemaError(f"{where}[{pos}]: expected a [from, to] pair")
        a, b = pair
        for name, value, bound in (("from", a, n_from), ("to", b, n_to)):
            if not isinstance(value, int) or isinstance(value, bool):
                raise SchemaError(f"{where}[{pos}].{name}: expected an integer, got {value!r}")
            if not 0 <= value < bound:
                raise SchemaError(f"{where}[{pos}].{name}: index {value} out of range for size {bound}")
        out.append((a, b))
    return out


def family_to_json(family: BicliqueFamily) -> dict:
    return {
        "n": family.n,
        "k": family.k,
        "bicliques": [
            {"left": b.left.indices(), "right": b.right.indices()} for b in family.bicliques
        ],
    }


def family_from_json(doc: object) -> BicliqueFamily:
    if not isinstance(doc, dict):
        raise SchemaError("family: expected a JSON object")
    n = _require_int(doc, "n", "family")
    k = _require_int(doc, "k", "family")
    if not 1 <= k <= n:
        raise SchemaError(f"family.k: must satisfy 1 <= k <= n, got k={k}, n={n}")
    raw = doc.get("bicliques")
    if not isinstance(raw, list):
        raise SchemaError("family.bicliques: expected a list")
    pairs = []
    for idx, item in enumerate(raw):
        if not isinstance(item, dict):
            raise SchemaError(f"family.bicliques[{idx}]: expected an object")
        left = _index_list(item.get("left"), n, f"family.bicliques[{idx}].left")
        right = _index_list(item.get("right"), n, f"family.bicliques[{idx}].right")
        pairs.append((left, right))
    return BicliqueFamily.from_index_lists(n, k, pairs)


def graph_to_json(g: BipartiteGraph) -> dict:
    edges = [[v, w] for v in range(g.n_left) for w in bits(g.adj[v])]
    return {"n_left": g.n_left, "n_right": g.n_right, "edges": edges}


def graph_from_json(doc: object) -> BipartiteGraph:
    if not isinstance(doc, dict):
        raise SchemaError("graph: expected a JSON object")
    n_left = _require_int(doc, "n_left", "graph")
    n_right = _require_int(doc, "n_right", "graph")
    if n_left < 0 or n_right < 0:
        raise SchemaError("graph: side sizes must be >= 0")
    edges = _edge_list(doc.get("edges"), n_left, n_right, "graph.edges")
    return BipartiteGraph.from_edges(n_left, n_right, edges)


def layered_to_json(g: LayeredGraph) -> dict:
    edges_vm = [[v, u] for v in range(g.n) for u in bits(g.adj_vm[v])]
    edges_mw = [[u, w] for u in range(g.m) for w in bits(g.adj_mw[u])]
    return {"n": g.n, "m": g.m, "edges_vm": edges_vm, "edges_mw": edges_mw}


def layered_from_json(doc: object) -> LayeredGraph:
    if not isinstance(doc, dict):
        raise SchemaError("layered: expected a JSON object")
    n = _require_int(doc, "n", "layered")
    m = _require_int(doc, "m", "layered")
    if n < 0 or m < 0:
        raise SchemaError("layered: layer sizes must be >= 0")
    edges_vm = _edge_list(doc.get("edges_vm"), n, m, "layered.edges_vm")
    edges_mw = _edge_list(doc.get("edges_mw"), m, n, "layered.edges_mw")
    return LayeredGraph.from_edge_lists(n, m, edges_vm, edges_mw)


def canonical_dumps(obj: object) -> str:
    """Stable JSON encoding: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def save_json(path, obj: object) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(canonical_dumps(obj))


def load_json(path) -> object:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
