"""Bitset graphs and the builders for box intersection and point-rectangle incidence graphs.

Adjacency rows are Python ints used as bitsets: bit ``j`` of ``adj[i]`` is set
iff ``ij`` is an edge.  Common neighbourhoods are a single ``&`` and sizes are
``int.bit_count``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import (
    Box,
    DimensionMismatch,
    Point,
    boxes_intersect,
    exact,
    min_gap,
    parse_json_number,
    point,
    rank_columns,
    to_json_number,
)


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Undirected simple graph on vertices ``0..n-1`` with bitset rows."""

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, adj: Optional[Sequence[int]] = None,
                 labels: Optional[Sequence[Hashable]] = None):
        self.n = n
        self.adj = list(adj) if adj is not None else [0] * n
        if len(self.adj) != n:
            raise ValueError("adjacency length differs from n")
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("label count differs from n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]],
                   labels=None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, labels)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> List[int]:
        return list(bits(self.adj[v]))

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled ``0..k-1`` in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            row = 0
            for w in bits(self.adj[v]):
                if w in pos:
                    row |= 1 << pos[w]
            adj.append(row)
        labels = [self.labels[v] for v in vertices] if self.labels else list(vertices)
        return Graph(len(vertices), adj, labels)

    def is_symmetric(self) -> bool:
        return all(
            not (self.adj[u] >> u & 1)
            and all(self.adj[v] >> u & 1 for v in bits(self.adj[u]))
            for u in range(self.n)
        )

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __repr__(self):
        return f"Graph(n={self.n}, e={self.edge_count()})"

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Graph":
        return cls.from_edges(obj["n"], [tuple(e) for e in obj["edges"]])


@dataclass(frozen=True)
class BoxFamily:
    dim: int
    boxes: Tuple[Box, ...]

    def __post_init__(self):
        object.__setattr__(self, "boxes", tuple(self.boxes))
        for b in self.boxes:
            if b.dim != self.dim:
                raise DimensionMismatch(f"box of dimension {b.dim} in a {self.dim}-family")

    def __len__(self):
        return len(self.boxes)

    def to_json(self) -> dict:
        return {"dim": self.dim, "boxes": [b.to_json() for b in self.boxes]}

    @classmethod
    def from_json(cls, obj: dict) -> "BoxFamily":
        return cls(obj["dim"], tuple(Box.from_json(b) for b in obj["boxes"]))


@dataclass(frozen=True)
class IncidenceConfig:
    """Points and closed rectangles in the plane."""

    points: Tuple[Point, ...]
    rects: Tuple[Box, ...]

    def __post_init__(self):
        pts = tuple(point(p) for p in self.points)
        if any(len(p) != 2 for p in pts) or any(r.dim != 2 for r in self.rects):
            raise DimensionMismatch("incidence configurations are planar")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "rects", tuple(self.rects))

    def to_json(self) -> dict:
        return {"points": [[to_json_number(c) for c in p] for p in self.points],
                "rects": [r.to_json() for r in self.rects]}

    @classmethod
    def from_json(cls, obj: dict) -> "IncidenceConfig":
        return cls(tuple(point(parse_json_number(c) for c in p) for p in obj["points"]),
                   tuple(Box.from_json(r) for r in obj["rects"]))


def intersection_graph_bruteforce(family: BoxFamily) -> Graph:
    n = len(family.boxes)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if boxes_intersect(family.boxes[i], family.boxes[j])]
    return Graph.from_edges(n, edges)


def _ranked_bounds(boxes: Sequence[Box], dim: int) -> Tuple[np.ndarray, np.ndarray]:
    lo = np.empty((len(boxes), dim), dtype=np.int64)
    hi = np.empty((len(boxes), dim), dtype=np.int64)
    for k in range(dim):
        ranks = rank_columns([[b.lo[k] for b in boxes], [b.hi[k] for b in boxes]])
        lo[:, k], hi[:, k] = ranks[0], ranks[1]
    return lo, hi


def intersection_graph_sweep(family: BoxFamily) -> Graph:
    """Sweep along the first axis; each arriving box is tested against the active set."""
    n = len(family.boxes)
    if n == 0:
        return Graph(0)
    lo, hi = _ranked_bounds(family.boxes, family.dim)
    order = np.lexsort((np.arange(n), lo[:, 0]))
    adj = [0] * n
    active = np.empty(0, dtype=np.int64)
    for i in order:
        if active.size:
            active = active[hi[active, 0] >= lo[i, 0]]
        if active.size and family.dim > 1:
            ok = np.all((lo[active, 1:] <= hi[i, 1:]) & (lo[i, 1:] <= hi[active, 1:]), axis=1)
            hits = active[ok]
        else:
            hits = active
        for j in hits.tolist():
            adj[i] |= 1 << j
            adj[j] |= 1 << int(i)
        active = np.append(active, i)
    return Graph(n, adj)


def intersection_graph(family: BoxFamily, method: str = "sweep") -> Graph:
    """Intersection graph of a box family; vertex ``i`` is ``family.boxes[i]``.

    ``method`` is ``"sweep"`` (default) or ``"brute"`` (the O(n^2) reference).
    """
    if method == "sweep":
        return intersection_graph_sweep(family)
    if method == "brute":
        return intersection_graph_bruteforce(family)
    raise ValueError(f"unknown method {method!r}")


def incidence_graph(config: IncidenceConfig) -> Graph:
    """Bipartite graph: vertices are the points, then the rectangles."""
    p = len(config.points)
    n = p + len(config.rects)
    edges = [(i, p + j)
             for j, r in enumerate(config.rects)
             for i, q in enumerate(config.points) if r.contains(q)]
    labels = [("p", i) for i in range(p)] + [("r", j) for j in range(len(config.rects))]
    return Graph.from_edges(n, edges, labels)


def degeneracy(g: Graph) -> Tuple[int, List[int]]:
    """Degeneracy via repeated min-degree deletion; returns it with the deletion order."""
    alive = (1 << g.n) - 1
    order, k = [], 0
    for _ in range(g.n):
        v = min(bits(alive), key=lambda u: ((g.adj[u] & alive).bit_count(), u))
        k = max(k, (g.adj[v] & alive).bit_count())
        order.append(v)
        alive &= ~(1 << v)
    return k, order


def cut_size(g: Graph, side_a: int) -> int:
    """Number of edges with exactly one endpoint in the bitset ``side_a``."""
    return sum((g.adj[v] & ~side_a).bit_count() for v in bits(side_a))


def bipartition_split(g: Graph) -> Tuple[List[int], List[int]]:
    """Local-search max-cut: move a vertex while it has more neighbours on its own side.

    At the fixpoint every vertex has at least half its edges crossing, so the
    cut holds at least ``e(G)/2`` edges.
    """
    side_a = (1 << g.n) - 1
    moved = True
    while moved:
        moved = False
        for v in range(g.n):
            mine = side_a if side_a >> v & 1 else ~side_a
            same = (g.adj[v] & mine).bit_count()
            if same > g.degree(v) - same:
                side_a ^= 1 << v
                moved = True
    cut = cut_size(g, side_a)
    assert 2 * cut >= g.edge_count(), "local search fixpoint violates the half-cut bound"
    a = list(bits(side_a))
    b = [v for v in range(g.n) if not side_a >> v & 1]
    return a, b


def general_position_config(config: IncidenceConfig) -> IncidenceConfig:
    """Perturb a configuration so every x-value (and every y-value) is distinct.

    Ties are broken by tiny exact offsets, ordering tied values as
    rectangle-low < point < rectangle-high, then by index.  Closed incidences are
    unchanged and afterwards no point lies on a rectangle boundary.
    """
    p, r = len(config.points), len(config.rects)
    new_axes = []
    for k in range(2):
        feats = ([(config.points[i][k], 1, i) for i in range(p)]
                 + [(config.rects[j].lo[k], 0, j) for j in range(r)]
                 + [(config.rects[j].hi[k], 2, j) for j in range(r)])
        gap = min_gap(f[0] for f in feats) or 1
        delta = Fraction(gap) / (2 * len(feats) + 2)
        feats.sort()
        out = {}
        run_start = 0
        for idx, f in enumerate(feats):
            if idx and f[0] != feats[idx - 1][0]:
                run_start = idx
            out[(f[1], f[2])] = exact(f[0] + (idx - run_start) * delta)
        new_axes.append(out)
    points = tuple((new_axes[0][(1, i)], new_axes[1][(1, i)]) for i in range(p))
    rects = tuple(Box((new_axes[0][(0, j)], new_axes[1][(0, j)]),
                      (new_axes[0][(2, j)], new_axes[1][(2, j)])) for j in range(r))
    return IncidenceConfig(points, rects)


def dumps(obj) -> str:
    """Canonical JSON text used by every writer in the package."""
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"
