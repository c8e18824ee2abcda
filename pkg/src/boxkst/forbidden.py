"""Exact search for K_{t,t} subgraphs and for t-matchings whose spanned boxes share a point."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .geometry import Box, Point, common_intersection, in_general_position, spanned_box, strictly_below
from .graph import Graph, bits


class ClaimViolation(AssertionError):
    """A matching with a common point exists but no K_{t,t} does."""


@dataclass(frozen=True)
class KttWitness:
    left: Tuple[int, ...]
    right: Tuple[int, ...]

    def verify(self, g: Graph) -> bool:
        return (len(self.left) == len(self.right)
                and not set(self.left) & set(self.right)
                and all(g.has_edge(u, v) for u in self.left for v in self.right))

    def to_json(self) -> dict:
        return {"left": list(self.left), "right": list(self.right)}


@dataclass(frozen=True)
class MatchingWitness:
    pairs: Tuple[Tuple[int, int], ...]
    common: Point

    def verify(self, points: Sequence[Point], g: Graph) -> bool:
        used = [v for e in self.pairs for v in e]
        return (len(set(used)) == len(used)
                and all(g.has_edge(u, v) for u, v in self.pairs)
                and all(spanned_box(points[u], points[v]).contains(self.common)
                        for u, v in self.pairs))


def _first_bits(mask: int, k: int) -> Tuple[int, ...]:
    out = []
    for v in bits(mask):
        out.append(v)
        if len(out) == k:
            break
    return tuple(out)


def _find_k22(g: Graph) -> Optional[KttWitness]:
    # A K_{2,2} is two vertices with two common neighbours: look for a repeated wedge.
    # Without a repeat the number of wedges is at most n^2/2, so this is O(n^2) when free.
    seen = {}
    for w in range(g.n):
        nbrs = g.neighbors(w)
        for i, u in enumerate(nbrs):
            for v in nbrs[i + 1:]:
                prev = seen.setdefault((u, v), w)
                if prev != w:
                    return KttWitness((u, v), (prev, w))
    return None


def find_ktt(g: Graph, t: int) -> Optional[KttWitness]:
    """Return a K_{t,t} (disjoint sides, not necessarily induced) or None."""
    if t < 1:
        raise ValueError("t must be positive")
    if t == 1:
        for u in range(g.n):
            if g.adj[u]:
                return KttWitness((u,), (next(bits(g.adj[u])),))
        return None
    if t == 2:
        return _find_k22(g)

    cand = sorted((v for v in range(g.n) if g.degree(v) >= t),
                  key=lambda v: (-g.degree(v), v))

    def extend(chosen: List[int], common: int, start: int) -> Optional[KttWitness]:
        if len(chosen) == t:
            return KttWitness(tuple(sorted(chosen)), _first_bits(common, t))
        for k in range(start, len(cand) - (t - len(chosen)) + 1):
            v = cand[k]
            nxt = common & g.adj[v]
            if nxt.bit_count() >= t:
                found = extend(chosen + [v], nxt, k + 1)
                if found:
                    return found
        return None

    return extend([], (1 << g.n) - 1, 0)


def _edge_boxes(points: Sequence[Point], g: Graph) -> Tuple[List[Tuple[int, int]], List[Box]]:
    if len(points) != g.n:
        raise ValueError("graph and point list disagree on vertex count")
    edges = g.edges()
    return edges, [spanned_box(points[u], points[v]) for u, v in edges]


def matching_common_box(points: Sequence[Point], g: Graph, t: int) -> Optional[MatchingWitness]:
    """Find t vertex-disjoint edges whose spanned boxes have a common point.

    Axis-parallel boxes have a common point iff they pairwise intersect, so this
    is a t-clique search in the graph on edges joining compatible pairs
    (vertex-disjoint with intersecting boxes).
    """
    if t < 1:
        raise ValueError("t must be positive")
    edges, boxes = _edge_boxes(points, g)
    if not edges:
        return None
    if t == 1:
        return MatchingWitness((edges[0],), boxes[0].lo)
    m = len(edges)
    d = len(points[0])
    compat = [0] * m
    for i in range(m):
        a, b = edges[i]
        bi = boxes[i]
        for j in range(i + 1, m):
            c, e = edges[j]
            if a in (c, e) or b in (c, e):
                continue
            bj = boxes[j]
            if all(bi.lo[k] <= bj.hi[k] and bj.lo[k] <= bi.hi[k] for k in range(d)):
                compat[i] |= 1 << j
                compat[j] |= 1 << i

    def grow(chosen: List[int], cand: int) -> Optional[List[int]]:
        if len(chosen) == t:
            return chosen
        if cand.bit_count() < t - len(chosen):
            return None
        for j in bits(cand):
            # only later indices, so each clique is met once
            found = grow(chosen + [j], cand & compat[j] & ~((1 << (j + 1)) - 1))
            if found:
                return found
        return None

    for i in range(m):
        found = grow([i], compat[i] & ~((1 << (i + 1)) - 1))
        if found:
            common = common_intersection([boxes[j] for j in found])
            return MatchingWitness(tuple(edges[j] for j in found), common.lo)
    return None


@dataclass
class ImplicationReport:
    t: int
    matching: Optional[MatchingWitness]
    constructed: Optional[KttWitness]
    ktt: Optional[KttWitness]

    @property
    def holds(self) -> bool:
        return self.matching is None or self.ktt is not None


def ktt_implies_matching_check(points: Sequence[Point], g: Graph, t: int) -> ImplicationReport:
    """Check that a t-matching with a common point forces a K_{t,t}.

    ``g`` must be the dominance comparability graph of ``points`` and the points
    must have pairwise distinct coordinates on every axis; with ties a
    closed-box common point can sit on a face and the implication fails.
    When a matching exists, the K_{t,t} is also built directly from it (lower
    endpoints against upper endpoints) and verified.
    """
    if not in_general_position(points):
        raise ValueError("points must have distinct coordinates on every axis")
    found = matching_common_box(points, g, t)
    ktt = find_ktt(g, t)
    constructed = None
    if found is not None:
        lows, highs = [], []
        for u, v in found.pairs:
            lo, hi = (u, v) if strictly_below(points[u], points[v]) else (v, u)
            lows.append(lo)
            highs.append(hi)
        cand = KttWitness(tuple(lows), tuple(highs))
        if cand.verify(g):
            constructed = cand
        if ktt is None or constructed is None:
            raise ClaimViolation(f"matching {found.pairs} has no accompanying K_{t},{t}")
    return ImplicationReport(t, found, constructed, ktt)
