"""Finite posets, the bipartite poset P(G), and dominance realizers.

A :class:`Poset` stores, for every element, the bitset of elements strictly
above it.  Realizers are checked against strict coordinatewise dominance; the
exact dimension search covers critical pairs with linear extensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import Box, Point, exact, min_gap, point, rank_columns, strictly_below, to_json_number
from .graph import Graph, IncidenceConfig, bits, bipartition_split, general_position_config, incidence_graph


class NestingPresent(ValueError):
    pass


class K22Present(ValueError):
    pass


class Poset:
    """Strict partial order on elements ``0..n-1``; ``up[i]`` is the set strictly above ``i``."""

    def __init__(self, up: Sequence[int], labels: Optional[Sequence[Hashable]] = None):
        self.n = len(up)
        self.up = list(up)
        self.labels = list(labels) if labels is not None else list(range(self.n))
        self.down = [0] * self.n
        for i in range(self.n):
            for j in bits(self.up[i]):
                self.down[j] |= 1 << i

    @classmethod
    def from_relations(cls, n: int, pairs, labels=None) -> "Poset":
        """Transitive closure of the given ``(low, high)`` pairs; raises on cycles."""
        up = [0] * n
        for a, b in pairs:
            up[a] |= 1 << b
        changed = True
        while changed:
            changed = False
            for i in range(n):
                reach = up[i]
                for j in bits(up[i]):
                    reach |= up[j]
                if reach != up[i]:
                    up[i] = reach
                    changed = True
        if any(up[i] >> i & 1 for i in range(n)):
            raise ValueError("relation has a cycle")
        return cls(up, labels)

    def less(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def comparable(self, i: int, j: int) -> bool:
        return self.less(i, j) or self.less(j, i)

    def relation_count(self) -> int:
        return sum(u.bit_count() for u in self.up)

    def comparability_graph(self) -> Graph:
        adj = [self.up[i] | self.down[i] for i in range(self.n)]
        return Graph(self.n, adj, self.labels)

    def covers(self) -> List[Tuple[int, int]]:
        out = []
        for i in range(self.n):
            above = self.up[i]
            for j in bits(above):
                if not (self.down[j] & above):
                    out.append((i, j))
        return out

    def relation_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for i in range(self.n):
            for j in bits(self.up[i]):
                m[i, j] = True
        return m

    def to_json(self) -> dict:
        return {"elements": [str(x) for x in self.labels],
                "covers": [list(c) for c in self.covers()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Poset":
        labels = obj["elements"]
        return cls.from_relations(len(labels), [tuple(c) for c in obj["covers"]], labels)


class BipartitePoset(Poset):
    """P(G): elements ``(v, 0)`` are ``0..n-1``, elements ``(v, 1)`` are ``n..2n-1``.

    ``(u, 0) < (v, 1)`` iff ``u == v`` or ``uv`` is an edge of the base graph.
    """

    def __init__(self, base: Graph):
        n = base.n
        up = [(base.adj[u] | 1 << u) << n for u in range(n)] + [0] * n
        super().__init__(up, [f"{v}:0" for v in range(n)] + [f"{v}:1" for v in range(n)])
        self.base = base

    def element(self, v: int, level: int) -> int:
        return v + level * self.base.n


def build_pg(g: Graph) -> BipartitePoset:
    return BipartitePoset(g)


def dominance_poset(points: Sequence[Point], labels=None) -> Poset:
    """Strict dominance order on a point set."""
    n = len(points)
    up = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and strictly_below(points[i], points[j]):
                up[i] |= 1 << j
    return Poset(up, labels)


def incidence_poset(config: IncidenceConfig) -> Poset:
    """Rectangles below the points they contain; vertex order matches ``incidence_graph``."""
    g = incidence_graph(config)
    p = len(config.points)
    up = [0] * g.n
    for j in range(len(config.rects)):
        up[p + j] = g.adj[p + j]
    return Poset(up, [f"p{i}" for i in range(p)] + [f"r{j}" for j in range(len(config.rects))])


def induced_half(g: Graph, t: int = 2) -> Tuple[Graph, int]:
    """Comparability graph of P(G) induced on A-bottoms and B-tops for a half-cut (A, B).

    Vertices are ``(a, 0)`` for ``a`` in A, then ``(b, 1)`` for ``b`` in B.
    It has at least ``e(G)/2`` edges, and is K_{t,t}-free whenever G is.
    """
    a, b = bipartition_split(g)
    pg = build_pg(g)
    verts = [pg.element(v, 0) for v in a] + [pg.element(v, 1) for v in b]
    half = pg.comparability_graph().induced(verts)
    count = half.edge_count()
    assert 2 * count >= g.edge_count()
    return half, count


@dataclass
class EmbeddingCert:
    dim: int
    map: Dict[str, Point]

    def __post_init__(self):
        self.map = {str(k): point(v) for k, v in self.map.items()}
        if any(len(v) != self.dim for v in self.map.values()):
            raise ValueError(f"certificate points must have dimension {self.dim}")

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "map": {k: [to_json_number(c) for c in v] for k, v in self.map.items()}}

    @classmethod
    def from_json(cls, obj: dict) -> "EmbeddingCert":
        return cls(obj["dim"], {k: tuple(exact(c) for c in v) for k, v in obj["map"].items()})


def _ranked_coords(points: Sequence[Point], dim: int) -> np.ndarray:
    return np.stack([rank_columns([[p[k] for p in points]])[0] for k in range(dim)], axis=1) \
        if points else np.zeros((0, dim), dtype=np.int64)


def check_realizer(p: Poset, cert: EmbeddingCert, chunk: int = 512
                   ) -> Tuple[bool, Optional[Tuple[Hashable, Hashable]]]:
    """True iff ``i < j`` in ``p`` exactly when ``cert[i]`` is strictly dominated by ``cert[j]``.

    On failure the violating ordered pair of labels is returned.
    """
    keys = [str(x) for x in p.labels]
    missing = [k for k in keys if k not in cert.map]
    if missing:
        raise KeyError(f"certificate lacks elements {missing[:5]}")
    coords = _ranked_coords([cert.map[k] for k in keys], cert.dim)
    rel = p.relation_matrix()
    for s in range(0, p.n, chunk):
        blk = coords[s:s + chunk]
        dom = np.all(blk[:, None, :] < coords[None, :, :], axis=2)
        bad = np.argwhere(dom != rel[s:s + chunk])
        if bad.size:
            i, j = bad[0]
            return False, (p.labels[s + i], p.labels[j])
    return True, None


def _critical_pairs(p: Poset) -> List[Tuple[int, int]]:
    # (a, b) critical: incomparable, everything below a is below b, everything above b is above a.
    out = []
    for a in range(p.n):
        for b in range(p.n):
            if a == b or p.comparable(a, b):
                continue
            if p.down[a] & ~p.down[b] == 0 and p.up[b] & ~p.up[a] == 0:
                out.append((a, b))
    return out


def _linear_extension(n: int, up: Sequence[int]) -> List[int]:
    indeg = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            indeg[j] += 1
    order, ready = [], [i for i in range(n) if indeg[i] == 0]
    while ready:
        ready.sort()
        v = ready.pop(0)
        order.append(v)
        for j in bits(up[v]):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    return order


def _add_and_close(up: List[int], down: List[int], lo: int, hi: int) -> None:
    """Add lo < hi to a transitively closed order (up/down bitsets), keeping it closed."""
    below = down[lo] | 1 << lo
    above = up[hi] | 1 << hi
    for x in bits(below):
        up[x] |= above
    for y in bits(above):
        down[y] |= below


def realizer(p: Poset, d: int) -> Optional[List[List[int]]]:
    """``d`` linear extensions whose intersection is ``p``, or None if none exist.

    Each critical pair ``(a, b)`` must be put as ``b < a`` in some extension;
    the search assigns critical pairs to extensions, keeping each extension's
    forced order acyclic.
    """
    if p.n == 0:
        return [[] for _ in range(d)]
    crit = _critical_pairs(p)
    if crit and d == 1:
        return None
    state_up = [list(p.up) for _ in range(d)]
    state_down = [list(p.down) for _ in range(d)]

    def place(k: int, used: int) -> bool:
        if k == len(crit):
            return True
        a, b = crit[k]
        if any(state_up[c][b] >> a & 1 for c in range(used)):
            return place(k + 1, used)
        for c in range(min(used + 1, d)):
            if state_up[c][a] >> b & 1:
                continue  # a < b already forced there
            saved_up, saved_down = list(state_up[c]), list(state_down[c])
            _add_and_close(state_up[c], state_down[c], b, a)
            if place(k + 1, max(used, c + 1)):
                return True
            state_up[c], state_down[c] = saved_up, saved_down
        return False

    if not place(0, 0):
        return None
    return [_linear_extension(p.n, state_up[c]) for c in range(d)]


def poset_dimension_bruteforce(p: Poset, dmax: int) -> Optional[int]:
    """Smallest ``d <= dmax`` admitting a realizer, or None (meaning ``> dmax``)."""
    for d in range(1, dmax + 1):
        if realizer(p, d) is not None:
            return d
    return None


def realizer_cert(p: Poset, extensions: Sequence[Sequence[int]]) -> EmbeddingCert:
    """Embed each element at its positions in the given linear extensions."""
    pos = [{v: i for i, v in enumerate(ext)} for ext in extensions]
    return EmbeddingCert(len(extensions),
                         {str(p.labels[v]): tuple(q[v] for q in pos) for v in range(p.n)})


def _rect_nested_in(r: Box, q: Box) -> bool:
    return q.contains_box(r)


def nested_rects(config: IncidenceConfig) -> List[int]:
    """Indices of rectangles contained in another one (the later of two equal ones)."""
    rs = config.rects
    out = []
    for j, r in enumerate(rs):
        for k, q in enumerate(rs):
            if k != j and _rect_nested_in(r, q) and (r != q or j > k):
                out.append(j)
                break
    return out


def phi_point(p: Sequence) -> Point:
    x, y = p
    return (x, -x, y, -y)


def phi_rect(r: Box) -> Point:
    (a, c), (b, d) = r.lo, r.hi
    return (a, -b, c, -d)


def phi_embedding(config: IncidenceConfig) -> EmbeddingCert:
    """Four-dimensional realizer of the point-rectangle incidence poset.

    A point ``(x, y)`` goes to ``(x, -x, y, -y)`` and ``[a, b] x [c, d]`` goes to
    ``(a, -b, c, -d)``; then ``p`` lies in ``S`` iff ``phi(S) < phi(p)``
    strictly.  Needs no rectangle inside another and no point on the boundary
    of a rectangle containing it (see :func:`general_position_config`).
    """
    nested = nested_rects(config)
    if nested:
        raise NestingPresent(f"rectangles {nested[:5]} lie inside others")
    for i, q in enumerate(config.points):
        for j, r in enumerate(config.rects):
            if r.contains(q) and not r.interior_contains(q):
                raise ValueError(f"point {i} lies on the boundary of rectangle {j}")
    m = {f"p{i}": phi_point(q) for i, q in enumerate(config.points)}
    m.update({f"r{j}": phi_rect(r) for j, r in enumerate(config.rects)})
    return EmbeddingCert(4, m)


def eliminate_nesting(config: IncidenceConfig) -> IncidenceConfig:
    """Replace every nested rectangle by a long thin one with the same incidences.

    A nested rectangle holds at most one point when the incidence graph is
    K_{2,2}-free.  It becomes a horizontal slab through its point (or through
    a fresh empty level) reaching past every other rectangle, so it neither
    contains nor is contained in anything.  Configurations not in general
    position are first perturbed with :func:`general_position_config`.
    """
    nested = nested_rects(config)
    if not nested:
        return config
    g = incidence_graph(config)
    npts = len(config.points)
    for j in nested:
        if g.degree(npts + j) >= 2:
            raise K22Present(f"nested rectangle {j} contains {g.degree(npts + j)} points")
    xs = [q[0] for q in config.points] + [c for r in config.rects for c in (r.lo[0], r.hi[0])]
    ys = [q[1] for q in config.points] + [c for r in config.rects for c in (r.lo[1], r.hi[1])]
    if len(set(xs)) < len(xs) or len(set(ys)) < len(ys):
        return eliminate_nesting(general_position_config(config))
    eps = Fraction(min_gap(ys) or 1) / 3
    xmin, xmax, ymax = min(xs), max(xs), max(ys)
    rects = list(config.rects)
    for k, j in enumerate(nested):
        pts = list(bits(g.adj[npts + j]))
        # wider slabs are thinner, so two slabs through one level never nest
        x0, x1 = exact(xmin - 1 - k), exact(xmax + 1 + k)
        if pts:
            y, h = config.points[pts[0]][1], eps / (k + 1)
        else:
            y, h = ymax + 1 + k, Fraction(1, 4)
        rects[j] = Box((x0, exact(y - h)), (x1, exact(y + h)))
    return IncidenceConfig(config.points, tuple(rects))
