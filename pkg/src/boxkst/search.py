"""Brute-force oracles and desk-scale extremal search.

The ``bruteforce_*`` functions share no code with the fast paths they check:
plain adjacency sets instead of bitsets, explicit subset enumeration, and
common points found by trying candidate corners rather than by the
max-of-lows rule.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .forbidden import find_ktt
from .geometry import Box
from .graph import BoxFamily, Graph, intersection_graph


def _adjacency_sets(g: Graph) -> List[set]:
    return [{j for j in range(g.n) if g.adj[i] >> j & 1} for i in range(g.n)]


def bruteforce_ktt(g: Graph, t: int) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """First (S, T) in lexicographic order with every S-T pair adjacent."""
    nbrs = _adjacency_sets(g)
    for left in itertools.combinations(range(g.n), t):
        common = [v for v in range(g.n)
                  if v not in left and all(v in nbrs[u] for u in left)]
        if len(common) >= t:
            return left, tuple(common[:t])
    return None


def _span(p, q):
    return [(min(a, b), max(a, b)) for a, b in zip(p, q)]


def _common_point(spans: Sequence[List[Tuple]]) -> Optional[tuple]:
    """Try every combination of interval left ends as a candidate common point."""
    d = len(spans[0])
    cands = [sorted({s[k][0] for s in spans}) for k in range(d)]
    for z in itertools.product(*cands):
        if all(lo <= z[k] <= hi for s in spans for k, (lo, hi) in enumerate(s)):
            return z
    return None


def bruteforce_matching_box(points, g: Graph, t: int):
    """First t-subset of edges (lexicographic) that is a matching with a common point."""
    edges = [(i, j) for i in range(g.n) for j in range(i + 1, g.n) if g.adj[i] >> j & 1]
    for combo in itertools.combinations(edges, t):
        used = [v for e in combo for v in e]
        if len(set(used)) < len(used):
            continue
        z = _common_point([_span(points[u], points[v]) for u, v in combo])
        if z is not None:
            return combo, z
    return None


def bruteforce_sepcert_check(g: Graph, cert) -> Tuple[bool, Optional[tuple]]:
    pos = {int(k): v for k, v in cert.map.items()}
    edges = [(i, j) for i in range(g.n) for j in range(i + 1, g.n) if g.adj[i] >> j & 1]
    for e1, e2 in itertools.combinations(edges, 2):
        if set(e1) & set(e2):
            continue
        if _common_point([_span(pos[e1[0]], pos[e1[1]]), _span(pos[e2[0]], pos[e2[1]])]) is not None:
            return False, (e1, e2)
    return True, None


def bruteforce_intersection_graph(boxes: Sequence[Box]) -> Graph:
    edges = []
    for i, j in itertools.combinations(range(len(boxes)), 2):
        a, b = boxes[i], boxes[j]
        if _common_point([list(zip(a.lo, a.hi)), list(zip(b.lo, b.hi))]) is not None:
            edges.append((i, j))
    return Graph.from_edges(len(boxes), edges)


@dataclass
class ExtremalRecord:
    n: int
    d: int
    t: int
    gridsize: int
    max_edges: int
    witness: List[dict]
    exhaustive: bool
    seed: Optional[int] = None
    searched: int = 0

    def witness_family(self) -> BoxFamily:
        return BoxFamily.from_json({"dim": self.d, "boxes": self.witness})

    def to_json(self) -> dict:
        return asdict(self)


def append_record(path, record: ExtremalRecord) -> None:
    """Append one record as a JSON line."""
    with open(path, "a") as fh:
        fh.write(json.dumps(record.to_json(), sort_keys=True) + "\n")


def _grid_intervals(gridsize: int) -> List[Tuple[int, int]]:
    return [(a, b) for a in range(gridsize) for b in range(a, gridsize)]


def _ktt_free_table(n: int, t: int, pairs) -> np.ndarray:
    """``free[mask]`` for every graph on ``n`` vertices encoded over ``pairs``."""
    size = 1 << len(pairs)
    free = np.zeros(size, dtype=bool)
    for mask in range(size):
        g = Graph.from_edges(n, [pairs[k] for k in range(len(pairs)) if mask >> k & 1])
        free[mask] = find_ktt(g, t) is None
    return free


EXHAUSTIVE_N, EXHAUSTIVE_D, EXHAUSTIVE_GRID = 6, 2, 4


def max_edges_ktt_free_boxes(n: int, d: int, t: int, gridsize: int, exhaustive: bool = True,
                             seed: int = 0, steps: int = 20_000) -> ExtremalRecord:
    """Maximum edge count of a K_{t,t}-free intersection graph of ``n`` boxes on a grid.

    Exhaustive mode enumerates every assignment of grid intervals per axis
    (each axis gives an interval graph; the box graph is their intersection)
    and is allowed for ``n <= 6``, ``d <= 2``, ``gridsize <= 4``.  Otherwise a
    seeded hill climb is run and the result is only a lower bound.
    """
    if exhaustive and (n > EXHAUSTIVE_N or d > EXHAUSTIVE_D or gridsize > EXHAUSTIVE_GRID):
        raise ValueError("exhaustive mode is limited to n <= 6, d <= 2, gridsize <= 4")
    if exhaustive:
        return _exhaustive(n, d, t, gridsize)
    return _hill_climb(n, d, t, gridsize, seed, steps)


def _exhaustive(n, d, t, gridsize) -> ExtremalRecord:
    ivs = _grid_intervals(gridsize)
    pairs = list(itertools.combinations(range(n), 2))
    meets = np.array([[a[0] <= b[1] and b[0] <= a[1] for b in ivs] for a in ivs])
    assign = np.array(list(itertools.product(range(len(ivs)), repeat=n)), dtype=np.int64).reshape(-1, n)
    masks = np.zeros(len(assign), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        masks |= meets[assign[:, i], assign[:, j]].astype(np.int64) << k
    axis_masks, first = np.unique(masks, return_index=True)
    free = _ktt_free_table(n, t, pairs)
    popcount = np.array([bin(m).count("1") for m in range(1 << len(pairs))])
    if d == 1:
        score = np.where(free[axis_masks], popcount[axis_masks], -1)
        k = int(np.argmax(score))
        best, rows = int(score[k]), [assign[first[k]]]
    else:
        # chunked over the first axis; the pairwise table would not fit in memory
        best, rows = -1, None
        for s in range(0, len(axis_masks), 512):
            combined = axis_masks[s:s + 512, None] & axis_masks[None, :]
            score = np.where(free[combined], popcount[combined], -1)
            k = int(np.argmax(score))
            if score.flat[k] > best:
                i, j = divmod(k, len(axis_masks))
                best, rows = int(score.flat[k]), [assign[first[s + i]], assign[first[j]]]
    witness = [Box(tuple(ivs[rows[k][v]][0] for k in range(d)),
                   tuple(ivs[rows[k][v]][1] for k in range(d))).to_json() for v in range(n)]
    return ExtremalRecord(n, d, t, gridsize, best, witness, True, None, int(len(assign)) ** d)


def _hill_climb(n, d, t, gridsize, seed, steps) -> ExtremalRecord:
    rng = random.Random(seed)

    def rand_box():
        lo, hi = [], []
        for _ in range(d):
            a, b = sorted((rng.randrange(gridsize), rng.randrange(gridsize)))
            lo.append(a)
            hi.append(b)
        return Box(tuple(lo), tuple(hi))

    # start from pairwise-disjoint unit cells where possible, which is always K_{t,t}-free
    boxes = [Box((2 * i,) * d, (2 * i,) * d) if 2 * i < gridsize else rand_box() for i in range(n)]
    fam = BoxFamily(d, tuple(boxes))
    g = intersection_graph(fam)
    while find_ktt(g, t) is not None:
        boxes = [rand_box() for _ in range(n)]
        g = intersection_graph(BoxFamily(d, tuple(boxes)))
    best_e, best = g.edge_count(), list(boxes)
    cur_e = best_e
    for _ in range(steps):
        i = rng.randrange(n)
        trial = list(boxes)
        trial[i] = rand_box()
        tg = intersection_graph(BoxFamily(d, tuple(trial)))
        te = tg.edge_count()
        if te >= cur_e and find_ktt(tg, t) is None:
            boxes, cur_e = trial, te
            if te > best_e:
                best_e, best = te, list(trial)
    return ExtremalRecord(n, d, t, gridsize, best_e, [b.to_json() for b in best], False, seed, steps)


def random_matching_free_instance(n: int, d: int, t: int, rng: random.Random,
                                  attempts: Optional[int] = None):
    """Random points in general position with a greedily grown graph that has no
    t-matching of edges with a common point in their spanned boxes.

    Returns ``(points, graph)``; coordinates are random permutations of ``range(n)``.
    """
    perms = [rng.sample(range(n), n) for _ in range(d)]
    points = [tuple(perms[k][i] for k in range(d)) for i in range(n)]
    P = np.array(points, dtype=np.int64).reshape(n, d)
    attempts = attempts if attempts is not None else 4 * n
    U = np.empty(attempts, dtype=np.int64)
    V = np.empty(attempts, dtype=np.int64)
    lo = np.empty((attempts, d), dtype=np.int64)
    hi = np.empty((attempts, d), dtype=np.int64)
    m = 0
    adj = [0] * n
    for _ in range(attempts):
        u, v = rng.sample(range(n), 2)
        if adj[u] >> v & 1:
            continue
        blo, bhi = np.minimum(P[u], P[v]), np.maximum(P[u], P[v])
        if m:
            ok = ((U[:m] != u) & (U[:m] != v) & (V[:m] != u) & (V[:m] != v)
                  & np.all((lo[:m] <= bhi) & (blo <= hi[:m]), axis=1))
            cand = np.flatnonzero(ok)
            if t == 2 and cand.size:
                continue
            if t > 2 and cand.size >= t - 1 and _has_compatible_clique(cand, U, V, lo, hi, t - 1):
                continue
        U[m], V[m], lo[m], hi[m] = u, v, blo, bhi
        m += 1
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return points, Graph(n, adj)


def _has_compatible_clique(cand, U, V, lo, hi, k) -> bool:
    """Whether ``k`` of the candidate edges are pairwise vertex-disjoint with meeting boxes."""
    cu, cv, clo, chi = U[cand], V[cand], lo[cand], hi[cand]
    disjoint = ((cu[:, None] != cu[None, :]) & (cu[:, None] != cv[None, :])
                & (cv[:, None] != cu[None, :]) & (cv[:, None] != cv[None, :]))
    meet = np.all((clo[:, None, :] <= chi[None, :, :]) & (clo[None, :, :] <= chi[:, None, :]), axis=2)
    comp = disjoint & meet
    if k == 1:
        return True
    if k == 2:
        return bool(comp.any())
    m = len(cand)
    rows = [int.from_bytes(np.packbits(comp[i], bitorder="little").tobytes(), "little") for i in range(m)]

    def grow(size, allowed):
        if size == k:
            return True
        while allowed:
            j = allowed.bit_length() - 1
            allowed &= ~(1 << j)
            if grow(size + 1, allowed & rows[j]):
                return True
        return False

    return grow(0, (1 << m) - 1)
