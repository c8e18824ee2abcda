"""Separation-dimension certificates: verification and small exact search.

An embedding certifies separation dimension ``<= d`` when any two
vertex-disjoint edges span disjoint closed boxes.  Touching boxes count as
intersecting.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .forbidden import find_ktt
from .geometry import Point, in_general_position, rank_columns
from .graph import Graph, IncidenceConfig, incidence_graph
from .poset import EmbeddingCert, K22Present, dominance_poset, phi_embedding

# Same wire format and validation as EmbeddingCert; keys are vertex indices as strings.
SepCert = EmbeddingCert

Violation = Tuple[Tuple[int, int], Tuple[int, int]]


def _vertex_coords(g: Graph, cert: SepCert) -> np.ndarray:
    keys = [str(v) for v in range(g.n)]
    missing = [k for k in keys if k not in cert.map]
    if missing:
        raise KeyError(f"certificate lacks vertices {missing[:5]}")
    if g.n == 0:
        return np.zeros((0, cert.dim), dtype=np.int64)
    return np.stack([rank_columns([[cert.map[k][i] for k in keys]])[0]
                     for i in range(cert.dim)], axis=1)


def check_certificate(g: Graph, cert: SepCert, chunk: int = 256
                      ) -> Tuple[bool, Optional[Violation]]:
    """Scan all pairs of vertex-disjoint edges; return the first pair whose boxes meet."""
    coords = _vertex_coords(g, cert)
    edges = np.array(g.edges(), dtype=np.int64).reshape(-1, 2)
    m = len(edges)
    if m < 2:
        return True, None
    u, v = edges[:, 0], edges[:, 1]
    lo = np.minimum(coords[u], coords[v])
    hi = np.maximum(coords[u], coords[v])
    for s in range(0, m, chunk):
        e = slice(s, min(s + chunk, m))
        meet = np.all((lo[e, None, :] <= hi[None, :, :]) & (lo[None, :, :] <= hi[e, None, :]), axis=2)
        disjoint = ((u[e, None] != u[None, :]) & (u[e, None] != v[None, :])
                    & (v[e, None] != u[None, :]) & (v[e, None] != v[None, :]))
        bad = np.argwhere(meet & disjoint)
        if bad.size:
            i, j = bad[0]
            return False, (tuple(edges[s + i].tolist()), tuple(edges[j].tolist()))
    return True, None


def _disjoint_edge_pairs(edges: Sequence[Tuple[int, int]]) -> List[Tuple[int, int]]:
    return [(i, j) for i, j in itertools.combinations(range(len(edges)), 2)
            if not set(edges[i]) & set(edges[j])]


@dataclass
class SepSearchResult:
    cert: Optional[SepCert]
    exhaustive: bool

    @property
    def found(self) -> bool:
        return self.cert is not None


def _axis_candidates(n: int, gridsize: int) -> np.ndarray:
    if gridsize >= n:
        return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    return np.array(list(itertools.product(range(gridsize), repeat=n)), dtype=np.int64).reshape(-1, n)


def _separated_masks(cands: np.ndarray, edges, pairs) -> np.ndarray:
    """Boolean matrix: row per candidate axis ordering, column per disjoint edge pair it separates."""
    out = np.zeros((len(cands), len(pairs)), dtype=bool)
    for k, (i, j) in enumerate(pairs):
        a, b = edges[i]
        c, d = edges[j]
        lo1 = np.minimum(cands[:, a], cands[:, b])
        hi1 = np.maximum(cands[:, a], cands[:, b])
        lo2 = np.minimum(cands[:, c], cands[:, d])
        hi2 = np.maximum(cands[:, c], cands[:, d])
        out[:, k] = (hi1 < lo2) | (hi2 < lo1)
    return out


def _cover(rows: np.ndarray, need: np.ndarray, depth: int, start: int) -> Optional[List[int]]:
    """Indices of ``depth`` rows (non-decreasing, from ``start``) whose union covers ``need``."""
    hit = np.all((rows[start:] & need) == need, axis=1)
    if hit.any():
        return [start + int(np.argmax(hit))]
    if depth == 1:
        return None
    useful = np.flatnonzero(np.any(rows[start:] & need, axis=1)) + start
    for r in useful.tolist():
        rest = _cover(rows, need & ~rows[r], depth - 1, r)
        if rest is not None:
            return [r] + rest
    return None


EXHAUSTIVE_LIMIT = 50_000


def sepdim_upper_search(g: Graph, d: int, gridsize: int, restarts: int = 200,
                        seed: int = 0) -> SepSearchResult:
    """Look for a separation certificate on the integer grid ``range(gridsize) ** d``.

    When the per-axis candidate space (all orderings, or all grid maps when
    ``gridsize < n``) is small the search is exhaustive, and a ``None`` result
    then proves the separation dimension on this grid exceeds ``d``.  Otherwise
    it runs randomized local search and a miss proves nothing.
    """
    n = g.n
    edges = g.edges()
    pairs = _disjoint_edge_pairs(edges)
    if not pairs:
        cert = SepCert(d, {str(v): (0,) * d for v in range(n)})
        return SepSearchResult(cert, True)
    size = math.factorial(n) if gridsize >= n else gridsize ** n
    if size <= EXHAUSTIVE_LIMIT:
        cands = _axis_candidates(n, gridsize)
        sep = _separated_masks(cands, edges, pairs)
        rows, first = np.unique(np.packbits(sep, axis=1), axis=0, return_index=True)
        need = np.packbits(np.ones(len(pairs), dtype=bool))
        combo = _cover(rows, need, d, 0)
        if combo is not None:
            axes = [cands[first[c]] for c in combo]
            axes += [axes[-1]] * (d - len(axes))
            cert = SepCert(d, {str(v): tuple(int(ax[v]) for ax in axes) for v in range(n)})
            return SepSearchResult(cert, True)
        return SepSearchResult(None, True)

    # randomized local search on the number of meeting pairs
    rng = random.Random(seed)
    E = np.array(edges, dtype=np.int64)
    pi = np.array([i for i, _ in pairs], dtype=np.int64)
    pj = np.array([j for _, j in pairs], dtype=np.int64)

    def meeting(coords):
        lo = np.minimum(coords[E[:, 0]], coords[E[:, 1]])
        hi = np.maximum(coords[E[:, 0]], coords[E[:, 1]])
        return np.flatnonzero(np.all((lo[pi] <= hi[pj]) & (lo[pj] <= hi[pi]), axis=1))

    for _ in range(restarts):
        coords = np.array([[rng.randrange(gridsize) for _ in range(d)] for _ in range(n)], dtype=np.int64)
        bad = meeting(coords)
        for _ in range(50 * n):
            if not bad.size:
                cert = SepCert(d, {str(v): tuple(int(c) for c in coords[v]) for v in range(n)})
                return SepSearchResult(cert, False)
            k = int(bad[rng.randrange(bad.size)])
            e = edges[pairs[k][rng.randrange(2)]]
            v, axis = e[rng.randrange(2)], rng.randrange(d)
            old = coords[v, axis]
            coords[v, axis] = rng.randrange(gridsize)
            trial = meeting(coords)
            if trial.size <= bad.size:
                bad = trial
            else:
                coords[v, axis] = old
    return SepSearchResult(None, False)


def poset_points_certificate(points: Sequence[Point]) -> Tuple[Graph, SepCert]:
    """Dominance comparability graph of ``points`` with the identity embedding as certificate.

    The graph must be K_{2,2}-free and the points must have distinct
    coordinates on each axis.
    """
    if not in_general_position(points):
        raise ValueError("points must have distinct coordinates on every axis")
    g = dominance_poset(points).comparability_graph()
    w = find_ktt(g, 2)
    if w is not None:
        raise K22Present(f"comparability graph contains K_2,2 {w.left}x{w.right}")
    d = len(points[0]) if points else 1
    return g, SepCert(d, {str(v): tuple(p) for v, p in enumerate(points)})


def phi_certificate(config: IncidenceConfig) -> Tuple[Graph, SepCert]:
    """Incidence graph with the phi realizer re-keyed by vertex index.

    For a K_{2,2}-free nesting-free configuration this is a separation
    certificate in dimension 4.
    """
    phi = phi_embedding(config)
    npts = len(config.points)
    m = {str(i): phi.map[f"p{i}"] for i in range(npts)}
    m.update({str(npts + j): phi.map[f"r{j}"] for j in range(len(config.rects))})
    return incidence_graph(config), SepCert(4, m)
