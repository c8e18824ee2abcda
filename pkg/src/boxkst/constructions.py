"""Generators for the explicit constructions.

* :func:`lift_incidence_to_boxes3d` turns a planar point-rectangle
  configuration into boxes in R^3 with the same (bipartite) intersection graph.
* :func:`lines3d_generator` lifts the grid point-line configuration with
  about ``n^(4/3)`` incidences to a K_{2,2}-free family of lines in R^3.
* :func:`dyadic_k22free_generator` builds dense K_{2,2}-free point-rectangle
  configurations from the bit-reversal point set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .forbidden import find_ktt
from .geometry import Box, Point, exact, min_gap, point
from .graph import BoxFamily, Graph, IncidenceConfig, incidence_graph


class GeneratorBroken(RuntimeError):
    pass


def z_slabs(n: int) -> List[Tuple[Fraction, Fraction]]:
    """``n`` closed intervals ``[j/n, j/n + 1/(2n)]``, pairwise disjoint, inside ``[0, 1)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return [(exact(Fraction(j, n)), exact(Fraction(j, n) + Fraction(1, 2 * n))) for j in range(n)]


def lift_incidence_to_boxes3d(config: IncidenceConfig) -> BoxFamily:
    """Points become thin vertical columns, rectangles become disjoint horizontal slabs.

    Box ``i`` is the column over point ``i`` and box ``len(points) + j`` the slab
    over rectangle ``j``, matching the vertex order of ``incidence_graph``.  The
    column half-width is a quarter of the smallest nonzero gap between any two
    coordinate values on an axis, so a column meets a rectangle exactly when
    the point lies in it, and distinct columns never meet.
    """
    if len(set(config.points)) != len(config.points):
        raise ValueError("repeated points cannot be lifted to disjoint columns")
    gaps = []
    for k in range(2):
        vals = [p[k] for p in config.points] + [c for r in config.rects for c in (r.lo[k], r.hi[k])]
        gap = min_gap(vals)
        if gap is not None:
            gaps.append(gap)
    s = Fraction(min(gaps) if gaps else 1) / 4
    boxes = [Box((exact(x - s), exact(y - s), 0), (exact(x + s), exact(y + s), 1))
             for x, y in config.points]
    for r, (z0, z1) in zip(config.rects, z_slabs(max(len(config.rects), 1))):
        boxes.append(Box(r.lo + (z0,), r.hi + (z1,)))
    return BoxFamily(3, tuple(boxes))


@dataclass(frozen=True)
class LineConfig3D:
    lines: Tuple[Tuple[Point, Point], ...]  # (through-point, direction)

    def __post_init__(self):
        lines = tuple((point(p), point(v)) for p, v in self.lines)
        for p, v in lines:
            if len(p) != 3 or len(v) != 3 or all(c == 0 for c in v):
                raise ValueError("lines need a 3D point and a nonzero 3D direction")
        object.__setattr__(self, "lines", lines)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def lines_intersect(l1: Tuple[Point, Point], l2: Tuple[Point, Point]) -> bool:
    """Exact test whether two lines in R^3 share a point (identical lines do)."""
    (p, u), (q, v) = l1, l2
    w = _sub(q, p)
    n = _cross(u, v)
    if all(c == 0 for c in n):
        # parallel: they meet iff q lies on the first line
        return all(c == 0 for c in _cross(w, u))
    return _dot(w, n) == 0


def line_point_at(l: Tuple[Point, Point], s) -> Point:
    p, u = l
    return tuple(exact(a + s * b) for a, b in zip(p, u))


def lines_intersection_graph(config: LineConfig3D) -> Graph:
    ls = config.lines
    n = len(ls)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if lines_intersect(ls[i], ls[j])]
    return Graph.from_edges(n, edges)


def grid_point_line_config(k: int):
    """Points ``[1..k] x [1..2k^2]`` and lines ``y = m x + b`` with ``m in [1..k]``, ``b in [1..k^2]``.

    Every line passes through exactly ``k`` grid points.
    """
    if k < 1:
        raise ValueError("k must be positive")
    pts = [(x, y) for x in range(1, k + 1) for y in range(1, 2 * k * k + 1)]
    lines = [(m, b) for m in range(1, k + 1) for b in range(1, k * k + 1)]
    return pts, lines


def lines3d_generator(k: int) -> Tuple[LineConfig3D, Graph]:
    """Vertical lines over grid points plus lifted plane lines at distinct heights.

    Plane line ``y = m x + b`` (index ``j``) becomes the line through
    ``(0, b, j + 1)`` with direction ``(1, m, 0)``.  The lifted lines are
    horizontal at distinct heights, hence pairwise disjoint, and the vertical
    line over ``(x, y)`` meets it iff ``y = m x + b``.  Vertices: grid points
    first, then plane lines.
    """
    pts, plane_lines = grid_point_line_config(k)
    lines = [((x, y, 0), (0, 0, 1)) for x, y in pts]
    lines += [((0, b, j + 1), (1, m, 0)) for j, (m, b) in enumerate(plane_lines)]
    config = LineConfig3D(tuple(lines))
    npts = len(pts)
    # the pairs that can meet are column/lifted-line pairs; other pairs are disjoint by construction
    edges = [(i, npts + j)
             for j in range(len(plane_lines))
             for i in range(npts)
             if lines_intersect(config.lines[i], config.lines[npts + j])]
    return config, Graph.from_edges(len(lines), edges)


@lru_cache(maxsize=None)
def _best_windows(m: int) -> Tuple[int, ...]:
    """Partition of ``m`` bits into windows maximising ``w / (1 + sum 2^-r)``.

    That ratio is edges per vertex of the dyadic configuration.  Ties go to
    the partition with fewer rectangles, then to the lexicographically larger.
    """
    best, best_key = None, None

    def parts(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for r in range(min(rest, cap), 0, -1):
            for tail in parts(rest - r, r):
                yield (r,) + tail

    for p in parts(m, m):
        rects = sum(Fraction(1, 2 ** r) for r in p)
        key = (Fraction(len(p)) / (1 + rects), -rects, p)
        if best_key is None or key > best_key:
            best, best_key = p, key
    return best


def bit_reverse(i: int, m: int) -> int:
    return int(format(i, f"0{m}b")[::-1], 2) if m else 0


def dyadic_k22free_generator(m: int, windows: Optional[Sequence[int]] = None,
                             check: bool = True) -> IncidenceConfig:
    """Dense K_{2,2}-free point-rectangle configuration at scale ``m``.

    Points are ``(i, rev_m(i))`` for ``i < 2^m`` (bit reversal).  The ``m`` bit
    positions are cut into consecutive windows; for a window of length ``r``
    starting at bit ``s`` every rectangle fixes the top ``s`` bits of x and
    the top ``m - s - r`` bits of y, so it holds exactly ``2^r`` points and
    the rectangles of one window tile the points.  Rectangles from different
    windows share at most one point, which makes the incidence graph
    K_{2,2}-free.  Each window adds ``2^m`` incidences and ``2^(m-r)``
    rectangles.  Rectangle sides sit at half-integers, so no point is on a
    boundary and no rectangle contains another.
    """
    if m < 1:
        raise ValueError("m must be positive")
    ws = tuple(windows) if windows is not None else _best_windows(m)
    if sum(ws) > m or any(r < 1 for r in ws):
        raise ValueError(f"windows {ws} do not fit in {m} bits")
    size = 1 << m
    half = Fraction(1, 2)
    points = tuple((i, bit_reverse(i, m)) for i in range(size))
    rects = []
    s = 0
    for r in ws:
        xbits, ybits = s, m - s - r
        xw, yw = 1 << (m - xbits), 1 << (m - ybits)
        for px in range(1 << xbits):
            for py in range(1 << ybits):
                rects.append(Box((exact(px * xw - half), exact(py * yw - half)),
                                 (exact((px + 1) * xw - half), exact((py + 1) * yw - half))))
        s += r
    config = IncidenceConfig(points, tuple(rects))
    if check:
        w = find_ktt(incidence_graph(config), 2)
        if w is not None:
            raise GeneratorBroken(f"K_2,2 found at m={m}: {w}")
    return config
