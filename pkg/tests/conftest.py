import random
from fractions import Fraction

import pytest

from boxkst.geometry import Box
from boxkst.graph import BoxFamily, Graph, IncidenceConfig

ACCEPTANCE_LINES = []


def record_line(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20240601)


def random_box(rng, d, grid=10, frac=False):
    lo, hi = [], []
    for _ in range(d):
        a, b = sorted((rng.randint(0, grid), rng.randint(0, grid)))
        if frac and rng.random() < 0.3:
            b = b + Fraction(rng.randint(0, 3), 4)
        lo.append(a)
        hi.append(b)
    return Box(tuple(lo), tuple(hi))


def random_family(rng, n, d, grid=10, frac=False):
    return BoxFamily(d, tuple(random_box(rng, d, grid, frac) for _ in range(n)))


def random_k22free_graph(rng, n, attempts=None):
    """Greedy: add a random edge unless it closes a 4-cycle."""
    adj = [0] * n
    for _ in range(attempts if attempts is not None else 3 * n):
        u, v = rng.sample(range(n), 2)
        if adj[u] >> v & 1:
            continue
        nu = adj[u] & ~(1 << v)
        nv = adj[v] & ~(1 << u)
        closes = False
        a = nu
        while a:
            low = a & -a
            x = low.bit_length() - 1
            if adj[x] & nv & ~(1 << x):
                closes = True
                break
            a ^= low
        if not closes:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return Graph(n, adj)


def random_graph(rng, n, p):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def general_position_points(rng, n, d):
    perms = [rng.sample(range(n), n) for _ in range(d)]
    return [tuple(perms[k][i] for k in range(d)) for i in range(n)]


def random_nesting_free_config(rng, npts, nrects, grid=40):
    """Points and rectangles on distinct odd/even coordinates; nested rectangles are dropped."""
    xs = rng.sample(range(1, 4 * grid, 2), npts)
    ys = rng.sample(range(1, 4 * grid, 2), npts)
    points = tuple(zip(xs, ys))
    rects = []
    for _ in range(nrects * 3):
        if len(rects) == nrects:
            break
        a, b = sorted(rng.sample(range(0, 4 * grid, 2), 2))
        c, d = sorted(rng.sample(range(0, 4 * grid, 2), 2))
        r = Box((a, c), (b, d))
        if all(not r.contains_box(q) and not q.contains_box(r) for q in rects):
            rects.append(r)
    return IncidenceConfig(points, tuple(rects))


def random_k22free_config(rng, npts, nrects, grid=40):
    """Nesting-free configuration whose incidence graph is K_{2,2}-free.

    Rectangles are kept greedily when they share at most one point with every
    rectangle kept so far.
    """
    base = random_nesting_free_config(rng, npts, 3 * nrects, grid)
    kept, sets = [], []
    for r in base.rects:
        s = sum(1 << i for i, p in enumerate(base.points) if r.contains(p))
        if all((s & t).bit_count() <= 1 for t in sets):
            kept.append(r)
            sets.append(s)
        if len(kept) == nrects:
            break
    return IncidenceConfig(base.points, tuple(kept))


def near_antichain_points(rng, n, d, swaps):
    """General-position points close to an antichain: a reversed order per axis
    with a few random adjacent transpositions, so few pairs are comparable."""
    axes = [list(range(n))]
    for _ in range(d - 1):
        ys = list(range(n - 1, -1, -1))
        for _ in range(swaps):
            i = rng.randrange(n - 1)
            ys[i], ys[i + 1] = ys[i + 1], ys[i]
        axes.append(ys)
    return [tuple(ax[i] for ax in axes) for i in range(n)]
