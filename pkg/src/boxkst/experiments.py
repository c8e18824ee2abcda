"""Experiment suites that produce the density and bound tables.

Every suite is a generator of row dicts with the columns in :data:`COLUMNS`.
Rows depend only on the suite parameters and the seed; ``wall_ms`` is filled
only when timing is requested, so untimed runs are byte-for-byte repeatable.
"""

from __future__ import annotations

import math
import random
import time
from typing import Callable, Dict, Iterator, List

from .bounds import bound_value, certify_main_theorem
from .constructions import dyadic_k22free_generator, lift_incidence_to_boxes3d, lines3d_generator
from .forbidden import find_ktt
from .geometry import Box
from .graph import BoxFamily, incidence_graph, intersection_graph
from .search import random_matching_free_instance

COLUMNS = ["suite", "param", "n", "e", "density", "bound", "ratio", "seed", "wall_ms"]


def _row(suite, param, n, e, bound, seed, ms) -> Dict[str, object]:
    return {
        "suite": suite,
        "param": param,
        "n": n,
        "e": e,
        "density": f"{e / n:.6f}" if n else "0",
        "bound": f"{bound:.6f}" if isinstance(bound, float) else bound,
        "ratio": f"{e / bound:.6f}" if bound else "0",
        "seed": seed,
        "wall_ms": ms,
    }


def _n_log_n(n: int) -> float:
    return n * math.log2(n) if n > 1 else 1.0


def dyadic_density(seed: int, max_m: int = 10, **_) -> Iterator[dict]:
    """K_{2,2}-free dyadic configurations; bound column is ``n log2 n``."""
    for m in range(1, max_m + 1):
        g = incidence_graph(dyadic_k22free_generator(m))
        yield _row("dyadic-density", m, g.n, g.edge_count(), _n_log_n(g.n), seed, None)


def lines3d(seed: int, max_k: int = 6, **_) -> Iterator[dict]:
    """Lifted grid lines; bound column is ``n^(4/3)``."""
    for k in range(1, max_k + 1):
        _, g = lines3d_generator(k)
        assert find_ktt(g, 2) is None
        yield _row("lines3d", k, g.n, g.edge_count(), g.n ** (4 / 3), seed, None)


def lift3d(seed: int, max_m: int = 8, **_) -> Iterator[dict]:
    """Dyadic configurations lifted to boxes in R^3, against the composed box bound."""
    for m in range(1, max_m + 1):
        config = dyadic_k22free_generator(m)
        g = intersection_graph(lift_incidence_to_boxes3d(config))
        assert g.edges() == incidence_graph(config).edges()
        report = certify_main_theorem(lift_incidence_to_boxes3d(config), 2)
        yield _row("lift3d", m, g.n, g.edge_count(), report.bound, seed, None)


def numedges(seed: int, sizes=(8, 16, 32, 64, 128, 256), d: int = 2, t: int = 2,
             reps: int = 5, **_) -> Iterator[dict]:
    """Greedy random instances of the point-set setting against ``bound_value``."""
    rng = random.Random(seed)
    for n in sizes:
        for _ in range(reps):
            pts, g = random_matching_free_instance(n, d, t, rng)
            yield _row("numedges", f"d={d};t={t}", n, g.edge_count(), bound_value(n, d, t), seed, None)


def main_theorem(seed: int, count: int = 20, n: int = 32, d: int = 2, t: int = 2, **_) -> Iterator[dict]:
    """Random small boxes, kept only when K_{t,t}-free, through the composed bound."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        boxes = []
        for _ in range(n):
            lo = [rng.randrange(4 * n) for _ in range(d)]
            boxes.append(Box(tuple(lo), tuple(c + rng.randrange(1, 4) for c in lo)))
        fam = BoxFamily(d, tuple(boxes))
        if find_ktt(intersection_graph(fam), t) is not None:
            continue
        report = certify_main_theorem(fam, t)
        made += 1
        yield _row("main-theorem", f"d={d};t={t}", n, report.edges, report.bound, seed, None)


SUITES: Dict[str, Callable[..., Iterator[dict]]] = {
    "dyadic-density": dyadic_density,
    "lines3d": lines3d,
    "lift3d": lift3d,
    "numedges": numedges,
    "main-theorem": main_theorem,
}


def run_suite(name: str, seed: int, timing: bool = False, **params) -> List[dict]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    rows = []
    it = SUITES[name](seed, **params)
    while True:
        start = time.perf_counter()
        try:
            row = next(it)
        except StopIteration:
            break
        row["wall_ms"] = f"{(time.perf_counter() - start) * 1000:.1f}" if timing else ""
        rows.append(row)
    return rows


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    den = sum((a - mx) ** 2 for a in lx)
    return num / den
