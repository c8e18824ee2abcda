"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the lines as they
are produced; they are also repeated in the terminal summary.
"""

import csv
import filecmp
import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from boxkst.bounds import bound_value, interval_base_case, validate_closed_form
from boxkst.cli import main as cli_main
from boxkst.constructions import (
    dyadic_k22free_generator, lift_incidence_to_boxes3d, lines3d_generator,
)
from boxkst.experiments import loglog_slope
from boxkst.forbidden import find_ktt, ktt_implies_matching_check, matching_common_box
from boxkst.geometry import Box, strictly_below
from boxkst.graph import Graph, IncidenceConfig, degeneracy, incidence_graph, intersection_graph
from boxkst.poset import (
    check_realizer, dominance_poset, eliminate_nesting, incidence_poset, induced_half,
    nested_rects, phi_embedding,
)
from boxkst.search import (
    bruteforce_intersection_graph, bruteforce_ktt, bruteforce_matching_box,
    random_matching_free_instance,
)
from boxkst.separation import check_certificate, phi_certificate

from conftest import (
    general_position_points, near_antichain_points, random_family, random_k22free_config,
    random_k22free_graph, random_nesting_free_config, record_line,
)


def verdict(num, ok, detail):
    record_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {detail}")
    assert ok, detail


def test_c01_sweep_equals_bruteforce():
    rng = random.Random(101)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(1000):
        n, d = rng.randint(1, 64), rng.randint(1, 4)
        fam = random_family(rng, n, d, grid=rng.choice((3, 10, 50)), frac=True)
        if intersection_graph(fam) != bruteforce_intersection_graph(fam.boxes):
            mismatches += 1
    elapsed = time.perf_counter() - start
    verdict(1, mismatches == 0 and elapsed < 60,
            f"sweep vs brute force on 1000 families (n<=64, d<=4): {mismatches} mismatches, "
            f"{elapsed:.1f}s (limit 60s)")


def test_c02_induced_half():
    rng = random.Random(102)
    start = time.perf_counter()
    failures = 0
    for _ in range(500):
        g = random_k22free_graph(rng, rng.randint(2, 40))
        assert find_ktt(g, 2) is None
        half, e = induced_half(g)
        if not (2 * e >= g.edge_count() and e == half.edge_count() and find_ktt(half, 2) is None):
            failures += 1
    elapsed = time.perf_counter() - start
    verdict(2, failures == 0 and elapsed < 120,
            f"induced half on 500 K22-free graphs (n<=40): {failures} failures, "
            f"{elapsed:.1f}s (limit 120s)")


def test_c03_free_dominance_has_no_matching():
    rng = random.Random(103)
    failures = applicable = 0
    for k in range(500):
        n, d, t = rng.randint(2, 12), rng.randint(1, 3), rng.choice((2, 3))
        if k % 2:
            pts = near_antichain_points(rng, n, d, rng.randint(0, n))
        else:
            pts = general_position_points(rng, n, d)
        g = dominance_poset(pts).comparability_graph()
        rep = ktt_implies_matching_check(pts, g, t)
        if bruteforce_ktt(g, t) is None:
            applicable += 1
            if rep.matching is not None or bruteforce_matching_box(pts, g, t) is not None:
                failures += 1
    verdict(3, failures == 0 and applicable >= 250,
            f"500 point sets (n<=12, d<=3, t in {{2,3}}), {applicable} K_tt-free: "
            f"{failures} with a common-point matching")


def _phi_direct(cfg):
    """Containment against strict dominance of the images, pair by pair."""
    phi = phi_embedding(cfg)
    P = [phi.map[f"p{i}"] for i in range(len(cfg.points))]
    R = [phi.map[f"r{j}"] for j in range(len(cfg.rects))]
    for i, p in enumerate(cfg.points):
        for j, r in enumerate(cfg.rects):
            if r.contains(p) != strictly_below(R[j], P[i]) or strictly_below(P[i], R[j]):
                return False
    for group in (P, R):
        for a, b in itertools.combinations(group, 2):
            if strictly_below(a, b) or strictly_below(b, a):
                return False
    return True


def _nested_config(rng):
    """K22-free configuration with a few rectangles nested inside others."""
    base = random_k22free_config(rng, rng.randint(3, 15), rng.randint(2, 10), grid=20)
    rects = list(base.rects)
    for _ in range(rng.randint(1, 3)):
        host = rng.choice(base.rects)
        inside = [p for p in base.points if host.interior_contains(p)]
        if inside and rng.random() < 0.7:
            x, y = rng.choice(inside)
            h = Fraction(rng.choice((0, 1)), 2)   # zero-width sides exercise ties
            rects.append(Box((x - h, y - h), (x + h, y + h)))
        else:
            cx = host.lo[0] + Fraction(host.hi[0] - host.lo[0], 3)
            cy = host.lo[1] + Fraction(host.hi[1] - host.lo[1], 3)
            cand = Box((cx, cy), (cx + Fraction(1, 7), cy + Fraction(1, 7)))
            if not any(cand.contains(p) for p in base.points):
                rects.append(cand)
    return IncidenceConfig(base.points, tuple(rects))


def test_c04_phi_and_nesting():
    rng = random.Random(104)
    bad_phi = 0
    for k in range(1000):
        cfg = random_nesting_free_config(rng, rng.randint(0, 20), rng.randint(0, 20))
        ok = check_realizer(incidence_poset(cfg), phi_embedding(cfg))[0]
        if k < 200:
            ok = ok and _phi_direct(cfg)
        bad_phi += not ok
    bad_nest = nested_seen = 0
    for _ in range(200):
        cfg = _nested_config(rng)
        nested_seen += bool(nested_rects(cfg))
        out = eliminate_nesting(cfg)
        ok = (incidence_graph(out).edges() == incidence_graph(cfg).edges()
              and not nested_rects(out)
              and check_realizer(incidence_poset(out), phi_embedding(out))[0])
        bad_nest += not ok
    verdict(4, bad_phi == 0 and bad_nest == 0 and nested_seen >= 150,
            f"phi realizer on 1000 nesting-free configs: {bad_phi} failures; "
            f"eliminate_nesting on 200 configs ({nested_seen} nested): {bad_nest} failures")


def test_c05_lifting():
    rng = random.Random(105)
    sizes = [1, 2, 5, 20, 50, 100, 250, 500]
    bad, total = 0, 0
    for size in sizes:
        for grid in (size, 4 * size):
            xs = [(rng.randint(0, grid), rng.randint(0, grid)) for _ in range(size)]
            pts = tuple(dict.fromkeys(xs))
            rects = []
            for _ in range(size):
                a, b = sorted((rng.randint(0, grid), rng.randint(0, grid)))
                c, d = sorted((rng.randint(0, grid), rng.randint(0, grid)))
                rects.append(Box((a, c), (b, d)))
            cfg = IncidenceConfig(pts, tuple(rects))
            total += 1
            bad += intersection_graph(lift_incidence_to_boxes3d(cfg)).edges() != incidence_graph(cfg).edges()
    for m in range(1, 9):
        cfg = dyadic_k22free_generator(m)
        total += 1
        bad += intersection_graph(lift_incidence_to_boxes3d(cfg)).edges() != incidence_graph(cfg).edges()
    verdict(5, bad == 0,
            f"lifted boxes reproduce incidence graphs on {total} configs (up to 500 per side): "
            f"{bad} mismatches")


def test_c06_phi_certificate_dyadic():
    start = time.perf_counter()
    bad, pairs = 0, 0
    largest = 0
    for m in range(1, 11):
        cfg = dyadic_k22free_generator(m)
        g, cert = phi_certificate(cfg)
        assert g.n <= 2000
        largest = max(largest, g.n)
        deg = [g.degree(v) for v in range(g.n)]
        e = g.edge_count()
        # disjoint pairs = all pairs minus pairs sharing a vertex
        pairs += e * (e - 1) // 2 - sum(k * (k - 1) // 2 for k in deg)
        bad += not check_certificate(g, cert)[0]
    elapsed = time.perf_counter() - start
    verdict(6, bad == 0 and elapsed < 300,
            f"phi certificate in dimension 4 on dyadic m=1..10 (up to {largest} elements, "
            f"{pairs} disjoint edge pairs): {bad} invalid, {elapsed:.1f}s (limit 300s)")


def test_c07_numedges_soundness():
    report = validate_closed_form(1 << 16, 10)
    rng = random.Random(107)
    violations, worst = 0, 0.0
    for k in range(10_000):
        # log-uniform sizes cover small n densely and still reach 256
        n = min(256, int(2 ** rng.uniform(1, 8)))
        if k % 100 == 0:
            n = 256
        d, t = rng.randint(1, 3), rng.choice((2, 3))
        # small instances get enough attempts to be close to maximal
        attempts = 2 * n * n if n <= 16 else 4 * n
        pts, g = random_matching_free_instance(n, d, t, rng, attempts=attempts)
        if k % 50 == 0:
            assert matching_common_box(pts, g, t) is None
        b = bound_value(n, d, t)
        violations += g.edge_count() > b
        worst = max(worst, g.edge_count() / b)
    verdict(7, violations == 0 and report["max_ratio"] <= 1,
            f"closed form dominates recursion for n<=2^16, d<=10 (max ratio {report['max_ratio']:.3f}); "
            f"10^4 instances: {violations} violations, max e/bound {worst:.3f}")


def _valid_1d_graphs(n):
    """Edge sets on points 0..n-1 with no two disjoint edges whose spans share a point."""
    edges = list(itertools.combinations(range(n), 2))
    conflict = [0] * len(edges)
    for i, j in itertools.combinations(range(len(edges)), 2):
        (a, b), (c, d) = edges[i], edges[j]
        if len({a, b, c, d}) == 4 and max(a, c) <= min(b, d):
            conflict[i] |= 1 << j
            conflict[j] |= 1 << i

    def rec(k, chosen, blocked):
        if k == len(edges):
            yield chosen
            return
        yield from rec(k + 1, chosen, blocked)
        if not blocked >> k & 1:
            yield from rec(k + 1, chosen | 1 << k, blocked | conflict[k])

    for mask in rec(0, 0, 0):
        yield Graph.from_edges(n, [edges[k] for k in range(len(edges)) if mask >> k & 1])


# counts of valid graphs for n = 2..7, from the enumeration above
VALID_1D_COUNTS = {2: 2, 3: 8, 4: 36, 5: 160, 6: 704, 7: 3088}


def test_c08_interval_base_case():
    violations, total, max_e, max_deg = 0, 0, {}, 0
    counts = {}
    for n in range(1, 9):
        pts = list(range(n))
        counts[n] = 0
        for g in _valid_1d_graphs(n):
            counts[n] += 1
            res = interval_base_case(pts, g, 2)
            k, _ = degeneracy(g)
            max_deg = max(max_deg, k)
            max_e[n] = max(max_e.get(n, 0), res.edges)
            if not (res.degenerate_ok and k <= 2 and res.edges < 4 * n):
                violations += 1
        total += counts[n]
    frozen = all(counts[n] == c for n, c in VALID_1D_COUNTS.items())
    verdict(8, violations == 0 and frozen,
            f"all {total} valid interval instances n<=8, t=2: {violations} violations, "
            f"max degeneracy {max_deg}, max edges per n {max_e}")


def test_c09_dyadic_density_csv(tmp_path):
    code = cli_main(["experiment", "sweep", "--suite", "dyadic-density", "--out", str(tmp_path),
                     "--params", '{"max_m": 10}'])
    with open(tmp_path / "dyadic-density.csv") as fh:
        rows = list(csv.DictReader(fh))
    free = all(find_ktt(incidence_graph(dyadic_k22free_generator(m, check=False)), 2) is None
               for m in range(1, 11))
    dens = {int(r["param"]): Fraction(int(r["e"]), int(r["n"])) for r in rows}
    increasing = all(dens[m] < dens[m + 1] for m in range(4, 10))
    shown = ", ".join(f"{m}:{float(dens[m]):.3f}" for m in range(4, 11))
    verdict(9, code == 0 and free and increasing and len(rows) == 10,
            f"dyadic m=1..10 K22-free={free}; e/n strictly increasing on m=4..10 ({shown}); CSV written")


def test_c10_lines3d_slope():
    ns, es, free = [], [], True
    for k in range(2, 7):
        _, g = lines3d_generator(k)
        free = free and find_ktt(g, 2) is None
        ns.append(g.n)
        es.append(g.edge_count())
    slope = loglog_slope(ns, es)
    verdict(10, free and 1.25 <= slope <= 1.45,
            f"lines in R^3 k=2..6 K22-free={free}; log-log slope {slope:.4f} (window [1.25, 1.45])")


def test_c11_k22_density_bounded():
    rng = random.Random(111)
    family = []
    for m in range(1, 11):
        g = incidence_graph(dyadic_k22free_generator(m))
        family.append(("dyadic", g.n, g.edge_count()))
    for size in (10, 20, 40, 80):
        for _ in range(5):
            cfg = random_k22free_config(rng, size, size, grid=size)
            g = incidence_graph(cfg)
            assert find_ktt(g, 2) is None
            family.append(("random", g.n, g.edge_count()))
    ratios = [e / (n * math.log2(n)) for _, n, e in family if n >= 2]
    xs = [n * math.log2(n) for _, n, e in family if n >= 2]
    ys = [e for _, n, e in family if n >= 2]
    fitted = sum(x * y for x, y in zip(xs, ys)) / sum(x * x for x in xs)
    verdict(11, max(ratios) <= 1.0,
            f"{len(family)} K22-free incidence configs: max e/(n log2 n) {max(ratios):.3f} (cap 1.0), "
            f"fitted C {fitted:.3f}")


def _sweep(out, suite, params, seed=7):
    return cli_main(["experiment", "sweep", "--suite", suite, "--seed", str(seed),
                     "--out", str(out), "--params", params])


def test_c12_determinism(tmp_path):
    runs = [("dyadic-density", '{"max_m": 7}'), ("lines3d", '{"max_k": 4}'),
            ("lift3d", '{"max_m": 4}'), ("numedges", '{"sizes": [8, 32, 64], "reps": 3}'),
            ("main-theorem", '{"count": 4, "n": 16}')]
    same = True
    for suite, params in runs:
        a, b = tmp_path / "a", tmp_path / "b"
        assert _sweep(a, suite, params) == 0 and _sweep(b, suite, params) == 0
        for ext in ("csv", "dat", "manifest.json"):
            same = same and filecmp.cmp(a / f"{suite}.{ext}", b / f"{suite}.{ext}", shallow=False)
        same = same and cli_main(["experiment", "replay", "--manifest", str(a / f"{suite}.manifest.json")]) == 0
    for argv in (["gen", "dyadic", "--m", "6"], ["gen", "lines3d", "--k", "3"]):
        outs = []
        for tag in ("x", "y"):
            path = tmp_path / f"{argv[1]}-{tag}.json"
            assert cli_main(argv + ["--out", str(path)]) == 0
            outs.append(path.read_bytes())
        same = same and outs[0] == outs[1]
    verdict(12, same, f"{len(runs)} sweeps and 2 generators rerun byte-identical; manifests replay")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))
