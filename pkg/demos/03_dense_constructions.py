"""
Dense K_{2,2}-free constructions
================================

Two families whose edge counts grow faster than linearly: the dyadic
point-rectangle configurations (about n log n / log log n edges) and lines in
R^3 lifted from the grid point-line configuration (about n^(4/3) edges).
"""

import math

from boxkst import find_ktt, intersection_graph
from boxkst.constructions import (
    _best_windows, dyadic_k22free_generator, lift_incidence_to_boxes3d, lines3d_generator,
)
from boxkst.experiments import loglog_slope
from boxkst.graph import incidence_graph

print(" m  windows     n      e    e/n")
for m in range(1, 11):
    cfg = dyadic_k22free_generator(m)
    g = incidence_graph(cfg)
    print(f"{m:2d}  {str(_best_windows(m)):10s} {g.n:5d} {g.edge_count():6d}  {g.edge_count() / g.n:.3f}")

# Lifting turns the planar incidence graph into a box intersection graph in R^3.
cfg = dyadic_k22free_generator(6)
boxes = lift_incidence_to_boxes3d(cfg)
print("lifted graph equals incidence graph:",
      intersection_graph(boxes).edges() == incidence_graph(cfg).edges())

ns, es = [], []
for k in range(2, 7):
    _, g = lines3d_generator(k)
    assert find_ktt(g, 2) is None
    ns.append(g.n)
    es.append(g.edge_count())
    print(f"k={k}: n={g.n}, e={g.edge_count()}, e/n^(4/3)={g.edge_count() / g.n ** (4 / 3):.3f}")
print("log-log slope:", round(loglog_slope(ns, es), 4), "target", round(4 / 3, 4))
print("e / (n log2 n) for the largest line family:",
      round(es[-1] / (ns[-1] * math.log2(ns[-1])), 3))
