"""
Certified edge bounds
=====================

For points in R^d and a graph with no t disjoint edges whose spanned boxes
share a point, a median split gives at most 2tn(1 + ceil(log2 n))^(d-1)
edges.  The split tree below is checked node by node, and the same bound is
composed into a bound for K_{t,t}-free box intersection graphs.
"""

import random

from boxkst import bound_value, certify_main_theorem
from boxkst.bounds import certify_numedges, interval_base_case, validate_closed_form
from boxkst.constructions import dyadic_k22free_generator, lift_incidence_to_boxes3d
from boxkst.search import random_matching_free_instance

print("closed form vs recursion:", validate_closed_form(1 << 12, 6))

rng = random.Random(0)
pts, g = random_matching_free_instance(128, 2, 2, rng)
report = certify_numedges(pts, g, 2, check=True)
print(f"n=128, d=2, t=2: {report.edges} edges <= {report.bound}")
for step in report.trace:
    print("  ", step)

# One dimension: a 2-degenerate ordering certifies fewer than 4n edges.
line, h = random_matching_free_instance(8, 1, 2, rng, attempts=200)
base = interval_base_case(line, h, 2)
print("interval case:", base.edges, "edges, degeneracy", base.degeneracy)

family = lift_incidence_to_boxes3d(dyadic_k22free_generator(5))
main = certify_main_theorem(family, 2)
print(f"lifted dyadic boxes: {main.edges} edges <= {main.bound}")
print("bound at n=1024, d=2, t=2:", bound_value(1024, 2, 2))
