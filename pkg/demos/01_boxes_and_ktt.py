"""
Box intersection graphs and forbidden bicliques
===============================================

Build a small family of closed boxes, look at its intersection graph, and
search it for a complete bipartite K_{t,t}.
"""

from boxkst import Box, BoxFamily, find_ktt, intersection_graph
from boxkst.search import bruteforce_ktt

# Four thin horizontal bars and two tall vertical bars in the plane.
bars = [Box((0, y), (10, y)) for y in (1, 3, 5, 7)]
posts = [Box((x, 0), (x, 8)) for x in (2, 6)]
family = BoxFamily(2, tuple(bars + posts))

g = intersection_graph(family)
print("vertices:", g.n, "edges:", g.edge_count())
print("edge list:", g.edges())

# every bar meets both posts, so two bars and two posts form a K_{2,2}
w = find_ktt(g, 2)
print("K_2,2 witness:", w, "verified:", w.verify(g))
print("K_3,3?", find_ktt(g, 3))
print("brute force agrees:", bruteforce_ktt(g, 3) is None)

# Closed boxes: sharing a single corner is enough to intersect.
touching = BoxFamily(2, (Box((0, 0), (1, 1)), Box((1, 1), (2, 2))))
print("touching squares intersect:", intersection_graph(touching).edges())
