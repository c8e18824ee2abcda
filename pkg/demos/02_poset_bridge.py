"""
From incidences to four-dimensional dominance
=============================================

A point lies in a rectangle exactly when the rectangle's image sits strictly
below the point's image under (x, y) -> (x, -x, y, -y).  For a K_{2,2}-free
configuration the same images separate disjoint incidences, which gives a
separation certificate in dimension 4.
"""

from boxkst import Box, IncidenceConfig, check_certificate, check_realizer
from boxkst.constructions import dyadic_k22free_generator
from boxkst.graph import incidence_graph
from boxkst.poset import eliminate_nesting, incidence_poset, nested_rects, phi_embedding
from boxkst.separation import phi_certificate

cfg = IncidenceConfig(((2, 3), (5, 1)), (Box((1, 2), (4, 5)), Box((4, 0), (6, 2))))
phi = phi_embedding(cfg)
for key, image in phi.map.items():
    print(key, "->", image)
print("realizer valid:", check_realizer(incidence_poset(cfg), phi))

# A nested rectangle blocks the map; it is replaced by a long thin slab.
nested = IncidenceConfig(((2, 3),), (Box((0, 0), (9, 9)), Box((1, 2), (4, 5))))
print("nested rectangles:", nested_rects(nested))
fixed = eliminate_nesting(nested)
print("after elimination:", fixed.rects[1])
print("incidences kept:", incidence_graph(fixed) == incidence_graph(nested))

# The dyadic configuration at scale 6 has 64 points and 48 rectangles.
dense = dyadic_k22free_generator(6)
g, cert = phi_certificate(dense)
print("dyadic m=6:", g.n, "vertices,", g.edge_count(), "edges")
print("separation certificate in dimension 4:", check_certificate(g, cert))
