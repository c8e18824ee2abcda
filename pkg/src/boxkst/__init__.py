"""Box intersection graphs without K_{t,t}: constructions, certificates and edge bounds."""

__version__ = "0.1.0"

from .geometry import Box, Dominance, boxes_intersect, dominance, spanned_box
from .graph import BoxFamily, Graph, IncidenceConfig, incidence_graph, intersection_graph
from .forbidden import find_ktt, matching_common_box
from .poset import build_pg, check_realizer, induced_half, phi_embedding
from .separation import check_certificate, phi_certificate
from .bounds import bound_value, certify_main_theorem

__all__ = [
    "Box", "BoxFamily", "Dominance", "Graph", "IncidenceConfig",
    "bound_value", "boxes_intersect", "build_pg", "certify_main_theorem",
    "check_certificate", "check_realizer", "dominance", "find_ktt",
    "incidence_graph", "induced_half", "intersection_graph",
    "matching_common_box", "phi_certificate", "phi_embedding", "spanned_box",
]
