"""Bounds on the R-infinity nilpotency index of right-angled Artin groups."""
from .errors import DomainError, InputError, ResourceError, RinftyError, TheoremViolation
from .graph import (
    Graph,
    Xi,
    coherent_components,
    complete_graph,
    cycle_graph,
    edgeless_graph,
    graph_automorphisms,
    is_transposition_free,
    path_graph,
    quotient_graph,
    xi,
)
from .lie import GradedPcLie, series_dims
from .graded_aut import has_eigenvalue_one_upto, induced_layer_map, reduced_form, sample_members
from .engine import (
    bounds,
    census,
    index2_eigenvector,
    lower_bound_witness,
    upper_bound_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError", "InputError", "ResourceError", "RinftyError", "TheoremViolation",
    "Graph", "Xi", "xi", "coherent_components", "complete_graph", "cycle_graph", "edgeless_graph",
    "graph_automorphisms", "is_transposition_free", "path_graph", "quotient_graph",
    "GradedPcLie", "series_dims", "has_eigenvalue_one_upto", "induced_layer_map", "reduced_form",
    "sample_members", "bounds", "census", "index2_eigenvector", "lower_bound_witness",
    "upper_bound_certificate",
]
