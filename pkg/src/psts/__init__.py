"""Partial Steiner triple systems: construction, search, verification.

The package decides triangle-decomposition and small-embedding questions
with an honest three-valued outcome (ProvedYes with a re-verified witness,
ProvedNo only from complete search or a necessary-condition failure,
Unknown with the reason), builds the gadget that ties order-v embeddings
of a PSTS to 3-edge-colorability of a cubic graph, and carries the
parametric leave family together with its coloring arguments.
"""

from .design import (
    EmbedQuery,
    TripleSystem,
    decide_f_embed,
    is_admissible,
    is_complete,
    is_embedding,
    leave,
    validate,
)
from .graphs import Graph, standard_graph
from .coloring import EdgeColoring, chromatic_index, koenig_coloring, vizing_coloring
from .solver import (
    Packing,
    SearchOutcome,
    Status,
    TrianglePackingProblem,
    brute_force_k3_decompose,
    decompose_complete_minus_hole,
    decompose_double_hole,
    exact_k3_decompose,
    hill_climb,
    verify_packing,
)
from .reduction import (
    BackgroundInstance,
    BackgroundParams,
    build_background,
    certify_yes,
    check_params,
    extract_coloring,
    verify_background,
)
from .family import (
    build_family_leave,
    check_conjecture,
    check_lemma31,
    family_orders,
    psts15,
    realize_as_leave,
)
from .kernels import backend_name

__version__ = "0.1.0"

__all__ = [
    "BackgroundInstance",
    "BackgroundParams",
    "EdgeColoring",
    "EmbedQuery",
    "Graph",
    "Packing",
    "SearchOutcome",
    "Status",
    "TripleSystem",
    "TrianglePackingProblem",
    "backend_name",
    "brute_force_k3_decompose",
    "build_background",
    "build_family_leave",
    "certify_yes",
    "check_conjecture",
    "check_lemma31",
    "check_params",
    "chromatic_index",
    "decide_f_embed",
    "decompose_complete_minus_hole",
    "decompose_double_hole",
    "exact_k3_decompose",
    "extract_coloring",
    "family_orders",
    "hill_climb",
    "is_admissible",
    "is_complete",
    "is_embedding",
    "koenig_coloring",
    "leave",
    "psts15",
    "realize_as_leave",
    "standard_graph",
    "validate",
    "verify_background",
    "verify_packing",
    "vizing_coloring",
    "__version__",
]
