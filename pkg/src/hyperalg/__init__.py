"""Exact Bhattacharya-Mesner hypermatrix algebra, hypermatrix Cayley-Hamilton
coefficients, König hypergraph counts and graph inflation invariants."""

from .graphs import (
    Graph,
    InvariantReport,
    cospectral,
    distinguish,
    hypergraph_invariant,
    inflate,
    load_graph,
    shifted_walk_relation,
)
from .hypermatrix import Hypermatrix, delta, dumps, from_slices, load, loads, permute_indices
from .koenig import compose, count_glued, count_k_complexes, count_tetrahedra, from_hypermatrix, to_hypermatrix
from .powers import (
    CoefficientVector,
    TernaryTree,
    ch_coefficients,
    enumerate_powers_first,
    fuss_catalan_count,
    matrix_ch_coefficients,
    power_sequence_second,
    span_dimension,
)
from .product import Convention, bm_product, general_bm_product
from .scalars import DEFAULT_PRIME, EXACT, Backend, Zp

__all__ = [
    "Backend",
    "bm_product",
    "ch_coefficients",
    "CoefficientVector",
    "compose",
    "Convention",
    "cospectral",
    "count_glued",
    "count_k_complexes",
    "count_tetrahedra",
    "DEFAULT_PRIME",
    "delta",
    "distinguish",
    "dumps",
    "enumerate_powers_first",
    "EXACT",
    "from_hypermatrix",
    "from_slices",
    "fuss_catalan_count",
    "general_bm_product",
    "Graph",
    "hypergraph_invariant",
    "Hypermatrix",
    "inflate",
    "InvariantReport",
    "load",
    "load_graph",
    "loads",
    "matrix_ch_coefficients",
    "permute_indices",
    "power_sequence_second",
    "shifted_walk_relation",
    "span_dimension",
    "TernaryTree",
    "to_hypermatrix",
    "Zp",
]

__version__ = "0.1.0"
