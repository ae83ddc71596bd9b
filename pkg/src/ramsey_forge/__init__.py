"""Grid hypergraph constructions for tight-tree Ramsey numbers, with finite certificates."""

__version__ = "0.1.0"

from .grid import (
    ASC,
    DESC,
    ConstructionSpec,
    GridTables,
    HyperEdge,
    LinkDigraphSpec,
    Ordering,
    SignedLexOrder,
    enumerate_edges,
    h3_spec,
    h4_spec,
    is_edge,
    signed_lex_compare,
    symmetric4_spec,
    t_edge,
)
from .certifier import (
    IndependentSetWitness,
    PreconditionError,
    ViolationCertificate,
    check_center_uniqueness,
    find_edge_h3,
    find_edge_h4,
    independence_number,
    is_independent,
    verify_certificate,
)
from .trees import (
    AbstractHypergraph,
    TightTreeWitness,
    embed,
    enumerate_tight_trees,
    is_nontrivial,
    scan_tree_freeness,
    tight_order,
)
from .search import all_signed_lex_orders, build_general_spec, search_center_property
from .bounds import random_delete_independent_set, ramsey_upper_estimate, turan_bound

__all__ = [
    "ASC",
    "AbstractHypergraph",
    "ConstructionSpec",
    "DESC",
    "GridTables",
    "HyperEdge",
    "IndependentSetWitness",
    "LinkDigraphSpec",
    "Ordering",
    "PreconditionError",
    "SignedLexOrder",
    "TightTreeWitness",
    "ViolationCertificate",
    "all_signed_lex_orders",
    "build_general_spec",
    "check_center_uniqueness",
    "embed",
    "enumerate_edges",
    "enumerate_tight_trees",
    "find_edge_h3",
    "find_edge_h4",
    "h3_spec",
    "h4_spec",
    "independence_number",
    "is_edge",
    "is_independent",
    "is_nontrivial",
    "ramsey_upper_estimate",
    "random_delete_independent_set",
    "scan_tree_freeness",
    "search_center_property",
    "signed_lex_compare",
    "symmetric4_spec",
    "t_edge",
    "tight_order",
    "turan_bound",
    "verify_certificate",
]
