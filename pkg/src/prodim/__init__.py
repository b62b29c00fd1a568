"""Encodings of graphs as induced subgraphs of products of complete graphs."""

from .degenerate import DegenerateParams, encode_degenerate
from .encoding import Encoding, VerificationReport, dumps, is_valid, loads, verify_encoding
from .exact import SearchBudget, encode_small, greedy_equivalence_encode, pdim_exact
from .forest import encode_forest, find_split_vertex
from .graph import Graph
from .io import parse_graph
from .latin import choose_ols_order, encode_triple_clique, mols
from .treedecomp import TreeDecomposition, decompose_exact, decompose_heuristic, normalize
from .treewidth import encode_treewidth

__all__ = [
    "DegenerateParams",
    "Encoding",
    "Graph",
    "SearchBudget",
    "TreeDecomposition",
    "VerificationReport",
    "choose_ols_order",
    "decompose_exact",
    "decompose_heuristic",
    "dumps",
    "encode_degenerate",
    "encode_forest",
    "encode_small",
    "encode_treewidth",
    "encode_triple_clique",
    "find_split_vertex",
    "greedy_equivalence_encode",
    "is_valid",
    "loads",
    "mols",
    "normalize",
    "parse_graph",
    "pdim_exact",
    "verify_encoding",
]
