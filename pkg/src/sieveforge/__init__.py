"""Path-counting graph algebra and sieve network transforms."""

from .algebra import PathMatrix, change_of_order, circ, circ_expansion, circ_fold
from .graph import Graph, NodePermutation, builtin_graph, emit_graph6, generate_csl, parse_graph6, permute_graph
from .harness import discriminate, embed_stats, exact_determinant, run_csl, run_srg
from .modg import DirectedSubgraph, SMultElement, bullet, edge_factorization, rep, tr_count
from .sieve import SieveCover, coimage, image
from .snn import SnnConfig, run_snn, snn_alpha, snn_beta, transform_dataset
from .wl import wl_distinguish, wl_hash

__version__ = "0.1.0"

__all__ = [
    "DirectedSubgraph", "Graph", "NodePermutation", "PathMatrix", "SMultElement", "SieveCover", "SnnConfig",
    "builtin_graph", "bullet", "change_of_order", "circ", "circ_expansion", "circ_fold", "coimage",
    "discriminate", "edge_factorization", "embed_stats", "emit_graph6", "exact_determinant", "generate_csl",
    "image", "parse_graph6", "permute_graph", "rep", "run_csl", "run_snn", "run_srg", "snn_alpha", "snn_beta",
    "tr_count", "transform_dataset", "wl_distinguish", "wl_hash",
]
