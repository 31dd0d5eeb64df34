"""Bipartite shifting, spectral radius and rainbow Hamilton path/cycle search."""
from .bigraph import (
    BipartiteGraph,
    FamilyName,
    construct,
    decode_graph,
    encode_graph,
    enumerate_graphs,
    is_isomorphic,
    join,
    make_graph,
    quasi_complement,
)
from .errors import RbhError
from .rainbow import (
    GraphFamily,
    RainbowSubgraph,
    bi_shift_family,
    decode_family,
    encode_family,
    find_rainbow_hamilton_cycle,
    find_rainbow_hamilton_path,
    longest_rainbow_path,
    verify_rainbow,
)
from .report import VerificationReport
from .shifting import ShiftPair, bi_shift, is_bi_shifted, shift_xy
from .spectral import Comparison, compare_to_threshold, quotient_matrix, rho, spectral_radius, threshold
from .verify import labeled_copies, sample_families, verify_lemma, verify_theorem

__version__ = "0.1.0"
