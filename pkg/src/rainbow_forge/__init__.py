"""Construction and exact verification of edge-colored hypergraphs without full rainbow matchings."""

from .composer import DistributionPlan, copy_bound, join, replicate_to_class_size
from .hypercore import EdgeColoring, MultiHypergraph, PartitionWitness, RainbowMatching, validate_rainbow
from .solver import SolveReport, brute_force_frm, decompose_and_solve, find_frm, max_rainbow_matching, solve

__all__ = [
    "DistributionPlan",
    "EdgeColoring",
    "MultiHypergraph",
    "PartitionWitness",
    "RainbowMatching",
    "SolveReport",
    "brute_force_frm",
    "copy_bound",
    "decompose_and_solve",
    "find_frm",
    "join",
    "max_rainbow_matching",
    "replicate_to_class_size",
    "solve",
    "validate_rainbow",
]
