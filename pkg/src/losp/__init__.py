"""Local spectral subspaces for seeded overlapping community detection."""

from .graph import Graph, ego_components, induced_subgraph, load_edge_list
from .multimember import MembershipResult, find_all_memberships
from .pipeline import DetectionError, DetectionParams, DetectionResult, detect, detect_fixed_size
from .scoring import Metric
from .seeding import SeedSet, SeedStrategy, generate_seeds, strengthen
from .spectral import LocalSubspace, WalkVariant, build_subspace
from .sparse_recovery import LPInfeasibleError, LPUnboundedError, solve_lp1, solve_lp2

__all__ = [
    "Graph", "ego_components", "induced_subgraph", "load_edge_list",
    "MembershipResult", "find_all_memberships",
    "DetectionError", "DetectionParams", "DetectionResult", "detect", "detect_fixed_size",
    "Metric", "SeedSet", "SeedStrategy", "generate_seeds", "strengthen",
    "LocalSubspace", "WalkVariant", "build_subspace",
    "LPInfeasibleError", "LPUnboundedError", "solve_lp1", "solve_lp2",
]
