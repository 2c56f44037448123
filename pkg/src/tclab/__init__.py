"""Closed tight walks in uniform hypergraphs: residue tests, accordant
colorings, modular constructions and small exact codegree searches."""

from .colorings import AccordantColoring, find_coloring, verify_coloring
from .constructions import ConstructionParams, check_construction_free, gen_construction
from .extremal import ExtremalResult, certify_lower_bound, density_table, exact_search, verify_certificate
from .hypergraph import Hypergraph, blowup, complete, contains_injective, tight_cycle
from .permgroup import (
    CapabilityError,
    DimensionError,
    InvalidResidueError,
    Permutation,
    PermGroup,
    enumerate_available_colors,
    si_available,
    young_subgroup,
)
from .walks import contains_cycle_hom, is_homfree, residue_reach_oracle

__version__ = "0.1.0"
