"""The modular-sum construction and its canonical colorings.

Vertices 1..n are split into p contiguous parts V_1..V_p whose sizes differ
by at most one (larger parts first). An r-set is an edge iff the part
indices of its vertices sum to 1 mod p.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

from .colorings import AccordantColoring, young_value
from .hypergraph import Hypergraph, contains_injective, tight_cycle
from .permgroup import InvalidResidueError, enumerate_available_colors
from .walks import is_homfree, residue_reach_oracle

__all__ = [
    "ConstructionParams",
    "UnsupportedConstructionError",
    "gen_construction",
    "construction_min_codegree",
    "canonical_p2_coloring",
    "FreenessReport",
    "check_construction_free",
    "modulus_admissible",
]


class UnsupportedConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructionParams:
    r: int
    p: int
    n: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"modulus p must be at least 2, got {self.p}")
        if self.n < self.r:
            raise ValueError(f"need n >= r (n={self.n}, r={self.r})")

    @cached_property
    def parts(self) -> list[range]:
        q, extra = divmod(self.n, self.p)
        out, start = [], 1
        for a in range(self.p):
            size = q + (1 if a < extra else 0)
            out.append(range(start, start + size))
            start += size
        return out

    @cached_property
    def part_index(self) -> dict[int, int]:
        """Vertex -> 1-based part index."""
        return {v: a for a, part in enumerate(self.parts, start=1) for v in part}


def gen_construction(params: ConstructionParams) -> Hypergraph:
    idx = params.part_index
    return Hypergraph(params.r, params.n, (
        e for e in itertools.combinations(range(1, params.n + 1), params.r)
        if sum(idx[v] for v in e) % params.p == 1 % params.p
    ))


def construction_min_codegree(params: ConstructionParams, H: Hypergraph | None = None):
    """Exact min codegree of the construction and the bound floor(n/p) - (r-1).

    Returns ``(value, bound, value >= bound)``. Each (r-1)-set has its whole
    link inside one part, namely that part minus the set's own members there.
    """
    H = gen_construction(params) if H is None else H
    value = H.min_codegree()
    bound = params.n // params.p - (params.r - 1)
    return value, bound, value >= bound


def canonical_p2_coloring(params: ConstructionParams, k: int = 1) -> AccordantColoring:
    """Color every (i, r-i)-edge with S_i x S_{r-i}, h_plus = e & V_1.

    Uses the young colors available for residue k; with k = 1 every young
    class is available.
    """
    if params.p != 2 or params.r % 2:
        raise UnsupportedConstructionError("the canonical coloring needs p = 2 and r even")
    system = enumerate_available_colors(params.r, k, "young_only")
    H = gen_construction(params)
    first = set(params.parts[0])
    assignment = {e: young_value(system, e, [v for v in e if v in first]) for e in H.edge_list}
    return AccordantColoring(system, assignment)


def modulus_admissible(r: int, p: int, k: int) -> bool:
    """p divides r / gcd(r, k)."""
    return (r // math.gcd(r, k)) % p == 0


@dataclass
class FreenessReport:
    params: ConstructionParams
    k: int
    hypothesis: bool
    homfree: bool | None = None
    oracle_agrees: bool | None = None
    cycles_checked: list[int] = field(default_factory=list)
    cycles_found: list[int] = field(default_factory=list)
    witness: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return bool(self.hypothesis and self.homfree and self.oracle_agrees and not self.cycles_found)


def check_construction_free(params: ConstructionParams, k: int, ell_list=(), injective_cap: int = 12) -> FreenessReport:
    """Check the construction against the forbidden residue class k.

    When p does not divide r/gcd(r, k) the report says so and nothing is
    asserted. Otherwise hom-freeness is decided by both walk routines and each
    tight cycle C_ell^r with ell = k (mod r) is searched as a subgraph.
    """
    if k % params.r == 0:
        raise InvalidResidueError(f"k = {k} is 0 mod {params.r}")
    report = FreenessReport(params, k, modulus_admissible(params.r, params.p, k))
    if not report.hypothesis:
        return report
    H = gen_construction(params)
    free, walk = is_homfree(H, k, return_witness=True)
    report.homfree = free
    report.witness = walk
    report.oracle_agrees = free == (not residue_reach_oracle(H, k))
    for ell in ell_list:
        if ell <= params.r or (ell - k) % params.r:
            continue
        report.cycles_checked.append(ell)
        if ell <= injective_cap and contains_injective(H, tight_cycle(params.r, ell), cap=injective_cap):
            report.cycles_found.append(ell)
    return report
