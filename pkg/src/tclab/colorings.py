"""Accordant oriented colorings of r-graphs by the available colors.

A coloring stores one coset per edge: the value of the edge's canonical
orientation (vertices in increasing order). The value of any other
orientation pi * x follows by equivariance as pi acting on that coset.
Accordance asks that orientations differing in a single coordinate get equal
values.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .hypergraph import Hypergraph
from .permgroup import (
    CapabilityError,
    ColorSystem,
    Permutation,
    closure,
    enumerate_available_colors,
    symmetric_group,
)

__all__ = [
    "IncompleteColoringError",
    "AccordanceConflict",
    "UnsupportedColorError",
    "AccordantColoring",
    "PartLabeling",
    "ColoringResult",
    "orientation_perm",
    "chi",
    "verify_coloring",
    "verify_reduced",
    "propagate_accordance",
    "find_coloring",
    "extract_parts",
    "used_colors",
    "format_coloring",
    "parse_coloring",
    "read_coloring",
    "write_coloring",
]


class IncompleteColoringError(ValueError):
    """Some edge of the hypergraph has no assigned value."""


class AccordanceConflict(Exception):
    """Propagation emptied a domain."""


class UnsupportedColorError(ValueError):
    """The operation needs a color of the form S_i x S_{r-i}."""


@dataclass
class AccordantColoring:
    """Per-edge value (color index j, coset id) of the canonical orientation."""

    system: ColorSystem
    assignment: dict[tuple[int, ...], tuple[int, int]] = field(default_factory=dict)

    def value(self, edge) -> tuple[int, int]:
        return self.assignment[tuple(sorted(edge))]


@dataclass(frozen=True)
class PartLabeling:
    h_plus: frozenset[int]
    h_minus: frozenset[int]


@dataclass
class ColoringResult:
    """Outcome of :func:`find_coloring`.

    When unsatisfiable, ``component`` holds the edges of a constraint
    component with no consistent value and ``conflicts`` records, for each
    value tried on its first edge, the edge pair where propagation clashed.
    """

    sat: bool
    coloring: AccordantColoring | None = None
    component: list[tuple[int, ...]] = field(default_factory=list)
    conflicts: list[tuple[tuple[int, int], tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.sat


def orientation_perm(edge, oriented) -> Permutation:
    """The pi with pi * sorted(edge) == oriented, for the coordinate action
    pi(x_1..x_r) = x_{pi^-1(1)} .. x_{pi^-1(r)}."""
    x = sorted(edge)
    where = {v: b for b, v in enumerate(oriented, start=1)}
    if sorted(where) != x:
        raise ValueError(f"{tuple(oriented)} does not orient {tuple(x)}")
    return Permutation(tuple(where[v] for v in x))


def chi(coloring: AccordantColoring, oriented) -> tuple[int, int]:
    """Value of an arbitrary orientation of an assigned edge."""
    j, c = coloring.value(oriented)
    pi = orientation_perm(oriented, oriented)
    return j, coloring.system.coset_spaces[j].act(pi, c)


def _check_complete(H: Hypergraph, C: AccordantColoring) -> None:
    if C.system.r != H.r:
        raise ValueError(f"color system has r={C.system.r}, hypergraph has r={H.r}")
    missing = [e for e in H.edge_list if e not in C.assignment]
    if missing:
        raise IncompleteColoringError(f"{len(missing)} edges unassigned, e.g. {missing[0]}")
    for e in H.edge_list:
        j, c = C.assignment[e]
        if not (0 <= j < C.system.m and 0 <= c < len(C.system.coset_spaces[j])):
            raise ValueError(f"edge {e} has value {(j, c)} outside the color system")


def verify_coloring(H: Hypergraph, C: AccordantColoring):
    """Check accordance over all pairs of oriented edges differing in one coordinate.

    Returns ``(ok, violations)``; each violation is a pair of oriented edges
    (tuples) with different values.
    """
    _check_complete(H, C)
    r = H.r
    if not H.edges:
        return True, []
    sym = symmetric_group(r)
    width = max(len(s) for s in C.system.coset_spaces)
    edges = np.array(H.edge_list, dtype=np.int64)
    tuples = edges[:, sym.perms.astype(np.int64)].reshape(-1, r)
    # orientation by lex-rank o is pi * x with pi = o^-1
    values = np.empty((len(edges), sym.order), dtype=np.int64)
    for t, e in enumerate(H.edge_list):
        j, c = C.assignment[e]
        values[t] = j * width + C.system.coset_spaces[j].table[c][sym.inverse]
    values = values.ravel()
    base = H.n + 1
    violations = []
    for i in range(r):
        rest = np.delete(tuples, i, axis=1)
        key = rest @ (base ** np.arange(r - 1, dtype=np.int64)) * r + i
        uniq, inv = np.unique(key, return_inverse=True)
        lo = np.full(len(uniq), np.iinfo(np.int64).max)
        hi = np.full(len(uniq), np.iinfo(np.int64).min)
        np.minimum.at(lo, inv, values)
        np.maximum.at(hi, inv, values)
        for g in np.flatnonzero(lo != hi):
            members = np.flatnonzero(inv == g)
            first = members[0]
            for other in members[1:]:
                if values[other] != values[first]:
                    violations.append((tuple(int(v) for v in tuples[first]),
                                       tuple(int(v) for v in tuples[other])))
    return not violations, violations


def _prefix_value(system: ColorSystem, edge, value, W, u) -> tuple[int, int]:
    j, c = value
    pi = orientation_perm(edge, tuple(sorted(W)) + (u,))
    return j, system.coset_spaces[j].act(pi, c)


def verify_reduced(H: Hypergraph, C: AccordantColoring) -> bool:
    """Accordance in last-coordinate form: for each (r-1)-set W, the orientations
    (sorted W, u) of all edges W + u carry one common value."""
    _check_complete(H, C)
    seen: dict[tuple[int, ...], tuple[int, int]] = {}
    for e in H.edge_list:
        for u in e:
            W = tuple(v for v in e if v != u)
            val = _prefix_value(C.system, e, C.assignment[e], W, u)
            if seen.setdefault(W, val) != val:
                return False
    return True


def _transfer(edge_a, edge_b) -> tuple[int, tuple[int, ...]] | None:
    """Rank of pi_b^-1 pi_a for edges sharing r-1 vertices, where pi_x orients
    x as (shared, own vertex); maps the value of a to the forced value of b."""
    shared = set(edge_a) & set(edge_b)
    if len(shared) != len(edge_a) - 1:
        return None
    W = tuple(sorted(shared))
    (u,) = set(edge_a) - shared
    (v,) = set(edge_b) - shared
    pa = orientation_perm(edge_a, W + (u,))
    pb = orientation_perm(edge_b, W + (v,))
    return (pb.inverse() * pa).rank, W


def propagate_accordance(system: ColorSystem, edge_a, value_a, edge_b, domain_b=None) -> set[tuple[int, int]]:
    """Reduce the domain of edge_b given the value of edge_a.

    Edges sharing r-1 vertices must agree on the shared oriented prefix, which
    pins edge_b to one value of the same color. Other pairs leave the domain
    as is. Raises :class:`AccordanceConflict` if nothing survives.
    """
    edge_a, edge_b = tuple(sorted(edge_a)), tuple(sorted(edge_b))
    domain = set(system.values()) if domain_b is None else set(domain_b)
    link = _transfer(edge_a, edge_b)
    if link is None:
        return domain
    tau, _ = link
    j, c = value_a
    forced = (j, system.coset_spaces[j].act(tau, c))
    domain &= {forced}
    if not domain:
        raise AccordanceConflict(f"{edge_b} cannot match {edge_a} = {value_a}")
    return domain


def _constraint_graph(H: Hypergraph):
    """Edges sharing an (r-1)-set, with the transfer rank for each ordered pair."""
    by_face: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for e in H.edge_list:
        for u in e:
            by_face.setdefault(tuple(v for v in e if v != u), []).append(e)
    nbrs: dict[tuple[int, ...], list[tuple[tuple[int, ...], int]]] = {e: [] for e in H.edge_list}
    for W, es in by_face.items():
        if len(es) < 2:
            continue
        for a, b in itertools.permutations(es, 2):
            tau, _ = _transfer(a, b)
            nbrs[a].append((b, tau))
    return nbrs


def _components(nbrs) -> list[list[tuple[int, ...]]]:
    seen = set()
    comps = []
    for e in nbrs:
        if e in seen:
            continue
        seen.add(e)
        comp = [e]
        queue = deque([e])
        while queue:
            a = queue.popleft()
            for b, _ in nbrs[a]:
                if b not in seen:
                    seen.add(b)
                    comp.append(b)
                    queue.append(b)
        comps.append(comp)
    return comps


def find_coloring(H: Hypergraph, k: int, mode: str = "full", system: ColorSystem | None = None) -> ColoringResult:
    """Search for an accordant coloring of H by the colors available for residue k.

    Accordance between edges sharing r-1 vertices is a bijective constraint,
    so a value on one edge of a constraint component forces the whole
    component. The search therefore branches only on the first edge of each
    component, with full propagation behind every choice.
    """
    if system is None:
        system = enumerate_available_colors(H.r, k, mode)
    if system.r != H.r:
        raise ValueError(f"color system has r={system.r}, hypergraph has r={H.r}")
    tables = [s.table for s in system.coset_spaces]
    nbrs = _constraint_graph(H)
    assignment: dict[tuple[int, ...], tuple[int, int]] = {}
    for comp in _components(nbrs):
        root = comp[0]
        conflicts = []
        for value in system.values():
            j = value[0]
            table = tables[j]
            local = {root: value[1]}
            queue = deque([root])
            clash = None
            while queue and clash is None:
                a = queue.popleft()
                ca = local[a]
                for b, tau in nbrs[a]:
                    forced = int(table[ca, tau])
                    cb = local.get(b)
                    if cb is None:
                        local[b] = forced
                        queue.append(b)
                    elif cb != forced:
                        clash = (a, b)
                        break
            if clash is None:
                assignment.update((e, (j, c)) for e, c in local.items())
                break
            conflicts.append((value, clash[0], clash[1]))
        else:
            return ColoringResult(False, None, comp, conflicts)
    return ColoringResult(True, AccordantColoring(system, assignment))


def extract_parts(system: ColorSystem, edge, value) -> PartLabeling:
    """h_plus / h_minus of an edge colored by a young class.

    For the coset sigma*Gamma with Gamma the stabilizer of the block I, the
    canonical-orientation position a lies in h_plus iff sigma^-1(a) is in I.
    """
    j, c = value
    block = system.young_blocks[j]
    if block is None:
        raise UnsupportedColorError(f"color {j} ({system.describe(j)}) is not of young type")
    x = sorted(edge)
    sigma_inv = system.coset_spaces[j].representative(c).inverse()
    plus = frozenset(x[a - 1] for a in range(1, len(x) + 1) if sigma_inv(a) in block)
    return PartLabeling(plus, frozenset(x) - plus)


def young_value(system: ColorSystem, edge, h_plus) -> tuple[int, int]:
    """The value on an edge whose young color has the given h_plus (of size i or r-i)."""
    x = sorted(edge)
    r = len(x)
    h_plus = set(h_plus)
    size = len(h_plus)
    for j, block in enumerate(system.young_blocks):
        if block is None:
            continue
        i = len(block)
        if size == i:
            target = h_plus
        elif size == r - i:
            target = set(x) - h_plus
        else:
            continue
        positions = [a for a, v in enumerate(x, start=1) if v in target]
        others = [a for a, v in enumerate(x, start=1) if v not in target]
        inside = sorted(block)
        outside = [a for a in range(1, r + 1) if a not in block]
        images = [0] * r
        for src, dst in zip(inside + outside, positions + others):
            images[src - 1] = dst
        sigma = Permutation(tuple(images))
        return j, system.coset_spaces[j].coset_of(sigma)
    raise UnsupportedColorError(f"no available young color with a part of size {size}")


def used_colors(C: AccordantColoring) -> set[int]:
    return {j for j, _ in C.assignment.values()}


# ---------------------------------------------------------------------------
# text format


def format_coloring(C: AccordantColoring) -> str:
    """Header ``r k``, one line ``v_1 .. v_r j c`` per edge, then the color legend as comments."""
    sysm = C.system
    lines = [f"{sysm.r} {sysm.k}"]
    for e in sorted(C.assignment):
        j, c = C.assignment[e]
        lines.append(" ".join(map(str, e)) + f" {j} {c}")
    lines.append(f"# mode {sysm.mode}")
    for j, G in enumerate(sysm.base_groups):
        gens = " ".join(str(g) for g in G.generating_set()) or "()"
        lines.append(f"# color {j} {G.order} {gens} {len(sysm.coset_spaces[j])}")
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> AccordantColoring:
    """Read a coloring; the color system is rebuilt from the legend when present,
    otherwise from ``(r, k, mode)``."""
    rows, legend, mode = [], [], "full"
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].split()
            if body[:1] == ["mode"] and len(body) == 2:
                mode = body[1]
            elif body[:1] == ["color"]:
                legend.append(body[1:])
            continue
        rows.append([int(t) for t in line.split()])
    if not rows or len(rows[0]) != 2:
        raise ValueError("missing header line 'r k'")
    r, k = rows[0]
    if legend:
        groups = []
        for item in sorted(legend, key=lambda t: int(t[0])):
            order = int(item[1])
            gens = [Permutation.parse(r, g) for g in item[2:-1] if g != "()"]
            G = closure(r, gens)
            if G.order != order:
                raise ValueError(f"legend color {item[0]} generates order {G.order}, expected {order}")
            groups.append(G)
        system = ColorSystem(r, k, mode, groups)
        for j, item in enumerate(sorted(legend, key=lambda t: int(t[0]))):
            if len(system.coset_spaces[j]) != int(item[-1]):
                raise ValueError(f"legend color {j}: coset count mismatch")
    else:
        try:
            system = enumerate_available_colors(r, k, mode)
        except CapabilityError:
            system = enumerate_available_colors(r, k, "young_only")
    assignment = {}
    for row in rows[1:]:
        if len(row) != r + 2:
            raise ValueError(f"coloring line {row} should have r + 2 = {r + 2} fields")
        e = tuple(row[:r])
        if list(e) != sorted(e):
            raise ValueError(f"edge {e} is not sorted")
        assignment[e] = (row[r], row[r + 1])
    return AccordantColoring(system, assignment)


def read_coloring(path) -> AccordantColoring:
    return parse_coloring(Path(path).read_text())


def write_coloring(C: AccordantColoring, path) -> None:
    Path(path).write_text(format_coloring(C))
