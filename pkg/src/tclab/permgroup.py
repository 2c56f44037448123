"""Permutations of [r], subgroups of S_r, coset actions and color systems.

Permutations are written 1-based in the public API (``images[i-1]`` is the
image of ``i``). Internally every element of S_r is identified with its rank
in lexicographic order of 0-based image tuples, which lets subgroups be
stored as sorted rank arrays and hashed as bitmasks.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

__all__ = [
    "DimensionError",
    "InvalidResidueError",
    "CapabilityError",
    "Permutation",
    "PermGroup",
    "CosetSpace",
    "ColorSystem",
    "SymmetricGroup",
    "symmetric_group",
    "compose",
    "cyc_power",
    "closure",
    "is_conjugate_avoiding",
    "brute_force_conjugate_search",
    "young_subgroup",
    "si_available",
    "all_subgroups",
    "subgroup_classes",
    "enumerate_available_colors",
    "transposition_partition",
    "transposition_subgroup",
    "contains_r_cycle",
    "check_claim_simaximal",
]

#: largest uniformity for elementwise work (explicit S_r of size r!)
MAX_R_ELEMENTWISE = 8
#: largest uniformity for which the full subgroup lattice is enumerated
MAX_R_FULL = 6


class DimensionError(ValueError):
    """Permutations or groups of different degree were combined."""


class InvalidResidueError(ValueError):
    """A residue k with k = 0 (mod r) was supplied."""


class CapabilityError(RuntimeError):
    """A request exceeds the configured size caps."""


# ---------------------------------------------------------------------------
# symmetric group tables


class SymmetricGroup:
    """Explicit S_r with elements ranked in lexicographic order.

    ``perms[g]`` holds the 0-based images of the element of rank ``g``.
    """

    def __init__(self, r: int):
        if not 1 <= r <= MAX_R_ELEMENTWISE:
            raise CapabilityError(f"S_{r} exceeds the elementwise cap r <= {MAX_R_ELEMENTWISE}")
        self.r = r
        self.order = math.factorial(r)
        self.perms = np.array(list(itertools.permutations(range(r))), dtype=np.int8).reshape(self.order, r)
        self._weights = np.array([math.factorial(r - 1 - i) for i in range(r)], dtype=np.int64)
        self.identity = 0
        inv = np.empty_like(self.perms)
        rows = np.arange(self.order)[:, None]
        inv[rows, self.perms] = np.arange(r, dtype=np.int8)[None, :]
        self.inverse = self.rank(inv)

    def rank(self, arr) -> np.ndarray | int:
        """Lexicographic rank of 0-based image arrays (last axis has length r)."""
        a = np.asarray(arr, dtype=np.int64)
        single = a.ndim == 1
        a = np.atleast_2d(a)
        lehmer = np.zeros(a.shape[:-1] + (self.r,), dtype=np.int64)
        for i in range(self.r):
            lehmer[..., i] = (a[..., i + 1:] < a[..., i:i + 1]).sum(axis=-1)
        out = lehmer @ self._weights
        return int(out[0]) if single else out

    def compose(self, g: int, h: int) -> int:
        """Rank of g o h (apply h first)."""
        return self.rank(self.perms[g][self.perms[h]])

    def compose_many(self, g: np.ndarray, h: int) -> np.ndarray:
        """Ranks of g_t o h for every rank g_t in the array g."""
        return self.rank(self.perms[g][:, self.perms[h]])

    @cached_property
    def mult(self) -> np.ndarray:
        """Full multiplication table, ``mult[g, h]`` is the rank of g o h."""
        if self.r > MAX_R_FULL:
            raise CapabilityError(f"multiplication table of S_{self.r} is not materialized (r > {MAX_R_FULL})")
        table = np.empty((self.order, self.order), dtype=np.int32)
        for h in range(self.order):
            table[:, h] = self.rank(self.perms[:, self.perms[h]])
        return table

    @cached_property
    def cycle_types(self) -> list[tuple[int, ...]]:
        return [_cycle_type(tuple(int(x) for x in p)) for p in self.perms]

    @cached_property
    def transposition_ranks(self) -> dict[int, tuple[int, int]]:
        """rank -> 1-based pair (a, b) for every transposition."""
        out = {}
        for a, b in itertools.combinations(range(self.r), 2):
            img = list(range(self.r))
            img[a], img[b] = b, a
            out[self.rank(img)] = (a + 1, b + 1)
        return out

    def element(self, g: int) -> "Permutation":
        return Permutation(tuple(int(x) + 1 for x in self.perms[g]))


@lru_cache(maxsize=None)
def symmetric_group(r: int) -> SymmetricGroup:
    return SymmetricGroup(r)


def _cycle_type(images0: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(images0)
    lengths = []
    for start in range(len(images0)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = images0[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


# ---------------------------------------------------------------------------
# permutations


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of {1..r}; ``images[i-1]`` is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")

    @property
    def r(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, r: int) -> "Permutation":
        return cls(tuple(range(1, r + 1)))

    @classmethod
    def from_cycles(cls, r: int, cycles) -> "Permutation":
        images = list(range(1, r + 1))
        for cycle in cycles:
            cycle = list(cycle)
            if len(set(cycle)) != len(cycle) or any(not 1 <= c <= r for c in cycle):
                raise ValueError(f"bad cycle {cycle} for degree {r}")
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, r: int, text: str) -> "Permutation":
        """Parse cycle notation such as ``(1 2 3)(4 5)``, ``(123)`` or ``()``."""
        text = text.strip()
        if text in ("", "()", "id", "e"):
            return cls.identity(r)
        cycles = []
        for body in _CYCLE_RE.findall(text):
            body = body.strip()
            if not body:
                continue
            if "," in body or " " in body:
                cycle = [int(t) for t in re.split(r"[,\s]+", body) if t]
            else:
                cycle = [int(t) for t in body]
            cycles.append(cycle)
        if _CYCLE_RE.sub("", text).strip():
            raise ValueError(f"cannot parse permutation {text!r}")
        return cls.from_cycles(r, cycles)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.r
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.r)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.r + 1):
            if start in seen:
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        return math.lcm(*self.cycle_type())

    @property
    def rank(self) -> int:
        return symmetric_group(self.r).rank([v - 1 for v in self.images])

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        sep = "" if self.r < 10 else " "
        return "".join("(" + sep.join(str(c) for c in cyc) + ")" for cyc in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return p o q, i.e. ``i -> p(q(i))``."""
    if p.r != q.r:
        raise DimensionError(f"cannot compose permutations of degree {p.r} and {q.r}")
    return Permutation(tuple(p.images[q.images[i] - 1] for i in range(q.r)))


def cyc_power(r: int, k: int) -> Permutation:
    """The k-th power of the cyclic shift (1 2 ... r)."""
    if r < 2:
        raise ValueError("uniformity must be at least 2")
    if k % r == 0:
        raise InvalidResidueError(f"k = {k} is 0 mod {r}")
    return Permutation(tuple((i + k) % r + 1 for i in range(r)))


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A subgroup of S_r, stored as the sorted ranks of its elements."""

    __slots__ = ("r", "ranks", "generators", "_mask", "__dict__")

    def __init__(self, r: int, ranks, generators=None):
        self.r = r
        self.ranks = np.unique(np.asarray(ranks, dtype=np.int64))
        gens = [] if generators is None else list(generators)
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self._mask = None

    @property
    def order(self) -> int:
        return len(self.ranks)

    def __len__(self) -> int:
        return len(self.ranks)

    @property
    def mask(self) -> int:
        """The element set as a Python int bitmask over ranks."""
        if self._mask is None:
            bits = np.zeros(symmetric_group(self.r).order, dtype=bool)
            bits[self.ranks] = True
            self._mask = int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
        return self._mask

    @property
    def elements(self) -> list[Permutation]:
        sym = symmetric_group(self.r)
        return [sym.element(int(g)) for g in self.ranks]

    def __contains__(self, p) -> bool:
        g = p.rank if isinstance(p, Permutation) else int(p)
        i = np.searchsorted(self.ranks, g)
        return i < len(self.ranks) and self.ranks[i] == g

    def __eq__(self, other) -> bool:
        return isinstance(other, PermGroup) and self.r == other.r and np.array_equal(self.ranks, other.ranks)

    def __hash__(self) -> int:
        return hash((self.r, self.mask))

    def issubgroup(self, other: "PermGroup") -> bool:
        return self.r == other.r and (self.mask & ~other.mask) == 0

    @cached_property
    def cycle_types(self) -> frozenset[tuple[int, ...]]:
        types = symmetric_group(self.r).cycle_types
        return frozenset(types[int(g)] for g in self.ranks)

    def generating_set(self) -> list[Permutation]:
        """Stored generators, or a small greedy generating set if none were given."""
        if self.generators:
            return list(self.generators)
        gens: list[Permutation] = []
        current = PermGroup(self.r, [0])
        for g in self.ranks[::-1]:
            if self.order == current.order:
                break
            if int(g) in current:
                continue
            p = symmetric_group(self.r).element(int(g))
            gens.append(p)
            current = closure(self.r, gens)
        return gens

    def conjugate(self, sigma: Permutation) -> "PermGroup":
        """sigma G sigma^-1."""
        sym = symmetric_group(self.r)
        s = sigma.rank
        si = int(sym.inverse[s])
        left = sym.rank(sym.perms[s][sym.perms[self.ranks]])
        ranks = sym.compose_many(left, si)
        return PermGroup(self.r, ranks)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generating_set()) or "()"
        return f"PermGroup(r={self.r}, order={self.order}, gens=[{gens}])"


def closure(r: int, gens) -> PermGroup:
    """Smallest subgroup of S_r containing the given permutations."""
    gens = list(gens)
    for g in gens:
        if g.r != r:
            raise DimensionError(f"generator {g} has degree {g.r}, expected {r}")
    sym = symmetric_group(r)
    gen_images = [np.array([v - 1 for v in g.images], dtype=np.int64) for g in gens]
    seen = {0}
    frontier = [0]
    while frontier:
        imgs = sym.perms[np.array(frontier)].astype(np.int64)
        nxt = []
        for gi in gen_images:
            # gen o element
            for g in np.atleast_1d(sym.rank(gi[imgs])):
                g = int(g)
                if g not in seen:
                    seen.add(g)
                    nxt.append(g)
        frontier = nxt
    return PermGroup(r, sorted(seen), generators=gens)


def _join(sym: SymmetricGroup, h_ranks: np.ndarray, h_gens: list[int], g: int) -> np.ndarray:
    """Ranks of <H, g> by adding left cosets xH until closed under the generators."""
    mult = sym.mult
    member = np.zeros(sym.order, dtype=bool)
    member[h_ranks] = True
    gens = h_gens + [g]
    queue = [g]
    while queue:
        x = queue.pop()
        if member[x]:
            continue
        member[mult[x, h_ranks]] = True
        for s in gens:
            y = int(mult[s, x])
            if not member[y]:
                queue.append(y)
    return np.flatnonzero(member)


def is_conjugate_avoiding(G: PermGroup, pi: Permutation) -> bool:
    """True iff G contains no conjugate of pi (same cycle type in S_r)."""
    if G.r != pi.r:
        raise DimensionError(f"group of degree {G.r} vs permutation of degree {pi.r}")
    return pi.cycle_type() not in G.cycle_types


def brute_force_conjugate_search(G: PermGroup, pi: Permutation) -> bool:
    """Oracle: True iff some sigma in S_r has sigma pi sigma^-1 in G.

    Conjugates by every sigma at once, without looking at cycle types.
    """
    if G.r != pi.r:
        raise DimensionError(f"group of degree {G.r} vs permutation of degree {pi.r}")
    sym = symmetric_group(G.r)
    sigma = sym.perms.astype(np.int64)
    img = np.array([x - 1 for x in pi.images], dtype=np.int64)
    # (sigma pi sigma^-1)(sigma(a)) = sigma(pi(a))
    conj = np.empty_like(sigma)
    rows = np.arange(sym.order)[:, None]
    conj[rows, sigma] = sigma[:, img]
    return bool(np.isin(sym.rank(conj), G.ranks).any())


def young_subgroup(r: int, i: int, support=None) -> PermGroup:
    """Setwise stabilizer of an i-subset of [r], i.e. a conjugate of S_i x S_{r-i}."""
    if not 1 <= i <= r - 1:
        raise ValueError(f"need 1 <= i <= r-1, got i={i}, r={r}")
    block = tuple(range(1, i + 1)) if support is None else tuple(sorted(support))
    if len(block) != i or len(set(block)) != i or not all(1 <= a <= r for a in block):
        raise ValueError(f"support {support} is not an {i}-subset of [{r}]")
    rest = [a for a in range(1, r + 1) if a not in block]
    gens = [Permutation.from_cycles(r, [(a, b)]) for a, b in zip(block, block[1:])]
    gens += [Permutation.from_cycles(r, [(a, b)]) for a, b in zip(rest, rest[1:])]
    sym = symmetric_group(r)
    inside = np.zeros(r, dtype=bool)
    inside[[a - 1 for a in block]] = True
    keep = np.all(inside[sym.perms] == inside[None, :], axis=1)
    return PermGroup(r, np.flatnonzero(keep), generators=gens)


def si_available(r: int, k: int, i: int) -> bool:
    """Whether S_i x S_{r-i} avoids every conjugate of cyc^k.

    cyc^k splits into m = gcd(r, k) cycles of length r/m, and a young
    subgroup holds a permutation of that type exactly when r/m divides
    both block sizes.
    """
    if not 1 <= i <= r - 1:
        raise ValueError(f"need 1 <= i <= r-1, got i={i}")
    if k % r == 0:
        raise InvalidResidueError(f"k = {k} is 0 mod {r}")
    length = r // math.gcd(r, k)
    return not (i % length == 0 and (r - i) % length == 0)


# ---------------------------------------------------------------------------
# subgroup lattice


@dataclass
class _Lattice:
    r: int
    groups: list[PermGroup]
    class_of: list[int]
    classes: list[list[int]]


@lru_cache(maxsize=None)
def _lattice(r: int) -> _Lattice:
    if r > MAX_R_FULL:
        raise CapabilityError(f"full subgroup enumeration is capped at r <= {MAX_R_FULL}")
    sym = symmetric_group(r)
    mult = sym.mult
    inv = sym.inverse
    # conj[s, x] = s x s^-1
    conj = mult[mult[np.arange(sym.order)[:, None], np.arange(sym.order)[None, :]], inv[:, None]]

    def mask_of(ranks):
        bits = np.zeros(sym.order, dtype=bool)
        bits[ranks] = True
        return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")

    index: dict[int, int] = {}
    groups: list[np.ndarray] = []
    gens_of: list[list[int]] = []
    class_of: list[int] = []
    classes: list[list[int]] = []

    def add_class(ranks: np.ndarray, gens: list[int]) -> None:
        cid = len(classes)
        members = []
        for s in range(sym.order):
            conj_ranks = np.sort(conj[s, ranks])
            m = mask_of(conj_ranks)
            if m in index:
                continue
            index[m] = len(groups)
            members.append(len(groups))
            groups.append(conj_ranks)
            gens_of.append([int(conj[s, g]) for g in gens])
            class_of.append(cid)
        classes.append(members)

    cyclic_gens = []
    for g in range(sym.order):
        powers = [0]
        x = g
        while x != 0:
            powers.append(x)
            x = int(mult[g, x])
        ranks = np.array(sorted(powers))
        m = mask_of(ranks)
        if m not in index:
            add_class(ranks, [g] if g else [])
        if not any(mask_of_c == m for mask_of_c, _ in cyclic_gens):
            cyclic_gens.append((m, g))

    pending = [c[0] for c in classes]
    while pending:
        h = pending.pop()
        h_ranks = groups[h]
        h_mask = mask_of(h_ranks)
        for c_mask, g in cyclic_gens:
            if c_mask & ~h_mask == 0:
                continue
            k_ranks = _join(sym, h_ranks, gens_of[h], g)
            if mask_of(k_ranks) not in index:
                before = len(classes)
                add_class(k_ranks, gens_of[h] + [g])
                pending.extend(classes[before][:1])

    perm_groups = [PermGroup(r, ranks, generators=[sym.element(g) for g in gens])
                   for ranks, gens in zip(groups, gens_of)]
    for grp, ranks in zip(perm_groups, groups):
        grp._mask = mask_of(ranks)
    return _Lattice(r, perm_groups, class_of, classes)


def all_subgroups(r: int) -> list[PermGroup]:
    """Every subgroup of S_r (cyclic-extension closure), r <= 6."""
    return list(_lattice(r).groups)


def subgroup_classes(r: int) -> list[list[PermGroup]]:
    """Subgroups of S_r grouped into conjugacy classes."""
    lat = _lattice(r)
    return [[lat.groups[i] for i in members] for members in lat.classes]


def transposition_partition(G: PermGroup) -> list[frozenset[int]]:
    """Blocks of the relation a ~ b iff (a b) in G, sorted by least element."""
    parent = list(range(G.r + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    transpositions = symmetric_group(G.r).transposition_ranks
    for g in G.ranks:
        pair = transpositions.get(int(g))
        if pair is not None:
            a, b = find(pair[0]), find(pair[1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks: dict[int, set[int]] = {}
    for a in range(1, G.r + 1):
        blocks.setdefault(find(a), set()).add(a)
    return sorted((frozenset(b) for b in blocks.values()), key=min)


def transposition_subgroup(G: PermGroup) -> PermGroup:
    """The subgroup generated by all transpositions in G."""
    transpositions = symmetric_group(G.r).transposition_ranks
    gens = [Permutation.from_cycles(G.r, [transpositions[int(g)]])
            for g in G.ranks if int(g) in transpositions]
    return closure(G.r, gens)


def contains_r_cycle(G: PermGroup) -> bool:
    return (G.r,) in G.cycle_types


def check_claim_simaximal(r: int) -> list[PermGroup]:
    """Subgroups with a two-block transposition partition that are neither
    generated by their transpositions nor contain an r-cycle."""
    if r < 2:
        return []
    bad = []
    for G in all_subgroups(r):
        if len(transposition_partition(G)) != 2:
            continue
        if G == transposition_subgroup(G) or contains_r_cycle(G):
            continue
        bad.append(G)
    return bad


# ---------------------------------------------------------------------------
# coset spaces and color systems


class CosetSpace:
    """Left cosets sigma*Gamma of a subgroup, with the left-multiplication action.

    Cosets are numbered by their least element rank. ``table[c, g]`` is the
    coset reached from coset ``c`` by left multiplication with rank ``g``.
    """

    def __init__(self, group: PermGroup):
        self.group = group
        self.r = group.r
        sym = symmetric_group(self.r)
        elem_to_coset = np.full(sym.order, -1, dtype=np.int32)
        reps = []
        for s in range(sym.order):
            if elem_to_coset[s] >= 0:
                continue
            members = sym.rank(sym.perms[s][sym.perms[group.ranks]])
            elem_to_coset[np.atleast_1d(members)] = len(reps)
            reps.append(s)
        self.elem_to_coset = elem_to_coset
        self.reps = np.array(reps, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.reps)

    @cached_property
    def table(self) -> np.ndarray:
        sym = symmetric_group(self.r)
        all_ranks = np.arange(sym.order)
        table = np.empty((len(self.reps), sym.order), dtype=np.int32)
        for c, s in enumerate(self.reps):
            table[c] = self.elem_to_coset[sym.compose_many(all_ranks, int(s))]
        return table

    def act(self, g, c: int) -> int:
        """Coset reached from ``c`` under left multiplication by ``g`` (rank or Permutation)."""
        if isinstance(g, Permutation):
            g = g.rank
        return int(self.table[c, g])

    def coset_of(self, sigma) -> int:
        if isinstance(sigma, Permutation):
            sigma = sigma.rank
        return int(self.elem_to_coset[sigma])

    def representative(self, c: int) -> Permutation:
        return symmetric_group(self.r).element(int(self.reps[c]))


@dataclass
class ColorSystem:
    """The S_r-set formed by the coset spaces of the available colors.

    ``young_blocks[j]`` is the block I (with |I| <= r/2) when base group j is
    the setwise stabilizer of I, else None.
    """

    r: int
    k: int
    mode: str
    base_groups: list[PermGroup]
    young_blocks: list[frozenset[int] | None] = field(default_factory=list)

    def __post_init__(self):
        if not self.young_blocks:
            self.young_blocks = [_young_block(G) for G in self.base_groups]

    @cached_property
    def coset_spaces(self) -> list[CosetSpace]:
        return [CosetSpace(G) for G in self.base_groups]

    @property
    def m(self) -> int:
        return len(self.base_groups)

    def values(self):
        """Every color value (j, coset id) in search order."""
        for j, space in enumerate(self.coset_spaces):
            for c in range(len(space)):
                yield (j, c)

    def young_type(self, j: int) -> int | None:
        block = self.young_blocks[j]
        return None if block is None else len(block)

    def describe(self, j: int) -> str:
        G = self.base_groups[j]
        i = self.young_type(j)
        if i is not None:
            return f"S_{i} x S_{self.r - i}"
        return f"order {G.order}"

    def dump(self) -> str:
        lines = [f"{self.r} {self.k} {self.m}"]
        for j, G in enumerate(self.base_groups):
            gens = " ".join(str(g) for g in G.generating_set()) or "()"
            lines.append(f"{G.order} {gens} {len(self.coset_spaces[j])}")
        return "\n".join(lines) + "\n"


def _young_block(G: PermGroup) -> frozenset[int] | None:
    blocks = transposition_partition(G)
    if len(blocks) != 2:
        return None
    small = min(blocks, key=lambda b: (len(b), min(b)))
    if G.order != math.factorial(len(small)) * math.factorial(G.r - len(small)):
        return None
    return small


def _check_residue(r: int, k: int) -> None:
    if r < 2:
        raise ValueError("uniformity must be at least 2")
    if k % r == 0:
        raise InvalidResidueError(f"k = {k} is 0 mod {r}")


@lru_cache(maxsize=None)
def enumerate_available_colors(r: int, k: int, mode: str = "young_only") -> ColorSystem:
    """Available colors for residue k: young classes only, or every maximal
    cyc^k-conjugate-avoiding class (mode ``"full"``)."""
    _check_residue(r, k)
    k %= r
    pi = cyc_power(r, k)
    if mode == "young_only":
        if r > MAX_R_ELEMENTWISE:
            raise CapabilityError(f"young_only mode is capped at r <= {MAX_R_ELEMENTWISE}")
        groups = [young_subgroup(r, i) for i in range(1, r // 2 + 1) if si_available(r, k, i)]
        return ColorSystem(r, k, mode, groups)
    if mode != "full":
        raise ValueError(f"unknown mode {mode!r}")
    if r > MAX_R_FULL:
        raise CapabilityError(f"full mode is capped at r <= {MAX_R_FULL}")
    lat = _lattice(r)
    avoiding = [G for G in lat.groups if is_conjugate_avoiding(G, pi)]
    reps = []
    for members in lat.classes:
        H = lat.groups[members[0]]
        if not is_conjugate_avoiding(H, pi):
            continue
        if any(K.order > H.order and H.issubgroup(K) for K in avoiding):
            continue
        reps.append(_canonical_rep(r, [lat.groups[i] for i in members]))
    reps.sort(key=_color_sort_key)
    return ColorSystem(r, k, mode, reps)


def _canonical_rep(r: int, members: list[PermGroup]) -> PermGroup:
    """Pick the young subgroup on {1..i} when the class has one, else the
    member with the smallest element set."""
    for G in members:
        block = _young_block(G)
        if block is not None and block == frozenset(range(1, len(block) + 1)):
            if len(block) * 2 != r or 1 in block:
                return young_subgroup(r, len(block))
    return min(members, key=lambda G: tuple(G.ranks))


def _color_sort_key(G: PermGroup):
    block = _young_block(G)
    if block is not None:
        return (0, len(block), 0, ())
    return (1, 0, -G.order, tuple(G.ranks))
