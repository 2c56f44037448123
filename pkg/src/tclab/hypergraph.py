"""r-graphs on vertex set {1..n}: codegrees, tight cycles, blowups, embeddings."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .permgroup import CapabilityError

__all__ = [
    "Hypergraph",
    "OrientedEdge",
    "colex_rank",
    "colex_unrank",
    "complete",
    "tight_cycle",
    "blowup",
    "contains_injective",
    "format_hypergraph",
    "parse_hypergraph",
    "read_hypergraph",
    "write_hypergraph",
    "DEFAULT_EMBED_CAP",
]

DEFAULT_EMBED_CAP = 12


def colex_rank(subset) -> int:
    """Colex rank of a set of 1-based vertices."""
    return sum(math.comb(v - 1, i + 1) for i, v in enumerate(sorted(subset)))


def colex_unrank(rank: int, r: int) -> tuple[int, ...]:
    out = []
    for i in range(r, 0, -1):
        v = i - 1
        while math.comb(v + 1, i) <= rank:
            v += 1
        out.append(v + 1)
        rank -= math.comb(v, i)
    return tuple(sorted(out))


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph with vertices 1..n and edges stored as sorted tuples."""

    r: int
    n: int
    edges: frozenset[tuple[int, ...]]

    def __init__(self, r: int, n: int, edges=()):
        if r < 1:
            raise ValueError("uniformity must be positive")
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        normalized = set()
        for e in edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != r or len(set(t)) != r:
                raise ValueError(f"{tuple(e)} is not a set of {r} distinct vertices")
            if t[0] < 1 or t[-1] > n:
                raise ValueError(f"edge {t} leaves the vertex range 1..{n}")
            normalized.add(t)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e) -> bool:
        return tuple(sorted(e)) in self.edges

    @cached_property
    def edge_list(self) -> list[tuple[int, ...]]:
        return sorted(self.edges)

    @cached_property
    def _links(self) -> dict[tuple[int, ...], frozenset[int]]:
        links: dict[tuple[int, ...], set[int]] = {}
        for e in self.edges:
            for v in e:
                links.setdefault(tuple(x for x in e if x != v), set()).add(v)
        return {S: frozenset(vs) for S, vs in links.items()}

    def link(self, S) -> frozenset[int]:
        """Vertices v with S + v an edge."""
        S = tuple(sorted(S))
        if len(S) != self.r - 1:
            raise ValueError(f"link needs an (r-1)-set, got {len(S)} vertices")
        return self._links.get(S, frozenset())

    def codegree(self, S) -> int:
        S = tuple(sorted(S))
        if len(S) != self.r - 1 or len(set(S)) != len(S):
            raise ValueError(f"codegree needs {self.r - 1} distinct vertices, got {S}")
        if S and (S[0] < 1 or S[-1] > self.n):
            raise ValueError(f"{S} is not a subset of 1..{self.n}")
        return len(self._links.get(S, ()))

    def min_codegree(self) -> int:
        """delta_{r-1}: the least codegree over all (r-1)-subsets of [n]."""
        if self.n < self.r:
            raise ValueError(f"min codegree needs n >= r (n={self.n}, r={self.r})")
        total = math.comb(self.n, self.r - 1)
        if len(self._links) < total:
            return 0
        return min(len(v) for v in self._links.values())

    def codegrees(self) -> Counter:
        """Histogram codegree -> number of (r-1)-sets."""
        hist = Counter(len(v) for v in self._links.values())
        missing = math.comb(self.n, self.r - 1) - len(self._links)
        if missing:
            hist[0] += missing
        return hist

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def with_edges(self, extra) -> "Hypergraph":
        return Hypergraph(self.r, self.n, itertools.chain(self.edges, extra))

    def without_edges(self, removed) -> "Hypergraph":
        gone = {tuple(sorted(e)) for e in removed}
        return Hypergraph(self.r, self.n, (e for e in self.edges if e not in gone))

    def relabel(self, mapping) -> "Hypergraph":
        """Apply a vertex map given as a dict or a sequence indexed by v-1."""
        get = mapping.__getitem__ if isinstance(mapping, dict) else (lambda v: mapping[v - 1])
        return Hypergraph(self.r, self.n, (tuple(get(v) for v in e) for e in self.edges))

    def to_mask(self) -> int:
        """Edge set as a bitmask over colex ranks of r-subsets."""
        mask = 0
        for e in self.edges:
            mask |= 1 << colex_rank(e)
        return mask

    @classmethod
    def from_mask(cls, r: int, n: int, mask: int) -> "Hypergraph":
        edges = []
        rank = 0
        while mask:
            if mask & 1:
                edges.append(colex_unrank(rank, r))
            mask >>= 1
            rank += 1
        return cls(r, n, edges)

    def __repr__(self) -> str:
        return f"Hypergraph(r={self.r}, n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class OrientedEdge:
    """An ordered r-tuple of distinct vertices whose support is an edge."""

    tuple: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.tuple)) != len(self.tuple):
            raise ValueError(f"oriented edge {self.tuple} repeats a vertex")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.tuple))

    def check(self, H: Hypergraph) -> None:
        if self.support not in H.edges:
            raise ValueError(f"{self.tuple} does not orient an edge")


def complete(r: int, n: int) -> Hypergraph:
    return Hypergraph(r, n, itertools.combinations(range(1, n + 1), r))


def tight_cycle(r: int, ell: int) -> Hypergraph:
    """C_ell^r on vertices 1..ell; vertex i+1 plays the role of cyclic position i."""
    if ell <= r:
        raise ValueError(f"tight cycle needs ell > r (ell={ell}, r={r})")
    return Hypergraph(r, ell, (tuple((i + j) % ell + 1 for j in range(r)) for i in range(ell)))


def blowup(H: Hypergraph, t: int) -> Hypergraph:
    """Replace every vertex v by the class {(v-1)t+1, ..., vt} and every edge by
    the complete r-partite r-graph on its classes."""
    if t < 1:
        raise ValueError("blowup factor must be at least 1")
    edges = []
    for e in H.edges:
        classes = [range((v - 1) * t + 1, v * t + 1) for v in e]
        edges.extend(itertools.product(*classes))
    return Hypergraph(H.r, H.n * t, edges)


def _embedding_order(F: Hypergraph) -> list[int]:
    """Greedy order: repeatedly take the vertex closing the most edges, then the
    one touching the most placed vertices."""
    placed: list[int] = []
    placed_set: set[int] = set()
    remaining = set(range(1, F.n + 1))
    incident = {v: [e for e in F.edges if v in e] for v in remaining}
    while remaining:
        def score(v):
            closes = sum(1 for e in incident[v] if all(u in placed_set or u == v for u in e))
            touch = sum(len(placed_set.intersection(e)) for e in incident[v])
            return (closes, touch, len(incident[v]), -v)
        v = max(remaining, key=score)
        placed.append(v)
        placed_set.add(v)
        remaining.discard(v)
    return placed


def contains_injective(H: Hypergraph, F: Hypergraph, cap: int = DEFAULT_EMBED_CAP) -> bool:
    """Whether some injective map V(F) -> V(H) sends every F-edge to an H-edge."""
    return find_embedding(H, F, cap) is not None


def find_embedding(H: Hypergraph, F: Hypergraph, cap: int = DEFAULT_EMBED_CAP) -> dict[int, int] | None:
    """Backtracking search for an injective homomorphism F -> H.

    Vertices of F are placed in a greedy order; a vertex that completes an
    F-edge whose other r-1 vertices are placed draws candidates from the
    link of their images, and images must have at least the F-degree.
    """
    if F.r != H.r:
        raise ValueError(f"uniformity mismatch: F has r={F.r}, H has r={H.r}")
    if F.n > cap:
        raise CapabilityError(f"pattern has {F.n} vertices, above the cap {cap}")
    if not F.edges:
        return {v: v for v in range(1, F.n + 1)} if F.n <= H.n else None
    if len(F.edges) > len(H.edges) or F.n > H.n:
        return None

    order = _embedding_order(F)
    pos = {v: i for i, v in enumerate(order)}
    # edges closed at step i, with the already-placed vertices of each
    closing: list[list[tuple[int, ...]]] = [[] for _ in order]
    for e in F.edges:
        last = max(e, key=pos.__getitem__)
        closing[pos[last]].append(tuple(u for u in e if u != last))
    f_degree = Counter(v for e in F.edges for v in e)
    h_degree = Counter(v for e in H.edges for v in e)
    all_vertices = sorted(range(1, H.n + 1), key=lambda v: -h_degree[v])

    image: dict[int, int] = {}
    used: set[int] = set()

    def candidates(i):
        v = order[i]
        cand = None
        for rest in closing[i]:
            lk = H.link(tuple(image[u] for u in rest))
            cand = lk if cand is None else cand & lk
            if not cand:
                return ()
        pool = all_vertices if cand is None else sorted(cand)
        need = f_degree[v]
        return [w for w in pool if w not in used and h_degree[w] >= need]

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for w in candidates(i):
            image[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            used.discard(w)
            del image[v]
        return False

    return dict(image) if extend(0) else None


# ---------------------------------------------------------------------------
# text format


def format_hypergraph(H: Hypergraph, comments=()) -> str:
    """Serialize as ``r n m`` followed by one sorted edge per line."""
    lines = [f"# {c}" if c else "#" for c in comments]
    lines.append(f"{H.r} {H.n} {len(H.edges)}")
    lines.extend(" ".join(map(str, e)) for e in H.edge_list)
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split())
    if not rows:
        raise ValueError("missing header line 'r n m'")
    try:
        r, n, m = (int(x) for x in rows[0])
    except ValueError as exc:
        raise ValueError(f"bad header {' '.join(rows[0])!r}, expected 'r n m'") from exc
    body = rows[1:]
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for row in body:
        e = tuple(int(x) for x in row)
        if len(e) != r:
            raise ValueError(f"edge line {' '.join(row)!r} does not have {r} vertices")
        if list(e) != sorted(e):
            raise ValueError(f"edge line {' '.join(row)!r} is not in increasing order")
        edges.append(e)
    H = Hypergraph(r, n, edges)
    if len(H.edges) != m:
        raise ValueError("duplicate edges in file")
    return H


def read_hypergraph(path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def write_hypergraph(H: Hypergraph, path, comments=()) -> None:
    Path(path).write_text(format_hypergraph(H, comments))
