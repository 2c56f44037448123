"""Closed tight walks through the (r-1)-tuple transition digraph.

A closed tight walk x_1 ... x_L (every cyclic window of r consecutive
vertices is an edge) is exactly a homomorphic image of the tight cycle of
length L. Nodes of the digraph are ordered (r-1)-tuples of distinct
vertices, and each oriented edge x_1 ... x_r is one arc
(x_1..x_{r-1}) -> (x_2..x_r); closed walks of the digraph are closed tight
walks of the hypergraph.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .hypergraph import Hypergraph
from .permgroup import InvalidResidueError

__all__ = [
    "TightWalkDigraph",
    "SccPeriodSummary",
    "build_digraph",
    "strongly_connected_components",
    "scc_periods",
    "is_homfree",
    "find_residue_walk",
    "contains_cycle_hom",
    "closed_walk_lengths_bruteforce",
    "residue_reach_oracle",
    "replay_walk",
    "format_walk",
    "parse_walk",
]


@dataclass
class TightWalkDigraph:
    """CSR digraph on ordered (r-1)-tuples.

    ``nodes[u]`` is the tuple of node u; the successors of u are
    ``targets[indptr[u]:indptr[u+1]]``.
    """

    r: int
    nodes: np.ndarray
    indptr: np.ndarray
    targets: np.ndarray

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def arc_count(self) -> int:
        return len(self.targets)

    def successors(self, u: int) -> np.ndarray:
        return self.targets[self.indptr[u]:self.indptr[u + 1]]

    def node(self, u: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.nodes[u])

    def index(self, tup) -> int:
        """Node id of an ordered (r-1)-tuple (KeyError if absent)."""
        key = self._key_of(np.asarray([tup], dtype=np.int64))[0]
        i = int(np.searchsorted(self._keys, key))
        if i == len(self._keys) or self._keys[i] != key:
            raise KeyError(tup)
        return i

    def _key_of(self, rows: np.ndarray) -> np.ndarray:
        base = self._base
        return rows @ (base ** np.arange(rows.shape[1] - 1, -1, -1, dtype=np.int64))

    def arcs(self):
        for u in range(self.node_count):
            for v in self.successors(u):
                yield u, int(v)


def build_digraph(H: Hypergraph) -> TightWalkDigraph:
    r = H.r
    if H.n < r:
        raise ValueError(f"need n >= r (n={H.n}, r={r})")
    base = H.n + 1
    if not H.edges or r < 2:
        g = TightWalkDigraph(r, np.zeros((0, max(r - 1, 0)), dtype=np.int64),
                             np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int64))
        g._base, g._keys = base, np.zeros(0, dtype=np.int64)
        return g
    edges = np.array(H.edge_list, dtype=np.int64)
    orders = np.array(list(itertools.permutations(range(r))), dtype=np.int64)
    oriented = edges[:, orders].reshape(-1, r)
    weights = base ** np.arange(r - 2, -1, -1, dtype=np.int64)
    tail = oriented[:, :-1] @ weights
    head = oriented[:, 1:] @ weights
    keys, inverse = np.unique(np.concatenate([tail, head]), return_inverse=True)
    src = inverse[:len(tail)]
    dst = inverse[len(tail):]
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(len(keys) + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    indptr = np.cumsum(indptr)
    # decode keys back into tuples
    nodes = np.empty((len(keys), r - 1), dtype=np.int64)
    rest = keys.copy()
    for col in range(r - 2, -1, -1):
        nodes[:, col] = rest % base
        rest //= base
    g = TightWalkDigraph(r, nodes, indptr, dst.astype(np.int64))
    g._base, g._keys = base, keys
    return g


def strongly_connected_components(D: TightWalkDigraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative. Components come out in reverse topological order."""
    n = D.node_count
    indptr, targets = D.indptr.tolist(), D.targets.tolist()
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, indptr[root])]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            u, i = work[-1]
            if i < indptr[u + 1]:
                work[-1] = (u, i + 1)
                v = targets[i]
                if index[v] < 0:
                    index[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack[v] = True
                    work.append((v, indptr[v]))
                elif on_stack[v] and index[v] < low[u]:
                    low[u] = index[v]
                continue
            work.pop()
            if work:
                p = work[-1][0]
                if low[u] < low[p]:
                    low[p] = low[u]
            if low[u] == index[u]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == u:
                        break
                comps.append(comp)
    return comps


@dataclass
class SccPeriodSummary:
    """Per-SCC node lists and periods (0 for components without a cycle)."""

    components: list[list[int]]
    periods: list[int]
    levels: list[dict[int, int]] = field(repr=False, default_factory=list)

    def cyclic(self):
        for comp, d, lev in zip(self.components, self.periods, self.levels):
            if d > 0:
                yield comp, d, lev


def scc_periods(D: TightWalkDigraph) -> SccPeriodSummary:
    """Period of each SCC as the gcd of level(u) + 1 - level(v) over its internal arcs."""
    comps = strongly_connected_components(D)
    comp_id = np.empty(D.node_count, dtype=np.int64)
    for c, comp in enumerate(comps):
        comp_id[comp] = c
    indptr, targets = D.indptr, D.targets
    periods, levels = [], []
    for c, comp in enumerate(comps):
        root = comp[0]
        level = {root: 0}
        queue = deque([root])
        g = 0
        while queue:
            u = queue.popleft()
            for v in targets[indptr[u]:indptr[u + 1]].tolist():
                if comp_id[v] != c:
                    continue
                if v not in level:
                    level[v] = level[u] + 1
                    queue.append(v)
                else:
                    g = math.gcd(g, level[u] + 1 - level[v])
        periods.append(abs(g))
        levels.append(level)
    return SccPeriodSummary(comps, periods, levels)


def _check_k(r: int, k: int) -> int:
    if k % r == 0:
        raise InvalidResidueError(f"k = {k} is 0 mod {r}")
    return k % r


def is_homfree(H: Hypergraph, k: int, return_witness: bool = False):
    """Whether H has no closed tight walk of length = k (mod r).

    With ``return_witness`` the result is ``(free, walk)`` where walk is a
    closed tight walk of length = k (mod r), or None when free.
    """
    k = _check_k(H.r, k)
    if H.n < H.r or not H.edges:
        return (True, None) if return_witness else True
    D = build_digraph(H)
    summary = scc_periods(D)
    for comp, d, level in summary.cyclic():
        if k % math.gcd(d, H.r) == 0:
            if not return_witness:
                return False
            return False, _residue_witness(D, comp, level, H.r, k)
    return (True, None) if return_witness else True


def find_residue_walk(H: Hypergraph, k: int) -> tuple[int, ...] | None:
    return is_homfree(H, k, return_witness=True)[1]


def _residue_witness(D: TightWalkDigraph, comp, level, r: int, k: int) -> tuple[int, ...]:
    """Closed walk of length = k (mod r) through the root of comp.

    Every internal arc u -> v yields the closed walk root ~> u -> v ~> root
    (tree paths both ways); their lengths generate the period, so a bounded
    combination of them hits residue k.
    """
    members = set(comp)
    root = comp[0]
    indptr, targets = D.indptr, D.targets
    parent = {root: None}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in targets[indptr[u]:indptr[u + 1]].tolist():
            if v in members and v not in parent:
                parent[v] = u
                queue.append(v)
    # reverse BFS to root for paths v ~> root
    preds: dict[int, list[int]] = {u: [] for u in comp}
    for u in comp:
        for v in targets[indptr[u]:indptr[u + 1]].tolist():
            if v in members:
                preds[v].append(u)
    nxt = {root: None}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in preds[v]:
            if u not in nxt:
                nxt[u] = v
                queue.append(u)

    def path_from_root(u):
        out = []
        while u is not None:
            out.append(u)
            u = parent[u]
        return out[::-1]

    def path_to_root(v):
        out = []
        while v is not None:
            out.append(v)
            v = nxt[v]
        return out

    back = {root: 0}
    for v in nxt:
        if v not in back:
            chain = []
            x = v
            while x not in back:
                chain.append(x)
                x = nxt[x]
            for y in reversed(chain):
                back[y] = back[nxt[y]] + 1

    loops: dict[int, tuple[int, int]] = {}
    for u in comp:
        for v in targets[indptr[u]:indptr[u + 1]].tolist():
            if v in members:
                loops.setdefault((level[u] + 1 + back[v]) % r, (u, v))
    # shortest combination of loop residues reaching k
    prev: dict[int, tuple[int, int] | None] = {0: None}
    queue = deque([0])
    while queue and k not in prev:
        s = queue.popleft()
        for res in loops:
            t = (s + res) % r
            if t not in prev:
                prev[t] = (s, res)
                queue.append(t)
    if k not in prev:
        raise AssertionError("period criterion and loop residues disagree")
    chosen = []
    s = k
    while prev[s] is not None:
        s0, res = prev[s]
        chosen.append(loops[res])
        s = s0
    node_walk = [root]
    for u, v in chosen:
        node_walk.extend(path_from_root(u)[1:])
        node_walk.extend(path_to_root(v))
    # node_walk is closed (starts and ends at root); read off first coordinates
    return _least_rotation(tuple(int(D.nodes[x][0]) for x in node_walk[:-1]))


def _least_rotation(walk: tuple[int, ...]) -> tuple[int, ...]:
    return min(walk[i:] + walk[:i] for i in range(len(walk)))


def _bool_matpow_has_trace(A: np.ndarray, ell: int) -> bool:
    result = None
    base = A
    e = ell
    while e:
        if e & 1:
            result = base if result is None else (result.astype(np.int64) @ base.astype(np.int64)) > 0
        e >>= 1
        if e:
            base = (base.astype(np.int64) @ base.astype(np.int64)) > 0
    return bool(np.any(np.diagonal(result)))


def contains_cycle_hom(H: Hypergraph, ell: int) -> bool:
    """Whether H has a closed tight walk of length exactly ell (a hom image of C_ell^r)."""
    if ell <= H.r:
        raise ValueError(f"need ell > r (ell={ell}, r={H.r})")
    if H.n < H.r or not H.edges:
        return False
    D = build_digraph(H)
    summary = scc_periods(D)
    for comp, d, _ in summary.cyclic():
        if ell % d:
            continue
        s = len(comp)
        # A^d on a cyclic class (at most s-d+1 nodes) is primitive, so by
        # Wielandt every multiple of d from d*((s-d)^2 + 1) on is realized
        if ell >= d * ((s - d) ** 2 + 1):
            return True
        index = {u: i for i, u in enumerate(comp)}
        A = np.zeros((s, s), dtype=bool)
        for u in comp:
            for v in D.successors(u).tolist():
                j = index.get(v)
                if j is not None:
                    A[index[u], j] = True
        if _bool_matpow_has_trace(A, ell):
            return True
    return False


def closed_walk_lengths_bruteforce(H: Hypergraph, max_len: int) -> set[int]:
    """Lengths L <= max_len of closed tight walks, by exhaustive extension of vertex sequences."""
    r = H.r
    found = set()
    if not H.edges:
        return found
    for e in H.edge_list:
        for start in itertools.permutations(e, r - 1):
            # walks x_1..x_L beginning with this (r-1)-tuple
            stack = [list(start)]
            while stack:
                seq = stack.pop()
                L = len(seq)
                if L >= r:
                    closes = all(
                        tuple(sorted(seq[(i + j) % L] for j in range(r))) in H.edges
                        and len({seq[(i + j) % L] for j in range(r)}) == r
                        for i in range(L - r + 1, L)
                    )
                    if closes:
                        found.add(L)
                if L == max_len:
                    continue
                for v in H.link(seq[L - r + 1:]):
                    stack.append(seq + [v])
    return found


def residue_reach_oracle(H: Hypergraph, k: int) -> bool:
    """Independent check: some node T has (T, k) reachable from (T, 0) in the
    product of the digraph with Z_r. Equals ``not is_homfree(H, k)``."""
    k = _check_k(H.r, k)
    if H.n < H.r or not H.edges:
        return False
    D = build_digraph(H)
    r = H.r
    N = D.node_count
    src = np.repeat(np.arange(N), np.diff(D.indptr))
    dst = D.targets
    rows = (src[:, None] * r + np.arange(r)[None, :]).ravel()
    cols = (dst[:, None] * r + (np.arange(r)[None, :] + 1) % r).ravel()
    P = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(N * r, N * r))
    _, labels = connected_components(P, directed=True, connection="strong")
    labels = labels.reshape(N, r)
    # the product is invariant under shifting residues, so (T,k) reachable
    # from (T,0) forces the reverse as well: same strong component
    return bool(np.any(labels[:, 0] == labels[:, k]))


def replay_walk(H: Hypergraph, walk) -> bool:
    """Every cyclic window of r consecutive vertices of the walk is an edge."""
    walk = list(walk)
    L, r = len(walk), H.r
    if L < r:
        return False
    for i in range(L):
        window = [walk[(i + j) % L] for j in range(r)]
        if len(set(window)) != r or tuple(sorted(window)) not in H.edges:
            return False
    return True


def format_walk(walk) -> str:
    return " ".join(str(v) for v in walk) + "\n"


def parse_walk(text: str) -> tuple[int, ...]:
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            return tuple(int(x) for x in line.split())
    return ()
