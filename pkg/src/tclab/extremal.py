"""Exact codegree Turan values at small n, density tables and certificates."""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from .colorings import (
    AccordantColoring,
    find_coloring,
    format_coloring,
    parse_coloring,
    verify_coloring,
)
from .constructions import ConstructionParams, gen_construction, modulus_admissible
from .hypergraph import Hypergraph, contains_injective, format_hypergraph, parse_hypergraph, tight_cycle
from .permgroup import CapabilityError, InvalidResidueError
from .walks import format_walk, is_homfree, replay_walk, residue_reach_oracle

__all__ = [
    "ExtremalResult",
    "default_caps",
    "exact_search",
    "brute_force_extremal",
    "density_table",
    "Certificate",
    "CertificateRefused",
    "certify_lower_bound",
    "write_certificate",
    "verify_certificate",
]


def default_caps() -> dict[int, int]:
    """Largest n for exact search per uniformity. ``TCL_MAX_N`` raises every cap,
    ``TCL_MAX_R`` the largest uniformity searched at all."""
    caps = {3: 7, 4: 6}
    max_r = int(os.environ.get("TCL_MAX_R", 4))
    if "TCL_MAX_N" in os.environ:
        n = int(os.environ["TCL_MAX_N"])
        caps = {r: n for r in range(2, max_r + 1)}
    return {r: n for r, n in caps.items() if r <= max_r}


@dataclass
class ExtremalResult:
    n: int
    r: int
    k: int | None
    ell: int | None
    best_codegree: int
    witness: Hypergraph
    exact: bool
    nodes_explored: int = 0

    @property
    def ratio(self) -> float:
        return self.best_codegree / self.n


class _WalkState:
    """Digraph of the included edges with a check for new closed walks of a residue."""

    def __init__(self, r: int, k: int):
        self.r = r
        self.k = k
        self.succ: dict[tuple[int, ...], list[tuple[int, ...]]] = {}

    def _arcs(self, e):
        for x in itertools.permutations(e):
            yield x[:-1], x[1:]

    def add(self, e) -> None:
        for u, v in self._arcs(e):
            self.succ.setdefault(u, []).append(v)

    def remove(self, e) -> None:
        for u, v in self._arcs(e):
            lst = self.succ[u]
            lst.remove(v)
            if not lst:
                del self.succ[u]

    def closes_residue(self, e) -> bool:
        """After adding e: is there a closed walk of length = k (mod r) through one of its arcs?

        A walk v ~> u of length = k-1 closes with the arc u -> v.
        """
        r, want = self.r, (self.k - 1) % self.r
        succ = self.succ
        for u, v in self._arcs(e):
            seen = {(v, 0)}
            queue = deque(seen)
            while queue:
                x, c = queue.popleft()
                if x == u and c == want:
                    return True
                c1 = (c + 1) % r
                for y in succ.get(x, ()):
                    if (y, c1) not in seen:
                        seen.add((y, c1))
                        queue.append((y, c1))
        return False


class _CycleState:
    """Included edges with an injective C_ell^r check."""

    def __init__(self, r: int, n: int, ell: int):
        self.r, self.n = r, n
        self.cycle = tight_cycle(r, ell)
        self.edges: set[tuple[int, ...]] = set()

    def add(self, e) -> None:
        self.edges.add(e)

    def remove(self, e) -> None:
        self.edges.discard(e)

    def closes_residue(self, e) -> bool:
        return contains_injective(Hypergraph(self.r, self.n, self.edges), self.cycle, cap=max(12, self.cycle.n))


def _decision_order(n: int, r: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """(r-1)-sets in colex order and edges grouped by the first (r-1)-set containing them."""
    faces = sorted(itertools.combinations(range(1, n + 1), r - 1), key=lambda s: s[::-1])
    seen = set()
    order = []
    for S in faces:
        for v in range(1, n + 1):
            if v in S:
                continue
            e = tuple(sorted(S + (v,)))
            if e not in seen:
                seen.add(e)
                order.append(e)
    return faces, order


class _Search:
    def __init__(self, n, r, k, ell, pinned, symmetry):
        self.n, self.r, self.k, self.ell = n, r, k, ell
        self.faces, self.order = _decision_order(n, r)
        self.pinned = {tuple(sorted(e)): bool(b) for e, b in (pinned or {}).items()}
        self.symmetry = symmetry and not self.pinned
        self.face_of_edge = {e: [tuple(x for x in e if x != v) for v in e] for e in self.order}
        first = self.faces[0]
        self.first_link = [e for e in self.order if set(first) <= set(e)]
        self.nodes = 0

    def _state(self):
        if self.ell is None:
            return _WalkState(self.r, self.k)
        return _CycleState(self.r, self.n, self.ell)

    def feasible(self, t: int) -> Hypergraph | None:
        """A forbidden-free r-graph with min codegree >= t, or None."""
        present = {S: 0 for S in self.faces}
        open_ = {S: self.n - self.r + 1 for S in self.faces}
        state = self._state()
        chosen: list[tuple[int, ...]] = []
        order = self.order
        first_link = set(self.first_link)

        def ok_face(S):
            return present[S] + open_[S] >= t

        def dfs(i, closed_first):
            self.nodes += 1
            if i == len(order):
                return True
            e = order[i]
            faces = self.face_of_edge[e]
            pin = self.pinned.get(e)
            options = (True, False) if pin is None else (pin,)
            for include in options:
                if include and self.symmetry and closed_first and e in first_link:
                    continue
                for S in faces:
                    open_[S] -= 1
                    if include:
                        present[S] += 1
                if all(ok_face(S) for S in faces):
                    if include:
                        state.add(e)
                        chosen.append(e)
                        if not state.closes_residue(e):
                            if dfs(i + 1, closed_first):
                                return True
                        chosen.pop()
                        state.remove(e)
                    else:
                        if dfs(i + 1, closed_first or e in first_link):
                            return True
                for S in faces:
                    open_[S] += 1
                    if include:
                        present[S] -= 1
            return False

        if not all(ok_face(S) for S in self.faces):
            return None
        if dfs(0, False):
            return Hypergraph(self.r, self.n, chosen)
        return None


def _validate(n, r, k, ell):
    if n < r:
        raise ValueError(f"need n >= r (n={n}, r={r})")
    if (k is None) == (ell is None):
        raise ValueError("give exactly one of k (hom-free mode) or ell (cycle mode)")
    if k is not None and k % r == 0:
        raise InvalidResidueError(f"k = {k} is 0 mod {r}")
    if ell is not None and ell <= r:
        raise ValueError(f"need ell > r (ell={ell}, r={r})")


def _is_free(H: Hypergraph, k, ell) -> bool:
    if ell is None:
        return is_homfree(H, k)
    return not contains_injective(H, tight_cycle(H.r, ell), cap=max(12, ell))


def exact_search(n: int, r: int, k: int | None = None, ell: int | None = None, exact: bool = True,
                 caps: dict[int, int] | None = None, pinned=None, symmetry: bool = True) -> ExtremalResult:
    """Largest min codegree of an n-vertex r-graph avoiding closed tight walks of
    length = k (mod r), or (with ``ell``) avoiding a copy of C_ell^r.

    Binary search over the target codegree; each probe is a DFS over edge
    decisions grouped by (r-1)-sets in colex order, cut when some (r-1)-set
    can no longer reach the target or an included edge closes a forbidden
    walk. ``pinned`` fixes some edges in or out.
    """
    _validate(n, r, k, ell)
    caps = default_caps() if caps is None else caps
    within = n <= caps.get(r, -1)
    if not within:
        if exact:
            raise CapabilityError(f"exact search for r={r}, n={n} exceeds the caps {caps}")
        return _lower_bound(n, r, k, ell)
    search = _Search(n, r, k, ell, pinned, symmetry)
    best = search.feasible(0)
    if best is None:
        raise ValueError("pinned edges already contain a forbidden configuration")
    lo, hi = 0, n - r + 1
    lo = max(lo, best.min_codegree())
    while lo < hi:
        mid = (lo + hi + 1) // 2
        H = search.feasible(mid)
        if H is None:
            hi = mid - 1
        else:
            best = H
            lo = H.min_codegree()
    return ExtremalResult(n, r, k, ell, lo, best, True, search.nodes)


def _lower_bound(n, r, k, ell) -> ExtremalResult:
    best = Hypergraph(r, n, [])
    residue = k if ell is None else ell
    for p in range(2, r + 1):
        if not modulus_admissible(r, p, residue % r):
            continue
        H = gen_construction(ConstructionParams(r, p, n))
        if H.min_codegree() > best.min_codegree() or not best.edges:
            best = H
    return ExtremalResult(n, r, k, ell, best.min_codegree(), best, False, 0)


def brute_force_extremal(n: int, r: int, k: int | None = None, ell: int | None = None, pinned=None):
    """Unpruned oracle: try every edge set (respecting pins). Returns (value, witness)."""
    _validate(n, r, k, ell)
    universe = list(itertools.combinations(range(1, n + 1), r))
    pinned = {tuple(sorted(e)): bool(b) for e, b in (pinned or {}).items()}
    fixed = [e for e in universe if pinned.get(e) is True]
    free = [e for e in universe if e not in pinned]
    best_val, best_H = -1, None
    for bits in range(1 << len(free)):
        edges = fixed + [free[i] for i in range(len(free)) if bits >> i & 1]
        H = Hypergraph(r, n, edges)
        val = H.min_codegree()
        if val <= best_val:
            continue
        if _is_free(H, k, ell):
            best_val, best_H = val, H
    return best_val, best_H


def density_table(r: int, k: int, n_range, exact: bool = False, caps=None) -> list[dict]:
    """Rows ``n, p, construction, exact, ratio`` for each n.

    ``construction`` is the best min codegree among constructions whose
    modulus p divides r/gcd(r, k); ``exact`` is filled when requested and
    within caps.
    """
    if k % r == 0:
        raise InvalidResidueError(f"k = {k} is 0 mod {r}")
    caps = default_caps() if caps is None else caps
    moduli = [p for p in range(2, r + 1) if modulus_admissible(r, p, k)]
    rows = []
    for n in n_range:
        row = {"n": n, "p": None, "construction": None, "exact": None, "ratio": None}
        for p in moduli:
            if n < r:
                break
            val = gen_construction(ConstructionParams(r, p, n)).min_codegree()
            if row["construction"] is None or val > row["construction"]:
                row["p"], row["construction"] = p, val
        if exact and n >= r and n <= caps.get(r, -1):
            row["exact"] = exact_search(n, r, k, caps=caps).best_codegree
        best = row["exact"] if row["exact"] is not None else row["construction"]
        if best is not None:
            row["ratio"] = best / n
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# certificates


class CertificateRefused(ValueError):
    def __init__(self, walk):
        super().__init__(f"graph has a closed tight walk of forbidden residue: {' '.join(map(str, walk))}")
        self.walk = walk


@dataclass
class Certificate:
    graph: Hypergraph
    k: int
    codegree: int
    transcript: dict = field(default_factory=dict)
    coloring: AccordantColoring | None = None


def certify_lower_bound(H: Hypergraph, k: int, coloring: AccordantColoring | None = None,
                        search_coloring: bool = True) -> Certificate:
    """Bundle H with its min codegree and the checks a verifier re-runs.

    Refuses (raising :class:`CertificateRefused` carrying a witness walk) when H
    is not hom-free for residue k.
    """
    free, walk = is_homfree(H, k, return_witness=True)
    if not free:
        raise CertificateRefused(walk)
    oracle = residue_reach_oracle(H, k)
    if coloring is None and search_coloring:
        mode = "full" if H.r <= 6 else "young_only"
        result = find_coloring(H, k, mode)
        coloring = result.coloring if result.sat else None
    if coloring is not None:
        if coloring.system.k % H.r != k % H.r:
            raise ValueError(f"attached coloring uses residue {coloring.system.k}, not {k}")
        if not verify_coloring(H, coloring)[0]:
            raise ValueError("attached coloring is not accordant")
    transcript = {
        "homfree_period": free,
        "homfree_product": not oracle,
        "coloring": coloring is not None,
    }
    return Certificate(H, k, H.min_codegree() if H.n >= H.r else 0, transcript, coloring)


def write_certificate(cert: Certificate, directory) -> Path:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    H = cert.graph
    (d / "graph.txt").write_text(format_hypergraph(H))
    flags = " ".join(f"{key}={int(val)}" for key, val in sorted(cert.transcript.items()))
    (d / "meta.txt").write_text(f"{H.n} {H.r} {cert.k} {cert.codegree} {flags}\n")
    if cert.coloring is not None:
        (d / "coloring.txt").write_text(format_coloring(cert.coloring))
    elif (d / "coloring.txt").exists():
        (d / "coloring.txt").unlink()
    return d


def verify_certificate(directory) -> tuple[bool, list[str]]:
    """Re-check a certificate directory from scratch. Returns ``(ok, problems)``."""
    d = Path(directory)
    problems = []
    try:
        H = parse_hypergraph((d / "graph.txt").read_text())
        fields = (d / "meta.txt").read_text().split()
        n, r, k, codegree = (int(x) for x in fields[:4])
    except (OSError, ValueError) as exc:
        return False, [f"unreadable certificate: {exc}"]
    if (n, r) != (H.n, H.r):
        problems.append(f"meta says n={n} r={r}, graph has n={H.n} r={H.r}")
    actual = H.min_codegree() if H.n >= H.r else 0
    if actual != codegree:
        problems.append(f"min codegree is {actual}, certificate claims {codegree}")
    free, walk = is_homfree(H, k, return_witness=True)
    if not free:
        problems.append(f"not hom-free: walk {format_walk(walk).strip()} (replays: {replay_walk(H, walk)})")
    if residue_reach_oracle(H, k) == free:
        problems.append("period and product-graph checks disagree")
    if (d / "coloring.txt").exists():
        try:
            C = parse_coloring((d / "coloring.txt").read_text())
            ok, violations = verify_coloring(H, C)
            if not ok:
                problems.append(f"coloring has {len(violations)} accordance violations")
            if C.system.k % r != k % r:
                problems.append(f"coloring is for k={C.system.k}, certificate for k={k}")
        except ValueError as exc:
            problems.append(f"bad coloring: {exc}")
    return not problems, problems
