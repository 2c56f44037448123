"""Acceptance criteria 1-9. Each test logs one PASS/FAIL line, shown in the
terminal summary, and then asserts."""

import itertools
import random
import time

import pytest

from tclab.colorings import find_coloring, used_colors, verify_coloring
from tclab.constructions import ConstructionParams, canonical_p2_coloring, gen_construction, modulus_admissible
from tclab.extremal import brute_force_extremal, density_table, exact_search
from tclab.hypergraph import Hypergraph, contains_injective, tight_cycle
from tclab.permgroup import brute_force_conjugate_search, check_claim_simaximal, cyc_power, si_available, young_subgroup
from tclab.walks import is_homfree, residue_reach_oracle

# values of the unpruned oracle, computed before the pruned search existed
BRUTE_GOLDEN = {(4, 3, 1): 1, (5, 3, 1): 1, (5, 3, 2): 1}


def _log(log, number, title, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    log.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail} ({elapsed:.1f}s, limit {limit}s)")
    print(log[-1])
    return ok


def _all_3graphs(n):
    triples = list(itertools.combinations(range(1, n + 1), 3))
    for mask in range(1 << len(triples)):
        yield Hypergraph(3, n, [t for b, t in enumerate(triples) if mask >> b & 1])


def _random_graph(rng, r, n):
    density = rng.uniform(0.15, 0.85)
    return Hypergraph(r, n, [e for e in itertools.combinations(range(1, n + 1), r) if rng.random() < density])


def test_1_availability_dichotomy(acceptance_log):
    t0 = time.perf_counter()
    mismatches = []
    cases = 0
    for r in range(2, 9):
        for k in range(1, r):
            pi = cyc_power(r, k)
            for i in range(1, r):
                cases += 1
                brute = not brute_force_conjugate_search(young_subgroup(r, i), pi)
                if si_available(r, k, i) != brute:
                    mismatches.append((r, k, i))
    spots = (not si_available(6, 2, 3), not si_available(4, 2, 2), si_available(4, 2, 1))
    elapsed = time.perf_counter() - t0
    ok = _log(acceptance_log, 1, "availability dichotomy r<=8", not mismatches and all(spots),
              f"{cases} cases, {len(mismatches)} mismatches, spot values {spots}", elapsed, 10)
    assert ok, mismatches


def test_2_construction_is_homfree(acceptance_log, homfree_registry):
    t0 = time.perf_counter()
    failures = []
    graphs = cycles = 0
    for r in range(2, 7):
        for k in range(1, r):
            for p in range(2, r + 1):
                if not modulus_admissible(r, p, k):
                    continue
                for n in range(r, 13):
                    H = gen_construction(ConstructionParams(r, p, n))
                    graphs += 1
                    period = is_homfree(H, k)
                    product = not residue_reach_oracle(H, k)
                    if not (period and product):
                        failures.append((r, p, k, n, "walk", period, product))
                        continue
                    homfree_registry.append((f"construction r={r} p={p} n={n}", H, k))
                    for ell in range(r + 1, 11):
                        if (ell - k) % r:
                            continue
                        cycles += 1
                        if contains_injective(H, tight_cycle(r, ell)):
                            failures.append((r, p, k, n, "cycle", ell))
    elapsed = time.perf_counter() - t0
    ok = _log(acceptance_log, 2, "constructions hom-free and cycle-free", not failures,
              f"{graphs} graphs, {cycles} cycle searches, {len(failures)} failures", elapsed, 120)
    assert ok, failures[:5]


def test_3_coloring_iff_homfree(acceptance_log, homfree_registry):
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for H in _all_3graphs(5):
        for k in (1, 2):
            res = find_coloring(H, k, "full")
            free = is_homfree(H, k)
            checked += 1
            if res.sat != free or (res.sat and not verify_coloring(H, res.coloring)[0]):
                bad.append((H.edge_list, k))
            if free:
                homfree_registry.append(("all 3-graphs n=5", H, k))
    rng = random.Random(31)
    for r, n in ((3, 7), (4, 6)):
        for _ in range(500):
            H = _random_graph(rng, r, n)
            k = rng.randrange(1, r)
            res = find_coloring(H, k, "full")
            free = is_homfree(H, k)
            checked += 1
            if res.sat != free or (res.sat and not verify_coloring(H, res.coloring)[0]):
                bad.append((H.edge_list, k))
            if free:
                homfree_registry.append((f"random r={r} n={n}", H, k))
    elapsed = time.perf_counter() - t0
    ok = _log(acceptance_log, 3, "accordant coloring exists iff hom-free", not bad,
              f"{checked} instances, {len(bad)} disagreements", elapsed, 300)
    assert ok, bad[:3]


def test_4_two_block_subgroups(acceptance_log):
    t0 = time.perf_counter()
    counts = {r: len(check_claim_simaximal(r)) for r in range(3, 7)}
    elapsed = time.perf_counter() - t0
    ok = _log(acceptance_log, 4, "two-block subgroups are young or hold an r-cycle", not any(counts.values()),
              f"counterexamples per r {counts}", elapsed, 120)
    assert ok


@pytest.mark.parametrize("r,p,k", [(4, 2, 2), (6, 3, 2), (3, 3, 1)])
def test_5_density_shadows(acceptance_log, r, p, k):
    t0 = time.perf_counter()
    rows = density_table(r, k, range(2 * r, 15))
    worst = 0.0
    bad = []
    for row in rows:
        dev = abs(row["ratio"] - 1 / p)
        worst = max(worst, dev * row["n"] / r)
        if row["p"] != p or dev > r / row["n"]:
            bad.append(row)
    elapsed = time.perf_counter() - t0
    ok = _log(acceptance_log, 5, f"density shadow r={r} p={p} k={k}", not bad,
              f"n={2 * r}..14, max |ratio-1/p| / (r/n) = {worst:.3f}", elapsed, 60)
    assert ok, bad


def test_6_canonical_p2_coloring(acceptance_log, homfree_registry):
    t0 = time.perf_counter()
    bad = []
    for r, n in ((2, 6), (4, 8), (6, 12)):
        P = ConstructionParams(r, 2, n)
        H = gen_construction(P)
        C = canonical_p2_coloring(P)
        ok, violations = verify_coloring(H, C)
        sizes = {C.system.young_type(j) for j in used_colors(C)}
        if not ok or any(i is None or i % 2 == 0 for i in sizes):
            bad.append((r, n, len(violations), sizes))
        for k in range(1, r):
            if modulus_admissible(r, 2, k):
                homfree_registry.append((f"p=2 construction r={r} n={n}", H, k))
    elapsed = time.perf_counter() - t0
    ok = _log(acceptance_log, 6, "canonical p=2 coloring accordant, odd young classes only", not bad,
              f"(2,6) (4,8) (6,12), {len(bad)} failures", elapsed, 60)
    assert ok, bad


def test_7_walks_dual(acceptance_log, homfree_registry):
    t0 = time.perf_counter()
    bad = []
    exhaustive = 0
    for n in range(3, 6):
        for H in _all_3graphs(n):
            for k in (1, 2):
                exhaustive += 1
                free = is_homfree(H, k)
                if free == residue_reach_oracle(H, k):
                    bad.append((H.edge_list, k))
                elif free:
                    homfree_registry.append((f"all 3-graphs n={n}", H, k))
    rng = random.Random(77)
    for _ in range(2000):
        r = rng.choice((3, 4))
        n = rng.randint(6, 8)
        H = _random_graph(rng, r, n)
        k = rng.randrange(1, r)
        free = is_homfree(H, k)
        if free == residue_reach_oracle(H, k):
            bad.append((H.edge_list, k))
        elif free:
            homfree_registry.append((f"random r={r} n={n}", H, k))
    elapsed = time.perf_counter() - t0
    ok = _log(acceptance_log, 7, "period test agrees with product-graph oracle", not bad,
              f"{exhaustive} exhaustive + 2000 random, {len(bad)} disagreements", elapsed, 300)
    assert ok, bad[:3]


def test_8_exact_regression(acceptance_log, homfree_registry):
    t0 = time.perf_counter()
    rows = []
    for (n, r, k), golden in BRUTE_GOLDEN.items():
        brute, _ = brute_force_extremal(n, r, k)
        res = exact_search(n, r, k)
        rows.append((n, r, k, golden, brute, res.best_codegree))
        homfree_registry.append((f"extremal n={n} r={r} k={k}", res.witness, k))
    ok_values = all(g == b == e for *_, g, b, e in rows) and rows[0][3] == 1
    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"({n},{r},{k})={e}" for n, r, k, _, _, e in rows)
    ok = _log(acceptance_log, 8, "pruned search equals brute force", ok_values, detail, elapsed, 600)
    assert ok, rows


def test_9_codegree_upper_shadow(acceptance_log, homfree_registry):
    t0 = time.perf_counter()
    assert homfree_registry, "no hom-free graphs were recorded"
    over = []
    for label, H, k in homfree_registry:
        if H.n < H.r:
            continue
        if H.min_codegree() > H.n / 2 + H.r:
            over.append((label, H.n, H.min_codegree()))
    sources = {label.split()[0] for label, _, _ in homfree_registry}
    elapsed = time.perf_counter() - t0
    ok = _log(acceptance_log, 9, "no hom-free graph has min codegree > n/2 + r", not over,
              f"{len(homfree_registry)} graphs from {len(sources)} sources, {len(over)} over", elapsed, 600)
    assert ok, over[:5]
