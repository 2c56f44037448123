# The modular-sum construction and accordant colorings.
#
# Split [n] into p balanced parts. An r-set is an edge when the part indices
# of its vertices add up to 1 mod p. When p divides r/gcd(r, k) no closed
# tight walk has length k mod r.

from tclab.colorings import extract_parts, find_coloring, used_colors, verify_coloring
from tclab.constructions import (
    ConstructionParams,
    canonical_p2_coloring,
    check_construction_free,
    construction_min_codegree,
    gen_construction,
)
from tclab.hypergraph import complete

P = ConstructionParams(r=4, p=2, n=10)
H = gen_construction(P)
print(H, "parts", [list(part) for part in P.parts])
print("min codegree, bound, ok:", construction_min_codegree(P, H))

report = check_construction_free(P, k=2, ell_list=[6, 10])
print("free of residue 2:", report.ok, "cycles checked", report.cycles_checked)

# 4/gcd(4, 1) = 4 is even, so residue 1 is covered as well
print("residue 1 covered too:", check_construction_free(P, 1).ok)
# 3 does not divide 4/gcd(4, 2) = 2
print("p=3, residue 2:", check_construction_free(ConstructionParams(4, 3, 9), 2).hypothesis)

# every edge meets V_1 in an odd number of vertices, so odd young colors suffice
C = canonical_p2_coloring(P)
ok, _ = verify_coloring(H, C)
print("canonical coloring accordant:", ok, "young sizes used",
      sorted({C.system.young_type(j) for j in used_colors(C)}))
e = H.edge_list[0]
print("edge", e, "splits as", extract_parts(C.system, e, C.value(e)))

# the solver finds colorings on its own, and reports the inconsistent component otherwise
res = find_coloring(H, 2)
print("solver:", res.sat, "colors", sorted(used_colors(res.coloring)))
bad = find_coloring(complete(3, 4), 1)
print("K_4^3 with residue 1:", bad.sat, "component", bad.component)
