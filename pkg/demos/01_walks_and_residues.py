# Closed tight walks and their lengths mod r.
#
# A closed tight walk is a cyclic vertex sequence whose every window of r
# consecutive vertices is an edge. Walks live in a digraph on ordered
# (r-1)-tuples, one arc per ordering of each edge.

from tclab.hypergraph import Hypergraph, blowup, complete, tight_cycle
from tclab.walks import (
    build_digraph,
    closed_walk_lengths_bruteforce,
    is_homfree,
    residue_reach_oracle,
    scc_periods,
)

K = complete(3, 4)
D = build_digraph(K)
print("K_4^3:", D.node_count, "nodes,", D.arc_count, "arcs")

# length 4 = 1 mod 3, so K_4^3 is itself a homomorphic image of C_4^3
free, walk = is_homfree(K, 1, return_witness=True)
print("free of residue 1?", free, "witness", walk)
print("lengths up to 10:", sorted(closed_walk_lengths_bruteforce(K, 10)))

# one edge only ever closes up after a multiple of r steps
single = Hypergraph(3, 3, [(1, 2, 3)])
print("single edge, residues 1 and 2:", is_homfree(single, 1), is_homfree(single, 2))

# periods of the strong components decide everything
for r, ell in [(3, 7), (4, 9)]:
    C = tight_cycle(r, ell)
    periods = sorted({d for _, d, _ in scc_periods(build_digraph(C)).cyclic()})
    print(f"C_{ell}^{r}: periods {periods}")

# blowing up C_6^3 keeps every walk length a multiple of 3
B = blowup(tight_cycle(3, 6), 2)
print("blowup of C_6^3:", B, [is_homfree(B, k) for k in (1, 2)])

# the product-graph oracle is independent of the period computation
print("oracle agrees:", all(is_homfree(B, k) != residue_reach_oracle(B, k) for k in (1, 2)))
