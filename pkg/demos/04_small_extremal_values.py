# Small exact codegree values next to the construction bounds.
#
# exact_search binary-searches the target codegree and runs a DFS over edge
# decisions for each probe. Beyond the caps only the constructions remain.

import tempfile
import time

from tclab.constructions import ConstructionParams, gen_construction
from tclab.extremal import certify_lower_bound, density_table, exact_search, verify_certificate, write_certificate

for n, r, k in [(5, 3, 1), (6, 3, 2), (7, 3, 1), (6, 4, 2)]:
    t0 = time.perf_counter()
    res = exact_search(n, r, k)
    print(f"n={n} r={r} k={k}: {res.best_codegree} ({res.nodes_explored} nodes, {time.perf_counter() - t0:.2f}s)")

print("avoiding a copy of C_5^4 on 6 vertices:", exact_search(6, 4, ell=5).best_codegree)

for r, k in [(4, 2), (6, 2), (3, 1)]:
    print(f"r={r} k={k}")
    for row in density_table(r, k, range(2 * r, 15)):
        print(f"  n={row['n']:2d} p={row['p']} construction={row['construction']} ratio={row['ratio']:.3f}")

# a certificate is a directory any third party can re-check
H = gen_construction(ConstructionParams(3, 3, 9))
with tempfile.TemporaryDirectory() as tmp:
    d = write_certificate(certify_lower_bound(H, 1), tmp)
    print(sorted(p.name for p in d.iterdir()), verify_certificate(d))
