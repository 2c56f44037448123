# Which subgroups of S_r can serve as colors for residue k.
#
# A color must avoid every conjugate of cyc^k, the k-th power of the shift
# (1 2 ... r). For the young subgroups S_i x S_{r-i} this has a closed form,
# checked here against conjugating by all of S_r.

from tclab.permgroup import (
    brute_force_conjugate_search,
    cyc_power,
    enumerate_available_colors,
    si_available,
    young_subgroup,
)

for r in (4, 6, 8):
    print(f"r={r}")
    for k in range(1, r):
        row = "".join("+" if si_available(r, k, i) else "." for i in range(1, r))
        print(f"  k={k}  i=1..{r - 1}: {row}")

r, k = 6, 2
pi = cyc_power(r, k)
print("cyc^2 in S_6 is", pi, "of type", pi.cycle_type())
print("S_3 x S_3 meets its class:", brute_force_conjugate_search(young_subgroup(6, 3), pi))

# the young colors, written as order, generators, number of cosets
print(enumerate_available_colors(6, 2).dump())

# the full lattice search turns up maximal classes that are not young
for r, k in [(4, 1), (6, 1), (6, 3)]:
    system = enumerate_available_colors(r, k, "full")
    print(f"r={r} k={k}:", ", ".join(system.describe(j) for j in range(system.m)))
