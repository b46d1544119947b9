"""The commutant N0 of the Heisenberg subalgebra.

N0 is cut out by h(m)v = 0 for m >= 0.  Its graded dimensions, together with
the Heisenberg Fock space, account for all of V(k,0)(0).
"""

from pfva.graded_linalg import commutant_space, commutant_space_virasoro, contains, same_span
from pfva.parafermion_lab import check_decomposition, n0_basis, w_vectors

cutoff = 6
for k in (2, 3, 5):
    print(f"k = {k}: dim N0 by weight = {n0_basis(cutoff, k).dims_list()}")

k = 2
report = check_decomposition(cutoff, k)
print("\ncharge-zero part as Heisenberg Fock space times N0:")
for name in ("V0", "Heisenberg", "N0", "convolution"):
    print(f"  {name:>12}: {list(report.dims[name].values())}")
print("  decomposition holds:", report.passed)

# The same spaces come out of the Heisenberg Virasoro zero mode.
agree = all(same_span(commutant_space(n, 0, k), commutant_space_virasoro(n, 0, k)) for n in range(cutoff + 1))
print("\nkernel of h(1..n) equals kernel of (omega_gamma)_0:", agree)

for i, w in enumerate(w_vectors(k), start=3):
    print(f"W{i} lies in N0 at weight {i}: {contains(commutant_space(i, 0, k), w)[0]}")
print("\nweight-3 basis of N0:")
for v in commutant_space(3, 0, k).vectors():
    print("  ", v)
