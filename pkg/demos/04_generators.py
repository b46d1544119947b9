"""Generators, verified weight by weight.

Two vectors generate the charge-zero subalgebra V(k,0)(0), and omega with W3
generates the commutant N0.  Every claim is checked only up to the cutoff.
"""

from pfva.current_rewrite import from_word, h
from pfva.graded_linalg import generated_subalgebra
from pfva.parafermion_lab import check_generation_n0, check_generation_v0
from pfva.vertex_modes import VirasoroKind, virasoro_vector

for k in (2, 3):
    r = check_generation_v0(5, k)
    print(r.summary())
    for name, dims in r.dims.items():
        print(f"   {name:>34}: {list(dims.values())}")

# The Heisenberg vector alone falls short: only partition numbers come out.
print("\n<h(-1)> dims:", generated_subalgebra([from_word([h(-1)], 2)], 5, 2).dims_list())

print()
for k in (2, 3):
    r = check_generation_n0(6, k)
    print(r.summary(), "| W3_3 W3 coefficient:", r.scalars["w3w3"])
    for name, dims in r.dims.items():
        print(f"   {name:>6}: {list(dims.values())}")

# The Virasoro vector by itself misses W3 at weight 3.
k = 3
omega = virasoro_vector(VirasoroKind.COSET, k)
print("\n<omega> dims at k=3:", generated_subalgebra([omega], 5, k).dims_list())
