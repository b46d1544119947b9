"""The maximal ideal and the parafermion algebra K0 = N0 / (J cap N0).

J is generated by the singular vector e(-1)^{k+1}|0>.  Inside N0 the ideal is
generated by f(0)^{k+1}e(-1)^{k+1}|0>, a multiple of W^{k+1}.  For k = 2 the
quotient has the graded dimensions of the Ising vacuum module.
"""

import tempfile

from pfva.cache import BasisCache
from pfva.parafermion_lab import check_maximal_ideal, k0_dims, proportionality_check, singular_vectors

for k in (2, 3, 4):
    top, bottom = singular_vectors(k)
    (scalar,) = proportionality_check(k).scalars.values()
    print(f"k={k}: f(0)^{k + 1} {top} = {scalar} W{k + 1}")

with tempfile.TemporaryDirectory() as d:
    cache = BasisCache(d)
    for k in (2, 3):
        r = check_maximal_ideal(6, k, cache=cache)
        print()
        print(r.summary())
        for name, dims in r.dims.items():
            print(f"   {name:>12}: {list(dims.values())}")
        for note in r.notes:
            print("  ", note)
        q = k0_dims(6, k, cache=cache)
        print("   K0 dims:", list(q.dims["K0"].values()), "|", q.notes[0])

print("\nIsing vacuum character 1 + q^2 + q^3 + 2q^4 + 2q^5 + 3q^6 + ... matches K0 at k=2.")
