"""Vertex operator modes u_n w and the three Virasoro vectors.

mode(u, n, w) expands u_n through the iterate formula, so any two vectors
can be multiplied.  The coset vector omega = omega_aff - omega_gamma is the
conformal vector of the parafermion algebra.
"""

from pfva.fock_states import State
from pfva.parafermion_lab import proportionality, w_vectors
from pfva.vertex_modes import VirasoroKind, central_charge, is_primary, mode, virasoro_vector

for k in (2, 3, 4):
    print(f"k = {k}")
    for kind in VirasoroKind:
        w = virasoro_vector(kind, k)
        half_c = mode(w, 3, w, k)
        assert half_c == central_charge(kind, k) / 2 * State.vacuum()
        print(f"  {kind.name.lower():>6}: c = {central_charge(kind, k)}")

k = 3
omega = virasoro_vector(VirasoroKind.COSET, k)
print(f"\nat k = {k}, omega = {omega}")

w3, w4, w5 = w_vectors(k)
for i, w in enumerate((w3, w4, w5), start=3):
    print(f"W{i} is a Virasoro primary of weight {i}: {is_primary(w, i, k)}")

# The top product of W3 with itself lands on omega.
prod = mode(w3, 3, w3, k)
print(f"\nW3_3 W3 = {proportionality(prod, omega)} * omega")
print("predicted 36 k^3 (k-2)(k+2)(3k+4) =", 36 * k**3 * (k - 2) * (k + 2) * (3 * k + 4))
