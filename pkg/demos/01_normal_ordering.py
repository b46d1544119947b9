"""Normal ordering in the vacuum module V(k,0) of affine sl2.

Vectors are combinations of canonical monomials h(..)e(..)f(..)|0>.  Applying
a mode rewrites the result back into that basis with exact rationals.
"""

from pfva.current_rewrite import apply_mode, apply_word, e, f, from_word, h, theta
from pfva.fock_states import enumerate_monomials

k = 2
print(f"level k = {k}\n")

# A word of modes, applied right to left to the vacuum.
v = from_word([f(-2), e(-1)], k)
print("f(-2)e(-1)|0> in canonical order:", v)
print("h(1) on it:                      ", apply_mode(h(1), v, k))
print("which equals -2 f(-1)e(-1)|0> =  ", -2 * from_word([f(-1), e(-1)], k))

# The level appears through the central term of [e(1), f(-1)].
print("\ne(1)f(-1)|0> =", apply_mode(e(1), from_word([f(-1)], k), k))

# Zero modes move through an sl2 string: f(0)^2 e(-1)|0> = -2 f(-1)|0>.
print("f(0)^2 e(-1)|0> =", apply_word([f(0), f(0)], from_word([e(-1)], k), k))

# Weight and charge grade the space; the counts below are the PBW dimensions.
print("\nweight  charge-0 basis size")
for n in range(6):
    print(f"{n:>6}  {len(enumerate_monomials(n, 0))}")

# theta swaps e and f and negates h; it is an involution.
w = from_word([e(-1), f(-1)], k)
print("\ntheta(e(-1)f(-1)|0>) =", theta(w))
print("theta twice gives back the vector:", theta(theta(w)) == w)
