"""A look inside the construction.

The generic element gamma = sum e_i X_i packages every element of every
base change at once.  Its characteristic polynomial is divided by one
linear factor per slot; the X-coefficients of the remainders generate the
defining ideal, and the quotient carries the structural maps.
"""

from fractions import Fraction

from closurelab import (algebra_from_presentation, divides_check,
                        generic_char_poly, j_generators, m_closure,
                        parse_presentation)

a = algebra_from_presentation(parse_presentation("Q[x,y]/((x,y)^2)"))
g = generic_char_poly(a)
print("generic characteristic polynomial of (x, y)^2  (a local algebra,")
print("so it collapses to a perfect power of Z - X1):")
for d in range(g.degree, -1, -1):
    print(f"  Z^{d} coefficient: {g.coeffs[d]}")

# specializing X to the coordinates of an element recovers its char poly
e = a.element([Fraction(2), Fraction(1), Fraction(-1)])
print("\nspecialized at (2, 1, -1):", g.specialize(e))

# slot 1 contributes nothing (Cayley-Hamilton); slot 2 carries relations
gens = j_generators(a, 2)
nonzero = [x for x in gens if not x.is_zero()]
print(f"\ngenerators in the tensor square: {len(gens)} rows, "
      f"{len(nonzero)} nonzero")
for x in nonzero:
    print("  ", x)

result = m_closure(a, 2)
print("\n2-closure dimension:", result.dim, "| ideal rank:", result.rank)
print("certificate:", divides_check(result))

# large powers are handled slot by slot instead of materializing the full
# tensor power; the intermediate closures are the stage dimensions
big = algebra_from_presentation(parse_presentation("Q[x]/(x^6)"))
r = m_closure(big, 5)
print("\n(x^6) at m=5 via the staged pipeline:")
print("stage dimensions:", r.stage_dims, "-> final", r.dim)
