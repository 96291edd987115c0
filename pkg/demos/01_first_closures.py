"""First contact: building algebras and computing their closures.

An algebra is described by a presentation string; the closure attaches m
structural maps whose linear factors divide every characteristic
polynomial.  For dual numbers the 2-closure is the algebra itself with the
conjugation x -> -x.
"""

from closurelab import algebra_from_presentation, m_closure, parse_presentation

# dual numbers K[x]/(x^2)
dual = algebra_from_presentation(parse_presentation("Q[x]/(x^2)"))
print("dual numbers: dimension", dual.dim, "basis", dual.labels)

result = m_closure(dual, 2)
print("2-closure dimension:", result.dim)
print("first map sends x to  ", dict(result.maps[0].rows[1]))
print("second map sends x to ", dict(result.maps[1].rows[1]),
      " (the negative: together they sum to trace(x) = 0)")

# the degenerate cases are part of the contract
for m in (0, 1, 3):
    print(f"m={m}: dimension {m_closure(dual, m).dim}"
          "   (base field / the algebra itself / zero beyond the dimension)")

# a first nontrivial table row: the square-zero plane has closure 6
plane = algebra_from_presentation(parse_presentation("Q[x,y]/((x,y)^2)"))
r = m_closure(plane, 2)
print("\nsquare-zero plane (x, y)^2: 2-closure dimension", r.dim)
print("quotient basis:", [r.closure.label_str(i) for i in range(r.dim)])
