"""
Transfer maps and their inverses
================================

``phi`` subtracts from each coordinate the largest edge bound below it.
``psi`` takes the maximum of the walk forms. On a gainy or acyclic network
they are inverse bijections. Locally ``phi`` is affine, and the
determinant of its linear part is a product over tight cycles.
"""

from fractions import Fraction

from markednet import linearity_matrix, paper_example, phi, phi_op, point_to_json, psi

net = paper_example("quad")
x = {"v": Fraction(2), "w": Fraction(3, 2)}
y = phi(net, x)
print("phi", point_to_json(x), "=", point_to_json(y))
print("psi(phi(x)) =", point_to_json(psi(net, y)))
assert psi(net, y) == x

m = linearity_matrix(net, x)
print("local linear part", [[str(a) for a in r] for r in m.entries], "offset", [str(a) for a in m.offset])
print("det", m.det, "cycle product", m.cycle_product)

# On the kite two points collapse onto the origin.
kite = paper_example("kite")
print("kite:", point_to_json(phi(kite, {"v": 0, "w": 0})), point_to_json(phi(kite, {"v": 2, "w": 2})))

# The opposite map works through in-edges instead of out-edges.
print("phi_op on notab:", point_to_json(phi_op(paper_example("notab"), {"v": 1, "w": 1})))
