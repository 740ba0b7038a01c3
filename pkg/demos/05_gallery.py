"""
Gallery: posets, Cayley sequences and lecture hall scalings
===========================================================

Classical families come out as special networks. A finite poset gives
the order and chain polytopes, where ``phi`` is the classical transfer
map. The Cayley network counts Cayley sequences. Rescaling a marked
poset by positive weights gives a lecture hall network, and the scaling
commutes with the transfer maps.
"""

from fractions import Fraction

from markednet import (
    LatticeBox,
    Poset,
    cayley_network,
    chain_hrep,
    lattice_points,
    lecture_hall_network,
    ord_hrep,
    phi,
    phi_op,
    point_to_json,
    poset_to_network,
    scale_point,
    yn_hrep,
)

# The "N" poset: a < c, b < c, b < d.
p = Poset.from_relations("abcd", [("a", "c"), ("b", "c"), ("b", "d")])
net = poset_to_network(p)
box = LatticeBox.cube(p.elements, 0, 1)
print("order ideals:", len(lattice_points(ord_hrep(net), box)))
print("antichains:  ", len(lattice_points(chain_hrep(net), box)))

for n in (1, 2, 3, 4):
    cay = cayley_network(n)
    pts = lattice_points(ord_hrep(cay), LatticeBox.cube(cay.unmarked, 1, 2**n))
    images = {tuple(phi_op(cay, x).values()) for x in pts}
    target = lattice_points(yn_hrep(n), LatticeBox.cube(cay.unmarked, 0, 2**n))
    print(f"n={n}: {len(pts)} Cayley sequences, {len(images)} images, {len(target)} points of Y_n")

s = {"a": 1, "b": 2, "c": 2, "d": 4}
hall = lecture_hall_network(p, s)
x = {"a": Fraction(1, 3), "b": Fraction(1, 2), "c": Fraction(2, 3), "d": Fraction(3, 4)}
print("scale then phi:", point_to_json(phi(hall, scale_point(s, x))))
print("phi then scale:", point_to_json(scale_point(s, phi(net, x))))
