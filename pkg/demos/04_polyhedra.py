"""
Ord and Chain polyhedra
=======================

``Ord`` is cut out by one inequality per edge. ``Chain`` is its image
under ``phi``: the non-negative orthant intersected with one row per walk
leaving a marked node. Chain is anti-blocking (closed downwards in the
orthant), while Ord is closed under coordinatewise meet and join.
"""

from markednet import (
    LatticeBox,
    chain_hrep,
    check_downclosed,
    check_lattice_closure,
    is_antiblocking_hrep,
    lattice_points,
    mc_volume,
    ord_hrep,
    paper_example,
)

net = paper_example("quad")
ordp, chainp = ord_hrep(net), chain_hrep(net)
for name, poly in (("Ord", ordp), ("Chain", chainp)):
    print(name)
    for row in poly.rows:
        lhs = " + ".join(f"{a}*{d}" for a, d in zip(row.coeffs, poly.dims) if a)
        print(f"   {lhs} <= {row.rhs}    ({row.why})")

print("Chain anti-blocking:", is_antiblocking_hrep(chainp))

box = LatticeBox.cube(net.unmarked, 0, 3)
print("Ord closed under meet/join:", check_lattice_closure(ordp, 500, 1, box).ok)
print("Chain closed downwards:", check_downclosed(chainp, 500, 1, box).ok)

print("lattice points in Ord:", len(lattice_points(ordp, box)))
print("lattice points in Chain:", len(lattice_points(chainp, box)))

# Volumes change by the determinant of the local linear part, so for this
# gainy network Chain is smaller than Ord.
a = mc_volume(ordp, box, 200_000, 1)
b = mc_volume(chainp, box, 200_000, 2)
print(f"volume Ord {a.volume:.3f} +- {a.stderr:.3f}, Chain {b.volume:.3f} +- {b.stderr:.3f}")
