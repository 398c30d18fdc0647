"""Deciding whether P + X covers the plane exactly k times.

verify_exact cuts the fundamental parallelogram of the common sublattice into
slab cells and counts translates over each one. It either proves a constant
multiplicity or returns two points with different counts.
"""

from fractions import Fraction as F

from multitile import Lattice2, SymPolygon, TileMultiset, Vec, Z2, multiplicity_at, verify_exact

square = SymPolygon([Vec(1, -1), Vec(1, 1), Vec(-1, 1), Vec(-1, -1)])

c = verify_exact(square, TileMultiset.lattice(Z2))
print("2x2 square over Z^2:", c.status, "k =", c.k, f"({c.cells_checked} cells)")

wide = TileMultiset.lattice(Lattice2(Vec(3, 0), Vec(0, 1)))
c = verify_exact(square, wide)
print("2x2 square over 3Z x Z:", c.status)
print("  at", c.witness, "open count", c.open_count)
print("  at", c.reference_witness, "open count", c.reference_open_count)

# the answer can be double-checked point by point
print("  recount at witness:", multiplicity_at(wide, square, c.witness))

# two cosets of a coarser lattice fill the gaps of each other
L = Lattice2(Vec(2, 0), Vec(0, 1))
X = TileMultiset([(L, Vec(0, 0)), (L, Vec(1, 0))])
print("two cosets of 2Z x Z:", verify_exact(square, X).k)

# this hexagon needs a shifted lattice to tile once
hexagon = SymPolygon([Vec(1, 0), Vec(0, 1), Vec(-1, 1), Vec(-1, 0), Vec(0, -1), Vec(1, -1)])
print("hexagon over <(2,-1),(1,1)>:", verify_exact(hexagon, TileMultiset.lattice(Lattice2(Vec(2, -1), Vec(1, 1)))).k)
print("hexagon over Z^2:", verify_exact(hexagon, TileMultiset.lattice(Z2)).k, "(area 3, one point per unit area)")
print("half-shift square:", verify_exact(square, TileMultiset.lattice(Z2, Vec(F(1, 2), F(1, 3)))).k)
