"""The edge criterion for lattice multi-tilings.

For a single lattice the verdict comes from the edges alone: each edge midpoint
of the centered polygon must land in half the lattice, or the edge must be a
lattice vector with a lattice point strictly inside it. No cell decomposition
is needed, and the multiplicity is area / covolume.
"""

from multitile import Lattice2, SymPolygon, TileMultiset, Vec, Z2, bolle_check, verify_exact

square = SymPolygon([Vec(1, -1), Vec(1, 1), Vec(-1, 1), Vec(-1, -1)])

for name, L in [("Z^2", Z2), ("3Z x Z", Lattice2(Vec(3, 0), Vec(0, 1))), ("2Z x 2Z", Lattice2(Vec(2, 0), Vec(0, 2)))]:
    rep = bolle_check(square, L)
    print(f"square over {name}: passed={rep.passed} k={rep.k}")
    for e in rep.per_edge:
        print(f"   edge {e.index}: half-lattice midpoint={e.midpoint_in_half_lattice} ok={e.ok}")
    # the slab verifier agrees
    print("   verifier:", verify_exact(square, TileMultiset.lattice(L)).status)
