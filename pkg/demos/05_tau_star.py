"""Searching for the smallest lattice multiplicity of a polygon.

tau_star_search tries lattices spanned by small combinations of edge vectors,
keeps those that pass the edge criterion, and reports the least k found. The
result is an upper bound within the search limits.
"""

from multitile import SymPolygon, TileMultiset, Vec, tau_star_search, verify_exact

shapes = {
    "square": SymPolygon([Vec(1, -1), Vec(1, 1), Vec(-1, 1), Vec(-1, -1)]),
    "hexagon": SymPolygon([Vec(1, 0), Vec(0, 1), Vec(-1, 1), Vec(-1, 0), Vec(0, -1), Vec(1, -1)]),
    "octagon": SymPolygon(
        [Vec(2, 0), Vec(3, 1), Vec(3, 2), Vec(2, 3), Vec(0, 3), Vec(-1, 2), Vec(-1, 1), Vec(0, 0)]
    ),
}

for name, P in shapes.items():
    r = tau_star_search(P)
    if r.found:
        check = verify_exact(P, TileMultiset.lattice(r.lattice)).k
        print(f"{name}: k <= {r.k} via {r.lattice.u}, {r.lattice.v} ({r.candidates_checked} lattices tried, verifier says {check})")
    else:
        print(f"{name}: nothing within bounds ({r.candidates_checked} tried)")
