"""From a multiple translative tiling to a multiple lattice tiling.

The square is translated by Z^2 and by Z^2 shifted sqrt(2)/2 sideways. That
union has an irrational coordinate, so we verify it by sampling and then ask
for a single lattice that tiles on its own.
"""

from multitile import SymPolygon, TileMultiset, Vec, Z2, Scalar, theorem1_pipeline, verify_sampled

square = SymPolygon([Vec(1, -1), Vec(1, 1), Vec(-1, 1), Vec(-1, -1)])
X = TileMultiset([(Z2, Vec(0, 0)), (Z2, Vec(Scalar(0, 1, 2) / 2, 0))])

src = verify_sampled(square, X, probes=200, seed=0)
print("union:", src.status, "k =", src.k, "-", src.note)

cert = theorem1_pipeline(square, X, src, allow_sampled=True)
print(f"lattice group j={cert.chosen_j}, beta={cert.beta}, gamma={cert.gamma}")
print("lattice basis:", cert.lattice.u, cert.lattice.v)
print("lattice tiling multiplicity:", cert.k_lattice, "(exact check:", cert.lattice_certificate.k, ")")
