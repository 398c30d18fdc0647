"""Drawing a patch of a multi-tiling as SVG.

Tiles are colored by how many translates cover their interior, which makes a
failed tiling easy to spot. Output goes to the current directory.
"""

from multitile import Lattice2, SymPolygon, TileMultiset, Vec, Window, Z2, render_svg

square = SymPolygon([Vec(1, -1), Vec(1, 1), Vec(-1, 1), Vec(-1, -1)])

good = render_svg(square, TileMultiset.lattice(Z2), Window(-2, -2, 2, 2), color_by_multiplicity=True)
bad = render_svg(square, TileMultiset.lattice(Lattice2(Vec(3, 0), Vec(0, 1))), Window(-3, -3, 3, 3), color_by_multiplicity=True)

for name, svg in [("square_z2.svg", good), ("square_3x1.svg", bad)]:
    with open(name, "w", encoding="utf-8") as fh:
        fh.write(svg)
    tiles = svg.count('class="tile"')
    print(f"wrote {name}: {tiles} tiles")
