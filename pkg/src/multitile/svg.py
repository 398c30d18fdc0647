"""Deterministic SVG 1.1 pictures of tiling patches."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import WindowTooLargeError
from .field import Scalar
from .geometry import ConvexRegion, SymPolygon, Vec
from .lattice import Lattice2
from .tiling import TileMultiset, translates_meeting
from .verify import common_sublattice, exact_cells

__all__ = ["render_svg", "translates_in_window", "Window"]

PALETTE = (
    "#f7fbff", "#deebf7", "#c6dbef", "#9ecae1", "#6baed6",
    "#4292c6", "#2171b5", "#08519c", "#08306b", "#041c42",
)
SIZE = 600.0
LEGEND_H = 40.0


class Window:
    """Half-open box ``[x0, x1) x [y0, y1)``."""

    def __init__(self, x0, y0, x1, y1) -> None:
        self.x0, self.y0, self.x1, self.y1 = (Scalar(Fraction(v)) if not isinstance(v, Scalar) else v for v in (x0, y0, x1, y1))

    @classmethod
    def centered(cls, center: Vec, width) -> Window:
        h = Scalar(Fraction(width)) / 2
        return cls(center.x - h, center.y - h, center.x + h, center.y + h)

    @property
    def empty(self) -> bool:
        return self.x1 <= self.x0 or self.y1 <= self.y0

    def corners(self) -> list[Vec]:
        return [Vec(self.x0, self.y0), Vec(self.x1, self.y0), Vec(self.x1, self.y1), Vec(self.x0, self.y1)]


def _clip(poly: Sequence[Vec], w: Window) -> list[Vec]:
    # Sutherland-Hodgman against the closed box
    def cut(pts, inside, meet):
        out = []
        for i, cur in enumerate(pts):
            prev = pts[i - 1]
            ci, pi = inside(cur), inside(prev)
            if ci:
                if not pi:
                    out.append(meet(prev, cur))
                out.append(cur)
            elif pi:
                out.append(meet(prev, cur))
        return out

    def x_meet(xv):
        return lambda a, b: Vec._raw(xv, a.y + (b.y - a.y) * (xv - a.x) / (b.x - a.x))

    def y_meet(yv):
        return lambda a, b: Vec._raw(a.x + (b.x - a.x) * (yv - a.y) / (b.y - a.y), yv)

    pts = list(poly)
    for inside, meet in (
        (lambda p: p.x >= w.x0, x_meet(w.x0)),
        (lambda p: p.x <= w.x1, x_meet(w.x1)),
        (lambda p: p.y >= w.y0, y_meet(w.y0)),
        (lambda p: p.y <= w.y1, y_meet(w.y1)),
    ):
        if not pts:
            break
        pts = cut(pts, inside, meet)
    return pts


def translates_in_window(P: SymPolygon, X: TileMultiset, w: Window) -> list[Vec]:
    """Translates whose closed polygon meets the half-open window."""
    if w.empty:
        return []
    out = []
    for x in translates_meeting(X, P, ConvexRegion(w.corners())):
        clipped = _clip([x + v for v in P.vertices], w)
        if not clipped:
            continue
        n = len(clipped)
        cx = sum((p.x for p in clipped), Scalar(0)) / n
        cy = sum((p.y for p in clipped), Scalar(0)) / n
        # the clipped piece is convex, so its vertex average is off the
        # excluded right/top sides iff some point of it is
        if cx < w.x1 and cy < w.y1:
            out.append(x)
    return out


def render_svg(
    P: SymPolygon,
    X: TileMultiset | Lattice2,
    window: Window,
    *,
    color_by_multiplicity: bool = False,
    k: int | None = None,
    max_translates: int = 5000,
) -> str:
    if isinstance(X, Lattice2):
        X = TileMultiset.lattice(X)
    tiles = translates_in_window(P, X, window)
    if len(tiles) > max_translates:
        raise WindowTooLargeError(f"{len(tiles)} translates exceed the cap of {max_translates}")

    cells = []
    values: set[int] = set()
    if not window.empty and common_sublattice(X) is not None:
        cells = exact_cells(P, X, window.corners())
        values = {c.open_count for c in cells}
    if k is None and len(values) == 1:
        k = next(iter(values))

    if window.empty:
        wx, wy, scale = 200.0, 0.0, 1.0
        fx0 = fy1 = 0.0
    else:
        fx0, fy0 = float(window.x0), float(window.y0)
        fx1, fy1 = float(window.x1), float(window.y1)
        wx, wy = fx1 - fx0, fy1 - fy0
        scale = SIZE / max(wx, wy)
    width = wx * scale
    height = wy * scale

    def px(v: Vec) -> str:
        return f"{(float(v.x) - fx0) * scale:.3f},{(fy1 - float(v.y)) * scale:.3f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3f}" '
        f'height="{height + LEGEND_H:.3f}" viewBox="0 0 {width:.3f} {height + LEGEND_H:.3f}">',
        '<defs><clipPath id="win"><rect x="0" y="0" '
        f'width="{width:.3f}" height="{height:.3f}"/></clipPath></defs>',
    ]
    if color_by_multiplicity and cells:
        lines.append('<g class="cells" clip-path="url(#win)" stroke="none">')
        for c in cells:
            color = PALETTE[min(c.open_count, len(PALETTE) - 1)]
            pts = " ".join(px(v) for v in c.corners())
            lines.append(f'<polygon class="cell" data-k="{c.open_count}" points="{pts}" fill="{color}"/>')
        lines.append("</g>")
    lines.append('<g class="tiles" clip-path="url(#win)" fill="none" stroke="#222" stroke-width="1">')
    for x in tiles:
        pts = " ".join(px(x + v) for v in P.vertices)
        lines.append(f'<polygon class="tile" points="{pts}"/>')
    lines.append("</g>")
    if k is not None:
        label = f"k={k}"
    elif values:
        label = "multiplicities " + ",".join(str(v) for v in sorted(values))
    else:
        label = "k=?"
    lines.append(
        f'<g class="legend"><text x="8" y="{height + 26:.3f}" font-family="sans-serif" '
        f'font-size="16">{label}</text></g>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
