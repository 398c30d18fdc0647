"""Decide whether ``P + X`` is a k-fold tiling.

Exact mode works on a fundamental parallelogram ``D`` of a lattice contained
in every ``Λ_j``.  All translate edges meeting ``D`` are cut into vertical
slabs at every endpoint and crossing abscissa; inside a slab the edges are
totally ordered, so the open cells of the arrangement inside ``D`` are the
gaps between consecutive edges.  The open multiplicity is evaluated directly
at the lowest cell of each slab and carried upward by +1/-1 per crossed edge
(an edge oriented left-to-right has its polygon above it).

If every open cell carries the same value ``k`` then every point lies in at
least ``k`` closed translates (closures of cells cover the plane) and in at most
``k`` open ones (an open translate containing a point also contains part of a
cell), which is exactly the k-fold tiling condition.

Sampled mode probes pseudo-random rational points; a disagreement is a proof
of failure, agreement is only evidence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import IncommensurableError
from .field import Scalar, format_scalar
from .geometry import ConvexRegion, SymPolygon, Vec, minkowski_sum
from .lattice import Lattice2, enumerate_in_polygon, intersection_rank, reduce_basis
from .tiling import MultiplicityCounter, TileMultiset

__all__ = [
    "TilingCertificate",
    "Cell",
    "common_sublattice",
    "reduce_basis",
    "slab_cells",
    "verify_exact",
    "verify_sampled",
    "VERIFIED",
    "NOT_A_TILING",
    "INCONCLUSIVE",
]

VERIFIED = "verified"
NOT_A_TILING = "not_a_tiling"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TilingCertificate:
    mode: str  # "exact" | "sampled"
    status: str
    k: int | None = None
    witness: Vec | None = None
    closed_count: int | None = None
    open_count: int | None = None
    reference_witness: Vec | None = None
    reference_open_count: int | None = None
    cells_checked: int = 0
    samples_checked: int = 0
    fundamental_domain: tuple[Vec, ...] | None = None
    note: str = ""

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    def to_dict(self) -> dict:
        def pt(v):
            return None if v is None else [format_scalar(v.x), format_scalar(v.y)]

        return {
            "mode": self.mode,
            "status": self.status,
            "k": self.k,
            "witness": pt(self.witness),
            "closed_count": self.closed_count,
            "open_count": self.open_count,
            "reference_witness": pt(self.reference_witness),
            "reference_open_count": self.reference_open_count,
            "cells_checked": self.cells_checked,
            "samples_checked": self.samples_checked,
            "fundamental_domain": None
            if self.fundamental_domain is None
            else [pt(v) for v in self.fundamental_domain],
            "note": self.note,
        }


def common_sublattice(X: TileMultiset) -> Lattice2 | None:
    """A lattice inside every ``Λ_j`` of X, or ``None`` if some pair is incommensurable."""
    lats = X.lattices
    acc = lats[0]
    for L in lats[1:]:
        r = intersection_rank(acc, L)
        if r.rank < 2:
            return None
        acc = r.lattice
    return acc


@dataclass(frozen=True)
class Cell:
    """Open trapezoid ``xl < x < xr`` between two edges, with a witness point."""

    xl: Scalar
    xr: Scalar
    lower: tuple[Scalar, Scalar]  # y of the lower edge at xl, xr
    upper: tuple[Scalar, Scalar]
    witness: Vec
    open_count: int

    def area(self) -> Scalar:
        h = (self.upper[0] + self.upper[1]) - (self.lower[0] + self.lower[1])
        return (self.xr - self.xl) * h / 2

    def corners(self) -> list[Vec]:
        return [
            Vec._raw(self.xl, self.lower[0]),
            Vec._raw(self.xr, self.lower[1]),
            Vec._raw(self.xr, self.upper[1]),
            Vec._raw(self.xl, self.upper[0]),
        ]


class _Seg:
    __slots__ = ("ax", "ay", "bx", "by", "slope", "delta", "frame")

    def __init__(self, a: Vec, b: Vec, delta: int, frame: int = 0) -> None:
        if b.x < a.x:
            a, b = b, a
        self.ax, self.ay, self.bx, self.by = a.x, a.y, b.x, b.y
        self.slope = (b.y - a.y) / (b.x - a.x)
        self.delta = delta
        self.frame = frame  # -1 lower frame edge, +1 upper frame edge

    def y_at(self, x: Scalar) -> Scalar:
        return self.ay + (x - self.ax) * self.slope


def _crossing_xs(segs: Sequence[_Seg], xmin: Scalar, xmax: Scalar) -> set:
    xs = set()
    order = sorted(range(len(segs)), key=lambda i: _Key(segs[i].ax))
    # float y-ranges only discard pairs that are far apart; every candidate
    # crossing is still decided exactly
    yr = []
    for sg in segs:
        lo, hi = sorted((float(sg.ay), float(sg.by)))
        pad = 1e-9 * (1.0 + abs(lo) + abs(hi))
        yr.append((lo - pad, hi + pad))
    for ii, i in enumerate(order):
        s = segs[i]
        slo, shi = yr[i]
        for j in order[ii + 1:]:
            t = segs[j]
            if t.ax >= s.bx:
                break
            tlo, thi = yr[j]
            if thi < slo or tlo > shi:
                continue
            ds = s.slope - t.slope
            if not ds:
                continue
            x = (t.ay - s.ay + s.ax * s.slope - t.ax * t.slope) / ds
            if s.ax <= x <= s.bx and t.ax <= x <= t.bx and xmin < x < xmax:
                xs.add(x)
    return xs


class _Key:
    __slots__ = ("v",)

    def __init__(self, v) -> None:
        self.v = v

    def __lt__(self, o) -> bool:
        return self.v < o.v


def slab_cells(
    segments: Sequence[tuple[Vec, Vec, int]],
    frame: Sequence[Vec],
    counter: MultiplicityCounter,
    check_cells: bool = False,
) -> list[Cell]:
    """Open cells of the arrangement of ``segments`` inside the convex ``frame``.

    Each segment carries the multiplicity change for crossing it upward.
    """
    n = len(frame)
    segs: list[_Seg] = []
    for i in range(n):
        a, b = frame[i], frame[(i + 1) % n]
        if a.x == b.x:
            continue
        # counterclockwise frame: left-to-right edges bound it from below
        segs.append(_Seg(a, b, 0, -1 if a.x < b.x else 1))
    xmin = min(v.x for v in frame)
    xmax = max(v.x for v in frame)
    for a, b, delta in segments:
        if a.x == b.x:
            continue
        s = _Seg(a, b, delta)
        if s.bx <= xmin or s.ax >= xmax:
            continue
        segs.append(s)

    events = {xmin, xmax}
    for s in segs:
        for x in (s.ax, s.bx):
            if xmin < x < xmax:
                events.add(x)
    events |= _crossing_xs(segs, xmin, xmax)
    xs = sorted(events)

    by_start = sorted(segs, key=lambda s: _Key(s.ax))
    active: list[_Seg] = []
    nxt = 0
    cells: list[Cell] = []
    for xl, xr in zip(xs, xs[1:]):
        while nxt < len(by_start) and by_start[nxt].ax <= xl:
            active.append(by_start[nxt])
            nxt += 1
        active = [s for s in active if s.bx > xl]
        xm = (xl + xr) / 2
        ys = sorted(((s.y_at(xm), k) for k, s in enumerate(active)), key=lambda t: _Key(t[0]))
        # group coincident edges
        groups: list[tuple[Scalar, list[_Seg]]] = []
        for y, k in ys:
            if groups and groups[-1][0] == y:
                groups[-1][1].append(active[k])
            else:
                groups.append((y, [active[k]]))
        lo = next(i for i, g in enumerate(groups) if any(s.frame == -1 for s in g[1]))
        hi = next(i for i, g in enumerate(groups) if any(s.frame == 1 for s in g[1]))
        value = None
        for gi in range(lo, hi):
            ylow, below = groups[gi]
            yup, above = groups[gi + 1]
            witness = Vec._raw(xm, (ylow + yup) / 2)
            if value is None:
                value = counter.counts(witness)[1]
            else:
                value += sum(s.delta for s in below)
            if check_cells:
                direct = counter.counts(witness)[1]
                if direct != value:
                    raise AssertionError(f"cell propagation mismatch at {witness}: {value} != {direct}")
            sl, su = below[0], above[0]
            cells.append(
                Cell(xl, xr, (sl.y_at(xl), sl.y_at(xr)), (su.y_at(xl), su.y_at(xr)), witness, value)
            )
    return cells


def _translate_segments(X: TileMultiset, P: SymPolygon, region: ConvexRegion) -> list[tuple[Vec, Vec, int]]:
    reach = minkowski_sum(region.vertices, [-v for v in P.vertices])
    bx0, by0, bx1, by1 = region.bbox()
    out = []
    n = len(P.vertices)
    for part in X.parts:
        for x in enumerate_in_polygon(part, reach):
            vs = [x + v for v in P.vertices]
            for k in range(n):
                a, b = vs[k], vs[(k + 1) % n]
                dx = (b.x - a.x).sign()
                if not dx:
                    continue
                if max(a.x, b.x) <= bx0 or min(a.x, b.x) >= bx1:
                    continue
                if max(a.y, b.y) < by0 or min(a.y, b.y) > by1:
                    continue
                out.append((a, b, dx))
    return out


def verify_exact(P: SymPolygon, X: TileMultiset, *, check_cells: bool = False) -> TilingCertificate:
    """Exact k-fold tiling decision for commensurable X."""
    Lc = common_sublattice(X)
    if Lc is None:
        raise IncommensurableError("lattices of X have no common full-rank sublattice")
    Lc = reduce_basis(Lc)
    o = Vec(0, 0)
    D = (o, Lc.u, Lc.u + Lc.v, Lc.v)
    region = ConvexRegion(D)
    counter = MultiplicityCounter(X, P)
    cells = slab_cells(_translate_segments(X, P, region), region.vertices, counter, check_cells)
    first = cells[0]
    for c in cells[1:]:
        if c.open_count != first.open_count:
            closed, opened = counter.counts(c.witness)
            return TilingCertificate(
                "exact",
                NOT_A_TILING,
                witness=c.witness,
                closed_count=closed,
                open_count=opened,
                reference_witness=first.witness,
                reference_open_count=first.open_count,
                cells_checked=len(cells),
                fundamental_domain=D,
            )
    return TilingCertificate(
        "exact",
        VERIFIED,
        k=first.open_count,
        cells_checked=len(cells),
        fundamental_domain=D,
    )


def exact_cells(P: SymPolygon, X: TileMultiset, window: Sequence[Vec]) -> list[Cell]:
    """Arrangement cells of ``P + X`` inside a convex window, with multiplicities."""
    region = ConvexRegion(window)
    counter = MultiplicityCounter(X, P)
    return slab_cells(_translate_segments(X, P, region), region.vertices, counter)


def _probe_window(P: SymPolygon, X: TileMultiset) -> tuple[Vec, Fraction]:
    xs = [v.x for v in P.vertices]
    ys = [v.y for v in P.vertices]
    span = (max(xs) - min(xs)) + (max(ys) - min(ys))  # >= diameter
    width = Fraction(3 * span.ceil())
    center = P.center + X.parts[0].offset
    return center, width


def verify_sampled(
    P: SymPolygon, X: TileMultiset, probes: int = 200, seed: int = 0
) -> TilingCertificate:
    """Probe ``probes`` generic rational points; agreement is evidence, not proof."""
    if probes <= 0:
        return TilingCertificate("sampled", INCONCLUSIVE, note="no probes requested")
    rng = random.Random(seed)
    counter = MultiplicityCounter(X, P)
    center, width = _probe_window(P, X)
    grid = 1 << 20
    ref_point = ref_count = None
    for i in range(probes):
        fx = Fraction(rng.randrange(grid), grid) - Fraction(1, 2)
        fy = Fraction(rng.randrange(grid), grid) - Fraction(1, 2)
        p = center + Vec(fx * width, fy * width)
        closed, opened = counter.counts(p)
        F = 1 << 10
        while closed != opened:
            # on some translate boundary: nudge off it
            p = p + Vec(Fraction(1, F), Fraction(1, F * F))
            closed, opened = counter.counts(p)
            F <<= 1
        if ref_point is None:
            ref_point, ref_count = p, opened
        elif opened != ref_count:
            return TilingCertificate(
                "sampled",
                NOT_A_TILING,
                witness=p,
                closed_count=closed,
                open_count=opened,
                reference_witness=ref_point,
                reference_open_count=ref_count,
                samples_checked=i + 1,
                note="conclusive: two generic points with different multiplicity",
            )
    return TilingCertificate(
        "sampled",
        VERIFIED,
        k=ref_count,
        samples_checked=probes,
        note="probabilistic evidence only",
    )
