"""Translate multisets given as finite unions of translated lattices, and the
local structure of ``P + X``: point multiplicities, normal points on edge
lines and the neighbour predicate for edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import MissingPointError, MixedDiscriminantsError, NotAnEdgeError
from .field import Scalar
from .geometry import ConvexRegion, Segment, SymPolygon, Vec, Where, minkowski_sum, orient
from .lattice import (
    Lattice2,
    TranslatedLattice,
    enumerate_in_polygon,
    hnf,
    intersection_rank,
    reduce_basis,
    row_bounds,
)

__all__ = [
    "LatticeGroup",
    "TileMultiset",
    "NormalPointReport",
    "NormalScan",
    "Lemma3Result",
    "StructureCheck",
    "MultiplicityCounter",
    "translates_meeting",
    "multiplicity_at",
    "normal_point_scan",
    "lemma3_check",
    "structure_check",
]


@dataclass(frozen=True)
class LatticeGroup:
    lattice: Lattice2
    offsets: tuple[Vec, ...]


class TileMultiset:
    """``X = union over j, k of (Λ_j + x_j^k)`` with multiplicity.

    Parts whose lattices coincide (mutual containment) are merged into one
    group sharing the first lattice object seen; repeated offsets are kept and
    count twice.
    """

    __slots__ = ("groups",)

    def __init__(self, parts: Iterable[TranslatedLattice | tuple[Lattice2, Vec]]) -> None:
        lattices: list[Lattice2] = []
        offsets: list[list[Vec]] = []
        for part in parts:
            if isinstance(part, TranslatedLattice):
                L, off = part.lattice, part.offset
            else:
                L, off = part
            off = off if isinstance(off, Vec) else Vec(*off)
            for j, M in enumerate(lattices):
                if M is L or M == L:
                    offsets[j].append(off)
                    break
            else:
                lattices.append(L)
                offsets.append([off])
        if not lattices:
            raise ValueError("a tile multiset needs at least one part")
        self.groups = tuple(LatticeGroup(L, tuple(o)) for L, o in zip(lattices, offsets))
        self.discriminant()

    @classmethod
    def lattice(cls, L: Lattice2, offset: Vec | None = None) -> TileMultiset:
        return cls([(L, offset if offset is not None else Vec(0, 0))])

    @property
    def parts(self) -> list[TranslatedLattice]:
        return [TranslatedLattice(g.lattice, o) for g in self.groups for o in g.offsets]

    @property
    def lattices(self) -> list[Lattice2]:
        return [g.lattice for g in self.groups]

    def discriminant(self) -> int:
        ds = set()
        for g in self.groups:
            for w in (g.lattice.u, g.lattice.v, *g.offsets):
                ds.update(c.d for c in w if c.d)
        if len(ds) > 1:
            raise MixedDiscriminantsError(f"discriminants {sorted(ds)} mixed in one multiset")
        return ds.pop() if ds else 0

    def count(self, p: Vec) -> int:
        """Multiplicity of ``p`` as an element of X."""
        return sum(1 for g in self.groups for o in g.offsets if g.lattice.contains(p - o))

    def __contains__(self, p: Vec) -> bool:
        return any(g.lattice.contains(p - o) for g in self.groups for o in g.offsets)

    def density(self) -> Scalar:
        """Translates per unit area."""
        return sum((Scalar(len(g.offsets)) / g.lattice.covolume for g in self.groups), Scalar(0))

    def regroup(self, sub: Lattice2) -> TileMultiset:
        """Same multiset written as cosets of a common sublattice ``sub``."""
        parts = []
        for g in self.groups:
            reps = coset_representatives(g.lattice, sub)
            parts.extend((sub, o + r) for o in g.offsets for r in reps)
        return TileMultiset(parts)

    def __repr__(self) -> str:
        inner = ", ".join(f"{g.lattice} + {list(g.offsets)}" for g in self.groups)
        return f"TileMultiset([{inner}])"


def coset_representatives(L: Lattice2, sub: Lattice2) -> list[Vec]:
    """Representatives of ``L / sub`` for a full-rank sublattice ``sub``."""
    rows = []
    for w in sub.basis:
        c = L.coords(w)
        if not all(x.is_integer() for x in c):
            raise ValueError("not a sublattice")
        rows.append([int(x) for x in c])
    H = hnf(rows)
    (h11, _), (_, h22) = H
    return [L.point(a, b) for a in range(h11) for b in range(h22)]


class MultiplicityCounter:
    """Counts translates of ``P`` over ``X`` containing a point.

    For each lattice coordinate ``a`` the admissible ``b`` form an interval cut
    out by the 2m edge half-planes, so only interval ends need exact floors.
    """

    def __init__(self, X: TileMultiset, P: SymPolygon) -> None:
        self.X = X
        self.P = P
        self._parts = []
        edges = P.edges
        verts = P.vertices
        for g in X.groups:
            L = reduce_basis(g.lattice)
            alpha = [e.cross(L.u) for e in edges]
            beta = [e.cross(L.v) for e in edges]
            base = [e.cross(v) for e, v in zip(edges, verts)]
            vcoords = [L.coords(v) for v in verts]
            amin = min(c[0] for c in vcoords)
            amax = max(c[0] for c in vcoords)
            self._parts.append((L, g.offsets, edges, alpha, beta, base, amin, amax))

    def counts(self, p: Vec) -> tuple[int, int]:
        """``(closed, open)`` multiplicities at ``p``."""
        closed = opened = 0
        for L, offsets, edges, alpha, beta, base, amin, amax in self._parts:
            for off in offsets:
                q = p - off
                qa = L.coords(q)[0]
                # f_i(a, b) = cross(e_i, q - a u - b v - v_i) = s_i - a alpha_i - b beta_i
                s = [e.cross(q) - b0 for e, b0 in zip(edges, base)]
                for a in range((qa - amax).ceil(), (qa - amin).floor() + 1):
                    c, o = _b_interval_counts(s, alpha, beta, a)
                    closed += c
                    opened += o
        return closed, opened

    def translates_at(self, p: Vec) -> list[tuple[Vec, Where]]:
        """Translates ``x`` (with multiplicity) whose closed ``x + P`` holds ``p``."""
        out = []
        for L, offsets, edges, alpha, beta, base, amin, amax in self._parts:
            for off in offsets:
                q = p - off
                qa = L.coords(q)[0]
                s = [e.cross(q) - b0 for e, b0 in zip(edges, base)]
                for a in range((qa - amax).ceil(), (qa - amin).floor() + 1):
                    rb = row_bounds(s, alpha, beta, a)
                    if rb is None:
                        continue
                    for b in range(rb[0], rb[1] + 1):
                        vals = [si - ai * a - bi * b for si, ai, bi in zip(s, alpha, beta)]
                        where = Where.INTERIOR if all(v.sign() > 0 for v in vals) else Where.BOUNDARY
                        out.append((off + L.point(a, b), where))
        out.sort(key=lambda t: _VecKey(t[0]))
        return out


class _VecKey:
    __slots__ = ("v",)

    def __init__(self, v: Vec) -> None:
        self.v = v

    def __lt__(self, o) -> bool:
        return self.v < o.v


def _b_interval_counts(s, alpha, beta, a) -> tuple[int, int]:
    lo_v = hi_v = None
    open_ok = True
    for si, ai, bi in zip(s, alpha, beta):
        r = si - ai * a
        sb = bi.sign()
        if sb == 0:
            rs = r.sign()
            if rs < 0:
                return 0, 0
            if rs == 0:
                open_ok = False
            continue
        bound = r / bi
        if sb > 0:
            if hi_v is None or bound < hi_v:
                hi_v = bound
        else:
            if lo_v is None or bound > lo_v:
                lo_v = bound
    lo_f = lo_v.floor()
    hi_f = hi_v.floor()
    lo_c = lo_f if lo_v.is_integer() else lo_f + 1
    closed = max(0, hi_f - lo_c + 1)
    if not open_ok or not closed:
        return closed, 0
    hi_c = hi_f if hi_v.is_integer() else hi_f + 1
    opened = max(0, (hi_c - 1) - (lo_f + 1) + 1)
    return closed, opened


def _region(R) -> ConvexRegion:
    if isinstance(R, ConvexRegion):
        return R
    if isinstance(R, Vec):
        return ConvexRegion([R])
    return ConvexRegion(p if isinstance(p, Vec) else Vec(*p) for p in R)


def translates_meeting(X: TileMultiset, P: SymPolygon, R) -> list[Vec]:
    """Every ``x`` in X (with multiplicity) whose closed ``x + P`` meets ``R``."""
    region = _region(R)
    reach = minkowski_sum(region.vertices, [-v for v in P.vertices])
    out: list[Vec] = []
    for part in X.parts:
        out.extend(enumerate_in_polygon(part, reach))
    out.sort()
    return out


def multiplicity_at(X: TileMultiset, P: SymPolygon, p: Vec) -> tuple[int, int]:
    """``(closed_count, open_count)`` of translates of ``P`` containing ``p``."""
    return MultiplicityCounter(X, P).counts(p)


@dataclass(frozen=True)
class NormalPointReport:
    point: Vec
    n1: int
    n2: int
    witnesses1: tuple[Vec, ...]
    witnesses2: tuple[Vec, ...]


@dataclass(frozen=True)
class NormalScan:
    non_normal: list[Vec]
    samples: list[NormalPointReport] = field(default_factory=list)


def _find_edge(X: TileMultiset, P: SymPolygon, e: Segment) -> tuple[Vec, int]:
    d = e.direction
    for i in range(1, 2 * P.m + 1):
        if P.edge(i) == d:
            x = e.a - P.vertex(i)
            if x in X:
                return x, i
    raise NotAnEdgeError(f"{e} is not an edge of any translate of P over X")


def normal_point_scan(
    X: TileMultiset,
    P: SymPolygon,
    e: Segment,
    window: tuple[Vec, Vec] | Segment,
    counter: MultiplicityCounter | None = None,
) -> NormalScan:
    """Non-normal points of ``L(e)`` inside ``window`` plus one
    :class:`NormalPointReport` per open gap between them.

    ``H1`` is the half-plane left of ``e``'s direction (the side of the
    translate owning ``e``); translates straddling ``L(e)`` count on neither side.
    """
    _find_edge(X, P, e)
    w0, w1 = (window.a, window.b) if isinstance(window, Segment) else window
    if orient(e.a, e.b, w0) or orient(e.a, e.b, w1):
        raise ValueError("window endpoints must lie on the edge line")
    d = e.direction
    dd = d.dot(d)

    def t_of(p: Vec) -> Scalar:
        return (p - e.a).dot(d) / dd

    t0, t1 = t_of(w0), t_of(w1)
    if t1 < t0:
        t0, t1 = t1, t0
    if t0 == t1:
        raise ValueError("empty window")
    lo, hi = e.a + d * t0, e.a + d * t1

    ts: set = set()
    for x in translates_meeting(X, P, ConvexRegion([lo, hi])):
        vs = [x + v for v in P.vertices]
        n = len(vs)
        for k in range(n):
            a, b = vs[k], vs[(k + 1) % n]
            sd = b - a
            den = sd.cross(d)
            if not den:
                continue  # parallel: either inside L(e) or never touching it
            s = (e.a - a).cross(d) / den
            if s.sign() < 0 or (s - 1).sign() > 0:
                continue
            t = t_of(a + sd * s)
            if t0 < t < t1:
                ts.add(t)
    cuts = sorted(ts)
    non_normal = [e.a + d * t for t in cuts]

    counter = counter or MultiplicityCounter(X, P)
    bounds = [t0, *cuts, t1]
    samples = []
    for ta, tb in zip(bounds, bounds[1:]):
        p = e.a + d * ((ta + tb) / 2)
        samples.append(_normal_report(P, e, p, counter))
    return NormalScan(non_normal, samples)


def _normal_report(P: SymPolygon, e: Segment, p: Vec, counter: MultiplicityCounter) -> NormalPointReport:
    left: list[Vec] = []
    right: list[Vec] = []
    for x, where in counter.translates_at(p):
        if where is not Where.BOUNDARY:
            continue
        sides = {orient(e.a, e.b, x + v) for v in P.vertices}
        if -1 not in sides:
            left.append(x)
        elif 1 not in sides:
            right.append(x)
    return NormalPointReport(p, len(left), len(right), tuple(left), tuple(right))


@dataclass(frozen=True)
class Lemma3Result:
    holds: bool
    via: str | None = None  # "e" or "e*"

    def __bool__(self) -> bool:
        return self.holds


def lemma3_check(X: TileMultiset, P: SymPolygon, x: Vec, i: int) -> Lemma3Result:
    """Does ``x - e_i`` or ``x - e*_i`` belong to X?"""
    if x not in X:
        raise MissingPointError(f"{x} is not in X")
    if not 1 <= i <= P.m:
        raise IndexError(f"edge index must be in 1..{P.m}")
    if (x - P.edge(i)) in X:
        return Lemma3Result(True, "e")
    if (x - P.edge_star(i)) in X:
        return Lemma3Result(True, "e*")
    return Lemma3Result(False)


@dataclass(frozen=True)
class StructureCheck:
    ok: bool
    violation: tuple[int, int] | None = None  # 1-based group indices

    def __bool__(self) -> bool:
        return self.ok


def structure_check(X: TileMultiset) -> StructureCheck:
    """Distinct lattices of X must meet in a sublattice of rank <= 1."""
    gs = X.groups
    for j in range(len(gs)):
        for k in range(j + 1, len(gs)):
            if intersection_rank(gs[j].lattice, gs[k].lattice).rank == 2:
                return StructureCheck(False, (j + 1, k + 1))
    return StructureCheck(True)
