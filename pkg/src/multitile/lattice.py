"""Exact planar lattices over Q and Q(sqrt(d)).

Lattices keep whatever basis they were built with; two lattices are equal when
each contains the other.  Integer linear algebra (intersections, sums, common
sublattices) goes through :func:`hnf` after clearing denominators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .field import Scalar
from .geometry import ConvexRegion, Segment, SymPolygon, Vec, Where

__all__ = [
    "Lattice2",
    "TranslatedLattice",
    "LatticeIntersection",
    "hnf",
    "coords_in_basis",
    "member",
    "rational_commensurate",
    "scale",
    "intersection_rank",
    "lattice_sum",
    "enumerate_in_polygon",
    "lattice_points_on_open_segment",
    "Z2",
]


def hnf(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows: upper triangular, positive pivots, entries above
    each pivot reduced into ``[0, pivot)``.  The rows span the same Z-module as
    the input rows.
    """
    a = [list(map(int, r)) for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= len(a):
            break
        # Euclid down the column until one nonzero entry remains
        while True:
            nz = [i for i in range(pivot_row, len(a)) if a[i][col]]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(a[i][col]))
            a[pivot_row], a[i_min] = a[i_min], a[pivot_row]
            piv = a[pivot_row][col]
            done = True
            for i in range(pivot_row + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // piv
                    a[i] = [x - q * y for x, y in zip(a[i], a[pivot_row])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if pivot_row < len(a) and a[pivot_row][col]:
            if a[pivot_row][col] < 0:
                a[pivot_row] = [-x for x in a[pivot_row]]
            piv = a[pivot_row][col]
            for i in range(pivot_row):
                q = a[i][col] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[pivot_row])]
            pivot_row += 1
    return [r for r in a[:pivot_row] if any(r)]


class Lattice2:
    """Full-rank lattice ``{a*u + b*v : a, b integers}``."""

    __slots__ = ("u", "v", "det", "_inv_det")

    def __init__(self, u, v) -> None:
        self.u = u if isinstance(u, Vec) else Vec(*u)
        self.v = v if isinstance(v, Vec) else Vec(*v)
        self.det = self.u.cross(self.v)
        if not self.det:
            raise ValueError("lattice basis is degenerate")
        self._inv_det = self.det.inverse()

    @property
    def basis(self) -> tuple[Vec, Vec]:
        return self.u, self.v

    @property
    def covolume(self) -> Scalar:
        return abs(self.det)

    def coords(self, w: Vec) -> tuple[Scalar, Scalar]:
        inv = self._inv_det
        return w.cross(self.v) * inv, self.u.cross(w) * inv

    def point(self, a, b) -> Vec:
        return self.u * a + self.v * b

    def contains(self, w: Vec) -> bool:
        c1, c2 = self.coords(w)
        return c1.is_integer() and c2.is_integer()

    def contains_lattice(self, other: Lattice2) -> bool:
        return self.contains(other.u) and self.contains(other.v)

    def is_rational_in(self, other: Lattice2) -> bool:
        return all(c.is_rational() for w in (self.u, self.v) for c in other.coords(w))

    def discriminant(self) -> int:
        ds = {c.d for w in (self.u, self.v) for c in w if c.d}
        return ds.pop() if ds else 0

    def __eq__(self, o) -> bool:
        if not isinstance(o, Lattice2):
            return NotImplemented
        return self.contains_lattice(o) and o.contains_lattice(self)

    def __hash__(self) -> int:
        return hash(self.covolume)

    def __repr__(self) -> str:
        return f"Lattice2(u={self.u}, v={self.v})"


Z2 = Lattice2((1, 0), (0, 1))


@dataclass(frozen=True)
class TranslatedLattice:
    lattice: Lattice2
    offset: Vec

    def contains(self, p: Vec) -> bool:
        return self.lattice.contains(p - self.offset)


def coords_in_basis(w: Vec, L: Lattice2) -> tuple[Scalar, Scalar]:
    return L.coords(w)


def member(p: Vec, L: Lattice2) -> tuple[int, int] | None:
    """Integer coefficients of ``p`` in ``L``'s basis, or ``None``."""
    c1, c2 = L.coords(p)
    if c1.is_integer() and c2.is_integer():
        return int(c1), int(c2)
    return None


def rational_commensurate(w: Vec, L: Lattice2) -> int | None:
    """Smallest ``q`` with ``w`` in ``(1/q) L``, or ``None`` if no such ``q``."""
    if w.is_zero():
        raise ValueError("zero vector")
    c1, c2 = L.coords(w)
    if not (c1.is_rational() and c2.is_rational()):
        return None
    return math.lcm(int(c1.a.denominator), int(c2.a.denominator))


def scale(L: Lattice2, num: int, den: int = 1) -> Lattice2:
    if den == 0 or num == 0:
        raise ValueError("scale factor must be nonzero")
    f = Scalar(Fraction(num, den))
    return Lattice2(L.u * f, L.v * f)


class LatticeIntersection(NamedTuple):
    rank: int
    lattice: Lattice2 | None = None  # basis when rank == 2
    generator: Vec | None = None  # primitive generator when rank == 1


def _rational_intersection(R: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis (in the ambient coordinates) of Z^2 intersected with the row lattice of R."""
    # dual(A ∩ B) = dual(A) + dual(B); dual of row basis M is (M^-1)^T
    det = R[0][0] * R[1][1] - R[0][1] * R[1][0]
    dual_R = [[R[1][1] / det, -R[1][0] / det], [-R[0][1] / det, R[0][0] / det]]
    gens = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]] + dual_R
    S = _rational_hnf(gens)
    sdet = S[0][0] * S[1][1] - S[0][1] * S[1][0]
    return [[S[1][1] / sdet, -S[1][0] / sdet], [-S[0][1] / sdet, S[0][0] / sdet]]


def _rational_hnf(gens: list[list[Fraction]]) -> list[list[Fraction]]:
    den = math.lcm(*(x.denominator for r in gens for x in r))
    H = hnf([[int(x * den) for x in r] for r in gens])
    return [[Fraction(x, den) for x in r] for r in H]


def intersection_rank(L1: Lattice2, L2: Lattice2) -> LatticeIntersection:
    """Rank of ``L1 ∩ L2`` with a basis (rank 2) or generator (rank 1)."""
    M = [L1.coords(L2.u), L1.coords(L2.v)]
    surd = [[c.surd_part for c in row] for row in M]
    rat = [[c.rational_part for c in row] for row in M]
    srank = _rank2x2(surd)
    if srank == 0:
        # every coordinate rational: full-rank intersection
        basis = _rational_intersection(rat)
        w1 = L1.point(Scalar(basis[0][0]), Scalar(basis[0][1]))
        w2 = L1.point(Scalar(basis[1][0]), Scalar(basis[1][1]))
        return LatticeIntersection(2, lattice=Lattice2(w1, w2))
    if srank == 2:
        return LatticeIntersection(0)
    # integer (a, b) with a*surd[0] + b*surd[1] = 0 span one direction
    row = surd[0] if any(surd[0]) else surd[1]
    col = 0 if row[0] else 1
    # null vector of the column vectors (surd[0][col], surd[1][col])
    p, q = surd[0][col], surd[1][col]
    # a*p + b*q = 0 -> (a, b) proportional to (q, -p)
    a, b = q, -p
    den = math.lcm(a.denominator, b.denominator)
    ai, bi = int(a * den), int(b * den)
    g = math.gcd(ai, bi)
    ai, bi = ai // g, bi // g
    # the rational parts must also land in Z^2 for t*(ai, bi)
    c1 = ai * rat[0][0] + bi * rat[1][0]
    c2 = ai * rat[0][1] + bi * rat[1][1]
    t = math.lcm(c1.denominator, c2.denominator)
    gen = L2.point(ai * t, bi * t)
    if gen.x.sign() < 0 or (not gen.x and gen.y.sign() < 0):
        gen = -gen
    return LatticeIntersection(1, generator=gen)


def _rank2x2(M: list[list[Fraction]]) -> int:
    if not any(x for r in M for x in r):
        return 0
    return 2 if M[0][0] * M[1][1] - M[0][1] * M[1][0] else 1


def lattice_sum(L1: Lattice2, L2: Lattice2) -> Lattice2:
    """``L1 + L2`` for commensurable lattices."""
    rows = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    for w in (L2.u, L2.v):
        c = L1.coords(w)
        if not all(x.is_rational() for x in c):
            raise ValueError("lattices are not commensurable")
        rows.append([x.rational_part for x in c])
    S = _rational_hnf(rows)
    return Lattice2(L1.point(Scalar(S[0][0]), Scalar(S[0][1])), L1.point(Scalar(S[1][0]), Scalar(S[1][1])))


def _as_region(R) -> ConvexRegion:
    if isinstance(R, ConvexRegion):
        return R
    if isinstance(R, SymPolygon):
        return R.region()
    return ConvexRegion(p if isinstance(p, Vec) else Vec(*p) for p in R)


def reduce_basis(L: Lattice2) -> Lattice2:
    """Lagrange-Gauss reduced, positively oriented basis of the same lattice."""
    u, v = L.u, L.v
    while True:
        if v.dot(v) < u.dot(u):
            u, v = v, u
        mu = (u.dot(v) / u.dot(u) + Fraction(1, 2)).floor()
        if mu == 0:
            break
        v = v - u * mu
    if u.cross(v).sign() < 0:
        v = -v
    return Lattice2(u, v)


def row_bounds(s, alpha, beta, a: int) -> tuple[int, int] | None:
    """Integer ``b`` range with ``s_i - a*alpha_i - b*beta_i >= 0`` for all i.

    The constraints must bound ``b`` from both sides; ``None`` if empty.
    """
    lo_v = hi_v = None
    for si, ai, bi in zip(s, alpha, beta):
        r = si - ai * a
        sb = bi.sign()
        if sb == 0:
            if r.sign() < 0:
                return None
            continue
        bound = r / bi
        if sb > 0:
            if hi_v is None or bound < hi_v:
                hi_v = bound
        elif lo_v is None or bound > lo_v:
            lo_v = bound
    lo, hi = lo_v.ceil(), hi_v.floor()
    return (lo, hi) if lo <= hi else None


def enumerate_in_polygon(TL: TranslatedLattice, R) -> list[Vec]:
    """All points of ``TL`` in the closed convex region ``R``, sorted."""
    region = _as_region(R)
    L = reduce_basis(TL.lattice)
    vs = region.vertices
    cs = [L.coords(p - TL.offset) for p in vs]
    a_lo = min(c[0] for c in cs).ceil()
    a_hi = max(c[0] for c in cs).floor()
    out = []
    if len(vs) < 3:
        b_lo = min(c[1] for c in cs).ceil()
        b_hi = max(c[1] for c in cs).floor()
        for a in range(a_lo, a_hi + 1):
            for b in range(b_lo, b_hi + 1):
                p = TL.offset + L.point(a, b)
                if region.locate(p) is not Where.OUTSIDE:
                    out.append(p)
    else:
        # CCW hull: cross(e_k, p - r_k) >= 0 with p = offset + a u + b v
        es = [vs[(k + 1) % len(vs)] - vs[k] for k in range(len(vs))]
        s = [e.cross(TL.offset - r) for e, r in zip(es, vs)]
        alpha = [-e.cross(L.u) for e in es]
        beta = [-e.cross(L.v) for e in es]
        for a in range(a_lo, a_hi + 1):
            rb = row_bounds(s, alpha, beta, a)
            if rb is None:
                continue
            base = TL.offset + L.u * a
            out.extend(base + L.v * b for b in range(rb[0], rb[1] + 1))
    out.sort()
    return out


def _open_int_range(lo: Scalar, hi: Scalar) -> tuple[int, int]:
    """Integers strictly between ``lo`` and ``hi`` as an inclusive range."""
    if hi < lo:
        lo, hi = hi, lo
    return lo.floor() + 1, hi.ceil() - 1


def lattice_points_on_open_segment(L: Lattice2, s: Segment) -> Vec | None:
    """A point of ``L`` strictly inside ``s`` (the one nearest ``s.a``), or ``None``."""
    A = L.coords(s.a)
    D = L.coords(s.b - s.a)
    i = 0 if D[0] else 1
    j = 1 - i
    Ai, Aj, Di, Dj = A[i], A[j], D[i], D[j]
    n_lo, n_hi = _open_int_range(Ai, Ai + Di)
    if n_lo > n_hi:
        return None
    toward = Di.sign() > 0  # smaller n means smaller t
    r = Dj / Di
    c = Aj - Ai * r

    if not r:
        if not c.is_integer():
            return None
        n = n_lo if toward else n_hi
    elif not r.is_rational():
        if not c.b and not r.b:
            return None
        n_q = -c.b / r.b
        if n_q.denominator != 1:
            return None
        n = int(n_q)
        if not (n_lo <= n <= n_hi):
            return None
        if not (c + r * n).is_integer():
            return None
    else:
        if not c.is_rational():
            return None
        rq, cq = r.rational_part, c.rational_part
        M = math.lcm(rq.denominator, cq.denominator)
        alpha = rq.numerator * (M // rq.denominator)
        beta = -cq.numerator * (M // cq.denominator)
        g = math.gcd(alpha, M)
        if beta % g:
            return None
        period = M // g
        n0 = ((beta // g) * pow(alpha // g, -1, period)) % period if period > 1 else 0
        n = n_lo + (n0 - n_lo) % period if toward else n_hi - (n_hi - n0) % period
        if not (n_lo <= n <= n_hi):
            return None
    m = c + r * n
    coeffs = [0, 0]
    coeffs[i] = n
    coeffs[j] = int(m)
    return L.point(coeffs[0], coeffs[1])
