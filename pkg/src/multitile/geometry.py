"""Exact planar primitives: vectors, segments, convex regions and
centrally symmetric polygons.

Every predicate is a sign of an exact cross product, so points exactly on a
boundary are always recognised as such.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidPolygonError, RegionUnboundedError
from .field import Scalar, as_scalar

__all__ = [
    "Vec",
    "Point",
    "Segment",
    "Where",
    "Location",
    "Intersection",
    "ConvexRegion",
    "SymPolygon",
    "orient",
    "convex_hull",
    "minkowski_sum",
    "edge_vectors",
    "area",
    "locate_point",
    "segment_line_intersection",
]


class Vec:
    """Exact 2-vector; also used for points."""

    __slots__ = ("x", "y")

    def __init__(self, x, y) -> None:
        self.x = as_scalar(x)
        self.y = as_scalar(y)

    @classmethod
    def _raw(cls, x: Scalar, y: Scalar) -> Vec:
        v = object.__new__(cls)
        v.x = x
        v.y = y
        return v

    def __add__(self, o: Vec) -> Vec:
        return Vec._raw(self.x + o.x, self.y + o.y)

    def __sub__(self, o: Vec) -> Vec:
        return Vec._raw(self.x - o.x, self.y - o.y)

    def __neg__(self) -> Vec:
        return Vec._raw(-self.x, -self.y)

    def __mul__(self, c) -> Vec:
        return Vec._raw(self.x * c, self.y * c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> Vec:
        return Vec._raw(self.x / c, self.y / c)

    def cross(self, o: Vec) -> Scalar:
        return self.x * o.y - self.y * o.x

    def dot(self, o: Vec) -> Scalar:
        return self.x * o.x + self.y * o.y

    def is_zero(self) -> bool:
        return not self.x and not self.y

    def __iter__(self):
        yield self.x
        yield self.y

    def __eq__(self, o) -> bool:
        if not isinstance(o, Vec):
            return NotImplemented
        return self.x == o.x and self.y == o.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __lt__(self, o: Vec) -> bool:
        c = (self.x - o.x).sign()
        if c:
            return c < 0
        return (self.y - o.y).sign() < 0

    def __le__(self, o: Vec) -> bool:
        return self == o or self < o

    def __repr__(self) -> str:
        return f"({self.x}, {self.y})"

    def to_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


Point = Vec


def orient(a: Vec, b: Vec, c: Vec) -> int:
    """Sign of the turn a -> b -> c (+1 left, -1 right, 0 collinear)."""
    return (b - a).cross(c - a).sign()


@dataclass(frozen=True)
class Segment:
    a: Vec
    b: Vec

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError("degenerate segment")

    @property
    def direction(self) -> Vec:
        return self.b - self.a

    def midpoint(self) -> Vec:
        return (self.a + self.b) / 2

    def point_at(self, t) -> Vec:
        return self.a + self.direction * t

    def contains(self, p: Vec, *, open_: bool = False) -> bool:
        if orient(self.a, self.b, p):
            return False
        d = self.direction
        t = (p - self.a).dot(d)
        s = t.sign()
        e = (t - d.dot(d)).sign()
        if open_:
            return s > 0 and e < 0
        return s >= 0 and e <= 0


class Where(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Location:
    where: Where
    edge: int | None = None  # 1-based edge index for boundary points
    vertex: int | None = None  # 1-based vertex index when on a corner

    def __eq__(self, o) -> bool:
        if isinstance(o, Where):
            return self.where is o
        if isinstance(o, Location):
            return (self.where, self.edge, self.vertex) == (o.where, o.edge, o.vertex)
        return NotImplemented

    __hash__ = object.__hash__


@dataclass(frozen=True)
class Intersection:
    kind: str  # "empty" | "point" | "overlap"
    point: Vec | None = None
    segment: Segment | None = None


def segment_line_intersection(s: Segment, t: Segment) -> Intersection:
    """Exact intersection of two closed segments."""
    r = s.direction
    q = t.direction
    denom = r.cross(q)
    w = t.a - s.a
    if denom:
        ta = w.cross(q) / denom
        tb = w.cross(r) / denom
        if ta.sign() < 0 or (ta - 1).sign() > 0 or tb.sign() < 0 or (tb - 1).sign() > 0:
            return Intersection("empty")
        return Intersection("point", point=s.a + r * ta)
    if w.cross(r):
        return Intersection("empty")
    # collinear: project onto r
    rr = r.dot(r)
    t0 = w.dot(r) / rr
    t1 = (t.b - s.a).dot(r) / rr
    lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
    lo = max(lo, Scalar(0))
    hi = min(hi, Scalar(1))
    c = (hi - lo).sign()
    if c < 0:
        return Intersection("empty")
    if c == 0:
        return Intersection("point", point=s.a + r * lo)
    return Intersection("overlap", segment=Segment(s.a + r * lo, s.a + r * hi))


def convex_hull(points: Iterable[Vec]) -> list[Vec]:
    """Counterclockwise hull without collinear points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[Vec] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return hull


class ConvexRegion:
    """Closed, bounded convex region given by its hull (1, 2 or >= 3 points)."""

    __slots__ = ("vertices",)

    def __init__(self, points: Iterable[Vec]) -> None:
        hull = convex_hull(points)
        if not hull:
            raise RegionUnboundedError("region has no vertices")
        self.vertices: tuple[Vec, ...] = tuple(hull)

    def locate(self, p: Vec) -> Where:
        vs = self.vertices
        n = len(vs)
        if n == 1:
            return Where.BOUNDARY if p == vs[0] else Where.OUTSIDE
        if n == 2:
            return Where.BOUNDARY if Segment(vs[0], vs[1]).contains(p) else Where.OUTSIDE
        on_edge = False
        for i in range(n):
            o = orient(vs[i], vs[(i + 1) % n], p)
            if o < 0:
                return Where.OUTSIDE
            if o == 0:
                on_edge = True
        return Where.BOUNDARY if on_edge else Where.INTERIOR

    def contains(self, p: Vec) -> bool:
        return self.locate(p) is not Where.OUTSIDE

    def bbox(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def edges(self) -> list[Segment]:
        vs = self.vertices
        if len(vs) == 1:
            return []
        if len(vs) == 2:
            return [Segment(vs[0], vs[1])]
        return [Segment(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def __repr__(self) -> str:
        return f"ConvexRegion({list(self.vertices)})"


def minkowski_sum(a: Sequence[Vec], b: Sequence[Vec]) -> ConvexRegion:
    return ConvexRegion(p + q for p in a for q in b)


class SymPolygon:
    """Centrally symmetric, strictly convex polygon with 2m CCW vertices.

    Vertices keep the order they were given in (edge indices follow it);
    :meth:`canonical` rotates to start at the lexicographically smallest one.
    """

    __slots__ = ("vertices", "m", "center", "_edges", "_stars")

    def __init__(self, vertices: Sequence) -> None:
        vs = tuple(v if isinstance(v, Vec) else Vec(*v) for v in vertices)
        n = len(vs)
        if n < 4 or n % 2:
            raise InvalidPolygonError(
                f"need an even number (>= 4) of vertices, got {n}",
                invariant="vertex_count",
            )
        for i in range(n):
            if orient(vs[i - 1], vs[i], vs[(i + 1) % n]) <= 0:
                raise InvalidPolygonError(
                    f"turn at v{i + 1} is not strictly counterclockwise",
                    invariant="strict_convexity",
                )
        m = n // 2
        center = (vs[0] + vs[m]) / 2
        for i in range(m):
            if vs[i] + vs[i + m] != center * 2:
                raise InvalidPolygonError(
                    f"v{i + 1} and v{i + m + 1} are not symmetric about {center}",
                    invariant="central_symmetry",
                )
        _check_simple(vs)
        if _shoelace2(vs).sign() <= 0:
            raise InvalidPolygonError("non-positive area", invariant="area")
        self.vertices = vs
        self.m = m
        self.center = center
        self._edges = tuple(vs[(i + 1) % n] - vs[i] for i in range(n))
        self._stars = tuple(vs[(i + m) % n] - vs[(i + 1) % n] for i in range(m))

    @property
    def edges(self) -> tuple[Vec, ...]:
        """e_1..e_2m with e_i = v_{i+1} - v_i (0-based tuple)."""
        return self._edges

    @property
    def edge_stars(self) -> tuple[Vec, ...]:
        """e*_1..e*_m with e*_i = v_{i+m} - v_{i+1} (0-based tuple)."""
        return self._stars

    def edge(self, i: int) -> Vec:
        return self._edges[(i - 1) % (2 * self.m)]

    def edge_star(self, i: int) -> Vec:
        if not 1 <= i <= self.m:
            raise IndexError("e*_i is defined for 1 <= i <= m only")
        return self._stars[i - 1]

    def vertex(self, i: int) -> Vec:
        return self.vertices[(i - 1) % (2 * self.m)]

    def edge_segment(self, i: int) -> Segment:
        return Segment(self.vertex(i), self.vertex(i + 1))

    def translate(self, t: Vec) -> SymPolygon:
        return SymPolygon([v + t for v in self.vertices])

    def centered(self) -> SymPolygon:
        if self.center.is_zero():
            return self
        return self.translate(-self.center)

    def canonical(self) -> SymPolygon:
        k = min(range(len(self.vertices)), key=lambda i: _LexKey(self.vertices[i]))
        return SymPolygon(self.vertices[k:] + self.vertices[:k])

    def region(self) -> ConvexRegion:
        return ConvexRegion(self.vertices)

    def area(self) -> Scalar:
        return _shoelace2(self.vertices) / 2

    def discriminant(self) -> int:
        ds = {c.d for v in self.vertices for c in v if c.d}
        return ds.pop() if ds else 0

    def __eq__(self, o) -> bool:
        return isinstance(o, SymPolygon) and self.vertices == o.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"SymPolygon({list(self.vertices)})"


class _LexKey:
    __slots__ = ("v",)

    def __init__(self, v: Vec) -> None:
        self.v = v

    def __lt__(self, o: _LexKey) -> bool:
        return self.v < o.v


def _shoelace2(vs: Sequence[Vec]) -> Scalar:
    n = len(vs)
    acc = Scalar(0)
    for i in range(n):
        acc = acc + vs[i].cross(vs[(i + 1) % n])
    return acc


def _check_simple(vs: Sequence[Vec]) -> None:
    # strict turns alone admit multiply-wound stars; require every vertex to
    # sit strictly left of every edge line it is not on
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        for j in range(n):
            if j != i and j != (i + 1) % n and orient(a, b, vs[j]) <= 0:
                raise InvalidPolygonError(
                    f"v{j + 1} is not strictly inside the edge line v{i + 1}v{(i + 1) % n + 1}",
                    invariant="strict_convexity",
                )


def edge_vectors(P: SymPolygon) -> tuple[list[Vec], list[Vec]]:
    """Return ``([e_1..e_2m], [e*_1..e*_m])``."""
    return list(P.edges), list(P.edge_stars)


def area(P: SymPolygon) -> Scalar:
    return P.area()


def locate_point(P: SymPolygon, p: Vec) -> Location:
    """Classify ``p`` against the closed polygon, naming the boundary edge or vertex."""
    vs = P.vertices
    n = len(vs)
    zero_edges = []
    for i in range(n):
        o = orient(vs[i], vs[(i + 1) % n], p)
        if o < 0:
            return Location(Where.OUTSIDE)
        if o == 0:
            zero_edges.append(i)
    if not zero_edges:
        return Location(Where.INTERIOR)
    for i in range(n):
        if vs[i] == p:
            return Location(Where.BOUNDARY, edge=i + 1, vertex=i + 1)
    return Location(Where.BOUNDARY, edge=zero_edges[0] + 1)
