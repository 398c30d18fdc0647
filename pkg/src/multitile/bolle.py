"""Lattice multi-tilings of centrally symmetric polygons.

* :func:`bolle_check` decides whether ``P + Λ`` is a k-fold lattice tiling
  edge by edge: every edge's relative interior must meet ``½Λ``, and an edge
  whose midpoint misses ``½Λ`` must itself be a vector of ``Λ``.
* :func:`lemma5_beta` finds an integer ``β`` with ``e_i`` or ``e*_i`` in
  ``(1/β)Λ`` for every ``i``.
* :func:`theorem1_pipeline` turns a verified multiple translative tiling
  ``P + X`` into a multiple lattice tiling ``P + (1/β)Λ_j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionUnverifiedError, StructureViolationError
from .field import Scalar, format_scalar
from .geometry import SymPolygon, Vec
from .lattice import Lattice2, lattice_points_on_open_segment, member, rational_commensurate, scale
from .tiling import TileMultiset, structure_check
from .verify import VERIFIED, TilingCertificate, verify_exact

__all__ = [
    "EdgeVerdict",
    "BolleReport",
    "Beta",
    "Theorem1Certificate",
    "NoLatticeFound",
    "TauStarResult",
    "bolle_check",
    "det_A",
    "matrix_A",
    "lemma5_beta",
    "theorem1_pipeline",
    "tau_star_search",
]


def _pt(v: Vec | None):
    return None if v is None else [format_scalar(v.x), format_scalar(v.y)]


@dataclass(frozen=True)
class EdgeVerdict:
    index: int
    midpoint_in_half_lattice: bool
    interior_witness: Vec | None
    edge_is_lattice_vector: bool | None  # None: not needed (midpoint in ½Λ)
    ok: bool

    def to_dict(self) -> dict:
        return {
            "edge": self.index,
            "midpoint_in_half_lattice": self.midpoint_in_half_lattice,
            "interior_witness": _pt(self.interior_witness),
            "edge_is_lattice_vector": self.edge_is_lattice_vector,
            "verdict": "ok" if self.ok else "fail",
        }


@dataclass(frozen=True)
class BolleReport:
    lattice: Lattice2
    passed: bool
    k: int | None
    per_edge: tuple[EdgeVerdict, ...]
    applied_centering: Vec
    density_ratio: Scalar  # area(P) / det(Λ), integral iff k is set

    def to_dict(self) -> dict:
        return {
            "lattice": [_pt(self.lattice.u), _pt(self.lattice.v)],
            "passed": self.passed,
            "k": self.k,
            "area_over_det": format_scalar(self.density_ratio),
            "applied_centering": _pt(self.applied_centering),
            "per_edge": [e.to_dict() for e in self.per_edge],
        }


def bolle_check(P: SymPolygon, L: Lattice2) -> BolleReport:
    """Check the edge conditions for ``P + L`` to be a k-fold lattice tiling."""
    shift = -P.center
    Q = P.centered()
    half = scale(L, 1, 2)
    verdicts = []
    for i in range(1, 2 * Q.m + 1):
        seg = Q.edge_segment(i)
        mid = seg.midpoint()
        mid_in = half.contains(mid)
        # the midpoint is interior to the edge, so it doubles as the witness
        witness = mid if mid_in else lattice_points_on_open_segment(half, seg)
        is_vec = None if mid_in else L.contains(Q.edge(i))
        ok = witness is not None and (mid_in or bool(is_vec))
        verdicts.append(EdgeVerdict(i, mid_in, witness, is_vec, ok))
    ratio = Q.area() / L.covolume
    k = int(ratio) if ratio.is_integer() and ratio > 0 else None
    passed = k is not None and all(v.ok for v in verdicts)
    return BolleReport(L, passed, k, tuple(verdicts), shift, ratio)


def matrix_A(p: Sequence) -> list[list[Fraction]]:
    """``p_i`` on the diagonal, +1 above it, -1 below it."""
    n = len(p)
    return [
        [Fraction(p[i]) if i == j else Fraction(1 if j > i else -1) for j in range(n)]
        for i in range(n)
    ]


def det_A(p: Sequence) -> Fraction:
    """Exact determinant of :func:`matrix_A` (fraction-free Bareiss elimination)."""
    n = len(p)
    if n == 0:
        return Fraction(1)
    if any(Fraction(x) < 0 for x in p):
        raise ValueError("diagonal entries must be non-negative")
    den = math.lcm(*(Fraction(x).denominator for x in p))
    M = [[int(x * den) for x in row] for row in matrix_A(p)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if M[r][k]), None)
            if swap is None:
                return Fraction(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return Fraction(sign * M[n - 1][n - 1], den**n)


@dataclass(frozen=True)
class Beta:
    beta: int | None
    choice: tuple[str, ...] = ()  # per i: "e" or "e*"
    denominators: tuple[int, ...] = ()
    failed_index: int | None = None

    @property
    def ok(self) -> bool:
        return self.beta is not None


def lemma5_beta(P: SymPolygon, L: Lattice2) -> Beta:
    """Smallest common ``β`` putting ``e*_i`` (preferred) or ``e_i`` into ``(1/β)L``."""
    Q = P.centered()
    choice, dens = [], []
    for i in range(1, Q.m + 1):
        q = rational_commensurate(Q.edge_star(i), L)
        if q is not None:
            choice.append("e*")
        else:
            q = rational_commensurate(Q.edge(i), L)
            if q is None:
                return Beta(None, tuple(choice), tuple(dens), failed_index=i)
            choice.append("e")
        dens.append(q)
    return Beta(math.lcm(*dens), tuple(choice), tuple(dens))


@dataclass(frozen=True)
class Theorem1Certificate:
    chosen_j: int  # 1-based lattice group index
    beta: int  # final scaling: lattice = scale(Λ_j, 1, beta)
    lemma5_beta: int
    gamma: int
    lattice: Lattice2
    k_lattice: int
    bolle: BolleReport
    source_certificate: TilingCertificate
    lattice_certificate: TilingCertificate

    def to_dict(self) -> dict:
        return {
            "chosen_j": self.chosen_j,
            "beta": self.beta,
            "lemma5_beta": self.lemma5_beta,
            "gamma": self.gamma,
            "lattice": [_pt(self.lattice.u), _pt(self.lattice.v)],
            "k_lattice": self.k_lattice,
            "bolle": self.bolle.to_dict(),
            "source_certificate": self.source_certificate.to_dict(),
            "lattice_certificate": self.lattice_certificate.to_dict(),
        }


@dataclass(frozen=True)
class NoLatticeFound:
    diagnostics: tuple[dict, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {"status": "no_lattice_found", "diagnostics": list(self.diagnostics)}


def theorem1_pipeline(
    P: SymPolygon,
    X: TileMultiset,
    source: TilingCertificate | None,
    beta_escalation_bound: int = 4,
    allow_sampled: bool = False,
) -> Theorem1Certificate | NoLatticeFound:
    """Extract a multiple lattice tiling from a verified multiple translative one."""
    if source is None or source.status != VERIFIED:
        raise PreconditionUnverifiedError("a verified tiling certificate for (P, X) is required")
    if source.mode != "exact" and not allow_sampled:
        raise PreconditionUnverifiedError(
            "tiling certificate is only sampled; pass allow_sampled to accept it"
        )
    sc = structure_check(X)
    if not sc:
        raise StructureViolationError(
            f"lattice groups {sc.violation} intersect in rank 2; regroup X first"
        )
    diagnostics = []
    for j, group in enumerate(X.groups, start=1):
        Lj = group.lattice
        b = lemma5_beta(P, Lj)
        if not b.ok:
            diagnostics.append({"j": j, "lemma5": f"no commensurate e_i/e*_i for i={b.failed_index}"})
            continue
        tried = []
        for gamma in range(1, beta_escalation_bound + 1):
            beta = gamma * b.beta
            lat = scale(Lj, 1, beta)
            rep = bolle_check(P, lat)
            if rep.passed:
                cert = verify_exact(P, TileMultiset.lattice(lat))
                if not cert.verified or cert.k != rep.k:
                    raise AssertionError(
                        f"lattice tiling criterion and exact verifier disagree on {lat}"
                    )
                return Theorem1Certificate(j, beta, b.beta, gamma, lat, rep.k, rep, source, cert)
            tried.append(
                {
                    "beta": beta,
                    "area_over_det": format_scalar(rep.density_ratio),
                    "failing_edges": [v.index for v in rep.per_edge if not v.ok],
                }
            )
        diagnostics.append({"j": j, "lemma5_beta": b.beta, "choice": list(b.choice), "tried": tried})
    return NoLatticeFound(tuple(diagnostics))


@dataclass(frozen=True)
class TauStarResult:
    found: bool
    k: int | None = None
    lattice: Lattice2 | None = None
    report: BolleReport | None = None
    candidates_checked: int = 0

    def to_dict(self) -> dict:
        return {
            "status": "found" if self.found else "not_found_within_bounds",
            "k_upper_bound": self.k,
            "lattice": None if self.lattice is None else [_pt(self.lattice.u), _pt(self.lattice.v)],
            "candidates_checked": self.candidates_checked,
            "bolle": None if self.report is None else self.report.to_dict(),
        }


def _generators(P: SymPolygon) -> list[Vec]:
    Q = P.centered()
    pool = [Q.edge(i) for i in range(1, Q.m + 1)] + list(Q.edge_stars)
    n = len(Q.vertices)
    pool += [Q.vertices[j] - Q.vertices[i] for i in range(n) for j in range(i + 1, n)]
    out: list[Vec] = []
    for g in pool:
        if g.is_zero() or any(g == h or g == -h for h in out):
            continue
        out.append(g)
    return out


def tau_star_search(P: SymPolygon, beta_bound: int = 2, generator_set_bound: int = 12) -> TauStarResult:
    """Upper bound on the least lattice multiplicity of ``P`` over a finite candidate set.

    Candidate bases are pairs of the first ``generator_set_bound`` vectors among
    ``e_i``, ``e*_i`` and vertex differences, scaled by ``1/β`` for ``β <= beta_bound``.
    """
    gens = _generators(P)[:generator_set_bound]
    seen: list[Lattice2] = []
    best: tuple[int, Lattice2, BolleReport] | None = None
    checked = 0
    for beta in range(1, beta_bound + 1):
        f = Scalar(Fraction(1, beta))
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if not gens[i].cross(gens[j]):
                    continue
                lat = Lattice2(gens[i] * f, gens[j] * f)
                if any(lat == s for s in seen):
                    continue
                seen.append(lat)
                checked += 1
                rep = bolle_check(P, lat)
                if rep.passed and (best is None or rep.k < best[0]):
                    best = (rep.k, lat, rep)
    if best is None:
        return TauStarResult(False, candidates_checked=checked)
    return TauStarResult(True, best[0], best[1], best[2], checked)
