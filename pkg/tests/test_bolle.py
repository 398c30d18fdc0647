import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import HEXAGON, LAMBDA_HEX, SQUARE, V
from multitile.bolle import (
    NoLatticeFound,
    bolle_check,
    det_A,
    lemma5_beta,
    matrix_A,
    tau_star_search,
    theorem1_pipeline,
)
from multitile.errors import PreconditionUnverifiedError, StructureViolationError
from multitile.field import Scalar
from multitile.geometry import SymPolygon
from multitile.lattice import Lattice2, Z2, scale
from multitile.tiling import TileMultiset
from multitile.verify import TilingCertificate, verify_exact, verify_sampled
from oracles import cofactor_det, leibniz_det, random_lattice, random_polygon, star_lattice

R2 = Scalar(0, 1, 2)
XZ = TileMultiset.lattice(Z2)
# edges (sqrt2, 0) and (1, sqrt2): neither e_1 nor e*_1 = e_2 is rational in Z^2
IRR_PARALLELOGRAM = SymPolygon(
    [V(-(R2 + 1) / 2, -R2 / 2), V((R2 - 1) / 2, -R2 / 2), V((R2 + 1) / 2, R2 / 2), V((1 - R2) / 2, R2 / 2)]
)


def test_bolle_square_z2():
    rep = bolle_check(SQUARE, Z2)
    assert rep.passed and rep.k == 4
    assert all(e.midpoint_in_half_lattice for e in rep.per_edge)
    assert {e.interior_witness for e in rep.per_edge} == {V(1, 0), V(0, 1), V(-1, 0), V(0, -1)}


def test_bolle_hexagon():
    rep = bolle_check(HEXAGON, LAMBDA_HEX)
    assert rep.passed and rep.k == 1
    wit = [e.interior_witness for e in rep.per_edge[:3]]
    assert wit == [V(F(1, 2), F(1, 2)), V(F(-1, 2), 1), V(-1, F(1, 2))]


def test_bolle_fails_on_3x1():
    rep = bolle_check(SQUARE, Lattice2(V(3, 0), V(0, 1)))
    assert not rep.passed and rep.k is None
    assert rep.density_ratio == F(4, 3)
    bad = {e.index for e in rep.per_edge if not e.ok}
    assert bad == {1, 3}  # the vertical edges
    assert all(rep.per_edge[i - 1].interior_witness is None for i in bad)


def test_bolle_records_centering():
    P = SQUARE.translate(V(5, F(1, 3)))
    rep = bolle_check(P, Z2)
    assert rep.passed and rep.applied_centering == V(-5, F(-1, 3))


def test_bolle_condition_three():
    # rhombus: e_1 = (3,1) is a lattice vector, its midpoint misses 1/2 L
    P = SymPolygon([V(0, -1), V(3, 0), V(0, 1), V(-3, 0)])
    L = Lattice2(V(3, 1), V(2, F(-4, 3)))
    rep = bolle_check(P, L)
    assert rep.passed and rep.k == 1
    first = rep.per_edge[0]
    assert not first.midpoint_in_half_lattice and first.edge_is_lattice_vector
    assert first.interior_witness is not None
    assert verify_exact(P, TileMultiset.lattice(L)).k == 1
    # the same rhombus over a lattice missing e_1 fails condition 3
    L2 = Lattice2(V(6, 2), V(1, F(-2, 3)))
    assert L2.covolume == 6
    rep = bolle_check(P, L2)
    assert not rep.passed
    assert not verify_exact(P, TileMultiset.lattice(L2)).verified


def test_det_A_examples():
    assert det_A([0, 0, 0]) == 0
    assert det_A([0, 0]) == 1
    assert det_A([1, 1, 1]) == 4
    assert det_A([1, 1, 1]) == cofactor_det(matrix_A([1, 1, 1]))
    assert det_A([]) == 1
    with pytest.raises(ValueError):
        det_A([1, -1])


@pytest.mark.parametrize("n", range(1, 9))
def test_det_A_zero_diagonal(n):
    assert det_A([0] * n) == (0 if n % 2 else 1)


nonneg = st.fractions(min_value=0, max_value=6, max_denominator=9)


@given(st.lists(nonneg, min_size=1, max_size=6))
def test_det_A_matches_leibniz(p):
    assert det_A(p) == leibniz_det(matrix_A(p))


@given(st.lists(nonneg, min_size=1, max_size=8), st.data())
def test_det_A_positive(p, data):
    i = data.draw(st.integers(0, len(p) - 1))
    p[i] = p[i] + data.draw(st.fractions(min_value=F(1, 50), max_value=5, max_denominator=50))
    assert det_A(p) > 0


@given(st.lists(nonneg, min_size=1, max_size=7), st.data())
def test_det_A_multilinear_in_diagonal(p, data):
    i = data.draw(st.integers(0, len(p) - 1))
    h = data.draw(st.fractions(min_value=F(1, 10), max_value=3, max_denominator=10))
    q = list(p)
    q[i] += h
    minor = det_A(p[:i] + p[i + 1:])
    assert (det_A(q) - det_A(p)) / h == minor


def test_lemma5_examples():
    b = lemma5_beta(SQUARE, Z2)
    assert b.beta == 1 and b.choice == ("e*", "e*")
    b = lemma5_beta(HEXAGON, LAMBDA_HEX)
    assert b.beta == 1 and set(b.choice) == {"e*"}
    b = lemma5_beta(IRR_PARALLELOGRAM, Z2)
    assert not b.ok and b.failed_index == 1
    # a denominator shows up when the lattice is too coarse
    b = lemma5_beta(SQUARE, scale(Z2, 4))
    assert b.beta == 2


def test_pipeline_irrational_union():
    X = TileMultiset([(Z2, V(0, 0)), (Z2, V(R2 / 2, 0))])
    src = verify_sampled(SQUARE, X, probes=100, seed=0)
    with pytest.raises(PreconditionUnverifiedError):
        theorem1_pipeline(SQUARE, X, src)
    cert = theorem1_pipeline(SQUARE, X, src, allow_sampled=True)
    assert (cert.chosen_j, cert.beta, cert.k_lattice) == (1, 1, 4)
    assert cert.lattice == Z2
    assert cert.lattice_certificate.verified and cert.lattice_certificate.k == 4


def test_pipeline_two_cosets():
    L = Lattice2(V(2, 0), V(0, 1))
    X = TileMultiset([(L, V(0, 0)), (L, V(1, 0))])
    src = verify_exact(SQUARE, X)
    assert src.k == 4
    cert = theorem1_pipeline(SQUARE, X, src)
    assert cert.beta == 1 and cert.lattice == L and cert.k_lattice == 2


def test_pipeline_hexagon_is_identity():
    X = TileMultiset.lattice(LAMBDA_HEX)
    cert = theorem1_pipeline(HEXAGON, X, verify_exact(HEXAGON, X))
    assert cert.beta == 1 and cert.k_lattice == 1 and cert.lattice == LAMBDA_HEX


def test_pipeline_escalates_gamma():
    L = scale(Z2, 4)
    X = TileMultiset([(L, V(a, b)) for a in range(4) for b in range(4)])
    cert = theorem1_pipeline(SQUARE, X, verify_exact(SQUARE, X))
    assert cert.lemma5_beta == 2
    assert cert.lattice == scale(L, 1, cert.beta)
    assert Scalar(cert.k_lattice) == SQUARE.area() * cert.beta**2 / L.covolume


def test_pipeline_preconditions():
    with pytest.raises(PreconditionUnverifiedError):
        theorem1_pipeline(SQUARE, XZ, None)
    bad = TilingCertificate("exact", "not_a_tiling")
    with pytest.raises(PreconditionUnverifiedError):
        theorem1_pipeline(SQUARE, XZ, bad)
    X = TileMultiset([(Z2, V(0, 0)), (scale(Z2, 1, 2), V(0, 0))])
    with pytest.raises(StructureViolationError):
        theorem1_pipeline(SQUARE, X, verify_exact(SQUARE, X))


def test_pipeline_reports_no_lattice():
    # a forged certificate: the pipeline must not invent a lattice
    forged = TilingCertificate("exact", "verified", k=1)
    out = theorem1_pipeline(IRR_PARALLELOGRAM, XZ, forged)
    assert isinstance(out, NoLatticeFound)
    assert "i=1" in out.diagnostics[0]["lemma5"]


def test_pipeline_rescales_coarse_lattice():
    # square over 3Z x Z fails as is, but lemma 5 scales it to Z x (1/3)Z
    X = TileMultiset.lattice(Lattice2(V(3, 0), V(0, 1)))
    forged = TilingCertificate("exact", "verified", k=1)
    cert = theorem1_pipeline(SQUARE, X, forged)
    assert cert.beta == 3 and cert.k_lattice == 12
    assert verify_exact(SQUARE, TileMultiset.lattice(cert.lattice)).k == 12


def test_tau_star_examples():
    r = tau_star_search(SQUARE)
    assert r.found and r.k == 1
    assert r.lattice == Lattice2(V(0, 2), V(-2, 0))
    r = tau_star_search(HEXAGON)
    assert r.found and r.k == 1
    assert verify_exact(HEXAGON, TileMultiset.lattice(r.lattice)).k == 1


def test_tau_star_bounds_exhausted():
    # one generator spans no lattice, so nothing is checked
    r = tau_star_search(SQUARE, beta_bound=1, generator_set_bound=1)
    assert not r.found and r.candidates_checked == 0
    assert r.to_dict()["status"] == "not_found_within_bounds"


@st.composite
def lattice_instances(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    P = random_polygon(rng, rng.choice([2, 3, 4]))
    if draw(st.booleans()):
        L = star_lattice(P)
        if rng.random() < 0.5:
            L = scale(L, 1, rng.choice([1, 2]))
    else:
        L = random_lattice(rng)
    return P, L


@settings(max_examples=40)
@given(lattice_instances())
def test_bolle_agrees_with_exact_verifier(inst):
    P, L = inst
    rep = bolle_check(P, L)
    cert = verify_exact(P, TileMultiset.lattice(L))
    assert rep.passed == cert.verified
    if rep.passed:
        assert rep.k == cert.k
        for i in range(1, P.m + 1):
            mid = P.centered().edge_segment(i).midpoint()
            assert mid == P.centered().edge_star(i) * F(-1, 2)
