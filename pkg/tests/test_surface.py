from collections import Counter

import pytest
from conftest import surface
from hypothesis import given
from hypothesis import strategies as st
from oracles import raw_surface
from strategies import rationals

from cayley.errors import (
    NoGeneratorInPlane,
    NotAffineSurfacePoint,
    NotOnParabola,
    PlaneThroughQ3,
    SmallField,
)
from cayley.fields import GF
from cayley.forms import Form
from cayley.projective import ProjLine, ProjPlane, ProjPoint, enumerate_lines, enumerate_planes, join
from cayley.suites import compare_with_f3
from cayley.surface import DOUBLE_AT_INFINITY, NOT_ON_SURFACE, SIMPLE_AFFINE


def test_point_count_matches_oracle(model):
    q = model.field.q
    pts = model.points
    assert len(pts) == len(set(pts)) == q * q + q + 1
    assert {tuple(x.value for x in P.coords) for P in pts} == set(raw_surface(q))


@pytest.mark.parametrize("q", [11, 13])
def test_point_count_larger_fields(q):
    m = surface(q)
    assert sum(m.contains(P) for P in m.space_points) == q * q + q + 1


def test_F_meets_omega_in_g_inf(model):
    on_omega = {P for P in model.points if not P[0]}
    assert on_omega == set(model.g_inf.points())


def test_param_examples():
    m = surface(5)
    F = m.field
    assert m.param(0, 0) == m.Q[0]
    P = m.param(1, 1)
    assert P == ProjPoint.of(F, 1, 1, 1, 0) and m.on_parabola(P)
    assert m.unparam(ProjPoint.of(F, 1, 2, 3, 3)) == (2, 3)
    with pytest.raises(NotAffineSurfacePoint):
        m.unparam(m.Q[3])
    with pytest.raises(NotAffineSurfacePoint):
        m.unparam(ProjPoint.of(F, 1, 2, 3, 4))


@given(rationals(), rationals())
def test_param_round_trip_rational(u1, u2):
    m = surface(None)
    P = m.param(u1, u2)
    assert m.contains(P) and m.unparam(P) == (u1, u2)


def test_generators(model):
    q = model.field.q
    gens = model.generators
    assert len(gens) == len(set(gens)) == q + 1
    assert all(all(model.contains(P) for P in g.points()) for g in gens)
    assert model.generator_through(model.Q[0]) == ProjLine.through(model.Q[0], model.Q[2])
    for P in model.affine_points:
        assert model.generator_through(P) == model.generator(1, P[1])
    # plane-section oracle: V(a0 X0 - X1) meets F in g_inf and g(1, a0)
    for a0 in model.field.elements():
        pl = ProjPlane((a0, -model.field.one, model.field.zero, model.field.zero))
        section = {P for P in model.points if pl.contains(P)}
        assert section == set(model.g_inf.points()) | set(model.generator(1, a0).points())


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_lines_in_F_are_the_generators(q):
    m = surface(q)
    in_F = [L for L in enumerate_lines(m.field) if all(P in m.point_set for P in L.points())]
    assert set(in_F) == set(m.generators)


def test_incidence_counts(model):
    counts = Counter(P for g in model.generators for P in g.points())
    for P in model.g_inf.points():
        assert counts[P] == (1 if P == model.Q[3] else 2)
    assert all(counts[P] == 1 for P in model.affine_points)


def test_omega_unique_plane_without_second_generator(model):
    planes = {join(model.g_inf, P) for P in model.space_points if not model.g_inf.contains(P)}
    lonely = [pl for pl in planes if sum(pl.contains(g) for g in model.generators) == 1]
    assert lonely == [model.omega]


def test_beta_examples():
    m = surface(5)
    F = m.field
    Y = ProjPoint.of(F, 1, 1, 1, 0)
    assert m.beta(Y) == ProjPoint.of(F, 0, 0, 1, 1)
    assert ProjLine.through(Y, m.beta(Y)) == m.generator(1, 1)
    assert m.beta(m.Q[0]) == m.Q[2]
    assert m.beta(m.Q[2]) == m.Q[3]
    assert ProjLine.through(m.Q[2], m.Q[3]) == m.generator(0, 1) == m.g_inf
    with pytest.raises(NotOnParabola):
        m.beta(m.Q[1])


def test_beta_joins_are_generators(model):
    F = model.field
    for s in F.elements():
        Y = ProjPoint((F.one, s, s * s, F.zero))
        assert model.beta(Y) != Y
        assert ProjLine.through(Y, model.beta(Y)) in model.generators


def test_classify_examples():
    m = surface(5)
    F = m.field
    c = m.classify(m.param(1, 1))
    assert c.tag == SIMPLE_AFFINE and c.tangent_planes == (ProjPlane.of(F, 1, -2, 1, -1),)
    c = m.classify(m.Q[3])
    assert c.tag == DOUBLE_AT_INFINITY and c.tangent_planes == (m.omega,)
    assert m.classify(m.Q[1]).tag == NOT_ON_SURFACE


def test_tangent_planes_closed_form(model):
    F = model.field
    for P in model.affine_points:
        u1, u2 = P[1], P[2]
        want = ProjPlane((2 * u1**3 - u1 * u2, u2 - 3 * u1 * u1, u1, -F.one))
        assert model.classify(P).tangent_planes == (want,)


def test_tangent_cones_at_infinity(model):
    for P in model.g_inf.points():
        c = model.classify(P)
        assert c.tag == DOUBLE_AT_INFINITY
        if P == model.Q[3]:
            assert c.tangent_planes == (model.omega,)
        else:
            s3 = P[3] / P[2]
            second = c.tangent_planes[1]
            assert c.tangent_planes[0] == model.omega
            assert second.contains(model.g_inf) and second.contains(model.generator(1, s3))


def test_nuclei(model):
    F = model.field
    nuclei = {P for P in model.space_points if model.is_nucleus(P)}
    if F.char == 3:
        assert nuclei == {P for P in model.space_points if not P[0] and not P[2]}
        N = ProjPoint.of(F, 0, 1, 0, 1)
        assert not any(model.f.gradient(N.coords))
    else:
        assert nuclei == set()


def test_common_zeros_of_partials(model):
    """The partials vanish together on g_inf, and in char 3 also on V(X0, X2)."""
    zeros = {P for P in model.space_points if not any(model.f.gradient(P.coords))}
    want = set(model.g_inf.points())
    if model.field.char == 3:
        want |= {P for P in model.space_points if not P[0] and not P[2]}
    assert zeros == want


def test_dual_criterion(model):
    F = model.field
    planes = enumerate_planes(F)
    dual = {t for t in planes if model.is_tangent_plane(t)}
    with_gen = {t for t in planes if any(t.contains(g) for g in model.generators)}
    assert dual == with_gen == model.tangent_planes_all()
    assert all(bool(model.generators_in(t)) == (t in with_gen) for t in planes)
    assert model.is_tangent_plane(ProjPlane.of(F, 0, 0, 0, 1))
    assert model.contains_generator(ProjPlane.of(F, 0, 0, 0, 1)) == model.generator(1, 0)
    assert model.g_inf in model.generators_in(ProjPlane.of(F, 0, 1, 0, 0))


def test_point_of_tangency_examples():
    m = surface(5)
    F = m.field
    assert m.point_of_tangency(ProjPlane.of(F, 0, 0, 0, 1)) == m.Q[0]
    P = m.param(1, 1)
    assert m.point_of_tangency(m.tangent_plane(P)) == P
    with pytest.raises(PlaneThroughQ3):
        m.point_of_tangency(m.omega)
    with pytest.raises(NoGeneratorInPlane):
        m.point_of_tangency(ProjPlane.of(F, 1, 0, 0, 1))
    with pytest.raises(SmallField):
        surface(3).point_of_tangency(ProjPlane.of(GF(3), 0, 0, 0, 1))


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_point_of_tangency_round_trip(q):
    m = surface(q)
    for P in m.affine_points:
        tau = m.tangent_plane(P)
        assert m.point_of_tangency(tau) == P == m.tangency_point_algebraic(tau)


@given(rationals(), rationals())
def test_tangency_algebraic_rational(u1, u2):
    m = surface(None)
    P = m.param(u1, u2)
    tau = m.tangent_plane(P)
    assert m.is_tangent_plane(tau) and m.tangency_point_algebraic(tau) == P


def test_f3_clauses():
    assert all(compare_with_f3(surface(3)).values())


def test_f_squared_has_no_simple_points():
    m = surface(5)
    f = m.f
    terms = {}
    for m1, a in f.terms().items():
        for m2, b in f.terms().items():
            key = tuple(sorted(m1 + m2))
            terms[key] = terms.get(key, m.field.zero) + a * b
    f2 = Form.from_terms(m.field, terms, 6)
    assert all(not any(f2.gradient(P.coords)) for P in m.points)
