import numpy as np
import pytest
from conftest import surface
from oracles import CUBIC_MONOMIALS, raw_census

from cayley import census
from cayley.collineations import extended_group_factored
from cayley.errors import FieldTooLarge, InfiniteField, WrongField
from cayley.fields import GF
from cayley.forms import Form, alternative_form, cayley_form


def _as_terms(p: Form):
    return tuple(sorted((m, c.value) for m, c in p.terms().items() if c))


def test_vanishing_space_dimensions():
    F = GF(5)
    assert len(census.vanishing_space(F, [])) == 20
    m = surface(5)
    basis = census.vanishing_space(F, m.points)
    # the linear condition leaves a pencil; only the non-vanishing filter cuts it down to f
    assert len(basis) == 2
    for p in basis:
        assert all(not p(P.coords) for P in m.points)


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_vanishing_space_dimension_matches_oracle(q):
    from oracles import _nullspace_mod_p, raw_surface

    rows = [[v[i] * v[j] * v[k] for i, j, k in CUBIC_MONOMIALS] for v in raw_surface(q)]
    assert len(census.vanishing_space(GF(q), surface(q).points)) == len(_nullspace_mod_p(rows, 20, q))


@pytest.mark.parametrize("q,forms,classes", [(2, 64, 64), (3, 4, 2), (4, 3, 1), (5, 4, 1), (7, 6, 1), (8, 7, 1), (9, 8, 1)])
def test_census_counts(q, forms, classes):
    found = census.exact_census(surface(q))
    assert len(found) == forms
    assert len(census.proportionality_classes(found)) == classes
    assert all(bool(p) for p in found)
    if q >= 4:
        assert all(p.is_proportional(cayley_form(surface(q).field)) for p in found)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_census_matches_independent_enumeration(q):
    assert {_as_terms(p) for p in census.exact_census(surface(q))} == raw_census(q)


def test_q2_brute_force_over_all_cubics():
    """Every one of the 2^20 cubics over GF(2), evaluated on every point of PG(3, 2)."""
    from oracles import raw_points, raw_surface

    pts = raw_points(2)
    on = np.array([v in raw_surface(2) for v in pts])
    mono = np.array([[v[i] * v[j] * v[k] for i, j, k in CUBIC_MONOMIALS] for v in pts], dtype=np.int64)
    bits = (np.arange(2**20)[:, None] >> np.arange(20)[None, :]) & 1
    vals = (bits @ mono.T) % 2
    good = bits[((vals == 0) == on[None, :]).all(axis=1)]
    brute = {tuple((m, 1) for m, b in zip(CUBIC_MONOMIALS, row) if b) for row in good.tolist()}
    assert len(brute) == 64
    assert brute == {_as_terms(p) for p in census.exact_census(surface(2))}


def test_q2_census_is_f_plus_zero_functions():
    m = surface(2)
    F = m.field
    basis = census.tallini_zero_forms(F)
    assert len(basis) == 6
    pts = m.space_points
    assert all(not z(P.coords) for z in basis for P in pts)
    span = census.span(F, basis)
    assert len(span) == 64
    assert sorted((m.f + z for z in span), key=Form.sort_key) == census.exact_census(m)
    assert alternative_form(F) in census.exact_census(m)


def test_q3_classes_are_f_and_alternative():
    m = surface(3)
    classes = census.proportionality_classes(census.exact_census(m))
    reps = {c[0].normalized() for c in classes}
    assert reps == {m.f.normalized(), alternative_form(m.field).normalized()}
    assert all(len(c) == 2 for c in classes)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_census_closed_under_extended_group(q):
    m = surface(q)
    forms = census.exact_census(m)
    norm = {p.normalized() for p in forms}
    for M in extended_group_factored(m):
        for c in census.proportionality_classes(forms)[:8]:
            assert c[0].act(M.rows).normalized() in norm


@pytest.mark.parametrize("q", [2, 3, 7])
def test_pivot_order_does_not_matter(q):
    m = surface(q)
    rev = list(reversed(range(20)))
    assert census.exact_census(m, pivot_order=rev) == census.exact_census(m)


def test_census_errors():
    with pytest.raises(FieldTooLarge):
        census.exact_census(surface(11))
    with pytest.raises(InfiniteField):
        census.exact_census(surface(None))
    with pytest.raises(WrongField):
        census.tallini_zero_forms(GF(3))
    assert census.serialize_forms(census.exact_census(surface(5)))[0] == sorted(
        census.serialize_forms(census.exact_census(surface(5)))
    )[0]
