import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import elements, fields, invertible_matrices

from cayley.collineations import make_M, make_N, make_Nc
from cayley.errors import MixedFields, SingularMatrix, WrongField
from cayley.fields import GF, QQ
from cayley.forms import CubicForm, Form, UniPoly, alternative_form, cayley_form, monomials
from cayley.linalg import identity, mat_mul, mat_vec


def test_monomial_order():
    m = monomials(3)
    assert len(m) == 20 and m[0] == (0, 0, 0) and m[-1] == (3, 3, 3)
    assert list(m) == sorted(m)


def test_evaluate_examples():
    F = GF(5)
    f = cayley_form(F)
    assert f((F(1), F(0), F(0), F(0))) == 0
    assert f((F(0), F(1), F(0), F(0))) == -1
    for u1 in F.elements():
        for u2 in F.elements():
            assert f((F.one, u1, u2, u1 * u2 - u1**3)) == 0
    with pytest.raises(MixedFields):
        f((GF(7).one,) * 4)


@pytest.mark.parametrize("q", [2, 3, 5, 7, 9])
def test_partials_of_f(q):
    F = GF(q)
    f = cayley_form(F)
    want = [
        Form.from_terms(F, {(1, 2): 1, (0, 3): -2}, 2),
        Form.from_terms(F, {(0, 2): 1, (1, 1): -3}, 2),
        Form.from_terms(F, {(0, 1): 1}, 2),
        Form.from_terms(F, {(0, 0): -1}, 2),
    ]
    assert list(f.partials()) == want
    if q == 3:
        assert f.partial(1) == Form.from_terms(F, {(0, 2): 1}, 2)
    assert not Form.zero(F).partial(2)


def test_act_examples():
    F2, F3 = GF(2), GF(3)
    f2 = cayley_form(F2)
    assert f2.act(identity(F2)) == f2
    assert f2.act(make_N(F2).rows) == alternative_form(F2)
    f3 = cayley_form(F3)
    assert f3.act(make_Nc(F3, 1).rows) == alternative_form(F3)
    assert f3.act(make_Nc(F3, 2).rows) == alternative_form(F3).scale(2)
    with pytest.raises(SingularMatrix):
        f3.act([[F3.zero] * 4] * 4)
    with pytest.raises(WrongField):
        alternative_form(GF(5))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_act_M_scales_by_c_cubed(q):
    F = GF(q)
    f = cayley_form(F)
    E = F.elements()
    for a in E:
        for b in E:
            for c in E[1:]:
                assert f.act(make_M(F, a, b, c).rows) == f.scale(c**3)


@given(fields, st.data())
def test_act_is_a_right_action(F, data):
    A = data.draw(invertible_matrices(F))
    B = data.draw(invertible_matrices(F))
    p = Form(F, 3, tuple(data.draw(elements(F)) for _ in range(20)))
    assert p.act(A).act(B) == p.act(mat_mul(A, B))


@given(fields, st.data())
def test_act_evaluation_equivariance(F, data):
    M = data.draw(invertible_matrices(F))
    p = Form(F, 3, tuple(data.draw(elements(F)) for _ in range(20)))
    x = tuple(data.draw(elements(F)) for _ in range(4))
    assert p.act(M)(x) == p(mat_vec(M, x))


def test_taylor_shift_examples():
    F = GF(7)
    f = cayley_form(F)
    parts = f.taylor_shift((0, 0, 1, 0))
    assert not parts[0] and not parts[1]
    assert parts[2] == Form.from_terms(F, {(0, 1): 1}, 2)
    parts = f.taylor_shift((0, 0, 0, 1))
    assert parts[2] == Form.from_terms(F, {(0, 0): -1}, 2)
    assert f.taylor_shift((0, 1, 0, 0))[0].coeffs[0] == -1


@given(fields, st.data())
def test_taylor_shift_pieces(F, data):
    p = Form(F, 3, tuple(data.draw(elements(F)) for _ in range(20)))
    zero = p.taylor_shift((0, 0, 0, 0))
    assert zero[3] == p and not any(zero[:3])
    base = tuple(data.draw(elements(F)) for _ in range(4))
    x = tuple(data.draw(elements(F)) for _ in range(4))
    t = data.draw(elements(F))
    pieces = p.taylor_shift(base)
    assert pieces[0].coeffs[0] == p(base)
    assert pieces[1](x) == sum((g * xi for g, xi in zip(p.gradient(base), x)), F.zero)
    shifted = tuple(b + t * xi for b, xi in zip(base, x))
    assert p(shifted) == sum((pieces[d](x) * t**d for d in range(4)), F.zero)


@given(st.sampled_from([2, 4, 5, 7, 8, 11, 13]).map(GF), st.data())
def test_euler_relation(F, data):
    f = cayley_form(F)
    x = tuple(data.draw(elements(F)) for _ in range(4))
    assert sum((xi * g for xi, g in zip(x, f.gradient(x))), F.zero) == 3 * f(x)


def test_euler_relation_degenerates_in_char_3():
    F = GF(3)
    f = cayley_form(F)
    x = (F(1), F(1), F(0), F(0))
    assert 3 * f(x) == 0
    assert sum((xi * g for xi, g in zip(x, f.gradient(x))), F.zero) == 0


def test_restrict_to_line_examples():
    F = GF(5)
    f = cayley_form(F)
    P00, P10 = (F.one, F(0), F(0), F(0)), (F.one, F(1), F(0), F(-1))
    assert f.restrict_to_line(P00, P10).roots() == {F(0): 1, F(1): 1, F(4): 1}
    on_gen = (F.one, F(0), F(3), F(0))
    assert not f.restrict_to_line(P00, on_gen)
    Q1, Q0 = (F(0), F(1), F(0), F(0)), (F(1), F(0), F(0), F(0))
    r = f.restrict_to_line(Q1, Q0)
    assert r(1) == 0 and r(0) != 0


def test_unipoly():
    F = GF(7)
    p = UniPoly(F, (F(6), F(0), F(1)))  # T^2 - 1
    assert p.degree == 2 and p.roots() == {F(1): 1, F(6): 1}
    sq = p * p
    assert sq.multiplicity(1) == 2
    quo, rem = sq.divide_linear(1)
    assert not rem and quo.degree == 3
    assert UniPoly(F, (F(0), F(0))).degree == -1


def test_rational_forms():
    Q = QQ()
    f = cayley_form(Q)
    assert f((Q(1), Q(2), Q(3), Q(2 * 3 - 8))) == 0
    p = CubicForm(Q, [1] + [0] * 19)
    assert p.serialize()[0] == "1" and p.is_proportional(p.scale(Q(-3)))
    assert not p.is_proportional(f)
