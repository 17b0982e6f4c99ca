"""Verification suites run by the command-line harness.

Each suite returns ``(expected, actual, artifact)``.  ``expected`` and
``actual`` are flat JSON-ready dicts; a suite passes iff they are equal.
Finite fields get exhaustive checks; the rationals get fixed-seed samples.
"""

from __future__ import annotations

import random
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import census, collineations as coll, metric
from .errors import CayleyError, FieldTooLarge, UnsupportedField
from .fields import INF, Field, frobenius, one_minus, square_roots
from .forms import alternative_form
from .projective import ProjLine, ProjPlane, ProjPoint, enumerate_lines, enumerate_planes, join
from .surface import DOUBLE_AT_INFINITY, SIMPLE_AFFINE, SurfaceModel

SAMPLES = 40


class Skip(Exception):
    """Raised by a suite that does not apply to the given field."""


@dataclass(frozen=True)
class Options:
    max_q: int = 13
    seed: int = 20240607
    tables: bool = False


Result = tuple[dict, dict, object]
SuiteFn = Callable[[SurfaceModel, Options], Result]
REGISTRY: dict[str, SuiteFn] = {}


def suite(name: str):
    def deco(fn: SuiteFn) -> SuiteFn:
        REGISTRY[name] = fn
        return fn

    return deco


def _finite(model: SurfaceModel) -> None:
    if not model.field.is_finite:
        raise Skip("needs a finite field")


def _large(model: SurfaceModel) -> None:
    if model.field.is_finite and model.field.q <= 3:
        raise Skip("needs |K| >= 4")


def _rng(opts: Options) -> random.Random:
    return random.Random(opts.seed)


def _rand(F: Field, rng: random.Random, nonzero: bool = False):
    while True:
        x = F(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
        if x or not nonzero:
            return x


# -- surface and generators ------------------------------------------------------


@suite("surface-census")
def surface_census(model: SurfaceModel, opts: Options) -> Result:
    F = model.field
    if not F.is_finite:
        rng = _rng(opts)
        ok_param = ok_inf = True
        for _ in range(SAMPLES):
            u1, u2 = _rand(F, rng), _rand(F, rng)
            P = model.param(u1, u2)
            ok_param &= model.contains(P) and model.unparam(P) == (u1, u2)
            a, b = _rand(F, rng), _rand(F, rng, True)
            # points of omega lie on F iff X1 = 0
            ok_inf &= model.contains(ProjPoint((F.zero, F.zero, a, b)))
            ok_inf &= not model.contains(ProjPoint((F.zero, F.one, a, b)))
        exp = {"param_on_F_and_invertible": True, "F_meet_omega_is_g_inf": True}
        return exp, {"param_on_F_and_invertible": ok_param, "F_meet_omega_is_g_inf": ok_inf}, None
    q = F.q
    on_F = [P for P in model.space_points if model.contains(P)]
    actual = {
        "points": len(on_F),
        "param_image_plus_g_inf_equals_F": set(on_F) == model.point_set,
        "F_meet_omega_is_g_inf": {P for P in on_F if not P[0]} == set(model.g_inf.points()),
    }
    expected = {"points": q * q + q + 1, "param_image_plus_g_inf_equals_F": True, "F_meet_omega_is_g_inf": True}
    return expected, actual, None


@suite("generators")
def generators(model: SurfaceModel, opts: Options) -> Result:
    F = model.field
    if not F.is_finite:
        rng = _rng(opts)
        ok = True
        for _ in range(SAMPLES):
            s, lam, mu = _rand(F, rng), _rand(F, rng), _rand(F, rng, True)
            g = model.generator(1, s)
            A, B = (ProjPoint(b) for b in g.basis)
            ok &= model.contains(ProjPoint(tuple(lam * a + mu * b for a, b in zip(A.coords, B.coords))))
            P = model.param(s, _rand(F, rng))
            ok &= model.generator_through(P).contains(P)
            Y = ProjPoint((F.one, s, s * s, F.zero))
            ok &= model.generator(1, s) == ProjLine.through(Y, model.beta(Y))
        return {"sampled_generator_identities": True}, {"sampled_generator_identities": ok}, None
    q = F.q
    if q > opts.max_q:
        raise Skip(f"q = {q} exceeds --max-q")
    in_F = [L for L in enumerate_lines(F) if all(P in model.point_set for P in L.points())]
    counts = Counter(P for L in in_F for P in L.points())
    inf_pts = model.g_inf.points()
    actual = {
        "lines_in_F": len(in_F),
        "equal_generator_list": set(in_F) == set(model.generators),
        "g_inf_points_off_Q3_on_two": all(counts[P] == 2 for P in inf_pts if P != model.Q[3]),
        "Q3_on_one": counts[model.Q[3]] == 1,
        "affine_points_on_one": all(counts[P] == 1 for P in model.affine_points),
    }
    expected = {
        "lines_in_F": q + 1,
        "equal_generator_list": True,
        "g_inf_points_off_Q3_on_two": True,
        "Q3_on_one": True,
        "affine_points_on_one": True,
    }
    return expected, actual, [str(L) for L in in_F]


# -- singularities and tangent planes ----------------------------------------------


def _expected_tangent_plane(F: Field, u1, u2) -> ProjPlane:
    return ProjPlane((2 * u1**3 - u1 * u2, u2 - 3 * u1 * u1, u1, -F.one))


@suite("singularities")
def singularities(model: SurfaceModel, opts: Options) -> Result:
    F = model.field
    if not F.is_finite:
        rng = _rng(opts)
        ok = True
        for _ in range(SAMPLES):
            u1, u2 = _rand(F, rng), _rand(F, rng)
            P = model.param(u1, u2)
            c = model.classify(P)
            tau = _expected_tangent_plane(F, u1, u2)
            ok &= c.tag == SIMPLE_AFFINE and c.tangent_planes == (tau,)
            ok &= model.is_tangent_plane(tau) and model.tangency_point_algebraic(tau) == P
            Y = ProjPoint((F.zero, F.zero, F.one, _rand(F, rng)))
            ok &= model.classify(Y).tag == DOUBLE_AT_INFINITY and not model.is_nucleus(Y)
        return {"sampled_classification": True}, {"sampled_classification": ok}, None

    omega = model.omega
    pts = model.points
    classes = {P: model.classify(P) for P in pts}
    simple_ok = all((classes[P].tag == SIMPLE_AFFINE) == bool(P[0]) for P in pts)
    double_ok = all((classes[P].tag == DOUBLE_AT_INFINITY) == (not P[0]) for P in pts)
    cone_ok = True
    for P in model.g_inf.points():
        if P == model.Q[3]:
            cone_ok &= classes[P].tangent_planes == (omega,)
        else:
            s3 = P[3] / P[2]
            second = join(model.g_inf, ProjPoint((F.one, s3, s3 * s3, F.zero)))  # spans g(1, s3)
            cone_ok &= classes[P].tangent_planes == (omega, second)
    nuclei = {P for P in model.space_points if model.is_nucleus(P)}
    v02 = {P for P in model.space_points if not P[0] and not P[2]}
    expected_nuclei = v02 if F.char == 3 else set()

    planes = enumerate_planes(F)
    dual_zero = {t for t in planes if model.is_tangent_plane(t)}
    with_gen = {t for t in planes if any(t.contains(g) for g in model.generators)}
    tangent = model.tangent_planes_all()
    expected = {
        "simple_iff_affine": True,
        "double_iff_on_g_inf": True,
        "tangent_cones": True,
        "nuclei_are_V_X0_X2_in_char_3": True,
        "dual_zero_equals_planes_with_generator": True,
        "dual_zero_equals_tangent_planes": True,
        "dual_zero_count": F.q**2 + F.q + 1,
    }
    actual = {
        "simple_iff_affine": simple_ok,
        "double_iff_on_g_inf": double_ok,
        "tangent_cones": cone_ok,
        "nuclei_are_V_X0_X2_in_char_3": nuclei == expected_nuclei,
        "dual_zero_equals_planes_with_generator": dual_zero == with_gen,
        "dual_zero_equals_tangent_planes": dual_zero == tangent,
        "dual_zero_count": len(dual_zero),
    }
    if F.q >= 4:
        rt = True
        for P in model.affine_points:
            tau = model.tangent_plane(P)
            rt &= model.point_of_tangency(tau) == P == model.tangency_point_algebraic(tau)
        expected["tangency_recovery_round_trip"] = True
        actual["tangency_recovery_round_trip"] = rt
    if F.q == 3:
        expected.update(_f3_clauses_expected())
        actual.update(compare_with_f3(model))
    return expected, actual, None


def _f3_clauses_expected() -> dict:
    return {
        "f3_same_point_set": True,
        "f3_same_simple_double_partition": True,
        "f3_same_tangent_plane_set": True,
        "f3_distinct_tangent_plane_at_each_simple_point": True,
    }


def compare_with_f3(model: SurfaceModel) -> dict:
    """The four clauses comparing f with the alternative cubic over GF(3)."""
    g = alternative_form(model.field)
    zg = {P for P in model.space_points if not g(P.coords)}
    cf = {P: model.classify(P) for P in model.points}
    cg = {P: model.classify(P, g) for P in model.points}
    simple = [P for P in model.points if cf[P].tag == SIMPLE_AFFINE]
    return {
        "f3_same_point_set": zg == model.point_set,
        "f3_same_simple_double_partition": all(cf[P].tag == cg[P].tag for P in model.points),
        "f3_same_tangent_plane_set": model.tangent_planes_all() == model.tangent_planes_all(g),
        "f3_distinct_tangent_plane_at_each_simple_point": all(
            cf[P].tangent_planes != cg[P].tangent_planes for P in simple
        ),
    }


# -- matrix groups -----------------------------------------------------------------


def expected_stabilizer(F: Field) -> list[coll.CayleyMatrix]:
    ms = [coll.make_M(F, 0, 0, c) for c in F.nonzero()]
    if F.q == 2:
        ms.append(coll.make_N(F))
    elif F.q == 3:
        ms += [coll.make_Nc(F, c) for c in F.nonzero()]
    return sorted(ms, key=coll.CayleyMatrix.sort_key)


@suite("stabilizer")
def stabilizer(model: SurfaceModel, opts: Options) -> Result:
    _finite(model)
    F = model.field
    try:
        found = coll.stabilizer_census(model, opts.max_q)
    except FieldTooLarge as exc:
        raise Skip(str(exc)) from None
    listed = expected_stabilizer(F)
    fixed = (model.Q[0], model.Q[2], model.Q[3])
    keeps = all(all(M(P) == P for P in fixed) and M(model.g_inf) == model.g_inf for M in found)
    keeps &= all(M(model.omega) == model.omega for M in found)
    expected = {"size": len(listed), "matrices": coll.serialize_matrices(listed), "fixes_Q0_Q2_Q3_g_inf_omega": True}
    actual = {"size": len(found), "matrices": coll.serialize_matrices(found), "fixes_Q0_Q2_Q3_g_inf_omega": keeps}
    return expected, actual, [M.tag for M in found]


def expected_extended_order(q: int) -> int:
    # q = 3 keeps the required 18 * 4 = 72 although both enumerations find 36
    # (G(F) and the stabilizer share M_{0,0,2}); the suite reports that mismatch.
    if q == 2:
        return 8
    if q == 3:
        return 72
    return q * q * (q - 1)


@suite("extended-group")
def extended_group(model: SurfaceModel, opts: Options) -> Result:
    _finite(model)
    q = model.field.q
    if q > min(opts.max_q, 9):
        raise Skip(f"factored census is bounded by q <= {min(opts.max_q, 9)}")
    fact = coll.extended_group_factored(model)
    expected = {"size": expected_extended_order(q)}
    actual = {"size": len(fact)}
    if q <= 3:
        full = coll.full_scan(model)
        expected.update(full_scan_agrees=True, no_x00_zero_solutions=True)
        actual.update(full_scan_agrees=full == fact, no_x00_zero_solutions=not coll.full_scan(model, x00=0))
    else:
        expected["equals_G"] = True
        actual["equals_G"] = set(fact) == set(coll.group_G(model.field))
    return expected, actual, [M.tag for M in fact]


@suite("frobenius")
def frobenius_suite(model: SurfaceModel, opts: Options) -> Result:
    F = model.field
    if not F.is_finite:
        rng = _rng(opts)
        ok = all(frobenius(x, 0) == x for x in (_rand(F, rng) for _ in range(SAMPLES)))
        try:
            frobenius(F.one, 1)
            refused = False
        except UnsupportedField:
            refused = True
        exp = {"identity_only": True, "nontrivial_power_refused": True}
        return exp, {"identity_only": ok, "nontrivial_power_refused": refused}, None
    k = F.k
    expected = {"permutes_F": [True] * k}
    actual = {"permutes_F": [coll.frobenius_permutes_surface(model, i) for i in range(k)]}
    artifact = None
    if F.q >= 4:
        space = metric.DistanceSpace(model)
        artifact = []
        for i in range(k):
            pm = metric.frobenius_point_map(model, i)
            iso = space.is_isometry(pm)
            artifact.append(
                {"i": i, "isometry": iso, "induced": str(space.induced_matrix(pm).tag) if iso else None}
            )
    return expected, actual, artifact


# -- forms -----------------------------------------------------------------------------


@suite("form-census")
def form_census(model: SurfaceModel, opts: Options) -> Result:
    _finite(model)
    F = model.field
    q = F.q
    if q > min(opts.max_q, 9):
        raise Skip(f"census is bounded by q <= {min(opts.max_q, 9)}")
    forms = census.exact_census(model)
    classes = census.proportionality_classes(forms)
    f = model.f
    alt = census.exact_census(model, pivot_order=list(reversed(range(20))))
    expected = {"pivot_independent": True, "closed_under_G_ext": True}
    actual = {"pivot_independent": alt == forms}
    group = coll.extended_group_factored(model) if q <= 9 else []
    norm = {p.normalized() for p in forms}
    reps = [c[0] for c in classes]
    actual["closed_under_G_ext"] = all(p.act(M.rows).normalized() in norm for M in group for p in reps)
    if q == 2:
        span = census.span(F, census.tallini_zero_forms(F))
        expected.update(forms=64, classes=64, equals_f_plus_tallini_span=True)
        actual.update(
            forms=len(forms),
            classes=len(classes),
            equals_f_plus_tallini_span=sorted((f + z for z in span), key=lambda p: p.sort_key()) == forms,
        )
    elif q == 3:
        reps = {c[0].normalized() for c in classes}
        expected.update(forms=4, classes=2, classes_are_f_and_f3=True)
        actual.update(
            forms=len(forms),
            classes=len(classes),
            classes_are_f_and_f3=reps == {f.normalized(), alternative_form(F).normalized()},
        )
    else:
        expected.update(forms=q - 1, classes=1, all_multiples_of_f=True)
        actual.update(
            forms=len(forms), classes=len(classes), all_multiples_of_f=all(p.is_proportional(f) for p in forms)
        )
    return expected, actual, census.serialize_forms(forms)


@suite("tallini")
def tallini(model: SurfaceModel, opts: Options) -> Result:
    F = model.field
    if not F.is_finite or F.q != 2:
        raise Skip("the zero-function basis is specific to GF(2)")
    basis = census.tallini_zero_forms(F)
    vectors = [tuple(F(x) for x in v) for v in np.ndindex(2, 2, 2, 2)]
    span = census.span(F, basis)
    expected = {"basis_size": 6, "all_zero_functions": True, "span_size": 64, "f_plus_span_equals_census": True}
    actual = {
        "basis_size": len(basis),
        "all_zero_functions": all(not z(v) for z in basis for v in vectors),
        "span_size": len(span),
        "f_plus_span_equals_census": sorted((model.f + z for z in span), key=lambda p: p.sort_key())
        == census.exact_census(model),
    }
    return expected, actual, census.serialize_forms(basis)


# -- distance geometry -----------------------------------------------------------------


def _sample_affine_pairs(model: SurfaceModel, rng: random.Random, parallel_ok: bool = False):
    F = model.field
    out = []
    while len(out) < SAMPLES:
        A = model.param(_rand(F, rng), _rand(F, rng))
        B = model.param(_rand(F, rng), _rand(F, rng))
        if parallel_ok or A[1] != B[1]:
            out.append((A, B))
    return out


@suite("metric-axioms")
def metric_axioms(model: SurfaceModel, opts: Options) -> Result:
    _large(model)
    F = model.field
    d, eq = metric.delta, metric.ext_equal
    if not F.is_finite:
        rng = _rng(opts)
        pairs = _sample_affine_pairs(model, rng, parallel_ok=True)
        ok_self = all(d(model, A, A) is INF for A, _ in pairs)
        ok_anti = all(eq(d(model, A, B), one_minus(d(model, B, A))) for A, B in pairs)
        ok_geo = all(eq(metric.delta_geometric(model, A, B), d(model, A, B)) for A, B in pairs)
        ok_br = all(
            eq(metric.brauner_delta(model, A, B), INF)
            or eq(metric.brauner_delta(model, B, A), INF)
            or metric.brauner_delta(model, A, B) == -metric.brauner_delta(model, B, A)
            for A, B in pairs
        )
        inv = True
        for A, B in pairs:
            M = coll.make_M(F, _rand(F, rng), _rand(F, rng), _rand(F, rng, True))
            inv &= eq(d(model, M(A), M(B)), d(model, A, B))
        keys = ["self_distance_inf", "antisymmetry", "cross_ratio_agrees", "brauner_antisymmetry", "G_invariant"]
        return dict.fromkeys(keys, True), dict(zip(keys, [ok_self, ok_anti, ok_geo, ok_br, inv])), None

    q = F.q
    space = metric.DistanceSpace(model)
    D = space.table
    n = q * q
    minus = np.array([(1 - F.element(i)).value for i in range(q)] + [q])  # code of 1 - x, inf -> inf
    pts = model.affine_points
    cross = mult = tangency = True
    for i, A in enumerate(pts):
        TA = model.tangent_plane(A)
        for j, B in enumerate(pts):
            if i == j or A[1] == B[1]:
                continue
            geo = metric.delta_geometric(model, A, B)
            val = F.element(int(D[i, j]))
            cross &= geo == val
            mult &= metric.delta_by_multiplicity(model, A, B) == val
            line = ProjLine.through(A, B)
            tangency &= (val == 0) == TA.contains(line)
            tangency &= (val == 1) == model.tangent_plane(B).contains(line)
    parallel = np.array([[pts[i][1] == pts[j][1] for j in range(n)] for i in range(n)])
    expected = {
        "self_distance_inf": True,
        "inf_iff_parallel": True,
        "antisymmetry": True,
        "cross_ratio_agrees": True,
        "multiplicity_agrees": True,
        "tangency_rule": True,
        "G_invariant": True,
        "fingerprints_injective": True,
    }
    actual = {
        "self_distance_inf": bool((np.diag(D) == q).all()),
        "inf_iff_parallel": bool(((D == q) == parallel).all()),
        "antisymmetry": bool((D.T == minus[D]).all()),
        "cross_ratio_agrees": cross,
        "multiplicity_agrees": mult,
        "tangency_rule": tangency,
        "G_invariant": all(space.is_isometry(m) for m in space.group_maps),
        "fingerprints_injective": len({tuple(r) for r in D.tolist()}) == n,
    }
    if F.char not in (2, 3):
        expected["brauner_antisymmetry"] = True
        ok = True
        for A in pts:
            for B in pts:
                x, y = metric.brauner_delta(model, A, B), metric.brauner_delta(model, B, A)
                if x is not INF and y is not INF:
                    ok &= x == -y
        actual["brauner_antisymmetry"] = ok
    return expected, actual, space.export_table() if opts.tables else None


@suite("circles")
def circles(model: SurfaceModel, opts: Options) -> Result:
    _large(model)
    F = model.field
    if not F.is_finite:
        return _circles_sampled(model, opts)
    q = F.q
    space = metric.DistanceSpace(model)
    D = space.table
    n = q * q
    pts = model.affine_points
    E = F.elements()

    sizes = bool(((D[:, :, None] == np.arange(q)[None, None, :]).sum(axis=1) == q - 1).all())
    gen_ok = all(
        metric.circle_points(model, metric.Circle(A, INF))
        == {P for P in model.generator_through(A).points() if P[0]}
        for A in pts
    )
    # extended circle masks indexed by (midpoint, radius)
    eye = np.eye(n, dtype=bool)
    ec = (D[:, None, :] == np.arange(q)[None, :, None]) | eye[:, None, :]
    ec = ec.reshape(n * q, n)

    round_trip = ext_eq_curve = True
    for i, A in enumerate(pts):
        for r, rho in enumerate(E):
            R = metric.circle_to_curve(model, metric.Circle(A, rho))
            ext_eq_curve &= set(R.affine_points()) == {pts[j] for j in np.nonzero(ec[i * q + r])[0]}
            if 1 - 2 * rho:
                back = metric.curve_to_midpoints(model, R)
                round_trip &= back.case == "unique" and back.midpoint == A and back.radius == rho

    cases: Counter = Counter()
    brute_ok = True
    idx = model.affine_index
    for a, b, g in np.ndindex(q, q, q):
        R = metric.RCurve(E[a], E[b], E[g])
        mask = np.zeros(n, dtype=bool)
        mask[[idx[P] for P in R.affine_points()]] = True
        hits = {(int(k) // q, int(k) % q) for k in np.nonzero((ec == mask).all(axis=1))[0]}
        res = metric.curve_to_midpoints(model, R)
        cases[res.case] += 1
        if res.case == "unique":
            want = {(idx[res.midpoint], res.radius.value)}
        elif res.case == "not_a_circle":
            want = set()
        else:
            want = {(int(j), res.radius.value) for j in np.nonzero(mask)[0]}
        brute_ok &= hits == want
    if F.char == 2:
        want_cases = {"unique": q**3, "not_a_circle": 0, "every_point": 0}
    else:
        want_cases = {"unique": q * q * (q - 1), "not_a_circle": q * (q - 1), "every_point": q}
    expected = {
        "finite_radius_circles_have_q_minus_1_points": True,
        "infinite_radius_circle_is_affine_generator": True,
        "extended_circle_equals_curve": True,
        "round_trip": True,
        "trichotomy_matches_brute_force": True,
        "cases": want_cases,
    }
    actual = {
        "finite_radius_circles_have_q_minus_1_points": sizes,
        "infinite_radius_circle_is_affine_generator": gen_ok,
        "extended_circle_equals_curve": ext_eq_curve,
        "round_trip": round_trip,
        "trichotomy_matches_brute_force": brute_ok,
        "cases": {k: cases.get(k, 0) for k in want_cases},
    }
    if q == 5:
        res = metric.curve_to_midpoints(model, metric.RCurve(F(1), F(0), F(3)))
        expected["gf5_beta0_gamma3_every_point"] = True
        actual["gf5_beta0_gamma3_every_point"] = res.case == "every_point" and res.radius == F.one / 2
    return expected, actual, None


def _circles_sampled(model: SurfaceModel, opts: Options) -> Result:
    F = model.field
    rng = _rng(opts)
    rt = on = interp = True
    for _ in range(SAMPLES):
        A = model.param(_rand(F, rng), _rand(F, rng))
        rho = _rand(F, rng)
        R = metric.circle_to_curve(model, metric.Circle(A, rho))
        if 1 - 2 * rho:
            back = metric.curve_to_midpoints(model, R)
            rt &= back.midpoint == A and back.radius == rho
        ts = set()
        while len(ts) < 3:
            ts.add(_rand(F, rng))
        Y = [R.point(t) for t in ts]
        on &= all(Yi == A or metric.delta(model, A, Yi) == rho for Yi in Y)
        interp &= metric.interpolate_curve(model, *Y) == R
    keys = ["round_trip", "curve_points_on_circle", "interpolation_round_trip"]
    return dict.fromkeys(keys, True), dict(zip(keys, [rt, on, interp])), None


@suite("group-actions")
def group_actions(model: SurfaceModel, opts: Options) -> Result:
    _large(model)
    F = model.field
    if not F.is_finite:
        rng = _rng(opts)
        ok = True
        Q0 = model.Q[0]
        for _ in range(SAMPLES):
            c1, c2 = _rand(F, rng, True), _rand(F, rng, True)
            M = coll.make_M(F, 0, 0, c2 / c1)
            ok &= M(Q0) == Q0 and M(model.generator(1, c1)) == model.generator(1, c2)
            d, u, v = _rand(F, rng), _rand(F, rng, True), _rand(F, rng, True)
            B, B2 = model.param(u, (d + 1) * u * u), model.param(v, (d + 1) * v * v)
            ok &= metric.delta(model, Q0, B) == d and coll.make_M(F, 0, 0, v / u)(B) == B2
        return {"sampled_transporters": True}, {"sampled_transporters": ok}, None

    q = F.q
    space = metric.DistanceSpace(model)
    G, maps = space.group, space.group_maps
    n = q * q
    pts = model.affine_points
    afs = space.antiflags
    af_regular = space.orbit_is_regular(afs, lambda M, af: (M(af[0]), M(af[1])))

    D = space.table
    sizes, regular = [], True
    for dv in range(q):
        i, j = np.nonzero(D == dv)
        sizes.append(len(i))
        i0, j0 = int(i[0]), int(j[0])
        images = {(int(m[i0]), int(m[j0])) for m in maps}
        regular &= len(images) == len(G) and images == set(zip(i.tolist(), j.tolist()))

    par_ok = True
    for i in range(n):
        for j in range(n):
            if i == j or pts[i][1] != pts[j][1]:
                continue
            hits = Counter((int(m[i]), int(m[j])) for m in maps)
            diff = pts[j][2] - pts[i][2]
            for k in range(n):
                for l in range(n):
                    if k == l or pts[k][1] != pts[l][1]:
                        continue
                    want = len(square_roots((pts[l][2] - pts[k][2]) / diff))
                    par_ok &= hits.get((k, l), 0) == want
        if q > 5:
            break  # one source pair suffices for large q; G is transitive on affine points

    ab1 = [m for M, m in zip(G, maps) if M.params[2] == 1]
    ab1_regular = len(ab1) == n and all(len({int(m[i]) for m in ab1}) == n for i in range(n))
    expected = {
        "antiflags": q * q * (q - 1),
        "antiflags_regular": True,
        "delta_d_sizes": [q * q * (q - 1)] * q,
        "delta_d_regular": True,
        "parallel_counts_equal_square_root_counts": True,
        "translations_regular_on_affine_points": True,
    }
    actual = {
        "antiflags": len(afs),
        "antiflags_regular": af_regular,
        "delta_d_sizes": sizes,
        "delta_d_regular": regular,
        "parallel_counts_equal_square_root_counts": par_ok,
        "translations_regular_on_affine_points": ab1_regular,
    }
    return expected, actual, None


@suite("rigidity")
def rigidity(model: SurfaceModel, opts: Options) -> Result:
    _large(model)
    F = model.field
    if not F.is_finite:
        rng = _rng(opts)
        ok = True
        for _ in range(SAMPLES):
            u1, u2 = _rand(F, rng), _rand(F, rng)
            if u1 in (0, 1):
                continue
            v2, w2 = u2 - u1 * u1, -u1 * u1 - u1 + u2 + 2
            # radius-0 circles about P(0, v2), P(1, w2): y2 = y1^2 + v2 and y2 = y1^2 + y1 - 2 + w2
            y1 = v2 - w2 + 2
            y = model.param(y1, y1 * y1 + v2)
            ok &= y == model.param(u1, u2)
            ok &= metric.delta(model, model.param(0, v2), y) == 0 == metric.delta(model, model.param(1, w2), y)
        return {"sampled_witness_unique": True}, {"sampled_witness_unique": ok}, None

    space = metric.DistanceSpace(model)
    E = F.elements()
    witness = all(
        metric.rigidity_witness(model, u1, u2) == {model.param(u1, u2)}
        for u1 in E if u1 not in (0, 1)
        for u2 in E
    )
    recovers = all(space.induced_matrix(m) == M for M, m in zip(space.group, space.group_maps))
    P00, P10 = model.param(0, 0), model.param(1, 0)
    fixed_step = len({metric.delta(model, P10, model.param(0, u2)) for u2 in E}) == F.q
    fixed_step &= len({metric.delta(model, P00, model.param(1, u2)) for u2 in E}) == F.q

    # a transposition of two non-parallel points is never an isometry
    pts = model.affine_points
    A, B = P00, model.param(1, 3)
    perm = np.arange(len(pts))
    ia, ib = model.affine_index[A], model.affine_index[B]
    perm[ia], perm[ib] = ib, ia
    swap_rejected = not space.is_isometry(perm)

    expected = {
        "witness_is_singleton": True,
        "induced_matrix_recovers_G": True,
        "generator_points_distance_determined": True,
        "transposition_not_isometry": True,
    }
    actual = {
        "witness_is_singleton": witness,
        "induced_matrix_recovers_G": recovers,
        "generator_points_distance_determined": fixed_step,
        "transposition_not_isometry": swap_rejected,
    }
    return expected, actual, None


def run_suite(name: str, model: SurfaceModel, opts: Options) -> tuple[str, dict | None, dict | None, object]:
    """Return ``(status, expected, actual, artifact)``; status is pass, fail or skipped(reason)."""
    try:
        expected, actual, artifact = REGISTRY[name](model, opts)
    except Skip as exc:
        return f"skipped({exc})", None, None, None
    except (CayleyError, RuntimeError, ValueError) as exc:
        return "fail", None, {"error": f"{type(exc).__name__}: {exc}"}, None
    return ("pass" if expected == actual else "fail"), expected, actual, artifact
