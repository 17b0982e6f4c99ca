"""Matrix groups fixing the surface, and brute-force searches for them.

Surface-invariance checks run on integer field indices through the lookup
tables of :class:`~cayley.fields.Field`; everything else works on field
elements.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product

from .errors import FieldTooLarge, InfiniteField, SingularMatrix, WrongField, ZeroScale
from .fields import DEFAULT_MAX_Q, Field, FieldElement, frobenius
from .linalg import as_matrix, det, identity, inverse, mat_mul
from .projective import ProjPoint, apply_matrix, join
from .surface import SurfaceModel

Params = tuple[FieldElement, FieldElement, FieldElement]


@dataclass(frozen=True)
class CayleyMatrix:
    """Invertible 4x4 matrix normalized to ``x00 = 1``."""

    rows: tuple[tuple[FieldElement, ...], ...]
    tag: str = dc_field(default="Other", compare=False)
    params: Params | None = dc_field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.rows[0][0] != 1:
            raise ValueError("Cayley matrices are normalized to x00 = 1")
        if not det(self.rows):
            raise SingularMatrix("matrix is singular")

    @classmethod
    def of(cls, field: Field, rows, tag: str = "Other") -> CayleyMatrix:
        return cls(as_matrix(field, rows), tag)

    @property
    def field(self) -> Field:
        return self.rows[0][0].field

    @cached_property
    def ints(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(x.value for x in r) for r in self.rows)

    def sort_key(self) -> tuple:
        return tuple(x.value for r in self.rows for x in r)

    def __matmul__(self, other: CayleyMatrix) -> CayleyMatrix:
        return compose(self, other)

    def __call__(self, obj):
        return apply_matrix(self.rows, obj)

    def serialize(self) -> list[str]:
        return [str(x) for r in self.rows for x in r]

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(map(str, r)) for r in self.rows) + "]"


# -- the explicit matrices ------------------------------------------------


def make_M(field: Field, a, b, c) -> CayleyMatrix:
    a, b, c = field(a), field(b), field(c)
    if not c:
        raise ZeroScale("M_{a,b,c} needs c != 0")
    z, one = field.zero, field.one
    rows = (
        (one, z, z, z),
        (a, c, z, z),
        (b, 3 * a * c, c * c, z),
        (a * b - a * a * a, b * c, a * c * c, c * c * c),
    )
    return CayleyMatrix(rows, f"M({a},{b},{c})", (a, b, c))


def make_N(field: Field) -> CayleyMatrix:
    if field.q != 2:
        raise WrongField("N is only defined over GF(2)")
    return CayleyMatrix.of(field, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 1, 0, 1]], "N")


def make_Nc(field: Field, c) -> CayleyMatrix:
    if field.q != 3:
        raise WrongField("N_c is only defined over GF(3)")
    c = field(c)
    if not c:
        raise ZeroScale("N_c needs c != 0")
    rows = [[1, 0, 0, 0], [0, c, 0, 0], [0, 0, 2, 0], [0, c, 0, 2 * c]]
    return CayleyMatrix.of(field, rows, f"N({c})")


def compose_params(m: Params, n: Params) -> Params:
    a, b, c = m
    x, y, z = n
    return a + c * x, b + 3 * a * c * x + c * c * y, c * z


def invert_params(m: Params) -> Params:
    a, b, c = m
    ci = c.inverse()
    return -a * ci, (3 * a * a - b) * ci * ci, ci


def compose(M1: CayleyMatrix, M2: CayleyMatrix) -> CayleyMatrix:
    rows = mat_mul(M1.rows, M2.rows)
    if M1.params is not None and M2.params is not None:
        p = compose_params(M1.params, M2.params)
        return CayleyMatrix(rows, f"M({p[0]},{p[1]},{p[2]})", p)
    return CayleyMatrix(rows)


def invert(M: CayleyMatrix) -> CayleyMatrix:
    rows = inverse(M.rows)
    if M.params is not None:
        p = invert_params(M.params)
        return CayleyMatrix(rows, f"M({p[0]},{p[1]},{p[2]})", p)
    return CayleyMatrix(rows)


def group_G(field: Field) -> list[CayleyMatrix]:
    """All ``M_{a,b,c}``, in (a, b, c) index order."""
    E = field.elements()
    return [make_M(field, a, b, c) for a, b, c in product(E, E, E[1:])]


def identify_M(M: CayleyMatrix) -> CayleyMatrix:
    """Return ``M`` tagged as ``M_{a,b,c}`` when it has that shape, else unchanged."""
    a, b, c = M.rows[1][0], M.rows[2][0], M.rows[1][1]
    if c and make_M(M.field, a, b, c) == M:
        return make_M(M.field, a, b, c)
    return M


# -- integer fast path --------------------------------------------------


class _IntSurface:
    """Surface membership and matrix images on integer field indices."""

    def __init__(self, model: SurfaceModel) -> None:
        F = model.field
        self.q = F.q
        self.add, self.mul, self.sub = F.add_t, F.mul_t, F.sub_t
        self.points = [tuple(x.value for x in P.coords) for P in model.points]

    def f(self, v) -> int:
        mul, sub = self.mul, self.sub
        x0, x1, x2, x3 = v
        t1 = mul[mul[x0][x1]][x2]
        t2 = mul[mul[x1][x1]][x1]
        t3 = mul[mul[x0][x0]][x3]
        return sub[sub[t1][t2]][t3]

    def image(self, M, v) -> tuple[int, ...]:
        add, mul = self.add, self.mul
        out = []
        for row in M:
            acc = 0
            for m, x in zip(row, v):
                if m and x:
                    acc = add[acc][mul[m][x]]
            out.append(acc)
        return tuple(out)

    def maps_into(self, M, points: Iterable[tuple[int, ...]]) -> bool:
        return all(self.f(self.image(M, v)) == 0 for v in points)


def _int_model(model: SurfaceModel) -> _IntSurface:
    cache = model.__dict__
    if "_int_surface" not in cache:
        cache["_int_surface"] = _IntSurface(model)
    return cache["_int_surface"]


def fixes_surface(M, model: SurfaceModel) -> bool:
    """``M`` maps the point set of F onto itself (injective, so into suffices)."""
    if not model.field.is_finite:
        raise InfiniteField("point-set check needs a finite field")
    rows = M.ints if isinstance(M, CayleyMatrix) else tuple(tuple(x.value for x in r) for r in M)
    return _int_model(model).maps_into(rows, _int_model(model).points)


def frobenius_collineation(field: Field, i: int) -> Callable[[ProjPoint], ProjPoint]:
    if not field.is_finite:
        raise InfiniteField("Frobenius collineations need a finite field")
    if not 0 <= i < field.k:
        raise ValueError(f"exponent {i} outside [0, {field.k})")
    return lambda P: ProjPoint(tuple(frobenius(x, i) for x in P.coords))


def frobenius_permutes_surface(model: SurfaceModel, i: int) -> bool:
    phi = frobenius_collineation(model.field, i)
    images = {phi(P) for P in model.points}
    return images == model.point_set


# -- geometric facts the shaped stabilizer search relies on ----------------


def stabilizer_preconditions(model: SurfaceModel) -> dict[str, bool]:
    """Incidence facts that force a stabilizer of F and Q0 into lower-triangular shape."""
    gens = model.generators
    counts = {P: sum(g.contains(P) for g in gens) for P in model.points}
    Q0, Q2, Q3 = model.Q[0], model.Q[2], model.Q[3]
    two_gen_points = {P for P, n in counts.items() if n == 2}
    inf_points = set(model.g_inf.points())
    planes_through_ginf = [
        pl for pl in _planes_through(model, model.g_inf) if len(model.generators_in(pl)) == 1
    ]
    gens_q0 = [g for g in gens if g.contains(Q0)]
    return {
        "two_generator_points_are_g_inf_minus_Q3": two_gen_points == inf_points - {Q3},
        "all_other_points_on_one_generator": all(
            n == 1 for P, n in counts.items() if P not in two_gen_points
        ),
        "omega_unique_plane_through_g_inf_without_second_generator": planes_through_ginf
        == [model.omega],
        "unique_generator_through_Q0_meets_g_inf_in_Q2": len(gens_q0) == 1
        and gens_q0[0].contains(Q2)
        and gens_q0[0] != model.g_inf,
    }


def _planes_through(model: SurfaceModel, line) -> list:
    return sorted(
        {join(line, P) for P in model.space_points if not line.contains(P)},
        key=lambda pl: tuple(x.value for x in pl.coeffs),
    )


def _check_bound(model: SurfaceModel, max_q: int) -> None:
    if not model.field.is_finite:
        raise InfiniteField("census searches need a finite field")
    if model.field.q > max_q:
        raise FieldTooLarge(f"q = {model.field.q} exceeds census bound {max_q}")


def stabilizer_shaped_search(model: SurfaceModel, max_q: int = DEFAULT_MAX_Q) -> list[CayleyMatrix]:
    """Search the lower-triangular shape ``x00 = 1`` with unknowns x11, x21, x22, x31, x33."""
    _check_bound(model, max_q)
    facts = stabilizer_preconditions(model)
    if not all(facts.values()):
        raise RuntimeError(f"geometric reductions failed: {facts}")
    F = model.field
    ims = _int_model(model)
    pts = ims.points
    q = F.q
    found = []
    for x11, x22, x33 in product(range(1, q), repeat=3):
        for x21, x31 in product(range(q), repeat=2):
            M = ((1, 0, 0, 0), (0, x11, 0, 0), (0, x21, x22, 0), (0, x31, 0, x33))
            if ims.maps_into(M, pts):
                found.append(identify_M(CayleyMatrix(tuple(tuple(F.element(x) for x in r) for r in M))))
    return sorted(found, key=CayleyMatrix.sort_key)


def full_scan(model: SurfaceModel, x00: int = 1, max_q: int = 3) -> list[CayleyMatrix | tuple]:
    """Every invertible matrix with the given top-left entry that maps F into itself.

    Backtracks column by column (0, 2, 3, then 1): after fixing a set of
    columns, every surface point supported on those coordinates must already
    land on F.  No structure of the answer is assumed.  With ``x00 = 0`` the
    results are raw row tuples since they cannot be normalized.
    """
    _check_bound(model, max_q)
    F = model.field
    q = F.q
    ims = _int_model(model)
    order = (0, 2, 3, 1)
    stages = []
    seen: set[tuple] = set()
    for n in range(1, 5):
        cols = set(order[:n])
        stage = [v for v in ims.points if v not in seen and all(v[i] == 0 for i in range(4) if i not in cols)]
        seen.update(stage)
        stages.append(stage)
    vectors = [v for v in product(range(q), repeat=4) if any(v)]
    first = [v for v in vectors if v[0] == x00]

    found: list = []
    columns: list = [None] * 4

    def rows_of(cols):
        return tuple(tuple(cols[c][r] if cols[c] is not None else 0 for c in range(4)) for r in range(4))

    def descend(level: int) -> None:
        col = order[level]
        for v in first if col == 0 else vectors:
            columns[col] = v
            M = rows_of(columns)
            if ims.maps_into(M, stages[level]):
                if level == 3:
                    rows = tuple(tuple(F.element(x) for x in r) for r in M)
                    if det(rows):
                        found.append(identify_M(CayleyMatrix(rows)) if x00 == 1 else rows)
                else:
                    descend(level + 1)
        columns[col] = None

    descend(0)
    if x00 == 1:
        found.sort(key=CayleyMatrix.sort_key)
    return found


def stabilizer_census(model: SurfaceModel, max_q: int = DEFAULT_MAX_Q) -> list[CayleyMatrix]:
    """Matrices fixing F and Q0; for q <= 3 the shaped search is checked against a full scan."""
    shaped = stabilizer_shaped_search(model, max_q)
    if model.field.q <= 3:
        Q0 = model.Q[0]
        full = [M for M in full_scan(model) if M(Q0) == Q0]
        if full != shaped:
            raise RuntimeError("shaped and full stabilizer searches disagree")
    return shaped


def extended_group_factored(model: SurfaceModel, max_q: int = 9) -> list[CayleyMatrix]:
    """``G(F) * Stab(F, Q0)``, each product re-checked against the point set."""
    _check_bound(model, max_q)
    stab = stabilizer_shaped_search(model)
    prods = {compose(M, S) for M in group_G(model.field) for S in stab}
    out = sorted((identify_M(M) for M in prods), key=CayleyMatrix.sort_key)
    if not all(fixes_surface(M, model) for M in out):
        raise RuntimeError("a factored product does not fix F")
    return out


def extended_group_census(model: SurfaceModel, max_q: int = 9) -> list[CayleyMatrix]:
    """All x00-normalized matrices fixing F; cross-checked by a full scan for q <= 3."""
    fact = extended_group_factored(model, max_q)
    if model.field.q <= 3 and full_scan(model) != fact:
        raise RuntimeError("factored and full extended-group searches disagree")
    return fact


def serialize_matrices(ms: Iterable[CayleyMatrix]) -> list[list[str]]:
    return [M.serialize() for M in sorted(ms, key=CayleyMatrix.sort_key)]


def identity_matrix(field: Field) -> CayleyMatrix:
    return CayleyMatrix(identity(field), "M(0,0,1)", (field.zero, field.zero, field.one))
