"""The non-symmetric distance on the affine part of F (|K| >= 4).

Over finite fields most checks run on a precomputed distance table indexed
by affine point position (see :attr:`SurfaceModel.affine_points`).  Table
entries are field indices, with ``q`` standing for ``inf``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .collineations import CayleyMatrix, group_G, make_M
from .errors import (
    BadCharacteristic,
    DegenerateU1,
    DistanceMismatch,
    InfiniteField,
    NotAffineSurfacePoint,
    NotAnAntiflag,
    NotAnIsometry,
    NotParallel,
    ParallelPoints,
    SmallField,
)
from .fields import INF, ExtendedScalar, Field, FieldElement
from .projective import ProjLine, ProjPoint, cross_ratio, meet
from .surface import SurfaceModel


def _require_large(model: SurfaceModel) -> None:
    if model.field.is_finite and model.field.q <= 3:
        raise SmallField("the distance function needs |K| >= 4")


def _coords(model: SurfaceModel, P: ProjPoint) -> tuple[FieldElement, FieldElement]:
    if not model.is_affine_point(P):
        raise NotAffineSurfacePoint(f"{P} is not an affine point of F")
    return P[1], P[2]


def delta(model: SurfaceModel, A: ProjPoint, B: ProjPoint) -> ExtendedScalar:
    """``(2u1^2 - u2 - u1 v1 + v2 - v1^2) / (u1 - v1)^2``, or ``inf`` for parallel points."""
    _require_large(model)
    u1, u2 = _coords(model, A)
    v1, v2 = _coords(model, B)
    return _delta_formula(u1, u2, v1, v2)


def _delta_formula(u1, u2, v1, v2) -> ExtendedScalar:
    d = u1 - v1
    if not d:
        return INF
    return (2 * u1 * u1 - u2 - u1 * v1 + v2 - v1 * v1) / (d * d)


def parallel(model: SurfaceModel, A: ProjPoint, B: ProjPoint) -> bool:
    return _coords(model, A)[0] == _coords(model, B)[0]


def delta_geometric(model: SurfaceModel, A: ProjPoint, B: ProjPoint) -> ExtendedScalar:
    """Distance from incidence alone: tangent-plane rule, else a cross ratio on the chord."""
    _require_large(model)
    _coords(model, A), _coords(model, B)
    if model.generator_through(A).contains(B):
        return INF
    F = model.field
    if model.tangent_plane(A).contains(B):
        return F.zero
    if model.tangent_plane(B).contains(A):
        return F.one
    C = third_point(model, A, B)
    I = meet(model.omega, ProjLine.through(A, B))
    return cross_ratio(C, B, A, I)


def third_point(model: SurfaceModel, A: ProjPoint, B: ProjPoint) -> ProjPoint:
    """Residual intersection of the chord AB with F (by search over the chord for finite K)."""
    line = ProjLine.through(A, B)
    if model.field.is_finite:
        hits = [P for P in line.points() if model.contains(P) and P not in (A, B)]
        if len(hits) != 1:
            raise ValueError(f"chord meets F in {len(hits) + 2} points")
        return hits[0]
    # infinite field: the third root of the restricted cubic
    poly = model.f.restrict_to_line(A.coords, B.coords)
    quo, _ = poly.divide_linear(0)
    quo, _ = quo.divide_linear(1)
    if quo.degree != 1:
        raise ValueError("chord restriction has unexpected degree")
    t = -quo.coeffs[0] / quo.coeffs[1]
    return ProjPoint(tuple((1 - t) * a + t * b for a, b in zip(A.coords, B.coords)))


def delta_by_multiplicity(model: SurfaceModel, A: ProjPoint, B: ProjPoint) -> ExtendedScalar:
    """Third root of ``f((1-T)A + T B)``, counted with multiplicity."""
    poly = model.f.restrict_to_line(A.coords, B.coords)
    if not poly:
        return INF
    quo, _ = poly.divide_linear(0)
    quo, _ = quo.divide_linear(1)
    return -quo.coeffs[0] / quo.coeffs[1]


def brauner_delta(model: SurfaceModel, A: ProjPoint, B: ProjPoint) -> ExtendedScalar:
    """``(3/2) (1/2 - delta)^-1`` with ``inf -> 0`` and ``1/2 -> inf``."""
    F = model.field
    if F.char in (2, 3):
        raise BadCharacteristic("needs 1/2 and 1/3")
    d = delta(model, A, B)
    if d is INF:
        return F.zero
    half = F.one / 2
    if d == half:
        return INF
    return F(3) / 2 / (half - d)


# -- circles and R-curves ------------------------------------------------------


@dataclass(frozen=True)
class RCurve:
    alpha: FieldElement
    beta: FieldElement
    gamma: FieldElement

    @property
    def field(self) -> Field:
        return self.alpha.field

    def point(self, t) -> ProjPoint:
        F = self.field
        t = F(t)
        a, b, g = self.alpha, self.beta, self.gamma
        return ProjPoint(
            (F.one, t, a + b * t + (g + 1) * t * t, a * t + b * t * t + g * t * t * t)
        )

    def point_at_infinity(self) -> ProjPoint:
        F = self.field
        if self.gamma:
            return ProjPoint((F.zero, F.zero, F.zero, F.one))
        return ProjPoint((F.zero, F.zero, F.one, self.beta))

    def affine_points(self) -> list[ProjPoint]:
        return [self.point(t) for t in self.field.elements()]

    def points(self) -> list[ProjPoint]:
        return self.affine_points() + [self.point_at_infinity()]

    @property
    def shape(self) -> str:
        if not self.gamma:
            return "parabola"
        if self.gamma == -1:
            return "planar cubic"
        return "twisted cubic parabola"


@dataclass(frozen=True)
class Circle:
    midpoint: ProjPoint
    radius: ExtendedScalar


def circle_points(model: SurfaceModel, c: Circle) -> set[ProjPoint]:
    _require_large(model)
    if not model.field.is_finite:
        raise InfiniteField("circles over the rationals are infinite")
    return {Y for Y in model.affine_points if ext_equal(delta(model, c.midpoint, Y), c.radius)}


def extended_circle(model: SurfaceModel, c: Circle) -> set[ProjPoint]:
    return circle_points(model, c) | {c.midpoint}


def ext_equal(x: ExtendedScalar, y: ExtendedScalar) -> bool:
    if x is INF or y is INF:
        return x is y
    return x == y


def interpolate_curve(model: SurfaceModel, P1, P2, P3) -> RCurve:
    """Unique (alpha, beta, gamma) with ``u2 = alpha + beta u1 + (gamma + 1) u1^2`` at all three points."""
    pts = [_coords(model, P) for P in (P1, P2, P3)]
    xs = [p[0] for p in pts]
    if len(set(xs)) < 3:
        raise ParallelPoints("interpolation needs three mutually non-parallel points")
    F = model.field
    c = [F.zero, F.zero, F.zero]
    for i, (xi, yi) in enumerate(pts):
        others = [xs[j] for j in range(3) if j != i]
        denom = (xi - others[0]) * (xi - others[1])
        w = yi / denom
        # w * (x - o0)(x - o1) = w * (x^2 - (o0 + o1) x + o0 o1)
        c[0] = c[0] + w * others[0] * others[1]
        c[1] = c[1] - w * (others[0] + others[1])
        c[2] = c[2] + w
    return RCurve(c[0], c[1], c[2] - 1)


def circle_to_curve(model: SurfaceModel, c: Circle) -> RCurve:
    _require_large(model)
    if c.radius is INF:
        raise ValueError("circles of radius inf are generators, not R-curves")
    a1, a2 = _coords(model, c.midpoint)
    rho = c.radius
    return RCurve((rho - 2) * a1 * a1 + a2, (1 - 2 * rho) * a1, rho)


@dataclass(frozen=True)
class MidpointResult:
    case: str  # "unique" | "not_a_circle" | "every_point"
    midpoint: ProjPoint | None = None
    radius: FieldElement | None = None


def curve_to_midpoints(model: SurfaceModel, r: RCurve) -> MidpointResult:
    _require_large(model)
    a, b, g = r.alpha, r.beta, r.gamma
    e = 1 - 2 * g
    if e:
        A = model.param(b / e, a - (g - 2) * b * b / (e * e))
        return MidpointResult("unique", A, g)
    if b:
        return MidpointResult("not_a_circle")
    return MidpointResult("every_point", None, g)


# -- distance tables ------------------------------------------------------------


class DistanceSpace:
    """Distance table and group data for a finite field with q >= 4."""

    def __init__(self, model: SurfaceModel) -> None:
        _require_large(model)
        if not model.field.is_finite:
            raise InfiniteField("distance tables need a finite field")
        self.model = model
        self.field = model.field
        self.q = model.field.q

    @cached_property
    def table(self) -> np.ndarray:
        """``table[i, j]`` = index of delta(A_i, A_j), or q for inf."""
        F, q = self.field, self.q
        E = F.elements()
        n = q * q
        out = np.empty((n, n), dtype=np.int64)
        coords = [(a, b) for a, b in product(E, E)]
        for i, (u1, u2) in enumerate(coords):
            for j, (v1, v2) in enumerate(coords):
                d = _delta_formula(u1, u2, v1, v2)
                out[i, j] = q if d is INF else d.value
        return out

    def export_table(self) -> list[list[str]]:
        E = self.field.elements()
        return [[("inf" if x == self.q else str(E[x])) for x in row] for row in self.table]

    @cached_property
    def group(self) -> list[CayleyMatrix]:
        return group_G(self.field)

    def point_map_of(self, M: CayleyMatrix) -> np.ndarray:
        idx = self.model.affine_index
        return np.array([idx[M(P)] for P in self.model.affine_points], dtype=np.int64)

    @cached_property
    def group_maps(self) -> list[np.ndarray]:
        return [self.point_map_of(M) for M in self.group]

    def is_isometry(self, mapping) -> bool:
        m = self._as_index_map(mapping)
        D = self.table
        return bool((D[np.ix_(m, m)] == D).all())

    def _as_index_map(self, mapping) -> np.ndarray:
        if isinstance(mapping, dict):
            idx = self.model.affine_index
            try:
                return np.array(
                    [idx[mapping[P]] for P in self.model.affine_points], dtype=np.int64
                )
            except KeyError as exc:
                raise NotAffineSurfacePoint(f"map leaves the affine part of F: {exc}") from None
        return np.asarray(mapping, dtype=np.int64)

    def induced_matrix(self, mapping) -> CayleyMatrix:
        """The unique M in G(F) whose point map equals the given isometry."""
        m = self._as_index_map(mapping)
        if not self.is_isometry(m):
            raise NotAnIsometry("map does not preserve all distances")
        pts = self.model.affine_points
        a, b = self.model.unparam(pts[m[self.model.affine_index[self.model.param(0, 0)]]])
        x1, _ = self.model.unparam(pts[m[self.model.affine_index[self.model.param(1, 0)]]])
        c = x1 - a
        M = make_M(self.field, a, b, c)
        if not np.array_equal(self.point_map_of(M), m):
            raise RuntimeError("isometry is not induced by a collineation of G(F)")
        return M

    def is_bijective(self, mapping) -> bool:
        m = self._as_index_map(mapping)
        return len(set(m.tolist())) == len(m)

    # -- group actions ------------------------------------------------------------

    @cached_property
    def antiflags(self) -> list[tuple[ProjPoint, ProjLine]]:
        model = self.model
        out = []
        for g in model.generators[:-1]:
            for P in model.affine_points:
                if not g.contains(P):
                    out.append((P, g))
        return out

    def _check_antiflag(self, af) -> None:
        P, g = af
        model = self.model
        if (
            not model.is_affine_point(P)
            or g == model.g_inf
            or g not in model.generators
            or g.contains(P)
        ):
            raise NotAnAntiflag(f"({P}, {g}) is not an antiflag")

    def antiflag_transporters(self, af1, af2) -> list[CayleyMatrix]:
        self._check_antiflag(af1)
        self._check_antiflag(af2)
        (P, g), (P2, g2) = af1, af2
        return [M for M in self.group if M(P) == P2 and M(g) == g2]

    def antiflag_transporter(self, af1, af2) -> CayleyMatrix:
        found = self.antiflag_transporters(af1, af2)
        if len(found) != 1:
            raise RuntimeError(f"expected one transporter, found {len(found)}")
        return found[0]

    def delta_pairs(self, d: FieldElement) -> list[tuple[int, int]]:
        i, j = np.nonzero(self.table == d.value)
        return list(zip(i.tolist(), j.tolist()))

    def distance_pair_transporters(self, A, B, A2, B2) -> list[CayleyMatrix]:
        d1, d2 = delta(self.model, A, B), delta(self.model, A2, B2)
        if d1 is INF or d2 is INF or d1 != d2:
            raise DistanceMismatch(f"delta values {d1} and {d2} differ or are infinite")
        return self._transport(A, B, A2, B2)

    def distance_pair_transporter(self, A, B, A2, B2) -> CayleyMatrix:
        found = self.distance_pair_transporters(A, B, A2, B2)
        if len(found) != 1:
            raise RuntimeError(f"expected one transporter, found {len(found)}")
        return found[0]

    def parallel_pair_transporters(self, A, B, A2, B2) -> list[CayleyMatrix]:
        for X, Y in ((A, B), (A2, B2)):
            if X == Y or not parallel(self.model, X, Y):
                raise NotParallel(f"{X}, {Y} are not distinct parallel points")
        return self._transport(A, B, A2, B2)

    def _transport(self, A, B, A2, B2) -> list[CayleyMatrix]:
        idx = self.model.affine_index
        ia, ib, ia2, ib2 = idx[A], idx[B], idx[A2], idx[B2]
        return [M for M, m in zip(self.group, self.group_maps) if m[ia] == ia2 and m[ib] == ib2]

    def orbit_is_regular(self, items: list, act) -> bool:
        """G acts regularly on ``items``: the orbit of the first item is all of them, without repeats."""
        if not items:
            return False
        x0 = items[0]
        images = [act(M, x0) for M in self.group]
        return len(images) == len(items) and set(images) == set(items)


def rigidity_witness(model: SurfaceModel, u1, u2) -> set[ProjPoint]:
    """Intersection of the radius-0 circles about ``P(0, v2)`` and ``P(1, w2)``."""
    _require_large(model)
    F = model.field
    u1, u2 = F(u1), F(u2)
    if u1 in (F.zero, F.one):
        raise DegenerateU1("u1 must avoid 0 and 1")
    v2 = u2 - u1 * u1
    w2 = -u1 * u1 - u1 + u2 + 2
    c1 = circle_points(model, Circle(model.param(0, v2), F.zero))
    c2 = circle_points(model, Circle(model.param(1, w2), F.zero))
    return c1 & c2


def frobenius_point_map(model: SurfaceModel, i: int) -> dict[ProjPoint, ProjPoint]:
    from .collineations import frobenius_collineation

    phi = frobenius_collineation(model.field, i)
    return {P: phi(P) for P in model.affine_points}
