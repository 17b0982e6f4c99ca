"""Cayley's ruled cubic surface F = V(X0 X1 X2 - X1^3 - X0^2 X3)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import (
    DegenerateInput,
    InfiniteField,
    NoGeneratorInPlane,
    NotAffineSurfacePoint,
    NotOnParabola,
    PlaneThroughQ3,
    SmallField,
)
from .fields import Field, FieldElement
from .forms import Form, cayley_form, monomials
from .linalg import kernel, rref
from .projective import ProjLine, ProjPlane, ProjPoint, base_point, enumerate_points, meet

SIMPLE_AFFINE = "simple_affine"
DOUBLE_AT_INFINITY = "double_at_infinity"
NOT_ON_SURFACE = "not_on_surface"


@dataclass(frozen=True)
class PointClass:
    tag: str
    tangent_planes: tuple[ProjPlane, ...]
    is_nucleus: bool


class SurfaceModel:
    """The surface over one field, with lazily built point and generator caches."""

    def __init__(self, field: Field) -> None:
        self.field = field
        self.f = cayley_form(field)
        self.omega = ProjPlane.of(field, 1, 0, 0, 0)
        self.Q = tuple(base_point(field, i) for i in range(4))
        self.g_inf = ProjLine.through(self.Q[2], self.Q[3])

    @property
    def q(self) -> int | None:
        return self.field.q

    def contains(self, P: ProjPoint) -> bool:
        return not self.f(P.coords)

    # -- parametrization ---------------------------------------------------

    def param(self, u1, u2) -> ProjPoint:
        F = self.field
        u1, u2 = F(u1), F(u2)
        return ProjPoint((F.one, u1, u2, u1 * u2 - u1 * u1 * u1))

    def unparam(self, P: ProjPoint) -> tuple[FieldElement, FieldElement]:
        if not P[0] or not self.contains(P):
            raise NotAffineSurfacePoint(f"{P} is not an affine point of F")
        return P[1], P[2]

    def is_affine_point(self, P: ProjPoint) -> bool:
        return bool(P[0]) and self.contains(P)

    # -- caches for finite fields -------------------------------------------

    def _require_finite(self) -> None:
        if not self.field.is_finite:
            raise InfiniteField("enumeration requires a finite field")

    @cached_property
    def affine_points(self) -> list[ProjPoint]:
        """``P(u1, u2)`` in order of (u1, u2) indices; position ``i1 * q + i2``."""
        self._require_finite()
        E = self.field.elements()
        return [self.param(a, b) for a, b in product(E, E)]

    @cached_property
    def affine_index(self) -> dict[ProjPoint, int]:
        return {P: i for i, P in enumerate(self.affine_points)}

    @cached_property
    def points(self) -> list[ProjPoint]:
        return self.affine_points + self.g_inf.points()

    @cached_property
    def space_points(self) -> list[ProjPoint]:
        """All points of the ambient PG(3, q)."""
        self._require_finite()
        return enumerate_points(self.field)

    @cached_property
    def point_set(self) -> frozenset[ProjPoint]:
        return frozenset(self.points)

    @cached_property
    def generators(self) -> list[ProjLine]:
        self._require_finite()
        return [self.generator(self.field.one, s) for s in self.field.elements()] + [self.g_inf]

    # -- generators and the projectivity beta --------------------------------

    def generator(self, s0, s1) -> ProjLine:
        """Join of ``K(s0^2, s0 s1, s1^2, 0)`` and ``K(0, 0, s0, s1)``."""
        F = self.field
        s0, s1 = F(s0), F(s1)
        A = ProjPoint((s0 * s0, s0 * s1, s1 * s1, F.zero))
        B = ProjPoint((F.zero, F.zero, s0, s1))
        return ProjLine.through(A, B)

    def generator_through(self, P: ProjPoint) -> ProjLine:
        u1, _ = self.unparam(P)
        return self.generator(1, u1)

    def on_parabola(self, P: ProjPoint) -> bool:
        x = P.coords
        return not (x[0] * x[2] - x[1] * x[1]) and not x[3]

    def beta(self, P: ProjPoint) -> ProjPoint:
        if not self.on_parabola(P):
            raise NotOnParabola(f"{P} is not on the parabola V(X0X2 - X1^2, X3)")
        F = self.field
        s0, s1 = (F.one, P[1]) if P[0] else (F.zero, F.one)
        return ProjPoint((F.zero, F.zero, s0, s1))

    def generators_in(self, tau: ProjPlane) -> list[ProjLine]:
        """Generators contained in the plane, solved in closed form."""
        a0, a1, a2, a3 = tau.coeffs
        found = []
        s = None
        if a3:
            s = -a2 / a3
        elif not a2 and a1:
            s = -a0 / a1
        if s is not None and not (a0 + a1 * s + a2 * s * s):
            found.append(self.generator(1, s))
        if not a2 and not a3:
            found.append(self.g_inf)
        return found

    def contains_generator(self, tau: ProjPlane) -> ProjLine | None:
        gens = self.generators_in(tau)
        return gens[0] if gens else None

    # -- classification -------------------------------------------------------

    def tangent_plane(self, P: ProjPoint, form: Form | None = None) -> ProjPlane:
        """Tangent plane at a simple point: the gradient of the defining form."""
        form = form or self.f
        grad = form.gradient(P.coords)
        if not any(grad):
            raise DegenerateInput(f"{P} is not a simple point")
        return ProjPlane(grad)

    def tangent_cone(self, P: ProjPoint, form: Form | None = None) -> tuple[ProjPlane, ...]:
        """Component planes of the degree-2 part of the Taylor shift at a double point."""
        form = form or self.f
        quad = form.taylor_shift(P.coords)[2]
        F = self.field
        if not quad:
            raise DegenerateInput(f"{P} is at least a triple point")
        if any(a for m, a in zip(monomials(2), quad.coeffs) if 0 not in m):
            raise ValueError("tangent cone does not contain the plane at infinity")
        cof = ProjPlane(tuple(quad.coeff(0, j) for j in range(4)))
        return (self.omega,) if cof == self.omega else (self.omega, cof)

    def is_nucleus(self, P: ProjPoint) -> bool:
        # closure of the common zeros of the partials that lie off g_inf
        if any(self.f.gradient(P.coords)):
            return False
        if not self.g_inf.contains(P):
            return True
        shifted = tuple(x + (1 if i == 1 else 0) for i, x in enumerate(P.coords))
        return not any(self.f.gradient(shifted))

    def classify(self, P: ProjPoint, form: Form | None = None) -> PointClass:
        form = form or self.f
        nucleus = self.is_nucleus(P)
        if form(P.coords):
            return PointClass(NOT_ON_SURFACE, (), nucleus)
        if any(form.gradient(P.coords)):
            return PointClass(SIMPLE_AFFINE, (self.tangent_plane(P, form),), nucleus)
        return PointClass(DOUBLE_AT_INFINITY, self.tangent_cone(P, form), nucleus)

    def tangent_planes_all(self, form: Form | None = None) -> set[ProjPlane]:
        out: set[ProjPlane] = set()
        for P in self.points:
            out.update(self.classify(P, form).tangent_planes)
        return out

    # -- dual criterion and tangency recovery ---------------------------------

    @staticmethod
    def dual_cubic(tau: ProjPlane) -> FieldElement:
        a0, a1, a2, a3 = tau.coeffs
        return a0 * a3 * a3 - a1 * a2 * a3 + a2 * a2 * a2

    def is_tangent_plane(self, tau: ProjPlane) -> bool:
        return not self.dual_cubic(tau)

    def tangency_point_algebraic(self, tau: ProjPlane) -> ProjPoint:
        """Solve ``tau ~ (2u1^3 - u1 u2, u2 - 3u1^2, u1, -1)`` for (u1, u2)."""
        a = tau.coeffs
        if not a[3]:
            raise PlaneThroughQ3(f"{tau} passes through Q3")
        lam = -a[3].inverse()
        a0, a1, a2 = (x * lam for x in a[:3])
        u1 = a2
        u2 = a1 + 3 * u1 * u1
        if a0 != 2 * u1 * u1 * u1 - u1 * u2:
            raise NoGeneratorInPlane(f"{tau} is not a tangent plane")
        return self.param(u1, u2)

    def point_of_tangency(self, tau: ProjPlane) -> ProjPoint:
        """Recover the point of tangency from the residual parabola of ``tau`` meet F."""
        self._require_finite()
        if self.field.q <= 3:
            raise SmallField("tangency recovery is ambiguous for |K| <= 3")
        if tau.contains(self.Q[3]):
            raise PlaneThroughQ3(f"{tau} passes through Q3")
        g = self.contains_generator(tau)
        if g is None:
            raise NoGeneratorInPlane(f"{tau} contains no generator")
        residual = [P for P in self.points if tau.contains(P) and not g.contains(P)]
        at_inf = meet(self.omega, g)
        J = next(P for P in meet(self.omega, tau).points() if P != at_inf)
        G0 = next(P for P in g.points() if P != at_inf)

        F = self.field
        _, piv = rref([tau.coeffs])
        free = [c for c in range(4) if c not in piv]

        def pc(P: ProjPoint):
            return tuple(P[c] for c in free)

        mons = list(_plane_monomials())

        def row(x):
            return [_mono(m, x) for m in mons]

        def bilinear_row(x, y):
            s = tuple(a + b for a, b in zip(x, y))
            return [a - b - c for a, b, c in zip(row(s), row(x), row(y))]

        I, Jc = pc(at_inf), pc(J)
        rows = [row(pc(P)) for P in residual] + [row(I), bilinear_row(I, Jc)]
        conic = kernel(rows, len(mons), F)
        if len(conic) != 1:
            raise DegenerateInput("residual conic is not unique")
        c = conic[0]

        def Q(x):
            return sum((ci * r for ci, r in zip(c, row(x))), F.zero)

        g0 = pc(G0)
        a = Q(g0)
        b = sum((ci * r for ci, r in zip(c, bilinear_row(g0, I))), F.zero)
        if not b:
            raise DegenerateInput("residual conic touches the generator at infinity")
        return ProjPoint(tuple(b * x - a * y for x, y in zip(G0.coords, at_inf.coords)))


def _plane_monomials():
    for i in range(3):
        for j in range(i, 3):
            yield (i, j)


def _mono(m, x):
    return x[m[0]] * x[m[1]]
