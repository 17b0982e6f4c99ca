"""Points, lines and planes of PG(3, K).

Points and planes are stored with their leftmost non-zero coordinate equal
to one.  A line is stored as the reduced row-echelon form of any 2x4 matrix
whose rows span it, so two lines are equal iff their stored bases are.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import product

from .errors import DegenerateInput, InfiniteField, NotCollinear, TooDegenerate
from .fields import INF, ExtendedScalar, Field, FieldElement
from .linalg import inverse, kernel, mat_vec, rref, vec_mat

Vector = tuple[FieldElement, ...]


def normalize(coords: Sequence[FieldElement]) -> Vector:
    for c in coords:
        if c:
            if c.value == 1 and c == c.field.one:
                return tuple(coords)
            inv = c.inverse()
            return tuple(x * inv for x in coords)
    raise DegenerateInput("the zero vector does not represent a projective object")


@dataclass(frozen=True)
class ProjPoint:
    coords: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", normalize(self.coords))

    @classmethod
    def of(cls, field: Field, *values) -> ProjPoint:
        return cls(tuple(field(v) for v in values))

    @property
    def field(self) -> Field:
        return self.coords[0].field

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> FieldElement:
        return self.coords[i]

    def __str__(self) -> str:
        return "K(" + ",".join(map(str, self.coords)) + ")"

    __repr__ = __str__


@dataclass(frozen=True)
class ProjPlane:
    """``V(a_0 X_0 + a_1 X_1 + a_2 X_2 + a_3 X_3)``."""

    coeffs: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", normalize(self.coeffs))

    @classmethod
    def of(cls, field: Field, *values) -> ProjPlane:
        return cls(tuple(field(v) for v in values))

    @property
    def field(self) -> Field:
        return self.coeffs[0].field

    def contains(self, obj: ProjPoint | ProjLine) -> bool:
        if isinstance(obj, ProjLine):
            return all(self._vanishes(r) for r in obj.basis)
        return self._vanishes(obj.coords)

    def _vanishes(self, v: Sequence[FieldElement]) -> bool:
        a = self.coeffs
        return not (a[0] * v[0] + a[1] * v[1] + a[2] * v[2] + a[3] * v[3])

    def points(self) -> list[ProjPoint]:
        F = self.field
        if not F.is_finite:
            raise InfiniteField("cannot list the points of a plane over the rationals")
        b = kernel([self.coeffs], 4, F)
        out = []
        for lam in _normalized_vectors(F, 3):
            v = tuple(lam[0] * x + lam[1] * y + lam[2] * z for x, y, z in zip(*b))
            out.append(ProjPoint(v))
        return out

    def __str__(self) -> str:
        return "V[" + ",".join(map(str, self.coeffs)) + "]"

    __repr__ = __str__


@dataclass(frozen=True)
class ProjLine:
    basis: tuple[Vector, Vector]

    def __post_init__(self) -> None:
        R, pivots = rref(self.basis)
        if len(pivots) != 2:
            raise DegenerateInput("a line needs two independent spanning vectors")
        object.__setattr__(self, "basis", (tuple(R[0]), tuple(R[1])))
        object.__setattr__(self, "_pivots", tuple(pivots))

    @classmethod
    def through(cls, A: ProjPoint, B: ProjPoint) -> ProjLine:
        if A == B:
            raise DegenerateInput("coincident points do not span a line")
        return cls((A.coords, B.coords))

    @property
    def field(self) -> Field:
        return self.basis[0][0].field

    def line_coords(self, v: Sequence[FieldElement]) -> tuple[FieldElement, FieldElement]:
        """Coordinates of ``v`` with respect to the stored basis (``v`` must lie on the line)."""
        i, j = self._pivots
        return v[i], v[j]

    def contains(self, P: ProjPoint) -> bool:
        x, y = self.line_coords(P.coords)
        r0, r1 = self.basis
        return all(x * a + y * b == c for a, b, c in zip(r0, r1, P.coords))

    def point_at(self, x: FieldElement, y: FieldElement) -> ProjPoint:
        r0, r1 = self.basis
        return ProjPoint(tuple(x * a + y * b for a, b in zip(r0, r1)))

    def points(self) -> list[ProjPoint]:
        F = self.field
        if not F.is_finite:
            raise InfiniteField("cannot list the points of a line over the rationals")
        return [self.point_at(a, b) for a, b in _normalized_vectors(F, 2)]

    def __str__(self) -> str:
        return "L[" + "; ".join(",".join(map(str, r)) for r in self.basis) + "]"

    __repr__ = __str__


def _normalized_vectors(F: Field, n: int) -> Iterator[tuple[FieldElement, ...]]:
    """Canonical representatives of PG(n-1, F), in deterministic order."""
    elems = F.elements()
    for lead in range(n):
        for tail in product(elems, repeat=n - lead - 1):
            yield (F.zero,) * lead + (F.one,) + tail


# --- joins and meets --------------------------------------------------------


def join(*objs):
    """Line through two points, or plane through a line and a point (or three points)."""
    if len(objs) == 2 and all(isinstance(o, ProjPoint) for o in objs):
        return ProjLine.through(*objs)
    if len(objs) == 2:
        line, P = objs if isinstance(objs[0], ProjLine) else objs[::-1]
        if line.contains(P):
            raise DegenerateInput("point lies on the line")
        return _plane_from_rows([line.basis[0], line.basis[1], P.coords])
    if len(objs) == 3 and all(isinstance(o, ProjPoint) for o in objs):
        return _plane_from_rows([o.coords for o in objs])
    raise TypeError("unsupported join")


def _plane_from_rows(rows) -> ProjPlane:
    F = rows[0][0].field
    ker = kernel(rows, 4, F)
    if len(ker) != 1:
        raise DegenerateInput("points do not span a plane")
    return ProjPlane(ker[0])


def meet(a, b):
    """Point common to a plane and a line, or line common to two planes."""
    if isinstance(a, ProjLine):
        a, b = b, a
    if isinstance(a, ProjPlane) and isinstance(b, ProjLine):
        r0, r1 = b.basis
        s0 = sum((x * y for x, y in zip(a.coeffs, r0)), a.field.zero)
        s1 = sum((x * y for x, y in zip(a.coeffs, r1)), a.field.zero)
        if not s0 and not s1:
            raise DegenerateInput("line is contained in the plane")
        return ProjPoint(tuple(s1 * x - s0 * y for x, y in zip(r0, r1)))
    if isinstance(a, ProjPlane) and isinstance(b, ProjPlane):
        if a == b:
            raise DegenerateInput("planes coincide")
        ker = kernel([a.coeffs, b.coeffs], 4, a.field)
        return ProjLine((ker[0], ker[1]))
    raise TypeError("unsupported meet")


def collinear(points: Sequence[ProjPoint]) -> bool:
    return len(rref([P.coords for P in points])[1]) <= 2


# --- cross ratio ------------------------------------------------------------


def cross_ratio(P1: ProjPoint, P2: ProjPoint, P3: ProjPoint, P4: ProjPoint) -> ExtendedScalar:
    """Parameter of ``P1`` in the projective scale with P3 -> 0, P2 -> 1, P4 -> inf."""
    if len({P2, P3, P4}) < 3:
        raise TooDegenerate("P2, P3, P4 must be distinct")
    if not collinear([P1, P2, P3, P4]):
        raise NotCollinear("points are not collinear")
    line = ProjLine.through(P2, P3)
    c1, c2, c3, c4 = (line.line_coords(P.coords) for P in (P1, P2, P3, P4))

    def br(u, v):
        return u[0] * v[1] - u[1] * v[0]

    den = br(c1, c4) * br(c2, c3)
    if not den:
        return INF
    return br(c1, c3) * br(c2, c4) / den


# --- enumeration ------------------------------------------------------------


def enumerate_points(field: Field) -> list[ProjPoint]:
    if not field.is_finite:
        raise InfiniteField("PG(3, Q) is infinite")
    return [ProjPoint(v) for v in _normalized_vectors(field, 4)]


def enumerate_planes(field: Field) -> list[ProjPlane]:
    if not field.is_finite:
        raise InfiniteField("PG(3, Q) is infinite")
    return [ProjPlane(v) for v in _normalized_vectors(field, 4)]


def enumerate_lines(field: Field) -> list[ProjLine]:
    """All lines, generated directly as 2x4 reduced row-echelon matrices."""
    if not field.is_finite:
        raise InfiniteField("PG(3, Q) is infinite")
    elems = field.elements()
    zero, one = field.zero, field.one
    out = []
    for i in range(4):
        for j in range(i + 1, 4):
            free0 = [c for c in range(i + 1, 4) if c != j]
            free1 = list(range(j + 1, 4))
            for vals0 in product(elems, repeat=len(free0)):
                r0 = [zero] * 4
                r0[i] = one
                for c, v in zip(free0, vals0):
                    r0[c] = v
                for vals1 in product(elems, repeat=len(free1)):
                    r1 = [zero] * 4
                    r1[j] = one
                    for c, v in zip(free1, vals1):
                        r1[c] = v
                    out.append(ProjLine((tuple(r0), tuple(r1))))
    return out


def count_points(q: int) -> int:
    return q**3 + q**2 + q + 1


def count_lines(q: int) -> int:
    return (q**2 + 1) * (q**2 + q + 1)


# --- matrix action ----------------------------------------------------------


def apply_matrix(M, obj):
    """Image of a point, line or plane under the collineation ``p -> M p``."""
    if isinstance(obj, ProjPoint):
        return ProjPoint(mat_vec(M, obj.coords))
    if isinstance(obj, ProjLine):
        return ProjLine((mat_vec(M, obj.basis[0]), mat_vec(M, obj.basis[1])))
    if isinstance(obj, ProjPlane):
        return ProjPlane(vec_mat(obj.coeffs, inverse(M)))
    raise TypeError(f"cannot apply a matrix to {obj!r}")


def base_point(field: Field, i: int) -> ProjPoint:
    return ProjPoint(tuple(field.one if j == i else field.zero for j in range(4)))
