"""Homogeneous forms of degree <= 3 in X0..X3 and univariate polynomials in T.

A form of degree ``d`` stores one coefficient per monomial ``X_i X_j ... ``
with ``i <= j <= ...``, monomials listed in lexicographic order of their
index tuples.  For cubics this is the 20-term order ``000, 001, ..., 333``
used by every census output and report.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, combinations_with_replacement

from .errors import MixedFields, SingularMatrix, WrongField
from .fields import Field, FieldElement
from .linalg import det

NVARS = 4


@lru_cache(maxsize=None)
def monomials(degree: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations_with_replacement(range(NVARS), degree))


@lru_cache(maxsize=None)
def _monomial_index(degree: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomials(degree))}


def monomial_name(m: tuple[int, ...]) -> str:
    if not m:
        return "1"
    parts = []
    for v in sorted(set(m)):
        e = m.count(v)
        parts.append(f"X{v}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts)


@dataclass(frozen=True)
class Form:
    field: Field
    degree: int
    coeffs: tuple[FieldElement, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != len(monomials(self.degree)):
            raise ValueError(f"degree {self.degree} needs {len(monomials(self.degree))} coefficients")

    # -- construction --------------------------------------------------

    @classmethod
    def zero(cls, field: Field, degree: int = 3) -> Form:
        return cls(field, degree, (field.zero,) * len(monomials(degree)))

    @classmethod
    def from_terms(cls, field: Field, terms: dict, degree: int = 3) -> Form:
        """Build from ``{(i, j, k): coefficient}``; index tuples are sorted first."""
        idx = _monomial_index(degree)
        c = [field.zero] * len(idx)
        for m, a in terms.items():
            key = tuple(sorted(m))
            c[idx[key]] = c[idx[key]] + field(a)
        return cls(field, degree, tuple(c))

    def terms(self) -> dict[tuple[int, ...], FieldElement]:
        return {m: a for m, a in zip(monomials(self.degree), self.coeffs) if a}

    def coeff(self, *m: int) -> FieldElement:
        return self.coeffs[_monomial_index(self.degree)[tuple(sorted(m))]]

    # -- algebra -------------------------------------------------------

    def _check(self, other: Form) -> None:
        if other.field is not self.field:
            raise MixedFields("forms over different fields")
        if other.degree != self.degree:
            raise ValueError("forms of different degree")

    def __add__(self, other: Form) -> Form:
        self._check(other)
        return Form(self.field, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Form) -> Form:
        self._check(other)
        return Form(self.field, self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Form:
        return Form(self.field, self.degree, tuple(-a for a in self.coeffs))

    def scale(self, c) -> Form:
        c = self.field(c)
        return Form(self.field, self.degree, tuple(c * a for a in self.coeffs))

    __rmul__ = scale

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_proportional(self, other: Form) -> bool:
        """``self = lambda * other`` for some non-zero ``lambda``."""
        self._check(other)
        if not self or not other:
            return False
        i = next(i for i, a in enumerate(other.coeffs) if a)
        lam = self.coeffs[i] / other.coeffs[i]
        return bool(lam) and all(a == lam * b for a, b in zip(self.coeffs, other.coeffs))

    def normalized(self) -> Form:
        """Scalar multiple whose first non-zero coefficient is one."""
        lead = next(a for a in self.coeffs if a)
        return self.scale(lead.inverse())

    # -- evaluation and calculus ---------------------------------------

    def evaluate(self, point) -> FieldElement:
        v = tuple(point)
        F = self.field
        if any(x.field is not F for x in v):
            raise MixedFields("point and form live over different fields")
        acc = F.zero
        for m, a in zip(monomials(self.degree), self.coeffs):
            if a:
                t = a
                for i in m:
                    t = t * v[i]
                acc = acc + t
        return acc

    __call__ = evaluate

    def partial(self, var: int) -> Form:
        """Formal derivative with respect to ``X_var`` (integer multiplicities reduced in K)."""
        F = self.field
        if self.degree == 0:
            return Form.zero(F, 0)
        terms: dict[tuple[int, ...], FieldElement] = {}
        for m, a in self.terms().items():
            e = m.count(var)
            if e:
                rest = list(m)
                rest.remove(var)
                key = tuple(rest)
                terms[key] = terms.get(key, F.zero) + F(e) * a
        return Form.from_terms(F, terms, self.degree - 1)

    @cached_property
    def _partials(self) -> tuple[Form, ...]:
        return tuple(self.partial(i) for i in range(NVARS))

    def partials(self) -> tuple[Form, Form, Form, Form]:
        return self._partials

    def gradient(self, point) -> tuple[FieldElement, ...]:
        return tuple(d.evaluate(point) for d in self.partials())

    def act(self, M) -> Form:
        """Image under ``X_i -> sum_j M[i][j] X_j``; satisfies ``act(p, M)(x) == p(M x)``."""
        F = self.field
        rows = [[F(x) for x in row] for row in M]
        if not det(rows):
            raise SingularMatrix("act needs an invertible matrix")
        out: dict[tuple[int, ...], FieldElement] = {}
        for m, a in self.terms().items():
            partial_terms = {(): a}
            for i in m:
                nxt: dict[tuple[int, ...], FieldElement] = {}
                for key, c in partial_terms.items():
                    for j, mij in enumerate(rows[i]):
                        if mij:
                            k2 = tuple(sorted(key + (j,)))
                            nxt[k2] = nxt.get(k2, F.zero) + c * mij
                partial_terms = nxt
            for key, c in partial_terms.items():
                out[key] = out.get(key, F.zero) + c
        return Form.from_terms(F, out, self.degree)

    def taylor_shift(self, base) -> tuple[Form, ...]:
        """Graded pieces of ``p(base + T X)``: entry ``d`` is the coefficient of ``T**d``."""
        F = self.field
        b = tuple(F(x) for x in base)
        pieces: list[dict[tuple[int, ...], FieldElement]] = [{} for _ in range(self.degree + 1)]
        for m, a in self.terms().items():
            n = len(m)
            for d in range(n + 1):
                for chosen in combinations(range(n), d):
                    c = a
                    for pos in range(n):
                        if pos not in chosen:
                            c = c * b[m[pos]]
                    if not c:
                        continue
                    key = tuple(sorted(m[pos] for pos in chosen))
                    pieces[d][key] = pieces[d].get(key, F.zero) + c
        return tuple(Form.from_terms(F, pieces[d], d) for d in range(self.degree + 1))

    def restrict_to_line(self, A, B) -> UniPoly:
        """``p((1 - T) A + T B)`` as a polynomial in T."""
        F = self.field
        a = tuple(F(x) for x in A)
        b = tuple(F(x) for x in B)
        lin = [UniPoly(F, (ai, bi - ai)) for ai, bi in zip(a, b)]
        acc = UniPoly(F, ())
        for m, c in self.terms().items():
            t = UniPoly(F, (c,))
            for i in m:
                t = t * lin[i]
            acc = acc + t
        return acc

    # -- serialization ---------------------------------------------------

    def serialize(self) -> list[str]:
        return [str(a) for a in self.coeffs]

    def sort_key(self) -> tuple:
        return tuple(a.value for a in self.coeffs)

    def __str__(self) -> str:
        parts = []
        for m, a in self.terms().items():
            parts.append(monomial_name(m) if a == 1 else f"{a}*{monomial_name(m)}")
        return " + ".join(parts) or "0"

    def __repr__(self) -> str:
        return f"Form<{self.field.spec}, deg {self.degree}>({self})"


def CubicForm(field: Field, coeffs: Sequence) -> Form:
    return Form(field, 3, tuple(field(a) for a in coeffs))


def cayley_form(field: Field) -> Form:
    """``X0 X1 X2 - X1^3 - X0^2 X3``."""
    return Form.from_terms(field, {(0, 1, 2): 1, (1, 1, 1): -1, (0, 0, 3): -1})


def alternative_form(field: Field) -> Form:
    """The second cubic with the same zero set over GF(2) and GF(3)."""
    q = field.q
    if q == 2:
        return Form.from_terms(
            field, {(0, 1, 1): 1, (0, 1, 2): 1, (1, 1, 1): 1, (0, 0, 1): 1, (0, 0, 3): 1}
        )
    if q == 3:
        return Form.from_terms(field, {(0, 1, 2): 2, (1, 1, 1): 2, (0, 0, 1): 2, (0, 0, 3): 1})
    raise WrongField("an alternative defining cubic only exists for q = 2, 3")


@dataclass(frozen=True)
class UniPoly:
    """Polynomial in one variable T, coefficients low to high, trailing zeros trimmed."""

    field: Field
    coeffs: tuple[FieldElement, ...]

    def __post_init__(self) -> None:
        c = [self.field(x) for x in self.coeffs]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return UniPoly(self.field, tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: UniPoly) -> UniPoly:
        if not self or not other:
            return UniPoly(self.field, ())
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return UniPoly(self.field, tuple(out))

    def __call__(self, t) -> FieldElement:
        t = self.field(t)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def divide_linear(self, r) -> tuple[UniPoly, FieldElement]:
        """Quotient and remainder of division by ``T - r``."""
        r = self.field(r)
        if not self:
            return self, self.field.zero
        out = []
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * r + c
            out.append(acc)
        rem = out.pop()
        return UniPoly(self.field, tuple(reversed(out))), rem

    def multiplicity(self, r) -> int:
        if not self:
            raise ValueError("every element is a root of the zero polynomial")
        m, p = 0, self
        while True:
            quo, rem = p.divide_linear(r)
            if rem:
                return m
            m, p = m + 1, quo

    def roots(self) -> dict[FieldElement, int]:
        """Roots in K with multiplicities (finite fields only)."""
        return {t: self.multiplicity(t) for t in self.field.elements() if not self(t)}

    def __str__(self) -> str:
        return " + ".join(f"{c}*T^{i}" for i, c in enumerate(self.coeffs) if c) or "0"
