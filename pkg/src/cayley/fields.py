"""Exact arithmetic in GF(p), GF(p^k) for k <= 3, and the rationals.

Finite-field elements carry an integer index in ``[0, q)``: for GF(p) this
is the residue, for GF(p^k) it is ``sum(c_i * p**i)`` where ``c_i`` is the
coefficient of ``t**i`` modulo the fixed irreducible polynomial.  Ordering
elements by index is lexicographic on ``(c_{k-1}, ..., c_0)`` and puts zero
first.  Hot loops elsewhere in the package work directly on these indices
through the ``add_t`` / ``mul_t`` lookup tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import isqrt
from typing import Union

import numpy as np

from .errors import (
    DivisionByZero,
    FieldTooLarge,
    InfiniteField,
    MixedFields,
    UnknownField,
    UnsupportedField,
)

# order -> (p, k, modulus low-to-high)
MODULI: dict[int, tuple[int, int, tuple[int, ...]]] = {
    4: (2, 2, (1, 1, 1)),  # t^2 + t + 1
    8: (2, 3, (1, 1, 0, 1)),  # t^3 + t + 1
    9: (3, 2, (1, 0, 1)),  # t^2 + 1
    25: (5, 2, (2, 0, 1)),  # t^2 + 2
    27: (3, 3, (1, 2, 0, 1)),  # t^3 + 2t + 1
}

DEFAULT_MAX_Q = 13


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def _poly_has_root(coeffs: tuple[int, ...], p: int) -> bool:
    return any(sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0 for x in range(p))


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "prime" | "extension" | "rational"
    p: int = 0
    k: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "rational":
            return
        if self.kind not in ("prime", "extension"):
            raise UnknownField(f"unknown field kind {self.kind!r}")
        if not is_prime(self.p):
            raise UnknownField(f"{self.p} is not prime")
        if self.kind == "prime":
            if self.k != 1:
                raise UnknownField("prime field must have k = 1")
            return
        if not 2 <= self.k <= 3:
            raise UnsupportedField("extension degree must be 2 or 3")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] % self.p != 1:
            raise UnknownField("modulus must be monic of degree k")
        # degree <= 3: irreducible iff no root in GF(p)
        if _poly_has_root(self.modulus, self.p):
            raise UnknownField(f"modulus {self.modulus} is reducible over GF({self.p})")

    @classmethod
    def parse(cls, text: str, max_q: int | None = None) -> FieldSpec:
        """Parse ``"q<N>"`` or ``"rational"``."""
        text = text.strip().lower()
        if text in ("rational", "q", "qq"):
            return cls("rational")
        m = re.fullmatch(r"q(\d+)", text)
        if not m:
            raise UnknownField(f"cannot parse field {text!r}")
        q = int(m.group(1))
        if max_q is not None and q > max_q:
            raise FieldTooLarge(f"q = {q} exceeds bound {max_q}")
        if is_prime(q):
            return cls("prime", q)
        if q in MODULI:
            p, k, mod = MODULI[q]
            return cls("extension", p, k, mod)
        raise UnknownField(f"no field of order {q} is configured")

    @property
    def is_finite(self) -> bool:
        return self.kind != "rational"

    @property
    def order(self) -> int | None:
        return self.p**self.k if self.is_finite else None

    def __str__(self) -> str:
        return "rational" if self.kind == "rational" else f"q{self.order}"


class Field:
    """A concrete field; obtain instances through :func:`get_field`."""

    def __init__(self, spec: FieldSpec) -> None:
        self.spec = spec
        self.is_finite = spec.is_finite
        self.char = spec.p if spec.is_finite else 0
        self.p = spec.p
        self.k = spec.k
        self.q = spec.order
        if self.is_finite:
            self._build_tables()
        self.zero = self(0)
        self.one = self(1)

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        vecs = [self._index_to_vec(i) for i in range(q)]
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for i in range(q):
            for j in range(q):
                add[i][j] = self._vec_to_index([(a + b) % p for a, b in zip(vecs[i], vecs[j])])
                mul[i][j] = self._vec_to_index(self._polymulmod(vecs[i], vecs[j]))
        self.add_t = add
        self.mul_t = mul
        self.neg_t = [next(j for j in range(q) if add[i][j] == 0) for i in range(q)]
        self.sub_t = [[add[i][self.neg_t[j]] for j in range(q)] for i in range(q)]
        inv = [0] * q
        for i in range(1, q):
            inv[i] = next(j for j in range(1, q) if mul[i][j] == 1)
        self.inv_t = inv

    def _index_to_vec(self, i: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(i % self.p)
            i //= self.p
        return out

    def _vec_to_index(self, v) -> int:
        return sum(c * self.p**i for i, c in enumerate(v))

    def _polymulmod(self, a: list[int], b: list[int]) -> list[int]:
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.spec.modulus
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                # t^d = t^(d-k) * t^k and t^k = -(mod[0] + ... + mod[k-1] t^(k-1))
                for i in range(k):
                    prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
                prod[d] = 0
        return prod[:k] if k > 1 else prod[:1]

    @cached_property
    def add_table(self) -> np.ndarray:
        return np.array(self.add_t, dtype=np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray:
        return np.array(self.mul_t, dtype=np.int64)

    def __call__(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise MixedFields(f"{x!r} does not belong to {self.spec}")
            return x
        if not self.is_finite:
            if isinstance(x, str):
                x = Fraction(x.strip())
            return FieldElement(self, Fraction(x))
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"denominator of {x} vanishes in {self.spec}")
            num = FieldElement(self, self._embed_int(x.numerator))
            return num / FieldElement(self, self._embed_int(x.denominator))
        if isinstance(x, (int, np.integer)):
            return FieldElement(self, self._embed_int(int(x)))
        raise TypeError(f"cannot coerce {x!r} into {self.spec}")

    def _embed_int(self, n: int) -> int:
        return n % self.p  # prime subfield indices coincide with residues

    def element(self, index: int) -> FieldElement:
        """Finite-field element with the given canonical index."""
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} out of range for {self.spec}")
        return FieldElement(self, index)

    def parse(self, text: str) -> FieldElement:
        """Parse ``"3"``, ``"t+1"``, ``"2t^2+t"`` and the like."""
        s = text.replace(" ", "").replace("-", "+-")
        coeffs = [0] * self.k
        for term in filter(None, s.split("+")):
            m = re.fullmatch(r"(-?\d*)\*?(t(?:\^(\d+))?)?", term)
            if not m:
                raise ValueError(f"cannot parse {text!r}")
            c, var, exp = m.groups()
            if c in ("", "-"):
                c = c + "1"
            deg = 0 if not var else int(exp or 1)
            if deg >= self.k:
                raise ValueError(f"degree {deg} too large in {text!r}")
            coeffs[deg] = (coeffs[deg] + int(c)) % self.p
        return FieldElement(self, self._vec_to_index(coeffs))

    def elements(self) -> list[FieldElement]:
        if not self.is_finite:
            raise InfiniteField("the rationals cannot be enumerated")
        return [FieldElement(self, i) for i in range(self.q)]

    def nonzero(self) -> list[FieldElement]:
        return self.elements()[1:]

    def __repr__(self) -> str:
        return f"Field({self.spec})"

    def __reduce__(self):
        return (get_field, (self.spec,))


@lru_cache(maxsize=None)
def get_field(spec: FieldSpec | str) -> Field:
    if isinstance(spec, str):
        return get_field(FieldSpec.parse(spec))
    return Field(spec)


def GF(q: int) -> Field:
    return get_field(FieldSpec.parse(f"q{q}"))


def QQ() -> Field:
    return get_field(FieldSpec("rational"))


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: Field, value) -> None:
        self.field = field
        self.value = value

    def _other(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise MixedFields(f"{self.field.spec} vs {other.field.spec}")
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        F = self.field
        if F.is_finite:
            return FieldElement(F, F.add_t[self.value][o.value])
        return FieldElement(F, self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        F = self.field
        if F.is_finite:
            return FieldElement(F, F.sub_t[self.value][o.value])
        return FieldElement(F, self.value - o.value)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        F = self.field
        if F.is_finite:
            return FieldElement(F, F.mul_t[self.value][o.value])
        return FieldElement(F, self.value * o.value)

    __rmul__ = __mul__

    def __neg__(self):
        F = self.field
        if F.is_finite:
            return FieldElement(F, F.neg_t[self.value])
        return FieldElement(F, -self.value)

    def inverse(self) -> FieldElement:
        F = self.field
        if not self:
            raise DivisionByZero(f"inverse of zero in {F.spec}")
        if F.is_finite:
            return FieldElement(F, F.inv_t[self.value])
        return FieldElement(F, 1 / self.value)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field(other).value
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __lt__(self, other: FieldElement) -> bool:
        return self.value < other.value

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coefficient vector ``(c_0, ..., c_{k-1})`` of a finite-field element."""
        return tuple(self.field._index_to_vec(self.value))

    def __str__(self) -> str:
        F = self.field
        if not F.is_finite:
            return str(self.value)
        if F.k == 1:
            return str(self.value)
        terms = []
        for deg, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            mono = "" if deg == 0 else ("t" if deg == 1 else f"t^{deg}")
            coef = str(c) if (c != 1 or deg == 0) else ""
            terms.append(coef + mono)
        return "+".join(terms) or "0"

    def __repr__(self) -> str:
        return f"<{self} in {self.field.spec}>"


class _Infinity:
    """The extra symbol of ``K u {inf}``; only ``1 - inf = inf`` is defined."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __rsub__(self, other):
        if (isinstance(other, FieldElement) and other == other.field.one) or other == 1:
            return self
        raise ArithmeticError(f"{other} - inf is undefined")

    def _undefined(self, *args):
        raise ArithmeticError("arithmetic with inf is undefined")

    __add__ = __radd__ = __sub__ = __mul__ = __rmul__ = __truediv__ = _undefined
    __rtruediv__ = __neg__ = _undefined

    def __str__(self) -> str:
        return "inf"

    __repr__ = __str__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
ExtendedScalar = Union[FieldElement, _Infinity]


def one_minus(x: ExtendedScalar) -> ExtendedScalar:
    return INF if x is INF else 1 - x


def enumerate_field(field: Field | FieldSpec | str) -> list[FieldElement]:
    if not isinstance(field, Field):
        field = get_field(field)
    return field.elements()


def frobenius(a: FieldElement, i: int) -> FieldElement:
    """``a ** (p ** i)``; the rationals only admit ``i = 0``."""
    F = a.field
    if not F.is_finite:
        if i == 0:
            return a
        raise UnsupportedField("the rationals have no non-trivial automorphism")
    if not 0 <= i < F.k:
        raise ValueError(f"exponent {i} outside [0, {F.k})")
    return a ** (F.p**i)


def square_roots(d: FieldElement) -> set[FieldElement]:
    F = d.field
    if F.is_finite:
        return {c for c in F.elements() if c * c == d}
    v = d.value
    if v < 0:
        return set()
    n, m = isqrt(v.numerator), isqrt(v.denominator)
    if n * n != v.numerator or m * m != v.denominator:
        return set()
    r = F(Fraction(n, m))
    return {r, -r}
