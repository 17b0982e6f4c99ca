"""Brute-force oracles built from plain integers, sharing no code with the package.

Field elements use the same index convention as the package
(``sum c_i p**i``) so results can be compared directly, but arithmetic here
is schoolbook polynomial multiplication followed by long division.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

MODULI = {4: (2, (1, 1, 1)), 8: (2, (1, 1, 0, 1)), 9: (3, (1, 0, 1))}


class RawField:
    def __init__(self, q: int) -> None:
        self.q = q
        if q in MODULI:
            self.p, self.mod = MODULI[q]
        else:
            self.p, self.mod = q, (0, 1)
        self.k = len(self.mod) - 1

    def vec(self, i: int) -> list[int]:
        return [(i // self.p**j) % self.p for j in range(self.k)]

    def idx(self, v) -> int:
        return sum((c % self.p) * self.p**j for j, c in enumerate(v))

    def add(self, a: int, b: int) -> int:
        return self.idx([x + y for x, y in zip(self.vec(a), self.vec(b))])

    def neg(self, a: int) -> int:
        return self.idx([-x for x in self.vec(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        u, v = self.vec(a), self.vec(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(u):
            for j, y in enumerate(v):
                prod[i + j] += x * y
        # long division by the monic modulus
        for d in range(len(prod) - 1, self.k - 1, -1):
            c = prod[d] % self.p
            if c:
                for i, m in enumerate(self.mod):
                    prod[d - self.k + i] -= c * m
        return self.idx(prod[: self.k])

    def inv(self, a: int) -> int:
        return next(b for b in range(1, self.q) if self.mul(a, b) == 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def from_int(self, n: int) -> int:
        return n % self.p

    def evalpoly(self, terms, x) -> int:
        """``terms`` is a list of (integer coefficient, index tuple)."""
        acc = 0
        for c, m in terms:
            t = self.from_int(c)
            for i in m:
                t = self.mul(t, x[i])
            acc = self.add(acc, t)
        return acc


F_TERMS = [(1, (0, 1, 2)), (-1, (1, 1, 1)), (-1, (0, 0, 3))]


@lru_cache(maxsize=None)
def raw_field(q: int) -> RawField:
    return RawField(q)


@lru_cache(maxsize=None)
def raw_points(q: int) -> list[tuple[int, ...]]:
    out = []
    for lead in range(4):
        for tail in product(range(q), repeat=3 - lead):
            out.append((0,) * lead + (1,) + tail)
    return out


@lru_cache(maxsize=None)
def raw_surface(q: int) -> frozenset[tuple[int, ...]]:
    K = raw_field(q)
    return frozenset(v for v in raw_points(q) if K.evalpoly(F_TERMS, v) == 0)


def raw_param(q: int, u1: int, u2: int) -> tuple[int, ...]:
    K = raw_field(q)
    return (1, u1, u2, K.sub(K.mul(u1, u2), K.mul(u1, K.mul(u1, u1))))


def raw_delta(q: int, A, B):
    """Third root of ``f((1-T)A + T B)``, by interpolating the cubic at T = 0..3."""
    K = raw_field(q)
    ts = list(range(4))  # indices 0, 1 are the field's 0, 1; the rest are distinct elements
    vals = []
    for t in ts:
        one_minus_t = K.sub(1, t)
        x = tuple(K.add(K.mul(one_minus_t, a), K.mul(t, b)) for a, b in zip(A, B))
        vals.append(K.evalpoly(F_TERMS, x))
    if not any(vals):
        return None  # infinity: the line lies on F
    # Lagrange interpolation: coefficients c0..c3 of the cubic
    coeffs = [0, 0, 0, 0]
    for i, ti in enumerate(ts):
        num = [1]
        den = 1
        for j, tj in enumerate(ts):
            if i == j:
                continue
            # multiply num by (T - tj)
            nxt = [0] * (len(num) + 1)
            for d, c in enumerate(num):
                nxt[d + 1] = K.add(nxt[d + 1], c)
                nxt[d] = K.sub(nxt[d], K.mul(c, tj))
            num = nxt
            den = K.mul(den, K.sub(ti, tj))
        w = K.div(vals[i], den)
        for d in range(4):
            coeffs[d] = K.add(coeffs[d], K.mul(w, num[d]))
    # c3 T (T - 1)(T - d): c1 = c3 * d
    return K.div(coeffs[1], coeffs[3])


CUBIC_MONOMIALS = [(i, j, k) for i in range(4) for j in range(i, 4) for k in range(j, 4)]


def _nullspace_mod_p(rows: list[list[int]], n: int, p: int) -> list[list[int]]:
    A = [[x % p for x in r] for r in rows]
    pivots, r = [], 0
    for c in range(n):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], p - 2, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [0] * n
        v[free] = 1
        for i, c in enumerate(pivots):
            v[c] = -A[i][free] % p
        basis.append(v)
    return basis


def raw_census(q: int) -> set[tuple[tuple[tuple[int, ...], int], ...]]:
    """Cubics over a prime field whose zero set is exactly F, as sorted (monomial, coeff) tuples."""
    pts = raw_points(q)
    on = raw_surface(q)

    def ev(v):
        return [v[i] * v[j] * v[k] % q for i, j, k in CUBIC_MONOMIALS]

    basis = _nullspace_mod_p([ev(v) for v in on], 20, q)
    off = [ev(v) for v in pts if v not in on]
    out = set()
    for lam in product(range(q), repeat=len(basis)):
        c = [sum(l * b[i] for l, b in zip(lam, basis)) % q for i in range(20)]
        if all(sum(a * x for a, x in zip(c, row)) % q for row in off):
            out.add(tuple((m, x) for m, x in zip(CUBIC_MONOMIALS, c) if x))
    return out
