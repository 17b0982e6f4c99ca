"""All cubic forms whose zero set is exactly the surface.

The vanishing condition on F is linear in the 20 coefficients, so we take the
kernel of the evaluation matrix first and only then filter the (few) kernel
elements by the non-linear condition "non-zero off F".
"""

from __future__ import annotations

from collections.abc import Sequence
from itertools import combinations, product

import numpy as np

from .errors import FieldTooLarge, InfiniteField, WrongField
from .fields import Field
from .forms import Form, monomials
from .linalg import kernel
from .projective import ProjPoint
from .surface import SurfaceModel

MAX_CANDIDATES = 2**16


def evaluation_matrix(field: Field, points: Sequence[ProjPoint]) -> list[list]:
    """Row per point, column per cubic monomial."""
    rows = []
    for P in points:
        x = P.coords
        rows.append([x[i] * x[j] * x[k] for i, j, k in monomials(3)])
    return rows


def vanishing_space(
    field: Field, points: Sequence[ProjPoint], pivot_order: Sequence[int] | None = None
) -> list[Form]:
    """Basis of the cubic forms vanishing at every given point."""
    if not field.is_finite:
        raise InfiniteField("vanishing spaces are computed over finite fields")
    rows = evaluation_matrix(field, points)
    return [Form(field, 3, v) for v in kernel(rows, 20, field, pivot_order)]


def _values(field: Field, forms: Sequence[Form], points: Sequence[ProjPoint]) -> np.ndarray:
    return np.array([[p(P.coords).value for P in points] for p in forms], dtype=np.int64).reshape(
        len(forms), len(points)
    )


def exact_census(
    model: SurfaceModel, max_q: int = 9, pivot_order: Sequence[int] | None = None
) -> list[Form]:
    """Every non-zero cubic ``p`` with ``V(p) = F``, sorted by coefficient indices."""
    F = model.field
    if not F.is_finite:
        raise InfiniteField("census needs a finite field")
    if F.q > max_q:
        raise FieldTooLarge(f"q = {F.q} exceeds census bound {max_q}")
    basis = vanishing_space(F, model.points, pivot_order)
    d, q = len(basis), F.q
    if q**d > MAX_CANDIDATES:
        raise FieldTooLarge(f"{q}^{d} kernel elements exceed the enumeration bound")
    off = [P for P in model.space_points if P not in model.point_set]
    E = _values(F, basis, off)  # d x m
    combos = np.array(list(product(range(q), repeat=d)), dtype=np.int64).reshape(-1, d)
    add, mul = F.add_table, F.mul_table
    vals = np.zeros((len(combos), len(off)), dtype=np.int64)
    for i in range(d):
        vals = add[vals, mul[combos[:, i : i + 1], E[i][None, :]]]
    keep = combos[(vals != 0).all(axis=1)]
    out = []
    for lam in keep:
        coeffs = [F.zero] * 20
        for li, b in zip(lam, basis):
            if li:
                c = F.element(int(li))
                coeffs = [x + c * y for x, y in zip(coeffs, b.coeffs)]
        out.append(Form(F, 3, tuple(coeffs)))
    return sorted(out, key=Form.sort_key)


def proportionality_classes(forms: Sequence[Form]) -> list[list[Form]]:
    classes: dict[tuple, list[Form]] = {}
    for p in forms:
        classes.setdefault(p.normalized().sort_key(), []).append(p)
    return [classes[k] for k in sorted(classes)]


def tallini_zero_forms(field: Field) -> list[Form]:
    """``X_i^2 X_j + X_i X_j^2`` for ``i < j``: cubic forms that vanish on all of GF(2)^4."""
    if field.q != 2:
        raise WrongField("the zero-function basis is stated over GF(2)")
    return [Form.from_terms(field, {(i, i, j): 1, (i, j, j): 1}) for i, j in combinations(range(4), 2)]


def span(field: Field, forms: Sequence[Form]) -> list[Form]:
    """All linear combinations (finite fields), sorted."""
    out = set()
    for lam in product(field.elements(), repeat=len(forms)):
        acc = Form.zero(field)
        for c, p in zip(lam, forms):
            acc = acc + p.scale(c)
        out.add(acc)
    return sorted(out, key=Form.sort_key)


def serialize_forms(forms: Sequence[Form]) -> list[list[str]]:
    return [p.serialize() for p in sorted(forms, key=Form.sort_key)]
