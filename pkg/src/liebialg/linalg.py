"""Exact dense linear algebra over the package's scalar domains.

Everything here is plain Gaussian elimination on lists of lists, written
against a tiny field-operations adapter so the same code serves exact
rationals, Gaussian rationals, Laurent scalars, and the quadratic
extensions.  No floating point anywhere; a pivot must be a unit of the
domain, and domains with zero divisors (dual numbers, the split algebra)
simply fail with Singular when no unit pivot exists.
"""

from __future__ import annotations

from typing import Callable, List, Sequence

from .errors import Inconsistent, Singular
from .scalars import (
    DEFAULT_PRECISION,
    AlgebraKind,
    ExtScalar,
    GaussRat,
    LaurentScalar,
    invert,
    _rat,
)


class FieldOps:
    """Field operations for one scalar domain."""

    def __init__(
        self,
        zero,
        one,
        is_zero: Callable,
        is_unit: Callable,
        inv: Callable,
    ):
        self.zero = zero
        self.one = one
        self.is_zero = is_zero
        self.is_unit = is_unit
        self.inv = inv


def rat_ops() -> FieldOps:
    one = _rat(1)
    return FieldOps(
        zero=_rat(0),
        one=one,
        is_zero=lambda x: x == 0,
        is_unit=lambda x: x != 0,
        inv=lambda x: one / x,
    )


def gauss_ops() -> FieldOps:
    one = GaussRat(1)
    return FieldOps(
        zero=GaussRat(0),
        one=one,
        is_zero=lambda x: x.is_zero(),
        is_unit=lambda x: not x.is_zero(),
        inv=lambda x: one / x,
    )


def laurent_ops(prec: int = DEFAULT_PRECISION) -> FieldOps:
    return FieldOps(
        zero=LaurentScalar.zero(prec),
        one=LaurentScalar.one(prec),
        is_zero=lambda x: x.is_zero(),
        is_unit=lambda x: not x.is_zero(),
        inv=invert,
    )


def ext_ops(kind: AlgebraKind, prec: int = DEFAULT_PRECISION) -> FieldOps:
    return FieldOps(
        zero=ExtScalar.zero(kind, prec),
        one=ExtScalar.one(kind, prec),
        is_zero=lambda x: x.is_zero(),
        is_unit=lambda x: x.is_unit(),
        inv=lambda x: x.invert(),
    )


Matrix = List[list]
Vector = list


def identity(n: int, ops: FieldOps) -> Matrix:
    return [[ops.one if i == k else ops.zero for k in range(n)] for i in range(n)]


def zeros(rows: int, cols: int, ops: FieldOps) -> Matrix:
    return [[ops.zero for _ in range(cols)] for _ in range(rows)]


def mat_mul(a: Matrix, b: Matrix, ops: FieldOps) -> Matrix:
    # computed zeros are never skipped: their knowledge bound must cap
    # the window of the accumulated sum
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        row = []
        ai = a[i]
        for k in range(cols):
            acc = None
            for t in range(inner):
                term = ai[t] * b[t][k]
                acc = term if acc is None else acc + term
            row.append(ops.zero if acc is None else acc)
        out.append(row)
    return out


def mat_vec(a: Matrix, v: Vector, ops: FieldOps) -> Vector:
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            term = x * y
            acc = term if acc is None else acc + term
        out.append(ops.zero if acc is None else acc)
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(a: Matrix, ops: FieldOps) -> bool:
    return all(ops.is_zero(x) for row in a for x in row)


def _eliminate(aug: Matrix, ncols: int, ops: FieldOps):
    """Row-reduce `aug` in place on its first `ncols` columns.

    Pivots take the first row (top-down) holding a unit in the current
    column, which keeps every derived factorization deterministic.
    Returns (pivot_columns, swap_parity).
    """
    rows = len(aug)
    pivots = []
    sign = 1
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, rows):
            if ops.is_unit(aug[i][c]):
                sel = i
                break
        if sel is None:
            for i in range(r, rows):
                if not ops.is_zero(aug[i][c]):
                    raise Singular(
                        "nonzero non-unit pivot column over a domain "
                        "with zero divisors"
                    )
            continue
        if sel != r:
            aug[r], aug[sel] = aug[sel], aug[r]
            sign = -sign
        piv_inv = ops.inv(aug[r][c])
        aug[r] = [piv_inv * x for x in aug[r]]
        for i in range(rows):
            if i == r:
                continue
            # a computed-zero factor still caps the row windows
            f = aug[i][c]
            aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    return pivots, sign


def rank(a: Matrix, ops: FieldOps) -> int:
    if not a:
        return 0
    work = [list(row) for row in a]
    pivots, _ = _eliminate(work, len(a[0]), ops)
    return len(pivots)


def det(a: Matrix, ops: FieldOps):
    n = len(a)
    if n == 0:
        return ops.one
    work = [list(row) for row in a]
    d = ops.one
    sign = 1
    r = 0
    for c in range(n):
        sel = None
        for i in range(r, n):
            if ops.is_unit(work[i][c]):
                sel = i
                break
        if sel is None:
            if all(ops.is_zero(work[i][c]) for i in range(r, n)):
                return ops.zero
            raise Singular("non-unit pivot column in determinant")
        if sel != r:
            work[r], work[sel] = work[sel], work[r]
            sign = -sign
        piv = work[r][c]
        d = d * piv
        piv_inv = ops.inv(piv)
        for i in range(r + 1, n):
            fp = work[i][c] * piv_inv
            work[i] = [x - fp * y for x, y in zip(work[i], work[r])]
        r += 1
    if sign < 0:
        d = ops.zero - d
    return d


def inv(a: Matrix, ops: FieldOps) -> Matrix:
    n = len(a)
    aug = [list(row) + [ops.one if i == k else ops.zero for k in range(n)]
           for i, row in enumerate(a)]
    pivots, _ = _eliminate(aug, n, ops)
    if len(pivots) != n:
        raise Singular("matrix is not invertible over its domain")
    return [row[n:] for row in aug]


def solve(a: Matrix, b: Vector, ops: FieldOps) -> Vector:
    """One solution of A x = b; raises Inconsistent if none exists."""
    rows = len(a)
    ncols = len(a[0]) if rows else 0
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    pivots, _ = _eliminate(aug, ncols, ops)
    r = len(pivots)
    for i in range(r, rows):
        if not ops.is_zero(aug[i][ncols]):
            raise Inconsistent("linear system has no solution")
    x = [ops.zero for _ in range(ncols)]
    for k, c in enumerate(pivots):
        x[c] = aug[k][ncols]
    return x


def nullspace(a: Matrix, ops: FieldOps) -> List[Vector]:
    """Basis of the kernel of A, one vector per free column."""
    rows = len(a)
    if rows == 0:
        return []
    ncols = len(a[0])
    work = [list(row) for row in a]
    pivots, _ = _eliminate(work, ncols, ops)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [ops.zero for _ in range(ncols)]
        v[fc] = ops.one
        for k, pc in enumerate(pivots):
            v[pc] = ops.zero - work[k][fc]
        basis.append(v)
    return basis


def solve_general(a: Matrix, b: Vector, ops: FieldOps):
    """(particular solution, kernel basis) for A x = b."""
    return solve(a, b, ops), nullspace(a, ops)


def row_span_contains(rows: Sequence[Vector], v: Vector, ops: FieldOps) -> bool:
    """True when v lies in the span of the given row vectors."""
    base = [list(r) for r in rows]
    r0 = rank(base, ops) if base else 0
    return rank(base + [list(v)], ops) == r0


def coords_in_basis(basis: Sequence[Vector], v: Vector, ops: FieldOps) -> Vector:
    """Coefficients c with sum c_k basis_k = v; Inconsistent if outside."""
    a = transpose([list(r) for r in basis])
    return solve(a, list(v), ops)
