"""Dense matrices over the scalar tower, tagged by their domain.

A GMatrix knows whether its entries live in the base field K or in one of
the quadratic extensions, so Galois conjugation and base-field tests are
well defined.  All arithmetic is exact; inverses and determinants go
through the elimination kernels in `linalg`.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Sequence

from . import linalg
from .errors import KindMismatch, NotOrthogonal
from .scalars import (
    DEFAULT_PRECISION,
    AlgebraKind,
    ExtScalar,
    LaurentScalar,
    conjugate,
)


class GMatrix:
    """Matrix over K (kind None) or over a quadratic extension of K."""

    __slots__ = ("rows", "cols", "kind", "entries")

    def __init__(self, entries: Sequence[Sequence], kind: Optional[AlgebraKind] = None):
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix rows")
        self.kind = kind

    # -- constructors -----------------------------------------------

    @staticmethod
    def zeros(
        rows: int,
        cols: int,
        kind: Optional[AlgebraKind] = None,
        prec: int = DEFAULT_PRECISION,
    ) -> "GMatrix":
        z = _zero(kind, prec)
        return GMatrix([[z for _ in range(cols)] for _ in range(rows)], kind)

    @staticmethod
    def identity(
        n: int, kind: Optional[AlgebraKind] = None, prec: int = DEFAULT_PRECISION
    ) -> "GMatrix":
        z = _zero(kind, prec)
        o = _one(kind, prec)
        return GMatrix(
            [[o if i == k else z for k in range(n)] for i in range(n)], kind
        )

    @staticmethod
    def diagonal(diag: Sequence, kind: Optional[AlgebraKind] = None) -> "GMatrix":
        n = len(diag)
        prec = min((_prec_of(d) for d in diag), default=DEFAULT_PRECISION)
        z = _zero(kind, prec)
        return GMatrix(
            [[diag[i] if i == k else z for k in range(n)] for i in range(n)], kind
        )

    # -- structure --------------------------------------------------

    @property
    def prec(self) -> int:
        return min(
            (_prec_of(x) for row in self.entries for x in row),
            default=DEFAULT_PRECISION,
        )

    def _ops(self) -> linalg.FieldOps:
        p = max(1, self.prec)
        if self.kind is None:
            return linalg.laurent_ops(p)
        return linalg.ext_ops(self.kind, p)

    def __getitem__(self, ik):
        i, k = ik
        return self.entries[i][k]

    def row(self, i: int) -> list:
        return list(self.entries[i])

    def col(self, k: int) -> list:
        return [self.entries[i][k] for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][k].is_zero()
            for i in range(self.rows)
            for k in range(self.cols)
            if i != k
        )

    def diagonal_entries(self) -> list:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def _check_compatible(self, other: "GMatrix"):
        if self.kind is not other.kind:
            raise KindMismatch(
                f"matrix domains differ: {self.kind} vs {other.kind}"
            )

    # -- arithmetic --------------------------------------------------

    def __add__(self, other: "GMatrix") -> "GMatrix":
        self._check_compatible(other)
        return GMatrix(
            [[x + y for x, y in zip(ra, rb)]
             for ra, rb in zip(self.entries, other.entries)],
            self.kind,
        )

    def __sub__(self, other: "GMatrix") -> "GMatrix":
        self._check_compatible(other)
        return GMatrix(
            [[x - y for x, y in zip(ra, rb)]
             for ra, rb in zip(self.entries, other.entries)],
            self.kind,
        )

    def __neg__(self) -> "GMatrix":
        return GMatrix([[-x for x in row] for row in self.entries], self.kind)

    def __matmul__(self, other: "GMatrix") -> "GMatrix":
        self._check_compatible(other)
        if self.cols != other.rows:
            raise ValueError("matrix dimensions do not match")
        return GMatrix(
            linalg.mat_mul(self.entries, other.entries, self._ops()), self.kind
        )

    def scale(self, c) -> "GMatrix":
        return GMatrix([[c * x for x in row] for row in self.entries], self.kind)

    def map(self, f: Callable) -> "GMatrix":
        return GMatrix([[f(x) for x in row] for row in self.entries], self.kind)

    def transpose(self) -> "GMatrix":
        return GMatrix(
            [list(col) for col in zip(*self.entries)] if self.rows else [], self.kind
        )

    def inv(self) -> "GMatrix":
        return GMatrix(linalg.inv(self.entries, self._ops()), self.kind)

    def det(self):
        return linalg.det(self.entries, self._ops())

    def rank(self) -> int:
        return linalg.rank(self.entries, self._ops())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GMatrix):
            return NotImplemented
        if self.kind is not other.kind:
            return False
        if self.rows != other.rows or self.cols != other.cols:
            return False
        return all(
            x == y for ra, rb in zip(self.entries, other.entries)
            for x, y in zip(ra, rb)
        )

    # -- Galois action and domain moves -------------------------------

    def sigma2(self) -> "GMatrix":
        """Entrywise Galois conjugation (identity on K matrices)."""
        return GMatrix(
            [[conjugate(x) for x in row] for row in self.entries], self.kind
        )

    def promote(self, kind: AlgebraKind) -> "GMatrix":
        """View a K matrix inside the extension of the given kind."""
        if self.kind is not None:
            if self.kind is kind:
                return self
            raise KindMismatch("matrix already lives in an extension")
        return GMatrix(
            [[ExtScalar.from_base(kind, x) for x in row] for row in self.entries],
            kind,
        )

    def in_base(self) -> bool:
        if self.kind is None:
            return True
        return all(x.in_base() for row in self.entries for x in row)

    def demote(self) -> "GMatrix":
        """Extract the K matrix from an extension matrix with base entries."""
        if self.kind is None:
            return self
        if not self.in_base():
            raise KindMismatch("entries do not all lie in the base field")
        return GMatrix(
            [[x.base_part() for x in row] for row in self.entries], None
        )

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(str(x) for x in row) for row in self.entries
        )
        tag = "K" if self.kind is None else self.kind.value
        return f"GMatrix<{self.rows}x{self.cols} over {tag}>[{body}]"


def _zero(kind: Optional[AlgebraKind], prec: int):
    if kind is None:
        return LaurentScalar.zero(prec)
    return ExtScalar.zero(kind, prec)


def _one(kind: Optional[AlgebraKind], prec: int):
    if kind is None:
        return LaurentScalar.one(prec)
    return ExtScalar.one(kind, prec)


def _prec_of(x) -> int:
    return x.prec


def antidiag_form(n: int, prec: int = DEFAULT_PRECISION) -> GMatrix:
    """The split symmetric form S with ones on the antidiagonal."""
    z = LaurentScalar.zero(prec)
    o = LaurentScalar.one(prec)
    return GMatrix(
        [[o if i + k == n - 1 else z for k in range(n)] for i in range(n)]
    )


def check_orthogonal(x: GMatrix, s: GMatrix) -> bool:
    """Whether x^T S x = S over the matrix's own domain."""
    ss = s if s.kind is x.kind else s.promote(x.kind)
    return x.transpose() @ ss @ x == ss


def require_orthogonal(x: GMatrix, s: GMatrix):
    if not check_orthogonal(x, s):
        raise NotOrthogonal("matrix does not preserve the split form")
