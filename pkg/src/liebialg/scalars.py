"""Scalar tower: Gaussian rationals, truncated Laurent series, quadratic extensions.

The base field is modelled as C((h)) where h is a formal parameter and the
coefficients are exact Gaussian rationals Q(i).  Every series carries an
explicit precision window: a nonzero scalar knows its valuation v and its
coefficients on [v, v + prec).  Arithmetic propagates the minimum precision
of the operands, so results never claim more accuracy than the inputs
support.

On top of K = C((h)) sit the three quadratic extensions K[x]/(x^2 + px + q)
that occur for this coefficient field: dual numbers (double root), a split
pair K x K, and the ramified extension K[j] with j^2 = h.  `classify_quadratic`
decides the trichotomy and returns generators as explicit polynomials in the
quotient, so the decision can be re-verified by multiplication.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction as _Fraction
from typing import Iterator, Optional, Union

from .errors import (
    KindMismatch,
    NoExactRoot,
    NotUnit,
    PrecisionLoss,
    ScalarParseError,
)

# Exact rational backend: gmpy2.mpq when present, stdlib Fraction otherwise.
try:  # pragma: no cover - exercised implicitly by every test
    from gmpy2 import mpq as _QQ

    def _rat(x) -> "_QQ":
        return _QQ(x)

except ImportError:  # pragma: no cover
    from fractions import Fraction as _QQ

    def _rat(x) -> "_QQ":
        return _QQ(x)


DEFAULT_PRECISION = 16

_R0 = _rat(0)
_R1 = _rat(1)


def _isqrt_exact(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = _int_isqrt(n)
    return r if r * r == n else None


def _int_isqrt(n: int) -> int:
    import math

    return math.isqrt(n)


def _rat_sqrt(q) -> Optional["_QQ"]:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    num = int(q.numerator)
    den = int(q.denominator)
    rn = _isqrt_exact(num)
    rd = _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    return _rat(rn) / _rat(rd)


class GaussRat:
    """Exact Gaussian rational a + b*i."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _rat(re))
        object.__setattr__(self, "im", _rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def _raw(re, im) -> "GaussRat":
        # fast path for arithmetic results whose parts are already exact
        out = object.__new__(GaussRat)
        object.__setattr__(out, "re", re)
        object.__setattr__(out, "im", im)
        return out

    # -- predicates -------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    # -- ring operations --------------------------------------------

    def __add__(self, other) -> "GaussRat":
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussRat":
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussRat":
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "GaussRat":
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat._raw(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussRat":
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        n2 = other.re * other.re + other.im * other.im
        if n2 == 0:
            raise NotUnit("division by zero Gaussian rational")
        return GaussRat._raw(
            (self.re * other.re + self.im * other.im) / n2,
            (self.im * other.re - self.re * other.im) / n2,
        )

    def __rtruediv__(self, other) -> "GaussRat":
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self) -> "GaussRat":
        return GaussRat._raw(-self.re, -self.im)

    def conj(self) -> "GaussRat":
        return GaussRat._raw(self.re, -self.im)

    def __eq__(self, other) -> bool:
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def sqrt(self) -> "GaussRat":
        """Exact square root with the canonical branch.

        The returned root z has z.re > 0, or z.re == 0 and z.im >= 0.
        Raises NoExactRoot when no Gaussian-rational root exists.
        """
        if self.is_zero():
            return GaussRat(0, 0)
        if self.im == 0:
            r = _rat_sqrt(self.re)
            if r is not None:
                return GaussRat(r, 0)
            r = _rat_sqrt(-self.re)
            if r is not None:
                return GaussRat(0, r)
            raise NoExactRoot(f"no exact square root of {self!r}")
        # (x + iy)^2 = a + ib  =>  x^2 = (a + n)/2 with n = sqrt(a^2 + b^2),
        # y = b / (2x); n must be rational and (a + n)/2 a perfect square.
        n = _rat_sqrt(self.re * self.re + self.im * self.im)
        if n is None:
            raise NoExactRoot(f"no exact square root of {self!r}")
        x2 = (self.re + n) / 2
        x = _rat_sqrt(x2)
        if x is None or x == 0:
            raise NoExactRoot(f"no exact square root of {self!r}")
        y = self.im / (2 * x)
        root = GaussRat(x, y)
        if root.re > 0 or (root.re == 0 and root.im >= 0):
            return root
        return -root

    def __repr__(self) -> str:
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self) -> str:
        return _gauss_text(self)


def _as_gauss(x):
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, _Fraction, type(_R0))):
        return GaussRat(x, 0)
    return NotImplemented


_G0 = GaussRat(0, 0)
_G1 = GaussRat(1, 0)


class LaurentScalar:
    """Element of C((h)) truncated to a finite precision window.

    A nonzero scalar stores its valuation `val` and coefficient tuple
    `coeffs`, with coeffs[0] != 0, covering exponents val .. val+len-1;
    everything up to val + prec - 1 is asserted known (trailing zeros are
    trimmed).  The zero scalar has empty coeffs.  `prec` is the width of
    the window of known coefficients, counted from the valuation.
    """

    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, val: int, coeffs: tuple, prec: int = DEFAULT_PRECISION):
        # normalize: strip leading zeros (adjusting val), truncate to the
        # window, strip trailing zeros
        i = 0
        n = len(coeffs)
        while i < n and coeffs[i].is_zero():
            i += 1
        if i == n:
            # zero carries prec as an absolute knowledge bound; a bound
            # of 0 or less records that nothing is known about the value
            object.__setattr__(self, "val", 0)
            object.__setattr__(self, "coeffs", ())
            object.__setattr__(self, "prec", prec)
            return
        if prec < 1:
            raise ValueError("precision must be >= 1 for a nonzero scalar")
        val += i
        coeffs = coeffs[i : i + prec]
        n = len(coeffs)
        while n > 0 and coeffs[n - 1].is_zero():
            n -= 1
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "coeffs", tuple(coeffs[:n]))
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentScalar is immutable")

    # -- constructors -----------------------------------------------

    @staticmethod
    def zero(prec: int = DEFAULT_PRECISION) -> "LaurentScalar":
        return LaurentScalar(0, (), prec)

    @staticmethod
    def one(prec: int = DEFAULT_PRECISION) -> "LaurentScalar":
        return LaurentScalar(0, (_G1,), prec)

    @staticmethod
    def const(c, prec: int = DEFAULT_PRECISION) -> "LaurentScalar":
        g = _as_gauss(c)
        if g is NotImplemented:
            raise TypeError(f"cannot build scalar from {c!r}")
        return LaurentScalar(0, (g,), prec)

    @staticmethod
    def hbar(prec: int = DEFAULT_PRECISION) -> "LaurentScalar":
        return LaurentScalar(1, (_G1,), prec)

    @staticmethod
    def monomial(c, exp: int, prec: int = DEFAULT_PRECISION) -> "LaurentScalar":
        g = _as_gauss(c)
        if g is NotImplemented:
            raise TypeError(f"cannot build scalar from {c!r}")
        return LaurentScalar(exp, (g,), prec)

    @staticmethod
    def from_terms(terms: dict, prec: int = DEFAULT_PRECISION) -> "LaurentScalar":
        live = {e: c for e, c in terms.items() if not c.is_zero()}
        if not live:
            return LaurentScalar.zero(prec)
        v = min(live)
        top = max(live)
        coeffs = tuple(live.get(e, _G0) for e in range(v, top + 1))
        return LaurentScalar(v, coeffs, prec)

    # -- structure --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> Optional[int]:
        return None if self.is_zero() else self.val

    def leading(self) -> GaussRat:
        if self.is_zero():
            raise NotUnit("zero scalar has no leading coefficient")
        return self.coeffs[0]

    def coeff(self, exp: int) -> GaussRat:
        if self.is_zero():
            return _G0
        k = exp - self.val
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _G0

    def items(self) -> Iterator[tuple]:
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                yield self.val + k, c

    def is_unit(self) -> bool:
        return not self.is_zero()

    def shift(self, k: int) -> "LaurentScalar":
        """Multiply by h^k."""
        if self.is_zero():
            return self
        return LaurentScalar(self.val + k, self.coeffs, self.prec)

    def with_prec(self, prec: int) -> "LaurentScalar":
        """Same stored value viewed through a window of width `prec`."""
        return LaurentScalar(self.val, self.coeffs, prec)

    # -- arithmetic --------------------------------------------------

    def _known_until(self) -> int:
        """Absolute exponent bound: coefficients below it are known.

        Below the valuation they are exactly zero, so knowledge extends
        over all of (-inf, val + prec).  The zero scalar is anchored at 0.
        """
        return self.prec if self.is_zero() else self.val + self.prec

    def __add__(self, other) -> "LaurentScalar":
        other = _as_laurent(other, self.prec)
        if other is NotImplemented:
            return NotImplemented
        ku = min(self._known_until(), other._known_until())
        terms: dict = {}
        for e, c in self.items():
            terms[e] = terms.get(e, _G0) + c
        for e, c in other.items():
            terms[e] = terms.get(e, _G0) + c
        return _build_window(terms, ku)

    __radd__ = __add__

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar(self.val, tuple(-c for c in self.coeffs), self.prec)

    def __sub__(self, other) -> "LaurentScalar":
        other = _as_laurent(other, self.prec)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentScalar":
        other = _as_laurent(other, self.prec)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "LaurentScalar":
        if isinstance(other, ExtScalar):
            return NotImplemented
        other = _as_laurent(other, self.prec)
        if other is NotImplemented:
            return NotImplemented
        p = min(self.prec, other.prec)
        if self.is_zero() or other.is_zero():
            # a zero known below k times a factor of valuation v is only
            # known to vanish below k + v
            if self.is_zero() and other.is_zero():
                ku = self._known_until() + other._known_until()
            elif self.is_zero():
                ku = self._known_until() + other.val
            else:
                ku = other._known_until() + self.val
            return LaurentScalar.zero(ku)
        cutoff = self.val + other.val + p
        acc: dict = {}
        for e1, c1 in self.items():
            for e2, c2 in other.items():
                e = e1 + e2
                if e >= cutoff:
                    continue
                acc[e] = acc.get(e, _G0) + c1 * c2
        return _build_window(acc, cutoff)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LaurentScalar":
        other = _as_laurent(other, self.prec)
        if other is NotImplemented:
            return NotImplemented
        return self * invert(other)

    def __rtruediv__(self, other) -> "LaurentScalar":
        other = _as_laurent(other, self.prec)
        if other is NotImplemented:
            return NotImplemented
        return other * invert(self)

    def __pow__(self, n: int) -> "LaurentScalar":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return invert(self) ** (-n)
        result = LaurentScalar.one(self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        """Agreement on the shared precision window."""
        other = _as_laurent(other, self.prec)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        shared = min(self._known_until(), other._known_until())
        if self.is_zero() or other.is_zero():
            # a computed zero only certifies vanishing below its bound
            nz = other if self.is_zero() else self
            return nz.val >= shared
        if self.val != other.val:
            return min(self.val, other.val) >= shared
        for k in range(shared - self.val):
            if self.coeff(self.val + k) != other.coeff(other.val + k):
                return False
        return True

    def __repr__(self) -> str:
        return f"LaurentScalar({scalar_text(self)!r}, prec={self.prec})"

    def __str__(self) -> str:
        return scalar_text(self)


def _as_laurent(x, prec: int):
    if isinstance(x, LaurentScalar):
        return x
    g = _as_gauss(x)
    if g is NotImplemented:
        return NotImplemented
    return LaurentScalar(0, (g,), prec)


def _build_window(terms: dict, known_until: int) -> LaurentScalar:
    """Scalar from exponent->coefficient data known below `known_until`."""
    live = {e: c for e, c in terms.items() if e < known_until and not c.is_zero()}
    if not live:
        return LaurentScalar.zero(known_until)
    v = min(live)
    top = max(live)
    coeffs = tuple(live.get(e, _G0) for e in range(v, top + 1))
    return LaurentScalar(v, coeffs, known_until - v)


def invert(x: LaurentScalar) -> LaurentScalar:
    """Multiplicative inverse in K, precision preserved."""
    if x.prec <= 0:
        # empty window: the scalar is unknown, not zero
        raise PrecisionLoss("no terms left in the window, cannot certify a unit")
    if x.is_zero():
        raise NotUnit("cannot invert zero")
    p = x.prec
    a = [x.coeff(x.val + k) for k in range(p)]
    b = [_G0] * p
    b[0] = _G1 / a[0]
    for k in range(1, p):
        s = _G0
        for i in range(1, k + 1):
            if not a[i].is_zero() and not b[k - i].is_zero():
                s = s + a[i] * b[k - i]
        b[k] = -b[0] * s
    return LaurentScalar(-x.val, tuple(b), p)


def sqrt_unit(u: LaurentScalar) -> LaurentScalar:
    """Square root of a valuation-zero scalar, canonical branch.

    The leading coefficient must have an exact Gaussian-rational root;
    the branch is fixed by taking that root with positive real part
    (positive imaginary part when purely imaginary).
    """
    if u.is_zero() or u.val != 0:
        raise NotUnit("sqrt_unit requires a unit of valuation 0")
    r0 = u.leading().sqrt()  # NoExactRoot propagates
    p = u.prec
    r = LaurentScalar.const(r0, p)
    half = LaurentScalar.const(GaussRat(_rat(1) / 2, 0), p)
    # Newton iteration doubles correct coefficients each pass.
    steps = max(1, p.bit_length() + 1)
    for _ in range(steps):
        nxt = (r + u * invert(r)) * half
        if nxt == r:
            r = nxt
            break
        r = nxt
    return r


def conjugate(x: "UnionScalar") -> "UnionScalar":
    """The nontrivial K-automorphism of the extension; identity on K."""
    if isinstance(x, LaurentScalar):
        return x
    if isinstance(x, ExtScalar):
        if x.kind is AlgebraKind.SPLIT:
            return ExtScalar(x.kind, x.b, x.a)
        return ExtScalar(x.kind, x.a, -x.b)
    raise TypeError(f"cannot conjugate {type(x).__name__}")


def trace_A(x: "ExtScalar") -> LaurentScalar:
    """K-linear functional with kernel exactly K.

    Ramified: coefficient of j.  Dual numbers: coefficient of the
    nilpotent.  Split: half the difference of the two components.
    """
    if x.kind is AlgebraKind.SPLIT:
        half = LaurentScalar.const(GaussRat(_rat(1) / 2, 0), max(1, x.prec))
        return (x.a - x.b) * half
    return x.b


class AlgebraKind(Enum):
    DUAL_NUMBERS = "dual_numbers"
    SPLIT = "split"
    RAMIFIED = "ramified"


class ExtScalar:
    """Element of the rank-2 extension A = K[x]/(x^2+px+q) in normal form.

    dual_numbers: a + eps*b with eps^2 = 0.
    split:        the pair (a, b) in K x K, componentwise operations.
    ramified:     a + j*b with j^2 = h.
    """

    __slots__ = ("kind", "a", "b")

    def __init__(self, kind: AlgebraKind, a: LaurentScalar, b: LaurentScalar):
        if not isinstance(kind, AlgebraKind):
            raise TypeError("kind must be an AlgebraKind")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("ExtScalar is immutable")

    # -- constructors -----------------------------------------------

    @staticmethod
    def from_base(kind: AlgebraKind, x: LaurentScalar) -> "ExtScalar":
        if kind is AlgebraKind.SPLIT:
            return ExtScalar(kind, x, x)
        return ExtScalar(kind, x, LaurentScalar.zero(x.prec))

    @staticmethod
    def zero(kind: AlgebraKind, prec: int = DEFAULT_PRECISION) -> "ExtScalar":
        z = LaurentScalar.zero(prec)
        return ExtScalar(kind, z, z)

    @staticmethod
    def one(kind: AlgebraKind, prec: int = DEFAULT_PRECISION) -> "ExtScalar":
        return ExtScalar.from_base(kind, LaurentScalar.one(prec))

    @staticmethod
    def j(prec: int = DEFAULT_PRECISION) -> "ExtScalar":
        return ExtScalar(
            AlgebraKind.RAMIFIED, LaurentScalar.zero(prec), LaurentScalar.one(prec)
        )

    @staticmethod
    def eps(prec: int = DEFAULT_PRECISION) -> "ExtScalar":
        return ExtScalar(
            AlgebraKind.DUAL_NUMBERS, LaurentScalar.zero(prec), LaurentScalar.one(prec)
        )

    # -- structure --------------------------------------------------

    @property
    def prec(self) -> int:
        return min(self.a.prec, self.b.prec)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def in_base(self) -> bool:
        """True when the element lies in K inside A."""
        if self.kind is AlgebraKind.SPLIT:
            return self.a == self.b
        return self.b.is_zero()

    def base_part(self) -> LaurentScalar:
        if not self.in_base():
            raise KindMismatch("element is not in the base field")
        return self.a

    def is_unit(self) -> bool:
        if self.kind is AlgebraKind.DUAL_NUMBERS:
            return not self.a.is_zero()
        if self.kind is AlgebraKind.SPLIT:
            return not self.a.is_zero() and not self.b.is_zero()
        # ramified: a + jb is a unit iff a^2 - h b^2 != 0, which over K((h))
        # fails only for a = b = 0 (valuations have opposite parity).
        return not self.is_zero()

    # -- arithmetic --------------------------------------------------

    def _coerce(self, other) -> "ExtScalar":
        if isinstance(other, ExtScalar):
            if other.kind is not self.kind:
                raise KindMismatch(
                    f"cannot mix {self.kind.value} with {other.kind.value}"
                )
            return other
        x = _as_laurent(other, self.prec)
        if x is NotImplemented:
            return NotImplemented
        return ExtScalar.from_base(self.kind, x)

    def __add__(self, other) -> "ExtScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExtScalar(self.kind, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "ExtScalar":
        return ExtScalar(self.kind, -self.a, -self.b)

    def __sub__(self, other) -> "ExtScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ExtScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "ExtScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.kind is AlgebraKind.DUAL_NUMBERS:
            return ExtScalar(
                self.kind, self.a * other.a, self.a * other.b + self.b * other.a
            )
        if self.kind is AlgebraKind.SPLIT:
            return ExtScalar(self.kind, self.a * other.a, self.b * other.b)
        return ExtScalar(
            self.kind,
            self.a * other.a + (self.b * other.b).shift(1),
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def invert(self) -> "ExtScalar":
        if self.kind is AlgebraKind.DUAL_NUMBERS:
            if self.a.is_zero():
                raise NotUnit("dual number with nilpotent part only")
            ai = invert(self.a)
            return ExtScalar(self.kind, ai, -ai * ai * self.b)
        if self.kind is AlgebraKind.SPLIT:
            if self.a.is_zero() or self.b.is_zero():
                raise NotUnit("split scalar with a zero component")
            return ExtScalar(self.kind, invert(self.a), invert(self.b))
        if self.is_zero():
            raise NotUnit("cannot invert zero")
        norm = self.a * self.a - (self.b * self.b).shift(1)
        ni = invert(norm)
        return ExtScalar(self.kind, self.a * ni, -self.b * ni)

    def __truediv__(self, other) -> "ExtScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other) -> "ExtScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.invert()

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtScalar):
            if other.kind is not self.kind:
                return False
            return self.a == other.a and self.b == other.b
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        return self == coerced

    def __repr__(self) -> str:
        return (
            f"ExtScalar({self.kind.value}, {scalar_text(self.a)!r}, "
            f"{scalar_text(self.b)!r})"
        )

    def __str__(self) -> str:
        sym = {
            AlgebraKind.DUAL_NUMBERS: "eps",
            AlgebraKind.RAMIFIED: "j",
        }
        if self.kind is AlgebraKind.SPLIT:
            return f"({scalar_text(self.a)}, {scalar_text(self.b)})"
        if self.b.is_zero():
            return scalar_text(self.a)
        bs = f"{sym[self.kind]}*({scalar_text(self.b)})"
        if self.a.is_zero():
            return bs
        return f"{scalar_text(self.a)} + {bs}"


UnionScalar = Union[LaurentScalar, ExtScalar]


@dataclass(frozen=True)
class QuadraticWitness:
    """Certificate for the trichotomy of K[x]/(x^2 + px + q).

    `gen` holds coefficients (c0, c1) meaning c0 + c1*x in the quotient;
    depending on the kind it is a square root of zero (dual numbers) or a
    square root of h (ramified).  `roots` holds the two roots of the
    polynomial in K in the split case.
    """

    kind: AlgebraKind
    p: LaurentScalar
    q: LaurentScalar
    gen: Optional[tuple] = None
    roots: Optional[tuple] = None

    def residuals(self) -> list:
        """Scalars that must all be zero for the witness to be valid."""
        out = []
        if self.kind is AlgebraKind.SPLIT:
            for r in self.roots:
                out.append(r * r + self.p * r + self.q)
        else:
            c0, c1 = self.gen
            s0, s1 = quotient_square(self.p, self.q, c0, c1)
            if self.kind is AlgebraKind.RAMIFIED:
                s0 = s0 - LaurentScalar.hbar(max(1, s0.prec))
            out.extend([s0, s1])
        return out


def quotient_mul(
    p: LaurentScalar,
    q: LaurentScalar,
    x: tuple,
    y: tuple,
) -> tuple:
    """Multiply (x0 + x1 e)(y0 + y1 e) in K[e]/(e^2 + p e + q)."""
    x0, x1 = x
    y0, y1 = y
    c0 = x0 * y0 - x1 * y1 * q
    c1 = x0 * y1 + x1 * y0 - x1 * y1 * p
    return (c0, c1)


def quotient_square(p: LaurentScalar, q: LaurentScalar, c0, c1) -> tuple:
    return quotient_mul(p, q, (c0, c1), (c0, c1))


def classify_quadratic(p: LaurentScalar, q: LaurentScalar) -> QuadraticWitness:
    """Decide the isomorphism type of K[x]/(x^2 + px + q).

    The discriminant p^2 - 4q drives the trichotomy: zero gives dual
    numbers, even valuation gives the split algebra K x K, odd valuation
    gives the ramified extension K[j], j^2 = h.  The discriminant is
    recomputed in a widened window (exact for the stored coefficients) so
    that a cancellation to zero *within* the working window but not beyond
    it is reported as PrecisionLoss instead of a wrong branch.
    """
    work = min(p.prec, q.prec)
    half = LaurentScalar.const(GaussRat(_rat(1) / 2, 0), work)
    delta = p * p - 4 * q

    # Exact discriminant of the stored polynomials: wide enough that no
    # term of p*p or 4q is truncated.
    span_p = (len(p.coeffs) - 1) * 2 if not p.is_zero() else 0
    span_q = len(q.coeffs) - 1 if not q.is_zero() else 0
    wide = max(span_p, span_q, work) + work + 4
    delta_wide = p.with_prec(wide) * p.with_prec(wide) - 4 * q.with_prec(wide)

    if delta_wide.is_zero():
        # double root: x + p/2 is nilpotent in the quotient
        return QuadraticWitness(
            kind=AlgebraKind.DUAL_NUMBERS,
            p=p,
            q=q,
            gen=(p * half, LaurentScalar.one(work)),
        )
    if delta.is_zero():
        raise PrecisionLoss(
            "discriminant vanishes at working precision "
            f"{work} but not exactly; raise the precision"
        )
    v = delta.valuation
    if v % 2 == 0:
        m = v // 2
        u = delta.shift(-v)
        x = sqrt_unit(u)
        rad = x.shift(m) * half
        mp2 = -(p * half)
        return QuadraticWitness(
            kind=AlgebraKind.SPLIT,
            p=p,
            q=q,
            roots=(mp2 + rad, mp2 - rad),
        )
    m = (v - 1) // 2
    u = delta.shift(-v)
    x = sqrt_unit(u)
    scale = invert(x).shift(-m)
    # j = h^-m x^-1 (2e + p) squares to h in the quotient
    return QuadraticWitness(
        kind=AlgebraKind.RAMIFIED,
        p=p,
        q=q,
        gen=(scale * p, scale * 2),
    )


# ---------------------------------------------------------------------------
# text literals
# ---------------------------------------------------------------------------


def _rat_text(q) -> str:
    n = int(q.numerator)
    d = int(q.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def _gauss_text(g: GaussRat) -> str:
    if g.im == 0:
        return _rat_text(g.re)
    if g.re == 0:
        if g.im == 1:
            return "i"
        if g.im == -1:
            return "-i"
        return f"{_rat_text(g.im)}*i"
    im = g.im
    op = " + " if im > 0 else " - "
    mag = im if im > 0 else -im
    istr = "i" if mag == 1 else f"{_rat_text(mag)}*i"
    return f"{_rat_text(g.re)}{op}{istr}"


def _coef_text(g: GaussRat) -> str:
    """Coefficient rendered for use in front of a power of h."""
    s = _gauss_text(g)
    if not g.is_real() and g.re != 0:
        s = f"({s})"
    return s


def scalar_text(x: LaurentScalar) -> str:
    """Canonical literal: 0, a single monomial, or h^v*(c0 + c1*h + ...)."""
    if x.is_zero():
        return "0"
    live = [(x.val + k, c) for k, c in enumerate(x.coeffs) if not c.is_zero()]
    if len(live) == 1:
        e, c = live[0]
        if e == 0:
            return _gauss_text(c)
        pw = "h" if e == 1 else f"h^{e}"
        if c == _G1:
            return pw
        if c == -_G1:
            return f"-{pw}"
        return f"{_coef_text(c)}*{pw}"
    parts = []
    for k, c in enumerate(x.coeffs):
        if c.is_zero():
            continue
        if k == 0:
            pw = ""
        elif k == 1:
            pw = "h"
        else:
            pw = f"h^{k}"
        neg = False
        cc = c
        if cc.is_real() and cc.re < 0:
            neg = True
            cc = -cc
        elif cc.re == 0 and cc.im < 0:
            neg = True
            cc = -cc
        if pw == "":
            body = _coef_text(cc)
        elif cc == _G1:
            body = pw
        else:
            body = f"{_coef_text(cc)}*{pw}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    inner = "".join(parts)
    if x.val == 0:
        return inner
    return f"h^{x.val}*({inner})"


_TOKEN = _re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<sym>[ih])|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ScalarParseError(f"bad character at {text[pos:pos + 8]!r}")
        if m.group("num") is not None:
            out.append(("num", m.group("num")))
        elif m.group("sym") is not None:
            out.append(("sym", m.group("sym")))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


class _Parser:
    """Recursive-descent evaluator producing {exponent: GaussRat} maps."""

    def __init__(self, tokens: list):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect_op(self, op: str):
        kind, v = self.take()
        if kind != "op" or v != op:
            raise ScalarParseError(f"expected {op!r}")

    def parse(self) -> dict:
        val = self.sum()
        if self.i != len(self.toks):
            raise ScalarParseError("trailing input in scalar literal")
        return val

    def sum(self) -> dict:
        acc = self.product()
        while True:
            kind, v = self.peek()
            if kind == "op" and v in "+-":
                self.take()
                rhs = self.product()
                if v == "-":
                    rhs = {e: -c for e, c in rhs.items()}
                for e, c in rhs.items():
                    acc[e] = acc.get(e, _G0) + c
            else:
                return acc

    def product(self) -> dict:
        kind, v = self.peek()
        neg = False
        while kind == "op" and v in "+-":
            self.take()
            if v == "-":
                neg = not neg
            kind, v = self.peek()
        acc = self.atom()
        while True:
            kind, v = self.peek()
            if kind == "op" and v == "*":
                self.take()
                rhs = self.atom()
                acc = _poly_mul(acc, rhs)
            elif kind in ("num", "sym") or (kind == "op" and v == "("):
                # implicit product (e.g. "2h" is rejected; require *), keep strict
                raise ScalarParseError("missing '*' between factors")
            else:
                break
        if neg:
            acc = {e: -c for e, c in acc.items()}
        return acc

    def atom(self) -> dict:
        kind, v = self.take()
        if kind == "num":
            return {0: GaussRat(_rat(v), 0)}
        if kind == "sym" and v == "i":
            return {0: GaussRat(0, 1)}
        if kind == "sym" and v == "h":
            exp = 1
            k2, v2 = self.peek()
            if k2 == "op" and v2 == "^":
                self.take()
                k3, v3 = self.take()
                sign = 1
                if k3 == "op" and v3 == "-":
                    sign = -1
                    k3, v3 = self.take()
                if k3 != "num" or "/" in v3:
                    raise ScalarParseError("exponent must be an integer")
                exp = sign * int(v3)
            return {exp: _G1}
        if kind == "op" and v == "(":
            inner = self.sum()
            self.expect_op(")")
            return inner
        raise ScalarParseError(f"unexpected token {v!r}")


def _poly_mul(x: dict, y: dict) -> dict:
    out: dict = {}
    for e1, c1 in x.items():
        for e2, c2 in y.items():
            e = e1 + e2
            out[e] = out.get(e, _G0) + c1 * c2
    return out


def parse_scalar(text: str, prec: int = DEFAULT_PRECISION) -> LaurentScalar:
    """Parse a scalar literal such as "h^-1*(1 + 1/2*h - i*h^2)" or "0"."""
    toks = _tokenize(text)
    if not toks:
        raise ScalarParseError("empty scalar literal")
    terms = _Parser(toks).parse()
    return LaurentScalar.from_terms(terms, prec)


def parse_gauss(text: str) -> GaussRat:
    """Parse a Gaussian rational literal such as "1/2 - 3*i"."""
    terms = _Parser(_tokenize(text)).parse()
    if any(e != 0 for e in terms):
        raise ScalarParseError("h is not allowed in a coefficient literal")
    return terms.get(0, _G0)
