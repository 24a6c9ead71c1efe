"""Exception types shared across the package."""

from __future__ import annotations


class LieBialgError(Exception):
    """Base class for all package errors."""


class NotUnit(LieBialgError):
    """Inversion of zero or of a non-invertible extension scalar."""


class NoExactRoot(LieBialgError):
    """A required square root does not exist over the exact coefficients."""


class PrecisionLoss(LieBialgError):
    """A decision cannot be certified at the working precision."""


class KindMismatch(LieBialgError):
    """Operands live in incompatible scalar domains."""


class ScalarParseError(LieBialgError, ValueError):
    """Malformed scalar literal."""


class Singular(LieBialgError):
    """Matrix has no inverse over its scalar domain."""


class Inconsistent(LieBialgError):
    """Linear system has no solution."""


class NotClosed(LieBialgError):
    """A bracket left the span of the supplied basis."""


class NotInSpan(LieBialgError):
    """An element does not lie in the model's matrix span."""


class RankTooLarge(LieBialgError):
    """Enumeration requested beyond the supported rank guard."""


class InvalidParam(LieBialgError):
    """A continuous parameter violates its defining constraints."""


class NotCocycle(LieBialgError):
    """Input matrix fails the Galois cocycle condition."""


class NotReducible(LieBialgError):
    """Matrix does not factor as (matrix over K) * diagonal."""


class NotOrthogonal(LieBialgError):
    """Matrix does not preserve the split bilinear form."""


class BadNorm(LieBialgError):
    """A vector has the wrong self-pairing for the requested construction."""


class PivotUnavailable(LieBialgError):
    """No usable pivot row or column exists."""


class NotTwistedCocycle(LieBialgError):
    """Input matrix fails the twisted cocycle condition."""


class GenericityFailure(LieBialgError):
    """A genericity assumption of a normalization scheme failed."""


class UnsupportedRank(LieBialgError):
    """The requested algebra size is outside the supported range."""


class DependentGenerators(LieBialgError):
    """Supplied subspace generators are linearly dependent."""


class MalformedInput(LieBialgError, ValueError):
    """A job input file or literal violates its schema."""
