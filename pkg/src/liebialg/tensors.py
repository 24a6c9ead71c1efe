"""Sparse tensors with coefficients over a fixed Lie algebra basis.

A Tensor2 stores an element of g (x) g as {(i, k): scalar} with indices
into the model basis; Tensor3 does the same for triple tensors.  The
scalar entries may be Laurent scalars or extension scalars (the twisted
constructions need coefficients in K[j]); operations are entrywise and
never mix the two without an explicit promote.
"""

from __future__ import annotations

from typing import Callable, Dict, Optional, Tuple

from .scalars import AlgebraKind, ExtScalar, conjugate


class Tensor2:
    __slots__ = ("dim", "coeffs", "kind")

    def __init__(
        self,
        dim: int,
        coeffs: Optional[Dict[Tuple[int, int], object]] = None,
        kind: Optional[AlgebraKind] = None,
    ):
        self.dim = dim
        self.kind = kind
        self.coeffs = {}
        if coeffs:
            for key, c in coeffs.items():
                if not c.is_zero():
                    self.coeffs[key] = c

    def items(self):
        return self.coeffs.items()

    def get(self, i: int, k: int):
        return self.coeffs.get((i, k))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Tensor2") -> "Tensor2":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            if key in out:
                out[key] = out[key] + c
            else:
                out[key] = c
        return Tensor2(self.dim, out, self.kind)

    def __sub__(self, other: "Tensor2") -> "Tensor2":
        return self + (-other)

    def __neg__(self) -> "Tensor2":
        return Tensor2(self.dim, {k: -c for k, c in self.coeffs.items()}, self.kind)

    def scale(self, c) -> "Tensor2":
        return Tensor2(
            self.dim, {k: c * x for k, x in self.coeffs.items()}, self.kind
        )

    def transpose21(self) -> "Tensor2":
        """Swap the two tensor slots."""
        return Tensor2(
            self.dim,
            {(k, i): c for (i, k), c in self.coeffs.items()},
            self.kind,
        )

    def map_coeffs(self, f: Callable) -> "Tensor2":
        return Tensor2(self.dim, {k: f(c) for k, c in self.coeffs.items()}, self.kind)

    def sigma2(self) -> "Tensor2":
        return self.map_coeffs(conjugate)

    def promote(self, kind: AlgebraKind) -> "Tensor2":
        if self.kind is not None:
            return self
        return Tensor2(
            self.dim,
            {k: ExtScalar.from_base(kind, c) for k, c in self.coeffs.items()},
            kind,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor2):
            return NotImplemented
        if self.dim != other.dim or self.kind is not other.kind:
            return False
        for key in set(self.coeffs) | set(other.coeffs):
            a = self.coeffs.get(key)
            b = other.coeffs.get(key)
            if a is None:
                if not b.is_zero():
                    return False
            elif b is None:
                if not a.is_zero():
                    return False
            elif a != b:
                return False
        return True

    def __repr__(self) -> str:
        inner = ", ".join(
            f"({i},{k}): {c}" for (i, k), c in sorted(self.coeffs.items())
        )
        return f"Tensor2<{self.dim}>{{{inner}}}"


class Tensor3:
    __slots__ = ("dim", "coeffs", "kind")

    def __init__(
        self,
        dim: int,
        coeffs: Optional[Dict[Tuple[int, int, int], object]] = None,
        kind: Optional[AlgebraKind] = None,
    ):
        self.dim = dim
        self.kind = kind
        self.coeffs = {}
        if coeffs:
            for key, c in coeffs.items():
                if not c.is_zero():
                    self.coeffs[key] = c

    def items(self):
        return self.coeffs.items()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Tensor3") -> "Tensor3":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            if key in out:
                out[key] = out[key] + c
            else:
                out[key] = c
        return Tensor3(self.dim, out, self.kind)

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        return self + (-other)

    def __neg__(self) -> "Tensor3":
        return Tensor3(self.dim, {k: -c for k, c in self.coeffs.items()}, self.kind)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor3):
            return NotImplemented
        if self.dim != other.dim or self.kind is not other.kind:
            return False
        for key in set(self.coeffs) | set(other.coeffs):
            a = self.coeffs.get(key)
            b = other.coeffs.get(key)
            if a is None:
                if not b.is_zero():
                    return False
            elif b is None:
                if not a.is_zero():
                    return False
            elif a != b:
                return False
        return True

    def __repr__(self) -> str:
        inner = ", ".join(
            f"({i},{k},{l}): {c}" for (i, k, l), c in sorted(self.coeffs.items())
        )
        return f"Tensor3<{self.dim}>{{{inner}}}"


def wedge(dim: int, i: int, k: int, c, kind: Optional[AlgebraKind] = None) -> Tensor2:
    """c * (b_i (x) b_k - b_k (x) b_i)."""
    t = Tensor2(dim, {(i, k): c}, kind)
    return t - Tensor2(dim, {(k, i): c}, kind)
