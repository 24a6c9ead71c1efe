"""Seeded random generators for exact group elements and scalars.

Everything returned here is built from exact elementary operations, so
determinants and form identities hold exactly: invertible matrices are
products of elementary row operations, orthogonal ones are products of
root-vector exponentials and torus elements.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .liealg import LieAlgebraModel
from .matrices import GMatrix
from .scalars import (
    DEFAULT_PRECISION,
    AlgebraKind,
    ExtScalar,
    GaussRat,
    LaurentScalar,
)


def random_gauss(rng: random.Random, simple: bool = False) -> GaussRat:
    if simple:
        return GaussRat(Fraction(rng.randint(-3, 3), rng.randint(1, 3)), 0)
    return GaussRat(
        Fraction(rng.randint(-4, 4), rng.randint(1, 4)),
        Fraction(rng.randint(-2, 2), rng.randint(1, 3)),
    )


def random_scalar(
    rng: random.Random, prec: int = DEFAULT_PRECISION, lo: int = -1, hi: int = 2
) -> LaurentScalar:
    terms = {}
    for _ in range(rng.randint(0, 2)):
        terms[rng.randint(lo, hi)] = random_gauss(rng)
    return LaurentScalar.from_terms(terms, prec)


def random_k_unit(
    rng: random.Random, prec: int = DEFAULT_PRECISION, val_range: int = 1
) -> LaurentScalar:
    """Nonzero scalar c * h^e, optionally with a higher-order tail."""
    c = GaussRat(0)
    while c.is_zero():
        c = random_gauss(rng)
    e = rng.randint(-val_range, val_range)
    u = LaurentScalar.monomial(c, e, prec)
    if rng.random() < 0.5:
        tail = random_scalar(rng, prec, lo=1, hi=3)
        u = u * (LaurentScalar.one(prec) + tail)
    return u


def random_kj_unit(rng: random.Random, prec: int = DEFAULT_PRECISION) -> ExtScalar:
    """Nonzero element of K[j]; every nonzero element is a unit."""
    while True:
        pick = rng.random()
        a = random_scalar(rng, prec) if pick < 0.8 else LaurentScalar.zero(prec)
        b = random_scalar(rng, prec) if pick > 0.2 else LaurentScalar.zero(prec)
        x = ExtScalar(AlgebraKind.RAMIFIED, a, b)
        if not x.is_zero():
            return x


def _padded(prec: int, n: int) -> int:
    """Construction window for exact sampler output.

    Sampler values are exact, so declaring a wider window is sound; the
    padding absorbs the knowledge-bound erosion that later inversions of
    deep-valuation entries cause, keeping `prec` coefficients usable.
    """
    return prec + 2 * n + 8


def random_gl(
    n: int,
    rng: random.Random,
    prec: int = DEFAULT_PRECISION,
    steps: Optional[int] = None,
) -> GMatrix:
    """Random element of GL(n, K) as a product of elementary matrices."""
    prec = _padded(prec, n)
    a = GMatrix.identity(n, prec=prec)
    for i in range(n):
        a.entries[i][i] = random_k_unit(rng, prec, val_range=1)
    if steps is None:
        steps = 2 * n
    for _ in range(steps):
        i, k = rng.randrange(n), rng.randrange(n)
        if i == k:
            continue
        c = random_scalar(rng, prec)
        for col in range(n):
            a.entries[i][col] = a.entries[i][col] + c * a.entries[k][col]
    return a


def unipotent(model: LieAlgebraModel, idx: int, c, prec: Optional[int] = None) -> GMatrix:
    """exp(c * b_idx) for a root vector; exact since b_idx^3 = 0."""
    b = model.basis_matrix(idx)
    if prec is not None:
        b = b.map(lambda s: s.with_prec(prec))
    x = GMatrix.identity(model.n, prec=prec or model.prec) + b.scale(c)
    b2 = b @ b
    if not b2.is_zero():
        half = GaussRat(Fraction(1, 2))
        x = x + b2.scale(half * c * c)
    return x


def random_orthogonal(
    model: LieAlgebraModel,
    rng: random.Random,
    steps: Optional[int] = None,
) -> GMatrix:
    """Random element of O(n, K) via root exponentials and the torus."""
    from .scalars import invert as k_invert

    n, m = model.n, model.m
    prec = _padded(model.prec, n)
    diag = [LaurentScalar.one(prec)] * n
    for i in range(m):
        u = random_k_unit(rng, prec, val_range=1)
        diag[i] = u
        diag[n - 1 - i] = k_invert(u)
    if n % 2:
        diag[m] = LaurentScalar.one(prec)
    x = GMatrix.diagonal(diag)
    if steps is None:
        steps = 2 * n
    for _ in range(steps):
        idx = rng.randrange(2 * model.npos)
        c = LaurentScalar.const(random_gauss(rng, simple=True), prec)
        x = x @ unipotent(model, idx, c, prec)
    return x


def _unit_for(rng: random.Random, prec: int, kind: Optional[AlgebraKind]):
    if kind is None:
        return random_k_unit(rng, prec)
    return random_kj_unit(rng, prec)


def _scalar_inv(c):
    from .scalars import invert as k_invert

    return c.invert() if isinstance(c, ExtScalar) else k_invert(c)


def random_sl_centralizer(
    model: LieAlgebraModel,
    triple,
    rng: random.Random,
    kind: Optional[AlgebraKind] = None,
) -> GMatrix:
    """Random diagonal centralizer member of the triple's r-matrix."""
    from .cohomology import centralizer_pattern_sl

    pattern = centralizer_pattern_sl(triple)
    n = model.n
    prec = _padded(model.prec, n)
    ratio = {}
    for cls in pattern.classes:
        value = _unit_for(rng, prec, kind)
        for i in cls:
            ratio[i] = value
    diag = [None] * n
    diag[n - 1] = _unit_for(rng, prec, kind)
    for i in range(n - 2, -1, -1):
        diag[i] = ratio[i] * diag[i + 1]
    return GMatrix.diagonal(diag, kind)


def random_o_centralizer(
    model: LieAlgebraModel,
    rng: random.Random,
    kind: Optional[AlgebraKind] = None,
    forced: Sequence[int] = (),
    orthogonal: bool = True,
) -> GMatrix:
    """Random conformal diagonal; orthogonal means conformal scalar 1.

    Slots in `forced` (and the middle slot of an odd model) are set to
    plus or minus a square root of the conformal scalar, so the result
    always centralizes the matching r-matrix.
    """
    n, m = model.n, model.m
    prec = _padded(model.prec, n)
    pinned = set(forced)
    if n % 2:
        pinned.add(m)
    if orthogonal:
        root_c = _one_for(prec, kind)
        c = root_c
    else:
        root_c = _unit_for(rng, prec, kind)
        c = root_c * root_c
        if not pinned and rng.random() < 0.5:
            c = _unit_for(rng, prec, kind)  # no slot needs a square root
    diag = [None] * n
    for i in range(m):
        diag[i] = _unit_for(rng, prec, kind)
    for slot in pinned:
        sign = 1 if rng.random() < 0.5 else -1
        diag[slot] = root_c if sign > 0 else -root_c
    for i in range(m):
        diag[n - 1 - i] = c * _scalar_inv(diag[i])
    return GMatrix.diagonal(diag, kind)


def _one_for(prec: int, kind: Optional[AlgebraKind]):
    if kind is None:
        return LaurentScalar.one(prec)
    return ExtScalar.one(kind, prec)
