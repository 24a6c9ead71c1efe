"""Scalar tower tests.

Expected values were computed independently (by hand, or from the binomial
series / Vieta relations) before the implementation and are frozen here.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from liebialg.errors import (
    KindMismatch,
    NoExactRoot,
    NotUnit,
    PrecisionLoss,
    ScalarParseError,
)
from liebialg.scalars import (
    DEFAULT_PRECISION,
    AlgebraKind,
    ExtScalar,
    GaussRat,
    LaurentScalar,
    classify_quadratic,
    conjugate,
    invert,
    parse_gauss,
    parse_scalar,
    quotient_mul,
    scalar_text,
    sqrt_unit,
    trace_A,
)

H = LaurentScalar.hbar()
ONE = LaurentScalar.one()
ZERO = LaurentScalar.zero()


def rand_gauss(rng: random.Random) -> GaussRat:
    def q():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    return GaussRat(q(), q())


def rand_scalar(rng: random.Random, prec: int = DEFAULT_PRECISION) -> LaurentScalar:
    terms = {}
    for _ in range(rng.randint(0, 4)):
        terms[rng.randint(-3, 6)] = rand_gauss(rng)
    return LaurentScalar.from_terms(terms, prec)


def rand_nonzero(rng: random.Random, prec: int = DEFAULT_PRECISION) -> LaurentScalar:
    while True:
        x = rand_scalar(rng, prec)
        if not x.is_zero():
            return x


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


def test_gauss_basic_arithmetic():
    a = GaussRat(Fraction(1, 2), 3)
    b = GaussRat(2, Fraction(-1, 3))
    assert a + b == GaussRat(Fraction(5, 2), Fraction(8, 3))
    assert a * b == GaussRat(2, Fraction(35, 6))
    assert (a / b) * b == a
    assert a.conj().conj() == a
    assert (a * a.conj()).is_real()


def test_gauss_division_by_zero():
    with pytest.raises(NotUnit):
        GaussRat(1, 0) / GaussRat(0, 0)


def test_gauss_sqrt_frozen_values():
    assert GaussRat(3, 4).sqrt() == GaussRat(2, 1)
    assert GaussRat(Fraction(9, 4), 0).sqrt() == GaussRat(Fraction(3, 2), 0)
    assert GaussRat(-1, 0).sqrt() == GaussRat(0, 1)
    assert GaussRat(0, 2).sqrt() == GaussRat(1, 1)
    # canonical branch: positive real part
    assert GaussRat(0, -2).sqrt() == GaussRat(1, -1)
    assert GaussRat(-4, 0).sqrt() == GaussRat(0, 2)


def test_gauss_sqrt_squares_back():
    rng = random.Random(20260819)
    for _ in range(100):
        z = rand_gauss(rng)
        s = z * z
        r = s.sqrt()
        assert r * r == s
        assert r.re > 0 or (r.re == 0 and r.im >= 0)


def test_gauss_sqrt_no_root():
    with pytest.raises(NoExactRoot):
        GaussRat(2, 0).sqrt()
    with pytest.raises(NoExactRoot):
        GaussRat(1, 1).sqrt()


# ---------------------------------------------------------------------------
# Laurent scalars: structure and window semantics
# ---------------------------------------------------------------------------


def test_normalization_strips_and_truncates():
    x = LaurentScalar(0, (GaussRat(0), GaussRat(1), GaussRat(0)), 16)
    assert x.val == 1 and x.coeffs == (GaussRat(1),)
    y = LaurentScalar.from_terms({0: GaussRat(1), 20: GaussRat(1)}, 16)
    # the h^20 term is outside the window [0, 16) and is dropped
    assert y == ONE
    assert LaurentScalar.from_terms({}, 16).is_zero()


def test_valuation_and_leading():
    x = parse_scalar("h^-2*(3 + h)")
    assert x.valuation == -2
    assert x.leading() == GaussRat(3)
    assert ZERO.valuation is None
    with pytest.raises(NotUnit):
        ZERO.leading()


def test_min_precision_propagation():
    a = LaurentScalar.one(16)
    b = LaurentScalar.one(8)
    assert (a + b).prec == 8
    assert (a * b).prec == 8
    assert (a - b).prec == 8
    assert invert(b).prec == 8


def test_equality_on_shared_window():
    x = LaurentScalar.from_terms({0: GaussRat(1), 10: GaussRat(1)}, 16)
    y = LaurentScalar.one(16)
    assert x != y
    # at width 8 the h^10 term is invisible
    assert x.with_prec(8) == y
    assert y == x.with_prec(8)


def test_zero_vs_nonzero_equality():
    assert ZERO == LaurentScalar.zero(4)
    assert ZERO != ONE
    assert H != ZERO


def test_frozen_products():
    assert (ONE + H) * (ONE - H) == ONE - H * H
    assert H * H.shift(3) == LaurentScalar.monomial(1, 5)
    x = parse_scalar("h^-1*(1 + h)")
    assert x * H == ONE + H


def test_invert_geometric_series():
    xi = invert(ONE - H)
    assert xi.val == 0
    assert all(c == GaussRat(1) for c in xi.coeffs)
    assert len(xi.coeffs) == 16
    assert (ONE - H) * xi == ONE


def test_invert_shifts_valuation():
    x = parse_scalar("h^3*(2 + h)")
    xi = invert(x)
    assert xi.valuation == -3
    assert x * xi == ONE
    with pytest.raises(NotUnit):
        invert(ZERO)


def test_pow():
    assert (ONE + H) ** 3 == ONE + 3 * H + 3 * H * H + H ** 3
    assert H ** -2 == LaurentScalar.monomial(1, -2)
    assert (ONE - H) ** 0 == ONE


def test_sqrt_unit_binomial_series():
    r = sqrt_unit(ONE + H)
    expect = [
        Fraction(1),
        Fraction(1, 2),
        Fraction(-1, 8),
        Fraction(1, 16),
        Fraction(-5, 128),
        Fraction(7, 256),
    ]
    for k, c in enumerate(expect):
        assert r.coeff(k) == GaussRat(c)
    assert r * r == ONE + H


def test_sqrt_unit_branch_and_errors():
    r = sqrt_unit(LaurentScalar.const(4))
    assert r == LaurentScalar.const(2)
    r = sqrt_unit(LaurentScalar.const(GaussRat(0, 2)))
    assert r.leading() == GaussRat(1, 1)
    with pytest.raises(NotUnit):
        sqrt_unit(H)
    with pytest.raises(NotUnit):
        sqrt_unit(ZERO)
    with pytest.raises(NoExactRoot):
        sqrt_unit(LaurentScalar.const(2) + H)


def test_sqrt_unit_random_roundtrip():
    rng = random.Random(77)
    for _ in range(60):
        c = rand_gauss(rng)
        if c.is_zero():
            continue
        tail = LaurentScalar.from_terms(
            {rng.randint(1, 6): rand_gauss(rng) for _ in range(3)}
        )
        u = LaurentScalar.const(c * c) * (ONE + tail)
        r = sqrt_unit(u)
        assert r * r == u


def test_ring_axioms_random():
    rng = random.Random(4242)
    for _ in range(120):
        a, b, c = (rand_scalar(rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a - a == ZERO


def test_field_inverse_random():
    rng = random.Random(99)
    for _ in range(80):
        x = rand_nonzero(rng)
        assert x * invert(x) == ONE
        assert invert(invert(x)) == x


# ---------------------------------------------------------------------------
# quadratic classification
# ---------------------------------------------------------------------------


def check_witness(w):
    assert all(s.is_zero() for s in w.residuals())


def test_classify_dual_numbers():
    w = classify_quadratic(ZERO, ZERO)
    assert w.kind is AlgebraKind.DUAL_NUMBERS
    assert w.gen[0] == ZERO and w.gen[1] == ONE
    check_witness(w)
    # x^2 + hx + h^2/4 also has a double root
    w2 = classify_quadratic(H, parse_scalar("1/4*h^2"))
    assert w2.kind is AlgebraKind.DUAL_NUMBERS
    assert w2.gen[0] == parse_scalar("1/2*h")
    check_witness(w2)


def test_classify_split_frozen():
    w = classify_quadratic(ZERO, -ONE)
    assert w.kind is AlgebraKind.SPLIT
    assert set(map(scalar_text, w.roots)) == {"1", "-1"}
    check_witness(w)
    w2 = classify_quadratic(H, -ONE + H)
    assert w2.kind is AlgebraKind.SPLIT
    assert set(map(scalar_text, w2.roots)) == {"1 - h", "-1"}
    check_witness(w2)


def test_classify_split_vieta():
    w = classify_quadratic(ONE, H)
    assert w.kind is AlgebraKind.SPLIT
    r1, r2 = w.roots
    assert r1 + r2 == -ONE
    assert r1 * r2 == H
    assert r1 != r2
    check_witness(w)


def test_classify_ramified_frozen():
    w = classify_quadratic(ZERO, -H)
    assert w.kind is AlgebraKind.RAMIFIED
    assert w.gen[0] == ZERO and w.gen[1] == ONE
    check_witness(w)
    # discriminant h^3: the square root of h is h * (2e) with e^2 = h^3/4
    w2 = classify_quadratic(ZERO, parse_scalar("-1/4*h^3"))
    assert w2.kind is AlgebraKind.RAMIFIED
    assert w2.gen[1] == parse_scalar("h^-1*(2)")
    check_witness(w2)


def test_classify_ramified_with_unit():
    # discriminant 4h(1+h): root of the unit part enters the generator
    w = classify_quadratic(ZERO, -H * (ONE + H))
    assert w.kind is AlgebraKind.RAMIFIED
    check_witness(w)


def test_classify_precision_loss():
    # q = (1 + h^10)^2 truncated at width 16 loses the h^20 term, so the
    # discriminant cancels through the whole working window without being
    # exactly zero for the stored coefficients.
    p = 2 * (ONE + H ** 10)
    q = (ONE + H ** 10).with_prec(32) ** 2
    q = LaurentScalar(q.val, q.coeffs, 16)
    assert q == ONE + 2 * H ** 10
    with pytest.raises(PrecisionLoss):
        classify_quadratic(p, q)
    # at width 32 the same inputs are decidable
    p32 = 2 * (LaurentScalar.one(32) + LaurentScalar.hbar(32) ** 10)
    q32 = (LaurentScalar.one(32) + LaurentScalar.hbar(32) ** 10) ** 2
    w = classify_quadratic(p32, q32)
    assert w.kind is AlgebraKind.DUAL_NUMBERS


def test_classify_random_monic_products():
    # polynomials built from known roots must come out split
    rng = random.Random(5150)
    for _ in range(40):
        r1 = rand_scalar(rng)
        r2 = rand_scalar(rng)
        if (r1 - r2).is_zero():
            continue
        p = -(r1 + r2)
        q = r1 * r2
        w = classify_quadratic(p, q)
        assert w.kind is AlgebraKind.SPLIT
        s1, s2 = w.roots
        assert (s1 == r1 and s2 == r2) or (s1 == r2 and s2 == r1)


# ---------------------------------------------------------------------------
# extension scalars
# ---------------------------------------------------------------------------


def test_j_squares_to_h():
    j = ExtScalar.j()
    assert j * j == ExtScalar.from_base(AlgebraKind.RAMIFIED, H)


def test_eps_squares_to_zero():
    e = ExtScalar.eps()
    assert (e * e).is_zero()


def test_split_componentwise():
    x = ExtScalar(AlgebraKind.SPLIT, ONE, H)
    y = ExtScalar(AlgebraKind.SPLIT, H, ONE)
    assert x * y == ExtScalar(AlgebraKind.SPLIT, H, H)
    assert x + y == ExtScalar(AlgebraKind.SPLIT, ONE + H, ONE + H)
    assert (x + y).in_base()


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        ExtScalar.j() * ExtScalar.eps()


def test_ext_inverse_all_kinds():
    rng = random.Random(31337)
    for kind in AlgebraKind:
        one = ExtScalar.one(kind)
        for _ in range(40):
            a = rand_scalar(rng)
            b = rand_scalar(rng)
            x = ExtScalar(kind, a, b)
            if not x.is_unit():
                with pytest.raises(NotUnit):
                    x.invert()
                continue
            assert x * x.invert() == one


def test_ext_nonunits():
    eps_only = ExtScalar(AlgebraKind.DUAL_NUMBERS, ZERO, ONE)
    assert not eps_only.is_unit()
    half_split = ExtScalar(AlgebraKind.SPLIT, ONE, ZERO)
    assert not half_split.is_unit()
    with pytest.raises(NotUnit):
        half_split.invert()
    # ramified nonzero elements are always units, even with a = 0
    jh = ExtScalar(AlgebraKind.RAMIFIED, ZERO, H)
    assert jh.is_unit()
    assert jh * jh.invert() == ExtScalar.one(AlgebraKind.RAMIFIED)


def test_conjugate_is_ring_hom():
    rng = random.Random(2718)
    for kind in AlgebraKind:
        for _ in range(30):
            x = ExtScalar(kind, rand_scalar(rng), rand_scalar(rng))
            y = ExtScalar(kind, rand_scalar(rng), rand_scalar(rng))
            assert conjugate(x * y) == conjugate(x) * conjugate(y)
            assert conjugate(x + y) == conjugate(x) + conjugate(y)
            assert conjugate(conjugate(x)) == x


def test_conjugate_fixed_field_is_base():
    rng = random.Random(161803)
    for kind in AlgebraKind:
        for _ in range(30):
            x = ExtScalar(kind, rand_scalar(rng), rand_scalar(rng))
            assert (conjugate(x) == x) == x.in_base()
        y = ExtScalar.from_base(kind, rand_scalar(rng))
        assert conjugate(y) == y


def test_trace_kernel_and_values():
    j = ExtScalar.j()
    assert trace_A(j) == ONE
    e = ExtScalar.eps()
    assert trace_A(e) == ONE
    s = ExtScalar(AlgebraKind.SPLIT, ONE + H, ONE - H)
    assert trace_A(s) == H
    for kind in AlgebraKind:
        x = ExtScalar.from_base(kind, 3 * H - ONE)
        assert trace_A(x).is_zero()


def test_trace_is_k_linear():
    rng = random.Random(55)
    for kind in AlgebraKind:
        for _ in range(20):
            x = ExtScalar(kind, rand_scalar(rng), rand_scalar(rng))
            y = ExtScalar(kind, rand_scalar(rng), rand_scalar(rng))
            c = rand_scalar(rng)
            assert trace_A(x + y) == trace_A(x) + trace_A(y)
            assert trace_A(ExtScalar.from_base(kind, c) * x) == c * trace_A(x)


def test_quotient_mul_matches_split_roots():
    # in K[e]/(e^2 + pe + q) with split roots, (e - r1)(e - r2) = 0
    w = classify_quadratic(ONE, H)
    r1, r2 = w.roots
    prod = quotient_mul(ONE, H, (-r1, ONE), (-r2, ONE))
    assert prod[0].is_zero() and prod[1].is_zero()


# ---------------------------------------------------------------------------
# literals
# ---------------------------------------------------------------------------


def test_parse_frozen_forms():
    assert parse_scalar("0").is_zero()
    assert parse_scalar("h") == H
    assert parse_scalar("-h") == -H
    assert parse_scalar("1/2") == LaurentScalar.const(Fraction(1, 2))
    assert parse_scalar("h^-1*(1 - i*h)") == invert(H) - LaurentScalar.const(
        GaussRat(0, 1)
    )
    assert parse_scalar("(1+i)*h^2 - h^3") == LaurentScalar.from_terms(
        {2: GaussRat(1, 1), 3: GaussRat(-1)}
    )
    assert parse_scalar("2*h + h") == 3 * H


def test_parse_errors():
    for bad in ["", "x", "h^", "1 +", "((1)", "2h", "h^1/2"]:
        with pytest.raises(ScalarParseError):
            parse_scalar(bad)


def test_parse_gauss():
    assert parse_gauss("1/2 - 3*i") == GaussRat(Fraction(1, 2), -3)
    assert parse_gauss("i") == GaussRat(0, 1)
    with pytest.raises(ScalarParseError):
        parse_gauss("h")


def test_text_roundtrip_random():
    rng = random.Random(8080)
    for _ in range(150):
        x = rand_scalar(rng)
        assert parse_scalar(scalar_text(x), x.prec) == x


def test_text_frozen_forms():
    assert scalar_text(ZERO) == "0"
    assert scalar_text(H) == "h"
    assert scalar_text(-H) == "-h"
    assert scalar_text(ONE - H) == "1 - h"
    assert scalar_text(parse_scalar("h^-1*(1 + h)")) == "h^-1*(1 + h)"
    assert scalar_text(LaurentScalar.const(GaussRat(1, 1))) == "1 + i"
    assert scalar_text(LaurentScalar.from_terms({2: GaussRat(1, 1)})) == "(1 + i)*h^2"
