"""Root systems, matrix models, invariant form, Casimir, adjoint action."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from liebialg.errors import NotClosed, NotInSpan, UnsupportedRank
from liebialg.liealg import (
    check_two_cocycle,
    o_model,
    root_system,
    sl_model,
    span_coords,
)
from liebialg.matrices import GMatrix
from liebialg.scalars import GaussRat, LaurentScalar
from liebialg.tensors import Tensor2, wedge

ONE = LaurentScalar.one()
ZERO = LaurentScalar.zero()


def const(x):
    return LaurentScalar.const(x)


# ---------------------------------------------------------------------------
# root systems
# ---------------------------------------------------------------------------


def test_positive_root_counts():
    assert len(root_system("A", 2).positive_roots) == 3
    assert len(root_system("A", 3).positive_roots) == 6
    assert len(root_system("B", 2).positive_roots) == 4
    assert len(root_system("B", 3).positive_roots) == 9
    assert len(root_system("D", 4).positive_roots) == 12
    assert len(root_system("D", 2).positive_roots) == 2


def test_cartan_matrices():
    # convention: entry (a, b) is 2(alpha_a, alpha_b) / (alpha_b, alpha_b)
    assert root_system("A", 2).cartan_matrix() == [[2, -1], [-1, 2]]
    assert root_system("B", 2).cartan_matrix() == [[2, -2], [-1, 2]]
    d4 = root_system("D", 4).cartan_matrix()
    assert d4[1] == [-1, 2, -1, -1]  # branch node
    assert d4[2] == [0, -1, 2, 0]
    assert d4[3] == [0, -1, 0, 2]


def test_simple_coords_and_height():
    rs = root_system("A", 2)
    theta = (1, 0, -1)  # highest root = alpha1 + alpha2
    assert rs.simple_coords(theta) == (1, 1)
    assert rs.height(theta) == 2
    assert rs.is_positive(theta)
    assert not rs.is_positive((-1, 0, 1))
    assert rs.is_root((-1, 0, 1))


def test_positive_roots_ordered_by_height():
    rs = root_system("B", 3)
    heights = [rs.height(r) for r in rs.positive_roots]
    assert heights == sorted(heights)
    assert heights[0] == 1 and heights[-1] == 5


def test_bad_family():
    with pytest.raises(UnsupportedRank):
        root_system("E", 6)


# ---------------------------------------------------------------------------
# model structure
# ---------------------------------------------------------------------------


def test_dimensions():
    assert sl_model(2).dim == 3
    assert sl_model(3).dim == 8
    assert sl_model(4).dim == 15
    assert o_model(4).dim == 6
    assert o_model(5).dim == 10
    assert o_model(7).dim == 21
    assert o_model(8).dim == 28


def test_sl2_frozen_brackets():
    g = sl_model(2)
    e, f, h = 0, 1, 2
    assert g.bracket_coords(h, e) == {e: 2}
    assert g.bracket_coords(h, f) == {f: -2}
    assert g.bracket_coords(e, f) == {h: 1}
    assert g.bracket_coords(e, e) == {}


def test_structure_antisymmetry_and_jacobi():
    for model in (sl_model(3), o_model(5)):
        rng = random.Random(model.dim)
        for _ in range(60):
            i, k, l = (rng.randrange(model.dim) for _ in range(3))
            assert model.bracket_coords(i, k) == {
                m: -c for m, c in model.bracket_coords(k, i).items()
            }
            acc = {}
            for (a, b, c) in ((i, k, l), (k, l, i), (l, i, k)):
                inner = model.bracket_coords(a, b)
                for m, w in inner.items():
                    for t, u in model.bracket_coords(m, c).items():
                        acc[t] = acc.get(t, 0) + w * u
            assert all(v == 0 for v in acc.values())


def test_o_basis_is_form_skew():
    for n in (4, 5, 7, 8):
        model = o_model(n)
        s = model.S
        for idx in range(model.dim):
            b = model.basis_matrix(idx)
            assert (b.transpose() @ s + s @ b).is_zero()


def test_sl_basis_traceless():
    model = sl_model(4)
    for idx in range(model.dim):
        b = model.basis_matrix(idx)
        tr = ZERO
        for i in range(4):
            tr = tr + b.entries[i][i]
        assert tr.is_zero()


def test_root_vector_weights():
    # [H, e_alpha] = alpha(H) e_alpha for every Cartan basis element
    for model in (sl_model(3), o_model(5), o_model(8)):
        for alpha, t in model.pos_index.items():
            vals = model.root_on_cartan(alpha)
            for ci, idx in enumerate(model.cartan_indices):
                br = model.bracket_coords(idx, t)
                expect = {t: vals[ci]} if vals[ci] != 0 else {}
                assert {m: Fraction(int(c)) for m, c in br.items()} == {
                    m: Fraction(c) for m, c in expect.items()
                }


# ---------------------------------------------------------------------------
# coordinates
# ---------------------------------------------------------------------------


def test_coords_roundtrip():
    rng = random.Random(5)
    for model in (sl_model(3), o_model(5)):
        for _ in range(20):
            coords = {
                rng.randrange(model.dim): const(
                    Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                )
                for _ in range(4)
            }
            x = model.element_from_coords(coords)
            got = model.coords(x)
            assert model.element_from_coords(got) == x


def test_coords_rejects_outside_span():
    sl = sl_model(2)
    not_traceless = GMatrix([[ONE, ZERO], [ZERO, ZERO]])
    with pytest.raises(NotInSpan):
        sl.coords(not_traceless)
    o4 = o_model(4)
    bad = GMatrix.zeros(4, 4)
    bad.entries[0][1] = ONE  # e_12 alone is not in o(4)
    with pytest.raises(NotInSpan):
        o4.coords(bad)


# ---------------------------------------------------------------------------
# invariant form and Casimir
# ---------------------------------------------------------------------------


def test_form_pairs_opposite_root_vectors_to_one():
    for model in (sl_model(3), o_model(5), o_model(7), o_model(8)):
        for alpha, t in model.pos_index.items():
            nt = model.neg_index[alpha]
            v = model.form(model.basis_matrix(t), model.basis_matrix(nt))
            assert v == ONE
        # and mismatched pairs to zero
        roots = list(model.pos_index)
        a, b = roots[0], roots[-1]
        if a != b:
            v = model.form(
                model.basis_matrix(model.pos_index[a]),
                model.basis_matrix(model.neg_index[b]),
            )
            assert v.is_zero()


def test_form_invariance():
    # B([x,y],z) = B(x,[y,z]) on random basis triples
    rng = random.Random(13)
    for model in (sl_model(3), o_model(5)):
        for _ in range(30):
            x, y, z = (
                model.basis_matrix(rng.randrange(model.dim)) for _ in range(3)
            )
            lhs = model.form(model.bracket(x, y), z)
            rhs = model.form(x, model.bracket(y, z))
            assert lhs == rhs


def test_sl2_casimir_frozen():
    g = sl_model(2)
    om = g.casimir()
    half = const(Fraction(1, 2))
    expect = Tensor2(3, {(0, 1): ONE, (1, 0): ONE, (2, 2): half})
    assert om == expect


def test_casimir0_matches_trace_form_dual_basis():
    # Cartan part equals sum_i ebar_i (x) ebar_i with ebar_i = e_ii - I/n,
    # compared in matrix-space coordinates
    for n in (2, 3, 4):
        model = sl_model(n)
        om0 = model.casimir0()
        grid = {}
        for (a, b), c in om0.items():
            for (i, k), v in model.basis[a].items():
                for (p, q), w in model.basis[b].items():
                    key = (i, k, p, q)
                    cur = grid.get(key, ZERO)
                    grid[key] = cur + (v * w) * c
        expect = {}
        inv_n = const(Fraction(1, n))
        for i in range(n):
            expect[(i, i, i, i)] = ONE - inv_n
        for i in range(n):
            for p in range(n):
                if i != p:
                    expect[(i, i, p, p)] = -inv_n
        keys = set(grid) | set(expect)
        for key in keys:
            a = grid.get(key, ZERO)
            b = expect.get(key, ZERO)
            assert a == b, key


def test_casimir_is_symmetric_tensor():
    for model in (sl_model(3), o_model(5)):
        om = model.casimir()
        assert om.transpose21() == om


# ---------------------------------------------------------------------------
# adjoint action
# ---------------------------------------------------------------------------


def unipotent(model, idx, c):
    """exp(c * b_idx) for a root vector with b^2 having tiny support."""
    b = model.basis_matrix(idx)
    x = GMatrix.identity(model.n, prec=model.prec) + b.scale(c)
    b2 = b @ b
    if not b2.is_zero():
        x = x + b2.scale(c * c * GaussRat(Fraction(1, 2)))
        b3 = b2 @ b
        assert b3.is_zero()
    return x


def test_adjoint_sl2_frozen():
    g = sl_model(2)
    u = GMatrix([[ONE, ONE], [ZERO, ONE]])  # exp(e)
    h = g.basis_matrix(2)
    out = g.adjoint_act(u, h)
    # Ad(exp e) h = h - 2e
    assert g.coords(out) == {2: ONE, 0: const(-2)}


def test_adjoint_requires_span():
    o4 = o_model(4)
    bad = GMatrix.diagonal([const(2), ONE, ONE, ONE])
    with pytest.raises(NotInSpan):
        o4.adjoint_act(bad, o4.basis_matrix(0))


def test_adjoint_preserves_form():
    rng = random.Random(31)
    for model in (sl_model(3), o_model(5)):
        ad = None
        g = GMatrix.identity(model.n, prec=model.prec)
        for _ in range(4):
            idx = rng.randrange(2 * model.npos)
            g = g @ unipotent(model, idx, GaussRat(rng.randint(-2, 2)))
        for _ in range(10):
            x = model.basis_matrix(rng.randrange(model.dim))
            y = model.basis_matrix(rng.randrange(model.dim))
            gx = model.adjoint_act(g, x)
            gy = model.adjoint_act(g, y)
            assert model.form(gx, gy) == model.form(x, y)


def test_ad_matrix_identity():
    model = sl_model(2)
    a = model.ad_matrix(GMatrix.identity(2))
    for i in range(3):
        for k in range(3):
            assert a[i][k] == (ONE if i == k else ZERO)


def test_group_contains():
    sl = sl_model(2)
    assert sl.group_contains(GMatrix([[ONE, ONE], [ZERO, ONE]]))
    assert not sl.group_contains(GMatrix([[ONE, ONE], [ONE, ONE]]))
    o4 = o_model(4)
    u = unipotent(o4, 0, GaussRat(3))
    assert o4.group_contains(u)
    assert not o4.group_contains(GMatrix.diagonal([const(2), ONE, ONE, ONE]))
    # torus elements diag(t, 1, 1, 1/t) preserve the antidiagonal form
    t = GMatrix.diagonal([const(2), ONE, ONE, const(Fraction(1, 2))])
    assert o4.group_contains(t)


# ---------------------------------------------------------------------------
# tensors
# ---------------------------------------------------------------------------


def test_tensor_ops():
    t = Tensor2(3, {(0, 1): ONE, (2, 2): const(2)})
    s = t.transpose21()
    assert s.get(1, 0) == ONE and s.get(2, 2) == const(2)
    assert (t - t).is_zero()
    w = wedge(3, 0, 1, ONE)
    assert w.transpose21() == -w
    assert t.scale(const(3)).get(2, 2) == const(6)


# ---------------------------------------------------------------------------
# two-cocycle check
# ---------------------------------------------------------------------------


def test_parabolic_form_is_cocycle():
    g = sl_model(2)
    h = g.basis_matrix(2)
    e = g.basis_matrix(0)
    two = const(2)
    gram = [[ZERO, two], [two, ZERO]]
    rep = check_two_cocycle([h, e], gram)
    assert rep.identity_zero
    assert rep.nondegenerate
    assert rep.is_cocycle


def test_trace_form_on_sl2_is_not_cocycle():
    g = sl_model(2)
    e, f, h = (g.basis_matrix(i) for i in range(3))
    # Gram of tr(xy) in the order (e, f, h)
    gram = [[ZERO, ONE, ZERO], [ONE, ZERO, ZERO], [ZERO, ZERO, const(2)]]
    rep = check_two_cocycle([e, f, h], gram)
    assert not rep.identity_zero
    assert rep.nondegenerate
    assert not rep.is_cocycle


def test_not_closed():
    g = sl_model(2)
    e, f = g.basis_matrix(0), g.basis_matrix(1)
    with pytest.raises(NotClosed):
        check_two_cocycle([e, f], [[ZERO, ONE], [ONE, ZERO]])


def test_span_coords():
    g = sl_model(2)
    e, h = g.basis_matrix(0), g.basis_matrix(2)
    x = e.scale(const(3)) + h.scale(const(-1))
    c = span_coords([e, h], x)
    assert c == [const(3), const(-1)]
