"""Conjugation cocycles over r-matrix centralizers and their normal forms.

For an invertible matrix X with entries in K[j] (j^2 = h), the residue
X^{-1} sigma2(X) measures how far X is from being defined over K.  When
that residue lands in the centralizer of an r-matrix r, X transports r to
an equivalent solution, and two such X count as equivalent when they
differ by a K-matrix on the left and a centralizer element on the right.
This module decides the residue condition exactly and constructs the
factorizations that separate the equivalence classes: always a single
class for the sl model and for even orthogonal models, a two-class
dichotomy read off the middle diagonal slot for odd orthogonal ones.

All verifications are exact; every returned witness recombines to the
input matrix with zero residual.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import linalg
from .errors import (
    BadNorm,
    Inconsistent,
    InvalidParam,
    KindMismatch,
    NoExactRoot,
    NotCocycle,
    NotInSpan,
    NotOrthogonal,
    NotReducible,
    PivotUnavailable,
    Singular,
    UnsupportedRank,
)
from .liealg import LieAlgebraModel, _lead_position
from .matrices import GMatrix, antidiag_form, check_orthogonal
from .rmatrix import AdmissibleTriple, build_rbd, rdj, solve_r0, validate_triple
from .scalars import (
    DEFAULT_PRECISION,
    AlgebraKind,
    ExtScalar,
    GaussRat,
    LaurentScalar,
    classify_quadratic,
    invert,
)
from .tensors import Tensor2

TRIVIAL = "TRIVIAL"
NONTRIVIAL = "NONTRIVIAL"
UNRESOLVED = "UNRESOLVED"

_RAM = AlgebraKind.RAMIFIED


def _inv(c):
    return c.invert() if isinstance(c, ExtScalar) else invert(c)


def _is_unit(c) -> bool:
    return c.is_unit() if isinstance(c, ExtScalar) else not c.is_zero()


def _one_like(c):
    if isinstance(c, ExtScalar):
        return ExtScalar.one(c.kind, max(1, c.prec))
    return LaurentScalar.one(max(1, c.prec))


def _emb(c: LaurentScalar) -> ExtScalar:
    return ExtScalar.from_base(_RAM, c)


def _ramified(x: GMatrix) -> GMatrix:
    if x.kind is None:
        return x.promote(_RAM)
    if x.kind is not _RAM:
        raise KindMismatch("entries must lie in K or in K[j]")
    return x


def rbd_standard(model: LieAlgebraModel, triple: AdmissibleTriple) -> Tensor2:
    """The triple's r-matrix at the zero point of its parameter space."""
    dof = solve_r0(model, triple).dof
    return build_rbd(model, triple, [0] * dof)


# ---------------------------------------------------------------------------
# centralizer membership
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CentralizerPattern:
    """Shape of the diagonal centralizer of an r-matrix.

    For the sl model the ratios s_i = t_i / t_{i+1} of a member
    diag(t_1, ..., t_n) must agree within each linked class of slots.
    For the o model a member must be conformal, t_i * t_{n+1-i} = c for a
    single unit c, and each pinned slot must satisfy t^2 = c (so t = +-1
    once c = 1).  The induced predicate agrees exactly with tensor-fixing.
    """

    family: str  # "sl" or "o"
    size: int  # matrix size n
    classes: Tuple[Tuple[int, ...], ...] = ()
    forced_sign: Tuple[int, ...] = ()

    def contains_diagonal(self, diag: List) -> bool:
        n = self.size
        if len(diag) != n:
            raise InvalidParam(f"expected {n} diagonal entries, got {len(diag)}")
        if any(not _is_unit(t) for t in diag):
            return False
        if self.family == "sl":
            ratios = [diag[i] * _inv(diag[i + 1]) for i in range(n - 1)]
            for cls in self.classes:
                first = ratios[cls[0]]
                if any(ratios[i] != first for i in cls[1:]):
                    return False
            return True
        c = diag[0] * diag[n - 1]
        for i in range(1, n):
            if diag[i] * diag[n - 1 - i] != c:
                return False
        for slot in self.forced_sign:
            if diag[slot] * diag[slot] != c:
                return False
        return True


def centralizer_pattern_sl(triple: AdmissibleTriple) -> CentralizerPattern:
    """Linked ratio slots of the diagonal centralizer, from the tau graph."""
    rank = triple.rank
    parent = list(range(rank))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in triple.tau:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: Dict[int, List[int]] = {}
    for i in range(rank):
        groups.setdefault(find(i), []).append(i)
    classes = tuple(tuple(g) for _, g in sorted(groups.items()))
    return CentralizerPattern(family="sl", size=rank + 1, classes=classes)


def centralizer_pattern_o(
    model: LieAlgebraModel, triple: AdmissibleTriple
) -> CentralizerPattern:
    """Diagonal centralizer shape for the o model.

    Supported: the empty triple (every conformal diagonal) and the
    D-system triple swapping the two fork roots, which pins the two
    middle slots to square roots of the conformal scalar.
    """
    if model.family != "o":
        raise UnsupportedRank("the pattern is defined for the o model")
    n = model.n
    if triple.is_empty:
        return CentralizerPattern(family="o", size=n)
    m = model.m
    fork = AdmissibleTriple.make(triple.family, m, {m - 2: m - 1})
    if n % 2 == 0 and triple == fork:
        return CentralizerPattern(family="o", size=n, forced_sign=(m - 1,))
    raise UnsupportedRank(
        "only the empty triple and the fork-swap triple are supported"
    )


def _diag_member(model: LieAlgebraModel, x: GMatrix, r: Tensor2) -> Optional[bool]:
    """Fast membership test for diagonal x; None when not applicable."""
    d = x.diagonal_entries()
    if any(not _is_unit(t) for t in d):
        return False
    if model.family == "o":
        n = model.n
        c0 = d[0] * d[n - 1]
        for i in range(1, n):
            if d[i] * d[n - 1 - i] != c0:
                # conjugation may leave the model span; use the full test
                return None
    one = _one_like(d[0])
    dinv = [_inv(t) for t in d]
    nroot = 2 * model.npos
    chi_cache: Dict[int, object] = {}

    def chi(t: int):
        if t >= nroot:
            return one
        if t not in chi_cache:
            p, q = _lead_position(model.basis[t])
            chi_cache[t] = d[p] * dinv[q]
        return chi_cache[t]

    for (a, b), c in r.coeffs.items():
        if c.is_zero():
            continue
        if chi(a) * chi(b) != one:
            return False
    return True


def centralizer_member(model: LieAlgebraModel, x: GMatrix, r: Tensor2) -> bool:
    """Whether conjugation by x fixes the tensor r exactly."""
    kind = x.kind if x.kind is not None else r.kind
    rr = r.promote(kind) if (kind is not None and r.kind is None) else r
    xx = x.promote(kind) if (kind is not None and x.kind is None) else x
    if xx.kind is not rr.kind:
        raise KindMismatch("matrix and tensor live over different extensions")
    if xx.is_diagonal():
        fast = _diag_member(model, xx, rr)
        if fast is not None:
            return fast
    xi = xx.inv()  # Singular propagates
    needed = {a for (a, b) in rr.coeffs} | {b for (a, b) in rr.coeffs}
    images: Dict[int, Dict[int, object]] = {}
    for t in needed:
        bt = model.basis_matrix(t)
        if xx.kind is not None:
            bt = bt.promote(xx.kind)
        try:
            images[t] = model.coords(xx @ bt @ xi)
        except NotInSpan:
            return False
    acc: Dict[Tuple[int, int], object] = {}
    for (a, b), c in rr.coeffs.items():
        for ia, ca in images[a].items():
            cca = c * ca
            for ib, cb in images[b].items():
                key = (ia, ib)
                prev = acc.get(key)
                acc[key] = cca * cb if prev is None else prev + cca * cb
    return Tensor2(model.dim, acc, xx.kind) == rr


# ---------------------------------------------------------------------------
# cocycles and their factorizations
# ---------------------------------------------------------------------------


@dataclass
class CocycleReport:
    """Outcome of a cocycle check or a class normalization.

    When outcome is TRIVIAL, x = witness_q @ witness_c exactly; when
    NONTRIVIAL, x = witness_q @ witness_x0 @ witness_c exactly.  The
    galois_checks list holds the conjugation residues that were tested.
    """

    is_cocycle: bool
    galois_checks: List[Tuple[str, GMatrix]] = field(default_factory=list)
    outcome: Optional[str] = None
    witness_q: Optional[GMatrix] = None
    witness_c: Optional[GMatrix] = None
    witness_x0: Optional[GMatrix] = None
    note: str = ""


def is_bd_cocycle(model: LieAlgebraModel, x: GMatrix, r: Tensor2) -> CocycleReport:
    """Whether the residue X^{-1} sigma2(X) centralizes r.

    Matrices over K are always cocycles (the residue is the identity);
    only the quadratic-layer generator sigma2 needs checking for K[j]
    entries, since K itself is fixed by the whole conjugation action.
    """
    xx = _ramified(x)
    res = xx.inv() @ xx.sigma2()
    ok = centralizer_member(model, res, r)
    return CocycleReport(is_cocycle=ok, galois_checks=[("sigma2", res)])


def factor_QD(x: GMatrix) -> Tuple[GMatrix, GMatrix]:
    """Split x = Q @ D with Q over K and D diagonal over K[j].

    Requires the residue X^{-1} sigma2(X) to be diagonal; each column is
    then a K-multiple of its pivot entry (smallest row index with a
    nonzero entry), so dividing columns by their pivots lands in K.
    """
    xx = _ramified(x)
    res = xx.inv() @ xx.sigma2()  # Singular propagates
    if not res.is_diagonal():
        raise NotReducible("the residue X^{-1} sigma2(X) is not diagonal")
    n = xx.rows
    pivots = []
    for k in range(n):
        p = next(
            (i for i in range(n) if not xx.entries[i][k].is_zero()), None
        )
        if p is None:
            raise PivotUnavailable(f"column {k + 1} has no nonzero entry")
        pivots.append(xx.entries[p][k])
    pinv = [c.invert() for c in pivots]
    q_ext = GMatrix(
        [[xx.entries[i][k] * pinv[k] for k in range(n)] for i in range(n)],
        _RAM,
    )
    if not q_ext.in_base():
        raise NotReducible("column ratios do not all lie in K")
    return q_ext.demote(), GMatrix.diagonal(pivots, _RAM)


def normalize_sl(
    model: LieAlgebraModel, x: GMatrix, triple: AdmissibleTriple
) -> CocycleReport:
    """Factor an sl-model cocycle as (K matrix) @ (centralizer member).

    After x = Q @ D, the diagonal D is corrected slot class by slot
    class: within each linked class the ratio s_i / s_ref lies in K, so a
    K-diagonal moves all ratios of the class onto the reference one.  The
    residual diagonal then satisfies the pattern and the class is always
    TRIVIAL; a failed K-membership check (impossible for true cocycles)
    is reported as UNRESOLVED instead of guessed.
    """
    if model.family != "sl":
        raise UnsupportedRank("normalize_sl needs the sl model")
    problems = validate_triple(model.roots, triple)
    if problems:
        raise InvalidParam("; ".join(problems))
    r = rbd_standard(model, triple)
    report = is_bd_cocycle(model, x, r)
    if not report.is_cocycle:
        raise NotCocycle("the residue X^{-1} sigma2(X) does not centralize r")
    q, d = factor_QD(x)
    dd = d.diagonal_entries()
    n = model.n
    prec = max(1, min(e.prec for e in dd))
    one_k = LaurentScalar.one(prec)
    ratios = [dd[i] * dd[i + 1].invert() for i in range(n - 1)]
    pattern = centralizer_pattern_sl(triple)
    kappa = [one_k] * (n - 1)
    for cls in pattern.classes:
        ref = cls[0]
        ref_inv = ratios[ref].invert()
        for i in cls[1:]:
            ratio = ratios[i] * ref_inv
            if not ratio.in_base():
                report.outcome = UNRESOLVED
                report.note = (
                    f"the ratio of linked slots ({ref + 1},{i + 1}) left K; "
                    "no K-splitting was found"
                )
                return report
            kappa[i] = ratio.base_part()
    scale = [one_k] * n
    for i in range(n - 2, -1, -1):
        scale[i] = kappa[i] * scale[i + 1]
    dk = GMatrix.diagonal(scale)
    qk = q @ dk
    c = GMatrix.diagonal(
        [dd[i] * _emb(invert(scale[i])) for i in range(n)], _RAM
    )
    if qk.promote(_RAM) @ c != _ramified(x) or not centralizer_member(
        model, c, r
    ):
        report.outcome = UNRESOLVED
        report.note = "the class-wise splitting failed to recombine"
        return report
    report.outcome = TRIVIAL
    report.witness_q = qk
    report.witness_c = c
    return report


def _pairing_scalars(model: LieAlgebraModel, q: GMatrix) -> List[LaurentScalar]:
    """k_i = B(q_i, q_{n+1-i}) for the columns of the K factor."""
    qs = q.transpose() @ model.S @ q
    n = model.n
    out = []
    for i in range(n):
        c = qs.entries[i][n - 1 - i]
        if c.is_zero():
            raise NotCocycle(f"degenerate column pairing at slot {i + 1}")
        out.append(c)
    return out


def _scaled_split(
    model: LieAlgebraModel, q: GMatrix, d: GMatrix, mid_factor: Optional[LaurentScalar]
) -> Tuple[GMatrix, GMatrix]:
    """Rebalance x = q @ d into (orthogonal K matrix) @ (diagonal).

    First-half columns are scaled by the inverse pairing scalars; the
    middle slot of an odd model absorbs mid_factor.  Returns (y, d1) with
    y = q @ q1 over K and d1 = q1^{-1} d.
    """
    n = model.n
    mid = n // 2
    k_pair = _pairing_scalars(model, q)
    factors = []
    for i in range(n):
        if i < mid:
            factors.append(invert(k_pair[i]))
        elif n % 2 and i == mid and mid_factor is not None:
            factors.append(mid_factor)
        else:
            factors.append(LaurentScalar.one(max(1, k_pair[i].prec)))
    q1 = GMatrix.diagonal(factors)
    y = q @ q1
    dd = d.diagonal_entries()
    d1 = GMatrix.diagonal(
        [dd[i] * _emb(invert(factors[i])) for i in range(n)], _RAM
    )
    return y, d1


def normalize_o_even(model: LieAlgebraModel, x: GMatrix) -> CocycleReport:
    """Reduce an even orthogonal cocycle; the class is always TRIVIAL.

    The pairing scalars of the K factor's columns are exactly the inverse
    products of opposite diagonal slots, so scaling the first half of the
    columns by their inverses makes the K factor orthogonal and leaves a
    diagonal centralizer member behind.
    """
    if model.family != "o" or model.n % 2:
        raise UnsupportedRank("normalize_o_even needs an even o model")
    xx = _ramified(x)
    if not check_orthogonal(xx, model.S):
        raise NotOrthogonal("X^T S X != S")
    r = rdj(model)
    report = is_bd_cocycle(model, xx, r)
    if not report.is_cocycle:
        raise NotCocycle("the residue X^{-1} sigma2(X) does not centralize r")
    q, d = factor_QD(xx)
    y, d1 = _scaled_split(model, q, d, None)
    if (
        not check_orthogonal(y, model.S)
        or y.promote(_RAM) @ d1 != xx
        or not centralizer_member(model, d1, r)
    ):
        report.outcome = UNRESOLVED
        report.note = "the orthogonal rebalancing failed to recombine"
        return report
    report.outcome = TRIVIAL
    report.witness_q = y
    report.witness_c = d1
    return report


def classify_o_odd(model: LieAlgebraModel, x: GMatrix) -> CocycleReport:
    """Two-class dichotomy for odd orthogonal cocycles.

    After x = Q @ D the middle diagonal entry is pure: its square lies in
    K, so it lies in K (even valuation of the square) or in jK (odd).
    The K case reduces to an orthogonal K matrix times a centralizer
    member; the jK case is inequivalent to it and is reported with the
    canonical middle-column witness.
    """
    if model.family != "o" or model.n % 2 == 0:
        raise UnsupportedRank("classify_o_odd needs an odd o model")
    xx = _ramified(x)
    if not check_orthogonal(xx, model.S):
        raise NotOrthogonal("X^T S X != S")
    r = rdj(model)
    report = is_bd_cocycle(model, xx, r)
    if not report.is_cocycle:
        raise NotCocycle("the residue X^{-1} sigma2(X) does not centralize r")
    q, d = factor_QD(xx)
    mid = model.n // 2
    dm = d.diagonal_entries()[mid]
    if not dm.a.is_zero() and not dm.b.is_zero():
        raise NotCocycle("the middle diagonal entry is neither in K nor in jK")
    if dm.b.is_zero():
        y, d1 = _scaled_split(model, q, d, dm.base_part())
        if (
            not check_orthogonal(y, model.S)
            or y.promote(_RAM) @ d1 != xx
            or not centralizer_member(model, d1, r)
        ):
            report.outcome = UNRESOLVED
            report.note = "the orthogonal rebalancing failed to recombine"
            return report
        report.outcome = TRIVIAL
        report.witness_q = y
        report.witness_c = d1
        return report
    # middle entry in jK: the class of the canonical middle-column matrix
    x0 = build_X0_odd(mid, prec=xx.prec)
    _, d1 = _scaled_split(model, q, d, dm.b)
    q2 = (xx @ d1.inv() @ x0.inv()).demote()
    if not check_orthogonal(q2, model.S):
        raise NotCocycle("the jK-branch witness is not orthogonal over K")
    report.outcome = NONTRIVIAL
    report.witness_q = q2
    report.witness_x0 = x0
    report.witness_c = d1
    return report


# ---------------------------------------------------------------------------
# the odd middle-column construction
# ---------------------------------------------------------------------------


def _bil(u: List[LaurentScalar], v: List[LaurentScalar]) -> LaurentScalar:
    n = len(u)
    acc = None
    for i in range(n):
        term = u[i] * v[n - 1 - i]
        acc = term if acc is None else acc + term
    return acc


def _independent_subset(
    vectors: List[List[LaurentScalar]], want: int, ops: linalg.FieldOps
) -> List[List[LaurentScalar]]:
    picked: List[List[LaurentScalar]] = []
    for v in vectors:
        if len(picked) == want:
            break
        if linalg.rank(picked + [v], ops) > len(picked):
            picked.append(v)
    if len(picked) != want:
        raise Singular("projected vectors do not span the expected complement")
    return picked


def _isotropic_vector(
    work: List[List[LaurentScalar]], gram: List[List[LaurentScalar]]
) -> List[LaurentScalar]:
    """A nonzero vector of zero length in the span, with K coordinates.

    Tries the diagonal first, then every two-slot plane through a root of
    the induced quadratic.  When every two-slot discriminant has odd
    valuation the block is anisotropic over K and no such vector exists.
    """
    d = len(work)
    for i in range(d):
        if gram[i][i].is_zero():
            return list(work[i])
    half = GaussRat(Fraction(1, 2))
    for i in range(d):
        for k in range(d):
            if i == k:
                continue
            gk_inv = invert(gram[k][k])
            p = (gram[i][k] + gram[k][i]) * gk_inv
            qq = gram[i][i] * gk_inv
            witness = classify_quadratic(p, qq)
            if witness.kind is AlgebraKind.SPLIT:
                t = witness.roots[0]
            elif witness.kind is AlgebraKind.DUAL_NUMBERS:
                t = -(p * half)
            else:
                continue
            return [work[i][s] + t * work[k][s] for s in range(len(work[i]))]
    raise NoExactRoot(
        f"the remaining {d}-dimensional block is anisotropic over K: every "
        "two-slot discriminant has odd valuation (square class h times a "
        "unit), so no isotropic vector with K coordinates exists and the "
        "hyperbolic completion cannot proceed"
    )


def build_X0_odd(
    nhalf: int, s: Optional[List[LaurentScalar]] = None, prec: int = DEFAULT_PRECISION
) -> GMatrix:
    """Middle-column cocycle candidate for the odd orthogonal model.

    Starting from a K-vector s with B(s, s) = h^{-1}, the orthogonal
    complement of s would have to split into hyperbolic planes over K to
    complete j*s to a matrix in O(2*nhalf+1, K[j]) whose residue is
    diag(1, ..., -1, ..., 1).  The complement carries the discriminant of
    s, whose square class is h; its final plane is therefore anisotropic
    over K and the completion fails with NoExactRoot at that point.
    """
    if nhalf < 1:
        raise InvalidParam("the matrix size 2*nhalf+1 needs nhalf >= 1")
    n = 2 * nhalf + 1
    zero = LaurentScalar.zero(prec)
    one = LaurentScalar.one(prec)
    if s is None:
        s = [zero] * n
        s[0] = one
        s[-1] = LaurentScalar.monomial(GaussRat(Fraction(1, 2)), -1, prec)
    if len(s) != n:
        raise InvalidParam(f"expected a vector of length {n}")
    hinv = LaurentScalar.monomial(GaussRat(1), -1, prec)
    if _bil(s, s) != hinv:
        raise BadNorm("B(s, s) must equal h^{-1} exactly")
    ops = linalg.laurent_ops(prec)
    row = [s[n - 1 - i] for i in range(n)]
    work = [list(v) for v in linalg.nullspace([row], ops)]
    half = GaussRat(Fraction(1, 2))
    pairs: List[Tuple[List[LaurentScalar], List[LaurentScalar]]] = []
    while work:
        gram = [[_bil(u, v) for v in work] for u in work]
        a = _isotropic_vector(work, gram)
        b = None
        for cand in work:
            c = _bil(a, cand)
            if not c.is_zero():
                b = [t * invert(c) for t in cand]
                break
        if b is None:
            raise Singular("degenerate pairing while completing the basis")
        nb = _bil(b, b) * half
        b = [b[t] - nb * a[t] for t in range(n)]
        pairs.append((a, b))
        projected = []
        for u in work:
            ca, cb = _bil(u, b), _bil(u, a)
            projected.append(
                [u[t] - ca * a[t] - cb * b[t] for t in range(n)]
            )
        work = _independent_subset(projected, len(work) - 2, ops)
    cols: List[Optional[List[ExtScalar]]] = [None] * n
    for p, (a, b) in enumerate(pairs):
        cols[p] = [_emb(t) for t in a]
        cols[n - 1 - p] = [_emb(t) for t in b]
    cols[nhalf] = [ExtScalar(_RAM, zero, t) for t in s]
    x0 = GMatrix([[cols[k][i] for k in range(n)] for i in range(n)], _RAM)
    if not check_orthogonal(x0, antidiag_form(n, prec)):
        raise Inconsistent("the completed columns do not satisfy X^T S X = S")
    res = x0.inv() @ x0.sigma2()
    expect = [ExtScalar.one(_RAM, prec)] * n
    expect[nhalf] = -expect[nhalf]
    if res != GMatrix.diagonal(expect, _RAM):
        raise Inconsistent("the completed matrix has the wrong residue")
    return x0


# ---------------------------------------------------------------------------
# the even fork-swap example
# ---------------------------------------------------------------------------


def fork_triple(rank: int) -> AdmissibleTriple:
    """D-system triple swapping the two fork roots."""
    if rank < 2:
        raise InvalidParam("the fork swap needs rank >= 2")
    return AdmissibleTriple.make("D", rank, {rank - 2: rank - 1})


def x0_even(n: int, prec: int = DEFAULT_PRECISION) -> GMatrix:
    """diag(1, ..., 1, j, j^{-1}, 1, ..., 1): the canonical even cocycle."""
    if n % 2 or n < 4:
        raise InvalidParam("an even size of at least 4 is required")
    m = n // 2
    one = ExtScalar.one(_RAM, prec)
    diag = [one] * n
    diag[m - 1] = ExtScalar.j(prec)
    diag[m] = diag[m - 1].invert()
    return GMatrix.diagonal(diag, _RAM)


def classify_o_even_example(model: LieAlgebraModel, x: GMatrix) -> CocycleReport:
    """Classify cocycles of the fork-swap r-matrix on an even o model.

    The fork-swap centralizer pins the two middle diagonal slots to
    square roots of the conformal scalar, so after the orthogonal
    rebalancing the slot-m entry is +-1 times an element of K or of jK.
    The K case splits off an orthogonal K factor (TRIVIAL); the jK case
    is the class of x0_even (NONTRIVIAL), with exact witnesses either way.
    """
    if model.family != "o" or model.n % 2:
        raise UnsupportedRank("the fork-swap example needs an even o model")
    n = model.n
    m = model.m
    xx = _ramified(x)
    if not check_orthogonal(xx, model.S):
        raise NotOrthogonal("X^T S X != S")
    r = rbd_standard(model, fork_triple(m))
    report = is_bd_cocycle(model, xx, r)
    if not report.is_cocycle:
        raise NotCocycle("the residue X^{-1} sigma2(X) does not centralize r")
    q, d = factor_QD(xx)
    y, d1 = _scaled_split(model, q, d, None)
    if not check_orthogonal(y, model.S) or y.promote(_RAM) @ d1 != xx:
        report.outcome = UNRESOLVED
        report.note = "the orthogonal rebalancing failed to recombine"
        return report
    sm = d1.diagonal_entries()[m - 1]
    prec = max(1, sm.prec)
    one = LaurentScalar.one(prec)
    if not sm.a.is_zero() and not sm.b.is_zero():
        raise NotCocycle("the pinned slot is neither in K nor in jK")
    if sm.b.is_zero():
        u = sm.base_part()
        d2 = [one] * n
        d2[m - 1] = u
        d2[m] = invert(u)
        d2_mat = GMatrix.diagonal(d2)
        witness_q = y @ d2_mat
        witness_c = d2_mat.promote(_RAM).inv() @ d1
        if (
            witness_q.promote(_RAM) @ witness_c != xx
            or not centralizer_member(model, witness_c, r)
        ):
            report.outcome = UNRESOLVED
            report.note = "the K-branch splitting failed to recombine"
            return report
        report.outcome = TRIVIAL
        report.witness_q = witness_q
        report.witness_c = witness_c
        return report
    u = sm.b  # sm = j * u with u in K
    d2 = [one] * n
    d2[m - 1] = u
    d2[m] = invert(u)
    d2_mat = GMatrix.diagonal(d2)
    x0 = x0_even(n, prec)
    witness_q = y @ d2_mat
    witness_c = x0.inv() @ d2_mat.promote(_RAM).inv() @ d1
    if (
        witness_q.promote(_RAM) @ x0 @ witness_c != xx
        or not centralizer_member(model, witness_c, r)
    ):
        report.outcome = UNRESOLVED
        report.note = "the jK-branch splitting failed to recombine"
        return report
    report.outcome = NONTRIVIAL
    report.witness_q = witness_q
    report.witness_x0 = x0
    report.witness_c = witness_c
    return report
