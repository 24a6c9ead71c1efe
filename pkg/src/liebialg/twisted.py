"""Real forms inside the quadratic doubling and twisted cocycle classes.

Over A = K[j] (j^2 = h) the matrix algebra sl(n, A) doubles sl(n, K).
This module builds the embedded fixed form

    L = {Z in sl(n, A) : Z = S conj(Z) S},

with S the flip permutation matrix, together with Lagrangian complements
of L for the pairing that extracts the doubling layer of the trace form.
On top of that sits the twisted cocycle theory: invertible X whose
conjugation residue X^{-1} sigma2(X) transports an r-matrix onto its slot
swap rather than fixing it.  For the standard r-matrix every such X
factors as Q X0(n) D' with Q over K and D' diagonal, so the twisted
classes collapse to a single point with explicit witnesses; the factoring
routine returns those witnesses and checks the recombination exactly.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import linalg
from .errors import (
    DependentGenerators,
    InvalidParam,
    KindMismatch,
    NotTwistedCocycle,
)
from .liealg import LieAlgebraModel, _lead_position, sl_model
from .matrices import GMatrix
from .rmatrix import AdmissibleTriple, rdj
from .scalars import (
    DEFAULT_PRECISION,
    AlgebraKind,
    ExtScalar,
    GaussRat,
    LaurentScalar,
    _rat,
)
from .tensors import Tensor2

_RAM = AlgebraKind.RAMIFIED
_HALF = GaussRat(_rat(1) / 2, 0)


def s_matrix(n: int, prec: int = DEFAULT_PRECISION) -> GMatrix:
    """The flip permutation matrix: ones on the antidiagonal."""
    one = LaurentScalar.one(prec)
    zero = LaurentScalar.zero(prec)
    return GMatrix(
        [[one if k == n - 1 - i else zero for k in range(n)] for i in range(n)]
    )


def _ramified(x: GMatrix) -> GMatrix:
    if x.kind is None:
        return x.promote(_RAM)
    if x.kind is not _RAM:
        raise KindMismatch("entries must lie in K or in K[j]")
    return x


def transport_tensor(model: LieAlgebraModel, g: GMatrix, r: Tensor2) -> Tensor2:
    """(Ad_g (x) Ad_g)(r) in basis coordinates.

    Conjugation must keep every needed basis element inside the model
    span; for the full matrix models it always does.
    """
    kind = g.kind if g.kind is not None else r.kind
    rr = r.promote(kind) if (kind is not None and r.kind is None) else r
    gg = g.promote(kind) if (kind is not None and g.kind is None) else g
    if gg.kind is not rr.kind:
        raise KindMismatch("matrix and tensor live over different extensions")
    gi = gg.inv()
    needed = {a for (a, b) in rr.coeffs} | {b for (a, b) in rr.coeffs}
    images: Dict[int, Dict[int, object]] = {}
    for t in sorted(needed):
        bt = model.basis_matrix(t)
        if kind is not None:
            bt = bt.promote(kind)
        images[t] = model.coords(gg @ bt @ gi)
    acc: Dict[Tuple[int, int], object] = {}
    for (a, b), c in rr.coeffs.items():
        for ia, ca in images[a].items():
            cca = c * ca
            for ib, cb in images[b].items():
                key = (ia, ib)
                prev = acc.get(key)
                v = cca * cb
                acc[key] = v if prev is None else prev + v
    return Tensor2(model.dim, acc, kind)


# ---------------------------------------------------------------------------
# the embedded form L and its basis
# ---------------------------------------------------------------------------


def _trace(x: GMatrix):
    t = x.entries[0][0]
    for i in range(1, x.rows):
        t = t + x.entries[i][i]
    return t


def check_L_member(z: GMatrix) -> bool:
    """Whether z lies in the fixed form L: traceless and z = S conj(z) S.

    Entrywise the relation reads z[i,k] = conj(z[n-1-i, n-1-k]), so each
    cell is tied to its antipodal mirror.
    """
    zz = _ramified(z)
    if not _trace(zz).is_zero():
        return False
    s = s_matrix(zz.rows, max(1, zz.prec)).promote(_RAM)
    return zz == s @ zz.sigma2() @ s


def _cell(n: int, i: int, k: int, c: ExtScalar, prec: int) -> GMatrix:
    z = ExtScalar.zero(_RAM, prec)
    return GMatrix(
        [[c if (i, k) == (r, s) else z for s in range(n)] for r in range(n)],
        _RAM,
    )


def L_cartan_basis(n: int, prec: int = DEFAULT_PRECISION) -> List[GMatrix]:
    """Diagonal members of L: mirror-symmetric K part, mirror-skew j part.

    A diagonal diag(d_1..d_n) lies in L iff d_i = conj(d_{n+1-i}); with the
    trace condition this leaves n - 1 generators over K.
    """
    one = ExtScalar.one(_RAM, prec)
    jj = ExtScalar.j(prec)
    two = one + one
    m = n // 2
    pal = []  # palindromic real diagonal blocks, trace 2 (or 1 at the center)
    for i in range(m):
        pal.append(_cell(n, i, i, one, prec) + _cell(n, n - 1 - i, n - 1 - i, one, prec))
    gens: List[GMatrix] = []
    for i in range(m - 1):
        gens.append(pal[i] - pal[i + 1])
    if n % 2 and m >= 1:
        center = _cell(n, m, m, one, prec)
        gens.append(pal[m - 1] - center.scale(two))
    for i in range(m):
        gens.append(_cell(n, i, i, jj, prec) - _cell(n, n - 1 - i, n - 1 - i, jj, prec))
    return gens


def L_basis(n: int, prec: int = DEFAULT_PRECISION) -> List[GMatrix]:
    """A K-basis of L = {Z : Z = S conj(Z) S, tr Z = 0}; n^2 - 1 members.

    Off-diagonal cells pair with their antipodal mirrors: each unordered
    pair contributes e + e' and j(e - e').  The diagonal part comes from
    L_cartan_basis.
    """
    one = ExtScalar.one(_RAM, prec)
    jj = ExtScalar.j(prec)
    gens: List[GMatrix] = []
    seen = set()
    for i in range(n):
        for k in range(n):
            if i == k:
                continue
            pair = frozenset(((i, k), (n - 1 - i, n - 1 - k)))
            if pair in seen:
                continue
            seen.add(pair)
            a = _cell(n, i, k, one, prec)
            b = _cell(n, n - 1 - i, n - 1 - k, one, prec)
            gens.append(a + b)
            gens.append((a - b).scale(jj))
    gens.extend(L_cartan_basis(n, prec))
    return gens


def build_X0_twisted(n: int, prec: int = DEFAULT_PRECISION) -> GMatrix:
    """The canonical sparse pattern with conj(X0) = X0 S.

    With m = ceil(n/2) and rows counted from 1: the diagonal holds 1 up to
    row m and -j below, the antidiagonal holds 1 up to row m and j below.
    For odd n the two diagonals share the center cell, which holds a
    single 1.
    """
    if n < 2:
        raise InvalidParam("pattern needs n >= 2")
    one = ExtScalar.one(_RAM, prec)
    jj = ExtScalar.j(prec)
    zero = ExtScalar.zero(_RAM, prec)
    m = (n + 1) // 2
    rows = [[zero for _ in range(n)] for _ in range(n)]
    for k in range(1, n + 1):
        rows[k - 1][k - 1] = one if k <= m else -jj
        rows[k - 1][n - k] = one if k <= m else jj
    return GMatrix(rows, _RAM)


def find_X_conj(n: int, prec: int = DEFAULT_PRECISION) -> GMatrix:
    """The pattern matrix, checked to straighten the fixed form.

    Verifies conj(X) = X S and that conjugation by X carries every basis
    member of L to a matrix with entries in K; since the map is injective
    and K-linear that lands bijectively on sl(n, K).
    """
    x = build_X0_twisted(n, prec)
    s = s_matrix(n, prec).promote(_RAM)
    if x.sigma2() != x @ s:
        raise NotTwistedCocycle("pattern fails conj(X) = X S")
    xi = x.inv()
    for g in L_basis(n, prec):
        if not (x @ g @ xi).in_base():
            raise NotTwistedCocycle(
                "conjugation by the pattern left the base field"
            )
    return x


# ---------------------------------------------------------------------------
# the doubling pairing and Lagrangian complements
# ---------------------------------------------------------------------------


@dataclass
class SubspaceSpec:
    """A K-subspace given by matrix generators."""

    generators: List[GMatrix]
    label: str = ""


def _second_part(s: ExtScalar) -> LaurentScalar:
    # the coefficient of the doubling generator: for split scalars the
    # components store the two evaluation slots, so recover (a - b)/2
    if s.kind is AlgebraKind.SPLIT:
        d = s.a - s.b
        return d * LaurentScalar.const(_HALF, max(1, d.prec))
    return s.b


def doubling_form(x: GMatrix, y: GMatrix) -> LaurentScalar:
    """Invariant pairing singling out the doubling layer of tr(xy)."""
    if x.kind is None or y.kind is None:
        raise KindMismatch("the pairing needs extension entries")
    return _second_part(_trace(x @ y))


def embedded_L(n: int, prec: int = DEFAULT_PRECISION) -> SubspaceSpec:
    return SubspaceSpec(L_basis(n, prec), label="L")


def default_W0(n: int, prec: int = DEFAULT_PRECISION) -> SubspaceSpec:
    """The standard Lagrangian complement W0 = j H(L) + N+.

    H(L) is the diagonal part of L; multiplying it by j gives a Lagrangian
    complement of H(L) inside the doubled diagonal.  N+ is the full upper
    triangular nilpotent part over K[j].
    """
    jj = ExtScalar.j(prec)
    one = ExtScalar.one(_RAM, prec)
    gens = [g.scale(jj) for g in L_cartan_basis(n, prec)]
    for i in range(n):
        for k in range(i + 1, n):
            e = _cell(n, i, k, one, prec)
            gens.append(e)
            gens.append(e.scale(jj))
    return SubspaceSpec(gens, label="W0")


def _k_flat(m: GMatrix) -> List[LaurentScalar]:
    out = [e.a for row in m.entries for e in row]
    out.extend(e.b for row in m.entries for e in row)
    return out


def lagrangian_check(
    w: SubspaceSpec,
    kind: AlgebraKind = _RAM,
    l_ref: Optional[SubspaceSpec] = None,
) -> Tuple[bool, bool, bool]:
    """(isotropic, subalgebra, transversal) for a generated subspace.

    Isotropy is the vanishing of the doubling pairing on all generator
    pairs; closure is a span membership test for every bracket; and
    transversality asks that the generators of w and of the reference
    form together span the doubled algebra with trivial intersection,
    both read off exact ranks over K.
    """
    gens = []
    for g in w.generators:
        if g.kind is None:
            gens.append(g.promote(kind))
        elif g.kind is kind:
            gens.append(g)
        else:
            raise KindMismatch("generator lives in a different extension")
    if not gens:
        raise DependentGenerators("no generators")
    n = gens[0].rows
    if l_ref is None:
        if kind is _RAM:
            l_ref = embedded_L(n, max(1, gens[0].prec))
        else:
            model = sl_model(n, max(1, gens[0].prec))
            l_ref = SubspaceSpec(
                [model.basis_matrix(t).promote(kind) for t in range(model.dim)],
                label="base",
            )
    refs = [g if g.kind is kind else g.promote(kind) for g in l_ref.generators]

    w_rows = [_k_flat(g) for g in gens]
    l_rows = [_k_flat(g) for g in refs]
    prec = max(1, min(g.prec for g in gens + refs))
    ops = linalg.laurent_ops(prec)
    rank_w = linalg.rank(w_rows, ops)
    if rank_w < len(w_rows):
        raise DependentGenerators("generators are linearly dependent over K")

    isotropic = True
    for i in range(len(gens)):
        for k in range(i, len(gens)):
            if not doubling_form(gens[i], gens[k]).is_zero():
                isotropic = False
                break
        if not isotropic:
            break

    subalgebra = True
    for i in range(len(gens)):
        for k in range(i + 1, len(gens)):
            br = gens[i] @ gens[k] - gens[k] @ gens[i]
            if not linalg.row_span_contains(w_rows, _k_flat(br), ops):
                subalgebra = False
                break
        if not subalgebra:
            break

    rank_l = linalg.rank(l_rows, ops)
    combined = linalg.rank(w_rows + l_rows, ops)
    ambient = 2 * (n * n - 1)
    transversal = combined == rank_w + rank_l and combined == ambient
    return isotropic, subalgebra, transversal


# ---------------------------------------------------------------------------
# twisted cocycles over the standard r-matrix
# ---------------------------------------------------------------------------


def lemma_S_twist(n: int, prec: int = DEFAULT_PRECISION) -> bool:
    """Conjugating the standard r-matrix by the flip swaps its slots.

    Checks (Ad_S (x) Ad_S) r = r^{21} exactly, together with the two
    ingredients: single root-vector terms map to their mirrored terms,
    and the Cartan part of the Casimir is a fixed point.
    """
    model = sl_model(n, prec)
    s = s_matrix(n, prec)
    r = rdj(model)
    if transport_tensor(model, s, r) != r.transpose21():
        return False
    # single-term flips e_ik (x) e_ki -> e_{i'k'} (x) e_{k'i'}
    nroot = 2 * model.npos
    rev = {_lead_position(model.basis[t]): t for t in range(nroot)}
    one = LaurentScalar.one(prec)
    for t in range(model.npos):
        i, k = _lead_position(model.basis[t])
        u = rev[(k, i)]
        src = Tensor2(model.dim, {(t, u): one})
        ti = rev[(n - 1 - i, n - 1 - k)]
        ui = rev[(n - 1 - k, n - 1 - i)]
        dst = Tensor2(model.dim, {(ti, ui): one})
        if transport_tensor(model, s, src) != dst:
            return False
    om0 = model.casimir0()
    return transport_tensor(model, s, om0) == om0


def verify_twisted_cocycle(
    x: GMatrix, r_bd: Tensor2, model: Optional[LieAlgebraModel] = None
) -> bool:
    """Whether the residue of x transports r_bd onto its slot swap.

    The residue is X^{-1} sigma2(X); only the quadratic layer generator
    needs checking, since entries over K[j] are fixed by the rest of the
    conjugation action.
    """
    xx = _ramified(x)
    if model is None:
        model = sl_model(xx.rows, max(1, xx.prec))
    res = xx.inv() @ xx.sigma2()  # Singular propagates
    lhs = transport_tensor(model, res, r_bd)
    rhs = r_bd.transpose21()
    if rhs.kind is None:
        rhs = rhs.promote(_RAM)
    return lhs == rhs


def build_twisted_r(
    x: GMatrix, r_bd: Tensor2, model: Optional[LieAlgebraModel] = None
) -> Tensor2:
    """The twisted r-matrix j (Ad_X (x) Ad_X)(r_bd).

    The result r satisfies r + r^{21} = j Omega, the classical Yang-Baxter
    equation, and sigma2(r) = -r^{21}.
    """
    xx = _ramified(x)
    if model is None:
        model = sl_model(xx.rows, max(1, xx.prec))
    if not verify_twisted_cocycle(xx, r_bd, model):
        raise NotTwistedCocycle("the residue does not swap the r-matrix slots")
    jj = ExtScalar.j(max(1, xx.prec))
    return transport_tensor(model, xx, r_bd).scale(jj)


@dataclass
class TwistedReport:
    """Outcome of a twisted class normalization.

    When outcome is ONE_CLASS, x = witness_q @ X0(n) @ witness_d exactly,
    with witness_q over K and witness_d diagonal over K[j].
    """

    is_twisted_cocycle: bool
    outcome: Optional[str] = None
    witness_q: Optional[GMatrix] = None
    witness_d: Optional[GMatrix] = None
    obstruction: Optional[bool] = None
    note: str = ""


def twisted_normalize_sl(x: GMatrix) -> TwistedReport:
    """Factor a twisted cocycle for the standard r-matrix as Q X0 D'.

    The residue X^{-1} sigma2(X) of a twisted cocycle is the flip S times
    an invertible diagonal D1, which ties each column to the mirror of its
    conjugate: sigma2(col_k) = D1[k] col_{n-1-k}.  Splitting the leading
    column of every mirror pair into K part and j part then yields the
    columns of Q, the diagonal D' absorbs D1, and a middle column (odd n)
    is a K[j] multiple of a K vector.  The factorization is rechecked by
    exact recombination before it is reported.
    """
    xx = _ramified(x)
    n = xx.rows
    if n < 2:
        raise InvalidParam("normalization needs n >= 2")
    p = max(1, xx.prec)
    res = xx.inv() @ xx.sigma2()  # Singular propagates
    d1 = s_matrix(n, p).promote(_RAM) @ res
    if not d1.is_diagonal():
        raise NotTwistedCocycle(
            "the residue X^{-1} sigma2(X) is not the flip of a diagonal"
        )
    delta = d1.diagonal_entries()
    one = ExtScalar.one(_RAM, p)
    m = n // 2
    d_entries: List[Optional[ExtScalar]] = [None] * n
    q_cols: List[Optional[List[LaurentScalar]]] = [None] * n
    for k in range(m):
        u = xx.col(k)
        d_entries[k] = one
        d_entries[n - 1 - k] = delta[k].invert()
        q_cols[k] = [c.a for c in u]
        q_cols[n - 1 - k] = [c.b for c in u]
    if n % 2:
        u = xx.col(m)
        pivot = next((c for c in u if not c.is_zero()), None)
        if pivot is None:
            raise NotTwistedCocycle("zero middle column")
        d_entries[m] = pivot
        pi = pivot.invert()
        scaled = [c * pi for c in u]
        if any(not c.b.is_zero() for c in scaled):
            return TwistedReport(
                is_twisted_cocycle=True,
                outcome="UNRESOLVED",
                note="middle column is not a K[j] multiple of a K vector",
            )
        q_cols[m] = [c.a for c in scaled]
    q = GMatrix([[q_cols[k][i] for k in range(n)] for i in range(n)])
    dprime = GMatrix.diagonal(d_entries, _RAM)
    if xx != q.promote(_RAM) @ build_X0_twisted(n, p) @ dprime:
        return TwistedReport(
            is_twisted_cocycle=True,
            outcome="UNRESOLVED",
            note="witness recombination failed at the working precision",
        )
    return TwistedReport(
        is_twisted_cocycle=True,
        outcome="ONE_CLASS",
        witness_q=q,
        witness_d=dprime,
    )


def triple_obstruction(t: AdmissibleTriple) -> bool:
    """Necessary condition on a triple for any twisted cocycle to exist.

    With s the diagram flip of the A series, requires s(Gamma1) = Gamma2
    and s(tau(a)) = tau^{-1}(s(a)) for every a in Gamma1.
    """
    if t.family != "A":
        raise InvalidParam("the flip condition applies to the A series")

    def s(i: int) -> int:
        return t.rank - 1 - i

    g1 = set(t.gamma1)
    g2 = set(t.gamma2)
    if {s(i) for i in g1} != g2:
        return False
    tau = t.tau_dict()
    inv_tau = {v: k for k, v in tau.items()}
    return all(s(tau[i]) == inv_tau[s(i)] for i in g1)
