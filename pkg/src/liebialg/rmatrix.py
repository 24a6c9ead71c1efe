"""Quasi-triangular r-matrices attached to combinatorial triples.

A triple consists of two subsets of the simple roots and an inner-product
preserving bijection tau between them whose forward orbits all leave the
source set (no cycles).  Each triple, together with a continuous Cartan
parameter, determines a solution r of the classical Yang-Baxter equation
with r + r21 equal to the Casimir element.  The residual tensors returned
by the verifiers are exact certificates: empty means the identity holds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import InvalidParam, RankTooLarge
from .liealg import LieAlgebraModel, Root, RootSystem, _add, _neg
from .matrices import GMatrix
from .scalars import GaussRat, LaurentScalar, _rat
from .tensors import Tensor2, Tensor3

MAX_ENUM_RANK = 8


@dataclass(frozen=True)
class AdmissibleTriple:
    """(gamma1, gamma2, tau) on the simple roots, by index."""

    family: str
    rank: int
    gamma1: Tuple[int, ...]
    gamma2: Tuple[int, ...]
    tau: Tuple[Tuple[int, int], ...]  # sorted (source, image) pairs

    @staticmethod
    def make(family: str, rank: int, tau_map: Dict[int, int]) -> "AdmissibleTriple":
        items = tuple(sorted(tau_map.items()))
        return AdmissibleTriple(
            family=family,
            rank=rank,
            gamma1=tuple(sorted(tau_map)),
            gamma2=tuple(sorted(tau_map.values())),
            tau=items,
        )

    def tau_dict(self) -> Dict[int, int]:
        return dict(self.tau)

    @property
    def is_empty(self) -> bool:
        return not self.gamma1


def validate_triple(rs: RootSystem, triple: AdmissibleTriple) -> List[str]:
    """All admissibility violations, empty when the triple is valid."""
    problems = []
    if triple.rank != rs.rank:
        problems.append("rank does not match the root system")
        return problems
    simples = rs.simple_roots
    idx_ok = all(0 <= i < rs.rank for i in triple.gamma1 + triple.gamma2)
    if not idx_ok:
        problems.append("simple-root index out of range")
        return problems
    tau = triple.tau_dict()
    if tuple(sorted(tau)) != triple.gamma1:
        problems.append("tau is not defined exactly on gamma1")
    if tuple(sorted(set(tau.values()))) != triple.gamma2 or len(
        set(tau.values())
    ) != len(tau):
        problems.append("tau is not a bijection onto gamma2")
    if problems:
        return problems
    for a in triple.gamma1:
        for b in triple.gamma1:
            lhs = rs.inner(simples[tau[a]], simples[tau[b]])
            rhs = rs.inner(simples[a], simples[b])
            if lhs != rhs:
                problems.append(
                    f"tau breaks the inner product on ({a + 1},{b + 1})"
                )
    g1 = set(triple.gamma1)
    for a in triple.gamma1:
        seen = 0
        cur = a
        while cur in g1:
            cur = tau[cur]
            seen += 1
            if seen > len(g1):
                problems.append(f"tau orbit of root {a + 1} never leaves gamma1")
                break
    return problems


def enumerate_triples(rs: RootSystem) -> List[AdmissibleTriple]:
    """All admissible triples of the system, empty triple included."""
    if rs.rank > MAX_ENUM_RANK:
        raise RankTooLarge(f"enumeration is limited to rank {MAX_ENUM_RANK}")
    family = rs.family
    out = [AdmissibleTriple.make(family, rs.rank, {})]
    indices = list(range(rs.rank))
    for size in range(1, rs.rank + 1):
        for g1 in itertools.combinations(indices, size):
            for g2 in itertools.combinations(indices, size):
                for image in itertools.permutations(g2):
                    tau = dict(zip(g1, image))
                    cand = AdmissibleTriple.make(family, rs.rank, tau)
                    if not validate_triple(rs, cand):
                        out.append(cand)
    return out


def tau_extend(rs: RootSystem, triple: AdmissibleTriple, root: Root) -> Optional[Root]:
    """Additive extension of tau; None when the root leaves span(gamma1)."""
    coords = rs.simple_coords(root)
    tau = triple.tau_dict()
    g1 = set(triple.gamma1)
    if any(c and (i not in g1) for i, c in enumerate(coords)):
        return None
    img = tuple(0 for _ in range(rs.ambient))
    for i, c in enumerate(coords):
        if c:
            contrib = tuple(c * x for x in rs.simple_roots[tau[i]])
            img = _add(img, contrib)
    return img


# ---------------------------------------------------------------------------
# the Cartan part
# ---------------------------------------------------------------------------


@dataclass
class ContinuousParam:
    """Affine space of admissible Cartan parts r0 = half-Casimir + skew."""

    cartan_dim: int
    particular: List[list]  # rational matrix R with r0 = sum R_ab h_a (x) h_b
    free: List[List[list]]  # rational basis of the homogeneous solutions

    @property
    def dof(self) -> int:
        return len(self.free)

    def instantiate(self, coeffs: Optional[Sequence] = None) -> List[list]:
        if coeffs is None:
            coeffs = []
        coeffs = [_rat(c) for c in coeffs]
        if len(coeffs) != self.dof:
            raise InvalidParam(
                f"expected {self.dof} free coefficients, got {len(coeffs)}"
            )
        m = self.cartan_dim
        r = [[self.particular[a][b] for b in range(m)] for a in range(m)]
        for c, mat in zip(coeffs, self.free):
            if c == 0:
                continue
            for a in range(m):
                for b in range(m):
                    r[a][b] += c * mat[a][b]
        return r


def solve_r0(model: LieAlgebraModel, triple: AdmissibleTriple) -> ContinuousParam:
    """Solve r0 + r0^21 = Cartan Casimir and (tau a (x) 1 + 1 (x) a) r0 = 0.

    Unknowns are the m*m rational coefficients of r0 on h_a (x) h_b; the
    solution set is an affine subspace returned as particular + basis.
    """
    rs = model.roots
    m = len(model.cartan_indices)
    ops = linalg.rat_ops()
    cart = model.cartan_indices
    gram = [[model.gram()[i][k] for k in cart] for i in cart]
    ginv = linalg.inv(gram, ops)

    def unk(a: int, b: int) -> int:
        return a * m + b

    rows: List[list] = []
    rhs: List = []
    # symmetric part is pinned to the Cartan Casimir
    for a in range(m):
        for b in range(a, m):
            row = [ops.zero] * (m * m)
            row[unk(a, b)] = row[unk(a, b)] + ops.one
            row[unk(b, a)] = row[unk(b, a)] + ops.one
            rows.append(row)
            rhs.append(ginv[a][b])
    # kernel conditions from the triple
    tau = triple.tau_dict()
    for i in triple.gamma1:
        alpha = rs.simple_roots[i]
        talpha = rs.simple_roots[tau[i]]
        av = model.root_on_cartan(alpha)
        tv = model.root_on_cartan(talpha)
        for c in range(m):
            row = [ops.zero] * (m * m)
            for a in range(m):
                row[unk(a, c)] = row[unk(a, c)] + tv[a]
            for b in range(m):
                row[unk(c, b)] = row[unk(c, b)] + av[b]
            rows.append(row)
            rhs.append(ops.zero)
    part, basis = linalg.solve_general(rows, rhs, ops)
    particular = [[part[unk(a, b)] for b in range(m)] for a in range(m)]
    free = [[[v[unk(a, b)] for b in range(m)] for a in range(m)] for v in basis]
    return ContinuousParam(cartan_dim=m, particular=particular, free=free)


# ---------------------------------------------------------------------------
# the full r-matrix
# ---------------------------------------------------------------------------


def _extension_signs(
    model: LieAlgebraModel, rs: RootSystem, triple: AdmissibleTriple
) -> Dict[Root, object]:
    """Coefficients c with T(e_beta) = c * e_{tau beta}.

    tau acts additively on roots, but the induced map of root vectors has
    to respect brackets: T[x, y] = [Tx, Ty].  Fixing c = 1 on the simple
    roots of gamma1 and peeling compound roots one simple root at a time
    makes c a ratio of structure constants (a sign on the laced families).
    Without these signs the wedge corrections of chains through compound
    roots break the Yang-Baxter identity.
    """
    g1 = set(triple.gamma1)
    tau = triple.tau_dict()
    in_span = [
        b
        for b in rs.positive_roots
        if {i for i, c in enumerate(rs.simple_coords(b)) if c} <= g1
    ]
    out: Dict[Root, object] = {}
    for b in sorted(in_span, key=rs.height):
        tb = tau_extend(rs, triple, b)
        if tb is None or not rs.is_positive(tb):
            continue
        if rs.height(b) == 1:
            out[b] = _rat(1)
            continue
        coords = rs.simple_coords(b)
        for i, ci in enumerate(coords):
            if not ci:
                continue
            alpha = rs.simple_roots[i]
            gamma = _add(b, _neg(alpha))
            if not (rs.is_positive(gamma) and gamma in out):
                continue
            n1 = model.bracket_coords(
                model.pos_index[gamma], model.pos_index[alpha]
            ).get(model.pos_index[b], 0)
            if not n1:
                continue
            tg = tau_extend(rs, triple, gamma)
            ta = rs.simple_roots[tau[i]]
            n2 = model.bracket_coords(
                model.pos_index[tg], model.pos_index[ta]
            ).get(model.pos_index[tb], 0)
            out[b] = out[gamma] * _rat(n2) / _rat(n1)
            break
        else:
            raise InvalidParam(
                "no bracket decomposition found for a chain root"
            )
    return out


def build_rbd(
    model: LieAlgebraModel,
    triple: AdmissibleTriple,
    s_coeffs: Optional[Sequence] = None,
) -> Tensor2:
    """r-matrix of a triple at a point of its continuous parameter space."""
    rs = model.roots
    problems = validate_triple(rs, triple)
    if problems:
        raise InvalidParam("; ".join(problems))
    if (model.family == "sl" and triple.family != "A") or (
        model.family == "o" and triple.family not in ("B", "D")
    ):
        raise InvalidParam("triple family does not match the model")

    param = solve_r0(model, triple)
    r0 = param.instantiate(s_coeffs)
    prec = model.prec
    coeffs: Dict[Tuple[int, int], LaurentScalar] = {}
    cart = model.cartan_indices
    m = len(cart)
    for a in range(m):
        for b in range(m):
            q = r0[a][b]
            if q != 0:
                coeffs[(cart[a], cart[b])] = LaurentScalar.const(
                    GaussRat(q), prec
                )
    one = LaurentScalar.one(prec)
    for alpha, t in model.pos_index.items():
        coeffs[(t, model.neg_index[alpha])] = one
    r = Tensor2(model.dim, coeffs)

    # wedge corrections: e_beta wedge e_{-tau^k beta} over the tau chain,
    # the chain image carrying the extension sign of each step
    g1 = set(triple.gamma1)
    signs = _extension_signs(model, rs, triple)
    for beta in rs.positive_roots:
        support = {i for i, c in enumerate(rs.simple_coords(beta)) if c}
        if not support or not support <= g1:
            continue
        tb = model.pos_index[beta]
        gamma = beta
        d = _rat(1)
        while True:
            nxt = tau_extend(rs, triple, gamma)
            if nxt is None:
                break
            if not rs.is_positive(nxt):
                raise InvalidParam(
                    "tau image left the positive roots; triple is not admissible"
                )
            d = d * signs[gamma]
            coeff = LaurentScalar.const(GaussRat(d), prec)
            w_pos = Tensor2(model.dim, {(tb, model.neg_index[nxt]): coeff})
            w_neg = Tensor2(model.dim, {(model.neg_index[nxt], tb): coeff})
            r = r + w_pos - w_neg
            gamma = nxt
    return r


def rdj(model: LieAlgebraModel) -> Tensor2:
    """The standard r-matrix: the empty triple with zero parameter."""
    triple = AdmissibleTriple.make(model.roots.family, model.roots.rank, {})
    dof = solve_r0(model, triple).dof
    return build_rbd(model, triple, [0] * dof)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_cybe(model: LieAlgebraModel, r: Tensor2) -> Tensor3:
    """Residual [r12,r13] + [r12,r23] + [r13,r23]; zero iff CYBE holds."""
    acc: Dict[Tuple[int, int, int], object] = {}

    def bump(key, val):
        if key in acc:
            acc[key] = acc[key] + val
        else:
            acc[key] = val

    entries = list(r.items())
    for (a, b), x in entries:
        for (c, d), y in entries:
            xy = x * y
            for mm, w in model.bracket_coords(a, c).items():
                bump((mm, b, d), w * xy)
            for mm, w in model.bracket_coords(b, c).items():
                bump((a, mm, d), w * xy)
            for mm, w in model.bracket_coords(b, d).items():
                bump((a, c, mm), w * xy)
    return Tensor3(model.dim, acc, r.kind)


@dataclass
class SymmetryReport:
    holds: bool
    constant: Optional[object]
    residual: Tensor2


def verify_symmetry(
    model: LieAlgebraModel, r: Tensor2, constant=None
) -> SymmetryReport:
    """Check r + r21 = constant * Casimir (constant inferred if omitted)."""
    t = r + r.transpose21()
    omega = model.casimir()
    if r.kind is not None:
        omega = omega.promote(r.kind)
    if constant is None:
        probe = next(iter(omega.coeffs), None)
        got = t.coeffs.get(probe)
        if got is None:
            constant = LaurentScalar.zero(model.prec)
        else:
            constant = got / omega.coeffs[probe]
    residual = t - omega.scale(constant)
    return SymmetryReport(
        holds=residual.is_zero(), constant=constant, residual=residual
    )


def cobracket(model: LieAlgebraModel, r: Tensor2, a: GMatrix) -> Tensor2:
    """delta(a) = [r, a (x) 1 + 1 (x) a]."""
    ca = model.coords(a)
    acc: Dict[Tuple[int, int], object] = {}

    def bump(key, val):
        if key in acc:
            acc[key] = acc[key] + val
        else:
            acc[key] = val

    for (i, k), x in r.items():
        for c, w in ca.items():
            xw = x * w
            for mm, u in model.bracket_coords(i, c).items():
                bump((mm, k), u * xw)
            for mm, u in model.bracket_coords(k, c).items():
                bump((i, mm), u * xw)
    return Tensor2(model.dim, acc, r.kind)


def f_operator(model: LieAlgebraModel, r: Tensor2) -> GMatrix:
    """Matrix of x -> (id (x) B(x, .))(r): pair x into the second slot."""
    gram = model.gram()
    prec = model.prec
    zero = LaurentScalar.zero(prec)
    rows = [[zero] * model.dim for _ in range(model.dim)]
    for (a, b), x in r.items():
        for i in range(model.dim):
            g = gram[b][i]
            if g != 0:
                rows[a][i] = rows[a][i] + GaussRat(g) * x
    return GMatrix(rows)
