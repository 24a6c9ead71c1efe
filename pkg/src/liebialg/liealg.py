"""Split simple Lie algebra models: sl(n) and the split orthogonal o(n).

Both models are concrete matrix algebras over K with a fixed ordered basis:
positive root vectors (in root order), then negative root vectors (same
order), then the Cartan generators.  Basis elements are stored as sparse
integer matrices; structure constants are computed once per (family, n)
and cached.

The invariant form is tr(xy) for sl(n) and (1/2) tr(xy) for o(n); the
factor makes B(e_a, e_{-a}) = 1 for every root in both models, so the
Casimir element has coefficient 1 on every root-vector pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import Inconsistent, NotClosed, NotInSpan, Singular, UnsupportedRank
from .matrices import GMatrix, antidiag_form
from .scalars import (
    DEFAULT_PRECISION,
    AlgebraKind,
    ExtScalar,
    GaussRat,
    LaurentScalar,
    _rat,
)
from .tensors import Tensor2

Root = Tuple[int, ...]


def _dot(a: Root, b: Root) -> int:
    return sum(x * y for x, y in zip(a, b))


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _neg(a: Root) -> Root:
    return tuple(-x for x in a)


@dataclass
class RootSystem:
    """Roots in epsilon coordinates with a fixed positive-root order."""

    family: str
    rank: int
    ambient: int
    simple_roots: List[Root]
    positive_roots: List[Root] = field(default_factory=list)
    _coords_cache: Dict[Root, Tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.positive_roots:
            self.positive_roots = self._enumerate_positive()
        self.positive_roots.sort(key=lambda r: (self.height(r), self.simple_coords(r)))

    def _enumerate_positive(self) -> List[Root]:
        fam, m = self.family, self.rank
        out: List[Root] = []
        if fam == "A":
            n = m + 1
            for i in range(n):
                for k in range(i + 1, n):
                    v = [0] * n
                    v[i], v[k] = 1, -1
                    out.append(tuple(v))
        elif fam in ("B", "D"):
            for i in range(m):
                for k in range(i + 1, m):
                    v = [0] * m
                    v[i], v[k] = 1, -1
                    out.append(tuple(v))
                    v = [0] * m
                    v[i], v[k] = 1, 1
                    out.append(tuple(v))
            if fam == "B":
                for i in range(m):
                    v = [0] * m
                    v[i] = 1
                    out.append(tuple(v))
        else:
            raise UnsupportedRank(f"unknown family {fam!r}")
        return out

    def simple_coords(self, root: Root) -> Tuple[int, ...]:
        """Coefficients of a root in the simple-root basis."""
        cached = self._coords_cache.get(root)
        if cached is not None:
            return cached
        ops = linalg.rat_ops()
        a = [[_rat(self.simple_roots[k][i]) for k in range(self.rank)]
             for i in range(self.ambient)]
        x = linalg.solve(a, [_rat(c) for c in root], ops)
        coords = tuple(int(c) for c in x)
        self._coords_cache[root] = coords
        return coords

    def height(self, root: Root) -> int:
        return sum(self.simple_coords(root))

    def is_root(self, v: Root) -> bool:
        return v in self.positive_roots or _neg(v) in self.positive_roots

    def is_positive(self, v: Root) -> bool:
        return v in self.positive_roots

    def cartan_matrix(self) -> List[List[int]]:
        s = self.simple_roots
        return [
            [2 * _dot(a, b) // _dot(b, b) for b in s]
            for a in s
        ]

    def inner(self, a: Root, b: Root) -> int:
        return _dot(a, b)


def root_system(family: str, rank: int) -> RootSystem:
    if rank < 1:
        raise UnsupportedRank("rank must be at least 1")
    if family == "A":
        n = rank + 1
        simples = []
        for i in range(rank):
            v = [0] * n
            v[i], v[i + 1] = 1, -1
            simples.append(tuple(v))
        return RootSystem("A", rank, n, simples)
    if family == "B":
        simples = []
        for i in range(rank - 1):
            v = [0] * rank
            v[i], v[i + 1] = 1, -1
            simples.append(tuple(v))
        v = [0] * rank
        v[rank - 1] = 1
        simples.append(tuple(v))
        return RootSystem("B", rank, rank, simples)
    if family == "D":
        if rank < 2:
            raise UnsupportedRank("family D needs rank >= 2")
        simples = []
        for i in range(rank - 1):
            v = [0] * rank
            v[i], v[i + 1] = 1, -1
            simples.append(tuple(v))
        v = [0] * rank
        v[rank - 2], v[rank - 1] = 1, 1
        simples.append(tuple(v))
        return RootSystem("D", rank, rank, simples)
    raise UnsupportedRank(f"unknown family {family!r}")


SparseInt = Dict[Tuple[int, int], int]


def _smul(a: SparseInt, b: SparseInt) -> SparseInt:
    out: SparseInt = {}
    cols: Dict[int, list] = {}
    for (i, k), v in b.items():
        cols.setdefault(i, []).append((k, v))
    for (i, k), v in a.items():
        for (kk, w) in cols.get(k, ()):
            key = (i, kk)
            out[key] = out.get(key, 0) + v * w
    return {k: v for k, v in out.items() if v}


def _sbracket(a: SparseInt, b: SparseInt) -> SparseInt:
    ab = _smul(a, b)
    ba = _smul(b, a)
    for k, v in ba.items():
        ab[k] = ab.get(k, 0) - v
    return {k: v for k, v in ab.items() if v}


class LieAlgebraModel:
    """Concrete matrix model with ordered basis and cached constants."""

    def __init__(self, family: str, n: int, prec: int = DEFAULT_PRECISION):
        if family == "sl":
            if n < 2:
                raise UnsupportedRank("sl(n) needs n >= 2")
            self.roots = root_system("A", n - 1)
        elif family == "o":
            if n < 3:
                raise UnsupportedRank("o(n) needs n >= 3")
            m = n // 2
            self.roots = root_system("B" if n % 2 else "D", m)
        else:
            raise UnsupportedRank(f"unknown family {family!r}")
        self.family = family
        self.n = n
        self.prec = prec
        self.m = self.roots.rank  # Cartan dimension
        self._build_basis()
        self._matrix_cache: List[Optional[GMatrix]] = [None] * self.dim
        self._gram: Optional[List[list]] = None
        key = (family, n)
        if key not in _STRUCT_CACHE:
            _STRUCT_CACHE[key] = self._structure_constants()
        self.structure = _STRUCT_CACHE[key]

    # -- basis construction -------------------------------------------

    def _build_basis(self):
        fam, n = self.family, self.n
        pos = self.roots.positive_roots
        self.basis: List[SparseInt] = []
        self.basis_names: List[str] = []
        self.pos_index: Dict[Root, int] = {}
        self.neg_index: Dict[Root, int] = {}
        if fam == "sl":
            for t, a in enumerate(pos):
                i, k = a.index(1), a.index(-1)
                self.basis.append({(i, k): 1})
                self.basis_names.append(f"e({i + 1},{k + 1})")
                self.pos_index[a] = t
            npos = len(pos)
            for t, a in enumerate(pos):
                i, k = a.index(1), a.index(-1)
                self.basis.append({(k, i): 1})
                self.basis_names.append(f"e({k + 1},{i + 1})")
                self.neg_index[a] = npos + t
            for i in range(n - 1):
                self.basis.append({(i, i): 1, (i + 1, i + 1): -1})
                self.basis_names.append(f"h{i + 1}")
        else:
            m = self.m
            sig = lambda p: n - 1 - p  # antidiagonal partner, 0-based

            def f_mat(p: int, q: int) -> SparseInt:
                out: SparseInt = {(p, q): 1}
                key = (sig(q), sig(p))
                out[key] = out.get(key, 0) - 1
                return {k: v for k, v in out.items() if v}

            def pos_position(a: Root) -> Tuple[int, int]:
                plus = [i for i, c in enumerate(a) if c == 1]
                minus = [i for i, c in enumerate(a) if c == -1]
                if len(plus) == 1 and len(minus) == 1:
                    return plus[0], minus[0]  # e_i - e_k -> F(i, k)
                if len(plus) == 2:
                    i, k = plus
                    return i, sig(k)  # e_i + e_k -> F(i, sig k)
                return plus[0], m  # short root e_i -> F(i, mid), n odd

            for t, a in enumerate(pos):
                p, q = pos_position(a)
                self.basis.append(f_mat(p, q))
                self.basis_names.append(f"F({p + 1},{q + 1})")
                self.pos_index[a] = t
            npos = len(pos)
            for t, a in enumerate(pos):
                p, q = pos_position(a)
                self.basis.append(f_mat(q, p))
                self.basis_names.append(f"F({q + 1},{p + 1})")
                self.neg_index[a] = npos + t
            for i in range(m):
                self.basis.append({(i, i): 1, (sig(i), sig(i)): -1})
                self.basis_names.append(f"H{i + 1}")
        self.npos = len(pos)
        self.dim = len(self.basis)
        self.cartan_indices = list(range(2 * self.npos, self.dim))
        self.S = antidiag_form(n, self.prec) if fam == "o" else None
        self.form_factor = _rat(1) if fam == "sl" else _rat(1) / 2

    # -- structure constants ------------------------------------------

    def _structure_constants(self):
        table = {}
        for i in range(self.dim):
            for k in range(i + 1, self.dim):
                br = _sbracket(self.basis[i], self.basis[k])
                if not br:
                    continue
                coords = self._int_coords(br)
                table[(i, k)] = coords
        return table

    def bracket_coords(self, i: int, k: int) -> Dict[int, int]:
        """Coordinates of [b_i, b_k] in the basis."""
        if i == k:
            return {}
        if i < k:
            return self.structure.get((i, k), {})
        flip = self.structure.get((k, i), {})
        return {m: -c for m, c in flip.items()}

    def _int_coords(self, mat: SparseInt) -> Dict[int, int]:
        coords = self._raw_coords(lambda i, k: mat.get((i, k), 0), 0)
        rebuilt: SparseInt = {}
        for idx, c in coords.items():
            if not c:
                continue
            for key, v in self.basis[idx].items():
                rebuilt[key] = rebuilt.get(key, 0) + c * v
        rebuilt = {k: v for k, v in rebuilt.items() if v}
        if rebuilt != mat:
            raise NotInSpan("bracket left the model span")
        return {k: v for k, v in coords.items() if v}

    def _raw_coords(self, entry, zero):
        """Read basis coordinates directly from matrix positions.

        Root-vector coefficients sit at the canonical matrix position of
        the basis element; Cartan coefficients come from the diagonal
        (partial sums for sl, direct reads for o).
        """
        out = {}
        for t in range(2 * self.npos):
            (p, q) = _lead_position(self.basis[t])
            c = entry(p, q)
            out[t] = c
        if self.family == "sl":
            acc = zero
            for i in range(self.n - 1):
                acc = acc + entry(i, i)
                out[self.cartan_indices[i]] = acc
        else:
            for i in range(self.m):
                out[self.cartan_indices[i]] = entry(i, i)
        return out

    # -- scalar-level views -------------------------------------------

    def basis_matrix(self, idx: int) -> GMatrix:
        cached = self._matrix_cache[idx]
        if cached is not None:
            return cached
        z = LaurentScalar.zero(self.prec)
        rows = [[z] * self.n for _ in range(self.n)]
        for (i, k), v in self.basis[idx].items():
            rows[i][k] = LaurentScalar.const(v, self.prec)
        mat = GMatrix(rows)
        self._matrix_cache[idx] = mat
        return mat

    def element_from_coords(self, coords: Dict[int, object],
                            kind: Optional[AlgebraKind] = None) -> GMatrix:
        base = GMatrix.zeros(self.n, self.n, kind, self.prec)
        for idx, c in coords.items():
            if c.is_zero():
                continue
            b = self.basis_matrix(idx)
            if kind is not None:
                b = b.promote(kind)
            base = base + b.scale(c)
        return base

    def coords(self, x: GMatrix) -> Dict[int, object]:
        """Basis coordinates of x; NotInSpan when x is outside the model."""
        if x.kind is None:
            zero = LaurentScalar.zero(x.prec)
        else:
            zero = ExtScalar.zero(x.kind, x.prec)
        raw = self._raw_coords(lambda i, k: x.entries[i][k], zero)
        coords = {idx: c for idx, c in raw.items() if not c.is_zero()}
        if self.element_from_coords(coords, x.kind) != x:
            raise NotInSpan("matrix is not in the span of the model basis")
        return coords

    def in_span(self, x: GMatrix) -> bool:
        try:
            self.coords(x)
            return True
        except NotInSpan:
            return False

    def bracket(self, x: GMatrix, y: GMatrix) -> GMatrix:
        return x @ y - y @ x

    def form(self, x: GMatrix, y: GMatrix):
        """Invariant form: tr(xy) for sl, (1/2) tr(xy) for o."""
        p = x @ y
        acc = None
        for i in range(p.rows):
            acc = p.entries[i][i] if acc is None else acc + p.entries[i][i]
        factor = GaussRat(self.form_factor)
        return factor * acc

    def gram(self) -> List[list]:
        """Rational Gram matrix of the form on the whole basis."""
        if self._gram is None:
            g = []
            for i in range(self.dim):
                row = []
                for k in range(self.dim):
                    tr = 0
                    for (a, b), v in self.basis[i].items():
                        w = self.basis[k].get((b, a), 0)
                        if w:
                            tr += v * w
                    row.append(self.form_factor * tr)
                g.append(row)
            self._gram = g
        return self._gram

    # -- distinguished tensors ----------------------------------------

    def casimir0(self) -> Tensor2:
        """Cartan part of the Casimir: dual bases of the form on h."""
        ops = linalg.rat_ops()
        cart = self.cartan_indices
        g = [[self.gram()[i][k] for k in cart] for i in cart]
        ginv = linalg.inv(g, ops)
        coeffs = {}
        for a in range(len(cart)):
            for b in range(len(cart)):
                q = ginv[a][b]
                if q != 0:
                    coeffs[(cart[a], cart[b])] = LaurentScalar.const(
                        _rat_to_gauss(q), self.prec
                    )
        return Tensor2(self.dim, coeffs)

    def casimir(self) -> Tensor2:
        one = LaurentScalar.one(self.prec)
        coeffs = {}
        for a, t in self.pos_index.items():
            nt = self.neg_index[a]
            coeffs[(t, nt)] = one
            coeffs[(nt, t)] = one
        omega = Tensor2(self.dim, coeffs)
        return omega + self.casimir0()

    # -- adjoint action -------------------------------------------------

    def adjoint_act(self, g: GMatrix, x: GMatrix) -> GMatrix:
        """g x g^{-1}; result must stay in the model span."""
        if g.kind is not x.kind:
            if g.kind is None:
                g = g.promote(x.kind)
            else:
                x = x.promote(g.kind)
        y = g @ x @ g.inv()
        self.coords(y)
        return y

    def ad_matrix(self, g: GMatrix) -> List[list]:
        """Column k holds the basis coordinates of g b_k g^{-1}."""
        gi = g.inv()
        cols = []
        zero = (LaurentScalar.zero(self.prec) if g.kind is None
                else ExtScalar.zero(g.kind, self.prec))
        for idx in range(self.dim):
            b = self.basis_matrix(idx)
            if g.kind is not None:
                b = b.promote(g.kind)
            y = g @ b @ gi
            coords = self.coords(y)
            cols.append([coords.get(i, zero) for i in range(self.dim)])
        return [list(row) for row in zip(*cols)]

    def root_on_cartan(self, alpha: Root) -> List[object]:
        """Rational values alpha(H_k) for the Cartan basis elements."""
        out = []
        for idx in self.cartan_indices:
            mat = self.basis[idx]
            val = 0
            for i, c in enumerate(alpha):
                if c:
                    val += c * mat.get((i, i), 0)
            out.append(_rat(val))
        return out

    def group_contains(self, x: GMatrix) -> bool:
        """Invertibility for the sl model, form preservation for o."""
        try:
            x.inv()
        except Singular:
            return False
        if self.family == "o":
            s = self.S if x.kind is None else self.S.promote(x.kind)
            return x.transpose() @ s @ x == s
        return True


_STRUCT_CACHE: Dict[Tuple[str, int], dict] = {}


def _lead_position(mat: SparseInt) -> Tuple[int, int]:
    """The canonical (positive-coefficient) position of a root vector."""
    for key, v in mat.items():
        if v == 1:
            return key
    raise NotInSpan("basis element without canonical position")


def _rat_to_gauss(q) -> GaussRat:
    return GaussRat(q, 0)


def sl_model(n: int, prec: int = DEFAULT_PRECISION) -> LieAlgebraModel:
    return LieAlgebraModel("sl", n, prec)


def o_model(n: int, prec: int = DEFAULT_PRECISION) -> LieAlgebraModel:
    return LieAlgebraModel("o", n, prec)


# ---------------------------------------------------------------------------
# two-cocycle test on a subalgebra
# ---------------------------------------------------------------------------


@dataclass
class TwoCocycleReport:
    identity_zero: bool
    nondegenerate: bool

    @property
    def is_cocycle(self) -> bool:
        return self.identity_zero and self.nondegenerate


def flatten(x: GMatrix) -> list:
    return [x.entries[i][k] for i in range(x.rows) for k in range(x.cols)]


def span_coords(mats: Sequence[GMatrix], x: GMatrix) -> list:
    """Coordinates of x in the span of mats over K; Inconsistent outside."""
    ops = linalg.laurent_ops(max(1, min(m.prec for m in mats)))
    return linalg.coords_in_basis([flatten(m) for m in mats], flatten(x), ops)


def check_two_cocycle(mats: Sequence[GMatrix], gram: Sequence[Sequence]) -> TwoCocycleReport:
    """Test the closed-form 2-cocycle identity of a bilinear form.

    `mats` is a basis of a subalgebra W (must be closed under bracket);
    `gram` gives B(w_i, w_k) as scalars.  The identity checked on all
    basis triples is B([x,y],z) + B([y,z],x) + B([z,x],y) = 0, plus
    nondegeneracy of the Gram matrix.
    """
    nb = len(mats)
    prec = max(1, min(m.prec for m in mats))
    ops = linalg.laurent_ops(prec)
    bracket_coords = {}
    for i in range(nb):
        for k in range(i + 1, nb):
            br = mats[i] @ mats[k] - mats[k] @ mats[i]
            try:
                bracket_coords[(i, k)] = span_coords(mats, br)
            except Inconsistent as exc:
                raise NotClosed(
                    "subalgebra basis is not closed under the bracket"
                ) from exc

    def b_of(coords, z_idx):
        acc = LaurentScalar.zero(prec)
        for t, c in enumerate(coords):
            if not c.is_zero():
                acc = acc + c * gram[t][z_idx]
        return acc

    def pair_coords(i, k):
        if i == k:
            return None
        if i < k:
            return bracket_coords[(i, k)]
        return [-c for c in bracket_coords[(k, i)]]

    identity = True
    for x in range(nb):
        for y in range(nb):
            for z in range(nb):
                total = LaurentScalar.zero(prec)
                for (a, b, c) in ((x, y, z), (y, z, x), (z, x, y)):
                    coords = pair_coords(a, b)
                    if coords is not None:
                        total = total + b_of(coords, c)
                if not total.is_zero():
                    identity = False
                    break
            if not identity:
                break
        if not identity:
            break
    gm = [list(row) for row in gram]
    nondeg = not linalg.det(gm, ops).is_zero()
    return TwoCocycleReport(identity_zero=identity, nondegenerate=nondeg)
