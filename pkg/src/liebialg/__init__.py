"""Exact Lie bialgebra toolkit over the formal Laurent series field K = C((h)).

Scalars are truncated Laurent series with exact Gaussian-rational
coefficients.  On top of them the package builds split simple Lie algebra
models (sl(n) and split o(n)), constructs and verifies classical r-matrices
for admissible triples, normalizes Galois cocycles against the quadratic
extension K[j], j^2 = h, and classifies twisted cocycle classes together
with their Lagrangian subalgebra data.
"""

from .scalars import (
    DEFAULT_PRECISION,
    AlgebraKind,
    ExtScalar,
    GaussRat,
    LaurentScalar,
    NoExactRoot,
    NotUnit,
    PrecisionLoss,
    QuadraticWitness,
    classify_quadratic,
    conjugate,
    invert,
    parse_scalar,
    scalar_text,
    sqrt_unit,
    trace_A,
)
from .matrices import GMatrix, antidiag_form, check_orthogonal
from .tensors import Tensor2, Tensor3, wedge
from .liealg import (
    LieAlgebraModel,
    RootSystem,
    check_two_cocycle,
    o_model,
    root_system,
    sl_model,
)
from .rmatrix import (
    AdmissibleTriple,
    ContinuousParam,
    build_rbd,
    cobracket,
    enumerate_triples,
    f_operator,
    rdj,
    solve_r0,
    tau_extend,
    validate_triple,
    verify_cybe,
    verify_symmetry,
)
from .cohomology import (
    CentralizerPattern,
    CocycleReport,
    build_X0_odd,
    centralizer_member,
    centralizer_pattern_o,
    centralizer_pattern_sl,
    classify_o_even_example,
    classify_o_odd,
    factor_QD,
    fork_triple,
    is_bd_cocycle,
    normalize_o_even,
    normalize_sl,
    rbd_standard,
    x0_even,
)
from .twisted import (
    SubspaceSpec,
    TwistedReport,
    build_twisted_r,
    build_X0_twisted,
    check_L_member,
    default_W0,
    doubling_form,
    embedded_L,
    find_X_conj,
    L_basis,
    lagrangian_check,
    lemma_S_twist,
    transport_tensor,
    triple_obstruction,
    twisted_normalize_sl,
    verify_twisted_cocycle,
)
from .cli import JobSpec, main, run

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRECISION",
    "AlgebraKind",
    "ExtScalar",
    "GaussRat",
    "LaurentScalar",
    "NoExactRoot",
    "NotUnit",
    "PrecisionLoss",
    "QuadraticWitness",
    "classify_quadratic",
    "conjugate",
    "invert",
    "parse_scalar",
    "scalar_text",
    "sqrt_unit",
    "trace_A",
    "GMatrix",
    "antidiag_form",
    "check_orthogonal",
    "Tensor2",
    "Tensor3",
    "wedge",
    "LieAlgebraModel",
    "RootSystem",
    "check_two_cocycle",
    "o_model",
    "root_system",
    "sl_model",
    "AdmissibleTriple",
    "ContinuousParam",
    "build_rbd",
    "cobracket",
    "enumerate_triples",
    "f_operator",
    "rdj",
    "solve_r0",
    "tau_extend",
    "validate_triple",
    "verify_cybe",
    "verify_symmetry",
    "CentralizerPattern",
    "CocycleReport",
    "build_X0_odd",
    "centralizer_member",
    "centralizer_pattern_o",
    "centralizer_pattern_sl",
    "classify_o_even_example",
    "classify_o_odd",
    "factor_QD",
    "fork_triple",
    "is_bd_cocycle",
    "normalize_o_even",
    "normalize_sl",
    "rbd_standard",
    "x0_even",
    "SubspaceSpec",
    "TwistedReport",
    "build_twisted_r",
    "build_X0_twisted",
    "check_L_member",
    "default_W0",
    "doubling_form",
    "embedded_L",
    "find_X_conj",
    "L_basis",
    "lagrangian_check",
    "lemma_S_twist",
    "transport_tensor",
    "triple_obstruction",
    "twisted_normalize_sl",
    "verify_twisted_cocycle",
    "JobSpec",
    "main",
    "run",
    "__version__",
]
