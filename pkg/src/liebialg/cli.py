"""Batch front end: parse job specs, run the exact checks, emit reports.

Every command writes one deterministic JSON report (sorted keys, fixed
indentation) to stdout or, with --output, atomically to a file.  Reports
embed the verification certificates themselves (residual entries,
witness matrices), not just booleans, so results can be audited without
rerunning the job.

Exit codes: 0 success / positive answer, 10 negative mathematical result
(not a cocycle, nontrivial class, failed check), 11 unresolved at the
working precision, 2 malformed input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .cohomology import (
    centralizer_member,
    centralizer_pattern_o,
    centralizer_pattern_sl,
    classify_o_odd,
    normalize_o_even,
    normalize_sl,
    rbd_standard,
)
from .errors import (
    LieBialgError,
    MalformedInput,
    NotCocycle,
    NotOrthogonal,
    NotReducible,
    NotTwistedCocycle,
    PrecisionLoss,
    ScalarParseError,
    UnsupportedRank,
)
from .liealg import LieAlgebraModel, o_model, root_system, sl_model
from .rmatrix import (
    AdmissibleTriple,
    build_rbd,
    enumerate_triples,
    solve_r0,
    verify_cybe,
    verify_symmetry,
)
from .scalars import DEFAULT_PRECISION, parse_scalar, classify_quadratic
from .serialize import (
    load_json_source,
    matrix_from_json,
    matrix_to_json,
    report_text,
    subspace_from_json,
    tensor_from_json,
    tensor_to_json,
    triple_from_json,
    triple_to_json,
    value_to_json,
    write_atomic,
)
from .twisted import (
    build_twisted_r,
    default_W0,
    lagrangian_check,
    triple_obstruction,
    twisted_normalize_sl,
    verify_twisted_cocycle,
)

OK = "ok"
NEGATIVE = "negative"
UNRESOLVED = "unresolved"
_EXIT = {OK: 0, NEGATIVE: 10, UNRESOLVED: 11}

COMMANDS = (
    "classify-algebra",
    "build-r",
    "verify-r",
    "enumerate-triples",
    "centralizer",
    "classify-cocycle",
    "classify-twisted",
    "check-lagrangian",
)


@dataclass
class JobSpec:
    """One batch job: a command plus its parsed inputs."""

    command: str
    precision: int = DEFAULT_PRECISION
    fmt: str = "json"
    output: Optional[str] = None
    algebra: Optional[str] = None
    n: Optional[int] = None
    family: Optional[str] = None
    rank: Optional[int] = None
    triple: Optional[str] = None
    matrix: Optional[str] = None
    tensor: Optional[str] = None
    param: Optional[str] = None
    p: Optional[str] = None
    q: Optional[str] = None


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def _require(value, flag: str):
    if value is None:
        raise MalformedInput(f"missing required flag {flag}")
    return value


def _model_for_family(family: str, rank: int, prec: int) -> LieAlgebraModel:
    if not isinstance(rank, int) or rank < 1:
        raise MalformedInput("--rank must be a positive integer")
    if family == "A":
        return sl_model(rank + 1, prec)
    if family == "B":
        return o_model(2 * rank + 1, prec)
    if family == "D":
        return o_model(2 * rank, prec)
    raise MalformedInput(f"unsupported type {family!r}; use A, B, or D")


def _algebra_context(job: JobSpec) -> Tuple[LieAlgebraModel, str, int]:
    """Model plus the triple family/rank implied by --algebra and --n."""
    algebra = _require(job.algebra, "--algebra")
    n = _require(job.n, "--n")
    if algebra == "sl":
        if n < 2:
            raise MalformedInput("--n must be at least 2 for sl")
        return sl_model(n, job.precision), "A", n - 1
    if algebra == "o":
        if n % 2:
            return o_model(n, job.precision), "B", (n - 1) // 2
        return o_model(n, job.precision), "D", n // 2
    raise MalformedInput(f"unsupported algebra {algebra!r}; use sl or o")


def _parse_triple(job: JobSpec, family: str, rank: int) -> AdmissibleTriple:
    src = job.triple or "empty"
    if src == "empty":
        return AdmissibleTriple.make(family, rank, {})
    obj, _ = load_json_source(src)
    return triple_from_json(obj, family=family, rank=rank)


def _load_matrix(job: JobSpec, n: Optional[int] = None):
    src = _require(job.matrix, "--matrix")
    obj, _ = load_json_source(src)
    x = matrix_from_json(obj)
    if not x.is_square():
        raise MalformedInput("the input matrix must be square")
    if n is not None and x.rows != n:
        raise MalformedInput(f"expected a {n} x {n} matrix, got {x.rows} x {x.cols}")
    return x


def _parse_param(text: Optional[str], dof: int) -> List[Fraction]:
    if text is None:
        return [Fraction(0)] * dof
    parts = [p.strip() for p in text.split(",")] if text.strip() else []
    try:
        coeffs = [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad --param entry: {exc}") from exc
    if len(coeffs) != dof:
        raise MalformedInput(
            f"--param needs {dof} comma-separated rationals, got {len(coeffs)}"
        )
    return coeffs


def _residual_entries(t, prec: int) -> Dict[str, object]:
    """Nonzero slots of a residual tensor, as an auditable object."""
    out = {}
    for key, v in t.items():
        zero = v.is_zero() if hasattr(v, "is_zero") else v == 0
        if zero:
            continue
        out[",".join(str(i) for i in key)] = value_to_json(v, prec)
    return out


def _certificate(model: LieAlgebraModel, r) -> Tuple[bool, dict]:
    cybe = verify_cybe(model, r)
    sym = verify_symmetry(model, r)
    prec = max(1, model.prec)
    cert = {
        "cybe": "0" if cybe.is_zero() else "nonzero",
        "cybe_residual": _residual_entries(cybe, prec),
        "symmetry": "Omega" if sym.holds else "broken",
        "symmetry_constant": value_to_json(sym.constant, prec),
        "symmetry_residual": _residual_entries(sym.residual, prec),
    }
    return cybe.is_zero() and sym.holds, cert


def _matrix_or_none(m):
    return None if m is None else matrix_to_json(m)


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------


def _cmd_classify_algebra(job: JobSpec):
    p = parse_scalar(_require(job.p, "--p"), job.precision)
    q = parse_scalar(_require(job.q, "--q"), job.precision)
    w = classify_quadratic(p, q)
    payload = {
        "kind": w.kind.name,
        "p": value_to_json(w.p, job.precision),
        "q": value_to_json(w.q, job.precision),
        "residuals": [value_to_json(r, job.precision) for r in w.residuals()],
    }
    if w.gen is not None:
        payload["generator"] = [value_to_json(c, job.precision) for c in w.gen]
    if w.roots is not None:
        payload["roots"] = [value_to_json(r, job.precision) for r in w.roots]
    return OK, payload


def _cmd_build_r(job: JobSpec):
    family = _require(job.family, "--type")
    rank = _require(job.rank, "--rank")
    model = _model_for_family(family, rank, job.precision)
    triple = _parse_triple(job, family, rank)
    dof = solve_r0(model, triple).dof
    coeffs = _parse_param(job.param, dof)
    r = build_rbd(model, triple, coeffs)
    good, cert = _certificate(model, r)
    payload = {
        "triple": triple_to_json(triple),
        "parameter": [str(c) for c in coeffs],
        "r": tensor_to_json(r),
        "certificate": cert,
    }
    return (OK if good else NEGATIVE), payload


def _cmd_verify_r(job: JobSpec):
    family = _require(job.family, "--type")
    rank = _require(job.rank, "--rank")
    model = _model_for_family(family, rank, job.precision)
    obj, _ = load_json_source(_require(job.tensor, "--tensor"))
    r = tensor_from_json(obj)
    if r.dim != model.dim:
        raise MalformedInput(
            f"tensor dimension {r.dim} does not match the model dimension {model.dim}"
        )
    good, cert = _certificate(model, r)
    return (OK if good else NEGATIVE), {"certificate": cert}


def _cmd_enumerate_triples(job: JobSpec):
    family = _require(job.family, "--type")
    rank = _require(job.rank, "--rank")
    if family not in ("A", "B", "D"):
        raise MalformedInput(f"unsupported type {family!r}; use A, B, or D")
    rs = root_system(family, rank)
    triples = enumerate_triples(rs)
    payload = {
        "count": len(triples),
        "triples": [triple_to_json(t) for t in triples],
    }
    return OK, payload


def _cmd_centralizer(job: JobSpec):
    model, family, rank = _algebra_context(job)
    triple = _parse_triple(job, family, rank)
    x = _load_matrix(job, model.n)
    r = rbd_standard(model, triple)
    member = centralizer_member(model, x, r)
    payload = {"triple": triple_to_json(triple), "member": member}
    if model.family == "sl":
        pattern = centralizer_pattern_sl(triple)
        payload["pattern"] = {"linked_classes": [list(c) for c in pattern.classes]}
    else:
        try:
            pattern = centralizer_pattern_o(model, triple)
            payload["pattern"] = {
                "conformal": True,
                "pinned_slots": list(pattern.forced_sign),
            }
        except UnsupportedRank:
            pass
    return (OK if member else NEGATIVE), payload


def _cocycle_payload(report) -> dict:
    payload = {
        "is_cocycle": report.is_cocycle,
        "outcome": report.outcome,
        "witness_q": _matrix_or_none(report.witness_q),
        "witness_c": _matrix_or_none(report.witness_c),
        "witness_x0": _matrix_or_none(report.witness_x0),
        "galois_residues": {
            name: matrix_to_json(res) for name, res in report.galois_checks
        },
    }
    if report.note:
        payload["note"] = report.note
    return payload


def _cmd_classify_cocycle(job: JobSpec):
    model, family, rank = _algebra_context(job)
    x = _load_matrix(job, model.n)
    if model.family == "sl":
        triple = _parse_triple(job, family, rank)
        report = normalize_sl(model, x, triple)
        extra = {"triple": triple_to_json(triple)}
    else:
        if job.triple not in (None, "empty"):
            raise MalformedInput(
                "the orthogonal classifiers use the standard structure; "
                "--triple must be omitted"
            )
        if model.n % 2:
            report = classify_o_odd(model, x)
        else:
            report = normalize_o_even(model, x)
        extra = {}
    payload = _cocycle_payload(report)
    payload.update(extra)
    if report.outcome == "TRIVIAL":
        return OK, payload
    if report.outcome == "NONTRIVIAL":
        return NEGATIVE, payload
    return UNRESOLVED, payload


def _cmd_classify_twisted(job: JobSpec):
    n = _require(job.n, "--n")
    if n < 2:
        raise MalformedInput("--n must be at least 2")
    model = sl_model(n, job.precision)
    triple = _parse_triple(job, "A", n - 1)
    x = _load_matrix(job, n)
    r = rbd_standard(model, triple)
    payload = {
        "triple": triple_to_json(triple),
        "obstruction_passed": triple_obstruction(triple),
    }
    if not verify_twisted_cocycle(x, r, model):
        payload["is_twisted_cocycle"] = False
        return NEGATIVE, payload
    report = twisted_normalize_sl(x)
    payload["is_twisted_cocycle"] = True
    payload["outcome"] = report.outcome
    if report.note:
        payload["note"] = report.note
    if report.outcome != "ONE_CLASS":
        return UNRESOLVED, payload
    payload["witness_q"] = _matrix_or_none(report.witness_q)
    payload["witness_d"] = _matrix_or_none(report.witness_d)
    r_tw = build_twisted_r(x, r, model)
    payload["twisted_r"] = tensor_to_json(r_tw)
    cybe = verify_cybe(model, r_tw)
    sym = verify_symmetry(model, r_tw)
    payload["certificate"] = {
        "cybe": "0" if cybe.is_zero() else "nonzero",
        "cybe_residual": _residual_entries(cybe, max(1, model.prec)),
        "symmetry_constant": value_to_json(sym.constant, max(1, model.prec)),
        "symmetry_residual": _residual_entries(sym.residual, max(1, model.prec)),
    }
    return OK, payload


def _cmd_check_lagrangian(job: JobSpec):
    if job.matrix is not None:
        obj, _ = load_json_source(job.matrix)
        spec = subspace_from_json(obj)
        size = spec.generators[0].rows
        if job.n is not None and job.n != size:
            raise MalformedInput(
                f"--n {job.n} does not match the generator size {size}"
            )
        kind = next((g.kind for g in spec.generators if g.kind is not None), None)
    else:
        n = _require(job.n, "--n")
        if n < 2:
            raise MalformedInput("--n must be at least 2")
        spec = default_W0(n, job.precision)
        kind = None
    if kind is None:
        isotropic, subalg, transversal = lagrangian_check(spec)
    else:
        isotropic, subalg, transversal = lagrangian_check(spec, kind)
    payload = {
        "label": spec.label,
        "generator_count": len(spec.generators),
        "isotropic": isotropic,
        "subalgebra": subalg,
        "transversal": transversal,
    }
    good = isotropic and subalg and transversal
    return (OK if good else NEGATIVE), payload


_HANDLERS = {
    "classify-algebra": _cmd_classify_algebra,
    "build-r": _cmd_build_r,
    "verify-r": _cmd_verify_r,
    "enumerate-triples": _cmd_enumerate_triples,
    "centralizer": _cmd_centralizer,
    "classify-cocycle": _cmd_classify_cocycle,
    "classify-twisted": _cmd_classify_twisted,
    "check-lagrangian": _cmd_check_lagrangian,
}

# mathematically negative answers, distinct from malformed input
_NEGATIVE_ERRORS = (NotCocycle, NotTwistedCocycle, NotOrthogonal, NotReducible)


def run(job: JobSpec) -> Tuple[int, dict]:
    """Execute one job; the report embeds its own certificates."""
    if job.command not in _HANDLERS:
        raise MalformedInput(f"unknown command {job.command!r}")
    if job.fmt != "json":
        raise MalformedInput(f"unsupported format {job.fmt!r}")
    if not isinstance(job.precision, int) or job.precision < 4:
        raise MalformedInput("--prec must be an integer of at least 4")
    try:
        status, payload = _HANDLERS[job.command](job)
    except _NEGATIVE_ERRORS as exc:
        status, payload = NEGATIVE, {"reason": str(exc)}
    except PrecisionLoss as exc:
        status, payload = UNRESOLVED, {"reason": str(exc)}
    report = {
        "command": job.command,
        "precision": job.precision,
        "status": status,
    }
    for key, val in payload.items():
        if key in report:
            raise MalformedInput(f"payload key {key!r} collides with the envelope")
        report[key] = val
    return _EXIT[status], report


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=DEFAULT_PRECISION,
                        help="working precision (default 16)")
    common.add_argument("--format", default="json", choices=["json"],
                        help="report format")
    common.add_argument("--output", default=None,
                        help="write the report here (atomically) instead of stdout")

    parser = argparse.ArgumentParser(
        prog="liebialg",
        description="Exact constructions and classifications for Lie bialgebra "
                    "structures over formal Laurent series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify-algebra", parents=[common],
                        help="trichotomy of K[x]/(x^2+px+q)")
    sp.add_argument("--p", required=True, help="coefficient p, a scalar literal")
    sp.add_argument("--q", required=True, help="coefficient q, a scalar literal")

    sp = sub.add_parser("build-r", parents=[common],
                        help="build the r-matrix of an admissible triple")
    sp.add_argument("--type", dest="family", required=True, help="A, B, or D")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--triple", default="empty",
                    help="'empty', a file path, or inline JSON")
    sp.add_argument("--param", default=None,
                    help="comma-separated rationals for the free Cartan parameter")

    sp = sub.add_parser("verify-r", parents=[common],
                        help="check CYB and the symmetry identity for a tensor")
    sp.add_argument("--type", dest="family", required=True)
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--tensor", required=True, help="tensor file or inline JSON")

    sp = sub.add_parser("enumerate-triples", parents=[common],
                        help="list every admissible triple of a root system")
    sp.add_argument("--type", dest="family", required=True)
    sp.add_argument("--rank", type=int, required=True)

    sp = sub.add_parser("centralizer", parents=[common],
                        help="test membership in the centralizer of a triple's r-matrix")
    sp.add_argument("--algebra", required=True, choices=["sl", "o"])
    sp.add_argument("--n", type=int, required=True, help="matrix size")
    sp.add_argument("--triple", default="empty")
    sp.add_argument("--matrix", required=True, help="matrix file or inline JSON")

    sp = sub.add_parser("classify-cocycle", parents=[common],
                        help="normalize a Galois cocycle and report its class")
    sp.add_argument("--algebra", required=True, choices=["sl", "o"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--triple", default=None,
                    help="sl only: 'empty', a file path, or inline JSON")
    sp.add_argument("--matrix", required=True)

    sp = sub.add_parser("classify-twisted", parents=[common],
                        help="normalize a twisted cocycle and build its r-matrix")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--triple", default="empty")
    sp.add_argument("--matrix", required=True)

    sp = sub.add_parser("check-lagrangian", parents=[common],
                        help="isotropy / closure / transversality of a subspace")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--matrix", default=None,
                    help="subspace generators; omit for the standard complement")

    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    return JobSpec(
        command=args.command,
        precision=args.prec,
        fmt=args.format,
        output=args.output,
        algebra=getattr(args, "algebra", None),
        n=getattr(args, "n", None),
        family=getattr(args, "family", None),
        rank=getattr(args, "rank", None),
        triple=getattr(args, "triple", None),
        matrix=getattr(args, "matrix", None),
        tensor=getattr(args, "tensor", None),
        param=getattr(args, "param", None),
        p=getattr(args, "p", None),
        q=getattr(args, "q", None),
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    job = job_from_args(args)
    try:
        code, report = run(job)
    except (MalformedInput, ScalarParseError) as exc:
        print(f"liebialg: input error: {exc}", file=sys.stderr)
        return 2
    except LieBialgError as exc:
        print(f"liebialg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = report_text(report)
    if job.output:
        write_atomic(job.output, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
