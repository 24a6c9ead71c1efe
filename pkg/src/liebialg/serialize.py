"""JSON formats for matrices, tensors, triples, and subspace specs.

Every value is written through the canonical scalar literal, so a file
emitted by one command is accepted unchanged by the next and re-emitting
a parsed object reproduces the file byte for byte.  Schema problems
raise MalformedInput with a message naming the offending field.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from typing import Optional, Tuple

from .errors import MalformedInput, ScalarParseError
from .matrices import GMatrix
from .rmatrix import AdmissibleTriple
from .scalars import (
    DEFAULT_PRECISION,
    AlgebraKind,
    ExtScalar,
    GaussRat,
    LaurentScalar,
    parse_scalar,
    scalar_text,
)
from .tensors import Tensor2
from .twisted import SubspaceSpec

KIND_LABEL = {
    None: "base",
    AlgebraKind.SPLIT: "split",
    AlgebraKind.RAMIFIED: "ramified",
    AlgebraKind.DUAL_NUMBERS: "dual",
}
LABEL_KIND = {v: k for k, v in KIND_LABEL.items()}


def _coerce_laurent(v, prec: int) -> LaurentScalar:
    if isinstance(v, LaurentScalar):
        return v
    if isinstance(v, GaussRat):
        return LaurentScalar.const(v, prec)
    if isinstance(v, (int, Fraction)):
        return LaurentScalar.const(GaussRat(Fraction(v)), prec)
    raise MalformedInput(f"cannot serialize a value of type {type(v).__name__}")


def value_to_json(v, prec: int = DEFAULT_PRECISION):
    """Scalar as text; extension scalars as a [base, unit] text pair."""
    if isinstance(v, ExtScalar):
        return [scalar_text(v.a), scalar_text(v.b)]
    return scalar_text(_coerce_laurent(v, prec))


def value_from_json(obj, kind: Optional[AlgebraKind], prec: int):
    try:
        if kind is None:
            if not isinstance(obj, str):
                raise MalformedInput("base entries must be scalar literals")
            return parse_scalar(obj, prec)
        if isinstance(obj, str):
            return ExtScalar(kind, parse_scalar(obj, prec), LaurentScalar.zero(prec))
        if isinstance(obj, list) and len(obj) == 2 and all(isinstance(t, str) for t in obj):
            return ExtScalar(kind, parse_scalar(obj[0], prec), parse_scalar(obj[1], prec))
    except ScalarParseError as exc:
        raise MalformedInput(f"bad scalar literal {obj!r}: {exc}") from exc
    raise MalformedInput(f"expected a scalar literal or a pair, got {obj!r}")


def _kind_from_label(label) -> Optional[AlgebraKind]:
    if label not in LABEL_KIND:
        raise MalformedInput(f"unknown scalar domain {label!r}")
    return LABEL_KIND[label]


def _prec_field(obj) -> int:
    prec = obj.get("prec", DEFAULT_PRECISION)
    if not isinstance(prec, int) or prec < 1:
        raise MalformedInput("prec must be a positive integer")
    return prec


def matrix_to_json(m: GMatrix) -> dict:
    prec = max(1, m.prec)
    return {
        "entries": [[value_to_json(x, prec) for x in row] for row in m.entries],
        "kind": KIND_LABEL[m.kind],
        "prec": prec,
    }


def matrix_from_json(obj) -> GMatrix:
    if isinstance(obj, list):
        obj = {"entries": obj, "kind": "base"}
    if not isinstance(obj, dict) or "entries" not in obj:
        raise MalformedInput("a matrix needs an 'entries' field")
    kind = _kind_from_label(obj.get("kind", "base"))
    prec = _prec_field(obj)
    entries = obj["entries"]
    if not isinstance(entries, list) or not entries or not all(
        isinstance(row, list) for row in entries
    ):
        raise MalformedInput("matrix entries must be a non-empty list of rows")
    rows = [[value_from_json(x, kind, prec) for x in row] for row in entries]
    try:
        return GMatrix(rows, kind)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def tensor_to_json(t: Tensor2) -> dict:
    prec = min(
        (getattr(v, "prec", DEFAULT_PRECISION) for _, v in t.items()),
        default=DEFAULT_PRECISION,
    )
    prec = max(1, prec)
    coeffs = {}
    for (a, b), v in t.items():
        coeffs[f"{a},{b}"] = value_to_json(v, prec)
    return {
        "coeffs": coeffs,
        "dim": t.dim,
        "kind": KIND_LABEL[t.kind],
        "prec": prec,
    }


def tensor_from_json(obj) -> Tensor2:
    if not isinstance(obj, dict) or "dim" not in obj or "coeffs" not in obj:
        raise MalformedInput("a tensor needs 'dim' and 'coeffs' fields")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise MalformedInput("tensor dim must be a positive integer")
    kind = _kind_from_label(obj.get("kind", "base"))
    prec = _prec_field(obj)
    if not isinstance(obj["coeffs"], dict):
        raise MalformedInput("tensor coeffs must be an object")
    coeffs = {}
    for key, val in obj["coeffs"].items():
        parts = key.split(",")
        if len(parts) != 2:
            raise MalformedInput(f"bad tensor slot key {key!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise MalformedInput(f"bad tensor slot key {key!r}") from exc
        if not (0 <= a < dim and 0 <= b < dim):
            raise MalformedInput(f"tensor slot {key!r} is out of range")
        coeffs[(a, b)] = value_from_json(val, kind, prec)
    return Tensor2(dim, coeffs, kind)


def triple_to_json(t: AdmissibleTriple) -> dict:
    return {
        "family": t.family,
        "rank": t.rank,
        "tau": [[a, b] for a, b in t.tau],
    }


def triple_from_json(
    obj, family: Optional[str] = None, rank: Optional[int] = None
) -> AdmissibleTriple:
    """Parse a triple object; family/rank fall back to the caller's context."""
    if not isinstance(obj, dict):
        raise MalformedInput("a triple must be a JSON object")
    fam = obj.get("family", family)
    rk = obj.get("rank", rank)
    if fam is None or rk is None:
        raise MalformedInput("the triple needs 'family' and 'rank'")
    if family is not None and fam != family:
        raise MalformedInput(f"triple family {fam!r} does not match {family!r}")
    if rank is not None and rk != rank:
        raise MalformedInput(f"triple rank {rk} does not match {rank}")
    if not isinstance(rk, int) or rk < 1:
        raise MalformedInput("triple rank must be a positive integer")
    raw = obj.get("tau", [])
    tau = {}
    if isinstance(raw, dict):
        items = []
        for k, v in raw.items():
            try:
                items.append((int(k), v))
            except ValueError as exc:
                raise MalformedInput(f"bad tau source {k!r}") from exc
    elif isinstance(raw, list):
        items = []
        for pair in raw:
            if not isinstance(pair, list) or len(pair) != 2:
                raise MalformedInput("tau pairs must be [source, image] lists")
            items.append((pair[0], pair[1]))
    else:
        raise MalformedInput("tau must be a list of pairs or an object")
    for a, b in items:
        if not isinstance(a, int) or not isinstance(b, int):
            raise MalformedInput("tau indices must be integers")
        if not (0 <= a < rk and 0 <= b < rk):
            raise MalformedInput(f"tau index ({a},{b}) is out of range")
        if a in tau:
            raise MalformedInput(f"tau maps source {a} twice")
        tau[a] = b
    if len(set(tau.values())) != len(tau):
        raise MalformedInput("tau images must be distinct")
    return AdmissibleTriple.make(fam, rk, tau)


def subspace_to_json(spec: SubspaceSpec) -> dict:
    return {
        "generators": [matrix_to_json(g) for g in spec.generators],
        "label": spec.label,
    }


def subspace_from_json(obj) -> SubspaceSpec:
    if isinstance(obj, list):
        obj = {"generators": obj}
    if not isinstance(obj, dict) or "generators" not in obj:
        raise MalformedInput("a subspace spec needs a 'generators' list")
    gens_obj = obj["generators"]
    if not isinstance(gens_obj, list) or not gens_obj:
        raise MalformedInput("generators must be a non-empty list")
    gens = [matrix_from_json(g) for g in gens_obj]
    label = obj.get("label", "")
    if not isinstance(label, str):
        raise MalformedInput("label must be a string")
    return SubspaceSpec(gens, label=label)


def report_text(report: dict) -> str:
    """Deterministic rendering: sorted keys, two-space indent."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_atomic(path: str, text: str):
    """Write via a sibling temp file and an atomic replace."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_json_source(src: str) -> Tuple[object, str]:
    """Load inline JSON (leading brace/bracket) or a file path."""
    stripped = src.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            return json.loads(stripped), "<inline>"
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"bad inline JSON: {exc}") from exc
    if not os.path.exists(src):
        raise MalformedInput(f"no such file: {src}")
    try:
        with open(src) as fh:
            return json.load(fh), src
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"bad JSON in {src}: {exc}") from exc
