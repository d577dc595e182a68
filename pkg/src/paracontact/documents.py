"""JSON input documents and report serialization.

Input layout::

    {
      "n": 2,
      "scalars": "rational",            # or "float"
      "F": {"kind": "tensor", "values": [[[...]]]}
         | {"kind": "operators", "A": [M_1, ..., M_2n], "A_xi": M},   # A_xi optional
      "structure": {"g": ..., "phi": ..., "xi": ..., "eta": ...},      # optional
      "admit": false                    # optional: project inadmissible tensors
    }

Rationals are strings ``"p/q"`` (integers may be bare). Arrays are row-major,
0-based, in basis order ``(e_1..e_n, phi e_1..phi e_n, xi)``.
"""

from __future__ import annotations

import json
from typing import NamedTuple

import numpy as np

from .classifier import ClassificationReport
from .errors import (
    DimensionError,
    InadmissibleError,
    OperatorConstraintError,
    SchemaError,
)
from .ftensor import (
    FTensor,
    admissibility_violations,
    admissible_projection,
    assemble_from_operators,
    operator_family,
    operator_violations,
    require_adapted,
    tensor,
)
from .linalg import inverse
from .scalars import DEFAULT_TOL, fmt, max_abs
from .structure import STANDARD_PHI_BASIS, StructureSpace, make_structure, require_valid, standard_structure

TOP_KEYS = {"n", "scalars", "F", "structure", "admit"}


class ParsedInput(NamedTuple):
    structure: StructureSpace
    tensor: FTensor
    projection_distance: object = None  # max |T - projected T| when admit=true projected the input


def _shape(value, shape, what):
    arr = np.asarray(value, dtype=object)
    if arr.shape != shape:
        raise SchemaError(f"{what} must have shape {shape}, got {arr.shape}")
    for x in arr.ravel():
        if isinstance(x, bool) or not isinstance(x, (int, float, str)):
            raise SchemaError(f"{what} entries must be numbers or 'p/q' strings, got {x!r}")
    return arr


def _derive_a_xi(S: StructureSpace, A: list) -> np.ndarray:
    """Solve ``eta(A_{e_i} X) = -g(A_xi X, phi e_i)`` for a horizontal-valued ``A_xi``."""
    m = 2 * S.n
    M = (S.phi.T @ S.g)[:m, :m]
    M_inv = inverse(M)
    C = np.stack([-(S.eta @ Ai) for Ai in A])
    out = S.zeros((S.dim, S.dim))
    out[:m, :] = M_inv @ C
    return out


def parse_document(doc: dict, *, tol: float = DEFAULT_TOL, admit: bool | None = None) -> ParsedInput:
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    unknown = set(doc) - TOP_KEYS
    if unknown:
        raise SchemaError(f"unknown keys: {sorted(unknown)}")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError("'n' must be a positive integer")
    scalars = doc.get("scalars", "rational")
    if scalars not in ("rational", "float"):
        raise SchemaError("'scalars' must be 'rational' or 'float'")
    exact = scalars == "rational"
    if admit is None:
        admit = doc.get("admit", False)
    if not isinstance(admit, bool):
        raise SchemaError("'admit' must be a boolean")
    d = 2 * n + 1
    try:
        if "structure" in doc:
            st = doc["structure"]
            if not isinstance(st, dict) or set(st) != {"g", "phi", "xi", "eta"}:
                raise SchemaError("'structure' needs exactly the keys g, phi, xi, eta")
            S = make_structure(
                _shape(st["g"], (d, d), "g"), _shape(st["phi"], (d, d), "phi"),
                _shape(st["xi"], (d,), "xi"), _shape(st["eta"], (d,), "eta"),
                exact=exact, tol=tol,
            )
            require_valid(S)
            if S.same_as(standard_structure(n, exact=exact, tol=tol)):
                S = S.with_basis_kind(STANDARD_PHI_BASIS)
        else:
            S = standard_structure(n, exact=exact, tol=tol)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad scalar in structure: {exc}") from exc
    F_doc = doc.get("F")
    if not isinstance(F_doc, dict) or "kind" not in F_doc:
        raise SchemaError("'F' must be an object with a 'kind'")
    try:
        if F_doc["kind"] == "tensor":
            if set(F_doc) != {"kind", "values"}:
                raise SchemaError("tensor input needs exactly 'kind' and 'values'")
            F = tensor(S, _shape(F_doc["values"], (d, d, d), "values"))
        elif F_doc["kind"] == "operators":
            if not set(F_doc) <= {"kind", "A", "A_xi"} or "A" not in F_doc:
                raise SchemaError("operator input needs 'A' and optionally 'A_xi'")
            A = F_doc["A"]
            if not isinstance(A, list) or len(A) != 2 * n:
                raise SchemaError(f"'A' must be a list of {2 * n} matrices")
            A = [_shape(m, (d, d), f"A[{i}]") for i, m in enumerate(A)]
            if "A_xi" in F_doc:
                ops = operator_family(S, A, _shape(F_doc["A_xi"], (d, d), "A_xi"))
            else:
                ops = operator_family(S, A)
                require_adapted(S)
                ops = operator_family(S, ops.A, _derive_a_xi(S, ops.A))
            problems = operator_violations(ops)
            if problems:
                raise OperatorConstraintError(problems)
            F = assemble_from_operators(ops)
        else:
            raise SchemaError(f"unknown F kind {F_doc['kind']!r}")
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad scalar in F: {exc}") from exc
    except DimensionError as exc:
        raise SchemaError(str(exc)) from exc
    problems = admissibility_violations(F)
    if not problems:
        return ParsedInput(S, F)
    if not admit:
        raise InadmissibleError(problems)
    projected = admissible_projection(S, F.coeffs)
    return ParsedInput(S, projected, max_abs(F.coeffs - projected.coeffs))


def parse_input(data: bytes | str, *, tol: float = DEFAULT_TOL, admit: bool | None = None) -> ParsedInput:
    """Parse a UTF-8 JSON input document into a validated structure and tensor."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    return parse_document(doc, tol=tol, admit=admit)


def _strings(arr):
    if isinstance(arr, np.ndarray):
        return [_strings(x) for x in arr]
    return fmt(arr)


def tensor_document(F: FTensor) -> dict:
    """InputDocument for ``F``; the structure is written only when non-standard."""
    S = F.S
    doc = {"n": S.n, "scalars": "rational" if S.exact else "float"}
    if S.basis_kind != STANDARD_PHI_BASIS:
        doc["structure"] = {k: _strings(getattr(S, k)) for k in ("g", "phi", "xi", "eta")}
    doc["F"] = {"kind": "tensor", "values": _strings(F.coeffs)}
    return doc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def report_dict(report: ClassificationReport, projection_distance=None) -> dict:
    out = report.to_dict()
    if projection_distance is not None:
        out["admission"] = {"projected": True, "projection_distance": fmt(projection_distance)}
    return out


def serialize_report(report: ClassificationReport, fmt_name: str = "json", *, projection_distance=None) -> bytes:
    """Render a report as JSON or as a fixed-width 11-row table."""
    if fmt_name == "json":
        return dumps(report_dict(report, projection_distance)).encode("utf-8")
    if fmt_name != "text":
        raise ValueError(f"unknown report format {fmt_name!r}")
    d = report.to_dict()
    lines = [f"n={report.n}  scalars={d['scalars']}  label={report.label}",
             f"{'class':<6}{'flag':<6}{'magnitude':>16}  {'self_ip':>16}  identity"]
    for i in range(11):
        lines.append(
            f"{'F' + str(i + 1):<6}{'*' if report.flags[i] else '.':<6}"
            f"{d['magnitudes'][i]:>16}  {d['self_ips'][i]:>16}  "
            f"{'ok' if report.characterization_ok[i] else 'FAIL'}"
        )
    of = d["one_forms_summary"]
    lines.append(f"theta(xi)={of['theta_xi']}  theta*(xi)={of['theta_star_xi']}  "
                 f"omega=[{', '.join(of['omega'])}]")
    if projection_distance is not None:
        lines.append(f"input projected onto the admissible space; distance={fmt(projection_distance)}")
    lines.extend(f"note: {note}" for note in report.notes)
    return ("\n".join(lines) + "\n").encode("utf-8")
