"""Class membership, direct-sum labels, characterization identities, rank audit."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import ParacontactError
from .ftensor import (
    FTensor,
    admissible_projection,
    assemble_from_operators,
    one_forms,
    operator_family,
    operator_violations,
    pullback,
    theta,
)
from .linalg import sparse_row
from .projectors import CLASS_COUNT, decompose, theta_frame
from .scalars import fmt
from .structure import StructureSpace, standard_structure

SEPARATOR = " (+) "

F1_NOTE = (
    "F_1 identity checked with coefficient 1/(2(n-1)) and θ(hZ), θ(hY); "
    "the coefficient 1/(2n) does not reproduce θ"
)


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    exact: bool
    flags: tuple
    label: str
    magnitudes: tuple
    self_ips: tuple
    characterization_ok: tuple
    one_forms_summary: dict
    notes: tuple = field(default_factory=tuple)

    def active(self) -> list[int]:
        return [i + 1 for i, f in enumerate(self.flags) if f]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "scalars": "rational" if self.exact else "float",
            "label": self.label,
            "flags": list(self.flags),
            "magnitudes": [fmt(x) for x in self.magnitudes],
            "self_ips": [fmt(x) for x in self.self_ips],
            "characterization_ok": list(self.characterization_ok),
            "one_forms_summary": {
                "theta_xi": fmt(self.one_forms_summary["theta_xi"]),
                "theta_star_xi": fmt(self.one_forms_summary["theta_star_xi"]),
                "omega": [fmt(x) for x in self.one_forms_summary["omega"]],
            },
            "notes": list(self.notes),
        }


def label_for(flags) -> str:
    active = [f"F_{i + 1}" for i, f in enumerate(flags) if f]
    return SEPARATOR.join(active) if active else "F_0"


def classify(F: FTensor, tol: float | None = None) -> ClassificationReport:
    """Decompose ``F`` and flag every class whose component is nonzero.

    Nonzero-ness uses the max-abs coefficient, never the (indefinite) self inner
    product. In float mode the threshold is ``tol * (1 + max|F|)``.
    """
    S = F.S
    D = decompose(F)
    scale = F.max_abs()
    if S.exact:
        flags = tuple(not c.is_zero() for c in D.components)
    else:
        t = S.tol if tol is None else tol
        flags = tuple(bool(c.max_abs() > t * (1 + float(scale))) for c in D.components)
    char_ok = tuple(
        characterization_check(c, i + 1) if flag else True
        for i, (c, flag) in enumerate(zip(D.components, flags))
    )
    forms = one_forms(F)
    summary = {
        "theta_xi": forms.theta @ S.xi,
        "theta_star_xi": forms.theta_star @ S.xi,
        "omega": tuple(forms.omega),
    }
    notes = (F1_NOTE,) if flags[0] else ()
    return ClassificationReport(
        n=S.n,
        exact=S.exact,
        flags=flags,
        label=label_for(flags),
        magnitudes=D.magnitudes,
        self_ips=D.self_ips,
        characterization_ok=char_ok,
        one_forms_summary=summary,
        notes=notes,
    )


# -- characterization identities ---------------------------------------------------------


def _cyc(T):
    """(F(Y,Z,X), F(Z,X,Y)) as arrays indexed [X,Y,Z]."""
    return np.transpose(T, (2, 0, 1)), np.transpose(T, (1, 2, 0))


def identity_residuals(F: FTensor, i: int) -> list:
    """Residual arrays (and scalars) that all vanish iff ``F`` satisfies the F_i identity."""
    S, T = F.S, F.coeffs
    two_n = S.scalar(2 * S.n)
    pp_ = pullback(T, S.phi, S.phi, None)  # F(phi X, phi Y, Z)
    p_p = pullback(T, S.phi, None, S.phi)  # F(phi X, Y, phi Z)
    yzx, zxy = _cyc(T)
    forms = one_forms(F)
    th_xi = forms.theta @ S.xi
    ths_xi = forms.theta_star @ S.xi
    if i == 1:
        if S.n == 1:
            return [T]
        kappa = S.scalar(1, 2 * (S.n - 1))
        return [T - kappa * theta_frame(S, theta(F), horizontal_arg=True)]
    if i == 2:
        return [pp_ + T, forms.theta]
    if i == 3:
        return [pp_ - T]
    if i in (4, 5):
        if i == 4:
            G = S.phi.T @ S.g @ S.phi  # g(phi X, phi Z)
            coef = th_xi / two_n
        else:
            G = S.g @ S.phi  # g(X, phi Z)
            coef = -ths_xi / two_n
        frame = np.einsum("b,ac->abc", S.eta, G) - np.einsum("c,ab->abc", S.eta, G)
        return [T - coef * frame]
    if i == 6:
        return [T + pp_ + p_p, T + yzx - zxy + 2 * pp_, np.array([ths_xi])]
    if i == 7:
        return [T + pp_ + p_p, T + yzx + zxy, np.array([th_xi])]
    if i == 8:
        return [T - pp_ - p_p, T + yzx - zxy - 2 * pp_]
    if i == 9:
        return [T - pp_ - p_p, T + yzx + zxy]
    if i == 10:
        L = np.tensordot(pullback(T, None, S.phi, S.phi), S.xi, axes=([0], [0]))
        return [T - np.einsum("a,bc->abc", S.eta, L)]
    if i == 11:
        w = forms.omega
        ee = np.multiply.outer(S.eta, S.eta)
        return [T - np.einsum("ab,c->abc", ee, w) + np.einsum("ac,b->abc", ee, w)]
    raise ValueError(f"class index must be 1..11, got {i}")


def characterization_check(F: FTensor, i: int) -> bool:
    """Evaluate the F_i identity over all basis triples."""
    scale = F.max_abs()
    return all(F.S.is_zero(r, scale) for r in identity_residuals(F, i))


# -- dimension audit -----------------------------------------------------------------------


@dataclass(frozen=True)
class DimensionAudit:
    n: int
    ranks: tuple  # ranks[i-1] = dim F_i
    total: int
    nullspace_dim: int
    projection_rank: int

    @property
    def consistent(self) -> bool:
        return self.total == self.nullspace_dim == self.projection_rank


def _operator_unknowns(S: StructureSpace):
    d = S.dim
    return (2 * S.n + 1) * d * d


def _operators_from_vector(S: StructureSpace, x) -> tuple[list, np.ndarray]:
    d = S.dim
    mats = [np.asarray(x[k * d * d:(k + 1) * d * d], dtype=object).reshape(d, d) for k in range(2 * S.n + 1)]
    return mats[:-1], mats[-1]


def _constraint_residual(S: StructureSpace, x) -> np.ndarray:
    """Stacked residuals of the operator constraints; linear in the operator entries."""
    A, A_xi = _operators_from_vector(S, x)
    m = 2 * S.n
    gA = [S.g @ Ai for Ai in A]
    out = [gA[i][j] + gA[j][i] for i in range(m) for j in range(i, m)]
    for i in range(m):
        along = sum((S.phi[j, i] * A[j] for j in range(m) if S.phi[j, i] != 0), S.zeros((S.dim, S.dim)))
        rhs = -S.phi @ A[i] - np.multiply.outer(S.xi, S.g[i] @ A_xi)
        out.append((along - rhs).ravel())
    gphiA = S.phi.T @ S.g @ A_xi
    out += [S.eta @ A[i] + gphiA[i] for i in range(m)]
    out.append(S.eta @ A_xi)
    return np.concatenate([np.asarray(r, dtype=object).ravel() for r in out])


def admissible_basis_from_operators(S: StructureSpace) -> list[FTensor]:
    """Basis of the admissible space from the null space of the operator constraints."""
    size = _operator_unknowns(S)
    cols = []
    for k in range(size):
        e = S.zeros(size)
        e[k] = S.scalar(1)
        cols.append(_constraint_residual(S, e))
    M = np.column_stack(cols)
    kernel = linalg.nullspace([sparse_row(row) for row in M], size)
    basis = []
    for x in kernel:
        A, A_xi = _operators_from_vector(S, x)
        ops = operator_family(S, A, A_xi)
        assert not operator_violations(ops)
        basis.append(assemble_from_operators(ops))
    return basis


def projection_rank(S: StructureSpace) -> int:
    """Rank of the admissible projection over tensors antisymmetric in the last two slots."""
    d = S.dim
    images = []
    for a in range(d):
        for b in range(d):
            for c in range(b + 1, d):
                T = S.zeros((d, d, d))
                T[a, b, c] = S.scalar(1)
                T[a, c, b] = S.scalar(-1)
                images.append(sparse_row(admissible_projection(S, T).coeffs.ravel()))
    return linalg.rank(images, d ** 3)


def dimension_audit(n: int) -> DimensionAudit:
    """Ranks of the eleven component projectors over the admissible space (exact)."""
    if not isinstance(n, int) or not 1 <= n <= 4:
        raise ParacontactError("dimension_audit is limited to 1 <= n <= 4")
    S = standard_structure(n)
    basis = admissible_basis_from_operators(S)
    pi_rank = projection_rank(S)
    span_rank = linalg.rank([sparse_row(F.coeffs.ravel()) for F in basis], S.dim ** 3)
    if span_rank != len(basis):
        raise ParacontactError("assembled operator basis is linearly dependent")
    decs = [decompose(F, check=False) for F in basis]
    ranks = tuple(
        linalg.rank([sparse_row(D.components[i].coeffs.ravel()) for D in decs], S.dim ** 3)
        for i in range(CLASS_COUNT)
    )
    total = sum(ranks)
    audit = DimensionAudit(n, ranks, total, len(basis), pi_rank)
    if not audit.consistent:
        raise ParacontactError(f"dimension oracles disagree: {audit}")
    return audit

