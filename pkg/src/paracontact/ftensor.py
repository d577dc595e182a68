"""Admissible (0,3)-tensors, their operator view, invariants and group action.

``coeffs[a, b, c] = F(f_a, f_b, f_c)`` over the basis of the structure. The
operator view ``(A_{e_1}..A_{e_2n}, A_xi)`` needs a basis adapted to the
splitting ``V = ker(eta) + span(xi)``: the last basis vector is ``xi`` and the
others are horizontal. They then serve as the frame ``e_1..e_2n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionError,
    GroupElementError,
    InadmissibleError,
    OperatorConstraintError,
    StructureError,
)
from .scalars import as_array, max_abs
from .structure import GroupElement, StructureSpace, group_element_violations


def pullback(T: np.ndarray, M1=None, M2=None, M3=None) -> np.ndarray:
    """``G[a,b,c] = sum T[p,q,r] M1[p,a] M2[q,b] M3[r,c]``, i.e. ``T(M1 X, M2 Y, M3 Z)``.

    ``None`` stands for the identity.
    """
    out = T
    for slot, M in enumerate((M1, M2, M3)):
        if M is None:
            continue
        out = np.moveaxis(np.tensordot(out, M, axes=([slot], [0])), -1, slot)
    return out


def contract(T: np.ndarray, slot: int, v: np.ndarray) -> np.ndarray:
    """Insert the vector ``v`` into one slot of ``T``."""
    return np.tensordot(T, v, axes=([slot], [0]))


@dataclass(frozen=True, eq=False)
class FTensor:
    S: StructureSpace
    coeffs: np.ndarray

    def __post_init__(self):
        d = self.S.dim
        if self.coeffs.shape != (d, d, d):
            raise DimensionError(f"coefficients must have shape {(d, d, d)}, got {self.coeffs.shape}")

    def _check_same(self, other: "FTensor"):
        if not self.S.same_as(other.S):
            raise StructureError("tensors live on different structures")

    def __add__(self, other: "FTensor") -> "FTensor":
        self._check_same(other)
        return FTensor(self.S, self.coeffs + other.coeffs)

    def __sub__(self, other: "FTensor") -> "FTensor":
        self._check_same(other)
        return FTensor(self.S, self.coeffs - other.coeffs)

    def __neg__(self) -> "FTensor":
        return FTensor(self.S, -self.coeffs)

    def __mul__(self, c) -> "FTensor":
        c = as_array(c, self.S.exact)[()]
        return FTensor(self.S, self.coeffs * c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FTensor):
            return NotImplemented
        return self.S.same_as(other.S) and bool(np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None

    def __call__(self, X, Y, Z):
        X, Y, Z = (as_array(v, self.S.exact) for v in (X, Y, Z))
        return contract(contract(contract(self.coeffs, 2, Z), 1, Y), 0, X)

    def max_abs(self):
        return max_abs(self.coeffs)

    def is_zero(self, scale=0) -> bool:
        return self.S.is_zero(self.coeffs, scale)


def zero_tensor(S: StructureSpace) -> FTensor:
    return FTensor(S, S.zeros((S.dim,) * 3))


def tensor(S: StructureSpace, values) -> FTensor:
    """Wrap raw coefficient values, converting them to the structure's mode."""
    return FTensor(S, as_array(values, S.exact))


# -- admissibility ---------------------------------------------------------------


def _slot_xi_terms(S: StructureSpace, T: np.ndarray) -> np.ndarray:
    """``eta(Y) T(X,Z,xi) - eta(Z) T(X,Y,xi)`` as an array indexed [X,Y,Z]."""
    K = contract(T, 2, S.xi)  # K[a, c] = T(f_a, f_c, xi)
    return np.einsum("b,ac->abc", S.eta, K) - np.einsum("c,ab->abc", S.eta, K)


def phi_reflection(S: StructureSpace, T: np.ndarray) -> np.ndarray:
    """``R(T)(X,Y,Z) = T(X,phi Y,phi Z) - eta(Y) T(X,Z,xi) + eta(Z) T(X,Y,xi)``.

    An involution on tensors antisymmetric in the last two slots; its fixed
    points are exactly the admissible tensors.
    """
    return pullback(T, None, S.phi, S.phi) - _slot_xi_terms(S, T)


def admissibility_violations(F: FTensor) -> list[str]:
    S, T = F.S, F.coeffs
    scale = F.max_abs()
    problems = []
    if not S.is_zero(T + np.swapaxes(T, 1, 2), scale):
        problems.append("F(X,Y,Z)=−F(X,Z,Y) violated")
    if not S.is_zero(pullback(T, None, S.phi, S.phi) - T - _slot_xi_terms(S, T), scale):
        problems.append("F(X,φY,φZ)=F(X,Y,Z)+η(Y)F(X,Z,ξ)−η(Z)F(X,Y,ξ) violated")
    return problems


def is_admissible(F: FTensor) -> bool:
    return not admissibility_violations(F)


def require_admissible(F: FTensor) -> None:
    problems = admissibility_violations(F)
    if problems:
        raise InadmissibleError(problems)


def admissible_projection(S: StructureSpace, T) -> FTensor:
    """Project any (2n+1)^3 array onto the admissible space: ``(1+R)/2`` after antisymmetrizing."""
    T = as_array(T, S.exact)
    if T.shape != (S.dim,) * 3:
        raise DimensionError(f"expected shape {(S.dim,) * 3}, got {T.shape}")
    half = S.scalar(1, 2)
    A = (T - np.swapaxes(T, 1, 2)) * half
    return FTensor(S, (A + phi_reflection(S, A)) * half)


# -- operator view -----------------------------------------------------------------


def require_adapted(S: StructureSpace) -> None:
    """The last basis vector must be xi and the others must lie in ker(eta)."""
    last = S.dim - 1
    target = S.zeros(S.dim)
    target[last] = S.scalar(1)
    if not S.is_zero(S.xi - target) or not S.is_zero(S.eta[:last]):
        raise StructureError("operator view requires a basis (e_1..e_2n, xi) adapted to ker(eta)")


@dataclass(frozen=True, eq=False)
class OperatorFamily:
    """Matrices of ``A_{e_1}..A_{e_2n}`` (``A[i]``) and ``A_xi`` in the structure's basis."""

    S: StructureSpace
    A: tuple
    A_xi: np.ndarray

    def operator_along(self, v: np.ndarray) -> np.ndarray:
        """``A_v = sum_i v^i A_{e_i}`` for a horizontal vector ``v``."""
        out = self.S.zeros((self.S.dim, self.S.dim))
        for i, Ai in enumerate(self.A):
            if v[i] != 0:
                out = out + v[i] * Ai
        return out


def operator_family(S: StructureSpace, A, A_xi=None) -> OperatorFamily:
    require_adapted(S)
    d = S.dim
    mats = tuple(as_array(m, S.exact) for m in A)
    if len(mats) != 2 * S.n or any(m.shape != (d, d) for m in mats):
        raise DimensionError(f"expected {2 * S.n} matrices of shape {(d, d)}")
    A_xi = S.zeros((d, d)) if A_xi is None else as_array(A_xi, S.exact)
    if A_xi.shape != (d, d):
        raise DimensionError(f"A_xi must have shape {(d, d)}")
    return OperatorFamily(S, mats, A_xi)


def operator_violations(ops: OperatorFamily) -> list[str]:
    """Names of the operator constraints that fail."""
    S = ops.S
    m = 2 * S.n
    problems = []
    gA = [S.g @ Ai for Ai in ops.A]
    if not all(S.is_zero(gA[i][j] + gA[j][i]) for i in range(m) for j in range(m)):
        problems.append("skew pairing g(A_{e_i}X,e_j)=−g(A_{e_j}X,e_i)")
    coupling_ok = True
    for i in range(m):
        lhs = ops.operator_along(S.phi[:, i])
        rhs = -S.phi @ ops.A[i] - np.multiply.outer(S.xi, S.g[i] @ ops.A_xi)
        if not S.is_zero(lhs - rhs):
            coupling_ok = False
            break
    if not coupling_ok:
        problems.append("coupling A_{φe_i}X=−φ(A_{e_i}X)−g(A_ξX,e_i)ξ")
    gphiA = S.phi.T @ S.g @ ops.A_xi
    if not all(S.is_zero(S.eta @ ops.A[i] + gphiA[i]) for i in range(m)):
        problems.append("vertical part η(A_{e_i}X)=−g(A_ξX,φe_i)")
    if not S.is_zero(S.eta @ ops.A_xi):
        problems.append("horizontal A_ξ: η(A_ξX)=0")
    return problems


def assemble_from_operators(ops: OperatorFamily) -> FTensor:
    """``F(X,Y,Z) = Y^i g(A_{e_i}X, Z) + eta(Y) g(A_xi X, phi Z)``."""
    problems = operator_violations(ops)
    if problems:
        raise OperatorConstraintError(problems)
    S = ops.S
    T = S.zeros((S.dim,) * 3)
    for i, Ai in enumerate(ops.A):
        T[:, i, :] = Ai.T @ S.g
    T[:, S.dim - 1, :] = ops.A_xi.T @ S.g @ S.phi
    return FTensor(S, T)


def extract_operators(F: FTensor) -> OperatorFamily:
    """Inverse of :func:`assemble_from_operators` on admissible tensors."""
    S = F.S
    require_adapted(S)
    require_admissible(F)
    T = F.coeffs
    A = tuple(S.g_inv @ T[:, j, :].T for j in range(2 * S.n))
    A_xi = -S.phi @ S.g_inv @ T[:, S.dim - 1, :].T
    return OperatorFamily(S, A, A_xi)


# -- invariants ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OneForms:
    theta: np.ndarray
    theta_star: np.ndarray
    omega: np.ndarray


def theta(F: FTensor) -> np.ndarray:
    """``theta(X) = g^{ab} F(f_a, f_b, X)`` summed over the full basis."""
    return np.einsum("ab,abc->c", F.S.g_inv, F.coeffs)


def one_forms(F: FTensor) -> OneForms:
    S = F.S
    T = F.coeffs
    th = theta(F)
    th_star = np.einsum("ab,abc->c", S.g_inv @ S.phi.T, T)
    omega = contract(contract(T, 0, S.xi), 0, S.xi)
    return OneForms(th, th_star, omega)


def trace_one_forms(ops: OperatorFamily) -> dict:
    """The same 1-forms read off operator traces.

    ``theta(e_i) = -tr A_{e_i}``, ``theta(xi) = tr(A_xi phi)``, ``theta*(xi) = -tr A_xi``.
    """
    S = ops.S
    return {
        "theta_horizontal": [-np.trace(Ai) for Ai in ops.A],
        "theta_xi": np.trace(ops.A_xi @ S.phi),
        "theta_star_xi": -np.trace(ops.A_xi),
    }


def raised(F: FTensor) -> np.ndarray:
    """All three indices raised with ``g^{-1}``."""
    S = F.S
    d = S.g_inv_diagonal
    if d is not None:
        return F.coeffs * np.einsum("a,b,c->abc", d, d, d)
    return pullback(F.coeffs, S.g_inv, S.g_inv, S.g_inv)


def inner_product(F1: FTensor, F2: FTensor):
    """``<F1,F2> = g^{aq} g^{br} g^{cs} F1_abc F2_qrs``; indefinite."""
    F1._check_same(F2)
    return np.sum(F1.coeffs * raised(F2))


def group_action(ge: GroupElement, F: FTensor) -> FTensor:
    """``(lambda(a) F)(X,Y,Z) = F(a^-1 X, a^-1 Y, a^-1 Z)``."""
    problems = group_element_violations(F.S, ge)
    if problems:
        raise GroupElementError("; ".join(problems))
    M = ge.a_inv
    return FTensor(F.S, pullback(F.coeffs, M, M, M))


def transport_tensor(F: FTensor, P, S_new: StructureSpace) -> FTensor:
    """Components of ``F`` in the basis given by the columns of ``P``."""
    P = as_array(P, F.S.exact)
    return FTensor(S_new, pullback(F.coeffs, P, P, P))
