"""Projector tree splitting an admissible tensor into eleven orthogonal parts.

The tree is::

    F = p1 F + p2 F + p3 F + p4 F
    p1 F  -> (phi-anti part, phi-invariant part = F_3)
             phi-anti part -> (theta part = F_1, theta-free part = F_2)
    p2 F  -> operator B = A_xi on ker(eta), split six ways -> F_4..F_9
    p3 F  =  F_10,  p4 F = F_11

The p2 branch works on ``B`` directly: it splits into the phi-commuting and
phi-anticommuting halves, then into g-symmetric and g-skew parts, and finally
peels off the two trace parts (multiples of ``id`` and of ``phi``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotInSubspaceError
from .ftensor import FTensor, contract, inner_product, pullback, require_admissible, theta
from .structure import StructureSpace

CLASS_COUNT = 11


def p(F: FTensor, i: int) -> FTensor:
    S, T, h = F.S, F.coeffs, F.S.h
    if i == 1:
        return FTensor(S, pullback(T, h, h, h))
    if i == 2:
        K = contract(pullback(T, h, h, None), 2, S.xi)  # K[a,c] = F(h f_a, h f_c, xi)
        return FTensor(S, -np.einsum("b,ac->abc", S.eta, K) + np.einsum("c,ab->abc", S.eta, K))
    if i == 3:
        L = contract(pullback(T, None, h, h), 0, S.xi)
        return FTensor(S, np.einsum("a,bc->abc", S.eta, L))
    if i == 4:
        w = contract(contract(pullback(T, None, None, h), 0, S.xi), 0, S.xi)
        ee = np.multiply.outer(S.eta, S.eta)
        return FTensor(S, np.einsum("ab,c->abc", ee, w) - np.einsum("ac,b->abc", ee, w))
    raise ValueError(f"p index must be 1..4, got {i}")


def _require_fixed(F: FTensor, G: FTensor, what: str) -> None:
    if not F.S.is_zero(F.coeffs - G.coeffs, F.max_abs()):
        raise NotInSubspaceError(f"input is not in {what}")


# -- W_1 -----------------------------------------------------------------------------


def _w1_split(F: FTensor) -> tuple[FTensor, FTensor]:
    S = F.S
    swapped = pullback(F.coeffs, S.phi, S.phi, None)
    half = S.scalar(1, 2)
    return FTensor(S, (F.coeffs - swapped) * half), FTensor(S, (F.coeffs + swapped) * half)


def w1_split(F: FTensor) -> tuple[FTensor, FTensor]:
    """Split a W_1 tensor by ``F(phi X, phi Y, Z) = -/+ F(X,Y,Z)``; the second part is F_3."""
    _require_fixed(F, p(F, 1), "W_1")
    return _w1_split(F)


def m3_constant(n: int):
    """Normalization of the theta part, 1/(2(n-1)); undefined at n=1 where W_1 = 0."""
    if n < 2:
        raise ValueError("the theta-part normalization is singular at n=1")
    return Fraction(1, 2 * (n - 1))


def theta_frame(S: StructureSpace, th: np.ndarray, *, horizontal_arg: bool = False) -> np.ndarray:
    """Unnormalized ``g(X,phi Y) th(phi Z) - g(X,phi Z) th(phi Y) - g(phi X,phi Y) th(Z) + g(phi X,phi Z) th(Y)``.

    With ``horizontal_arg`` the last two terms use ``th(hZ)``, ``th(hY)``.
    """
    G1 = S.g @ S.phi
    G2 = S.phi.T @ S.g @ S.phi
    th_phi = th @ S.phi
    th_plain = th @ S.h if horizontal_arg else th
    return (np.einsum("ab,c->abc", G1, th_phi) - np.einsum("ac,b->abc", G1, th_phi)
            - np.einsum("ab,c->abc", G2, th_plain) + np.einsum("ac,b->abc", G2, th_plain))


def _m3_refine(F: FTensor) -> tuple[FTensor, FTensor]:
    S = F.S
    if S.n == 1:
        z = FTensor(S, S.zeros(F.coeffs.shape))
        return z, z
    kappa = S.scalar(1, 2 * (S.n - 1))
    part1 = FTensor(S, theta_frame(S, theta(F)) * kappa)
    return part1, F - part1


def m3_refine(F: FTensor) -> tuple[FTensor, FTensor]:
    """Split the phi-anti part of W_1 into its theta part (F_1) and theta-free part (F_2)."""
    _require_fixed(F, p(F, 1), "W_1")
    _require_fixed(F, _w1_split(F)[0], "the phi-anti part of W_1")
    return _m3_refine(F)


def solve_m3_constant(F: FTensor):
    """Oracle for the theta-part normalization.

    Finds the unique ``k`` with ``theta(k * theta_frame(theta_F)) = theta_F`` on
    a phi-anti W_1 tensor ``F``. Raises ValueError when ``theta_F = 0`` (no
    information) or when no single constant works.
    """
    th = theta(F)
    th_frame = theta(FTensor(F.S, theta_frame(F.S, th)))
    ratios = set()
    for x, y in zip(th, th_frame):
        if y == 0:
            if x != 0:
                raise ValueError("theta is not reproducible by any constant")
            continue
        ratios.add(x / y)
    if not ratios:
        raise ValueError("theta vanishes; draw another tensor")
    if len(ratios) > 1:
        raise ValueError(f"inconsistent ratios {sorted(ratios)}")
    return ratios.pop()


# -- W_2 -----------------------------------------------------------------------------


def _extract_axi(F: FTensor) -> np.ndarray:
    S = F.S
    K = contract(pullback(F.coeffs, S.h, None, None), 1, S.xi)  # K[a,c] = F(h f_a, xi, f_c)
    return -S.phi @ S.g_inv @ K.T


def extract_axi(F: FTensor) -> np.ndarray:
    """Matrix of ``A_xi`` on ker(eta) recovered from a W_2 tensor (zero on xi)."""
    _require_fixed(F, p(F, 2), "W_2")
    return _extract_axi(F)


def adjoint(S: StructureSpace, M: np.ndarray) -> np.ndarray:
    """g-adjoint: ``g(M X, Y) = g(X, M* Y)``."""
    return S.g_inv @ M.T @ S.g


W2_CLASSES = (4, 5, 6, 7, 8, 9)


def w2_operator_split(S: StructureSpace, B: np.ndarray) -> dict[int, np.ndarray]:
    """Six-way split of ``B`` indexed by the class it generates."""
    half = S.scalar(1, 2)
    two_n = S.scalar(2 * S.n)
    comm = (B + S.phi @ B @ S.phi) * half
    anti = B - comm
    comm_adj = adjoint(S, comm)
    anti_adj = adjoint(S, anti)
    comm_sym, comm_skew = (comm + comm_adj) * half, (comm - comm_adj) * half
    anti_sym, anti_skew = (anti + anti_adj) * half, (anti - anti_adj) * half
    b5 = S.h * (np.trace(comm_sym) / two_n)
    b4 = S.phi * (np.trace(comm_skew @ S.phi) / two_n)
    return {4: b4, 5: b5, 6: comm_sym - b5, 7: comm_skew - b4, 8: anti_skew, 9: anti_sym}


def reassemble_w2(S: StructureSpace, B: np.ndarray) -> FTensor:
    """``F(X,Y,Z) = -eta(Y) g(phi B hX, Z) + eta(Z) g(phi B hX, Y)``."""
    G = (S.phi @ B @ S.h).T @ S.g
    return FTensor(S, -np.einsum("b,ac->abc", S.eta, G) + np.einsum("c,ab->abc", S.eta, G))


# -- full decomposition ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ComponentDecomposition:
    F: FTensor
    components: tuple  # components[i-1] is the F_i part
    residual: FTensor

    @property
    def magnitudes(self) -> tuple:
        return tuple(c.max_abs() for c in self.components)

    @property
    def self_ips(self) -> tuple:
        return tuple(inner_product(c, c) for c in self.components)

    def component(self, i: int) -> FTensor:
        return self.components[i - 1]


def decompose(F: FTensor, *, check: bool = True) -> ComponentDecomposition:
    """Split an admissible tensor into its eleven class components."""
    if check:
        require_admissible(F)
    S = F.S
    anti, c3 = _w1_split(p(F, 1))
    c1, c2 = _m3_refine(anti)
    parts = w2_operator_split(S, _extract_axi(p(F, 2)))
    w2 = [reassemble_w2(S, parts[k]) for k in W2_CLASSES]
    components = (c1, c2, c3, *w2, p(F, 3), p(F, 4))
    total = components[0]
    for c in components[1:]:
        total = total + c
    return ComponentDecomposition(F, components, F - total)
