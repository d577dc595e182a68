"""Pointwise almost paracontact metric structures.

A structure on a (2n+1)-dimensional space is stored by its components in a
chosen basis. Vectors are columns and ``(M @ x)[row] = sum M[row, col] x[col]``,
so column ``a`` of a matrix is the image of basis vector ``f_a``.

The canonical phi-basis is ordered ``(e_1..e_n, phi e_1..phi e_n, xi)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from gmpy2 import mpq

from . import linalg
from .errors import DegeneracyError, DimensionError, GroupElementError, StructureError
from .scalars import DEFAULT_TOL, as_array, identity, is_zero_array, max_abs, rational_sqrt, zeros

STANDARD_PHI_BASIS = "standard_phi_basis"
GENERAL = "general"


@dataclass(frozen=True, eq=False)
class StructureSpace:
    """Components of ``(g, phi, xi, eta)`` in one basis.

    ``tol`` is None in exact mode; otherwise it is the float-mode zero tolerance.
    ``g_inv`` is None when ``g`` is singular (validation then reports it).
    """

    n: int
    g: np.ndarray
    g_inv: np.ndarray | None
    phi: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    basis_kind: str = GENERAL
    tol: float | None = None

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    @property
    def exact(self) -> bool:
        return self.tol is None

    @cached_property
    def h(self) -> np.ndarray:
        """Matrix of ``hX = X - eta(X) xi``, the projection onto ker(eta)."""
        return identity(self.dim, self.exact) - np.multiply.outer(self.xi, self.eta)

    @cached_property
    def eye(self) -> np.ndarray:
        return identity(self.dim, self.exact)

    @cached_property
    def g_inv_diagonal(self) -> np.ndarray | None:
        """Diagonal of ``g_inv`` when it is diagonal, used for fast index raising."""
        if self.g_inv is None:
            return None
        d = np.diag(self.g_inv).copy()
        off = self.g_inv - np.diag(d)
        return d if is_zero_array(off, self.tol) else None

    def scalar(self, num, den=1):
        return mpq(num, den) if self.exact else num / den

    def zeros(self, shape) -> np.ndarray:
        return zeros(shape, self.exact)

    def is_zero(self, arr, scale=0) -> bool:
        return is_zero_array(np.asarray(arr), self.tol, scale)

    def same_as(self, other: "StructureSpace") -> bool:
        if self is other:
            return True
        return (
            self.n == other.n
            and self.exact == other.exact
            and all(
                np.array_equal(a, b)
                for a, b in ((self.g, other.g), (self.phi, other.phi), (self.xi, other.xi), (self.eta, other.eta))
            )
        )

    def with_basis_kind(self, kind: str) -> "StructureSpace":
        return StructureSpace(self.n, self.g, self.g_inv, self.phi, self.xi, self.eta, kind, self.tol)


def make_structure(g, phi, xi, eta, *, exact: bool = True, tol: float = DEFAULT_TOL,
                   basis_kind: str = GENERAL) -> StructureSpace:
    """Build a structure from raw components, converting to the requested mode.

    Raises DimensionError if the shapes are inconsistent or the dimension is even.
    The result is not validated; call :func:`validate_structure` for that.
    """
    g = as_array(g, exact)
    phi = as_array(phi, exact)
    xi = as_array(xi, exact)
    eta = as_array(eta, exact)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise DimensionError(f"g must be square, got shape {g.shape}")
    dim = g.shape[0]
    if dim % 2 == 0 or dim < 3:
        raise DimensionError(f"dimension must be 2n+1 with n >= 1, got {dim}")
    if phi.shape != (dim, dim) or xi.shape != (dim,) or eta.shape != (dim,):
        raise DimensionError(
            f"shapes disagree: g {g.shape}, phi {phi.shape}, xi {xi.shape}, eta {eta.shape}"
        )
    return StructureSpace(
        n=(dim - 1) // 2,
        g=g,
        g_inv=linalg.inverse(g),
        phi=phi,
        xi=xi,
        eta=eta,
        basis_kind=basis_kind,
        tol=None if exact else tol,
    )


def standard_structure(n: int, *, exact: bool = True, tol: float = DEFAULT_TOL) -> StructureSpace:
    """The canonical structure in the phi-basis ``(e_1..e_n, phi e_1..phi e_n, xi)``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    dim = 2 * n + 1
    g = np.zeros((dim, dim), dtype=int)
    phi = np.zeros((dim, dim), dtype=int)
    for i in range(n):
        g[i, i] = 1
        g[n + i, n + i] = -1
        phi[n + i, i] = 1
        phi[i, n + i] = 1
    g[2 * n, 2 * n] = 1
    xi = np.zeros(dim, dtype=int)
    xi[2 * n] = 1
    return make_structure(g, phi, xi, xi.copy(), exact=exact, tol=tol, basis_kind=STANDARD_PHI_BASIS)


def validate_structure(S: StructureSpace) -> list[str]:
    """List the violated structure identities; empty when the structure is valid."""
    problems = []
    dim = S.dim
    for name, arr, shape in (("g", S.g, (dim, dim)), ("phi", S.phi, (dim, dim)),
                             ("xi", S.xi, (dim,)), ("eta", S.eta, (dim,))):
        if arr.shape != shape:
            raise DimensionError(f"{name} has shape {arr.shape}, expected {shape}")
    ok = S.is_zero
    one = S.scalar(1)
    if not ok(S.g - S.g.T):
        problems.append("g symmetric violated")
    if S.g_inv is None:
        problems.append("g nondegenerate violated")
    if not ok(S.phi @ S.xi):
        problems.append("φξ=0 violated")
    if not ok(S.eta @ S.phi):
        problems.append("η∘φ=0 violated")
    if not ok(np.array([S.eta @ S.xi - one])) or not ok(np.array([S.xi @ S.g @ S.xi - one])):
        problems.append("η(ξ)=1 violated")
    if not ok(S.phi @ S.phi - S.h):
        problems.append("φ²=id−η⊗ξ violated")
    if not ok(S.phi.T @ S.g @ S.phi + S.g - np.multiply.outer(S.eta, S.eta)):
        problems.append("g(φX,φY)=−g(X,Y)+η(X)η(Y) violated")
    if not ok(S.g @ S.xi - S.eta):
        problems.append("η(X)=g(X,ξ) violated")
    if "g symmetric violated" not in problems:
        pos, neg, zero = linalg.inertia(S.g, S.tol)
        if (pos, neg, zero) != (S.n + 1, S.n, 0):
            problems.append(f"signature (n+1,n) violated: found ({pos},{neg}) with {zero} null")
    return problems


def require_valid(S: StructureSpace) -> None:
    problems = validate_structure(S)
    if problems:
        raise StructureError("invalid structure: " + "; ".join(problems))


def horizontal(S: StructureSpace, X) -> np.ndarray:
    """``hX = X - eta(X) xi``; the horizontal part of ``X``."""
    X = as_array(X, S.exact)
    if X.shape != (S.dim,):
        raise DimensionError(f"vector of length {S.dim} expected, got shape {X.shape}")
    return X - (S.eta @ X) * S.xi


def transport(S: StructureSpace, P) -> StructureSpace:
    """Re-express ``S`` in the basis whose vectors are the columns of ``P``."""
    P = as_array(P, S.exact)
    P_inv = linalg.inverse(P)
    if P_inv is None:
        raise StructureError("change of basis matrix is singular")
    out = StructureSpace(
        n=S.n,
        g=P.T @ S.g @ P,
        g_inv=None if S.g_inv is None else P_inv @ S.g_inv @ P_inv.T,
        phi=P_inv @ S.phi @ P,
        xi=P_inv @ S.xi,
        eta=S.eta @ P,
        basis_kind=GENERAL,
        tol=S.tol,
    )
    if is_standard(out):
        out = out.with_basis_kind(STANDARD_PHI_BASIS)
    return out


def is_standard(S: StructureSpace) -> bool:
    ref = standard_structure(S.n, exact=S.exact, tol=S.tol or DEFAULT_TOL)
    return all(
        S.is_zero(a - b)
        for a, b in ((S.g, ref.g), (S.phi, ref.phi), (S.xi, ref.xi), (S.eta, ref.eta))
    )


# -- phi-basis construction ----------------------------------------------------

_COMBO_COEFFS = (1, -1, 2, -2, 3, -3)


def _gdot(S, u, v):
    return u @ S.g @ v


def _complement(S, chosen, v):
    """Remove the components of ``v`` along the processed pairs (X_j, phi X_j)."""
    for x in chosen:
        px = S.phi @ x
        # g(x,x) = 1 and g(phi x, phi x) = -1
        v = v - _gdot(S, v, x) * x + _gdot(S, v, px) * px
    return v


def _candidates(S, chosen):
    base = []
    for k in range(S.dim):
        v = _complement(S, chosen, S.h[:, k])
        if not S.is_zero(v):
            base.append(v)
    yield from base
    pool = base + [S.phi @ v for v in base]
    yield from pool[len(base):]
    for i, j in itertools.combinations(range(len(pool)), 2):
        for c1 in _COMBO_COEFFS[:2]:
            for c2 in _COMBO_COEFFS:
                yield c1 * pool[i] + c2 * pool[j]


def _unit_vector(S, chosen):
    scale = float(max_abs(S.g)) if not S.exact else 0
    for v in _candidates(S, chosen):
        norm = _gdot(S, v, v)
        if S.exact:
            if norm > 0:
                root = rational_sqrt(norm)
                if root is not None:
                    return v / root
        elif norm > S.tol * (1 + scale) * max(1.0, float(np.abs(v).max()) ** 2):
            return v / np.sqrt(norm)
    if S.exact:
        raise DegeneracyError(
            "no candidate vector with a rational unit normalization was found; "
            "use float mode for this structure"
        )
    raise DegeneracyError("pivot magnitude below tolerance while building a phi-basis")


def build_phi_basis(S: StructureSpace) -> np.ndarray:
    """Change-of-basis matrix whose columns are ``(X_1..X_n, phi X_1..phi X_n, xi)``.

    Candidates are the horizontal parts of the basis vectors, scanned in basis
    order; the first with positive norm (a rational square in exact mode) is
    taken. If none qualifies, phi-images and then small integer combinations are
    tried. Transporting ``S`` by the result yields the standard structure.
    """
    require_valid(S)
    chosen = []
    for _ in range(S.n):
        chosen.append(_unit_vector(S, chosen))
    cols = chosen + [S.phi @ x for x in chosen] + [S.xi]
    return np.column_stack(cols)


# -- structure group -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupElement:
    a: np.ndarray
    a_inv: np.ndarray


def group_element_violations(S: StructureSpace, ge: GroupElement) -> list[str]:
    problems = []
    if ge.a.shape != (S.dim, S.dim) or ge.a_inv.shape != (S.dim, S.dim):
        raise DimensionError("group element has the wrong shape")
    if not S.is_zero(ge.a @ ge.a_inv - S.eye):
        problems.append("a·a⁻¹=id violated")
    if not S.is_zero(ge.a.T @ S.g @ ge.a - S.g):
        problems.append("g(aX,aY)=g(X,Y) violated")
    if not S.is_zero(ge.a @ S.phi - S.phi @ ge.a):
        problems.append("aφ=φa violated")
    if not S.is_zero(ge.a @ S.xi - S.xi):
        problems.append("aξ=ξ violated")
    return problems


def make_group_element(S: StructureSpace, a) -> GroupElement:
    a = as_array(a, S.exact)
    a_inv = linalg.inverse(a)
    if a_inv is None:
        raise GroupElementError("matrix is singular")
    ge = GroupElement(a, a_inv)
    problems = group_element_violations(S, ge)
    if problems:
        raise GroupElementError("; ".join(problems))
    return ge


def group_element_from_T(S: StructureSpace, T) -> GroupElement:
    """Element acting by ``T`` on the (+1)-eigenspace of phi.

    On the basis ``n_i+ = e_i + phi e_i``, ``n_i- = e_i - phi e_i`` the element
    acts by ``T`` and by ``T^{-T}`` respectively (``g(n_i+, n_j-) = 2 delta_ij``)
    and fixes ``xi``. Requires the standard phi-basis.
    """
    if S.basis_kind != STANDARD_PHI_BASIS:
        raise StructureError("group elements are sampled in the standard phi-basis")
    n = S.n
    T = as_array(T, S.exact)
    if T.shape != (n, n):
        raise DimensionError(f"T must be {n}x{n}")
    T_inv = linalg.inverse(T)
    if T_inv is None:
        raise GroupElementError("T is singular")
    U = T_inv.T
    half = S.scalar(1, 2)
    a = S.zeros((S.dim, S.dim))
    a[:n, :n] = (T + U) * half
    a[:n, n:2 * n] = (T - U) * half
    a[n:2 * n, :n] = (T - U) * half
    a[n:2 * n, n:2 * n] = (T + U) * half
    a[2 * n, 2 * n] = S.scalar(1)
    a_inv = S.zeros((S.dim, S.dim))
    Ti_T = T.T
    a_inv[:n, :n] = (T_inv + Ti_T) * half
    a_inv[:n, n:2 * n] = (T_inv - Ti_T) * half
    a_inv[n:2 * n, :n] = (T_inv - Ti_T) * half
    a_inv[n:2 * n, n:2 * n] = (T_inv + Ti_T) * half
    a_inv[2 * n, 2 * n] = S.scalar(1)
    return GroupElement(a, a_inv)


def random_group_element(S: StructureSpace, seed: int, *, max_tries: int = 100) -> GroupElement:
    """Seeded group element from an integer ``T`` with entries in [-3, 3]."""
    rng = random.Random(seed)
    n = S.n
    for _ in range(max_tries):
        T = np.array([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], dtype=object)
        if linalg.det(as_array(T, True)) != 0:
            return group_element_from_T(S, T)
    raise GroupElementError(f"no invertible T found after {max_tries} draws")
