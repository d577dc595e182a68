"""Parametric example families at n=2 and random tensor generators."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import VanishingClassError
from .ftensor import FTensor, OperatorFamily, admissible_projection, assemble_from_operators, operator_family
from .scalars import to_exact
from .structure import StructureSpace, standard_structure

EXAMPLE_LETTERS = {"5.1": "abcd", "5.2": "abcdef", "5.3": "ab"}


@dataclass(frozen=True)
class ExampleParams:
    name: str
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in EXAMPLE_LETTERS:
            raise ValueError(f"unknown example {self.name!r}; choose from {sorted(EXAMPLE_LETTERS)}")
        wanted = set(EXAMPLE_LETTERS[self.name])
        got = set(self.values)
        if got != wanted:
            missing = "".join(sorted(wanted - got))
            extra = "".join(sorted(got - wanted))
            raise ValueError(f"example {self.name} needs parameters {''.join(sorted(wanted))}"
                             + (f"; missing {missing}" if missing else "")
                             + (f"; unexpected {extra}" if extra else ""))


def parse_params(name: str, text: str) -> ExampleParams:
    """Parse ``"a=1,b=-2/3"`` into :class:`ExampleParams`."""
    values = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"malformed parameter {item!r}; expected k=v")
        values[key.strip()] = to_exact(val.strip())
    return ExampleParams(name, values)


def _matrices_5_1(a, b, c, d):
    z = 0
    A1 = [[z, z, z, z, z], [a, b, c, d, z], [z, z, z, z, z], [-c, -d, -a, -b, z], [z] * 5]
    A2 = [[-a, -b, -c, -d, z], [z] * 5, [c, d, a, b, z], [z] * 5, [z] * 5]
    A3 = [[z] * 5, [c, d, a, b, z], [z] * 5, [-a, -b, -c, -d, z], [z] * 5]
    A4 = [[-c, -d, -a, -b, z], [z] * 5, [a, b, c, d, z], [z] * 5, [z] * 5]
    return [A1, A2, A3, A4], None


def _matrices_5_2(a, b, c, d, e, f):
    z = [0] * 5
    A1 = [z, z, z, z, [-d, -e, -a, -b, 0]]
    A2 = [z, z, z, z, [-e, -f, -b, -c, 0]]
    A3 = [z, z, z, z, [-a, -b, -d, -e, 0]]
    A4 = [z, z, z, z, [-b, -c, -e, -f, 0]]
    A = [[a, b, d, e, 0], [b, c, e, f, 0], [-d, -e, -a, -b, 0], [-e, -f, -b, -c, 0], [0] * 5]
    return [A1, A2, A3, A4], A


def _matrices_5_3(a, b):
    def col(v):
        return [[0, 0, 0, 0, x] for x in v]

    A1 = col([0, a, 0, b, 0])
    A2 = col([-a, 0, -b, 0, 0])
    A3 = col([0, -b, 0, -a, 0])
    A4 = col([b, 0, a, 0, 0])
    return [A1, A2, A3, A4], None


_BUILDERS = {"5.1": _matrices_5_1, "5.2": _matrices_5_2, "5.3": _matrices_5_3}


def example_operators(params: ExampleParams, *, exact: bool = True) -> OperatorFamily:
    S = standard_structure(2, exact=exact)
    args = [params.values[k] for k in EXAMPLE_LETTERS[params.name]]
    if not exact:
        args = [float(x) for x in args]
    A, A_xi = _BUILDERS[params.name](*args)
    return operator_family(S, A, A_xi)


def closed_form(params: ExampleParams, *, literal: bool = True) -> np.ndarray | None:
    """Coefficient array of the reference closed-form expression for ``F``.

    For 5.2 the literal expression has ``f(X^2 Z^2 + X^4 Z^4)`` inside the
    ``eta(Z)`` bracket; ``literal=False`` uses the symmetric ``f(X^2 Y^2 + X^4 Y^4)``.
    Components are 1-based: ``X^1..X^4`` horizontal, ``X^5 = eta(X)``.
    """
    v = {k: to_exact(x) for k, x in params.values.items()}
    basis = np.eye(5, dtype=int)

    def F51(X, Y, Z):
        a, b, c, d = (v[k] for k in "abcd")
        x1, x2, x3, x4 = X[:4]
        y1, y2, y3, y4 = Y[:4]
        z1, z2, z3, z4 = Z[:4]
        return ((a * x1 + b * x2 + c * x3 + d * x4) * (y1 * z2 - y2 * z1 + y3 * z4 - y4 * z3)
                + (c * x1 + d * x2 + a * x3 + b * x4) * (y1 * z4 - y2 * z3 + y3 * z2 - y4 * z1))

    def bracket52(X, W):
        a, b, c, d, e, f = (v[k] for k in "abcdef")
        x1, x2, x3, x4 = X[:4]
        w1, w2, w3, w4 = W[:4]
        return (a * (x1 * w3 + x3 * w1) + b * (x1 * w4 + x2 * w3 + x3 * w2 + x4 * w1)
                + c * (x2 * w4 + x4 * w2) + d * (x1 * w1 + x3 * w3)
                + e * (x1 * w2 + x2 * w1 + x3 * w4 + x4 * w3) + f * (x2 * w2 + x4 * w4))

    def F52(X, Y, Z):
        first = bracket52(X, Z)
        second = bracket52(X, Y)
        if literal:
            f = v["f"]
            x2, x4 = X[1], X[3]
            second = second - f * (x2 * Y[1] + x4 * Y[3]) + f * (x2 * Z[1] + x4 * Z[3])
        return Y[4] * first - Z[4] * second

    def F53(X, Y, Z):
        a, b = v["a"], v["b"]
        y1, y2, y3, y4 = Y[:4]
        z1, z2, z3, z4 = Z[:4]
        return X[4] * (y1 * (a * z2 - b * z4) + y2 * (b * z3 - a * z1)
                       + y3 * (a * z4 - b * z2) + y4 * (b * z1 - a * z3))

    fn = {"5.1": F51, "5.2": F52, "5.3": F53}[params.name]
    out = np.empty((5, 5, 5), dtype=object)
    for i in range(5):
        for j in range(5):
            for k in range(5):
                out[i, j, k] = to_exact(fn(basis[i], basis[j], basis[k]))
    return out


def example(params: ExampleParams, *, exact: bool = True) -> tuple[StructureSpace, OperatorFamily, FTensor]:
    """Build the structure, the operator matrices and the assembled tensor.

    For 5.1 and 5.3 the assembled tensor is checked against the closed form.
    For 5.2 it is not, because the literal expansion has a wrong ``f`` term
    (see :func:`closed_form`).
    """
    ops = example_operators(params, exact=exact)
    F = assemble_from_operators(ops)
    if exact and params.name in ("5.1", "5.3"):
        if not np.array_equal(F.coeffs, closed_form(params)):
            raise AssertionError(f"example {params.name} does not reproduce its closed form")
    return ops.S, ops, F


def random_admissible(S: StructureSpace, seed: int) -> FTensor:
    """Seeded integer draw in [-5, 5] projected onto the admissible space."""
    rng = random.Random(seed)
    d = S.dim
    raw = np.array([rng.randint(-5, 5) for _ in range(d ** 3)], dtype=object).reshape(d, d, d)
    return admissible_projection(S, raw)


@lru_cache(maxsize=None)
def _class_dims(n: int) -> tuple:
    from .classifier import dimension_audit

    return tuple(dimension_audit(n).ranks)


def random_pure(S: StructureSpace, i: int, seed: int, *, max_tries: int = 50) -> FTensor:
    """Nonzero tensor lying purely in class ``F_i``."""
    from .projectors import decompose

    if not 1 <= i <= 11:
        raise ValueError("class index must be in 1..11")
    if _class_dims(S.n)[i - 1] == 0:
        raise VanishingClassError(f"class F_{i} vanishes in dimension {S.dim}")
    for k in range(max_tries):
        c = decompose(random_admissible(S, seed + k)).components[i - 1]
        if not c.is_zero():
            return c
    raise RuntimeError(f"no nonzero F_{i} component after {max_tries} draws")
