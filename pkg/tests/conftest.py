"""Independent oracles shared by the test modules.

These evaluate definitions entry by entry with plain loops so they share no
vectorized code with the library.
"""

import itertools

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=25, deadline=None)
settings.load_profile("default")


def loop_inner_product(S, A, B):
    """g^{ap} g^{bq} g^{cr} A_abc B_pqr by sextuple loop over nonzero entries."""
    d = S.dim
    gi = S.g_inv
    total = 0
    for a, b, c in itertools.product(range(d), repeat=3):
        if A[a, b, c] == 0:
            continue
        for p, q, r in itertools.product(range(d), repeat=3):
            w = gi[a, p] * gi[b, q] * gi[c, r]
            if w != 0:
                total += A[a, b, c] * w * B[p, q, r]
    return total


def unit(S, k):
    v = S.zeros(S.dim)
    v[k] = S.scalar(1)
    return v


def evaluate(T, X, Y, Z):
    d = len(X)
    return sum(T[a, b, c] * X[a] * Y[b] * Z[c]
               for a in range(d) for b in range(d) for c in range(d)
               if X[a] != 0 and Y[b] != 0 and Z[c] != 0)


def loop_admissible(S, T) -> bool:
    """Check both admissibility identities on every basis triple by direct evaluation."""
    d = S.dim
    basis = [unit(S, k) for k in range(d)]
    xi = S.xi
    for X, Y, Z in itertools.product(basis, repeat=3):
        if evaluate(T, X, Y, Z) != -evaluate(T, X, Z, Y):
            return False
        lhs = evaluate(T, X, S.phi @ Y, S.phi @ Z)
        rhs = (evaluate(T, X, Y, Z) + (S.eta @ Y) * evaluate(T, X, Z, xi)
               - (S.eta @ Z) * evaluate(T, X, Y, xi))
        if lhs != rhs:
            return False
    return True


@pytest.fixture(params=[1, 2, 3], ids=lambda n: f"n{n}")
def n(request):
    return request.param


ACCEPTANCE_LINES = []


def record(number: int, title: str, passed: bool, detail: str = "") -> None:
    line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
