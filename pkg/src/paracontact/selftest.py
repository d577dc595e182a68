"""Property suites run by ``paracontact selftest``.

Every check is exact (rational mode). Each suite prints one ``PASS``/``FAIL``
line; :func:`run_selftest` returns True iff all of them pass.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .classifier import characterization_check, classify, dimension_audit
from .errors import ParacontactError
from .ftensor import group_action, inner_product, is_admissible
from .projectors import CLASS_COUNT, _m3_refine, _w1_split, decompose, m3_constant, p, solve_m3_constant
from .samples import EXAMPLE_LETTERS, ExampleParams, closed_form, example, random_admissible
from .structure import random_group_element, standard_structure

EXPECTED_EXAMPLE_LABELS = {"5.1": "F_3", "5.2": "F_9", "5.3": "F_10"}
N1_VANISHING = (1, 2, 3, 6)


def _completeness(decs):
    return all(D.residual.is_zero() for D in decs)


def _idempotence(decs):
    for D in decs:
        for i, c in enumerate(D.components):
            again = decompose(c).components
            if again[i] != c or not all(x.is_zero() for j, x in enumerate(again) if j != i):
                return False
    return True


def _orthogonality(decs):
    for D in decs:
        cs = D.components
        for i in range(CLASS_COUNT):
            for j in range(i + 1, CLASS_COUNT):
                if inner_product(cs[i], cs[j]) != 0:
                    return False
    return True


def _closure(decs):
    return all(is_admissible(c) for D in decs for c in D.components)


def _identities(decs):
    return all(characterization_check(c, i + 1) for D in decs for i, c in enumerate(D.components) if not c.is_zero())


def _equivariance(S, decs, seed):
    for k, D in enumerate(decs):
        ge = random_group_element(S, seed + k)
        moved = decompose(group_action(ge, D.F)).components
        if any(m != group_action(ge, c) for m, c in zip(moved, D.components)):
            return False
        other = decs[(k + 1) % len(decs)].F
        if inner_product(group_action(ge, D.F), group_action(ge, other)) != inner_product(D.F, other):
            return False
    return True


def _n1_vanishing(decs):
    audit = dimension_audit(1)
    if any(audit.ranks[i - 1] != 0 for i in N1_VANISHING):
        return False
    return all(D.components[i - 1].is_zero() for D in decs for i in N1_VANISHING)


def kappa_resolution(n: int, trials: int, seed: int) -> Fraction | None:
    """Resolve the theta-part normalization at ``n`` by the ratio oracle.

    Returns the constant when every informative draw agrees with it, makes the
    split idempotent, and excludes the alternative 1/(2n); otherwise None.
    """
    S = standard_structure(n)
    found = set()
    for k in range(trials):
        anti = _w1_split(p(random_admissible(S, seed + k), 1))[0]
        try:
            found.add(Fraction(solve_m3_constant(anti)))
        except ValueError:
            continue
        part1, part2 = _m3_refine(anti)
        if _m3_refine(part1)[0] != part1 or not _m3_refine(part2)[0].is_zero():
            return None
    if len(found) != 1:
        return None
    kappa = found.pop()
    if kappa != m3_constant(n) or kappa == Fraction(1, 2 * n):
        return None
    return kappa


def _random_params(name: str, rng: random.Random) -> ExampleParams:
    values = {}
    for letter in EXAMPLE_LETTERS[name]:
        num = 0
        while num == 0:
            num = rng.randint(-9, 9)
        values[letter] = Fraction(num, rng.randint(1, 7))
    return ExampleParams(name, values)


def check_examples(draws: int, seed: int) -> bool:
    rng = random.Random(seed)
    for name, label in EXPECTED_EXAMPLE_LABELS.items():
        for _ in range(draws):
            params = _random_params(name, rng)
            _, _, F = example(params)
            if classify(F).label != label:
                return False
            if name == "5.1" and not np.array_equal(F.coeffs, closed_form(params)):
                return False
    return True


def run_selftest(n: int, trials: int, seed: int = 0, out=print) -> bool:
    """Run every suite at ``n`` over ``trials`` random admissible tensors."""
    if n < 1 or trials < 1:
        raise ParacontactError("selftest needs n >= 1 and trials >= 1")
    S = standard_structure(n)
    decs = [decompose(random_admissible(S, seed + k)) for k in range(trials)]
    suites = [
        ("completeness", lambda: _completeness(decs)),
        ("idempotence", lambda: _idempotence(decs)),
        ("orthogonality", lambda: _orthogonality(decs)),
        ("admissibility closure", lambda: _closure(decs)),
        ("characterization identities", lambda: _identities(decs)),
        ("equivariance", lambda: _equivariance(S, decs, seed)),
    ]
    if n == 1:
        suites.append(("n=1 vanishing of F_1, F_2, F_3, F_6", lambda: _n1_vanishing(decs)))
    kn = max(n, 2)
    suites.append((f"theta-part normalization at n={kn}", lambda: kappa_resolution(kn, trials, seed) is not None))
    suites.append(("example families", lambda: check_examples(min(trials, 10), seed)))
    ok = True
    lines = []
    for name, fn in suites:
        try:
            passed = bool(fn())
        except ParacontactError as exc:
            passed = False
            name = f"{name} ({exc})"
        ok &= passed
        lines.append(f"{'PASS' if passed else 'FAIL'} {name} [n={n}, trials={trials}, seed={seed}]")
    out("\n".join(lines))
    return ok
