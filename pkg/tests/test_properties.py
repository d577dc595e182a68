"""Property tests over hypothesis-generated tensors, group elements and rationals."""

from fractions import Fraction

import numpy as np
from hypothesis import assume, given
from hypothesis import strategies as st

from paracontact import linalg
from paracontact.classifier import characterization_check
from paracontact.ftensor import admissible_projection, group_action, inner_product, is_admissible
from paracontact.projectors import decompose
from paracontact.scalars import as_array, fmt, to_exact
from paracontact.structure import group_element_from_T, standard_structure

STRUCTURES = {n: standard_structure(n) for n in (1, 2)}


@st.composite
def admissible(draw, n):
    S = STRUCTURES[n]
    d = S.dim
    vals = draw(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=d ** 3, max_size=d ** 3))
    return admissible_projection(S, as_array(np.array(vals, dtype=object).reshape(d, d, d), True))


@st.composite
def group_elements(draw, n):
    S = STRUCTURES[n]
    entries = draw(st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n))
    T = as_array(np.array(entries, dtype=object).reshape(n, n), True)
    assume(linalg.det(T) != 0)
    return group_element_from_T(S, T)


@given(st.sampled_from([1, 2]).flatmap(admissible))
def test_decomposition_laws(F):
    D = decompose(F)
    assert D.residual.is_zero()
    cs = D.components
    for i in range(11):
        assert is_admissible(cs[i])
        if not cs[i].is_zero():
            assert characterization_check(cs[i], i + 1)
        for j in range(i + 1, 11):
            assert inner_product(cs[i], cs[j]) == 0


@given(admissible(2))
def test_idempotence(F):
    for i, c in enumerate(decompose(F).components):
        again = decompose(c).components
        assert again[i] == c


@given(st.sampled_from([1, 2]).flatmap(lambda n: st.tuples(admissible(n), group_elements(n))))
def test_equivariance(pair):
    F, ge = pair
    moved = decompose(group_action(ge, F)).components
    for m, c in zip(moved, decompose(F).components):
        assert m == group_action(ge, c)
    assert inner_product(group_action(ge, F), group_action(ge, F)) == inner_product(F, F)


@given(admissible(2), admissible(2), st.fractions(max_denominator=7))
def test_decomposition_is_linear(F1, F2, k):
    D = decompose(F1 + k * F2)
    for c, a, b in zip(D.components, decompose(F1).components, decompose(F2).components):
        assert c == a + k * b


@given(st.fractions())
def test_fmt_round_trip(q):
    assert Fraction(fmt(to_exact(q))) == q
