from fractions import Fraction

import numpy as np
import pytest
from conftest import loop_inner_product

from paracontact.classifier import (
    F1_NOTE,
    characterization_check,
    classify,
    dimension_audit,
    identity_residuals,
    label_for,
)
from paracontact.errors import ParacontactError
from paracontact.ftensor import FTensor, zero_tensor
from paracontact.projectors import decompose
from paracontact.samples import ExampleParams, example, random_admissible, random_pure
from paracontact.structure import standard_structure

GOLDEN_DIMS = {
    1: (0, 0, 0, 1, 1, 0, 0, 0, 2, 0, 2),
    2: (4, 0, 4, 1, 1, 3, 3, 2, 6, 2, 4),
    3: (6, 12, 18, 1, 1, 8, 8, 6, 12, 6, 6),
}


def test_label_format():
    flags = [False] * 11
    assert label_for(flags) == "F_0"
    flags[3] = flags[6] = True
    assert label_for(flags) == "F_4 (+) F_7"


def test_zero_tensor_is_f0(n):
    r = classify(zero_tensor(standard_structure(n)))
    assert r.label == "F_0" and not any(r.flags)


def test_generic_tensor_has_every_nonvanishing_class(n):
    r = classify(random_admissible(standard_structure(n), 1))
    assert list(r.flags) == [d > 0 for d in GOLDEN_DIMS[n]]
    assert all(r.characterization_ok)


def test_f1_note_only_when_flagged():
    S = standard_structure(2)
    assert F1_NOTE in classify(random_pure(S, 1, seed=0)).notes
    assert classify(random_pure(S, 3, seed=0)).notes == ()


@pytest.mark.parametrize("i", range(1, 12))
def test_identities_are_exclusive_at_n3(i):
    S = standard_structure(3)
    c = random_pure(S, i, seed=10 + i)
    assert characterization_check(c, i)
    for j in range(1, 12):
        if j != i:
            assert not characterization_check(c, j), (i, j)


@pytest.mark.parametrize("seed", range(3))
def test_identities_hold_for_components(n, seed):
    D = decompose(random_admissible(standard_structure(n), seed))
    for i, c in enumerate(D.components, start=1):
        assert characterization_check(c, i)


def test_class10_identity_by_evaluation():
    S = standard_structure(2)
    c = random_pure(S, 10, seed=4)
    basis = list(S.eye)
    for X in basis:
        for Y in basis:
            for Z in basis:
                assert c(X, Y, Z) == (S.eta @ X) * c(S.xi, S.phi @ Y, S.phi @ Z)


def test_identity_index_checked():
    with pytest.raises(ValueError):
        identity_residuals(zero_tensor(standard_structure(1)), 12)


def test_example_5_1_self_ip_matches_loop_oracle():
    _, _, F = example(ExampleParams("5.1", dict(a=1, b=0, c=0, d=0)))
    r = classify(F)
    assert r.label == "F_3"
    c3 = decompose(F).component(3)
    assert loop_inner_product(F.S, c3.coeffs, c3.coeffs) == 8
    assert r.to_dict()["self_ips"][2] == "8"


def test_report_dict_shape():
    _, _, F = example(ExampleParams("5.3", dict(a=1, b=2)))
    d = classify(F).to_dict()
    assert set(d) == {"n", "scalars", "label", "flags", "magnitudes", "self_ips",
                      "characterization_ok", "one_forms_summary", "notes"}
    assert d["label"] == "F_10" and d["scalars"] == "rational"
    assert all(isinstance(x, str) for x in d["magnitudes"] + d["self_ips"])


def test_float_classification_uses_tolerance():
    S = standard_structure(2, exact=False)
    _, _, F = example(ExampleParams("5.2", {k: Fraction(v) for k, v in zip("abcdef", [1, 2, 3, 4, 5, 6])}))
    G = FTensor(S, F.coeffs.astype(float))
    assert classify(G).label == "F_9"
    noisy = FTensor(S, G.coeffs + 1e-13 * np.random.default_rng(0).normal(size=G.coeffs.shape))
    assert classify(noisy).label == "F_9"
    assert classify(noisy, tol=1e-20).label != "F_9"


@pytest.mark.parametrize("n_", [1, 2, 3])
def test_dimension_audit_golden(n_):
    audit = dimension_audit(n_)
    assert audit.ranks == GOLDEN_DIMS[n_]
    assert audit.consistent
    assert audit.total == (2 * n_ + 1) * n_ * (n_ + 1)


def test_dimension_audit_guard():
    with pytest.raises(ParacontactError):
        dimension_audit(0)
    with pytest.raises(ParacontactError):
        dimension_audit(5)
