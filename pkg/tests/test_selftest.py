from fractions import Fraction

from paracontact.selftest import check_examples, kappa_resolution, run_selftest


def test_run_selftest_n2():
    lines = []
    assert run_selftest(2, 3, seed=4, out=lines.append)
    text = "\n".join(lines)
    assert "FAIL" not in text and "PASS equivariance" in text


def test_run_selftest_n3_small():
    assert run_selftest(3, 2, seed=1, out=lambda s: None)


def test_kappa_resolution():
    assert kappa_resolution(2, 5, 0) == Fraction(1, 2)
    assert kappa_resolution(3, 5, 0) == Fraction(1, 4)


def test_check_examples():
    assert check_examples(3, seed=9)
