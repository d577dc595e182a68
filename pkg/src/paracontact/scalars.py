"""Scalar conversion and zero tests for the two arithmetic modes.

Exact mode stores every coefficient as a ``gmpy2.mpq`` inside a numpy object
array; float mode uses plain ``float64`` arrays. Which mode applies is decided
by the structure a tensor lives on, so there is no process-wide state.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

import gmpy2
import numpy as np
from gmpy2 import mpq

DEFAULT_TOL = 1e-9
_MPQ = type(mpq())


def to_exact(value) -> mpq:
    """Convert ints, ``"p/q"`` strings, Fractions and mpq values to mpq."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, _MPQ):
        return value
    if isinstance(value, numbers.Integral):
        return mpq(int(value))
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty scalar string")
        f = Fraction(text)
        return mpq(f.numerator, f.denominator)
    if isinstance(value, float):
        # exact binary value of the float
        f = Fraction(value)
        return mpq(f.numerator, f.denominator)
    if isinstance(value, numbers.Rational):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def to_float(value) -> float:
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, str):
        return float(Fraction(value.strip()))
    return float(value)


def as_array(values, exact: bool) -> np.ndarray:
    """Build an array in the requested mode from nested sequences or arrays."""
    arr = np.asarray(values, dtype=object)
    if exact:
        out = np.empty(arr.shape, dtype=object)
        for idx in np.ndindex(arr.shape):
            out[idx] = to_exact(arr[idx])
        return out
    out = np.empty(arr.shape, dtype=float)
    for idx in np.ndindex(arr.shape):
        out[idx] = to_float(arr[idx])
    return out


def zeros(shape, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty(shape, dtype=object)
        out.fill(mpq(0))
        return out
    return np.zeros(shape, dtype=float)


def identity(size: int, exact: bool) -> np.ndarray:
    out = zeros((size, size), exact)
    for i in range(size):
        out[i, i] = mpq(1) if exact else 1.0
    return out


def scalar(num, den=1, *, exact: bool):
    return mpq(num, den) if exact else num / den


def max_abs(arr: np.ndarray):
    if arr.size == 0:
        return mpq(0) if arr.dtype == object else 0.0
    return np.abs(arr).max()


def is_zero_array(arr: np.ndarray, tol: float | None, scale=0) -> bool:
    """True iff every entry vanishes; ``tol=None`` means exact comparison.

    In float mode the threshold is ``tol * (1 + scale)``.
    """
    if tol is None:
        return not np.any(arr != 0)
    return bool(max_abs(arr) <= tol * (1 + float(scale)))


def rational_sqrt(x: mpq) -> mpq | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    if x < 0:
        return None
    num, den = gmpy2.numer(x), gmpy2.denom(x)
    if gmpy2.is_square(num) and gmpy2.is_square(den):
        return mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))
    return None


def fmt(value) -> str:
    """Render a scalar: ``"p/q"`` (or ``"p"``) in exact mode, ``repr`` for floats."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    q = to_exact(value)
    if gmpy2.denom(q) == 1:
        return str(gmpy2.numer(q))
    return f"{gmpy2.numer(q)}/{gmpy2.denom(q)}"
