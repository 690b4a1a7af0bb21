"""Scalar domains shared by every module.

Two backends: exact rationals (``fractions.Fraction`` held in numpy object
arrays) and binary64 floats (float64 arrays). A single computation never
mixes the two; promotion exact -> float is explicit and one-way.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Literal

import numpy as np

from .errors import InputError

Mode = Literal["exact", "float"]

EXACT: Mode = "exact"
FLOAT: Mode = "float"

_MODES = (EXACT, FLOAT)


@dataclass(frozen=True)
class TolerancePolicy:
    """Zero thresholds for float-mode decisions; ignored in exact mode.

    rank_tol is relative to the largest singular value of the matrix at
    hand, eigen_cluster_tol to the largest eigenvalue magnitude.
    """

    rank_tol: float = 1e-9
    eigen_cluster_tol: float = 1e-7

    def __post_init__(self) -> None:
        if not self.rank_tol > 0.0:
            raise InputError("rank_tol must be strictly positive")
        if not self.eigen_cluster_tol > 0.0:
            raise InputError("eigen_cluster_tol must be strictly positive")


DEFAULT_TOL = TolerancePolicy()


def check_mode(mode: str) -> Mode:
    if mode not in _MODES:
        raise InputError(f"unknown scalar mode {mode!r}; expected 'exact' or 'float'")
    return mode  # type: ignore[return-value]


def as_fraction(value: Any) -> Fraction:
    """Coerce to Fraction, rejecting binary floats (lossy in exact mode)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, float, np.floating)):
        raise InputError(f"float scalar {value!r} not allowed in exact mode")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse exact scalar {value!r}: {exc}") from None
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise InputError(f"not an exact scalar: {value!r}")


def parse_scalar(value: Any, mode: Mode) -> Any:
    """Parse one scalar in the declared mode ('p/q' strings or numbers)."""
    if mode == EXACT:
        return as_fraction(value)
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise InputError(f"cannot parse float scalar {value!r}: {exc}") from None


def format_scalar(value: Any, mode: Mode) -> Any:
    """Serialize one scalar: 'p/q' with q > 0 and gcd 1, or a float."""
    if mode == EXACT:
        f = as_fraction(value)
        return f"{f.numerator}/{f.denominator}"
    return float(value)


_TO_FRACTION = np.frompyfunc(as_fraction, 1, 1)


def exact_array(data: Any) -> np.ndarray:
    """Build an object array of Fractions; floats are rejected."""
    arr = np.array(data, dtype=object)
    return _TO_FRACTION(arr)


def float_array(data: Any) -> np.ndarray:
    return np.array(data, dtype=np.float64)


def array_for_mode(data: Any, mode: Mode) -> np.ndarray:
    return exact_array(data) if mode == EXACT else float_array(data)


def to_float_array(arr: np.ndarray) -> np.ndarray:
    """Explicit one-way promotion of an exact array to float64."""
    if arr.dtype == object:
        return np.array([float(x) for x in arr.reshape(-1)], dtype=np.float64).reshape(arr.shape)
    return np.asarray(arr, dtype=np.float64)


def zeros_array(shape: Any, mode: Mode) -> np.ndarray:
    if mode == EXACT:
        return np.full(shape, Fraction(0), dtype=object)
    return np.zeros(shape, dtype=np.float64)


def eye_array(n: int, mode: Mode) -> np.ndarray:
    if mode == EXACT:
        out = np.full((n, n), Fraction(0), dtype=object)
        for i in range(n):
            out[i, i] = Fraction(1)
        return out
    return np.eye(n, dtype=np.float64)


def scalar_one(mode: Mode) -> Any:
    return Fraction(1) if mode == EXACT else 1.0


def scalar_zero(mode: Mode) -> Any:
    return Fraction(0) if mode == EXACT else 0.0
