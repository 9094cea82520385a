"""Exact rational helpers shared by the algebra and graph modules.

Exact values are stored as Python ``int`` when integral and
:class:`fractions.Fraction` otherwise, inside numpy ``object`` arrays.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import InputError


def normalize(q):
    """Collapse an integral Fraction to int."""
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


def to_exact(x):
    """Convert ``x`` to an exact rational (int or Fraction).

    Accepts ints, Fractions, strings such as ``"3"`` or ``"-2/5"`` and floats
    (converted through their shortest decimal representation).
    """
    if isinstance(x, bool):
        raise InputError(f"boolean {x!r} is not a number")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        return normalize(Fraction(x))
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise InputError(f"non-finite value {x!r}")
        return normalize(Fraction(repr(float(x))))
    if isinstance(x, str):
        try:
            return normalize(Fraction(x.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse {x!r} as a rational number") from exc
    raise InputError(f"cannot interpret {x!r} as a rational number")


def exact_array(data, ndim: int | None = None) -> np.ndarray:
    """Build an object array of exact rationals from nested sequences."""
    arr = np.asarray(data, dtype=object)
    if ndim is not None and arr.ndim != ndim:
        raise InputError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = to_exact(x)
    return out


def frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(0)
    return out


def common_denominator(arr: np.ndarray) -> int:
    d = 1
    for x in arr.flat:
        if isinstance(x, Fraction):
            d = math.lcm(d, x.denominator)
    return d


def scaled_integers(arr: np.ndarray) -> tuple[np.ndarray, int]:
    """Return ``(N, D)`` with ``arr == N / D`` and ``N`` an object array of ints."""
    d = common_denominator(arr)
    n = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        n[idx] = int(x * d)
    return n, d


def to_float(arr: np.ndarray) -> np.ndarray:
    return np.array([float(x) for x in arr.flat], dtype=float).reshape(arr.shape)


def format_exact(q) -> str:
    q = normalize(q)
    return str(q)
