"""Working-precision contexts.

Every solver call carries a ``digits`` setting.  Up to 16 digits the
hardware-double context (``mpmath.fp``) is used; above that a private
``mpmath.MPContext`` so concurrent solves at different precisions never
touch the global ``mpmath.mp`` state.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

DEFAULT_DIGITS = 50
DOUBLE_DIGITS = 16


@lru_cache(maxsize=None)
def context(digits: int = DEFAULT_DIGITS):
    if digits <= DOUBLE_DIGITS:
        return mpmath.fp
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


def is_double(ctx) -> bool:
    return ctx is mpmath.fp


def effective_digits(ctx) -> int:
    return 15 if is_double(ctx) else ctx.dps


def default_tol(ctx):
    """Relative tolerance of ten ulps at the working precision."""
    return 10 * ctx.eps


def as_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float (via its repr)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, mpmath.mpf) or hasattr(x, "_mpf_"):
        return Fraction(str(x))
    return Fraction(x)


def lift(ctx, x):
    """Convert an exact value into a number of ``ctx``."""
    if isinstance(x, (int, str, float)) or hasattr(x, "_mpf_"):
        x = as_fraction(x)
    if isinstance(x, Fraction):
        if is_double(ctx):
            return float(x)
        return ctx.mpf(x.numerator) / x.denominator
    return ctx.convert(x)


def lift_like(x: Fraction, like):
    """Convert ``x`` to the number type of ``like`` (float or context mpf)."""
    if isinstance(like, float):
        return float(x)
    ctx = getattr(like, "context", None)
    if ctx is None:
        return float(x)
    return ctx.mpf(x.numerator) / x.denominator


def sqrt_like(x):
    ctx = getattr(x, "context", None)
    if ctx is None:
        return mpmath.fp.sqrt(x) if x >= 0 else float("nan")
    return ctx.sqrt(x)
