"""Circular-orbit geometry of a state: q0, omega, beta and the shifted l.

The orbit radius q0 minimises the leading energy 1/(2q^2) + V(q)/Q with
Q = lbar^2, and the shift beta is fixed so the next order vanishes.  Since
beta depends on q0 through omega, both are solved together as a single
root of

    f(q) = sqrt(q^3 V'(q)) - l_D + beta(q),  beta(q) = -(1/2 + (k+1/2) omega(q)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._numeric import DEFAULT_DIGITS, context, default_tol, is_double, lift, sqrt_like
from .errors import DomainError, NoBracket, UnstableOrbit
from .potentials import RadialPotential

_HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class StateIndex:
    """Node count k, orbital number l and dimension D of one bound state."""

    k: int
    l: int
    D: int = 3

    def __post_init__(self):
        if self.k < 0 or self.l < 0:
            raise DomainError(f"k and l must be non-negative, got k={self.k}, l={self.l}")
        if self.D < 2:
            raise DomainError(f"dimension must be >= 2, got {self.D}")

    @property
    def l_D(self) -> Fraction:
        return self.l + Fraction(self.D - 3, 2)

    @classmethod
    def canonical(cls, k: int, l_D) -> "StateIndex":
        """Lowest-dimension (D in {2, 3}) state carrying effective momentum ``l_D``."""
        l_D = Fraction(l_D)
        if l_D.denominator == 1:
            return cls(k, int(l_D), 3)
        if l_D.denominator == 2:
            return cls(k, int(l_D + _HALF), 2)
        raise DomainError(f"l_D must be an integer or half-integer, got {l_D}")


@dataclass(frozen=True)
class ShiftData:
    q0: object
    omega: object
    beta: object
    lbar: object
    Q: object
    e_m2: object
    k: int
    l_D: Fraction
    digits: int = DEFAULT_DIGITS

    @property
    def ctx(self):
        return context(self.digits)


def omega_at(potential: RadialPotential, q):
    """Fluctuation frequency sqrt(3 + q V''/V') at radius q."""
    d1 = potential.derivative(q, 1)
    if not d1 > 0:
        raise UnstableOrbit(f"V'(q) = {d1} <= 0 at q = {q}")
    radicand = 3 + q * potential.derivative(q, 2) / d1
    if radicand < 0:
        raise UnstableOrbit(f"negative frequency radicand {radicand} at q = {q}")
    return sqrt_like(radicand)


def _beta(omega, k, ctx):
    half = lift(ctx, _HALF)
    return -(half + (k + half) * omega)


def _residual(potential, q, l_D, k, ctx):
    orbit = q * q * sqrt_like(potential.derivative(q, 1) / q)
    return orbit - l_D + _beta(omega_at(potential, q), k, ctx)


def _bisect(f, lo, hi, tol, max_iter=10000):
    # invariant: f(lo) < 0 <= f(hi)
    for _ in range(max_iter):
        mid = (lo + hi) / 2
        if mid == lo or mid == hi or hi - lo <= tol * hi:
            break
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def solve_shift(potential: RadialPotential, state, tol=None, digits: int = DEFAULT_DIGITS) -> ShiftData:
    """Root-find q0 and derive omega, beta, lbar, Q and E^(-2) for ``state``.

    ``state`` is a :class:`StateIndex` or a ``(k, l_D)`` pair.
    """
    if isinstance(state, StateIndex):
        k, l_D_exact = state.k, state.l_D
    else:
        k, l_D_exact = state[0], Fraction(state[1])
    ctx = context(digits)
    tol = default_tol(ctx) if tol is None else lift(ctx, tol)
    l_D = lift(ctx, l_D_exact)

    def f(q):
        return _residual(potential, q, l_D, k, ctx)

    lo, hi = lift(ctx, Fraction(1, 1000)), lift(ctx, 1)
    for _ in range(200):
        if f(lo) < 0:
            break
        lo /= 2
    else:
        raise NoBracket(f"orbit residual stays non-negative down to q = {lo}")
    for _ in range(2000):
        if f(hi) >= 0:
            break
        lo, hi = hi, hi * 2
    else:
        raise NoBracket(f"orbit residual stays non-positive up to q = {hi}")

    q0 = _bisect(f, lo, hi, tol)
    omega = omega_at(potential, q0)
    if not omega > 0:
        raise UnstableOrbit(f"zero fluctuation frequency at q0 = {q0}")
    beta = _beta(omega, k, ctx)
    lbar = l_D - beta
    if not lbar > 0:
        raise DomainError(f"expansion parameter lbar = {lbar} is not positive")
    Q = lbar * lbar
    e_m2 = 1 / (2 * q0 * q0) + potential.value(q0) / Q
    return ShiftData(q0, omega, beta, lbar, Q, e_m2, k, l_D_exact,
                     digits if not is_double(ctx) else min(digits, 16))


def leading_energy_orders(shift: ShiftData, state=None):
    """Return (E^(-2), E^(-1)); the second vanishes by the choice of beta."""
    k = shift.k if state is None else state.k
    ctx = shift.ctx
    half = lift(ctx, _HALF)
    e_m1 = ((2 * shift.beta + 1) * half + (k + half) * shift.omega) / (shift.q0 * shift.q0)
    return shift.e_m2, e_m1
