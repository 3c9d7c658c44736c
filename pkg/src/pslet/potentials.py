"""Radial potentials with exact derivatives of arbitrary order.

All built-in potentials are finite sums of power laws ``c * q**p``, so the
n-th derivative is a falling factorial times a shifted power and is exact.
Coefficients are held as :class:`fractions.Fraction` and lifted to the
caller's number type (float or mpmath mpf) at evaluation time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ._numeric import as_fraction, lift_like
from .errors import DomainError


def _falling(p: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= p - i
    return out


def _as_number(q):
    if isinstance(q, (int, Fraction)):
        return float(q)
    return q


@dataclass(frozen=True, eq=False)
class RadialPotential:
    """V(q) = sum of ``coeff * q**power`` over ``terms``, defined for q > 0."""

    terms: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "terms", {int(p): as_fraction(c) for p, c in self.terms.items() if c != 0}
        )

    def __eq__(self, other):
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.terms.items()))))

    def value(self, q):
        return self.derivative(q, 0)

    def derivative(self, q, n: int):
        if n < 0:
            raise DomainError(f"derivative order must be >= 0, got {n}")
        q = _as_number(q)
        if not q > 0:
            raise DomainError(f"potential defined for q > 0, got {q}")
        total = lift_like(Fraction(0), q)
        for power, coeff in self.terms.items():
            ff = _falling(power, n)
            if ff == 0:
                continue
            total += lift_like(coeff * ff, q) * q ** (power - n)
        return total

    @property
    def degree(self) -> int | None:
        """Polynomial degree, or None if any negative power is present."""
        if any(p < 0 for p in self.terms):
            return None
        return max(self.terms, default=0)

    def params(self) -> dict:
        return {f"c{p}": str(c) for p, c in sorted(self.terms.items())}


class AnharmonicOscillator(RadialPotential):
    """V = alpha0 q^2 + alpha q^4 with alpha0 > 0, alpha >= 0."""

    def __init__(self, alpha0=Fraction(1, 2), alpha=0):
        a0, a = as_fraction(alpha0), as_fraction(alpha)
        if a0 <= 0 or a < 0:
            raise DomainError(f"need alpha0 > 0 and alpha >= 0, got {a0}, {a}")
        object.__setattr__(self, "alpha0", a0)
        object.__setattr__(self, "alpha", a)
        super().__init__({2: a0, 4: a})

    def __repr__(self):
        return f"AnharmonicOscillator(alpha0={self.alpha0}, alpha={self.alpha})"

    def params(self):
        return {"alpha0": str(self.alpha0), "alpha": str(self.alpha)}


class HarmonicOscillator(RadialPotential):
    """V = alpha0 q^2."""

    def __init__(self, alpha0=Fraction(1, 2)):
        a0 = as_fraction(alpha0)
        if a0 <= 0:
            raise DomainError(f"need alpha0 > 0, got {a0}")
        object.__setattr__(self, "alpha0", a0)
        super().__init__({2: a0})

    def __repr__(self):
        return f"HarmonicOscillator(alpha0={self.alpha0})"

    def params(self):
        return {"alpha0": str(self.alpha0)}


class CoulombPotential(RadialPotential):
    """V = -Z / q."""

    def __init__(self, Z=1):
        z = as_fraction(Z)
        if z <= 0:
            raise DomainError(f"need Z > 0, got {z}")
        object.__setattr__(self, "Z", z)
        super().__init__({-1: -z})

    def __repr__(self):
        return f"CoulombPotential(Z={self.Z})"

    def params(self):
        return {"Z": str(self.Z)}


def value(potential: RadialPotential, q):
    return potential.value(q)


def derivative(potential: RadialPotential, q, n: int):
    return potential.derivative(q, n)
