"""Variational reference solver for the radial equation.

Basis: u_n(q) = c_n q^(l_D+1) L_n^(nu)(q^2/s^2) exp(-q^2/(2 s^2)), nu = l_D + 1/2,
the radial eigenfunctions of an isotropic oscillator with length s.  They
are orthonormal, the kinetic + centrifugal + q^2/(2 s^4) part is diagonal,
and t = q^2/s^2 is tridiagonal, so any even polynomial potential has exact
banded matrix elements.  The boundary behaviour q^(l_D+1) is built in,
including the attractive l_D = -1/2 centrifugal term of two dimensions.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import eigh
from scipy.optimize import minimize_scalar

from ._numeric import DOUBLE_DIGITS, context
from .errors import DomainError, IllConditionedOverlap, NoConvergence
from .potentials import RadialPotential


@dataclass(frozen=True)
class OracleConfig:
    basis_size: int = 40
    scale: float = None
    digits: int = DOUBLE_DIGITS

    def __post_init__(self):
        if self.basis_size < 4:
            raise ValueError(f"basis_size must be >= 4, got {self.basis_size}")
        if self.scale is not None and not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale}")


def _even_terms(potential: RadialPotential) -> dict:
    terms = {}
    for p, c in potential.terms.items():
        if p < 0 or p % 2:
            raise DomainError(f"oracle handles even polynomial potentials only, got q^{p}")
        terms[p // 2] = c
    return terms


def harmonic_scale(potential: RadialPotential) -> float:
    """Oscillator length matching the quadratic part, or the quartic length if absent."""
    terms = potential.terms
    if terms.get(2, 0) > 0:
        return float(2 * terms[2]) ** -0.25
    top = max(terms)
    return float(terms[top]) ** (-1.0 / (top + 2))


def _t_matrix(size, nu, lib):
    """Tridiagonal matrix of q^2/s^2 between normalised Laguerre functions."""
    T = lib.zeros(size, size)
    for n in range(size):
        T[n, n] = 2 * n + nu + 1
        if n + 1 < size:
            off = -lib.sqrt((n + 1) * (n + nu + 1))
            T[n, n + 1] = off
            T[n + 1, n] = off
    return T


class _NumpyLib:
    @staticmethod
    def zeros(a, b):
        return np.zeros((a, b))

    sqrt = staticmethod(math.sqrt)


def hamiltonian(potential: RadialPotential, l_D, size: int, scale, digits: int = DOUBLE_DIGITS):
    """Matrix of the radial Hamiltonian in the first ``size`` basis functions."""
    terms = _even_terms(potential)
    l_D = Fraction(l_D)
    if l_D < Fraction(-1, 2):
        raise DomainError(f"l_D = {l_D} below -1/2 is outside the basis family")
    top = max(terms, default=1)
    extended = size + top
    if digits <= DOUBLE_DIGITS:
        lib, conv = _NumpyLib, float
        s2 = float(scale) ** 2
    else:
        ctx = context(digits)
        lib = ctx
        conv = lambda x: ctx.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else ctx.convert(x)
        s2 = ctx.convert(scale) ** 2
    nu = conv(l_D + Fraction(1, 2))
    T = _t_matrix(extended, nu, lib)

    H = lib.zeros(size, size)
    for n in range(size):
        H[n, n] = (2 * n + nu + 1) / s2
    # subtract the reference oscillator q^2/(2 s^4) = t/(2 s^2), add the potential
    power = T
    coeff1 = conv(terms.get(1, 0)) * s2 - 1 / (2 * s2)
    for j in range(1, top + 1):
        c = coeff1 if j == 1 else conv(terms.get(j, 0)) * s2 ** j
        if c:
            for a in range(size):
                for b in range(size):
                    H[a, b] += c * power[a, b]
        if j < top:
            power = power @ T if lib is _NumpyLib else power * T
    if terms.get(0):
        for n in range(size):
            H[n, n] += conv(terms[0])
    return H


def diagonalize(potential: RadialPotential, l_D, config: OracleConfig = OracleConfig(), count: int = 1) -> list:
    """Lowest ``count`` variational eigenvalues (ascending)."""
    scale = harmonic_scale(potential) if config.scale is None else config.scale
    H = hamiltonian(potential, l_D, config.basis_size, scale, config.digits)
    if config.digits <= DOUBLE_DIGITS:
        vals = eigh(H, eigvals_only=True, subset_by_index=[0, min(count, config.basis_size) - 1])
        return [float(v) for v in vals]
    ctx = context(config.digits)
    vals = ctx.eigsy(H, eigvals_only=True)
    out = sorted(vals[i] for i in range(config.basis_size))
    return out[:count]


def overlap_check(l_D, size: int, scale=1.0) -> float:
    """Smallest overlap eigenvalue by quadrature; the basis is orthonormal so this is ~1."""
    from scipy.special import eval_genlaguerre, gammaln

    nu = float(Fraction(l_D) + Fraction(1, 2))
    x, w = np.polynomial.laguerre.laggauss(2 * size + 20)
    # substitute t = q^2/s^2: integral of u_m u_n dq = (s/2) integral t^nu L_m L_n e^-t dt
    norms = np.exp(0.5 * (gammaln(np.arange(size) + 1) - gammaln(np.arange(size) + nu + 1)))
    B = np.array([norms[n] * eval_genlaguerre(n, nu, x) for n in range(size)])
    S = (B * (w * x ** nu)) @ B.T
    low = float(np.linalg.eigvalsh(S).min())
    if not low > 1e-10:
        raise IllConditionedOverlap(f"overlap minimum eigenvalue {low}")
    return low


def _optimal_scale(potential, l_D, k, size, digits, start):
    def f(log_s):
        cfg = OracleConfig(size, math.exp(log_s), digits)
        return float(diagonalize(potential, l_D, cfg, k + 1)[k])

    x0 = math.log(start)
    res = minimize_scalar(f, bracket=(x0 - 0.3, x0 + 0.3), tol=1e-6)
    return math.exp(res.x)


def converged_energy(potential: RadialPotential, l_D, k: int, tol: float = 1e-11,
                     start_size: int = 16, max_size: int = 512, digits: int = DOUBLE_DIGITS):
    """Double the basis (re-optimising the scale) until the k-th level moves by < tol relative.

    Returns (energy, last relative change).
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    size = max(start_size, k + 4)
    scale = harmonic_scale(potential)
    prev = None
    while size <= max_size:
        scale = _optimal_scale(potential, l_D, k, size, digits, scale)
        val = diagonalize(potential, l_D, OracleConfig(size, scale, digits), k + 1)[k]
        if prev is not None:
            delta = abs(val - prev) / max(abs(val), 1e-300)
            if delta < tol:
                return val, delta
        prev = val
        size *= 2
    raise NoConvergence(f"k={k} level not converged to {tol} by basis size {max_size}")


def emit_fixtures(records, path) -> None:
    """Write oracle reference records as JSON lines."""
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def load_fixtures(path) -> list:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]
