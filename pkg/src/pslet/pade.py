"""[M/N] Pade approximants in the variable t = 1/lbar."""
from __future__ import annotations

from dataclasses import dataclass

import mpmath

from ._numeric import effective_digits
from .engine import EnergySeries
from .errors import DegenerateTable, PoleNearEvaluation

POLE_THRESHOLD = 1e-8


def _ctx_of(x):
    return getattr(x, "context", mpmath.fp)


@dataclass(frozen=True)
class RationalApproximant:
    """P(t) / Q(t) with ``denominator[0] == 1``."""

    numerator: list
    denominator: list

    @property
    def M(self) -> int:
        return len(self.numerator) - 1

    @property
    def N(self) -> int:
        return len(self.denominator) - 1

    def _horner(self, coeffs, t):
        acc = 0 * t
        for c in reversed(coeffs):
            acc = acc * t + c
        return acc

    def __call__(self, t):
        return self._horner(self.numerator, t) / self._horner(self.denominator, t)

    def denominator_at(self, t):
        return self._horner(self.denominator, t)

    def taylor(self, n: int) -> list:
        """First ``n`` Maclaurin coefficients of P/Q."""
        out = []
        for i in range(n):
            acc = self.numerator[i] if i <= self.M else 0 * self.numerator[0]
            for j in range(1, min(i, self.N) + 1):
                acc -= self.denominator[j] * out[i - j]
            out.append(acc)
        return out


def _solve_full_pivot(A, b, rel_tol):
    """Gaussian elimination with complete pivoting on small dense systems."""
    n = len(A)
    A = [row[:] for row in A]
    b = b[:]
    cols = list(range(n))
    scale = max((abs(x) for row in A for x in row), default=0)
    if n and not scale > 0:
        raise DegenerateTable("denominator system is identically zero")
    for i in range(n):
        best, pr, pc = -1, i, i
        for r in range(i, n):
            for c in range(i, n):
                m = abs(A[r][c])
                if m > best:
                    best, pr, pc = m, r, c
        if not best > rel_tol * scale:
            raise DegenerateTable(f"pivot {best} below {rel_tol} x scale {scale} at step {i}")
        A[i], A[pr] = A[pr], A[i]
        b[i], b[pr] = b[pr], b[i]
        if pc != i:
            for row in A:
                row[i], row[pc] = row[pc], row[i]
            cols[i], cols[pc] = cols[pc], cols[i]
        piv = A[i][i]
        for r in range(i + 1, n):
            f = A[r][i] / piv
            if f:
                for c in range(i, n):
                    A[r][c] -= f * A[i][c]
                b[r] -= f * b[i]
    y = [0 * b[0]] * n if n else []
    for i in range(n - 1, -1, -1):
        acc = b[i]
        for c in range(i + 1, n):
            acc -= A[i][c] * y[c]
        y[i] = acc / A[i][i]
    x = [None] * n
    for i, c in enumerate(cols):
        x[c] = y[i]
    return x


def build_pade(coeffs, M: int, N: int) -> RationalApproximant:
    """Pade approximant from the first M+N+1 Maclaurin coefficients."""
    coeffs = list(coeffs)
    if len(coeffs) < M + N + 1:
        raise ValueError(f"need {M + N + 1} coefficients for [{M}/{N}], got {len(coeffs)}")
    coeffs = coeffs[: M + N + 1]
    ctx = _ctx_of(coeffs[0])
    coeffs = [ctx.convert(c) for c in coeffs]
    zero = ctx.convert(0)

    def c(i):
        return coeffs[i] if i >= 0 else zero

    A = [[c(M + i - j) for j in range(1, N + 1)] for i in range(1, N + 1)]
    b = [-c(M + i) for i in range(1, N + 1)]
    rel_tol = ctx.mpf(10) ** (5 - effective_digits(ctx))
    q = _solve_full_pivot(A, b, rel_tol) if N else []
    den = [ctx.convert(1)] + q
    num = [sum((den[j] * c(i - j) for j in range(min(i, N) + 1)), zero) for i in range(M + 1)]
    # a non-normal table can pass the pivot test yet violate the matching conditions
    for i in range(M + 1, M + N + 1):
        terms = [den[j] * c(i - j) for j in range(N + 1)]
        size = sum(abs(t) for t in terms)
        if abs(sum(terms, zero)) > size * rel_tol:
            raise DegenerateTable(f"[{M}/{N}] cannot match coefficient {i}")
    approx = RationalApproximant(num, den)
    return approx


def _noise_floor(series: EnergySeries):
    ctx = _ctx_of(series.lbar)
    total = abs(series.lbar ** 2 * series.e_m2) + max((abs(x) for x in series.e), default=0)
    return total * ctx.mpf(10) ** (10 - effective_digits(ctx))


def accelerated_energy(series: EnergySeries, M: int = 4, N: int = 4):
    """lbar^2 E^(-2) + [M/N](1/lbar) built from E^(0)..E^(M+N)."""
    if len(series.e) < M + N + 1:
        raise ValueError(f"series holds {len(series.e)} coefficients, [{M}/{N}] needs {M + N + 1}")
    coeffs = series.e[: M + N + 1]
    t = 1 / series.lbar
    lead = series.lbar ** 2 * series.e_m2
    floor = _noise_floor(series)
    if all(abs(x) <= floor for x in coeffs):
        # correction series vanishes identically: nothing to resum
        return lead + sum(x * t ** i for i, x in enumerate(coeffs))
    approx = build_pade(coeffs, M, N)
    den = approx.denominator_at(t)
    scale = max(abs(q) * abs(t) ** i for i, q in enumerate(approx.denominator))
    if abs(den) < POLE_THRESHOLD * scale:
        value = lead + approx(t) if den else None
        raise PoleNearEvaluation(f"|Q(1/lbar)| = {den} against scale {scale}", value=value)
    return lead + approx(t)


@dataclass(frozen=True)
class PadeReport:
    value: object
    sequence: dict
    spread: object

    @property
    def trusted(self) -> bool:
        return self.value is not None


def pade_sequence(series: EnergySeries, M: int = 4, N: int = 4) -> PadeReport:
    """Main [M/N] value plus the diagonal below it; spread is the max pairwise gap."""
    degrees = [(M, N)]
    for d in (3, 2):
        if (d, d) != (M, N) and 2 * d + 1 <= len(series.e):
            degrees.append((d, d))
    seq = {}
    for m, n in degrees:
        try:
            seq[(m, n)] = accelerated_energy(series, m, n)
        except (DegenerateTable, PoleNearEvaluation):
            seq[(m, n)] = None
    vals = [v for v in seq.values() if v is not None]
    spread = max((abs(a - b) for a in vals for b in vals), default=None)
    return PadeReport(seq[(M, N)], seq, spread)
