"""Hierarchical solution of the shifted-l Riccati equation.

About the orbit radius q0 the scaled coordinate is x = sqrt(lbar) (q - q0) / q0
and everything is expanded in powers of lbar**(-1/2).  Writing the state as
F(x) exp(U(x)), the log-derivative U' and the nodal polynomial F are solved
one half-order at a time; the x^k balance at each integer order yields the
next energy correction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from ._numeric import DEFAULT_DIGITS, context, effective_digits, is_double, lift
from .errors import OrderOverflow, SingularOrder
from .kernel import solve_orders
from .potentials import RadialPotential
from .shift import ShiftData

DEFAULT_ORDER = 8


def half_orders(n_max: int) -> int:
    """Highest half-order needed for energy corrections through E^(n_max)."""
    return 2 * n_max + 2


@dataclass(frozen=True)
class ExpansionPolynomials:
    """B_n coefficients and the perturbation polynomials v^(s)(x).

    ``b[n]`` holds B_n for n = 0..s_max+2; ``v[s]`` is a dense coefficient
    list (lowest power first) for s = 0..s_max.
    """

    b: list
    v: list
    n_max: int

    @property
    def s_max(self) -> int:
        return len(self.v) - 1


def build_expansion(potential: RadialPotential, shift: ShiftData, n_max: int = DEFAULT_ORDER) -> ExpansionPolynomials:
    ctx = shift.ctx
    s_max = half_orders(n_max)
    q0, Q, beta = shift.q0, shift.Q, shift.beta
    half = lift(ctx, Fraction(1, 2))
    zero = lift(ctx, 0)

    b = []
    qpow = q0 * q0
    for n in range(s_max + 3):
        geometric = (-1) ** n * (n + 1) * half
        b.append(geometric + potential.derivative(q0, n) * qpow / (factorial(n) * Q))
        qpow *= q0

    tb = 2 * beta + 1
    bb = beta * (beta + 1) * half
    v = []
    for s in range(s_max + 1):
        poly = [zero] * (s + 3)
        poly[s + 2] += b[s + 2]
        poly[s] += (-1) ** s * tb * (s + 1) * half
        if s >= 2:
            poly[s - 2] += (-1) ** s * bb * (s - 1)
        v.append(poly)
    return ExpansionPolynomials(b, v, n_max)


@dataclass(frozen=True)
class CoefficientTables:
    """Solved recursion unknowns.

    ``log_derivative[s]`` is the full lbar**(-s/2) piece of U'; its odd powers
    are D_{m,s} (x^(2m-1)) and its even powers C_{m,s-1} (x^(2m)).
    ``nodal[s]`` holds a^(s)_p for p < k (entry 0 also carries the leading x^k).
    """

    k: int
    log_derivative: list
    nodal: list
    scaled_energy: list

    def D(self, m: int, n: int):
        w = self.log_derivative[n]
        i = 2 * m - 1
        return w[i] if 0 <= i < len(w) else 0 * w[0]

    def C(self, m: int, n: int):
        if n + 1 >= len(self.log_derivative):
            raise IndexError(n)
        w = self.log_derivative[n + 1]
        i = 2 * m
        return w[i] if i < len(w) else 0 * w[0]

    def a(self, p: int, n: int):
        if not 0 <= p < self.k:
            raise IndexError(p)
        return self.nodal[n][p]

    def U(self, n: int) -> list:
        """Odd part of the order-n log-derivative piece."""
        w = self.log_derivative[n]
        return [x if i % 2 else 0 * x for i, x in enumerate(w)]

    def G(self, n: int) -> list:
        """Even part of the order-(n+1) log-derivative piece."""
        w = self.log_derivative[n + 1]
        return [0 * x if i % 2 else x for i, x in enumerate(w)]


@dataclass(frozen=True)
class EnergySeries:
    e_m2: object
    e_m1: object
    e: list
    lbar: object
    n_max: int

    def coefficient(self, n: int):
        if n == -2:
            return self.e_m2
        if n == -1:
            return self.e_m1
        return self.e[n]

    def partial_sums(self) -> list:
        out = []
        acc = self.lbar ** 2 * self.e_m2
        inv = 1 / self.lbar
        t = inv ** 0
        for c in self.e:
            acc = acc + c * t
            out.append(acc)
            t = t * inv
        return out


def _overflow_limit(ctx):
    return 1e150 if is_double(ctx) else ctx.mpf(10) ** (ctx.dps * 4)


def solve_recursion(expansion: ExpansionPolynomials, shift: ShiftData, k: int = None,
                    n_max: int = None, backend: str = "auto"):
    """Solve every half-order through E^(n_max); returns (tables, series)."""
    ctx = shift.ctx
    k = shift.k if k is None else k
    n_max = expansion.n_max if n_max is None else n_max
    s_max = half_orders(n_max)
    if s_max > expansion.s_max:
        raise ValueError(f"expansion built for n_max={expansion.n_max}, asked {n_max}")
    if not shift.omega > 0:
        raise SingularOrder(f"omega = {shift.omega}")
    zero = lift(ctx, 0)
    try:
        W, F, es, _ = solve_orders(expansion.v, shift.omega, k, s_max, zero=zero,
                                   limit=_overflow_limit(ctx), backend=backend)
    except ZeroDivisionError as exc:
        raise SingularOrder(str(exc)) from exc
    except ArithmeticError as exc:
        raise OrderOverflow(str(exc)) from exc
    W = [list(w) for w in W]
    F = [list(f) for f in F]
    es = list(es)
    q02 = shift.q0 * shift.q0
    energies = [es[2 * n + 2] / q02 for n in range(n_max + 1)]
    half = lift(ctx, Fraction(1, 2))
    e_m1 = ((2 * shift.beta + 1) * half + (k + half) * shift.omega) / q02
    tables = CoefficientTables(k, W, F, es)
    series = EnergySeries(shift.e_m2, e_m1, energies, shift.lbar, n_max)
    return tables, series


def sum_series(series: EnergySeries):
    """lbar^2 E^(-2) + sum_n E^(n) / lbar^n."""
    return series.partial_sums()[-1]


def _poly_mul(a, b, zero):
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_add(a, b, zero, scale=1):
    out = [zero] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += scale * y
    return out


def _poly_der(a):
    return [i * a[i] for i in range(1, len(a))]


def riccati_residual(expansion: ExpansionPolynomials, tables: CoefficientTables,
                     series: EnergySeries, shift: ShiftData) -> list:
    """Max |coefficient| of the Riccati left-hand side at each half-order.

    Rebuilt from scratch from the tables; energies enter only through the
    returned series (zero at odd half-orders), so this checks the solver
    independently of its own bookkeeping.
    """
    zero = lift(shift.ctx, 0)
    half = lift(shift.ctx, Fraction(1, 2))
    q02 = shift.q0 * shift.q0
    W, F = tables.log_derivative, tables.nodal
    s_max = len(W) - 1

    def energy(s):
        if s >= 2 and s % 2 == 0:
            return q02 * series.e[s // 2 - 1]
        return zero

    R = []
    for s in range(s_max + 1):
        sq = []
        for i in range(s + 1):
            sq = _poly_add(sq, _poly_mul(W[i], W[s - i], zero), zero)
        r = _poly_add(_poly_der(W[s]), sq, zero)
        r = [-half * x for x in r]
        r = _poly_add(r, expansion.v[s], zero)
        r = _poly_add(r, [energy(s)], zero, -1)
        R.append(r)
    out = []
    for s in range(s_max + 1):
        lhs = []
        for j in range(s + 1):
            lhs = _poly_add(lhs, _poly_mul(F[j], R[s - j], zero), zero)
            lhs = _poly_add(lhs, _poly_mul(_poly_der(F[j]), W[s - j], zero), zero, -1)
        lhs = _poly_add(lhs, _poly_der(_poly_der(F[s])), zero, -half)
        out.append(max((abs(x) for x in lhs), default=abs(zero)))
    return out


@dataclass(frozen=True)
class Wavefunction:
    shift: ShiftData
    tables: CoefficientTables
    order: int = None

    def __call__(self, q):
        return evaluate_wavefunction(self, q)


def evaluate_wavefunction(wf: Wavefunction, q):
    """Unnormalised F(x) exp(U(x)) at radius q, summed through half-order ``wf.order``."""
    ctx = wf.shift.ctx
    q = lift(ctx, q)
    s_top = len(wf.tables.log_derivative) - 1 if wf.order is None else wf.order
    sq = ctx.sqrt(wf.shift.lbar)
    x = sq * (q - wf.shift.q0) / wf.shift.q0
    eps = 1 / sq
    U = lift(ctx, 0)
    Fv = lift(ctx, 0)
    t = lift(ctx, 1)
    for s in range(s_top + 1):
        w = wf.tables.log_derivative[s]
        # antiderivative from 0, Horner on x * sum c_i x^i / (i+1)
        acc = lift(ctx, 0)
        for i in range(len(w) - 1, -1, -1):
            acc = acc * x + w[i] / (i + 1)
        U += t * acc * x
        f = wf.tables.nodal[s]
        acc = lift(ctx, 0)
        for i in range(len(f) - 1, -1, -1):
            acc = acc * x + f[i]
        Fv += t * acc
        t *= eps
    return Fv * ctx.exp(U)


@dataclass
class StateSolution:
    """Everything computed for one state."""

    shift: ShiftData
    expansion: ExpansionPolynomials
    tables: CoefficientTables
    series: EnergySeries

    @property
    def energy_raw(self):
        return sum_series(self.series)

    def wavefunction(self, order=None) -> Wavefunction:
        return Wavefunction(self.shift, self.tables, order)

    def residuals(self):
        return riccati_residual(self.expansion, self.tables, self.series, self.shift)


def solve_state(potential: RadialPotential, state, n_max: int = DEFAULT_ORDER,
                digits: int = DEFAULT_DIGITS, tol=None, backend: str = "auto") -> StateSolution:
    """Shift solve, expansion and recursion in one call."""
    from .shift import solve_shift

    shift = solve_shift(potential, state, tol=tol, digits=digits)
    expansion = build_expansion(potential, shift, n_max)
    tables, series = solve_recursion(expansion, shift, n_max=n_max, backend=backend)
    return StateSolution(shift, expansion, tables, series)


def dump_tables(solution: StateSolution, digits: int = None) -> str:
    """Tab-separated ``kind order index value`` lines for regression diffs."""
    ctx = solution.shift.ctx
    digits = effective_digits(ctx) if digits is None else digits

    def fmt(x):
        return ctx.nstr(x, digits) if not is_double(ctx) else repr(float(x))

    lines = []
    for s, w in enumerate(solution.tables.log_derivative):
        for i, x in enumerate(w):
            kind = "D" if i % 2 else "C"
            m = (i + 1) // 2 if i % 2 else i // 2
            n = s if i % 2 else s - 1
            if kind == "C" and n < 0:
                continue
            lines.append(f"{kind}\t{n}\t{m}\t{fmt(x)}")
    for s, f in enumerate(solution.tables.nodal):
        for p, x in enumerate(f[: solution.tables.k]):
            lines.append(f"a\t{s}\t{p}\t{fmt(x)}")
    series = solution.series
    lines.append(f"E\t-2\t0\t{fmt(series.e_m2)}")
    lines.append(f"E\t-1\t0\t{fmt(series.e_m1)}")
    for n, x in enumerate(series.e):
        lines.append(f"E\t{n}\t0\t{fmt(x)}")
    for s, r in enumerate(solution.residuals()):
        lines.append(f"residual\t{s}\t0\t{fmt(r)}")
    return "\n".join(lines) + "\n"
