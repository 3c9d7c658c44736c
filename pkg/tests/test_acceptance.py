"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

The lines are collected in ``RESULTS`` and printed at the end of the run by
the terminal-summary hook in conftest.py.
"""
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

import pytest

from pslet import tables
from pslet._numeric import context, lift
from pslet.engine import EnergySeries, solve_state, sum_series
from pslet.errors import DegenerateTable, PoleNearEvaluation
from pslet.oracle import converged_energy
from pslet.pade import accelerated_energy, build_pade
from pslet.potentials import AnharmonicOscillator, CoulombPotential, HarmonicOscillator
from pslet.shift import StateIndex
from pslet.spectrum import build_spectrum, solve_level

DIGITS = 50
EXACT_TOL = 10.0 ** -(DIGITS - 12)
RESIDUAL_TOL = 10.0 ** -(DIGITS - 15)
RESULTS = []


def report(n, ok, detail):
    line = f"CRITERION {n} {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append((n, line))
    print(line)
    return ok


@lru_cache(maxsize=None)
def level(alpha, k, l_D):
    lv = solve_level(AnharmonicOscillator(Fraction(1, 2), alpha), k, l_D, digits=DIGITS)
    assert not lv.failed, lv.error
    return lv


def computed(cell):
    lv = level(cell.alpha, cell.k, StateIndex(cell.k, cell.l, cell.D).l_D)
    x = lv.energy_raw if cell.column == "raw" else lv.energy_pade
    return Decimal(x.context.nstr(x, 40)) * (2 if cell.doubled else 1)


def rel(cell, value=None):
    value = computed(cell) if value is None else Decimal(repr(float(value)))
    return abs(value - cell.value) / abs(cell.value)


def digits_match(cell):
    """Computed value rounds or truncates to the printed string."""
    x = computed(cell)
    return abs(x - cell.value) <= cell.ulp / 2 or x.quantize(cell.ulp, rounding="ROUND_DOWN") == cell.value


def _worst(rows):
    return max(rows, key=lambda r: r[0])


def test_criterion_1_table3():
    failures, rows = [], []
    for cell in tables.cells(3, ("raw", "pade")):
        bound = 5e-7 if cell.column == "raw" or cell.alpha >= 50 else 5e-8
        r = rel(cell)
        rows.append((r, f"{cell.coupling_label} {cell.column}"))
        if not (digits_match(cell) and r <= bound):
            failures.append(f"{cell.coupling_label} {cell.column} rel={r:.2e} bound={bound:.0e} "
                            f"printed-digits={'yes' if digits_match(cell) else 'no'}")
    r, where = _worst(rows)
    ok = report(1, not failures, f"Table 3 E_P/E[4,4], {len(rows)} cells, worst rel {r:.2e} at {where}"
                + (f"; failing: {failures}" if failures else ""))
    assert ok


def test_criterion_2_table1():
    failures, n = [], 0
    for cell in tables.cells(1, ("raw", "pade")):
        n += 1
        if cell.coupling_label == "g=1e-4":
            ok = abs(computed(cell) - cell.value) <= cell.ulp
            if not ok:
                failures.append(f"{cell.k},{cell.l} {cell.column} off by more than 1 ulp")
        else:
            bound = 1e-6 if cell.column == "pade" else 5e-6
            r = rel(cell)
            if r > bound:
                failures.append(f"{cell.coupling_label} {cell.k},{cell.l} {cell.column} rel={r:.2e}")
    ok = report(2, not failures, f"Table 1 2D doubled energies, {n} cells" + (f"; failing: {failures}" if failures else ""))
    assert ok


def test_criterion_3_table2_long_rows():
    long_cells = [c for c in tables.cells(2, ("raw", "pade")) if c.significant_digits >= 11]
    rows = [(rel(c), f"{c.coupling_label} {c.k},{c.l} {c.column}") for c in long_cells]
    r, where = _worst(rows)
    ok = report(3, r <= 1e-9, f"Table 2 rows with >= 11 digits, {len(rows)} cells, worst rel {r:.2e} at {where}")
    assert ok


def test_criterion_4_tables45():
    rows, failures = [], []
    for t in (4, 5):
        for cell in tables.cells(t):
            r = rel(cell)
            rows.append((r, f"T{t} {cell.coupling_label} k={cell.k} l={cell.l}"))
            if r > 1e-6:
                failures.append(f"T{t} {cell.coupling_label} k={cell.k} l={cell.l} printed {cell.printed} rel={r:.1e}")
    r, where = _worst(rows)
    ok = report(4, not failures, f"Tables 4-5 E[4,4], {len(rows)} cells, worst rel {r:.2e} at {where}"
                + (f"; {len(failures)} over 1e-6: {failures}" if failures else ""))
    assert ok


def test_criterion_5_oracle():
    failures, worst_ex = [], 0.0
    for cell in tables.cells(3, ("exact",)):
        val, _ = converged_energy(AnharmonicOscillator(Fraction(1, 2), cell.alpha), 0, 1)
        r = rel(cell, val)
        worst_ex = max(worst_ex, r)
        if r > 1e-7:
            failures.append(f"oracle vs E_ex {cell.coupling_label} rel={r:.2e}")
    worst_pslet = 0.0
    for t in (4, 5):
        for alpha, k, l, D in tables.states(t):
            l_D = StateIndex(k, l, D).l_D
            val, _ = converged_energy(AnharmonicOscillator(Fraction(1, 2), alpha), l_D, k)
            e = float(level(alpha, k, l_D).energy_pade)
            r = abs(e - val) / abs(val)
            worst_pslet = max(worst_pslet, r)
            if r > 1e-6:
                failures.append(f"T{t} alpha={alpha} k={k} l={l} pslet {e:.9g} oracle {val:.9g} rel={r:.1e}")
    ok = report(5, not failures, f"oracle vs E_ex worst rel {worst_ex:.2e}; PSLET vs oracle worst rel {worst_pslet:.2e}"
                + (f"; failing: {failures}" if failures else ""))
    assert ok


def test_criterion_6_exact_baselines():
    failures, n = [], 0
    coulomb = CoulombPotential(1)
    harmonic = HarmonicOscillator(Fraction(1, 2))
    for k in (0, 1, 2):
        for l in (0, 1, 2):
            for D in (2, 3, 4):
                st = StateIndex(k, l, D)
                for name, pot in (("harmonic", harmonic), ("coulomb", coulomb)):
                    n += 1
                    sol = solve_state(pot, st, digits=DIGITS)
                    ctx = sol.shift.ctx
                    l_D = lift(ctx, st.l_D)
                    if name == "harmonic":
                        want = l_D + 2 * k + ctx.mpf(3) / 2
                    else:
                        want = -1 / (2 * (l_D + k + 1) ** 2)
                    big = max(abs(e) for e in sol.series.e)
                    err = abs(sum_series(sol.series) - want)
                    if big > EXACT_TOL or err > EXACT_TOL:
                        failures.append(f"{name} {st}: max|E(n)|={float(big):.1e} total err={float(err):.1e}")
    ok = report(6, not failures, f"{n} harmonic/Coulomb solves, tolerance {EXACT_TOL:.0e}"
                + (f"; failing: {failures}" if failures else ""))
    assert ok


def test_criterion_7_degeneracy():
    failures, pairs = [], 0
    pot = AnharmonicOscillator(Fraction(1, 2), 1)
    entries = build_spectrum(pot, 1, 5, [2, 3, 4, 5], digits=DIGITS)
    by_lD = {}
    for e in entries:
        by_lD.setdefault((e.state.k, e.state.l_D), []).append(e)
    for group in by_lD.values():
        if len({id(e.level) for e in group}) != 1 or len({e.energy_pade for e in group}) != 1:
            failures.append(f"ladder {[str(e.state) for e in group]} not shared")
    for k in (0, 1):
        for l in range(1, 6):
            for D in (2, 3):
                pairs += 1
                a = solve_state(pot, StateIndex(k, l, D), digits=DIGITS).energy_raw
                b = solve_state(pot, StateIndex(k, l - 1, D + 2), digits=DIGITS).energy_raw
                r = abs(a - b) / abs(a)
                if r > EXACT_TOL:
                    failures.append(f"({k},{l},{D}) vs ({k},{l - 1},{D + 2}) rel={float(r):.1e}")
    ok = report(7, not failures, f"{len(by_lD)} ladders shared, {pairs} re-solved pairs within {EXACT_TOL:.0e}"
                + (f"; failing: {failures}" if failures else ""))
    assert ok


def _k1_closed_forms(sol):
    t, b, sh = sol.tables, sol.expansion.b, sol.shift
    w, beta, half = sh.omega, sh.beta, sh.ctx.mpf(1) / 2
    c10 = t.C(1, 0)
    c00 = t.C(0, 0)
    d22 = t.D(2, 2)
    d12 = t.D(1, 2)
    e0 = (beta * (beta + 1) * half + t.a(0, 1) * c10 - 3 * half * d12 - c00 ** 2 * half) / sh.q0 ** 2
    checks = [
        t.D(1, 0) + w,
        c10 + b[3] / w,
        c00 - (2 * c10 + 2 * beta + 1) / w,
        t.a(0, 1) + c00 / w,
        d22 - (c10 ** 2 * half - b[4]) / w,
        d12 - (5 * half * d22 + c00 * c10 - 3 * half * (2 * beta + 1)) / w,
        sol.series.e[0] - e0,
    ]
    return max(abs(x) for x in checks)


def test_criterion_8_structure():
    failures = []
    worst_res = 0.0
    for alpha in ("0.01", "1", "1000"):
        pot = AnharmonicOscillator(Fraction(1, 2), Fraction(alpha))
        for st in (StateIndex(0, 0, 2), StateIndex(1, 0, 3), StateIndex(2, 3, 3), StateIndex(3, 1, 2)):
            sol = solve_state(pot, st, digits=DIGITS)
            t, sh = sol.tables, sol.shift
            res = max(sol.residuals())
            worst_res = max(worst_res, float(res))
            if res > RESIDUAL_TOL:
                failures.append(f"residual {float(res):.1e} at alpha={alpha} {st}")
            for n in range(len(t.log_derivative)):
                if t.D(0, n) != 0:
                    failures.append(f"D(0,{n}) != 0")
                if any(x != 0 for i, x in enumerate(t.U(n)) if i % 2 == 0):
                    failures.append(f"U({n}) parity")
                if n + 1 < len(t.log_derivative) and any(x != 0 for i, x in enumerate(t.G(n)) if i % 2 == 1):
                    failures.append(f"G({n}) parity")
            if abs(sol.series.e_m1) > EXACT_TOL:
                failures.append(f"E(-1) = {float(sol.series.e_m1):.1e}")
            if abs(sh.omega ** 2 - 2 * sol.expansion.b[2]) > EXACT_TOL:
                failures.append(f"omega^2 - 2 B2 at {st}")
            if st.k == 1:
                dev = _k1_closed_forms(sol)
                if dev > EXACT_TOL:
                    failures.append(f"k=1 closed forms off by {float(dev):.1e}")
    ok = report(8, not failures, f"residual worst {worst_res:.1e} (bound {RESIDUAL_TOL:.0e}), closed forms, parity, D0=0, "
                f"E(-1)=0, omega^2=2B2" + (f"; failing: {failures}" if failures else ""))
    assert ok


def test_criterion_9_pade():
    ctx = context(DIGITS)
    mp = lambda xs: [ctx.mpf(x) for x in xs]
    failures = []
    # exact rational recovery: (1 + 2t - t^2) / (1 - 3t + t^2)
    num, den = mp([1, 2, -1]), mp([1, -3, 1])
    c = []
    for i in range(5):
        acc = num[i] if i < 3 else ctx.mpf(0)
        for j in range(1, min(i, 2) + 1):
            acc -= den[j] * c[i - j]
        c.append(acc)
    r = build_pade(c, 2, 2)
    if max(abs(a - b) for a, b in zip(r.numerator + r.denominator, num + den)) > EXACT_TOL:
        failures.append("rational recovery")
    coeffs = mp(["0.3", "-1.1", "0.7", "2.5", "-0.4", "1.9", "0.2", "-3.3", "1.0"])
    back = build_pade(coeffs, 4, 4).taylor(9)
    if max(abs(a - b) for a, b in zip(back, coeffs)) > EXACT_TOL:
        failures.append("re-expansion")
    try:
        build_pade(mp([1, 0, 0, 0, 0]), 2, 2)
        failures.append("degenerate table not detected")
    except DegenerateTable:
        pass
    try:
        accelerated_energy(EnergySeries(ctx.mpf(0), ctx.mpf(0), mp([1, 2, 4]), ctx.mpf(2), 2), 0, 1)
        failures.append("pole not detected")
    except PoleNearEvaluation:
        pass
    ok = report(9, not failures, "recovery, re-expansion, degenerate table, pole near evaluation"
                + (f"; failing: {failures}" if failures else ""))
    assert ok
