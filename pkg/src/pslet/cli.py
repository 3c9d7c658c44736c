"""Command-line front end.

    pslet solve --alpha 1 --k 1 --l 0 --dim 3
    pslet table --id 3
    pslet verify --table 4
    pslet spectrum --alpha 1 --k-max 1 --l-max 5 --dims 2 3
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from . import tables as reftables
from ._numeric import DEFAULT_DIGITS, as_fraction, context, is_double
from .engine import DEFAULT_ORDER, dump_tables, solve_state
from .errors import PsletError
from .oracle import OracleConfig, converged_energy, diagonalize, emit_fixtures
from .pade import pade_sequence
from .potentials import AnharmonicOscillator, HarmonicOscillator
from .shift import StateIndex
from .spectrum import LevelCache, build_spectrum

SHOW_DIGITS = 15


@dataclass
class RunConfig:
    alpha0: Fraction = Fraction(1, 2)
    alpha: Fraction = Fraction(0)
    order: int = DEFAULT_ORDER
    pade: tuple = (4, 4)
    digits: int = DEFAULT_DIGITS
    fmt: str = "table"
    double_energy: bool = False
    show_digits: int = SHOW_DIGITS

    def potential(self):
        if self.alpha == 0:
            return HarmonicOscillator(self.alpha0)
        return AnharmonicOscillator(self.alpha0, self.alpha)

    def energy(self, x):
        """Display transform of an energy; computation never sees the doubling."""
        if x is None:
            return None
        return 2 * x if self.double_energy else x


def _fmt_num(x, digits):
    if x is None:
        return ""
    if isinstance(x, (int, str)):
        return str(x)
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, Decimal):
        return str(x)
    if isinstance(x, float):
        return f"{x:.{min(digits, 17)}g}"
    return x.context.nstr(x, digits, strip_zeros=False)


def emit(records, fmt, digits, out=None):
    out = out or sys.stdout
    records = list(records)
    if not records:
        return
    cols = list(records[0])
    rows = [[_fmt_num(r.get(c), digits) for c in cols] for r in records]
    if fmt == "json-lines":
        for r, row in zip(records, rows):
            rec = {c: (r.get(c) if type(r.get(c)) is int else v) for c, v in zip(cols, row)}
            out.write(json.dumps(rec) + "\n")
    elif fmt == "tsv":
        out.write("\t".join(cols) + "\n")
        for row in rows:
            out.write("\t".join(row) + "\n")
    else:
        widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
        out.write("  ".join(c.rjust(w) for c, w in zip(cols, widths)) + "\n")
        for row in rows:
            out.write("  ".join(v.rjust(w) for v, w in zip(row, widths)) + "\n")


def _common(p):
    p.add_argument("--alpha0", default="0.5", help="quadratic coupling (default 0.5)")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--alpha", help="quartic coupling")
    grp.add_argument("--g", help="doubled-energy-table coupling, alpha = g/2")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="highest energy correction E^(n)")
    p.add_argument("--pade", nargs=2, type=int, metavar=("M", "N"), help="numerator and denominator degrees")
    p.add_argument("--pade-num", type=int, help="numerator degree M")
    p.add_argument("--pade-den", type=int, help="denominator degree N")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="working precision in decimal digits")
    p.add_argument("--format", dest="fmt", choices=("table", "tsv", "json-lines"), default="table")
    p.add_argument("--double-energy", action="store_true", help="display 2E instead of E")
    p.add_argument("--show-digits", type=int, default=SHOW_DIGITS, help="significant digits printed")
    p.add_argument("--tol", type=float, help="root-finding / oracle relative tolerance")
    p.add_argument("--oracle-basis", type=int, help="fixed oracle basis size (default: converge)")


def _state_args(p, required=True):
    p.add_argument("--k", type=int, default=0 if not required else None, required=required)
    p.add_argument("--l", type=int)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--lD", help="effective momentum l + (D-3)/2, instead of --l/--dim")


def build_parser():
    parser = argparse.ArgumentParser(prog="pslet", description="Shifted-l expansion energies for central potentials")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="one state with full diagnostics")
    _common(p)
    _state_args(p)
    p.add_argument("--dump-tables", metavar="PATH", help="write coefficient tables and residuals")

    p = sub.add_parser("table", help="reproduce a published table")
    _common(p)
    p.add_argument("--id", type=int, required=True, choices=range(1, 6))
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("verify", help="compare against the diagonalisation oracle")
    _common(p)
    _state_args(p, required=False)
    p.add_argument("--table", type=int, choices=range(1, 6), help="verify every state of a table grid")
    p.add_argument("--emit-fixtures", metavar="PATH", help="write oracle records as JSON lines")

    p = sub.add_parser("spectrum", help="degeneracy-expanded grid")
    _common(p)
    p.add_argument("--k-max", type=int, default=1)
    p.add_argument("--l-max", type=int, default=5)
    p.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    p.add_argument("--workers", type=int, default=1)
    return parser


def _config(args, parser) -> RunConfig:
    if args.g is not None:
        alpha = reftables.alpha_from_g(args.g)
    else:
        alpha = as_fraction(args.alpha) if args.alpha is not None else Fraction(0)
    pade = tuple(args.pade) if args.pade else (4, 4)
    if args.pade_num is not None or args.pade_den is not None:
        if args.pade:
            parser.error("--pade conflicts with --pade-num/--pade-den")
        pade = (args.pade_num if args.pade_num is not None else pade[0],
                args.pade_den if args.pade_den is not None else pade[1])
    if sum(pade) + 1 > args.order + 1:
        parser.error(f"[{pade[0]}/{pade[1]}] needs --order >= {sum(pade)}")
    if args.digits < 8:
        parser.error("--digits must be >= 8")
    return RunConfig(as_fraction(args.alpha0), alpha, args.order, pade, args.digits, args.fmt,
                     args.double_energy, args.show_digits)


def _state(args, parser) -> StateIndex:
    if args.lD is not None:
        if args.l is not None:
            parser.error("give either --lD or --l/--dim")
        return StateIndex.canonical(args.k, Fraction(args.lD))
    if args.l is None:
        parser.error("--l (or --lD) is required")
    return StateIndex(args.k, args.l, args.dim)


def _state_record(cfg, state, sol, report):
    sh = sol.shift
    return {
        "k": state.k, "l": state.l, "D": state.D, "l_D": state.l_D,
        "q0": sh.q0, "omega": sh.omega, "beta": sh.beta, "lbar": sh.lbar,
        "E_raw": cfg.energy(sol.energy_raw), "E_pade": cfg.energy(report.value),
        "pade_spread": cfg.energy(report.spread),
    }


def cmd_solve(args, parser):
    cfg = _config(args, parser)
    state = _state(args, parser)
    sol = solve_state(cfg.potential(), state, cfg.order, cfg.digits,
                      tol=args.tol)
    report = pade_sequence(sol.series, *cfg.pade)
    rec = _state_record(cfg, state, sol, report)
    rec["E_m2"] = sol.series.e_m2
    rec["E_m1"] = sol.series.e_m1
    for n, e in enumerate(sol.series.e):
        rec[f"E{n}"] = e
    rec["max_residual"] = max(sol.residuals())
    emit([rec], cfg.fmt, cfg.show_digits)
    if args.dump_tables:
        with open(args.dump_tables, "w") as fh:
            fh.write(dump_tables(sol))
    return 0


def _to_decimal(x):
    if isinstance(x, float):
        return Decimal(repr(x))
    return Decimal(x.context.nstr(x, x.context.dps))


def table_report(table_id: int, digits: int = DEFAULT_DIGITS, order: int = DEFAULT_ORDER,
                 pade=(4, 4), workers: int = 1):
    """Computed vs published cells; returns (records, all_pslet_cells_within_tolerance)."""
    by_alpha = {}
    for alpha, k, l, D in reftables.states(table_id):
        by_alpha.setdefault(alpha, []).append((k, l, D))
    computed = {}
    for alpha, sts in by_alpha.items():
        pot = AnharmonicOscillator(Fraction(1, 2), alpha)
        cache = LevelCache(pot, order, digits, pade)
        cache.fill(((k, StateIndex(k, l, D).l_D) for k, l, D in sts), workers=workers)
        for k, l, D in sts:
            computed[(alpha, k, l, D)] = cache.get(k, StateIndex(k, l, D).l_D)
    records, ok = [], True
    for cell in reftables.cells(table_id):
        level = computed[(cell.alpha, cell.k, cell.l, cell.D)]
        target = level.energy_raw if cell.column == "raw" else level.energy_pade
        rec = {"table": table_id, "coupling": cell.coupling_label, "k": cell.k, "l": cell.l, "D": cell.D,
               "column": cell.column, "reference": cell.printed}
        if level.failed or target is None:
            rec.update(computed="", delta="", rel="", tol=str(cell.ulp), status="FAILED")
            ok = ok and cell.column not in reftables.PSLET_COLUMNS
            records.append(rec)
            continue
        val = _to_decimal(target) * (2 if cell.doubled else 1)
        delta = val - cell.value
        shown = val.quantize(cell.ulp) if abs(val) < Decimal(10) ** 12 else val
        if cell.column in reftables.PSLET_COLUMNS:
            within = abs(delta) <= cell.ulp
            status = "ok" if within else "MISMATCH"
            ok = ok and within
        else:
            status = "ref"
        rec.update(computed=str(shown), delta=f"{delta:.3e}", rel=f"{(delta / cell.value):.3e}",
                   tol=str(cell.ulp), status=status)
        records.append(rec)
    return records, ok


def cmd_table(args, parser):
    cfg = _config(args, parser)
    records, ok = table_report(args.id, cfg.digits, cfg.order, cfg.pade, args.workers)
    emit(records, cfg.fmt, cfg.show_digits)
    return 0 if ok else 1


def _oracle(pot, l_D, k, args):
    tol = args.tol if args.tol is not None else 1e-11
    if args.oracle_basis:
        val = diagonalize(pot, l_D, OracleConfig(args.oracle_basis), k + 1)[k]
        return val, None
    return converged_energy(pot, l_D, k, tol=tol)


def cmd_verify(args, parser):
    cfg = _config(args, parser)
    if args.table:
        jobs = [(AnharmonicOscillator(Fraction(1, 2), a), StateIndex(k, l, D))
                for a, k, l, D in reftables.states(args.table)]
    else:
        jobs = [(cfg.potential(), _state(args, parser))]
    records, fixtures = [], []
    for pot, state in jobs:
        rec = {"alpha0": pot.terms.get(2), "alpha": pot.terms.get(4, Fraction(0)),
               "k": state.k, "l": state.l, "D": state.D, "l_D": state.l_D}
        try:
            sol = solve_state(pot, state, cfg.order, cfg.digits)
            report = pade_sequence(sol.series, *cfg.pade)
            e_raw, e_pade = sol.energy_raw, report.value
            e_or, err = _oracle(pot, state.l_D, state.k, args)
        except PsletError as exc:
            rec.update(status=f"{type(exc).__name__}: {exc}")
            records.append(rec)
            continue
        rel_raw = abs(float(e_raw) - e_or) / abs(e_or)
        rel_pade = abs(float(e_pade) - e_or) / abs(e_or) if e_pade is not None else None
        rec.update(E_raw=cfg.energy(e_raw), E_pade=cfg.energy(e_pade), E_oracle=cfg.energy(e_or),
                   oracle_delta=err, rel_raw=rel_raw, rel_pade=rel_pade, status="ok")
        records.append(rec)
        fixtures.append({"alpha0": str(rec["alpha0"]), "alpha": str(rec["alpha"]), "l_D": str(state.l_D),
                         "k": state.k, "energy": repr(float(e_or)), "error": repr(err)})
    emit(records, cfg.fmt, cfg.show_digits)
    if args.emit_fixtures:
        emit_fixtures(fixtures, args.emit_fixtures)
    return 0 if all(r["status"] == "ok" for r in records) else 1


def cmd_spectrum(args, parser):
    cfg = _config(args, parser)
    entries = build_spectrum(cfg.potential(), args.k_max, args.l_max, args.dims, cfg.order, cfg.digits,
                             cfg.pade, workers=args.workers)
    records = []
    for e in entries:
        lv = e.level
        records.append({
            "k": e.state.k, "l": e.state.l, "D": e.state.D, "l_D": e.state.l_D,
            "q0": lv.q0, "omega": lv.omega, "beta": lv.beta, "lbar": lv.lbar,
            "E_raw": cfg.energy(lv.energy_raw), "E_pade": cfg.energy(lv.energy_pade),
            "pade_spread": cfg.energy(lv.pade_spread),
            "ladder": " ".join(f"({s.k},{s.l},{s.D})" for s in e.ladder),
            "status": lv.error or "ok",
        })
    emit(records, cfg.fmt, cfg.show_digits)
    return 0 if all(r["status"] == "ok" for r in records) else 1


COMMANDS = {"solve": cmd_solve, "table": cmd_table, "verify": cmd_verify, "spectrum": cmd_spectrum}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser)
    except PsletError as exc:
        print(f"pslet: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
