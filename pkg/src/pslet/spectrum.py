"""Interdimensional degeneracy: states sharing l_D = l + (D-3)/2 are isospectral.

One solve per distinct (k, l_D) key; every (l, D) on the same ladder gets
the identical result object.
"""
from __future__ import annotations

import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

from ._numeric import DEFAULT_DIGITS, context
from .engine import DEFAULT_ORDER, solve_state
from .errors import PsletError
from .pade import pade_sequence
from .potentials import RadialPotential
from .shift import StateIndex


def effective_l(state: StateIndex) -> Fraction:
    return state.l_D


def degeneracy_ladder(state: StateIndex, l_max: int) -> list:
    """All (k, l', D') with l' <= l_max, D' >= 2 and the same l_D (hence same D parity)."""
    l_D = state.l_D
    out = []
    for l in range(min(l_max, int(l_D + Fraction(1, 2))), -1, -1):
        D = 2 * (l_D - l) + 3
        if D.denominator == 1 and D >= 2:
            out.append(StateIndex(state.k, l, int(D)))
    return sorted(out, key=lambda s: (s.D, -s.l))


@dataclass(frozen=True)
class SolvedLevel:
    """Energies shared by one ladder."""

    k: int
    l_D: Fraction
    q0: object = None
    omega: object = None
    beta: object = None
    lbar: object = None
    energy_raw: object = None
    energy_pade: object = None
    pade_spread: object = None
    error: str = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass
class SpectrumEntry:
    state: StateIndex
    level: SolvedLevel
    ladder: list = field(default_factory=list)

    @property
    def l_D(self):
        return self.state.l_D

    @property
    def energy_raw(self):
        return self.level.energy_raw

    @property
    def energy_pade(self):
        return self.level.energy_pade


def solve_level(potential: RadialPotential, k: int, l_D, n_max: int = DEFAULT_ORDER,
                digits: int = DEFAULT_DIGITS, pade=(4, 4)) -> SolvedLevel:
    l_D = Fraction(l_D)
    try:
        sol = solve_state(potential, (k, l_D), n_max=n_max, digits=digits)
        report = pade_sequence(sol.series, *pade) if pade else None
    except PsletError as exc:
        return SolvedLevel(k, l_D, error=f"{type(exc).__name__}: {exc}")
    sh = sol.shift
    return SolvedLevel(
        k, l_D, sh.q0, sh.omega, sh.beta, sh.lbar, sol.energy_raw,
        report.value if report else None, report.spread if report else None,
    )


class LevelCache:
    """Insert-once cache of solved levels keyed by (k, exact l_D)."""

    def __init__(self, potential, n_max=DEFAULT_ORDER, digits=DEFAULT_DIGITS, pade=(4, 4)):
        self.potential = potential
        self.n_max = n_max
        self.digits = digits
        self.pade = pade
        self._levels = {}
        self._lock = threading.Lock()

    def __contains__(self, key):
        return key in self._levels

    def __len__(self):
        return len(self._levels)

    def insert(self, level: SolvedLevel) -> SolvedLevel:
        key = (level.k, level.l_D)
        with self._lock:
            return self._levels.setdefault(key, level)

    def get(self, k: int, l_D) -> SolvedLevel:
        key = (k, Fraction(l_D))
        level = self._levels.get(key)
        if level is None:
            level = self.insert(solve_level(self.potential, k, key[1], self.n_max, self.digits, self.pade))
        return level

    def fill(self, keys, workers: int = 1) -> None:
        todo = sorted({(k, Fraction(l)) for k, l in keys} - set(self._levels))
        if workers > 1 and len(todo) > 1:
            args = [(self.potential, k, l, self.n_max, self.digits, self.pade) for k, l in todo]
            with ProcessPoolExecutor(workers) as pool:
                for level in pool.map(_solve_level_args, args):
                    self.insert(_unpack(level, self.digits))
        else:
            for k, l in todo:
                self.get(k, l)


_NUMERIC_FIELDS = ("q0", "omega", "beta", "lbar", "energy_raw", "energy_pade", "pade_spread")


def _solve_level_args(args):
    # mpf types of private contexts do not pickle; ship the raw (sign, man, exp, bc) tuples
    level = solve_level(*args)
    return replace(level, **{f: getattr(getattr(level, f), "_mpf_", getattr(level, f))
                             for f in _NUMERIC_FIELDS})


def _unpack(level: SolvedLevel, digits: int) -> SolvedLevel:
    ctx = context(digits)
    def conv(x):
        return ctx.make_mpf(x) if isinstance(x, tuple) else x

    return replace(level, **{f: conv(getattr(level, f)) for f in _NUMERIC_FIELDS})


def build_spectrum(potential: RadialPotential, k_max: int, l_max: int, dims, n_max: int = DEFAULT_ORDER,
                   digits: int = DEFAULT_DIGITS, pade=(4, 4), workers: int = 1, cache: LevelCache = None) -> list:
    """Entries for every k <= k_max, l <= l_max, D in ``dims``, sorted by (k, D, l)."""
    if cache is None:
        cache = LevelCache(potential, n_max, digits, pade)
    states = [StateIndex(k, l, D) for k in range(k_max + 1) for D in sorted(set(dims)) for l in range(l_max + 1)]
    cache.fill(((s.k, s.l_D) for s in states), workers=workers)
    return [SpectrumEntry(s, cache.get(s.k, s.l_D), degeneracy_ladder(s, l_max)) for s in states]
