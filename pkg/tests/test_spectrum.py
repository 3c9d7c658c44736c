from fractions import Fraction

import pytest

from pslet.potentials import AnharmonicOscillator, HarmonicOscillator
from pslet.shift import StateIndex
from pslet.spectrum import LevelCache, build_spectrum, degeneracy_ladder, effective_l, solve_level


def test_effective_l():
    assert effective_l(StateIndex(0, 0, 3)) == 0
    assert effective_l(StateIndex(0, 0, 2)) == Fraction(-1, 2)
    assert effective_l(StateIndex(0, 2, 3)) == effective_l(StateIndex(0, 0, 7)) == 2


def test_ladders():
    assert degeneracy_ladder(StateIndex(1, 2, 3), 10) == [StateIndex(1, 2, 3), StateIndex(1, 1, 5), StateIndex(1, 0, 7)]
    assert degeneracy_ladder(StateIndex(0, 1, 2), 10) == [StateIndex(0, 1, 2), StateIndex(0, 0, 4)]
    assert degeneracy_ladder(StateIndex(0, 0, 2), 10) == [StateIndex(0, 0, 2)]
    assert degeneracy_ladder(StateIndex(0, 5, 3), 3) == [StateIndex(0, 3, 7), StateIndex(0, 2, 9),
                                                       StateIndex(0, 1, 11), StateIndex(0, 0, 13)]


@pytest.mark.parametrize("state", [StateIndex(0, 4, 2), StateIndex(2, 3, 3), StateIndex(1, 0, 6)])
def test_ladder_invariants(state):
    ladder = degeneracy_ladder(state, 20)
    assert state in ladder
    assert len({s.l_D for s in ladder}) == 1
    assert {s.D % 2 for s in ladder} == {state.D % 2}


def test_spectrum_examples():
    entries = build_spectrum(AnharmonicOscillator("0.5", "1"), 1, 5, [3, 5])
    by = {e.state: e for e in entries}
    a, b = by[StateIndex(1, 5, 3)], by[StateIndex(1, 4, 5)]
    assert float(a.energy_pade) == pytest.approx(23.7006578, abs=5e-8)
    assert a.energy_pade is b.energy_pade


def test_spectrum_table5_ladder():
    entries = build_spectrum(AnharmonicOscillator("0.5", "0.01"), 0, 10, [2, 4])
    by = {e.state: e for e in entries}
    e = by[StateIndex(0, 10, 2)]
    assert float(e.energy_pade) == pytest.approx(12.0962676139707, abs=5e-13)
    assert by[StateIndex(0, 9, 4)].energy_pade is e.energy_pade


def test_harmonic_grid():
    entries = build_spectrum(HarmonicOscillator("0.5"), 2, 3, [2, 3, 4])
    for e in entries:
        expected = float(e.state.l_D) + 2 * e.state.k + 1.5
        assert float(e.energy_raw) == pytest.approx(expected, abs=1e-40)
        assert float(e.energy_pade) == pytest.approx(expected, abs=1e-40)


def test_cache_solves_once_per_key():
    cache = LevelCache(AnharmonicOscillator("0.5", "1"), digits=30)
    build_spectrum(cache.potential, 1, 4, [2, 3, 4, 5], cache=cache)
    # l_D values: -1/2..(4+1) in half steps reachable, one entry per (k, l_D)
    keys = {(k, StateIndex(k, l, D).l_D) for k in (0, 1) for l in range(5) for D in (2, 3, 4, 5)}
    assert len(cache) == len(keys)


def test_failed_entry_does_not_abort():
    from pslet.potentials import RadialPotential

    level = solve_level(RadialPotential({2: -1}), 0, 0)
    assert level.failed and "UnstableOrbit" in level.error


def test_parallel_fill_matches_serial():
    pot = AnharmonicOscillator("0.5", "2")
    serial = build_spectrum(pot, 1, 2, [2, 3], digits=30)
    parallel = build_spectrum(pot, 1, 2, [2, 3], digits=30, workers=2)
    assert [e.energy_pade for e in serial] == [e.energy_pade for e in parallel]
