from fractions import Fraction

import pytest

from pslet.errors import DomainError
from pslet.oracle import (OracleConfig, converged_energy, diagonalize, emit_fixtures, harmonic_scale,
                          load_fixtures, overlap_check)
from pslet.potentials import AnharmonicOscillator, CoulombPotential, HarmonicOscillator


@pytest.mark.parametrize("l_D", [Fraction(-1, 2), 0, 2])
def test_harmonic_exact_in_minimal_basis(l_D):
    pot = HarmonicOscillator("0.5")
    vals = diagonalize(pot, l_D, OracleConfig(4, harmonic_scale(pot)), 3)
    want = [float(l_D) + 2 * k + 1.5 for k in range(3)]
    assert vals == pytest.approx(want, abs=1e-13)


def test_variational_monotone_in_basis_size(aho1):
    vals = [diagonalize(aho1, 0, OracleConfig(n), 2)[1] for n in (6, 10, 16, 24, 40)]
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))


def test_scale_robustness(aho1):
    vals = [diagonalize(aho1, 0, OracleConfig(80, s), 2)[1] for s in (0.6, 0.75, 0.9)]
    assert max(vals) - min(vals) < 1e-9


@pytest.mark.parametrize("alpha, l_D, k, want, tol", [
    ("0.5", 0, 1, 6.57840195, 5e-8),
    ("8000", 0, 1, 146.745512, 1e-6),
    ("1", 0, 1, 7.94240399, 1e-8),
])
def test_converged_against_published(alpha, l_D, k, want, tol):
    val, delta = converged_energy(AnharmonicOscillator("0.5", alpha), l_D, k)
    assert delta < 1e-11
    assert val == pytest.approx(want, abs=tol)


def test_two_dimensional_ground_state():
    # g = 1 in the doubled-energy convention
    val, _ = converged_energy(AnharmonicOscillator("0.5", "0.5"), Fraction(-1, 2), 0)
    assert 2 * val == pytest.approx(2.952050, abs=5e-7)


def test_high_precision_agrees_with_double(aho1):
    lo = diagonalize(aho1, 1, OracleConfig(30, 0.8), 1)[0]
    hi = diagonalize(aho1, 1, OracleConfig(30, 0.8, digits=30), 1)[0]
    assert float(hi) == pytest.approx(lo, rel=1e-12)


def test_overlap_is_identity():
    assert overlap_check(0, 20) == pytest.approx(1, abs=1e-10)
    assert overlap_check(Fraction(-1, 2), 20, 0.7) == pytest.approx(1, abs=1e-10)


def test_domain_errors(coulomb):
    with pytest.raises(DomainError):
        diagonalize(coulomb, 0)
    with pytest.raises(DomainError):
        diagonalize(AnharmonicOscillator("0.5", "1"), -1)


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(2)
    with pytest.raises(ValueError):
        OracleConfig(10, -1.0)
    with pytest.raises(ValueError):
        converged_energy(HarmonicOscillator("0.5"), 0, 0, tol=0)


def test_fixture_roundtrip(tmp_path):
    recs = [{"k": 1, "energy": "7.9424"}, {"k": 0, "energy": "1.5"}]
    path = tmp_path / "fx.jsonl"
    emit_fixtures(recs, path)
    assert load_fixtures(path) == recs
