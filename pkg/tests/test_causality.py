import json

import numpy as np
import pytest

from kklab import (
    AsymptoteFitError,
    ComplexIndexSpectrum,
    Dichotomy,
    FrequencyGrid,
    GridUnit,
    KkOptions,
    LorentzOscillatorParams,
    audit,
    check_bounded,
    detect_amplification,
    estimate_asymptote,
    lorentz_index,
    resample,
)


def _const(grid, re, im=0.0):
    n = grid.size
    return ComplexIndexSpectrum(grid, np.full(n, re), np.full(n, im))


# --- asymptote -----------------------------------------------------------------

def test_asymptote_of_unity(std_grid):
    value, unc = estimate_asymptote(_const(std_grid, 1.0))
    assert value == pytest.approx(1.0, abs=1e-12)
    assert unc == pytest.approx(0.0, abs=1e-12)


def test_asymptote_of_lorentz(std_lorentz):
    value, unc = estimate_asymptote(std_lorentz)
    assert abs(value - 1.0) <= 3.0 * unc
    assert unc < 1e-4


def test_asymptote_of_constant_09(std_grid):
    value, unc = estimate_asymptote(_const(std_grid, 0.9))
    assert value == pytest.approx(0.9, abs=1e-12)
    assert unc == pytest.approx(0.0, abs=1e-12)


def test_asymptote_needs_three_decades():
    g = FrequencyGrid.log_spaced(1.0, 50.0, 64, GridUnit.NORMALIZED)
    with pytest.raises(ValueError, match="3 decades"):
        estimate_asymptote(_const(g, 1.0))


def test_asymptote_misfit_raises(std_grid):
    # single large spike in the top decade: max residual >> rms
    re = np.ones(std_grid.size)
    re[-40] = 2.0
    with pytest.raises(AsymptoteFitError, match="misfit"):
        estimate_asymptote(ComplexIndexSpectrum(std_grid, re, np.zeros_like(re)))


# --- amplification bands ---------------------------------------------------------

def test_no_bands_for_passive_input(std_lorentz):
    assert detect_amplification(std_lorentz) == []


def test_constructed_band_is_found(std_grid):
    im = np.ones(std_grid.size) * 0.01
    im[10:21] = -0.01
    s = ComplexIndexSpectrum(std_grid, np.ones_like(im), im)
    assert detect_amplification(s) == [(10, 20)]


def test_band_floor_suppresses_noise(std_grid):
    im = np.ones(std_grid.size) * 0.01
    im[10:21] = -1e-9
    s = ComplexIndexSpectrum(std_grid, np.ones_like(im), im)
    assert detect_amplification(s, floor=1e-6) == []
    assert detect_amplification(s, floor=0.0) == [(10, 20)]


def test_bands_cover_and_are_maximal(std_grid):
    rng = np.random.default_rng(7)
    im = rng.normal(0.0, 1.0, std_grid.size)
    s = ComplexIndexSpectrum(std_grid, np.ones_like(im), im)
    bands = detect_amplification(s, 0.0)
    covered = np.zeros(std_grid.size, dtype=bool)
    for i, j in bands:
        assert i <= j
        covered[i:j + 1] = True
    np.testing.assert_array_equal(covered, s.im < 0.0)
    for (a0, a1), (b0, b1) in zip(bands, bands[1:]):
        assert b0 > a1 + 1  # adjacent runs would have merged


def test_band_at_grid_edges(std_grid):
    im = np.full(std_grid.size, -0.5)
    s = ComplexIndexSpectrum(std_grid, np.ones_like(im), im)
    assert detect_amplification(s) == [(0, std_grid.size - 1)]


# --- boundedness -----------------------------------------------------------------

def test_bounded_simple(std_grid):
    ok, max_sq = check_bounded(_const(std_grid, 1.0), 2.0)
    assert ok and max_sq == pytest.approx(1.0)


def test_bounded_violation(std_grid):
    re = np.ones(std_grid.size)
    im = np.zeros(std_grid.size)
    im[5] = 1.0
    ok, max_sq = check_bounded(ComplexIndexSpectrum(std_grid, re, im), 1.5)
    assert not ok
    assert max_sq == pytest.approx(2.0)


def test_bounded_lorentz_resonance(std_lorentz):
    ok, max_sq = check_bounded(std_lorentz, 40.0)
    assert ok
    assert 25.0 < max_sq < 30.0  # closed form gives 26 exactly at resonance


def test_bounded_rejects_bad_k0(std_lorentz):
    with pytest.raises(ValueError):
        check_bounded(std_lorentz, 0.0)


# --- audit -----------------------------------------------------------------------

def test_audit_lorentz(std_lorentz):
    rep = audit(std_lorentz)
    assert rep.dichotomy is Dichotomy.CONSISTENT_WITH_UNITY
    assert rep.amplification_bands == ()
    assert rep.kk_residual < 1e-3
    assert "im_odd_assumed" in rep.assumptions


def test_audit_constant_09(std_grid):
    rep = audit(_const(std_grid, 0.9))
    assert rep.dichotomy is Dichotomy.SUPERLUMINAL_BRANCH
    assert rep.kk_residual == pytest.approx(0.1, abs=1e-12)


def test_audit_sign_flipped_band(std_lorentz):
    im = std_lorentz.im.copy()
    im[900:1100] *= -1.0
    rep = audit(ComplexIndexSpectrum(std_lorentz.grid, std_lorentz.re, im))
    assert rep.dichotomy is Dichotomy.AMPLIFICATION_BRANCH
    assert rep.amplification_band_nodes == ((900, 1099),)


def test_audit_both_branches(std_lorentz):
    im = std_lorentz.im.copy()
    im[900:1100] *= -1.0
    rep = audit(ComplexIndexSpectrum(std_lorentz.grid, std_lorentz.re - 0.2, im))
    assert rep.dichotomy is Dichotomy.BOTH


def test_audit_inconclusive_on_misfit(std_grid):
    re = np.ones(std_grid.size)
    re[-40] = 2.0
    rep = audit(ComplexIndexSpectrum(std_grid, re, np.zeros_like(re)))
    assert rep.dichotomy is Dichotomy.INCONCLUSIVE
    assert rep.asymptote_re is None


def test_audit_deterministic(std_lorentz):
    a = audit(std_lorentz)
    b = audit(std_lorentz)
    assert a.to_dict() == b.to_dict()


def test_audit_does_not_mutate_input(std_lorentz):
    before = std_lorentz.im.copy()
    audit(std_lorentz)
    np.testing.assert_array_equal(std_lorentz.im, before)


def test_audit_k0_override(std_lorentz):
    rep = audit(std_lorentz, KkOptions(boundedness_constant=10.0))
    assert not rep.bounded_ok
    assert rep.boundedness_constant == 10.0
    assert "k0_defaulted" not in rep.assumptions


def test_audit_classification_stable_under_refinement(std_lorentz, std_grid):
    fine = FrequencyGrid.log_spaced(1e-2, 1e2, 2 * std_grid.size, GridUnit.NORMALIZED)
    base = audit(std_lorentz).dichotomy
    refined = audit(resample(std_lorentz, fine)).dichotomy
    assert base is refined


def test_report_json_schema(std_lorentz):
    rep = audit(std_lorentz)
    doc = json.loads(rep.to_json())
    assert doc["schema"] == 1
    expected = {"schema", "asymptote_re", "asymptote_re_uncertainty", "asymptote_im",
                "asymptote_im_uncertainty", "amplification_bands",
                "amplification_band_nodes", "kk_residual", "bounded", "dichotomy",
                "assumptions"}
    assert set(doc) == expected
    assert set(doc["bounded"]) == {"ok", "max_sq", "k0"}
