import numpy as np
import pytest

from ptscatter import (
    Feature,
    ScatteringData,
    check_invisibility,
    find_spectral_singularities,
    find_unidirectional_points,
    scattering_at,
    sweep,
)
from ptscatter.catalog import barrier, free, onesided, pt_bilayer, pt_stack4
from ptscatter.scan import (
    BIDIRECTIONAL_REFLECTIONLESS,
    REFLECTIONLESS_LEFT,
    REFLECTIONLESS_RIGHT,
    SPECTRAL_SINGULARITY,
)

# frozen coordinates: bilayer singularity from the two-parameter polish,
# stack4 reflection zeros from wide-bracket refinement
BILAYER_GAMMA_STAR = 2.071737124880286
BILAYER_K_STAR = 1.064682550561970
STACK4_LEFT_ZERO = 2.228963253
STACK4_RIGHT_ZERO = 4.712710432


def test_sweep_free_potential():
    res = sweep(free(), np.linspace(0.5, 2.5, 11))
    assert len(res.rows) == 11 and not res.errors
    for s in res.rows:
        assert s.T == 1.0 and s.R_left == 0.0 and s.R_right == 0.0


def test_sweep_real_barrier_unitary_rows():
    res = sweep(barrier(), np.linspace(0.5, 3.0, 21))
    for s in res.rows:
        assert abs(abs(s.T) ** 2 + abs(s.R_left) ** 2 - 1.0) <= 1e-12


def test_sweep_bilayer_pseudo_unitary_rows():
    res = sweep(pt_bilayer(gamma=0.5), np.linspace(0.5, 3.0, 21))
    for s in res.rows:
        sign = 1.0 if abs(s.T) <= 1.0 else -1.0
        assert abs(abs(s.T) ** 2 + sign * abs(s.R_left * s.R_right) - 1.0) <= 1e-12


def test_sweep_validates_grid():
    with pytest.raises(ValueError):
        sweep(free(), [1.0, 0.5])
    with pytest.raises(ValueError):
        sweep(free(), [-1.0, 1.0])
    with pytest.raises(ValueError):
        sweep(free(), [])


def test_sweep_ode_backend_row_errors_do_not_abort():
    res = sweep(barrier(), np.array([0.7, 1.1]), backend="ode", tol=1e-8)
    assert len(res.rows) == 2
    assert not res.errors


def test_singularity_scan_real_potentials_empty():
    for pot in (barrier(), free()):
        res = find_spectral_singularities(pot, 0.3, 5.0, 0.05)
        assert res.features == ()


def test_singularity_scan_finds_bilayer_zero():
    pot = pt_bilayer(gamma=BILAYER_GAMMA_STAR)
    res = find_spectral_singularities(pot, 0.3, 3.0, 2.7 / 49, tol=1e-12)
    assert len(res.features) == 1
    f = res.features[0]
    assert f.kind == SPECTRAL_SINGULARITY
    assert f.residual <= 1e-8
    assert f.bracket[0] <= f.k_star <= f.bracket[1]
    assert abs(f.k_star - BILAYER_K_STAR) <= 1e-6
    # pole certified by the denominator: |T| explodes at k*
    s = scattering_at(pot, f.k_star)
    if s.finite:
        assert abs(s.T) > 1e3


def test_singularity_scan_slightly_off_critical_gain_empty():
    res = find_spectral_singularities(pt_bilayer(gamma=BILAYER_GAMMA_STAR - 0.05),
                                      0.3, 3.0, 2.7 / 49, tol=1e-12)
    assert res.features == ()


def test_singularity_scan_validates_range():
    with pytest.raises(ValueError):
        find_spectral_singularities(barrier(), -1.0, 2.0, 0.1)
    with pytest.raises(ValueError):
        find_spectral_singularities(barrier(), 2.0, 1.0, 0.1)
    with pytest.raises(ValueError):
        find_spectral_singularities(barrier(), 0.5, 2.0, 0.0)


def test_unidirectional_scan_stack4_left_zero():
    res = find_unidirectional_points(pt_stack4(), 0.3, 3.0, 0.01)
    assert len(res.features) == 1
    f = res.features[0]
    assert f.kind == REFLECTIONLESS_LEFT
    assert abs(f.k_star - STACK4_LEFT_ZERO) <= 1e-6
    assert f.residual <= 1e-8
    # transparent (|T| = 1) but not invisible (T != 1): stays reflectionless
    s = scattering_at(pt_stack4(), f.k_star)
    assert abs(abs(s.T) - 1.0) <= 1e-6
    assert abs(s.T - 1.0) > 0.1


def test_unidirectional_scan_stack4_both_zeros():
    res = find_unidirectional_points(pt_stack4(), 0.3, 5.0, 0.005)
    kinds = [f.kind for f in res.features]
    assert kinds == [REFLECTIONLESS_LEFT, REFLECTIONLESS_RIGHT]
    assert abs(res.features[0].k_star - STACK4_LEFT_ZERO) <= 1e-6
    assert abs(res.features[1].k_star - STACK4_RIGHT_ZERO) <= 1e-6


def test_even_potential_zeros_are_bidirectional():
    res = find_unidirectional_points(barrier(), 1.8, 2.5, 0.01)
    assert len(res.features) == 1
    f = res.features[0]
    assert f.kind == BIDIRECTIONAL_REFLECTIONLESS
    # slab resonance: interior wavenumber fits the width, kappa * 2h = pi
    expect = np.sqrt(2.0 + (np.pi / 2.0) ** 2)
    assert abs(f.k_star - expect) <= 1e-8


def test_free_potential_reports_no_isolated_features():
    res = find_unidirectional_points(free(), 0.5, 2.0, 0.05)
    assert res.features == ()


def test_feature_lists_stable_under_grid_refinement():
    tol = 1e-10
    r1 = find_unidirectional_points(pt_stack4(), 0.3, 3.0, 0.01, tol=tol)
    r2 = find_unidirectional_points(pt_stack4(), 0.3, 3.0, 0.005, tol=tol)
    assert len(r1.features) == len(r2.features)
    for a, b in zip(r1.features, r2.features):
        assert a.kind == b.kind
        assert abs(a.k_star - b.k_star) <= tol
    s1 = find_spectral_singularities(pt_bilayer(gamma=BILAYER_GAMMA_STAR), 0.3, 3.0, 0.05, tol=tol)
    s2 = find_spectral_singularities(pt_bilayer(gamma=BILAYER_GAMMA_STAR), 0.3, 3.0, 0.025, tol=tol)
    assert len(s1.features) == len(s2.features) == 1
    assert abs(s1.features[0].k_star - s2.features[0].k_star) <= tol


def test_check_invisibility_free_data():
    s = ScatteringData(1.0, 1.0 + 0j, 0j, 0j, 1.0 + 0j, True, 1.0)
    f = Feature(REFLECTIONLESS_LEFT, 1.0, 0.0, (0.9, 1.1))
    assert check_invisibility(f, s)


def test_check_invisibility_rejects_transparent_but_phased():
    s = ScatteringData(1.0, np.exp(0.3j), 0j, 0j, np.exp(0.6j), True, 1.0)
    f = Feature(BIDIRECTIONAL_REFLECTIONLESS, 1.0, 0.0, (0.9, 1.1))
    assert not check_invisibility(f, s)
    with pytest.raises(ValueError):
        check_invisibility(Feature(SPECTRAL_SINGULARITY, 1.0, 0.0, (0.9, 1.1)), s)


def test_invisibility_upgrade_wiring():
    # loose tolerance forces the upgrade path; kind switches and the note
    # records the measured |T - 1|
    res = find_unidirectional_points(pt_stack4(), 2.0, 2.5, 0.01, invisibility_tol=2.0)
    assert len(res.features) == 1
    f = res.features[0]
    assert f.kind == "invisible_left"
    assert "|T-1|" in f.note


def test_boundary_warning_near_edge():
    res = find_unidirectional_points(pt_stack4(), 2.22, 3.0, 0.01)
    assert len(res.features) == 1
    assert res.features[0].boundary_warning


def test_onesided_scan_runs_clean():
    res = find_spectral_singularities(onesided(), 0.5, 3.0, 0.05)
    assert res.features == ()
