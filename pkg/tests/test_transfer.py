import numpy as np
import pytest

from ptscatter import (
    BackendError,
    SampledPotential,
    TransferMatrix,
    apply_transfer,
    compute_transfer,
    matrix_from_amplitudes,
    negative_k_matrix,
    scattering_data,
    stack_matrices,
    transfer_matrix_ode,
    transfer_matrix_stack,
)
from ptscatter.catalog import barrier, double_barrier, free, onesided, pt_bilayer, pt_stack4, scarf2

from oracles import stack_matrix_oracle

# frozen from the face-matching composition oracle: PT bilayer gamma=0.5, a=1, k=1
BILAYER_K1 = np.array([
    [0.9372437464324519 - 0.006140962707705954j, 0.2869824573723178j],
    [0.4234978314113765j, 0.9372437464324522 + 0.006140962707706016j],
])


def test_empty_stack_is_identity():
    m = transfer_matrix_stack(free(), 0.9)
    np.testing.assert_allclose(m.as_array(), np.eye(2), atol=0)


def test_stack_requires_layers():
    with pytest.raises(BackendError):
        transfer_matrix_stack(scarf2(), 1.0)


def test_stack_rejects_zero_k():
    with pytest.raises(ValueError, match="k = 0"):
        transfer_matrix_stack(barrier(), 0.0)


def test_bilayer_matrix_structure_and_values():
    m = transfer_matrix_stack(pt_bilayer(gamma=0.5, a=1.0), 1.0)
    np.testing.assert_allclose(m.as_array(), BILAYER_K1, atol=1e-13)
    live = stack_matrix_oracle([0.5j, -0.5j], [1.0, 1.0], -1.0, 1.0)
    np.testing.assert_allclose(m.as_array(), live, atol=1e-13)
    # PT structure: M11^* = M22 and purely imaginary off-diagonal entries
    assert abs(m.m11.conjugate() - m.m22) <= 1e-14
    assert abs(m.m12.real) <= 1e-14
    assert abs(m.m21.real) <= 1e-14


@pytest.mark.parametrize("pot", [barrier(), double_barrier(), pt_bilayer(), pt_stack4(), onesided()])
def test_stack_matches_composition_oracle(pot):
    for k in (0.7, 1.3, 2.6):
        got = transfer_matrix_stack(pot, k).as_array()
        want = stack_matrix_oracle(pot.values, pot.widths, pot.x_left, k)
        np.testing.assert_allclose(got, want, atol=1e-12)
        assert abs(np.linalg.det(got) - 1.0) <= 1e-12


def test_stack_semigroup_property():
    p1 = pt_bilayer(gamma=0.7, a=1.0)
    # same profile cut into four half-width slabs
    p2 = type(p1)((0.7j, 0.7j, -0.7j, -0.7j), (0.5, 0.5, 0.5, 0.5), -1.0)
    for k in (0.5, 1.9):
        a = transfer_matrix_stack(p1, k).as_array()
        b = transfer_matrix_stack(p2, k).as_array()
        np.testing.assert_allclose(a, b, atol=1e-13)


def test_stack_matrices_vectorized_agrees_with_scalar():
    p = pt_stack4()
    ks = np.linspace(0.4, 2.9, 17)
    mats = stack_matrices(p, ks)
    for i, k in enumerate(ks):
        np.testing.assert_allclose(mats[i], transfer_matrix_stack(p, float(k)).as_array(),
                                   atol=1e-14)


def test_ode_zero_potential_identity():
    m = transfer_matrix_ode(free(), 1.3, 1e-10)
    np.testing.assert_allclose(m.as_array(), np.eye(2), atol=1e-10)


def test_ode_matches_stack_on_real_barrier():
    tol = 1e-9
    ms = transfer_matrix_stack(barrier(), 1.3).as_array()
    mo = transfer_matrix_ode(barrier(), 1.3, tol).as_array()
    assert np.max(np.abs(ms - mo)) <= 10 * tol


@pytest.mark.parametrize("pot", [double_barrier(), pt_bilayer(), pt_stack4(), onesided()])
def test_ode_matches_stack_layer_corpus(pot):
    tol = 1e-10
    for k in (0.6, 1.7):
        ms = transfer_matrix_stack(pot, k).as_array()
        mo = transfer_matrix_ode(pot, k, tol).as_array()
        scale = np.max(np.abs(ms))
        assert np.max(np.abs(ms - mo)) / scale <= 1e-7


def test_ode_sampled_bilayer_within_interpolation_bound():
    gamma, k = 0.5, 1.0
    errs = {}
    for h in (2e-3, 1e-3):
        xs = np.arange(-1.0, 1.0 + h / 2, h)
        vals = np.where(xs < 0, 1j * gamma, -1j * gamma)
        p = SampledPotential(tuple(xs), tuple(vals))
        mo = transfer_matrix_ode(p, k, 1e-10).as_array()
        ms = transfer_matrix_stack(pt_bilayer(gamma=gamma), k).as_array()
        errs[h] = np.max(np.abs(mo - ms))
        # linear interpolation smears the jumps over one cell: error ~ gamma*h
        assert errs[h] <= 1.0 * h, f"h={h}: {errs[h]}"
    assert 0.3 <= errs[1e-3] / errs[2e-3] <= 0.7  # first-order convergence


def test_ode_scarf2_unit_determinant():
    m = transfer_matrix_ode(scarf2(), 1.3, 1e-11)
    assert abs(m.det - 1.0) <= 1e-9


def test_ode_rejects_bad_args():
    with pytest.raises(ValueError):
        transfer_matrix_ode(barrier(), 0.0)
    with pytest.raises(ValueError):
        transfer_matrix_ode(barrier(), 1.0, tol=-1.0)


def test_scattering_identity_matrix():
    s = scattering_data(TransferMatrix(1, 0, 0, 1, 1.0))
    assert s.T == 1 and s.R_left == 0 and s.R_right == 0 and s.D == 1
    assert s.finite


def test_scattering_dictionary_example():
    s = scattering_data(TransferMatrix(1.0, 1.0, -1.0, 2.0, 1.0))
    assert s.T == pytest.approx(0.5)
    assert s.R_left == pytest.approx(0.5)
    assert s.R_right == pytest.approx(0.5)
    assert s.D == pytest.approx(0.0)


def test_scattering_near_singularity_flags_nonfinite():
    s = scattering_data(TransferMatrix(1.0, 1.0, 1.0, 1e-13, 1.0))
    assert not s.finite
    assert s.condition == pytest.approx(1e-13)
    assert np.isnan(s.T.real)


def test_bilayer_pseudo_unitarity_from_stack():
    s = scattering_data(transfer_matrix_stack(pt_bilayer(gamma=0.5), 1.0))
    t2 = abs(s.T) ** 2
    prod = abs(s.R_left * s.R_right)
    assert min(abs(t2 + prod - 1.0), abs(t2 - prod - 1.0)) <= 1e-12


def test_matrix_reconstruction_roundtrip():
    for pot in (barrier(), pt_bilayer(), onesided()):
        m = transfer_matrix_stack(pot, 1.15)
        s = scattering_data(m)
        back = matrix_from_amplitudes(s.T, s.R_left, s.R_right, s.k)
        np.testing.assert_allclose(back.as_array(), m.as_array(), atol=1e-13)


def test_negative_k_matrix_swaps_entries():
    m = TransferMatrix(1 + 1j, 2.0, 3.0, 4 - 1j, 0.8)
    n = negative_k_matrix(m)
    assert (n.m11, n.m12, n.m21, n.m22) == (m.m22, m.m21, m.m12, m.m11)
    assert n.k == -0.8
    i = TransferMatrix(1, 0, 0, 1, 0.8)
    assert negative_k_matrix(i).as_array().tolist() == np.eye(2).tolist()


@pytest.mark.parametrize("pot", [barrier(), double_barrier(), pt_bilayer(), onesided()])
def test_negk_swap_equals_direct_evaluation(pot):
    for k in (0.45, 1.8):
        direct = transfer_matrix_stack(pot, -k).as_array()
        swapped = negative_k_matrix(transfer_matrix_stack(pot, k)).as_array()
        np.testing.assert_allclose(swapped, direct, atol=1e-13)


def test_negk_swap_against_ode_backend():
    pot = pt_bilayer()
    k = 1.1
    swapped = negative_k_matrix(transfer_matrix_stack(pot, k)).as_array()
    direct = transfer_matrix_ode(pot, -k, 1e-10).as_array()
    assert np.max(np.abs(swapped - direct)) <= 1e-7


def test_apply_transfer_columns():
    m = transfer_matrix_stack(pt_bilayer(), 0.9)
    c1 = apply_transfer(m, 1.0, 0.0)
    c2 = apply_transfer(m, 0.0, 1.0)
    assert (c1.a_plus, c1.b_plus) == (m.m11, m.m21)
    assert (c2.a_plus, c2.b_plus) == (m.m12, m.m22)


def test_compute_transfer_dispatch():
    assert compute_transfer(barrier(), 1.0).backend == "stack"
    assert compute_transfer(scarf2(), 1.0, tol=1e-8).backend == "ode"
    assert compute_transfer(barrier(), 1.0, backend="ode", tol=1e-8).backend == "ode"
    with pytest.raises(ValueError):
        compute_transfer(barrier(), 1.0, backend="nope")
