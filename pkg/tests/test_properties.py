"""Property-based checks of the structural invariants."""
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ptscatter import (
    LayerPotential,
    SampledPotential,
    TransferMatrix,
    apply_parity,
    apply_pt,
    apply_time_reversal,
    classify_symmetry,
    matrix_from_amplitudes,
    negative_k_matrix,
    scattering_data,
    transfer_matrix_stack,
)
from ptscatter import io as tables
from ptscatter.identities import residual_negk_amplitudes, residual_negk_matrix

finite = st.floats(min_value=-4.0, max_value=4.0, allow_nan=False)
layer_value = st.tuples(finite, finite).map(lambda t: complex(*t))
widths = st.floats(min_value=0.05, max_value=0.8)


@st.composite
def layer_stacks(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    values = tuple(draw(layer_value) for _ in range(n))
    ws = tuple(draw(widths) for _ in range(n))
    x_left = draw(st.floats(min_value=-2.0, max_value=1.0))
    return LayerPotential(values, ws, x_left)


ks = st.floats(min_value=0.3, max_value=5.0)


@given(layer_stacks(), ks)
@settings(max_examples=60, deadline=None)
def test_stack_determinant_is_one(p, k):
    m = transfer_matrix_stack(p, k)
    assert abs(m.det - 1.0) <= 1e-9


@given(layer_stacks(), ks)
@settings(max_examples=60, deadline=None)
def test_negk_identities_hold_for_any_layer_stack(p, k):
    m_k = transfer_matrix_stack(p, k)
    m_negk = transfer_matrix_stack(p, -k)
    assert residual_negk_matrix(m_k, m_negk) <= 1e-10
    s_k, s_negk = scattering_data(m_k), scattering_data(m_negk)
    if s_k.finite and s_negk.finite and abs(s_k.D) > 1e-6:
        assert max(residual_negk_amplitudes(s_k, s_negk)) <= 1e-7


@given(layer_stacks(), ks)
@settings(max_examples=60, deadline=None)
def test_amplitude_dictionary_roundtrip(p, k):
    m = transfer_matrix_stack(p, k)
    s = scattering_data(m)
    if s.finite:
        back = matrix_from_amplitudes(s.T, s.R_left, s.R_right, k)
        scale = max(1.0, float(np.max(np.abs(m.as_array()))))
        assert np.max(np.abs(back.as_array() - m.as_array())) / scale <= 1e-12


@st.composite
def unit_det_matrices(draw):
    entries = [complex(draw(finite), draw(finite)) for _ in range(4)]
    m = np.array(entries, dtype=complex).reshape(2, 2)
    det = np.linalg.det(m)
    if abs(det) < 1e-2:
        m = m + np.eye(2)
        det = np.linalg.det(m)
    return TransferMatrix.from_array(m / np.sqrt(det), 1.0)


@given(unit_det_matrices())
@settings(max_examples=100, deadline=None)
def test_actions_are_involutions_and_compose(m):
    arr = m.as_array()
    for apply in (apply_parity, apply_time_reversal, apply_pt):
        assert np.max(np.abs(apply(apply(m)).as_array() - arr)) <= 1e-10
    lhs = apply_pt(m).as_array()
    rhs = apply_parity(apply_time_reversal(m)).as_array()
    assert np.max(np.abs(lhs - rhs)) <= 1e-10


@given(unit_det_matrices())
@settings(max_examples=50, deadline=None)
def test_negk_is_involutive(m):
    assert negative_k_matrix(negative_k_matrix(m)) == m


@given(layer_stacks())
@settings(max_examples=40, deadline=None)
def test_pt_completion_classifies_pt(p):
    # v(x) = w(x) + w(-x)^* built from an arbitrary stack w
    n = len(p.values)
    ws = np.asarray(p.widths)
    vals_w = np.concatenate([np.zeros(n, dtype=complex), np.asarray(p.values)])
    full_vals = vals_w + np.conj(vals_w[::-1])
    full_ws = np.concatenate([ws[::-1], ws])
    q = LayerPotential(tuple(full_vals), tuple(full_ws), -float(np.sum(ws)))
    sym = classify_symmetry(q)
    assert sym.is_pt_symmetric
    assert sym.pt_violation <= 1e-12


@given(st.lists(st.tuples(finite, finite), min_size=2, max_size=30))
@settings(max_examples=40, deadline=None)
def test_sampled_pt_completion(points):
    xs = np.linspace(-1.5, 1.5, len(points))
    w = np.array([complex(a, b) for a, b in points])
    p = SampledPotential(tuple(xs), tuple(w + np.conj(w[::-1])))
    assert classify_symmetry(p).is_pt_symmetric


@given(st.floats(allow_nan=False, allow_infinity=False))
@settings(max_examples=200)
def test_csv_float_cells_roundtrip(x):
    assert tables.roundtrip_floats_exact(x)
