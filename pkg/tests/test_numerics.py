import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triple_lab import build_factor
from triple_lab.errors import InvalidInput
from triple_lab.numerics import (
    expm,
    least_squares_residual,
    matrix_from_json,
    matrix_to_json,
    null_space,
    orthonormal_columns,
    span_distance,
)


def test_null_space_identity_is_trivial():
    assert null_space(np.eye(2), tol=1e-12).shape == (2, 0)


def test_null_space_of_difference_row():
    basis = null_space(np.array([[1.0, -1.0]]))
    assert basis.shape == (2, 1)
    direction = np.array([1.0, 1.0]) / np.sqrt(2.0)
    assert abs(abs(float(direction @ basis[:, 0])) - 1.0) < 1e-12


def _leibniz_defect_column(system, d):
    n = system.dim
    e = np.eye(n)
    defects = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                defects.append(
                    d @ system.product_arrays(e[i], e[j], e[k])
                    - system.product_arrays(d @ e[i], e[j], e[k])
                    - system.product_arrays(e[i], d @ e[j], e[k])
                    - system.product_arrays(e[i], e[j], d @ e[k])
                )
    return np.concatenate(defects)


def test_null_space_leibniz_system_rank_one_hilbert():
    # Assemble the triple-Leibniz system for the 2-dimensional Hilbert factor
    # by brute force and check the kernel is exactly the skew maps.
    system = build_factor("I_R(2,1)")
    n = system.dim
    columns = []
    for unit in range(n * n):
        d = np.zeros(n * n)
        d[unit] = 1.0
        columns.append(_leibniz_defect_column(system, d.reshape(n, n)))
    a = np.column_stack(columns)
    kernel = null_space(a)
    assert kernel.shape[1] == 1
    d = kernel[:, 0].reshape(n, n)
    assert np.max(np.abs(d + d.T)) < 1e-10  # skew

    # no symmetric map is in the kernel
    sym = np.array([[1.0, 0.0], [0.0, 0.0]]).reshape(-1)
    assert np.linalg.norm(a @ sym) > 0.1


def test_null_space_rejects_bad_tol():
    with pytest.raises(InvalidInput):
        null_space(np.eye(2), tol=0.0)


def test_null_space_rejects_nonfinite():
    with pytest.raises(InvalidInput):
        null_space(np.array([[np.nan, 0.0]]))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 3), st.integers(0, 10**6))
def test_null_space_invariants(rows, cols, deficiency, seed):
    rng = np.random.default_rng(seed)
    rank = max(min(rows, cols) - deficiency, 0)
    a = (rng.standard_normal((rows, rank)) @ rng.standard_normal((rank, cols))
         if rank else np.zeros((rows, cols)))
    tol = 1e-9
    basis = null_space(a, tol=tol)
    assert basis.shape == (cols, cols - rank)
    if basis.shape[1]:
        gram = basis.T @ basis
        assert np.max(np.abs(gram - np.eye(basis.shape[1]))) < 1e-10
        residual = np.linalg.norm(a @ basis)
        assert residual <= 10 * tol * max(np.linalg.norm(a), 1.0)


def test_least_squares_identity():
    assert least_squares_residual(np.eye(3), [1.0, 2.0, 3.0]) < 1e-14


def test_least_squares_zero_matrix():
    b = np.array([3.0, 4.0])
    assert abs(least_squares_residual(np.zeros((2, 2)), b) - 5.0) < 1e-12


def test_least_squares_orthogonal_complement():
    a = np.array([[1.0], [0.0]])
    assert abs(least_squares_residual(a, [0.0, 1.0]) - 1.0) < 1e-12


def test_least_squares_shape_mismatch():
    with pytest.raises(InvalidInput):
        least_squares_residual(np.eye(2), [1.0, 2.0, 3.0])


def test_expm_zero_and_scalar():
    assert np.array_equal(expm(np.zeros((3, 3))), np.eye(3))
    assert abs(expm(np.array([[1.0]]))[0, 0] - np.e) < 1e-12


def test_expm_quarter_turn():
    theta = np.pi / 2
    g = expm(np.array([[0.0, -theta], [theta, 0.0]]))
    expected = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert np.max(np.abs(g - expected)) < 1e-12


def test_expm_rejects_nonsquare():
    with pytest.raises(InvalidInput):
        expm(np.zeros((2, 3)))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_expm_inverse_property(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    a *= 5.0 / max(np.linalg.norm(a, 2), 5.0)
    product = expm(a) @ expm(-a)
    assert np.max(np.abs(product - np.eye(n))) < 1e-10


def test_orthonormal_columns_and_distance():
    vectors = np.array([[1.0, 2.0], [0.0, 0.0], [1.0, 2.0]])
    basis = orthonormal_columns(vectors)
    assert basis.shape == (3, 1)
    assert span_distance([1.0, 0.0, 1.0], basis) < 1e-12
    assert abs(span_distance([0.0, 1.0, 0.0], basis) - 1.0) < 1e-12


def test_matrix_json_roundtrip():
    m = np.arange(6.0).reshape(2, 3)
    payload = matrix_to_json(m)
    assert payload["rows"] == 2 and payload["cols"] == 3
    assert np.array_equal(matrix_from_json(payload), m)
    payload["entries"] = payload["entries"][:-1]
    with pytest.raises(InvalidInput):
        matrix_from_json(payload)
