import numpy as np
import pytest

from choikit import linalg as L
from choikit import maps as M
from choikit.errors import DimensionMismatch, NotHermitian


def test_vec_row_major():
    assert np.array_equal(L.vec(L.matrix_unit(0, 1, 2)), [0, 1, 0, 0])
    assert np.array_equal(L.vec(np.eye(2)), [1, 0, 0, 1])
    assert np.array_equal(L.vec(np.array([[1, 2], [3, 4]])), [1, 2, 3, 4])


def test_unvec_inverts_vec(rng):
    x = rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5))
    assert np.array_equal(L.unvec(L.vec(x), 3, 5), x)


def test_kron_examples():
    k = L.kron(L.matrix_unit(0, 0, 2), L.matrix_unit(1, 1, 2))
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    assert np.array_equal(k, expected)
    assert np.array_equal(L.kron(np.eye(2), np.eye(2)), np.eye(4))


def test_hermitian_eig_examples():
    w, v = L.hermitian_eig(np.diag([1.0, 3.0]))
    assert np.allclose(w, [3, 1])
    assert np.allclose(np.abs(v), [[0, 1], [1, 0]])
    w, _ = L.hermitian_eig(L.swap_operator(2))
    assert np.allclose(w, [1, 1, 1, -1])
    w, _ = L.hermitian_eig(np.eye(5))
    assert np.allclose(w, 1)


def test_swap_spectrum_from_characteristic_polynomial():
    # det(SWAP - t I) = (t - 1)^3 (t + 1)
    coeffs = np.poly(L.swap_operator(2))
    assert np.allclose(coeffs, np.poly([1, 1, 1, -1]))


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        L.hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_is_psd():
    assert L.is_psd(np.eye(4))
    assert not L.is_psd(L.swap_operator(2))
    assert L.is_psd(np.zeros((3, 3)))


def test_partial_transpose_examples(rng):
    a = rng.standard_normal((2, 2))
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    x = L.BipartiteOperator(2, 3, np.kron(a, b))
    assert np.allclose(L.partial_transpose(x, "second").matrix, np.kron(a, b.T))
    assert np.allclose(L.partial_transpose(x, "first").matrix, np.kron(a.T, b))
    c_id = M.choi(M.identity_map(3))
    swap = sum(np.kron(L.matrix_unit(j, i, 3), L.matrix_unit(i, j, 3))
               for i in range(3) for j in range(3))
    assert np.array_equal(L.partial_transpose(c_id, "first").matrix, swap)
    y = L.BipartiteOperator(2, 3, rng.standard_normal((6, 6)))
    for slot in ("first", "second"):
        assert L.partial_transpose(L.partial_transpose(y, slot), slot) == y


def test_flip_examples(rng):
    e12 = L.matrix_unit(0, 1, 2)
    x = L.BipartiteOperator(2, 3, np.kron(e12, np.eye(3)))
    assert np.array_equal(L.flip(x).matrix, np.kron(np.eye(3), e12))
    assert L.flip(x).dims == (3, 2)
    c_id = M.choi(M.identity_map(2))
    assert L.flip(c_id) == c_id


def test_rank_examples(rng):
    assert L.rank(L.matrix_unit(0, 0, 3)) == 1
    assert L.rank(np.eye(4)) == 4
    s = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    c = sum(np.kron(L.matrix_unit(i, j, 3), s.conj().T @ L.matrix_unit(i, j, 3) @ s)
            for i in range(3) for j in range(3))
    assert L.rank(c) == 1


def test_schmidt_rank():
    xi = np.kron([1, 0], [0, 1, 0])
    assert L.schmidt_rank(xi, 2, 3) == 1
    omega = L.vec(np.eye(2)) / np.sqrt(2)
    assert L.schmidt_rank(omega, 2, 2) == 2
    assert np.allclose(L.schmidt_coefficients(omega, 2, 2), [1 / np.sqrt(2)] * 2)


def test_partial_trace(rng):
    a = rng.standard_normal((2, 2))
    b = rng.standard_normal((3, 3))
    x = L.BipartiteOperator(2, 3, np.kron(a, b))
    assert np.allclose(L.partial_trace(x, "second"), np.trace(b) * a)
    assert np.allclose(L.partial_trace(x, "first"), np.trace(a) * b)


def test_bipartite_operator_validation():
    with pytest.raises(DimensionMismatch):
        L.BipartiteOperator(2, 3, np.eye(5))
    with pytest.raises(ValueError):
        L.as_matrix(np.array([[np.nan]]))
    op = L.BipartiteOperator(2, 2, np.eye(4))
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 5
