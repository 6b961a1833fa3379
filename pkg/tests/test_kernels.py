import numpy as np
import pytest

from choikit import _kernels as K

DIMS = [(1, 1), (2, 2), (2, 3), (3, 2), (4, 3)]


def _cn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _realign_loop(t, m, n):
    c = np.zeros((m * n, m * n), dtype=complex)
    for i in range(m):
        for j in range(m):
            for a in range(n):
                for b in range(n):
                    c[i * n + a, j * n + b] = t[a * n + b, i * m + j]
    return c


@pytest.mark.parametrize("m,n", DIMS)
def test_realign_variants_agree(rng, m, n):
    t = _cn(rng, n * n, m * m)
    expected = _realign_loop(t, m, n)
    assert np.array_equal(K.realign_numpy(t, m, n), expected)
    assert np.array_equal(K.realign_numba(t, m, n), expected)
    assert np.array_equal(K.realign(t, m, n), expected)


@pytest.mark.parametrize("m,n", DIMS)
def test_unrealign_inverts_realign(rng, m, n):
    t = _cn(rng, n * n, m * m)
    c = K.realign(t, m, n)
    assert np.array_equal(K.unrealign_numpy(c, m, n), t)
    assert np.array_equal(K.unrealign_numba(c, m, n), t)


@pytest.mark.parametrize("m,n", DIMS)
@pytest.mark.parametrize("k", [1, 2])
def test_reduce_second_is_sandwich(rng, m, n, k):
    c = _cn(rng, m * n, m * n)
    b = _cn(rng, n, k)
    lift = np.kron(np.eye(m), b)
    expected = lift.conj().T @ c @ lift
    assert np.allclose(K.reduce_second_numpy(c, b, m, n), expected, atol=1e-12)
    assert np.allclose(K.reduce_second_numba(c, b, m, n), expected, atol=1e-12)


@pytest.mark.parametrize("m,n", DIMS)
@pytest.mark.parametrize("k", [1, 2])
def test_reduce_first_is_sandwich(rng, m, n, k):
    c = _cn(rng, m * n, m * n)
    a = _cn(rng, m, k)
    lift = np.kron(a, np.eye(n))
    # the kernel orders the output as (x, p), the sandwich gives (p, x)
    expected = (lift.conj().T @ c @ lift).reshape(k, n, k, n).transpose(1, 0, 3, 2).reshape(n * k, n * k)
    assert np.allclose(K.reduce_first_numpy(c, a, m, n), expected, atol=1e-12)
    assert np.allclose(K.reduce_first_numba(c, a, m, n), expected, atol=1e-12)


def test_real_input_is_promoted():
    t = np.arange(16.0).reshape(4, 4)
    assert K.realign(t, 2, 2).dtype == np.complex128
