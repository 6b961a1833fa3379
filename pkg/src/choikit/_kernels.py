"""Hot index-shuffling and contraction kernels.

Every kernel has a pure-numpy version (``*_numpy``) and a numba version
(``*_numba``).  The public names bind to the numba versions unless
numba is missing or ``CHOIKIT_NUMBA=0`` is set in the environment.

Index conventions: a bipartite matrix C on C^m (x) C^n is read as the
four-index array C4[i, a, j, b] = C[i*n + a, j*n + b]; a transfer matrix
T of a map M_m -> M_n is read as T4[a, b, i, j] = T[a*n + b, i*m + j].
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("CHOIKIT_NUMBA", "1") != "0"


# numpy path

def realign_numpy(t, m, n):
    """Transfer matrix (n^2 x m^2) -> Choi matrix (mn x mn)."""
    return np.ascontiguousarray(
        t.reshape(n, n, m, m).transpose(2, 0, 3, 1).reshape(m * n, m * n))


def unrealign_numpy(c, m, n):
    """Choi matrix (mn x mn) -> transfer matrix (n^2 x m^2)."""
    return np.ascontiguousarray(
        c.reshape(m, n, m, n).transpose(1, 3, 0, 2).reshape(n * n, m * m))


def reduce_second_numpy(c, b, m, n):
    """K[(i,p),(j,q)] = sum_{a,b'} conj(B[a,p]) C4[i,a,j,b'] B[b',q]."""
    k = b.shape[1]
    c4 = c.reshape(m, n, m, n)
    out = np.einsum("ap,iajb,bq->ipjq", b.conj(), c4, b, optimize=True)
    return out.reshape(m * k, m * k)


def reduce_first_numpy(c, a, m, n):
    """K[(x,p),(y,q)] = sum_{i,j} conj(A[i,p]) C4[i,x,j,y] A[j,q]."""
    k = a.shape[1]
    c4 = c.reshape(m, n, m, n)
    out = np.einsum("ip,ixjy,jq->xpyq", a.conj(), c4, a, optimize=True)
    return out.reshape(n * k, n * k)


# numba path

if numba is not None:

    @numba.njit(cache=True)
    def realign_numba(t, m, n):
        c = np.empty((m * n, m * n), dtype=t.dtype)
        for i in range(m):
            for j in range(m):
                col = i * m + j
                for a in range(n):
                    for b in range(n):
                        c[i * n + a, j * n + b] = t[a * n + b, col]
        return c

    @numba.njit(cache=True)
    def unrealign_numba(c, m, n):
        t = np.empty((n * n, m * m), dtype=c.dtype)
        for i in range(m):
            for j in range(m):
                col = i * m + j
                for a in range(n):
                    for b in range(n):
                        t[a * n + b, col] = c[i * n + a, j * n + b]
        return t

    @numba.njit(cache=True)
    def reduce_second_numba(c, b, m, n):
        k = b.shape[1]
        # contract the column index of the second factor first
        w = np.zeros((m, n, m, k), dtype=np.complex128)
        for i in range(m):
            for a in range(n):
                row = i * n + a
                for j in range(m):
                    for q in range(k):
                        acc = 0j
                        for bb in range(n):
                            acc += c[row, j * n + bb] * b[bb, q]
                        w[i, a, j, q] = acc
        out = np.zeros((m * k, m * k), dtype=np.complex128)
        for i in range(m):
            for p in range(k):
                for j in range(m):
                    for q in range(k):
                        acc = 0j
                        for a in range(n):
                            acc += np.conj(b[a, p]) * w[i, a, j, q]
                        out[i * k + p, j * k + q] = acc
        return out

    @numba.njit(cache=True)
    def reduce_first_numba(c, a, m, n):
        k = a.shape[1]
        w = np.zeros((m, n, n, k), dtype=np.complex128)
        for i in range(m):
            for x in range(n):
                row = i * n + x
                for y in range(n):
                    for q in range(k):
                        acc = 0j
                        for j in range(m):
                            acc += c[row, j * n + y] * a[j, q]
                        w[i, x, y, q] = acc
        out = np.zeros((n * k, n * k), dtype=np.complex128)
        for x in range(n):
            for p in range(k):
                for y in range(n):
                    for q in range(k):
                        acc = 0j
                        for i in range(m):
                            acc += np.conj(a[i, p]) * w[i, x, y, q]
                        out[x * k + p, y * k + q] = acc
        return out

else:  # pragma: no cover
    realign_numba = realign_numpy
    unrealign_numba = unrealign_numpy
    reduce_second_numba = reduce_second_numpy
    reduce_first_numba = reduce_first_numpy


def _complex(x):
    return np.ascontiguousarray(x, dtype=np.complex128)


if USE_NUMBA:
    def realign(t, m, n):
        return realign_numba(_complex(t), m, n)

    def unrealign(c, m, n):
        return unrealign_numba(_complex(c), m, n)

    def reduce_second(c, b, m, n):
        return reduce_second_numba(_complex(c), _complex(b), m, n)

    def reduce_first(c, a, m, n):
        return reduce_first_numba(_complex(c), _complex(a), m, n)
else:
    realign = realign_numpy
    unrealign = unrealign_numpy
    reduce_second = reduce_second_numpy
    reduce_first = reduce_first_numpy
