"""Dense complex linear algebra with the conventions used across choikit.

Matrices are plain numpy arrays.  ``vec`` is row-major, so the standard
bilinear form <x, y> = sum_ij x_ij y_ij is ``vec(x) @ vec(y)`` with no
conjugation.  A bipartite index (i, a) on C^m (x) C^n is i*n + a, which
is what ``np.kron`` produces.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian

TOL_HERM = 1e-10
TOL_EIG = 1e-9
TOL_PSD = 1e-9


def as_matrix(x, name="matrix"):
    """Validate and return ``x`` as a 2-d complex array with finite entries."""
    a = np.asarray(x, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-d, got shape {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionMismatch(f"{name} must have positive dimensions, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def frozen(a):
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


def norm(x):
    """Spectral norm for matrices, Euclidean norm for vectors."""
    x = np.asarray(x)
    if x.ndim == 2:
        return float(np.linalg.norm(x, 2))
    return float(np.linalg.norm(x))


def matrix_unit(i, j, rows, cols=None):
    e = np.zeros((rows, rows if cols is None else cols), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def vec(x):
    """Row-major flattening: vec(e_ij)[i*cols + j] = 1."""
    return np.asarray(x).reshape(-1).astype(np.complex128, copy=True)


def unvec(v, rows=None, cols=None):
    v = np.asarray(v)
    if rows is None:
        rows = int(round(np.sqrt(v.size)))
        if rows * rows != v.size:
            raise DimensionMismatch(f"vector of length {v.size} is not a square matrix")
    if cols is None:
        cols = v.size // rows
    if rows * cols != v.size:
        raise DimensionMismatch(f"cannot reshape length {v.size} to {rows}x{cols}")
    return v.reshape(rows, cols).astype(np.complex128, copy=True)


def kron(a, b):
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def hermiticity_gap(h):
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def check_hermitian(h, tol=TOL_HERM):
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {h.shape}")
    gap = hermiticity_gap(h)
    if gap > tol * max(1.0, norm(h)):
        raise NotHermitian(f"max |h - h*| = {gap:.3e} exceeds tolerance")
    return h


def hermitian_eig(h, tol=TOL_HERM):
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(w, v)`` with ``h = v @ diag(w) @ v.conj().T``.
    """
    h = check_hermitian(h, tol)
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return w[::-1].copy(), v[:, ::-1].copy()


def is_psd(h, tol=TOL_PSD):
    w, _ = hermitian_eig(h)
    return bool(w[-1] >= -tol * max(1.0, norm(h)))


def rank(x, tol=1e-10):
    s = np.linalg.svd(np.asarray(x), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def schmidt_coefficients(xi, m, n):
    """Singular values of a vector on C^m (x) C^n reshaped to m x n."""
    return np.linalg.svd(np.asarray(xi).reshape(m, n), compute_uv=False)


def schmidt_rank(xi, m, n, tol=1e-8):
    return rank(np.asarray(xi).reshape(m, n), tol)


@dataclass(frozen=True)
class BipartiteOperator:
    """An element of M_m (x) M_n stored as an (mn x mn) matrix."""

    dim_a: int
    dim_b: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionMismatch("tensor factor dimensions must be positive")
        mat = as_matrix(self.matrix, "bipartite matrix")
        d = self.dim_a * self.dim_b
        if mat.shape != (d, d):
            raise DimensionMismatch(
                f"matrix shape {mat.shape} does not match dims {self.dim_a}x{self.dim_b}")
        object.__setattr__(self, "matrix", frozen(mat))

    @property
    def dims(self):
        return self.dim_a, self.dim_b

    def tensor4(self):
        """View as C4[i, a, j, b]."""
        return self.matrix.reshape(self.dim_a, self.dim_b, self.dim_a, self.dim_b)

    def __eq__(self, other):
        if not isinstance(other, BipartiteOperator):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.dim_a, self.dim_b, self.matrix.tobytes()))


def partial_transpose(x, slot="second"):
    """Transpose one tensor slot of a bipartite operator."""
    m, n = x.dims
    c4 = x.tensor4()
    if slot == "first":
        out = c4.transpose(2, 1, 0, 3)
    elif slot == "second":
        out = c4.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"slot must be 'first' or 'second', got {slot!r}")
    return BipartiteOperator(m, n, out.reshape(m * n, m * n))


def flip(x):
    """Exchange tensor factors: kron(a, b) -> kron(b, a)."""
    m, n = x.dims
    out = x.tensor4().transpose(1, 0, 3, 2).reshape(m * n, m * n)
    return BipartiteOperator(n, m, out)


def partial_trace(x, slot="second"):
    c4 = x.tensor4()
    if slot == "second":
        return np.einsum("iaja->ij", c4)
    if slot == "first":
        return np.einsum("iaib->ab", c4)
    raise ValueError(f"slot must be 'first' or 'second', got {slot!r}")


def swap_operator(d):
    """SWAP on C^d (x) C^d."""
    s = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            s[i * d + j, j * d + i] = 1.0
    return s


def relative_gap(a, b):
    """max |a - b| scaled by max(1, max|a|, max|b|)."""
    a = np.asarray(a)
    b = np.asarray(b)
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)), float(np.max(np.abs(b), initial=0.0)))
    return float(np.max(np.abs(a - b), initial=0.0)) / scale
