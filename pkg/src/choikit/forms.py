"""Non-degenerate bilinear forms on C^d and the bases they pair.

A form is stored by its Gram matrix G, pair(x, y) = x^T G y with no
conjugation.  On a matrix algebra M_m the coordinates are row-major
``vec`` coordinates, so d = m^2.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotSymmetric, NumericalBreakdown, SingularBasis, SingularForm
from .linalg import as_matrix, frozen, matrix_unit, rank, relative_gap, vec

NONDEGENERACY_TOL = 1e-10
BREAKDOWN_TOL = 1e-10


@dataclass(frozen=True)
class BilinearForm:
    gram: np.ndarray

    def __post_init__(self):
        g = as_matrix(self.gram, "gram")
        if g.shape[0] != g.shape[1]:
            raise DimensionMismatch(f"gram must be square, got {g.shape}")
        if rank(g, NONDEGENERACY_TOL) != g.shape[0]:
            raise SingularForm("gram matrix is singular: the form is degenerate")
        object.__setattr__(self, "gram", frozen(g))

    @property
    def dim(self):
        return self.gram.shape[0]

    def __eq__(self, other):
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return np.array_equal(self.gram, other.gram)

    def __hash__(self):
        return hash(self.gram.tobytes())


@dataclass(frozen=True)
class BasisFamily:
    """d coordinate vectors in C^d, stored as the rows of ``vectors``."""

    vectors: np.ndarray

    def __post_init__(self):
        v = as_matrix(self.vectors, "basis")
        if v.shape[0] != v.shape[1]:
            raise SingularBasis(f"need exactly d vectors in C^d, got shape {v.shape}")
        if rank(v, NONDEGENERACY_TOL) != v.shape[0]:
            raise SingularBasis("basis vectors are linearly dependent")
        object.__setattr__(self, "vectors", frozen(v))

    @classmethod
    def from_matrices(cls, mats):
        return cls(np.array([vec(x) for x in mats]))

    @property
    def dim(self):
        return self.vectors.shape[0]

    def __len__(self):
        return self.dim

    def __getitem__(self, i):
        return self.vectors[i]

    def matrices(self):
        """Elements reshaped as square matrices (for bases of M_m)."""
        m = int(round(np.sqrt(self.dim)))
        if m * m != self.dim:
            raise DimensionMismatch(f"dimension {self.dim} is not a matrix algebra")
        return [v.reshape(m, m) for v in self.vectors]

    def __eq__(self, other):
        if not isinstance(other, BasisFamily):
            return NotImplemented
        return np.array_equal(self.vectors, other.vectors)

    def __hash__(self):
        return hash(self.vectors.tobytes())


def pair(form, x, y):
    x = np.asarray(x).reshape(-1)
    y = np.asarray(y).reshape(-1)
    if x.size != form.dim or y.size != form.dim:
        raise DimensionMismatch(
            f"form has dimension {form.dim}, vectors have {x.size} and {y.size}")
    return complex(x @ form.gram @ y)


def pairing_table(form, e, f):
    """Matrix of all pairings [pair(e_i, f_j)]."""
    return e.vectors @ form.gram @ f.vectors.T


def form_from_basis_pair(e, f):
    """The unique form with pair(e_i, f_j) = delta_ij."""
    if e.dim != f.dim:
        raise DimensionMismatch(f"basis sizes differ: {e.dim} vs {f.dim}")
    # rows E, F: E G F^T = I  =>  G = E^{-1} F^{-T}
    g = np.linalg.solve(e.vectors, np.linalg.inv(f.vectors).T)
    return BilinearForm(g)


def dual_basis(form, e):
    """The unique basis f with pair(e_i, f_j) = delta_ij."""
    if e.dim != form.dim:
        raise DimensionMismatch(f"form has dimension {form.dim}, basis has {e.dim}")
    # E G F^T = I  =>  F^T = (E G)^{-1}
    return BasisFamily(np.linalg.inv(e.vectors @ form.gram).T)


def is_symmetric(form, tol=1e-10):
    g = form.gram
    return bool(np.max(np.abs(g - g.T)) <= tol * max(1.0, float(np.max(np.abs(g)))))


def forms_equal(a, b, tol=1e-10):
    if a.dim != b.dim:
        raise DimensionMismatch(f"form dimensions differ: {a.dim} vs {b.dim}")
    return bool(np.linalg.norm(a.gram - b.gram, 2) <= tol * max(1.0, np.linalg.norm(a.gram, 2)))


def orthonormalize_symmetric(form, breakdown_tol=BREAKDOWN_TOL):
    """Basis {e_i} with pair(e_i, e_j) = delta_ij for a symmetric form.

    Builds the basis one vector at a time: pick a vector of the current
    complement with non-zero self-pairing (some complement vector or a sum
    of two of them always has one), scale it to self-pairing one, and pass
    to its orthogonal complement under the form.
    """
    if not is_symmetric(form):
        raise NotSymmetric("orthonormal bases exist only for symmetric forms")
    g = form.gram
    d = form.dim
    # columns of q span the current complement; kept Euclidean-orthonormal
    q = np.eye(d, dtype=np.complex128)
    out = []
    for _ in range(d):
        cols = [q[:, j] for j in range(q.shape[1])]
        r = len(cols)
        cand = cols + [cols[i] + cols[j] for i in range(r) for j in range(i + 1, r)]
        cand = np.array(cand).T
        self_pair = np.einsum("ik,ij,jk->k", cand, g, cand)
        score = np.abs(self_pair) / np.sum(np.abs(cand) ** 2, axis=0)
        best = int(np.argmax(score))
        if score[best] < breakdown_tol * max(1.0, float(np.max(np.abs(g)))):
            raise NumericalBreakdown(
                f"largest self-pairing {score[best]:.3e} on a {r}-dim complement")
        v = cand[:, best] / np.sqrt(self_pair[best])
        out.append(v)
        if r == 1:
            break
        # x -> x - <x, v> v projects onto {x : <x, v> = 0}
        proj = q - np.outer(v, v @ g @ q)
        u, _, _ = np.linalg.svd(proj, full_matrices=False)
        q = u[:, : r - 1]
    return BasisFamily(np.array(out))


def standard_form(d):
    return BilinearForm(np.eye(d, dtype=np.complex128))


def form_from_isomorphism(transfer):
    """Form <x, y>_s = <x, s^{-1}(y)> for an isomorphism with the given transfer matrix."""
    t = as_matrix(transfer, "transfer")
    if rank(t, NONDEGENERACY_TOL) != t.shape[0]:
        raise SingularForm("isomorphism is singular")
    return BilinearForm(np.linalg.inv(t))


def trace_form(m):
    """<x, y>_t = tr(xy) on M_m."""
    g = np.zeros((m * m, m * m), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            g[i * m + j, j * m + i] = 1.0
    return BilinearForm(g)


def matrix_unit_basis(m):
    return BasisFamily.from_matrices([matrix_unit(i, j, m) for i in range(m) for j in range(m)])


def transposed_matrix_unit_basis(m):
    return BasisFamily.from_matrices([matrix_unit(j, i, m) for i in range(m) for j in range(m)])


def weyl_basis():
    """The 2x2 basis E_1..E_4, orthonormal for the standard form."""
    r = 1 / np.sqrt(2)
    return BasisFamily.from_matrices([
        r * np.array([[1, 0], [0, 1]]),
        r * np.array([[1, 0], [0, -1]]),
        r * np.array([[0, 1], [1, 0]]),
        r * np.array([[0, -1], [1, 0]]),
    ])


def pauli_basis():
    """E_1, E_2, E_3, iE_4: orthonormal for the trace form tr(xy)."""
    w = weyl_basis().vectors.copy()
    w[3] = 1j * w[3]
    return BasisFamily(w)


def bases_close(a, b, tol=1e-9):
    return relative_gap(a.vectors, b.vectors) <= tol
