"""Linear maps between matrix algebras and their Choi-type transforms.

A map M_m -> M_n is held as its transfer matrix T (n^2 x m^2), acting as
vec(phi(x)) = T vec(x).  Composition is matrix multiplication, the
adjoint for the standard form is the plain transpose of T, and the Choi
matrix is an index realignment of T.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, SingularBasis, SingularIsomorphism
from .linalg import BipartiteOperator, as_matrix, frozen, kron, matrix_unit, rank, relative_gap, unvec, vec

ISO_TOL = 1e-10


@dataclass(frozen=True)
class LinearMapRep:
    dim_in: int
    dim_out: int
    transfer: np.ndarray

    def __post_init__(self):
        t = as_matrix(self.transfer, "transfer")
        if t.shape != (self.dim_out ** 2, self.dim_in ** 2):
            raise DimensionMismatch(
                f"transfer shape {t.shape} does not fit M_{self.dim_in} -> M_{self.dim_out}")
        object.__setattr__(self, "transfer", frozen(t))

    def __call__(self, x):
        return apply(self, x)

    @property
    def is_square(self):
        return self.dim_in == self.dim_out

    def __eq__(self, other):
        if not isinstance(other, LinearMapRep):
            return NotImplemented
        return (self.dim_in, self.dim_out) == (other.dim_in, other.dim_out) and np.array_equal(
            self.transfer, other.transfer)

    def __hash__(self):
        return hash((self.dim_in, self.dim_out, self.transfer.tobytes()))


def as_isomorphism(sigma, tol=ISO_TOL):
    """Check that ``sigma`` is an invertible self-map and return it."""
    if not sigma.is_square:
        raise SingularIsomorphism(
            f"isomorphism must map M_m to itself, got M_{sigma.dim_in} -> M_{sigma.dim_out}")
    if rank(sigma.transfer, tol) != sigma.dim_in ** 2:
        raise SingularIsomorphism("transfer matrix is singular")
    return sigma


# constructors

def from_function(f, dim_in, dim_out):
    """Tabulate a Python callable on matrix units."""
    t = np.empty((dim_out ** 2, dim_in ** 2), dtype=np.complex128)
    for i in range(dim_in):
        for j in range(dim_in):
            y = np.asarray(f(matrix_unit(i, j, dim_in)), dtype=np.complex128)
            if y.shape != (dim_out, dim_out):
                raise DimensionMismatch(f"function returned shape {y.shape}, expected {dim_out}x{dim_out}")
            t[:, i * dim_in + j] = vec(y)
    return LinearMapRep(dim_in, dim_out, t)


def identity_map(m):
    return LinearMapRep(m, m, np.eye(m * m, dtype=np.complex128))


def transpose_map(m):
    t = np.zeros((m * m, m * m), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            t[j * m + i, i * m + j] = 1.0
    return LinearMapRep(m, m, t)


def ad_map(s):
    """Ad_s(x) = s* x s, for s of shape (m, n): M_m -> M_n."""
    s = as_matrix(s, "s")
    m, n = s.shape
    # vec(A X B) = kron(A, B^T) vec(X) for row-major vec
    return LinearMapRep(m, n, kron(s.conj().T, s.T))


def kraus_map(kraus, dim_in=None):
    """x -> sum_p K_p x K_p*, with K_p of shape (n, m)."""
    kraus = [as_matrix(k, "Kraus operator") for k in kraus]
    n, m = kraus[0].shape
    if dim_in is not None and dim_in != m:
        raise DimensionMismatch(f"Kraus operators act on M_{m}, expected M_{dim_in}")
    t = sum(kron(k, k.conj()) for k in kraus)
    return LinearMapRep(m, n, t)


def trace_map(m, n):
    """x -> tr(x) I_n."""
    return LinearMapRep(m, n, np.outer(vec(np.eye(n)), vec(np.eye(m))))


def reduction_map(n, k=1):
    """x -> k tr(x) I - x on M_n: k-positive, not (k+1)-positive."""
    t = k * np.outer(vec(np.eye(n)), vec(np.eye(n))) - np.eye(n * n)
    return LinearMapRep(n, n, t)


def depolarizing_map(m):
    """x -> tr(x) I / m."""
    return LinearMapRep(m, m, trace_map(m, m).transfer / m)


# algebra

def apply(phi, x):
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (phi.dim_in, phi.dim_in):
        raise DimensionMismatch(f"map acts on M_{phi.dim_in}, got input of shape {x.shape}")
    return unvec(phi.transfer @ vec(x), phi.dim_out, phi.dim_out)


def compose(psi, phi):
    """psi o phi."""
    if psi.dim_in != phi.dim_out:
        raise DimensionMismatch(
            f"cannot compose M_{psi.dim_in} -> M_{psi.dim_out} after M_{phi.dim_in} -> M_{phi.dim_out}")
    return LinearMapRep(phi.dim_in, psi.dim_out, psi.transfer @ phi.transfer)


def add(phi, psi, alpha=1.0, beta=1.0):
    if (phi.dim_in, phi.dim_out) != (psi.dim_in, psi.dim_out):
        raise DimensionMismatch("maps have different dimensions")
    return LinearMapRep(phi.dim_in, phi.dim_out, alpha * phi.transfer + beta * psi.transfer)


def scale(phi, alpha):
    return LinearMapRep(phi.dim_in, phi.dim_out, alpha * phi.transfer)


def inverse(sigma):
    as_isomorphism(sigma)
    return LinearMapRep(sigma.dim_in, sigma.dim_in, np.linalg.inv(sigma.transfer))


def tensor(psi1, psi2):
    """psi1 (x) psi2 : M_{m1 m2} -> M_{n1 n2}."""
    m1, n1, m2, n2 = psi1.dim_in, psi1.dim_out, psi2.dim_in, psi2.dim_out
    big = np.kron(psi1.transfer, psi2.transfer)
    # kron indexes rows (p,r,q,s) and columns (i,j,k,l); the composite vec
    # of M_{n1 n2} wants (p,q,r,s), of M_{m1 m2} wants (i,k,j,l)
    big = big.reshape(n1, n1, n2, n2, m1, m1, m2, m2).transpose(0, 2, 1, 3, 4, 6, 5, 7)
    return LinearMapRep(m1 * m2, n1 * n2, big.reshape((n1 * n2) ** 2, (m1 * m2) ** 2))


def apply_tensor(psi1, psi2, x):
    """(psi1 (x) psi2)(X) for a bipartite operator X."""
    if x.dims != (psi1.dim_in, psi2.dim_in):
        raise DimensionMismatch(
            f"operator has dims {x.dims}, maps act on ({psi1.dim_in}, {psi2.dim_in})")
    y = apply(tensor(psi1, psi2), x.matrix)
    return BipartiteOperator(psi1.dim_out, psi2.dim_out, y)


def adjoint(phi):
    """Adjoint for the standard forms: <phi(x), y> = <x, phi*(y)>."""
    return LinearMapRep(phi.dim_out, phi.dim_in, phi.transfer.T)


def sigma_transpose(sigma):
    """sigma^T with <sigma^T(x), y> = <x, sigma(y)>."""
    if not sigma.is_square:
        raise DimensionMismatch("sigma^T is defined for self-maps only")
    return LinearMapRep(sigma.dim_in, sigma.dim_in, sigma.transfer.T)


def adjoint_general(phi, sigma, tau):
    """Adjoint of phi for the forms <x,y>_sigma on the domain and <x,y>_tau on the codomain.

    Equals sigma o phi* o tau^{-1}.
    """
    if sigma.dim_in != phi.dim_in or tau.dim_in != phi.dim_out:
        raise DimensionMismatch("sigma must act on the domain of phi and tau on its codomain")
    as_isomorphism(sigma)
    return compose(sigma, compose(adjoint(phi), inverse(tau)))


def star(phi):
    """Adjoint for the trace forms tr(xy): t o phi* o t."""
    return compose(transpose_map(phi.dim_in), compose(adjoint(phi), transpose_map(phi.dim_out)))


# Choi transforms

def choi(phi):
    """C_phi = sum_ij e_ij (x) phi(e_ij)."""
    m, n = phi.dim_in, phi.dim_out
    return BipartiteOperator(m, n, _kernels.realign(phi.transfer, m, n))


def choi_sigma(phi, sigma):
    """C^sigma_phi = sum_ij e_ij (x) phi(sigma(e_ij)) = C_{phi o sigma}."""
    if sigma.dim_in != phi.dim_in or sigma.dim_out != phi.dim_in:
        raise DimensionMismatch(
            f"sigma must act on M_{phi.dim_in}, got M_{sigma.dim_in} -> M_{sigma.dim_out}")
    return choi(compose(phi, sigma))


def choi_sigma_pushforward(phi, sigma):
    """The same matrix computed as (id (x) phi)(C_sigma)."""
    return apply_tensor(identity_map(phi.dim_in), phi, choi(sigma))


def choi_sigma_direct(phi, sigma):
    """Entrywise triple-loop sum of e_ij (x) phi(sigma(e_ij))."""
    m, n = phi.dim_in, phi.dim_out
    out = np.zeros((m * n, m * n), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            out += kron(matrix_unit(i, j, m), apply(phi, apply(sigma, matrix_unit(i, j, m))))
    return BipartiteOperator(m, n, out)


def from_choi(c):
    """Inverse of ``choi``."""
    m, n = c.dims
    return LinearMapRep(m, n, _kernels.unrealign(c.matrix, m, n))


def gamma(phi, e, f):
    """sum_i e_i (x) phi(f_i) for bases e, f of M_m."""
    if e.dim != phi.dim_in ** 2 or f.dim != phi.dim_in ** 2:
        raise SingularBasis(f"bases must have {phi.dim_in ** 2} elements of M_{phi.dim_in}")
    m, n = phi.dim_in, phi.dim_out
    out = np.zeros((m * n, m * n), dtype=np.complex128)
    for ei, fi in zip(e.matrices(), f.matrices()):
        out += kron(ei, apply(phi, fi))
    return BipartiteOperator(m, n, out)


def gamma_vector(phi_matrix, e, f):
    """sum_i e_i (x) A f_i for a linear map A: C^d -> C^p given as a matrix."""
    a = np.asarray(phi_matrix, dtype=np.complex128)
    if a.shape[1] != e.dim or e.dim != f.dim:
        raise DimensionMismatch("map and bases do not fit the same space")
    return sum(np.kron(ei, a @ fi) for ei, fi in zip(e.vectors, f.vectors))


def inverse_choi(c, form):
    """The map phi with gamma(phi, e, dual_basis(form, e)) = C for every basis e.

    Applies the duality map of ``form`` to the first tensor factor:
    phi(y) = sum_ij pair(e_ij, y) C_ij, where C_ij are the blocks of C.
    """
    m, n = c.dims
    if form.dim != m * m:
        raise DimensionMismatch(f"form has dimension {form.dim}, expected {m * m}")
    return LinearMapRep(m, n, _kernels.unrealign(c.matrix, m, n) @ form.gram)


def pairing(phi, psi):
    """<phi, psi> = <C_phi, C_psi> for the standard form (no conjugation)."""
    if (phi.dim_in, phi.dim_out) != (psi.dim_in, psi.dim_out):
        raise DimensionMismatch("maps have different dimensions")
    # realignment is a permutation, so this equals vec(T_phi) . vec(T_psi)
    return complex(np.sum(choi(phi).matrix * choi(psi).matrix))


def maps_close(a, b, tol=1e-10):
    if (a.dim_in, a.dim_out) != (b.dim_in, b.dim_out):
        return False
    return relative_gap(a.transfer, b.transfer) <= tol
