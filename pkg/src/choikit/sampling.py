"""Seeded random instances, including cone members with their certificates.

Every generator takes a ``numpy.random.Generator``.  Generators of cone
members return ``(map, certificate)`` where the certificate is a small
JSON-ready dict recording why the sample belongs to the cone.
"""
import numpy as np

from . import maps as M
from .forms import BasisFamily, BilinearForm, NONDEGENERACY_TOL
from .linalg import BipartiteOperator, rank


def complex_normal(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_matrix(rng, rows, cols=None):
    return complex_normal(rng, (rows, rows if cols is None else cols))


def random_nonsingular(rng, m):
    while True:
        s = random_matrix(rng, m)
        if rank(s, NONDEGENERACY_TOL) == m:
            return s


def random_map(rng, m, n):
    return M.LinearMapRep(m, n, complex_normal(rng, (n * n, m * m)))


def random_isomorphism(rng, m):
    while True:
        t = complex_normal(rng, (m * m, m * m))
        if rank(t, NONDEGENERACY_TOL) == m * m:
            return M.LinearMapRep(m, m, t)


def random_basis(rng, d):
    while True:
        v = complex_normal(rng, (d, d))
        if rank(v, NONDEGENERACY_TOL) == d:
            return BasisFamily(v)


def random_form(rng, d):
    while True:
        g = complex_normal(rng, (d, d))
        if rank(g, NONDEGENERACY_TOL) == d:
            return BilinearForm(g)


def random_symmetric_form(rng, d, shift=1.0):
    """G^T G + shift I, resampled until non-degenerate."""
    while True:
        g = complex_normal(rng, (d, d))
        s = g.T @ g + shift * np.eye(d)
        if rank(s, NONDEGENERACY_TOL) == d:
            return BilinearForm(0.5 * (s + s.T))


def random_hermitian(rng, d):
    a = random_matrix(rng, d)
    return 0.5 * (a + a.conj().T)


def random_psd(rng, d, r=None):
    a = random_matrix(rng, d, d if r is None else r)
    return a @ a.conj().T


def random_cp(rng, m, n, count=None):
    """CP map from ``count`` random Kraus operators (default m*n)."""
    count = m * n if count is None else count
    kraus = [random_matrix(rng, n, m) for _ in range(count)]
    return M.kraus_map(kraus), {"cone": "CP", "kind": "kraus", "kraus_count": count}


def random_spk(rng, m, n, k, count=None):
    """k-superpositive map: Kraus operators of rank <= k."""
    count = m * n if count is None else count
    r = min(k, m, n)
    kraus = [random_matrix(rng, n, r) @ random_matrix(rng, r, m) for _ in range(count)]
    cert = {"cone": f"SP_{k}", "kind": "kraus_rank", "kraus_count": count, "max_kraus_rank": r}
    return M.kraus_map(kraus), cert


def random_cocp(rng, m, n, count=None):
    phi, _ = random_cp(rng, m, n, count)
    return M.compose(phi, M.transpose_map(m)), {"cone": "coCP", "kind": "kraus_after_transpose"}


def random_k_positive(rng, m, n, k):
    """A k-positive map together with the construction that certifies it.

    k = 1: convex mixture of a CP and a co-CP map.  k >= 2: CP o R o CP
    where R(x) = k tr(x) I - x is k-positive, optionally mixed with CP.
    """
    lam = float(rng.uniform())
    if k == 1 and rng.uniform() < 0.5:
        a, _ = random_cp(rng, m, n)
        b, _ = random_cocp(rng, m, n)
        phi = M.add(a, b, lam, 1 - lam)
        return phi, {"cone": "P_1", "kind": "cp_cocp_mixture", "lambda": lam}
    p = max(m, n)
    left, _ = random_cp(rng, m, p, 2)
    right, _ = random_cp(rng, p, n, 2)
    phi = M.compose(right, M.compose(M.reduction_map(p, k), left))
    cp, _ = random_cp(rng, m, n)
    phi = M.add(phi, cp, 1.0, lam)
    cert = {"cone": f"P_{k}", "kind": "cp_reduction_cp_plus_cp", "reduction_level": k, "lambda": lam}
    return phi, cert


def random_non_cp(rng, m, n, eps=None):
    """CP map minus a rank-one Choi perturbation large enough to break positivity.

    Returns the map and the unit vector v used; <v|C|v> < 0 by construction.
    """
    phi, _ = random_cp(rng, m, n)
    c = M.choi(phi).matrix
    v = complex_normal(rng, m * n)
    v /= np.linalg.norm(v)
    quad = float(np.real(v.conj() @ c @ v))
    eps = (1.5 * quad + 1.0) if eps is None else eps
    c_new = c - eps * np.outer(v, v.conj())
    return M.from_choi(BipartiteOperator(m, n, c_new)), v
