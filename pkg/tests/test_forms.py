import numpy as np
import pytest

from choikit import forms as F
from choikit import maps as M
from choikit import sampling as S
from choikit.errors import DimensionMismatch, NotSymmetric, SingularBasis, SingularForm
from choikit.linalg import matrix_unit


def test_standard_form_pairs_matrix_units():
    std = F.standard_form(4)
    assert F.pair(std, matrix_unit(0, 1, 2), matrix_unit(0, 1, 2)) == 1
    assert F.pair(std, matrix_unit(0, 1, 2), matrix_unit(1, 0, 2)) == 0


def test_trace_form_on_weyl_basis():
    tr = F.trace_form(2)
    e = F.weyl_basis().matrices()
    for x in e[:3]:
        assert np.isclose(F.pair(tr, x, x), 1)
    assert np.isclose(F.pair(tr, e[3], e[3]), -1)


def test_trace_form_is_trace_of_product(rng):
    x, y = S.random_matrix(rng, 3), S.random_matrix(rng, 3)
    assert np.isclose(F.pair(F.trace_form(3), x, y), np.trace(x @ y))


def test_form_from_basis_pair_examples():
    units = F.matrix_unit_basis(2)
    assert np.array_equal(F.form_from_basis_pair(units, units).gram, np.eye(4))
    tform = F.form_from_basis_pair(units, F.transposed_matrix_unit_basis(2))
    assert F.forms_equal(tform, F.trace_form(2))
    weyl = F.weyl_basis()
    assert F.forms_equal(F.form_from_basis_pair(weyl, weyl), F.standard_form(4), 1e-12)


def test_dual_basis_examples(rng):
    units = F.matrix_unit_basis(2)
    assert F.bases_close(F.dual_basis(F.standard_form(4), units), units)
    assert F.bases_close(F.dual_basis(F.trace_form(2), units), F.transposed_matrix_unit_basis(2))
    form, e = S.random_form(rng, 9), S.random_basis(rng, 9)
    f = F.dual_basis(form, e)
    # every pairing evaluated one at a time
    table = np.array([[F.pair(form, ei, fj) for fj in f.vectors] for ei in e.vectors])
    assert np.max(np.abs(table - np.eye(9))) <= 1e-10


def test_is_symmetric_examples():
    assert F.is_symmetric(F.standard_form(4))
    assert F.is_symmetric(F.trace_form(3))
    assert not F.is_symmetric(F.BilinearForm(np.array([[0, 1], [-1, 0]])))


def test_orthonormalize_examples():
    e = F.orthonormalize_symmetric(F.standard_form(4))
    assert np.allclose(F.pairing_table(F.standard_form(4), e, e), np.eye(4))
    tr = F.trace_form(2)
    e = F.orthonormalize_symmetric(tr)
    assert np.allclose(F.pairing_table(tr, e, e), np.eye(4), atol=1e-12)
    # the Pauli-type family is one valid answer
    p = F.pauli_basis()
    assert np.allclose(F.pairing_table(tr, p, p), np.eye(4))


def test_orthonormalize_forms_with_zero_diagonal():
    # every unit vector is isotropic here, so a sum of two must be used
    g = np.array([[0, 1], [1, 0]])
    e = F.orthonormalize_symmetric(F.BilinearForm(g))
    assert np.allclose(F.pairing_table(F.BilinearForm(g), e, e), np.eye(2))


def test_orthonormalize_random(rng):
    for d in (1, 5, 16):
        form = S.random_symmetric_form(rng, d)
        e = F.orthonormalize_symmetric(form)
        assert np.max(np.abs(F.pairing_table(form, e, e) - np.eye(d))) <= 1e-8


def test_orthonormalize_rejects_non_symmetric():
    with pytest.raises(NotSymmetric):
        F.orthonormalize_symmetric(F.BilinearForm(np.array([[1, 1], [0, 1]])))


def test_forms_equal_examples():
    assert not F.forms_equal(F.standard_form(4), F.trace_form(2))
    e = F.BasisFamily(np.array([[1, 0], [1, 1]]))
    f = F.BasisFamily(np.array([[1, 0], [1, -1]]))
    assert not F.forms_equal(F.form_from_basis_pair(e, e), F.form_from_basis_pair(f, f))


def test_sigma_transpose_examples(rng):
    ident = M.identity_map(2)
    assert M.sigma_transpose(ident) == ident
    s = S.random_nonsingular(rng, 2)
    sigma = M.ad_map(s)
    std = F.standard_form(4)
    x, y = S.random_matrix(rng, 2), S.random_matrix(rng, 2)
    lhs = F.pair(std, M.apply(M.sigma_transpose(sigma), x), y)
    assert np.isclose(lhs, F.pair(std, x, M.apply(sigma, y)))


def test_errors():
    with pytest.raises(SingularForm):
        F.BilinearForm(np.zeros((2, 2)))
    with pytest.raises(SingularBasis):
        F.BasisFamily(np.array([[1, 1], [2, 2]]))
    with pytest.raises(DimensionMismatch):
        F.pair(F.standard_form(4), np.ones(4), np.ones(3))
    with pytest.raises(DimensionMismatch):
        F.dual_basis(F.standard_form(4), F.matrix_unit_basis(3))
