import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from densecap import linalg, states
from densecap.errors import DimensionError, InvalidDensityMatrix, NotHermitianError
from densecap.linalg import (
    commutator,
    dagger,
    frobenius_distance,
    hermitian_eigenvalues,
    kron,
    matmul,
    partial_trace,
    von_neumann_entropy,
)
from densecap.states import I2, SIGMA_X, SIGMA_Y, SIGMA_Z

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_matmul_examples():
    np.testing.assert_array_equal(matmul(I2, SIGMA_X), SIGMA_X)
    np.testing.assert_array_equal(matmul(SIGMA_X, SIGMA_X), I2)
    # hand product: [[0,1],[1,0]] [[0,-i],[i,0]] = [[i,0],[0,-i]]
    np.testing.assert_array_equal(matmul(SIGMA_X, SIGMA_Y), [[1j, 0], [0, -1j]])
    np.testing.assert_array_equal(matmul(SIGMA_X, SIGMA_Y), 1j * SIGMA_Z)


def test_matmul_dimension_mismatch():
    with pytest.raises(DimensionError):
        matmul(I2, np.eye(3))


def test_as_matrix_rejects_non_square_and_nan():
    with pytest.raises(DimensionError):
        linalg.as_matrix(np.ones((2, 3)))
    with pytest.raises(DimensionError):
        linalg.as_matrix([[np.nan, 0], [0, 1]])


def test_kron_examples():
    np.testing.assert_array_equal(kron(I2, I2), np.eye(4))
    np.testing.assert_array_equal(kron(SIGMA_Z, I2), np.diag([1, 1, -1, -1]))
    assert kron(np.eye(3), np.eye(3)).shape == (9, 9)


def test_kron_dimension_cap():
    assert kron(np.eye(8), np.eye(8)).shape == (64, 64)
    with pytest.raises(DimensionError):
        kron(np.eye(8), np.eye(9))
    with pytest.raises(DimensionError):
        kron(I2, I2, max_dim=3)


def test_dagger_examples():
    np.testing.assert_array_equal(dagger(SIGMA_Y), SIGMA_Y)
    w = np.exp(2j * np.pi / 3)
    clock = np.diag([1, w, w**2])
    np.testing.assert_allclose(dagger(clock), np.diag([1, w**2, w]), atol=1e-15)
    a = np.arange(9).reshape(3, 3) + 1j * np.arange(9)[::-1].reshape(3, 3)
    np.testing.assert_array_equal(dagger(dagger(a)), a)


def test_commutator_examples():
    np.testing.assert_array_equal(commutator(SIGMA_X, SIGMA_X), np.zeros((2, 2)))
    np.testing.assert_array_equal(commutator(SIGMA_X, SIGMA_Y), 2j * SIGMA_Z)
    with pytest.raises(DimensionError):
        commutator(I2, np.eye(3))


def test_partial_trace_bell_and_product(rng):
    np.testing.assert_allclose(partial_trace(states.bell_state(0).mat, 2, 2, keep="B"), I2 / 2)
    ra = states.random_mixed(2, 1, seed=1).mat
    rb = states.random_mixed(3, 1, seed=2).mat
    np.testing.assert_allclose(partial_trace(np.kron(ra, rb), 2, 3, keep="B"), rb, atol=1e-12)
    np.testing.assert_allclose(partial_trace(np.kron(ra, rb), 2, 3, keep="A"), ra, atol=1e-12)


def test_partial_trace_random_2x3_is_trace_one_hermitian():
    rho = states.random_mixed(2, 3, seed=5)
    ra = partial_trace(rho.mat, 2, 3, keep="A")
    assert ra.shape == (2, 2)
    assert np.trace(ra) == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(ra, ra.conj().T, atol=1e-15)


def test_partial_trace_against_loop_oracle(rng):
    da, db = 3, 2
    m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    tr_a = np.zeros((db, db), dtype=complex)
    for a in range(da):
        for j in range(db):
            for k in range(db):
                tr_a[j, k] += m[a * db + j, a * db + k]
    np.testing.assert_allclose(partial_trace(m, da, db, keep="B"), tr_a)


def test_partial_trace_bad_factorization():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(6), 2, 2)
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), 2, 2, keep="C")


def test_eigenvalue_examples():
    np.testing.assert_array_equal(hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])).eigenvalues, [3, 2, 1])
    np.testing.assert_allclose(hermitian_eigenvalues(SIGMA_X).eigenvalues, [1, -1], atol=1e-15)
    res = hermitian_eigenvalues(states.werner_state(0.5).mat)
    np.testing.assert_allclose(res.eigenvalues, [5 / 8, 1 / 8, 1 / 8, 1 / 8], atol=1e-14)
    assert res.offdiag_residual < 1e-12


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues([[0, 1], [0, 0]])


def test_entropy_examples():
    assert von_neumann_entropy(I2 / 2) == pytest.approx(1.0, abs=1e-15)
    assert von_neumann_entropy(np.diag([1.0, 0.0])) == 0.0
    assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-15)
    # closed-form Werner(0.5) spectrum plugged into -sum x log2 x (mpmath, 30 digits)
    assert von_neumann_entropy(states.werner_state(0.5).mat) == pytest.approx(1.548794940695399, abs=1e-12)


def test_entropy_clamps_tiny_negative_and_rejects_large():
    assert von_neumann_entropy(np.diag([1 + 5e-9, -5e-9])) == pytest.approx(0.0, abs=1e-7)
    with pytest.raises(InvalidDensityMatrix):
        von_neumann_entropy(np.diag([1.5, -0.5]))
    with pytest.raises(InvalidDensityMatrix):
        von_neumann_entropy(np.eye(2))


def test_frobenius_examples():
    a = SIGMA_Y + 2 * I2
    assert frobenius_distance(a, a) == 0.0
    assert frobenius_distance(I2, SIGMA_Z) == pytest.approx(2.0)
    assert frobenius_distance(I2, a) == frobenius_distance(a, I2)
    with pytest.raises(DimensionError):
        frobenius_distance(I2, np.eye(3))


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(2, 8))
def test_spectrum_unitary_invariance(seed, n):
    r = np.random.default_rng(seed)
    g = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    h = g + g.conj().T
    u = states.random_unitary(n, r)
    h2 = u @ h @ u.conj().T
    np.testing.assert_allclose(
        hermitian_eigenvalues(h2).eigenvalues, hermitian_eigenvalues(h).eigenvalues, atol=1e-9
    )


@settings(max_examples=100, deadline=None)
@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3), (4, 2)]))
def test_entropy_unitary_invariance(seed, dims):
    rho = states.random_mixed(*dims, seed=seed)
    u = states.random_unitary(rho.dim, seed + 1)
    assert von_neumann_entropy(u @ rho.mat @ u.conj().T) == pytest.approx(
        von_neumann_entropy(rho.mat), abs=1e-9
    )


@settings(max_examples=100, deadline=None)
@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3), (3, 2), (2, 4)]), st.booleans())
def test_subadditivity(seed, dims, pure):
    rho = states.random_pure(*dims, seed) if pure else states.random_mixed(*dims, seed=seed)
    s_ab = von_neumann_entropy(rho.mat)
    assert s_ab <= von_neumann_entropy(rho.reduced("A")) + von_neumann_entropy(rho.reduced("B")) + 1e-9


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_partial_trace_of_product(seed, da, db):
    ra = states.random_mixed(da, 1, seed=seed).mat
    rb = states.random_mixed(db, 1, seed=seed + 1).mat
    assert frobenius_distance(partial_trace(kron(ra, rb), da, db, keep="B"), rb) < 1e-12


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 12))
def test_eigenvalue_sum_equals_trace(seed, n):
    r = np.random.default_rng(seed)
    g = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    h = g + g.conj().T
    assert hermitian_eigenvalues(h).eigenvalues.sum() == pytest.approx(np.trace(h).real, abs=1e-9)
