"""Dense complex linear algebra for small bipartite systems.

Matrices are plain square ``complex128`` numpy arrays. Every public function
validates its operands (square, finite) and raises
:class:`~densecap.errors.DimensionError` on shape problems. Eigenvalues come
from the cyclic Jacobi kernel selected in :mod:`densecap._backend`; numpy's
LAPACK bindings are never used for spectra so the two backends stay
comparable.
"""

from dataclasses import dataclass

import numpy as np

from densecap._backend import kernels
from densecap.errors import DimensionError, InvalidDensityMatrix, NotHermitianError

MAX_DIM = 64
HERMITIAN_TOL = 1e-10
EIG_TOL = 1e-12
MAX_SWEEPS = 100
PSD_TOL = 1e-8
TRACE_TOL = 1e-8


@dataclass(frozen=True)
class EigenResult:
    """Spectrum of a Hermitian matrix, sorted descending."""

    eigenvalues: np.ndarray
    offdiag_residual: float
    sweeps: int


def as_matrix(a):
    """Coerce ``a`` to a square, finite complex matrix."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DimensionError("matrix has non-finite entries")
    return m


def _same_dim(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a, b


def matmul(a, b):
    a, b = _same_dim(a, b)
    return a @ b


def kron(a, b, max_dim=MAX_DIM):
    a, b = as_matrix(a), as_matrix(b)
    n = a.shape[0] * b.shape[0]
    if n > max_dim:
        raise DimensionError(f"tensor product dimension {n} exceeds maximum {max_dim}")
    return np.kron(a, b)


def dagger(a):
    return as_matrix(a).conj().T


def commutator(a, b):
    a, b = _same_dim(a, b)
    return a @ b - b @ a


def _split(rho, dim_a, dim_b):
    rho = as_matrix(rho)
    if dim_a < 1 or dim_b < 1 or rho.shape[0] != dim_a * dim_b:
        raise DimensionError(f"matrix of dimension {rho.shape[0]} does not factor as {dim_a}x{dim_b}")
    return rho.reshape(dim_a, dim_b, dim_a, dim_b)


def partial_trace(rho, dim_a, dim_b, keep="B"):
    """Reduced matrix on subsystem ``keep`` ("A" or "B") of a ``dim_a x dim_b`` operator."""
    r = _split(rho, dim_a, dim_b)
    if keep == "B":
        return np.einsum("ajak->jk", r)
    if keep == "A":
        return np.einsum("ijkj->ik", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose(rho, dim_a, dim_b, sys="B"):
    r = _split(rho, dim_a, dim_b)
    n = dim_a * dim_b
    if sys == "B":
        return r.transpose(0, 3, 2, 1).reshape(n, n)
    if sys == "A":
        return r.transpose(2, 1, 0, 3).reshape(n, n)
    raise ValueError(f"sys must be 'A' or 'B', got {sys!r}")


def hermiticity_error(h):
    h = as_matrix(h)
    return float(np.max(np.abs(h - h.conj().T)))


def hermitian_eigenvalues(h, tol=EIG_TOL, max_sweeps=MAX_SWEEPS):
    """Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.

    The off-diagonal stopping threshold is ``tol`` times ``max(1, ||h||_F)``,
    so unit-trace states use the absolute value ``tol``.

    Raises
    ------
    NotHermitianError
        If ``max|h - h^H|`` exceeds ``HERMITIAN_TOL``.
    ConvergenceError
        If the off-diagonal norm is still above threshold after ``max_sweeps``.
    """
    h = as_matrix(h)
    err = hermiticity_error(h)
    if err > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (max |h - h^H| = {err:.3e})")
    scale = max(1.0, float(np.linalg.norm(h)))
    w, _, resid, sweeps = kernels.jacobi_eigh(h, False, tol * scale, max_sweeps)
    return EigenResult(np.sort(w)[::-1], float(resid), int(sweeps))


def hermitian_eigh(h, tol=EIG_TOL, max_sweeps=MAX_SWEEPS):
    """Eigenvalues (descending) and matching eigenvector columns."""
    h = as_matrix(h)
    err = hermiticity_error(h)
    if err > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (max |h - h^H| = {err:.3e})")
    scale = max(1.0, float(np.linalg.norm(h)))
    w, v, _, _ = kernels.jacobi_eigh(h, True, tol * scale, max_sweeps)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def density_spectrum(rho):
    """Clamped spectrum of a density matrix; raises if it is not one."""
    rho = as_matrix(rho)
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidDensityMatrix(f"trace {tr.real:.12g} deviates from 1 by more than {TRACE_TOL:g}")
    try:
        w = hermitian_eigenvalues(rho).eigenvalues
    except NotHermitianError as exc:
        raise InvalidDensityMatrix(str(exc)) from exc
    if w[-1] < -PSD_TOL:
        raise InvalidDensityMatrix(f"not positive semidefinite (min eigenvalue {w[-1]:.3e})")
    return np.where(w > 0.0, w, 0.0)


def von_neumann_entropy(rho):
    """Entropy ``-Tr rho log2 rho`` in bits."""
    return float(kernels.entropy_bits(density_spectrum(rho)))


def frobenius_distance(a, b):
    a, b = _same_dim(a, b)
    return float(np.linalg.norm(a - b))


def is_unitary(u, tol=1e-10):
    u = as_matrix(u)
    return frobenius_distance(u.conj().T @ u, np.eye(u.shape[0])) < tol


__all__ = [
    "EigenResult",
    "as_matrix",
    "matmul",
    "kron",
    "dagger",
    "commutator",
    "partial_trace",
    "partial_transpose",
    "hermitian_eigenvalues",
    "hermitian_eigh",
    "density_spectrum",
    "von_neumann_entropy",
    "frobenius_distance",
    "is_unitary",
]
