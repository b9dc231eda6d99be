"""Bipartite density matrices: construction, validation, operator expansions and
seeded random families.

Random generators accept either an integer seed or a ``numpy.random.Generator``
and draw only from it, so equal seeds give bit-identical states. Distributions:

* pure states: normalized vectors of i.i.d. complex standard normals;
* mixed states: Ginibre construction ``G G^H / Tr(G G^H)`` with ``G`` of
  shape ``(dim, rank)``;
* separable states: mixtures of random pure product states with
  Dirichlet(1, ..., 1) weights.
"""

from dataclasses import dataclass

import numpy as np

from densecap import linalg
from densecap.errors import DimensionError, FormatError, InvalidDensityMatrix, NotHermitianError


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated state on ``C^dim_a (x) C^dim_b``.

    Use :func:`validate_density` to build one; the constructor trusts its
    arguments.
    """

    mat: np.ndarray
    dim_a: int
    dim_b: int

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    @property
    def dim(self):
        return self.dim_a * self.dim_b

    def reduced(self, keep):
        return linalg.partial_trace(self.mat, self.dim_a, self.dim_b, keep=keep)

    def purity(self):
        return float(np.real(np.trace(self.mat @ self.mat)))


def validate_density(mat, dim_a, dim_b):
    """Check the density-matrix invariants and wrap ``mat``.

    Raises
    ------
    DimensionError
        ``dim_a * dim_b`` does not match the matrix size.
    InvalidDensityMatrix
        Not Hermitian within 1e-10, trace off by more than 1e-8, or an
        eigenvalue below -1e-8.
    """
    m = linalg.as_matrix(mat)
    if dim_a < 1 or dim_b < 1 or m.shape[0] != dim_a * dim_b:
        raise DimensionError(f"matrix of dimension {m.shape[0]} does not factor as {dim_a}x{dim_b}")
    err = linalg.hermiticity_error(m)
    if err > linalg.HERMITIAN_TOL:
        raise InvalidDensityMatrix(f"not Hermitian (max |rho - rho^H| = {err:.3e})")
    linalg.density_spectrum(m)
    m = m.copy()
    m.setflags(write=False)
    return DensityMatrix(m, int(dim_a), int(dim_b))


def _projector(psi):
    psi = np.asarray(psi, dtype=np.complex128)
    return np.outer(psi, psi.conj())


def product_state(rho_a, rho_b):
    rho_a, rho_b = linalg.as_matrix(rho_a), linalg.as_matrix(rho_b)
    return validate_density(linalg.kron(rho_a, rho_b), rho_a.shape[0], rho_b.shape[0])


def bell_state(index):
    """Bell projector: 0 = Phi+, 1 = Phi-, 2 = Psi+, 3 = Psi-."""
    vectors = {
        0: [1, 0, 0, 1],
        1: [1, 0, 0, -1],
        2: [0, 1, 1, 0],
        3: [0, 1, -1, 0],
    }
    if index not in vectors:
        raise ValueError(f"Bell index must be in 0..3, got {index}")
    psi = np.array(vectors[index], dtype=np.complex128) / np.sqrt(2.0)
    return validate_density(_projector(psi), 2, 2)


def maximally_entangled(dim):
    psi = np.eye(dim, dtype=np.complex128).reshape(-1) / np.sqrt(dim)
    return validate_density(_projector(psi), dim, dim)


def werner_state(p):
    """``p |Phi+><Phi+| + (1 - p) I/4``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Werner parameter must lie in [0, 1], got {p}")
    mat = p * bell_state(0).mat + (1.0 - p) * np.eye(4) / 4.0
    return validate_density(mat, 2, 2)


def _rng(seed):
    return np.random.default_rng(seed)


def _complex_normal(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unit_vector(dim, seed=None):
    v = _complex_normal(_rng(seed), dim)
    return v / np.linalg.norm(v)


def random_unitary(dim, seed=None):
    """Haar-random unitary (QR of a Ginibre matrix with the phase fix)."""
    z = _complex_normal(_rng(seed), (dim, dim)) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_pure(dim_a, dim_b, seed=None):
    return validate_density(_projector(random_unit_vector(dim_a * dim_b, seed)), dim_a, dim_b)


def random_maximally_entangled(dim, seed=None):
    """``(I (x) U)|Phi_d>`` for a Haar-random ``U``."""
    u = random_unitary(dim, seed)
    psi = u.T.reshape(-1) / np.sqrt(dim)
    return validate_density(_projector(psi), dim, dim)


def random_mixed(dim_a, dim_b, rank=None, seed=None):
    n = dim_a * dim_b
    rank = n if rank is None else rank
    if not 1 <= rank <= n:
        raise ValueError(f"rank must lie in 1..{n}, got {rank}")
    g = _complex_normal(_rng(seed), (n, rank))
    mat = g @ g.conj().T
    mat = 0.5 * (mat + mat.conj().T)
    return validate_density(mat / np.trace(mat).real, dim_a, dim_b)


def random_separable(dim_a, dim_b, terms=None, seed=None):
    """Mixture of ``terms`` random pure product states with Dirichlet weights."""
    terms = dim_a * dim_b if terms is None else terms
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    rng = _rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    mat = np.zeros((dim_a * dim_b,) * 2, dtype=np.complex128)
    for w in weights:
        a = _projector(random_unit_vector(dim_a, rng))
        b = _projector(random_unit_vector(dim_b, rng))
        mat += w * np.kron(a, b)
    return validate_density(mat, dim_a, dim_b)


def ppt_min_eigenvalue(rho):
    """Smallest eigenvalue of the partial transpose over B."""
    pt = linalg.partial_transpose(rho.mat, rho.dim_a, rho.dim_b, sys="B")
    return float(linalg.hermitian_eigenvalues(pt).eigenvalues[-1])


# --- operator bases ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OperatorBasis:
    """Scaled operators ``ops`` used in the expansion and their trace duals.

    ``Tr(ops[i] @ duals[j]) == delta_ij``, so expansion coefficients are
    ``Tr[rho (duals[i] (x) duals[j])]``.
    """

    name: str
    ops: tuple
    duals: tuple

    @property
    def dim(self):
        return self.ops[0].shape[0]


I2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def _freeze(mats):
    out = []
    for m in mats:
        m = np.array(m, dtype=np.complex128)
        m.setflags(write=False)
        out.append(m)
    return tuple(out)


def pauli_basis():
    """Half-scaled identity and Pauli matrices, dual to the unscaled ones."""
    paulis = (I2, SIGMA_X, SIGMA_Y, SIGMA_Z)
    return OperatorBasis("pauli", _freeze(p / 2 for p in paulis), _freeze(paulis))


def gell_mann_matrices():
    """The eight standard Gell-Mann matrices, ``Tr(l_i l_j) = 2 delta_ij``."""
    g = np.zeros((8, 3, 3), dtype=np.complex128)
    g[0][0, 1] = g[0][1, 0] = 1
    g[1][0, 1], g[1][1, 0] = -1j, 1j
    g[2][0, 0], g[2][1, 1] = 1, -1
    g[3][0, 2] = g[3][2, 0] = 1
    g[4][0, 2], g[4][2, 0] = -1j, 1j
    g[5][1, 2] = g[5][2, 1] = 1
    g[6][1, 2], g[6][2, 1] = -1j, 1j
    g[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return list(g)


def gell_mann_basis():
    lams = gell_mann_matrices()
    ops = [np.eye(3) / 3] + [lam / 2 for lam in lams]
    duals = [np.eye(3)] + lams
    return OperatorBasis("gell-mann", _freeze(ops), _freeze(duals))


PAULI = pauli_basis()
GELL_MANN = gell_mann_basis()


def basis_for(dim):
    if dim == 2:
        return PAULI
    if dim == 3:
        return GELL_MANN
    raise DimensionError(f"operator expansion supports subsystem dimensions 2 and 3, got {dim}")


@dataclass(frozen=True, eq=False)
class ExpansionCoefficients:
    """Real coefficients of ``rho = sum_ij lam[i, j] opsA[i] (x) opsB[j]``."""

    lam: np.ndarray
    basis_a: OperatorBasis
    basis_b: OperatorBasis

    def reconstruct(self):
        a = np.stack(self.basis_a.ops)
        b = np.stack(self.basis_b.ops)
        n = a.shape[1] * b.shape[1]
        return np.einsum("ij,iac,jbd->abcd", self.lam, a, b).reshape(n, n)


def expand_coefficients(rho, basis_a=None, basis_b=None):
    basis_a = basis_a or basis_for(rho.dim_a)
    basis_b = basis_b or basis_for(rho.dim_b)
    if basis_a.dim != rho.dim_a or basis_b.dim != rho.dim_b:
        raise DimensionError("basis dimensions do not match the state's subsystems")
    r = rho.mat.reshape(rho.dim_a, rho.dim_b, rho.dim_a, rho.dim_b)
    a = np.stack(basis_a.duals)
    b = np.stack(basis_b.duals)
    # Tr[rho (A_i (x) B_j)] = sum rho[a b, c d] A_i[c, a] B_j[d, b]
    lam = np.einsum("abcd,ica,jdb->ij", r, a, b)
    if np.max(np.abs(lam.imag)) > 1e-10:
        raise NotHermitianError("expansion coefficients have an imaginary part; input not Hermitian")
    return ExpansionCoefficients(lam.real.copy(), basis_a, basis_b)


def reduced_B_from_coefficients(coeffs):
    """Marginal on B from row 0 of the coefficient table."""
    return np.einsum("j,jab->ab", coeffs.lam[0], np.stack(coeffs.basis_b.ops))


# --- JSON --------------------------------------------------------------------


def density_to_dict(rho):
    return {
        "dimA": rho.dim_a,
        "dimB": rho.dim_b,
        "re": rho.mat.real.tolist(),
        "im": rho.mat.imag.tolist(),
    }


def density_from_dict(data):
    """Parse the shared JSON layout; shape problems raise FormatError, physics
    problems raise InvalidDensityMatrix."""
    try:
        dim_a, dim_b = data["dimA"], data["dimB"]
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed density-matrix JSON: {exc}") from exc
    if not (isinstance(dim_a, int) and isinstance(dim_b, int)) or dim_a < 1 or dim_b < 1:
        raise FormatError("dimA and dimB must be positive integers")
    n = dim_a * dim_b
    if re.shape != (n, n) or im.shape != (n, n):
        raise FormatError(f"re and im must both be {n}x{n} arrays")
    return validate_density(re + 1j * im, dim_a, dim_b)
