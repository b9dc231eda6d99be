"""Encoding alphabets for dense coding and the depolarizer check.

Three built-in ensembles, all with uniform probabilities:

* :func:`sdc_qubit_set` -- identity and the three Pauli matrices;
* :func:`sdc_qutrit_set` -- nine explicit qutrit unitaries: two 3-cycles,
  the clock matrix and its conjugate, four normalized commutators and I;
* :func:`heisenberg_weyl_set` -- ``X^a Z^b`` shift/clock products for any
  ``2 <= D <= 8``.
"""

from dataclasses import dataclass

import numpy as np

from densecap import linalg
from densecap.errors import DimensionError, FormatError, InvalidEnsemble
from densecap.states import I2, SIGMA_X, SIGMA_Y, SIGMA_Z, DensityMatrix, validate_density

UNITARY_TOL = 1e-10
PROB_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class EncodingEnsemble:
    """Unitaries ``U_k`` on subsystem A with a priori probabilities ``p_k``."""

    unitaries: tuple
    probs: np.ndarray
    name: str = "custom"

    @property
    def dim(self):
        return self.unitaries[0].shape[0]

    def __len__(self):
        return len(self.unitaries)


def make_ensemble(unitaries, probs=None, name="custom"):
    """Validate and freeze an ensemble; ``probs`` defaults to uniform."""
    mats = [linalg.as_matrix(u) for u in unitaries]
    if not mats:
        raise InvalidEnsemble("ensemble needs at least one unitary")
    dim = mats[0].shape[0]
    if any(m.shape[0] != dim for m in mats):
        raise InvalidEnsemble("all unitaries must have the same dimension")
    if probs is None:
        probs = np.full(len(mats), 1.0 / len(mats))
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (len(mats),):
        raise InvalidEnsemble(f"expected {len(mats)} probabilities, got {probs.shape}")
    if np.any(probs <= 0.0) or np.any(probs > 1.0):
        raise InvalidEnsemble("probabilities must lie in (0, 1]")
    if abs(probs.sum() - 1.0) > PROB_TOL:
        raise InvalidEnsemble(f"probabilities sum to {probs.sum():.15g}, not 1")
    for k, m in enumerate(mats):
        dev = linalg.frobenius_distance(m.conj().T @ m, np.eye(dim))
        if dev >= UNITARY_TOL:
            raise InvalidEnsemble(f"element {k} is not unitary (|U^H U - I| = {dev:.3e})")
        m.setflags(write=False)
    probs.setflags(write=False)
    return EncodingEnsemble(tuple(mats), probs, name)


def sdc_qubit_set():
    """``{I, X, Y, Z}`` with ``p = 1/4``: twice the half-scaled Pauli basis."""
    return make_ensemble([I2, SIGMA_X, SIGMA_Y, SIGMA_Z], name="sdc2")


def qutrit_matrices():
    """The nine qutrit unitaries ``U_0 .. U_8`` in their listed order."""
    w = np.exp(2j * np.pi / 3)
    u0 = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=np.complex128)
    u1 = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=np.complex128)
    u2 = np.diag([1, w, w**2])
    u3 = np.diag([1, w**2, w])
    c = 1j / np.sqrt(3)
    u4 = -c * linalg.commutator(u0, u2)
    u5 = c * linalg.commutator(u0, u3)
    u6 = c * linalg.commutator(u1, u2)
    u7 = -c * linalg.commutator(u1, u3)
    u8 = np.eye(3, dtype=np.complex128)
    return [u0, u1, u2, u3, u4, u5, u6, u7, u8]


def sdc_qutrit_set():
    return make_ensemble(qutrit_matrices(), name="sdc3")


def shift_matrix(dim):
    """Cyclic shift ``X|j> = |j+1 mod D>``."""
    return np.roll(np.eye(dim, dtype=np.complex128), 1, axis=0)


def clock_matrix(dim):
    return np.diag(np.exp(2j * np.pi * np.arange(dim) / dim))


def heisenberg_weyl_set(dim):
    """All ``X^a Z^b`` for ``a, b`` in ``0..D-1``, uniform weights."""
    if not 2 <= dim <= 8:
        raise DimensionError(f"shift/clock set supports 2 <= D <= 8, got {dim}")
    x, z = shift_matrix(dim), clock_matrix(dim)
    mats = [
        np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b)
        for a in range(dim)
        for b in range(dim)
    ]
    return make_ensemble(mats, name=f"weyl{dim}")


def depolarizer_for(dim):
    """Default depolarizing alphabet for a sender of dimension ``dim``."""
    if dim == 2:
        return sdc_qubit_set()
    if dim == 3:
        return sdc_qutrit_set()
    return heisenberg_weyl_set(dim)


def twirl(ens, m):
    """``sum_k p_k U_k M U_k^H`` on a single D x D matrix."""
    u = np.stack(ens.unitaries)
    return np.einsum("k,kab,bc,kdc->ad", ens.probs, u, m, u.conj())


def verify_depolarizer(ens, trials=20, seed=None):
    """Max Frobenius deviation of the twirl from ``Tr(M) I / D`` over random M."""
    rng = np.random.default_rng(seed)
    d = ens.dim
    worst = 0.0
    for _ in range(trials):
        m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        target = np.trace(m) * np.eye(d) / d
        worst = max(worst, linalg.frobenius_distance(twirl(ens, m), target))
    return worst


def encode(rho, unitary):
    """``(U (x) I) rho (U (x) I)^H`` as a raw matrix."""
    da, db = rho.dim_a, rho.dim_b
    r = rho.mat.reshape(da, db, da, db)
    return np.einsum("ai,ibjd,cj->abcd", unitary, r, unitary.conj()).reshape(da * db, da * db)


def apply_ensemble(rho, ens):
    """Average encoded state ``sum_k p_k (U_k (x) I) rho (U_k (x) I)^H``."""
    if not isinstance(rho, DensityMatrix):
        raise TypeError("rho must be a DensityMatrix")
    if ens.dim != rho.dim_a:
        raise DimensionError(f"ensemble acts on dimension {ens.dim}, state has dimA={rho.dim_a}")
    da, db = rho.dim_a, rho.dim_b
    u = np.stack(ens.unitaries)
    r = rho.mat.reshape(da, db, da, db)
    avg = np.einsum("k,kai,ibjd,kcj->abcd", ens.probs, u, r, u.conj()).reshape(da * db, da * db)
    return validate_density(0.5 * (avg + avg.conj().T), da, db)


# --- JSON --------------------------------------------------------------------


def ensemble_to_dict(ens):
    return {
        "dim": ens.dim,
        "unitaries": [{"re": u.real.tolist(), "im": u.imag.tolist()} for u in ens.unitaries],
        "probs": ens.probs.tolist(),
    }


def ensemble_from_dict(data):
    try:
        dim = data["dim"]
        mats = [
            np.asarray(u["re"], dtype=float) + 1j * np.asarray(u["im"], dtype=float)
            for u in data["unitaries"]
        ]
        probs = np.asarray(data["probs"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed ensemble JSON: {exc}") from exc
    if any(m.shape != (dim, dim) for m in mats):
        raise FormatError(f"every unitary must be {dim}x{dim}")
    return make_ensemble(mats, probs)
