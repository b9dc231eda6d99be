"""Pure-Python (numpy) implementations of the hot kernels.

Used when the compiled ``_ckernels`` extension is unavailable, or when
``DENSECAP_BACKEND=python`` is set. Signatures and results match the
compiled module; only speed differs.
"""

import math

import numpy as np

from densecap.errors import ConvergenceError

NAME = "python"


def _offdiag_norm(a):
    m = np.abs(a) ** 2
    np.fill_diagonal(m, 0.0)
    return math.sqrt(float(m.sum()))


def jacobi_eigh(a, want_vectors=False, tol=1e-12, max_sweeps=100):
    """Cyclic complex Jacobi on a Hermitian matrix.

    Returns ``(w, v, residual, sweeps)`` where ``w`` is unsorted, ``v`` holds
    eigenvectors as columns (or is None) and ``residual`` is the final
    off-diagonal Frobenius norm. The input is not modified.
    """
    a = np.array(a, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128) if want_vectors else None
    # the Jacobi update assumes an exactly Hermitian matrix
    a = 0.5 * (a + a.conj().T)
    sweeps = 0
    off = _offdiag_norm(a)
    while off >= tol:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                eph = (apq / r).conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                newp = c * colp - s * eph * colq
                newq = s * colp + c * eph * colq
                a[:, p] = newp
                a[:, q] = newq
                a[p, :] = newp.conj()
                a[q, :] = newq.conj()
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                a[p, q] = 0.0
                a[q, p] = 0.0
                if v is not None:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - s * eph * vq
                    v[:, q] = s * vp + c * eph * vq
        sweeps += 1
        off = _offdiag_norm(a)
    return np.diag(a).real.copy(), v, off, sweeps


def entropy_bits(w):
    w = np.asarray(w, dtype=float)
    w = w[w > 0.0]
    return float(-np.sum(w * np.log2(w)))


def hermitian_from_coords(coords, dim):
    """Hermitian matrix from ``dim**2`` reals: diagonal first, then (re, im) per upper pair."""
    h = np.zeros((dim, dim), dtype=np.complex128)
    h[np.diag_indices(dim)] = coords[:dim]
    m = dim
    for i in range(dim - 1):
        for j in range(i + 1, dim):
            z = complex(coords[m], coords[m + 1])
            h[i, j] = z
            h[j, i] = z.conjugate()
            m += 2
    return h


def exp_i_hermitian(h, tol=1e-12, max_sweeps=100):
    """exp(iH) via the eigendecomposition of H."""
    w, v, _, _ = jacobi_eigh(h, True, tol, max_sweeps)
    return (v * np.exp(1j * w)) @ v.conj().T


def softmax(logits):
    z = np.asarray(logits, dtype=float)
    e = np.exp(z - z.max())
    return e / e.sum()


def holevo_objective(x, rho, n_symbols, dim_a, dim_b, tol=1e-12, max_sweeps=100):
    """Entropy (bits) of the ensemble-averaged state for packed parameters ``x``.

    ``x`` holds ``n_symbols * dim_a**2`` Hermitian coordinates followed by
    ``n_symbols`` probability logits.
    """
    x = np.asarray(x, dtype=float)
    d2 = dim_a * dim_a
    probs = softmax(x[n_symbols * d2:])
    r4 = np.asarray(rho, dtype=np.complex128).reshape(dim_a, dim_b, dim_a, dim_b)
    avg = np.zeros_like(r4)
    for k in range(n_symbols):
        u = exp_i_hermitian(hermitian_from_coords(x[k * d2:(k + 1) * d2], dim_a), tol, max_sweeps)
        avg += probs[k] * np.einsum("ai,ibjd,cj->abcd", u, r4, u.conj(), optimize=False)
    n = dim_a * dim_b
    w, _, _, _ = jacobi_eigh(avg.reshape(n, n), False, tol, max_sweeps)
    return entropy_bits(w)
