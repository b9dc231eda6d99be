# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: complex Jacobi eigensolver and the fused Holevo objective.

Mirrors ``densecap._pykernels`` function for function.
"""

import numpy as np

from libc.math cimport sqrt, fabs, log2, exp, cos, sin, copysign
from libc.stdlib cimport malloc, free

from densecap.errors import ConvergenceError

NAME = "cython"

ctypedef double complex cplx


cdef inline double _abs2(cplx z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline cplx _conj(cplx z) nogil:
    return z.real - 1j * z.imag


cdef double _offdiag(cplx* a, int n) nogil:
    cdef double acc = 0.0
    cdef int i, j
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += _abs2(a[i * n + j])
    return sqrt(acc)


cdef int _jacobi(cplx* a, int n, cplx* v, double tol, int max_sweeps,
                 double* resid) nogil:
    """In-place cyclic Jacobi. Returns sweeps used, or -1 on non-convergence."""
    cdef int p, q, k, sweeps = 0
    cdef double r, app, aqq, theta, t, c, s, off
    cdef cplx apq, eph, akp, akq, np_, nq_
    # symmetrize: the update assumes an exactly Hermitian matrix
    for p in range(n):
        a[p * n + p] = a[p * n + p].real
        for q in range(p + 1, n):
            apq = 0.5 * (a[p * n + q] + _conj(a[q * n + p]))
            a[p * n + q] = apq
            a[q * n + p] = _conj(apq)
    off = _offdiag(a, n)
    while off >= tol:
        if sweeps >= max_sweeps:
            resid[0] = off
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p * n + q]
                r = sqrt(_abs2(apq))
                if r < 1e-300:
                    continue
                eph = _conj(apq) / r
                app = a[p * n + p].real
                aqq = a[q * n + q].real
                theta = (aqq - app) / (2.0 * r)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = copysign(1.0, theta) / (fabs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = a[k * n + p]
                    akq = a[k * n + q]
                    np_ = c * akp - s * eph * akq
                    nq_ = s * akp + c * eph * akq
                    a[k * n + p] = np_
                    a[p * n + k] = _conj(np_)
                    a[k * n + q] = nq_
                    a[q * n + k] = _conj(nq_)
                a[p * n + p] = app - t * r
                a[q * n + q] = aqq + t * r
                a[p * n + q] = 0.0
                a[q * n + p] = 0.0
                if v != NULL:
                    for k in range(n):
                        akp = v[k * n + p]
                        akq = v[k * n + q]
                        v[k * n + p] = c * akp - s * eph * akq
                        v[k * n + q] = s * akp + c * eph * akq
        sweeps += 1
        off = _offdiag(a, n)
    resid[0] = off
    return sweeps


def jacobi_eigh(a, bint want_vectors=False, double tol=1e-12, int max_sweeps=100):
    """Cyclic complex Jacobi on a Hermitian matrix.

    Returns ``(w, v, residual, sweeps)``; ``w`` unsorted, ``v`` eigenvectors
    as columns or None.
    """
    cdef cplx[:, ::1] work = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef int n = work.shape[0]
    cdef int i, sweeps
    cdef double resid = 0.0
    cdef cplx[:, ::1] vv
    cdef cplx* vptr = NULL
    v = None
    if want_vectors:
        v = np.eye(n, dtype=np.complex128)
        vv = v
        vptr = &vv[0, 0]
    with nogil:
        sweeps = _jacobi(&work[0, 0], n, vptr, tol, max_sweeps, &resid)
    if sweeps < 0:
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {resid:.3e})"
        )
    w = np.empty(n, dtype=np.float64)
    cdef double[::1] wv = w
    for i in range(n):
        wv[i] = work[i, i].real
    return w, v, resid, sweeps


def entropy_bits(w):
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef double acc = 0.0
    cdef Py_ssize_t i
    for i in range(wv.shape[0]):
        if wv[i] > 0.0:
            acc -= wv[i] * log2(wv[i])
    return acc


def hermitian_from_coords(coords, int dim):
    """Hermitian matrix from ``dim**2`` reals: diagonal first, then (re, im) per upper pair."""
    cdef const double[::1] x = np.ascontiguousarray(coords, dtype=np.float64)
    h = np.zeros((dim, dim), dtype=np.complex128)
    cdef cplx[:, ::1] hv = h
    cdef int i, j, m = dim
    for i in range(dim):
        hv[i, i] = x[i]
    for i in range(dim - 1):
        for j in range(i + 1, dim):
            hv[i, j] = x[m] + 1j * x[m + 1]
            hv[j, i] = x[m] - 1j * x[m + 1]
            m += 2
    return h


def exp_i_hermitian(h, double tol=1e-12, int max_sweeps=100):
    """exp(iH) via the eigendecomposition of H."""
    w, v, _, _ = jacobi_eigh(h, True, tol, max_sweeps)
    return (v * np.exp(1j * w)) @ v.conj().T


def softmax(logits):
    z = np.asarray(logits, dtype=float)
    e = np.exp(z - z.max())
    return e / e.sum()


cdef int _exp_i_coords(const double* x, int d, cplx* u, cplx* hwork, cplx* vwork,
                       double tol, int max_sweeps) nogil:
    cdef int i, j, k, m = d
    cdef double resid
    cdef cplx acc, ph
    for i in range(d * d):
        hwork[i] = 0.0
        vwork[i] = 0.0
    for i in range(d):
        hwork[i * d + i] = x[i]
        vwork[i * d + i] = 1.0
    for i in range(d - 1):
        for j in range(i + 1, d):
            hwork[i * d + j] = x[m] + 1j * x[m + 1]
            hwork[j * d + i] = x[m] - 1j * x[m + 1]
            m += 2
    if _jacobi(hwork, d, vwork, tol, max_sweeps, &resid) < 0:
        return -1
    for i in range(d):
        for j in range(d):
            acc = 0.0
            for k in range(d):
                ph = cos(hwork[k * d + k].real) + 1j * sin(hwork[k * d + k].real)
                acc = acc + vwork[i * d + k] * ph * _conj(vwork[j * d + k])
            u[i * d + j] = acc
    return 0


def holevo_objective(x, rho, int n_symbols, int dim_a, int dim_b,
                     double tol=1e-12, int max_sweeps=100):
    """Entropy (bits) of the ensemble-averaged state for packed parameters ``x``.

    ``x`` holds ``n_symbols * dim_a**2`` Hermitian coordinates followed by
    ``n_symbols`` probability logits.
    """
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const cplx[:, ::1] rv = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef int d2 = dim_a * dim_a
    cdef int n = dim_a * dim_b
    cdef int k, a, b, c, dd, i, status = 0
    cdef double zmax, zsum, resid = 0.0, acc = 0.0
    cdef cplx s
    cdef cplx* u = <cplx*> malloc(d2 * sizeof(cplx))
    cdef cplx* hw = <cplx*> malloc(d2 * sizeof(cplx))
    cdef cplx* vw = <cplx*> malloc(d2 * sizeof(cplx))
    cdef cplx* t = <cplx*> malloc(n * n * sizeof(cplx))
    cdef cplx* avg = <cplx*> malloc(n * n * sizeof(cplx))
    cdef double* probs = <double*> malloc(n_symbols * sizeof(double))
    if u == NULL or hw == NULL or vw == NULL or t == NULL or avg == NULL or probs == NULL:
        free(u); free(hw); free(vw); free(t); free(avg); free(probs)
        raise MemoryError()
    cdef const double* xp = &xv[0]
    cdef const cplx* rp = &rv[0, 0]
    with nogil:
        zmax = xp[n_symbols * d2]
        for k in range(1, n_symbols):
            if xp[n_symbols * d2 + k] > zmax:
                zmax = xp[n_symbols * d2 + k]
        zsum = 0.0
        for k in range(n_symbols):
            probs[k] = exp(xp[n_symbols * d2 + k] - zmax)
            zsum += probs[k]
        for k in range(n_symbols):
            probs[k] /= zsum
        for i in range(n * n):
            avg[i] = 0.0
        for k in range(n_symbols):
            if _exp_i_coords(xp + k * d2, dim_a, u, hw, vw, tol, max_sweeps) < 0:
                status = -1
                break
            # t = (U x I) rho
            for a in range(dim_a):
                for b in range(dim_b):
                    for c in range(n):
                        s = 0.0
                        for i in range(dim_a):
                            s = s + u[a * dim_a + i] * rp[(i * dim_b + b) * n + c]
                        t[(a * dim_b + b) * n + c] = s
            # avg += p_k t (U x I)^dagger
            for i in range(n):
                for c in range(dim_a):
                    for dd in range(dim_b):
                        s = 0.0
                        for a in range(dim_a):
                            s = s + t[i * n + a * dim_b + dd] * _conj(u[c * dim_a + a])
                        avg[i * n + c * dim_b + dd] = avg[i * n + c * dim_b + dd] + probs[k] * s
        if status == 0:
            if _jacobi(avg, n, NULL, tol, max_sweeps, &resid) < 0:
                status = -1
            else:
                for i in range(n):
                    if avg[i * n + i].real > 0.0:
                        acc -= avg[i * n + i].real * log2(avg[i * n + i].real)
    free(u); free(hw); free(vw); free(t); free(avg); free(probs)
    if status < 0:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    return acc
