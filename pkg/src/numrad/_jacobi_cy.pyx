# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi eigensolver for complex Hermitian matrices.

Hot kernel of the package: every positivity certificate, numerical-radius
angle evaluation and cone projection runs through here. Semantics match
the pure-Python twin in ``_jacobi_py`` rotation for rotation.
"""

from libc.math cimport fabs, hypot, sqrt

import numpy as np


def jacobi_eigh(M, double tol_factor=1e-13, int max_sweeps=40):
    """Diagonalize Hermitian ``M``; returns (eigenvalues ascending, unitary V)."""
    a_arr = np.array(M, dtype=np.complex128, copy=True, order="C")
    cdef Py_ssize_t n = a_arr.shape[0]
    v_arr = np.eye(n, dtype=np.complex128)

    cdef double complex[:, ::1] a = a_arr
    cdef double complex[:, ::1] v = v_arr

    cdef Py_ssize_t i, j, p, q, sweep
    cdef double fro0 = 0.0, off, r, theta, sgn, t, c, s
    cdef double complex g, phase, wm, wp, xp, xq

    for i in range(n):
        for j in range(n):
            g = a[i, j]
            fro0 += g.real * g.real + g.imag * g.imag
    fro0 = sqrt(fro0)
    cdef double thresh = tol_factor * fro0

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                g = a[i, j]
                off += g.real * g.real + g.imag * g.imag
        off = sqrt(2.0 * off)
        if off <= thresh:
            break
        if sweep == max_sweeps:
            raise RuntimeError("jacobi_eigh: sweep limit reached before convergence")
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                r = hypot(g.real, g.imag)
                if r == 0.0:
                    continue
                phase = g / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                sgn = 1.0 if theta >= 0.0 else -1.0
                t = -sgn / (fabs(theta) + hypot(theta, 1.0))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                wm = s * phase.conjugate()
                wp = s * phase

                for i in range(n):
                    xp = a[i, p]
                    xq = a[i, q]
                    a[i, p] = c * xp + wm * xq
                    a[i, q] = -wp * xp + c * xq
                for j in range(n):
                    xp = a[p, j]
                    xq = a[q, j]
                    a[p, j] = c * xp + wp * xq
                    a[q, j] = -wm * xp + c * xq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                for i in range(n):
                    xp = v[i, p]
                    xq = v[i, q]
                    v[i, p] = c * xp + wm * xq
                    v[i, q] = -wp * xp + c * xq

    d = np.ascontiguousarray(a_arr.diagonal().real)
    order = np.argsort(d, kind="stable")
    return d[order], v_arr[:, order]
