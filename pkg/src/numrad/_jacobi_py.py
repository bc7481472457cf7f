"""Pure-Python cyclic Jacobi eigensolver for complex Hermitian matrices.

Fallback twin of the compiled kernel in ``_jacobi_cy``; same rotation
order, same thresholds, so results agree to rounding.
"""

from __future__ import annotations

from math import hypot, sqrt

import numpy as np


def jacobi_eigh(M, tol_factor: float = 1e-13, max_sweeps: int = 40):
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    M : (n, n) complex ndarray, Hermitian (the caller symmetrizes).
    tol_factor : convergence threshold on the off-diagonal Frobenius
        norm, relative to the Frobenius norm of the input.
    max_sweeps : hard sweep limit; cyclic Jacobi converges in far fewer.

    Returns
    -------
    (w, V) : eigenvalues ascending (float64), unitary eigenvector columns.
    """
    a = np.array(M, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    thresh = tol_factor * np.linalg.norm(a)

    def offdiag():
        s = 0.0
        for i in range(n - 1):
            s += float(np.sum(np.abs(a[i, i + 1:]) ** 2))
        return sqrt(2.0 * s)

    for _ in range(max_sweeps):
        if offdiag() <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                r = abs(g)
                if r == 0.0:
                    continue
                phase = g / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                sgn = 1.0 if theta >= 0.0 else -1.0
                t = -sgn / (abs(theta) + hypot(theta, 1.0))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                wm = s * phase.conjugate()
                wp = s * phase

                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp + wm * colq
                a[:, q] = -wp * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp + wp * rowq
                a[q, :] = -wm * rowp + c * rowq
                # the pivot is zero in exact arithmetic; drop the rounding dust
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp + wm * vq
                v[:, q] = -wp * vp + c * vq
    else:
        if offdiag() > thresh:
            raise RuntimeError("jacobi_eigh: sweep limit reached before convergence")

    d = a.diagonal().real.copy()
    order = np.argsort(d, kind="stable")
    return d[order], v[:, order]
