# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Sturm-sequence kernels for truncated tridiagonal spectra.

Mirrors ``_sturm_py`` exactly; selected at import time by ``gsdirac.jacobi``.
"""

IMPLEMENTATION = "cython"


cdef long _count_below(double[::1] diag, double[::1] off, double mu) nogil:
    cdef long n = diag.shape[0]
    cdef long count = 0
    cdef long i
    cdef double d = 1.0
    cdef double b2
    for i in range(n):
        b2 = off[i - 1] * off[i - 1] if i > 0 else 0.0
        if d != 0.0:
            d = (diag[i] - mu) - b2 / d
        else:
            d = (diag[i] - mu) - b2 / 1e-307
        if d < 0.0:
            count += 1
        elif d == 0.0:
            d = -1e-307
            count += 1
    return count


def count_below(double[::1] diag, double[::1] off, double mu):
    """Number of eigenvalues of the tridiagonal section strictly below mu."""
    return _count_below(diag, off, mu)


def bisect_eigenvalues(double[::1] diag, double[::1] off, double lo, double hi,
                       long first, long last, double tol):
    """Eigenvalues with indices ``first..last`` (0-based, ascending)."""
    out = []
    cdef long idx
    cdef double a, b, mid
    for idx in range(first, last + 1):
        a = lo
        b = hi
        while b - a > tol:
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if _count_below(diag, off, mid) >= idx + 1:
                b = mid
            else:
                a = mid
        out.append(0.5 * (a + b))
    return out
