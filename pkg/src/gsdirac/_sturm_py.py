"""Pure-Python Sturm-sequence kernels (fallback for the compiled core).

Same contract as ``_sturmcy``: LDL^T sign counts with gradual-underflow
guards, and index-wise bisection that is deterministic for any schedule.
"""

from __future__ import annotations

import math

IMPLEMENTATION = "python"


def count_below(diag, off, mu: float) -> int:
    """Number of eigenvalues of the tridiagonal section strictly below mu."""
    n = len(diag)
    count = 0
    d = 1.0
    for i in range(n):
        b2 = off[i - 1] * off[i - 1] if i > 0 else 0.0
        d = (diag[i] - mu) - (b2 / d if d != 0.0 else b2 / 1e-307)
        if d < 0.0:
            count += 1
        elif d == 0.0:
            # exact hit: nudge so the count stays monotone in mu
            d = -1e-307
            count += 1
    return count


def bisect_eigenvalues(diag, off, lo: float, hi: float,
                       first: int, last: int, tol: float):
    """Eigenvalues with indices ``first..last`` (0-based, ascending) of the
    section, each bracketed by bisection on the Sturm count to width tol."""
    out = []
    for idx in range(first, last + 1):
        a, b = lo, hi
        while b - a > tol:
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if count_below(diag, off, mid) >= idx + 1:
                b = mid
            else:
                a = mid
        out.append(0.5 * (a + b))
    return out
