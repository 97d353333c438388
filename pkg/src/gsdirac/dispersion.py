"""Branch-correct dispersion functions for the relativistic band structure.

The momentum map ``k(z) = sqrt(z**2 - (c**2/2)**2) / c`` is taken on the
branch that is holomorphic off the two cuts ``(-inf, -c**2/2]`` and
``[c**2/2, inf)`` and positive for real ``z > c**2/2``.  Globally this is
realized as

    k(z) = (1j / c) * psqrt((c**2/2)**2 - z**2)

with ``psqrt`` the principal square root: the argument lands on the
principal cut exactly when ``z`` is real with ``|z| >= c**2/2``, so the
cuts sit where they should and no path tracking is needed.

Real-axis evaluation inside the cuts means the limit from the upper
half-plane throughout this module.
"""

from __future__ import annotations

import cmath
import math

__all__ = ["k", "k1", "nu", "sqrt_up", "gap_edge"]


def gap_edge(c: float) -> float:
    """Positive edge ``c**2/2`` of the spectral gap."""
    return 0.5 * c * c


def _psqrt_upper(w: complex) -> complex:
    """Principal sqrt of ``w``, resolving the cut as the relevant limit.

    ``w = (c**2/2)**2 - z**2`` hits the negative real axis only for ``z``
    on the cuts; approaching such ``z`` from the upper half-plane drives
    ``w`` into the lower half-plane when ``Re z > 0`` and into the upper
    one when ``Re z < 0``.  Callers pass the sign of ``Re z`` so that the
    exact-real-axis evaluation agrees with the C+ limit.
    """
    if w.imag == 0.0 and w.real < 0.0:
        return cmath.sqrt(complex(w.real, -0.0))
    return cmath.sqrt(w)


def k(z: complex, c: float) -> complex:
    """Momentum ``k(z)`` on the physical branch.

    Positive for real ``z > c**2/2``, with ``Im k(z) > 0`` for ``Im z > 0``
    and the symmetry ``k(conj z) = -conj(k(z))``.  Real ``z`` inside the
    cuts is evaluated as the limit from the upper half-plane.
    """
    if c <= 0.0:
        raise ValueError("c must be positive")
    z = complex(z)
    e = gap_edge(c)
    w = (e - z) * (e + z)
    if z.imag == 0.0 and abs(z.real) > e:
        # On a cut: take the C+ limit.  Just above the right cut w moves
        # below the negative axis, just above the left cut it moves above.
        s = cmath.sqrt(complex(w.real, -0.0 if z.real > 0.0 else 0.0))
    else:
        s = cmath.sqrt(w)
    return 1j * s / c


def k1(z: complex, c: float) -> complex:
    """Weyl-coefficient ratio ``k1(z) = c*k(z) / (z + c**2/2)``.

    Equals ``sqrt((z - c**2/2)/(z + c**2/2))`` on the same branch; positive
    for real ``z > c**2/2``.  Raises at the pole ``z = -c**2/2``.
    """
    z = complex(z)
    e = gap_edge(c)
    den = z + e
    if den == 0:
        raise ZeroDivisionError("k1 has a pole at z = -c**2/2")
    return c * k(z, c) / den


def nu(x: float, c: float) -> float:
    """Relativistic weight ``nu(x) = (1 + 1/(c*x)**2)**(-1/2)`` for x > 0.

    Strictly increasing in both arguments, with values in (0, 1) and the
    small-x asymptote ``nu(x) ~ c*x``.
    """
    if x <= 0.0:
        raise ValueError("nu requires x > 0")
    if c <= 0.0:
        raise ValueError("nu requires c > 0")
    cx = c * x
    # hypot form keeps full precision for tiny and huge c*x alike
    return cx / math.hypot(cx, 1.0)


def sqrt_up(z: complex) -> complex:
    """Square root with ``Im sqrt >= 0``; nonnegative reals map to reals.

    This is the branch entering the non-relativistic defect elements
    ``exp(+/- 1j*sqrt(z)*x)``; on ``[0, inf)`` it matches the limit from
    the upper half-plane.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real < 0.0:
        return 1j * math.sqrt(-z.real)
    w = cmath.sqrt(z)
    if w.imag < 0.0:
        w = -w
    return w
