"""Weyl functions, gamma-fields and closed-form spectra of building blocks.

Every block kind evaluates from its explicit matrix:

==============================  ==============================================
dirac_interval(d)               (1/cos(d*k)) [[c*k1*sin(d*k), 1],
                                              [1, sin(d*k)/(c*k1)]]
dirac_halfline_left             1j / (c*k1(z))
dirac_halfline_right            1j * c * k1(z)
schrodinger_interval(d)         same pattern with sqrt(z) for both k and c*k1
schrodinger_halfline_left       1j / sqrt(z)
schrodinger_halfline_right      1j * sqrt(z)
==============================  ==============================================

The regularized interval blocks are ``R^{-1} (M - Q) R^{-1}`` with the
regularizer pair of :func:`regularizer`; they vanish at the gap-center
reference point and have a uniformly positive derivative there.

Gamma-fields are built by solving for defect-basis weights against the
``G0`` trace map, so ``G0 o gamma = id`` holds by construction and
``G1 o gamma`` reproduces the Weyl matrices independently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .dispersion import gap_edge, k as disp_k, k1 as disp_k1, nu, sqrt_up
from .states import (
    DiracState,
    ScalarState,
    defect_state,
    scalar_defect_state,
    regularizer_matrices,
)

__all__ = [
    "WeylBlock",
    "RegularizerPair",
    "PoleError",
    "weyl_eval",
    "weyl_numerator",
    "gamma_apply",
    "regularizer",
    "weyl_derivative_gap_center",
    "block_spectrum",
    "INTERVAL_KINDS",
    "HALFLINE_KINDS",
    "BLOCK_KINDS",
]

INTERVAL_KINDS = ("dirac_interval", "schrodinger_interval")
HALFLINE_KINDS = (
    "dirac_halfline_left",
    "dirac_halfline_right",
    "schrodinger_halfline_left",
    "schrodinger_halfline_right",
)
BLOCK_KINDS = INTERVAL_KINDS + HALFLINE_KINDS

_POLE_TOL = 1e-12


class PoleError(ZeroDivisionError):
    """Evaluation requested within 1e-12 of a Weyl-function pole."""

    def __init__(self, z, nearest):
        super().__init__(f"z={z} lies within pole tolerance of {nearest}")
        self.z = z
        self.nearest_pole = nearest


@dataclass(frozen=True)
class WeylBlock:
    """One building block; ``d`` only for intervals, ``c`` ignored for
    Schroedinger kinds, ``endpoint`` anchors half-lines and interval ends."""

    kind: str
    c: float = 1.0
    d: float = 0.0
    left: float = 0.0
    regularized: bool = False

    def __post_init__(self):
        if self.kind not in BLOCK_KINDS:
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.kind in INTERVAL_KINDS and self.d <= 0.0:
            raise ValueError("interval blocks need d > 0")
        if self.regularized and self.kind in HALFLINE_KINDS:
            raise ValueError("regularization applies to interval blocks only")

    @property
    def is_dirac(self) -> bool:
        return self.kind.startswith("dirac")

    @property
    def is_interval(self) -> bool:
        return self.kind in INTERVAL_KINDS

    @property
    def right(self) -> float:
        return self.left + self.d

    def dim(self) -> int:
        return 2 if self.is_interval else 1


@dataclass(frozen=True)
class RegularizerPair:
    """Diagonal scaling ``R`` and gap-center Weyl matrix ``Q``."""

    R: np.ndarray
    Q: np.ndarray

    def apply(self, M: np.ndarray) -> np.ndarray:
        rinv = np.diag(1.0 / np.diag(self.R))
        return rinv @ (M - self.Q) @ rinv


def _wavenumbers(block: WeylBlock, z: complex) -> Tuple[complex, complex]:
    """Return (k, ck1): both reduce to sqrt(z) for Schroedinger blocks."""
    if block.is_dirac:
        return disp_k(z, block.c), block.c * disp_k1(z, block.c)
    s = sqrt_up(z)
    return s, s


def regularizer(d: float, c: float, flavor: str = "dirac") -> RegularizerPair:
    """Exact regularizer pair for an interval of length ``d``."""
    R, Q = regularizer_matrices(d, c, flavor)
    return RegularizerPair(R=R, Q=Q)


def _sinc(w: complex) -> complex:
    """``sin(w)/w`` with a series guard; even, hence entire in w**2."""
    if abs(w) < 1e-6:
        w2 = w * w
        return 1.0 - w2 / 6.0 + w2 * w2 / 120.0
    return cmath.sin(w) / w


def weyl_numerator(block: WeylBlock, z: complex) -> Tuple[np.ndarray, complex]:
    """Pole-cleared interval Weyl data ``(cos(d*k) * M(z), cos(d*k))``.

    Both factors are entire in ``z``: the matrix is expressed through
    ``k**2`` and ``sin(d*k)/k`` only, so the evaluation stays finite at the
    reference eigenvalues and at the branch points.
    """
    if not block.is_interval:
        raise ValueError("weyl_numerator is defined for interval blocks")
    z = complex(z)
    kz, _ = _wavenumbers(block, z)
    if block.is_dirac:
        coef11 = z - gap_edge(block.c)
        coef22 = (z + gap_edge(block.c)) / block.c**2
    else:
        coef11, coef22 = z, 1.0
    dsinc = block.d * _sinc(block.d * kz)
    Mhat = np.array([[coef11 * dsinc, 1.0], [1.0, coef22 * dsinc]], dtype=complex)
    return Mhat, cmath.cos(block.d * kz)


def weyl_eval(block: WeylBlock, z: complex) -> np.ndarray:
    """Weyl matrix of the block at ``z`` (2x2 for intervals, 1x1 else)."""
    z = complex(z)
    if block.is_interval:
        Mhat, cosdk = weyl_numerator(block, z)
        if abs(cosdk) <= _POLE_TOL:
            raise PoleError(z, _nearest_pole(block, z))
        M = Mhat / cosdk
        if block.regularized:
            flavor = "dirac" if block.is_dirac else "schrodinger"
            M = regularizer(block.d, block.c, flavor).apply(M)
        return M

    if block.is_dirac:
        e = gap_edge(block.c)
        if abs(z - e) <= _POLE_TOL or abs(z + e) <= _POLE_TOL:
            raise PoleError(z, e if abs(z - e) <= abs(z + e) else -e)
        ck1 = block.c * disp_k1(z, block.c)
        val = 1j / ck1 if block.kind == "dirac_halfline_left" else 1j * ck1
    else:
        s = sqrt_up(z)
        if abs(s) <= _POLE_TOL:
            raise PoleError(z, 0.0)
        val = 1j / s if block.kind == "schrodinger_halfline_left" else 1j * s
    return np.array([[val]], dtype=complex)


def _nearest_pole(block: WeylBlock, z: complex):
    lam = block_spectrum(block, 64)
    return min(lam, key=lambda t: abs(z - t))


def _interval_basis_matrix(block: WeylBlock, z: complex) -> np.ndarray:
    """``Lambda(z)``: G0-traces of the defect basis ``(f^-, f^+)``."""
    xl, xr = block.left, block.right
    kz, ck1 = _wavenumbers(block, z)
    em_l, ep_l = cmath.exp(-1j * kz * xl), cmath.exp(1j * kz * xl)
    em_r, ep_r = cmath.exp(-1j * kz * xr), cmath.exp(1j * kz * xr)
    return np.array([[em_l, ep_l], [-1j * ck1 * em_r, 1j * ck1 * ep_r]],
                    dtype=complex)


def gamma_apply(block: WeylBlock, z: complex, v) -> Union[DiracState, ScalarState]:
    """Kernel element with ``G0``-trace ``v`` in the block's flavor."""
    z = complex(z)
    if block.is_interval:
        v = np.asarray(v, dtype=complex)
        if block.regularized:
            flavor = "dirac" if block.is_dirac else "schrodinger"
            R, _ = regularizer_matrices(block.d, block.c, flavor)
            v = np.linalg.solve(R, v)
        lam = _interval_basis_matrix(block, z)
        det = lam[0, 0] * lam[1, 1] - lam[0, 1] * lam[1, 0]
        if abs(det) <= _POLE_TOL * max(1.0, float(np.max(np.abs(lam)))):
            raise PoleError(z, _nearest_pole(block, z))
        w = np.linalg.solve(lam, v)
        spec = ("interval", block.left, block.right)
        if block.is_dirac:
            return defect_state(spec, z, (w[0], w[1]), block.c)
        return scalar_defect_state(spec, z, (w[0], w[1]))

    w = complex(v[0]) if np.ndim(v) else complex(v)
    if block.kind == "dirac_halfline_left":
        ck1 = block.c * disp_k1(z, block.c)
        scale = w * 1j * cmath.exp(1j * disp_k(z, block.c) * block.left) / ck1
        return defect_state(("left", block.left), z, scale, block.c)
    if block.kind == "dirac_halfline_right":
        scale = w * cmath.exp(-1j * disp_k(z, block.c) * block.left)
        return defect_state(("right", block.left), z, scale, block.c)
    s = sqrt_up(z)
    if block.kind == "schrodinger_halfline_left":
        scale = w * 1j * cmath.exp(1j * s * block.left) / s
        return scalar_defect_state(("left", block.left), z, scale)
    scale = w * cmath.exp(-1j * s * block.left)
    return scalar_defect_state(("right", block.left), z, scale)


def weyl_derivative_gap_center(d: float, c: float) -> np.ndarray:
    """Closed form of the regularized Weyl derivative at the reference
    point ``c**2/2``:

        [[1,              nu(d, c)/2        ],
         [nu(d, c)/2,     (3+(c*d)**2) / (3*(1+(c*d)**2))]]

    Uniformly positive: ``(1/16) I < M' < 192 I`` for all d, c > 0.
    """
    if d <= 0.0 or c <= 0.0:
        raise ValueError("d and c must be positive")
    off = 0.5 * nu(d, c)
    cd2 = (c * d) ** 2
    return np.array([[1.0, off], [off, (3.0 + cd2) / (3.0 * (1.0 + cd2))]])


def block_spectrum(block: WeylBlock, j_max: int = 0):
    """Discrete reference spectrum for interval kinds; the essential-ray
    descriptor for half-line kinds."""
    if not block.is_interval:
        if block.is_dirac:
            e = gap_edge(block.c)
            return {"essential": ((-math.inf, -e), (e, math.inf))}
        return {"essential": ((0.0, math.inf),)}
    if j_max < 0:
        raise ValueError("j_max must be >= 0")
    js = np.arange(j_max + 1, dtype=float)
    base = (math.pi / block.d) ** 2 * (js + 0.5) ** 2
    if block.is_dirac:
        lam = np.sqrt(block.c**2 * base + gap_edge(block.c) ** 2)
        return np.sort(np.concatenate([-lam, lam]))
    return base
