"""Shared oracles and generators for the test suite.

The path-continuation momentum oracle is deliberately independent of the
closed-form branch: it walks from the gap center (where the value is known
exactly) and picks the sqrt sign by continuity at every step.
"""

import cmath

import numpy as np

from gsdirac.states import (
    DiracState,
    ExpPiece,
    dirac_state_on_lattice,
    linear_interpolant,
)


def k_by_continuation(z_target: complex, c: float, steps: int = 600) -> complex:
    """Branch-tracked momentum via small-step continuation from z = 0.

    At the gap center ``k(0) = 1j*c/2`` exactly; the straight path to any
    off-axis target crosses the real line only there, so stepwise
    continuity determines the sign everywhere.
    """
    w = 0.5j * c
    e2 = (0.5 * c * c) ** 2
    for t in np.linspace(0.0, 1.0, steps + 1)[1:]:
        z = t * z_target
        s = cmath.sqrt(z * z - e2) / c
        w = s if abs(s - w) <= abs(-s - w) else -s
    return w


def seed_for(label: str) -> int:
    """Stable per-test seed (str hash is salted per process)."""
    import zlib

    return zlib.crc32(label.encode())


def random_defect_pair(rng, c: float, n_blocks: int = 2):
    """Two unit-norm multi-interval Dirac defect states on a shared
    random lattice (normalization keeps the Green-identity roundoff at
    its absolute contract scale)."""
    points = np.concatenate([[0.0], np.cumsum(rng.uniform(0.2, 1.5, n_blocks))])

    def make():
        pieces = []
        for _ in range(n_blocks):
            z = complex(rng.normal(), rng.normal() * 0.8 + 1.2 * rng.choice([-1, 1]))
            pieces.append(ExpPiece(z, rng.normal() + 1j * rng.normal(),
                                   rng.normal() + 1j * rng.normal()))
        state = dirac_state_on_lattice(c, points, pieces)
        scale = 1.0 / np.sqrt(state.norm2())
        return dirac_state_on_lattice(
            c, points,
            [ExpPiece(p.z, p.w_plus * scale, p.w_minus * scale) for p in pieces])

    return make(), make()


def random_interpolant(rng, lattice, n: int, zero_at_origin: bool = False):
    """Random piecewise-affine state with complex traces on the lattice."""
    a_plus = rng.normal(size=n) + 1j * rng.normal(size=n)
    a_minus = rng.normal(size=n) + 1j * rng.normal(size=n)
    if zero_at_origin:
        a_plus[0] = 0.0
    return linear_interpolant(lattice, a_plus, a_minus), a_plus, a_minus
