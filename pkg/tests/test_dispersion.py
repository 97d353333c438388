"""Branch correctness of the dispersion layer."""

import cmath
import math

import numpy as np
import pytest

from gsdirac.dispersion import gap_edge, k, k1, nu, sqrt_up
from helpers import k_by_continuation


def test_k_known_values():
    assert k(0.5, 1.0) == 0.0
    assert abs(k(1.0, 1.0) - math.sqrt(0.75)) < 1e-15
    assert abs(k(0.0, 1.0) - 0.5j) < 1e-15


def test_k_conjugation_symmetry():
    rng = np.random.default_rng(7)
    for _ in range(200):
        c = rng.uniform(0.3, 5.0)
        z = complex(rng.normal(scale=3.0), rng.normal(scale=2.0))
        if z.imag == 0.0:
            z += 0.37j
        assert abs(k(np.conj(z), c) + np.conj(k(z, c))) < 1e-13


def test_k_continuous_across_gap():
    c = 1.3
    e = gap_edge(c)
    for x in np.linspace(-0.9 * e, 0.9 * e, 41):
        up = k(complex(x, 1e-13), c)
        dn = k(complex(x, -1e-13), c)
        assert abs(up - dn) < 1e-12


def test_k_positive_beyond_right_cut_and_upper_imag():
    rng = np.random.default_rng(12)
    c = 1.0
    for x in np.linspace(0.51, 8.0, 20):
        val = k(x, c)
        assert val.imag == 0.0 and val.real > 0.0
    for _ in range(50):
        z = complex(rng.normal(scale=2.0), abs(rng.normal()) + 1e-3)
        assert k(z, c).imag > 0.0


def test_k_matches_continuation_oracle():
    rng = np.random.default_rng(99)
    for _ in range(50):
        c = rng.uniform(0.5, 3.0)
        z = complex(rng.normal(scale=2.0),
                    rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 2.5))
        oracle = k_by_continuation(z, c)
        assert abs(k(z, c) - oracle) < 1e-10


def test_cut_values_are_upper_limits():
    c = 1.0
    for x in (0.7, 2.0, -0.8, -3.0):
        lim = k(complex(x, 1e-12), c)
        assert abs(k(x, c) - lim) < 1e-11


def test_k1_values_and_pole():
    assert abs(k1(1.0, 1.0) - math.sqrt(1.0 / 3.0)) < 1e-15
    assert k1(0.5, 1.0) == 0.0
    assert abs(k1(1j, 1.0) - (0.894427190999916 + 0.447213595499958j)) < 1e-12
    with pytest.raises(ZeroDivisionError):
        k1(-0.5, 1.0)


def test_k1_gap_values_real_after_rotation():
    # 1j * k1(lam) is real on the gap: needed for real secular functions
    c = 1.7
    for lam in np.linspace(-0.9, 0.9, 17) * gap_edge(c):
        v = 1j * k1(lam, c)
        assert abs(v.imag) < 1e-14


def test_nu_monotone_and_asymptotes():
    assert abs(nu(1.0, 1.0) - 1.0 / math.sqrt(2.0)) < 1e-15
    assert abs(nu(1e-3, 1.0) - 9.99999500000375e-4) < 1e-16
    xs = np.linspace(0.1, 10.0, 40)
    vals = [nu(x, 2.0) for x in xs]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    cs = np.linspace(0.1, 50.0, 40)
    vals_c = [nu(0.7, c) for c in cs]
    assert all(b > a for a, b in zip(vals_c, vals_c[1:]))
    assert nu(1.0, 1e8) > 1.0 - 1e-15
    with pytest.raises(ValueError):
        nu(-1.0, 1.0)


def test_sqrt_up_branch():
    assert sqrt_up(4.0) == 2.0
    assert sqrt_up(-1.0) == 1j
    assert abs(sqrt_up(1j) - cmath.exp(1j * math.pi / 4)) < 1e-15
    rng = np.random.default_rng(3)
    for _ in range(100):
        z = complex(rng.normal(scale=2.0), rng.normal(scale=2.0))
        assert sqrt_up(z).imag >= 0.0
        assert abs(sqrt_up(z) ** 2 - z) < 1e-12 * (1.0 + abs(z))


@pytest.mark.parametrize("z", [1j, 0.4 + 0.8j, -1.0 + 0.5j])
def test_nonrelativistic_momentum_limit(z):
    # k(z + c^2/2) -> sqrt_up(z) and c*k1(z + c^2/2) -> sqrt_up(z), O(c^-2)
    target = sqrt_up(z)
    errs_k, errs_k1 = [], []
    for c in (10.0, 100.0, 1000.0):
        shift = gap_edge(c)
        errs_k.append(abs(k(z + shift, c) - target))
        errs_k1.append(abs(c * k1(z + shift, c) - target))
    for errs in (errs_k, errs_k1):
        assert errs[0] > errs[1] > errs[2]
        for a, b in zip(errs, errs[1:]):
            assert 50.0 < a / b < 200.0
