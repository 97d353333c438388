"""Weyl-function identities, gap-center formulas and block spectra."""

import math

import numpy as np
import pytest

from gsdirac.dispersion import gap_edge, k
from gsdirac.states import boundary_map, inner_product
from gsdirac.weyl import (
    PoleError,
    WeylBlock,
    block_spectrum,
    gamma_apply,
    regularizer,
    weyl_derivative_gap_center,
    weyl_eval,
)
from helpers import seed_for

ALL_KINDS = [
    ("dirac_interval", dict(c=1.0, d=1.0)),
    ("dirac_interval", dict(c=2.5, d=0.4)),
    ("dirac_halfline_left", dict(c=1.0)),
    ("dirac_halfline_right", dict(c=1.4)),
    ("schrodinger_interval", dict(d=0.8)),
    ("schrodinger_halfline_left", dict()),
    ("schrodinger_halfline_right", dict()),
]


def _make(kind, params, left=0.0, regularized=False):
    return WeylBlock(kind, left=left, regularized=regularized, **params)


def _gamma_matrix(block, z, zeta):
    """Gram matrix G[i,j] = <gamma(z)e_j, gamma(zeta)e_i> by exact integrals."""
    dim = block.dim()
    basis = np.eye(dim)
    gz = [gamma_apply(block, z, basis[:, j] if dim == 2 else 1.0)
          for j in range(dim)]
    gzeta = [gamma_apply(block, zeta, basis[:, j] if dim == 2 else 1.0)
             for j in range(dim)]
    G = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            G[i, j] = inner_product(gz[j], gzeta[i])
    return G


@pytest.mark.parametrize("kind, params", ALL_KINDS)
def test_nevanlinna_identity(kind, params):
    # M(z) - M(zeta)* = (z - conj zeta) gamma(zeta)* gamma(z)
    rng = np.random.default_rng(seed_for("nev" + kind + str(params)))
    block = _make(kind, params)
    for _ in range(30):
        z = complex(rng.normal(), rng.choice([-1, 1]) * rng.uniform(0.2, 2.0))
        zeta = complex(rng.normal(), rng.choice([-1, 1]) * rng.uniform(0.2, 2.0))
        lhs = weyl_eval(block, z) - weyl_eval(block, zeta).conj().T
        rhs = (z - np.conj(zeta)) * _gamma_matrix(block, z, zeta)
        assert np.max(np.abs(lhs - rhs)) < 1e-9


@pytest.mark.parametrize("kind, params", ALL_KINDS)
def test_herglotz_positivity(kind, params):
    # Im M(z) >= 0 (eigenvalues of the imaginary part above -1e-12)
    rng = np.random.default_rng(seed_for("herglotz" + kind + str(params)))
    block = _make(kind, params)
    for _ in range(50):
        z = complex(rng.normal(scale=2.0), rng.uniform(0.05, 3.0))
        M = weyl_eval(block, z)
        imag = (M - M.conj().T) / 2j
        assert float(np.min(np.linalg.eigvalsh(imag))) > -1e-12


@pytest.mark.parametrize("kind, params", ALL_KINDS)
def test_symmetry_under_conjugation(kind, params):
    rng = np.random.default_rng(seed_for("conj" + kind + str(params)))
    block = _make(kind, params)
    for _ in range(10):
        z = complex(rng.normal(), rng.uniform(0.3, 2.0))
        lhs = weyl_eval(block, np.conj(z))
        rhs = weyl_eval(block, z).conj().T
        assert np.max(np.abs(lhs - rhs)) < 1e-12


@pytest.mark.parametrize("kind, params", ALL_KINDS)
def test_gamma_is_section_of_trace_map(kind, params):
    # G0 o gamma = id and G1 o gamma = M
    rng = np.random.default_rng(seed_for("gamma" + kind + str(params)))
    block = _make(kind, params, left=0.3)
    flavor = {
        "dirac_interval": "tilde",
        "dirac_halfline_left": "halfline_left",
        "dirac_halfline_right": "halfline_right",
        "schrodinger_interval": "schrodinger_tilde",
    }.get(kind)
    if flavor is None:
        pytest.skip("scalar half-line traces exercised through Nevanlinna")
    dim = block.dim()
    for _ in range(20):
        z = complex(rng.normal(), rng.choice([-1, 1]) * rng.uniform(0.3, 2.0))
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        st = gamma_apply(block, z, v if dim == 2 else v[0])
        bd = boundary_map(st, flavor)
        assert np.max(np.abs(bd.u[0] - v)) < 1e-11
        assert np.max(np.abs(bd.v[0] - weyl_eval(block, z) @ v)) < 1e-11


def test_gamma_zero_vector():
    block = WeylBlock("dirac_interval", c=1.0, d=1.0)
    st = gamma_apply(block, 1j, np.zeros(2))
    assert st.is_zero


def test_gap_center_matrix_and_regularized_zero():
    for d in (0.3, 1.0, 4.0):
        for c in (0.5, 1.0, 7.0):
            raw = WeylBlock("dirac_interval", c=c, d=d)
            M = weyl_eval(raw, gap_edge(c))
            assert np.max(np.abs(M - np.array([[0.0, 1.0], [1.0, d]]))) < 1e-13
            reg = WeylBlock("dirac_interval", c=c, d=d, regularized=True)
            assert np.max(np.abs(weyl_eval(reg, gap_edge(c)))) < 1e-14


def test_regularizer_matrices():
    pair = regularizer(1.0, 1.0)
    assert np.allclose(pair.R, np.diag([1.0, math.sqrt(2.0)]))
    assert np.allclose(pair.Q, [[0.0, 1.0], [1.0, 1.0]])
    pair4 = regularizer(4.0, 1.0)
    assert abs(pair4.R[1, 1] - math.sqrt(68.0)) < 1e-12
    # c -> inf limit reaches the non-relativistic scaling
    for d in (0.2, 1.0, 3.0):
        pair_inf = regularizer(d, 1e9)
        pair_h = regularizer(d, 1.0, flavor="schrodinger")
        assert np.max(np.abs(pair_inf.R - pair_h.R)) < 1e-9
        assert np.allclose(pair_inf.Q, pair_h.Q)


def test_regularized_factorization_identity():
    rng = np.random.default_rng(seed_for("factorization"))
    for _ in range(20):
        d, c = rng.uniform(0.2, 3.0), rng.uniform(0.5, 4.0)
        z = complex(rng.normal(), rng.uniform(0.3, 2.0))
        raw = weyl_eval(WeylBlock("dirac_interval", c=c, d=d), z)
        reg = weyl_eval(WeylBlock("dirac_interval", c=c, d=d, regularized=True), z)
        pair = regularizer(d, c)
        rinv = np.diag(1.0 / np.diag(pair.R))
        assert np.max(np.abs(reg - rinv @ (raw - pair.Q) @ rinv)) < 1e-12


def test_gap_center_derivative_closed_form():
    Mp = weyl_derivative_gap_center(1.0, 1.0)
    expect = np.array([[1.0, 0.5 / math.sqrt(2.0)],
                       [0.5 / math.sqrt(2.0), 2.0 / 3.0]])
    assert np.max(np.abs(Mp - expect)) < 1e-12


def test_gap_center_derivative_matches_finite_differences():
    rng = np.random.default_rng(seed_for("fdcheck"))
    for _ in range(12):
        d = 10.0 ** rng.uniform(-3, 1)
        c = 10.0 ** rng.uniform(math.log10(0.5), 2)
        Mp = weyl_derivative_gap_center(d, c)
        blk = WeylBlock("dirac_interval", c=c, d=d, regularized=True)
        # keep the stencil clear of the nearest reference eigenvalue
        pole_gap = math.sqrt((math.pi * c / (2 * d)) ** 2 + gap_edge(c) ** 2) \
            - gap_edge(c)
        h = min(1e-5 * c * c, 1e-3 * pole_gap)
        fd = (weyl_eval(blk, gap_edge(c) + h)
              - weyl_eval(blk, gap_edge(c) - h)) / (2.0 * h)
        assert np.max(np.abs(fd.real - Mp)) < 1e-6 * np.max(np.abs(Mp))


def test_gap_center_derivative_uniform_bounds():
    # (1/16) I < M' < 192 I over the full parameter grid
    for d in np.geomspace(1e-3, 10.0, 12):
        for c in np.geomspace(0.5, 100.0, 12):
            lam = np.linalg.eigvalsh(weyl_derivative_gap_center(d, c))
            assert lam[0] > 1.0 / 16.0
            assert lam[-1] < 192.0


def test_block_spectrum_closed_form():
    lam = block_spectrum(WeylBlock("dirac_interval", c=1.0, d=1.0), 0)
    expect = math.sqrt(math.pi**2 / 4.0 + 0.25)
    assert np.allclose(lam, [-expect, expect])
    lamH = block_spectrum(WeylBlock("schrodinger_interval", d=1.0), 1)
    assert np.allclose(lamH, [math.pi**2 / 4.0, 9.0 * math.pi**2 / 4.0])
    desc = block_spectrum(WeylBlock("dirac_halfline_right", c=1.0), 5)
    assert desc["essential"] == ((-math.inf, -0.5), (0.5, math.inf))


def test_block_spectrum_equals_weyl_poles():
    # the j-th positive reference eigenvalue is the j-th root of cos(d k)
    c, d = 1.0, 1.0
    lam = block_spectrum(WeylBlock("dirac_interval", c=c, d=d), 10)
    lam_pos = lam[lam > 0]

    def cosdk(t: float) -> float:
        return complex(np.cos(d * k(t, c))).real

    roots = []
    lo = gap_edge(c) + 1e-9
    grid = np.linspace(lo, float(lam_pos[-1]) + 1.0, 40001)
    vals = [cosdk(t) for t in grid]
    for i in range(len(grid) - 1):
        if vals[i] * vals[i + 1] < 0:
            a, b = grid[i], grid[i + 1]
            fa = vals[i]
            for _ in range(100):
                m = 0.5 * (a + b)
                fm = cosdk(m)
                if fm == 0.0 or b - a < 1e-14:
                    break
                if (fm < 0) == (fa < 0):
                    a, fa = m, fm
                else:
                    b = m
            roots.append(0.5 * (a + b))
    assert len(roots) >= len(lam_pos)
    assert np.max(np.abs(np.array(roots[: len(lam_pos)]) - lam_pos)) < 1e-10


def test_pole_error_reports_location():
    c, d = 1.0, 1.0
    lam0 = float(block_spectrum(WeylBlock("dirac_interval", c=c, d=d), 0)[1])
    with pytest.raises(PoleError) as err:
        weyl_eval(WeylBlock("dirac_interval", c=c, d=d), lam0)
    assert abs(err.value.nearest_pole - lam0) < 1e-9


@pytest.mark.parametrize("d", [0.5, 1.0])
def test_nonrelativistic_weyl_block_limit(d):
    # regularized interval blocks and both half-line kinds, O(c^-2)
    z = 1j
    MH = weyl_eval(WeylBlock("schrodinger_interval", d=d, regularized=True), z)
    errs = []
    for c in (10.0, 100.0, 1000.0):
        MD = weyl_eval(WeylBlock("dirac_interval", c=c, d=d, regularized=True),
                       z + gap_edge(c))
        errs.append(float(np.max(np.abs(MD - MH))))
    assert errs[0] > errs[1] > errs[2]
    for a, b in zip(errs, errs[1:]):
        assert 50.0 < a / b < 200.0

    for dk, hk in (("dirac_halfline_right", "schrodinger_halfline_right"),
                   ("dirac_halfline_left", "schrodinger_halfline_left")):
        target = weyl_eval(WeylBlock(hk), z)[0, 0]
        herrs = [abs(weyl_eval(WeylBlock(dk, c=c), z + gap_edge(c))[0, 0] - target)
                 for c in (10.0, 100.0, 1000.0)]
        assert herrs[0] > herrs[1] > herrs[2]
        for a, b in zip(herrs, herrs[1:]):
            assert 50.0 < a / b < 200.0
