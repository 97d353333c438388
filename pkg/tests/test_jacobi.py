"""Jacobi builders, factorization, and the Sturm-bisection eigensolver."""

import math

import numpy as np
import pytest

from gsdirac import _sturm_py
from gsdirac.dispersion import nu
from gsdirac.jacobi import (
    FLAVORS,
    TridiagonalOperator,
    build,
    eigenvalues_truncated,
    factorization_residual,
    sign_normalize,
    sturm_count,
)
from gsdirac.model import SequenceRule, StrengthSeq, build_lattice
from helpers import seed_for

INF = math.inf


def _uniform_setup(alpha=2.0, c=1.0):
    lat = build_lattice(0.0, SequenceRule.constant(1.0), INF)
    strengths = StrengthSeq(SequenceRule.constant(alpha), "alpha")
    return lat, strengths


def test_alpha_dirac_entry_prefix():
    # factorization-consistent entries: the interval diagonal carries
    # nu(d)^2 (the displayed matrix with a single nu contradicts both the
    # beta display and R^{-1}(B~-Q)R^{-1})
    lat, strengths = _uniform_setup()
    op = build("alpha_dirac", lat, strengths, c=1.0)
    d, e = op.section(5)
    w = nu(1.0, 1.0)
    assert np.allclose(d, [0.0, -w * w, 2.0, -w * w, 2.0])
    assert np.allclose(e, [-w, w, -w, w])


def test_alpha_schrodinger_entry_prefix():
    lat, strengths = _uniform_setup()
    op = build("alpha_schrodinger", lat, strengths)
    d, e = op.section(5)
    assert np.allclose(d, [0.0, -1.0, 2.0, -1.0, 2.0])
    assert np.allclose(e, [-1.0, 1.0, -1.0, 1.0])


def test_beta_dirac_entries():
    lat = build_lattice(0.0, SequenceRule.explicit([0.5, 1.5, 0.7, 2.0]), 4)
    beta = StrengthSeq(SequenceRule.explicit([1.0, -0.3, 2.0]), "beta")
    op = build("beta_dirac", lat, beta, c=1.3)
    d, e = op.section(6)
    d1, b1 = 0.5, 1.0
    w1 = nu(d1, 1.3)
    assert abs(d[1] + w1 * w1 * (b1 + d1) / d1**3) < 1e-14
    assert d[0] == 0.0 and d[2] == 0.0
    assert abs(e[0] + w1 / d1**2) < 1e-14
    assert abs(e[1] - w1 / (d1**1.5 * math.sqrt(1.5))) < 1e-14


def test_entries_converge_to_schrodinger():
    # termwise c -> inf at rate O(c^-2) for fixed d, forced by
    # nu(d) = 1 - 1/(2 c^2 d^2) + O(c^-4)
    lat = build_lattice(0.0, SequenceRule.constant(1.0), INF)
    strengths = StrengthSeq(SequenceRule.power(1.0, 2.0), "alpha")
    opH = build("alpha_schrodinger", lat, strengths)
    dh, eh = opH.section(12)
    errs = []
    for c in (10.0, 100.0, 1000.0):
        op = build("alpha_dirac", lat, strengths, c=c)
        d, e = op.section(12)
        scale = np.max(np.abs(dh)) + np.max(np.abs(eh))
        errs.append((np.max(np.abs(d - dh)) + np.max(np.abs(e - eh))) / scale)
    assert errs[0] > errs[1] > errs[2]
    for a, b in zip(errs, errs[1:]):
        assert 50.0 < a / b < 200.0


def test_infinite_strength_rejected():
    lat, _ = _uniform_setup()
    strengths = StrengthSeq(SequenceRule.explicit([1.0, INF, 2.0]), "alpha")
    with pytest.raises(ValueError):
        build("alpha_dirac", lat, strengths, c=1.0)


def test_flavor_kind_mismatch():
    lat, strengths = _uniform_setup()
    with pytest.raises(ValueError):
        build("beta_dirac", lat, strengths, c=1.0)


@pytest.mark.parametrize("flavor", FLAVORS)
def test_factorization_residual_all_flavors(flavor):
    rng = np.random.default_rng(seed_for("fact" + flavor))
    kind = "beta" if flavor.startswith("beta") else "alpha"
    for _ in range(4):
        r = rng.uniform(0.55, 0.9)
        lat = build_lattice(0.0, SequenceRule.geometric(rng.uniform(0.2, 1.0), r), INF)
        strengths = StrengthSeq(SequenceRule.power(rng.normal(), 2.0), kind)
        c = rng.uniform(0.5, 3.0)
        op = build(flavor, lat, strengths, c)
        assert factorization_residual(op, lat, strengths, c, 50) < 1e-12


def test_factorization_two_rows_exact():
    lat, strengths = _uniform_setup(alpha=1.0)
    op = build("alpha_dirac", lat, strengths, c=1.0)
    assert factorization_residual(op, lat, strengths, 1.0, 2) == 0.0


def test_eigenvalues_one_by_one_and_closed_form():
    op1 = TridiagonalOperator(diag=lambda i: 0.0, offdiag=lambda i: 0.0,
                              size=1)
    assert np.allclose(eigenvalues_truncated(op1, 1), [0.0])
    a, b = 1.7, 0.9
    op2 = TridiagonalOperator(diag=lambda i: (0.0, a)[i],
                              offdiag=lambda i: b, size=2)
    lam = eigenvalues_truncated(op2, 2)
    disc = math.sqrt(a * a + 4.0 * b * b)
    assert np.max(np.abs(lam - np.array([(a - disc) / 2, (a + disc) / 2]))) < 1e-12


def test_sturm_matches_dense_reference():
    # independent dense eigensolver as the oracle
    lat = build_lattice(0.0, SequenceRule.power(1.0, 1.0), INF)
    strengths = StrengthSeq(SequenceRule.constant(1.0), "alpha")
    op = build("alpha_dirac", lat, strengths, c=1.0)
    lam = eigenvalues_truncated(op, 100)
    dense = np.linalg.eigvalsh(op.dense(100))
    assert np.max(np.abs(lam - dense)) < 1e-9


def test_sturm_count_monotone_and_total():
    lat = build_lattice(0.0, SequenceRule.power(1.0, 1.0), INF)
    strengths = StrengthSeq(SequenceRule.constant(-0.5), "alpha")
    op = build("alpha_dirac", lat, strengths, c=1.0)
    n = 60
    counts = [sturm_count(op, n, mu) for mu in np.linspace(-80.0, 80.0, 33)]
    assert all(b >= a for a, b in zip(counts, counts[1:]))
    assert counts[0] == 0
    assert counts[-1] == n


def test_sign_normalize_properties():
    lat, strengths = _uniform_setup(alpha=0.7)
    op = build("alpha_dirac", lat, strengths, c=1.0)
    _, e = op.section(10)
    assert np.any(e < 0.0)
    ops = sign_normalize(op)
    _, es = ops.section(10)
    assert np.all(es >= 0.0)
    lam = eigenvalues_truncated(op, 50)
    lams = eigenvalues_truncated(ops, 50)
    assert np.max(np.abs(lam - lams)) < 1e-10
    # already-positive input is untouched
    _, es2 = sign_normalize(ops).section(10)
    assert np.allclose(es, es2)


def test_eigenvalue_window_and_count_selection():
    lat, strengths = _uniform_setup(alpha=0.3)
    op = build("alpha_dirac", lat, strengths, c=1.0)
    full = eigenvalues_truncated(op, 40)
    three = eigenvalues_truncated(op, 40, which=3)
    assert np.allclose(three, full[:3])
    window = eigenvalues_truncated(op, 40, which=(-0.4, 0.9))
    inside = full[(full > -0.4) & (full < 0.9)]
    assert np.allclose(window, inside)
    rng_sel = eigenvalues_truncated(op, 40, which=(2, 5))
    assert np.allclose(rng_sel, full[2:6])


def test_kernels_agree_when_both_present():
    try:
        from gsdirac import _sturmcy
    except ImportError:
        pytest.skip("compiled kernel not built")
    lat = build_lattice(0.0, SequenceRule.power(1.0, 1.0), INF)
    op = build("alpha_dirac", lat, StrengthSeq(SequenceRule.constant(1.0), "alpha"), 1.0)
    d, e = op.section(80)
    for mu in (-5.0, 0.0, 2.5, 40.0):
        assert _sturm_py.count_below(d, e, mu) == _sturmcy.count_below(d, e, mu)
    a = _sturm_py.bisect_eigenvalues(d, e, -100.0, 100.0, 0, 79, 1e-12)
    b = _sturmcy.bisect_eigenvalues(d, e, -100.0, 100.0, 0, 79, 1e-12)
    assert np.array_equal(np.array(a), np.array(b))


def test_schedule_independence():
    # results are a pure function of the section: repeated runs identical
    lat, strengths = _uniform_setup(alpha=-1.1)
    op = build("alpha_dirac", lat, strengths, c=2.0)
    lam1 = eigenvalues_truncated(op, 64)
    lam2 = eigenvalues_truncated(op, 64)
    assert np.array_equal(lam1, lam2)
