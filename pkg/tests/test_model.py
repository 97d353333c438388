"""Lattice generation, sequence rules and their tail descriptors."""

import math

import numpy as np
import pytest

from gsdirac.asymptotics import Asymptotics, Term
from gsdirac.model import (
    ModelConfig,
    SequenceRule,
    StrengthSeq,
    beta_to_alpha,
    build_lattice,
)

INF = math.inf


def test_geometric_halving_lattice():
    lat = build_lattice(0.0, SequenceRule.geometric(0.5, 0.5), INF, right=1.0)
    for n in (1, 3, 10):
        assert abs(lat.point(n) - (1.0 - 0.5**n)) < 1e-15
        assert abs(lat.gap(n) - 0.5**n) < 1e-15
    assert lat.d_sup() == 0.5
    assert lat.d_star() == 0.0


def test_uniform_lattice():
    lat = build_lattice(0.0, SequenceRule.constant(1.0), INF)
    assert lat.point(7) == 7.0
    assert lat.d_star() == lat.d_sup() == 1.0


def test_explicit_lattice_partial_sums():
    lat = build_lattice(0.0, SequenceRule.explicit([0.3, 0.7]), 2, right=1.0)
    assert abs(lat.point(1) - 0.3) < 1e-15
    assert abs(lat.point(2) - 1.0) < 1e-15


def test_partial_sums_strictly_increase_and_telescope():
    rng = np.random.default_rng(5)
    gaps = rng.uniform(0.01, 1.0, 20)
    lat = build_lattice(0.0, SequenceRule.explicit(gaps), 20, right=float(np.sum(gaps)))
    pts = lat.points(20)
    assert np.all(np.diff(pts) > 0)
    assert abs(pts[-1] - np.sum(gaps)) < 1e-12 * max(1.0, np.sum(gaps))


def test_lattice_rejections():
    with pytest.raises(ValueError):
        build_lattice(0.0, SequenceRule.explicit([0.5, -0.1]), 2)
    with pytest.raises(ValueError):
        SequenceRule.explicit([0.5, math.nan])
    with pytest.raises(ValueError):
        build_lattice(0.0, SequenceRule.explicit([0.3, 0.3]), 2, right=1.0)
    with pytest.raises(ValueError):
        # diverging gap series cannot tile a finite interval
        build_lattice(0.0, SequenceRule.constant(1.0), INF, right=1.0)


def test_beta_to_alpha_scaling():
    beta = StrengthSeq(SequenceRule.constant(1.0), "beta")
    assert beta_to_alpha(beta, 2.0).term(5) == 4.0
    binf = StrengthSeq(SequenceRule.explicit([INF, 0.5]), "beta")
    out = beta_to_alpha(binf, 3.0)
    assert math.isinf(out.term(1)) and abs(out.term(2) - 4.5) < 1e-15
    b_id = StrengthSeq(SequenceRule.power(1.0, 2.0), "beta")
    a_id = beta_to_alpha(b_id, 1.0)
    assert np.allclose(a_id.terms(8), b_id.terms(8))
    # inverse: beta = alpha / c^2
    back = a_id.rule.scaled(1.0 / 1.0**2)
    assert np.allclose(back.terms(8), b_id.rule.terms(8))
    with pytest.raises(ValueError):
        beta_to_alpha(StrengthSeq(SequenceRule.constant(1.0), "alpha"), 1.0)


def test_model_config_invariants():
    with pytest.raises(ValueError):
        ModelConfig(c=0.0, left=0.0, right=1.0)
    with pytest.raises(ValueError):
        ModelConfig(c=1.0, left=1.0, right=1.0)
    cfg = ModelConfig(c=1.0, left=0.0, right=INF)
    assert cfg.is_halfline


def _aitken_limit(rule, n: int = 10_000) -> float:
    """Brute-force limit from the first n terms: Aitken extrapolation on a
    dyadic index subsequence (exact for one geometric or power tail term)."""
    a1, a2, a3 = rule.term(n // 4), rule.term(n // 2), rule.term(n)
    denom = a3 - 2.0 * a2 + a1
    if denom == 0.0:
        return a3
    return a3 - (a3 - a2) ** 2 / denom


@pytest.mark.parametrize("rule, limit", [
    (SequenceRule.constant(3.0), 3.0),
    (SequenceRule.geometric(1.0, 0.5), 0.0),
    (SequenceRule.geometric(1.0, 2.0), INF),
    (SequenceRule.power(2.0, 1.0), 0.0),
    (SequenceRule.power(2.0, -1.0), INF),
])
def test_tail_limits_match_brute_force(rule, limit):
    asym = rule.asymptotics()
    assert asym.limit() == limit
    if math.isfinite(limit):
        assert abs(_aitken_limit(rule) - limit) < 1e-8 * (1.0 + abs(limit))


def test_tail_series_classification_matches_brute_force():
    decaying = SequenceRule.geometric(1.0, 0.5).asymptotics()
    assert decaying.abs_series_converges()
    harmonic = SequenceRule.power(1.0, 1.0).asymptotics()
    assert harmonic.series_diverges()
    zeta2 = SequenceRule.power(1.0, 2.0).asymptotics()
    assert zeta2.abs_series_converges()
    assert harmonic.in_lp(2.0) and not harmonic.in_lp(1.0)
    assert not harmonic.in_lp(0.5)


def test_term_algebra_exact_cancellation():
    # alpha_n = -3*2^n + 1 against 1/d_n + 1/d_{n+1} with d_n = 2^-n
    alpha = SequenceRule.sum_of(SequenceRule.geometric(-6.0, 2.0),
                                SequenceRule.constant(1.0))
    assert np.allclose(alpha.terms(4), [-5.0, -11.0, -23.0, -47.0])
    d = SequenceRule.geometric(0.5, 0.5).asymptotics()
    combined = alpha.asymptotics() + d.reciprocal() + d.reciprocal().shifted(1)
    assert combined.limit() == 1.0
    series = combined.abs() * d.shifted(1)
    assert series.abs_series_converges()


def test_tail_rule_with_prefix():
    rule = SequenceRule.with_prefix([5.0, 4.0], SequenceRule.geometric(1.0, 0.5))
    assert rule.term(1) == 5.0 and rule.term(2) == 4.0
    assert rule.term(3) == 1.0 and rule.term(4) == 0.5
    assert rule.asymptotics().limit() == 0.0
    assert rule.bounds() == (0.0, 5.0)


def test_shift_and_reciprocal_consistency():
    rule = SequenceRule.geometric(0.7, 0.6)
    asym = rule.asymptotics()
    n = 40
    assert abs(asym.shifted(1).leading().coef * 0.6**n
               - rule.term(n + 1) / 0.6 * 0.6) < 1e-12
    inv = asym.reciprocal()
    approx = inv.leading().coef * inv.leading().ratio ** n
    assert abs(approx - 1.0 / rule.term(n)) < 1e-6 * abs(1.0 / rule.term(n))


def test_asymptotics_merge_drops_cancelled_terms():
    a = Asymptotics([Term(2.0, 2.0, 0.0), Term(-2.0, 2.0, 0.0), Term(1.0, 1.0, 0.0)])
    assert len(a.terms) == 1
    assert a.limit() == 1.0
