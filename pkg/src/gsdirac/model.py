"""Configuration layer: interaction lattices, strength sequences, constants.

Lattices are generated, never stored: a :class:`SequenceRule` produces the
gap lengths ``d_n`` on demand together with the symbolic tail descriptors
(:mod:`gsdirac.asymptotics`) that the spectral classifiers evaluate
analytically.  Purely explicit rules carry no tail and classifiers fall
back to "inconclusive" with partial-sum evidence.

All values are dimensionless; the velocity of light ``c`` is a free
positive parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .asymptotics import Asymptotics, Term

__all__ = [
    "SequenceRule",
    "Lattice",
    "StrengthSeq",
    "ModelConfig",
    "build_lattice",
    "beta_to_alpha",
]

INF = math.inf


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


@dataclass(frozen=True)
class SequenceRule:
    """Generator for a real sequence ``a_1, a_2, ...``.

    Variants
    --------
    explicit(values)        finite list, values in R or +inf
    constant(C)             a_n = C
    geometric(C, r)         a_n = C * r**(n-1),  r > 0
    power(C, p)             a_n = C * n**(-p)
    with_prefix(prefix, t)  explicit prefix followed by a tail rule
    sum_of(r1, r2, ...)     termwise sum (used to express perturbed tails,
                            e.g. -3*2**n + 1)
    """

    kind: str
    values: Tuple[float, ...] = ()
    scale: float = 0.0
    ratio: float = 1.0
    exponent: float = 0.0
    tail: Optional["SequenceRule"] = None
    parts: Tuple["SequenceRule", ...] = ()

    # -- constructors ---------------------------------------------------

    @staticmethod
    def explicit(values: Sequence[float]) -> "SequenceRule":
        vals = tuple(float(v) for v in values)
        _require(len(vals) > 0, "explicit rule needs at least one value")
        _require(all(not math.isnan(v) for v in vals), "NaN entry in explicit rule")
        return SequenceRule(kind="explicit", values=vals)

    @staticmethod
    def constant(value: float) -> "SequenceRule":
        return SequenceRule(kind="constant", scale=float(value))

    @staticmethod
    def geometric(scale: float, ratio: float) -> "SequenceRule":
        _require(ratio > 0.0, "geometric rule needs ratio > 0")
        return SequenceRule(kind="geometric", scale=float(scale), ratio=float(ratio))

    @staticmethod
    def power(scale: float, exponent: float) -> "SequenceRule":
        return SequenceRule(kind="power", scale=float(scale), exponent=float(exponent))

    @staticmethod
    def with_prefix(prefix: Sequence[float], tail: "SequenceRule") -> "SequenceRule":
        vals = tuple(float(v) for v in prefix)
        return SequenceRule(kind="tail", values=vals, tail=tail)

    @staticmethod
    def sum_of(*parts: "SequenceRule") -> "SequenceRule":
        _require(len(parts) >= 1, "sum_of needs at least one part")
        return SequenceRule(kind="sum", parts=tuple(parts))

    # -- evaluation -----------------------------------------------------

    @property
    def length(self) -> float:
        """Number of terms the rule defines (may be ``inf``)."""
        if self.kind == "explicit":
            return float(len(self.values))
        if self.kind == "tail":
            return INF
        if self.kind == "sum":
            return min(p.length for p in self.parts)
        return INF

    def term(self, n: int) -> float:
        """n-th term, 1-based."""
        _require(n >= 1, "term index is 1-based")
        if self.kind == "explicit":
            _require(n <= len(self.values), "explicit rule exhausted")
            return self.values[n - 1]
        if self.kind == "constant":
            return self.scale
        if self.kind == "geometric":
            try:
                return self.scale * self.ratio ** (n - 1)
            except OverflowError:
                return math.copysign(INF, self.scale)
        if self.kind == "power":
            try:
                return self.scale * float(n) ** (-self.exponent)
            except OverflowError:
                return math.copysign(INF, self.scale)
        if self.kind == "tail":
            if n <= len(self.values):
                return self.values[n - 1]
            return self.tail.term(n - len(self.values))
        if self.kind == "sum":
            return sum(p.term(n) for p in self.parts)
        raise AssertionError(self.kind)

    def terms(self, count: int) -> np.ndarray:
        return np.array([self.term(n) for n in range(1, count + 1)], dtype=float)

    def partial_sum(self, count: int) -> float:
        if count == 0:
            return 0.0
        return float(math.fsum(self.term(n) for n in range(1, count + 1)))

    def total_sum(self) -> float:
        """Sum of all terms; analytic for infinite rules, +inf on divergence."""
        if self.kind == "explicit":
            return self.partial_sum(len(self.values))
        if self.kind == "constant":
            return INF if self.scale != 0.0 else 0.0
        if self.kind == "geometric":
            if self.ratio < 1.0:
                return self.scale / (1.0 - self.ratio)
            return math.copysign(INF, self.scale) if self.scale != 0.0 else 0.0
        if self.kind == "power":
            if self.exponent > 1.0:
                # converges; no closed form needed by any caller
                raise NotImplementedError("analytic zeta sums are not provided")
            return math.copysign(INF, self.scale) if self.scale != 0.0 else 0.0
        if self.kind == "tail":
            return self.partial_sum(len(self.values)) + self.tail.total_sum()
        if self.kind == "sum":
            return sum(p.total_sum() for p in self.parts)
        raise AssertionError(self.kind)

    # -- symbolic descriptors --------------------------------------------

    def asymptotics(self) -> Optional[Asymptotics]:
        """Tail descriptor, or None for purely explicit data."""
        if self.kind == "explicit":
            return None
        if self.kind == "constant":
            return Asymptotics([Term(self.scale, 1.0, 0.0)])
        if self.kind == "geometric":
            return Asymptotics([Term(self.scale / self.ratio, self.ratio, 0.0)])
        if self.kind == "power":
            return Asymptotics([Term(self.scale, 1.0, -self.exponent)])
        if self.kind == "tail":
            return self.tail.asymptotics()
        if self.kind == "sum":
            acc = Asymptotics.zero()
            for p in self.parts:
                a = p.asymptotics()
                if a is None:
                    return None
                acc = acc + a
            return acc
        raise AssertionError(self.kind)

    def bounds(self) -> Optional[Tuple[float, float]]:
        """(inf, sup) over all terms when the rule determines them."""
        if self.kind == "explicit":
            return (min(self.values), max(self.values))
        if self.kind == "constant":
            return (self.scale, self.scale)
        if self.kind == "geometric":
            first, lim = self.scale, 0.0
            if self.ratio > 1.0:
                lim = math.copysign(INF, self.scale)
            elif self.ratio == 1.0:
                lim = self.scale
            return (min(first, lim), max(first, lim))
        if self.kind == "power":
            first = self.scale
            if self.exponent > 0.0:
                lim = 0.0
            elif self.exponent < 0.0:
                lim = math.copysign(INF, self.scale)
            else:
                lim = self.scale
            return (min(first, lim), max(first, lim))
        if self.kind == "tail":
            tb = self.tail.bounds()
            if tb is None or not self.values:
                return tb
            return (min(min(self.values), tb[0]), max(max(self.values), tb[1]))
        if self.kind == "sum":
            # not needed for gap rules; a safe unknown
            return None
        raise AssertionError(self.kind)

    def has_infinite_entries(self, probe: int = 64) -> bool:
        if self.kind == "explicit":
            return any(math.isinf(v) for v in self.values)
        if self.kind == "tail":
            return any(math.isinf(v) for v in self.values) or self.tail.has_infinite_entries()
        if self.kind == "sum":
            return any(p.has_infinite_entries() for p in self.parts)
        return math.isinf(self.scale)

    def scaled(self, factor: float) -> "SequenceRule":
        """Termwise rescaling by a finite positive factor (maps inf to inf)."""
        if self.kind == "explicit":
            return SequenceRule.explicit([factor * v for v in self.values])
        if self.kind == "constant":
            return SequenceRule.constant(factor * self.scale)
        if self.kind == "geometric":
            return SequenceRule.geometric(factor * self.scale, self.ratio)
        if self.kind == "power":
            return SequenceRule.power(factor * self.scale, self.exponent)
        if self.kind == "tail":
            return SequenceRule.with_prefix(
                [factor * v for v in self.values], self.tail.scaled(factor)
            )
        if self.kind == "sum":
            return SequenceRule.sum_of(*(p.scaled(factor) for p in self.parts))
        raise AssertionError(self.kind)


@dataclass(frozen=True)
class Lattice:
    """Interaction points ``x_0 = a < x_1 < ...`` with generated gaps d_n."""

    a: float
    rule: SequenceRule
    count: float  # positive integer or inf

    def __post_init__(self):
        _require(self.count == INF or (self.count == int(self.count) and self.count >= 1),
                 "count must be a positive integer or inf")

    @property
    def is_infinite(self) -> bool:
        return self.count == INF

    def gap(self, n: int) -> float:
        _require(self.count == INF or n <= self.count, "gap index beyond lattice")
        return self.rule.term(n)

    def gaps(self, count: int) -> np.ndarray:
        return self.rule.terms(count)

    def point(self, n: int) -> float:
        """``x_n = a + d_1 + ... + d_n`` (``x_0 = a``)."""
        return self.a + self.rule.partial_sum(n)

    def points(self, count: int) -> np.ndarray:
        return self.a + np.cumsum(np.concatenate([[0.0], self.gaps(count)]))

    def right_endpoint(self) -> float:
        """``sup x_n``: finite interval endpoint or +inf."""
        if self.is_infinite:
            return self.a + self.rule.total_sum()
        return self.point(int(self.count))

    def d_star(self) -> Optional[float]:
        """``d_*(X) = inf d_n`` when the rule determines it."""
        b = self._finite_bounds()
        return None if b is None else b[0]

    def d_sup(self) -> Optional[float]:
        """``d^*(X) = sup d_n`` when the rule determines it."""
        b = self._finite_bounds()
        return None if b is None else b[1]

    def _finite_bounds(self):
        if not self.is_infinite:
            g = self.gaps(int(self.count))
            return (float(g.min()), float(g.max()))
        return self.rule.bounds()

    def gap_asymptotics(self) -> Optional[Asymptotics]:
        return None if not self.is_infinite else self.rule.asymptotics()


@dataclass(frozen=True)
class StrengthSeq:
    """Interaction strengths; entries in R plus +inf (Dirichlet decoupling)."""

    rule: SequenceRule
    kind: str = "alpha"  # alpha | beta

    def __post_init__(self):
        _require(self.kind in ("alpha", "beta"), "kind must be alpha or beta")

    def term(self, n: int) -> float:
        return self.rule.term(n)

    def terms(self, count: int) -> np.ndarray:
        return self.rule.terms(count)

    def asymptotics(self) -> Optional[Asymptotics]:
        return self.rule.asymptotics()

    def has_infinite_entries(self) -> bool:
        return self.rule.has_infinite_entries()


@dataclass(frozen=True)
class ModelConfig:
    """Physical constants plus the interval the realization lives on."""

    c: float
    left: float
    right: float  # finite endpoint or inf
    interaction_kind: str = "delta"  # delta | delta_prime

    def __post_init__(self):
        _require(self.c > 0.0, "velocity of light must be positive")
        _require(self.right > self.left, "interval must have positive length")
        _require(self.interaction_kind in ("delta", "delta_prime"),
                 "interaction_kind must be delta or delta_prime")

    @property
    def is_halfline(self) -> bool:
        return math.isinf(self.right)


def build_lattice(a: float, rule: SequenceRule, count: float,
                  right: Optional[float] = None) -> Lattice:
    """Validate a gap rule and wrap it as a :class:`Lattice`.

    Gaps must be positive; explicit lists are checked against ``right``
    (when given) to 1e-12 relative.
    """
    if count != INF:
        count = int(count)
        _require(count >= 1, "count must be >= 1")
        _require(rule.length >= count, "rule provides fewer terms than count")
        gaps = rule.terms(count)
        _require(bool(np.all(np.isfinite(gaps))), "gap rule produced a non-finite value")
        _require(bool(np.all(gaps > 0.0)), "all gaps must be positive")
        if right is not None:
            total = float(np.sum(gaps))
            span = right - a
            _require(abs(total - span) <= 1e-12 * max(1.0, abs(span)),
                     "explicit gaps do not telescope to the interval length")
    else:
        probe = rule.terms(32)
        _require(bool(np.all(probe > 0.0)), "all gaps must be positive")
        _require(not rule.has_infinite_entries(), "gaps must be finite")
        if right is not None and not math.isinf(right):
            total = rule.total_sum()
            span = right - a
            _require(math.isfinite(total), "gap series diverges on a finite interval")
            _require(abs(total - span) <= 1e-12 * max(1.0, abs(span)),
                     "gap series does not sum to the interval length")
    return Lattice(a=a, rule=rule, count=count)


def beta_to_alpha(beta: StrengthSeq, c: float) -> StrengthSeq:
    """Map a delta-prime strength sequence to the unitarily equivalent
    delta sequence ``alpha_n = c**2 * beta_n`` (termwise, inf to inf)."""
    _require(beta.kind == "beta", "beta_to_alpha expects a beta sequence")
    _require(c > 0.0, "c must be positive")
    return StrengthSeq(rule=beta.rule.scaled(c * c), kind="alpha")
