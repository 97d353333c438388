"""Exponential-polynomial tail algebra for sequence classifiers.

Every generator rule used by the lattice and strength sequences has a tail
of the form ``sum_i  A_i * r_i**n * n**q_i`` with ``r_i > 0``.  This tiny
algebra is closed under the operations the spectral tests need (sums,
products, shifts, reciprocals and absolute values of the dominant term)
and turns the classical series criteria into exact decisions:

* limits and limsups of ``a_n`` and ``|a_n|``,
* divergence of ``sum a_n`` for eventually-signed sequences,
* ``l^p`` membership of ``{a_n}``.

Exact cancellation between same-shape terms is honoured (coefficients are
merged before the dominant term is read off), which is what lets
combinations like ``alpha_n + 1/d_n + 1/d_{n+1}`` collapse analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["Term", "Asymptotics"]

_MERGE_REL = 1e-12


@dataclass(frozen=True)
class Term:
    """One tail term ``coef * ratio**n * n**power`` with ratio > 0."""

    coef: float
    ratio: float = 1.0
    power: float = 0.0

    def growth_key(self) -> tuple:
        return (self.ratio, self.power)


class Asymptotics:
    """A finite sum of :class:`Term` objects describing a sequence tail."""

    def __init__(self, terms):
        merged: dict = {}
        for t in terms:
            if t.ratio <= 0.0:
                raise ValueError("term ratio must be positive")
            key = (t.ratio, t.power)
            merged[key] = merged.get(key, 0.0) + t.coef
        cleaned = []
        scale = max((abs(c) for c in merged.values()), default=0.0)
        for (r, q), coef in merged.items():
            if coef != 0.0 and (scale == 0.0 or abs(coef) > _MERGE_REL * scale):
                cleaned.append(Term(coef, r, q))
        cleaned.sort(key=lambda t: (t.ratio, t.power), reverse=True)
        self.terms = tuple(cleaned)

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, value: float) -> "Asymptotics":
        return cls([Term(value, 1.0, 0.0)])

    @classmethod
    def zero(cls) -> "Asymptotics":
        return cls([])

    # -- structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> Term:
        if not self.terms:
            return Term(0.0, 1.0, 0.0)
        return self.terms[0]

    def __repr__(self) -> str:
        if not self.terms:
            return "Asymptotics(0)"
        bits = [f"{t.coef:g}*{t.ratio:g}^n*n^{t.power:g}" for t in self.terms]
        return "Asymptotics(%s)" % " + ".join(bits)

    # -- algebra --------------------------------------------------------

    def __add__(self, other: "Asymptotics") -> "Asymptotics":
        return Asymptotics(list(self.terms) + list(other.terms))

    def __neg__(self) -> "Asymptotics":
        return Asymptotics([Term(-t.coef, t.ratio, t.power) for t in self.terms])

    def __sub__(self, other: "Asymptotics") -> "Asymptotics":
        return self + (-other)

    def __mul__(self, other: "Asymptotics") -> "Asymptotics":
        out = []
        for a in self.terms:
            for b in other.terms:
                out.append(Term(a.coef * b.coef, a.ratio * b.ratio, a.power + b.power))
        return Asymptotics(out)

    def scaled(self, s: float) -> "Asymptotics":
        return Asymptotics([Term(s * t.coef, t.ratio, t.power) for t in self.terms])

    def shifted(self, j: int) -> "Asymptotics":
        """Tail of ``a_{n+j}``; exact in the ratio, asymptotic in the power."""
        return Asymptotics(
            [Term(t.coef * t.ratio**j, t.ratio, t.power) for t in self.terms]
        )

    def abs(self) -> "Asymptotics":
        """Tail of ``|a_n|`` (dominant term only; that is all limits need)."""
        lead = self.leading()
        if lead.coef == 0.0:
            return Asymptotics.zero()
        return Asymptotics([Term(abs(lead.coef), lead.ratio, lead.power)])

    def reciprocal(self) -> "Asymptotics":
        """Tail of ``1/a_n`` from the dominant term."""
        lead = self.leading()
        if lead.coef == 0.0:
            raise ZeroDivisionError("reciprocal of a vanishing tail")
        return Asymptotics([Term(1.0 / lead.coef, 1.0 / lead.ratio, -lead.power)])

    def powered(self, s: float) -> "Asymptotics":
        """Tail of ``a_n**s`` from the dominant term (requires positive lead)."""
        lead = self.leading()
        if lead.coef <= 0.0:
            raise ValueError("powered() needs a positive dominant coefficient")
        return Asymptotics([Term(lead.coef**s, lead.ratio**s, lead.power * s)])

    # -- limit queries --------------------------------------------------

    def limit(self):
        """``lim a_n`` as a float, ``+/-inf``, or None when it oscillates.

        With positive ratios the sign of the dominant term is eventually
        fixed, so the limit always exists in the extended reals.
        """
        lead = self.leading()
        if lead.coef == 0.0:
            return 0.0
        if lead.ratio > 1.0 or (lead.ratio == 1.0 and lead.power > 0.0):
            return math.copysign(math.inf, lead.coef)
        if lead.ratio < 1.0 or lead.power < 0.0:
            return 0.0
        return lead.coef

    def limit_abs(self):
        """``lim |a_n|`` in the extended reals."""
        lim = self.limit()
        return abs(lim)

    def limsup_abs(self):
        """``limsup |a_n|``; coincides with ``lim |a_n|`` for these tails."""
        return self.limit_abs()

    def tends_to_zero(self) -> bool:
        return self.limit_abs() == 0.0

    def series_diverges(self) -> bool:
        """True iff ``sum |a_n| = +inf`` (False for the zero tail)."""
        lead = self.leading()
        if lead.coef == 0.0:
            return False
        if lead.ratio > 1.0:
            return True
        if lead.ratio < 1.0:
            return False
        return lead.power >= -1.0

    def abs_series_converges(self) -> bool:
        return not self.series_diverges()

    def in_lp(self, p: float) -> bool:
        """Membership of ``{a_n}`` in ``l^p`` for ``0 < p < inf``."""
        if not (p > 0.0):
            raise ValueError("p must be positive")
        lead = self.leading()
        if lead.coef == 0.0:
            return True
        rp = lead.ratio**p
        if rp < 1.0:
            return True
        if rp > 1.0:
            return False
        return lead.power * p < -1.0

    def in_c0(self) -> bool:
        return self.tends_to_zero()
