"""Boundary-operator Jacobi matrices and a truncated-section eigensolver.

The boundary operator of a point-interaction realization is a semi-infinite
symmetric tridiagonal matrix once the 2x2 block rows of the regularized
triplet are flattened in display order; even global indices are "interval"
rows, odd ones carry the interaction strengths.  Four flavors share one
entry table (``nu`` collapses to 1 for the non-relativistic pair):

flavor              interval diagonal          vertex diagonal
alpha_dirac         -nu(d_n)^2 / d_n^2         alpha_n / d_{n+1}
beta_dirac          -nu(d_n)^2 (b_n+d_n)/d_n^3 0
alpha_schrodinger   -1 / d_n^2                 alpha_n / d_{n+1}
beta_schrodinger    -(b_n + d_n) / d_n^3       0

with off-diagonals ``-nu(d_n)/d_n^2`` (within block n) and
``nu(d_n)/(d_n^{3/2} d_{n+1}^{1/2})`` (between blocks).  Every flavor
factorizes exactly as ``R^{-1} (B~ - Q) R^{-1}`` against the sparse
unregularized pattern; ``factorization_residual`` assembles both sides.

Truncated spectra come from Sturm-count bisection.  The hot counting loop
lives in the compiled extension ``_sturmcy`` when available, with
``_sturm_py`` as a drop-in pure-Python fallback selected at import.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .dispersion import nu
from .model import Lattice, StrengthSeq
from .states import regularizer_matrices

try:  # compiled kernel, if the extension was built
    from . import _sturmcy as _kernel
except ImportError:  # pragma: no cover - depends on build environment
    from . import _sturm_py as _kernel

KERNEL_IMPLEMENTATION = _kernel.IMPLEMENTATION

__all__ = [
    "TridiagonalOperator",
    "build",
    "factorization_residual",
    "eigenvalues_truncated",
    "sign_normalize",
    "sturm_count",
    "KERNEL_IMPLEMENTATION",
    "FLAVORS",
]

FLAVORS = ("alpha_dirac", "beta_dirac", "alpha_schrodinger", "beta_schrodinger")


@dataclass(frozen=True)
class TridiagonalOperator:
    """Semi-infinite symmetric tridiagonal operator given by generators.

    ``diag(i)`` and ``offdiag(i)`` are 0-based; ``offdiag(i)`` couples rows
    ``i`` and ``i+1``.  ``size`` bounds the representable section for
    finite lattices (inf otherwise).
    """

    diag: Callable[[int], float]
    offdiag: Callable[[int], float]
    flavor: str = "custom"
    size: float = math.inf

    def section(self, n: int) -> Tuple[np.ndarray, np.ndarray]:
        """Dense entries (diag, offdiag) of the leading n-by-n section."""
        if n < 1:
            raise ValueError("section size must be >= 1")
        if n > self.size:
            raise ValueError("section exceeds the operator size")
        d = np.array([self.diag(i) for i in range(n)], dtype=float)
        e = np.array([self.offdiag(i) for i in range(n - 1)], dtype=float)
        return d, e

    def dense(self, n: int) -> np.ndarray:
        d, e = self.section(n)
        out = np.diag(d)
        out[np.arange(n - 1), np.arange(1, n)] = e
        out[np.arange(1, n), np.arange(n - 1)] = e
        return out


def _flavor_parts(flavor: str):
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    relativistic = flavor.endswith("_dirac")
    is_beta = flavor.startswith("beta")
    return relativistic, is_beta


def build(flavor: str, lattice: Lattice, strengths: StrengthSeq,
          c: float = 1.0) -> TridiagonalOperator:
    """Boundary-operator Jacobi matrix for the requested flavor.

    Strengths must be finite everywhere: a ``+inf`` entry decouples the
    realization and is handled by the classifier and oracle paths instead.
    """
    relativistic, is_beta = _flavor_parts(flavor)
    if is_beta != (strengths.kind == "beta"):
        raise ValueError("strength kind does not match the flavor")
    if strengths.has_infinite_entries():
        raise ValueError(
            "infinite strengths decouple the operator; use the classifier "
            "or the transfer oracle for such configurations")

    def weight(d: float) -> float:
        return nu(d, c) if relativistic else 1.0

    def diag(i: int) -> float:
        if i == 0:
            return 0.0
        if i % 2 == 1:
            n = (i + 1) // 2
            d = lattice.gap(n)
            w = weight(d)
            if is_beta:
                return -w * w * (strengths.term(n) + d) / d**3
            return -w * w / d**2
        n = i // 2
        if is_beta:
            return 0.0
        return strengths.term(n) / lattice.gap(n + 1)

    def offdiag(i: int) -> float:
        if i % 2 == 0:
            n = i // 2 + 1
            d = lattice.gap(n)
            return -weight(d) / d**2
        n = (i + 1) // 2
        d = lattice.gap(n)
        return weight(d) / (d**1.5 * math.sqrt(lattice.gap(n + 1)))

    size = math.inf if lattice.is_infinite else 2.0 * lattice.count
    return TridiagonalOperator(diag=diag, offdiag=offdiag, flavor=flavor, size=size)


def _unregularized_pattern(flavor: str, strengths: StrengthSeq, rows: int) -> np.ndarray:
    """Sparse boundary pattern ``B~`` of the factorized representation."""
    _, is_beta = _flavor_parts(flavor)
    out = np.zeros((rows, rows))
    n = 1
    while True:
        i = 2 * n - 1
        if i >= rows:
            break
        if is_beta:
            out[i, i] = -strengths.term(n)
            if i + 1 < rows:
                out[i, i + 1] = out[i + 1, i] = 1.0
        else:
            if i + 1 < rows:
                out[i, i + 1] = out[i + 1, i] = 1.0
                out[i + 1, i + 1] = strengths.term(n)
        n += 1
    return out


def factorization_residual(op: TridiagonalOperator, lattice: Lattice,
                           strengths: StrengthSeq, c: float, rows: int) -> float:
    """Entrywise gap between ``op`` and ``R^{-1}(B~ - Q)R^{-1}``.

    Measured relative to the unit-floored entry magnitude
    ``|a - b| / max(1, |a|, |b|)``: entries scale like ``1/d_n**2`` and
    overrun any absolute float64 tolerance on shrinking lattices, while
    O(1) entries are still compared absolutely.
    """
    if rows < 2:
        raise ValueError("need at least 2 rows")
    relativistic, _ = _flavor_parts(op.flavor)
    flavor = "dirac" if relativistic else "schrodinger"
    rdiag = np.zeros(rows)
    Q = np.zeros((rows, rows))
    blocks = (rows + 1) // 2
    for nblk in range(1, blocks + 1):
        d = lattice.gap(nblk)
        R, Qb = regularizer_matrices(d, c, flavor)
        i = 2 * (nblk - 1)
        take = min(2, rows - i)
        rdiag[i:i + take] = np.diag(R)[:take]
        Q[i:i + take, i:i + take] = Qb[:take, :take]
    btilde = _unregularized_pattern(op.flavor, strengths, rows)
    rinv = 1.0 / rdiag
    factored = rinv[:, None] * (btilde - Q) * rinv[None, :]
    direct = op.dense(rows)
    scale = np.maximum(1.0, np.maximum(np.abs(direct), np.abs(factored)))
    return float(np.max(np.abs(direct - factored) / scale))


def sturm_count(op: TridiagonalOperator, n: int, mu: float) -> int:
    """Eigenvalues of the n-by-n leading section strictly below ``mu``."""
    d, e = op.section(n)
    return int(_kernel.count_below(d, e, float(mu)))


def eigenvalues_truncated(op: TridiagonalOperator, n: int,
                          which=None) -> np.ndarray:
    """Sorted eigenvalues of the n-by-n leading principal section.

    ``which`` selects all of them (None), the ``m`` smallest (an int), an
    index range (a pair of ints), or a real window (a pair of floats).
    Bisection on Sturm counts; absolute tolerance
    ``1e-12 * (1 + Gershgorin radius)``; deterministic.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    d, e = op.section(n)
    pad = np.concatenate([[0.0], np.abs(e), [0.0]])
    radius = float(np.max(np.abs(d) + pad[:-1] + pad[1:])) if n > 0 else 0.0
    lo, hi = -radius, radius
    tol = 1e-12 * (1.0 + radius)

    if which is None:
        first, last = 0, n - 1
    elif isinstance(which, (int, np.integer)):
        if not 1 <= which <= n:
            raise ValueError("count out of range")
        first, last = 0, int(which) - 1
    elif isinstance(which, tuple) and len(which) == 2:
        a, b = which
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            first, last = int(a), int(b)
            if not (0 <= first <= last <= n - 1):
                raise ValueError("index range out of bounds")
        else:
            wlo, whi = float(a), float(b)
            first = int(_kernel.count_below(d, e, wlo))
            last = int(_kernel.count_below(d, e, whi)) - 1
            if last < first:
                return np.array([])
    else:
        raise TypeError("which must be None, an int, or a pair")

    vals = _kernel.bisect_eigenvalues(d, e, lo - tol, hi + tol, first, last, tol)
    return np.array(vals, dtype=float)


def sign_normalize(op: TridiagonalOperator) -> TridiagonalOperator:
    """Unitarily equivalent operator with nonnegative off-diagonals."""
    inner = op

    def offdiag(i: int) -> float:
        return abs(inner.offdiag(i))

    return TridiagonalOperator(diag=inner.diag, offdiag=offdiag,
                               flavor=inner.flavor, size=inner.size)
