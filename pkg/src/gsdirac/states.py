"""Closed-form piecewise states, exact inner products and boundary maps.

States are stored symbolically (a basis tag plus coefficients per lattice
interval or half-line), never sampled on grids; every integral used by the
Green-identity and trace tests has an exponential or polynomial
antiderivative.  Two families are provided:

* :class:`DiracState` -- 2-component states whose pieces are either
  combinations ``w_minus*f^-(x,z) + w_plus*f^+(x,z)`` of the exact kernel
  elements ``f^{+/-}(x,z) = (exp(+/-1j*k(z)*x), +/-k1(z)*exp(...))`` or
  componentwise affine functions,
* :class:`ScalarState` -- scalar analogues (exponential or affine pieces)
  for the non-relativistic operator and the trace theory.

Boundary maps come in six flavors: ``tilde`` and ``regularized`` for
2-component interval blocks, the two half-line maps, and the Schroedinger
``tilde``/``regularized`` pair.  The regularized maps are obtained from the
tilde data by the matrix transformation ``G0 -> R G0``,
``G1 -> R^{-1}(G1 - Q G0)`` rather than re-derived trace formulas.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .dispersion import k as disp_k
from .dispersion import k1 as disp_k1
from .dispersion import nu, sqrt_up

__all__ = [
    "ExpPiece",
    "LinearPiece",
    "ScalarExpPiece",
    "ScalarLinearPiece",
    "DiracState",
    "ScalarState",
    "BoundaryData",
    "defect_state",
    "inner_product",
    "boundary_map",
    "green_residual",
    "trace_sequences",
    "linear_interpolant",
    "regularizer_matrices",
    "BOUNDARY_FLAVORS",
]

BOUNDARY_FLAVORS = (
    "tilde",
    "regularized",
    "halfline_left",
    "halfline_right",
    "schrodinger_tilde",
    "schrodinger_regularized",
)


# ---------------------------------------------------------------------------
# pieces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExpPiece:
    """``w_minus*f^-(x,z) + w_plus*f^+(x,z)`` on one interval/half-line."""

    z: complex
    w_plus: complex
    w_minus: complex


@dataclass(frozen=True)
class LinearPiece:
    """Componentwise affine 2-vector ``(a1 + b1*x, a2 + b2*x)``."""

    a1: complex = 0.0
    b1: complex = 0.0
    a2: complex = 0.0
    b2: complex = 0.0


@dataclass(frozen=True)
class ScalarExpPiece:
    """``w_minus*exp(-1j*s*x) + w_plus*exp(1j*s*x)`` with ``s = sqrt_up(z)``."""

    z: complex
    w_plus: complex
    w_minus: complex


@dataclass(frozen=True)
class ScalarLinearPiece:
    """Affine scalar ``a + b*x``."""

    a: complex = 0.0
    b: complex = 0.0


@dataclass(frozen=True)
class BoundaryData:
    """Per-block boundary vectors ``u_n = G0 f`` and ``v_n = G1 f``."""

    flavor: str
    u: Tuple[np.ndarray, ...]
    v: Tuple[np.ndarray, ...]

    def pairing(self, other: "BoundaryData") -> complex:
        """``(G1 f, G0 g) - (G0 f, G1 g)`` summed over blocks."""
        total = 0.0 + 0.0j
        for fu, fv, gu, gv in zip(self.u, self.v, other.u, other.v):
            total += np.vdot(gu, fv) - np.vdot(gv, fu)
        return complex(total)


# ---------------------------------------------------------------------------
# elementary antiderivatives
# ---------------------------------------------------------------------------


def _int_exp(mu: complex, lo: float, hi: float) -> complex:
    """``integral_lo^hi exp(mu*x) dx`` with a series guard near mu = 0."""
    width = hi - lo
    w = mu * width
    if abs(w) < 1e-8:
        correction = 1.0 + w / 2.0 + w * w / 6.0 + w * w * w / 24.0
        return cmath.exp(mu * lo) * width * correction
    return (cmath.exp(mu * hi) - cmath.exp(mu * lo)) / mu


def _int_poly_exp(a: complex, b: complex, mu: complex, lo: float, hi: float) -> complex:
    """``integral (a + b*x) exp(mu*x) dx`` over [lo, hi]."""
    if abs(mu) * max(abs(lo), abs(hi), 1.0) < 1e-9:
        return a * (hi - lo) + 0.5 * b * (hi * hi - lo * lo)

    def prim(x: float) -> complex:
        return cmath.exp(mu * x) * ((a + b * x) / mu - b / (mu * mu))

    return prim(hi) - prim(lo)


def _int_exp_right(mu: complex, lo: float) -> complex:
    """``integral_lo^inf exp(mu*x) dx``; requires Re mu < 0."""
    if mu.real >= 0.0:
        raise ValueError("divergent half-line integral")
    return -cmath.exp(mu * lo) / mu


def _int_exp_left(mu: complex, hi: float) -> complex:
    """``integral_-inf^hi exp(mu*x) dx``; requires Re mu > 0."""
    if mu.real <= 0.0:
        raise ValueError("divergent half-line integral")
    return cmath.exp(mu * hi) / mu


# ---------------------------------------------------------------------------
# segments
# ---------------------------------------------------------------------------

_INTERVAL, _LEFT, _RIGHT = "interval", "left", "right"


@dataclass(frozen=True)
class _Segment:
    kind: str  # interval | left | right
    lo: float  # -inf for left half-line
    hi: float  # +inf for right half-line
    piece: object


def _seg_key(seg: _Segment) -> Tuple[str, float, float]:
    return (seg.kind, seg.lo, seg.hi)


class _PiecewiseState:
    """Shared container logic for Dirac and scalar states."""

    def __init__(self, segments: Sequence[_Segment]):
        self.segments = tuple(segments)

    def same_support(self, other: "_PiecewiseState") -> bool:
        if len(self.segments) != len(other.segments):
            return False
        return all(_seg_key(a) == _seg_key(b)
                   for a, b in zip(self.segments, other.segments))

    @property
    def is_zero(self) -> bool:
        return all(_is_zero_piece(s.piece) for s in self.segments)


def _is_zero_piece(piece) -> bool:
    if isinstance(piece, (ExpPiece, ScalarExpPiece)):
        return piece.w_plus == 0 and piece.w_minus == 0
    if isinstance(piece, LinearPiece):
        return piece.a1 == piece.b1 == piece.a2 == piece.b2 == 0
    if isinstance(piece, ScalarLinearPiece):
        return piece.a == 0 and piece.b == 0
    raise TypeError(type(piece))


# ---------------------------------------------------------------------------
# Dirac states
# ---------------------------------------------------------------------------


class DiracState(_PiecewiseState):
    """Piecewise 2-component state on interval and half-line blocks."""

    def __init__(self, c: float, segments: Sequence[_Segment]):
        if c <= 0.0:
            raise ValueError("c must be positive")
        super().__init__(segments)
        self.c = c
        for seg in self.segments:
            self._check_segment(seg)

    def _check_segment(self, seg: _Segment) -> None:
        piece = seg.piece
        if isinstance(piece, LinearPiece):
            if seg.kind != _INTERVAL:
                raise ValueError("affine pieces live on finite intervals only")
            return
        if not isinstance(piece, ExpPiece):
            raise TypeError(type(piece))
        if seg.kind == _RIGHT:
            if piece.w_minus != 0:
                raise ValueError("right half-line admits the f^+ element only")
            if piece.w_plus != 0 and disp_k(piece.z, self.c).imag <= 0.0:
                raise ValueError("half-line defect element is not square-integrable")
        elif seg.kind == _LEFT:
            if piece.w_plus != 0:
                raise ValueError("left half-line admits the f^- element only")
            if piece.w_minus != 0 and disp_k(piece.z, self.c).imag <= 0.0:
                raise ValueError("half-line defect element is not square-integrable")

    # -- pointwise -----------------------------------------------------

    def value(self, seg_index: int, x: float) -> np.ndarray:
        seg = self.segments[seg_index]
        piece = seg.piece
        if isinstance(piece, LinearPiece):
            return np.array([piece.a1 + piece.b1 * x, piece.a2 + piece.b2 * x])
        kz = disp_k(piece.z, self.c)
        k1z = disp_k1(piece.z, self.c)
        em = cmath.exp(-1j * kz * x) * piece.w_minus
        ep = cmath.exp(1j * kz * x) * piece.w_plus
        return np.array([em + ep, k1z * (ep - em)])

    def apply_operator(self) -> "DiracState":
        """Exact image under the differential expression."""
        out = []
        for seg in self.segments:
            piece = seg.piece
            if isinstance(piece, ExpPiece):
                out.append(_Segment(seg.kind, seg.lo, seg.hi,
                                    ExpPiece(piece.z, piece.z * piece.w_plus,
                                             piece.z * piece.w_minus)))
            else:
                h = 0.5 * self.c * self.c
                out.append(_Segment(seg.kind, seg.lo, seg.hi, LinearPiece(
                    a1=h * piece.a1 - 1j * self.c * piece.b2,
                    b1=h * piece.b1,
                    a2=-1j * self.c * piece.b1 - h * piece.a2,
                    b2=-h * piece.b2,
                )))
        return DiracState(self.c, out)

    def operator_residual(self, samples: int = 20) -> float:
        """Max sampled residual of ``D f - z f`` over exponential pieces."""
        worst = 0.0
        df = self.apply_operator()
        for seg, dseg in zip(self.segments, df.segments):
            piece = seg.piece
            if not isinstance(piece, ExpPiece):
                continue
            lo = seg.lo if math.isfinite(seg.lo) else seg.hi - 5.0
            hi = seg.hi if math.isfinite(seg.hi) else seg.lo + 5.0
            for t in np.linspace(lo, hi, samples):
                i = self.segments.index(seg)
                res = df.value(i, t) - piece.z * self.value(i, t)
                worst = max(worst, float(np.max(np.abs(res))))
        return worst

    # -- integration -----------------------------------------------------

    def inner(self, other: "DiracState") -> complex:
        """Exact ``L^2 (x) C^2`` inner product, linear in self."""
        if self.c != other.c or not self.same_support(other):
            raise ValueError("states live on different block sets")
        total = 0.0 + 0.0j
        for sf, sg in zip(self.segments, other.segments):
            total += _dirac_piece_inner(self.c, sf, sg)
        return complex(total)

    def norm2(self) -> float:
        return self.inner(self).real


def _exp_data(c: float, piece: ExpPiece):
    kz = disp_k(piece.z, c)
    k1z = disp_k1(piece.z, c)
    # component amplitude per signed exponent: sigma = +/-1
    return kz, {+1: (piece.w_plus, k1z * piece.w_plus),
                -1: (piece.w_minus, -k1z * piece.w_minus)}


def _dirac_piece_inner(c: float, sf: _Segment, sg: _Segment) -> complex:
    f, g = sf.piece, sg.piece
    if isinstance(f, ExpPiece) and isinstance(g, ExpPiece):
        kf, fa = _exp_data(c, f)
        kg, ga = _exp_data(c, g)
        total = 0.0 + 0.0j
        for sig, (f1, f2) in fa.items():
            for tau, (g1, g2) in ga.items():
                amp = f1 * g1.conjugate() + f2 * g2.conjugate()
                if amp == 0:
                    continue
                mu = 1j * (sig * kf - tau * kg.conjugate())
                if sf.kind == _INTERVAL:
                    total += amp * _int_exp(mu, sf.lo, sf.hi)
                elif sf.kind == _RIGHT:
                    total += amp * _int_exp_right(mu, sf.lo)
                else:
                    total += amp * _int_exp_left(mu, sf.hi)
        return total
    if isinstance(f, LinearPiece) and isinstance(g, LinearPiece):
        return (_int_affine_pair(f.a1, f.b1, g.a1, g.b1, sf.lo, sf.hi)
                + _int_affine_pair(f.a2, f.b2, g.a2, g.b2, sf.lo, sf.hi))
    if isinstance(f, ExpPiece) and isinstance(g, LinearPiece):
        return _dirac_exp_affine(c, sf, f, g)
    if isinstance(f, LinearPiece) and isinstance(g, ExpPiece):
        return _dirac_exp_affine(c, sf, g, f).conjugate()
    raise TypeError((type(f), type(g)))


def _dirac_exp_affine(c: float, seg: _Segment, f: ExpPiece, g: LinearPiece) -> complex:
    kf, fa = _exp_data(c, f)
    total = 0.0 + 0.0j
    for sig, (f1, f2) in fa.items():
        mu = 1j * sig * kf
        total += f1 * _int_poly_exp(complex(g.a1).conjugate(), complex(g.b1).conjugate(), mu, seg.lo, seg.hi)
        total += f2 * _int_poly_exp(complex(g.a2).conjugate(), complex(g.b2).conjugate(), mu, seg.lo, seg.hi)
    return total


def _int_affine_pair(a1, b1, a2, b2, lo: float, hi: float) -> complex:
    """``integral (a1 + b1 x) conj(a2 + b2 x) dx`` over [lo, hi]."""
    c2 = complex(a2).conjugate()
    d2 = complex(b2).conjugate()
    p0 = a1 * c2
    p1 = a1 * d2 + b1 * c2
    p2 = b1 * d2
    return (p0 * (hi - lo) + p1 * (hi * hi - lo * lo) / 2.0
            + p2 * (hi**3 - lo**3) / 3.0)


# ---------------------------------------------------------------------------
# scalar states
# ---------------------------------------------------------------------------


class ScalarState(_PiecewiseState):
    """Piecewise scalar state (affine interpolants, Schroedinger defects)."""

    def value(self, seg_index: int, x: float) -> complex:
        piece = self.segments[seg_index].piece
        if isinstance(piece, ScalarLinearPiece):
            return piece.a + piece.b * x
        s = sqrt_up(piece.z)
        return (piece.w_minus * cmath.exp(-1j * s * x)
                + piece.w_plus * cmath.exp(1j * s * x))

    def derivative(self, seg_index: int, x: float) -> complex:
        piece = self.segments[seg_index].piece
        if isinstance(piece, ScalarLinearPiece):
            return piece.b
        s = sqrt_up(piece.z)
        return 1j * s * (piece.w_plus * cmath.exp(1j * s * x)
                         - piece.w_minus * cmath.exp(-1j * s * x))

    def apply_operator(self) -> "ScalarState":
        """Exact image under ``-d^2/dx^2``."""
        out = []
        for seg in self.segments:
            piece = seg.piece
            if isinstance(piece, ScalarExpPiece):
                out.append(_Segment(seg.kind, seg.lo, seg.hi, ScalarExpPiece(
                    piece.z, piece.z * piece.w_plus, piece.z * piece.w_minus)))
            else:
                out.append(_Segment(seg.kind, seg.lo, seg.hi, ScalarLinearPiece(0.0, 0.0)))
        return ScalarState(out)

    def inner(self, other: "ScalarState") -> complex:
        if not self.same_support(other):
            raise ValueError("states live on different block sets")
        total = 0.0 + 0.0j
        for sf, sg in zip(self.segments, other.segments):
            total += _scalar_piece_inner(sf, sg)
        return complex(total)

    def norm2(self) -> float:
        return self.inner(self).real

    def derivative_norm2(self) -> float:
        """Exact ``||f'||^2`` over all pieces."""
        total = 0.0
        for i, seg in enumerate(self.segments):
            piece = seg.piece
            if isinstance(piece, ScalarLinearPiece):
                total += abs(piece.b) ** 2 * (seg.hi - seg.lo)
            else:
                s = sqrt_up(piece.z)
                dpiece = ScalarExpPiece(piece.z, 1j * s * piece.w_plus,
                                        -1j * s * piece.w_minus)
                dstate = ScalarState([_Segment(seg.kind, seg.lo, seg.hi, dpiece)])
                total += dstate.norm2()
        return total

    def weighted_invx2_norm2(self) -> float:
        """Exact ``integral |f|^2 / x^2`` for affine states vanishing at 0."""
        total = 0.0
        for i, seg in enumerate(self.segments):
            piece = seg.piece
            if not isinstance(piece, ScalarLinearPiece):
                raise TypeError("1/x^2 weight implemented for affine pieces")
            a, b = piece.a, piece.b
            lo, hi = seg.lo, seg.hi
            if lo == 0.0:
                if abs(a) != 0.0:
                    raise ValueError("state must vanish at the origin")
                total += abs(b) ** 2 * hi
                continue
            if lo < 0.0:
                raise ValueError("weight defined on the positive half-line")
            aa = abs(a) ** 2
            ab = 2.0 * (a * b.conjugate()).real
            bb = abs(b) ** 2
            total += aa * (1.0 / lo - 1.0 / hi) + ab * math.log(hi / lo) + bb * (hi - lo)
        return total


def _scalar_piece_inner(sf: _Segment, sg: _Segment) -> complex:
    f, g = sf.piece, sg.piece
    if isinstance(f, ScalarLinearPiece) and isinstance(g, ScalarLinearPiece):
        return _int_affine_pair(f.a, f.b, g.a, g.b, sf.lo, sf.hi)
    if isinstance(f, ScalarExpPiece) and isinstance(g, ScalarExpPiece):
        ss, sg_ = sqrt_up(f.z), sqrt_up(g.z)
        total = 0.0 + 0.0j
        for sig, fw in ((+1, f.w_plus), (-1, f.w_minus)):
            for tau, gw in ((+1, g.w_plus), (-1, g.w_minus)):
                amp = fw * gw.conjugate()
                if amp == 0:
                    continue
                mu = 1j * (sig * ss - tau * sg_.conjugate())
                if sf.kind == _INTERVAL:
                    total += amp * _int_exp(mu, sf.lo, sf.hi)
                elif sf.kind == _RIGHT:
                    total += amp * _int_exp_right(mu, sf.lo)
                else:
                    total += amp * _int_exp_left(mu, sf.hi)
        return total
    if isinstance(f, ScalarExpPiece) and isinstance(g, ScalarLinearPiece):
        s = sqrt_up(f.z)
        total = 0.0 + 0.0j
        for sig, fw in ((+1, f.w_plus), (-1, f.w_minus)):
            mu = 1j * sig * s
            total += fw * _int_poly_exp(g.a.conjugate(), g.b.conjugate(), mu, sf.lo, sf.hi)
        return total
    if isinstance(f, ScalarLinearPiece) and isinstance(g, ScalarExpPiece):
        return _scalar_piece_inner(sg, sf).conjugate()
    raise TypeError((type(f), type(g)))


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def defect_state(block, z: complex, weights, c: float) -> DiracState:
    """Exact-kernel element of ``ker(D* - z)`` on one block.

    ``block`` is ``("interval", lo, hi)``, ``("left", a)`` or
    ``("right", b)``; ``weights = (w_minus, w_plus)`` for intervals and a
    single scalar for half-lines.
    """
    kind = block[0]
    if kind == _INTERVAL:
        _, lo, hi = block
        w_minus, w_plus = weights
        seg = _Segment(_INTERVAL, float(lo), float(hi),
                       ExpPiece(complex(z), complex(w_plus), complex(w_minus)))
    elif kind == _LEFT:
        a = float(block[1])
        w = complex(weights) if np.isscalar(weights) else complex(weights[0])
        seg = _Segment(_LEFT, -math.inf, a, ExpPiece(complex(z), 0.0, w))
    elif kind == _RIGHT:
        b = float(block[1])
        w = complex(weights) if np.isscalar(weights) else complex(weights[0])
        seg = _Segment(_RIGHT, b, math.inf, ExpPiece(complex(z), w, 0.0))
    else:
        raise ValueError(f"unknown block kind {kind!r}")
    return DiracState(c, [seg])


def dirac_state_on_lattice(c: float, points: Sequence[float],
                           pieces: Sequence[object]) -> DiracState:
    """Assemble a multi-interval state from consecutive points and pieces."""
    if len(pieces) != len(points) - 1:
        raise ValueError("need one piece per interval")
    segs = [_Segment(_INTERVAL, float(points[i]), float(points[i + 1]), pieces[i])
            for i in range(len(pieces))]
    return DiracState(c, segs)


def scalar_state_on_lattice(points: Sequence[float],
                            pieces: Sequence[object]) -> ScalarState:
    if len(pieces) != len(points) - 1:
        raise ValueError("need one piece per interval")
    segs = [_Segment(_INTERVAL, float(points[i]), float(points[i + 1]), pieces[i])
            for i in range(len(pieces))]
    return ScalarState(segs)


def scalar_defect_state(block, z: complex, weights) -> ScalarState:
    """Schroedinger analogue of :func:`defect_state`."""
    kind = block[0]
    if kind == _INTERVAL:
        _, lo, hi = block
        w_minus, w_plus = weights
        seg = _Segment(_INTERVAL, float(lo), float(hi),
                       ScalarExpPiece(complex(z), complex(w_plus), complex(w_minus)))
    elif kind == _LEFT:
        w = complex(weights) if np.isscalar(weights) else complex(weights[0])
        if sqrt_up(z).imag <= 0.0:
            raise ValueError("half-line defect element is not square-integrable")
        seg = _Segment(_LEFT, -math.inf, float(block[1]), ScalarExpPiece(complex(z), 0.0, w))
    elif kind == _RIGHT:
        w = complex(weights) if np.isscalar(weights) else complex(weights[0])
        if sqrt_up(z).imag <= 0.0:
            raise ValueError("half-line defect element is not square-integrable")
        seg = _Segment(_RIGHT, float(block[1]), math.inf, ScalarExpPiece(complex(z), w, 0.0))
    else:
        raise ValueError(f"unknown block kind {kind!r}")
    return ScalarState([seg])


def inner_product(f, g) -> complex:
    """Exact inner product of two states on matching block sets."""
    return f.inner(g)


def regularizer_matrices(d: float, c: float, flavor: str = "dirac"):
    """Regularizer pair ``(R, Q)`` for one interval of length ``d``.

    Dirac:        R = diag(d**0.5, d**1.5 * sqrt(1 + 1/(c*d)**2))
    Schroedinger: R = diag(d**0.5, d**1.5)
    and in both cases ``Q = [[0, 1], [1, d]]`` (the Weyl matrix at the
    gap-center reference point).
    """
    if d <= 0.0:
        raise ValueError("d must be positive")
    if flavor == "dirac":
        r22 = d**1.5 / nu(d, c)
    elif flavor == "schrodinger":
        r22 = d**1.5
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    R = np.array([[math.sqrt(d), 0.0], [0.0, r22]])
    Q = np.array([[0.0, 1.0], [1.0, d]])
    return R, Q


def _dirac_interval_tilde(state: DiracState, i: int):
    seg = state.segments[i]
    fl = state.value(i, seg.lo)
    fr = state.value(i, seg.hi)
    ic = 1j * state.c
    u = np.array([fl[0], ic * fr[1]])
    v = np.array([ic * fl[1], fr[0]])
    return u, v


def _scalar_interval_tilde(state: ScalarState, i: int):
    seg = state.segments[i]
    u = np.array([state.value(i, seg.lo), state.derivative(i, seg.hi)])
    v = np.array([state.derivative(i, seg.lo), state.value(i, seg.hi)])
    return u, v


def boundary_map(state, flavor: str) -> BoundaryData:
    """Per-block boundary vectors in the requested flavor."""
    if flavor not in BOUNDARY_FLAVORS:
        raise ValueError(f"unknown boundary flavor {flavor!r}")

    if flavor in ("tilde", "regularized"):
        if not isinstance(state, DiracState):
            raise TypeError("Dirac flavors need a DiracState")
        us, vs = [], []
        for i, seg in enumerate(state.segments):
            if seg.kind != _INTERVAL:
                raise ValueError("interval flavor applied to a half-line block")
            u, v = _dirac_interval_tilde(state, i)
            if flavor == "regularized":
                R, Q = regularizer_matrices(seg.hi - seg.lo, state.c, "dirac")
                u, v = R @ u, np.linalg.solve(R, v - Q @ u)
            us.append(u)
            vs.append(v)
        return BoundaryData(flavor, tuple(us), tuple(vs))

    if flavor in ("halfline_left", "halfline_right"):
        if not isinstance(state, DiracState):
            raise TypeError("Dirac flavors need a DiracState")
        us, vs = [], []
        ic = 1j * state.c
        for i, seg in enumerate(state.segments):
            if flavor == "halfline_left":
                if seg.kind != _LEFT:
                    raise ValueError("state is not a left half-line block")
                fa = state.value(i, seg.hi)
                u, v = np.array([ic * fa[1]]), np.array([fa[0]])
            else:
                if seg.kind != _RIGHT:
                    raise ValueError("state is not a right half-line block")
                fb = state.value(i, seg.lo)
                u, v = np.array([fb[0]]), np.array([ic * fb[1]])
            us.append(u)
            vs.append(v)
        return BoundaryData(flavor, tuple(us), tuple(vs))

    # Schroedinger flavors
    if not isinstance(state, ScalarState):
        raise TypeError("Schroedinger flavors need a ScalarState")
    us, vs = [], []
    for i, seg in enumerate(state.segments):
        if seg.kind != _INTERVAL:
            raise ValueError("interval flavor applied to a half-line block")
        u, v = _scalar_interval_tilde(state, i)
        if flavor == "schrodinger_regularized":
            R, Q = regularizer_matrices(seg.hi - seg.lo, 1.0, "schrodinger")
            u, v = R @ u, np.linalg.solve(R, v - Q @ u)
        us.append(u)
        vs.append(v)
    return BoundaryData(flavor, tuple(us), tuple(vs))


def green_residual(f, g, flavor: str) -> float:
    """Defect of the second Green identity, ``|(D*f,g)-(f,D*g)-[...]|``."""
    lhs = f.apply_operator().inner(g) - f.inner(g.apply_operator())
    bf = boundary_map(f, flavor)
    bg = boundary_map(g, flavor)
    return abs(lhs - bf.pairing(bg))


def trace_sequences(state: ScalarState):
    """One-sided trace sequences and per-interval variations.

    Returns ``(pi_plus, pi_minus, jumps)`` with
    ``jumps[n] = f(x_n-) - f(x_{n-1}+)``.
    """
    pi_plus, pi_minus, jumps = [], [], []
    for i, seg in enumerate(state.segments):
        if seg.kind != _INTERVAL:
            raise ValueError("traces defined for interval blocks")
        left = state.value(i, seg.lo)
        right = state.value(i, seg.hi)
        pi_plus.append(left)
        pi_minus.append(right)
        jumps.append(right - left)
    return pi_plus, pi_minus, jumps


def linear_interpolant(lattice, a_plus: Sequence[complex],
                       a_minus: Sequence[complex]) -> ScalarState:
    """Piecewise-affine state with prescribed one-sided traces.

    On interval n the state is
    ``g_n(x) = a_n^+ + (x - x_{n-1}) * (a_n^- - a_n^+) / d_n`` so that
    ``pi_+(g) = a^+`` and ``pi_-(g) = a^-``; its squared norm per interval
    is ``(d_n/3) * (|a^+|^2 + |a^-|^2 + Re(a^+ conj(a^-)))``.
    """
    if len(a_plus) != len(a_minus):
        raise ValueError("trace lists must have equal length")
    n = len(a_plus)
    points = lattice.points(n)
    pieces = []
    for i in range(n):
        lo, hi = points[i], points[i + 1]
        d = hi - lo
        slope = (complex(a_minus[i]) - complex(a_plus[i])) / d
        pieces.append(ScalarLinearPiece(a=complex(a_plus[i]) - slope * lo, b=slope))
    return scalar_state_on_lattice(points, pieces)
