"""Eigenvalues of finite configurations: secular determinant and oracles.

A finite configuration is a row of building blocks (intervals, optionally a
half-line) glued by interface conditions.  In the direct-sum boundary
coordinates every condition is one linear row ``C0 u + C1 v = 0`` where
``u = G0 f`` and ``v = G1 f`` collect the unregularized traces.  A number
``lam`` is an eigenvalue iff a nontrivial combination of per-block defect
elements satisfies all rows, i.e. iff

    det T(lam) = 0,   T(lam) = C0 L0(lam) + C1 L1(lam),

with ``L0, L1`` the trace matrices of the defect basis.  Since
``det L0 = prod_blocks Delta_j`` with ``Delta_j = 2j c k1 cos(d_j k)`` for
intervals, ``det T / prod Delta`` equals the pole-cleared secular function
``det(Theta - M(lam)) * prod cos(d_j k(lam))`` whenever the conditions are
in operator form ``v = Theta u`` -- but ``T`` itself stays finite and real
(up to phase normalization) through the reference eigenvalues, which is
what the scanner evaluates.

Two independent shooting oracles (relativistic 2x2 propagation and scalar
cos/sin propagation) cross-check every secular root; roots inside 1e-6
windows around the reference spectrum are re-adjudicated by the oracle
because the determinant criterion requires ``lam`` in the resolvent set of
the decoupled comparison operator.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .dispersion import gap_edge, k as disp_k, k1 as disp_k1, sqrt_up
from .states import DiracState, inner_product
from .weyl import WeylBlock, block_spectrum, gamma_apply, weyl_eval

__all__ = [
    "RealizationSpec",
    "FiniteConfiguration",
    "SpectrumResult",
    "SecularFunction",
    "assemble",
    "free_two_point",
    "boundary_operator_finite",
    "eigenvalues_secular",
    "transfer_oracle_dirac",
    "transfer_oracle_schrodinger",
    "krein_correction_element",
    "nonrel_harness",
    "schrodinger_counterpart_bcs",
]

INF = math.inf

_BRANCH_CLEARANCE = 1e-9
_POLE_WINDOW = 1e-6
_DEDUP = 1e-9


def worker_count() -> int:
    """Worker cap for window scans; honours the GSD_THREADS variable."""
    raw = os.environ.get("GSD_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        n = os.cpu_count() or 1
    return n


@dataclass(frozen=True)
class RealizationSpec:
    """Point-interaction realization on a finite interval or half-line.

    ``points`` lists ``x_0 = a`` through the last lattice point; a finite
    interval additionally carries the right endpoint as its final entry,
    so ``len(points) == len(strengths) + 2`` (``+ 1`` with ``halfline``).
    Strengths may be ``+inf`` (Dirichlet-type decoupling).
    """

    c: float
    points: Tuple[float, ...]
    strengths: Tuple[float, ...]
    kind: str = "delta"  # delta | delta_prime
    left_bc: str = "f2_zero"  # f2_zero | f1_zero
    right_bc: Optional[str] = "f1_zero"  # f1_zero | f2_zero | None (half-line)
    halfline: bool = False

    def __post_init__(self):
        if self.c <= 0.0:
            raise ValueError("c must be positive")
        if self.kind not in ("delta", "delta_prime"):
            raise ValueError("kind must be delta or delta_prime")
        if self.left_bc not in ("f2_zero", "f1_zero"):
            raise ValueError("bad left boundary condition")
        expected = len(self.strengths) + (1 if self.halfline else 2)
        if len(self.points) != expected:
            raise ValueError("points/strengths lengths are inconsistent")
        if any(b >= a for a, b in zip(self.points[1:], self.points[:-1])):
            raise ValueError("points must be strictly increasing")
        if self.halfline:
            if self.right_bc is not None:
                raise ValueError("half-line specs carry no right condition")
        elif self.right_bc not in ("f1_zero", "f2_zero"):
            raise ValueError("bad right boundary condition")

    @property
    def n_points(self) -> int:
        return len(self.strengths)

    def interaction_points(self) -> Tuple[float, ...]:
        return self.points[1 : 1 + self.n_points]


@dataclass(frozen=True)
class FiniteConfiguration:
    """Blocks plus interface rows ``C0 u + C1 v = 0``."""

    c: float
    blocks: Tuple[WeylBlock, ...]
    C0: np.ndarray
    C1: np.ndarray
    theta: Optional[np.ndarray]  # boundary operator when rows are v = Theta u

    @property
    def dim(self) -> int:
        return int(self.C0.shape[0])


@dataclass
class SpectrumResult:
    eigenvalues: np.ndarray
    method: str
    residuals: np.ndarray
    excluded_windows: List[Tuple[float, float]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# assembling interface conditions
# ---------------------------------------------------------------------------


def _interval_blocks(spec: RealizationSpec) -> List[WeylBlock]:
    blocks = []
    for lo, hi in zip(spec.points[:-1], spec.points[1:]):
        blocks.append(WeylBlock("dirac_interval", c=spec.c, d=hi - lo, left=lo))
    if spec.halfline:
        blocks.append(WeylBlock("dirac_halfline_right", c=spec.c,
                                left=spec.points[-1]))
    return blocks


def _coordinate_layout(blocks: Sequence[WeylBlock]):
    """u/v coordinate offsets per block."""
    offsets, dim = [], 0
    for b in blocks:
        offsets.append(dim)
        dim += b.dim()
    return offsets, dim


def assemble(spec: RealizationSpec) -> FiniteConfiguration:
    """Interface rows of the realization in direct-sum coordinates.

    Row bookkeeping (interval block j spans coordinates 2j, 2j+1):
    ``u_{2j} = f1`` at the block's left end, ``u_{2j+1} = 1j*c*f2`` at its
    right end, and ``v`` swaps the roles.  Jump rows follow the interaction
    kind; ``+inf`` strengths replace them by the Dirichlet pair.
    """
    blocks = _interval_blocks(spec)
    offsets, dim = _coordinate_layout(blocks)
    C0 = np.zeros((dim, dim))
    C1 = np.zeros((dim, dim))
    rows = []  # (c0_row, c1_row) builder

    def row() -> Tuple[np.ndarray, np.ndarray]:
        r0, r1 = np.zeros(dim), np.zeros(dim)
        rows.append((r0, r1))
        return r0, r1

    # left endpoint
    r0, r1 = row()
    if spec.left_bc == "f2_zero":
        r1[0] = 1.0  # v_0 = 1j*c*f2(a+) = 0
    else:
        r0[0] = 1.0  # u_0 = f1(a+) = 0

    # interaction points x_k couple block k-1 (right traces) and block k
    for knum, strength in enumerate(spec.strengths, start=1):
        jl = offsets[knum - 1]
        jr = offsets[knum]
        iu_left, iv_left = jl + 1, jl + 1  # u_{.}=1j c f2(x_k-), v_{.}=f1(x_k-)
        iu_right, iv_right = jr, jr  # u_{.}=f1(x_k+), v_{.}=1j c f2(x_k+)
        if spec.kind == "delta":
            if math.isinf(strength):
                r0, r1 = row()
                r1[iv_left] = 1.0  # f1(x_k-) = 0
                r0b, _ = row()
                r0b[iu_right] = 1.0  # f1(x_k+) = 0
            else:
                r0, r1 = row()  # continuity of f1
                r1[iv_left] = 1.0
                r0[iu_right] = -1.0
                r0, r1 = row()  # f2 jump: v_right = u_left + alpha*u_right
                r1[iv_right] = 1.0
                r0[iu_left] = -1.0
                r0[iu_right] = -strength
        else:
            if math.isinf(strength):
                r0, r1 = row()
                r0[iu_left] = 1.0  # f2(x_k-) = 0
                _, r1b = row()
                r1b[iv_right] = 1.0  # f2(x_k+) = 0
            else:
                r0, r1 = row()  # continuity of f2
                r1[iv_right] = 1.0
                r0[iu_left] = -1.0
                r0, r1 = row()  # f1 jump: v_left = u_right - beta*u_left
                r1[iv_left] = 1.0
                r0[iu_right] = -1.0
                r0[iu_left] = strength

    # right end
    if not spec.halfline:
        last = offsets[-1] + 1
        r0, r1 = row()
        if spec.right_bc == "f1_zero":
            r1[last] = 1.0  # v_last = f1(b-) = 0
        else:
            r0[last] = 1.0  # u_last = 1j*c*f2(b-) = 0

    assert len(rows) == dim, (len(rows), dim)
    for i, (r0, r1) in enumerate(rows):
        C0[i], C1[i] = r0, r1

    theta = None
    if _rows_are_operator_form(C1):
        # v = Theta u with Theta = -P C0 where P reorders rows to C1 = I
        perm = np.argmax(C1, axis=1)
        theta = np.zeros((dim, dim))
        for i in range(dim):
            theta[perm[i]] = -C0[i]
    return FiniteConfiguration(c=spec.c, blocks=tuple(blocks), C0=C0, C1=C1,
                               theta=theta)


def _rows_are_operator_form(C1: np.ndarray) -> bool:
    # every row has exactly one unit entry in C1, and the rows cover all
    # coordinates: then the conditions read v = Theta u
    if not np.all(np.isin(C1, (0.0, 1.0))):
        return False
    if not np.all(C1.sum(axis=1) == 1.0):
        return False
    return bool(np.all(C1.sum(axis=0) == 1.0))


def free_two_point(a: float, b: float, c: float) -> FiniteConfiguration:
    """Whole-line free operator split at ``{a, b}``: half-line + interval +
    half-line blocks glued by pure continuity; the boundary operator is the
    c-independent permutation ``sigma_1 (+) sigma_1``."""
    if not b > a:
        raise ValueError("need a < b")
    blocks = (
        WeylBlock("dirac_halfline_left", c=c, left=a),
        WeylBlock("dirac_interval", c=c, d=b - a, left=a),
        WeylBlock("dirac_halfline_right", c=c, left=b),
    )
    theta = np.array([
        [0.0, 1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
    C0, C1 = -theta, np.eye(4)
    return FiniteConfiguration(c=c, blocks=blocks, C0=C0, C1=C1, theta=theta)


def boundary_operator_finite(spec: RealizationSpec) -> np.ndarray:
    """Boundary operator ``Theta`` with ``G1 f = Theta G0 f`` when the
    interface rows are in operator form; otherwise the conditions involve
    relations (``f1/f2`` vanishing on the ``G0`` side) and the assembled
    ``(C0, C1)`` pair must be used instead."""
    conf = assemble(spec)
    if conf.theta is None:
        raise ValueError("conditions are a genuine linear relation; "
                         "use assemble(spec).C0/C1")
    return conf.theta


# ---------------------------------------------------------------------------
# secular function
# ---------------------------------------------------------------------------


def _sinc(w: complex) -> complex:
    if abs(w) < 1e-6:
        w2 = w * w
        return 1.0 - w2 / 6.0 + w2 * w2 / 120.0
    return cmath.sin(w) / w


class SecularFunction:
    """Pole-cleared determinant ``det(Theta - M(lam)) * prod cos(d_n k)``.

    Evaluated as ``det(C0 L0 + C1 L1) / prod_j eta_j`` where ``eta_j`` is
    the x-independent part of each block's basis determinant; real on
    admissible real ``lam`` for self-adjoint configurations.
    """

    def __init__(self, conf: FiniteConfiguration):
        self.conf = conf

    def _trace_columns(self, lam: float):
        conf = self.conf
        dim = conf.dim
        L0 = np.zeros((dim, dim), dtype=complex)
        L1 = np.zeros((dim, dim), dtype=complex)
        norm = 1.0 + 0.0j
        col = 0
        rowp = 0
        for blk in conf.blocks:
            kz = disp_k(lam, conf.c)
            ick1 = 1j * conf.c * disp_k1(lam, conf.c)
            if blk.is_interval:
                xl, xr = blk.left, blk.right
                em_l, ep_l = cmath.exp(-1j * kz * xl), cmath.exp(1j * kz * xl)
                em_r, ep_r = cmath.exp(-1j * kz * xr), cmath.exp(1j * kz * xr)
                # columns: (w_minus, w_plus); rows: (left trace, right trace)
                L0[rowp, col], L0[rowp, col + 1] = em_l, ep_l
                L0[rowp + 1, col], L0[rowp + 1, col + 1] = -ick1 * em_r, ick1 * ep_r
                L1[rowp, col], L1[rowp, col + 1] = -ick1 * em_l, ick1 * ep_l
                L1[rowp + 1, col], L1[rowp + 1, col + 1] = em_r, ep_r
                norm *= 2.0 * ick1 * cmath.cos(blk.d * kz)
                col += 2
                rowp += 2
            elif blk.kind == "dirac_halfline_right":
                eb = cmath.exp(1j * kz * blk.left)
                L0[rowp, col] = eb
                L1[rowp, col] = ick1 * eb
                norm *= eb
                col += 1
                rowp += 1
            else:  # dirac_halfline_left
                ea = cmath.exp(-1j * kz * blk.left)
                L0[rowp, col] = -ick1 * ea
                L1[rowp, col] = ea
                norm *= -ick1 * ea
                col += 1
                rowp += 1
        return L0, L1, norm

    def value(self, lam: float) -> complex:
        """Secular value; finite through the reference spectrum."""
        L0, L1, norm = self._trace_columns(lam)
        T = self.conf.C0.astype(complex) @ L0 + self.conf.C1.astype(complex) @ L1
        # positive column scaling: keeps the value real up to a positive
        # factor and avoids overflow deep inside the gap
        scale = np.max(np.abs(T), axis=0)
        scale[scale == 0.0] = 1.0
        det = np.linalg.det(T / scale[None, :])
        phase = norm / abs(norm)
        return det / phase

    def real_value(self, lam: float) -> float:
        """Real part; reality is asserted window-wise by the scanner."""
        return self.value(lam).real

    def reality_residual(self, lams: Sequence[float]) -> float:
        """max |Im S| / max |S| over the sample points."""
        vals = [self.value(t) for t in lams]
        scale = max(abs(v) for v in vals) or 1.0
        return max(abs(v.imag) for v in vals) / scale


# ---------------------------------------------------------------------------
# scanning machinery
# ---------------------------------------------------------------------------


def _bisect_root(fn, lo: float, hi: float, flo: float) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 1e-12 * (1.0 + abs(mid)):
            break
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_roots(fn, window: Tuple[float, float], resolution: float):
    """Sign-change scan plus bisection; returns (roots, local_scale)."""
    lo, hi = window
    if not hi > lo:
        raise ValueError("empty window")
    n = max(2, int(math.ceil((hi - lo) / resolution)) + 1)
    grid = np.linspace(lo, hi, n)

    workers = worker_count()
    if workers > 1 and n >= 64:
        chunks = np.array_split(np.arange(n), workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda idx: [fn(grid[i]) for i in idx], chunks))
        vals = np.array([v for part in parts for v in part])
    else:
        vals = np.array([fn(x) for x in grid])

    scale = float(np.max(np.abs(vals))) or 1.0
    roots = []
    for i in range(n - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            roots.append(grid[i])
        elif a * b < 0.0:
            roots.append(_bisect_root(fn, grid[i], grid[i + 1], a))
    if vals[-1] == 0.0:
        roots.append(grid[-1])
    return _dedup(roots), scale


def _dedup(roots: Sequence[float]) -> List[float]:
    out: List[float] = []
    for r in sorted(roots):
        if not out or r - out[-1] > _DEDUP:
            out.append(r)
    return out


def _reference_spectrum(conf: FiniteConfiguration, window: Tuple[float, float]):
    pts: List[float] = []
    for blk in conf.blocks:
        if not blk.is_interval:
            continue
        j_hi = int(abs(window[1] - window[0]) * blk.d / math.pi) + 4
        lam = block_spectrum(blk, j_hi)
        pts.extend(float(t) for t in np.atleast_1d(lam)
                   if window[0] <= t <= window[1])
    return sorted(set(pts))


def _validate_window(conf: FiniteConfiguration, window: Tuple[float, float]):
    e = gap_edge(conf.c)
    for b in (-e, e):
        if window[0] - _BRANCH_CLEARANCE <= b <= window[1] + _BRANCH_CLEARANCE:
            if min(abs(window[0] - b), abs(window[1] - b)) < _BRANCH_CLEARANCE \
               or window[0] < b < window[1]:
                raise ValueError(
                    f"window touches the branch point {b:+g}; split it")
    if any(not blk.is_interval for blk in conf.blocks):
        if window[0] < -e or window[1] > e:
            raise ValueError("half-line configurations admit gap windows only")


def eigenvalues_secular(spec_or_conf, window: Tuple[float, float],
                        resolution: float = 1e-3,
                        oracle_check: bool = True) -> SpectrumResult:
    """Roots of the secular function in the window.

    Roots within 1e-6 of the reference spectrum are re-adjudicated by the
    transfer oracle (the determinant criterion is silent there); the
    windows examined this way are reported in ``excluded_windows``.
    """
    spec = None
    if isinstance(spec_or_conf, RealizationSpec):
        spec = spec_or_conf
        conf = assemble(spec)
    else:
        conf = spec_or_conf
    _validate_window(conf, window)
    sec = SecularFunction(conf)
    roots, scale = _scan_roots(sec.real_value, window, resolution)
    reality = sec.reality_residual(np.linspace(window[0], window[1], 101))
    if reality > 1e-8:
        raise ArithmeticError(
            f"secular function not real on the window (residual {reality:.3g}); "
            "is the configuration self-adjoint?")

    ref = _reference_spectrum(conf, (window[0] - 1.0, window[1] + 1.0))
    kept, residuals, excluded, notes = [], [], [], []
    for r in roots:
        near = [t for t in ref if abs(r - t) < _POLE_WINDOW]
        if near and spec is not None and not spec.halfline and oracle_check:
            w = (r - 10 * _POLE_WINDOW, r + 10 * _POLE_WINDOW)
            oracle = transfer_oracle_dirac(spec, w, resolution=_POLE_WINDOW)
            hit = [t for t in oracle.eigenvalues if abs(t - r) < 1e-8]
            excluded.append((near[0] - _POLE_WINDOW, near[0] + _POLE_WINDOW))
            if not hit:
                notes.append(f"dropped spurious root {r!r} at the reference "
                             "spectrum")
                continue
            notes.append(f"root {r!r} confirmed by the oracle near the "
                         "reference spectrum")
        kept.append(r)
        residuals.append(abs(sec.real_value(r)) / scale)
    return SpectrumResult(eigenvalues=np.array(kept), method="secular",
                          residuals=np.array(residuals),
                          excluded_windows=excluded, notes=notes)


# ---------------------------------------------------------------------------
# transfer-matrix oracles
# ---------------------------------------------------------------------------


def _dirac_propagator(lam: float, c: float, d: float) -> np.ndarray:
    e = gap_edge(c)
    kz = disp_k(lam, c)
    cosd = cmath.cos(kz * d)
    s = d * _sinc(kz * d)  # sin(k d)/k, entire in lam
    return np.array([
        [cosd, 1j * (lam + e) / c * s],
        [1j * (lam - e) / c * s, cosd],
    ], dtype=complex)


def _dirac_jump(kind: str, strength: float, c: float) -> np.ndarray:
    if kind == "delta":
        return np.array([[1.0, 0.0], [-1j * strength / c, 1.0]], dtype=complex)
    return np.array([[1.0, 1j * strength * c], [0.0, 1.0]], dtype=complex)


def _split_at_infinities(spec: RealizationSpec) -> List[RealizationSpec]:
    """Decouple the configuration at ``+inf`` strengths.

    A ``+inf`` delta strength pins ``f1 = 0`` on both sides of the point
    (delta-prime pins ``f2``), so the spectrum is the union over decoupled
    segments with the matching Dirichlet-type conditions.
    """
    pinned_bc = "f1_zero" if spec.kind == "delta" else "f2_zero"
    if not any(math.isinf(s) for s in spec.strengths):
        return [spec]
    segments = []
    start = 0  # index into points
    left_bc = spec.left_bc
    strengths = list(spec.strengths)
    for idx, s in enumerate(strengths, start=1):
        if math.isinf(s):
            pts = spec.points[start : idx + 1]
            segments.append(RealizationSpec(
                c=spec.c, points=tuple(pts),
                strengths=tuple(strengths[start : idx - 1]),
                kind=spec.kind, left_bc=left_bc, right_bc=pinned_bc))
            start = idx
            left_bc = pinned_bc
    pts = spec.points[start:]
    segments.append(RealizationSpec(
        c=spec.c, points=tuple(pts),
        strengths=tuple(strengths[start:]),
        kind=spec.kind, left_bc=left_bc, right_bc=spec.right_bc,
        halfline=spec.halfline))
    return segments


def transfer_oracle_dirac(spec: RealizationSpec, window: Tuple[float, float],
                          resolution: float = 1e-3) -> SpectrumResult:
    """Shooting oracle: exact interval propagation plus jump matrices.

    Starts from the left-condition-compatible vector, propagates the
    first-order system across each interval with the closed-form 2x2
    fundamental matrix, applies ``[[1,0],[-1j a/c,1]]`` (delta) or
    ``[[1,1j b c],[0,1]]`` (delta-prime) at each point and root-finds the
    right boundary functional, which is real after phase splitting
    (``f1`` real and ``f2`` imaginary along real ``lam``).
    """
    if spec.halfline:
        raise ValueError("the shooting oracle needs a finite interval")
    segments = _split_at_infinities(spec)
    all_roots: List[float] = []
    residuals: List[float] = []
    for seg in segments:
        roots, resid = _shoot_segment_dirac(seg, window, resolution)
        all_roots.extend(roots)
        residuals.extend(resid)
    order = np.argsort(all_roots)
    return SpectrumResult(
        eigenvalues=np.array([all_roots[i] for i in order]),
        method="transfer_oracle",
        residuals=np.array([residuals[i] for i in order]),
    )


def _shoot_segment_dirac(seg: RealizationSpec, window, resolution):
    start = np.array([1.0, 0.0], dtype=complex) if seg.left_bc == "f2_zero" \
        else np.array([0.0, 1.0], dtype=complex)

    def functional(lam: float) -> float:
        psi = start
        for j, (lo, hi) in enumerate(zip(seg.points[:-1], seg.points[1:])):
            psi = _dirac_propagator(lam, seg.c, hi - lo) @ psi
            if j < len(seg.strengths):
                psi = _dirac_jump(seg.kind, seg.strengths[j], seg.c) @ psi
        w = psi[0] if seg.right_bc == "f1_zero" else psi[1]
        return float(w.real + w.imag)  # one part vanishes identically

    roots, scale = _scan_roots(functional, window, resolution)
    resid = [abs(functional(r)) / scale for r in roots]
    return roots, resid


def _schrodinger_propagator(lam: float, d: float) -> np.ndarray:
    s = sqrt_up(lam)
    cosd = cmath.cos(s * d)
    sn = d * _sinc(s * d)  # sin(s d)/s
    return np.array([[cosd, sn], [-lam * sn, cosd]], dtype=complex)


def schrodinger_counterpart_bcs(bc: str) -> str:
    """Boundary-condition mapping of the non-relativistic limit:
    ``f2 = 0`` becomes a Neumann condition, ``f1 = 0`` a Dirichlet one."""
    return {"f2_zero": "neumann", "f1_zero": "dirichlet"}[bc]


def transfer_oracle_schrodinger(spec: RealizationSpec,
                                window: Tuple[float, float],
                                resolution: float = 1e-3) -> SpectrumResult:
    """Scalar shooting oracle for the non-relativistic counterpart.

    Same lattice and strengths; conditions are mapped by
    :func:`schrodinger_counterpart_bcs` and the jumps are
    ``f'(x+)-f'(x-) = a f(x)`` (delta) or ``f(x+)-f(x-) = b f'(x)``
    (delta-prime).
    """
    if spec.halfline:
        raise ValueError("the shooting oracle needs a finite interval")
    segments = _split_at_infinities(spec)
    all_roots: List[float] = []
    residuals: List[float] = []
    for seg in segments:
        left = schrodinger_counterpart_bcs(seg.left_bc)
        right = schrodinger_counterpart_bcs(seg.right_bc)
        start = np.array([1.0, 0.0]) if left == "neumann" \
            else np.array([0.0, 1.0])

        def functional(lam: float, seg=seg, start=start, right=right) -> float:
            psi = start.astype(complex)
            for j, (lo, hi) in enumerate(zip(seg.points[:-1], seg.points[1:])):
                psi = _schrodinger_propagator(lam, hi - lo) @ psi
                if j < len(seg.strengths):
                    s = seg.strengths[j]
                    if seg.kind == "delta":
                        psi = np.array([[1.0, 0.0], [s, 1.0]]) @ psi
                    else:
                        psi = np.array([[1.0, s], [0.0, 1.0]]) @ psi
            w = psi[0] if right == "dirichlet" else psi[1]
            return float(w.real + w.imag)

        roots, scale = _scan_roots(functional, window, resolution)
        all_roots.extend(roots)
        residuals.extend(abs(functional(r)) / scale for r in roots)
    order = np.argsort(all_roots)
    return SpectrumResult(
        eigenvalues=np.array([all_roots[i] for i in order]),
        method="transfer_oracle_schrodinger",
        residuals=np.array([residuals[i] for i in order]),
    )


# ---------------------------------------------------------------------------
# Krein correction term
# ---------------------------------------------------------------------------


def _gamma_column(conf: FiniteConfiguration, z: complex, index: int) -> Tuple[int, DiracState]:
    """Block-local gamma column for global coordinate ``index``."""
    offsets, _ = _coordinate_layout(conf.blocks)
    for j, blk in enumerate(conf.blocks):
        off = offsets[j]
        if off <= index < off + blk.dim():
            local = index - off
            v = np.zeros(blk.dim())
            v[local] = 1.0
            return j, gamma_apply(blk, z, v if blk.dim() == 2 else v[0])
    raise IndexError(index)


def _restrict_to_block(state: DiracState, j: int) -> DiracState:
    return DiracState(state.c, [state.segments[j]])


def krein_correction_element(spec_or_conf, z: complex, u: DiracState,
                             v: DiracState) -> complex:
    """Matrix element ``<gamma(z) (Theta - M(z))^{-1} gamma(conj z)* u, v>``.

    The correction term of the resolvent difference between the
    realization and the decoupled comparison operator; adjoints are
    evaluated through exact inner products against the gamma columns.
    Raises when ``Theta - M(z)`` is singular (``z`` is then an eigenvalue
    candidate); the condition number is attached to the error message.
    """
    conf = assemble(spec_or_conf) if isinstance(spec_or_conf, RealizationSpec) \
        else spec_or_conf
    if conf.theta is None:
        raise ValueError("correction element needs operator-form conditions")
    if complex(z).imag == 0.0:
        raise ValueError("z must lie off the real axis")
    dim = conf.dim
    M = np.zeros((dim, dim), dtype=complex)
    offsets, _ = _coordinate_layout(conf.blocks)
    for j, blk in enumerate(conf.blocks):
        off = offsets[j]
        Mb = weyl_eval(blk, z)
        M[off : off + blk.dim(), off : off + blk.dim()] = Mb
    A = conf.theta.astype(complex) - M
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > 1e14:
        raise ArithmeticError(
            f"Theta - M(z) numerically singular at z={z} (cond={cond:.3g}); "
            "z is an eigenvalue candidate")

    zbar = complex(z).conjugate()
    rhs = np.zeros(dim, dtype=complex)
    for i in range(dim):
        j, col = _gamma_column(conf, zbar, i)
        rhs[i] = inner_product(_restrict_to_block(u, j), col)
    w = np.linalg.solve(A, rhs)
    total = 0.0 + 0.0j
    for i in range(dim):
        j, col = _gamma_column(conf, z, i)
        total += w[i] * inner_product(col, _restrict_to_block(v, j))
    return complex(total)


# ---------------------------------------------------------------------------
# non-relativistic limit harness
# ---------------------------------------------------------------------------


def _with_c(spec: RealizationSpec, c: float) -> RealizationSpec:
    return RealizationSpec(c=c, points=spec.points, strengths=spec.strengths,
                           kind=spec.kind, left_bc=spec.left_bc,
                           right_bc=spec.right_bc, halfline=spec.halfline)


def nonrel_harness(spec: RealizationSpec, c_list: Sequence[float],
                   z: complex = 1j, n_eigenvalues: int = 2,
                   window_margin: float = 2.0,
                   resolution: float = 1e-3) -> dict:
    """Convergence table for the velocity-of-light limit.

    For each ``c``: the maximal regularized Weyl-block error
    ``|M_{n,c}(z + c^2/2) - M_{n,H}(z)|`` over interval blocks (plus the
    half-line blocks through the momentum limit) and the per-index
    eigenvalue errors ``|lambda_j(c) - c^2/2 - mu_j|`` against the scalar
    oracle targets ``mu_j``.  Flags monotone decrease and the empirical
    order in 1/c.
    """
    if spec.halfline:
        raise ValueError("harness needs a finite configuration")
    zz = complex(z)

    # scalar targets
    lo = 0.0
    mu_window = None
    for attempt in range(8):
        hi = (n_eigenvalues + 2 + 3 * attempt) ** 2 * 12.0 / \
            (spec.points[-1] - spec.points[0]) ** 2 + window_margin
        res = transfer_oracle_schrodinger(spec, (lo - window_margin, hi),
                                          resolution)
        if len(res.eigenvalues) >= n_eigenvalues:
            mu = res.eigenvalues[:n_eigenvalues]
            mu_window = (float(mu[0]) - window_margin,
                         float(mu[-1]) + window_margin)
            break
    else:
        raise RuntimeError("could not bracket the scalar targets")

    rows = []
    for c in c_list:
        spec_c = _with_c(spec, c)
        shift = gap_edge(c)
        weyl_err = 0.0
        for lo_pt, hi_pt in zip(spec.points[:-1], spec.points[1:]):
            d = hi_pt - lo_pt
            bD = WeylBlock("dirac_interval", c=c, d=d, left=lo_pt, regularized=True)
            bH = WeylBlock("schrodinger_interval", d=d, left=lo_pt, regularized=True)
            weyl_err = max(weyl_err, float(np.max(np.abs(
                weyl_eval(bD, zz + shift) - weyl_eval(bH, zz)))))
        dir_res = transfer_oracle_dirac(
            spec_c, (shift + mu_window[0], shift + mu_window[1]), resolution)
        lam = dir_res.eigenvalues[:n_eigenvalues]
        eig_err = [abs(lam[j] - shift - mu[j]) if j < len(lam) else math.nan
                   for j in range(n_eigenvalues)]
        rows.append({"c": float(c), "weyl_error": weyl_err,
                     "eigenvalue_errors": eig_err})

    weyl_seq = [r["weyl_error"] for r in rows]
    monotone = all(b < a for a, b in zip(weyl_seq, weyl_seq[1:]))
    orders = []
    for (r1, r2) in zip(rows, rows[1:]):
        if r1["weyl_error"] > 0 and r2["weyl_error"] > 0:
            orders.append(math.log(r1["weyl_error"] / r2["weyl_error"])
                          / math.log(r2["c"] / r1["c"]))
    return {
        "z": zz,
        "targets": [float(t) for t in mu],
        "rows": rows,
        "weyl_monotone_decreasing": monotone,
        "estimated_order": float(np.mean(orders)) if orders else math.nan,
    }
