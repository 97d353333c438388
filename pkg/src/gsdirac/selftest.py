"""Built-in invariant battery behind ``gsdirac selftest``.

A quick structural pass over the library's contracts (branch symmetry,
Green identity, Weyl identities, Jacobi factorization, secular-vs-oracle
agreement); the full property suite lives in the pytest tree.
"""

from __future__ import annotations

import math

import numpy as np

from .dispersion import k
from .jacobi import build, eigenvalues_truncated, factorization_residual
from .krein import RealizationSpec, eigenvalues_secular, transfer_oracle_dirac
from .model import SequenceRule, StrengthSeq, build_lattice
from .states import defect_state, green_residual
from .weyl import WeylBlock, gamma_apply, weyl_eval
from .states import boundary_map, inner_product


def _check_branch(rng) -> float:
    worst = 0.0
    for _ in range(50):
        z = complex(rng.normal(), rng.normal() + 0.2)
        worst = max(worst, abs(k(np.conj(z), 1.0) + np.conj(k(z, 1.0))))
    return worst


def _check_green(rng) -> float:
    worst = 0.0
    for _ in range(10):
        z1 = complex(rng.normal(), abs(rng.normal()) + 0.5)
        z2 = complex(rng.normal(), abs(rng.normal()) + 0.5)
        f = defect_state(("interval", 0.0, 1.0), z1,
                         (rng.normal() + 1j * rng.normal(),
                          rng.normal() + 1j * rng.normal()), 1.0)
        g = defect_state(("interval", 0.0, 1.0), z2,
                         (rng.normal() + 1j * rng.normal(),
                          rng.normal() + 1j * rng.normal()), 1.0)
        for flavor in ("tilde", "regularized"):
            worst = max(worst, green_residual(f, g, flavor))
    return worst


def _check_weyl(rng) -> float:
    blk = WeylBlock("dirac_interval", c=1.0, d=0.7, left=0.0)
    worst = 0.0
    for _ in range(10):
        z = complex(rng.normal(), abs(rng.normal()) + 0.3)
        zeta = complex(rng.normal(), abs(rng.normal()) + 0.3)
        G = np.zeros((2, 2), dtype=complex)
        gz = [gamma_apply(blk, z, np.eye(2)[:, j]) for j in range(2)]
        gzeta = [gamma_apply(blk, zeta, np.eye(2)[:, j]) for j in range(2)]
        for i in range(2):
            for j in range(2):
                G[i, j] = inner_product(gz[j], gzeta[i])
        lhs = weyl_eval(blk, z) - weyl_eval(blk, zeta).conj().T
        worst = max(worst, float(np.max(np.abs(lhs - (z - np.conj(zeta)) * G))))
    return worst


def _check_jacobi() -> float:
    lat = build_lattice(0.0, SequenceRule.geometric(0.5, 0.5), math.inf, right=1.0)
    alpha = StrengthSeq(SequenceRule.power(1.0, 2.0), "alpha")
    worst = 0.0
    for flavor, c in (("alpha_dirac", 1.0), ("alpha_schrodinger", 1.0)):
        op = build(flavor, lat, alpha, c)
        worst = max(worst, factorization_residual(op, lat, alpha, c, 30))
    return worst


def _check_secular() -> float:
    spec = RealizationSpec(c=1.0, points=(0.0, 0.8, 2.0), strengths=(1.3,),
                           kind="delta")
    sec = eigenvalues_secular(spec, (0.51, 6.0), 1e-2)
    orc = transfer_oracle_dirac(spec, (0.51, 6.0), 1e-2)
    if len(sec.eigenvalues) != len(orc.eigenvalues):
        return math.inf
    return float(np.max(np.abs(sec.eigenvalues - orc.eigenvalues)))


def _check_sturm() -> float:
    lat = build_lattice(0.0, SequenceRule.power(1.0, 1.0), math.inf)
    op = build("alpha_dirac", lat, StrengthSeq(SequenceRule.constant(1.0), "alpha"), 1.0)
    lam = eigenvalues_truncated(op, 60)
    dense = np.linalg.eigvalsh(op.dense(60))
    return float(np.max(np.abs(lam - dense)))


def run_selftest():
    """Run the battery; returns (report text, all passed)."""
    rng = np.random.default_rng(20240817)
    checks = [
        ("branch symmetry k(conj z) = -conj k(z)", _check_branch(rng), 1e-13),
        ("Green identity residual", _check_green(rng), 1e-10),
        ("Weyl Nevanlinna identity", _check_weyl(rng), 1e-9),
        ("Jacobi factorization residual", _check_jacobi(), 1e-12),
        ("secular vs transfer oracle", _check_secular(), 1e-8),
        ("Sturm eigensolver vs dense reference", _check_sturm(), 1e-9),
    ]
    lines = []
    ok = True
    for name, value, tol in checks:
        passed = value <= tol
        ok = ok and passed
        lines.append(f"[{'PASS' if passed else 'FAIL'}] {name}: "
                     f"{value:.3e} (tol {tol:.0e})")
    lines.append(f"selftest: {'all checks passed' if ok else 'FAILURES present'}")
    return "\n".join(lines) + "\n", ok
