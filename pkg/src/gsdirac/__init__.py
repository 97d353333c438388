"""Spectral analysis of 1-D Dirac operators with point interactions.

Construction, classification and numerical solution of delta and
delta-prime realizations on lattices: Weyl functions and gamma-fields of
the building blocks, boundary Jacobi matrices with a Sturm-bisection
eigensolver, series-based self-adjointness/discreteness/spectral-type
classifiers, secular-determinant eigenvalue computation cross-checked by
transfer-matrix oracles, and the non-relativistic limit harness.
"""

__version__ = "0.1.0"

from .model import (  # noqa: F401
    Lattice,
    ModelConfig,
    SequenceRule,
    StrengthSeq,
    beta_to_alpha,
    build_lattice,
)
from .dispersion import k, k1, nu, sqrt_up  # noqa: F401
from .weyl import WeylBlock, block_spectrum, gamma_apply, weyl_eval  # noqa: F401
from .jacobi import (  # noqa: F401
    KERNEL_IMPLEMENTATION,
    TridiagonalOperator,
    eigenvalues_truncated,
)
from .classify import ClassificationReport, classify_all  # noqa: F401
from .krein import (  # noqa: F401
    RealizationSpec,
    eigenvalues_secular,
    nonrel_harness,
    transfer_oracle_dirac,
    transfer_oracle_schrodinger,
)
