"""Exact quantum-group R-matrices, reflection-equation checks and RE fusion."""

from .ring import LAMBDA, ONE, Q, QINV, ZERO, Scalar
from .tensor import Mat, column_space_basis, embed, invert, kron, leg_permute
from .quantum import RepLabel, gl_R, hecke_projectors, s_hat, submodule_intertwiners
from .rekit import (
    REData,
    REMatrix,
    Residual,
    RMatrixFamily,
    appendix_identities,
    check_re_data,
    extend_family,
    fuse,
    gl_family,
    q_solution,
    restrict,
    restrict_data,
    uniform_data,
    verify_compat,
    verify_re,
    verify_ybe,
)
from .braid import braid_residuals, build_cylinder_rep

__version__ = "0.1.0"
