"""Concrete quasitriangular data for U_q(gl(n)) in its vector representation."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotHeckeError, ShapeError
from .ring import LAMBDA, ONE, Q, QINV
from .tensor import Mat, column_space_basis, flip


@dataclass(frozen=True)
class RepLabel:
    id: str
    dim: int

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValueError("representation id must be a non-empty string")
        if int(self.dim) < 1:
            raise ShapeError(f"representation dimension must be positive, got {self.dim}")


def gl_R(n: int) -> Mat:
    """Fundamental R-matrix of U_q(gl(n)) on legs ``[n, n]``.

    R = q sum E_ii(x)E_ii + sum_{i!=j} E_ii(x)E_jj + (q - 1/q) sum_{i<j} E_ij(x)E_ji
    """
    if not isinstance(n, int) or n < 2:
        raise ShapeError(f"gl_R needs n >= 2, got {n!r}")
    entries = {}
    for i in range(n):
        for j in range(n):
            a = i * n + j
            entries[(a, a)] = Q if i == j else ONE
            if i < j:
                entries[(a, j * n + i)] = LAMBDA
    return Mat.from_sparse(entries, (n, n))


@dataclass(frozen=True)
class BraidOp:
    s_hat: Mat

    @property
    def dim(self) -> int:
        return self.s_hat.row_legs[0]

    def hecke_residual(self) -> Mat:
        """(S - q)(S + 1/q); zero for Hecke-type R-matrices."""
        n = self.s_hat.nrows
        eye = Mat.identity(self.s_hat.row_legs)
        return (self.s_hat - eye.scale(Q)) @ (self.s_hat + eye.scale(QINV))

    def is_hecke(self) -> bool:
        return self.hecke_residual().is_zero()


def s_hat(R: Mat) -> BraidOp:
    """Braid operator P R with P the flip."""
    legs = R.row_legs
    if len(legs) != 2 or legs[0] != legs[1] or R.col_legs != legs:
        raise ShapeError(f"s_hat needs R on two equal legs, got {legs}")
    return BraidOp(flip(legs[0]) @ R)


def hecke_projectors(S: BraidOp) -> tuple[Mat, Mat]:
    """q-symmetrizer and q-antisymmetrizer from a Hecke braid operator."""
    if not S.is_hecke():
        raise NotHeckeError()
    eye = Mat.identity(S.s_hat.row_legs)
    norm = (Q + QINV).inverse()
    p_plus = (S.s_hat + eye.scale(QINV)).scale(norm)
    p_minus = (eye.scale(Q) - S.s_hat).scale(norm)
    return p_plus, p_minus


def submodule_intertwiners(p: Mat) -> tuple[Mat, Mat]:
    """Injection ``iota`` and projection ``pi`` for the image of ``p``."""
    return column_space_basis(p)
