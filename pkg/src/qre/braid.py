"""Braid group of n strands with one boundary line (type-B braids), represented
on ``V^{(x)n} (x) W`` through an R-matrix and an RE matrix.

The boundary generator tau acts on the last strand leg and the coefficient leg.
Extra tau matrices (already on the full legs) may be supplied to check the mixed
relations of several boundary lines; nothing here constructs them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeError
from .quantum import s_hat
from .rekit import REMatrix, Residual, residual
from .tensor import Mat, embed, invert


@dataclass(frozen=True)
class CylinderRep:
    n: int
    sigma: tuple[Mat, ...]
    tau: Mat
    extra_taus: tuple[Mat, ...] = ()

    @property
    def taus(self) -> tuple[Mat, ...]:
        return (self.tau,) + tuple(self.extra_taus)


def build_cylinder_rep(R: Mat, K: REMatrix, n: int, extra_taus=()) -> CylinderRep:
    if n < 2:
        raise ShapeError(f"need at least 2 strands, got {n}")
    S = s_hat(R).s_hat
    d = S.row_legs[0]
    if K.dim != d:
        raise ShapeError(f"K has dim {K.dim}, R acts on dim {d}")
    shape = (d,) * n + (K.coeff_dim,)
    sigma = tuple(embed(S, [i, i + 1], shape) for i in range(1, n))
    tau = embed(K.k, [n, n + 1], shape)
    extra = []
    for t in extra_taus:
        if t.shape != tau.shape:
            raise ShapeError(f"extra tau has shape {t.shape}, expected {tau.shape}")
        extra.append(t.with_legs(shape))
    return CylinderRep(n, sigma, tau, tuple(extra))


def braid_residuals(rep: CylinderRep) -> list[Residual]:
    out = []
    s = rep.sigma
    n = rep.n
    for i in range(n - 2):
        a, b = s[i], s[i + 1]
        out.append(residual(a @ b @ a, b @ a @ b, f"s{i+1} s{i+2} s{i+1} = s{i+2} s{i+1} s{i+2}"))
    for i in range(n - 1):
        for j in range(i + 2, n - 1):
            out.append(residual(s[i] @ s[j], s[j] @ s[i], f"s{i+1} s{j+1} = s{j+1} s{i+1}"))
    last = s[n - 2]
    taus = rep.taus
    for k, t in enumerate(taus, start=1):
        for i in range(n - 2):
            out.append(residual(t @ s[i], s[i] @ t, f"t{k} s{i+1} = s{i+1} t{k}"))
        out.append(tau_relation(rep, k))
    if len(taus) > 1:
        last_inv = invert(last)
        for k in range(len(taus)):
            for l in range(k):
                tk, tl = taus[k], taus[l]
                out.append(
                    residual(
                        last_inv @ tk @ last @ tl,
                        tl @ last_inv @ tk @ last,
                        f"s{n-1}^-1 t{k+1} s{n-1} t{l+1} = t{l+1} s{n-1}^-1 t{k+1} s{n-1}",
                    )
                )
    return out


def tau_relation(rep: CylinderRep, k: int = 1) -> Residual:
    """The four-term reflection relation for boundary generator ``k`` (1-based)."""
    n = rep.n
    last = rep.sigma[n - 2]
    t = rep.taus[k - 1]
    return residual(
        last @ t @ last @ t,
        t @ last @ t @ last,
        f"s{n-1} t{k} s{n-1} t{k} = t{k} s{n-1} t{k} s{n-1}",
    )
