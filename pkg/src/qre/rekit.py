"""Reflection-equation toolkit: verification, RE data, fusion and restriction.

Conventions
-----------
* An RE matrix ``K`` lives on legs ``(rep, coeff)``; the coefficient algebra is
  the full matrix algebra of size ``coeff_dim``.  In every multi-leg identity the
  single coefficient leg comes last, R-matrices never touch it, and all K's
  share it (so their coefficients multiply in the algebra).
* ``R^{i,j}`` acts on ``V_i (x) V_j``.  ``R^{j,i}_{21}`` means ``R^{j,i}`` placed on
  legs (2, 1), i.e. ``embed(R^{j,i}, [2, 1], ...)``.
* Fused labels are ``"i*j"`` with parentheses around compound operands, so
  ``(f*f)*f`` and ``f*(f*f)`` are distinct labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Mapping

from .errors import MissingPairError, NotIntertwinerError, ShapeError
from .quantum import RepLabel, gl_R
from .ring import Scalar
from .tensor import Mat, column_space_basis, embed, invert, kron


@dataclass(frozen=True)
class Residual:
    """Outcome of an exact identity check.

    ``witness`` is the first nonzero entry of LHS - RHS in row-major order,
    as 1-based ``(row, col, value)``.
    """

    ok: bool
    witness: tuple[int, int, Scalar] | None = None
    name: str = ""
    diff: Mat | None = field(default=None, repr=False, compare=False)

    def cross_check(self, q0) -> bool | None:
        """Numeric verdict at ``q0`` (entries with a pole there are skipped).

        Returns ``None`` when no difference matrix was recorded.
        """
        if self.diff is None:
            return None
        from .errors import EvaluationPole

        for row in self.diff.nonzeros():
            for _, v in row:
                try:
                    if v.eval(q0) != 0:
                        return False
                except EvaluationPole:
                    continue
        return True

    def __bool__(self):
        return self.ok


def residual(lhs: Mat, rhs: Mat, name: str = "") -> Residual:
    diff = lhs - rhs
    for i, row in enumerate(diff.nonzeros()):
        if row:
            j, v = row[0]
            return Residual(False, (i + 1, j + 1, v), name, diff)
    return Residual(True, None, name, diff)


def first_failure(residuals, name=""):
    for r in residuals:
        if not r.ok:
            return r
    return Residual(True, None, name)


def fused_label(i: str, j: str) -> str:
    wrap = lambda s: f"({s})" if "*" in s else s
    return f"{wrap(i)}*{wrap(j)}"


# ---------------------------------------------------------------------------
# families and RE matrices


@dataclass(frozen=True)
class RMatrixFamily:
    reps: tuple[RepLabel, ...]
    r: Mapping[tuple[str, str], Mat]

    def __post_init__(self):
        ids = [rep.id for rep in self.reps]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate representation ids in {ids}")
        dims = {rep.id: rep.dim for rep in self.reps}
        for (i, j), m in self.r.items():
            if i not in dims or j not in dims:
                raise MissingPairError(f"R-matrix for unknown pair ({i}, {j})")
            if m.shape != (dims[i] * dims[j],) * 2:
                raise ShapeError(f"R^{{{i},{j}}} has shape {m.shape}")
        object.__setattr__(self, "r", dict(self.r))

    @property
    def ids(self) -> list[str]:
        return [rep.id for rep in self.reps]

    def dim(self, i: str) -> int:
        for rep in self.reps:
            if rep.id == i:
                return rep.dim
        raise MissingPairError(f"unknown representation {i!r}")

    def __contains__(self, i):
        return any(rep.id == i for rep in self.reps)

    def R(self, i: str, j: str) -> Mat:
        try:
            m = self.r[(i, j)]
        except KeyError:
            raise MissingPairError(f"missing R-matrix for pair ({i}, {j})") from None
        return m.with_legs((self.dim(i), self.dim(j)))

    def with_rep(self, rep: RepLabel, new_r: Mapping) -> "RMatrixFamily":
        r = dict(self.r)
        r.update(new_r)
        return RMatrixFamily(self.reps + (rep,), r)

    def alias(self, i: str, new_id: str) -> "RMatrixFamily":
        """Copy representation ``i`` under a second label with identical R-matrices."""
        if new_id in self:
            raise ValueError(f"label {new_id!r} already present")
        new_r = {}
        for k in self.ids:
            if (i, k) in self.r:
                new_r[(new_id, k)] = self.r[(i, k)]
            if (k, i) in self.r:
                new_r[(k, new_id)] = self.r[(k, i)]
        if (i, i) in self.r:
            new_r[(new_id, new_id)] = self.r[(i, i)]
        return self.with_rep(RepLabel(new_id, self.dim(i)), new_r)


def gl_family(n: int, labels=("f",)) -> RMatrixFamily:
    """Family whose labels are all copies of the gl(n) vector representation."""
    R = gl_R(n)
    reps = tuple(RepLabel(lab, n) for lab in labels)
    return RMatrixFamily(reps, {(a, b): R for a in labels for b in labels})


def family_from_R(R: Mat, label: str = "f") -> RMatrixFamily:
    d = R.row_legs[0] if len(R.row_legs) == 2 else None
    if d is None or R.row_legs != (d, d) or R.col_legs != (d, d):
        raise ShapeError(f"R must live on two equal legs, got {R.row_legs}x{R.col_legs}")
    return RMatrixFamily((RepLabel(label, d),), {(label, label): R})


@dataclass(frozen=True)
class REMatrix:
    rep: str
    coeff_dim: int
    k: Mat

    def __post_init__(self):
        if self.coeff_dim < 1:
            raise ShapeError("coeff_dim must be positive")
        if self.k.nrows != self.k.ncols or self.k.nrows % self.coeff_dim:
            raise ShapeError(f"K of shape {self.k.shape} incompatible with coeff_dim {self.coeff_dim}")
        d = self.k.nrows // self.coeff_dim
        object.__setattr__(self, "k", self.k.with_legs((d, self.coeff_dim)))

    @property
    def dim(self) -> int:
        return self.k.row_legs[0]

    @classmethod
    def scalar(cls, rep: str, m: Mat) -> "REMatrix":
        """Wrap a numeric (coeff_dim 1) solution."""
        return cls(rep, 1, m)


@dataclass(frozen=True)
class REData:
    family: RMatrixFamily
    triples: Mapping[str, REMatrix]
    coeff_dim: int = 0

    def __post_init__(self):
        dims = {k.coeff_dim for k in self.triples.values()}
        if len(dims) > 1:
            raise ShapeError(f"coefficient dimensions differ across triples: {sorted(dims)}")
        cd = dims.pop() if dims else (self.coeff_dim or 1)
        if self.coeff_dim and self.coeff_dim != cd:
            raise ShapeError(f"coeff_dim {self.coeff_dim} does not match triples ({cd})")
        object.__setattr__(self, "coeff_dim", cd)
        object.__setattr__(self, "triples", dict(self.triples))
        for rep, K in self.triples.items():
            if K.rep != rep:
                raise ValueError(f"triple keyed {rep!r} holds K for {K.rep!r}")
            if K.dim != self.family.dim(rep):
                raise ShapeError(f"K for {rep!r} has dim {K.dim}, rep has {self.family.dim(rep)}")

    def K(self, i: str) -> REMatrix:
        try:
            return self.triples[i]
        except KeyError:
            raise MissingPairError(f"no K-matrix for representation {i!r}") from None

    def with_triple(self, K: REMatrix, family: RMatrixFamily | None = None) -> "REData":
        t = dict(self.triples)
        t[K.rep] = K
        return REData(family or self.family, t)


def uniform_data(fam: RMatrixFamily, K: Mat | REMatrix, labels=None) -> REData:
    """Same K on every listed label (all labels by default)."""
    labels = fam.ids if labels is None else list(labels)
    if isinstance(K, REMatrix):
        cd, m = K.coeff_dim, K.k
    else:
        cd, m = 1, K
    return REData(fam, {lab: REMatrix(lab, cd, m) for lab in labels})


# ---------------------------------------------------------------------------
# identities


def verify_ybe(fam: RMatrixFamily, i: str, j: str, k: str) -> Residual:
    shape = (fam.dim(i), fam.dim(j), fam.dim(k))
    R12 = embed(fam.R(i, j), [1, 2], shape)
    R13 = embed(fam.R(i, k), [1, 3], shape)
    R23 = embed(fam.R(j, k), [2, 3], shape)
    return residual(R12 @ R13 @ R23, R23 @ R13 @ R12, f"YBE({i},{j},{k})")


def _two_leg_re(Rji: Mat, Rij: Mat, Ki: REMatrix, Kj: REMatrix, name: str) -> Residual:
    if Ki.coeff_dim != Kj.coeff_dim:
        raise ShapeError(f"coefficient dimensions differ: {Ki.coeff_dim} vs {Kj.coeff_dim}")
    shape = (Ki.dim, Kj.dim, Ki.coeff_dim)
    R21 = embed(Rji, [2, 1], shape)
    R12 = embed(Rij, [1, 2], shape)
    K1 = embed(Ki.k, [1, 3], shape)
    K2 = embed(Kj.k, [2, 3], shape)
    return residual(R21 @ K1 @ R12 @ K2, K2 @ R21 @ K1 @ R12, name)


def verify_re(fam: RMatrixFamily, K: REMatrix) -> Residual:
    """R_21 K_1 R K_2 = K_2 R_21 K_1 R with R = R^{rep,rep}."""
    i = K.rep
    if K.dim != fam.dim(i):
        raise ShapeError(f"K has dim {K.dim}, representation {i!r} has {fam.dim(i)}")
    R = fam.R(i, i)
    return _two_leg_re(R, R, K, K, f"RE({i})")


def verify_compat(data: REData, i: str, j: str) -> Residual:
    fam = data.family
    return _two_leg_re(
        fam.R(j, i), fam.R(i, j), data.K(i), data.K(j), f"compat({i},{j})"
    )


def check_re_data(data: REData) -> Residual:
    """RE for every triple, then compatibility for every ordered pair."""
    for i in data.triples:
        res = verify_re(data.family, data.K(i))
        if not res.ok:
            return res
    for i, j in product(data.triples, repeat=2):
        if i != j:
            res = verify_compat(data, i, j)
            if not res.ok:
                return res
    return Residual(True, None, "RE data")


# ---------------------------------------------------------------------------
# fusion


def extend_family(fam: RMatrixFamily, i: str, j: str) -> RMatrixFamily:
    """Add the tensor product representation ``i (x) j`` via the coproduct rules.

    R^{ij,k} = R^{i,k}_13 R^{j,k}_23,  R^{k,ij} = R^{k,j}_13 R^{k,i}_12,
    R^{ij,ij} = R^{i,j}_14 R^{i,i}_13 R^{j,j}_24 R^{j,i}_23.
    """
    label = fused_label(i, j)
    if label in fam:
        return fam
    di, dj = fam.dim(i), fam.dim(j)
    d = di * dj
    new_r = {}
    for k in fam.ids:
        dk = fam.dim(k)
        s = (di, dj, dk)
        out = embed(fam.R(i, k), [1, 3], s) @ embed(fam.R(j, k), [2, 3], s)
        new_r[(label, k)] = out.with_legs((d, dk))
        s = (dk, di, dj)
        inn = embed(fam.R(k, j), [1, 3], s) @ embed(fam.R(k, i), [1, 2], s)
        new_r[(k, label)] = inn.with_legs((dk, d))
    s = (di, dj, di, dj)
    self_r = (
        embed(fam.R(i, j), [1, 4], s)
        @ embed(fam.R(i, i), [1, 3], s)
        @ embed(fam.R(j, j), [2, 4], s)
        @ embed(fam.R(j, i), [2, 3], s)
    )
    new_r[(label, label)] = self_r.with_legs((d, d))
    return fam.with_rep(RepLabel(label, d), new_r)


def fused_matrix(fam: RMatrixFamily, Ki: REMatrix, Kj: REMatrix) -> Mat:
    """(R^{i,j})^{-1} K^i_1 R^{i,j} K^j_2 on legs ``[d_i, d_j, d_A]``."""
    if Ki.coeff_dim != Kj.coeff_dim:
        raise ShapeError(f"coefficient dimensions differ: {Ki.coeff_dim} vs {Kj.coeff_dim}")
    shape = (Ki.dim, Kj.dim, Ki.coeff_dim)
    Rij = fam.R(Ki.rep, Kj.rep)
    R12 = embed(Rij, [1, 2], shape)
    R12inv = embed(invert(Rij), [1, 2], shape)
    return R12inv @ embed(Ki.k, [1, 3], shape) @ R12 @ embed(Kj.k, [2, 3], shape)


def fuse(data: REData, i: str, j: str) -> REData:
    """RE data extended by the fused triple on ``i (x) j``."""
    fam = extend_family(data.family, i, j)
    Ki, Kj = data.K(i), data.K(j)
    m = fused_matrix(data.family, Ki, Kj)
    label = fused_label(i, j)
    K = REMatrix(label, data.coeff_dim, m)
    return data.with_triple(K, fam)


def fuse_all(data: REData) -> REData:
    """The union over all ordered pairs of existing labels."""
    out = data
    for i, j in product(list(data.triples), repeat=2):
        out = fuse(out, i, j)
    return out


# ---------------------------------------------------------------------------
# Q-solution and restriction


def q_solution(fam: RMatrixFamily, i: str) -> REMatrix:
    """R^{i,i}_21 R^{i,i}: rep leg first, coefficient leg (End V_i) second."""
    R = fam.R(i, i)
    d = fam.dim(i)
    Q = embed(R, [2, 1], (d, d)) @ R
    return REMatrix(i, d, Q)


def _commutes(a: Mat, b: Mat) -> bool:
    return a @ b == b @ a


def restrict(fam: RMatrixFamily, K: REMatrix, p: Mat, label: str | None = None):
    """Project ``K`` to the image of the idempotent ``p`` acting on ``V_rep``.

    Returns the family extended by the subrepresentation and the restricted K.
    """
    r = K.rep
    d = fam.dim(r)
    if p.shape != (d, d):
        raise ShapeError(f"projector shape {p.shape} does not match dim {d}")
    p = p.with_legs((d,))
    iota, pi = column_space_basis(p)
    R = fam.R(r, r)
    pp = kron(p, p)
    if not _commutes(pp.with_legs((d, d)), R):
        raise NotIntertwinerError("(p (x) p) does not commute with R")
    rk = iota.ncols
    label = label or f"{r}[{rk}]"
    if label in fam:
        raise ValueError(f"label {label!r} already present")
    new_r = {(label, label): (kron(pi, pi) @ R @ kron(iota, iota)).with_legs((rk, rk))}
    for k in fam.ids:
        dk = fam.dim(k)
        Ik = Mat.identity([dk])
        Rrk = fam.R(r, k)
        Rkr = fam.R(k, r)
        pk = kron(p, Ik).with_legs((d, dk))
        kp = kron(Ik, p).with_legs((dk, d))
        if not (_commutes(pk, Rrk) and _commutes(kp, Rkr)):
            raise NotIntertwinerError(f"p does not intertwine R-matrices with {k!r}")
        new_r[(label, k)] = (kron(pi, Ik) @ Rrk @ kron(iota, Ik)).with_legs((rk, dk))
        new_r[(k, label)] = (kron(Ik, pi) @ Rkr @ kron(Ik, iota)).with_legs((dk, rk))
    fam0 = fam.with_rep(RepLabel(label, rk), new_r)
    IA = Mat.identity([K.coeff_dim])
    k0 = kron(pi, IA) @ K.k.with_legs((d * K.coeff_dim,)) @ kron(iota, IA)
    return fam0, REMatrix(label, K.coeff_dim, k0)


def restrict_data(data: REData, rep: str, p: Mat, label: str | None = None) -> REData:
    fam0, K0 = restrict(data.family, data.K(rep), p, label)
    return data.with_triple(K0, fam0)


# ---------------------------------------------------------------------------
# three-leg identities that make fused K-matrices compatible


def appendix_identities(data: REData, i: str, j: str, k: str) -> tuple[Residual, Residual]:
    fam = data.family
    Ki, Kj, Kk = data.K(i), data.K(j), data.K(k)
    dA = data.coeff_dim
    s = (fam.dim(i), fam.dim(j), fam.dim(k), dA)

    def R(a, b, legs):
        return embed(fam.R(a, b), legs, s)

    def Rinv(a, b, legs):
        return embed(invert(fam.R(a, b)), legs, s)

    K1 = embed(Ki.k, [1, 4], s)
    K2 = embed(Kj.k, [2, 4], s)
    K3 = embed(Kk.k, [3, 4], s)

    fused12 = Rinv(i, j, [1, 2]) @ K1 @ R(i, j, [1, 2]) @ K2
    left = R(k, j, [3, 2]) @ R(k, i, [3, 1])
    right = R(i, k, [1, 3]) @ R(j, k, [2, 3])
    first = residual(
        left @ fused12 @ right @ K3,
        K3 @ left @ fused12 @ right,
        f"partial1({i},{j},{k})",
    )

    fused23 = Rinv(j, k, [2, 3]) @ K2 @ R(j, k, [2, 3]) @ K3
    block = R(j, i, [2, 1]) @ R(k, i, [3, 1]) @ K1 @ R(i, k, [1, 3]) @ R(i, j, [1, 2])
    second = residual(block @ fused23, fused23 @ block, f"partial3({i},{j},{k})")
    return first, second
