"""Dense exact matrices over :class:`Scalar` with tensor-leg bookkeeping.

Basis convention: a multi-index ``(i_1, ..., i_k)`` (1-based) on legs with
dimensions ``(d_1, ..., d_k)`` maps to the flat index
``sum((i_t - 1) * prod(d_u for u > t)) + 1`` (row-major).  Internally all
indices are 0-based.  Matrices act on column vectors, so ``a @ b`` applies
``b`` first.
"""

from __future__ import annotations

from itertools import product
from math import prod
from typing import Sequence

from .errors import NotIdempotentError, ShapeError, SingularMatrixError
from .ring import ONE, ZERO, Scalar


def _legs(legs) -> tuple[int, ...]:
    legs = tuple(int(d) for d in legs)
    if any(d < 0 for d in legs):
        raise ShapeError(f"negative leg dimension in {legs}")
    return legs


class Mat:
    """Immutable matrix; ``rows`` is a tuple of tuples of Scalars."""

    __slots__ = ("row_legs", "col_legs", "rows", "_nz")

    def __init__(self, rows, row_legs=None, col_legs=None):
        rows = tuple(tuple(Scalar.coerce(x) for x in r) for r in rows)
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ShapeError("ragged matrix rows")
        self.row_legs = _legs(row_legs) if row_legs is not None else (n,)
        self.col_legs = _legs(col_legs) if col_legs is not None else (m,)
        if prod(self.row_legs) != n:
            raise ShapeError(f"row legs {self.row_legs} do not multiply to {n} rows")
        if n and prod(self.col_legs) != m:
            raise ShapeError(f"col legs {self.col_legs} do not multiply to {m} columns")
        self.rows = rows
        self._nz = None

    @classmethod
    def _raw(cls, rows, row_legs, col_legs):
        obj = cls.__new__(cls)
        obj.rows = rows
        obj.row_legs = row_legs
        obj.col_legs = col_legs
        obj._nz = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, row_legs, col_legs=None) -> "Mat":
        row_legs = _legs(row_legs)
        col_legs = row_legs if col_legs is None else _legs(col_legs)
        n, m = prod(row_legs), prod(col_legs)
        return cls._raw(tuple((ZERO,) * m for _ in range(n)), row_legs, col_legs)

    @classmethod
    def identity(cls, legs) -> "Mat":
        legs = _legs(legs if isinstance(legs, (list, tuple)) else [legs])
        n = prod(legs)
        rows = tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        return cls._raw(rows, legs, legs)

    @classmethod
    def from_sparse(cls, entries: dict, row_legs, col_legs=None) -> "Mat":
        """``entries`` maps 0-based ``(row, col)`` to Scalar-coercible values."""
        row_legs = _legs(row_legs)
        col_legs = row_legs if col_legs is None else _legs(col_legs)
        n, m = prod(row_legs), prod(col_legs)
        grid = [[ZERO] * m for _ in range(n)]
        for (i, j), v in entries.items():
            grid[i][j] = Scalar.coerce(v)
        return cls._raw(tuple(tuple(r) for r in grid), row_legs, col_legs)

    @classmethod
    def diag(cls, values, legs=None) -> "Mat":
        values = list(values)
        legs = (len(values),) if legs is None else legs
        return cls.from_sparse({(i, i): v for i, v in enumerate(values)}, legs)

    # -- shape --------------------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return prod(self.col_legs)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def with_legs(self, row_legs, col_legs=None) -> "Mat":
        """Same entries, regrouped legs (flattening or splitting)."""
        row_legs = _legs(row_legs)
        col_legs = row_legs if col_legs is None else _legs(col_legs)
        if prod(row_legs) != self.nrows or prod(col_legs) != self.ncols:
            raise ShapeError(f"cannot regroup {self.shape} as {row_legs}x{col_legs}")
        return Mat._raw(self.rows, row_legs, col_legs)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.rows[i][j]

    def nonzeros(self):
        """Per-row lists of ``(col, value)`` for nonzero entries (cached)."""
        if self._nz is None:
            self._nz = tuple(
                tuple((j, v) for j, v in enumerate(r) if not v.is_zero()) for r in self.rows
            )
        return self._nz

    # -- algebra ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def same_legs(self, other) -> bool:
        return self.row_legs == other.row_legs and self.col_legs == other.col_legs

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same_shape(other)
        rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Mat._raw(rows, self.row_legs, self.col_legs)

    def __sub__(self, other):
        self._check_same_shape(other)
        rows = tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Mat._raw(rows, self.row_legs, self.col_legs)

    def __neg__(self):
        return Mat._raw(tuple(tuple(-a for a in r) for r in self.rows), self.row_legs, self.col_legs)

    def scale(self, c) -> "Mat":
        c = Scalar.coerce(c)
        return Mat._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.row_legs, self.col_legs)

    def __matmul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        m = other.ncols
        bnz = other.nonzeros()
        out = []
        for arow in self.nonzeros():
            acc = {}
            for k, a in arow:
                for j, b in bnz[k]:
                    t = a * b
                    prev = acc.get(j)
                    acc[j] = t if prev is None else prev + t
            row = [ZERO] * m
            for j, v in acc.items():
                row[j] = v
            out.append(tuple(row))
        return Mat._raw(tuple(out), self.row_legs, other.col_legs)

    def is_zero(self) -> bool:
        return all(not r for r in self.nonzeros())

    def transpose(self) -> "Mat":
        return Mat._raw(tuple(zip(*self.rows)) if self.rows else (), self.col_legs, self.row_legs)

    def eval(self, q0):
        """Entrywise exact evaluation at ``q0`` (list of lists of Fractions)."""
        return [[x.eval(q0) for x in r] for r in self.rows]

    def __repr__(self):
        return f"Mat(row_legs={list(self.row_legs)}, col_legs={list(self.col_legs)})"

    def pretty(self) -> str:
        cells = [[str(x) for x in r] for r in self.rows]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)


def _strides(dims):
    out = [1] * len(dims)
    for t in range(len(dims) - 2, -1, -1):
        out[t] = out[t + 1] * dims[t + 1]
    return out


def unravel(flat: int, dims) -> tuple[int, ...]:
    """0-based flat index -> 0-based multi-index."""
    idx = []
    for d in reversed(dims):
        flat, r = divmod(flat, d)
        idx.append(r)
    return tuple(reversed(idx))


def ravel(idx, dims) -> int:
    flat = 0
    for i, d in zip(idx, dims):
        flat = flat * d + i
    return flat


def kron(a: Mat, b: Mat) -> Mat:
    m = b.ncols
    bnz = b.nonzeros()
    rows = []
    for ar in a.rows:
        for bi, br in enumerate(b.rows):
            row = [ZERO] * (len(ar) * m)
            for ja, x in enumerate(ar):
                if x.is_zero():
                    continue
                off = ja * m
                for jb, y in bnz[bi]:
                    row[off + jb] = x * y
            rows.append(tuple(row))
    return Mat._raw(tuple(rows), a.row_legs + b.row_legs, a.col_legs + b.col_legs)


def flip(d1: int, d2: int | None = None) -> Mat:
    """The flip ``P: v (x) w -> w (x) v`` from legs ``[d1, d2]`` to ``[d2, d1]``."""
    d2 = d1 if d2 is None else d2
    entries = {(j * d1 + i, i * d2 + j): ONE for i in range(d1) for j in range(d2)}
    return Mat.from_sparse(entries, (d2, d1), (d1, d2))


def _check_perm(perm, k):
    perm = tuple(int(p) for p in perm)
    if len(perm) != k or sorted(perm) != list(range(1, k + 1)):
        raise ShapeError(f"{perm} is not a permutation of legs 1..{k}")
    return perm


def leg_permute(a: Mat, perm: Sequence[int]) -> Mat:
    """Conjugate by the leg permutation: new leg ``t`` is old leg ``perm[t]`` (1-based).

    ``leg_permute(R, (2, 1))`` is ``R_21 = P R P``.
    """
    if a.row_legs != a.col_legs:
        raise ShapeError("leg_permute needs identical row and column legs")
    dims = a.row_legs
    perm = _check_perm(perm, len(dims))
    new_dims = tuple(dims[p - 1] for p in perm)
    old_strides = _strides(dims)
    # flat new index -> flat old index
    n = prod(dims)
    to_old = []
    for flat in range(n):
        idx = unravel(flat, new_dims)
        to_old.append(sum(idx[t] * old_strides[perm[t] - 1] for t in range(len(perm))))
    rows = tuple(tuple(a.rows[to_old[i]][to_old[j]] for j in range(n)) for i in range(n))
    return Mat._raw(rows, new_dims, new_dims)


def embed(op: Mat, targets: Sequence[int], shape: Sequence[int]) -> Mat:
    """Place ``op`` on the legs ``targets`` (1-based, any order) of ``shape``.

    ``embed(R, [1, 3], [d, d, d])`` is ``R_13``; ``embed(R, [2, 1], [d, d])`` is ``R_21``.
    """
    shape = _legs(shape)
    targets = tuple(int(t) for t in targets)
    if len(set(targets)) != len(targets):
        raise ShapeError(f"repeated target leg in {targets}")
    if any(not 1 <= t <= len(shape) for t in targets):
        raise ShapeError(f"target legs {targets} out of range for {len(shape)} legs")
    if op.row_legs != op.col_legs or len(op.row_legs) != len(targets):
        op_dims = [shape[t - 1] for t in targets]
        if op.nrows == op.ncols == prod(op_dims):
            op = op.with_legs(op_dims)
        else:
            raise ShapeError(f"operator legs {op.row_legs} do not fit targets {targets}")
    for s, t in enumerate(targets):
        if op.row_legs[s] != shape[t - 1]:
            raise ShapeError(
                f"operator leg {s + 1} has dim {op.row_legs[s]}, target leg {t} has {shape[t - 1]}"
            )
    strides = _strides(shape)
    rest = [t for t in range(1, len(shape) + 1) if t not in targets]
    rest_offsets = [
        sum(i * strides[t - 1] for i, t in zip(idx, rest))
        for idx in product(*(range(shape[t - 1]) for t in rest))
    ]
    op_dims = op.row_legs
    op_offsets = [
        sum(i * strides[t - 1] for i, t in zip(unravel(flat, op_dims), targets))
        for flat in range(op.nrows)
    ]
    n = prod(shape)
    grid = [[ZERO] * n for _ in range(n)]
    for r, row in enumerate(op.nonzeros()):
        ro = op_offsets[r]
        for c, v in row:
            co = op_offsets[c]
            for off in rest_offsets:
                grid[ro + off][co + off] = v
    return Mat._raw(tuple(tuple(r) for r in grid), shape, shape)


def _rref(a: Mat):
    """Reduced row echelon form over Q(q), first-nonzero pivoting.

    Returns ``(rows, pivots)`` with rows as mutable lists.
    """
    rows = [list(r) for r in a.rows]
    n, m = a.nrows, a.ncols
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots


def rank(a: Mat) -> int:
    return len(_rref(a)[1])


def invert(a: Mat) -> Mat:
    """Two-sided inverse by Gauss-Jordan elimination; raises SingularMatrixError."""
    if not a.is_square():
        raise ShapeError(f"cannot invert non-square {a.shape}")
    n = a.nrows
    rows = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(a.rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
        if piv is None:
            raise SingularMatrixError(c + 1, n)
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = rows[c][c].inverse()
        if not inv.is_one():
            rows[c] = [x * inv for x in rows[c]]
        pr = rows[c]
        nz = [k for k in range(c, 2 * n) if not pr[k].is_zero()]
        for i in range(n):
            f = rows[i][c]
            if i == c or f.is_zero():
                continue
            ri = rows[i]
            for k in nz:
                ri[k] = ri[k] - f * pr[k]
    return Mat._raw(tuple(tuple(r[n:]) for r in rows), a.col_legs, a.row_legs)


def column_space_basis(p: Mat) -> tuple[Mat, Mat]:
    """Factor an idempotent ``p`` as ``iota @ pi`` with ``pi @ iota = I_r``.

    ``iota`` holds the pivot columns of ``p``; ``pi`` the nonzero rows of its RREF.
    """
    if not p.is_square():
        raise NotIdempotentError(f"projector must be square, got {p.shape}")
    if p @ p != p:
        raise NotIdempotentError("input is not idempotent (p @ p != p)")
    red, pivots = _rref(p)
    r = len(pivots)
    n = p.nrows
    iota_rows = tuple(tuple(p.rows[i][c] for c in pivots) for i in range(n))
    pi_rows = tuple(tuple(red[i]) for i in range(r))
    iota = Mat._raw(iota_rows, p.row_legs, (r,))
    pi = Mat._raw(pi_rows, (r,), p.col_legs)
    return iota, pi
