"""Brute-force RE solver for small structured ansatzes (oracle for ``verify_re``).

The RE residual is rebuilt here with sympy matrices (its own Kronecker
products and flip), independent of :mod:`qre.tensor`.  The resulting
polynomial system in the unknown entries is decomposed by factor-and-branch
elimination over Q(q) with q generic; factors that involve only q are taken to
be nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import sympy as sp

from .errors import AnsatzError
from .rekit import REMatrix, family_from_R, verify_re
from .ring import Scalar
from .tensor import Mat

ANSATZES = ("diagonal", "antidiagonal", "upper_triangular")
MAX_DIM = 3

q = sp.Symbol("q")


def scalar_to_sympy(s: Scalar):
    num = sum(sp.Rational(c.numerator, c.denominator) * q**e for c, e in s.num_terms())
    den = sum(sp.Rational(c.numerator, c.denominator) * q**e for c, e in s.den_terms())
    return num / den


def sympy_to_scalar(expr) -> Scalar:
    expr = sp.cancel(sp.sympify(expr))
    if expr.free_symbols - {q}:
        raise AnsatzError(f"{expr} depends on symbols other than q")
    num, den = sp.fraction(expr)

    def terms(p):
        poly = sp.Poly(p, q)
        out = []
        for (e,), c in poly.terms():
            if not c.is_Rational:
                raise AnsatzError(f"coefficient {c} is not rational")
            out.append((sp.Rational(c).p * 1 if c.q == 1 else _frac(c), e))
        return out

    return Scalar.from_terms(terms(num), terms(den))


def _frac(c):
    from fractions import Fraction

    return Fraction(int(c.p), int(c.q))


def _mask(ansatz, d):
    if ansatz == "diagonal":
        return [(i, i) for i in range(d)]
    if ansatz == "antidiagonal":
        return [(i, d - 1 - i) for i in range(d)]
    if ansatz == "upper_triangular":
        return [(i, j) for i in range(d) for j in range(i, d)]
    raise AnsatzError(f"unknown ansatz {ansatz!r}; choose from {ANSATZES}")


def _flip(d):
    P = sp.zeros(d * d)
    for i in range(d):
        for j in range(d):
            P[j * d + i, i * d + j] = 1
    return P


def re_residual_matrix(R: Mat, ansatz: str):
    """Unknowns, K template and the symbolic residual R21 K1 R K2 - K2 R21 K1 R."""
    if len(R.row_legs) != 2 or R.row_legs[0] != R.row_legs[1] or R.col_legs != R.row_legs:
        raise AnsatzError(f"R must live on two equal legs, got {R.row_legs}")
    d = R.row_legs[0]
    if d > MAX_DIM:
        raise AnsatzError(f"ansatz solver supports d <= {MAX_DIM}, got {d}")
    mask = _mask(ansatz, d)
    unknowns = [sp.Symbol(f"k{i + 1}{j + 1}") for i, j in mask]
    K = sp.zeros(d)
    for (i, j), x in zip(mask, unknowns):
        K[i, j] = x
    Rs = sp.Matrix(d * d, d * d, lambda i, j: scalar_to_sympy(R[i, j]))
    P = _flip(d)
    R21 = P * Rs * P
    eye = sp.eye(d)
    K1 = sp.kronecker_product(K, eye)
    K2 = sp.kronecker_product(eye, K)
    res = R21 * K1 * Rs * K2 - K2 * R21 * K1 * Rs
    return unknowns, K, res


def re_system(R: Mat, ansatz: str):
    """Unknowns, K template and the distinct polynomial equations of the residual."""
    unknowns, K, res = re_residual_matrix(R, ansatz)
    eqs = []
    for e in res:
        e = sp.expand(sp.numer(sp.together(e)))
        if e != 0 and e not in eqs:
            eqs.append(e)
    return unknowns, K, eqs


@dataclass(frozen=True)
class AnsatzFamily:
    """Solutions ``K = template(params)``; params range over the field (generic points)."""

    params: tuple
    template: sp.ImmutableMatrix

    def normalized(self) -> sp.ImmutableMatrix:
        """Template with parameters renamed c1, c2, ... in row-major first occurrence."""
        seen = []
        for e in self.template:
            for s in sorted(e.free_symbols - {q}, key=str):
                if s not in seen:
                    seen.append(s)
        names = sp.symbols(f"c1:{len(seen) + 1}") if seen else ()
        if len(seen) == 1:
            names = (sp.Symbol("c"),)
        return sp.ImmutableMatrix(self.template.subs(dict(zip(seen, names)), simultaneous=True))

    def instantiate(self, values) -> sp.Matrix | None:
        m = self.template.subs(dict(zip(self.params, values)))
        if any(e.has(sp.zoo, sp.oo, sp.nan) for e in m):
            return None
        return sp.Matrix(m).applyfunc(sp.cancel)


def _only_q(e) -> bool:
    return not (e.free_symbols - {q})


def _solutions(eqs, unknowns, subs, depth=0):
    """Yield substitution dicts (unknown -> expression in free unknowns)."""
    work = []
    for e in eqs:
        e = sp.expand(sp.numer(sp.together(e.subs(subs)))) if subs else e
        if e == 0:
            continue
        if _only_q(e):
            return  # nonzero for generic q: inconsistent branch
        if e not in work:
            work.append(e)
    if not work:
        yield dict(subs)
        return
    work.sort(key=lambda e: (len(e.free_symbols), sp.Poly(e, *unknowns).total_degree(), len(e.args)))
    eq, rest = work[0], work[1:]
    _, factors = sp.factor_list(eq)
    factors = [f for f, _ in factors if not _only_q(f)]
    for f in factors:
        vars_ = [x for x in unknowns if x in f.free_symbols]
        linear = [(x, sp.Poly(f, x)) for x in vars_ if sp.Poly(f, x).degree() == 1]
        if not linear:
            raise AnsatzError(f"cannot eliminate non-linear factor {f}")
        linear.sort(key=lambda xp: (not _only_q(xp[1].coeffs()[0]), str(xp[0])))
        x, px = linear[0]
        c, r = px.all_coeffs()
        sol = sp.cancel(-r / c)
        new = {k: sp.cancel(v.subs(x, sol)) for k, v in subs.items()}
        new[x] = sol
        yield from _solutions(rest + [f], unknowns, new, depth + 1)
        if not _only_q(c):
            # branch where the pivot coefficient vanishes
            yield from _solutions(rest + [c, r], unknowns, subs, depth + 1)


def _contained(a: dict, b: dict, unknowns) -> bool:
    """Is the family with substitution ``a`` inside the family ``b``?"""
    point = {x: a.get(x, x) for x in unknowns}
    for x in unknowns:
        if x in b:
            lhs = point[x]
            rhs = b[x].subs(point, simultaneous=True)
            if sp.cancel(lhs - rhs) != 0:
                return False
    return True


def ansatz_families(R: Mat, ansatz: str) -> list[AnsatzFamily]:
    unknowns, K, eqs = re_system(R, ansatz)
    comps = []
    for s in _solutions(eqs, unknowns, {}):
        if not any(_contained(s, t, unknowns) and _contained(t, s, unknowns) for t in comps):
            comps.append(s)
    minimal = [
        s for s in comps
        if not any(t is not s and _contained(s, t, unknowns) and not _contained(t, s, unknowns) for t in comps)
    ]
    out = []
    for s in minimal:
        params = tuple(x for x in unknowns if x not in s)
        template = sp.ImmutableMatrix(K.subs(s, simultaneous=True).applyfunc(sp.cancel))
        out.append(AnsatzFamily(params, template))
    return out


def _to_mat(m: sp.Matrix) -> Mat:
    return Mat([[sympy_to_scalar(m[i, j]) for j in range(m.cols)] for i in range(m.rows)])


def solve_ansatz(R: Mat, ansatz: str, label: str = "f") -> list[REMatrix]:
    """Representatives (free parameters in {0, 1}) of every solution family.

    The zero matrix is dropped; every returned K is re-verified with ``verify_re``.
    """
    fam = family_from_R(R, label)
    seen = set()
    out = []
    for family in ansatz_families(R, ansatz):
        for values in product((1, 0), repeat=len(family.params)):
            m = family.instantiate(values)
            if m is None or m.is_zero_matrix:
                continue
            try:
                mat = _to_mat(m)
            except AnsatzError:
                continue
            if mat in seen:
                continue
            K = REMatrix.scalar(label, mat)
            if not verify_re(fam, K).ok:
                raise AnsatzError(f"elimination produced a non-solution {m.tolist()}")
            seen.add(mat)
            out.append(K)
    return out
