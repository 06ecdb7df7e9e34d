"""Exact arithmetic in Q(q), the field of rational functions in one variable.

A :class:`Scalar` is stored as ``q**shift * num(q) / den(q)`` where ``num`` and
``den`` are ordinary polynomials with ``num(0) != 0``, ``den(0) != 0``,
``gcd(num, den) == 1`` and ``den`` monic.  That representation is unique, so
structural equality is field equality.  The polynomial kernel is
``flint.fmpq_poly``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import flint

from .errors import EvaluationPole, ZeroDivisorError

_ZERO_POLY = flint.fmpq_poly([])
_ONE_POLY = flint.fmpq_poly([1])
_X = flint.fmpq_poly([0, 1])


def _low_order(p):
    """Index of the lowest nonzero coefficient of a nonzero polynomial."""
    for k, c in enumerate(p.coeffs()):
        if c != 0:
            return k
    raise ValueError("zero polynomial")


def _shift_down(p, k):
    return flint.fmpq_poly(p.coeffs()[k:]) if k else p


def _shift_up(p, k):
    return p * _X ** k if k else p


def parse_rat(s) -> Fraction:
    """Parse a reduced fraction string like ``"-3/2"`` (ints and Fractions pass through)."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise TypeError(f"expected a rational string, got {type(s).__name__}")
    return Fraction(s.strip())


def format_rat(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def _to_fmpq(x):
    x = parse_rat(x)
    return flint.fmpq(x.numerator, x.denominator)


class Scalar:
    __slots__ = ("_num", "_den", "_shift", "_hash")

    def __init__(self, num=None, den=None, shift=0, *, _canonical=False):
        if num is None:
            num = _ZERO_POLY
        elif not isinstance(num, flint.fmpq_poly):
            num = flint.fmpq_poly(num)
        if den is None:
            den = _ONE_POLY
        elif not isinstance(den, flint.fmpq_poly):
            den = flint.fmpq_poly(den)
        self._hash = None
        if _canonical:
            self._num, self._den, self._shift = num, den, shift
            return
        if den == 0:
            raise ZeroDivisorError()
        if num == 0:
            self._num, self._den, self._shift = _ZERO_POLY, _ONE_POLY, 0
            return
        k = _low_order(num)
        num = _shift_down(num, k)
        shift += k
        k = _low_order(den)
        den = _shift_down(den, k)
        shift -= k
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        lead = den[den.degree()]
        if lead != 1:
            num = num / lead
            den = den / lead
        self._num, self._den, self._shift = num, den, shift

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c) -> "Scalar":
        c = _to_fmpq(c)
        if c == 0:
            return ZERO
        return cls(flint.fmpq_poly([c]), _ONE_POLY, 0, _canonical=True)

    @classmethod
    def monomial(cls, exp: int, coef=1) -> "Scalar":
        """``coef * q**exp``."""
        c = _to_fmpq(coef)
        if c == 0:
            return ZERO
        return cls(flint.fmpq_poly([c]), _ONE_POLY, exp, _canonical=True)

    @classmethod
    def from_terms(cls, num_terms, den_terms=None) -> "Scalar":
        """Build from Laurent term lists ``[(coef, exp), ...]``."""
        num, ns = _laurent_to_poly(num_terms)
        if den_terms is None:
            return cls(num, _ONE_POLY, ns)
        den, ds = _laurent_to_poly(den_terms)
        if den == 0:
            raise ZeroDivisorError()
        return cls(num, den, ns - ds)

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Rational, str)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # -- structure ----------------------------------------------------------

    @property
    def num_poly(self):
        return self._num

    @property
    def den_poly(self):
        return self._den

    @property
    def shift(self) -> int:
        return self._shift

    def num_terms(self) -> list[tuple[Fraction, int]]:
        """Laurent numerator as ``(coef, exp)`` pairs, exponents strictly decreasing."""
        return _poly_terms(self._num, self._shift)

    def den_terms(self) -> list[tuple[Fraction, int]]:
        return _poly_terms(self._den, 0)

    def is_zero(self) -> bool:
        return self._num == 0

    def is_one(self) -> bool:
        return self._shift == 0 and self._num == 1 and self._den == 1

    def is_laurent(self) -> bool:
        return self._den == 1

    def _key(self):
        return (self._shift, tuple(self._num.coeffs()), tuple(self._den.coeffs()))

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return (
            self._shift == other._shift
            and self._num == other._num
            and self._den == other._den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        if self.is_zero():
            return self
        return Scalar(-self._num, self._den, self._shift, _canonical=True)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        e = min(self._shift, other._shift)
        a = _shift_up(self._num, self._shift - e)
        b = _shift_up(other._num, other._shift - e)
        if self._den == other._den:
            return Scalar(a + b, self._den, e)
        return Scalar(a * other._den + b * self._den, self._den * other._den, e)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        shift = self._shift + other._shift
        if self._den == 1 and other._den == 1:
            return Scalar(self._num * other._num, _ONE_POLY, shift, _canonical=True)
        return Scalar(self._num * other._num, self._den * other._den, shift)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisorError()
        return Scalar(self._den, self._num, -self._shift)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if other.is_zero():
            raise ZeroDivisorError()
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if self._den == 1 and self._num.degree() == 0:
            return Scalar(self._num ** n, _ONE_POLY, self._shift * n, _canonical=True)
        return Scalar(self._num ** n, self._den ** n, self._shift * n, _canonical=True)

    # -- evaluation ---------------------------------------------------------

    def eval(self, q0) -> Fraction:
        """Exact value at ``q = q0``; ring homomorphism Q(q) -> Q away from poles."""
        x = _to_fmpq(q0)
        if x == 0:
            raise EvaluationPole("evaluation pole: q0 = 0")
        d = self._den(x)
        if d == 0:
            raise EvaluationPole(f"evaluation pole at q0 = {q0}")
        v = self._num(x) / d * x ** self._shift
        return Fraction(int(v.p), int(v.q))

    # -- printing -----------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        n = _format_terms(self.num_terms())
        if self._den == 1:
            return n
        d = _format_terms(self.den_terms())
        if len(self.num_terms()) > 1:
            n = f"({n})"
        return f"{n}/({d})"


def _laurent_to_poly(terms):
    terms = [(parse_rat(c), int(e)) for c, e in terms]
    terms = [(c, e) for c, e in terms if c != 0]
    if not terms:
        return _ZERO_POLY, 0
    low = min(e for _, e in terms)
    coeffs = [Fraction(0)] * (max(e for _, e in terms) - low + 1)
    for c, e in terms:
        coeffs[e - low] += c
    return flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in coeffs]), low


def _poly_terms(p, shift):
    out = []
    for k, c in enumerate(p.coeffs()):
        if c != 0:
            out.append((Fraction(int(c.p), int(c.q)), k + shift))
    out.reverse()
    return out


def _format_terms(terms):
    if not terms:
        return "0"
    parts = []
    for i, (c, e) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = format_rat(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{format_rat(a)}*{mono}"
        if i == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


ZERO = Scalar(_ZERO_POLY, _ONE_POLY, 0, _canonical=True)
ONE = Scalar(_ONE_POLY, _ONE_POLY, 0, _canonical=True)
Q = Scalar.monomial(1)
QINV = Scalar.monomial(-1)
LAMBDA = Q - QINV


def scalar_is_zero(a: Scalar) -> bool:
    return a.is_zero()


def scalar_eval(a: Scalar, q0) -> Fraction:
    return a.eval(q0)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# -- JSON form ---------------------------------------------------------------


def scalar_to_json(s: Scalar) -> dict:
    out = {"n": [[format_rat(c), e] for c, e in s.num_terms()]}
    if not s.is_laurent():
        out["d"] = [[format_rat(c), e] for c, e in s.den_terms()]
    return out


def scalar_from_json(obj) -> Scalar:
    if not isinstance(obj, dict) or "n" not in obj:
        raise ValueError("Scalar JSON must be an object with key 'n'")
    extra = set(obj) - {"n", "d"}
    if extra:
        raise ValueError(f"unexpected Scalar keys {sorted(extra)}")

    def terms(lst):
        if not isinstance(lst, list):
            raise ValueError("Scalar term list must be an array")
        out = []
        for t in lst:
            if not (isinstance(t, list) and len(t) == 2 and isinstance(t[1], int)
                    and not isinstance(t[1], bool)):
                raise ValueError(f"bad Scalar term {t!r}")
            out.append((parse_rat(t[0]), t[1]))
        return out

    return Scalar.from_terms(terms(obj["n"]), terms(obj["d"]) if "d" in obj else None)
