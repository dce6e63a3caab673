"""Univariate polynomial helpers and exact rational functions over Q.

Polynomials are :class:`~bgsplit.laurent.LaurentPoly` values with only
nonnegative exponents.  A :class:`RatFunc` is a reduced fraction num/den
with den monic, so equality is plain structural equality.  Rational
functions are the coefficient domain for differential operators; the
helpers here (division, gcd, radical, shifts, reversal) are the exact
plumbing those computations need.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import NotInvertible
from .laurent import LaurentPoly, Scalar, _coerce


class Infinity:
    """Singleton marker for the point at infinity on the sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"


INF = Infinity()
Point = Union[Fraction, int, Infinity]


def _require_poly(p: LaurentPoly, what: str = "operand") -> LaurentPoly:
    if not p.is_polynomial():
        raise ValueError(f"{what} must have nonnegative exponents only")
    return p


def poly_divmod(a: LaurentPoly, b: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """Long division a = q*b + r with deg r < deg b, over Q[x]."""
    _require_poly(a), _require_poly(b)
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    q = LaurentPoly.zero()
    r = a
    db = b.deg()
    lead_b = b.coeff(db)
    while not r.is_zero and r.deg() >= db:
        e = r.deg() - db
        c = r.coeff(r.deg()) / lead_b
        mono = LaurentPoly.x_power(e, c)
        q = q + mono
        r = r - mono * b
    return q, r


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd over Q[x] (gcd(0, 0) = 0)."""
    _require_poly(a), _require_poly(b)
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    if a.is_zero:
        return a
    return a.scale(1 / a.coeff(a.deg()))


def poly_lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.is_zero or b.is_zero:
        return LaurentPoly.zero()
    g = poly_gcd(a, b)
    m = poly_divmod(a * b, g)[0]
    return m.scale(1 / m.coeff(m.deg()))


def poly_radical(p: LaurentPoly) -> LaurentPoly:
    """Squarefree part p / gcd(p, p'), monic.  Same roots, multiplicity 1."""
    _require_poly(p)
    if p.is_zero:
        return p
    g = poly_gcd(p, p.derivative())
    if g.is_zero or g.deg() == 0:
        return p.scale(1 / p.coeff(p.deg()))
    rad = poly_divmod(p, g)[0]
    return rad.scale(1 / rad.coeff(rad.deg()))


def poly_shift(p: LaurentPoly, c: Scalar) -> LaurentPoly:
    """p(x + c), by Horner evaluation in the shifted variable."""
    _require_poly(p)
    c = _coerce(c)
    if p.is_zero:
        return p
    xc = LaurentPoly({1: 1, 0: c})
    result = LaurentPoly.zero()
    for e in range(p.deg(), -1, -1):
        result = result * xc + LaurentPoly.constant(p.coeff(e))
    return result


def poly_reverse(p: LaurentPoly) -> LaurentPoly:
    """x^deg(p) * p(1/x); zero maps to zero."""
    _require_poly(p)
    if p.is_zero:
        return p
    d = p.deg()
    return LaurentPoly({d - e: c for e, c in p.terms.items()})


def root_multiplicity(p: LaurentPoly, point: Scalar) -> int:
    """Multiplicity of (x - point) in the nonzero polynomial p."""
    _require_poly(p)
    if p.is_zero:
        raise ValueError("zero polynomial")
    factor = LaurentPoly({1: 1, 0: -_coerce(point)})
    mult = 0
    while p.evaluate(point) == 0:
        p = poly_divmod(p, factor)[0]
        mult += 1
    return mult


class RatFunc:
    """Reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: Optional[LaurentPoly] = None):
        if den is None:
            den = LaurentPoly.one()
        _require_poly(num, "numerator"), _require_poly(den, "denominator")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            num, den = LaurentPoly.zero(), LaurentPoly.one()
        else:
            g = poly_gcd(num, den)
            if g.deg() > 0:
                num = poly_divmod(num, g)[0]
                den = poly_divmod(den, g)[0]
            lead = den.coeff(den.deg())
            if lead != 1:
                num = num.scale(1 / lead)
                den = den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc(LaurentPoly.zero())

    @staticmethod
    def one() -> "RatFunc":
        return RatFunc(LaurentPoly.one())

    @staticmethod
    def constant(c: Scalar) -> "RatFunc":
        return RatFunc(LaurentPoly.constant(c))

    @staticmethod
    def from_laurent(p: LaurentPoly) -> "RatFunc":
        """Embed a Laurent polynomial: negative exponents become x-powers
        in the denominator."""
        if p.is_zero:
            return RatFunc.zero()
        o = p.ord()
        if o >= 0:
            return RatFunc(p)
        return RatFunc(p.shift(-o), LaurentPoly.x_power(-o))

    # -- inspection ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def is_constant(self) -> bool:
        return self.den == LaurentPoly.one() and (self.num.is_zero or self.num.deg() == 0)

    def as_laurent(self) -> Optional[LaurentPoly]:
        """The value as a Laurent polynomial when den is a power of x."""
        mono = self.den.as_monomial()
        if mono is None:
            return None
        c, t = mono
        return self.num.scale(1 / c).shift(-t)

    def order_at(self, point: Point) -> Optional[int]:
        """Order of vanishing at the point (negative for a pole).

        Returns None for the zero function (order +infinity everywhere).
        """
        if self.is_zero:
            return None
        if point is INF:
            return self.den.deg() - self.num.deg()
        return root_multiplicity(self.num, point) - root_multiplicity(self.den, point)

    def pole_order(self, point: Point) -> int:
        """max(0, -order) at the point; 0 for the zero function."""
        o = self.order_at(point)
        return 0 if o is None else max(0, -o)

    def evaluate(self, point: Scalar) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError(f"pole at {point}")
        return self.num.evaluate(point) / d

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _lift(value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, LaurentPoly):
            return RatFunc.from_laurent(value)
        if isinstance(value, (int, Fraction)):
            return RatFunc.constant(value)
        return NotImplemented

    def __add__(self, other) -> "RatFunc":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RatFunc":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise NotInvertible("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def inverse(self) -> "RatFunc":
        if self.is_zero:
            raise NotInvertible("zero rational function has no inverse")
        return RatFunc(self.den, self.num)

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def shift(self, c: Scalar) -> "RatFunc":
        """The function f(x + c)."""
        return RatFunc(poly_shift(self.num, c), poly_shift(self.den, c))

    def reciprocal_substitution(self) -> "RatFunc":
        """The function f(1/x), again as a reduced rational function."""
        if self.is_zero:
            return self
        dn, dd = self.num.deg(), self.den.deg()
        num = poly_reverse(self.num)
        den = poly_reverse(self.den)
        if dd >= dn:
            num = num.shift(dd - dn)
        else:
            den = den.shift(dn - dd)
        return RatFunc(num, den)

    # -- comparison and display ---------------------------------------

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __str__(self) -> str:
        if self.den == LaurentPoly.one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"
