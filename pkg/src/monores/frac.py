"""Rational functions as reduced fractions of bivariate polynomials.

Local descent works with map germs whose coordinates are honest fractions
(denominators that are units at the point of interest).  Fractions are kept
gcd-reduced with the denominator normalized monic under graded lex, so equal
functions compare equal structurally.
"""

from .exceptions import NotDivisible
from .fields import same_field
from .poly import BivarPoly, exact_div, gcd_exact, order_along, try_exact_div


class Frac:
    __slots__ = ("num", "den")

    def __init__(self, num: BivarPoly, den: BivarPoly, _reduced=False):
        same_field(num.field, den.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: BivarPoly):
        return cls(p, BivarPoly.one(p.field), _reduced=True)

    @classmethod
    def const(cls, field, c):
        return cls(BivarPoly.const(field, c), BivarPoly.one(field), _reduced=True)

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.is_constant()

    def as_poly(self) -> BivarPoly:
        """The underlying polynomial; raises if the denominator survived."""
        if not self.den.is_constant():
            raise NotDivisible(f"{self} is not a polynomial")
        return self.num.scale(self.field.inv(self.den.constant_term()))

    def __add__(self, other):
        other = _coerce(other, self.field)
        return Frac(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    def __sub__(self, other):
        other = _coerce(other, self.field)
        return Frac(self.num * other.den - other.num * self.den,
                    self.den * other.den)

    def __neg__(self):
        return Frac(-self.num, self.den, _reduced=True)

    def __mul__(self, other):
        other = _coerce(other, self.field)
        return Frac(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = _coerce(other, self.field)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return Frac(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if not isinstance(other, Frac):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self, var: str):
        # quotient rule; the constructor reduces
        n = self.num.derivative(var) * self.den - self.num * self.den.derivative(var)
        return Frac(n, self.den * self.den)

    def substitute(self, gx: BivarPoly, gy: BivarPoly):
        return Frac(self.num.substitute(gx, gy), self.den.substitute(gx, gy))

    def translate(self, a, b):
        return Frac(self.num.translate(a, b), self.den.translate(a, b),
                    _reduced=True)

    def is_unit_at(self, a, b) -> bool:
        f = self.field
        return (not f.is_zero(self.num.eval_point(a, b))
                and not f.is_zero(self.den.eval_point(a, b)))

    def is_regular_at(self, a, b) -> bool:
        return not self.field.is_zero(self.den.eval_point(a, b))

    def eval_point(self, a, b):
        f = self.field
        dv = self.den.eval_point(a, b)
        if f.is_zero(dv):
            raise ZeroDivisionError("pole at evaluation point")
        return f.div(self.num.eval_point(a, b), dv)

    def order_along(self, h: BivarPoly) -> int:
        """Order of vanishing along an irreducible curve {h = 0}.

        Positive on the zero side, negative on poles.  The fraction is
        reduced so num and den never share the factor h.
        """
        if self.num.is_zero():
            raise ValueError("order of the zero function")
        up = order_along(self.num, h)
        if up:
            return up
        return -order_along(self.den, h)

    def format(self) -> str:
        if self.den == BivarPoly.one(self.field):
            return self.num.format()
        return f"({self.num.format()}) / ({self.den.format()})"

    def __repr__(self):
        return f"Frac({self.format()})"


def _reduce(num, den):
    if num.is_zero():
        return num, BivarPoly.one(den.field)
    g = gcd_exact(num, den)
    if not g.is_constant():
        num = exact_div(num, g)
        den = exact_div(den, g)
    # deterministic representative: monic denominator
    lc = den.leading_coeff()
    f = den.field
    if not f.eq(lc, f.one()):
        inv = f.inv(lc)
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


def _coerce(v, field) -> Frac:
    if isinstance(v, Frac):
        return v
    if isinstance(v, BivarPoly):
        return Frac.from_poly(v)
    return Frac.const(field, v)


def frac_jacobian(u: Frac, v: Frac) -> Frac:
    """Determinant of the Jacobian matrix of the pair (u, v)."""
    return (u.derivative("x") * v.derivative("y")
            - u.derivative("y") * v.derivative("x"))


def sub_polys_into_frac(f: Frac, gx: BivarPoly, gy: BivarPoly) -> Frac:
    return f.substitute(gx, gy)


def poly_pair(u: BivarPoly, v: BivarPoly):
    return Frac.from_poly(u), Frac.from_poly(v)
