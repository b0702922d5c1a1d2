"""Coefficient fields: Q and prime fields F_p.

A field object is a small namespace of closed operations over its element
type (Fraction for Q, int in [0, p) for F_p).  Polynomials hold a reference
to their field and refuse mixed arithmetic.  p is kept small (<= 97) because
the factorization routines scan field elements; the constructor enforces it.
"""

from fractions import Fraction

from .exceptions import FieldMismatch, ParseError

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


class Rationals:
    char = 0

    def __repr__(self):
        return "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def div(self, a, b):
        return a / self._check_nonzero(b)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def parse(self, text: str):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational literal {text!r}") from e

    def fmt(self, a) -> str:
        return str(a)

    def sort_key(self, a):
        return (a.numerator, a.denominator)

    def elements(self):
        raise TypeError("Q is infinite")

    @staticmethod
    def _check_nonzero(b):
        if b == 0:
            raise ZeroDivisionError("division by 0")
        return b

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


class PrimeField:
    """F_p with elements represented as ints in [0, p)."""

    def __init__(self, p: int):
        if p not in _SMALL_PRIMES:
            raise ValueError(f"p must be a prime <= 97, got {p}")
        self.p = p
        self.char = p

    def __repr__(self):
        return f"F{self.p}"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def parse(self, text: str):
        # accepts integer literals and a/b with b invertible
        text = text.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            try:
                return self.div(self.from_int(int(num)), self.from_int(int(den)))
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(f"bad field literal {text!r}") from e
        try:
            return self.from_int(int(text))
        except ValueError as e:
            raise ParseError(f"bad field literal {text!r}") from e

    def fmt(self, a) -> str:
        return str(a % self.p)

    def sort_key(self, a):
        return (a % self.p, 1)

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = Rationals()


def field_from_spec(spec) -> Rationals | PrimeField:
    """Accepts 'Q', 'QQ', 0, 'F7', 'Fp(7)', 7, or an existing field object."""
    if isinstance(spec, (Rationals, PrimeField)):
        return spec
    if spec in (0, "0", "Q", "QQ", "rationals"):
        return QQ
    if isinstance(spec, int):
        return PrimeField(spec)
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("Fp(") and s.endswith(")"):
            return PrimeField(int(s[3:-1]))
        if s.startswith("F") and s[1:].isdigit():
            return PrimeField(int(s[1:]))
        if s.isdigit():
            return PrimeField(int(s))
    raise ParseError(f"unrecognized field spec {spec!r}")


def same_field(*fields):
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatch(f"mixed fields {first!r} and {f!r}")
    return first
