"""Simple algebraic extensions k[t]/(q) used for existence tests.

Only the field protocol needed by the univariate helpers in factor.py is
provided.  Elements are trimmed tuples of base-field elements, constant
term first.  This is never exposed to users; the geometry layer uses it to
decide whether singular or tangential points exist over the closure without
computing their coordinates.
"""

from .exceptions import ValidationError
from .factor import u_ext_gcd, u_mod, u_mul


class ExtensionField:
    def __init__(self, base, modulus):
        # modulus: monic coefficient list over base, degree >= 2
        if len(modulus) < 3:
            raise ValidationError("extension modulus must have degree >= 2")
        if not base.eq(modulus[-1], base.one()):
            raise ValidationError("extension modulus must be monic")
        self.base = base
        self.modulus = list(modulus)
        self.char = base.char
        self.deg = len(modulus) - 1

    def _wrap(self, coeffs):
        c = list(coeffs)
        while c and self.base.is_zero(c[-1]):
            c.pop()
        return tuple(c)

    def zero(self):
        return ()

    def one(self):
        return (self.base.one(),)

    def gen(self):
        return self._wrap([self.base.zero(), self.base.one()])

    def from_base(self, a):
        return self._wrap([a])

    def from_int(self, n):
        return self._wrap([self.base.from_int(n)])

    def is_zero(self, a):
        return len(a) == 0

    def eq(self, a, b):
        if len(a) != len(b):
            return False
        return all(self.base.eq(x, y) for x, y in zip(a, b))

    def add(self, a, b):
        n = max(len(a), len(b))
        z = self.base.zero()
        return self._wrap([
            self.base.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z)
            for i in range(n)])

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        prod = u_mul(self.base, list(a), list(b))
        return self._wrap(u_mod(self.base, prod, self.modulus))

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = u_ext_gcd(self.base, list(a), self.modulus)
        if len(g) != 1:
            # modulus not irreducible; caller violated the contract
            raise ValidationError("extension modulus is reducible")
        return self._wrap([self.base.mul(c, self.base.inv(g[0])) for c in s])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def fmt(self, a):
        if not a:
            return "0"
        parts = []
        for i, c in enumerate(a):
            if self.base.is_zero(c):
                continue
            s = self.base.fmt(c)
            parts.append(s if i == 0 else f"({s})*t^{i}")
        return " + ".join(parts) if parts else "0"

    def sort_key(self, a):
        return (len(a),) + tuple(self.base.sort_key(c) for c in a)

    def __eq__(self, other):
        return (isinstance(other, ExtensionField)
                and self.base == other.base
                and len(self.modulus) == len(other.modulus)
                and all(self.base.eq(x, y)
                        for x, y in zip(self.modulus, other.modulus)))

    def __hash__(self):
        return hash((ExtensionField, self.base, len(self.modulus)))


def reduce_coeff(ext: ExtensionField, poly_coeffs):
    """Reduce a base-field coefficient list modulo the extension modulus."""
    return ext._wrap(u_mod(ext.base, list(poly_coeffs), ext.modulus))
