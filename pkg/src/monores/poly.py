"""Sparse exact bivariate polynomials over Q or F_p.

Terms are stored as {(i, j): coeff} with x-exponent i, y-exponent j and no
zero coefficients.  The monomial order everywhere is graded lex with x before
y: compare total degree first, then the x-exponent.  Instances are immutable
by convention; every operation returns a fresh polynomial.

Module-level functions cover the ring-theoretic workhorses: exact division,
gcd, pseudo-remainders, Sylvester resultants (Bareiss, fraction free).
"""

from .exceptions import EliminationDegenerate, NotDivisible
from .fields import same_field


def _grlex(mono):
    i, j = mono
    return (i + j, i)


class BivarPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: dict):
        self.field = field
        self.coeffs = {m: c for m, c in coeffs.items() if not field.is_zero(c)}

    # ---- constructors ------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def const(cls, field, c):
        return cls(field, {(0, 0): c})

    @classmethod
    def one(cls, field):
        return cls(field, {(0, 0): field.one()})

    @classmethod
    def var(cls, field, name: str):
        if name == "x":
            return cls(field, {(1, 0): field.one()})
        if name == "y":
            return cls(field, {(0, 1): field.one()})
        raise ValueError(f"unknown variable {name!r}")

    @classmethod
    def monomial(cls, field, i: int, j: int, c=None):
        return cls(field, {(i, j): field.one() if c is None else c})

    @classmethod
    def from_univar(cls, field, coeffs, var: str):
        """Ascending coefficient list in a single variable."""
        d = {}
        for k, c in enumerate(coeffs):
            if not field.is_zero(c):
                d[(k, 0) if var == "x" else (0, k)] = c
        return cls(field, d)

    # ---- basic queries -----------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return all(m == (0, 0) for m in self.coeffs)

    def is_monomial(self):
        return len(self.coeffs) == 1

    def constant_term(self):
        return self.coeffs.get((0, 0), self.field.zero())

    def coeff(self, i, j):
        return self.coeffs.get((i, j), self.field.zero())

    def total_degree(self) -> int:
        # degree of 0 is -1 by convention
        if not self.coeffs:
            return -1
        return max(i + j for i, j in self.coeffs)

    def degree_in(self, var: str) -> int:
        if not self.coeffs:
            return -1
        k = 0 if var == "x" else 1
        return max(m[k] for m in self.coeffs)

    def min_total_degree(self) -> int:
        if not self.coeffs:
            return -1
        return min(i + j for i, j in self.coeffs)

    def leading_monomial(self):
        if not self.coeffs:
            raise ValueError("leading monomial of 0")
        return max(self.coeffs, key=_grlex)

    def leading_coeff(self):
        return self.coeffs[self.leading_monomial()]

    def leading_term(self):
        m = self.leading_monomial()
        return m, self.coeffs[m]

    def is_univar_in(self, var: str) -> bool:
        k = 1 if var == "x" else 0
        return all(m[k] == 0 for m in self.coeffs)

    def univar_coeffs(self, var: str):
        """Ascending coefficient list; requires the poly to be univariate."""
        if not self.is_univar_in(var):
            raise ValueError(f"not univariate in {var}")
        n = self.degree_in(var)
        if n < 0:
            return []
        k = 0 if var == "x" else 1
        out = [self.field.zero()] * (n + 1)
        for m, c in self.coeffs.items():
            out[m[k]] = c
        return out

    # ---- arithmetic ----------------------------------------------------

    def _binop(self, other, fn):
        same_field(self.field, other.field)
        f = self.field
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = fn(out.get(m, f.zero()), c)
        return BivarPoly(f, out)

    def __add__(self, other):
        return self._binop(other, self.field.add)

    def __sub__(self, other):
        return self._binop(other, self.field.sub)

    def __neg__(self):
        f = self.field
        return BivarPoly(f, {m: f.neg(c) for m, c in self.coeffs.items()})

    def __mul__(self, other):
        f = same_field(self.field, other.field)
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                m = (i1 + i2, j1 + j2)
                prod = f.mul(c1, c2)
                if m in out:
                    out[m] = f.add(out[m], prod)
                else:
                    out[m] = prod
        return BivarPoly(f, out)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = BivarPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        f = self.field
        if f.is_zero(c):
            return BivarPoly.zero(f)
        return BivarPoly(f, {m: f.mul(co, c) for m, co in self.coeffs.items()})

    def shift_mono(self, di: int, dj: int):
        """Multiply by x^di * y^dj (di, dj >= 0)."""
        return BivarPoly(self.field,
                         {(i + di, j + dj): c for (i, j), c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    # ---- calculus and evaluation ----------------------------------------

    def derivative(self, var: str):
        f = self.field
        k = 0 if var == "x" else 1
        out = {}
        for m, c in self.coeffs.items():
            e = m[k]
            if e == 0:
                continue
            nm = (m[0] - 1, m[1]) if k == 0 else (m[0], m[1] - 1)
            nc = f.mul(c, f.from_int(e))
            if f.is_zero(nc):
                continue
            if nm in out:
                out[nm] = f.add(out[nm], nc)
            else:
                out[nm] = nc
        return BivarPoly(f, out)

    def eval_point(self, a, b):
        f = self.field
        acc = f.zero()
        # power caches keep Fraction blowup in check on dense polys
        xpow = {0: f.one()}
        ypow = {0: f.one()}

        def pw(cache, base, e):
            if e not in cache:
                cache[e] = f.mul(pw(cache, base, e - 1), base)
            return cache[e]

        for (i, j), c in self.coeffs.items():
            acc = f.add(acc, f.mul(c, f.mul(pw(xpow, a, i), pw(ypow, b, j))))
        return acc

    def substitute(self, gx, gy):
        """Plug polynomials in for x and y."""
        f = same_field(self.field, gx.field, gy.field)
        xps = {0: BivarPoly.one(f)}
        yps = {0: BivarPoly.one(f)}

        def pw(cache, base, e):
            if e not in cache:
                cache[e] = pw(cache, base, e - 1) * base
            return cache[e]

        acc = BivarPoly.zero(f)
        for (i, j), c in self.coeffs.items():
            acc = acc + (pw(xps, gx, i) * pw(yps, gy, j)).scale(c)
        return acc

    def specialize(self, var: str, value):
        """Set one variable to a field element; result is univariate."""
        f = self.field
        out = {}
        pcache = {0: f.one()}

        def pw(e):
            if e not in pcache:
                pcache[e] = f.mul(pw(e - 1), value)
            return pcache[e]

        for (i, j), c in self.coeffs.items():
            if var == "x":
                m, e = (0, j), i
            else:
                m, e = (i, 0), j
            t = f.mul(c, pw(e))
            if m in out:
                out[m] = f.add(out[m], t)
            else:
                out[m] = t
        return BivarPoly(f, out)

    def translate(self, a, b):
        """f(x + a, y + b)."""
        f = self.field
        gx = BivarPoly(f, {(1, 0): f.one(), (0, 0): a})
        gy = BivarPoly(f, {(0, 1): f.one(), (0, 0): b})
        return self.substitute(gx, gy)

    def multiplicity_at(self, a, b) -> int:
        """Order of vanishing at the point; 0 if the point is off the curve."""
        return self.translate(a, b).min_total_degree()

    def homogeneous_part(self, d: int):
        return BivarPoly(self.field,
                         {m: c for m, c in self.coeffs.items() if m[0] + m[1] == d})

    def lowest_form(self):
        """Sum of terms of minimal total degree (tangent cone at the origin)."""
        if not self.coeffs:
            return self
        return self.homogeneous_part(self.min_total_degree())

    def monomial_split(self):
        """f = x^i * y^j * residual with residual divisible by neither variable.

        Returns (i, j, residual).  The split of 0 is (0, 0, 0).
        """
        if not self.coeffs:
            return 0, 0, self
        i0 = min(m[0] for m in self.coeffs)
        j0 = min(m[1] for m in self.coeffs)
        resid = BivarPoly(self.field,
                          {(i - i0, j - j0): c for (i, j), c in self.coeffs.items()})
        return i0, j0, resid

    # ---- formatting ------------------------------------------------------

    def __repr__(self):
        return f"BivarPoly({self.field!r}, {self.format()!r})"

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        f = self.field
        parts = []
        for m in sorted(self.coeffs, key=_grlex, reverse=True):
            c = self.coeffs[m]
            body = _mono_str(m)
            cs = f.fmt(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if body and cs == "1":
                text = body
            elif body:
                text = f"{cs}*{body}"
            else:
                text = cs
            if not parts:
                parts.append(("-" if neg else "") + text)
            else:
                parts.append(("- " if neg else "+ ") + text)
        return " ".join(parts)

    def sort_key(self):
        """Deterministic total order on polynomials over one field."""
        f = self.field
        items = sorted(self.coeffs, key=_grlex, reverse=True)
        return (self.total_degree(), len(items),
                tuple((m, f.sort_key(self.coeffs[m])) for m in items))


def _mono_str(m):
    i, j = m
    parts = []
    if i == 1:
        parts.append("x")
    elif i > 1:
        parts.append(f"x^{i}")
    if j == 1:
        parts.append("y")
    elif j > 1:
        parts.append(f"y^{j}")
    return "*".join(parts)


# ---- division --------------------------------------------------------


def try_exact_div(f: BivarPoly, g: BivarPoly):
    """Quotient f/g if it exists in the polynomial ring, else None."""
    fld = same_field(f.field, g.field)
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return f
    gm, gc = g.leading_term()
    q = {}
    r = f
    # any nonzero multiple of g has leading monomial divisible by lm(g),
    # so a failed step here is a proof of non-divisibility
    while not r.is_zero():
        rm, rc = r.leading_term()
        di, dj = rm[0] - gm[0], rm[1] - gm[1]
        if di < 0 or dj < 0:
            return None
        c = fld.div(rc, gc)
        q[(di, dj)] = c
        r = r - g.shift_mono(di, dj).scale(c)
        if not r.is_zero() and _grlex(r.leading_monomial()) >= _grlex(rm):
            return None
    return BivarPoly(fld, q)


def exact_div(f: BivarPoly, g: BivarPoly) -> BivarPoly:
    q = try_exact_div(f, g)
    if q is None:
        raise NotDivisible(f"({f.format()}) is not divisible by ({g.format()})")
    return q


def divides(g: BivarPoly, f: BivarPoly) -> bool:
    return try_exact_div(f, g) is not None


def order_along(f: BivarPoly, h: BivarPoly) -> int:
    """Largest e with h^e | f.  f must be nonzero, h a nonunit nonzero."""
    if f.is_zero():
        raise ValueError("order of the zero polynomial")
    if h.is_zero() or h.is_constant():
        raise ValueError("order along a unit or zero")
    e = 0
    while True:
        q = try_exact_div(f, h)
        if q is None:
            return e
        f = q
        e += 1


# ---- gcd -------------------------------------------------------------


def _univar_gcd(f: BivarPoly, g: BivarPoly, var: str) -> BivarPoly:
    # Euclid on univariate polys over the field, monic result
    fld = f.field
    a, b = f, g
    while not b.is_zero():
        a, b = b, _univar_rem(a, b, var)
    if a.is_zero():
        return a
    return a.scale(fld.inv(a.leading_coeff()))


def _univar_rem(f: BivarPoly, g: BivarPoly, var: str) -> BivarPoly:
    fld = f.field
    gc = g.univar_coeffs(var)
    r = f.univar_coeffs(var)
    dg = len(gc) - 1
    lg = gc[-1]
    while len(r) - 1 >= dg and r:
        lr = r[-1]
        shift = len(r) - 1 - dg
        c = fld.div(lr, lg)
        for k in range(dg + 1):
            r[shift + k] = fld.sub(r[shift + k], fld.mul(c, gc[k]))
        while r and fld.is_zero(r[-1]):
            r.pop()
    return BivarPoly.from_univar(fld, r, var)


def as_univar_in_y(f: BivarPoly):
    """Coefficient list [c_0..c_d], each c_k a poly in x alone."""
    d = f.degree_in("y")
    out = [BivarPoly.zero(f.field) for _ in range(d + 1)]
    for (i, j), c in f.coeffs.items():
        out[j] = out[j] + BivarPoly(f.field, {(i, 0): c})
    return out


def from_univar_in_y(field, coeffs):
    acc = BivarPoly.zero(field)
    for j, c in enumerate(coeffs):
        acc = acc + c.shift_mono(0, j)
    return acc


def content_y(f: BivarPoly) -> BivarPoly:
    """gcd in k[x] of the y-coefficients (monic)."""
    fld = f.field
    c = BivarPoly.zero(fld)
    for part in as_univar_in_y(f):
        if part.is_zero():
            continue
        c = _univar_gcd(c, part, "x") if not c.is_zero() else \
            part.scale(fld.inv(part.leading_coeff()))
        if c.is_constant():
            return BivarPoly.one(fld)
    return c


def _pseudo_rem_y(f: BivarPoly, g: BivarPoly) -> BivarPoly:
    """prem(f, g) wrt y: lc(g)^(df-dg+1) * f  mod  g, computed exactly."""
    fc = as_univar_in_y(f)
    gc = as_univar_in_y(g)
    dg = len(gc) - 1
    lg = gc[-1]
    r = list(fc)
    steps = len(r) - len(gc) + 1
    for _ in range(max(steps, 0)):
        if len(r) - 1 < dg:
            break
        lr = r[-1]
        shift = len(r) - 1 - dg
        r = [ri * lg for ri in r]
        for k in range(dg + 1):
            r[shift + k] = r[shift + k] - gc[k] * lr
        r.pop()
        while r and r[-1].is_zero():
            r.pop()
    return from_univar_in_y(f.field, r)


def gcd_exact(f: BivarPoly, g: BivarPoly) -> BivarPoly:
    """gcd in k[x, y], normalized with leading coefficient 1 (graded lex)."""
    fld = same_field(f.field, g.field)
    if f.is_zero():
        return _normalize(g)
    if g.is_zero():
        return _normalize(f)
    if f.is_constant() or g.is_constant():
        return BivarPoly.one(fld)
    fy, gy = f.degree_in("y"), g.degree_in("y")
    if fy == 0 and gy == 0:
        return _univar_gcd(f, g, "x")
    if fy == 0:
        return _univar_gcd(f, content_y(g), "x") if not f.is_constant() \
            else BivarPoly.one(fld)
    if gy == 0:
        return _univar_gcd(g, content_y(f), "x")

    cf, cg = content_y(f), content_y(g)
    cont = _univar_gcd(cf, cg, "x")
    a = exact_div(f, cf)
    b = exact_div(g, cg)
    if a.degree_in("y") < b.degree_in("y"):
        a, b = b, a
    # primitive PRS: pseudo-remainder then strip content every round
    while True:
        r = _pseudo_rem_y(a, b)
        if r.is_zero():
            break
        if r.degree_in("y") == 0:
            # primitive parts are coprime; only the content survives
            return _normalize(cont) if not cont.is_constant() else BivarPoly.one(fld)
        r = exact_div(r, content_y(r))
        a, b = b, r
    result = exact_div(b, content_y(b)) * (cont if not cont.is_constant()
                                            else BivarPoly.one(fld))
    return _normalize(result)


def _normalize(f: BivarPoly) -> BivarPoly:
    if f.is_zero():
        return f
    return f.scale(f.field.inv(f.leading_coeff()))


# ---- resultants --------------------------------------------------------


def _coeff_list(f: BivarPoly, var: str):
    """Descending coefficient list wrt var; coefficients are polys in the
    other variable."""
    fld = f.field
    d = f.degree_in(var)
    out = [BivarPoly.zero(fld) for _ in range(d + 1)]
    for (i, j), c in f.coeffs.items():
        e, om = (i, (0, j)) if var == "x" else (j, (i, 0))
        out[d - e] = out[d - e] + BivarPoly(fld, {om: c})
    return out


def resultant(f: BivarPoly, g: BivarPoly, var: str) -> BivarPoly:
    """Sylvester resultant eliminating var; result lives in the other
    variable.  Rows: deg(g) shifted copies of f's coefficients on top."""
    fld = same_field(f.field, g.field)
    if f.is_zero() or g.is_zero():
        return BivarPoly.zero(fld)
    m, n = f.degree_in(var), g.degree_in(var)
    if m == 0 and n == 0:
        return BivarPoly.one(fld)
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    fc = _coeff_list(f, var)
    gc = _coeff_list(g, var)
    size = m + n
    zero = BivarPoly.zero(fld)
    rows = []
    for k in range(n):
        rows.append([zero] * k + fc + [zero] * (size - k - m - 1))
    for k in range(m):
        rows.append([zero] * k + gc + [zero] * (size - k - n - 1))
    return _bareiss_det(rows)


def _bareiss_det(mat) -> BivarPoly:
    n = len(mat)
    fld = mat[0][0].field
    m = [row[:] for row in mat]
    sign = 1
    prev = BivarPoly.one(fld)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return BivarPoly.zero(fld)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev)
            m[i][k] = BivarPoly.zero(fld)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant_nonzero(f: BivarPoly, g: BivarPoly, var: str) -> BivarPoly:
    r = resultant(f, g, var)
    if r.is_zero():
        raise EliminationDegenerate(
            f"resultant in {var} vanished; common factor present")
    return r
