"""Factorization over Q and F_p, univariate and bivariate.

Univariate over F_p: deterministic Berlekamp (nullspace plus gcd scans; fields
are small by construction).  Univariate over Q: Yun squarefree decomposition,
then Zassenhaus per squarefree part (good prime, Berlekamp mod p, quadratic
Hensel lifting to past the Mignotte bound, subset recombination with trial
division).  Bivariate: strip monomials and y-content, split off repeated
factors with gcd(g, dg/dy), then lift a squarefree specialization x = a0
x-adically and recombine.  Everything is exact; results are normalized monic
with respect to graded lex, the unit carries the rest.

Factor lists come back deterministically sorted, so reruns are byte-stable.
"""

from itertools import combinations, count
from math import gcd as _int_gcd, isqrt

from .exceptions import DegreeLimitExceeded
from .fields import PrimeField
from .poly import (BivarPoly, as_univar_in_y, content_y, exact_div,
                   from_univar_in_y, gcd_exact, try_exact_div)

# subset recombination is exponential in the number of modular factors;
# beyond this the input is outside the supported envelope anyway
_MAX_MODULAR_FACTORS = 16
_DEFAULT_MAX_DEGREE = 24


class _FpAny(PrimeField):
    """Internal prime field without the small-prime table check.

    Zassenhaus needs working primes that can exceed the user-facing cap.
    """

    def __init__(self, p: int):
        self.p = p
        self.char = p


# ---------------------------------------------------------------------
# dense univariate arithmetic over a field (ascending coefficient lists)
# ---------------------------------------------------------------------


def _ut(field, a):
    while a and field.is_zero(a[-1]):
        a.pop()
    return a


def u_deg(a):
    return len(a) - 1


def u_add(field, a, b):
    n = max(len(a), len(b))
    z = field.zero()
    out = [(a[i] if i < len(a) else z) for i in range(n)]
    for i, c in enumerate(b):
        out[i] = field.add(out[i], c)
    return _ut(field, out)


def u_sub(field, a, b):
    n = max(len(a), len(b))
    z = field.zero()
    out = [(a[i] if i < len(a) else z) for i in range(n)]
    for i, c in enumerate(b):
        out[i] = field.sub(out[i], c)
    return _ut(field, out)


def u_mul(field, a, b):
    if not a or not b:
        return []
    out = [field.zero()] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if field.is_zero(ca):
            continue
        for j, cb in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(ca, cb))
    return _ut(field, out)


def u_scale(field, a, c):
    return _ut(field, [field.mul(x, c) for x in a])


def u_divmod(field, a, b):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    r = list(a)
    q = [field.zero()] * max(len(a) - len(b) + 1, 0)
    ilb = field.inv(b[-1])
    while len(r) >= len(b):
        c = field.mul(r[-1], ilb)
        k = len(r) - len(b)
        q[k] = c
        for i, cb in enumerate(b):
            r[k + i] = field.sub(r[k + i], field.mul(c, cb))
        r.pop()
        _ut(field, r)
        if len(r) < len(b):
            break
    return _ut(field, q), r


def u_div_exact(field, a, b):
    q, r = u_divmod(field, a, b)
    assert not r, "inexact univariate division"
    return q


def u_mod(field, a, b):
    return u_divmod(field, a, b)[1]


def u_gcd(field, a, b):
    r0, r1 = _ut(field, list(a)), _ut(field, list(b))
    while r1:
        r0, r1 = r1, u_mod(field, r0, r1)
    return u_monic(field, r0)


def u_ext_gcd(field, a, b):
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = _ut(field, list(a)), _ut(field, list(b))
    s0, s1 = [field.one()], []
    t0, t1 = [], [field.one()]
    while r1:
        q, r = u_divmod(field, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, u_sub(field, s0, u_mul(field, q, s1))
        t0, t1 = t1, u_sub(field, t0, u_mul(field, q, t1))
    if not r0:
        return [], s0, t0
    c = field.inv(r0[-1])
    return u_scale(field, r0, c), u_scale(field, s0, c), u_scale(field, t0, c)


def u_monic(field, a):
    if not a:
        return a
    return u_scale(field, a, field.inv(a[-1]))


def u_deriv(field, a):
    out = [field.mul(c, field.from_int(k)) for k, c in enumerate(a)][1:]
    return _ut(field, out)


def u_eval(field, a, x):
    acc = field.zero()
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def u_pow_mod(field, base, e, mod):
    result = [field.one()]
    b = u_mod(field, base, mod)
    while e:
        if e & 1:
            result = u_mod(field, u_mul(field, result, b), mod)
        b = u_mod(field, u_mul(field, b, b), mod)
        e >>= 1
    return result


# ---------------------------------------------------------------------
# Berlekamp over F_p (p small enough to scan)
# ---------------------------------------------------------------------


def _kernel_basis(field, m):
    """Null space basis of the n x n matrix m (list of rows)."""
    n = len(m)
    a = [row[:] for row in m]
    pivot_of_col = {}
    row = 0
    for col in range(n):
        pr = next((r for r in range(row, n) if not field.is_zero(a[r][col])), None)
        if pr is None:
            continue
        a[row], a[pr] = a[pr], a[row]
        inv = field.inv(a[row][col])
        a[row] = [field.mul(inv, e) for e in a[row]]
        for r in range(n):
            if r != row and not field.is_zero(a[r][col]):
                f = a[r][col]
                a[r] = [field.sub(e, field.mul(f, p)) for e, p in zip(a[r], a[row])]
        pivot_of_col[col] = row
        row += 1
    basis = []
    for col in range(n):
        if col in pivot_of_col:
            continue
        v = [field.zero()] * n
        v[col] = field.one()
        for pc, pr in pivot_of_col.items():
            v[pc] = field.neg(a[pr][col])
        basis.append(v)
    return basis


def berlekamp(field, u):
    """Monic irreducible factors of a monic squarefree u over F_p."""
    p = field.char
    n = u_deg(u)
    if n <= 1:
        return [list(u)]
    xp = u_pow_mod(field, [field.zero(), field.one()], p, u)
    rows = []
    cur = [field.one()]
    for i in range(n):
        rows.append(cur + [field.zero()] * (n - len(cur)))
        if i < n - 1:
            cur = u_mod(field, u_mul(field, cur, xp), u)
    # v is in the splitting algebra iff v . Q = v; kernel of (Q - I)^T
    mt = [[field.sub(rows[i][j], field.one() if i == j else field.zero())
           for i in range(n)] for j in range(n)]
    basis = _kernel_basis(field, mt)
    r = len(basis)
    if r == 1:
        return [list(u)]
    factors = [list(u)]
    for v in basis:
        if len(factors) == r:
            break
        vp = _ut(field, list(v))
        if u_deg(vp) < 1:
            continue
        nxt = []
        for w in factors:
            if u_deg(w) == 1 or len(factors) == r:
                nxt.append(w)
                continue
            rem = w
            vr = u_mod(field, vp, w)
            for c in field.elements():
                if u_deg(rem) < 1:
                    break
                g = u_gcd(field, rem, u_sub(field, vr, [field.from_int(c)]))
                if u_deg(g) >= 1 and u_deg(g) < u_deg(rem):
                    nxt.append(g)
                    rem = u_div_exact(field, rem, g)
            if u_deg(rem) >= 1:
                nxt.append(rem)
        factors = nxt
    assert len(factors) == r, "Berlekamp split incomplete"
    return factors


def _squarefree_fp(field, f):
    """[(monic part, multiplicity)] for monic f over F_p."""
    p = field.char
    f = u_monic(field, f)
    if u_deg(f) < 1:
        return []
    df = u_deriv(field, f)
    out = []
    if not df:
        # f(y) = g(y^p) = g(y)^p since Frobenius fixes the prime field
        g = u_monic(field, [f[k] for k in range(0, len(f), p)])
        return [(h, m * p) for h, m in _squarefree_fp(field, g)]
    g = u_gcd(field, f, df)
    w = u_div_exact(field, f, g)
    i = 1
    while u_deg(w) >= 1:
        y = u_gcd(field, w, g)
        z = u_div_exact(field, w, y)
        if u_deg(z) >= 1:
            out.append((u_monic(field, z), i))
        w = y
        g = u_div_exact(field, g, y)
        i += 1
    if u_deg(g) >= 1:
        root = u_monic(field, [g[k] for k in range(0, len(g), p)])
        out.extend((h, m * p) for h, m in _squarefree_fp(field, root))
    return out


def _factor_fp_coeffs(field, cs):
    """(unit, [(monic irreducible, mult)]) over F_p."""
    cs = _ut(field, list(cs))
    if not cs:
        raise ValueError("factor of zero")
    unit = cs[-1]
    out = []
    for part, mult in _squarefree_fp(field, u_monic(field, cs)):
        for irr in berlekamp(field, part):
            out.append((irr, mult))
    return unit, out


# ---------------------------------------------------------------------
# Zassenhaus over Z / Q
# ---------------------------------------------------------------------


def _primes():
    yield 2
    n = 3
    while n < 100000:
        if all(n % q for q in range(3, isqrt(n) + 1, 2)):
            yield n
        n += 2
    raise DegreeLimitExceeded("no usable prime for factorization")


def _int_content(a):
    c = 0
    for x in a:
        c = _int_gcd(c, abs(x))
    return c or 1


def _ip_red(a, m):
    out = [c % m for c in a]
    while out and out[-1] == 0:
        out.pop()
    return out


def _ip_sym(a, m):
    return [c - m if c > m // 2 else c for c in _ip_red(a, m)]


def _ip_mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % m
    while out and out[-1] == 0:
        out.pop()
    return out


def _ip_addsub(a, b, m, sign):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) for i in range(n)]
    for i, c in enumerate(b):
        out[i] = (out[i] + sign * c) % m
    while out and out[-1] == 0:
        out.pop()
    return out


def _ip_divmod_monic(a, b, m):
    assert b and b[-1] % m == 1, "divisor must be monic"
    r = _ip_red(a, m)
    q = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        c = r[-1]
        k = len(r) - len(b)
        q[k] = c
        for i, cb in enumerate(b):
            r[k + i] = (r[k + i] - c * cb) % m
        while r and r[-1] == 0:
            r.pop()
    while q and q[-1] == 0:
        q.pop()
    return q, r


def _hensel_step_z(m2, f, g, h, s, t):
    """One quadratic lift: from (mod m) data to (mod m2 = m^2)."""
    e = _ip_addsub(_ip_red(f, m2), _ip_mul(g, h, m2), m2, -1)
    q, r = _ip_divmod_monic(_ip_mul(s, e, m2), h, m2)
    g1 = _ip_addsub(_ip_addsub(g, _ip_mul(t, e, m2), m2, 1),
                    _ip_mul(q, g, m2), m2, 1)
    h1 = _ip_addsub(h, r, m2, 1)
    b = _ip_addsub(_ip_addsub(_ip_mul(s, g1, m2), _ip_mul(t, h1, m2), m2, 1),
                   [1], m2, -1)
    c, d = _ip_divmod_monic(_ip_mul(s, b, m2), h1, m2)
    s1 = _ip_addsub(s, d, m2, -1)
    t1 = _ip_addsub(t, _ip_addsub(_ip_mul(t, b, m2), _ip_mul(c, g1, m2), m2, 1),
                    m2, -1)
    return g1, h1, s1, t1


def _hensel_tree_z(p, target, f, facs):
    """Lift the mod-p factor list of monic f to mod target (a power of p)."""
    if len(facs) == 1:
        return [_ip_red(f, target)]
    field = _FpAny(p)
    half = len(facs) // 2
    left, right = facs[:half], facs[half:]
    g = [1]
    for fi in left:
        g = u_mul(field, g, fi)
    h = [1]
    for fi in right:
        h = u_mul(field, h, fi)
    one, s, t = u_ext_gcd(field, g, h)
    assert u_deg(one) == 0
    m = p
    gl, hl, sl, tl = list(g), list(h), list(s), list(t)
    while m < target:
        m = m * m
        gl, hl, sl, tl = _hensel_step_z(m, f, gl, hl, sl, tl)
    return (_hensel_tree_z(p, target, gl, left)
            + _hensel_tree_z(p, target, hl, right))


def _int_div_exact(a, b):
    """Exact quotient of integer polys, b monic; None if not divisible."""
    r = list(a)
    q = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        c = r[-1]
        k = len(r) - len(b)
        q[k] = c
        for i, cb in enumerate(b):
            r[k + i] -= c * cb
        while r and r[-1] == 0:
            r.pop()
    return q if not r else None


def _mignotte(a):
    n = u_deg(a)
    return (1 << n) * (isqrt(sum(c * c for c in a)) + 1)


def _zassenhaus_monic(g):
    """Monic irreducible integer factors of a monic squarefree integer poly."""
    if u_deg(g) <= 1:
        return [list(g)]
    for p in _primes():
        field = _FpAny(p)
        gp = _ip_red(g, p)
        if u_deg(gp) != u_deg(g):
            continue
        if u_deg(u_gcd(field, gp, u_deriv(field, gp))) != 0:
            continue
        break
    modular = berlekamp(field, u_monic(field, gp))
    if len(modular) == 1:
        return [list(g)]
    if len(modular) > _MAX_MODULAR_FACTORS:
        raise DegreeLimitExceeded(
            f"{len(modular)} modular factors exceed the recombination cap")
    bound = 2 * _mignotte(g) + 1
    target = p
    while target < bound:
        target = target * target
    lifted = _hensel_tree_z(p, target, g, modular)

    out = []
    pool = list(range(len(lifted)))
    cur = list(g)
    size = 1
    while 2 * size <= len(pool):
        hit = None
        for subset in combinations(pool, size):
            cand = [1]
            for i in subset:
                cand = _ip_mul(cand, lifted[i], target)
            cand = _ip_sym(cand, target)
            if cand[-1] != 1:
                continue
            quo = _int_div_exact(cur, cand)
            if quo is not None:
                hit = (subset, cand, quo)
                break
        if hit is None:
            size += 1
            continue
        subset, cand, quo = hit
        out.append(cand)
        cur = quo
        pool = [i for i in pool if i not in subset]
    if u_deg(cur) >= 1:
        out.append(cur)
    return out


def _yun(field, f):
    """Squarefree decomposition in characteristic zero, monic parts."""
    f = u_monic(field, f)
    df = u_deriv(field, f)
    g = u_gcd(field, f, df)
    if u_deg(g) == 0:
        return [(f, 1)]
    c = u_div_exact(field, f, g)
    d = u_sub(field, u_div_exact(field, df, g), u_deriv(field, c))
    out = []
    i = 1
    while u_deg(c) >= 1:
        a = u_gcd(field, c, d)
        if u_deg(a) >= 1:
            out.append((a, i))
        c = u_div_exact(field, c, a)
        d = u_sub(field, u_div_exact(field, d, a), u_deriv(field, c))
        i += 1
    return out


def _factor_q_coeffs(field, cs):
    """(unit, [(monic irreducible, mult)]) over Q."""
    cs = _ut(field, list(cs))
    if not cs:
        raise ValueError("factor of zero")
    unit = cs[-1]
    out = []
    for part, mult in _yun(field, cs):
        for hz in _zassenhaus_of_monic_rational(field, part):
            out.append((hz, mult))
    return unit, out


def _zassenhaus_of_monic_rational(field, part):
    """Monic rational irreducible factors of a monic squarefree part."""
    if u_deg(part) == 1:
        return [part]
    # clear denominators, then force a monic integer model:
    # for primitive g with lc = L, the poly L^(n-1) g(y/L) is monic over Z
    den = 1
    for c in part:
        den = den * c.denominator // _int_gcd(den, c.denominator)
    ints = [int(c * den) for c in part]
    cont = _int_content(ints)
    ints = [c // cont for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    lc = ints[-1]
    n = u_deg(ints)
    monic = [ints[k] * lc ** (n - 1 - k) for k in range(n)] + [1]
    out = []
    for hz in _zassenhaus_monic(monic):
        mapped = [c * lc ** k for k, c in enumerate(hz)]
        mc = _int_content(mapped)
        mapped = [c // mc for c in mapped]
        out.append(u_monic(field, [field.from_int(c) for c in mapped]))
    return out


# ---------------------------------------------------------------------
# public univariate API on BivarPoly
# ---------------------------------------------------------------------


def _factor_univar_coeffs(field, cs):
    if field.char == 0:
        return _factor_q_coeffs(field, cs)
    return _factor_fp_coeffs(field, cs)


def factor_univar(f: BivarPoly, var: str):
    """(unit, [(irreducible, mult)]) for a univariate f, monic normalized."""
    field = f.field
    if f.is_zero():
        raise ValueError("factor of the zero polynomial")
    cs = f.univar_coeffs(var)
    if u_deg(cs) < 1:
        return f.constant_term(), []
    unit, pairs = _factor_univar_coeffs(field, cs)
    out = [(BivarPoly.from_univar(field, g, var), m) for g, m in pairs]
    out.sort(key=lambda t: (t[0].sort_key(), t[1]))
    return unit, out


def rational_roots(f: BivarPoly, var: str):
    """Distinct roots of a univariate polynomial in the ground field."""
    field = f.field
    if f.is_zero():
        raise ValueError("roots of the zero polynomial")
    cs = f.univar_coeffs(var)
    if field.char:
        roots = [field.from_int(c) for c in field.elements()
                 if field.is_zero(u_eval(field, cs, field.from_int(c)))]
        return sorted(roots, key=field.sort_key)
    _, pairs = _factor_q_coeffs(field, cs) if u_deg(cs) >= 1 else (None, [])
    roots = []
    for g, _m in pairs:
        if u_deg(g) == 1:
            roots.append(field.div(field.neg(g[0]), g[1]))
    return sorted(set(roots), key=field.sort_key)


# ---------------------------------------------------------------------
# bivariate factorization
# ---------------------------------------------------------------------


def _swap_vars(f: BivarPoly) -> BivarPoly:
    return BivarPoly(f.field, {(j, i): c for (i, j), c in f.coeffs.items()})


def trunc_x(f: BivarPoly, k: int) -> BivarPoly:
    return BivarPoly(f.field, {m: c for m, c in f.coeffs.items() if m[0] < k})


def _series_inv_x(c: BivarPoly, k: int) -> BivarPoly:
    """Inverse of a univariate-in-x series mod x^k; constant term a unit."""
    field = c.field
    cs = c.univar_coeffs("x")
    cs += [field.zero()] * (k - len(cs))
    inv0 = field.inv(cs[0])
    out = [inv0]
    for d in range(1, k):
        acc = field.zero()
        for i in range(1, d + 1):
            acc = field.add(acc, field.mul(cs[i], out[d - i]))
        out.append(field.neg(field.mul(inv0, acc)))
    return BivarPoly.from_univar(field, out, "x")


# series polys: ascending lists of BivarPoly coefficients, each univariate
# in x and truncated


def _sp_red(a, k):
    out = [trunc_x(c, k) for c in a]
    while out and out[-1].is_zero():
        out.pop()
    return out


def _sp_addsub(field, a, b, k, sign):
    n = max(len(a), len(b))
    z = BivarPoly.zero(field)
    out = [(a[i] if i < len(a) else z) for i in range(n)]
    for i, c in enumerate(b):
        out[i] = out[i] + c if sign > 0 else out[i] - c
    return _sp_red(out, k)


def _sp_mul(field, a, b, k):
    if not a or not b:
        return []
    z = BivarPoly.zero(field)
    out = [z] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + trunc_x(ca * cb, k)
    return _sp_red(out, k)


def _sp_divmod_monic(field, a, b, k):
    one = BivarPoly.one(field)
    assert b and b[-1] == one, "series divisor must be exactly monic"
    r = _sp_red(list(a), k)
    q = [BivarPoly.zero(field)] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        c = r[-1]
        pos = len(r) - len(b)
        q[pos] = c
        for i, cb in enumerate(b):
            r[pos + i] = trunc_x(r[pos + i] - c * cb, k)
        r.pop()
        while r and r[-1].is_zero():
            r.pop()
    while q and q[-1].is_zero():
        q.pop()
    return q, r


def _hensel_step_series(field, k2, f, g, h, s, t):
    e = _sp_addsub(field, _sp_red(f, k2), _sp_mul(field, g, h, k2), k2, -1)
    q, r = _sp_divmod_monic(field, _sp_mul(field, s, e, k2), h, k2)
    g1 = _sp_addsub(field, _sp_addsub(field, g, _sp_mul(field, t, e, k2), k2, 1),
                    _sp_mul(field, q, g, k2), k2, 1)
    h1 = _sp_addsub(field, h, r, k2, 1)
    one = [BivarPoly.one(field)]
    b = _sp_addsub(field,
                   _sp_addsub(field, _sp_mul(field, s, g1, k2),
                              _sp_mul(field, t, h1, k2), k2, 1),
                   one, k2, -1)
    c, d = _sp_divmod_monic(field, _sp_mul(field, s, b, k2), h1, k2)
    s1 = _sp_addsub(field, s, d, k2, -1)
    t1 = _sp_addsub(field, t,
                    _sp_addsub(field, _sp_mul(field, t, b, k2),
                               _sp_mul(field, c, g1, k2), k2, 1),
                    k2, -1)
    return g1, h1, s1, t1


def _hensel_tree_series(field, target_k, f, facs):
    """Lift mod-x factors (field-coefficient lists) of a monic series poly."""
    if len(facs) == 1:
        return [_sp_red(f, target_k)]
    half = len(facs) // 2
    left, right = facs[:half], facs[half:]
    g0 = [field.one()]
    for fi in left:
        g0 = u_mul(field, g0, fi)
    h0 = [field.one()]
    for fi in right:
        h0 = u_mul(field, h0, fi)
    one, s0, t0 = u_ext_gcd(field, g0, h0)
    assert u_deg(one) == 0

    def lift_list(cs):
        return [BivarPoly.const(field, c) for c in cs]

    g, h = lift_list(g0), lift_list(h0)
    s, t = lift_list(s0), lift_list(t0)
    k = 1
    while k < target_k:
        k = min(k * 2, target_k)
        g, h, s, t = _hensel_step_series(field, k, f, g, h, s, t)
    return (_hensel_tree_series(field, target_k, g, left)
            + _hensel_tree_series(field, target_k, h, right))


def _point_stream(field):
    if field.char:
        for c in field.elements():
            yield field.from_int(c)
        return
    yield field.zero()
    for n in count(1):
        yield field.from_int(n)
        yield field.from_int(-n)


# over tiny prime fields every x-specialization of a squarefree poly can be
# blocked; a short deterministic stream of automorphisms unblocks it
_XFORM_ATTEMPTS = 12


def _automorphism(field, idx):
    """Deterministic plane automorphism number idx: swap, then shears."""
    if idx == 0:
        return _swap_vars, _swap_vars
    p = field.char
    units = max(p - 1, 1)
    k = 1 + (idx - 1) // units
    c = field.from_int(1 + (idx - 1) % units)
    xv = BivarPoly.var(field, "x")
    yv = BivarPoly.var(field, "y")
    shift = BivarPoly.monomial(field, 0, k, c)

    def fwd(f):
        return f.substitute(xv + shift, yv)

    def inv(f):
        return f.substitute(xv - shift, yv)

    return fwd, inv


def _factor_sf_primitive(g: BivarPoly, xf_budget=0):
    """Irreducible factors of g: primitive in y, squarefree, depends on both
    variables, coprime to its y-derivative."""
    field = g.field
    lc = as_univar_in_y(g)[-1]
    max_tries = 4 * (g.total_degree() + 1) ** 2 + 4
    a0 = None
    for tries, cand in enumerate(_point_stream(field)):
        if tries > max_tries:
            break
        if field.is_zero(lc.eval_point(cand, field.zero())):
            continue
        u0 = g.specialize("x", cand).univar_coeffs("y")
        du0 = u_deriv(field, u0)
        if not du0 or u_deg(u_gcd(field, u0, du0)) != 0:
            continue
        a0 = cand
        break
    if a0 is None:
        if field.char and xf_budget > 0:
            fwd, inv = _automorphism(field, _XFORM_ATTEMPTS - xf_budget)
            sub = []
            _collect_factors(fwd(g), sub, xf_budget - 1)
            return [inv(h) for h, m in sub for _ in range(m)]
        raise DegreeLimitExceeded(
            "no squarefree specialization point in the ground field")

    gt = g.translate(a0, field.zero())
    lct = lc.translate(a0, field.zero())
    k = gt.degree_in("x") + lct.degree_in("x") + 1
    inv_lc = _series_inv_x(lct, k)
    ghat = _sp_red([trunc_x(c * inv_lc, k) for c in as_univar_in_y(gt)], k)
    assert ghat[-1] == BivarPoly.one(field)

    u0 = u_monic(field, gt.specialize("x", field.zero()).univar_coeffs("y"))
    _, modular_pairs = _factor_univar_coeffs(field, u0)
    modular = [u_monic(field, mf) for mf, _ in modular_pairs]
    if len(modular) == 1:
        return [g]
    if len(modular) > _MAX_MODULAR_FACTORS:
        raise DegreeLimitExceeded(
            f"{len(modular)} modular factors exceed the recombination cap")
    lifted = _hensel_tree_series(field, k, ghat, modular)

    pool = list(range(len(lifted)))
    size = 1
    while 2 * size <= len(pool):
        hit = None
        for subset in combinations(pool, size):
            prod = [BivarPoly.one(field)]
            for i in subset:
                prod = _sp_mul(field, prod, lifted[i], k)
            cand = from_univar_in_y(field, [trunc_x(c * lct, k) for c in prod])
            cy = content_y(cand)
            if not cy.is_constant():
                cand = exact_div(cand, cy)
            quo = try_exact_div(gt, cand)
            if quo is not None:
                hit = (cand, quo)
                break
        if hit is None:
            size += 1
            continue
        cand, quo = hit
        back = cand.translate(field.neg(a0), field.zero())
        rest = quo.translate(field.neg(a0), field.zero())
        return [back] + _factor_sf_primitive(rest)
    return [g]




def factor_bivariate(f: BivarPoly, max_total_degree: int = _DEFAULT_MAX_DEGREE):
    """(unit, [(irreducible, mult)]); irreducibles monic wrt graded lex.

    Deterministic: the list is sorted by the canonical polynomial key.
    """
    field = f.field
    if f.is_zero():
        raise ValueError("factor of the zero polynomial")
    if 0 <= max_total_degree < f.total_degree():
        raise DegreeLimitExceeded(
            f"total degree {f.total_degree()} exceeds cap {max_total_degree}")
    if f.is_constant():
        return f.constant_term(), []

    pairs = []
    i, j, resid = f.monomial_split()
    if i:
        pairs.append((BivarPoly.var(field, "x"), i))
    if j:
        pairs.append((BivarPoly.var(field, "y"), j))
    _collect_factors(resid, pairs, _XFORM_ATTEMPTS if field.char else 0)

    merged = {}
    for g, m in pairs:
        gn = g.scale(field.inv(g.leading_coeff()))
        merged[gn] = merged.get(gn, 0) + m
    out = sorted(merged.items(), key=lambda t: t[0].sort_key())

    prod = BivarPoly.one(field)
    for g, m in out:
        prod = prod * g ** m
    unit_poly = exact_div(f, prod)
    assert unit_poly.is_constant(), "unit residue is not constant"
    return unit_poly.constant_term(), out


def _collect_factors(g: BivarPoly, pairs, xf_budget=0):
    field = g.field
    if g.is_constant():
        return
    if g.is_univar_in("x") or g.is_univar_in("y"):
        var = "x" if g.is_univar_in("x") else "y"
        _, uf = factor_univar(g, var)
        pairs.extend(uf)
        return
    cy = content_y(g)
    if not cy.is_constant():
        _collect_factors(cy, pairs, xf_budget)
        g = exact_div(g, cy)
        if g.is_constant() or g.is_univar_in("y"):
            _collect_factors(g, pairs, xf_budget)
            return
    gy = g.derivative("y")
    if gy.is_zero():
        p = field.char
        gx = g.derivative("x")
        if not gx.is_zero():
            swapped_pairs = []
            _collect_factors(_swap_vars(g), swapped_pairs, xf_budget)
            pairs.extend((_swap_vars(h), m) for h, m in swapped_pairs)
            return
        # all exponents divisible by p: g is a p-th power over F_p
        root = BivarPoly(field, {(a // p, b // p): c
                                 for (a, b), c in g.coeffs.items()})
        sub = []
        _collect_factors(root, sub, xf_budget)
        pairs.extend((h, m * p) for h, m in sub)
        return
    d = gcd_exact(g, gy)
    if not d.is_constant():
        _collect_factors(d, pairs, xf_budget)
        _collect_factors(exact_div(g, d), pairs, xf_budget)
        return
    for h in _factor_sf_primitive(g, xf_budget):
        pairs.append((h, 1))


def irreducible_factors(f: BivarPoly, max_total_degree: int = _DEFAULT_MAX_DEGREE):
    """Just the sorted distinct irreducible factors."""
    _, pairs = factor_bivariate(f, max_total_degree)
    return [g for g, _ in pairs]


def is_irreducible(f: BivarPoly) -> bool:
    _, pairs = factor_bivariate(f)
    return len(pairs) == 1 and pairs[0][1] == 1
