"""Simple-normal-crossing tests for plane curve configurations.

All tests work on a list of distinct irreducible support components in one
chart.  Rational bad points are reported as blow-up candidates; bad points
that only exist over a proper extension of the ground field are detected by
gcd computations in k[t]/(q) and reported as witnesses so callers can abort
with a rationality error instead of silently doing the wrong thing.

A double point of a single irreducible component with squarefree tangent
cone is a geometric node: two smooth branches crossing transversally over
the closure.  Plain SNC checking accepts it; callers that need separate
branch equations pass separate_branches=True to force a blow-up there.
"""

from .exceptions import ValidationError
from .extfield import ExtensionField, reduce_coeff
from .factor import (_point_stream, factor_bivariate, factor_univar,
                     rational_roots, u_deg, u_div_exact, u_gcd)
from .poly import BivarPoly, gcd_exact, resultant


class SncReport:
    __slots__ = ("ok", "reason", "note", "branches")

    def __init__(self, ok, reason=None, note=None, branches=0):
        self.ok = ok
        self.reason = reason
        self.note = note
        self.branches = branches

    def __bool__(self):
        return self.ok

    def __repr__(self):
        tag = "snc" if self.ok else f"not snc: {self.reason}"
        return f"SncReport({tag}, branches={self.branches})"


def _swap(f: BivarPoly) -> BivarPoly:
    return BivarPoly(f.field, {(j, i): c for (i, j), c in f.coeffs.items()})


def support_components(f: BivarPoly):
    """Distinct monic irreducible factors, ignoring multiplicity."""
    _unit, pairs = factor_bivariate(f)
    return [p for p, _m in pairs]


def tangent_cone(f: BivarPoly, a, b) -> BivarPoly:
    return f.translate(a, b).lowest_form()


def _cone_squarefree2(cone: BivarPoly) -> bool:
    # binary quadratic c20*x^2 + c11*x*y + c02*y^2; squarefree iff disc != 0
    field = cone.field
    c20, c11, c02 = cone.coeff(2, 0), cone.coeff(1, 1), cone.coeff(0, 2)
    disc = field.sub(field.mul(c11, c11),
                     field.mul(field.from_int(4), field.mul(c20, c02)))
    return not field.is_zero(disc)


def _gcd_chain(polys):
    """gcd of several polynomials, zero entries skipped; None if all zero."""
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p if g is None else gcd_exact(g, p)
        if g.is_constant():
            return g
    return g


def _u_gcd_chain(field, lists):
    g = None
    for a in lists:
        if not a:
            continue
        g = list(a) if g is None else u_gcd(field, g, a)
        if u_deg(g) == 0:
            return g
    return g if g is not None else []


def _ext_specialize(ext: ExtensionField, f: BivarPoly):
    """f(alpha, y) as a coefficient list over k[t]/(q), alpha the class of t."""
    out = []
    for k in range(f.degree_in("y") + 1):
        ck = [f.coeff(i, k) for i in range(f.degree_in("x") + 1)]
        out.append(reduce_coeff(ext, ck))
    while out and ext.is_zero(out[-1]):
        out.pop()
    return out


def _linear_root(field, q: BivarPoly, var: str):
    # q monic linear in var
    i, j = (1, 0) if var == "x" else (0, 1)
    return field.neg(q.coeff(0, 0)) if field.eq(q.coeff(i, j), field.one()) \
        else field.div(field.neg(q.coeff(0, 0)), q.coeff(i, j))


def _component_singular_data(F: BivarPoly):
    """(rational singular points, irrational witness or None) for irreducible F."""
    Fx, Fy = F.derivative("x"), F.derivative("y")
    if Fx.is_zero() and Fy.is_zero():
        raise ValidationError("component is not reduced")
    if not Fy.is_zero() and F.degree_in("y") > 0:
        return _sing_elim_y(F, Fx, Fy, swapped=False)
    pts, irr = _sing_elim_y(_swap(F), _swap(Fy), _swap(Fx), swapped=True)
    return [(b, a) for (a, b) in pts], irr


def _sing_elim_y(F, Fx, Fy, swapped):
    field = F.field
    R = resultant(F, Fy, "y")
    if R.is_zero():
        raise ValidationError("degenerate elimination on irreducible input")
    pts = []
    irr = None
    for q, _m in factor_univar(R, "x")[1]:
        dq = q.degree_in("x")
        if dq == 1:
            a = _linear_root(field, q, "x")
            g = _gcd_chain([F.specialize("x", a), Fx.specialize("x", a),
                            Fy.specialize("x", a)])
            if g is None or g.is_constant():
                continue
            for r, _ in factor_univar(g, "y")[1]:
                if r.degree_in("y") == 1:
                    pts.append((a, _linear_root(field, r, "y")))
                else:
                    irr = irr or f"singular point with irrational second coordinate over x={field.fmt(a)}"
        else:
            ext = ExtensionField(field, q.univar_coeffs("x"))
            g = _u_gcd_chain(ext, [_ext_specialize(ext, F),
                                   _ext_specialize(ext, Fx),
                                   _ext_specialize(ext, Fy)])
            if g and u_deg(g) >= 1:
                irr = irr or f"singular point over irreducible locus {q.format()}"
    if swapped and irr:
        irr += " (coordinates swapped)"
    return pts, irr


def singular_points(f: BivarPoly):
    """Rational singular points of the reduced curve {f=0}, sorted."""
    comps = support_components(f)
    found = {}
    for F in comps:
        pts, _irr = _component_singular_data(F)
        for p in pts:
            found[_key(f.field, p)] = p
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            pts, _irr = _pair_checks(comps[i], comps[j], [])
            for p in pts:
                found[_key(f.field, p)] = p
    return [found[k] for k in sorted(found)]


def _key(field, p):
    return (field.sort_key(p[0]), field.sort_key(p[1]))


def _pair_checks(F, G, others):
    """(rational common points, irrational violation witnesses) for F != G."""
    field = F.field
    if F.degree_in("y") == 0 and G.degree_in("y") == 0:
        return [], []
    J = (F.derivative("x") * G.derivative("y")
         - F.derivative("y") * G.derivative("x"))
    R = resultant(F, G, "y")
    if R.is_zero():
        raise ValidationError("pair elimination degenerate; components equal?")
    pts = []
    irr = []
    for q, _m in factor_univar(R, "x")[1]:
        dq = q.degree_in("x")
        if dq == 1:
            a = _linear_root(field, q, "x")
            g = _gcd_chain([F.specialize("x", a), G.specialize("x", a)])
            if g is None or g.is_constant():
                continue
            Ja = J.specialize("x", a)
            for r, _ in factor_univar(g, "y")[1]:
                if r.degree_in("y") == 1:
                    pts.append((a, _linear_root(field, r, "y")))
                    continue
                # irrational crossing: bad only if tangential, singular,
                # or a third component passes through it
                if Ja.is_zero() or _divides_univar(Ja, r):
                    irr.append("tangential contact at irrational point "
                               f"over x={field.fmt(a)}")
                    continue
                for H in others:
                    Ha = H.specialize("x", a)
                    if Ha.is_zero() or _divides_univar(Ha, r):
                        irr.append("triple point at irrational point "
                                   f"over x={field.fmt(a)}")
                        break
        else:
            ext = ExtensionField(field, q.univar_coeffs("x"))
            g = _u_gcd_chain(ext, [_ext_specialize(ext, F),
                                   _ext_specialize(ext, G)])
            if not g or u_deg(g) < 1:
                continue
            Jx = _ext_specialize(ext, J)
            if not Jx or u_deg(_u_gcd_chain(ext, [g, Jx])) >= 1:
                irr.append(f"tangential contact over irreducible locus {q.format()}")
                continue
            for H in others:
                Hx = _ext_specialize(ext, H)
                if not Hx or u_deg(_u_gcd_chain(ext, [g, Hx])) >= 1:
                    irr.append(f"triple point over irreducible locus {q.format()}")
                    break
    return pts, irr


def _divides_univar(f, r):
    from .poly import try_exact_div
    return try_exact_div(f, r) is not None


def point_violation(comps_through, point, separate_branches=False):
    """(reason or None, note) for the support components through a point."""
    n = len(comps_through)
    if n == 0:
        return None, None
    if n >= 3:
        return f"{n} components meet at one point", None
    a, b = point
    if n == 2:
        F, G = comps_through
        mF, mG = F.multiplicity_at(a, b), G.multiplicity_at(a, b)
        if mF > 1 or mG > 1:
            return "component singular at a crossing", None
        lF = tangent_cone(F, a, b)
        lG = tangent_cone(G, a, b)
        field = F.field
        det = field.sub(field.mul(lF.coeff(1, 0), lG.coeff(0, 1)),
                        field.mul(lF.coeff(0, 1), lG.coeff(1, 0)))
        if field.is_zero(det):
            return "tangential crossing", None
        return None, None
    F = comps_through[0]
    m = F.multiplicity_at(a, b)
    if m <= 1:
        return None, None
    if m == 2 and _cone_squarefree2(tangent_cone(F, a, b)):
        if separate_branches:
            return "node needs branch separation", "geometric-node"
        return None, "geometric-node"
    return f"point of multiplicity {m}", None


def is_snc_at(f: BivarPoly, point) -> SncReport:
    """Is the support of {f=0} a simple normal crossing at a rational point?"""
    field = f.field
    a, b = point
    comps = [F for F in support_components(f)
             if field.is_zero(F.eval_point(a, b))]
    reason, note = point_violation(comps, point)
    branches = len(comps)
    if note == "geometric-node":
        branches = 2
    return SncReport(reason is None, reason, note, branches)


def chart_violations(components, separate_branches=False):
    """Scan one chart's support components for SNC violations.

    components: list of distinct irreducible BivarPoly.
    Returns (sorted [((a, b), reason)], [irrational witness strings]).
    """
    if not components:
        return [], []
    field = components[0].field
    cand = {}
    irrational = []
    for F in components:
        pts, irr = _component_singular_data(F)
        for p in pts:
            cand[_key(field, p)] = p
        if irr:
            irrational.append(irr)
    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            others = [components[k] for k in range(len(components))
                      if k != i and k != j]
            pts, irr = _pair_checks(components[i], components[j], others)
            for p in pts:
                cand[_key(field, p)] = p
            irrational.extend(irr)
    bad = []
    for k in sorted(cand):
        p = cand[k]
        thru = [F for F in components
                if field.is_zero(F.eval_point(p[0], p[1]))]
        reason, _note = point_violation(thru, p, separate_branches)
        if reason:
            bad.append((p, reason))
    return bad, irrational


# ---- curve point utilities used by the morphism layer -----------------------

def rational_points_on(h: BivarPoly, avoid=(), span=25):
    """Yield rational points of {h = 0} where none of the avoid polys vanish.

    Over F_p the whole plane is scanned.  Over Q a bounded strip of x and y
    values is tried in both orientations, so a miss does not prove the curve
    has no rational points; callers must treat exhaustion as "not found".
    """
    field = h.field

    def clear(pt):
        return all(not field.is_zero(g.eval_point(pt[0], pt[1])) for g in avoid)

    if field.char:
        elems = [field.from_int(i) for i in range(field.char)]
        for a in elems:
            for b in elems:
                pt = (a, b)
                if field.is_zero(h.eval_point(a, b)) and clear(pt):
                    yield pt
        return

    stream = _point_stream(field)
    vals = [next(stream) for _ in range(span)]
    seen = set()

    def emit(pt):
        k = _key(field, pt)
        if k in seen:
            return None
        seen.add(k)
        return pt if clear(pt) else None

    for var, other in (("x", "y"), ("y", "x")):
        for a in vals:
            hs = h.specialize(var, a)
            if hs.is_zero():
                # the whole line lies on the curve
                for b in vals:
                    pt = (a, b) if var == "x" else (b, a)
                    if (p := emit(pt)) is not None:
                        yield p
            elif not hs.is_constant():
                for b in rational_roots(hs, other):
                    pt = (a, b) if var == "x" else (b, a)
                    if (p := emit(pt)) is not None:
                        yield p


def common_zeros(F: BivarPoly, G: BivarPoly, irrational_off=()):
    """Common zeros of a coprime pair: (rational points, irrational flag).

    The flag reports whether common zeros exist over the algebraic closure
    beyond the rational ones, decided exactly with gcd computations over
    k[t]/(q) for each irrational x-factor q of the eliminant.  Zeros lying
    on the locus of the irrational_off polynomials do not raise the flag
    (rational points there are still returned; callers filter those).
    """
    field = F.field
    if F.is_zero() or G.is_zero():
        raise ValidationError("common_zeros needs nonzero polynomials")
    if F.is_constant() or G.is_constant():
        return [], False
    off = None
    for d in irrational_off:
        off = d if off is None else off * d
    R = resultant(F, G, "y")
    if R.is_zero():
        raise ValidationError("common_zeros pair shares a component")
    pts, irrational = [], False
    for q, _m in factor_univar(R, "x")[1]:
        if q.degree_in("x") == 1:
            a = _linear_root(field, q, "x")
            g = _gcd_chain([F.specialize("x", a), G.specialize("x", a)])
            if g is None or g.is_constant():
                continue  # spurious eliminant root (leading coefficients)
            for r, _k in factor_univar(g, "y")[1]:
                if r.degree_in("y") == 1:
                    pts.append((a, _linear_root(field, r, "y")))
                elif off is None or not _divides_univar_poly(off.specialize("x", a), r):
                    irrational = True
        else:
            ext = ExtensionField(field, q.univar_coeffs("x"))
            g = _u_gcd_chain(ext, [_ext_specialize(ext, F),
                                   _ext_specialize(ext, G)])
            if g and u_deg(g) >= 1:
                if off is not None:
                    p_spec = _ext_specialize(ext, off)
                    while u_deg(g) >= 1:
                        k = u_gcd(ext, g, p_spec)
                        if u_deg(k) < 1:
                            break
                        g = u_div_exact(ext, g, k)
                    if u_deg(g) < 1:
                        continue  # every common zero sits on the off locus
                irrational = True
    return sorted(pts, key=lambda p: _key(field, p)), irrational


def _divides_univar_poly(p: BivarPoly, r: BivarPoly) -> bool:
    # does the irreducible r in k[y] divide p (possibly zero or constant)?
    if p.is_zero():
        return True
    if p.is_constant():
        return False
    return _divides_univar(p, r)
