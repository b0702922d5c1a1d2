"""Ramification invariants of a plane morphism model.

Contracted critical components carry a complexity index: the gap between
the Jacobian order along the component plus one and the largest order a
product of admissible parameters at the image point can reach.  Components
mapping onto curves carry a tameness test instead.  Point classification
matches the local shape of the map at a source point against the monomial
normal forms and reports the witness exponents.

Parameter maximization walks the adjustment ladder v <- v - lam * u^m.
Each rung is exact: lam comes from a residue proportionality modulo the
component equation, never from floating or sampled arithmetic.
"""

from .exceptions import (AuditFailure, NegativeComplexity, NotAMorphismHere,
                         NotPrepared, ValidationError)
from .frac import Frac, frac_jacobian
from .model import _reduce_mod, _y_coeff, poly_at
from .poly import BivarPoly, order_along
from .snc import common_zeros

_RAISE_CAP = 200


class CriticalComponent:
    """A source divisor where the current composite ramifies."""

    __slots__ = ("div", "germ", "jac_order")

    def __init__(self, div, germ, jac_order):
        self.div = div
        self.germ = germ
        self.jac_order = jac_order

    def __repr__(self):
        return f"CriticalComponent({self.div.did}, {self.germ.kind}, {self.jac_order})"


class Frame:
    """A regular system of parameters at a target point.

    u and v are polynomials in the coordinates of the chart, both vanishing
    at the point, aligned with the branch curves through it when there are
    any.
    """

    __slots__ = ("chart", "at", "u", "v")

    def __init__(self, chart, at, u, v):
        self.chart = chart
        self.at = at
        self.u = u
        self.v = v

    def swapped(self):
        return Frame(self.chart, self.at, self.v, self.u)

    def __repr__(self):
        return (f"Frame({self.chart} at {self.at}: "
                f"{self.u.format()}, {self.v.format()})")


class ComplexityRecord:
    __slots__ = ("did", "jac_order", "best", "frame", "index")

    def __init__(self, did, jac_order, best, frame, index):
        self.did = did
        self.jac_order = jac_order
        self.best = best
        self.frame = frame
        self.index = index

    def __repr__(self):
        return f"ComplexityRecord({self.did}, i={self.index})"


class TameRecord:
    __slots__ = ("did", "image_did", "a", "jac_order", "tame")

    def __init__(self, did, image_did, a, jac_order):
        self.did = did
        self.image_did = image_did
        self.a = a
        self.jac_order = jac_order
        self.tame = jac_order == a - 1

    def certificate(self) -> dict:
        return {"component": self.did, "image": self.image_did,
                "pullback_order": self.a, "jacobian_order": self.jac_order,
                "expected": self.a - 1}

    def __repr__(self):
        tag = "tame" if self.tame else "wild"
        return f"TameRecord({self.did}, {tag}, ord={self.jac_order}, a={self.a})"


class PointReport:
    """Outcome of classifying one source point.

    monomial True: case in 1..6, form 1 or 2, frame and exponents filled.
    monomial False: reason in {"wild", "positive-complexity", "not-prepared"}
    with supporting detail.
    """

    __slots__ = ("chart", "pt", "monomial", "case", "form", "frame",
                 "exponents", "reason", "detail")

    def __init__(self, chart, pt, monomial, case=None, form=None, frame=None,
                 exponents=None, reason=None, detail=None):
        self.chart = chart
        self.pt = pt
        self.monomial = monomial
        self.case = case
        self.form = form
        self.frame = frame
        self.exponents = exponents
        self.reason = reason
        self.detail = detail

    def __repr__(self):
        if self.monomial:
            return f"PointReport({self.chart}{self.pt}: case {self.case})"
        return f"PointReport({self.chart}{self.pt}: {self.reason})"


# ---- component enumeration -----------------------------------------------------


def critical_components(model):
    """Components of the current critical locus, with germ and order.

    Root critical curves can shed criticality after target blow-ups (the
    composite may carry them isomorphically onto exceptionals) and source
    exceptionals can acquire it, so orders come from the deepest germs, not
    from the root multiplicities.
    """
    model.critical_locus()
    out = []
    for div in model.src_ledger.all():
        if div.kind not in ("critical-component", "exceptional"):
            continue
        germ = model.component_germ(div)
        j = frac_jacobian(germ.u, germ.v)
        if j.is_zero():
            raise ValidationError("degenerate germ Jacobian; the pair is not dominant")
        k = j.order_along(germ.h)
        if k >= 1:
            out.append(CriticalComponent(div, germ, k))
    return out


def contracted_components(model):
    return [c for c in critical_components(model) if c.germ.kind == "vertical"]


def horizontal_components(model):
    return [c for c in critical_components(model) if c.germ.kind == "horizontal"]


def _branches_at(model, T, alpha):
    """Current branch curves through a target point: (divisor, local eq)."""
    field = model.field
    found = {}
    for comp in horizontal_components(model):
        tdiv = model._ledger_image(comp.germ, "branch-component")
        if tdiv.did in found:
            continue
        eq = model.tgt_ledger.equation_in(tdiv, T)
        if eq is None or eq.is_constant():
            continue
        if field.is_zero(eq.eval_point(*alpha)):
            found[tdiv.did] = (tdiv, eq)
    order = {d.did: i for i, d in enumerate(model.tgt_ledger.all())}
    return [found[k] for k in sorted(found, key=order.__getitem__)]


# ---- orders along a contracted component ----------------------------------------


def vertical_order(model, div, g: BivarPoly) -> int:
    """Order along the contracted divisor of the pullback of g.

    g is a polynomial in the coordinates of the target chart where the
    image point of the component lives.
    """
    germ = model.component_germ(div)
    if germ.kind != "vertical":
        raise ValidationError("vertical_order needs a contracted component")
    val = poly_at(g, germ.u, germ.v)
    if val.is_zero():
        raise ValidationError("the pullback vanishes identically; g cuts the image")
    return val.order_along(germ.h)


def _pull(germ, g: BivarPoly) -> Frac:
    return poly_at(g, germ.u, germ.v)


def _frac_pow(fr: Frac, m: int) -> Frac:
    # num and den stay coprime under powers, the denominator stays monic
    return Frac(fr.num ** m, fr.den ** m, _reduced=True)


def _const_along(r: Frac, h: BivarPoly):
    """The ground field constant congruent to r mod h, or None.

    Decided exactly: both parts of r are reduced with the tracked pseudo
    remainder and the residues must be proportional over the field.
    """
    field = r.field
    d = h.degree_in("y")
    lc = _y_coeff(h, d) if d else BivarPoly.one(field)
    r0, k0 = _reduce_mod(r.num, h)
    r1, k1 = _reduce_mod(r.den, h)
    if r0.is_zero() or r1.is_zero():
        return None
    a = r0 * lc ** k1
    b = r1 * lc ** k0
    lam = field.div(a.leading_coeff(), b.leading_coeff())
    return lam if a == b.scale(lam) else None


def _greedy(germ, v: BivarPoly, u: BivarPoly):
    """Raise the order of v along the component by steps v - lam * u^m."""
    h = germ.h
    us = _pull(germ, u)
    nu_u = us.order_along(h)
    if nu_u < 1:
        raise AuditFailure("frame parameter does not vanish on the component image")
    n = _pull(germ, v).order_along(h)
    for _ in range(_RAISE_CAP):
        if n % nu_u:
            return v, n
        m = n // nu_u
        lam = _const_along(_pull(germ, v) / _frac_pow(us, m), h)
        if lam is None or h.field.is_zero(lam):
            return v, n
        v = v - (u ** m).scale(lam)
        n2 = _pull(germ, v).order_along(h)
        if n2 <= n:
            raise AuditFailure("parameter adjustment failed to raise the order")
        n = n2
    raise AuditFailure("parameter raising exceeded the iteration cap")


def _greedy_multi(germs, v, u):
    """Simultaneous raising over several components through one point.

    A step taken for one component may never lower the order on another;
    the orders over the adjustment family form a chain, so alternation
    reaches the common maximum.
    """
    if len(germs) == 1:
        return _greedy(germs[0], v, u)[0]
    for _ in range(_RAISE_CAP):
        progressed = False
        for germ in germs:
            before = [_pull(g, v).order_along(g.h) for g in germs]
            v2, _ = _greedy(germ, v, u)
            if v2 == v:
                continue
            after = [_pull(g, v2).order_along(g.h) for g in germs]
            if any(a < b for a, b in zip(after, before)):
                raise AuditFailure("adjustment lowered the order on a sibling component")
            v = v2
            progressed = True
        if not progressed:
            return v
    raise AuditFailure("simultaneous raising exceeded the iteration cap")


# ---- admissible frames -----------------------------------------------------------


def _coordinate_pair(field, alpha):
    xbar = BivarPoly.var(field, "x") - BivarPoly.const(field, alpha[0])
    ybar = BivarPoly.var(field, "y") - BivarPoly.const(field, alpha[1])
    return xbar, ybar


def _lin_part(g: BivarPoly, at):
    return (g.derivative("x").eval_point(*at), g.derivative("y").eval_point(*at))


def _transversal(g1, g2, at) -> bool:
    f = g1.field
    ax, ay = _lin_part(g1, at)
    bx, by = _lin_part(g2, at)
    return not f.is_zero(f.sub(f.mul(ax, by), f.mul(ay, bx)))


def build_frame(model, T, alpha, germs):
    """Admissible parameters at a target point, orders maximized for the
    given contracted-component germs (each must image to this point).

    Returns (Frame, aligned branch divisors).  With two branch curves the
    frame is forced; with one, u is its equation and only v moves; with
    none both slots are free and the better of the two coordinate starts
    wins, alternating complement raises until stable.
    """
    field = model.field
    branches = _branches_at(model, T, alpha)
    if len(branches) > 2:
        raise NotPrepared(f"{len(branches)} branch curves through {alpha} in "
                          f"{T}; the branch locus is not normal crossings")
    xbar, ybar = _coordinate_pair(field, alpha)
    if len(branches) == 2:
        u, v = branches[0][1], branches[1][1]
        if not _transversal(u, v, alpha):
            raise NotPrepared(f"branch curves tangent at {alpha} in {T}")
        return Frame(T, alpha, u, v), [branches[0][0], branches[1][0]]
    if len(branches) == 1:
        u = branches[0][1]
        lp = _lin_part(u, alpha)
        if field.is_zero(lp[0]) and field.is_zero(lp[1]):
            raise NotPrepared(f"branch curve singular at {alpha} in {T}")
        v = ybar if not field.is_zero(lp[0]) else xbar
        if germs:
            v = _greedy_multi(germs, v, u)
        return Frame(T, alpha, u, v), [branches[0][0]]
    if not germs:
        return Frame(T, alpha, xbar, ybar), []

    def total(u, v):
        return sum(_pull(g, u).order_along(g.h) + _pull(g, v).order_along(g.h)
                   for g in germs)

    c1 = _greedy_multi(germs, ybar, xbar)
    c2 = _greedy_multi(germs, xbar, ybar)
    u, v = (xbar, c1) if total(xbar, c1) >= total(ybar, c2) else (ybar, c2)
    for _ in range(_RAISE_CAP):
        u2 = _greedy_multi(germs, u, v)
        v2 = _greedy_multi(germs, v, u2)
        if u2 == u and v2 == v:
            break
        u, v = u2, v2
    else:
        raise AuditFailure("frame alternation exceeded the iteration cap")
    return Frame(T, alpha, u, v), []


def maximize_admissible(model, div):
    """Best admissible frame for one contracted component.

    Returns (Frame, order of the pullback of u*v along the component).
    """
    germ = model.component_germ(div)
    if germ.kind != "vertical":
        raise ValidationError("maximize_admissible needs a contracted component")
    T, alpha = germ.image[1]
    frame, _ = build_frame(model, T, alpha, [germ])
    value = (_pull(germ, frame.u).order_along(germ.h)
             + _pull(germ, frame.v).order_along(germ.h))
    return frame, value


def complexity(model, div) -> ComplexityRecord:
    """Complexity index of a contracted component.

    Jacobian order along the component, plus one, minus the maximal order
    of an admissible parameter product.  Never negative for a morphism;
    a violation means the model is inconsistent and raises.
    """
    germ = model.component_germ(div)
    if germ.kind != "vertical":
        raise ValidationError("complexity needs a contracted component")
    nu_s = frac_jacobian(germ.u, germ.v).order_along(germ.h)
    frame, best = maximize_admissible(model, div)
    index = nu_s + 1 - best
    if index < 0:
        raise NegativeComplexity(
            f"component {div.did}: Jacobian order {nu_s} + 1 is below the "
            f"achieved parameter order {best}")
    return ComplexityRecord(div.did, nu_s, best, frame, index)


# ---- tameness along horizontal components ----------------------------------------


def tame_test(model, div) -> TameRecord:
    """Compare the Jacobian order along a horizontal component with the
    pullback order of its image curve minus one.  Equality is tameness;
    in characteristic zero it always holds.
    """
    germ = model.component_germ(div)
    if germ.kind != "horizontal":
        raise ValidationError("tame_test needs a component mapping onto a curve")
    j = frac_jacobian(germ.u, germ.v)
    jord = 0 if j.is_zero() else j.order_along(germ.h)
    tdiv = model._ledger_image(germ, "branch-component")
    w = model.tgt_ledger.equation_in(tdiv, germ.target)
    if w is None or w.is_constant():
        raise AuditFailure(f"image of {div.did} has no equation in {germ.target}")
    a = poly_at(w, germ.u, germ.v).order_along(germ.h)
    return TameRecord(div.did, tdiv.did, a, jord)


# ---- point classification ---------------------------------------------------------


def _ord_along(fr: Frac, h: BivarPoly) -> int:
    if fr.is_zero():
        raise AuditFailure("zero pullback where the map is dominant")
    return fr.order_along(h)


def _unit_at(fr: Frac, pt) -> bool:
    return fr.is_unit_at(*pt)


def _param_at(h: BivarPoly, fr: Frac, pt) -> bool:
    # does fr cut a smooth curve through pt transversal to {h = 0}?
    f = h.field
    if not fr.is_regular_at(*pt) or not f.is_zero(fr.eval_point(*pt)):
        return False
    jf = (fr.derivative("y") * h.derivative("x")
          - fr.derivative("x") * h.derivative("y"))
    return (not jf.is_zero()) and jf.is_unit_at(*pt)


def _char_ok(field, n: int) -> bool:
    # the multiplicity must stay invertible in the ground field
    if n == 0:
        return False
    return field.char == 0 or n % field.char != 0


def _not_mono(cid, pt, reason, detail):
    return PointReport(cid, pt, False, reason=reason, detail=detail)


def classify_monomial(model, cid, pt) -> PointReport:
    """Match the map at one source point against the monomial normal forms.

    The point must be canonical and alive in its chart.  Preconditions that
    fail (more than two critical branches, tangency, undefined lift) come
    back as reason "not-prepared"; a wild horizontal branch as "wild"; a
    positive complexity index as "positive-complexity".  On success the
    report carries the witness: the admissible frame, the local branch
    alignment, the form (1 or 2), and the exponents.
    """
    field = model.field
    try:
        T, gu, gv = model.transport_germ(cid, pt)
    except NotAMorphismHere as e:
        return _not_mono(cid, pt, "not-prepared", str(e))
    alpha = (gu.eval_point(*pt), gv.eval_point(*pt))

    through = []
    for comp in critical_components(model):
        eq = model.src_ledger.equation_in(comp.div, cid)
        if eq is None or eq.is_constant():
            continue
        if field.is_zero(eq.eval_point(*pt)):
            through.append((comp, eq))
    if len(through) > 2:
        return _not_mono(cid, pt, "not-prepared",
                         f"{len(through)} critical components through the point")
    if len(through) == 2 and not _transversal(through[0][1], through[1][1], pt):
        return _not_mono(cid, pt, "not-prepared",
                         "critical components tangent at the point")
    for _, eq in through:
        if field.is_zero(_lin_part(eq, pt)[0]) and field.is_zero(_lin_part(eq, pt)[1]):
            return _not_mono(cid, pt, "not-prepared",
                             "critical component singular at the point")

    rs = [(c, e) for c, e in through if c.germ.kind == "horizontal"]
    ss = [(c, e) for c, e in through if c.germ.kind == "vertical"]

    for comp, _ in rs:
        rec = tame_test(model, comp.div)
        if not rec.tame:
            return _not_mono(cid, pt, "wild", rec)

    recs = []
    for comp, _ in ss:
        ic, ipt = comp.germ.image[1]
        if ic != T or not model.target.pt_eq(ipt, alpha):
            raise AuditFailure(f"{comp.div.did} images {ipt} in {ic}, but the "
                               f"point images {alpha} in {T}")
        recs.append(complexity(model, comp.div))
    i_beta = max((r.index for r in recs), default=0)
    if i_beta > 0:
        return _not_mono(cid, pt, "positive-complexity", i_beta)

    frame, branch_divs = build_frame(model, T, alpha, [c.germ for c, _ in ss])
    for comp, rec in zip((c for c, _ in ss), recs):
        got = (_pull(comp.germ, frame.u).order_along(comp.germ.h)
               + _pull(comp.germ, frame.v).order_along(comp.germ.h))
        if got != rec.best:
            raise AuditFailure(
                f"no simultaneous maximizing frame: {comp.div.did} reaches "
                f"{rec.best} alone but {got} at the point")

    def align(frame, branch_divs, want_did):
        # put the parameter cutting the wanted branch curve in the u slot
        if branch_divs and branch_divs[0].did == want_did:
            return frame
        if len(branch_divs) == 2 and branch_divs[1].did == want_did:
            return frame.swapped()
        raise AuditFailure(f"image curve {want_did} is not among the branch "
                           f"curves at {alpha}")

    us = poly_at(frame.u, gu, gv)
    vs = poly_at(frame.v, gu, gv)

    if not rs and not ss:
        jf = frac_jacobian(us, vs)
        if jf.is_zero() or not jf.is_unit_at(*pt):
            raise AuditFailure("degenerate frame pullback at an uncritical point")
        return PointReport(cid, pt, True, case=1, form=1, frame=frame,
                           exponents=(0, 0, 0, 0))

    if len(rs) == 1 and not ss:
        comp, h = rs[0]
        tdid = tame_test(model, comp.div).image_did
        frame = align(frame, branch_divs, tdid)
        us = poly_at(frame.u, gu, gv)
        vs = poly_at(frame.v, gu, gv)
        a = _ord_along(us, h)
        if _ord_along(vs, h) != 0:
            raise AuditFailure("transversal parameter pulls back onto the branch")
        gamma = us / h ** a
        if not (_unit_at(gamma, pt) and _char_ok(field, a)
                and _param_at(h, vs, pt)):
            raise AuditFailure("normal form verification failed on a tame branch")
        return PointReport(cid, pt, True, case=2, form=1, frame=frame,
                           exponents=(a, 0, 0, 1))

    if len(rs) == 2:
        (c1, h1), (c2, h2) = rs
        t1 = tame_test(model, c1.div).image_did
        t2 = tame_test(model, c2.div).image_did
        if t1 == t2:
            raise AuditFailure("both branches image the same curve yet are tame")
        frame = align(frame, branch_divs, t1)
        us = poly_at(frame.u, gu, gv)
        vs = poly_at(frame.v, gu, gv)
        a = _ord_along(us, h1)
        d = _ord_along(vs, h2)
        if _ord_along(us, h2) != 0 or _ord_along(vs, h1) != 0:
            raise AuditFailure("branch parameters mix across the crossing")
        gamma = us / h1 ** a
        delta = vs / h2 ** d
        if not (_unit_at(gamma, pt) and _unit_at(delta, pt)
                and _char_ok(field, a * d)):
            raise AuditFailure("normal form verification failed at a branch crossing")
        return PointReport(cid, pt, True, case=3, form=1, frame=frame,
                           exponents=(a, 0, 0, d))

    if not rs and len(ss) == 1:
        _, h = ss[0]
        a = _ord_along(us, h)
        c = _ord_along(vs, h)
        gamma = us / h ** a
        delta = vs / h ** c
        gu_unit = _unit_at(gamma, pt)
        dv_unit = _unit_at(delta, pt)
        jf = frac_jacobian(us, vs)
        n = _ord_along(jf, h)
        if n != a + c - 1 or not _unit_at(jf / h ** n, pt):
            raise AuditFailure("Jacobian order does not match the exponents "
                               "at a contracted component")
        if gu_unit and dv_unit:
            return PointReport(cid, pt, True, case=4, form=2, frame=frame,
                               exponents=(a, 0, c, 0))
        if gu_unit and not dv_unit:
            if not (_param_at(h, delta, pt) and _char_ok(field, a)):
                raise AuditFailure("cofactor is not a transversal parameter")
            return PointReport(cid, pt, True, case=4, form=1, frame=frame,
                               exponents=(a, 0, c, 1))
        if dv_unit and not gu_unit:
            if not (_param_at(h, gamma, pt) and _char_ok(field, c)):
                raise AuditFailure("cofactor is not a transversal parameter")
            return PointReport(cid, pt, True, case=4, form=1, frame=frame,
                               exponents=(a, 1, c, 0))
        raise AuditFailure("both cofactors vanish at a contracted component")

    if len(rs) == 1 and len(ss) == 1:
        compr, hr = rs[0]
        _, hs = ss[0]
        tdid = tame_test(model, compr.div).image_did
        frame = align(frame, branch_divs, tdid)
        us = poly_at(frame.u, gu, gv)
        vs = poly_at(frame.v, gu, gv)
        a = _ord_along(us, hr)
        b = _ord_along(us, hs)
        d = _ord_along(vs, hs)
        if _ord_along(vs, hr) != 0:
            raise AuditFailure("transversal parameter pulls back onto the branch")
        gamma = us / (hr ** a * hs ** b)
        delta = vs / hs ** d
        if not (_unit_at(gamma, pt) and _unit_at(delta, pt)
                and _char_ok(field, a * d)):
            raise AuditFailure("normal form verification failed at a mixed crossing")
        return PointReport(cid, pt, True, case=5, form=1, frame=frame,
                           exponents=(a, b, 0, d))

    # two contracted components
    (_, h1), (_, h2) = ss
    a = _ord_along(us, h1)
    b = _ord_along(us, h2)
    c = _ord_along(vs, h1)
    d = _ord_along(vs, h2)
    gamma = us / (h1 ** a * h2 ** b)
    delta = vs / (h1 ** c * h2 ** d)
    if not (_unit_at(gamma, pt) and _unit_at(delta, pt)
            and _char_ok(field, a * d - b * c)):
        raise AuditFailure("normal form verification failed at a contracted crossing")
    return PointReport(cid, pt, True, case=6, form=1, frame=frame,
                       exponents=(a, b, c, d))


# ---- point enumeration and global index --------------------------------------------


def _singular_points(eq: BivarPoly):
    dx, dy = eq.derivative("x"), eq.derivative("y")
    for d in (dx, dy):
        if d.is_constant() and not d.is_zero():
            return []
    d = dx if not dx.is_zero() else dy
    if d.is_constant():
        return []
    pts, _irr = common_zeros(eq, d)
    field = eq.field
    other = dy if d is dx else dx
    return [p for p in pts
            if other.is_zero() or field.is_zero(other.eval_point(*p))]


def special_points(model):
    """Candidate non-generic points: pairwise crossings of ledgered source
    divisors plus rational singular points of single components, canonical
    and alive, deterministically ordered."""
    field = model.field
    model.critical_locus()
    out = []
    seen = set()

    def push(cid, p):
        can = model.source.canonical_point(cid, p)
        if can is None:
            return
        key = (can[0], tuple(field.sort_key(c) for c in can[1]))
        if key not in seen:
            seen.add(key)
            out.append(can)

    for cid in model.source.all_ids():
        eqs = []
        for div in model.src_ledger.all():
            eq = model.src_ledger.equation_in(div, cid)
            if eq is not None and not eq.is_constant():
                eqs.append(eq)
        for i, ei in enumerate(eqs):
            for p in _singular_points(ei):
                push(cid, p)
            for ej in eqs[i + 1:]:
                if ei == ej:
                    continue
                pts, _irr = common_zeros(ei, ej)
                for p in pts:
                    push(cid, p)
    order = {c: i for i, c in enumerate(model.source.order)}
    out.sort(key=lambda it: (order[it[0]],
                             tuple(field.sort_key(c) for c in it[1])))
    return out


def point_complexity(model, cid, pt) -> int:
    """Largest complexity index among contracted components through a point."""
    field = model.field
    best = 0
    for comp in contracted_components(model):
        eq = model.src_ledger.equation_in(comp.div, cid)
        if eq is None or eq.is_constant():
            continue
        if field.is_zero(eq.eval_point(*pt)):
            best = max(best, complexity(model, comp.div).index)
    return best


def global_complexity(model):
    """(I, ids): the maximal complexity index over the contracted critical
    components and the components attaining it, in ledger order.  With no
    contracted components the pair is (0, [])."""
    recs = [complexity(model, c.div) for c in contracted_components(model)]
    if not recs:
        return 0, []
    top = max(r.index for r in recs)
    return top, [r.did for r in recs if r.index == top]
