"""Dominant map germs tracked through blow-ups on both sides.

The defining data is one polynomial pair (u, v).  Every source chart holds a
"carrier": the pair rewritten in that chart's coordinates and pushed down the
target tree as far as polynomial substitution reaches.  A carrier is allowed
to be stale (its target chart shallower than the newest blow-ups); past the
carrier the transport continues pointwise with fractional germs whose
denominators are units where they are used.

Descent below a blown-up target point follows the usual dichotomy: with
u' = u - a and v' = v - b, the lift lands in the A-chart when u' generates
the pair locally and in the B-chart when v' does.  When neither does, the
fiber ideal is not locally principal and the lift does not exist; those
points are exactly the mandatory source centers of the main loop.
"""

from .charts import ChartTree
from .divisors import DivisorLedger
from .exceptions import (EliminationDegenerate, InseparableMap,
                         NonRationalSingularity, NoRationalPointOnComponent,
                         NotAMorphismHere, ValidationError)
from .factor import factor_bivariate, u_mod
from .fields import same_field
from .frac import Frac, poly_pair
from .poly import (BivarPoly, as_univar_in_y, exact_div, gcd_exact,
                   order_along, try_exact_div)
from .snc import common_zeros, rational_points_on

_CONTRACTED = 10 ** 9  # stands in for "vanishes to infinite order"


class Carrier:
    """The pair as polynomials from one source chart into one target chart."""

    __slots__ = ("target", "u", "v")

    def __init__(self, target, u: BivarPoly, v: BivarPoly):
        self.target = target
        self.u = u
        self.v = v

    def __repr__(self):
        return f"Carrier({self.target}, {self.u.format()}, {self.v.format()})"


class PointImage:
    """Where a source point lands: kind is 'point' or 'stall'.

    For 'point' the pair (target, pt) is the canonical alive image and
    (u, v) the germ into that chart.  For 'stall' they name the shallowest
    representative of the blown-up target point whose fiber ideal fails to
    be principal at the source point.
    """

    __slots__ = ("kind", "target", "pt", "u", "v")

    def __init__(self, kind, target, pt, u, v):
        self.kind = kind
        self.target = target
        self.pt = pt
        self.u = u
        self.v = v

    def __repr__(self):
        return f"PointImage({self.kind}, {self.target}, {self.pt})"


class ComponentGerm:
    """Transport along the generic point of a source divisor.

    kind 'vertical' means the component is contracted; image is then
    ("point", (chart, pt)) with an alive canonical target point.  kind
    'horizontal' means it dominates a curve; image is ("divisor", did) for a
    ledgered target divisor or ("curve", eq) for a curve first seen here,
    with eq a local equation in the target chart.
    """

    __slots__ = ("kind", "src_chart", "h", "target", "u", "v", "image")

    def __init__(self, kind, src_chart, h, target, u, v, image):
        self.kind = kind
        self.src_chart = src_chart
        self.h = h
        self.target = target
        self.u = u
        self.v = v
        self.image = image

    def __repr__(self):
        return f"ComponentGerm({self.kind}, {self.src_chart} -> {self.target})"


def poly_jacobian(u: BivarPoly, v: BivarPoly) -> BivarPoly:
    return (u.derivative("x") * v.derivative("y")
            - u.derivative("y") * v.derivative("x"))


def _nullspace(field, rows, ncols):
    """Basis of the right null space of the (rows x ncols) matrix."""
    m = [row[:] for row in rows]
    pivots = []
    prow = 0
    for col in range(ncols):
        pr = next((r for r in range(prow, len(m))
                   if not field.is_zero(m[r][col])), None)
        if pr is None:
            continue
        m[prow], m[pr] = m[pr], m[prow]
        inv = field.inv(m[prow][col])
        m[prow] = [field.mul(inv, e) for e in m[prow]]
        for r in range(len(m)):
            if r != prow and not field.is_zero(m[r][col]):
                c = m[r][col]
                m[r] = [field.sub(e, field.mul(c, p))
                        for e, p in zip(m[r], m[prow])]
        pivots.append(col)
        prow += 1
        if prow == len(m):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [field.zero()] * ncols
        vec[free] = field.one()
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg(m[i][free])
        basis.append(vec)
    return basis


def _y_coeff(f: BivarPoly, d: int) -> BivarPoly:
    return BivarPoly(f.field, {(i, 0): c for (i, j), c in f.coeffs.items()
                               if j == d})


def _reduce_mod(w: BivarPoly, h: BivarPoly):
    """(r, k) with lc_y(h)^k * w congruent to r mod h and deg_y r < deg_y h.

    For h free of y (an irreducible poly in x alone) the reduction is exact
    coefficientwise division, with k = 0.
    """
    field = w.field
    d = h.degree_in("y")
    if d == 0:
        hl = h.univar_coeffs("x")
        acc = BivarPoly.zero(field)
        for j, cy in enumerate(as_univar_in_y(w)):
            if cy.is_zero():
                continue
            rem = u_mod(field, cy.univar_coeffs("x"), hl)
            acc = acc + BivarPoly.from_univar(field, rem, "x").shift_mono(0, j)
        return acc, 0
    lc = _y_coeff(h, d)
    r, k = w, 0
    while not r.is_zero() and r.degree_in("y") >= d:
        e = r.degree_in("y")
        r = r * lc - (_y_coeff(r, e) * h).shift_mono(0, e - d)
        k += 1
    return r, k


def poly_at(p: BivarPoly, fu: Frac, fv: Frac) -> Frac:
    """The polynomial evaluated on a fractional pair."""
    field = p.field
    acc = Frac.const(field, field.zero())
    upow = {0: Frac.const(field, field.one())}
    vpow = {0: Frac.const(field, field.one())}

    def pw(cache, base, e):
        while e not in cache:
            m = max(cache)
            cache[m + 1] = cache[m] * base
        return cache[e]

    for (i, j), c in sorted(p.coeffs.items()):
        acc = acc + pw(upow, fu, i) * pw(vpow, fv, j) * c
    return acc


def image_curve(h: BivarPoly, u: Frac, v: Frac, max_deg: int = 16) -> BivarPoly:
    """Equation of the curve traced by {h = 0} under the germ (u, v).

    h irreducible, denominators of the germ coprime to h, and at least one
    coordinate nonconstant along the component.  The result is the monic
    minimal-degree g with g(u, v) = 0 mod h, found by a kernel search over
    reductions of the homogenized monomials u^i v^j; minimality makes it
    irreducible, so no factorization is needed.
    """
    field = h.field
    if isinstance(u, BivarPoly):
        u = Frac.from_poly(u)
    if isinstance(v, BivarPoly):
        v = Frac.from_poly(v)
    if u.is_zero() or v.is_zero():
        raise ValidationError("image_curve expects a germ with nonzero coordinates")
    if order_along(u.den, h) or order_along(v.den, h):
        raise ValidationError("germ denominators must be units along the component")
    d = h.degree_in("y")
    lc = _y_coeff(h, d) if d else BivarPoly.one(field)
    reduced = {}
    for deg in range(1, max_deg + 1):
        # the constant monomial stays: a nonzero constant alone is never
        # an annihilator, but g often needs a constant term
        monos = [(i, j) for i in range(deg + 1) for j in range(deg + 1 - i)]
        for (i, j) in monos:
            if (i, j) in reduced:
                continue
            w = (u.num ** i) * (v.num ** j)
            reduced[i, j] = _reduce_mod(w, h)
        cols, ks = [], []
        for (i, j) in monos:
            # homogenize to total degree `deg` with the denominators
            w = (u.den ** (deg - i)) * (v.den ** (deg - j))
            r, k = _reduce_mod(reduced[i, j][0] * w, h)
            cols.append(r)
            ks.append(k + reduced[i, j][1])
        kmax = max(ks)
        cols = [r * lc ** (kmax - k) if k < kmax else r
                for r, k in zip(cols, ks)]
        support = sorted({m for r in cols for m in r.coeffs})
        if not support:
            raise ValidationError("the germ contracts the component")
        rows = [[r.coeff(*m) for r in cols] for m in support]
        basis = _nullspace(field, rows, len(cols))
        if basis:
            vec = basis[0]
            g = BivarPoly(field, {m: c for m, c in zip(monos, vec)
                                  if not field.is_zero(c)})
            return g.scale(field.inv(g.leading_coeff()))
    raise EliminationDegenerate(
        f"no curve of degree <= {max_deg} through the image of the component")


def _proportional(f: BivarPoly, g: BivarPoly) -> bool:
    field = f.field
    return f.scale(field.inv(f.leading_coeff())) == \
        g.scale(field.inv(g.leading_coeff()))


class MorphismModel:
    """A dominant polynomial pair between two blow-up towers."""

    def __init__(self, u: BivarPoly, v: BivarPoly):
        same_field(u.field, v.field)
        self.field = u.field
        if u.is_constant() or v.is_constant():
            raise ValidationError("both coordinates of the pair must be nonconstant")
        if poly_jacobian(u, v).is_zero():
            raise InseparableMap(
                "the Jacobian determinant of the pair vanishes identically"
                + ("" if self.field.char
                   else "; over Q this means the coordinates are dependent"))
        self.u0 = u
        self.v0 = v
        self.source = ChartTree(self.field, "Y")
        self.target = ChartTree(self.field, "X")
        self.src_ledger = DivisorLedger(self.source)
        self.tgt_ledger = DivisorLedger(self.target)
        self.carriers = {self.source.root_id:
                         Carrier(self.target.root_id, u, v)}
        self._critical = None
        self._branch = None
        self._germs = {}
        self._root_pairs = {}

    # ---- blow-ups on either side -------------------------------------------

    def blowup_source(self, cid, center):
        """Blow up a source point; children inherit substituted carriers."""
        ev = self.source.blowup(cid, center)
        div = self.src_ledger.add_exceptional(cid, ev)
        car = self.carriers[cid]
        for child in (ev.child_a, ev.child_b):
            gx, gy = self.source.subst_maps(child)
            self.carriers[child] = Carrier(
                car.target, car.u.substitute(gx, gy), car.v.substitute(gx, gy))
        self._germs.clear()
        self._sift()
        return ev, div

    def blowup_target(self, cid, center):
        ev = self.target.blowup(cid, center)
        div = self.tgt_ledger.add_exceptional(cid, ev)
        self._germs.clear()
        self._sift()
        return ev, div

    def _sift(self):
        # advance carriers while the transport into a child stays polynomial
        f = self.field
        for cid, car in list(self.carriers.items()):
            while True:
                nxt = None
                for ev in self.target.chart(car.target).events:
                    a, b = ev.center
                    du = car.u - BivarPoly.const(f, a)
                    dv = car.v - BivarPoly.const(f, b)
                    if du.is_zero() or dv.is_zero():
                        raise ValidationError(
                            "carrier coordinate is constant; the pair is not dominant")
                    q = try_exact_div(dv, du)
                    if q is not None:
                        nxt = Carrier(ev.child_a, du, q)
                        break
                    q = try_exact_div(du, dv)
                    if q is not None:
                        nxt = Carrier(ev.child_b, q, dv)
                        break
                if nxt is None:
                    break
                car = nxt
            self.carriers[cid] = car

    def _root_pair(self, cid):
        """The pair from a source chart straight into the target root."""
        if cid not in self._root_pairs:
            u, v = self.u0, self.v0
            for step in self.source.chain(self.source.root_id, cid)[1:]:
                u = self.source.push_poly(u, step)
                v = self.source.push_poly(v, step)
            self._root_pairs[cid] = (u, v)
        return self._root_pairs[cid]

    # ---- critical and branch loci --------------------------------------------

    def jacobian(self, cid=None) -> BivarPoly:
        car = self.carriers[cid if cid is not None else self.source.root_id]
        j = poly_jacobian(car.u, car.v)
        if j.is_zero():
            raise InseparableMap("the Jacobian determinant vanishes identically")
        return j

    def critical_locus(self):
        """[(divisor, multiplicity)], ledgered once from the root Jacobian."""
        if self._critical is None:
            j = self.jacobian(self.source.root_id)
            out = []
            if not j.is_constant():
                for q, m in factor_bivariate(j)[1]:
                    div = self.src_ledger.add_curve(
                        "critical-component", self.source.root_id, q)
                    out.append((div, m))
            self._critical = out
        return list(self._critical)

    def classify_component(self, div) -> str:
        """'vertical' when the divisor is contracted to a point, else 'horizontal'."""
        return self.component_germ(div).kind

    def branch_locus(self):
        """Target images of the horizontal critical components."""
        if self._branch is None:
            out = []
            for div, _m in self.critical_locus():
                germ = self.component_germ(div)
                if germ.kind != "horizontal":
                    continue
                tdiv = self._ledger_image(germ, "branch-component")
                if all(d.did != tdiv.did for d in out):
                    out.append(tdiv)
            self._branch = out
        return list(self._branch)

    def _ledger_image(self, germ, kind):
        tag, val = germ.image
        if tag == "divisor":
            return self.tgt_ledger.get(val)
        return self.tgt_ledger.add_curve(kind, germ.target, val)

    # ---- pointwise transport --------------------------------------------------

    def _ascend(self, T, u, v, a, b):
        """Shallowest target representative of the value, germ rewritten along."""
        f, tree = self.field, self.target
        while True:
            ch = tree.chart(T)
            if ch.parent_id is None:
                return T, u, v, a, b
            ca, cb = ch.birth_center
            if ch.side == "A":
                if f.is_zero(a):
                    return T, u, v, a, b
                u, v = u + ca, (u * v) + cb
                a, b = f.add(ca, a), f.add(cb, f.mul(a, b))
            else:
                if f.is_zero(b):
                    if not f.is_zero(a):
                        # exceptional overlap; the A-chart owns the point
                        parent = tree.chart(ch.parent_id)
                        ev = parent.events[tree._birth_event_index(ch)]
                        one = Frac.const(f, f.one())
                        u, v = u * v, one / u
                        a, b = f.zero(), f.inv(a)
                        T = ev.child_a
                    return T, u, v, a, b
                u, v = (u * v) + ca, v + cb
                a, b = f.add(ca, f.mul(a, b)), f.add(cb, b)
            T = ch.parent_id

    def f_point(self, cid, beta) -> PointImage:
        """Chase one source point down the target tree as far as it goes."""
        f = self.field
        car = self.carriers[cid]
        u, v = poly_pair(car.u, car.v)
        T = car.target
        while True:
            a = u.eval_point(*beta)
            b = v.eval_point(*beta)
            T, u, v, a, b = self._ascend(T, u, v, a, b)
            ev = self.target.event_at(T, (a, b))
            if ev is None:
                return PointImage("point", T, (a, b), u, v)
            du, dv = u - a, v - b
            if du.is_zero() and dv.is_zero():
                raise ValidationError("constant germ; the pair is not dominant")
            if du.is_zero():
                T, u, v = ev.child_b, du / dv, dv
                continue
            if dv.is_zero():
                T, u, v = ev.child_a, du, dv / du
                continue
            d = gcd_exact(du.num, dv.num)
            q1 = exact_div(du.num, d)
            q2 = exact_div(dv.num, d)
            if not f.is_zero(q1.eval_point(*beta)):
                T, u, v = ev.child_a, du, dv / du
            elif not f.is_zero(q2.eval_point(*beta)):
                T, u, v = ev.child_b, du / dv, dv
            else:
                return PointImage("stall", T, (a, b), u, v)

    def transport_germ(self, cid, beta):
        """(target_chart, u, v) of the deepest germ at a source point."""
        res = self.f_point(cid, beta)
        if res.kind == "stall":
            raise NotAMorphismHere(
                f"the lift is undefined at {beta} in chart {cid}: the fiber "
                f"ideal of {res.pt} in {res.target} is not locally principal")
        return res.target, res.u, res.v

    def is_Malpha_principal_at(self, src_cid, beta, tgt_cid, alpha) -> bool:
        """Does the fiber ideal of the target point stay principal here?"""
        res = self.f_point(src_cid, beta)
        if res.kind == "point":
            return True
        sc, sp = self.target.shallow_rep(tgt_cid, alpha)
        return not (res.target == sc and self.target.pt_eq(res.pt, sp))

    def nonprincipal_points_over(self, tgt_cid, alpha):
        """Canonical source points over a blown-up target point where the
        lift is undefined.  These are the mandatory source centers."""
        f = self.field
        a_rep = self.target.shallow_rep(tgt_cid, alpha)
        out = []
        for cid in self.source.all_ids():
            cands = []
            self._collect_stalls(self.target.root_id,
                                 *poly_pair(*self._root_pair(cid)),
                                 cands=cands)
            seen = set()
            for beta in cands:
                key = tuple(f.sort_key(c) for c in beta)
                if key in seen:
                    continue
                seen.add(key)
                can = self.source.canonical_point(cid, beta)
                if can is None or can[0] != cid \
                        or not self.source.pt_eq(can[1], beta):
                    continue
                res = self.f_point(cid, beta)
                if res.kind != "stall":
                    continue
                if self._over(res.target, res.pt, a_rep):
                    out.append((cid, beta))
        order = {c: i for i, c in enumerate(self.source.order)}
        out.sort(key=lambda it: (order[it[0]],
                                 tuple(f.sort_key(c) for c in it[1])))
        return out

    def _collect_stalls(self, T, u, v, cands):
        # u, v: fractional germs of the composite into target chart T, for
        # one fixed source chart.  At each blow-up event of T the lift is
        # blocked exactly where both quotients of (u - a, v - b) by their
        # gcd vanish; zeros of the quotients on the germ's pole locus are
        # ghosts of another representation and are settled elsewhere, so
        # they may not trip the irrationality abort.
        for ev in self.target.chart(T).events:
            a, b = ev.center
            du = u - a
            dv = v - b
            if du.is_zero() or dv.is_zero():
                raise ValidationError("the pair is not dominant")
            d = gcd_exact(du.num, dv.num)
            pts, irrational = common_zeros(
                exact_div(du.num, d), exact_div(dv.num, d),
                irrational_off=(du.den, dv.den))
            if irrational:
                raise NonRationalSingularity(
                    "the lift is undefined at a non-rational source point "
                    f"over the center of {ev.child_a}/{ev.child_b}; blow-up "
                    "centers must be rational over the ground field")
            cands.extend(pts)
            self._collect_stalls(ev.child_a, du, dv / du, cands)
            self._collect_stalls(ev.child_b, du / dv, dv, cands)

    def _over(self, t_cid, t_pt, a_rep):
        # is the (dead) target point equal to alpha or inside its fiber
        a_cid, a_pt = a_rep
        if t_cid == a_cid and self.target.pt_eq(t_pt, a_pt):
            return True
        ev = self.target.event_at(a_cid, a_pt)
        if ev is None:
            return False
        for child in (ev.child_a, ev.child_b):
            if self.target.is_ancestor_or_self(child, t_cid):
                proj = self.target.project(t_cid, t_pt, a_cid)
                return self.target.pt_eq(proj, a_pt)
        return False

    # ---- transport along components -------------------------------------------

    def component_germ(self, div) -> ComponentGerm:
        if div.did in self._germs:
            return self._germs[div.did]
        germ = self._component_germ(div)
        self._germs[div.did] = germ
        return germ

    def _component_germ(self, div):
        f = self.field
        if div.kind == "exceptional":
            ev_chart, ev_idx = div.birth_event
            src = self.source.chart(ev_chart).events[ev_idx].child_a
        else:
            src = self.source.root_id
        h = self.src_ledger.equation_in(div, src)
        car = self.carriers[src]
        u, v = poly_pair(car.u, car.v)
        T = car.target
        while True:
            pt = self._sample_on(h, (u.den, v.den))
            a = u.eval_point(*pt)
            b = v.eval_point(*pt)
            if self._h_order(u - a, h) < 1 or self._h_order(v - b, h) < 1:
                # the generic point maps to a curve already at this level
                g = image_curve(h, u, v)
                return ComponentGerm("horizontal", src, h, T, u, v,
                                     self._match_target(T, g))
            T, u, v, a, b = self._ascend(T, u, v, a, b)
            ev = self.target.event_at(T, (a, b))
            if ev is None:
                return ComponentGerm("vertical", src, h, T, u, v,
                                     ("point", (T, (a, b))))
            du, dv = u - a, v - b
            m1 = self._h_order(du, h)
            m2 = self._h_order(dv, h)
            if m1 == m2 == _CONTRACTED:
                raise ValidationError("constant germ; the pair is not dominant")
            if m1 < m2:
                T, u, v = ev.child_a, du, dv / du
                continue
            if m2 < m1:
                T, u, v = ev.child_b, du / dv, dv
                continue
            # equal orders: the direction is the ratio restricted to {h}
            r = dv / du
            lam = r.eval_point(*self._sample_on(h, (r.den,)))
            diff = r - lam
            if diff.is_zero() or diff.order_along(h) >= 1:
                T, u, v = ev.child_a, du, r
                continue
            # nonconstant ratio: the component sweeps the new exceptional
            tdiv = self._exceptional_of(T, ev)
            return ComponentGerm("horizontal", src, h, ev.child_a, du, r,
                                 ("divisor", tdiv.did))

    @staticmethod
    def _h_order(fr: Frac, h: BivarPoly) -> int:
        return _CONTRACTED if fr.is_zero() else fr.order_along(h)

    def _sample_on(self, h, avoid):
        avoid = tuple(g for g in avoid if not g.is_constant())
        for pt in rational_points_on(h, avoid=avoid):
            return pt
        raise NoRationalPointOnComponent(
            f"no rational point found on {{{h.format()} = 0}} away from the "
            "excluded locus; transport along the component needs one")

    def _match_target(self, T, g):
        for d in self.tgt_ledger.all():
            eq = self.tgt_ledger.equation_in(d, T)
            if eq is not None and not eq.is_constant() and _proportional(eq, g):
                return ("divisor", d.did)
        return ("curve", g)

    def _exceptional_of(self, chart_id, ev):
        for d in self.tgt_ledger.all("exceptional"):
            if d.birth_event == (chart_id, ev.index):
                return d
        raise ValidationError(
            f"event {ev.index} of {chart_id} has no ledgered exceptional")

    # ---- divisor pullback -------------------------------------------------------

    def pullback_divisor(self, tdiv, register=True):
        """{source divisor id: multiplicity} of the total transform.

        Components of the pullback that are not yet ledgered can only be
        honest curves (never exceptional), and every contracted curve is a
        critical component, so factoring the root-level pullback of a curve
        divisor is enough to complete the ledger first.
        """
        parts = {}
        if tdiv.kind != "exceptional":
            g0 = self.tgt_ledger.equation_in(tdiv, self.target.root_id)
            pb = g0.substitute(self.u0, self.v0)
            if pb.is_zero():
                raise ValidationError("the pair maps into the divisor; not dominant")
            if not pb.is_constant():
                for q, _m in factor_bivariate(pb)[1]:
                    self.src_ledger.add_curve(
                        "pulled-back", self.source.root_id, q)
        for sdiv in self.src_ledger.all():
            germ = self.component_germ(sdiv)
            heq = self.tgt_ledger.equation_in(tdiv, germ.target)
            if heq is None or heq.is_constant():
                continue
            val = poly_at(heq, germ.u, germ.v)
            if val.is_zero():
                raise ValidationError("the pair maps into the divisor; not dominant")
            h = self.src_ledger.equation_in(sdiv, germ.src_chart)
            m = val.order_along(h)
            if m > 0:
                parts[sdiv.did] = m
        if register:
            self.src_ledger.add_pullback_cycle(f"f*{tdiv.did}", parts)
        return parts
