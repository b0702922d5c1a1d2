"""Toroidal normal forms relative to boundary divisors, and the schedule
that reaches them.

A monomial model is refined here against a chosen pair of boundary sets: a
collection of target divisors and its set-theoretic pullback on the source.
Every boundary point is classified into one of five local shapes; three of
them are the good ones, and the bad locus is swept out by a two-phase
sequence of quadratic transforms.  Characteristic zero only.
"""

from .exceptions import (AuditFailure, CharacteristicPositive,
                         MonotonicityViolation, NoRationalPointOnComponent,
                         NotAMorphismHere, NotMonomialInput, ValidationError)
from .invariants import special_points
from .model import poly_at, poly_jacobian
from .pipeline import (AlgorithmTrace, Budget, VerificationReport, _cofactor,
                       _fmt_pt, _pt_json, _raise_by_sampling, _refresh_loci,
                       _transversal_param)
from .poly import BivarPoly
from .snc import rational_points_on

GOOD_TAGS = ("1", "2", "4*")

# sample points inspected per boundary component during a classification pass
_COMP_SAMPLES = 4


class ToroidalClass:
    """Local shape of the boundary pullback at one source point.

    Tags follow the case split at a point q over p: "1" and "2" have two
    target branches at p, "3" and the "4" family have one.  "4*" is the
    transversal member of the "4" family.  Good means the point needs no
    further transforms.
    """

    __slots__ = ("tag", "exponents", "gamma_nonzero", "chart", "pt",
                 "image", "detail")

    def __init__(self, tag, exponents, gamma_nonzero=None, chart=None,
                 pt=None, image=None, detail=""):
        self.tag = tag
        self.exponents = tuple(exponents)
        self.gamma_nonzero = gamma_nonzero
        self.chart = chart
        self.pt = pt
        self.image = image
        self.detail = detail

    @property
    def good(self) -> bool:
        return self.tag in GOOD_TAGS

    def as_dict(self):
        return {"tag": self.tag, "good": self.good,
                "exponents": list(self.exponents),
                "gamma_nonzero": self.gamma_nonzero,
                "chart": self.chart, "detail": self.detail}

    def __repr__(self):
        flag = "good" if self.good else "bad"
        return f"ToroidalClass(case {self.tag}, {flag}, {self.exponents})"


class ToroidalState:
    """A morphism model together with its boundary divisor choice.

    d_x lists target divisor ids, d_y the ids of the source components of
    the set-theoretic pullback; both in ledger order.  The classification
    fields are filled by a refresh pass and consumed by the schedule.
    """

    def __init__(self, model, d_x, d_y):
        self.model = model
        self.d_x = list(d_x)
        self.d_y = list(d_y)
        self.samples = []         # (cid, pt, ToroidalClass)
        self.bad_components = []  # source divisor ids, generically bad
        self.bad_images = []      # canonical (target chart, point)
        self.gf = []              # (cid, pt, image, I) at tracked one-points
        self.r = None             # max I over gf; None when gf is empty

    def boundary(self):
        return {"target": list(self.d_x), "source": list(self.d_y)}

    def __repr__(self):
        return (f"ToroidalState({len(self.d_x)} target / {len(self.d_y)} "
                f"source components, r={self.r!r})")


def _branches(ledger, dids, cid, pt):
    """Boundary components through a point, as (divisor, local equation)."""
    field = None
    out = []
    for did in dids:
        div = ledger.get(did)
        eq = ledger.equation_in(div, cid)
        if eq is None or eq.is_constant():
            continue
        field = eq.field
        if field.is_zero(eq.eval_point(*pt)):
            out.append((div, eq))
    return out


def _same_image(model, img_a, img_b):
    return img_a[0] == img_b[0] and model.target.pt_eq(img_a[1], img_b[1])


def _canonical_image(model, tcid, pt):
    can = model.target.canonical_point(tcid, pt)
    if can is None:
        raise ValidationError(f"image point {pt} of {tcid} is not alive")
    return can


def _complement_ladder(field, hs, gu, gv, teq, alpha):
    """Order-maximized second frame entries at alpha, transversal to teq."""
    xbar = BivarPoly.var(field, "x") - BivarPoly.const(field, alpha[0])
    ybar = BivarPoly.var(field, "y") - BivarPoly.const(field, alpha[1])
    dx = teq.derivative("x").eval_point(*alpha)
    order = [ybar, xbar] if not field.is_zero(dx) else [xbar, ybar]
    out = []
    for cand in order:
        jf = poly_jacobian(teq, cand)
        if jf.is_zero() or field.is_zero(jf.eval_point(*alpha)):
            continue
        out.append(_raise_by_sampling(field, hs, gu, gv, cand, teq))
    return out


# ---- pointwise classification --------------------------------------------------


def _classify_at(state, cid, pt, tcid, alpha, gu, gv):
    model = state.model
    field = model.field
    tbs = _branches(model.tgt_ledger, state.d_x, tcid, alpha)
    sbs = _branches(model.src_ledger, state.d_y, cid, pt)
    where = f"{cid} {_fmt_pt(field, pt)}"
    if not tbs:
        raise NotMonomialInput(
            f"the image of {where} is off the target boundary")
    if not sbs:
        raise NotMonomialInput(
            f"{where} is off the source boundary but maps into the target "
            "boundary; the boundary pair is not a set-theoretic pullback")
    if len(tbs) > 2 or len(sbs) > 2:
        raise NotMonomialInput(
            f"more than two boundary branches at {where} or its image")
    img = (tcid, alpha)
    hs = [eq for _d, eq in sbs]
    pulls = [poly_at(eq, gu, gv) for _d, eq in tbs]
    for fr in pulls:
        if fr.is_zero():
            raise ValidationError("the pair maps into the boundary; "
                                  "not dominant")
    exps = [[fr.order_along(h) for h in hs] for fr in pulls]

    if len(tbs) == 2 and len(sbs) == 2:
        for j in range(2):
            if exps[0][j] == 0 and exps[1][j] == 0:
                raise NotMonomialInput(
                    f"a source boundary branch at {where} maps off the "
                    "target boundary")
        cof1 = _cofactor(pulls[0], hs, exps[0])
        cof2 = _cofactor(pulls[1], hs, exps[1])
        if not (cof1.is_unit_at(*pt) and cof2.is_unit_at(*pt)):
            raise NotMonomialInput(
                f"boundary pullback at {where} is not monomial")
        det = exps[0][0] * exps[1][1] - exps[0][1] * exps[1][0]
        if det == 0:
            raise NotMonomialInput(
                f"degenerate exponent matrix at {where}")
        return ToroidalClass("1", (exps[0][0], exps[0][1],
                                   exps[1][0], exps[1][1]),
                             chart=cid, pt=pt, image=img)

    if len(tbs) == 2:
        # one source branch; both target branches must pull back to it
        a, c = exps[0][0], exps[1][0]
        cof1 = _cofactor(pulls[0], hs, [a])
        cof2 = _cofactor(pulls[1], hs, [c])
        if a == 0 or c == 0 or not (cof1.is_unit_at(*pt)
                                    and cof2.is_unit_at(*pt)):
            raise NotMonomialInput(
                f"boundary pullback at {where} is not monomial")
        return ToroidalClass("2", (a, c), gamma_nonzero=True,
                             chart=cid, pt=pt, image=img)

    teq = tbs[0][1]
    if len(sbs) == 2:
        a, b = exps[0]
        if a == 0 or b == 0:
            raise NotMonomialInput(
                f"a source boundary branch at {where} maps off the "
                "target boundary")
        cof1 = _cofactor(pulls[0], hs, exps[0])
        if not cof1.is_unit_at(*pt):
            raise NotMonomialInput(
                f"boundary pullback at {where} is not monomial")
        for cand in _complement_ladder(field, hs, gu, gv, teq, alpha):
            fr = poly_at(cand, gu, gv)
            if fr.is_zero():
                continue
            cd = [fr.order_along(h) for h in hs]
            cof2 = _cofactor(fr, hs, cd)
            det = a * cd[1] - b * cd[0]
            if cof2.is_unit_at(*pt) and det != 0:
                return ToroidalClass("3", (a, b, cd[0], cd[1]),
                                     chart=cid, pt=pt, image=img)
        raise NotMonomialInput(
            f"no monomial complement found at the two-point {where}")

    # one branch on each side: the "4" family
    h = hs[0]
    a = exps[0][0]
    cof1 = _cofactor(pulls[0], hs, [a])
    if a == 0 or not cof1.is_unit_at(*pt):
        raise NotMonomialInput(
            f"boundary pullback at {where} is not monomial")
    best = None
    for cand in _complement_ladder(field, hs, gu, gv, teq, alpha):
        fr = poly_at(cand, gu, gv)
        if fr.is_zero():
            continue
        c = fr.order_along(h)
        if best is None or c > best[0]:
            best = (c, fr)
    if best is None:
        raise NotMonomialInput(
            f"no transversal complement at the image of {where}")
    c, fr = best
    if c == 0:
        if _transversal_param(h, fr, pt):
            return ToroidalClass("4*", (a, 0), gamma_nonzero=False,
                                 chart=cid, pt=pt, image=img)
        raise NotMonomialInput(
            f"order-zero complement at {where} is not a parameter")
    cof2 = _cofactor(fr, hs, [c])
    if cof2.is_unit_at(*pt):
        gamma = cof2.eval_point(*pt)
        return ToroidalClass("4", (a, c),
                             gamma_nonzero=not field.is_zero(gamma),
                             chart=cid, pt=pt, image=img)
    if _transversal_param(h, cof2, pt):
        return ToroidalClass("4", (a, c), gamma_nonzero=False,
                             chart=cid, pt=pt, image=img)
    raise NotMonomialInput(
        f"residual factor at {where} is neither a unit nor a parameter")


def classify_toroidal(state, cid, pt) -> ToroidalClass:
    """Classify one source point against the boundary-relative local forms.

    Raises NotMonomialInput when the point fits none of them; the schedule
    never continues past such a point.
    """
    model = state.model
    can = model.source.canonical_point(cid, pt)
    if can is None:
        raise ValidationError(f"point {pt} of {cid} is not alive")
    cid, pt = can
    try:
        tcid, gu, gv = model.transport_germ(cid, pt)
    except NotAMorphismHere as e:
        raise NotMonomialInput(str(e))
    alpha = (gu.eval_point(*pt), gv.eval_point(*pt))
    return _classify_at(state, cid, pt, tcid, alpha, gu, gv)


def invariant_I(state, cid, pt) -> int:
    """Order gap max(ord v - ord u) over frames whose first entry cuts the
    target boundary; defined at a one-point over a one-branch image.

    Works at lift stalls too: there the germ is taken into the chart whose
    blown-up center the point sits over, which is exactly the level the
    descent arguments measure against.
    """
    model = state.model
    field = model.field
    res = model.f_point(cid, pt)
    tcid, alpha, gu, gv = res.target, res.pt, res.u, res.v
    tbs = _branches(model.tgt_ledger, state.d_x, tcid, alpha)
    sbs = _branches(model.src_ledger, state.d_y, cid, pt)
    if len(tbs) != 1 or len(sbs) != 1:
        raise ValidationError(
            "the order gap needs a one-point over a one-branch image, got "
            f"{len(sbs)} source and {len(tbs)} target branches")
    teq = tbs[0][1]
    h = sbs[0][1]
    fu = poly_at(teq, gu, gv)
    if fu.is_zero():
        raise ValidationError("the pair maps into the boundary; not dominant")
    a = fu.order_along(h)
    best = None
    for cand in _complement_ladder(field, [h], gu, gv, teq, alpha):
        fr = poly_at(cand, gu, gv)
        if fr.is_zero():
            continue
        c = fr.order_along(h)
        if best is None or c > best:
            best = c
    if best is None:
        raise ValidationError("no transversal complement at the image")
    return best - a


# ---- boundary construction -----------------------------------------------------


def toroidal_state(model, target_divisors=None) -> ToroidalState:
    """Attach boundary divisors to a model.

    By default the target boundary is every ledgered target divisor: the
    image components of the critical locus plus all exceptional divisors.
    An explicit list of root-chart equations replaces that default.  The
    source boundary is always the set-theoretic pullback.
    """
    if model.field.char:
        raise CharacteristicPositive(
            "toroidal forms are only pursued in characteristic zero; this "
            f"model lives over characteristic {model.field.char}")
    _refresh_loci(model)
    if target_divisors is None:
        d_x = [d.did for d in model.tgt_ledger.all()]
    else:
        d_x = []
        for eq in target_divisors:
            div = model.tgt_ledger.add_curve(
                "branch-component", model.target.root_id, eq)
            if div.did not in d_x:
                d_x.append(div.did)
    support = set()
    for did in d_x:
        support.update(
            model.pullback_divisor(model.tgt_ledger.get(did)).keys())
    d_y = [d.did for d in model.src_ledger.all() if d.did in support]
    return ToroidalState(model, d_x, d_y)


def _sync_boundary(state):
    # the incremental boundary must stay the exact pullback support
    model = state.model
    fresh = set()
    for did in state.d_x:
        fresh.update(
            model.pullback_divisor(model.tgt_ledger.get(did)).keys())
    held = set(state.d_y)
    if held != fresh:
        raise AuditFailure(
            "boundary bookkeeping broke: pullback support is "
            f"{sorted(fresh)} but the state holds {sorted(held)}")


def _require_critical_cover(state):
    model = state.model
    missing = []
    for kind in ("critical-component", "exceptional"):
        for d in model.src_ledger.all(kind):
            if d.did not in state.d_y:
                missing.append(d.did)
    if missing:
        raise ValidationError(
            f"the source boundary misses critical components {missing}; "
            "enlarge the target divisor choice")


# ---- classification passes -----------------------------------------------------


def _comp_sample_points(state, did):
    """Alive rational points on one boundary component, crossings avoided."""
    model = state.model
    div = model.src_ledger.get(did)
    germ = model.component_germ(div)
    cid = germ.src_chart
    h = model.src_ledger.equation_in(div, cid)
    if h is None or h.is_constant():
        return cid, [], germ
    others = []
    for other_did in state.d_y:
        if other_did == did:
            continue
        eq = model.src_ledger.equation_in(
            model.src_ledger.get(other_did), cid)
        if eq is not None and not eq.is_constant():
            others.append(eq)
    pts = []
    for p in rational_points_on(h, avoid=others):
        can = model.source.canonical_point(cid, p)
        if can is None or can[0] != cid or not model.source.pt_eq(can[1], p):
            continue
        pts.append(p)
        if len(pts) == _COMP_SAMPLES:
            break
    return cid, pts, germ


def _refresh_classes(state, strict=True):
    """Reclassify the boundary: samples, bad locus, tracked one-points, r.

    With strict=False classification failures are recorded as bad samples
    instead of raised, for use by the independent verifier.
    """
    model = state.model
    field = model.field
    state.samples = []
    state.bad_components = []
    comp_data = {}
    for did in state.d_y:
        cid, pts, germ = _comp_sample_points(state, did)
        if not pts:
            raise NoRationalPointOnComponent(
                f"no rational sample point on boundary component {did}")
        comp_data[did] = (cid, pts, germ)
        try:
            cls = classify_toroidal(state, cid, pts[0])
        except NotMonomialInput as e:
            if strict:
                raise
            cls = ToroidalClass("?", (), chart=cid, pt=pts[0], detail=str(e))
        state.samples.append((cid, pts[0], cls))
        if not cls.good:
            state.bad_components.append(did)
            if germ.kind == "horizontal":
                raise AuditFailure(
                    f"boundary component {did} is generically bad but "
                    "dominates a curve; bad points must have finite image")

    bad_specials = []
    for cid, pt in special_points(model):
        through = _branches(model.src_ledger, state.d_y, cid, pt)
        if not through:
            continue
        try:
            cls = classify_toroidal(state, cid, pt)
        except NotMonomialInput as e:
            if strict:
                raise
            cls = ToroidalClass("?", (), chart=cid, pt=pt, detail=str(e))
        state.samples.append((cid, pt, cls))
        if not cls.good:
            on_bad = any(d.did in state.bad_components for d, _e in through)
            if not on_bad:
                raise AuditFailure(
                    "bad locus is not of pure codimension one: isolated bad "
                    f"point at {cid} {_fmt_pt(field, pt)} (case {cls.tag})")
            bad_specials.append((cid, pt))

    images = []
    for did in state.bad_components:
        germ = comp_data[did][2]
        # horizontal bad components were rejected above
        images.append(_canonical_image(model, *germ.image[1]))
    for cid, pt in bad_specials:
        res = model.f_point(cid, pt)
        images.append(_canonical_image(model, res.target, res.pt))
    state.bad_images = []
    for img in images:
        if not any(_same_image(model, img, known)
                   for known in state.bad_images):
            state.bad_images.append(img)

    state.gf = []
    seen = set()
    for did in state.d_y:
        cid, pts, germ = comp_data[did]
        for pt in pts:
            sbs = _branches(model.src_ledger, state.d_y, cid, pt)
            if len(sbs) != 1:
                continue
            res = model.f_point(cid, pt)
            img = _canonical_image(model, res.target, res.pt)
            if not any(_same_image(model, img, bad)
                       for bad in state.bad_images):
                continue
            key = (cid, tuple(field.sort_key(x) for x in pt))
            if key in seen:
                continue
            seen.add(key)
            try:
                i_val = invariant_I(state, cid, pt)
            except (ValidationError, NoRationalPointOnComponent):
                continue
            state.gf.append((cid, pt, img, i_val))
    state.r = max((i for _c, _p, _i, i in state.gf), default=None)
    return state


def bad_locus(state):
    """(generically bad component ids, canonical bad image points).

    Audits the closedness of the bad locus on the way: an isolated bad
    point or a generically bad horizontal component raises AuditFailure.
    """
    _refresh_classes(state)
    return list(state.bad_components), list(state.bad_images)


def invariant_r(state):
    """max of the order gap over tracked one-points; None when none exist."""
    _refresh_classes(state)
    return state.r


# ---- the two-phase schedule ----------------------------------------------------


def _toroidal_step(state, img, phase, budget, trace):
    """Blow up one bad image point and restore the lift by source blow-ups.

    Phase 1 steps assert the order-gap drop at surviving tracked points and
    the bound on fresh exceptionals; phase 2 steps assert the strictly
    ascending negative chain.
    """
    model = state.model
    field = model.field
    T, alpha = img
    r0 = state.r
    witnesses = [(cid, pt, i) for cid, pt, w_img, i in state.gf
                 if _same_image(model, w_img, img)]
    budget.blowup()
    ev, tdiv = model.blowup_target(T, alpha)
    state.d_x.append(tdiv.did)
    trace.record(phase, "toroidal-target-blowup", chart=T,
                 center=_pt_json(field, alpha), divisor=tdiv.did,
                 I=None, r=r0)
    chains = {}
    while True:
        stalls = model.nonprincipal_points_over(T, alpha)
        if not stalls:
            break
        cid, beta = stalls[0]
        n_here = len(_branches(model.src_ledger, state.d_y, cid, beta))
        i_here = None
        if n_here == 1:
            try:
                i_here = invariant_I(state, cid, beta)
            except (ValidationError, NoRationalPointOnComponent):
                i_here = None
        if phase == "toroidal-2" and n_here != 1:
            raise MonotonicityViolation(
                f"second-phase lift stall at a {n_here}-branch point "
                f"{cid} {_fmt_pt(field, beta)}; only one-branch stalls "
                "can occur there")
        i_prev = chains.get(cid)
        if i_prev is not None and i_here is not None:
            if not (i_prev < i_here < 0):
                raise MonotonicityViolation(
                    f"stall chain at {cid} {_fmt_pt(field, beta)} moved "
                    f"{i_prev} -> {i_here}; it must ascend strictly and "
                    "stay negative")
        budget.blowup()
        ev2, sdiv = model.blowup_source(cid, beta)
        state.d_y.append(sdiv.did)
        if i_here is not None:
            chains[ev2.child_a] = i_here
            chains[ev2.child_b] = i_here
        trace.record(phase, "toroidal-source-blowup", chart=cid,
                     center=_pt_json(field, beta), divisor=sdiv.did,
                     I=i_here, r=r0, over=[T, _pt_json(field, alpha)])
        if phase == "toroidal-1" and n_here == 2 and r0 is not None:
            # fresh exceptional over a two-point center must come in low
            ccid = ev2.child_a
            heq = model.src_ledger.equation_in(
                model.src_ledger.get(sdiv.did), ccid)
            for p in rational_points_on(heq):
                can = model.source.canonical_point(ccid, p)
                if can is None or can[0] != ccid:
                    continue
                try:
                    i_new = invariant_I(state, ccid, p)
                except (ValidationError, NoRationalPointOnComponent):
                    break
                if i_new >= r0:
                    raise MonotonicityViolation(
                        f"exceptional {sdiv.did} carries order gap "
                        f"{i_new} >= r = {r0}")
                break
    _sync_boundary(state)
    att0 = sum(1 for _c, _p, _i, i in state.gf if i == r0)
    _refresh_classes(state)
    if phase == "toroidal-1":
        for cid, pt, i0 in witnesses:
            can = model.source.canonical_point(cid, pt)
            if can is None or can[0] != cid:
                continue  # the point was blown up during principalization
            cls = classify_toroidal(state, cid, pt)
            if cls.good:
                continue
            if i0 <= 0:
                raise MonotonicityViolation(
                    f"tracked point {cid} {_fmt_pt(field, pt)} with gap "
                    f"{i0} <= 0 stayed bad after the transform")
            i1 = invariant_I(state, cid, pt)
            if i1 >= i0:
                raise MonotonicityViolation(
                    f"order gap at {cid} {_fmt_pt(field, pt)} moved "
                    f"{i0} -> {i1} under a first-phase transform")
        r1 = state.r
        att1 = sum(1 for _c, _p, _i, i in state.gf if i == r0)
        if r1 is not None and (r1 > r0 or (r1 == r0 and att1 >= att0)):
            raise MonotonicityViolation(
                f"first-phase invariant failed to drop: r {r0} -> {r1} "
                f"with {att0} -> {att1} attaining points")


def toroidalize(state, *, max_blowups=200, max_iters=60):
    """Run the two-phase schedule until every boundary point is good.

    Phase 1 fires while the tracked order gap r is positive and blows up an
    image point attaining it; phase 2 sweeps the remaining bad images,
    whose stall chains ascend through negative gaps.  Returns the state and
    the trace; the state is modified in place.
    """
    model = state.model
    if model.field.char:
        raise CharacteristicPositive(
            "the toroidal schedule needs characteristic zero")
    budget = Budget(max_blowups=max_blowups, max_iters=max_iters)
    trace = AlgorithmTrace()
    _require_critical_cover(state)
    _refresh_classes(state)
    last_phase = "toroidal-1"
    while state.bad_images:
        budget.iteration()
        if state.r is not None and state.r > 0:
            phase = "toroidal-1"
            img = next(w_img for _c, _p, w_img, i in state.gf
                       if i == state.r)
        else:
            phase = "toroidal-2"
            img = state.bad_images[0]
        last_phase = phase
        _toroidal_step(state, img, phase, budget, trace)
    trace.record(last_phase, "done", r=state.r, I=None)
    return state, trace


# ---- independent verification --------------------------------------------------


def verify_toroidal(state) -> VerificationReport:
    """Audit a claimed toroidal state.

    Reclassifies every special point and a generic sample of each boundary
    component, checks the boundary pair is an exact set-theoretic pullback
    covering the critical locus, and reruns the closedness audit.  Collects
    failures instead of raising.
    """
    rep = VerificationReport()
    model = state.model
    field = model.field
    rep.add("characteristic-zero", field.char == 0,
            "" if field.char == 0 else f"characteristic {field.char}")
    try:
        fresh = set()
        for did in state.d_x:
            fresh.update(
                model.pullback_divisor(model.tgt_ledger.get(did),
                                       register=False).keys())
        diff = sorted(fresh ^ set(state.d_y))
        rep.add("pullback-boundary", not diff,
                f"support mismatch at {diff}" if diff else "")
    except Exception as e:  # noqa: BLE001 - the report absorbs everything
        rep.add("pullback-boundary", False, repr(e))
    try:
        _require_critical_cover(state)
        rep.add("critical-containment", True, "")
    except ValidationError as e:
        rep.add("critical-containment", False, str(e))
    try:
        _refresh_classes(state, strict=False)
        rep.add("bad-locus-closed", True, "")
        bad = [(cid, pt, cls) for cid, pt, cls in state.samples
               if not cls.good]
        if bad:
            cid, pt, cls = bad[0]
            rep.add("all-points-good", False,
                    f"{len(bad)} bad points; first: {cid} "
                    f"{_fmt_pt(field, pt)} case {cls.tag} {cls.detail}")
        else:
            rep.add("all-points-good", True, "")
    except AuditFailure as e:
        rep.add("bad-locus-closed", False, str(e))
        rep.add("all-points-good", False, "classification aborted")
    except Exception as e:  # noqa: BLE001
        rep.add("bad-locus-closed", False, repr(e))
        rep.add("all-points-good", False, repr(e))
    return rep
