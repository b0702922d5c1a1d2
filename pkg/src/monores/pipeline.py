"""Monomialization pipeline.

Preparation makes the branch data simple normal crossings on both sides,
keeping the composite a morphism by principalizing after every target
blow-up.  The main loop repeatedly blows up the image point of a worst
contracted component until every point matches a monomial normal form.
Verification re-derives the structural claims with sampling-based searches
that share no solver code with the classifier.

Monotonicity of the complexity data is asserted at every step; a violation
is an engine bug, never a property of the input.
"""

from .exceptions import (AuditFailure, BudgetExceeded, MonotonicityViolation,
                         NoRationalPointOnComponent, NotAMorphismHere,
                         NotPrepared, WildRamification)
from .factor import factor_bivariate
from .frac import Frac, frac_jacobian
from .invariants import (classify_monomial, complexity, contracted_components,
                         global_complexity, horizontal_components,
                         point_complexity, special_points, tame_test)
from .model import _proportional, image_curve, poly_at, poly_jacobian
from .poly import BivarPoly
from .resolve import chart_support, find_violation
from .snc import rational_points_on


class Budget:
    """Shared spend counters for one pipeline run."""

    def __init__(self, max_blowups=200, max_iters=60):
        self.max_blowups = max_blowups
        self.max_iters = max_iters
        self.blowups = 0
        self.iterations = 0

    def spent(self):
        return {"blowups": self.blowups, "iterations": self.iterations}

    def blowup(self):
        if self.blowups >= self.max_blowups:
            raise BudgetExceeded(
                f"blow-up budget of {self.max_blowups} exhausted",
                spent=self.spent())
        self.blowups += 1

    def iteration(self):
        if self.iterations >= self.max_iters:
            raise BudgetExceeded(
                f"iteration budget of {self.max_iters} exhausted",
                spent=self.spent())
        self.iterations += 1


class AlgorithmTrace:
    """Ordered log of pipeline events, one JSON-ready dict per record."""

    def __init__(self):
        self.steps = []

    def record(self, phase, action, **data):
        rec = {"step": len(self.steps), "phase": phase, "action": action}
        rec.update(data)
        self.steps.append(rec)
        return rec

    def count(self, action=None, phase=None):
        return sum(1 for r in self.steps
                   if (action is None or r["action"] == action)
                   and (phase is None or r["phase"] == phase))

    def blowup_count(self):
        return self.count() - self.count("done")

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)


def _pt_json(field, pt):
    return [field.fmt(pt[0]), field.fmt(pt[1])]


def _fmt_pt(field, pt):
    return f"({field.fmt(pt[0])}, {field.fmt(pt[1])})"


def _component_indices(model):
    """{divisor id: complexity index} over the contracted components.

    Components whose invariants are not yet computable (mid-preparation
    states) are skipped; they rejoin the map once preparation reaches them.
    """
    out = {}
    for comp in contracted_components(model):
        try:
            out[comp.div.did] = complexity(model, comp.div).index
        except (NotPrepared, NoRationalPointOnComponent):
            continue
    return out


def _top(indices):
    if not indices:
        return 0, []
    top = max(indices.values())
    return top, [d for d, i in indices.items() if i == top]


def _inv_json(inv):
    return [inv[0], list(inv[1])]


def _refresh_loci(model):
    # ledger the current branch images and their source-side pullbacks
    model.critical_locus()
    for comp in horizontal_components(model):
        tdiv = model._ledger_image(comp.germ, "branch-component")
        if tdiv.kind != "exceptional":
            model.pullback_divisor(tdiv)


def _index_of_new(model, div, indices):
    if div.did in indices:
        return indices[div.did]
    try:
        germ = model.component_germ(div)
    except NoRationalPointOnComponent:
        return None
    # a curve not contracted carries no complexity
    return 0 if germ.kind == "horizontal" else None


def _blow_target(model, cid, alpha, *, budget, trace, phase, note=None,
                 checked=False):
    """One target blow-up plus the forced source principalizations.

    With checked set, asserts that no surviving contracted component
    gains complexity and that every fresh exceptional stays at or below
    the complexity of the point it replaces, strictly below when that was
    positive.  The guarantees are proved for steps taken from a fully
    prepared model, so repair blow-ups record the same data without
    asserting it.
    """
    field = model.field
    before = _component_indices(model)
    budget.blowup()
    _ev, tdiv = model.blowup_target(cid, alpha)
    after = _component_indices(model)
    if checked:
        for did, i1 in after.items():
            i0 = before.get(did)
            if i0 is not None and i1 > i0:
                raise MonotonicityViolation(
                    f"complexity of {did} rose {i0} -> {i1} across the "
                    f"target blow-up of {_fmt_pt(field, alpha)} in {cid}")
    trace.record(phase, "target-blowup", side="target", chart=cid,
                 center=_pt_json(field, alpha), divisor=tdiv.did, note=note,
                 invariant_before=_inv_json(_top(before)),
                 invariant_after=_inv_json(_top(after)),
                 components=after)
    while True:
        stalls = model.nonprincipal_points_over(cid, alpha)
        if not stalls:
            return
        scid, beta = stalls[0]
        try:
            i_beta = point_complexity(model, scid, beta)
        except (NotPrepared, NoRationalPointOnComponent):
            i_beta = None
        pre = _component_indices(model)
        budget.blowup()
        _sev, sdiv = model.blowup_source(scid, beta)
        post = _component_indices(model)
        i_new = _index_of_new(model, sdiv, post)
        if checked and i_beta is not None and i_new is not None:
            if i_new > i_beta or (i_beta > 0 and i_new == i_beta):
                raise MonotonicityViolation(
                    f"exceptional {sdiv.did} over {_fmt_pt(field, beta)} in "
                    f"{scid} has complexity {i_new}, the point had {i_beta}")
        trace.record(phase, "source-principalization-blowup", side="source",
                     chart=scid, center=_pt_json(field, beta),
                     divisor=sdiv.did, over=[cid, _pt_json(field, alpha)],
                     invariant_before=_inv_json(_top(pre)),
                     invariant_after=_inv_json(_top(post)),
                     components=post)


def prep(model, *, budget=None, trace=None, phase="prep"):
    """Simple normal crossings on both sides of the morphism.

    Target first: branch images of the ramification curves plus all
    accumulated exceptionals.  Each target blow-up is immediately
    principalized so the lift stays defined.  Then the source support,
    with geometric nodes separated so every point sees honest distinct
    branches.  Returns the model.
    """
    budget = budget if budget is not None else Budget()
    trace = trace if trace is not None else AlgorithmTrace()
    field = model.field
    while True:
        _refresh_loci(model)
        viol = find_violation(model.target, model.tgt_ledger,
                              separate_branches=True)
        if viol is not None:
            cid, pt, reason = viol
            _blow_target(model, cid, pt, budget=budget, trace=trace,
                         phase=phase, note=reason)
            continue
        viol = find_violation(model.source, model.src_ledger,
                              separate_branches=True)
        if viol is None:
            return model
        cid, pt, reason = viol
        pre = _component_indices(model)
        budget.blowup()
        _ev, div = model.blowup_source(cid, pt)
        post = _component_indices(model)
        trace.record(phase, "prep-blowup", side="source", chart=cid,
                     center=_pt_json(field, pt), divisor=div.did, note=reason,
                     invariant_before=_inv_json(_top(pre)),
                     invariant_after=_inv_json(_top(post)),
                     components=post)


def _assert_lemma5(inv0, inv1, where):
    i0, s0 = inv0[0], len(inv0[1])
    i1, s1 = inv1[0], len(inv1[1])
    if i0 == 0:
        ok = i1 == 0
    else:
        ok = (i1, s1) <= (i0, s0)
    if not ok:
        raise MonotonicityViolation(
            f"(I, #Sigma) rose from ({i0}, {s0}) to ({i1}, {s1}) across the "
            f"composite blow-up at {where}")


def f_alpha(model, cid, alpha, *, budget=None, trace=None, phase="main"):
    """The minimal composite step over one target point.

    Blows up the point, then every source point where the lifted map is
    undefined until none remain, then restores normal crossings.  Driven
    from the main loop this must never increase the pair (max complexity,
    number of attaining components).
    """
    budget = budget if budget is not None else Budget()
    trace = trace if trace is not None else AlgorithmTrace()
    inv0 = _top(_component_indices(model))
    _blow_target(model, cid, alpha, budget=budget, trace=trace, phase=phase,
                 checked=phase == "main")
    prep(model, budget=budget, trace=trace, phase=phase)
    if phase == "main":
        inv1 = _top(_component_indices(model))
        _assert_lemma5(inv0, inv1, f"{_fmt_pt(model.field, alpha)} in {cid}")
    return model


def _wild_gate(model):
    for comp in horizontal_components(model):
        rec = tame_test(model, comp.div)
        if not rec.tame:
            raise WildRamification(
                f"component {rec.did} maps onto {rec.image_did} with "
                f"Jacobian order {rec.jac_order} where tameness requires "
                f"{rec.a - 1}", rec.certificate())


def _audit_points(model):
    """Special points plus one generic sample per ledgered component."""
    field = model.field
    pts = list(special_points(model))
    seen = {(c, tuple(field.sort_key(x) for x in p)) for c, p in pts}
    for div in model.src_ledger.all():
        germ = model.component_germ(div)
        cid = germ.src_chart
        h = model.src_ledger.equation_in(div, cid)
        if h is None or h.is_constant():
            continue
        others = []
        for other in model.src_ledger.all():
            if other.did == div.did:
                continue
            eq = model.src_ledger.equation_in(other, cid)
            if eq is not None and not eq.is_constant():
                others.append(eq)
        for p in rational_points_on(h, avoid=others):
            can = model.source.canonical_point(cid, p)
            if can is None or can[0] != cid \
                    or not model.source.pt_eq(can[1], p):
                continue
            key = (cid, tuple(field.sort_key(x) for x in p))
            if key not in seen:
                seen.add(key)
                pts.append((cid, p))
            break
    return pts


def monomialize(model, *, max_blowups=200, max_iters=60):
    """Run the algorithm to a monomial model.  Returns (model, trace).

    Wildness is checked eagerly every iteration; the refusal carries the
    offending component's certificate.  The component choice is the oldest
    divisor among those with maximal complexity, so runs are reproducible.
    """
    budget = Budget(max_blowups=max_blowups, max_iters=max_iters)
    trace = AlgorithmTrace()
    _wild_gate(model)
    prep(model, budget=budget, trace=trace, phase="prep")
    while True:
        _wild_gate(model)
        top, attain = global_complexity(model)
        if top == 0:
            bad = []
            for cid, pt in _audit_points(model):
                rep = classify_monomial(model, cid, pt)
                if not rep.monomial:
                    bad.append(rep)
            if bad:
                r = bad[0]
                raise AuditFailure(
                    f"{len(bad)} points fail the normal forms at zero "
                    f"complexity; first: {r.chart} {_fmt_pt(model.field, r.pt)}"
                    f" ({r.reason})")
            inv = _inv_json((top, attain))
            trace.record("main", "done", invariant_before=inv,
                         invariant_after=inv,
                         components=_component_indices(model))
            return model, trace
        budget.iteration()
        div = model.src_ledger.get(attain[0])
        tcid, alpha = model.component_germ(div).image[1]
        f_alpha(model, tcid, alpha, budget=budget, trace=trace, phase="main")


# ---- independent verification ------------------------------------------------


class VerificationReport:
    """Outcome of the audit; collects failures instead of raising."""

    def __init__(self):
        self.checks = []

    @property
    def ok(self):
        return all(c["ok"] for c in self.checks)

    def add(self, name, ok, detail=""):
        self.checks.append({"check": name, "ok": bool(ok), "detail": detail})

    def failures(self):
        return [c for c in self.checks if not c["ok"]]

    def as_dict(self):
        return {"ok": self.ok, "checks": list(self.checks)}

    def __repr__(self):
        state = "ok" if self.ok else f"{len(self.failures())} failed"
        return f"VerificationReport({state}, {len(self.checks)} checks)"


def _lam_candidates(field, h, ratio):
    # sampled on the component plus a fixed grid; wrong guesses are
    # discarded by the order test, missing ones only weaken the search
    vals = []
    if field.char:
        vals.extend(a for a in (field.from_int(i) for i in range(1, field.char)))
    else:
        vals.extend(field.parse(s)
                    for s in ("1", "-1", "2", "-2", "3", "-3", "1/2", "-1/2"))
    found = 0
    for p in rational_points_on(h, avoid=(ratio.den,)):
        lam = ratio.eval_point(*p)
        if not field.is_zero(lam):
            vals.append(lam)
            found += 1
            if found == 3:
                break
    seen, out = set(), []
    for lam in vals:
        k = field.sort_key(lam)
        if k not in seen:
            seen.add(k)
            out.append(lam)
    return out


def _total_order(fr, hs):
    return sum(fr.order_along(h) for h in hs)


def _raise_by_sampling(field, hs, gu, gv, t, base, cap=6):
    """Climb t <- t - lam * base^m while the vanishing order total rises."""
    for _ in range(cap):
        ft = poly_at(t, gu, gv)
        fb = poly_at(base, gu, gv)
        if ft.is_zero() or fb.is_zero():
            return t
        improved = None
        for h in hs:
            n = ft.order_along(h)
            nu = fb.order_along(h)
            if nu < 1 or n < 1 or n % nu:
                continue
            m = n // nu
            ratio = ft / Frac(fb.num ** m, fb.den ** m, _reduced=True)
            total0 = _total_order(ft, hs)
            for lam in _lam_candidates(field, h, ratio):
                t2 = t - (base ** m).scale(lam)
                f2 = poly_at(t2, gu, gv)
                if f2.is_zero():
                    continue
                if _total_order(f2, hs) > total0:
                    improved = t2
                    break
            if improved is not None:
                break
        if improved is None:
            return t
        t = improved
    return t


def _transversal_param(h, fr, pt):
    if not fr.is_regular_at(*pt) or not h.field.is_zero(fr.eval_point(*pt)):
        return False
    jf = (fr.derivative("y") * h.derivative("x")
          - fr.derivative("x") * h.derivative("y"))
    return (not jf.is_zero()) and jf.is_unit_at(*pt)


def _inv_char(field, n):
    if n == 0:
        return False
    return field.char == 0 or n % field.char != 0


def _cofactor(fr, hs, exps):
    prod = BivarPoly.one(hs[0].field)
    for h, e in zip(hs, exps):
        if e:
            prod = prod * h ** e
    return fr / prod


def _is_witness(field, pt, hs, gu, gv, t1, t2):
    """Does the frame (t1, t2) exhibit a monomial normal form at pt?"""
    f1 = poly_at(t1, gu, gv)
    f2 = poly_at(t2, gu, gv)
    if f1.is_zero() or f2.is_zero():
        return False
    if not hs:
        jf = frac_jacobian(f1, f2)
        return (not jf.is_zero()) and jf.is_unit_at(*pt)
    e1 = [f1.order_along(h) for h in hs]
    e2 = [f2.order_along(h) for h in hs]
    if min(e1) < 0 or min(e2) < 0:
        return False
    cof1 = _cofactor(f1, hs, e1)
    cof2 = _cofactor(f2, hs, e2)
    u1 = cof1.is_unit_at(*pt)
    u2 = cof2.is_unit_at(*pt)
    if len(hs) == 2:
        det = e1[0] * e2[1] - e1[1] * e2[0]
        return u1 and u2 and _inv_char(field, det)
    a, c = e1[0], e2[0]
    h = hs[0]
    if u1 and u2:
        jf = frac_jacobian(f1, f2)
        if jf.is_zero():
            return False
        n = jf.order_along(h)
        return n == a + c - 1 and (jf / h ** n).is_unit_at(*pt)
    if u1:
        return _inv_char(field, a) and _transversal_param(h, cof2, pt)
    if u2:
        return _inv_char(field, c) and _transversal_param(h, cof1, pt)
    return False


def _witness_at(model, cid, pt, rounds=4):
    """Brute-force normal-form hunt at one point.  Returns (ok, note).

    Candidate coefficients come from evaluating ratios at sampled points
    of the components, never from the classifier's residue algebra.
    """
    field = model.field
    try:
        tcid, gu, gv = model.transport_germ(cid, pt)
    except NotAMorphismHere as e:
        return False, str(e)
    alpha = (gu.eval_point(*pt), gv.eval_point(*pt))
    hs = []
    for div in model.src_ledger.all():
        eq = model.src_ledger.equation_in(div, cid)
        if eq is None or eq.is_constant():
            continue
        if field.is_zero(eq.eval_point(*pt)):
            hs.append(eq)
    if len(hs) > 2:
        return False, f"{len(hs)} branches through the point"
    teqs = []
    for div in model.tgt_ledger.all():
        eq = model.tgt_ledger.equation_in(div, tcid)
        if eq is None or eq.is_constant():
            continue
        if field.is_zero(eq.eval_point(*alpha)):
            teqs.append(eq)
    if len(teqs) > 2:
        return False, f"{len(teqs)} target branches at the image"
    xbar = BivarPoly.var(field, "x") - BivarPoly.const(field, alpha[0])
    ybar = BivarPoly.var(field, "y") - BivarPoly.const(field, alpha[1])
    if len(teqs) == 2:
        bases = [(teqs[0], teqs[1]), (teqs[1], teqs[0])]
    elif len(teqs) == 1:
        t = teqs[0]
        dx = t.derivative("x").eval_point(*alpha)
        comp = ybar if not field.is_zero(dx) else xbar
        bases = [(t, comp)]
    else:
        bases = [(xbar, ybar), (ybar, xbar)]
    for t1, t2 in bases:
        if _is_witness(field, pt, hs, gu, gv, t1, t2):
            return True, ""
        for _ in range(rounds):
            t2 = _raise_by_sampling(field, hs, gu, gv, t2, t1)
            if _is_witness(field, pt, hs, gu, gv, t1, t2):
                return True, ""
            t1 = _raise_by_sampling(field, hs, gu, gv, t1, t2)
            if _is_witness(field, pt, hs, gu, gv, t1, t2):
                return True, ""
    return False, "no frame matched a normal form"


def verify_monomial(model) -> VerificationReport:
    """Independent audit of a claimed monomial model.

    Re-derives the ramification data from the carriers, re-checks normal
    crossings, pullback cycles, and tameness, and hunts a normal-form
    witness at every audited point with the sampling search.
    """
    rep = VerificationReport()
    field = model.field
    # the stored cycles are part of the claim; snapshot before the refresh
    # below re-registers them
    stored_cycles = {k: dict(v) for k, v in model.src_ledger.cycles.items()}

    try:
        _refresh_loci(model)
        missing = []
        for cid in model.source.all_ids():
            car = model.carriers[cid]
            jac = poly_jacobian(car.u, car.v)
            if jac.is_zero():
                missing.append(f"{cid}: identically zero Jacobian")
                continue
            if jac.is_constant():
                continue
            sup = [eq for _d, eq in chart_support(model.src_ledger, cid)]
            for q, _m in factor_bivariate(jac)[1]:
                if not any(_proportional(q, eq) for eq in sup):
                    missing.append(f"{cid}: factor {q.format()} unledgered")
        rep.add("critical-locus-ledgered", not missing, "; ".join(missing))
    except Exception as e:
        rep.add("critical-locus-ledgered", False, repr(e))

    try:
        bad = []
        for comp in horizontal_components(model):
            germ = comp.germ
            g = image_curve(germ.h, germ.u, germ.v)
            hit = False
            for div in model.tgt_ledger.all():
                eq = model.tgt_ledger.equation_in(div, germ.target)
                if eq is not None and not eq.is_constant() \
                        and _proportional(eq, g):
                    hit = True
                    break
            if not hit:
                bad.append(f"image of {comp.div.did} unledgered")
        rep.add("branch-images-ledgered", not bad, "; ".join(bad))
    except Exception as e:
        rep.add("branch-images-ledgered", False, repr(e))

    for name, tree, ledger in (("target-snc", model.target, model.tgt_ledger),
                               ("source-snc", model.source, model.src_ledger)):
        try:
            viol = find_violation(tree, ledger, separate_branches=True)
            detail = ""
            if viol is not None:
                cid, pt, reason = viol
                detail = f"{cid} {_fmt_pt(field, pt)}: {reason}"
            rep.add(name, viol is None, detail)
        except Exception as e:
            rep.add(name, False, repr(e))

    try:
        wild = []
        for comp in horizontal_components(model):
            rec = tame_test(model, comp.div)
            if not rec.tame:
                wild.append(f"{rec.did}: order {rec.jac_order} != {rec.a - 1}")
        rep.add("tame-horizontals", not wild, "; ".join(wild))
    except Exception as e:
        rep.add("tame-horizontals", False, repr(e))

    try:
        off = []
        for name, parts in sorted(stored_cycles.items()):
            tdid = name[2:] if name.startswith("f*") else name
            fresh = model.pullback_divisor(model.tgt_ledger.get(tdid),
                                           register=False)
            if fresh != parts:
                off.append(f"{name}: stored {parts}, recomputed {fresh}")
        rep.add("pullback-cycles", not off, "; ".join(off))
    except Exception as e:
        rep.add("pullback-cycles", False, repr(e))

    try:
        fails = []
        for cid, pt in _audit_points(model):
            ok, note = _witness_at(model, cid, pt)
            if not ok:
                fails.append(f"{cid} {_fmt_pt(field, pt)}: {note}")
        rep.add("monomial-witnesses", not fails, "; ".join(fails))
    except Exception as e:
        rep.add("monomial-witnesses", False, repr(e))

    return rep
