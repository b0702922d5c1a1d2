"""Component invariants: orders, frames, complexity, tameness, classification.

The maximization oracle here is independent of the engine: candidate
coefficients come from evaluating quotients at rational points of the
component (plus a grid), and every candidate is validated only by whether
the subtraction actually raised the order.  The engine solves the same
coefficients through residue algebra, so agreement is meaningful.
"""

import random

import pytest

from monores import (MorphismModel, PrimeField, QQ, parse_poly)
from monores.frac import Frac, frac_jacobian
from monores.invariants import (_branches_at, _coordinate_pair,
                                classify_monomial, complexity,
                                critical_components, global_complexity,
                                maximize_admissible, point_complexity,
                                special_points, tame_test, vertical_order)
from monores.model import poly_at
from monores.snc import rational_points_on

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def mk(field, u, v):
    return MorphismModel(parse_poly(u, field), parse_poly(v, field))


def origin(field):
    return (field.from_int(0), field.from_int(0))


def verticals(model):
    return [c for c in critical_components(model) if c.germ.kind == "vertical"]


# ---- orders and maximization -----------------------------------------------------


class TestVerticalOrder:
    def test_basic_orders(self):
        m = mk(QQ, "x", "x*y")
        e = critical_components(m)[0].div
        assert vertical_order(m, e, parse_poly("x", QQ)) == 1
        assert vertical_order(m, e, parse_poly("y", QQ)) == 1
        assert vertical_order(m, e, parse_poly("x*y", QQ)) == 2

    def test_rejects_horizontal(self):
        m = mk(QQ, "x", "y^2")
        d = critical_components(m)[0].div
        with pytest.raises(Exception):
            vertical_order(m, d, parse_poly("x", QQ))


class TestMaximize:
    def test_plain_germ_no_adjustment(self):
        m = mk(QQ, "x", "x*y")
        fr, val = maximize_admissible(m, critical_components(m)[0].div)
        assert val == 2
        assert (fr.u, fr.v) == (parse_poly("x", QQ), parse_poly("y", QQ))

    def test_one_step_adjustment(self):
        # v picks up the correction u, reaching order 2 along the component
        m = mk(QQ, "x", "x + x^2*y")
        fr, val = maximize_admissible(m, critical_components(m)[0].div)
        assert val == 3
        assert fr.u == parse_poly("x", QQ)
        assert fr.v == parse_poly("y - x", QQ)

    def test_two_rung_ladder(self):
        m = mk(QQ, "x", "x^2 + x^3*y")
        fr, val = maximize_admissible(m, critical_components(m)[0].div)
        assert val == 4
        rec = complexity(m, critical_components(m)[0].div)
        assert (rec.jac_order, rec.index) == (3, 0)


class TestComplexity:
    def test_smooth_contraction(self):
        m = mk(QQ, "x", "x*y")
        rec = complexity(m, critical_components(m)[0].div)
        assert (rec.jac_order, rec.best, rec.index) == (1, 2, 0)

    def test_wild_indicator_char_two(self):
        m = mk(F2, "x^2*y", "x^2 + x^2*y + x^3")
        comps = critical_components(m)
        assert [(c.div.did, c.germ.kind, c.jac_order) for c in comps] == \
            [("C1Y", "vertical", 4)]
        rec = complexity(m, comps[0].div)
        assert (rec.jac_order, rec.best, rec.index) == (4, 4, 1)

    def test_characteristic_zero_twin_is_clean(self):
        m = mk(QQ, "x^2*y", "x^2 + x^2*y + x^3")
        comps = critical_components(m)
        assert [(c.div.did, c.germ.kind) for c in comps] == \
            [("C1Y", "vertical"), ("C2Y", "horizontal")]
        rec = complexity(m, comps[0].div)
        assert (rec.jac_order, rec.best, rec.index) == (3, 4, 0)

    def test_global_index(self):
        assert global_complexity(mk(F2, "x^2*y", "x^2 + x^2*y + x^3")) == \
            (1, ["C1Y"])
        assert global_complexity(mk(QQ, "x", "x*y")) == (0, ["C1Y"])
        # no contracted components at all
        assert global_complexity(mk(QQ, "x", "y^2")) == (0, [])

    def test_point_complexity(self):
        m = mk(F2, "x^2*y", "x^2 + x^2*y + x^3")
        assert point_complexity(m, "Y0", origin(F2)) == 1
        assert point_complexity(m, "Y0", (F2.from_int(0), F2.from_int(1))) == 1
        assert point_complexity(m, "Y0", (F2.from_int(1), F2.from_int(1))) == 0


# ---- tameness ---------------------------------------------------------------------


class TestTame:
    def test_char_zero_always_tame(self):
        m = mk(QQ, "x", "y^2")
        rec = tame_test(m, critical_components(m)[0].div)
        assert rec.tame and (rec.a, rec.jac_order) == (2, 1)

    def test_wild_in_char_two(self):
        m = mk(F2, "x", "y^2 + y^3")
        rec = tame_test(m, critical_components(m)[0].div)
        assert not rec.tame
        assert rec.certificate() == {
            "component": "C1Y", "image": "B1X", "pullback_order": 2,
            "jacobian_order": 2, "expected": 1}

    def test_same_map_tame_in_char_three(self):
        m = mk(F3, "x", "y^2 + y^3")
        rec = tame_test(m, critical_components(m)[0].div)
        assert rec.tame and (rec.a, rec.jac_order) == (2, 1)


# ---- classification ---------------------------------------------------------------


class TestClassify:
    def test_case1_uncritical_point(self):
        m = mk(QQ, "x", "y")
        r = classify_monomial(m, "Y0", (QQ.from_int(3), QQ.from_int(4)))
        assert r.monomial and r.case == 1

    def test_case2_tame_branch(self):
        m = mk(F3, "x", "y^2 + y^3")
        r = classify_monomial(m, "Y0", origin(F3))
        assert r.monomial and (r.case, r.form) == (2, 1)
        assert r.exponents == (2, 0, 0, 1)
        assert r.frame.u == parse_poly("y", F3)

    def test_case3_branch_crossing(self):
        m = mk(QQ, "x^2", "y^2")
        r = classify_monomial(m, "Y0", origin(QQ))
        assert r.monomial and (r.case, r.form) == (3, 1)
        assert r.exponents == (2, 0, 0, 2)

    def test_case4_contracted_origin(self):
        m = mk(QQ, "x", "x*y")
        r = classify_monomial(m, "Y0", origin(QQ))
        assert r.monomial and (r.case, r.form) == (4, 1)
        assert r.exponents == (1, 0, 1, 1)

    def test_case4_free_point_form_two(self):
        m = mk(QQ, "x", "x*y")
        r = classify_monomial(m, "Y0", (QQ.from_int(0), QQ.from_int(5)))
        assert r.monomial and (r.case, r.form) == (4, 2)
        assert r.exponents == (1, 0, 1, 0)

    def test_case5_mixed_crossing(self):
        m = mk(QQ, "x^2*y", "y")
        r = classify_monomial(m, "Y0", origin(QQ))
        assert r.monomial and (r.case, r.form) == (5, 1)
        assert r.exponents == (2, 1, 0, 1)

    def test_case6_contracted_crossing(self):
        m = mk(QQ, "x*y", "x^2*y")
        r = classify_monomial(m, "Y0", origin(QQ))
        assert r.monomial and (r.case, r.form) == (6, 1)
        assert r.exponents == (1, 1, 1, 2)
        assert global_complexity(m) == (0, ["C1Y", "C2Y"])

    def test_wild_branch_refused(self):
        m = mk(F2, "x", "y^2 + y^3")
        r = classify_monomial(m, "Y0", origin(F2))
        assert not r.monomial and r.reason == "wild"
        assert r.detail.certificate()["expected"] == 1

    def test_positive_complexity_refused(self):
        m = mk(F2, "x^2*y", "x^2 + x^2*y + x^3")
        r = classify_monomial(m, "Y0", origin(F2))
        assert not r.monomial
        assert (r.reason, r.detail) == ("positive-complexity", 1)

    def test_unprepared_triple_point(self):
        m = mk(QQ, "x*y", "x^2*y + x*y^2")
        r = classify_monomial(m, "Y0", origin(QQ))
        assert not r.monomial and r.reason == "not-prepared"


class TestSpecialPoints:
    def test_cusp_crossings(self):
        m = mk(QQ, "x*y", "x^2*y + x*y^2")
        assert special_points(m) == [("Y0", origin(QQ))]

    def test_branch_crossing(self):
        m = mk(QQ, "x^2", "y^2")
        assert special_points(m) == [("Y0", origin(QQ))]


# ---- the independent maximization oracle ------------------------------------------


def oracle_best(model, div, extra_starts=()):
    """Exhaustive admissible maximization with sampled coefficients.

    Breadth-first over adjustment ladders; a candidate coefficient is kept
    only if subtracting it really raised the order, so spurious samples
    are harmless and missing ones would only lower the result.
    """
    field = model.field
    germ = model.component_germ(div)
    chart, alpha = germ.image[1]
    h = germ.h

    def nu(g):
        return poly_at(g, germ.u, germ.v).order_along(h)

    def lam_candidates(v, u, m):
        us = poly_at(u, germ.u, germ.v)
        vs = poly_at(v, germ.u, germ.v)
        ratio = vs / Frac(us.num ** m, us.den ** m, _reduced=True)
        vals = []
        if field.char == 0:
            for num in (1, -1, 2, -2, 3, -3):
                vals.append(QQ.parse(f"{num}"))
            vals.append(QQ.parse("1/2"))
            vals.append(QQ.parse("-1/2"))
        else:
            vals.extend(field.elements())
        taken = 0
        for p in rational_points_on(h, avoid=(ratio.den,)):
            vals.append(ratio.eval_point(*p))
            taken += 1
            if taken == 3:
                break
        seen, out = set(), []
        for lam in vals:
            k = field.sort_key(lam)
            if k not in seen and not field.is_zero(lam):
                seen.add(k)
                out.append(lam)
        return out

    def expand(v0, u):
        nu_u = nu(u)
        best = nu(v0)
        frontier = [v0]
        visited = {v0}
        while frontier:
            v = frontier.pop(0)
            n = nu(v)
            best = max(best, n)
            if n % nu_u:
                continue
            m = n // nu_u
            if m < 1:
                continue
            for lam in lam_candidates(v, u, m):
                v2 = v - (u ** m).scale(lam)
                if v2 in visited or v2.is_zero():
                    continue
                if nu(v2) > n:
                    visited.add(v2)
                    frontier.append(v2)
        return best

    branches = _branches_at(model, chart, alpha)
    xbar, ybar = _coordinate_pair(field, alpha)
    if len(branches) == 2:
        return nu(branches[0][1]) + nu(branches[1][1])
    if len(branches) == 1:
        u = branches[0][1]
        ux = u.derivative("x").eval_point(*alpha)
        starts = [ybar if not field.is_zero(ux) else xbar]
        starts.extend(extra_starts)
        return nu(u) + max(expand(s, u) for s in starts)
    cands = [nu(xbar) + expand(ybar, xbar), nu(ybar) + expand(xbar, ybar)]
    for s in extra_starts:
        cands.append(nu(xbar) + expand(s, xbar))
    return max(cands)


ORACLE_GERMS = [
    (QQ, "x", "x*y"),
    (QQ, "x", "x + x^2*y"),
    (QQ, "x", "x^2 + x^3*y"),
    (QQ, "x", "x^2*y + x^5"),
    (QQ, "x*y", "x^2*y"),
    (QQ, "x^2*y", "y"),
    (QQ, "x^2", "x^2*y + x^3"),
    (QQ, "x^2*y", "x^2 + x^2*y + x^3"),
    (F2, "x^2*y", "x^2 + x^2*y + x^3"),
    (F2, "x", "x^2*y + x^3"),
    (F3, "x", "x + x^3*y"),
    (F5, "x*y", "x^3*y"),
]


class TestOracle:
    @pytest.mark.parametrize("field,u,v", ORACLE_GERMS)
    def test_engine_matches_oracle(self, field, u, v):
        m = mk(field, u, v)
        vs = verticals(m)
        assert vs, "oracle germs must have a contracted component"
        for comp in vs:
            _, engine = maximize_admissible(m, comp.div)
            assert engine == oracle_best(m, comp.div)

    def test_frame_invariance_under_random_starts(self):
        # randomized admissible starting parameters must not beat the engine
        rng = random.Random(20217)
        for field, u, v in [(QQ, "x", "x + x^2*y"),
                            (QQ, "x", "x^2 + x^3*y"),
                            (QQ, "x^2*y", "x^2 + x^2*y + x^3")]:
            m = mk(field, u, v)
            comp = verticals(m)[0]
            _, engine = maximize_admissible(m, comp.div)
            xbar, ybar = _coordinate_pair(field, (field.from_int(0),) * 2)
            starts = []
            for _ in range(5):
                s = ybar
                for k in range(1, 4):
                    c = rng.randint(-2, 2)
                    if c:
                        s = s - (xbar ** k).scale(field.from_int(c))
                starts.append(s)
            assert oracle_best(m, comp.div, extra_starts=starts) == engine


class TestFrameChecks:
    def test_frame_vanishes_at_point(self):
        m = mk(QQ, "x^2*y", "y")
        fr, _ = maximize_admissible(m, verticals(m)[0].div)
        assert QQ.is_zero(fr.u.eval_point(*fr.at))
        assert QQ.is_zero(fr.v.eval_point(*fr.at))

    def test_branch_aligned_frame(self):
        # with a branch curve through the image, u is pinned to its equation
        m = mk(QQ, "x^2*y", "y")
        fr, _ = maximize_admissible(m, verticals(m)[0].div)
        assert fr.u == parse_poly("x", QQ)
