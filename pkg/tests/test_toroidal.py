"""Toroidal stage tests: classification, order-gap invariants, both phases.

The frozen traces come from the first verified runs, same policy as the
pipeline tests: a changed step count means a different tower, review it.
"""

import json

import pytest

from monores.exceptions import (BudgetExceeded, CharacteristicPositive,
                                NotMonomialInput, ValidationError)
from monores.fields import PrimeField, Rationals
from monores.grammar import parse_poly
from monores.model import MorphismModel
from monores.pipeline import monomialize
from monores.toroidal import (ToroidalClass, bad_locus, classify_toroidal,
                              invariant_I, invariant_r, toroidal_state,
                              toroidalize, verify_toroidal)

QQ = Rationals()
F3 = PrimeField(3)

CUSP = ("x*y", "x^2*y + x*y^2")
DEEP_U = "x^2 + 2*x^2*y + x^2*y^2"
DEEP_V = "x^3 + 3*x^3*y + 3*x^3*y^2 + x^3*y^3 + x^5 + 2*x^5*y + x^5*y^2"


def mk(u, v, field=QQ):
    return MorphismModel(parse_poly(u, field), parse_poly(v, field))


def state_over(u, v, targets=None):
    m = mk(u, v)
    eqs = None if targets is None else [parse_poly(t, QQ) for t in targets]
    return toroidal_state(m, target_divisors=eqs)


def origin():
    return (QQ.zero(), QQ.zero())


class TestClassification:
    def test_identity_is_transversal(self):
        st = state_over("x", "y", targets=["x"])
        cls = classify_toroidal(st, "Y0", origin())
        assert cls.tag == "4*"
        assert cls.good
        assert cls.exponents == (1, 0)

    def test_pure_power_is_transversal(self):
        st = state_over("x^3", "y", targets=["x"])
        cls = classify_toroidal(st, "Y0", origin())
        assert cls.tag == "4*"
        assert cls.exponents == (3, 0)

    def test_shear_family_with_unit(self):
        # second coordinate x^3*(y+1): residual unit, so gamma is nonzero
        st = state_over("x^2", "x^3*y + x^3", targets=["x"])
        cls = classify_toroidal(st, "Y0", origin())
        assert cls.tag == "4"
        assert not cls.good
        assert cls.gamma_nonzero is True
        assert cls.exponents == (2, 3)

    def test_parameter_residual_has_gamma_zero(self):
        st = state_over("x^3", "x*y", targets=["x"])
        cls = classify_toroidal(st, "Y0", origin())
        assert cls.tag == "4"
        assert cls.gamma_nonzero is False
        assert cls.exponents == (3, 1)

    def test_two_branches_both_sides(self):
        # (x^2*y, x*y^3) over the two coordinate axes: exponent matrix
        # ((1,2),(3,1)) has determinant -5
        st = state_over("x^2*y", "x*y^3", targets=["x", "y"])
        cls = classify_toroidal(st, "Y0", origin())
        assert cls.tag == "1"
        assert cls.good
        assert cls.exponents == (1, 2, 3, 1)

    def test_contracted_axis_under_two_branches(self):
        # away from the crossing, points of {x} sit under both target axes
        st = state_over("x^2", "x^3*y + x^3", targets=["x", "y"])
        cls = classify_toroidal(st, "Y0", (QQ.zero(), QQ.one()))
        assert cls.tag == "2"
        assert cls.good
        assert sorted(cls.exponents) == [2, 3]

    def test_crossing_over_one_branch_is_case_3(self):
        # both source axes of (x^2*y^2, x^3) map into {U = 0}; their
        # crossing is a two-point over a one-branch image
        st = state_over("x^2*y^2", "x^3", targets=["x"])
        cls = classify_toroidal(st, "Y0", origin())
        assert cls.tag == "3"
        assert not cls.good
        assert cls.exponents == (2, 2, 0, 3)

    def test_off_boundary_image_rejected(self):
        st = state_over("x", "y", targets=["x"])
        with pytest.raises(NotMonomialInput):
            classify_toroidal(st, "Y0", (QQ.one(), QQ.zero()))

    def test_classes_report_dicts(self):
        st = state_over("x^3", "x*y", targets=["x"])
        d = classify_toroidal(st, "Y0", origin()).as_dict()
        assert d["tag"] == "4"
        assert d["good"] is False
        assert json.dumps(d)


class TestOrderGap:
    def test_positive_gap(self):
        st = state_over("x^2", "x^3*y + x^3", targets=["x"])
        assert invariant_I(st, "Y0", origin()) == 1

    def test_negative_gap_of_parameter_form(self):
        st = state_over("x^3", "x*y", targets=["x"])
        assert invariant_I(st, "Y0", origin()) == -2

    def test_transversal_gap_is_minus_order(self):
        st = state_over("x^3", "y", targets=["x"])
        assert invariant_I(st, "Y0", origin()) == -3

    def test_gap_maximizes_over_frame_shears(self):
        # v = x^3*y + x^2 starts at order 2 but v - u climbs to 3
        st = state_over("x^2", "x^3*y + x^2", targets=["x"])
        assert invariant_I(st, "Y0", origin()) == 1

    def test_oracle_agreement_on_shear_ladder(self):
        # brute-force oracle: max order of v - lam*u^m over a small grid
        cases = [("x^2", "x^3*y + x^3"), ("x^2", "x^3*y + x^2"),
                 ("x^3", "x*y"), ("x^2", "x^5*y + x^4")]
        for us, vs in cases:
            u = parse_poly(us, QQ)
            v = parse_poly(vs, QQ)
            h = parse_poly("x", QQ)
            best = v.order_along(h)
            frontier = [v]
            for _ in range(4):
                nxt = []
                for w in frontier:
                    for m in range(1, 5):
                        for ls in ("1", "-1", "2", "-2", "3", "-3",
                                   "1/2", "-1/2"):
                            w2 = w - (u ** m).scale(QQ.parse(ls))
                            if not w2.is_zero():
                                nxt.append(w2)
                                if w2.order_along(h) > best:
                                    best = w2.order_along(h)
                frontier = sorted(nxt, key=lambda p: -p.order_along(h))[:3]
            st = state_over(us, vs, targets=["x"])
            a = u.order_along(h)
            assert invariant_I(st, "Y0", origin()) == best - a, (us, vs)

    def test_two_branch_image_rejected(self):
        st = state_over("x^2", "x^3*y + x^3", targets=["x", "y"])
        with pytest.raises(ValidationError):
            invariant_I(st, "Y0", origin())

    def test_r_is_none_when_nothing_is_bad(self):
        st = state_over("x", "y", targets=["x"])
        assert invariant_r(st) is None

    def test_r_picks_the_maximum(self):
        st = state_over("x^2", "x^3*y + x^3", targets=["x"])
        assert invariant_r(st) == 1


class TestBadLocus:
    def test_contracted_component_is_bad(self):
        st = state_over("x^3", "x*y", targets=["x"])
        comps, images = bad_locus(st)
        assert comps == ["C1Y"]
        assert images == [("X0", origin())]

    def test_all_good_state_has_empty_locus(self):
        st = state_over("x", "y", targets=["x"])
        assert bad_locus(st) == ([], [])

    def test_crossing_badness_rides_a_bad_component(self):
        # the case-3 crossing of (x^2*y^2, x^3) sits on the contracted,
        # generically bad branch {x}; the horizontal branch {y} stays
        # good away from it, so only one component lands in the locus
        st = state_over("x^2*y^2", "x^3", targets=["x"])
        comps, images = bad_locus(st)
        assert comps == ["C2Y"]
        assert images == [("X0", origin())]


class TestSchedule:
    def test_negative_chain_walk(self):
        # one target blow-up, then the stall chain climbs -2 -> -1
        st = state_over("x^3", "x*y", targets=["x"])
        st, tr = toroidalize(st)
        walk = [(s["action"], s.get("I"), s.get("r")) for s in tr]
        assert walk == [
            ("toroidal-target-blowup", None, -2),
            ("toroidal-source-blowup", -2, -2),
            ("toroidal-source-blowup", -1, -2),
            ("done", None, None),
        ]
        assert all(s["phase"] == "toroidal-2" for s in tr)
        assert verify_toroidal(st).ok

    def test_positive_gap_runs_first_phase(self):
        st = state_over("x^2*y^2 + 2*x^2*y + x^2", "x^3", targets=["x"])
        assert invariant_r(st) == 1
        st, tr = toroidalize(st)
        phases = [s["phase"] for s in tr]
        assert "toroidal-1" in phases
        assert tr.steps[0]["r"] == 1
        assert verify_toroidal(st).ok

    def test_shear_state_terminates(self):
        st = state_over("x^2", "x^3*y + x^3", targets=["x"])
        st, tr = toroidalize(st)
        assert tr.blowup_count() == 3
        assert [s["phase"] for s in tr] == [
            "toroidal-1", "toroidal-2", "toroidal-2", "toroidal-2"]
        assert verify_toroidal(st).ok

    def test_schedule_is_idempotent(self):
        st = state_over("x^3", "x*y", targets=["x"])
        st, _tr = toroidalize(st)
        st, tr2 = toroidalize(st)
        assert tr2.blowup_count() == 0
        assert [s["action"] for s in tr2] == ["done"]

    def test_budget_refusal(self):
        st = state_over("x^3", "x*y", targets=["x"])
        with pytest.raises(BudgetExceeded) as ei:
            toroidalize(st, max_blowups=1)
        assert ei.value.spent["blowups"] == 1

    def test_characteristic_guard(self):
        m = mk("x^2", "y", field=F3)
        with pytest.raises(CharacteristicPositive):
            toroidal_state(m)

    def test_critical_cover_refusal(self):
        # {y+1} is critical for this pair but does not pull back from {V}
        st = state_over("x^2*y^2 + 2*x^2*y + x^2", "x^3", targets=["y"])
        with pytest.raises(ValidationError) as ei:
            toroidalize(st)
        assert "C2Y" in str(ei.value)

    def test_trace_is_json_ready(self):
        st = state_over("x^3", "x*y", targets=["x"])
        _st, tr = toroidalize(st)
        reloaded = json.loads(json.dumps(tr.steps))
        assert reloaded[0]["divisor"] == "E1X"
        assert [s["step"] for s in reloaded] == list(range(len(reloaded)))


class TestEndToEnd:
    def test_monomialized_cusp_is_already_toroidal(self):
        m = mk(*CUSP)
        m, _tr = monomialize(m)
        st = toroidal_state(m)
        assert st.boundary() == {
            "target": ["B1X", "E1X", "E2X", "E3X"],
            "source": ["C1Y", "C2Y", "C3Y", "E1Y", "E2Y"],
        }
        st, tr = toroidalize(st)
        assert tr.blowup_count() == 0
        assert [s["action"] for s in tr] == ["done"]
        assert verify_toroidal(st).ok

    def test_deep_germ_runs_both_phases(self):
        m = mk(DEEP_U, DEEP_V)
        m, _tr = monomialize(m)
        st = toroidal_state(m)
        st, tr = toroidalize(st)
        assert tr.blowup_count() == 9
        phases = [s["phase"] for s in tr]
        assert "toroidal-1" in phases and "toroidal-2" in phases
        # second-phase stall chain ascends strictly through negative gaps
        chain = [s["I"] for s in tr
                 if s["phase"] == "toroidal-2"
                 and s["action"] == "toroidal-source-blowup"]
        assert chain == [-3, -2, -1]
        assert verify_toroidal(st).ok

    def test_outputs_are_fixed_points(self):
        m = mk(DEEP_U, DEEP_V)
        m, _tr = monomialize(m)
        st = toroidal_state(m)
        st, _tr = toroidalize(st)
        st, tr2 = toroidalize(st)
        assert tr2.blowup_count() == 0


class TestVerifier:
    def test_bad_input_reported_with_witness(self):
        st = state_over("x^3", "x*y", targets=["x"])
        rep = verify_toroidal(st)
        assert not rep.ok
        fails = {c["check"] for c in rep.failures()}
        assert fails == {"all-points-good"}
        detail = rep.failures()[0]["detail"]
        assert "case 4" in detail and "Y0" in detail

    def test_identity_with_explicit_boundary_passes(self):
        st = state_over("x", "y", targets=["x"])
        rep = verify_toroidal(st)
        assert rep.ok
        assert [c["check"] for c in rep.checks] == [
            "characteristic-zero", "pullback-boundary",
            "critical-containment", "bad-locus-closed", "all-points-good"]

    def test_verifier_collects_instead_of_raising(self):
        st = state_over("x^2*y^2", "x^3", targets=["x"])
        rep = verify_toroidal(st)
        assert not rep.ok
        assert any(c["check"] == "all-points-good" for c in rep.failures())

    def test_boundary_mismatch_detected(self):
        st = state_over("x^3", "x*y", targets=["x"])
        st, _tr = toroidalize(st)
        st.d_y.pop()
        rep = verify_toroidal(st)
        assert not rep.ok
        assert any(c["check"] == "pullback-boundary"
                   for c in rep.failures())


class TestClassType:
    def test_good_tags(self):
        for tag, good in (("1", True), ("2", True), ("3", False),
                          ("4", False), ("4*", True)):
            assert ToroidalClass(tag, ()).good is good
