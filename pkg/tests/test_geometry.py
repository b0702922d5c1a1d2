"""Charts, divisors, SNC tests, embedded resolution."""

from fractions import Fraction

import pytest

from monores import (BudgetExceeded, ChartTree, DivisorLedger,
                     NonRationalSingularity, QQ, ValidationError,
                     embedded_resolution, is_snc_at, parse_poly,
                     singular_points)
from monores.divisors import ascend_to_root, curve_to_parent, strict_down
from monores.poly import BivarPoly, order_along
from monores.resolve import find_violation
from monores.snc import chart_violations, support_components


def q(text):
    return parse_poly(text, QQ)


def fr(a, b):
    return (Fraction(a), Fraction(b))


def origin_tree():
    tree = ChartTree(QQ, "Z")
    ev = tree.blowup(tree.root_id, fr(0, 0))
    return tree, ev


class TestChartTree:
    def test_blowup_creates_two_charts(self):
        tree, ev = origin_tree()
        assert ev.child_a == "Z1" and ev.child_b == "Z2"
        assert tree.chart("Z1").side == "A"
        assert tree.chart("Z2").side == "B"
        assert tree.frontier() == ["Z1", "Z2"]

    def test_parent_maps(self):
        tree, ev = origin_tree()
        assert tree.map_to_parent("Z1", fr(2, 3)) == ("Z0", fr(2, 6))
        assert tree.map_to_parent("Z2", fr(2, 3)) == ("Z0", fr(6, 3))

    def test_lift_inverts_projection(self):
        tree, ev = origin_tree()
        for pt in [fr(1, 5), fr(-2, 3), fr(Fraction(1, 2), 7)]:
            down = tree.project("Z1", pt, "Z0")
            assert tree.lift_to_child("Z0", down, "Z1") == pt

    def test_lift_outside_domain(self):
        tree, ev = origin_tree()
        # x = 0 in the root only meets chart B
        assert tree.lift_to_child("Z0", fr(0, 4), "Z1") is None
        assert tree.lift_to_child("Z0", fr(0, 4), "Z2") == (Fraction(0), Fraction(4))

    def test_overlap_point_is_identified(self):
        tree, ev = origin_tree()
        # direction (1 : -1) seen from both sides of the exceptional line
        assert tree.same_point("Z1", fr(0, -1), "Z2", fr(-1, 0))
        can = tree.canonical_point("Z2", fr(-1, 0))
        assert can == ("Z1", fr(0, -1))

    def test_blown_up_point_is_dead(self):
        tree, ev = origin_tree()
        assert tree.canonical_point("Z0", fr(0, 0)) is None
        with pytest.raises(ValidationError):
            tree.blowup("Z0", fr(0, 0))

    def test_blowup_requires_canonical_center(self):
        tree, ev = origin_tree()
        with pytest.raises(ValidationError):
            tree.blowup("Z2", fr(-1, 0))  # lives in chart A as (0, -1)
        tree.blowup("Z1", fr(0, -1))  # the canonical twin is fine

    def test_off_center_point_ascends_to_root(self):
        tree, ev = origin_tree()
        assert tree.canonical_point("Z1", fr(3, 5)) == ("Z0", fr(3, 15))

    def test_direction_0_1_canonical_in_b(self):
        tree, ev = origin_tree()
        assert tree.canonical_point("Z2", fr(0, 0)) == ("Z2", fr(0, 0))


class TestDivisors:
    def test_strict_transform_of_parabola(self):
        tree, ev = origin_tree()
        f = q("y - x^2")
        total = tree.push_poly(f, "Z1")
        assert total == q("x*y - x^2")
        assert order_along(total, BivarPoly.var(QQ, "x")) == 1

    def test_strict_transform_values(self):
        tree, ev = origin_tree()
        assert strict_down(tree, q("y - x^2"), "Z1") == q("y - x")
        assert strict_down(tree, q("y - x^2"), "Z2") == q("1 - x^2*y")
        # vertical line {x=0} only survives in chart B
        assert strict_down(tree, q("x"), "Z1") == q("1")
        assert strict_down(tree, q("x"), "Z2") == q("x")

    def test_curve_ascent_round_trip(self):
        tree, ev = origin_tree()
        for text in ("y - x^2", "x^3 - y^2", "y^2 - x^2 - x^3"):
            f = q(text)
            for child in ("Z1", "Z2"):
                s = strict_down(tree, f, child)
                assert curve_to_parent(tree, child, s) == f

    def test_exceptional_equations(self):
        tree, ev = origin_tree()
        ledger = DivisorLedger(tree)
        e1 = ledger.add_exceptional("Z0", ev)
        assert e1.did == "E1Z"
        assert ledger.equation_in(e1, "Z0") is None
        assert ledger.equation_in(e1, "Z1") == q("x")
        assert ledger.equation_in(e1, "Z2") == q("y")
        ev2 = tree.blowup("Z1", fr(0, 0))
        e2 = ledger.add_exceptional("Z1", ev2)
        # E1 is tangent to the (0:1) direction: misses chart AA, is {x} in AB
        assert ledger.equation_in(e1, ev2.child_a).is_constant()
        assert ledger.equation_in(e1, ev2.child_b) == q("x")
        assert ledger.equation_in(e2, ev2.child_a) == q("x")
        assert ledger.equation_in(e2, ev2.child_b) == q("y")

    def test_curve_anchoring_and_dedupe(self):
        tree, ev = origin_tree()
        ledger = DivisorLedger(tree)
        d1 = ledger.add_curve("branch-component", "Z1", q("y - x"))
        assert d1.equation == q("x^2 - y")  # monic leading coefficient
        d2 = ledger.add_curve("branch-component", "Z2", q("1 - x^2*y"))
        assert d2 is d1
        d3 = ledger.add_curve("critical-component", "Z0", q("x^3 - y^2"))
        assert d3 is not d1 and d3.did.startswith("C")

    def test_components_at(self):
        tree, ev = origin_tree()
        ledger = DivisorLedger(tree)
        e1 = ledger.add_exceptional("Z0", ev)
        c = ledger.add_curve("branch-component", "Z0", q("y - x^2"))
        at = ledger.components_at("Z1", fr(0, 0))
        assert {d.did for d in at} == {e1.did, c.did}
        assert ledger.components_at("Z1", fr(1, 1)) == [c]


class TestSncPredicates:
    def test_singular_points_of_critical_triple(self):
        assert singular_points(q("x*y^2 - x^2*y")) == [fr(0, 0)]

    def test_singular_points_cusp_and_smooth(self):
        assert singular_points(q("y^2 - x^3")) == [fr(0, 0)]
        assert singular_points(q("y - x^2")) == []
        assert singular_points(q("y^2 - x^2 - x^3")) == [fr(0, 0)]

    def test_singular_points_two_crossings(self):
        f = q("x - 1") * q("x + 1") * q("y")
        assert singular_points(f) == [fr(-1, 0), fr(1, 0)]

    def test_node_is_snc(self):
        rep = is_snc_at(q("x*y"), fr(0, 0))
        assert rep.ok and rep.branches == 2

    def test_cusp_is_not_snc(self):
        rep = is_snc_at(q("y^2 - x^3"), fr(0, 0))
        assert not rep.ok

    def test_tacnode_is_not_snc(self):
        rep = is_snc_at(q("y^2 - x^4"), fr(0, 0))
        assert not rep.ok and "tangential" in rep.reason

    def test_triple_point_is_not_snc(self):
        rep = is_snc_at(q("x*y^2 - x^2*y"), fr(0, 0))
        assert not rep.ok and "3 components" in rep.reason

    def test_nodal_cubic_is_geometrically_snc(self):
        rep = is_snc_at(q("y^2 - x^2 - x^3"), fr(0, 0))
        assert rep.ok and rep.note == "geometric-node" and rep.branches == 2

    def test_smooth_point(self):
        rep = is_snc_at(q("y - x^2"), fr(1, 1))
        assert rep.ok and rep.branches == 1

    def test_conjugate_line_pair_is_geometric_node(self):
        # x^2 + y^2 splits into two lines only over the closure
        rep = is_snc_at(q("x^2 + y^2"), fr(0, 0))
        assert rep.ok and rep.note == "geometric-node"

    def test_chart_violations_separate_branches(self):
        comps = support_components(q("y^2 - x^2 - x^3"))
        bad, irr = chart_violations(comps, separate_branches=True)
        assert bad == [(fr(0, 0), "node needs branch separation")]
        assert not irr


class TestEmbeddedResolution:
    def test_cusp_needs_three_blowups(self):
        res = embedded_resolution(q("y^2 - x^3"))
        assert res.blowup_count == 3
        assert res.centers[0] == ("Z0", fr(0, 0))
        assert find_violation(res.tree, res.ledger) is None
        # one strict transform plus three exceptionals
        assert len(res.ledger.all("exceptional")) == 3

    def test_tacnode_needs_two_blowups(self):
        res = embedded_resolution(q("y^2 - x^4"))
        assert res.blowup_count == 2

    def test_node_needs_none(self):
        res = embedded_resolution(q("x*y"))
        assert res.blowup_count == 0

    def test_nodal_cubic_with_branch_separation(self):
        res = embedded_resolution(q("y^2 - x^2 - x^3"))
        assert res.blowup_count == 0
        res2 = embedded_resolution(q("y^2 - x^2 - x^3"), separate_branches=True)
        assert res2.blowup_count == 1

    def test_irrational_cusp_aborts(self):
        f = q("y^2") - q("x^2 - 2") ** 3
        with pytest.raises(NonRationalSingularity):
            embedded_resolution(f)

    def test_irrational_tangency_aborts(self):
        f = q("y - x^2") * q("y - x^4 + 3*x^2 - 4")
        with pytest.raises(NonRationalSingularity):
            embedded_resolution(f)

    def test_irrational_transverse_crossing_is_fine(self):
        f = q("y - x^2") * q("y - 2")
        res = embedded_resolution(f)
        assert res.blowup_count == 0

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            embedded_resolution(q("y^2 - x^3"), max_blowups=1)
