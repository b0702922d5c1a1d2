"""Morphism model: carriers, point transport, component germs, pullback."""

from fractions import Fraction

import pytest

from monores import (InseparableMap, MorphismModel, NonRationalSingularity,
                     NoRationalPointOnComponent, NotAMorphismHere, PrimeField,
                     QQ, image_curve, parse_poly)


def q(text):
    return parse_poly(text, QQ)


def fr(a, b):
    return (Fraction(a), Fraction(b))


ORIGIN = fr(0, 0)


def cusp_model():
    # contracts x and y, folds x - y onto the cuspidal branch curve
    return MorphismModel(q("x*y"), q("x^2*y + x*y^2"))


class TestModelBasics:
    def test_rejects_dependent_pair(self):
        with pytest.raises(InseparableMap):
            MorphismModel(q("x^2"), q("x^3"))

    def test_rejects_constant_coordinate(self):
        with pytest.raises(Exception):
            MorphismModel(q("3"), q("y"))

    def test_jacobian(self):
        m = cusp_model()
        assert m.jacobian().format() == "-x^2*y + x*y^2"

    def test_critical_locus_and_kinds(self):
        m = cusp_model()
        crit = m.critical_locus()
        eqs = [(m.src_ledger.equation_in(d, "Y0").format(), mult)
               for d, mult in crit]
        assert eqs == [("y", 1), ("x", 1), ("x - y", 1)]
        kinds = [m.classify_component(d) for d, _ in crit]
        assert kinds == ["vertical", "vertical", "horizontal"]

    def test_branch_locus(self):
        m = cusp_model()
        branch = m.branch_locus()
        assert [(d.did, m.tgt_ledger.equation_in(d, "X0").format())
                for d in branch] == [("B1X", "x^3 - 1/4*y^2")]

    def test_pullback_of_branch_curve(self):
        m = cusp_model()
        cyc = m.pullback_divisor(m.branch_locus()[0])
        assert dict(cyc) == {"C1Y": 2, "C2Y": 2, "C3Y": 2}
        assert "f*B1X" in m.src_ledger.cycles


class TestImageCurve:
    def test_diagonal_image_is_cuspidal(self):
        g = image_curve(q("x - y"), q("x*y"), q("x^2*y + x*y^2"))
        assert g.format() == "x^3 - 1/4*y^2"

    def test_axis_image(self):
        # y = 0 maps to the target x-axis under (x, y^2 + y^3)
        F2 = PrimeField(2)
        g = image_curve(parse_poly("y", F2), parse_poly("x", F2),
                        parse_poly("y^2 + y^3", F2))
        assert g.format() == "y"

    def test_line_through_graph(self):
        g = image_curve(q("y - 1"), q("x"), q("x + y"))
        assert g.format() == "x - y + 1"


class TestTransport:
    def test_carrier_sifts_into_a_chart(self):
        m = MorphismModel(q("x^2"), q("x^3*y"))
        m.blowup_target("X0", ORIGIN)
        car = m.carriers["Y0"]
        assert car.target == "X1"
        assert (car.u.format(), car.v.format()) == ("x^2", "x*y")
        img = m.transport_germ("Y0", ORIGIN)
        assert img[0] == "X1"

    def test_cusp_carrier_after_one_target_blowup(self):
        m = cusp_model()
        m.blowup_target("X0", ORIGIN)
        car = m.carriers["Y0"]
        assert car.target == "X1"
        assert (car.u.format(), car.v.format()) == ("x*y", "x + y")

    def test_contracted_axes_land_on_exceptional(self):
        m = cusp_model()
        crit = m.critical_locus()
        m.blowup_target("X0", ORIGIN)
        for d, _ in crit[:2]:
            germ = m.component_germ(d)
            assert germ.kind == "horizontal"
            assert germ.image == ("divisor", "E1X")

    def test_stall_raises(self):
        m = MorphismModel(q("x^2"), q("y"))
        m.blowup_target("X0", ORIGIN)
        with pytest.raises(NotAMorphismHere):
            m.transport_germ("Y0", ORIGIN)

    def test_principality_probe(self):
        m = MorphismModel(q("x^2"), q("y"))
        m.blowup_target("X0", ORIGIN)
        assert not m.is_Malpha_principal_at("Y0", ORIGIN, "X0", ORIGIN)
        assert m.is_Malpha_principal_at("Y0", fr(1, 0), "X0", ORIGIN)


class TestNonprincipalScan:
    def test_cusp_needs_no_source_blowup_at_first(self):
        m = cusp_model()
        m.blowup_target("X0", ORIGIN)
        assert m.nonprincipal_points_over("X0", ORIGIN) == []

    def test_cusp_second_target_blowup_stalls_deep(self):
        # the fiber ideal is principal at the root level, the stall only
        # shows up one chart down; the scan has to walk the whole tree
        m = cusp_model()
        m.blowup_target("X0", ORIGIN)
        m.blowup_target("X1", ORIGIN)
        assert m.nonprincipal_points_over("X1", ORIGIN) == [("Y0", ORIGIN)]

        m.blowup_source("Y0", ORIGIN)
        # the B-chart twin (-1, 0) is the same point, only Y1 reports
        assert m.nonprincipal_points_over("X1", ORIGIN) == [("Y1", fr(0, -1))]

        m.blowup_source("Y1", fr(0, -1))
        assert m.nonprincipal_points_over("X1", ORIGIN) == []

    def test_cusp_carriers_after_resolution_round(self):
        m = cusp_model()
        m.blowup_target("X0", ORIGIN)
        m.blowup_target("X1", ORIGIN)
        m.blowup_source("Y0", ORIGIN)
        m.blowup_source("Y1", fr(0, -1))
        got = {yid: (c.target, c.u.format(), c.v.format())
               for yid, c in m.carriers.items()}
        assert got == {
            "Y0": ("X1", "x*y", "x + y"),
            "Y1": ("X1", "x^2*y", "x*y + x"),
            "Y2": ("X1", "x*y^2", "x*y + y"),
            "Y3": ("X1", "x^3*y - x^2", "x^2*y"),
            "Y4": ("X4", "x*y - x", "x*y^2"),
        }

    def test_triple_point_needs_no_source_center(self):
        m = cusp_model()
        m.blowup_target("X0", ORIGIN)
        m.blowup_target("X1", ORIGIN)
        m.blowup_source("Y0", ORIGIN)
        m.blowup_source("Y1", fr(0, -1))
        m.blowup_target("X4", ORIGIN)
        assert m.nonprincipal_points_over("X4", ORIGIN) == []

    def test_repeated_stall_direction(self):
        m = MorphismModel(q("x^2"), q("y"))
        m.blowup_target("X0", ORIGIN)
        assert m.nonprincipal_points_over("X0", ORIGIN) == [("Y0", ORIGIN)]
        m.blowup_source("Y0", ORIGIN)
        assert m.carriers["Y1"].target == "X0"
        assert m.carriers["Y2"].target == "X2"
        assert m.nonprincipal_points_over("X0", ORIGIN) == [("Y1", ORIGIN)]
        m.blowup_source("Y1", ORIGIN)
        got = {yid: (c.target, c.u.format(), c.v.format())
               for yid, c in m.carriers.items()}
        assert got["Y3"] == ("X1", "x^2", "y")
        assert got["Y4"] == ("X2", "x", "x*y^2")
        assert m.nonprincipal_points_over("X0", ORIGIN) == []

    def test_irrational_stall_aborts(self):
        m = MorphismModel(q("x^2"), q("x*y"))
        center = fr(2, 0)
        m.blowup_target("X0", center)
        with pytest.raises(NonRationalSingularity):
            m.nonprincipal_points_over("X0", center)


class TestPrimeFieldMaps:
    def test_component_without_rational_points(self):
        F5 = PrimeField(5)
        m = MorphismModel(parse_poly("x", F5), parse_poly("x^2*y + 2*y", F5))
        crit = m.critical_locus()
        assert [(m.src_ledger.equation_in(d, "Y0").format(), mult)
                for d, mult in crit] == [("x^2 + 2", 1)]
        with pytest.raises(NoRationalPointOnComponent):
            m.classify_component(crit[0][0])

    def test_wild_double_cover_is_separable(self):
        # char 2: (x, y^2 + y^3) ramifies along y = 0 without contracting it
        F2 = PrimeField(2)
        m = MorphismModel(parse_poly("x", F2), parse_poly("y^2 + y^3", F2))
        crit = m.critical_locus()
        assert [(m.src_ledger.equation_in(d, "Y0").format(), mult)
                for d, mult in crit] == [("y", 2)]
        assert m.classify_component(crit[0][0]) == "horizontal"
        branch = m.branch_locus()
        assert [m.tgt_ledger.equation_in(d, "X0").format()
                for d in branch] == ["y"]

    def test_frobenius_like_pair_is_rejected(self):
        F3 = PrimeField(3)
        with pytest.raises(InseparableMap):
            MorphismModel(parse_poly("x^3", F3), parse_poly("y", F3))
