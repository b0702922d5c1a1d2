"""Factorization: univariate and bivariate, Q and F_p.

Randomized cases multiply known irreducibles together and demand the exact
multiset back.  Fixed cases pin the small examples the geometry layers rely
on (tacnode split, cuspidal branch curve irreducibility, wild pair).
"""

import random
from fractions import Fraction

import pytest

from monores.exceptions import DegreeLimitExceeded
from monores.factor import (factor_bivariate, factor_univar, is_irreducible,
                            rational_roots)
from monores.fields import PrimeField, QQ
from monores.grammar import parse_poly
from monores.poly import BivarPoly

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
F7 = PrimeField(7)


def P(text, field=QQ):
    return parse_poly(text, field)


def reassemble(field, unit, pairs):
    acc = BivarPoly.const(field, unit)
    for g, m in pairs:
        acc = acc * g ** m
    return acc


class TestUnivariateQ:
    def test_small_knowns(self):
        unit, pairs = factor_univar(P("x^2 - 1"), "x")
        assert unit == 1
        assert [(g.format(), m) for g, m in pairs] == [("x - 1", 1), ("x + 1", 1)]

        unit, pairs = factor_univar(P("x^2 + 1"), "x")
        assert pairs == [(P("x^2 + 1"), 1)]

        unit, pairs = factor_univar(P("2*x^2 - 2"), "x")
        assert unit == 2

    def test_cyclotomic_like(self):
        f = P("x^4 + x^3 + x^2 + x + 1")
        assert is_irreducible(f)
        _, pairs = factor_univar(P("x^5 - 1"), "x")
        assert len(pairs) == 2

    def test_multiplicity(self):
        _, pairs = factor_univar(P("x^4 - 2*x^2 + 1"), "x")
        assert sorted(m for _, m in pairs) == [2, 2]

    def test_non_monic_rational(self):
        f = P("6*x^2 - 5*x + 1")  # = (2x-1)(3x-1), monic form (x-1/2)(x-1/3)
        unit, pairs = factor_univar(f, "x")
        assert unit == 6
        assert len(pairs) == 2
        assert reassemble(QQ, unit, pairs) == f

    def test_random_products(self):
        rng = random.Random(201)
        for _ in range(60):
            polys = []
            for _k in range(rng.randrange(1, 4)):
                d = rng.randrange(1, 4)
                cs = [Fraction(rng.randrange(-5, 6)) for _ in range(d)] + [Fraction(1)]
                polys.append(BivarPoly.from_univar(QQ, cs, "x"))
            f = BivarPoly.one(QQ)
            for g in polys:
                f = f * g
            unit, pairs = factor_univar(f, "x")
            assert reassemble(QQ, unit, pairs) == f
            for g, _m in pairs:
                assert is_irreducible(g)

    def test_rational_roots(self):
        assert rational_roots(P("x^2 - 1"), "x") == [Fraction(-1), Fraction(1)]
        assert rational_roots(P("x^2 + 1"), "x") == []
        assert rational_roots(P("2*y^2 - y"), "y") == [Fraction(0), Fraction(1, 2)]


class TestUnivariateFp:
    def test_knowns(self):
        _, pairs = factor_univar(P("x^2 + 1", F5), "x")
        assert len(pairs) == 2  # -1 is a square mod 5
        assert is_irreducible(P("x^2 + 1", F7))

    def test_frobenius_power(self):
        # y^2 + y^3 over F_2: y^2 * (y + 1)
        unit, pairs = factor_univar(P("y^2 + y^3", F2), "y")
        assert sorted((g.format(), m) for g, m in pairs) == [("y", 2), ("y + 1", 1)]

    def test_pth_power(self):
        f = P("x^3 + 2", F3)  # = (x + 2)^3 over F_3
        unit, pairs = factor_univar(f, "x")
        assert pairs == [(P("x + 2", F3), 3)]

    def test_random_products(self):
        rng = random.Random(202)
        for field in (F2, F3, F5, F7):
            for _ in range(40):
                f = BivarPoly.one(field)
                for _k in range(rng.randrange(1, 4)):
                    d = rng.randrange(1, 3)
                    cs = [field.from_int(rng.randrange(field.char))
                          for _ in range(d)] + [field.one()]
                    f = f * BivarPoly.from_univar(field, cs, "y")
                unit, pairs = factor_univar(f, "y")
                assert reassemble(field, unit, pairs) == f

    def test_roots_scan(self):
        roots = rational_roots(P("x^3 - x", F3), "x")
        assert roots == [0, 1, 2]


class TestBivariate:
    def test_tacnode_splits(self):
        unit, pairs = factor_bivariate(P("y^2 - x^4"))
        # canonical reps are graded-lex monic: -(y - x^2) = x^2 - y
        assert sorted(g.format() for g, _ in pairs) == ["x^2 + y", "x^2 - y"]
        assert unit == -1
        assert reassemble(QQ, unit, pairs) == P("y^2 - x^4")

    def test_cusp_branch_curve_irreducible(self):
        # the target branch curve of the cuspidal model germ
        assert is_irreducible(P("y^2 - 4*x^3"))

    def test_node(self):
        unit, pairs = factor_bivariate(P("x*y"))
        assert sorted(g.format() for g, _ in pairs) == ["x", "y"]

    def test_critical_locus_of_cusp_model(self):
        # J(xy, x^2 y + x y^2) = x*y^2 - x^2*y = unit * x * y * (x - y)
        unit, pairs = factor_bivariate(P("x*y^2 - x^2*y"))
        names = sorted(g.format() for g, _ in pairs)
        assert names == ["x", "x - y", "y"]
        assert all(m == 1 for _, m in pairs)

    def test_monomial_times_residual(self):
        f = P("x^2*y^3") * P("y^2 - x^3")
        unit, pairs = factor_bivariate(f)
        d = {g.format(): m for g, m in pairs}
        assert d == {"x": 2, "y": 3, "x^3 - y^2": 1}

    def test_content_split(self):
        f = P("x^2 - 1") * P("y - x")
        unit, pairs = factor_bivariate(f)
        assert sorted(g.format() for g, _ in pairs) == ["x + 1", "x - 1", "x - y"]

    def test_random_products_q(self):
        rng = random.Random(203)
        basis = [P("y - x"), P("y + x"), P("y - x^2"), P("x + 1"),
                 P("y^2 - x^3"), P("x*y - 1"), P("y"), P("x")]
        for _ in range(40):
            chosen = rng.sample(basis, rng.randrange(1, 4))
            mults = [rng.randrange(1, 3) for _ in chosen]
            f = BivarPoly.one(QQ)
            for g, m in zip(chosen, mults):
                f = f * g ** m
            unit, pairs = factor_bivariate(f)
            assert reassemble(QQ, unit, pairs) == f
            for g, _m in pairs:
                assert is_irreducible(g)

    def test_random_products_fp(self):
        rng = random.Random(204)
        for field in (F3, F5):
            basis = [P(t, field) for t in
                     ["y - x", "y + x^2", "x + 1", "y^2 + x", "x*y + 1"]]
            for _ in range(30):
                chosen = rng.sample(basis, rng.randrange(1, 4))
                f = BivarPoly.one(field)
                for g in chosen:
                    f = f * g
                unit, pairs = factor_bivariate(f)
                assert reassemble(field, unit, pairs) == f

    def test_pth_power_bivariate(self):
        f = P("x^2 + y^2", F2)  # = (x + y)^2 in char 2
        unit, pairs = factor_bivariate(f)
        assert pairs == [(P("x + y", F2), 2)]

    def test_inseparable_in_one_var_swaps(self):
        # g depends on x only through x^3 over F_3; y-derivative nonzero
        f = P("y^3 - x", F3)  # irreducible (Artin-Schreier-like shape)
        assert is_irreducible(f)

    def test_degree_cap(self):
        f = P("x") ** 25
        with pytest.raises(DegreeLimitExceeded):
            factor_bivariate(f)
        assert factor_bivariate(f, max_total_degree=30)[1] == [(P("x"), 25)]

    def test_irreducible_quadric(self):
        assert is_irreducible(P("x*y - 1"))
        assert is_irreducible(P("y^2 - x^3 - x"))
