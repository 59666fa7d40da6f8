"""The power-map calculus, elimination decompositions, and mu-generation."""

import random
from fractions import Fraction
from itertools import product
from math import comb

import pytest

from conftest import monomial, random_polynomial
from tcclasses.generators import (
    DecompositionResult,
    FormalSum,
    GeneratorExpr,
    a_recursion,
    a_recursion_pivot,
    curvature_sigma_form,
    decompose,
    expand_power_symbols,
    iota,
    mu_generate,
    p_symbol,
    power_map,
    sigma_symbol,
    torus_power_map,
)
from tcclasses.groebner import equal_mod_ideal, ideal_for_group, normal_form
from tcclasses.polyring import Polynomial, power_sum, two_var_power_sum
from tcclasses.weyl import GroupSpec, parity, symmetrize


def var(family, i, rank):
    return Polynomial.variable(family, i, rank)


class TestIota:
    def test_linear(self):
        expected = power_sum(1, 2, "x") + power_sum(1, 2, "y")
        assert iota(power_sum(1, 2, "z")) == expected

    def test_quadratic_displayed_expansion(self):
        expected = (power_sum(2, 2, "x") + two_var_power_sum(1, 1, 2).scale(2)
                    + power_sum(2, 2, "y"))
        assert iota(power_sum(2, 2, "z")) == expected

    def test_constant(self):
        assert iota(Polynomial.one(2)) == Polynomial.one(2)

    def test_rejects_xy_input(self):
        with pytest.raises(ValueError):
            iota(var("x", 1, 2))

    def test_homomorphism(self):
        rng = random.Random(21)
        for _ in range(50):
            p = random_polynomial(rng, 2, families="z", terms=3, max_degree=3)
            q = random_polynomial(rng, 2, families="z", terms=3, max_degree=3)
            assert iota(p * q) == iota(p) * iota(q)


class TestPowerMap:
    def test_displayed_phi_minus_one(self):
        ip2 = iota(power_sum(2, 2, "z"))
        expected = (power_sum(2, 2, "x") - two_var_power_sum(1, 1, 2).scale(2)
                    + power_sum(2, 2, "y"))
        assert power_map(-1, ip2) == expected

    def test_identity(self):
        rng = random.Random(22)
        p = random_polynomial(rng, 2, families="xy")
        assert power_map(1, p) == p

    def test_eigenvalue_law(self):
        for n in (1, 2, 3, 4):
            for a in range(0, 4):
                for b in range(0, 4):
                    if a + b < 1:
                        continue
                    for k in range(-3, 4):
                        expected = two_var_power_sum(a, b, n).scale(Fraction(k) ** b)
                        assert power_map(k, two_var_power_sum(a, b, n)) == expected

    def test_rejects_z(self):
        with pytest.raises(ValueError):
            power_map(2, power_sum(1, 2, "z"))

    def test_homomorphism_and_composition(self):
        rng = random.Random(23)
        for _ in range(50):
            p = random_polynomial(rng, 2, families="xy", terms=3)
            q = random_polynomial(rng, 2, families="xy", terms=3)
            k = rng.choice([-3, -2, -1, 2, 3])
            l = rng.choice([-3, -2, -1, 2, 3])
            assert power_map(k, p * q) == power_map(k, p) * power_map(k, q)
            assert power_map(k, power_map(l, p)) == power_map(k * l, p)


class TestTorusPowerMap:
    def test_scales_variables(self):
        assert torus_power_map(2, var("x", 1, 1)) == var("x", 1, 1).scale(2)

    def test_multiplicative_degree(self):
        p = var("x", 1, 2) * var("x", 2, 2)
        assert torus_power_map(3, p) == p.scale(9)

    def test_collapse_to_constant(self):
        p = var("x", 1, 1) + Polynomial.one(1)
        assert torus_power_map(0, p) == Polynomial.one(1)

    def test_mixed_families_rejected(self):
        with pytest.raises(ValueError):
            torus_power_map(2, var("x", 1, 2) + var("y", 1, 2))


class TestGeneratorExpr:
    def test_single_factor_evaluation(self):
        expr = GeneratorExpr.single(1, 1)
        assert expr.evaluate(2) == power_sum(1, 2, "x") + power_sum(1, 2, "y")

    def test_symmetric_combination(self):
        expr = (GeneratorExpr.single(1, 2, Fraction(1, 2))
                + GeneratorExpr.single(-1, 2, Fraction(1, 2)))
        assert expr.evaluate(2) == power_sum(2, 2, "x") + power_sum(2, 2, "y")

    def test_empty_is_zero(self):
        assert GeneratorExpr.zero().evaluate(3).is_zero()

    def test_canonical_merge(self):
        expr = GeneratorExpr.single(2, 1) + GeneratorExpr.single(2, 1)
        assert expr.terms == ((Fraction(2), ((2, 1),)),)
        assert (expr - expr.scale(1)).terms == ()

    def test_zero_k_rejected(self):
        with pytest.raises(ValueError):
            GeneratorExpr.single(0, 1)

    def test_closure_under_power_maps(self):
        rng = random.Random(31)
        for _ in range(20):
            expr = GeneratorExpr(tuple(
                (Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                 tuple((rng.choice([-2, -1, 1, 2]), rng.randint(1, 3))
                       for _ in range(rng.randint(1, 2))))
                for _ in range(rng.randint(1, 3))))
            k = rng.choice([-3, -2, -1, 2, 3])
            assert power_map(k, expr.evaluate(3)) == expr.apply_power_map(k).evaluate(3)

    def test_json_round_trip(self):
        expr = (GeneratorExpr.single(-1, 2, Fraction(1, 2))
                + GeneratorExpr(((Fraction(3), ((1, 1), (2, 2))),)))
        assert GeneratorExpr.from_dict(expr.to_dict()) == expr


class TestARecursion:
    def test_m1_is_p01(self):
        (a0,) = a_recursion(1, 2)
        ideal = ideal_for_group(GroupSpec("U", 2))
        assert equal_mod_ideal(a0, two_var_power_sum(0, 1, 2), ideal)

    def test_m2_matches_paper_alternative(self):
        seq = a_recursion(2, 2)
        ideal = ideal_for_group(GroupSpec("U", 2))
        extracted = seq[1].scale(Fraction(1, 2 ** 2 - 2))
        assert equal_mod_ideal(extracted, two_var_power_sum(0, 2, 2), ideal)
        ip2 = iota(power_sum(2, 2, "z"))
        alt = (ip2 + power_map(-1, ip2)).scale(Fraction(1, 2))
        assert equal_mod_ideal(extracted, alt, ideal)

    def test_m3_pivot(self):
        seq = a_recursion(3, 3)
        assert a_recursion_pivot(3) == 6 * 18
        ideal = ideal_for_group(GroupSpec("U", 3))
        assert equal_mod_ideal(seq[2].scale(Fraction(1, 108)),
                               two_var_power_sum(0, 3, 3), ideal)

    def test_band_structure(self):
        # Mod the ideal, A_k carries exactly the components with j >= k + 1,
        # with coefficients C(m, j) prod_{l<=k} ((l+1)^j - (l+1)^l).
        m, n = 4, 4
        ideal = ideal_for_group(GroupSpec("U", n))
        seq = a_recursion(m, n)
        for k, a_poly in enumerate(seq):
            expected = Polynomial.zero(n)
            for j in range(k + 1, m + 1):
                coeff = comb(m, j)
                for l in range(1, k + 1):
                    coeff *= (l + 1) ** j - (l + 1) ** l
                expected = expected + two_var_power_sum(m - j, j, n).scale(coeff)
            assert equal_mod_ideal(a_poly, expected, ideal)

    def test_rank_bound(self):
        with pytest.raises(ValueError):
            a_recursion(3, 2)


class TestDecompose:
    def test_u3_matches_paper_sixth_formula(self):
        result = decompose(GroupSpec("U", 3), 1, 2)
        assert result.certified
        ip3 = iota(power_sum(3, 3, "z"))
        paper_form = (ip3 + power_map(-1, ip3)).scale(Fraction(1, 6))
        ideal = ideal_for_group(GroupSpec("U", 3))
        assert equal_mod_ideal(result.expr.evaluate(3), paper_form, ideal)

    def test_x_power_sum_is_zero_class(self):
        result = decompose(GroupSpec("U", 2), 1, 0)
        assert result.certified
        assert result.expr == GeneratorExpr.zero()

    def test_sp_mixed_component(self):
        result = decompose(GroupSpec("Sp", 2), 1, 1)
        assert result.certified
        ideal = ideal_for_group(GroupSpec("Sp", 2))
        assert equal_mod_ideal(result.expr.evaluate(2), two_var_power_sum(1, 1, 2), ideal)

    def test_su_reuses_elimination_with_its_own_ideal(self):
        result = decompose(GroupSpec("SU", 3), 0, 1)
        ideal = ideal_for_group(GroupSpec("SU", 3))
        assert equal_mod_ideal(result.expr.evaluate(3), two_var_power_sum(0, 1, 3), ideal)
        # P_{0,1} is itself a generator of the SU ideal, so the zero
        # expression certifies as well.
        assert equal_mod_ideal(Polynomial.zero(3), two_var_power_sum(0, 1, 3), ideal)

    def test_sp_odd_degree_rejected(self):
        with pytest.raises(ValueError, match="signed-invariant"):
            decompose(GroupSpec("Sp", 2), 1, 2)

    def test_degree_caps(self):
        with pytest.raises(ValueError, match="exceeds"):
            decompose(GroupSpec("U", 2), 2, 1)
        with pytest.raises(ValueError, match="exceeds"):
            decompose(GroupSpec("Sp", 2), 3, 3)
        assert decompose(GroupSpec("Sp", 2), 3, 3, max_degree=6).certified

    def test_certification_rechecked_independently(self):
        for kind, n in (("U", 3), ("SU", 3), ("Sp", 2)):
            spec = GroupSpec(kind, n)
            ideal = ideal_for_group(spec)
            degrees = range(1, n + 1) if kind != "Sp" else (2, 4)
            for m in degrees:
                for b in range(0, m + 1):
                    result = decompose(spec, m - b, b)
                    assert result.certified
                    assert equal_mod_ideal(result.expr.evaluate(n),
                                           two_var_power_sum(m - b, b, n), ideal)

    def test_result_json(self):
        result = decompose(GroupSpec("U", 2), 0, 2)
        data = result.to_dict()
        assert data["certified"] is True
        assert data["target"] == {"group": "U", "rank": 2, "a": 0, "b": 2}
        assert GeneratorExpr.from_dict(data) == result.expr


class TestBinomialIdentity:
    def test_principal_sum(self):
        for n in range(1, 5):
            ideal = ideal_for_group(GroupSpec("U", n))
            for m in range(1, n + 1):
                lhs = iota(power_sum(m, n, "z"))
                rhs = Polynomial.zero(n)
                for j in range(1, m + 1):
                    rhs = rhs + two_var_power_sum(m - j, j, n).scale(comb(m, j))
                assert normal_form(lhs, ideal) == normal_form(rhs, ideal)


class TestMuGenerate:
    def test_single_variable(self):
        assert mu_generate((2,), (0,), 1) == FormalSum.symbol(p_symbol(2, 0))

    def test_pair_average(self):
        assert mu_generate((1, 0), (1, 0), 2) == FormalSum.symbol(p_symbol(1, 1), Fraction(1, 2))

    def test_two_term_relation(self):
        expected = (FormalSum.symbol(p_symbol(1, 1)) * FormalSum.symbol(p_symbol(1, 1))
                    - FormalSum.symbol(p_symbol(2, 2))).scale(Fraction(1, 2))
        assert mu_generate((1, 1), (1, 1), 2) == expected

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            mu_generate((1, 0), (0, 0), 2)

    def test_support_bound(self):
        with pytest.raises(ValueError, match="support"):
            mu_generate((2, 2, 2), (0, 0, 0), 2)

    def test_exhaustive_soundness_rank2(self):
        spec = GroupSpec("Sp", 2)
        for exps in product(range(7), repeat=4):
            if not 1 <= sum(exps) <= 6:
                continue
            I, J = exps[:2], exps[2:]
            if parity(I, J) == "odd":
                continue
            fs = mu_generate(I, J, 2)
            expanded = expand_power_symbols(fs, 2)
            assert expanded == symmetrize(monomial(2, x=I, y=J), spec)

    def test_soundness_rank3_sample(self):
        spec = GroupSpec("Sp", 3)
        for I, J in (((2, 1, 1), (0, 1, 1)), ((1, 1, 0), (1, 1, 0)), ((2, 2, 2), (0, 0, 0))):
            fs = mu_generate(I, J, 3)
            assert expand_power_symbols(fs, 3) == symmetrize(monomial(3, x=I, y=J), spec)


class TestSigmaRewriting:
    def test_first_chern_class(self):
        fs = curvature_sigma_form(GeneratorExpr.single(1, 1), 3)
        assert fs == FormalSum.symbol(sigma_symbol(1, 1))

    def test_degree_two_symmetric_form(self):
        expr = (GeneratorExpr.single(1, 2, Fraction(1, 2))
                + GeneratorExpr.single(-1, 2, Fraction(1, 2)))
        expected = (FormalSum({(sigma_symbol(1, 1), sigma_symbol(1, 1)): Fraction(1, 2),
                               (sigma_symbol(1, -1), sigma_symbol(1, -1)): Fraction(1, 2),
                               (sigma_symbol(2, 1),): Fraction(-1),
                               (sigma_symbol(2, -1),): Fraction(-1)}))
        assert curvature_sigma_form(expr, 3) == expected

    def test_degree_two_antisymmetric_form(self):
        expr = (GeneratorExpr.single(1, 2, Fraction(1, 4))
                + GeneratorExpr.single(-1, 2, Fraction(-1, 4)))
        expected = (FormalSum({(sigma_symbol(1, 1), sigma_symbol(1, 1)): Fraction(1, 4),
                               (sigma_symbol(1, -1), sigma_symbol(1, -1)): Fraction(-1, 4),
                               (sigma_symbol(2, -1),): Fraction(1, 2),
                               (sigma_symbol(2, 1),): Fraction(-1, 2)}))
        assert curvature_sigma_form(expr, 3) == expected
