"""Groebner bases, normal forms, and the three coinvariant ideals."""

import json
import random

import pytest

from conftest import monomial, random_polynomial
from tcclasses.groebner import (
    IdealSpec,
    buchberger,
    buchberger_criterion_holds,
    equal_mod_ideal,
    ideal_for_group,
    group_ideal_generators,
    normal_form,
)
import tcclasses.groebner as groebner_module
from tcclasses.polyring import (
    Polynomial,
    elementary_symmetric,
    power_sum,
    two_var_power_sum,
)
from tcclasses.weyl import GroupSpec


def var(family, i, rank):
    return Polynomial.variable(family, i, rank)


class TestGroupIdeals:
    def test_u2_generators(self):
        gens = group_ideal_generators(GroupSpec("U", 2))
        assert gens == [elementary_symmetric(1, 2, "x"), elementary_symmetric(2, 2, "x")]

    def test_su2_generators(self):
        gens = group_ideal_generators(GroupSpec("SU", 2))
        assert gens == [power_sum(1, 2, "x"), power_sum(2, 2, "x"), power_sum(1, 2, "y")]

    def test_sp2_generators(self):
        gens = group_ideal_generators(GroupSpec("Sp", 2))
        assert gens == [monomial(2, x=[2]) + monomial(2, x=[0, 2]), monomial(2, x=[2, 2])]

    def test_bases_satisfy_buchberger(self):
        for kind in ("U", "SU", "Sp"):
            for rank in (1, 2, 3):
                ideal = ideal_for_group(GroupSpec(kind, rank))
                assert ideal.verify()


class TestBuchberger:
    def test_principal_ideal(self):
        basis = buchberger([var("x", 1, 1)])
        assert basis == [var("x", 1, 1)]

    def test_membership_via_cofactors(self):
        # Oracle first: x1^2 = (x1 + x2) x1 - x1 x2 is an exact identity,
        # so x1^2 must reduce to zero against the ideal's basis.
        e1 = var("x", 1, 2) + var("x", 2, 2)
        e2 = var("x", 1, 2) * var("x", 2, 2)
        x1sq = var("x", 1, 2) ** 2
        assert x1sq == e1 * var("x", 1, 2) - e2
        basis = buchberger([e1, e2])
        assert normal_form(x1sq, basis).is_zero()

    def test_linear_span(self):
        basis = buchberger([var("x", 1, 2) + var("x", 2, 2), var("x", 1, 2) - var("x", 2, 2)])
        assert normal_form(var("x", 1, 2), basis).is_zero()
        assert normal_form(var("x", 2, 2), basis).is_zero()
        assert not normal_form(var("y", 1, 2), basis).is_zero()

    def test_empty_generators_rejected(self):
        with pytest.raises(ValueError):
            IdealSpec.from_generators([])

    def test_reduced_basis_properties(self):
        # No leading monomial divides another; tails are fully reduced.
        from tcclasses.groebner import leading_term, _divides
        ideal = ideal_for_group(GroupSpec("U", 3))
        leads = [leading_term(g)[0] for g in ideal.basis]
        for i, li in enumerate(leads):
            for j, lj in enumerate(leads):
                if i != j:
                    assert not _divides(lj, li)
        for i, g in enumerate(ideal.basis):
            others = list(ideal.basis[:i]) + list(ideal.basis[i + 1:])
            lead, _ = leading_term(g)
            tail = g - Polynomial(g.rank, {lead: g.terms[lead]})
            assert normal_form(tail, others) == tail


class TestNormalForm:
    def test_x_power_sum_dies(self):
        ideal = ideal_for_group(GroupSpec("U", 2))
        assert normal_form(power_sum(1, 2, "x"), ideal).is_zero()

    def test_y_untouched_for_u(self):
        ideal = ideal_for_group(GroupSpec("U", 2))
        p = power_sum(1, 2, "y")
        assert normal_form(p, ideal) == p

    def test_sp_square_generator(self):
        ideal = ideal_for_group(GroupSpec("Sp", 1))
        assert normal_form(var("x", 1, 1) ** 2, ideal).is_zero()

    def test_zero_polynomial(self):
        ideal = ideal_for_group(GroupSpec("U", 2))
        assert normal_form(Polynomial.zero(2), ideal).is_zero()

    def test_idempotent_and_linear(self):
        rng = random.Random(4)
        ideal = ideal_for_group(GroupSpec("U", 3))
        for _ in range(25):
            p = random_polynomial(rng, 3, families="xy")
            q = random_polynomial(rng, 3, families="xy")
            np_ = normal_form(p, ideal)
            assert normal_form(np_, ideal) == np_
            assert normal_form(p + q, ideal) == normal_form(p, ideal) + normal_form(q, ideal)

    def test_membership_soundness(self):
        rng = random.Random(8)
        for kind in ("U", "SU", "Sp"):
            for n in (2, 3):
                ideal = ideal_for_group(GroupSpec(kind, n))
                for _ in range(10):
                    combo = Polynomial.zero(n)
                    for g in ideal.generators:
                        combo = combo + random_polynomial(rng, n, families="xy",
                                                          max_degree=2, terms=2) * g
                    assert normal_form(combo, ideal).is_zero()

    def test_all_x_power_sums_in_u_ideal(self):
        for n in range(1, 5):
            ideal = ideal_for_group(GroupSpec("U", n))
            for a in range(1, n + 1):
                assert normal_form(two_var_power_sum(a, 0, n), ideal).is_zero()


class TestEqualModIdeal:
    def test_iota_linear_example(self):
        from tcclasses.generators import iota
        ideal = ideal_for_group(GroupSpec("U", 2))
        assert equal_mod_ideal(iota(power_sum(1, 2, "z")), power_sum(1, 2, "y"), ideal)

    def test_reflexive(self):
        rng = random.Random(14)
        ideal = ideal_for_group(GroupSpec("U", 2))
        p = random_polynomial(rng, 2)
        assert equal_mod_ideal(p, p, ideal)

    def test_distinct_classes(self):
        ideal = ideal_for_group(GroupSpec("U", 2))
        assert not equal_mod_ideal(var("x", 1, 2), var("y", 1, 2), ideal)
        assert not normal_form(var("x", 1, 2) - var("y", 1, 2), ideal).is_zero()

    def test_ring_congruence(self):
        rng = random.Random(15)
        ideal = ideal_for_group(GroupSpec("U", 2))
        gen = ideal.generators[0]
        for _ in range(15):
            p = random_polynomial(rng, 2, families="xy", terms=2)
            q = random_polynomial(rng, 2, families="xy", terms=2)
            p2 = p + random_polynomial(rng, 2, families="xy", terms=2, max_degree=2) * gen
            q2 = q + random_polynomial(rng, 2, families="xy", terms=2, max_degree=2) * gen
            assert equal_mod_ideal(p * q, p2 * q2, ideal)


class TestDiskCache:
    def test_round_trip(self, tmp_path):
        spec = GroupSpec("U", 3)
        groebner_module._IDEAL_CACHE.clear()
        fresh = ideal_for_group(spec, cache_dir=tmp_path)
        path = tmp_path / "groebner_U_3.json"
        assert path.exists()
        groebner_module._IDEAL_CACHE.clear()
        loaded = ideal_for_group(spec, cache_dir=tmp_path)
        assert loaded.basis == fresh.basis
        groebner_module._IDEAL_CACHE.clear()

    def test_corrupt_cache_recomputed(self, tmp_path):
        spec = GroupSpec("U", 2)
        path = tmp_path / "groebner_U_2.json"
        path.write_text(json.dumps({"order": "block-grevlex-xyz", "rank": 2,
                                    "basis": [{"rank": 2, "terms": [{"coeff": "1/1", "x": [1, 1]}]}]}))
        groebner_module._IDEAL_CACHE.clear()
        ideal = ideal_for_group(spec, cache_dir=tmp_path)
        assert normal_form(power_sum(1, 2, "x"), ideal).is_zero()
        groebner_module._IDEAL_CACHE.clear()
