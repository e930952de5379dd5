import random
from fractions import Fraction

import pytest

from conftest import count_cocycle_classes, small_groups
from homspace.abgroups import FgAbGroup, TRIVIAL_GROUP, Z, cyclic, dual_finite, ext1_z, is_exact_at
from homspace.extensions import (
    Character,
    SymmetricCocycle,
    all_characters,
    are_equivalent,
    baer_sum,
    character_to_extension,
    coboundary,
    cocycle_class,
    cocycle_of,
    ext_group_via_characters,
    zero_cocycle,
)


class TestCharacter:
    def test_validation(self):
        Character(cyclic(4), (Fraction(1, 2),))
        with pytest.raises(ValueError):
            Character(cyclic(4), (Fraction(1, 3),))
        with pytest.raises(ValueError):
            Character(Z, (Fraction(1, 2),))

    def test_evaluate(self):
        chi = Character(FgAbGroup(0, (2, 4)), (Fraction(1, 2), Fraction(1, 4)))
        assert chi.evaluate((1, 1)) == Fraction(3, 4)
        assert chi.evaluate((0, 2)) == Fraction(1, 2)
        assert chi.order() == 4

    def test_count(self):
        for g in [cyclic(6), FgAbGroup(0, (2, 4)), TRIVIAL_GROUP]:
            assert len(all_characters(g)) == g.order()


class TestCharacterToExtension:
    def test_z2_nontrivial(self):
        ext = character_to_extension(Character(cyclic(2), (Fraction(1, 2),)))
        assert ext.middle == Z

    def test_split(self):
        gamma = FgAbGroup(0, (2, 4))
        ext = character_to_extension(Character(gamma, (Fraction(0), Fraction(0))))
        assert ext.middle == FgAbGroup(1, (2, 4))

    def test_z4_order_two_character(self):
        ext = character_to_extension(Character(cyclic(4), (Fraction(1, 2),)))
        assert ext.middle == FgAbGroup(1, (2,))

    def test_certificates(self):
        for chi in all_characters(FgAbGroup(0, (2, 6))):
            ext = character_to_extension(chi)
            assert is_exact_at(ext.inject, ext.project)


class TestCocycleClass:
    def test_spec_example(self):
        c = SymmetricCocycle(cyclic(2), ((0, 0), (0, 1)))
        chi = cocycle_class(c)
        assert chi.values == (Fraction(1, 2),)

    def test_zero(self):
        assert cocycle_class(zero_cocycle(cyclic(4))).is_trivial

    def test_coboundaries_are_trivial(self):
        # exhaustive over a value box for |Gamma| <= 4, random beyond
        from itertools import product as iproduct

        for group in small_groups(4):
            n = group.order()
            for g in iproduct((-1, 0, 1), repeat=n - 1):
                assert cocycle_class(coboundary(group, g)).is_trivial
        rng = random.Random(13)
        for group in small_groups(8):
            n = group.order()
            for _ in range(4):
                g = [rng.randint(-3, 3) for _ in range(n - 1)]
                assert cocycle_class(coboundary(group, g)).is_trivial

    def test_round_trip_small(self):
        for group in small_groups(16):
            for chi in all_characters(group):
                back = cocycle_class(cocycle_of(character_to_extension(chi)))
                assert back == chi


class TestBaerSum:
    def test_inverse(self):
        group = FgAbGroup(0, (2, 2))
        chi = Character(group, (Fraction(1, 2), Fraction(0)))
        c = cocycle_of(character_to_extension(chi))
        neg = SymmetricCocycle(group, tuple(tuple(-x for x in row) for row in c.table))
        assert cocycle_class(baer_sum(c, neg)).is_trivial

    def test_two_torsion(self):
        c = SymmetricCocycle(cyclic(2), ((0, 0), (0, 1)))
        assert cocycle_class(baer_sum(c, c)).is_trivial

    def test_identity(self):
        c = SymmetricCocycle(cyclic(2), ((0, 0), (0, 1)))
        assert cocycle_class(baer_sum(c, zero_cocycle(cyclic(2)))) == cocycle_class(c)

    def test_group_mismatch(self):
        with pytest.raises(ValueError):
            baer_sum(zero_cocycle(cyclic(2)), zero_cocycle(cyclic(3)))

    def test_additivity_random(self):
        rng = random.Random(7)
        groups = [g for g in small_groups(9) if not g.is_trivial]
        for _ in range(60):
            group = rng.choice(groups)
            chars = all_characters(group)
            c1 = cocycle_of(character_to_extension(rng.choice(chars)))
            n = group.order()
            c2 = baer_sum(
                cocycle_of(character_to_extension(rng.choice(chars))),
                coboundary(group, [rng.randint(-2, 2) for _ in range(n - 1)]),
            )
            assert cocycle_class(baer_sum(c1, c2)) == cocycle_class(c1) + cocycle_class(c2)


class TestEquivalence:
    def test_coboundary_shift(self):
        group = cyclic(4)
        chi = Character(group, (Fraction(1, 4),))
        c = cocycle_of(character_to_extension(chi))
        shifted = baer_sum(c, coboundary(group, [1, -2, 3]))
        assert are_equivalent(c, shifted)

    def test_distinct_classes(self):
        c = SymmetricCocycle(cyclic(2), ((0, 0), (0, 1)))
        assert not are_equivalent(c, zero_cocycle(cyclic(2)))

    def test_reflexive(self):
        c = SymmetricCocycle(cyclic(2), ((0, 0), (0, 1)))
        assert are_equivalent(c, c)


class TestExtGroup:
    def test_matches_ext1(self):
        for group in [cyclic(6), TRIVIAL_GROUP, FgAbGroup(0, (2, 4))]:
            assert ext_group_via_characters(group) == ext1_z(group)

    def test_rejects_infinite(self):
        with pytest.raises(ValueError):
            ext_group_via_characters(Z)


class TestClassEnumeration:
    def test_class_count_matches_group_order(self):
        for group in small_groups(8):
            if group.order() == 1:
                continue
            quotient = count_cocycle_classes(group)
            assert quotient.order() == group.order()
            assert quotient == dual_finite(group).group

    def test_characters_hit_distinct_classes(self):
        for group in small_groups(8):
            chars = all_characters(group)
            cocycles = [cocycle_of(character_to_extension(chi)) for chi in chars]
            for i, c1 in enumerate(cocycles):
                for c2 in cocycles[i + 1 :]:
                    assert not are_equivalent(c1, c2)


class TestCocycleValidation:
    def test_symmetry_enforced(self):
        with pytest.raises(ValueError):
            SymmetricCocycle(cyclic(2), ((0, 0), (1, 0)))

    def test_normalization_enforced(self):
        with pytest.raises(ValueError):
            SymmetricCocycle(cyclic(2), ((1, 0), (0, 0)))

    def test_identity_enforced(self):
        with pytest.raises(ValueError):
            SymmetricCocycle(cyclic(3), ((0, 0, 0), (0, 1, 0), (0, 0, 0)))
