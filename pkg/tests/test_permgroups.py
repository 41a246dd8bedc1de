import itertools

import pytest

from mcg3.errors import DegreeTooLarge, UnknownGenerator
from mcg3.permgroups import (
    GroupHomomorphism,
    Permutation,
    PermutationGroup,
    cyclic_group_perm,
    dicyclic_prism_group,
    direct_product,
    enumerate_elements,
    enumerate_homomorphisms,
    evaluate_word,
    load_group_catalog,
    quaternion_group,
    regular_representation,
    sylow_all_cyclic,
    symmetric_group,
)
from mcg3.words import Word, presentation

Z2Z2 = presentation(["a", "b"], ["a a", "b b"])


class TestPermutation:
    def test_composition_is_left_to_right(self):
        p = Permutation.from_cycles(3, [(0, 1)])
        q = Permutation.from_cycles(3, [(1, 2)])
        assert (p * q)(0) == q(p(0))

    def test_inverse(self):
        p = Permutation((1, 2, 0))
        assert (p * p.inverse()).is_identity()

    def test_order(self):
        assert Permutation((1, 2, 0)).order() == 3
        assert Permutation.from_cycles(5, [(0, 1), (2, 3, 4)]).order() == 6
        assert Permutation.identity(4).order() == 1


class TestEnumerateElements:
    def test_z2(self):
        g = PermutationGroup(2, [Permutation((1, 0))])
        assert len(enumerate_elements(g)) == 2

    def test_s3_from_generators(self):
        g = PermutationGroup(
            3,
            [Permutation.from_cycles(3, [(0, 1, 2)]), Permutation.from_cycles(3, [(0, 1)])],
        )
        assert len(enumerate_elements(g)) == 6

    def test_q8_regular_representation(self):
        assert len(enumerate_elements(quaternion_group())) == 8

    def test_degree_limit(self):
        g = PermutationGroup(13, [Permutation.identity(13)])
        with pytest.raises(DegreeTooLarge):
            enumerate_elements(g)
        assert len(enumerate_elements(g, limit=13)) == 1

    def test_deterministic_order_and_closure(self):
        g = symmetric_group(4)
        elements = enumerate_elements(g)
        assert elements == enumerate_elements(g)
        assert elements[0].is_identity()
        pool = set(elements)
        for x, y in itertools.product(elements, repeat=2):
            assert x * y in pool
        assert all(x.inverse() in pool for x in elements)

    def test_lagrange_for_small_degrees(self):
        import math

        for g in (symmetric_group(3), quaternion_group(), dicyclic_prism_group(3)):
            n = len(enumerate_elements(g))
            assert math.factorial(g.degree) % n == 0


class TestEvaluateWord:
    def hom(self, a, b):
        return GroupHomomorphism(Z2Z2, symmetric_group(3), (a, b))

    def test_empty_word(self):
        h = self.hom(Permutation.identity(3), Permutation.identity(3))
        assert evaluate_word(Word.identity(), h).is_identity()

    def test_single_letter(self):
        h = self.hom(Permutation.from_cycles(3, [(0, 1)]), Permutation.identity(3))
        assert evaluate_word(Word.from_pairs([(0, 1)]), h) == Permutation.from_cycles(
            3, [(0, 1)]
        )

    def test_product_is_three_cycle(self):
        h = self.hom(
            Permutation.from_cycles(3, [(0, 1)]), Permutation.from_cycles(3, [(1, 2)])
        )
        image = evaluate_word(Word.from_pairs([(0, 1), (1, 1)]), h)
        assert image.order() == 3

    def test_unknown_generator(self):
        h = self.hom(Permutation.identity(3), Permutation.identity(3))
        with pytest.raises(UnknownGenerator):
            evaluate_word(Word.from_pairs([(5, 1)]), h)

    def test_inverse_sign(self):
        p = Permutation((1, 2, 0))
        h = GroupHomomorphism(presentation(["a"]), symmetric_group(3), (p,))
        assert evaluate_word(Word.from_pairs([(0, -1)]), h) == p.inverse()


class TestEnumerateHomomorphisms:
    def test_z2_star_z2_into_s3(self):
        homs = enumerate_homomorphisms(Z2Z2, 3)
        assert len(homs) == 16

    def test_z2_star_z2_into_s2(self):
        assert len(enumerate_homomorphisms(Z2Z2, 2)) == 4

    def test_infinite_cyclic_into_s2(self):
        free = presentation(["a"])
        assert len(enumerate_homomorphisms(free, 2)) == 2

    def test_matches_raw_brute_force(self):
        # independent oracle: try every assignment with no pruning
        perms = [Permutation(images) for images in itertools.permutations(range(3))]
        brute = 0
        for a, b in itertools.product(perms, repeat=2):
            if (a * a).is_identity() and (b * b).is_identity():
                brute += 1
        assert brute == len(enumerate_homomorphisms(Z2Z2, 3))

    def test_every_relator_rechecks_to_identity(self):
        p = presentation(["a", "b"], ["a a a", "b b", "a b a^-1 b^-1"])
        for hom in enumerate_homomorphisms(p, 4):
            for rel in p.relators:
                assert evaluate_word(rel, hom).is_identity()

    def test_count_equals_element_order_census(self):
        for n in range(2, 6):
            elements = enumerate_elements(symmetric_group(n))
            for k in range(1, 7):
                p = presentation(["a"], ["a" + " a" * (k - 1)])
                census = sum(1 for e in elements if k % e.order() == 0)
                assert census == len(enumerate_homomorphisms(p, n))

    def test_degree_limit(self):
        with pytest.raises(DegreeTooLarge):
            enumerate_homomorphisms(Z2Z2, 8)

    def test_duplicate_free_and_deterministic(self):
        homs = enumerate_homomorphisms(Z2Z2, 3)
        keys = [tuple(h.assignment) for h in homs]
        assert len(set(keys)) == len(keys)
        assert keys == [tuple(h.assignment) for h in enumerate_homomorphisms(Z2Z2, 3)]


def all_subgroups(group: PermutationGroup) -> list[frozenset]:
    """Every subgroup, by closing subsets one added generator at a time."""
    elements = enumerate_elements(group, limit=max(12, group.degree))

    def close(gens):
        seen = set(gens) | {Permutation.identity(group.degree)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x * g
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    subgroups = {frozenset([Permutation.identity(group.degree)])}
    frontier = set(subgroups)
    while frontier:
        nxt = set()
        for sub in frontier:
            for e in elements:
                if e in sub:
                    continue
                bigger = close(tuple(sub) + (e,))
                if bigger not in subgroups:
                    subgroups.add(bigger)
                    nxt.add(bigger)
        frontier = nxt
    return sorted(subgroups, key=len)


def sylow_all_cyclic_by_subgroup_search(group: PermutationGroup) -> bool:
    elements = enumerate_elements(group, limit=max(12, group.degree))
    n = len(elements)
    subgroups = all_subgroups(group)
    ok = True
    for prime in {p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, p))}:
        power = 1
        while n % (power * prime) == 0:
            power *= prime
        sylows = [s for s in subgroups if len(s) == power]
        assert sylows, "Sylow subgroup must exist"
        for s in sylows:
            cyclic = any(e.order() == len(s) for e in s)
            if not cyclic:
                ok = False
    return ok


class TestSylow:
    def test_cyclic_group(self):
        assert sylow_all_cyclic(cyclic_group_perm(6)) is True

    def test_quaternion_group_fails(self):
        assert sylow_all_cyclic(quaternion_group()) is False

    def test_dicyclic_order_12(self):
        g = dicyclic_prism_group(3)
        elements = enumerate_elements(g)
        assert {e.order() for e in elements} >= {3, 4}
        assert sylow_all_cyclic(g) is True

    def test_agrees_with_subgroup_search_up_to_order_24(self):
        catalog = load_group_catalog()
        small = [
            g
            for g in catalog.values()
            if len(enumerate_elements(g, limit=max(12, g.degree))) <= 24
        ]
        assert len(small) >= 18
        for g in small:
            assert sylow_all_cyclic(g, limit=max(12, g.degree)) == (
                sylow_all_cyclic_by_subgroup_search(g)
            ), g.name


class TestCatalog:
    def test_expected_members(self):
        catalog = load_group_catalog()
        names = set(catalog)
        assert {f"Z{k}" for k in range(1, 13)} <= names
        assert {"S2", "S3", "S4", "S5", "Q8", "Dstar12", "Dstar20", "Dprime48"} <= names

    def test_orders(self):
        catalog = load_group_catalog()
        expected = {"Q8": 8, "Dstar12": 12, "Dstar20": 20, "Dprime48": 48, "S4": 24, "S5": 120}
        for name, order in expected.items():
            g = catalog[name]
            assert len(enumerate_elements(g, limit=max(12, g.degree))) == order

    def test_dprime48_center_and_quotient_structure(self):
        # B^2 generates the order-8 center of the two_power=16 prism group
        g = dicyclic_prism_group(3, 16)
        b = g.generators[1]
        b2 = b * b
        assert b2.order() == 8
        elements = enumerate_elements(g, limit=48)
        assert all(e * b2 == b2 * e for e in elements)


class TestProductConstructions:
    def test_direct_product_order(self):
        g = direct_product(dicyclic_prism_group(3), cyclic_group_perm(5))
        assert len(enumerate_elements(g, limit=17)) == 60

    def test_regular_representation_is_faithful(self):
        g = regular_representation(
            list(range(5)), lambda x, y: (x + y) % 5, [1], name="Z5r"
        )
        assert len(enumerate_elements(g)) == 5
