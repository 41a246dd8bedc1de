import math

import pytest

from mcg3.errors import (
    AssumptionViolated,
    BadParameters,
    NotCataloged,
    SpecParseError,
    SpecValidationError,
)
from mcg3.manifolds import (
    ConnectedSum,
    ExtensionVerdict,
    FlatForm,
    Generic,
    Handle,
    Lens,
    LensMcg,
    PrismPrimePrime,
    PrismSpinor,
    extension_type,
    fundamental_group,
    fundamental_group_sum,
    in_hendriks_list,
    is_spinorial,
    is_spinorial_sum,
    kernel_rank,
    lens_homeomorphic,
    lens_homotopy_equivalent,
    lens_mcg,
    pi1_permutation_group,
    prime_from_json,
    same_prime_class,
    sum_from_json,
    sum_to_json,
)
from mcg3.permgroups import enumerate_elements
from mcg3.words import abelianization, presentation, presentation_to_json


def coprimes(p):
    return [q for q in range(1, p + 1) if math.gcd(p, q) == 1] or [0]


class TestLensFacts:
    def test_l15_1_vs_l15_4(self):
        assert lens_homeomorphic(15, 1, 4) is False
        assert lens_homotopy_equivalent(15, 1, 4) is True

    def test_negated_parameter_is_homeomorphic(self):
        assert lens_homeomorphic(7, 1, 6) is True

    def test_reflexive(self):
        assert lens_homeomorphic(9, 2, 2) is True
        assert lens_homotopy_equivalent(9, 2, 2) is True

    def test_not_homotopy_equivalent(self):
        assert lens_homotopy_equivalent(15, 1, 2) is False

    def test_bad_parameters(self):
        with pytest.raises(BadParameters):
            lens_homeomorphic(15, 3, 1)
        with pytest.raises(BadParameters):
            lens_mcg(4, 2)

    def test_homeomorphic_implies_homotopy_equivalent_up_to_50(self):
        for p in range(1, 51):
            for q in coprimes(p):
                for q2 in coprimes(p):
                    if lens_homeomorphic(p, q, q2):
                        assert lens_homotopy_equivalent(p, q, q2)

    def test_relations_reflexive_and_symmetric_up_to_50(self):
        for p in range(1, 51):
            qs = coprimes(p)
            for q in qs:
                assert lens_homeomorphic(p, q, q)
                assert lens_homotopy_equivalent(p, q, q)
            for q in qs:
                for q2 in qs:
                    assert lens_homeomorphic(p, q, q2) == lens_homeomorphic(p, q2, q)
                    assert lens_homotopy_equivalent(p, q, q2) == lens_homotopy_equivalent(
                        p, q2, q
                    )


class TestLensMcg:
    def test_witt_cases(self):
        assert lens_mcg(15, 4) == LensMcg.Z2xZ2
        assert lens_mcg(15, 1) == LensMcg.Z2
        assert lens_mcg(5, 2) == LensMcg.Z4
        assert lens_mcg(2, 1) == LensMcg.TRIVIAL
        assert lens_mcg(1, 0) == LensMcg.TRIVIAL

    def test_invariant_under_homeomorphism_parameters_up_to_50(self):
        for p in range(3, 51):
            for q in coprimes(p):
                value = lens_mcg(p, q)
                assert lens_mcg(p, (p - q) % p) == value
                q_inv = pow(q, -1, p)
                assert lens_mcg(p, q_inv) == value


class TestPrimes:
    def test_lens_normalizes_q(self):
        assert Lens(7, 13) == Lens(7, 6)
        assert Lens(1, 5) == Lens(1, 0)

    def test_lens_rejects_non_coprime(self):
        with pytest.raises(BadParameters):
            Lens(4, 2)

    def test_prism_parameter_checks(self):
        with pytest.raises(BadParameters):
            PrismSpinor(4, 1)
        with pytest.raises(BadParameters):
            PrismSpinor(3, 3)
        with pytest.raises(BadParameters):
            PrismPrimePrime(3, 3, 1)

    def test_fundamental_groups(self):
        assert presentation_to_json(fundamental_group(Lens(2, 1))) == {
            "generators": ["a"],
            "relators": [["a", "a"]],
        }
        assert presentation_to_json(fundamental_group(Handle())) == {
            "generators": ["a"],
            "relators": [],
        }

    def test_prism_spinor_group_order_twelve(self):
        group = pi1_permutation_group(PrismSpinor(3, 1))
        assert len(enumerate_elements(group, limit=group.degree)) == 12
        # the permutation realization satisfies the presentation relators
        from mcg3.permgroups import GroupHomomorphism, evaluate_word

        pres = fundamental_group(PrismSpinor(3, 1))
        hom = GroupHomomorphism(pres, group, tuple(group.generators))
        for rel in pres.relators:
            assert evaluate_word(rel, hom).is_identity()

    def test_prism_prime_prime_realization(self):
        group = pi1_permutation_group(PrismPrimePrime(4, 3, 1))
        assert len(enumerate_elements(group, limit=group.degree)) == 48

    def test_flat_form_torus_only(self):
        torus = fundamental_group(FlatForm(1))
        assert torus.rank == 3
        with pytest.raises(NotCataloged):
            fundamental_group(FlatForm(2))


class TestSums:
    def test_two_rp3(self):
        s = ConnectedSum((Lens(2, 1), Lens(2, 1)))
        pres = fundamental_group_sum(s)
        assert presentation_to_json(pres) == {
            "generators": ["a", "b"],
            "relators": [["a", "a"], ["b", "b"]],
        }
        assert pres.factor_structure is not None and len(pres.factor_structure) == 2

    def test_two_handles_free_of_rank_two(self):
        pres = fundamental_group_sum(ConnectedSum((Handle(), Handle())))
        assert pres.rank == 2 and not pres.relators

    def test_lens3_plus_handle(self):
        pres = fundamental_group_sum(ConnectedSum((Lens(3, 1), Handle())))
        assert presentation_to_json(pres) == {
            "generators": ["a", "b"],
            "relators": [["a", "a", "a"]],
        }

    def test_factor_count_and_abelianization_direct_sum(self):
        sums = [
            ConnectedSum((Lens(2, 1), Lens(2, 1))),
            ConnectedSum((Lens(3, 1), Handle(), Lens(4, 1))),
            ConnectedSum((PrismSpinor(3, 1), Lens(5, 2))),
            ConnectedSum((Handle(), Handle(), Lens(6, 1))),
        ]
        for s in sums:
            pres = fundamental_group_sum(s)
            assert len(pres.factor_structure) == s.total
            combined = abelianization(fundamental_group(s.primes[0]))
            for pr in s.primes[1:]:
                combined = combined.direct_sum(abelianization(fundamental_group(pr)))
            assert abelianization(pres) == combined

    def test_counts(self):
        s = ConnectedSum((Lens(2, 1), Handle(), PrismSpinor(3, 1), Handle()))
        assert s.total == 4
        assert s.handle_count == 2
        assert s.irreducible_count == 2
        assert s.spinorial_count == 1
        assert s.total == s.handle_count + s.irreducible_count
        assert sum(s.species_sizes) == s.total

    def test_species_uses_lens_homeomorphism(self):
        s = ConnectedSum((Lens(7, 1), Lens(7, 6), Lens(7, 2), Handle()))
        assert same_prime_class(Lens(7, 1), Lens(7, 6))
        assert s.species == ((0, 1), (2,), (3,))

    def test_empty_sum_rejected(self):
        with pytest.raises(SpecValidationError):
            ConnectedSum(())


class TestSpinoriality:
    def test_lens_and_handle_not_spinorial(self):
        assert is_spinorial(Lens(15, 4)) is False
        assert is_spinorial(Handle()) is False

    def test_prisms_and_flat_spinorial(self):
        assert is_spinorial(PrismSpinor(3, 1)) is True
        assert is_spinorial(PrismPrimePrime(4, 3, 1)) is True
        assert is_spinorial(FlatForm(1)) is True

    def test_sum_is_disjunction(self):
        assert is_spinorial_sum(ConnectedSum((Lens(2, 1), Lens(2, 1)))) is False
        assert is_spinorial_sum(ConnectedSum((Lens(7, 1), PrismSpinor(3, 1)))) is True
        assert is_spinorial_sum(ConnectedSum((Lens(5, 1),))) is False

    def test_extension_dichotomy(self):
        assert extension_type(ConnectedSum((Lens(2, 1), Lens(2, 1)))) == ExtensionVerdict.ISOMORPHIC
        assert (
            extension_type(ConnectedSum((PrismSpinor(3, 1),)))
            == ExtensionVerdict.CENTRAL_Z2_EXTENSION
        )
        assert extension_type(ConnectedSum((Handle(), Handle()))) == ExtensionVerdict.ISOMORPHIC


class TestKernelRank:
    def test_two_handles_four_spinorial_primes(self):
        s = ConnectedSum(
            (
                Handle(),
                Handle(),
                PrismSpinor(3, 1),
                PrismSpinor(5, 1),
                PrismSpinor(3, 7),
                PrismPrimePrime(4, 3, 1),
            )
        )
        assert kernel_rank(s) == 6

    def test_non_spinorial_sum(self):
        assert kernel_rank(ConnectedSum((Lens(2, 1), Lens(2, 1)))) == 0

    def test_single_handle(self):
        assert kernel_rank(ConnectedSum((Handle(),))) == 1

    def test_generic_without_flag_raises(self):
        generic = Generic(name="mystery", pi1=presentation(["x"]))
        with pytest.raises(AssumptionViolated):
            kernel_rank(ConnectedSum((generic,)))


class TestHendriksList:
    def test_lens_and_handle_in_list(self):
        assert in_hendriks_list(Lens(15, 4)) is True
        assert in_hendriks_list(Handle()) is True

    def test_prism_families_in_list(self):
        assert in_hendriks_list(PrismSpinor(3, 1)) is True
        assert in_hendriks_list(PrismSpinor(5, 3)) is True
        assert in_hendriks_list(PrismPrimePrime(4, 3, 1)) is True

    def test_quaternionic_space_form_not_in_list(self):
        quaternionic = Generic(
            name="quaternionic",
            pi1=presentation(["i", "j"], ["i i i i", "i i j j", "j^-1 i j i"]),
            finite_pi1_name="Q8",
        )
        assert in_hendriks_list(quaternionic) is False

    def test_flat_form_not_in_list(self):
        assert in_hendriks_list(FlatForm(1)) is False

    def test_non_spinorial_implies_membership(self):
        catalog = [Lens(2, 1), Lens(15, 4), Lens(7, 3), Handle(), PrismSpinor(3, 1), FlatForm(1)]
        for pr in catalog:
            if not is_spinorial(pr):
                assert in_hendriks_list(pr)


class TestJson:
    def test_round_trip(self):
        s = ConnectedSum((Lens(15, 4), Handle(), PrismSpinor(3, 1), PrismPrimePrime(4, 3, 1)))
        assert sum_from_json(sum_to_json(s)) == s

    def test_example_spec(self):
        s = sum_from_json(
            {"primes": [{"kind": "lens", "p": 2, "q": 1}, {"kind": "lens", "p": 2, "q": 1}]}
        )
        assert s.total == 2 and s.handle_count == 0 and s.spinorial_count == 0

    def test_empty_sum(self):
        with pytest.raises(SpecValidationError):
            sum_from_json({"primes": []})

    def test_gcd_violation_names_prime(self):
        with pytest.raises(SpecValidationError, match=r"primes\[0\]"):
            sum_from_json({"primes": [{"kind": "lens", "p": 4, "q": 2}]})

    def test_unknown_kind(self):
        with pytest.raises(SpecParseError):
            prime_from_json({"kind": "donut"})

    def test_missing_field(self):
        with pytest.raises(SpecParseError):
            prime_from_json({"kind": "lens", "p": 5})
