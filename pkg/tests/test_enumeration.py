import pytest

from skewcyc.cyclic_arith import euler_phi, units
from skewcyc.enumeration import (
    CensusRecord,
    DuplicateFoundError,
    OrbitTemplate,
    automorphisms,
    brute_force,
    census,
    cp_search_tasks,
    enumerate_coset_preserving,
    lift,
)
from skewcyc.quotient import quotient_of
from skewcyc.skew_core import verify
from skewcyc.store import MemoryStore


@pytest.fixture(scope="module")
def store():
    s = MemoryStore()
    for n in range(2, 43):
        census(n, s)
    return s


class TestAutomorphisms:
    def test_counts(self):
        assert len(automorphisms(6)) == 2
        assert len(automorphisms(12)) == 4
        assert len(automorphisms(1)) == 1

    def test_all_have_trivial_power_function(self):
        for phi in automorphisms(20):
            assert phi.automorphism and set(phi.pi) == {1}


class TestEnumerateCosetPreserving:
    def test_c6(self):
        got = [phi.canonical_str() for phi in enumerate_coset_preserving(6)]
        assert got == ["0,1,2,3,4,5", "0,3,2,5,4,1", "0,5,2,1,4,3", "0,5,4,3,2,1"]

    def test_c12_has_four_proper(self):
        cp = enumerate_coset_preserving(12)
        assert len(cp) == 8
        assert sum(1 for phi in cp if phi.proper) == 4

    def test_prime_order_gives_only_automorphisms(self):
        cp = enumerate_coset_preserving(7)
        assert len(cp) == 6 and all(phi.automorphism for phi in cp)

    def test_never_returns_non_coset_preserving(self):
        for n in (9, 16, 18, 20):
            assert all(phi.coset_preserving for phi in enumerate_coset_preserving(n))

    def test_against_brute_force(self):
        for n in range(2, 10):
            expected = [phi.images for phi in brute_force(n) if phi.coset_preserving]
            got = [phi.images for phi in enumerate_coset_preserving(n)]
            assert got == expected


class TestLift:
    def test_no_lift_into_c12(self):
        # every proper skew morphism of Z_12 is coset-preserving
        rho = verify(6, (0, 3, 2, 5, 4, 1))
        assert lift(rho, 12, enumerate_coset_preserving(12)) == []

    def test_order_must_divide_n(self):
        rho = verify(6, (0, 3, 2, 5, 4, 1))  # order 3
        assert lift(rho, 8, enumerate_coset_preserving(8)) == []

    def test_rejects_automorphism_quotient(self):
        with pytest.raises(ValueError):
            lift(verify(4, (0, 3, 2, 1)), 8, enumerate_coset_preserving(8))

    def test_c32_lifts_fill_the_census(self, store):
        # Z_32 is the smallest 2-power with non-coset-preserving morphisms
        record = store.load(32)
        non_cp = [phi for phi in record.morphisms if not phi.coset_preserving]
        assert non_cp, "Z_32 must have non-coset-preserving skew morphisms"
        assert record.total == 76
        cp = enumerate_coset_preserving(32)
        regenerated = []
        for rho_images in sorted({quotient_of(phi).images_bar for phi in non_cp}):
            rho = verify(len(rho_images), rho_images)
            regenerated.extend(lift(rho, 32, cp))
        assert sorted(phi.images for phi in regenerated) == [phi.images for phi in non_cp]

    def test_lift_results_are_not_coset_preserving(self, store):
        record = store.load(32)
        for phi in record.morphisms:
            if not phi.coset_preserving:
                assert quotient_of(phi).quotient.proper


class TestCensus:
    @pytest.mark.parametrize(
        "n,proper,autos,classes",
        [(4, 0, 2, 0), (6, 2, 2, 1), (24, 16, 8, 7), (42, 52, 12, 7)],
    )
    def test_counts(self, store, n, proper, autos, classes):
        record = store.load(n)
        assert (record.proper_count, record.automorphism_count, record.class_count) == (
            proper,
            autos,
            classes,
        )

    def test_oracle_equivalence(self, store):
        for n in range(2, 10):
            assert [phi.images for phi in store.load(n).morphisms] == [
                phi.images for phi in brute_force(n)
            ]

    def test_no_proper_rule(self, store):
        from math import gcd

        for n in range(2, 43):
            expected = n == 4 or gcd(n, euler_phi(n)) == 1
            assert (store.load(n).proper_count == 0) == expected

    def test_partition(self, store):
        for n in (24, 32, 36, 42):
            for phi in store.load(n).morphisms:
                q = quotient_of(phi).quotient
                cats = [
                    q.is_identity and phi.automorphism,
                    (not q.is_identity) and q.automorphism and phi.coset_preserving,
                    q.proper and not phi.coset_preserving,
                ]
                assert sum(cats) == 1

    def test_proper_orders_share_factor_with_n(self, store):
        from math import gcd

        for n in (18, 24, 30, 36, 42):
            for phi in store.load(n).proper():
                assert gcd(phi.order, n) > 1

    def test_record_postconditions_reject_duplicates(self):
        phi = verify(6, (0, 3, 2, 5, 4, 1))
        with pytest.raises(AssertionError):
            CensusRecord(n=6, morphisms=(phi, phi), class_ids=(0, 0))


class TestBruteForce:
    def test_counts(self):
        assert len(brute_force(5)) == 4
        assert len(brute_force(6)) == 4
        assert len(brute_force(8)) == 6

    def test_guard(self):
        with pytest.raises(ValueError):
            brute_force(11)


class TestOrbitTemplate:
    def test_orbit_value_layout(self):
        # stepper of order 3 on Z_12 with two threads (p = 2, m = 6)
        psi = verify(12, (0, 5, 2, 7, 4, 9, 6, 11, 8, 1, 10, 3))
        template = OrbitTemplate(
            m=6, p=2, psi=psi, x=((2, 7),), needed_positions=frozenset({1, 3, 5})
        )
        assert template.orbit_value(0) == 1
        assert template.orbit_value(1) == 7
        assert template.orbit_value(2) == psi.images[1]
        assert template.orbit_value(3) == psi.images[7]
        assert template.orbit_value(4) == psi.images[psi.images[1]]

    def test_validation(self):
        psi = verify(12, (0, 5, 2, 7, 4, 9, 6, 11, 8, 1, 10, 3))
        with pytest.raises(AssertionError):
            OrbitTemplate(m=6, p=2, psi=psi, x=((5, 7),), needed_positions=frozenset())
        with pytest.raises(AssertionError):
            OrbitTemplate(m=9, p=2, psi=psi, x=(), needed_positions=frozenset())


def test_cp_search_tasks_examples():
    # Z_6 admits exactly one base-search task: quotients alpha_2 on Z_3
    assert cp_search_tasks(6) == [(3, 2)]
    # prime order admits none
    assert cp_search_tasks(7) == []


def test_batched_and_plain_lift_agree(monkeypatch):
    # force every seed search through the vectorised pre-filter and compare
    import skewcyc.enumeration as enum

    def run():
        store = MemoryStore()
        return [phi.images for phi in census(32, store).morphisms]

    plain = run()
    monkeypatch.setattr(enum, "_BATCH_MIN", 1)
    assert run() == plain
    monkeypatch.setattr(enum, "_np", None)  # and with numpy disabled entirely
    assert run() == plain
