import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from skewcyc.skew_core import (
    EquivalenceClass,
    IdentityNotFixedError,
    InternalCheckError,
    NoPowerExponentError,
    NotInKernelError,
    NotPermutationError,
    NotPreservedError,
    automorphism_of,
    conjugate,
    equivalence_classes,
    induced_on_quotient,
    kernel,
    periodicity,
    perm_order,
    power,
    restrict_to_kernel,
    verify,
)

from naive import naive_is_skew, naive_pi

PHI6 = (0, 3, 2, 5, 4, 1)  # the canonical proper skew morphism of Z_6


class TestVerify:
    def test_automorphism_alpha5_on_z12(self):
        phi = verify(12, [5 * a % 12 for a in range(12)])
        assert phi.pi == (1,) * 12
        assert phi.order == 2
        assert phi.kernel_order == 12
        assert phi.automorphism and phi.coset_preserving

    def test_proper_skew_morphism_of_z6(self):
        # expected values confirmed by the exhaustive naive oracle
        assert naive_pi(6, PHI6) == [1, 2, 1, 2, 1, 2]
        phi = verify(6, PHI6)
        assert phi.order == 3
        assert phi.pi == (1, 2, 1, 2, 1, 2)
        assert kernel(phi) == (3, frozenset({0, 2, 4}))
        assert phi.proper and phi.coset_preserving

    def test_non_skew_rejected_with_witness(self):
        assert not naive_is_skew(6, (0, 2, 1, 3, 5, 4))
        with pytest.raises(NoPowerExponentError) as exc:
            verify(6, (0, 2, 1, 3, 5, 4))
        assert 0 <= exc.value.element < 6

    def test_not_permutation(self):
        with pytest.raises(NotPermutationError):
            verify(4, (0, 1, 1, 3))
        with pytest.raises(NotPermutationError):
            verify(4, (0, 1, 2))

    def test_identity_not_fixed(self):
        with pytest.raises(IdentityNotFixedError):
            verify(4, (1, 0, 2, 3))

    def test_trivial_groups(self):
        assert verify(1, (0,)).order == 1
        assert verify(2, (0, 1)).pi == (1, 1)

    def test_agrees_with_naive_oracle_exhaustively_n6(self):
        for perm in permutations(range(1, 6)):
            images = (0,) + perm
            expected = naive_pi(6, images)
            if expected is None:
                with pytest.raises(NoPowerExponentError):
                    verify(6, images)
            else:
                assert list(verify(6, images).pi) == expected

    @settings(max_examples=200, deadline=None)
    @given(st.integers(3, 30), st.randoms(use_true_random=False))
    def test_agrees_with_naive_oracle_random(self, n, rng):
        tail = list(range(1, n))
        rng.shuffle(tail)
        images = (0, *tail)
        if naive_is_skew(n, images):
            phi = verify(n, images)
            assert list(phi.pi) == naive_pi(n, images)
        else:
            with pytest.raises(NoPowerExponentError):
                verify(n, images)


def test_perm_order():
    assert perm_order(tuple(range(9))) == 1
    assert perm_order(PHI6) == 3
    assert perm_order(tuple(5 * a % 12 for a in range(12))) == 2


class TestPeriodicity:
    def test_automorphisms_have_periodicity_one(self):
        for n, s in [(12, 5), (7, 3), (9, 2)]:
            assert periodicity(automorphism_of(n, s)) == 1

    def test_proper_example(self):
        assert periodicity(verify(6, PHI6)) == 1

    def test_identity(self):
        assert periodicity(verify(7, tuple(range(7)))) == 1


class TestPower:
    def test_zeroth_power_is_identity(self):
        phi = verify(6, PHI6)
        assert power(phi, 0) == tuple(range(6))

    def test_power_matches_order(self):
        phi = verify(6, PHI6)
        assert power(phi, 3) == tuple(range(6))
        assert power(phi, 1) == PHI6
        assert power(phi, 2) == tuple(PHI6[PHI6[a]] for a in range(6))

    def test_alpha5_squared(self):
        phi = automorphism_of(12, 5)
        assert power(phi, 2) == tuple(range(12))


class TestAutomorphismOf:
    def test_examples(self):
        assert automorphism_of(12, 5).order == 2
        assert automorphism_of(7, 3).order == 6
        with pytest.raises(ValueError):
            automorphism_of(6, 4)


class TestInducedOnQuotient:
    def test_collapses_to_identity_on_z2(self):
        phi = verify(6, PHI6)
        ind = induced_on_quotient(phi, 3)
        assert ind.n == 2 and ind.images == (0, 1)

    def test_trivial_subgroup_returns_same_map(self):
        phi = verify(6, PHI6)
        assert induced_on_quotient(phi, 1).images == phi.images

    def test_whole_group(self):
        phi = automorphism_of(12, 5)
        assert induced_on_quotient(phi, 12).n == 1

    def test_subgroup_not_in_kernel(self):
        phi = verify(6, PHI6)  # kernel {0, 2, 4}
        with pytest.raises(NotInKernelError):
            induced_on_quotient(phi, 2)  # subgroup {0, 3}


class TestRestrictToKernel:
    def test_proper_example_restricts_to_identity(self):
        res = restrict_to_kernel(verify(6, PHI6))
        assert res.n == 3 and res.images == (0, 1, 2)

    def test_automorphism_restricts_to_itself(self):
        phi = automorphism_of(12, 5)
        assert restrict_to_kernel(phi).images == phi.images

    def test_identity(self):
        phi = verify(7, tuple(range(7)))
        assert restrict_to_kernel(phi).images == tuple(range(7))


class TestConjugate:
    def test_conjugate_by_one_is_identity_action(self):
        phi = verify(6, PHI6)
        assert conjugate(phi, 1).images == phi.images

    def test_conjugate_example(self):
        # value confirmed by direct computation + naive oracle
        assert naive_pi(6, (0, 5, 2, 1, 4, 3)) is not None
        assert conjugate(verify(6, PHI6), 5).images == (0, 5, 2, 1, 4, 3)

    def test_automorphisms_are_fixed(self):
        phi = automorphism_of(12, 5)
        for t in (1, 5, 7, 11):
            assert conjugate(phi, t).images == phi.images

    def test_rejects_non_unit(self):
        with pytest.raises(ValueError):
            conjugate(verify(6, PHI6), 3)


class TestEquivalenceClasses:
    def test_two_proper_of_z6_form_one_class(self):
        pair = [verify(6, PHI6), verify(6, (0, 5, 2, 1, 4, 3))]
        classes = equivalence_classes(pair)
        assert len(classes) == 1
        assert classes[0].representative == PHI6
        assert len(classes[0].members) == 2

    def test_automorphisms_are_singletons(self):
        autos = [automorphism_of(12, s) for s in (1, 5, 7, 11)]
        classes = equivalence_classes(autos)
        assert len(classes) == 4
        assert all(len(c.members) == 1 for c in classes)

    def test_empty(self):
        assert equivalence_classes([]) == []


class TestStructuralInvariants:
    """Spec-level invariants on every verified morphism, over a small sweep."""

    def _all_skew(self, n):
        out = []
        for perm in permutations(range(1, n)):
            images = (0,) + perm
            try:
                out.append(verify(n, images))
            except Exception:
                pass
        return out

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
    def test_sweep(self, n):
        from math import gcd

        for phi in self._all_skew(n):
            # fixed points lie in the kernel
            for a in range(n):
                if phi.images[a] == a:
                    assert phi.pi[a] == 1
            # generating orbit of 1 has size ord
            orbit = {1}
            x = phi.images[1]
            while x != 1:
                orbit.add(x)
                x = phi.images[x]
            assert len(orbit) == phi.order
            # power function constant exactly on kernel cosets
            step = n // phi.kernel_order
            for a in range(n):
                for b in range(n):
                    assert (phi.pi[a] == phi.pi[b]) == (a % step == b % step)
            # f^{periodicity} is coset-preserving skew
            fp = verify(n, power(phi, phi.periodicity))
            assert fp.coset_preserving
            # order bounds
            if n >= 2:
                assert phi.order < n and phi.kernel_order >= 2
            if phi.proper:
                assert gcd(phi.order, phi.kernel_order) > 1
                assert gcd(phi.order, n) > 1
