"""
Tests for the shipped systems against the golden table (reflectrace/golden.py)
"""

import unittest
import os

import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from reflectrace.config import ReflectraceConfig, list_shipped_systems, load_system
from reflectrace.conj import CONJUGATE, ConjugacyOracle, centralizer_ball, verify_conjugator
from reflectrace.coxeter import canonical_word
from reflectrace.facets import spherical_subsets
from reflectrace.golden import WHOLE_GROUP, golden_for, load_golden, match_pi1, tag_name
from reflectrace.hocolim import compute_hocolim
from reflectrace.parabolics import centralizer_in_parabolic
from reflectrace.presentations import cyclic
from reflectrace.report import PASS, VERIFIED
from reflectrace.verify import amalgam_vs_coxeter, lemma_groupoid_check, subgroup_ball, verify_system


def shipped(name):
    return load_system(name).build()


class TestGoldenTable(unittest.TestCase):

    def test_every_shipped_system_has_an_entry(self):
        """Test that the golden table covers exactly the shipped systems."""
        self.assertEqual(sorted(load_golden()), [name for name, _ in list_shipped_systems()])
        self.assertIsNone(golden_for("h3"))

    def test_match_pi1(self):
        """Test the multiset comparison."""
        self.assertEqual(match_pi1(["C2", "C3", "C2"], ["C3", "C2", "C2"]), (True, [], []))
        self.assertEqual(match_pi1(["C2", "C3"], ["C2", "C2"]), (False, ["C3"], ["C2"]))

    def test_tag_name(self):
        """Test that only a presentation of the system itself prints as W."""
        a2 = shipped("a2")
        self.assertEqual(tag_name(cyclic(3), a2), "C3")
        affine = shipped("affine_a1")
        identity_component = compute_hocolim(affine).presentations[0]
        self.assertEqual(tag_name(identity_component.recognized, affine), WHOLE_GROUP)


class TestShippedSystems(unittest.TestCase):

    def test_counts_and_groups(self):
        """Test object counts, component counts and pi_1 for every shipped system."""
        for name, expected in sorted(load_golden().items()):
            with self.subTest(system=name):
                sys_ = shipped(name)
                self.assertEqual(sys_.type_class, expected.type_class)
                result = compute_hocolim(sys_)
                self.assertEqual(len(result.category.objects), expected.objects)
                self.assertEqual(len(result.components), expected.components)
                actual = [tag_name(cp.recognized, sys_) for cp in result.presentations]
                equal, missing, unexpected = match_pi1(expected.pi1, actual)
                self.assertTrue(equal, f"missing {missing}, unexpected {unexpected}")

    def test_verified_systems(self):
        """Test that the fully decidable systems verify without unknowns."""
        for name in ("a1", "a2", "affine_a1"):
            with self.subTest(system=name):
                self.assertEqual(verify_system(shipped(name), claims=False).overall, VERIFIED)

    def test_affine_a2_reflections(self):
        """Test that the three wall reflections of affine A2 are pairwise conjugate."""
        sys_ = shipped("affine_a2")
        oracle = ConjugacyOracle(sys_)
        for s in range(3):
            for t in range(s + 1, 3):
                w, w_prime = sys_.generator(s), sys_.generator(t)
                verdict = oracle.decide(w, w_prime, 6)
                self.assertEqual(verdict.kind, CONJUGATE)
                self.assertTrue(verify_conjugator(sys_, verdict.conjugator, w, w_prime))

    def test_amalgam_on_every_system(self):
        """Test that the amalgam matches the Coxeter presentation on every shipped system."""
        for name, _ in list_shipped_systems():
            with self.subTest(system=name):
                self.assertEqual(amalgam_vs_coxeter(shipped(name)).status, PASS)

    def test_lemma_on_affine_systems(self):
        """Test the star reindexing check for every spherical subset of the affine systems."""
        for name in ("affine_a1", "affine_a2"):
            sys_ = shipped(name)
            for T in spherical_subsets(sys_).nodes:
                with self.subTest(system=name, subset=sorted(T)):
                    self.assertEqual(lemma_groupoid_check(sys_, T, 4).status, PASS)

    def test_remaining_systems_verify_with_claims(self):
        """Test that the other shipped systems verify fully, secondary claims included."""
        for name in ("a1xa1", "b2", "g2", "affine_a2", "triangle_23inf"):
            with self.subTest(system=name):
                report = verify_system(shipped(name), claims=True)
                self.assertEqual(report.overall, VERIFIED)

    def test_triangle_centralizers(self):
        """
        Test on the (2,3,inf) triangle group that centralizer_ball meets W_T in
        the centralizer inside W_T, and lies in the subgroup generated by the
        pi_1 labels of the component of (T, w).
        """
        sys_ = shipped("triangle_23inf")
        config = ReflectraceConfig()
        hocolim = compute_hocolim(sys_)
        gc = hocolim.category
        component_of = {i: cp for cp in hocolim.presentations for i in cp.component.objects}
        for T in (frozenset({0, 1}), frozenset({0, 2})):
            group = gc.parabolics[T]
            for w in group.elements:
                with self.subTest(subset=sorted(T), w=w.word):
                    sampled = centralizer_ball(sys_, w, 6)
                    inside = {g.matrix for g in sampled if set(canonical_word(sys_, g)) <= T}
                    self.assertEqual(inside, {g.matrix for g in centralizer_in_parabolic(group, w)})

                    i = gc.object_index(T, w)
                    cp = component_of[i]
                    c = cp.component.certificates[i]
                    c_inv = sys_.inverse(c)
                    targets = {(c_inv * g * c).matrix for g in sampled}
                    reached = subgroup_ball(sys_, cp.simplified_labels(), None, config.ball_cap, targets=targets)
                    self.assertTrue(targets <= set(reached.elements))


if __name__ == "__main__":
    unittest.main()
