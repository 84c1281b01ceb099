"""
Tests for the conjugacy oracle and its invariants (reflectrace/conj.py)
"""

import unittest
import random
import os

import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from reflectrace.config import load_system
from reflectrace.conj import (
    CONJUGATE,
    EXHAUSTIVE_ORBIT,
    NOT_CONJUGATE,
    UNKNOWN,
    ConjugacyOracle,
    ConjugacyVerdict,
    InvariantVector,
    centralizer_ball,
    characteristic_polynomial,
    conjugacy_decide,
    folded_fixed_point,
    invariants,
    is_torsion,
    null_root,
    stabilized_facet,
    translation_orbit,
    translation_vector,
    translation_witnesses,
    verify_conjugator,
)
from reflectrace.coxeter import CoxeterMatrix, build_system, elem_from_word
from reflectrace.errors import CapExceededError, NotAffineError
from reflectrace.scalars import ONE, QMatrix


def shipped(name):
    return load_system(name).build()


class TestInvariants(unittest.TestCase):

    def test_characteristic_polynomial(self):
        """Test det(xI - M) on the identity and a swap."""
        self.assertEqual(characteristic_polynomial(QMatrix.identity(2)), (1, -2, 1))
        self.assertEqual(characteristic_polynomial(QMatrix([[0, 1], [1, 0]])), (1, 0, -1))

    def test_null_root(self):
        """Test the null root of the affine systems."""
        self.assertEqual(null_root(shipped("affine_a1")), (ONE, ONE))
        delta = null_root(shipped("affine_a2"))
        self.assertEqual(len(set(delta)), 1)
        self.assertTrue(delta[0] > 0)
        with self.assertRaises(NotAffineError):
            null_root(shipped("a2"))

    def test_translation_vector(self):
        """Test that only elements with trivial linear part have a translation vector."""
        sys_ = shipped("affine_a1")
        self.assertEqual(translation_vector(sys_, sys_.identity), (0, 0))
        self.assertIsNone(translation_vector(sys_, sys_.generator(0)))
        vector = translation_vector(sys_, elem_from_word(sys_, (0, 1)))
        self.assertIsNotNone(vector)
        self.assertTrue(any(not c.is_zero() for c in vector))

    def test_translation_orbit_identifies_inverses(self):
        """Test that t and t^-1 share a dominant translation vector."""
        sys_ = shipped("affine_a1")
        t = elem_from_word(sys_, (0, 1))
        t_inv = elem_from_word(sys_, (1, 0))
        self.assertEqual(translation_orbit(sys_, t), translation_orbit(sys_, t_inv))
        self.assertNotEqual(translation_orbit(sys_, t), translation_orbit(sys_, t * t))
        self.assertIsNone(translation_orbit(shipped("a2"), shipped("a2").identity))

    def test_folded_fixed_point_types(self):
        """Test that the three rotations of affine A2 fix vertices of different types."""
        sys_ = shipped("affine_a2")
        points = [folded_fixed_point(sys_, elem_from_word(sys_, word)) for word in [(0, 1), (1, 2), (0, 2)]]
        self.assertEqual({p[0] for p in points}, {frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})})
        self.assertIsNone(folded_fixed_point(sys_, elem_from_word(sys_, (0, 1, 0, 2))))

    def test_folded_fixed_point_on_triangle_group(self):
        """Test that finite rotations fold to their vertex and the parabolic s_b s_c has none."""
        sys_ = shipped("triangle_23inf")
        self.assertEqual(folded_fixed_point(sys_, elem_from_word(sys_, (0, 1)))[0], frozenset({0, 1}))
        self.assertEqual(folded_fixed_point(sys_, elem_from_word(sys_, (0, 2)))[0], frozenset({0, 2}))
        self.assertEqual(folded_fixed_point(sys_, elem_from_word(sys_, (2, 0)))[0], frozenset({0, 2}))
        self.assertIsNone(folded_fixed_point(sys_, elem_from_word(sys_, (1, 2))))
        self.assertIsNone(folded_fixed_point(sys_, sys_.generator(0)))

    def test_invariant_vector_difference(self):
        """Test that the first differing field is reported."""
        a2 = shipped("a2")
        s = invariants(a2, a2.generator(0))
        st = invariants(a2, elem_from_word(a2, (0, 1)))
        self.assertEqual(s.first_difference(st), "order")
        self.assertIsNone(s.first_difference(invariants(a2, a2.generator(1))))
        self.assertIsInstance(s, InvariantVector)

    def test_torsion(self):
        """Test torsion against the order cap."""
        affine = shipped("affine_a1")
        self.assertTrue(is_torsion(affine, affine.generator(1)))
        self.assertFalse(is_torsion(affine, elem_from_word(affine, (0, 1))))


class TestDecide(unittest.TestCase):

    def test_conjugate_reflections(self):
        """Test that the two reflections of A2 are conjugate, with a checked conjugator."""
        a2 = shipped("a2")
        s, t = a2.generator(0), a2.generator(1)
        verdict = conjugacy_decide(a2, s, t, 3)
        self.assertEqual(verdict.kind, CONJUGATE)
        self.assertTrue(verify_conjugator(a2, verdict.conjugator, s, t))

    def test_not_conjugate_by_abelianization(self):
        """Test that the two reflections of affine A1 are separated by abelianization."""
        affine = shipped("affine_a1")
        verdict = conjugacy_decide(affine, affine.generator(0), affine.generator(1), 6)
        self.assertEqual(verdict.kind, NOT_CONJUGATE)
        self.assertEqual(verdict.invariant, "abelianization")
        self.assertEqual(str(verdict), "NotConjugate(abelianization)")

    def test_rotations_of_affine_a2(self):
        """Test that rotations about different vertex types are not conjugate."""
        sys_ = shipped("affine_a2")
        oracle = ConjugacyOracle(sys_)
        r01 = elem_from_word(sys_, (0, 1))
        r12 = elem_from_word(sys_, (1, 2))
        verdict = oracle.decide(r01, r12, 4)
        self.assertEqual(verdict.kind, NOT_CONJUGATE)
        self.assertEqual(verdict.invariant, "folded_fixed_point")

    def test_translations_conjugate_to_inverse(self):
        """Test that s0 s1 and s1 s0 are conjugate in affine A1."""
        affine = shipped("affine_a1")
        w, w_prime = elem_from_word(affine, (0, 1)), elem_from_word(affine, (1, 0))
        verdict = conjugacy_decide(affine, w, w_prime, 4)
        self.assertEqual(verdict.kind, CONJUGATE)
        self.assertTrue(verify_conjugator(affine, verdict.conjugator, w, w_prime))

    def test_exhaustive_search_in_d4(self):
        """Test that s0 s2 and s0 s3 in D4 share every invariant yet are not conjugate."""
        d4 = build_system(CoxeterMatrix.from_rows([[1, 3, 2, 2], [3, 1, 3, 3], [2, 3, 1, 2], [2, 3, 2, 1]]),
                          name="d4")
        x, y = elem_from_word(d4, (0, 2)), elem_from_word(d4, (0, 3))
        self.assertIsNone(invariants(d4, x).first_difference(invariants(d4, y)))
        verdict = conjugacy_decide(d4, x, y, 12)
        self.assertEqual(verdict.kind, NOT_CONJUGATE)
        self.assertEqual(verdict.invariant, EXHAUSTIVE_ORBIT)
        self.assertEqual(str(verdict), "NotConjugate(exhaustive_orbit)")
        self.assertEqual(conjugacy_decide(d4, x, elem_from_word(d4, (1, 0, 2, 1)), 12).kind, CONJUGATE)

    def test_unknown_below_radius(self):
        """Test that a search too short to find the conjugator reports Unknown."""
        a2 = shipped("a2")
        verdict = conjugacy_decide(a2, a2.generator(0), a2.generator(1), 0)
        self.assertEqual(verdict.kind, UNKNOWN)
        self.assertEqual(str(verdict), "Unknown(0)")

    def test_negative_radius(self):
        """Test that a negative radius is refused."""
        a2 = shipped("a2")
        with self.assertRaises(ValueError):
            conjugacy_decide(a2, a2.identity, a2.identity, -1)

    def test_verdict_constructors(self):
        """Test the verdict helpers."""
        a2 = shipped("a2")
        self.assertEqual(ConjugacyVerdict.conjugate(a2.generator(0)).conjugator.word, (0,))
        self.assertEqual(ConjugacyVerdict.unknown(5).radius, 5)


class TestCentralizersAndWitnesses(unittest.TestCase):

    def test_centralizer_of_reflection(self):
        """Test centralizers of reflections in A2 and affine A1."""
        a2 = shipped("a2")
        self.assertEqual(len(centralizer_ball(a2, a2.generator(0), 3)), 2)
        affine = shipped("affine_a1")
        self.assertEqual(len(centralizer_ball(affine, affine.generator(0), 6)), 2)
        self.assertEqual(len(centralizer_ball(affine, affine.identity, 3)), 7)

    def test_translation_witnesses(self):
        """Test that witnesses have pairwise distinct translation orbits."""
        affine = shipped("affine_a1")
        witnesses = translation_witnesses(affine, 4)
        self.assertEqual(len(witnesses), 4)
        orbits = {translation_orbit(affine, w) for w in witnesses}
        self.assertEqual(len(orbits), 4)

    def test_translation_witnesses_affine_a2(self):
        """Test witnesses in rank three."""
        sys_ = shipped("affine_a2")
        witnesses = translation_witnesses(sys_, 3)
        self.assertEqual(len(witnesses), 3)
        for w in witnesses:
            self.assertIsNotNone(translation_vector(sys_, w))

    def test_witness_shortfall_raises(self):
        """Test that too small a radius or ball cap raises instead of returning fewer witnesses."""
        affine = shipped("affine_a1")
        with self.assertRaises(CapExceededError):
            translation_witnesses(affine, 10, max_radius=5)
        with self.assertRaises(CapExceededError):
            translation_witnesses(affine, 10, ball_cap=15)
        self.assertEqual(len(translation_witnesses(affine, 2, max_radius=5)), 2)

    def test_witness_errors(self):
        """Test the argument checks of translation_witnesses."""
        with self.assertRaises(NotAffineError):
            translation_witnesses(shipped("a2"), 3)
        with self.assertRaises(ValueError):
            translation_witnesses(shipped("affine_a1"), 0)

    def test_stabilized_facet(self):
        """Test that a reflection stabilizes its own wall first."""
        a2 = shipped("a2")
        facet = stabilized_facet(a2, a2.generator(0), 2)
        self.assertEqual(facet.type, frozenset({0}))
        self.assertTrue(facet.coset_rep.is_identity())
        affine = shipped("affine_a1")
        self.assertIsNone(stabilized_facet(affine, elem_from_word(affine, (0, 1)), 3))


class TestInvarianceUnderConjugation(unittest.TestCase):

    def test_invariants_are_class_functions(self):
        """Test that g w g^-1 has the same invariant vector as w for random g and w."""
        rng = random.Random(1234)
        for name, samples in (("a2", 100), ("b2", 50), ("affine_a1", 50), ("affine_a2", 50),
                              ("triangle_23inf", 100)):
            sys_ = shipped(name)
            for _ in range(samples):
                w = elem_from_word(sys_, [rng.randrange(sys_.rank) for _ in range(rng.randint(0, 5))])
                g = elem_from_word(sys_, [rng.randrange(sys_.rank) for _ in range(rng.randint(0, 4))])
                conjugate = sys_.conjugate(g, w)
                with self.subTest(system=name, w=w.word, g=g.word):
                    self.assertIsNone(invariants(sys_, w).first_difference(invariants(sys_, conjugate)))


if __name__ == "__main__":
    unittest.main()
