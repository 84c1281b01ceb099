"""
Tests for Coxeter systems, words, folding and Cayley balls (reflectrace/coxeter.py)
"""

import unittest
import random
import os

import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from reflectrace.config import load_system
from reflectrace.coxeter import (
    AFFINE,
    FINITE,
    INDEFINITE,
    INF,
    CayleyBall,
    ConePoint,
    CoxeterMatrix,
    abelianization_class,
    act,
    ball,
    build_system,
    canonical_word,
    elem_from_word,
    element_order,
    fold,
    is_spherical,
    length,
    parse_label,
    point_reflect,
    right_descents,
)
from reflectrace.errors import CapExceededError, FoldError, UnsupportedLabelError
from reflectrace.scalars import QScalar


def shipped(name):
    return load_system(name).build()


def point(*values):
    return ConePoint(tuple(QScalar.from_rational(v) for v in values))


class TestCoxeterMatrix(unittest.TestCase):

    def test_parse_label(self):
        """Test that labels accept integers and the spellings of infinity."""
        self.assertEqual(parse_label("3"), 3)
        self.assertEqual(parse_label(" inf "), INF)
        self.assertEqual(parse_label("∞"), INF)
        self.assertEqual(parse_label(4.0), 4)
        with self.assertRaises(UnsupportedLabelError):
            parse_label("seven")

    def test_rejects_unsupported_label(self):
        """Test that labels outside 2..6 and inf are refused."""
        with self.assertRaises(UnsupportedLabelError):
            CoxeterMatrix.from_rows([[1, 7], [7, 1]])

    def test_rejects_malformed_matrix(self):
        """Test asymmetric rows and bad diagonals."""
        with self.assertRaises(ValueError):
            CoxeterMatrix.from_rows([[1, 3], [4, 1]])
        with self.assertRaises(ValueError):
            CoxeterMatrix.from_rows([[2, 3], [3, 1]])
        with self.assertRaises(ValueError):
            CoxeterMatrix.from_rows([[1, 3, 2], [3, 1]])

    def test_build_system_names(self):
        """Test default generator names and the distinctness check."""
        sys_ = build_system(CoxeterMatrix.from_rows([[1, 3], [3, 1]]))
        self.assertEqual(sys_.generators, ("s0", "s1"))
        self.assertEqual(sys_.generator_index("s1"), 1)
        with self.assertRaises(KeyError):
            sys_.generator_index("t")
        with self.assertRaises(ValueError):
            build_system(CoxeterMatrix.from_rows([[1, 3], [3, 1]]), ["a", "a"])


class TestClassification(unittest.TestCase):

    def test_shipped_types(self):
        """Test finite, affine and indefinite classification of the shipped systems."""
        expected = {
            "a1": FINITE,
            "a1xa1": FINITE,
            "a2": FINITE,
            "b2": FINITE,
            "g2": FINITE,
            "affine_a1": AFFINE,
            "affine_a2": AFFINE,
            "triangle_23inf": INDEFINITE,
        }
        for name, type_class in expected.items():
            with self.subTest(system=name):
                self.assertEqual(shipped(name).type_class, type_class)

    def test_spherical_subsets(self):
        """Test is_spherical on pairs with finite and infinite labels."""
        affine = shipped("affine_a1")
        self.assertTrue(is_spherical(affine, []))
        self.assertTrue(is_spherical(affine, [0]))
        self.assertFalse(is_spherical(affine, [0, 1]))
        triangle = shipped("triangle_23inf")
        self.assertTrue(is_spherical(triangle, [0, 2]))
        self.assertFalse(is_spherical(triangle, [1, 2]))
        self.assertFalse(is_spherical(triangle, [0, 1, 2]))

    def test_odd_components(self):
        """Test the abelianization coordinates from the odd-label graph."""
        a2 = shipped("a2")
        b2 = shipped("b2")
        self.assertEqual(a2.odd_component_list, ((0, 1),))
        self.assertEqual(b2.odd_component_list, ((0,), (1,)))
        self.assertEqual(abelianization_class(b2, elem_from_word(b2, (0, 1, 0))), (0, 1))
        self.assertEqual(abelianization_class(a2, elem_from_word(a2, (0, 1, 0))), (1,))


class TestElements(unittest.TestCase):

    def setUp(self):
        self.a2 = shipped("a2")
        self.affine = shipped("affine_a1")

    def test_braid_relation(self):
        """Test that sts and tst are the same element of A2."""
        sts = elem_from_word(self.a2, (0, 1, 0))
        tst = elem_from_word(self.a2, (1, 0, 1))
        self.assertEqual(sts, tst)
        self.assertEqual(hash(sts), hash(tst))
        self.assertEqual(canonical_word(self.a2, tst), (0, 1, 0))

    def test_words_concatenate(self):
        """Test that products concatenate witness words."""
        s = self.a2.generator(0)
        t = self.a2.generator(1)
        self.assertEqual((s * t).word, (0, 1))
        self.assertEqual(s * t, elem_from_word(self.a2, (0, 1)))

    def test_inverse(self):
        """Test that w times its inverse is the identity."""
        for word in [(0,), (0, 1), (1, 0, 1), (0, 1, 0, 1)]:
            w = elem_from_word(self.a2, word)
            self.assertTrue((w * self.a2.inverse(w)).is_identity())

    def test_canonical_word_in_infinite_dihedral(self):
        """Test that cancellations shorten the canonical word."""
        self.assertEqual(canonical_word(self.affine, elem_from_word(self.affine, (0, 1, 0, 0, 1))), (0,))
        self.assertEqual(canonical_word(self.affine, elem_from_word(self.affine, (0, 1, 0))), (0, 1, 0))
        self.assertEqual(length(self.affine, elem_from_word(self.affine, (1, 1))), 0)

    def test_right_descents(self):
        """Test descents of a reflection and of the longest element."""
        self.assertEqual(right_descents(self.a2, self.a2.generator(0)), frozenset({0}))
        self.assertEqual(right_descents(self.a2, elem_from_word(self.a2, (0, 1, 0))), frozenset({0, 1}))
        self.assertEqual(right_descents(self.a2, self.a2.identity), frozenset())

    def test_element_order(self):
        """Test orders of rotations and the cap for infinite order."""
        self.assertEqual(element_order(self.a2, elem_from_word(self.a2, (0, 1)), 48), 3)
        g2 = shipped("g2")
        self.assertEqual(element_order(g2, elem_from_word(g2, (0, 1)), 48), 6)
        self.assertIsNone(element_order(self.affine, elem_from_word(self.affine, (0, 1)), 48))
        self.assertEqual(element_order(self.a2, self.a2.identity, 1), 1)

    def test_word_index_out_of_range(self):
        """Test that a generator index beyond the rank is refused."""
        with self.assertRaises(IndexError):
            elem_from_word(self.a2, (0, 2))


class TestConePoints(unittest.TestCase):

    def setUp(self):
        self.affine = shipped("affine_a1")

    def test_reflect_negates_own_coordinate(self):
        """Test that s flips the sign of the s-th pairing."""
        p = point_reflect(self.affine, 0, point(2, 1))
        self.assertEqual(p.coords[0], QScalar.from_rational(-2))

    def test_act_matches_reflections(self):
        """Test act against a manual composition of reflections."""
        w = elem_from_word(self.affine, (0, 1))
        p = point(2, 3)
        manual = point_reflect(self.affine, 0, point_reflect(self.affine, 1, p))
        self.assertEqual(act(self.affine, w, p), manual)

    def test_fold_one_step(self):
        """Test folding (3, -1) into the chamber."""
        g, q = fold(self.affine, point(3, -1))
        self.assertEqual(q, point(1, 1))
        self.assertEqual(g.word, (1,))
        self.assertEqual(act(self.affine, g, point(3, -1)), q)

    def test_fold_two_steps(self):
        """Test folding (5, -3), which crosses two walls."""
        g, q = fold(self.affine, point(5, -3))
        self.assertEqual(q, point(1, 1))
        self.assertEqual(g.word, (0, 1))
        self.assertTrue(q.is_dominant())

    def test_fold_dominant_point_is_fixed(self):
        """Test that a chamber point folds to itself with g = e."""
        g, q = fold(self.affine, point(1, 0))
        self.assertTrue(g.is_identity())
        self.assertEqual(q.zero_set(), frozenset({1}))

    def test_fold_outside_tits_cone(self):
        """Test that a point of level zero cannot be folded."""
        with self.assertRaises(FoldError):
            fold(self.affine, point(1, -1), cap=50)


class TestCayleyBall(unittest.TestCase):

    def test_finite_layers(self):
        """Test layer sizes and exhaustion of finite dihedral groups."""
        a2 = CayleyBall(shipped("a2")).extend_to(10)
        self.assertEqual([len(layer) for layer in a2.layers], [1, 2, 2, 1, 0])
        self.assertTrue(a2.exhausted)
        self.assertEqual(len(a2), 6)
        self.assertEqual(len(ball(shipped("b2"), 10)), 8)
        self.assertEqual(len(ball(shipped("g2"), 10)), 12)

    def test_infinite_dihedral(self):
        """Test that the infinite dihedral ball of radius L has 2L + 1 elements."""
        affine = shipped("affine_a1")
        for L in range(6):
            self.assertEqual(len(ball(affine, L)), 2 * L + 1)

    def test_affine_a2_layers(self):
        """Test the first layers of affine A2."""
        cayley = CayleyBall(shipped("affine_a2"))
        self.assertEqual([len(cayley.layer(k)) for k in range(3)], [1, 3, 6])
        self.assertEqual(len(cayley.elements(2)), 10)
        self.assertFalse(cayley.exhausted)

    def test_words_are_reduced(self):
        """Test that every element of a layer carries a word of that length."""
        sys_ = shipped("triangle_23inf")
        cayley = CayleyBall(sys_)
        for k in range(5):
            for w in cayley.layer(k):
                self.assertEqual(len(w.word), k)
                self.assertEqual(length(sys_, w), k)

    def test_cap(self):
        """Test that outgrowing the cap raises CapExceededError."""
        with self.assertRaises(CapExceededError):
            CayleyBall(shipped("affine_a2"), cap=5).extend_to(2)

    def test_negative_radius(self):
        """Test that a negative radius is refused."""
        with self.assertRaises(ValueError):
            ball(shipped("a1"), -1)

    def test_from_layers(self):
        """Test that a ball rebuilt from its layers has the same members."""
        sys_ = shipped("affine_a2")
        original = CayleyBall(sys_).extend_to(3)
        rebuilt = CayleyBall.from_layers(sys_, original.layers)
        self.assertEqual(rebuilt.radius, 3)
        self.assertEqual(len(rebuilt), len(original))
        for w in original.elements(3):
            self.assertIn(w, rebuilt)


class TestProperties(unittest.TestCase):
    """Seeded property checks on random words and points."""

    SYSTEMS = ("a2", "b2", "g2", "affine_a1", "affine_a2", "triangle_23inf")

    def random_element(self, rng, sys_, max_length):
        word = [rng.randrange(sys_.rank) for _ in range(rng.randint(0, max_length))]
        return elem_from_word(sys_, word)

    def test_reflections_are_involutions(self):
        """Test s^2 = e for every generator of every system."""
        for name in self.SYSTEMS:
            sys_ = shipped(name)
            for s in range(sys_.rank):
                self.assertTrue((sys_.generator(s) * sys_.generator(s)).is_identity())

    def test_elements_preserve_form(self):
        """Test M^T B M = B for random elements."""
        rng = random.Random(20240)
        for name in self.SYSTEMS:
            sys_ = shipped(name)
            B = sys_.bilinear_form
            for _ in range(20):
                M = self.random_element(rng, sys_, 8).matrix
                with self.subTest(system=name):
                    self.assertEqual(M.transpose() @ B @ M, B)

    def test_fold_is_orbit_canonical(self):
        """Test that any translate of a chamber point folds back onto it."""
        rng = random.Random(7)
        for name in ("a2", "g2", "affine_a1", "affine_a2"):
            sys_ = shipped(name)
            for _ in range(50):
                p = point(*(rng.choice([0, 1, 2, 5]) for _ in range(sys_.rank)))
                moved = act(sys_, self.random_element(rng, sys_, 6), p)
                g, q = fold(sys_, moved)
                with self.subTest(system=name):
                    self.assertEqual(q, p)
                    self.assertEqual(act(sys_, g, moved), q)

    def test_canonical_words_are_reduced(self):
        """Test that canonical words have the BFS length and that s changes length by one."""
        for name in ("a2", "affine_a1", "triangle_23inf"):
            sys_ = shipped(name)
            cayley = CayleyBall(sys_).extend_to(5)
            for k in range(6):
                for w in cayley.layer(k):
                    word = canonical_word(sys_, w)
                    with self.subTest(system=name, w=word):
                        self.assertEqual(len(word), k)
                        self.assertEqual(length(sys_, w), k)
                        self.assertEqual(elem_from_word(sys_, word).matrix, w.matrix)
                        descents = right_descents(sys_, w)
                        for s in range(sys_.rank):
                            expected = k - 1 if s in descents else k + 1
                            self.assertEqual(length(sys_, sys_.times_generator(w, s)), expected)


if __name__ == "__main__":
    unittest.main()
