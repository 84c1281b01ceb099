"""
Tests for presentations, Tietze simplification and recognition (reflectrace/presentations.py)
"""

import unittest
import random
import os

import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from reflectrace.coxeter import INF, CoxeterMatrix
from reflectrace.presentations import (
    COXETER,
    UNKNOWN,
    Presentation,
    abelianization,
    canonical_cyclic,
    coxeter_matrices_isomorphic,
    coxeter_name,
    coxeter_relators,
    cyclic,
    cyclic_reduce,
    default_names,
    direct_product,
    free_reduce,
    infinite_cyclic,
    invert,
    match_coxeter,
    recognize,
    spell,
    syllables,
    tietze_simplify,
    todd_coxeter_order,
)


def dihedral(m):
    return Presentation(2, [(1, 1), (2, 2), (1, 2) * m])


class TestWords(unittest.TestCase):

    def test_free_and_cyclic_reduction(self):
        """Test cancellation inside a word and across its ends."""
        self.assertEqual(free_reduce((1, 2, -2, -1, 3)), (3,))
        self.assertEqual(cyclic_reduce((-1, 2, 3, 1)), (2, 3))
        self.assertEqual(invert((1, -2, 3)), (-3, 2, -1))

    def test_canonical_cyclic(self):
        """Test that rotations and inverses share one canonical form."""
        word = (1, 2, 1, -2)
        forms = {canonical_cyclic(word[i:] + word[:i]) for i in range(4)}
        forms.add(canonical_cyclic(invert(word)))
        self.assertEqual(forms, {(1, 2, 1, -2)})
        self.assertEqual(canonical_cyclic((1, -1)), ())

    def test_syllables_and_spelling(self):
        """Test syllable splitting and the printed form of a word."""
        self.assertEqual(syllables((1, 1, -2, 3, 3, 3)), [(1, 2), (2, -1), (3, 3)])
        self.assertEqual(spell((1, 1, -2), ("a", "b")), "a^2 b^-1")
        self.assertEqual(spell((), ("a",)), "1")
        self.assertEqual(default_names(3), ("a", "b", "c"))
        self.assertEqual(default_names(30)[0], "x1")

    def test_presentation_validation(self):
        """Test that relators must use existing generators."""
        with self.assertRaises(ValueError):
            Presentation(1, [(1, 2)])
        with self.assertRaises(ValueError):
            Presentation(2, [(1, 0)])
        self.assertEqual(Presentation(2, [(1, 1)]).origin, (1, 2))
        self.assertEqual(str(Presentation(2, [(1, 1), (1, 2, -1, -2)])), "<a, b | a^2, a b a^-1 b^-1>")


class TestAbelianization(unittest.TestCase):

    def test_dihedral(self):
        """Test that odd dihedral groups abelianize to Z/2."""
        invariants = abelianization(dihedral(3))
        self.assertEqual(invariants.torsion, (2,))
        self.assertEqual(invariants.free_rank, 0)
        self.assertEqual(invariants.order, 2)

    def test_even_dihedral(self):
        """Test that even dihedral groups abelianize to Z/2 + Z/2."""
        self.assertEqual(abelianization(dihedral(4)).torsion, (2, 2))

    def test_free_group(self):
        """Test that a free group abelianizes to free abelian."""
        invariants = abelianization(Presentation(2))
        self.assertEqual(invariants.free_rank, 2)
        self.assertIsNone(invariants.order)
        self.assertEqual(str(invariants), "Z + Z")

    def test_invariant_factors(self):
        """Test that Z/2 + Z/3 is reported as Z/6."""
        invariants = abelianization(Presentation(2, [(1, 1), (2, 2, 2), (1, 2, -1, -2)]))
        self.assertEqual(invariants.torsion, (6,))
        self.assertEqual(abelianization(Presentation(3, [(1, 1), (2,) * 4, (3,) * 6])).torsion, (2, 2, 12))

    def test_preserved_by_tietze(self):
        """Test that simplification keeps the abelianization of seeded random presentations."""
        rng = random.Random(4242)
        for _ in range(60):
            n = rng.randint(1, 3)
            relators = [
                tuple(rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(1, 6)))
                for _ in range(rng.randint(0, 4))
            ]
            P = Presentation(n, relators)
            with self.subTest(presentation=str(P)):
                self.assertEqual(abelianization(tietze_simplify(P)), abelianization(P))


class TestTietze(unittest.TestCase):

    def test_eliminates_redundant_generator(self):
        """Test that y = x is eliminated, keeping the higher-priority x."""
        simplified = tietze_simplify(Presentation(2, [(1, -2), (1, 1, 1)]))
        self.assertEqual(simplified.generator_count, 1)
        self.assertEqual(simplified.origin, (1,))
        self.assertEqual(simplified.relators, ((1, 1, 1),))

    def test_priority_decides_survivor(self):
        """Test that the priority order picks which generator survives."""
        simplified = tietze_simplify(Presentation(2, [(1, -2), (1, 1, 1)]), priority=[2, 1])
        self.assertEqual(simplified.origin, (2,))

    def test_inverse_of_involution(self):
        """Test that x^-1 is rewritten as x when x^2 = 1."""
        simplified = tietze_simplify(Presentation(2, [(1, 1), (1, 2, -1, -2)]))
        self.assertIn((1, 2, 1, -2), simplified.relators)

    def test_coxeter_presentation_is_fixed(self):
        """Test that a Coxeter presentation is already simplified."""
        simplified = tietze_simplify(dihedral(3))
        self.assertEqual(simplified.generator_count, 2)
        self.assertEqual(set(simplified.relators), {(1, 1), (2, 2), (1, 2, 1, 2, 1, 2)})

    def test_triangle_presentation(self):
        """Test that three generators with one identification drop to two."""
        P = Presentation(3, [(1, 1), (2, 2), (3, 3), (1, -3), (1, 2) * 3])
        simplified = tietze_simplify(P)
        self.assertEqual(simplified.generator_count, 2)
        self.assertEqual(recognize(simplified).render(), "G(6)")


class TestCoxeterMatching(unittest.TestCase):

    def test_match_dihedral(self):
        """Test reading a dihedral presentation as a Coxeter matrix."""
        matrix = match_coxeter(dihedral(4))
        self.assertEqual(matrix[0, 1], 4)
        self.assertIsNone(match_coxeter(Presentation(2, [(1, 1), (1, 2, -1, -2)])))
        self.assertIsNone(match_coxeter(Presentation(2, [(1, 1)])))

    def test_match_free_product(self):
        """Test that missing pair relators mean an infinite label."""
        matrix = match_coxeter(Presentation(2, [(1, 1), (2, 2)]))
        self.assertEqual(matrix[0, 1], INF)

    def test_names(self):
        """Test the printed names of small Coxeter matrices."""
        self.assertEqual(coxeter_name(CoxeterMatrix.from_rows([[1]])), "A1")
        self.assertEqual(coxeter_name(CoxeterMatrix.from_rows([[1, "inf"], ["inf", 1]])), "inf-dihedral")
        self.assertEqual(coxeter_name(CoxeterMatrix.from_rows([[1, 5], [5, 1]])), "I2(5)")
        triangle = CoxeterMatrix.from_rows([[1, 2, 3], [2, 1, "inf"], [3, "inf", 1]])
        self.assertEqual(coxeter_name(triangle), "triangle(2,3,inf)")

    def test_isomorphic_up_to_renaming(self):
        """Test isomorphism of Coxeter matrices under generator permutations."""
        a = CoxeterMatrix.from_rows([[1, 2, 3], [2, 1, "inf"], [3, "inf", 1]])
        b = CoxeterMatrix.from_rows([[1, "inf", 2], ["inf", 1, 3], [2, 3, 1]])
        c = CoxeterMatrix.from_rows([[1, 3, 3], [3, 1, 3], [3, 3, 1]])
        self.assertTrue(coxeter_matrices_isomorphic(a, b))
        self.assertFalse(coxeter_matrices_isomorphic(a, c))
        self.assertFalse(coxeter_matrices_isomorphic(a, CoxeterMatrix.from_rows([[1]])))

    def test_coxeter_relators(self):
        """Test the relators of A2."""
        relators = coxeter_relators(CoxeterMatrix.from_rows([[1, 3], [3, 1]]))
        self.assertEqual(relators, ((1, 1), (2, 2), (1, 2, 1, 2, 1, 2)))


class TestRecognize(unittest.TestCase):

    def test_small_groups(self):
        """Test recognition of the groups that occur as stabilizer groups."""
        cases = [
            (Presentation(0), "1"),
            (Presentation(1), "Z"),
            (Presentation(1, [(1, 1, 1)]), "C3"),
            (Presentation(1, [(1,) * 4, (1,) * 6]), "C2"),
            (Presentation(1, [(1, -1)]), "Z"),
            (dihedral(2), "C2×C2"),
            (dihedral(3), "G(6)"),
            (Presentation(2, [(1, 1), (2, 2)]), "W(inf-dihedral)"),
            (Presentation(2, [(1, 1), (1, 2, -1, -2)]), "C2×Z"),
            (Presentation(3, [(1, 1), (2, 2), (3, 3), (1, 2, 1, 2), (1, 3, 1, 3), (2, 3, 2, 3)]), "C2×C2×C2"),
        ]
        for P, expected in cases:
            with self.subTest(presentation=str(P)):
                self.assertEqual(recognize(P).render(), expected)

    def test_cyclic_via_coset_enumeration(self):
        """Test that a two-generator cyclic group is recognized as cyclic."""
        P = Presentation(2, [(1,) * 3, (2, 2), (1, 2, -1, -2)])
        self.assertEqual(recognize(P, simplify=False).render(), "C6")

    def test_infinite_coxeter_tag(self):
        """Test that a hyperbolic triangle presentation keeps its Coxeter tag."""
        P = Presentation(3, [(1, 1), (2, 2), (3, 3), (1, 2, 1, 2), (1, 3) * 3])
        tag = recognize(P)
        self.assertEqual(tag.kind, COXETER)
        self.assertEqual(tag.render(), "W(triangle(2,3,inf))")

    def test_unknown_past_cap(self):
        """Test that an infinite non-Coxeter group is Unknown, never guessed."""
        P = Presentation(2, [(1,) * 3, (2,) * 3])
        tag = recognize(P, coset_cap=200)
        self.assertEqual(tag.kind, UNKNOWN)
        self.assertFalse(tag.is_known())

    def test_todd_coxeter_order(self):
        """Test coset enumeration on finite groups and the cap."""
        self.assertEqual(todd_coxeter_order(dihedral(3)), 6)
        self.assertEqual(todd_coxeter_order(dihedral(6)), 12)
        self.assertEqual(todd_coxeter_order(Presentation(0)), 1)
        self.assertIsNone(todd_coxeter_order(Presentation(2, [(1, 1), (2, 2)]), coset_cap=100))

    def test_tag_orders(self):
        """Test the order attached to each tag."""
        self.assertEqual(direct_product(cyclic(2), cyclic(3)).order, 6)
        self.assertIsNone(direct_product(cyclic(2), infinite_cyclic()).order)
        self.assertEqual(cyclic(1).render(), "1")
        self.assertEqual(str(direct_product(cyclic(2), infinite_cyclic())), "C2×Z")


if __name__ == "__main__":
    unittest.main()
