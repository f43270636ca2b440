import unittest

from mbfun.errors import SignatureError
from mbfun.exact import polynomial_ring
from mbfun.mero.sections import LaurentSection, SectionContext, add_sections, apply_operator
from mbfun.weyl import AlgebraSignature, WeylElement


class TestSections(unittest.TestCase):
    """Tests des sections h·F^{-α}G^{-β}·f^{s+k} pour f = x/y."""

    def setUp(self):
        self.x, self.y = polynomial_ring(["x", "y"]).gens
        self.context = SectionContext(self.x, self.y)
        self.s = self.context.s
        self.D = self.context.operator_signature

    def test_context(self):
        """Test de l'anneau Q[x, y, s] et des dérivées."""
        self.assertEqual(self.context.variables, ("x", "y"))
        self.assertEqual(self.context.n, 2)
        self.assertEqual(self.context.dG[1], self.context.ring.one)

    def test_derivative_in_y(self):
        """Test de ∂_y f^s = -s·f^s / y."""
        derivative = LaurentSection.power(self.context).derivative(1, self.context)
        expected = LaurentSection(-self.s, 0, 1, 0)
        self.assertTrue(derivative.equals(expected, self.context))

    def test_shift_renormalization(self):
        """Test de f^{s+1} = x·y^{-1}·f^s."""
        shifted = LaurentSection.power(self.context, 0, 1).renormalize(self.context)
        self.assertEqual(shifted, LaurentSection(self.context.lift(self.x), 0, 1, 0))

    def test_apply_operator(self):
        """Test de y∂_x·f^{s+1} = (s + 1)·f^s."""
        P = WeylElement.generator(self.D, "y") * WeylElement.generator(self.D, "dx")
        image = apply_operator(P, LaurentSection.power(self.context, 0, 1), self.context)
        self.assertTrue(image.equals(LaurentSection(self.s + 1, 0, 0, 0), self.context))

    def test_apply_operator_with_pole(self):
        """Test de y∂_x·(f^{s+1}/y) = (s + 1)·f^s/y."""
        P = WeylElement.generator(self.D, "y") * WeylElement.generator(self.D, "dx")
        image = apply_operator(P, LaurentSection.power(self.context, 1, 1), self.context)
        self.assertTrue(image.equals(LaurentSection(self.s + 1, 0, 1, 0), self.context))

    def test_apply_operator_wrong_algebra(self):
        """Test d'un opérateur d'une autre algèbre."""
        other = WeylElement.generator(AlgebraSignature.weyl(("x",), ("s",)), "x")
        with self.assertRaises(SignatureError):
            apply_operator(other, LaurentSection.power(self.context), self.context)

    def test_add_sections(self):
        """Test de f^s/y + f^s = (1 + y)·f^s/y."""
        total = add_sections(
            [LaurentSection(self.context.ring.one, 0, 1, 0), LaurentSection.power(self.context)],
            self.context,
        )
        self.assertTrue(total.equals(LaurentSection(1 + self.context.lift(self.y), 0, 1, 0), self.context))

    def test_lift_to_smaller_denominator(self):
        """Test d'un dénominateur plus petit."""
        section = LaurentSection(self.context.ring.one, 1, 1, 0)
        with self.assertRaises(ValueError):
            section.lift_to(0, 1, self.context)

    def test_invalid_context(self):
        """Test de G = 0 et de la variable s."""
        with self.assertRaises(ValueError):
            SectionContext(self.x, self.x.ring.zero)
        R = polynomial_ring(["s", "x"])
        with self.assertRaises(ValueError):
            SectionContext(R.gens[1], R.gens[0])


if __name__ == "__main__":
    unittest.main()
