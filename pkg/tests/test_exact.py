import unittest
from fractions import Fraction

from mbfun.exact import (
    BFunction,
    floor_rational,
    format_poly,
    format_rational,
    fractional_part,
    is_integer,
    parse_rational,
    poly_divides,
    polynomial_ring,
    rational,
    rational_roots,
    s_ring,
    substitute_affine,
)


class TestRational(unittest.TestCase):
    """Tests des rationnels exacts et de leur format "p/q"."""

    def test_reduced_terms(self):
        """Test de la réduction p/q."""
        self.assertEqual(rational(6, 4), rational(3, 2))
        self.assertEqual(rational(Fraction(1, 3)), rational(1, 3))

    def test_zero_denominator(self):
        """Test d'un dénominateur nul."""
        with self.assertRaises(ZeroDivisionError):
            rational(1, 0)

    def test_format(self):
        """Test du format : entiers sans dénominateur, signe au numérateur."""
        self.assertEqual(format_rational(rational(-1, 2)), "-1/2")
        self.assertEqual(format_rational(rational(4, 2)), "2")
        self.assertEqual(format_rational(0), "0")

    def test_parse(self):
        """Test de la lecture et du retour au texte."""
        for text in ("-2/3", "5", "0", "7/9"):
            self.assertEqual(format_rational(parse_rational(text)), text)
        self.assertEqual(parse_rational("4/6"), rational(2, 3))

    def test_parse_invalid(self):
        """Test d'un texte invalide."""
        for text in ("1/2/3", "a", "1.5", ""):
            with self.assertRaises(ValueError):
                parse_rational(text)

    def test_floor_and_fraction(self):
        """Test des parties entière et fractionnaire."""
        self.assertEqual(floor_rational(rational(-1, 3)), -1)
        self.assertEqual(floor_rational(rational(7, 2)), 3)
        self.assertEqual(fractional_part(rational(-1, 3)), rational(2, 3))
        self.assertEqual(fractional_part(-2), 0)
        self.assertTrue(is_integer(rational(4, 2)))
        self.assertFalse(is_integer(rational(1, 2)))


class TestPolynomials(unittest.TestCase):
    """Tests des outils polynomiaux."""

    def setUp(self):
        self.R = s_ring()
        self.s = self.R.gens[0]

    def test_ring_requires_variables(self):
        """Test d'un anneau sans variable."""
        with self.assertRaises(ValueError):
            polynomial_ring([])

    def test_substitute_affine(self):
        """Test de p(-s-1) pour p(θ) = θ(θ + 1/2)."""
        p = self.s * (self.s + rational(1, 2))
        image = substitute_affine(p, -1, -1)
        self.assertEqual(image, (self.s + 1) * (self.s + rational(1, 2)))

    def test_rational_roots(self):
        """Test des racines rationnelles et du reste irréductible."""
        p = (self.s + 1) ** 2 * (2 * self.s - 1) * (self.s ** 2 + 1)
        roots, remainder = rational_roots(p)
        self.assertEqual(roots, [(rational(-1), 2), (rational(1, 2), 1)])
        self.assertEqual(remainder.degree(), 2)

    def test_rational_roots_zero(self):
        """Test du polynôme nul."""
        with self.assertRaises(ValueError):
            rational_roots(self.R.zero)

    def test_poly_divides(self):
        """Test de la divisibilité exacte."""
        self.assertTrue(poly_divides(self.s + 1, self.s ** 2 - 1))
        self.assertFalse(poly_divides(self.s + 2, self.s ** 2 - 1))
        with self.assertRaises(ValueError):
            poly_divides(self.R.zero, self.s)

    def test_format_poly(self):
        """Test de l'affichage avec '^'."""
        x, y = polynomial_ring(["x", "y"]).gens
        self.assertEqual(format_poly(x ** 2 + y), "x^2 + y")


class TestBFunction(unittest.TestCase):
    """Tests de la classe BFunction."""

    def setUp(self):
        self.s = s_ring().gens[0]
        self.b = BFunction.from_roots([(rational(-1, 2), 1), (-1, 1)])

    def test_from_poly_is_monic(self):
        """Test de la normalisation unitaire."""
        b = BFunction.from_poly(2 * self.s + 1)
        self.assertEqual(b.poly, self.s + rational(1, 2))
        self.assertEqual(b.roots, ((rational(-1, 2), 1),))

    def test_zero_rejected(self):
        """Test d'une b-fonction nulle."""
        with self.assertRaises(ValueError):
            BFunction.from_poly(s_ring().zero)

    def test_roots(self):
        """Test des racines triées et de la racine maximale."""
        self.assertEqual(self.b.roots_list(), [rational(-1), rational(-1, 2)])
        self.assertEqual(self.b.max_root(), rational(-1, 2))
        self.assertEqual(self.b.degree, 2)

    def test_multiplicities(self):
        """Test des racines répétées."""
        b = BFunction.from_roots([(-1, 2)])
        self.assertEqual(b.roots_list(), [rational(-1), rational(-1)])
        self.assertEqual(b.root_set(), [rational(-1)])
        self.assertEqual(str(b), "(s + 1)^2")

    def test_not_split(self):
        """Test d'un polynôme non scindé sur Q."""
        b = BFunction.from_poly(self.s ** 2 + 1)
        self.assertFalse(b.is_split)
        self.assertIsNone(b.to_dict()["roots"])
        with self.assertRaises(ValueError):
            b.roots_list()

    def test_evaluate_and_divides(self):
        """Test de l'évaluation et de la divisibilité."""
        self.assertEqual(self.b.evaluate(-1), 0)
        self.assertEqual(self.b.evaluate(0), rational(1, 2))
        factor = BFunction.from_roots([(-1, 1)])
        self.assertTrue(factor.divides(self.b))
        self.assertFalse(self.b.divides(factor))

    def test_quotient_by_root(self):
        """Test de la division par s - r."""
        self.assertEqual(self.b.quotient_by_root(-1), BFunction.from_roots([(rational(-1, 2), 1)]))
        with self.assertRaises(ValueError):
            self.b.quotient_by_root(2)

    def test_to_dict(self):
        """Test de la sérialisation : rationnels en texte."""
        data = self.b.to_dict()
        self.assertEqual(data["degree"], 2)
        self.assertEqual(data["coefficients"], ["1", "3/2", "1/2"])
        self.assertEqual(data["roots"], [
            {"root": "-1", "multiplicity": 1},
            {"root": "-1/2", "multiplicity": 1},
        ])

    def test_str(self):
        """Test de l'affichage factorisé."""
        self.assertEqual(str(self.b), "(s + 1/2)*(s + 1)")


if __name__ == "__main__":
    unittest.main()
