import unittest

from mbfun.annihilator import (
    PowerProductSymbol,
    ann_fs,
    bernstein_sato,
    check_coprime,
    check_variable_names,
    sabbah_line,
)
from mbfun.errors import CapabilityError
from mbfun.exact import BFunction, polynomial_ring, rational
from mbfun.groebner import groebner_left
from mbfun.weyl import AlgebraSignature, WeylElement


class TestAnnihilator(unittest.TestCase):
    """Tests de l'annulateur de f^s."""

    def setUp(self):
        self.R = polynomial_ring(["x"])
        self.x = self.R.gens[0]

    def test_euler_operator(self):
        """Test de x∂ - 2s ∈ Ann (x²)^s."""
        ideal = groebner_left(ann_fs(PowerProductSymbol(((self.x ** 2, "s"),))))
        D = AlgebraSignature.weyl(("x",), ("s",))
        self.assertEqual(ideal.signature, D)
        x = WeylElement.generator(D, "x")
        dx = WeylElement.generator(D, "dx")
        s = WeylElement.generator(D, "s")
        self.assertTrue(ideal.contains(x * dx - 2 * s))
        self.assertFalse(ideal.contains(dx))

    def test_symbol_validation(self):
        """Test des paramètres dupliqués et des facteurs nuls."""
        with self.assertRaises(ValueError):
            PowerProductSymbol(((self.x, "s1"), (self.x + 1, "s1")))
        with self.assertRaises(ValueError):
            PowerProductSymbol(((self.R.zero, "s"),))

    def test_too_many_variables(self):
        """Test de la borne sur le nombre de variables."""
        R = polynomial_ring(["a", "b", "c", "e"])
        a, b, c, e = R.gens
        with self.assertRaises(CapabilityError):
            ann_fs(PowerProductSymbol(((a * b * c * e, "s"),)))

    def test_degree_bound(self):
        """Test de la borne sur le degré total."""
        with self.assertRaises(CapabilityError):
            ann_fs(PowerProductSymbol(((self.x ** 7, "s"),)))

    def test_reserved_names(self):
        """Test des noms de variables réservés."""
        for name in ("s", "t", "dx", "s2", "h"):
            with self.assertRaises(ValueError):
                check_variable_names([name])
        check_variable_names(["x", "y", "z", "u1"])


class TestBernsteinSato(unittest.TestCase):
    """Tests du polynôme de Bernstein-Sato classique."""

    def test_monomial_battery(self):
        """Test de b_{x^a}(s) = ∏_{k=1..a} (s + k/a) pour a = 1..4."""
        x = polynomial_ring(["x"]).gens[0]
        for a in range(1, 5):
            with self.subTest(a=a):
                expected = BFunction.from_roots((rational(-k, a), 1) for k in range(1, a + 1))
                self.assertEqual(bernstein_sato(x ** a), expected)

    def test_two_variables(self):
        """Test de b(s) = (s + 1)² pour x² + y²."""
        x, y = polynomial_ring(["x", "y"]).gens
        self.assertEqual(bernstein_sato(x ** 2 + y ** 2), BFunction.from_roots([(-1, 2)]))

    def test_normal_crossing(self):
        """Test de b(s) = (s + 1)² pour xy."""
        x, y = polynomial_ring(["x", "y"]).gens
        self.assertEqual(bernstein_sato(x * y), BFunction.from_roots([(-1, 2)]))

    def test_constant_rejected(self):
        """Test d'un polynôme constant."""
        R = polynomial_ring(["x"])
        with self.assertRaises(ValueError):
            bernstein_sato(R(3))

    def test_nonvanishing_at_origin(self):
        """Test de F(0) ≠ 0 : calcul global (b = s + 1 pour x + 1)."""
        x = polynomial_ring(["x"]).gens[0]
        with self.assertLogs("mbfun.annihilator", level="WARNING"):
            b = bernstein_sato(x + 1)
        self.assertEqual(b, BFunction.from_roots([(-1, 1)]))


class TestBernsteinSatoThreeVariables(unittest.TestCase):
    """Calcul plus lourd : somme de trois carrés."""

    def test_sum_of_squares(self):
        """Test de b(s) = (s + 1)(s + 3/2) pour x² + y² + z²."""
        x, y, z = polynomial_ring(["x", "y", "z"]).gens
        expected = BFunction.from_roots([(-1, 1), (rational(-3, 2), 1)])
        self.assertEqual(bernstein_sato(x ** 2 + y ** 2 + z ** 2), expected)


class TestTwoFactors(unittest.TestCase):
    """Tests pour le couple (F, G)."""

    def setUp(self):
        self.x, self.y = polynomial_ring(["x", "y"]).gens

    def test_coprime(self):
        """Test de la détection d'un facteur commun."""
        check_coprime(self.x, self.y)
        with self.assertRaises(ValueError):
            check_coprime(self.x * self.y, self.x)
        with self.assertRaises(ValueError):
            check_coprime(self.x, self.x.ring.zero)

    def test_sabbah_line(self):
        """Test de (s1 + 1)(s2 + 1) restreint à s1 = s, s2 = -s-2 : (s + 1)²."""
        self.assertEqual(sabbah_line(self.x, self.y, 0), BFunction.from_roots([(-1, 2)]))

    def test_sabbah_line_cusp_quotient(self):
        """Test de x³, y² : ∏(s1 + k/3)·∏(s2 + j/2) en s2 = -s-2."""
        expected = BFunction.from_roots([
            (rational(-3, 2), 1), (-1, 2), (rational(-2, 3), 1), (rational(-1, 3), 1),
        ])
        self.assertEqual(sabbah_line(self.x ** 3, self.y ** 2, 0), expected)

    def test_sabbah_line_constant_denominator(self):
        """Test de G constant : on retrouve b_F."""
        one = self.x.ring.one
        self.assertEqual(sabbah_line(self.x ** 2, one, 1), bernstein_sato(self.x ** 2))

    def test_sabbah_line_negative_order(self):
        """Test d'un ordre négatif."""
        with self.assertRaises(ValueError):
            sabbah_line(self.x, self.y, -1)


if __name__ == "__main__":
    unittest.main()
