import unittest

from mbfun.errors import CapabilityError, SignatureError
from mbfun.exact import rational, s_ring
from mbfun.groebner import (
    LeftIdeal,
    MonomialOrder,
    eliminate,
    first_linear_dependency,
    groebner_left,
    initial_ideal_weight,
    minimal_polynomial,
)
from mbfun.weyl import AlgebraSignature, WeylElement


class TestLeftGroebner(unittest.TestCase):
    """Tests des bases de Gröbner à gauche dans D_1[s]."""

    def setUp(self):
        self.D = AlgebraSignature.weyl(("x",), ("s",))
        self.x = WeylElement.generator(self.D, "x")
        self.dx = WeylElement.generator(self.D, "dx")
        self.s = WeylElement.generator(self.D, "s")

    def test_elimination_gives_s_plus_one(self):
        """Test de ⟨x∂ - s, x⟩ ∩ Q[s] = ⟨s + 1⟩ (car ∂·x - (x∂ - s) = s + 1)."""
        ideal = LeftIdeal(self.D, [self.x * self.dx - self.s, self.x])
        eliminated = eliminate(ideal, ["x", "dx"])
        self.assertEqual(eliminated.signature.generators, ("s",))
        polys = [g.to_polynomial(s_ring()) for g in eliminated.generators]
        s = s_ring().gens[0]
        self.assertEqual(polys, [s + 1])

    def test_elimination_gives_s(self):
        """Test de ⟨x∂ - s, ∂⟩ ∩ Q[s] = ⟨s⟩ (car s = x·∂ - (x∂ - s))."""
        ideal = LeftIdeal(self.D, [self.x * self.dx - self.s, self.dx])
        eliminated = eliminate(ideal, ["x", "dx"])
        s = s_ring().gens[0]
        self.assertEqual([g.to_polynomial(s_ring()) for g in eliminated.generators], [s])

    def test_elimination_zero(self):
        """Test de ⟨x∂ - s⟩ ∩ Q[s] = 0."""
        eliminated = eliminate(LeftIdeal(self.D, [self.x * self.dx - self.s]), ["x", "dx"])
        self.assertEqual([g for g in eliminated.generators if not g.is_zero()], [])

    def test_membership(self):
        """Test d'appartenance par réduction à zéro."""
        ideal = groebner_left(LeftIdeal(self.D, [self.x * self.dx - self.s, self.x]))
        self.assertTrue(ideal.contains(self.s + 1))
        self.assertTrue(ideal.contains(self.dx * self.x ** 2))
        self.assertFalse(ideal.contains(self.dx))

    def test_unit_ideal(self):
        """Test de ⟨∂, x⟩ = D (car ∂x - x∂ = 1)."""
        ideal = groebner_left(LeftIdeal(self.D, [self.dx, self.x]))
        self.assertEqual(len(ideal), 1)
        self.assertTrue(ideal.contains(WeylElement.constant(self.D, 1)))

    def test_left_ideal_is_not_right_ideal(self):
        """Test : x∂ ∈ D·∂ mais ∂x = x∂ + 1 n'y est pas."""
        ideal = groebner_left(LeftIdeal(self.D, [self.dx]))
        self.assertTrue(ideal.contains(self.x * self.dx))
        self.assertFalse(ideal.contains(self.dx * self.x))

    def test_invalid_elimination(self):
        """Test de l'élimination de x sans ∂."""
        ideal = LeftIdeal(self.D, [self.x])
        with self.assertRaises(SignatureError):
            eliminate(ideal, ["x"])

    def test_degree_cap(self):
        """Test du plafond de degré."""
        ideal = LeftIdeal(self.D, [self.x ** 3 * self.dx - self.s])
        with self.assertRaises(CapabilityError):
            groebner_left(ideal, max_degree=2)

    def test_mixed_generators(self):
        """Test de générateurs de deux algèbres."""
        other = WeylElement.generator(AlgebraSignature.weyl(("y",)), "y")
        with self.assertRaises(SignatureError):
            LeftIdeal(self.D, [self.x, other])


class TestOrders(unittest.TestCase):
    """Tests des ordres monomiaux et des formes initiales."""

    def setUp(self):
        self.A = AlgebraSignature.weyl(("x", "t"))
        self.x = WeylElement.generator(self.A, "x")
        self.t = WeylElement.generator(self.A, "t")
        self.dx = WeylElement.generator(self.A, "dx")
        self.dt = WeylElement.generator(self.A, "dt")

    def test_unknown_order(self):
        """Test d'un ordre inconnu."""
        with self.assertRaises(SignatureError):
            MonomialOrder("random")

    def test_inadmissible_weight(self):
        """Test du poids u(t) + u(∂t) < 0."""
        order = MonomialOrder.weight([0, -1, 0, 0])
        with self.assertRaises(SignatureError):
            order.check_admissible(self.A)

    def test_weight_length(self):
        """Test d'un vecteur de poids de mauvaise longueur."""
        with self.assertRaises(SignatureError):
            MonomialOrder.weight([1, 2]).check_admissible(self.A)

    def test_initial_ideal_of_t(self):
        """Test de in_{(-1,1)}⟨t - x⟩ : la forme initiale est -x (poids 0 > -1)."""
        ideal = LeftIdeal(self.A, [self.t - self.x])
        initial = initial_ideal_weight(ideal, [0, -1, 0, 1])
        self.assertTrue(initial.contains(WeylElement.generator(initial.signature, "x")))

    def test_initial_ideal_theta(self):
        """Test de in_{(-1,1)}⟨t∂t + 1⟩ ∋ θ + 1."""
        ideal = LeftIdeal(self.A, [self.t * self.dt + 1])
        initial = initial_ideal_weight(ideal, [0, -1, 0, 1])
        theta = WeylElement.generator(initial.signature, "t") * WeylElement.generator(initial.signature, "dt")
        self.assertTrue(initial.contains(theta + 1))


class TestLinearDependency(unittest.TestCase):
    """Tests de la recherche de dépendances linéaires."""

    def test_first_dependency(self):
        """Test de v2 = 2·v0 + v1."""
        vectors = [{(0,): rational(1)}, {(1,): rational(1)}, {(0,): rational(2), (1,): rational(1)}]
        self.assertEqual(first_linear_dependency(vectors), [2, 1])

    def test_independent(self):
        """Test de vecteurs libres."""
        self.assertIsNone(first_linear_dependency([{(0,): rational(1)}, {(1,): rational(1)}]))

    def test_minimal_polynomial(self):
        """Test du polynôme minimal de s modulo ⟨s² - 1/4⟩ : s² - 1/4."""
        D = AlgebraSignature.weyl(("x",), ("s",))
        s = WeylElement.generator(D, "s")
        ideal = groebner_left(LeftIdeal(D, [s * s - rational(1, 4)]))
        coefficients = minimal_polynomial(lambda k: s ** k, ideal.normal_form, 4)
        self.assertEqual(coefficients, [rational(-1, 4), 0, 1])

    def test_minimal_polynomial_cap(self):
        """Test d'un élément sans polynôme minimal (idéal nul en s)."""
        D = AlgebraSignature.weyl(("x",), ("s",))
        s = WeylElement.generator(D, "s")
        ideal = groebner_left(LeftIdeal(D, [WeylElement.generator(D, "dx")]))
        with self.assertRaises(CapabilityError):
            minimal_polynomial(lambda k: s ** k, ideal.normal_form, 3)


if __name__ == "__main__":
    unittest.main()
