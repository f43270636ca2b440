import json
import os
import tempfile
import unittest

from mbfun.exact import BFunction, rational
from mbfun.resolution import (
    BoundSet,
    NCChart,
    bound_set,
    check_lemma4,
    check_thm41,
    dump_charts,
    eigenvalue_classes,
    load_charts,
    member,
    parse_charts,
    roots_nc,
)


class TestNCChart(unittest.TestCase):
    """Tests de la validation des cartes."""

    def test_valid_chart(self):
        """Test d'une carte et de c = a - b."""
        chart = NCChart("E1", [3, 0], [0, 2])
        self.assertEqual(chart.dimension, 2)
        self.assertEqual(list(chart.c), [3, -2])
        self.assertTrue(chart.is_identity)
        self.assertEqual(chart, NCChart("E1", [3, 0], [0, 2], [0, 0]))

    def test_invalid_charts(self):
        """Test des longueurs, des signes et de a = b = 0."""
        with self.assertRaises(ValueError):
            NCChart("bad", [1, 0], [0])
        with self.assertRaises(ValueError):
            NCChart("bad", [1, -1], [0, 0])
        with self.assertRaises(ValueError):
            NCChart("bad", [0, 0], [0, 0])
        with self.assertRaises(ValueError):
            NCChart("bad", [1], [0], [2, 0])

    def test_immutable_vectors(self):
        """Test : les exposants ne sont pas modifiables."""
        chart = NCChart("E1", [1], [0])
        with self.assertRaises(ValueError):
            chart.a[0] = 5


class TestRoots(unittest.TestCase):
    """Tests des ensembles K_q et de l'ensemble B."""

    def test_cusp_quotient(self):
        """Test de a = (3, 0), b = (0, 2) : {-1, -2/3, -1/3}."""
        roots = roots_nc(NCChart("q", [3, 0], [0, 2]))
        self.assertEqual(roots, {rational(-1), rational(-2, 3), rational(-1, 3)})

    def test_pole_order(self):
        """Test de a = (2, 1), b = (1, 0), m = 1 : {0, -1}."""
        roots = roots_nc(NCChart("q", [2, 1], [1, 0]), 1)
        self.assertEqual(roots, {rational(0), rational(-1)})

    def test_no_positive_order(self):
        """Test d'une carte sans c_i > 0 : ensemble vide."""
        self.assertEqual(roots_nc(NCChart("q", [0, 1], [1, 1])), frozenset())

    def test_negative_order(self):
        """Test de m < 0."""
        with self.assertRaises(ValueError):
            roots_nc(NCChart("q", [1], [0]), -1)

    def test_member(self):
        """Test de r ∈ B ssi q - r ∈ Z≥0 pour un q ∈ K."""
        bound = bound_set([NCChart("q", [2], [0])])
        self.assertTrue(member(bound, rational(-1, 2)))
        self.assertTrue(member(bound, rational(-5, 2)))
        self.assertIn(-3, bound)
        self.assertFalse(member(bound, rational(1, 2)))
        self.assertFalse(member(bound, rational(-1, 3)))

    def test_bound_requires_charts(self):
        """Test d'une liste de cartes vide."""
        with self.assertRaises(ValueError):
            bound_set([])

    def test_eigenvalue_classes(self):
        """Test des parties fractionnaires."""
        classes = eigenvalue_classes([rational(-1, 3), rational(-4, 3), -1])
        self.assertEqual(classes, {rational(2, 3), rational(0)})

    def test_bound_to_dict(self):
        """Test de la sérialisation des résidus triés."""
        self.assertEqual(BoundSet(frozenset({rational(-1), rational(-1, 2)})).to_dict(),
                         {"residues": ["-1", "-1/2"]})


class TestChecks(unittest.TestCase):
    """Tests des vérifications sur les racines."""

    def test_lemma4_shift(self):
        """Test de ([-2], [-1]) : l = 1."""
        result = check_lemma4([-2], [-1])
        self.assertEqual(tuple(result), (True, 1))

    def test_lemma4_identity(self):
        """Test d'ensembles égaux : l = 0."""
        self.assertEqual(tuple(check_lemma4([rational(-1, 2)], [rational(-1, 2)])), (True, 0))

    def test_lemma4_failure(self):
        """Test d'une racine sans translaté entier."""
        result = check_lemma4([rational(-1, 2)], [-1])
        self.assertFalse(result.holds)
        self.assertIsNone(result.l)
        self.assertEqual(result.to_dict()["offenders"], ["-1/2"])

    def test_lemma4_cap(self):
        """Test d'une translation au-delà du plafond."""
        self.assertFalse(check_lemma4([-10], [-1], l_cap=5).holds)
        self.assertTrue(check_lemma4([-10], [-1], l_cap=9).holds)
        with self.assertRaises(ValueError):
            check_lemma4([-1], [-1], l_cap=-1)

    def test_thm41(self):
        """Test : racines de x³ dans B et négatives."""
        b = BFunction.from_roots([(rational(-1, 3), 1), (rational(-2, 3), 1), (-1, 1)])
        report = check_thm41(b, [NCChart("id", [3], [0])])
        self.assertTrue(report.holds)
        self.assertTrue(report.negative)

    def test_thm41_failure(self):
        """Test d'une racine hors de B."""
        b = BFunction.from_roots([(rational(-1, 2), 1)])
        report = check_thm41(b, [NCChart("id", [3], [0])])
        self.assertFalse(report.holds)
        self.assertEqual(report.to_dict()["roots"], [{"root": "-1/2", "member": False}])

    def test_thm41_positive_order(self):
        """Test de m > 0 : pas de contrainte de signe."""
        b = BFunction.from_roots([(0, 1), (-1, 1)])
        report = check_thm41(b, [NCChart("q", [2, 1], [1, 0])], m=1)
        self.assertIsNone(report.negative)
        self.assertTrue(report.holds)


class TestChartFiles(unittest.TestCase):
    """Tests du format JSON des cartes."""

    def test_parse(self):
        """Test de la lecture, label par défaut et kappa optionnel."""
        charts = parse_charts({"charts": [{"a": [3, 0], "b": [0, 2]}, {"label": "E", "a": [1, 1], "b": [0, 0], "kappa": [0, 1]}]})
        self.assertEqual(charts[0].label, "chart0")
        self.assertFalse(charts[1].is_identity)

    def test_parse_errors(self):
        """Test des formats invalides."""
        invalid = [
            [],
            {"charts": []},
            {"charts": [{"a": [1]}]},
            {"charts": [{"a": [1.5], "b": [0]}]},
            {"charts": [{"a": [1], "b": [0]}, {"a": [1, 0], "b": [0, 0]}]},
            {"charts": ["x"]},
        ]
        for data in invalid:
            with self.subTest(data=data):
                with self.assertRaises(ValueError):
                    parse_charts(data)

    def test_dump_and_load(self):
        """Test de l'écriture puis de la relecture d'un fichier."""
        charts = [NCChart("E1", [3, 0], [0, 2]), NCChart("E2", [2, 1], [1, 0], [0, 1])]
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "charts.json")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(dump_charts(charts))
            self.assertEqual(load_charts(path), charts)

    def test_load_invalid_json(self):
        """Test d'un fichier illisible."""
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "charts.json")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write("{not json")
            with self.assertRaises(ValueError):
                load_charts(path)

    def test_dump_is_sorted(self):
        """Test des clés triées."""
        data = json.loads(dump_charts([NCChart("E1", [1], [0])]))
        self.assertEqual(list(data["charts"][0]), ["a", "b", "kappa", "label"])


if __name__ == "__main__":
    unittest.main()
