import json
import unittest

from mbfun.report import FAILED, UNCERTIFIED, Report


class TestReport(unittest.TestCase):
    """Tests des rapports JSON et texte."""

    def setUp(self):
        self.report = Report(["nc", "roots"], {"m": 0}, {"roots": ["-1", "-1/2"]})

    def test_json(self):
        """Test des clés et de l'ordre des clés."""
        data = json.loads(self.report.to_json())
        self.assertEqual(sorted(data), ["command", "inputs", "result", "schema_version", "status"])
        self.assertEqual(data["status"], "CERTIFIED")

    def test_optional_fields(self):
        """Test des notes et de la durée."""
        report = Report(["bf", "mero"], {}, {}, UNCERTIFIED, timing=0.25, notes=["majorant"])
        data = report.to_dict()
        self.assertEqual(data["timing"], {"seconds": 0.25})
        self.assertEqual(data["notes"], ["majorant"])

    def test_unknown_status(self):
        """Test d'un statut inconnu."""
        with self.assertRaises(ValueError):
            Report(["bf", "mero"], {}, {}, "MAYBE")

    def test_text(self):
        """Test du rendu texte : entrées, résultat aplati, statut."""
        text = Report(["check", "thm41"], {"m": 0}, {"check": {"holds": False, "l": None}}, FAILED).render_text()
        lines = text.splitlines()
        self.assertEqual(lines[0], "=== check thm41 ===")
        self.assertIn("check.holds", text)
        self.assertIn(f"{'check.l':20s}: -", text)
        self.assertEqual(lines[-1], "❌ FAILED")


if __name__ == "__main__":
    unittest.main()
