import contextlib
import io
import json
import os
import sys
import tempfile
import unittest
from unittest import mock

import jsonschema

# Racine du dépôt (main.py, config.py)
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)

from main import build_parser, main, run
from mbfun.exact import format_rational

with open(os.path.join(ROOT, "report_schema.json"), "r", encoding="utf-8") as handle:
    SCHEMA = json.load(handle)

CLEAN_ENVIRONMENT = {"MBFUN_CONFIG": "", "MBFUN_MAX_DEGREE": "", "MBFUN_LOG_LEVEL": ""}


def run_quiet(argv, environ=None):
    """Exécute la commande, stderr capturé ; rend (code, sortie, stderr)."""
    stderr = io.StringIO()
    environment = dict(CLEAN_ENVIRONMENT, **(environ or {}))
    with mock.patch.dict(os.environ, environment), contextlib.redirect_stderr(stderr):
        code, output = run(argv)
    return code, output, stderr.getvalue()


def roots_of(bfunction):
    return [item["root"] for item in bfunction["roots"]]


class TestCLI(unittest.TestCase):
    """Tests de la ligne de commande."""

    @classmethod
    def setUpClass(cls):
        cls.directory = tempfile.TemporaryDirectory()
        cls.charts = os.path.join(cls.directory.name, "charts.json")
        with open(cls.charts, "w", encoding="utf-8") as handle:
            json.dump({"charts": [{"label": "E1", "a": [3, 0], "b": [0, 2]}]}, handle)
        cls.line = os.path.join(cls.directory.name, "line.json")
        with open(cls.line, "w", encoding="utf-8") as handle:
            json.dump({"charts": [{"label": "id", "a": [3], "b": [0]}]}, handle)
        cls.square = os.path.join(cls.directory.name, "square.json")
        with open(cls.square, "w", encoding="utf-8") as handle:
            json.dump({"charts": [{"label": "id", "a": [2], "b": [0]}]}, handle)

    @classmethod
    def tearDownClass(cls):
        cls.directory.cleanup()

    def run_json(self, argv, expected_code=0):
        code, output, stderr = run_quiet(argv + ["--json"])
        self.assertEqual(code, expected_code, stderr)
        data = json.loads(output)
        jsonschema.validate(data, SCHEMA)
        return data

    def test_classic(self):
        """Test de bf classic x^2 : racines -1, -1/2, certifiées."""
        data = self.run_json(["bf", "classic", "x^2"])
        self.assertEqual(data["command"], ["bf", "classic"])
        self.assertEqual(roots_of(data["result"]["bfunction"]), ["-1", "-1/2"])
        self.assertEqual(data["status"], "CERTIFIED")
        self.assertEqual(data["inputs"], {"F": "x^2", "variables": ["x"]})
        self.assertEqual(data["schema_version"], "1.0")

    def test_mero(self):
        """Test de bf mero x y : s + 1."""
        data = self.run_json(["bf", "mero", "x", "y", "--m", "1"])
        self.assertEqual(roots_of(data["result"]["bfunction"]), ["-1"])
        self.assertEqual(data["inputs"], {"F": "x", "G": "y", "variables": ["x", "y"], "m": 1})

    def test_sabbah_line(self):
        """Test de bf sabbah-line x^3 y^2 : statut issu du témoin, pas d'office."""
        data = self.run_json(["bf", "sabbah-line", "x^3", "y^2"])
        self.assertEqual(roots_of(data["result"]["bfunction"]), ["-3/2", "-1", "-2/3", "-1/3"])
        self.assertEqual(data["result"]["kind"], "sabbah")
        self.assertEqual(data["status"], "CERTIFIED")
        self.assertTrue(data["result"]["witness"])
        unchecked = self.run_json(["bf", "sabbah-line", "x^3", "y^2", "--no-certify"])
        self.assertEqual(unchecked["status"], "UNCERTIFIED")
        self.assertEqual(unchecked["result"]["witness"], [])

    def test_inputs_round_trip(self):
        """Test : les entrées canoniques relancent le même calcul."""
        first = self.run_json(["bf", "mero", "x*x", "y"])
        second = self.run_json(["bf", "mero", first["inputs"]["F"], first["inputs"]["G"]])
        self.assertEqual(first["inputs"], second["inputs"])
        self.assertEqual(first["result"], second["result"])

    def test_deterministic(self):
        """Test : deux exécutions produisent le même JSON."""
        argv = ["bf", "classic", "x^3", "--json"]
        self.assertEqual(run_quiet(argv)[1], run_quiet(argv)[1])

    def test_timing(self):
        """Test de --timing."""
        data = self.run_json(["bf", "classic", "x", "--timing"])
        self.assertGreaterEqual(data["timing"]["seconds"], 0)

    def test_text_report(self):
        """Test du rendu texte."""
        code, output, _ = run_quiet(["bf", "mero", "x", "y"])
        self.assertEqual(code, 0)
        self.assertTrue(output.startswith("=== bf mero ==="))
        self.assertIn("bfunction.poly", output)

    def test_nc_roots(self):
        """Test de nc roots : {-1, -2/3, -1/3}."""
        data = self.run_json(["nc", "roots", "--charts", self.charts])
        self.assertEqual(data["result"]["roots"], ["-1", "-2/3", "-1/3"])
        self.assertEqual(data["result"]["charts"][0]["label"], "E1")

    def test_nc_bound_and_eigen(self):
        """Test de nc bound et nc eigen."""
        bound = self.run_json(["nc", "bound", "--charts", self.charts])
        self.assertEqual(bound["result"]["residues"], ["-1", "-2/3", "-1/3"])
        eigen = self.run_json(["nc", "eigen", "--charts", self.charts])
        self.assertEqual(eigen["result"]["classes"], ["0", "1/3", "2/3"])

    def test_jump(self):
        """Test de jump nc : sauts 1/2, 1 pour y1²."""
        data = self.run_json(["jump", "nc", "--charts", self.square, "--upper", "1"])
        self.assertEqual(data["result"]["charts"][0]["jumps"], ["1/2", "1"])

    def test_check_thm41(self):
        """Test de check thm41 x^3 1."""
        data = self.run_json(["check", "thm41", "x^3", "1", "--charts", self.line])
        self.assertTrue(data["result"]["check"]["holds"])
        self.assertEqual(data["status"], "CERTIFIED")

    def test_check_thm41_failure(self):
        """Test d'une vérification en échec : code 1, rapport complet."""
        data = self.run_json(["check", "thm41", "x^2", "1", "--charts", self.line], expected_code=1)
        self.assertEqual(data["status"], "FAILED")
        self.assertFalse(data["result"]["check"]["holds"])

    def test_check_lemma4(self):
        """Test de check lemma4 x y, m = 1, m' = 0."""
        data = self.run_json(["check", "lemma4", "x", "y", "--m", "1", "--m-prime", "0"])
        self.assertEqual(data["result"]["check"], {"holds": True, "l": 0, "offenders": []})

    def test_check_corjump(self):
        """Test de check corjump x^2 1."""
        data = self.run_json(["check", "corjump", "x^2", "1", "--charts", self.square, "--upper", "2"])
        self.assertTrue(data["result"]["holds"])

    def test_usage_errors(self):
        """Test des erreurs d'utilisation : code 2, aucune sortie."""
        for argv in (["bf"], ["bf", "mero", "x"], ["bf", "mero", "x", "y", "--m", "-1"],
                     ["bf", "mero", "x", "y", "--certify", "0,3"], ["nosuch"]):
            with self.subTest(argv=argv):
                code, output, _ = run_quiet(argv)
                self.assertEqual(code, 2)
                self.assertIsNone(output)

    def test_syntax_error(self):
        """Test d'une erreur de syntaxe : code 2, position sur stderr."""
        code, output, stderr = run_quiet(["bf", "classic", "x^-1"])
        self.assertEqual(code, 2)
        self.assertIsNone(output)
        self.assertIn("colonne 3", stderr)

    def test_invalid_input(self):
        """Test de F et G non premiers entre eux."""
        code, output, _ = run_quiet(["bf", "mero", "x*y", "x"])
        self.assertEqual((code, output), (2, None))

    def test_missing_chart_file(self):
        """Test d'un fichier de cartes absent."""
        code, _, _ = run_quiet(["nc", "roots", "--charts", os.path.join(self.directory.name, "absent.json")])
        self.assertEqual(code, 2)

    def test_degree_cap_from_environment(self):
        """Test de MBFUN_MAX_DEGREE=1 : plafond atteint, code 1."""
        code, output, stderr = run_quiet(["bf", "classic", "x^2"], {"MBFUN_MAX_DEGREE": "1"})
        self.assertEqual(code, 1)
        self.assertIsNone(output)
        self.assertIn("❌", stderr)

    def test_invalid_environment(self):
        """Test d'un MBFUN_MAX_DEGREE non entier."""
        code, _, _ = run_quiet(["bf", "classic", "x"], {"MBFUN_MAX_DEGREE": "abc"})
        self.assertEqual(code, 2)

    def test_config_file(self):
        """Test de --config : certification désactivée par fichier."""
        path = os.path.join(self.directory.name, "config.json")
        with open(path, "w", encoding="utf-8") as handle:
            json.dump({"oracle": {"certify": False}}, handle)
        data = self.run_json(["bf", "classic", "x", "--config", path])
        self.assertEqual(data["status"], "UNCERTIFIED")

    def test_bad_config_file(self):
        """Test de --config absent ou illisible : code 2, aucune sortie."""
        broken = os.path.join(self.directory.name, "broken.json")
        with open(broken, "w", encoding="utf-8") as handle:
            handle.write("{\"oracle\": ")
        for path in (broken, os.path.join(self.directory.name, "absent-config.json")):
            with self.subTest(path=path):
                code, output, stderr = run_quiet(["bf", "classic", "x", "--config", path])
                self.assertEqual((code, output), (2, None))
                self.assertIn("❌", stderr)

    def test_main_prints_report(self):
        """Test de main() : impression et code de sortie."""
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            with mock.patch.dict(os.environ, CLEAN_ENVIRONMENT), contextlib.redirect_stderr(io.StringIO()):
                code = main(["bf", "classic", "x", "--json"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(stdout.getvalue())["status"], "CERTIFIED")

    def test_parser_groups(self):
        """Test des groupes de commandes."""
        args = build_parser().parse_args(["bf", "reduced", "x", "y", "--weights", "1,0", "--d1", "1", "--d2", "0"])
        self.assertEqual(args.group, "bf")
        self.assertEqual(args.command, "reduced")
        self.assertEqual([format_rational(w) for w in args.weights], ["1", "0"])


if __name__ == "__main__":
    unittest.main()
