"""
Exemples complets d'utilisation de la bibliothèque mbfun.

Ce fichier déroule les calculs principaux : b-fonctions classiques et
méromorphes, bornes par résolution, nombres de saut et configuration.
"""

from mbfun import (
    NCChart,
    b_mero,
    b_simple,
    bernstein_sato,
    bound_set,
    check_cor_jump,
    check_lemma4,
    check_thm41,
    jumping_numbers_nc,
    parse_poly,
    parse_polys,
    reduced_b,
    roots_nc,
)
from mbfun.exact import BFunction, format_rational, rational
from mbfun.multiplier import lct_from_bfunction
from config import BFunctionConfig


def _rationals(values) -> str:
    return "{" + ", ".join(format_rational(v) for v in sorted(values)) + "}"


def example_1_classical_battery():
    """Exemple 1: b_F pour F = x^a, comparée à ∏(s + k/a)."""
    print("=" * 60)
    print("EXEMPLE 1: Polynômes de Bernstein-Sato classiques")
    print("=" * 60)

    for a in range(1, 5):
        F = parse_poly(f"x^{a}").poly
        b = bernstein_sato(F)
        expected = BFunction.from_roots((rational(-k, a), 1) for k in range(1, a + 1))
        marker = "✅" if b == expected else "❌"
        print(f"{marker} F = x^{a:<2d} b(s) = {str(b):40s} racines {_rationals(b.root_set())}")

    F = parse_poly("x^2+y^2+z^2").poly
    print(f"F = x^2+y^2+z^2  b(s) = {bernstein_sato(F)}")


def example_2_meromorphic():
    """Exemple 2: b-fonctions méromorphes d'ordre m et chaîne b_mero | b_simple."""
    print("\n" + "=" * 60)
    print("EXEMPLE 2: b-fonctions méromorphes")
    print("=" * 60)

    for texts, m in ((("x", "y"), 0), (("x", "y"), 2), (("x^3", "y^2"), 0), (("x^2", "1"), 3)):
        F, G = parse_polys(texts)
        result = b_mero(F.poly, G.poly, m)
        marker = "✅" if result.certified else "⚠️ "
        print(f"{marker} f = ({F})/({G}), m = {m}: b = {result.bfunction} [{result.route}]")

    F, G = parse_polys(["x^3", "y^2"])
    mero = b_mero(F.poly, G.poly, 1)
    simple = b_simple(F.poly, G.poly, 1)
    print(f"\nb_mero = {mero.bfunction}")
    print(f"b_simple = {simple.bfunction}")
    if mero.bfunction.divides(simple.bfunction):
        print("✅ b_mero divise b_simple")
    else:
        print("⚠️  Divisibilité b_mero | b_simple non observée")


def example_3_resolution_bounds():
    """Exemple 3: racines candidates d'une carte à croisements normaux."""
    print("\n" + "=" * 60)
    print("EXEMPLE 3: Bornes par résolution")
    print("=" * 60)

    chart = NCChart("U", [3, 0], [0, 2])
    for m in range(3):
        print(f"m = {m}: K = {_rationals(roots_nc(chart, m))}")

    F, G = parse_polys(["x^3", "y^2"])
    for m in range(3):
        result = b_mero(F.poly, G.poly, m)
        report = check_thm41(result.bfunction, [chart], m)
        marker = "✅" if report.holds else "❌"
        print(f"{marker} m = {m}: racines {_rationals(result.bfunction.root_set())} ⊂ B = K - Z≥0")

    small = b_mero(F.poly, G.poly, 0).bfunction.roots_list()
    big = b_mero(F.poly, G.poly, 2).bfunction.roots_list()
    holds, l = check_lemma4(small, big)
    print(f"Inclusion des racines d'ordre 0 dans celles d'ordre 2: {holds} (l = {l})")
    print(f"Résidus de B pour m = 0: {_rationals(bound_set([chart], 0).residues)}")


def example_4_jumping_numbers():
    """Exemple 4: nombres de saut et seuil log-canonique."""
    print("\n" + "=" * 60)
    print("EXEMPLE 4: Idéaux multiplicateurs")
    print("=" * 60)

    cases = (
        (NCChart("x^2", [2], [0]), ("x^2", "1")),
        (NCChart("x^3/y^2", [3, 0], [0, 2]), ("x^3", "y^2")),
    )
    for chart, texts in cases:
        report = jumping_numbers_nc(chart, 1)
        F, G = parse_polys(texts)
        b0 = b_mero(F.poly, G.poly, 0).bfunction
        print(f"{chart.label:10s} sauts dans (0, 1]: {_rationals(report.jumps)}")
        print(f"{'':10s} lct = {format_rational(report.lct)}, -max racine = {format_rational(lct_from_bfunction(b0))}")
        if check_cor_jump(report, b0):
            print(f"{'':10s} ✅ sauts ⊂ -racines + Z≥0")
        else:
            print(f"{'':10s} ❌ sauts hors des racines translatées")


def example_5_reduced():
    """Exemple 5: b-fonction réduite d'une entrée quasi-homogène."""
    print("\n" + "=" * 60)
    print("EXEMPLE 5: b-fonction réduite")
    print("=" * 60)

    F, G = parse_polys(["x^2+y^2", "x"])
    result = reduced_b(F.poly, G.poly, [1, 1], 2, 1)
    print(f"f = ({F})/({G}), poids (1, 1), degrés (2, 1)")
    print(f"b̃(s) = {result.bfunction} [{result.route}, {result.status}]")


def example_6_configuration_management():
    """Exemple 6: Gestion de configuration."""
    print("\n" + "=" * 60)
    print("EXEMPLE 6: Gestion de Configuration")
    print("=" * 60)

    config = BFunctionConfig(use_environment=False)
    config.set("engine", "max_degree", 16)
    config.set("oracle", "deg", 4)

    print(f"Plafond Gröbner: {config.get('engine', 'max_degree')}")
    print(f"Oracle: N = {config.get('oracle', 'N')}, deg = {config.get('oracle', 'deg')}")
    print(f"Configuration valide: {config.validate()}")

    F, G = parse_polys(["x^2", "y"])
    options = config.engine_options()
    options.update(config.oracle_options())
    result = b_mero(F.poly, G.poly, 0, **options)
    print(f"\nb_mero calculée avec la configuration: {result.bfunction}")


def main():
    """Fonction principale exécutant tous les exemples."""
    print("🚀 EXEMPLES DE LA BIBLIOTHÈQUE MBFUN")
    print("📐 b-fonctions de fonctions méromorphes")

    try:
        example_1_classical_battery()
        example_2_meromorphic()
        example_3_resolution_bounds()
        example_4_jumping_numbers()
        example_5_reduced()
        example_6_configuration_management()

        print("\n" + "=" * 60)
        print("✅ TOUS LES EXEMPLES EXÉCUTÉS AVEC SUCCÈS!")
        print("=" * 60)

    except Exception as e:
        print(f"\n❌ Erreur lors de l'exécution: {e}")
        import traceback
        traceback.print_exc()


if __name__ == "__main__":
    main()
