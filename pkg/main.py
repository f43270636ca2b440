"""
Ligne de commande mbfun.

    mbfun bf classic "x^2" --json
    mbfun bf mero "x" "y" --m 0 --certify 3,6
    mbfun nc roots --charts ex.json --m 0
    mbfun check lemma4 "x^3" "y^2" --m 2 --m-prime 0

Codes de sortie : 0 succès, 1 échec de calcul (plafond atteint, certification
impossible, vérification en échec), 2 erreur d'utilisation.
"""

import argparse
import logging
import sys
import time
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from config import BFunctionConfig, LOG_LEVELS, configure_logging
from mbfun.annihilator import bernstein_sato
from mbfun.errors import MBFunError, PolySyntaxError
from mbfun.exact import BFunction, format_rational, parse_rational
from mbfun.mero import (
    BMeroResult,
    b_mero,
    b_simple,
    certified_sabbah_line,
    divisibility_chain,
    reduced_b,
    residue_profile,
    verify_functional_equation,
)
from mbfun.mero.sigma import certify_candidate
from mbfun.multiplier import check_cor_jump, jumping_numbers_nc, lct_nc
from mbfun.parser import PolyExpr, parse_polys
from mbfun.report import CERTIFIED, FAILED, UNCERTIFIED, Report
from mbfun.resolution import bound_set, check_lemma4, check_thm41, eigenvalue_classes, load_charts, roots_nc

logger = logging.getLogger("mbfun.cli")

Handler = Callable[[argparse.Namespace, BFunctionConfig], Report]


# ---------------------------------------------------------------------------
# Lecture des arguments
# ---------------------------------------------------------------------------

def parse_certify(text: str) -> Tuple[int, int]:
    """Lit "N,DEG"."""
    try:
        n, deg = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--certify attend N,DEG (reçu '{text}')")
    if n < 1 or deg < 0:
        raise argparse.ArgumentTypeError("--certify: N ≥ 1 et DEG ≥ 0")
    return n, deg


def parse_weights(text: str) -> List[Any]:
    """Lit "1,1" ou "1/2,1/3"."""
    try:
        return [parse_rational(part.strip()) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--weights attend des rationnels séparés par des virgules (reçu '{text}')")


def parse_rational_arg(text: str):
    try:
        return parse_rational(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Rationnel p/q attendu (reçu '{text}')")


def non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Entier attendu (reçu '{text}')")
    if value < 0:
        raise argparse.ArgumentTypeError("Entier positif ou nul attendu")
    return value


def read_pair(args: argparse.Namespace) -> Tuple[PolyExpr, PolyExpr]:
    F, G = parse_polys([args.F, args.G])
    return F, G


def pair_inputs(F: PolyExpr, G: PolyExpr, **extra) -> Dict[str, Any]:
    inputs = {"F": F.canonical, "G": G.canonical, "variables": list(F.variables)}
    inputs.update({key: value for key, value in extra.items() if value is not None})
    return inputs


def mero_options(args: argparse.Namespace, config: BFunctionConfig, with_terms: bool = True) -> Dict[str, Any]:
    """Options moteur et oracle : configuration surchargée par --certify / --no-certify."""
    options = config.engine_options()
    options.update(config.oracle_options())
    if with_terms:
        options["N"] = config.get("oracle", "N")
    if getattr(args, "certify", None):
        n, deg = args.certify
        options["deg"] = deg
        if with_terms:
            options["N"] = n
    if getattr(args, "no_certify", False):
        options["certify"] = False
    return options


def result_status(results: Sequence[BMeroResult]) -> str:
    return CERTIFIED if all(r.certified for r in results) else UNCERTIFIED


# ---------------------------------------------------------------------------
# Commandes bf
# ---------------------------------------------------------------------------

def cmd_bf_classic(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    (F,) = parse_polys([args.F])
    options = mero_options(args, config, with_terms=False)
    b = bernstein_sato(F.poly, options["max_degree"])
    result: Dict[str, Any] = {"bfunction": b.to_dict()}
    status = UNCERTIFIED
    if options["certify"]:
        G = F.poly.ring.one

        def oracle(candidate: BFunction):
            return verify_functional_equation(candidate, F.poly, G, 0, 1, options["deg"], options["s_degree"])

        b, status, witness, _ = certify_candidate(b, oracle, strict=True, refine=False)
        result["witness"] = [str(P) for P in witness.operators] if witness else []
    return Report(["bf", "classic"], {"F": F.canonical, "variables": list(F.variables)}, result, status)


def minimality_notes(result: BMeroResult) -> List[str]:
    notes = []
    if result.refined:
        notes.append("Majorant raffiné par l'oracle")
    if result.operators and not result.certified:
        notes.append("Équation vérifiée, minimalité non prouvée (voir engine_bound et lower_bound)")
    return notes


def cmd_bf_mero(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    F, G = read_pair(args)
    result = b_mero(F.poly, G.poly, args.m, **mero_options(args, config))
    return Report(["bf", "mero"], pair_inputs(F, G, m=args.m), result.to_dict(), result.status,
                  notes=minimality_notes(result))


def cmd_bf_simple(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    F, G = read_pair(args)
    result = b_simple(F.poly, G.poly, args.m, **mero_options(args, config, with_terms=False))
    return Report(["bf", "simple"], pair_inputs(F, G, m=args.m), result.to_dict(), result.status,
                  notes=minimality_notes(result))


def cmd_bf_reduced(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    F, G = read_pair(args)
    options = mero_options(args, config, with_terms=False)
    options["saturation_steps"] = config.get("engine", "saturation_steps")
    result = reduced_b(F.poly, G.poly, args.weights, args.d1, args.d2, **options)
    inputs = pair_inputs(
        F, G,
        weights=[format_rational(w) for w in args.weights],
        d1=format_rational(args.d1),
        d2=format_rational(args.d2),
    )
    return Report(["bf", "reduced"], inputs, result.to_dict(), result.status, notes=minimality_notes(result))


def cmd_bf_sabbah_line(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    F, G = read_pair(args)
    options = mero_options(args, config, with_terms=False)
    result = certified_sabbah_line(F.poly, G.poly, args.m, options["max_degree"], options["certify"],
                                   options["deg"], options["s_degree"])
    notes = ["Multiple de la b-fonction méromorphe d'ordre m"]
    return Report(["bf", "sabbah-line"], pair_inputs(F, G, m=args.m), result.to_dict(), result.status, notes=notes)


def cmd_bf_profile(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    F, G = read_pair(args)
    profile = residue_profile(F.poly, G.poly, args.m_max, **mero_options(args, config))
    status = result_status(profile.results)
    if not profile.monotone:
        status = FAILED
    return Report(["bf", "profile"], pair_inputs(F, G, m_max=args.m_max), profile.to_dict(), status)


# ---------------------------------------------------------------------------
# Commandes nc / jump
# ---------------------------------------------------------------------------

def cmd_nc_roots(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    charts = load_charts(args.charts)
    per_chart = []
    union = set()
    for chart in charts:
        roots = roots_nc(chart, args.m)
        union |= roots
        per_chart.append({"label": chart.label, "roots": [format_rational(r) for r in sorted(roots)]})
    result = {"charts": per_chart, "roots": [format_rational(r) for r in sorted(union)]}
    return Report(["nc", "roots"], {"charts": args.charts, "m": args.m}, result)


def cmd_nc_bound(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    charts = load_charts(args.charts)
    return Report(["nc", "bound"], {"charts": args.charts, "m": args.m}, bound_set(charts, args.m).to_dict())


def cmd_nc_eigen(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    charts = load_charts(args.charts)
    classes = eigenvalue_classes(bound_set(charts, args.m).residues)
    result = {"classes": [format_rational(q) for q in sorted(classes)]}
    return Report(["nc", "eigen"], {"charts": args.charts, "m": args.m}, result)


def _jump_upper(args: argparse.Namespace, config: BFunctionConfig):
    if args.upper is not None:
        return args.upper
    upper = config.get("jumping", "upper")
    return parse_rational(str(upper)) if upper is not None else None


def cmd_jump_nc(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    charts = load_charts(args.charts)
    upper = _jump_upper(args, config)
    reports = []
    for chart in charts:
        data = jumping_numbers_nc(chart, upper).to_dict()
        data["label"] = chart.label
        reports.append(data)
    inputs = {"charts": args.charts, "upper": format_rational(upper) if upper is not None else None}
    return Report(["jump", "nc"], inputs, {"charts": reports})


# ---------------------------------------------------------------------------
# Commandes check
# ---------------------------------------------------------------------------

def cmd_check_lemma4(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    if args.m_prime > args.m:
        raise ValueError("--m-prime doit être inférieur ou égal à --m")
    F, G = read_pair(args)
    options = mero_options(args, config)
    small = b_mero(F.poly, G.poly, args.m_prime, **options)
    big = b_mero(F.poly, G.poly, args.m, **options)
    cap = args.cap if args.cap is not None else config.get("lemma4", "l_cap")
    check = check_lemma4(small.bfunction.roots_list(), big.bfunction.roots_list(), cap)
    result = {"small": small.to_dict(), "big": big.to_dict(), "check": check.to_dict()}
    status = result_status([small, big]) if check.holds else FAILED
    inputs = pair_inputs(F, G, m=args.m, m_prime=args.m_prime, cap=cap)
    return Report(["check", "lemma4"], inputs, result, status)


def cmd_check_thm41(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    F, G = read_pair(args)
    charts = load_charts(args.charts)
    mero = b_mero(F.poly, G.poly, args.m, **mero_options(args, config))
    report = check_thm41(mero.bfunction, charts, args.m)
    status = result_status([mero]) if report.holds else FAILED
    result = {"mero": mero.to_dict(), "check": report.to_dict()}
    return Report(["check", "thm41"], pair_inputs(F, G, m=args.m, charts=args.charts), result, status)


def cmd_check_corjump(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    F, G = read_pair(args)
    charts = load_charts(args.charts)
    mero = b_mero(F.poly, G.poly, 0, **mero_options(args, config))
    upper = _jump_upper(args, config)
    checks = []
    for chart in charts:
        jumps = jumping_numbers_nc(chart, upper)
        checks.append({
            "label": chart.label,
            "jumps": jumps.to_dict(),
            "lct_nc": format_rational(lct_nc(chart)),
            "holds": check_cor_jump(jumps, mero.bfunction),
        })
    holds = all(item["holds"] for item in checks)
    status = result_status([mero]) if holds else FAILED
    result = {"mero": mero.to_dict(), "charts": checks, "holds": holds}
    return Report(["check", "corjump"], pair_inputs(F, G, charts=args.charts), result, status)


def cmd_check_chain(args: argparse.Namespace, config: BFunctionConfig) -> Report:
    F, G = read_pair(args)
    if args.weights is not None and (args.d1 is None or args.d2 is None):
        raise ValueError("--weights exige --d1 et --d2")
    chain = divisibility_chain(
        F.poly, G.poly, args.m, args.weights, args.d1, args.d2,
        max_degree=config.get("engine", "max_degree"),
        certify=mero_options(args, config)["certify"],
    )
    if not chain.holds:
        status = FAILED
    else:
        status = CERTIFIED if chain.certified else UNCERTIFIED
    inputs = pair_inputs(
        F, G, m=args.m,
        weights=[format_rational(w) for w in args.weights] if args.weights else None,
    )
    return Report(["check", "chain"], inputs, chain.to_dict(), status)


# ---------------------------------------------------------------------------
# Analyseur
# ---------------------------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Rapport JSON sur la sortie standard")
    common.add_argument("--timing", action="store_true", help="Ajoute la durée au rapport")
    common.add_argument("--config", metavar="FILE", help="Fichier JSON de configuration")
    common.add_argument("--log-level", choices=LOG_LEVELS, type=str.upper, help="Niveau de journalisation")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="mbfun", description="b-fonctions de Bernstein-Sato de f = F/G")
    groups = parser.add_subparsers(dest="group", metavar="GROUPE")
    groups.required = True

    def leaf(sub, name: str, handler: Handler, help_text: str, pair: bool = True) -> argparse.ArgumentParser:
        command = sub.add_parser(name, parents=[common], help=help_text)
        command.set_defaults(handler=handler)
        if pair:
            command.add_argument("F", help="Numérateur")
            command.add_argument("G", help="Dénominateur")
        return command

    def certify_flags(command: argparse.ArgumentParser) -> None:
        command.add_argument("--certify", type=parse_certify, metavar="N,DEG", help="Bornes de l'oracle")
        command.add_argument("--no-certify", action="store_true", help="Sans certification")

    # bf
    bf = groups.add_parser("bf", help="b-fonctions").add_subparsers(dest="command", metavar="COMMANDE")
    bf.required = True
    classic = leaf(bf, "classic", cmd_bf_classic, "Polynôme de Bernstein-Sato b_F", pair=False)
    classic.add_argument("F", help="Polynôme")
    certify_flags(classic)
    for name, handler, help_text in (
        ("mero", cmd_bf_mero, "b-fonction méromorphe d'ordre m"),
        ("simple", cmd_bf_simple, "b-fonction à un seul terme f^{s+1}"),
        ("sabbah-line", cmd_bf_sabbah_line, "Spécialisation de l'idéal de Bernstein-Sato de (F, G)"),
    ):
        command = leaf(bf, name, handler, help_text)
        command.add_argument("--m", type=non_negative, default=0, help="Ordre du pôle")
        certify_flags(command)
    reduced = leaf(bf, "reduced", cmd_bf_reduced, "b-fonction réduite (F, G quasi-homogènes)")
    reduced.add_argument("--weights", type=parse_weights, required=True, help="Poids w1,w2,...")
    reduced.add_argument("--d1", type=parse_rational_arg, required=True, help="Degré pondéré de F")
    reduced.add_argument("--d2", type=parse_rational_arg, required=True, help="Degré pondéré de G")
    certify_flags(reduced)
    profile = leaf(bf, "profile", cmd_bf_profile, "Résidus des racines pour m = 0..M")
    profile.add_argument("--m-max", type=non_negative, required=True, help="Ordre maximal")
    certify_flags(profile)

    # nc
    nc = groups.add_parser("nc", help="Combinatoire des résolutions").add_subparsers(dest="command", metavar="COMMANDE")
    nc.required = True
    for name, handler, help_text in (
        ("roots", cmd_nc_roots, "Ensembles K_q des cartes"),
        ("bound", cmd_nc_bound, "Ensemble majorant B"),
        ("eigen", cmd_nc_eigen, "Classes des valeurs propres"),
    ):
        command = leaf(nc, name, handler, help_text, pair=False)
        command.add_argument("--charts", required=True, metavar="FILE", help="Fichier JSON de cartes")
        command.add_argument("--m", type=non_negative, default=0, help="Ordre du pôle")

    # jump
    jump = groups.add_parser("jump", help="Idéaux multiplicateurs").add_subparsers(dest="command", metavar="COMMANDE")
    jump.required = True
    jump_nc = leaf(jump, "nc", cmd_jump_nc, "Nombres de saut sur des cartes NC", pair=False)
    jump_nc.add_argument("--charts", required=True, metavar="FILE", help="Fichier JSON de cartes")
    jump_nc.add_argument("--upper", type=parse_rational_arg, help="Borne supérieure Q")

    # check
    check = groups.add_parser("check", help="Vérifications").add_subparsers(dest="command", metavar="COMMANDE")
    check.required = True
    lemma4 = leaf(check, "lemma4", cmd_check_lemma4, "Inclusion des racines d'ordre m' dans celles d'ordre m")
    lemma4.add_argument("--m", type=non_negative, required=True, help="Ordre m")
    lemma4.add_argument("--m-prime", type=non_negative, required=True, help="Ordre m' ≤ m")
    lemma4.add_argument("--cap", type=non_negative, help="Translation maximale l")
    certify_flags(lemma4)
    thm41 = leaf(check, "thm41", cmd_check_thm41, "Racines de b_mero dans l'ensemble B des cartes")
    thm41.add_argument("--charts", required=True, metavar="FILE", help="Fichier JSON de cartes")
    thm41.add_argument("--m", type=non_negative, default=0, help="Ordre du pôle")
    certify_flags(thm41)
    corjump = leaf(check, "corjump", cmd_check_corjump, "Nombres de saut et racines de b_{f,0}")
    corjump.add_argument("--charts", required=True, metavar="FILE", help="Fichier JSON de cartes")
    corjump.add_argument("--upper", type=parse_rational_arg, help="Borne supérieure Q")
    certify_flags(corjump)
    chain = leaf(check, "chain", cmd_check_chain, "Chaîne b̃ | b_mero | b_simple")
    chain.add_argument("--m", type=non_negative, default=0, help="Ordre du pôle")
    chain.add_argument("--weights", type=parse_weights, help="Poids w1,w2,... (active b̃)")
    chain.add_argument("--d1", type=parse_rational_arg, help="Degré pondéré de F")
    chain.add_argument("--d2", type=parse_rational_arg, help="Degré pondéré de G")
    chain.add_argument("--no-certify", action="store_true", help="Sans certification")

    return parser


# ---------------------------------------------------------------------------
# Point d'entrée
# ---------------------------------------------------------------------------

def run(argv: Optional[Sequence[str]] = None) -> Tuple[int, Optional[str]]:
    """
    Analyse la ligne de commande et exécute la commande.

    Returns:
        (code de sortie, rapport rendu en JSON ou en tableau ; None en cas d'erreur)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0), None

    try:
        config = BFunctionConfig(args.config)
    except ValueError as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2, None
    if args.log_level:
        config.set("logging", "level", args.log_level)
    if not config.validate():
        return 2, None
    configure_logging(config.log_level)

    start = time.perf_counter()
    try:
        report = args.handler(args, config)
    except PolySyntaxError as e:
        print(f"❌ {e.display()}", file=sys.stderr)
        return 2, None
    except MBFunError as e:
        print(f"❌ {e}", file=sys.stderr)
        return 1, None
    except (ValueError, OSError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2, None

    report.schema_version = config.get("report", "schema_version")
    if args.timing or config.get("report", "include_timing"):
        report.timing = time.perf_counter() - start
    logger.info("%s: %s", " ".join(report.command), report.status)
    output = report.to_json() if args.json else report.render_text()
    return (1 if report.status == FAILED else 0), output


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, output = run(argv)
    if output is not None:
        print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
