"""
b-fonctions méromorphes par la construction du graphe.

La section σ_m = G^{-m}·δ(t - f) de la cohomologie locale le long de
tG - F = 0 transforme l'action de s en celle de t, ∂_t ; la b-fonction
d'ordre m est p(-s-1) où p(θ) est le polynôme minimal de θ = t∂_t le long
de t = 0.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy.polys.rings import PolyElement

from ..annihilator import (
    PowerProductSymbol,
    ann_fs,
    bernstein_sato,
    check_coprime,
    check_variable_names,
    sabbah_line,
    specialize_parameters,
    univariate_generator,
)
from ..errors import CapabilityError, CertificationError
from ..exact import (
    S_VARIABLE,
    BFunction,
    common_ring,
    format_poly,
    format_rational,
    polynomial_ring,
    rational,
    rational_roots,
    s_ring,
    substitute_affine,
    theta_ring,
)
from ..groebner import LeftIdeal, eliminate, groebner_left, initial_ideal_weight, minimal_polynomial
from ..report import CERTIFIED, FAILED, UNCERTIFIED
from ..resolution import eigenvalue_classes
from ..weyl import T_VARIABLE, AlgebraSignature, WeylElement, derivation_name
from .oracle import DEFAULT_DEGREE, DEFAULT_TERMS, OracleResult, verify_functional_equation

logger = logging.getLogger(__name__)

DEFAULT_MAX_BFUNCTION_DEGREE = 16


@dataclass(frozen=True)
class SigmaPresentation:
    """
    Présentation de σ_m = G^{-m}·δ(t - F/G) dans D_{n+1} = D⟨x, t⟩.

    Args:
        F, G: Numérateur et dénominateur (même anneau)
        m: Ordre du pôle
        signature: Algèbre du graphe D_{n+1}
        annihilator: Idéal engendré par tG - F et G²∂_i + mGG_i + h_i∂_t
        complete: L'idéal est l'annihilateur complet (cas G constant)
        v0_generators: Éléments de Ann(σ_m) ∩ V_0, écrits dans D_n[s]⟨t⟩
            (s agit comme -∂_t t - 1)
    """

    F: PolyElement
    G: PolyElement
    m: int
    signature: AlgebraSignature
    annihilator: LeftIdeal
    complete: bool
    v0_generators: Tuple[WeylElement, ...] = ()

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(str(sym) for sym in self.F.ring.symbols)

    @property
    def v0_signature(self) -> AlgebraSignature:
        return AlgebraSignature.shift_algebra(self.variables)


@dataclass
class BMeroResult:
    """
    b-fonction calculée et détails de sa certification.

    Args:
        bfunction: b(s) unitaire
        status: CERTIFIED, UNCERTIFIED ou FAILED
        kind: "mero", "simple", "reduced" ou "sabbah"
        m: Ordre du pôle (None pour la b-fonction réduite)
        route: Chemin de calcul ("weight", "v0", "localized", "smooth", "sabbah-line")
        terms: N pour lequel l'oracle a certifié en premier
        refined: L'oracle a raffiné un majorant du moteur
        operators: Témoins P_1..P_N de l'équation fonctionnelle
        prefactor_power: k tel que G^k·b(s)f^s = Σ P_k f^{s+k} (b-fonction réduite)
        engine_bound: Sortie du moteur avant l'oracle (un multiple de b)
        lower_bound: Diviseur prouvé de b utilisé pour la certification
        oracle_bounds: (N, deg, s_degree) de la recherche de témoins
    """

    bfunction: BFunction
    status: str
    kind: str = "mero"
    m: Optional[int] = None
    route: str = "weight"
    terms: Optional[int] = None
    refined: bool = False
    operators: Tuple[WeylElement, ...] = ()
    prefactor_power: Optional[int] = None
    theta_polynomial: Optional[PolyElement] = field(default=None, repr=False)
    engine_bound: Optional[BFunction] = None
    lower_bound: Optional[BFunction] = None
    oracle_bounds: Optional[Tuple[int, int, int]] = None

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def record(self, certification: Tuple[BFunction, str, Optional[OracleResult], bool],
               lower: Optional[BFunction], bounds: Tuple[int, int, int]) -> None:
        """Reporte la sortie de certify_candidate et les bornes utilisées."""
        b, status, witness, refined = certification
        self.bfunction, self.status, self.refined = b, status, refined
        self.lower_bound, self.oracle_bounds = lower, bounds
        if witness:
            self.terms, self.operators = witness.terms, witness.operators

    def to_dict(self) -> Dict[str, object]:
        data = {
            "bfunction": self.bfunction.to_dict(),
            "kind": self.kind,
            "route": self.route,
            "refined_by_oracle": self.refined,
            "oracle_terms": self.terms,
            "witness": [str(P) for P in self.operators],
        }
        if self.m is not None:
            data["m"] = self.m
        if self.prefactor_power is not None:
            data["prefactor_power"] = self.prefactor_power
        if self.theta_polynomial is not None:
            data["p_theta"] = format_poly(self.theta_polynomial)
        if self.engine_bound is not None:
            data["engine_bound"] = self.engine_bound.to_dict()
        if self.lower_bound is not None:
            data["lower_bound"] = self.lower_bound.to_dict()
        if self.oracle_bounds is not None:
            data["oracle_bounds"] = dict(zip(("N", "deg", "s_degree"), self.oracle_bounds))
        return data


def validate_pair(F: PolyElement, G: PolyElement, m: int) -> Tuple[PolyElement, PolyElement]:
    if m < 0:
        raise ValueError("L'ordre m doit être positif ou nul")
    check_coprime(F, G)
    _, (F, G) = common_ring(F, G)
    if F.is_ground:
        raise ValueError("Le polynôme F doit être non constant")
    check_variable_names([str(sym) for sym in F.ring.symbols])
    if F.coeff(1):
        logger.warning("F(0) ≠ 0 : calcul global, la b-fonction locale en 0 est triviale")
    return F, G


@lru_cache(maxsize=32)
def _two_factor_annihilator(F: PolyElement, G: PolyElement, max_degree: Optional[int]) -> LeftIdeal:
    return ann_fs(PowerProductSymbol(((F, "s1"), (G, "s2"))), max_degree)


def power_annihilator(F: PolyElement, G: PolyElement, shift: int,
                      max_degree: Optional[int] = None) -> List[WeylElement]:
    """
    Éléments de Ann_{D[s]}(F^s·G^{-s-shift}).

    Pour G non constant, ce sont les spécialisations s1 = s, s2 = -s-shift de
    Ann F^{s1}G^{s2} ; elles engendrent un sous-idéal de l'annihilateur.

    Returns:
        Éléments de D_n[s]
    """
    if G.is_ground:
        return list(ann_fs(PowerProductSymbol(((F, S_VARIABLE),)), max_degree).generators)
    ideal = _two_factor_annihilator(F, G, max_degree)
    s = s_ring().gens[0]
    target = AlgebraSignature.weyl(tuple(str(sym) for sym in F.ring.symbols), (S_VARIABLE,))
    return specialize_parameters(ideal, target, {"s1": s, "s2": -s - shift})


def build_sigma(F: PolyElement, G: PolyElement, m: int, max_degree: Optional[int] = None) -> SigmaPresentation:
    """
    Présentation de la section σ_m du module du graphe.

    Args:
        F: Numérateur non constant
        G: Dénominateur premier avec F
        m: Ordre du pôle (≥ 0)
        max_degree: Plafond des bases de Gröbner

    Returns:
        SigmaPresentation ; complete vaut True si G est constant

    Raises:
        ValueError: Entrées invalides
        CapabilityError: Entrée trop grosse
    """
    F, G = validate_pair(F, G, m)
    variables = tuple(str(sym) for sym in F.ring.symbols)
    signature = AlgebraSignature.graph_algebra(variables)
    t = WeylElement.generator(signature, T_VARIABLE)
    dt = WeylElement.generator(signature, derivation_name(T_VARIABLE))

    def lift(poly: PolyElement) -> WeylElement:
        return WeylElement.from_polynomial(signature, poly)

    seeds = [lift(G) * t - lift(F)]
    h = [F.diff(x) * G - F * G.diff(x) for x in F.ring.gens]
    for i, x in enumerate(F.ring.gens):
        dx = WeylElement.generator(signature, derivation_name(variables[i]))
        seeds.append(lift(G ** 2) * dx + lift(G * G.diff(x) * m) + lift(h[i]) * dt)

    complete = G.is_ground
    v0: List[WeylElement] = []
    if not complete:
        shift = AlgebraSignature.shift_algebra(variables)
        ts = WeylElement.generator(shift, T_VARIABLE)
        s = WeylElement.generator(shift, S_VARIABLE)

        def lift_v0(poly: PolyElement) -> WeylElement:
            return WeylElement.from_polynomial(shift, poly)

        v0 = [P.embed(shift) for P in power_annihilator(F, G, m, max_degree)]
        v0.append(lift_v0(G) * ts - lift_v0(F))
        for i, x in enumerate(F.ring.gens):
            dx = WeylElement.generator(shift, derivation_name(variables[i]))
            euler = lift_v0(G ** 2) * dx + lift_v0(G * G.diff(x) * m)
            v0.append(euler * ts - (s + 1) * lift_v0(h[i]))
    logger.debug("σ_%d pour f = (%s)/(%s): %d germes, complet=%s",
                 m, format_poly(F), format_poly(G), len(seeds), complete)
    return SigmaPresentation(F, G, m, signature, LeftIdeal(signature, seeds), complete, tuple(v0))


def _theta_from_coefficients(coefficients) -> PolyElement:
    R = theta_ring()
    return R.from_dict({(k,): c for k, c in enumerate(coefficients) if c})


def b_section_along_t(pres: SigmaPresentation, max_degree: Optional[int] = None,
                      max_bfunction_degree: int = DEFAULT_MAX_BFUNCTION_DEGREE) -> PolyElement:
    """
    Polynôme minimal p(θ), θ = t∂_t, tel que p(θ)σ_m ∈ V_{-1}·σ_m.

    Présentation complète : générateur de in_{(-1,1)}(Ann σ_m) ∩ Q[θ].
    Sinon : projection sur V_0 des éléments connus de l'annihilateur, puis
    élimination de x, ∂ ; on obtient un multiple de p.

    Returns:
        Polynôme unitaire de Q[θ]

    Raises:
        CapabilityError: Idéal nul après élimination ou degré plafond atteint
    """
    if pres.complete:
        signature = pres.signature
        weights = [0] * signature.ngens
        weights[signature.index(T_VARIABLE)] = -1
        weights[signature.index(derivation_name(T_VARIABLE))] = 1
        initial = initial_ideal_weight(pres.annihilator, weights, max_degree)
        target = initial.signature
        theta = WeylElement.generator(target, T_VARIABLE) * WeylElement.generator(target, derivation_name(T_VARIABLE))
        coefficients = minimal_polynomial(lambda k: theta ** k, initial.normal_form, max_bfunction_degree)
        p = _theta_from_coefficients(coefficients)
        logger.info("Voie des poids: p(θ) = %s", format_poly(p))
        return p

    # Voie V_0 : le projeté t-libre des générateurs engendre l'idéal
    # (Ann σ_m + V_0·t) ∩ D_n[s].
    target = AlgebraSignature.weyl(pres.variables, (S_VARIABLE,))
    source = pres.v0_signature
    t_index = source.index(T_VARIABLE)
    projected = []
    for g in pres.v0_generators:
        kept = WeylElement(source, {e: c for e, c in g.terms.items() if not e[t_index]})
        if kept:
            projected.append(kept.restrict(target))
    drop = [name for name in target.generators if name != S_VARIABLE]
    eliminated = eliminate(LeftIdeal(target, projected), drop, max_degree)
    B = univariate_generator(eliminated)
    if not B:
        raise CapabilityError("Non spécialisable dans les bornes: l'élimination a renvoyé l'idéal nul")
    if B.degree() > max_bfunction_degree:
        raise CapabilityError(f"Degré de b ({B.degree()}) au-delà du plafond {max_bfunction_degree}")
    p = substitute_affine(B, -1, -1, theta_ring()).monic()
    logger.info("Voie V_0: p(θ) = %s (majorant)", format_poly(p))
    return p


def _used_variables(p: PolyElement) -> set:
    return {i for monom in p.monoms() for i, e in enumerate(monom) if e}


def separated_variables(F: PolyElement, G: PolyElement) -> bool:
    """F et G ne partagent aucune variable."""
    return not (_used_variables(F) & _used_variables(G))


def generic_lower_bound(F: PolyElement) -> BFunction:
    """
    ppcm des b-fonctions locales de F aux points génériques de ses composantes.

    Près d'un point générique de {F_i = 0} hors de {G = 0}, f est une unité
    fois y^e (e multiplicité du facteur F_i) : ∏_{k=1..e}(s + k/e) divise
    donc b_mero, b_simple et la b-fonction réduite.
    """
    _, factors = F.factor_list()
    roots = {rational(-k, e) for _, e in factors for k in range(1, e + 1)}
    return BFunction.from_roots((root, 1) for root in roots)


@lru_cache(maxsize=32)
def lower_bound(F: PolyElement, G: PolyElement, max_degree: Optional[int] = None) -> BFunction:
    """
    Diviseur prouvé des b-fonctions méromorphes de f = F/G.

    Variables séparées : b_F, calculé dans les seules variables de F (on a
    alors b_mero = b_simple = b_F). Sinon generic_lower_bound(F).
    """
    if separated_variables(F, G):
        used = sorted(_used_variables(F))
        ring = polynomial_ring([str(F.ring.symbols[i]) for i in used])
        try:
            return bernstein_sato(F.set_ring(ring), max_degree)
        except CapabilityError as e:
            logger.warning("b_F hors capacité (%s) : minorant générique", e)
    return generic_lower_bound(F)


def certify_candidate(candidate: BFunction, oracle, strict: bool, refine: bool,
                      lower: Optional[BFunction] = None) -> Tuple[BFunction, str, Optional[OracleResult], bool]:
    """
    Certifie un candidat avec l'oracle, puis vérifie sa minimalité.

    strict : le candidat est exact ; un échec de l'oracle ou un diviseur
    propre certifié est une incohérence (CertificationError).

    Sinon le candidat n'est qu'un majorant. Un témoin prouve seulement que
    la b-fonction divise le polynôme certifié ; la minimalité n'est acquise
    que si ce polynôme atteint le minorant lower. Avec refine, on essaie
    d'abord lower, puis on divise par les racines tant que l'oracle suit.
    Tout résultat non égal à lower reste UNCERTIFIED.

    Raises:
        CertificationError: Désaccord en mode strict, ou lower ne divise pas le candidat
    """
    if not strict and lower is not None:
        if not lower.divides(candidate):
            raise CertificationError(f"Le minorant {lower} ne divise pas le majorant {candidate}")
        if refine and lower != candidate:
            witness = oracle(lower)
            if witness:
                logger.info("Minorant atteint par l'oracle: %s -> %s", candidate, lower)
                return lower, CERTIFIED, witness, True

    witness = oracle(candidate)
    if not witness:
        if strict:
            raise CertificationError(f"L'oracle ne certifie pas {candidate} (désaccord moteur/oracle)")
        logger.warning("b = %s non certifiée par l'oracle", candidate)
        return candidate, UNCERTIFIED, None, False

    refined = False
    while True:
        if not strict and candidate == lower:
            return candidate, CERTIFIED, witness, refined
        roots, _ = rational_roots(candidate.poly)
        for root, _ in reversed(roots):
            quotient = candidate.quotient_by_root(root)
            if lower is not None and not lower.divides(quotient):
                continue
            smaller = oracle(quotient)
            if not smaller:
                continue
            if strict:
                raise CertificationError(f"Le diviseur propre {quotient} de {candidate} passe l'oracle")
            if not refine:
                logger.warning("%s n'est pas minimale (le diviseur %s passe l'oracle)", candidate, quotient)
                return candidate, UNCERTIFIED, witness, False
            logger.info("Raffinement par l'oracle: %s -> %s", candidate, quotient)
            candidate, witness, refined = quotient, smaller, True
            break
        else:
            if strict:
                return candidate, CERTIFIED, witness, refined
            logger.warning("b = %s vérifiée par l'oracle, minimalité non prouvée", candidate)
            return candidate, UNCERTIFIED, witness, refined


def _oracle_bounds(N: int, deg: int, s_degree: Optional[int]) -> Tuple[int, int, int]:
    return N, deg, deg if s_degree is None else s_degree


def b_mero(F: PolyElement, G: PolyElement, m: int = 0, max_degree: Optional[int] = None,
           max_bfunction_degree: int = DEFAULT_MAX_BFUNCTION_DEGREE, certify: bool = True,
           refine: bool = True, N: int = DEFAULT_TERMS, deg: int = DEFAULT_DEGREE,
           s_degree: Optional[int] = None) -> BMeroResult:
    """
    b-fonction méromorphe d'ordre m : b(s) = p_{σ_m}(-s-1), rendue unitaire.

    Pour G constant la voie des poids est exacte. Sinon la voie V_0 rend un
    multiple de b ; le résultat n'est CERTIFIED que si l'oracle atteint le
    minorant lower_bound(F, G).

    Args:
        F, G: Numérateur et dénominateur premiers entre eux
        m: Ordre du pôle
        max_degree: Plafond des bases de Gröbner
        max_bfunction_degree: Plafond des recherches de polynômes minimaux
        certify: Certifier par l'oracle (et tester la minimalité)
        refine: Autoriser l'oracle à raffiner un majorant
        N, deg, s_degree: Bornes de l'oracle

    Returns:
        BMeroResult

    Raises:
        ValueError: Entrées invalides
        CapabilityError: Entrée hors capacité
        CertificationError: Désaccord entre le moteur et l'oracle
    """
    pres = build_sigma(F, G, m, max_degree)
    p = b_section_along_t(pres, max_degree, max_bfunction_degree)
    candidate = BFunction.from_poly(substitute_affine(p, -1, -1, s_ring()))
    route = "weight" if pres.complete else "v0"
    result = BMeroResult(candidate, UNCERTIFIED, "mero", m, route, theta_polynomial=p, engine_bound=candidate)
    if not certify:
        return result

    def oracle(b: BFunction) -> OracleResult:
        return verify_functional_equation(b, pres.F, pres.G, m, N, deg, s_degree)

    lower = None if pres.complete else lower_bound(pres.F, pres.G, max_degree)
    result.record(certify_candidate(candidate, oracle, strict=pres.complete, refine=refine, lower=lower),
                  lower, _oracle_bounds(N, deg, s_degree))
    if result.refined:
        result.theta_polynomial = substitute_affine(result.bfunction.poly, -1, -1, theta_ring()).monic()
    logger.info("b_mero(m=%d) = %s [%s]", m, result.bfunction, result.status)
    return result


def b_simple(F: PolyElement, G: PolyElement, m: int = 0, max_degree: Optional[int] = None,
             max_bfunction_degree: int = DEFAULT_MAX_BFUNCTION_DEGREE, certify: bool = True,
             refine: bool = True, deg: int = DEFAULT_DEGREE, s_degree: Optional[int] = None) -> BMeroResult:
    """
    b minimal tel que b(s)(f^s/G^m) ∈ D[s](f^{s+1}/G^m).

    Avec w = F^s G^{-s-m-1} : f^s/G^m = G·w et f^{s+1}/G^m = F·w, donc b est
    le polynôme minimal de s sur la classe de G modulo Ann(w) + D[s]F.
    """
    F, G = validate_pair(F, G, m)
    annihilator = power_annihilator(F, G, m + 1, max_degree)
    signature = AlgebraSignature.weyl(tuple(str(sym) for sym in F.ring.symbols), (S_VARIABLE,))
    ideal = groebner_left(
        LeftIdeal(signature, annihilator + [WeylElement.from_polynomial(signature, F)]), max_degree=max_degree
    )
    s = WeylElement.generator(signature, S_VARIABLE)
    g = WeylElement.from_polynomial(signature, G)
    coefficients = minimal_polynomial(lambda j: s ** j * g, ideal.normal_form, max_bfunction_degree)
    R = s_ring()
    candidate = BFunction.from_poly(R.from_dict({(k,): c for k, c in enumerate(coefficients) if c}))
    result = BMeroResult(candidate, UNCERTIFIED, "simple", m, "localized", engine_bound=candidate)
    if not certify:
        return result

    def oracle(b: BFunction) -> OracleResult:
        return verify_functional_equation(b, F, G, m, 1, deg, s_degree)

    lower = None if G.is_ground else lower_bound(F, G, max_degree)
    result.record(certify_candidate(candidate, oracle, strict=G.is_ground, refine=refine, lower=lower),
                  lower, _oracle_bounds(1, deg, s_degree))
    logger.info("b_simple(m=%d) = %s [%s]", m, result.bfunction, result.status)
    return result


def certified_sabbah_line(F: PolyElement, G: PolyElement, m: int = 0, max_degree: Optional[int] = None,
                          certify: bool = True, deg: int = DEFAULT_DEGREE,
                          s_degree: Optional[int] = None) -> BMeroResult:
    """
    sabbah_line accompagné d'un témoin de l'équation à un terme.

    Le polynôme rendu est un multiple de b_mero, pas un minimum. CERTIFIED
    signifie que l'oracle a trouvé P avec b(s)f^s/G^m = P·f^{s+1}/G^m.
    """
    F, G = validate_pair(F, G, m)
    b = sabbah_line(F, G, m, max_degree)
    result = BMeroResult(b, UNCERTIFIED, "sabbah", m, "sabbah-line", engine_bound=b)
    if not certify:
        return result
    witness = verify_functional_equation(b, F, G, m, 1, deg, s_degree)
    result.oracle_bounds = _oracle_bounds(1, deg, s_degree)
    if witness:
        result.status, result.terms, result.operators = CERTIFIED, witness.terms, witness.operators
    else:
        logger.warning("Spécialisation %s sans témoin dans les bornes", b)
    return result


@dataclass(frozen=True)
class ResidueProfile:
    """
    Classes de résidus A_m = {racines mod Z} des b-fonctions d'ordre m.

    Args:
        classes: A_0, ..., A_{m_max} (listes triées dans [0, 1))
        monotone: A_m ⊆ A_{m+1} pour tout m
        stationary_from: Plus petit m à partir duquel A_m ne varie plus
        results: b-fonctions calculées
    """

    classes: Tuple[Tuple, ...]
    monotone: bool
    stationary_from: int
    results: Tuple[BMeroResult, ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "classes": [[format_rational(q) for q in A] for A in self.classes],
            "monotone": self.monotone,
            "stationary_from": self.stationary_from,
            "bfunctions": [r.bfunction.to_dict() for r in self.results],
        }


def residue_profile(F: PolyElement, G: PolyElement, m_max: int, **options) -> ResidueProfile:
    """
    Calcule b_mero pour m = 0..m_max et compare les ensembles de résidus.

    Raises:
        ValueError: m_max < 0 ou b-fonction non scindée
    """
    if m_max < 0:
        raise ValueError("m_max doit être positif ou nul")
    results = tuple(b_mero(F, G, m, **options) for m in range(m_max + 1))
    classes = tuple(tuple(sorted(eigenvalue_classes(r.bfunction.roots_list()))) for r in results)
    monotone = all(set(a) <= set(b) for a, b in zip(classes, classes[1:]))
    stationary = m_max
    while stationary > 0 and classes[stationary - 1] == classes[m_max]:
        stationary -= 1
    return ResidueProfile(classes, monotone, stationary, results)
