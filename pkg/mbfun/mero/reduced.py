# reduced.py - b-fonction réduite (opérateurs à pôles le long de G = 0), cas quasi-homogène

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from sympy import QQ, Dummy
from sympy.polys.groebnertools import groebner
from sympy.polys.rings import PolyElement, ring

from ..errors import CapabilityError
from ..exact import S_VARIABLE, BFunction, rational, s_ring
from ..groebner import LeftIdeal, groebner_left, minimal_polynomial
from ..weyl import AlgebraSignature, WeylElement
from .oracle import DEFAULT_DEGREE, OracleResult, verify_functional_equation
from .sigma import (
    CERTIFIED,
    DEFAULT_MAX_BFUNCTION_DEGREE,
    UNCERTIFIED,
    BMeroResult,
    b_mero,
    b_simple,
    certify_candidate,
    generic_lower_bound,
    power_annihilator,
    validate_pair,
)

logger = logging.getLogger(__name__)

DEFAULT_SATURATION_STEPS = 4


def gradient_minors(F: PolyElement, G: PolyElement) -> List[PolyElement]:
    """h_i = F_{x_i}·G - F·G_{x_i}, numérateurs de ∂_i f."""
    return [F.diff(x) * G - F * G.diff(x) for x in F.ring.gens]


def is_quasi_homogeneous(F: PolyElement, G: PolyElement, weights: Sequence, d1, d2) -> bool:
    """
    Teste exactement vF = d1·F et vG = d2·G pour v = Σ w_i x_i ∂_i.

    Chaque monôme doit avoir le degré pondéré annoncé.
    """
    w = [rational(x) for x in weights]
    if len(w) != F.ring.ngens:
        raise ValueError(f"{F.ring.ngens} poids attendus, {len(w)} reçus")

    def homogeneous(poly: PolyElement, degree) -> bool:
        return all(sum(wi * e for wi, e in zip(w, monom)) == degree for monom in poly.monoms())

    return homogeneous(F, rational(d1)) and homogeneous(G, rational(d2))


def smoothness_test(F: PolyElement, G: PolyElement) -> bool:
    """
    Vrai si G s'annule sur V(h_1, ..., h_n), c'est-à-dire si f est lisse hors
    de G = 0 : G ∈ √⟨h⟩ par l'astuce de Rabinowitsch (1 ∈ ⟨h, 1 - zG⟩).
    """
    z = Dummy("z")
    R, *_ = ring(list(F.ring.symbols) + [z], QQ)
    seq = [h.set_ring(R) for h in gradient_minors(F, G) if h]
    seq.append(R.one - R.gens[-1] * G.set_ring(R))
    basis = groebner(seq, R)
    return basis == [R.one]


def reduced_b(F: PolyElement, G: PolyElement, weights: Sequence, d1, d2,
              max_degree: Optional[int] = None,
              max_bfunction_degree: int = DEFAULT_MAX_BFUNCTION_DEGREE,
              saturation_steps: int = DEFAULT_SATURATION_STEPS, certify: bool = True,
              refine: bool = True, deg: int = DEFAULT_DEGREE, s_degree: Optional[int] = None) -> BMeroResult:
    """
    b-fonction réduite b̃(s) = (s+1)·β̃(s), β̃ minimal avec β̃(s)f^s ∈ Σ D̃[s]·h_i f^s.

    Dans D̃ = D[1/G], la condition s'écrit β̃(s)·G^k ∈ Ann(f^s) + Σ D[s]h_i
    pour un k ≥ 0 ; on essaie k = 0..saturation_steps. Le résultat n'est
    CERTIFIED que si l'oracle atteint le minorant generic_lower_bound(F).

    Args:
        F, G: Numérateur et dénominateur premiers entre eux
        weights: Poids w_i du champ d'Euler
        d1, d2: Degrés pondérés de F et G (d1 ≠ d2)

    Returns:
        BMeroResult (kind "reduced", route "smooth" ou "localized")

    Raises:
        ValueError: Entrée non quasi-homogène ou d1 = d2
        CapabilityError: Aucune relation trouvée dans les bornes
    """
    F, G = validate_pair(F, G, 0)
    if rational(d1) == rational(d2):
        raise ValueError("d = d1 - d2 doit être non nul")
    if not is_quasi_homogeneous(F, G, weights, d1, d2):
        raise ValueError("F et G ne sont pas quasi-homogènes pour ces poids et degrés")

    R = s_ring()
    s_poly = R.gens[0]
    lower = generic_lower_bound(F)
    if smoothness_test(F, G):
        logger.info("f lisse hors de G = 0 : b̃ = s + 1")
        candidate, route = BFunction.from_poly(s_poly + 1), "smooth"
    else:
        signature = AlgebraSignature.weyl(tuple(str(sym) for sym in F.ring.symbols), (S_VARIABLE,))
        generators = power_annihilator(F, G, 0, max_degree)
        generators += [WeylElement.from_polynomial(signature, h) for h in gradient_minors(F, G) if h]
        ideal = groebner_left(LeftIdeal(signature, generators), max_degree=max_degree)
        s = WeylElement.generator(signature, S_VARIABLE)
        g = WeylElement.from_polynomial(signature, G)

        # Chaque relation trouvée est valide : β est le pgcd sur k = 0..saturation_steps.
        beta: Optional[PolyElement] = None
        for k in range(saturation_steps + 1):
            gk = g ** k
            try:
                coefficients = minimal_polynomial(lambda j: s ** j * gk, ideal.normal_form, max_bfunction_degree)
            except CapabilityError:
                logger.debug("Pas de relation pour G^%d", k)
                continue
            current = R.from_dict({(j,): c for j, c in enumerate(coefficients) if c})
            logger.debug("β pour G^%d: %s", k, current)
            beta = current if beta is None else beta.gcd(current).monic()
            if BFunction.from_poly((s_poly + 1) * beta) == lower:
                break
        if beta is None:
            raise CapabilityError(
                f"Aucune relation β(s)·G^k dans l'idéal pour k ≤ {saturation_steps}",
            )
        candidate, route = BFunction.from_poly((s_poly + 1) * beta), "localized"

    result = BMeroResult(candidate, UNCERTIFIED, "reduced", None, route, engine_bound=candidate)
    if not certify:
        return result

    powers: Dict[str, int] = {}
    G_powers = [G ** k for k in range(saturation_steps + 1)]

    def oracle(b: BFunction) -> OracleResult:
        for k, prefactor in enumerate(G_powers):
            witness = verify_functional_equation(b, F, G, 0, 1, deg, s_degree, prefactor=prefactor)
            if witness:
                powers[str(b)] = k
                return witness
        return OracleResult(False)

    result.record(certify_candidate(candidate, oracle, strict=False, refine=refine, lower=lower),
                  lower, (1, deg, deg if s_degree is None else s_degree))
    if result.operators:
        result.prefactor_power = powers.get(str(result.bfunction))
    logger.info("b̃ = %s [%s]", result.bfunction, result.status)
    return result


@dataclass(frozen=True)
class ChainReport:
    """
    Chaîne de divisibilité b̃ | b_mero | b_simple sur une instance.

    Args:
        mero, simple: b-fonctions d'ordre m
        reduced: b-fonction réduite (entrées quasi-homogènes seulement)
    """

    mero: BMeroResult
    simple: BMeroResult
    reduced: Optional[BMeroResult] = None

    @property
    def reduced_divides_mero(self) -> Optional[bool]:
        if self.reduced is None:
            return None
        return self.reduced.bfunction.divides(self.mero.bfunction)

    @property
    def mero_divides_simple(self) -> bool:
        return self.mero.bfunction.divides(self.simple.bfunction)

    @property
    def holds(self) -> bool:
        return self.mero_divides_simple and self.reduced_divides_mero is not False

    @property
    def certified(self) -> bool:
        results = [self.mero, self.simple] + ([self.reduced] if self.reduced else [])
        return all(r.status == CERTIFIED for r in results)

    def to_dict(self) -> Dict[str, object]:
        return {
            "mero": self.mero.to_dict(),
            "simple": self.simple.to_dict(),
            "reduced": self.reduced.to_dict() if self.reduced else None,
            "reduced_divides_mero": self.reduced_divides_mero,
            "mero_divides_simple": self.mero_divides_simple,
            "holds": self.holds,
        }


def divisibility_chain(F: PolyElement, G: PolyElement, m: int = 0, weights: Optional[Sequence] = None,
                       d1=None, d2=None, max_degree: Optional[int] = None, certify: bool = True) -> ChainReport:
    """
    Calcule b_mero, b_simple et, si des poids sont donnés, b̃ ; vérifie la chaîne.

    Raises:
        ValueError: Poids donnés sans degrés
    """
    reduced = None
    if weights is not None:
        if d1 is None or d2 is None:
            raise ValueError("Les degrés d1 et d2 accompagnent les poids")
        reduced = reduced_b(F, G, weights, d1, d2, max_degree=max_degree, certify=certify)
    mero = b_mero(F, G, m, max_degree=max_degree, certify=certify)
    simple = b_simple(F, G, m, max_degree=max_degree, certify=certify)
    report = ChainReport(mero, simple, reduced)
    if not report.holds:
        logger.warning("Chaîne de divisibilité rompue pour m=%d", m)
    return report
