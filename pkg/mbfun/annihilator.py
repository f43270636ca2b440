"""
Annihilateurs de f^s et de F^{s1}·G^{s2}, polynôme de Bernstein-Sato classique
et spécialisation de Sabbah sur la droite s1 = s, s2 = -s-m-2.

Les annihilateurs sont calculés par élimination dans l'algèbre
D_n⟨s_j, ∂_{t_j}⟩ (une variable auxiliaire par facteur) :

    Ann f^s = ⟨ s_j + f_j ∂_{t_j},  ∂_i + Σ_j (∂_i f_j) ∂_{t_j} ⟩ ∩ D_n[s]
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from .errors import CapabilityError
from .exact import BFunction, S_VARIABLE, common_ring, format_poly, polynomial_ring, s_ring
from .groebner import LeftIdeal, eliminate
from .weyl import AlgebraSignature, WeylElement, derivation_name

logger = logging.getLogger(__name__)

MAX_VARIABLES = 3
MAX_TOTAL_DEGREE = 6

RESERVED_NAMES = {"s", "t", "h", "theta"}


def check_variable_names(variables: Sequence[str]) -> None:
    """
    Refuse les noms de variables qui entreraient en conflit avec les générateurs internes.

    Raises:
        ValueError: Nom réservé
    """
    for name in variables:
        if name in RESERVED_NAMES or name.startswith("d") or (name[0] == "s" and name[1:].isdigit()):
            raise ValueError(
                f"Nom de variable réservé: '{name}' (s, t, h, theta, s<k> et les noms en 'd' sont internes)"
            )


@dataclass(frozen=True)
class PowerProductSymbol:
    """
    Symbole ∏ F_j^{s_j} : facteurs polynomiaux et noms des paramètres s_j.

    Args:
        factors: Couples (polynôme non nul, nom du paramètre)
    """

    factors: Tuple[Tuple[PolyElement, str], ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("Le symbole doit avoir au moins un facteur")
        names = [name for _, name in self.factors]
        if len(set(names)) != len(names):
            raise ValueError(f"Les paramètres doivent être distincts: {names}")
        for poly, name in self.factors:
            if not poly:
                raise ValueError(f"Le facteur associé à {name} est nul")
        _, polys = common_ring(*[p for p, _ in self.factors])
        object.__setattr__(self, "factors", tuple(zip(polys, names)))

    @property
    def ring(self):
        return self.factors[0][0].ring

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(str(sym) for sym in self.ring.symbols)

    @property
    def parameters(self) -> Tuple[str, ...]:
        return tuple(name for _, name in self.factors)

    @property
    def signature(self) -> AlgebraSignature:
        """D_n[s_1..s_k]."""
        return AlgebraSignature.weyl(self.variables, self.parameters)

    def __str__(self) -> str:
        return "·".join(f"({format_poly(p)})^{name}" for p, name in self.factors)


def ann_fs(symbol: PowerProductSymbol, max_degree: Optional[int] = None) -> LeftIdeal:
    """
    Annihilateur de ∏ F_j^{s_j} dans D_n[s_1..s_k].

    Args:
        symbol: Symbole produit de puissances
        max_degree: Plafond de degré des bases de Gröbner

    Returns:
        Idéal à gauche de D_n[s_1..s_k]

    Raises:
        CapabilityError: Entrée hors de l'échelle supportée (n ≤ 3, degré ≤ 6)
    """
    variables = symbol.variables
    check_variable_names(variables)
    if len(variables) > MAX_VARIABLES:
        raise CapabilityError(f"Au plus {MAX_VARIABLES} variables (reçu {len(variables)})")
    for poly, name in symbol.factors:
        if max(sum(m) for m in poly.monoms()) > MAX_TOTAL_DEGREE:
            raise CapabilityError(f"Degré total ≤ {MAX_TOTAL_DEGREE} requis pour le facteur de {name}")

    algebra = AlgebraSignature.annihilator_algebra(variables, symbol.parameters)
    generators: List[WeylElement] = []
    dt = {name: WeylElement.generator(algebra, f"dt{name}") for name in symbol.parameters}
    for poly, name in symbol.factors:
        f = WeylElement.from_polynomial(algebra, poly)
        generators.append(WeylElement.generator(algebra, name) + f * dt[name])
    for i, x in enumerate(variables):
        op = WeylElement.generator(algebra, derivation_name(x))
        for poly, name in symbol.factors:
            derivative = poly.diff(poly.ring.gens[i])
            if derivative:
                op = op + WeylElement.from_polynomial(algebra, derivative) * dt[name]
        generators.append(op)

    ideal = LeftIdeal(algebra, generators)
    result = eliminate(ideal, [f"dt{name}" for name in symbol.parameters], max_degree)
    logger.info("Ann %s : %d générateurs", symbol, len(result))
    return result


def specialize_parameters(ideal: LeftIdeal, target: AlgebraSignature,
                          images: Dict[str, PolyElement]) -> List[WeylElement]:
    """
    Applique une substitution aux paramètres centraux (s1 -> s, s2 -> -s-m, ...).

    Args:
        ideal: Idéal d'une algèbre D_n[s_1..s_k]
        target: Algèbre d'arrivée D_n[s]
        images: Image de chaque paramètre, polynôme de Q[s]

    Returns:
        Images des générateurs (les images nulles sont omises)
    """
    source = ideal.signature
    parameters = [source.index(name) for name in images]
    others = [i for i in range(source.ngens) if i not in parameters]
    image_elements = {name: WeylElement.from_polynomial(target, poly) for name, poly in images.items()}
    results = []
    for g in ideal.generators:
        total = WeylElement.zero(target)
        for e, c in g.terms.items():
            exponents = [0] * target.ngens
            for i in others:
                exponents[target.index(source.generators[i])] = e[i]
            term = WeylElement.monomial(target, tuple(exponents), c)
            for name, position in zip(images, parameters):
                if e[position]:
                    term = term * image_elements[name] ** e[position]
            total = total + term
        if total:
            results.append(total)
    return results


def univariate_generator(ideal: LeftIdeal) -> PolyElement:
    """Générateur unitaire (pgcd) d'un idéal de Q[s] donné par ses générateurs."""
    R = s_ring()
    result = R.zero
    for g in ideal.generators:
        result = result.gcd(g.to_polynomial(R)) if result else g.to_polynomial(R)
    return result.monic() if result else result


def bernstein_sato(F: PolyElement, max_degree: Optional[int] = None) -> BFunction:
    """
    Polynôme de Bernstein-Sato b_F(s) : générateur de (Ann F^s + D[s]F) ∩ Q[s].

    Args:
        F: Polynôme non constant
        max_degree: Plafond de degré des bases de Gröbner

    Returns:
        b-fonction unitaire

    Raises:
        ValueError: Si F est constant
        CapabilityError: Entrée trop grosse
    """
    if F.is_ground:
        raise ValueError("Le polynôme F doit être non constant")
    if F.coeff(1):
        logger.warning("F(0) ≠ 0 : calcul global, la b-fonction locale en 0 est triviale")
    symbol = PowerProductSymbol(((F, S_VARIABLE),))
    annihilator = ann_fs(symbol, max_degree)
    signature = annihilator.signature
    ideal = LeftIdeal(signature, annihilator.generators + (WeylElement.from_polynomial(signature, symbol.factors[0][0]),))
    drop = [name for name in signature.generators if name != S_VARIABLE]
    eliminated = eliminate(ideal, drop, max_degree)
    b = univariate_generator(eliminated)
    if not b:
        raise CapabilityError("L'élimination a renvoyé l'idéal nul")
    result = BFunction.from_poly(b)
    logger.info("b_F pour F = %s : %s", format_poly(F), result)
    return result


def check_coprime(F: PolyElement, G: PolyElement) -> None:
    """
    Vérifie que F et G sont premiers entre eux (pgcd commutatif).

    Raises:
        ValueError: Facteur commun non constant ou polynôme nul
    """
    if not F or not G:
        raise ValueError("F et G doivent être non nuls")
    _, (F, G) = common_ring(F, G)
    common = F.gcd(G)
    if not common.is_ground:
        raise ValueError(f"F et G ont un facteur commun: {format_poly(common)}")


def sabbah_line(F: PolyElement, G: PolyElement, m: int, max_degree: Optional[int] = None) -> BFunction:
    """
    Spécialisation b(s) = b̂(s, -s-m-2) d'un élément de l'idéal de Bernstein-Sato de (F, G).

    Le résultat est le générateur de l'image de (Ann F^{s1}G^{s2} + D·FG) ∩ Q[s1, s2]
    par la spécialisation ; c'est un multiple de la b-fonction méromorphe d'ordre m.

    Raises:
        ValueError: F, G non premiers entre eux ou m < 0
        CapabilityError: Spécialisation identiquement nulle ou entrée trop grosse
    """
    if m < 0:
        raise ValueError("L'ordre m doit être positif ou nul")
    check_coprime(F, G)
    _, (F, G) = common_ring(F, G)
    if G.is_ground:
        # L'idéal de Bernstein-Sato de (F, c) est engendré par b_F(s1).
        return bernstein_sato(F, max_degree)

    symbol = PowerProductSymbol(((F, "s1"), (G, "s2")))
    annihilator = ann_fs(symbol, max_degree)
    signature = annihilator.signature
    FG = WeylElement.from_polynomial(signature, symbol.factors[0][0] * symbol.factors[1][0])
    ideal = LeftIdeal(signature, annihilator.generators + (FG,))
    drop = [name for name in signature.generators if name not in ("s1", "s2")]
    eliminated = eliminate(ideal, drop, max_degree)

    R2 = polynomial_ring(["s1", "s2"])
    R = s_ring()
    s = R.gens[0]
    line = R.zero
    for g in eliminated.generators:
        poly = g.to_polynomial(R2)
        image = R.zero
        for (i, j), c in poly.terms():
            image += s ** i * (-s - m - 2) ** j * c
        if image:
            line = line.gcd(image) if line else image
    if not line:
        raise CapabilityError(
            f"Spécialisation nulle: aucun élément calculé de l'idéal de Bernstein-Sato "
            f"ne survit à s1 = s, s2 = -s-{m + 2}"
        )
    result = BFunction.from_poly(line)
    logger.info("Droite de Sabbah (m=%d): %s", m, result)
    return result
