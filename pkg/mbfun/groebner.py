"""
Bases de Gröbner à gauche dans les algèbres PBW, élimination et formes initiales.

L'algorithme de Buchberger suit la variante à critères de Gebauer-Möller
(stratégie normale). Le critère du produit n'est pas valide pour les
relations non commutatives : seul le critère de chaîne est appliqué.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import CapabilityError, SignatureError
from .exact import ExactRational
from .weyl import WEYL, AlgebraSignature, Exponent, WeylElement

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 24


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _quotient(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class MonomialOrder:
    """
    Ordre monomial sur les vecteurs d'exposants.

    Args:
        kind: "degrevlex", "lex" ou "weight" (poids puis degrevlex)
        weights: Vecteur de poids entiers (ordre "weight" uniquement)
    """

    kind: str = "degrevlex"
    weights: Optional[Tuple[int, ...]] = None
    key: Callable[[Exponent], tuple] = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind == "degrevlex":
            key = _degrevlex_key
        elif self.kind == "lex":
            key = tuple
        elif self.kind == "weight":
            if self.weights is None:
                raise SignatureError("Un ordre à poids demande un vecteur de poids")
            w = self.weights

            def key(e, w=w):
                return (sum(a * b for a, b in zip(w, e)),) + _degrevlex_key(e)
        else:
            raise SignatureError(f"Ordre monomial inconnu: {self.kind}")
        object.__setattr__(self, "key", key)

    @classmethod
    def degrevlex(cls) -> "MonomialOrder":
        return cls("degrevlex")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def weight(cls, weights: Sequence[int]) -> "MonomialOrder":
        return cls("weight", tuple(int(w) for w in weights))

    @classmethod
    def elimination(cls, signature: AlgebraSignature, drop: Iterable[str]) -> "MonomialOrder":
        """Poids 1 sur les générateurs à éliminer, 0 ailleurs, départage degrevlex."""
        dropped = {signature.index(name) for name in drop}
        return cls.weight([1 if i in dropped else 0 for i in range(signature.ngens)])

    @property
    def is_well_order(self) -> bool:
        return self.weights is None or all(w >= 0 for w in self.weights)

    def check_admissible(self, signature: AlgebraSignature) -> None:
        """
        Vérifie la contrainte u(a) + u(b) ≥ 0 sur chaque paire de Weyl.

        Raises:
            SignatureError: Poids inadmissible ou de longueur incorrecte
        """
        if self.weights is None:
            return
        if len(self.weights) != signature.ngens:
            raise SignatureError(
                f"Le vecteur de poids doit avoir {signature.ngens} composantes, reçu {len(self.weights)}"
            )
        for relation in signature.relations:
            a, b = self.weights[relation.left], self.weights[relation.right]
            if relation.kind == WEYL and a + b < 0:
                raise SignatureError(
                    f"Poids inadmissible: u({signature.generators[relation.left]}) + "
                    f"u({signature.generators[relation.right]}) = {a + b} < 0"
                )
            if relation.kind != WEYL and a < 0:
                raise SignatureError("Les relations de décalage demandent un poids positif sur s")
        if not self.is_well_order and not signature.is_weyl:
            raise SignatureError("Les poids négatifs ne sont gérés que dans les algèbres de Weyl")

    def leading(self, element: WeylElement) -> Exponent:
        return max(element.terms, key=self.key)


def _degrevlex_key(e: Exponent) -> tuple:
    return (sum(e),) + tuple(-x for x in reversed(e))


class LeftIdeal:
    """
    Idéal à gauche d'une algèbre PBW, avec cache des bases de Gröbner par ordre.
    """

    def __init__(self, signature: AlgebraSignature, generators: Iterable[WeylElement]):
        self.signature = signature
        gens = []
        for g in generators:
            if g.signature != signature:
                raise SignatureError("Tous les générateurs doivent appartenir à la même algèbre")
            if g:
                gens.append(g)
        self.generators: Tuple[WeylElement, ...] = tuple(gens)
        self._bases: Dict[MonomialOrder, Tuple[WeylElement, ...]] = {}

    def basis(self, order: MonomialOrder, max_degree: Optional[int] = None) -> Tuple[WeylElement, ...]:
        """Base de Gröbner à gauche pour l'ordre donné (calculée une seule fois)."""
        if order not in self._bases:
            self._bases[order] = _compute_basis(self, order, max_degree)
        return self._bases[order]

    def cache_basis(self, order: MonomialOrder, basis: Sequence[WeylElement]) -> None:
        self._bases[order] = tuple(basis)

    def normal_form(self, element: WeylElement, order: Optional[MonomialOrder] = None,
                    max_degree: Optional[int] = None) -> WeylElement:
        order = order or MonomialOrder.degrevlex()
        return normal_form(element, self.basis(order, max_degree), order)

    def contains(self, element: WeylElement, order: Optional[MonomialOrder] = None,
                 max_degree: Optional[int] = None) -> bool:
        """Appartenance par réduction à zéro contre une base de Gröbner."""
        return self.normal_form(element, order, max_degree).is_zero()

    def is_zero(self) -> bool:
        return not self.generators

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self) -> str:
        return "⟨" + ", ".join(str(g) for g in self.generators) + "⟩"


# ----------------------------------------------------------------------
# Réduction
# ----------------------------------------------------------------------
def normal_form(element: WeylElement, basis: Sequence[WeylElement], order: MonomialOrder) -> WeylElement:
    """
    Forme normale complète de element modulo une base de Gröbner à gauche.

    Raises:
        SignatureError: Si l'ordre n'est pas un bon ordre
    """
    if not order.is_well_order:
        raise SignatureError("Forme normale indisponible pour un ordre qui n'est pas un bon ordre")
    return _reduce(element, basis, order)


def _reduce(element: WeylElement, basis: Sequence[WeylElement], order: MonomialOrder) -> WeylElement:
    key = order.key
    reducers = [(order.leading(g), g) for g in basis if g]
    reducers = [(lm, g.terms[lm], g) for lm, g in reducers]
    pending: Dict[Exponent, ExactRational] = dict(element.terms)
    remainder: Dict[Exponent, ExactRational] = {}
    while pending:
        m = max(pending, key=key)
        c = pending[m]
        for lm, lc, g in reducers:
            if _divides(lm, m):
                factor = c / lc
                for e, v in g.left_multiply_monomial(_quotient(m, lm)).terms.items():
                    value = pending.get(e, 0) - factor * v
                    if value:
                        pending[e] = value
                    else:
                        pending.pop(e, None)
                break
        else:
            remainder[m] = c
            del pending[m]
    return WeylElement(element.signature, remainder)


def _s_polynomial(f: WeylElement, g: WeylElement, order: MonomialOrder) -> WeylElement:
    lf, lg = order.leading(f), order.leading(g)
    gamma = _lcm(lf, lg)
    left = f.left_multiply_monomial(_quotient(gamma, lf)).scale(g.terms[lg])
    right = g.left_multiply_monomial(_quotient(gamma, lg)).scale(f.terms[lf])
    return left - right


# ----------------------------------------------------------------------
# Buchberger
# ----------------------------------------------------------------------
def _buchberger(generators: Sequence[WeylElement], order: MonomialOrder, max_degree: int) -> List[WeylElement]:
    key = order.key
    polys: List[WeylElement] = []
    lms: List[Exponent] = []
    active: Set[int] = set()
    pairs: Set[Tuple[int, int]] = set()

    def check_degree(element: WeylElement) -> None:
        if element.degree() > max_degree:
            raise CapabilityError(
                f"Degré total {element.degree()} au-delà du plafond {max_degree} "
                f"(augmenter MBFUN_MAX_DEGREE)"
            )

    def update(ih: int) -> None:
        nonlocal active, pairs
        mh = lms[ih]
        candidates = sorted(active)
        kept: List[int] = []
        for position, ig in enumerate(candidates):
            lcm_hg = _lcm(mh, lms[ig])

            def lcm_divides(ip: int) -> bool:
                return _divides(_lcm(mh, lms[ip]), lcm_hg)

            if not any(lcm_divides(ip) for ip in candidates[position + 1:]) and \
                    not any(lcm_divides(ip) for ip in kept):
                kept.append(ig)

        filtered = set()
        for i1, i2 in pairs:
            lcm12 = _lcm(lms[i1], lms[i2])
            if not _divides(mh, lcm12) or _lcm(lms[i1], mh) == lcm12 or _lcm(lms[i2], mh) == lcm12:
                filtered.add((i1, i2))
        filtered.update((ig, ih) for ig in kept)
        pairs = filtered
        active = {ig for ig in active if not _divides(mh, lms[ig])}
        active.add(ih)

    def add(element: WeylElement) -> None:
        lm = order.leading(element)
        element = element.content_normalized(lm)
        check_degree(element)
        polys.append(element)
        lms.append(lm)
        update(len(polys) - 1)

    for g in sorted(generators, key=lambda g: key(order.leading(g))):
        r = _reduce(g, [polys[i] for i in sorted(active)], order)
        if r:
            add(r)

    steps = 0
    while pairs:
        pair = min(pairs, key=lambda p: (key(_lcm(lms[p[0]], lms[p[1]])), p))
        pairs.remove(pair)
        s = _s_polynomial(polys[pair[0]], polys[pair[1]], order)
        r = _reduce(s, [polys[i] for i in sorted(active)], order)
        steps += 1
        if r:
            add(r)
        if steps % 50 == 0:
            logger.debug("Buchberger: %d paires traitées, base %d, %d paires restantes",
                         steps, len(active), len(pairs))

    return [polys[i] for i in sorted(active)]


def _interreduce(basis: Sequence[WeylElement], order: MonomialOrder, tails: bool = True) -> List[WeylElement]:
    """Base minimale (puis réduite si tails), triée par monôme dominant croissant."""
    key = order.key
    ordered = sorted(basis, key=lambda g: key(order.leading(g)))
    minimal: List[WeylElement] = []
    for g in ordered:
        lm = order.leading(g)
        if not any(_divides(order.leading(h), lm) for h in minimal):
            minimal.append(g)
    if not tails:
        return minimal
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lm = order.leading(g)
        tail = WeylElement(g.signature, {e: c for e, c in g.terms.items() if e != lm})
        r = _reduce(tail, others, order) + WeylElement.monomial(g.signature, lm, g.terms[lm])
        reduced.append(r.content_normalized(lm))
    return reduced


def homogenize(element: WeylElement, target: AlgebraSignature) -> WeylElement:
    """Homogénéise par rapport au degré total avec le générateur central h."""
    degree = element.degree()
    position = target.homogenizer
    terms = {}
    for e, c in element.terms.items():
        image = list(e) + [0]
        image[position] = degree - sum(e)
        terms[tuple(image)] = c
    return WeylElement(target, terms)


def dehomogenize(element: WeylElement, target: AlgebraSignature) -> WeylElement:
    position = element.signature.homogenizer
    terms: Dict[Exponent, ExactRational] = {}
    for e, c in element.terms.items():
        image = tuple(x for i, x in enumerate(e) if i != position)
        terms[image] = terms.get(image, 0) + c
    return WeylElement(target, terms)


def _compute_basis(ideal: LeftIdeal, order: MonomialOrder, max_degree: Optional[int]) -> Tuple[WeylElement, ...]:
    order.check_admissible(ideal.signature)
    cap = DEFAULT_MAX_DEGREE if max_degree is None else max_degree
    if not ideal.generators:
        return ()
    if order.is_well_order:
        basis = _interreduce(_buchberger(ideal.generators, order, cap), order)
    else:
        # Poids négatifs : Buchberger dans l'algèbre homogénéisée, h en dernier.
        signature = ideal.signature
        hsig = signature.homogenized()
        horder = MonomialOrder.weight(order.weights + (0,))
        hbasis = _buchberger([homogenize(g, hsig) for g in ideal.generators], horder, cap)
        basis = _interreduce([dehomogenize(g, signature) for g in hbasis], order, tails=False)
    logger.debug("Base de Gröbner (%s) de %d éléments", order.kind, len(basis))
    return tuple(basis)


def groebner_left(ideal: LeftIdeal, order: Optional[MonomialOrder] = None,
                  max_degree: Optional[int] = None) -> LeftIdeal:
    """
    Base de Gröbner à gauche d'un idéal.

    Args:
        ideal: Idéal à gauche
        order: Ordre monomial admissible (degrevlex par défaut)
        max_degree: Plafond de degré total (CapabilityError au-delà)

    Returns:
        Idéal engendré par la base, base en cache pour cet ordre
    """
    order = order or MonomialOrder.degrevlex()
    basis = ideal.basis(order, max_degree)
    result = LeftIdeal(ideal.signature, basis)
    result.cache_basis(order, basis)
    return result


def eliminate(ideal: LeftIdeal, drop: Iterable[str], max_degree: Optional[int] = None) -> LeftIdeal:
    """
    Intersection de l'idéal avec la sous-algèbre des générateurs conservés.

    Args:
        ideal: Idéal à gauche
        drop: Noms des générateurs à éliminer ; les paires de Weyl (x, dx)
            doivent être éliminées ensemble

    Returns:
        Idéal de la sous-algèbre, avec sa base de Gröbner degrevlex en cache

    Raises:
        SignatureError: Ensemble d'élimination invalide
    """
    signature = ideal.signature
    drop = list(drop)
    dropped = {signature.index(name) for name in drop}
    for relation in signature.relations:
        if relation.kind == WEYL and ((relation.left in dropped) != (relation.right in dropped)):
            raise SignatureError(
                f"Élimination invalide: la paire ({signature.generators[relation.left]}, "
                f"{signature.generators[relation.right]}) doit être éliminée en entier"
            )
    order = MonomialOrder.elimination(signature, drop)
    basis = ideal.basis(order, max_degree)
    kept = [i for i in range(signature.ngens) if i not in dropped]
    sub = signature.restrict(kept)
    survivors = [g.restrict(sub) for g in basis if not g.involves(dropped)]
    result = LeftIdeal(sub, survivors)
    result.cache_basis(MonomialOrder.degrevlex(), survivors)
    logger.debug("Élimination de %s: %d générateurs conservés", drop, len(survivors))
    return result


def initial_form(element: WeylElement, weights: Sequence[int], target: AlgebraSignature) -> WeylElement:
    """Composante de poids maximal d'un élément."""
    degree = max(sum(w * x for w, x in zip(weights, e)) for e in element.terms)
    return WeylElement(target, {
        e: c for e, c in element.terms.items() if sum(w * x for w, x in zip(weights, e)) == degree
    })


def initial_ideal_weight(ideal: LeftIdeal, weights: Sequence[int],
                         max_degree: Optional[int] = None) -> LeftIdeal:
    """
    Idéal initial pour un vecteur de poids (u, v) avec u + v ≥ 0 sur chaque paire.

    Les paires de poids total nul gardent leur relation ; celles de poids
    total positif commutent dans le gradué associé.

    Returns:
        Idéal des formes initiales, avec en cache sa base de Gröbner degrevlex

    Raises:
        SignatureError: Poids inadmissible
    """
    signature = ideal.signature
    order = MonomialOrder.weight(weights)
    order.check_admissible(signature)
    graded = [r for r in signature.relations if weights[r.left] + weights[r.right] > 0]
    target = signature.without_relations(graded) if graded else signature
    basis = ideal.basis(order, max_degree)
    forms = [initial_form(g, order.weights, target) for g in basis]
    result = LeftIdeal(target, forms)
    result.cache_basis(MonomialOrder.degrevlex(), result.generators)
    return result


# ----------------------------------------------------------------------
# Polynômes minimaux par dépendance linéaire
# ----------------------------------------------------------------------
def first_linear_dependency(vectors: Sequence[Dict[Exponent, ExactRational]]) -> Optional[List[ExactRational]]:
    """
    Exprime le dernier vecteur comme combinaison des précédents (supposés libres).

    Returns:
        Coefficients c_0..c_{k-1} avec v_k = Σ c_i v_i, ou None si v_k est libre
    """
    k = len(vectors) - 1
    monomials = sorted({e for v in vectors for e in v})
    if not monomials:
        return [QQ(0)] * k
    rows = [[v.get(e, QQ(0)) for v in vectors] for e in monomials]
    matrix = DomainMatrix(rows, (len(monomials), k + 1), QQ)
    reduced, pivots = matrix.rref()
    if k in pivots:
        return None
    entries = reduced.to_Matrix()
    coefficients = [QQ(0)] * k
    for row, column in enumerate(pivots):
        coefficients[column] = QQ.from_sympy(entries[row, k])
    return coefficients


def minimal_polynomial(power: Callable[[int], WeylElement], reduce: Callable[[WeylElement], WeylElement],
                       max_degree: int) -> List[ExactRational]:
    """
    Polynôme minimal d'un élément agissant sur un quotient, par dépendance
    linéaire des formes normales de ses puissances.

    Args:
        power: k -> k-ième puissance (ou image) de l'élément
        reduce: Forme normale modulo l'idéal
        max_degree: Degré maximal essayé

    Returns:
        Coefficients (du terme constant au terme dominant, unitaire)

    Raises:
        CapabilityError: Aucune dépendance jusqu'au degré max_degree
    """
    vectors: List[Dict[Exponent, ExactRational]] = []
    for k in range(max_degree + 1):
        vectors.append(dict(reduce(power(k)).terms))
        coefficients = first_linear_dependency(vectors)
        if coefficients is not None:
            return [-c for c in coefficients] + [QQ(1)]
    raise CapabilityError(f"Aucun polynôme minimal de degré ≤ {max_degree}")
