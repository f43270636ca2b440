"""
Algèbres PBW : algèbre de Weyl D_n, paramètres centraux et torsion ts = (s+1)t.

Une algèbre est décrite par une suite ordonnée de générateurs et une table de
relations entre paires (a, b) avec a placé avant b :

- relation de Weyl      : b·a = a·b + c      (c = 1, ou c·h² dans l'algèbre homogénéisée)
- relation de décalage  : b·a = (a + c)·b    (t·s = (s+1)·t, ∂_t·s = (s-1)·∂_t)

Toutes les autres paires commutent. Un monôme est un vecteur d'exposants lu
dans l'ordre de la suite (forme normale) ; un élément est un dictionnaire
monôme -> coefficient rationnel.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial, gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.rings import PolyElement

from .errors import SignatureError
from .exact import ExactRational, format_rational, rational

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]

WEYL = "weyl"
SHIFT = "shift"

HOMOGENIZER = "h"
T_VARIABLE = "t"


def derivation_name(variable: str) -> str:
    """Nom du générateur dérivation associé à une variable (x -> dx)."""
    return f"d{variable}"


@dataclass(frozen=True)
class Relation:
    """Relation entre les générateurs d'indices left < right."""

    left: int
    right: int
    kind: str
    constant: int = 1


@lru_cache(maxsize=65536)
def _block_product(kind: str, constant: int, homogenized: bool, q: int, r: int) -> Tuple[Tuple[int, int, int, int], ...]:
    """
    Réécrit b^q·a^r en forme normale.

    Returns:
        Termes (exposant de a, exposant de b, coefficient entier, exposant de h)
    """
    if kind == WEYL:
        return tuple(
            (r - k, q - k, factorial(k) * comb(q, k) * comb(r, k) * constant ** k, 2 * k if homogenized else 0)
            for k in range(min(q, r) + 1)
        )
    # b^q a^r = (a + c q)^r b^q
    return tuple((k, q, comb(r, k) * (constant * q) ** (r - k), 0) for k in range(r + 1))


@dataclass(frozen=True)
class AlgebraSignature:
    """
    Signature d'une algèbre PBW : générateurs ordonnés et table de relations.

    Args:
        generators: Noms des générateurs dans l'ordre normal
        relations: Relations non commutatives entre paires
        homogenizer: Indice du générateur central h de l'algèbre homogénéisée
    """

    generators: Tuple[str, ...]
    relations: Tuple[Relation, ...] = ()
    homogenizer: Optional[int] = None
    _products: Dict[Tuple[Exponent, Exponent], Tuple[Tuple[Exponent, int], ...]] = field(
        default_factory=dict, compare=False, hash=False, repr=False
    )

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise SignatureError(f"Générateurs dupliqués: {self.generators}")
        used = set()
        for relation in self.relations:
            if not 0 <= relation.left < relation.right < len(self.generators):
                raise SignatureError(f"Relation invalide: {relation}")
            if relation.left in used or relation.right in used:
                raise SignatureError("Chaque générateur appartient à au plus une relation")
            if relation.kind not in (WEYL, SHIFT):
                raise SignatureError(f"Type de relation inconnu: {relation.kind}")
            if relation.kind == SHIFT and self.homogenizer is not None:
                raise SignatureError("L'homogénéisation ne concerne que les relations de Weyl")
            used.update((relation.left, relation.right))

    # ------------------------------------------------------------------
    # Constructeurs des familles d'algèbres
    # ------------------------------------------------------------------
    @classmethod
    def weyl(cls, variables: Sequence[str], parameters: Sequence[str] = ()) -> "AlgebraSignature":
        """D_n[paramètres] : x_1..x_n, dx_1..dx_n, puis les paramètres centraux."""
        n = len(variables)
        generators = tuple(variables) + tuple(derivation_name(v) for v in variables) + tuple(parameters)
        relations = tuple(Relation(i, n + i, WEYL) for i in range(n))
        return cls(generators, relations)

    @classmethod
    def annihilator_algebra(cls, variables: Sequence[str], parameters: Sequence[str]) -> "AlgebraSignature":
        """
        D_n⟨s_j, ∂_{t_j}⟩ avec ∂_{t_j}·s_j = (s_j - 1)·∂_{t_j}.

        Une variable auxiliaire t_j par facteur ; ∂_{t_j} se nomme "dt<s_j>".
        """
        n, k = len(variables), len(parameters)
        generators = (
            tuple(variables)
            + tuple(derivation_name(v) for v in variables)
            + tuple(parameters)
            + tuple(f"dt{p}" for p in parameters)
        )
        relations = tuple(Relation(i, n + i, WEYL) for i in range(n))
        relations += tuple(Relation(2 * n + j, 2 * n + k + j, SHIFT, -1) for j in range(k))
        return cls(generators, relations)

    @classmethod
    def shift_algebra(cls, variables: Sequence[str], parameter: str = "s") -> "AlgebraSignature":
        """D_n[s]⟨t⟩ avec t·s = (s+1)·t."""
        n = len(variables)
        generators = tuple(variables) + tuple(derivation_name(v) for v in variables) + (parameter, T_VARIABLE)
        relations = tuple(Relation(i, n + i, WEYL) for i in range(n))
        relations += (Relation(2 * n, 2 * n + 1, SHIFT, 1),)
        return cls(generators, relations)

    @classmethod
    def graph_algebra(cls, variables: Sequence[str]) -> "AlgebraSignature":
        """D_{n+1} en les variables x_1..x_n, t."""
        return cls.weyl(tuple(variables) + (T_VARIABLE,))

    def homogenized(self) -> "AlgebraSignature":
        """Algèbre de Weyl homogénéisée : h central en dernière position, ∂x = x∂ + h²."""
        if any(r.kind != WEYL for r in self.relations):
            raise SignatureError("Seules les algèbres de Weyl s'homogénéisent")
        if self.homogenizer is not None:
            return self
        if HOMOGENIZER in self.generators:
            raise SignatureError(f"Le nom '{HOMOGENIZER}' est réservé à l'homogénéisation")
        return AlgebraSignature(self.generators + (HOMOGENIZER,), self.relations, len(self.generators))

    def restrict(self, kept: Sequence[int]) -> "AlgebraSignature":
        """Sous-algèbre engendrée par les générateurs d'indices donnés (dans l'ordre)."""
        kept = sorted(kept)
        position = {old: new for new, old in enumerate(kept)}
        relations = tuple(
            Relation(position[r.left], position[r.right], r.kind, r.constant)
            for r in self.relations
            if r.left in position and r.right in position
        )
        homogenizer = position.get(self.homogenizer) if self.homogenizer is not None else None
        return AlgebraSignature(tuple(self.generators[i] for i in kept), relations, homogenizer)

    def without_relations(self, pairs: Iterable[Relation]) -> "AlgebraSignature":
        """Même suite de générateurs, relations données rendues commutatives (gradué associé)."""
        dropped = set(pairs)
        return AlgebraSignature(
            self.generators,
            tuple(r for r in self.relations if r not in dropped),
            self.homogenizer,
        )

    # ------------------------------------------------------------------
    # Accès
    # ------------------------------------------------------------------
    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise SignatureError(f"Générateur inconnu '{name}' dans {self.generators}") from None

    def relation_of(self, index: int) -> Optional[Relation]:
        for relation in self.relations:
            if index in (relation.left, relation.right):
                return relation
        return None

    def is_central(self, index: int) -> bool:
        return self.relation_of(index) is None

    @property
    def is_weyl(self) -> bool:
        return all(r.kind == WEYL for r in self.relations)

    # ------------------------------------------------------------------
    # Produit de monômes
    # ------------------------------------------------------------------
    def monomial_product(self, m1: Exponent, m2: Exponent) -> Tuple[Tuple[Exponent, int], ...]:
        """
        Forme normale du produit de deux monômes.

        Le coefficient du terme x^(m1+m2) vaut toujours 1 ; les autres termes
        proviennent des relations, bloc par bloc.
        """
        key = (m1, m2)
        cached = self._products.get(key)
        if cached is not None:
            return cached

        base = [a + b for a, b in zip(m1, m2)]
        partial: List[Tuple[List[int], int]] = [(base, 1)]
        homogenized = self.homogenizer is not None
        for relation in self.relations:
            a, b = relation.left, relation.right
            q, r = m1[b], m2[a]
            if q == 0 or r == 0:
                continue
            block = _block_product(relation.kind, relation.constant, homogenized, q, r)
            expanded = []
            for exponents, coefficient in partial:
                for ea, eb, c, eh in block:
                    e = list(exponents)
                    e[a] = m1[a] + ea
                    e[b] = eb + m2[b]
                    if eh:
                        e[self.homogenizer] += eh
                    expanded.append((e, coefficient * c))
            partial = expanded

        result = tuple((tuple(e), c) for e, c in partial if c)
        self._products[key] = result
        return result

    def check_consistency(self) -> bool:
        """
        Vérifie l'associativité de la forme normale sur tous les triplets de générateurs.

        Returns:
            True si (g_i g_j) g_k = g_i (g_j g_k) pour tous i, j, k
        """
        n = self.ngens
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    gi, gj, gk = (WeylElement.generator(self, self.generators[x]) for x in (i, j, k))
                    if (gi * gj) * gk != gi * (gj * gk):
                        logger.warning("Associativité violée pour (%s, %s, %s)",
                                       self.generators[i], self.generators[j], self.generators[k])
                        return False
        return True


Scalar = Union[int, ExactRational]


class WeylElement:
    """
    Élément d'une algèbre PBW en forme normale.

    Les coefficients sont des rationnels exacts ; aucun coefficient nul n'est
    stocké.
    """

    __slots__ = ("signature", "terms")

    def __init__(self, signature: AlgebraSignature, terms: Mapping[Exponent, Scalar]):
        self.signature = signature
        self.terms: Dict[Exponent, ExactRational] = {}
        for exponents, coefficient in terms.items():
            if coefficient:
                if len(exponents) != signature.ngens:
                    raise SignatureError(f"Exposant {exponents} de longueur incorrecte pour {signature.generators}")
                self.terms[tuple(exponents)] = rational(coefficient)

    # ------------------------------------------------------------------
    # Constructeurs
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, signature: AlgebraSignature) -> "WeylElement":
        return cls(signature, {})

    @classmethod
    def constant(cls, signature: AlgebraSignature, value: Scalar) -> "WeylElement":
        return cls(signature, {(0,) * signature.ngens: value})

    @classmethod
    def monomial(cls, signature: AlgebraSignature, exponents: Exponent, coefficient: Scalar = 1) -> "WeylElement":
        return cls(signature, {tuple(exponents): coefficient})

    @classmethod
    def generator(cls, signature: AlgebraSignature, name: str) -> "WeylElement":
        exponents = [0] * signature.ngens
        exponents[signature.index(name)] = 1
        return cls(signature, {tuple(exponents): 1})

    @classmethod
    def from_polynomial(cls, signature: AlgebraSignature, poly: PolyElement) -> "WeylElement":
        """
        Plonge un polynôme commutatif (variables x_i ou paramètres centraux).

        Les variables du polynôme doivent être des générateurs de la signature
        qui commutent entre eux.
        """
        positions = [signature.index(str(sym)) for sym in poly.ring.symbols]
        terms: Dict[Exponent, ExactRational] = {}
        for monom, coefficient in poly.terms():
            e = [0] * signature.ngens
            for position, power in zip(positions, monom):
                e[position] += power
            terms[tuple(e)] = coefficient
        return cls(signature, terms)

    # ------------------------------------------------------------------
    # Arithmétique
    # ------------------------------------------------------------------
    def _coerce(self, other) -> "WeylElement":
        if isinstance(other, WeylElement):
            if other.signature != self.signature:
                raise SignatureError(
                    f"Signatures incompatibles: {self.signature.generators} et {other.signature.generators}"
                )
            return other
        if isinstance(other, (int, ExactRational)):
            return WeylElement.constant(self.signature, other)
        return NotImplemented

    def __add__(self, other) -> "WeylElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return WeylElement(self.signature, terms)

    __radd__ = __add__

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.signature, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "WeylElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "WeylElement":
        return (-self) + other

    def scale(self, factor: Scalar) -> "WeylElement":
        factor = rational(factor)
        if not factor:
            return WeylElement.zero(self.signature)
        return WeylElement(self.signature, {e: c * factor for e, c in self.terms.items()})

    def __mul__(self, other) -> "WeylElement":
        if isinstance(other, (int, ExactRational)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return normal_order(self, other)

    def __rmul__(self, other) -> "WeylElement":
        if isinstance(other, (int, ExactRational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "WeylElement":
        if k < 0:
            raise ValueError("Exposant négatif")
        result = WeylElement.constant(self.signature, 1)
        for _ in range(k):
            result = result * self
        return result

    def left_multiply_monomial(self, exponents: Exponent, coefficient: Scalar = 1) -> "WeylElement":
        """Produit x^exponents · self."""
        terms: Dict[Exponent, ExactRational] = {}
        product = self.signature.monomial_product
        for e, c in self.terms.items():
            for monom, k in product(exponents, e):
                terms[monom] = terms.get(monom, 0) + c * k
        result = WeylElement(self.signature, terms)
        return result if coefficient == 1 else result.scale(coefficient)

    # ------------------------------------------------------------------
    # Comparaisons et accès
    # ------------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, ExactRational)):
            other = WeylElement.constant(self.signature, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.signature == other.signature and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.signature.generators, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Degré total (hors générateur d'homogénéisation compris)."""
        return max((sum(e) for e in self.terms), default=-1)

    def involves(self, indices: Iterable[int]) -> bool:
        indices = list(indices)
        return any(e[i] for e in self.terms for i in indices)

    def content_normalized(self, leading: Optional[Exponent] = None) -> "WeylElement":
        """
        Partie primitive : coefficients entiers premiers entre eux, coefficient
        dominant positif.
        """
        if not self.terms:
            return self
        denominators = 1
        for c in self.terms.values():
            d = c.denominator
            denominators = denominators * d // gcd(denominators, d)
        numerators = 0
        for c in self.terms.values():
            numerators = gcd(numerators, int((c * denominators).numerator))
        factor = rational(denominators, numerators)
        if leading is not None and self.terms[leading] < 0:
            factor = -factor
        return self.scale(factor)

    # ------------------------------------------------------------------
    # Changements d'algèbre
    # ------------------------------------------------------------------
    def embed(self, target: AlgebraSignature) -> "WeylElement":
        """Transporte l'élément dans une signature contenant les mêmes noms de générateurs."""
        positions = [target.index(name) for name in self.signature.generators]
        terms = {}
        for e, c in self.terms.items():
            image = [0] * target.ngens
            for position, power in zip(positions, e):
                image[position] += power
            terms[tuple(image)] = c
        return WeylElement(target, terms)

    def restrict(self, target: AlgebraSignature) -> "WeylElement":
        """Transporte l'élément dans une sous-algèbre (les générateurs omis doivent être absents)."""
        positions = [self.signature.index(name) for name in target.generators]
        missing = [i for i in range(self.signature.ngens) if i not in positions]
        if self.involves(missing):
            raise SignatureError("L'élément fait intervenir des générateurs éliminés")
        return WeylElement(target, {tuple(e[p] for p in positions): c for e, c in self.terms.items()})

    def to_polynomial(self, ring) -> PolyElement:
        """Convertit un élément commutatif en polynôme de l'anneau donné (mêmes noms)."""
        names = [str(sym) for sym in ring.symbols]
        positions = [self.signature.index(name) for name in names]
        others = [i for i in range(self.signature.ngens) if i not in positions]
        if self.involves(others):
            raise SignatureError(f"L'élément {self} ne vit pas dans Q[{', '.join(names)}]")
        return ring.from_dict({tuple(e[p] for p in positions): c for e, c in self.terms.items()})

    # ------------------------------------------------------------------
    # Affichage
    # ------------------------------------------------------------------
    def sorted_terms(self) -> List[Tuple[Exponent, ExactRational]]:
        """Termes par degré décroissant puis ordre lexicographique inverse (déterministe)."""
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            factors = [
                name if power == 1 else f"{name}^{power}"
                for name, power in zip(self.signature.generators, e)
                if power
            ]
            magnitude = -c if c < 0 else c
            if not factors:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_rational(magnitude)] + factors)
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"WeylElement({self})"


def normal_order(a: WeylElement, b: WeylElement) -> WeylElement:
    """
    Produit a·b remis en forme normale via la table de relations.

    Raises:
        SignatureError: Si les deux éléments ne sont pas dans la même algèbre
    """
    if a.signature != b.signature:
        raise SignatureError(
            f"Signatures incompatibles: {a.signature.generators} et {b.signature.generators}"
        )
    product = a.signature.monomial_product
    terms: Dict[Exponent, ExactRational] = {}
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            c = c1 * c2
            for monom, k in product(e1, e2):
                terms[monom] = terms.get(monom, 0) + c * k
    return WeylElement(a.signature, terms)
