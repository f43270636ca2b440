"""
Oracle indépendant : recherche par algèbre linéaire exacte d'opérateurs
P_1..P_N ∈ D_n[s] tels que

    b(s)·(f^s/G^m) = Σ_{k=1..N} P_k(s)·(f^{s+k}/G^m).

Les coefficients inconnus des P_k entrent linéairement dans l'équation
réduite au même dénominateur ; on identifie les coefficients de chaque monôme
en (x, s) et on résout le système rationnel.
"""

import logging
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from ..errors import CertificationError
from ..exact import BFunction
from ..weyl import WeylElement
from .sections import LaurentSection, SectionContext, add_sections, apply_operator

logger = logging.getLogger(__name__)

DEFAULT_TERMS = 3
DEFAULT_DEGREE = 6


@dataclass(frozen=True)
class OracleResult:
    """
    Résultat de l'oracle ; un échec est une valeur (pas une réfutation).

    Args:
        success: Un témoin a été trouvé dans les bornes
        operators: Témoins P_1..P_N (vide en cas d'échec)
        terms: Plus petit N pour lequel un témoin existe
        bounds: Bornes utilisées (N, degré d'opérateur, degré en s)
    """

    success: bool
    operators: Tuple[WeylElement, ...] = ()
    terms: Optional[int] = None
    bounds: Tuple[int, int, int] = (DEFAULT_TERMS, DEFAULT_DEGREE, DEFAULT_DEGREE)

    def __bool__(self) -> bool:
        return self.success

    def to_dict(self) -> Dict[str, object]:
        return {
            "success": self.success,
            "terms": self.terms,
            "bounds": {"N": self.bounds[0], "deg": self.bounds[1], "s_degree": self.bounds[2]},
            "operators": [str(P) for P in self.operators],
        }


def homogeneity_weights(context: SectionContext) -> List[List[int]]:
    """
    Base entière des poids w sur les x_i rendant F et G homogènes.

    L'équation fonctionnelle se scinde en composantes homogènes : on peut
    restreindre P_k aux monômes x^α∂^β de poids w·(α - β) = -k(deg_w F - deg_w G).
    """
    n = context.n
    rows = []
    for poly in (context.F, context.G):
        monoms = [m[:n] for m in poly.monoms()]
        for m in monoms[1:]:
            rows.append([QQ(a - b) for a, b in zip(m, monoms[0])])
    if not rows:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    matrix = DomainMatrix(rows, (len(rows), n), QQ)
    basis = matrix.nullspace().to_Matrix()
    weights = []
    for r in range(basis.rows):
        vector = [QQ.from_sympy(basis[r, c]) for c in range(n)]
        scale = 1
        for value in vector:
            scale = scale * value.denominator // gcd(scale, value.denominator)
        weights.append([(value * scale).numerator for value in vector])
    return weights


def _weighted_degree(poly: PolyElement, w: Sequence[int], n: int) -> int:
    monom = poly.monoms()[0]
    return sum(a * b for a, b in zip(w, monom[:n]))


def _is_homogeneous(poly: PolyElement, w: Sequence[int], n: int) -> bool:
    return len({sum(a * b for a, b in zip(w, monom[:n])) for monom in poly.monoms()}) <= 1


def _operator_monomials(context: SectionContext, k: int, degree: int,
                        weights: List[List[int]],
                        offsets: Sequence[int]) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Monômes x^α∂^β de poids w·(α - β) = offset - k(deg_w F - deg_w G) pour chaque w."""
    n = context.n
    targets = [
        offset - k * (_weighted_degree(context.F, w, n) - _weighted_degree(context.G, w, n))
        for w, offset in zip(weights, offsets)
    ]
    monomials = []
    for total in range(degree + 1):
        for exponents in product(range(total + 1), repeat=2 * n):
            if sum(exponents) != total:
                continue
            alpha, beta = exponents[:n], exponents[n:]
            if all(sum(wi * (a - b) for wi, a, b in zip(w, alpha, beta)) == target
                   for w, target in zip(weights, targets)):
                monomials.append((alpha, beta))
    return monomials


def _solve(columns: List[Dict[Tuple[int, ...], object]], rhs: Dict[Tuple[int, ...], object]) -> Optional[List]:
    """Résout Σ c_j·colonne_j = rhs exactement ; None si incompatible."""
    rows_index: Dict[Tuple[int, ...], int] = {}
    for column in columns + [rhs]:
        for monom in column:
            if monom not in rows_index:
                rows_index[monom] = len(rows_index)
    ncols = len(columns) + 1
    entries: Dict[int, Dict[int, object]] = {}
    for j, column in enumerate(columns + [rhs]):
        for monom, value in column.items():
            entries.setdefault(rows_index[monom], {})[j] = value
    if not rows_index:
        return [QQ(0)] * len(columns)
    matrix = DomainMatrix(entries, (len(rows_index), ncols), QQ)
    reduced, pivots = matrix.rref()
    if ncols - 1 in pivots:
        return None
    rows = reduced.to_sparse().rep
    solution = [QQ(0)] * len(columns)
    for r, column in enumerate(pivots):
        solution[column] = rows.get(r, {}).get(ncols - 1, QQ(0))
    return solution


def verify_functional_equation(b: BFunction, F: PolyElement, G: PolyElement, m: int = 0,
                               N: int = DEFAULT_TERMS, deg: int = DEFAULT_DEGREE,
                               s_degree: Optional[int] = None,
                               prefactor: Optional[PolyElement] = None) -> OracleResult:
    """
    Cherche un témoin de l'équation fonctionnelle d'ordre m pour b.

    Args:
        b: Candidat b(s)
        F, G: Numérateur et dénominateur premiers entre eux
        m: Ordre du pôle le long de G
        N: Nombre maximal de termes f^{s+k}, k = 1..N
        deg: Degré total maximal (en x et ∂) des P_k
        s_degree: Degré maximal en s des P_k (deg par défaut)
        prefactor: Polynôme en x multipliant le membre de gauche (G^k pour
            l'équation dans le module localisé)

    Returns:
        OracleResult ; les témoins sont revérifiés par apply_operator

    Raises:
        ValueError: Bornes invalides
        CertificationError: Un témoin trouvé ne vérifie pas l'équation (incohérence interne)
    """
    if N < 1 or deg < 0 or m < 0:
        raise ValueError("Bornes invalides: N ≥ 1, deg ≥ 0 et m ≥ 0 requis")
    s_degree = deg if s_degree is None else s_degree
    bounds = (N, deg, s_degree)
    context = SectionContext(F, G)
    n = context.n
    weights = homogeneity_weights(context)
    offsets = [0] * len(weights)

    lhs_poly = context.lift(b.poly)
    if prefactor is not None:
        lifted_prefactor = context.lift(prefactor)
        lhs_poly = lhs_poly * lifted_prefactor
        # Un facteur non homogène pour w interdit la troncature selon w
        weights = [w for w in weights if _is_homogeneous(lifted_prefactor, w, n)]
        offsets = [_weighted_degree(lifted_prefactor, w, n) for w in weights]
    lhs = LaurentSection(lhs_poly, 0, m, 0)

    memo: Dict[Tuple[int, Tuple[int, ...]], LaurentSection] = {}

    def derivative(k: int, beta: Tuple[int, ...]) -> LaurentSection:
        key = (k, beta)
        if key not in memo:
            if not any(beta):
                memo[key] = LaurentSection.power(context, m, k)
            else:
                i = next(j for j, x in enumerate(beta) if x)
                previous = beta[:i] + (beta[i] - 1,) + beta[i + 1:]
                memo[key] = derivative(k, previous).derivative(i, context)
        return memo[key]

    for terms in range(1, N + 1):
        unknowns: List[Tuple[int, Tuple[int, ...], Tuple[int, ...], int]] = []
        sections: List[LaurentSection] = []
        for k in range(1, terms + 1):
            for alpha, beta in _operator_monomials(context, k, deg, weights, offsets):
                section = derivative(k, beta).renormalize(context)
                for j in range(s_degree + 1):
                    unknowns.append((k, alpha, beta, j))
                    sections.append(section)
        if not unknowns:
            continue

        fpow = max([v.fpow for v in sections] + [lhs.fpow])
        gpow = max([v.gpow for v in sections] + [lhs.gpow])
        lifted: Dict[Tuple[int, Tuple[int, ...]], PolyElement] = {}
        columns = []
        for (k, alpha, beta, j), section in zip(unknowns, sections):
            key = (k, beta)
            if key not in lifted:
                lifted[key] = section.lift_to(fpow, gpow, context).numerator
            shift = tuple(alpha) + (j,)
            columns.append({
                tuple(a + b for a, b in zip(monom, shift)): c for monom, c in lifted[key].terms()
            })
        rhs = dict(lhs.lift_to(fpow, gpow, context).numerator.terms())
        logger.debug("Oracle N=%d: %d inconnues", terms, len(unknowns))

        solution = _solve(columns, rhs)
        if solution is None:
            continue

        operators = []
        signature = context.operator_signature
        for k in range(1, terms + 1):
            coefficients = {}
            for (kk, alpha, beta, j), value in zip(unknowns, solution):
                if kk == k and value:
                    coefficients[tuple(alpha) + tuple(beta) + (j,)] = value
            operators.append(WeylElement(signature, coefficients))

        images = [apply_operator(P, LaurentSection.power(context, m, k), context)
                  for k, P in enumerate(operators, start=1)]
        if not add_sections(images, context).equals(lhs, context):
            raise CertificationError(f"Témoin de l'oracle invalide pour b = {b}")
        logger.info("Oracle: %s certifié avec N=%d", b, terms)
        return OracleResult(True, tuple(operators), terms, bounds)

    logger.info("Oracle: aucun témoin pour %s dans les bornes (N=%d, deg=%d)", b, N, deg)
    return OracleResult(False, (), None, bounds)


def describe(result: OracleResult) -> str:
    if not result:
        return "aucun témoin dans les bornes"
    return ", ".join(f"P_{k} = {P}" for k, P in enumerate(result.operators, start=1))


__all__ = ["OracleResult", "verify_functional_equation", "homogeneity_weights", "describe"]
