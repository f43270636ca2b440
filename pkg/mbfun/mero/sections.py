# sections.py - Sections h·F^{-α}G^{-β}·f^{s+k} du module L = O[1/(FG)][s]f^s

from dataclasses import dataclass
from typing import Dict, Tuple

from sympy.polys.rings import PolyElement, PolyRing

from ..errors import SignatureError
from ..exact import S_VARIABLE, common_ring
from ..weyl import AlgebraSignature, WeylElement


class SectionContext:
    """
    Données partagées par les sections de f = F/G : anneau Q[x, s], F, G et
    leurs dérivées partielles.

    Args:
        F: Numérateur
        G: Dénominateur (non nul)
    """

    def __init__(self, F: PolyElement, G: PolyElement):
        if not G:
            raise ValueError("Le dénominateur G doit être non nul")
        base, (F0, G0) = common_ring(F, G)
        self.variables: Tuple[str, ...] = tuple(str(sym) for sym in base.symbols)
        if S_VARIABLE in self.variables:
            raise ValueError("Le nom 's' est réservé au paramètre")
        self.ring: PolyRing = common_ring(F0, G0, extra=(S_VARIABLE,))[0]
        self.F = F0.set_ring(self.ring)
        self.G = G0.set_ring(self.ring)
        self.s = self.ring.gens[-1]
        self.xs = self.ring.gens[:-1]
        self.dF = [self.F.diff(x) for x in self.xs]
        self.dG = [self.G.diff(x) for x in self.xs]
        self.FG = self.F * self.G
        self.operator_signature = AlgebraSignature.weyl(self.variables, (S_VARIABLE,))
        self._F_powers = {0: self.ring.one}
        self._G_powers = {0: self.ring.one}

    @property
    def n(self) -> int:
        return len(self.variables)

    def F_power(self, k: int) -> PolyElement:
        if k not in self._F_powers:
            self._F_powers[k] = self.F_power(k - 1) * self.F
        return self._F_powers[k]

    def G_power(self, k: int) -> PolyElement:
        if k not in self._G_powers:
            self._G_powers[k] = self.G_power(k - 1) * self.G
        return self._G_powers[k]

    def lift(self, poly: PolyElement) -> PolyElement:
        """Plonge un polynôme en x (ou en s) dans Q[x, s]."""
        return poly.set_ring(self.ring)


@dataclass(frozen=True)
class LaurentSection:
    """
    Section numerator · F^{-fpow} · G^{-gpow} · f^{s+shift} de L.

    La forme canonique (shift = 0) n'est obtenue que par renormalize().
    """

    numerator: PolyElement
    fpow: int
    gpow: int
    shift: int = 0

    @classmethod
    def power(cls, context: SectionContext, m: int = 0, k: int = 0) -> "LaurentSection":
        """La section f^{s+k}/G^m."""
        return cls(context.ring.one, 0, m, k)

    def derivative(self, i: int, context: SectionContext) -> "LaurentSection":
        """∂_i appliqué à la section (règle de Leibniz sur F^{s+k-α}G^{-s-k-β})."""
        x = context.xs[i]
        h = self.numerator
        k, alpha, beta = self.shift, self.fpow, self.gpow
        s = context.s
        numerator = (
            h.diff(x) * context.FG
            + h * (s + (k - alpha)) * context.dF[i] * context.G
            - h * (s + (beta + k)) * context.F * context.dG[i]
        )
        return LaurentSection(numerator, alpha + 1, beta + 1, k)

    def multiply(self, poly: PolyElement) -> "LaurentSection":
        return LaurentSection(self.numerator * poly, self.fpow, self.gpow, self.shift)

    def renormalize(self, context: SectionContext) -> "LaurentSection":
        """Ramène le décalage à 0 : f^{s+k} = F^k G^{-k} f^s."""
        fpow = self.fpow - self.shift
        gpow = self.gpow + self.shift
        numerator = self.numerator
        if fpow < 0:
            numerator = numerator * context.F_power(-fpow)
            fpow = 0
        if gpow < 0:
            numerator = numerator * context.G_power(-gpow)
            gpow = 0
        return LaurentSection(numerator, fpow, gpow, 0)

    def lift_to(self, fpow: int, gpow: int, context: SectionContext) -> "LaurentSection":
        """Réécrit la section (décalage nul) sur le dénominateur F^fpow G^gpow."""
        if self.shift:
            raise ValueError("Renormaliser la section avant de changer de dénominateur")
        if fpow < self.fpow or gpow < self.gpow:
            raise ValueError("Le nouveau dénominateur doit être un multiple de l'ancien")
        numerator = self.numerator * context.F_power(fpow - self.fpow) * context.G_power(gpow - self.gpow)
        return LaurentSection(numerator, fpow, gpow, 0)

    def is_zero(self) -> bool:
        return not self.numerator

    def equals(self, other: "LaurentSection", context: SectionContext) -> bool:
        """Égalité dans L, après réduction au même dénominateur."""
        a, b = self.renormalize(context), other.renormalize(context)
        fpow, gpow = max(a.fpow, b.fpow), max(a.gpow, b.gpow)
        return a.lift_to(fpow, gpow, context).numerator == b.lift_to(fpow, gpow, context).numerator


def add_sections(sections, context: SectionContext) -> LaurentSection:
    """Somme de sections, ramenées à décalage nul et à un dénominateur commun."""
    normalized = [v.renormalize(context) for v in sections]
    if not normalized:
        return LaurentSection(context.ring.zero, 0, 0, 0)
    fpow = max(v.fpow for v in normalized)
    gpow = max(v.gpow for v in normalized)
    numerator = context.ring.zero
    for v in normalized:
        numerator += v.lift_to(fpow, gpow, context).numerator
    return LaurentSection(numerator, fpow, gpow, 0)


def apply_operator(P: WeylElement, v: LaurentSection, context: SectionContext) -> LaurentSection:
    """
    Action exacte d'un opérateur de D_n[s] sur une section.

    Args:
        P: Opérateur en forme normale x^α ∂^β s^j
        v: Section
        context: Données de f = F/G

    Returns:
        Section P·v (décalage nul)

    Raises:
        SignatureError: Si P n'est pas un élément de D_n[s] sur les variables de f
    """
    if P.signature != context.operator_signature:
        raise SignatureError(
            f"L'opérateur doit vivre dans D_n[s] sur {context.variables}, reçu {P.signature.generators}"
        )
    n = context.n
    derivatives: Dict[Tuple[int, ...], LaurentSection] = {(0,) * n: v}

    def derivative(beta: Tuple[int, ...]) -> LaurentSection:
        if beta not in derivatives:
            i = next(j for j, b in enumerate(beta) if b)
            previous = beta[:i] + (beta[i] - 1,) + beta[i + 1:]
            derivatives[beta] = derivative(previous).derivative(i, context)
        return derivatives[beta]

    pieces = []
    for e, c in P.terms.items():
        alpha, beta, j = e[:n], e[n:2 * n], e[2 * n]
        monomial = context.ring.from_dict({tuple(alpha) + (j,): c})
        pieces.append(derivative(tuple(beta)).multiply(monomial))
    return add_sections(pieces, context)
