"""
Idéaux multiplicateurs de f = F/G en coordonnées à croisements normaux.

Pour une carte (π = identité) où f = ∏ y_i^{c_i}, c_i = a_i - b_i, le monôme
y^u est dans I(f)_α si et seulement si u_i > α·c_i - 1 pour tout c_i > 0,
soit u_i ≥ ⌊α·c_i⌋. Les indices avec c_i ≤ 0 n'imposent rien.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.rings import PolyElement

from .exact import BFunction, ExactRational, floor_rational, format_rational, is_integer, rational
from .resolution import NCChart

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonomialIdeal:
    """
    Idéal monomial donné par une antichaîne minimale de vecteurs d'exposants.
    """

    generators: FrozenSet[Tuple[int, ...]]

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]]) -> "MonomialIdeal":
        """Retire les générateurs dominés par un autre."""
        vectors = sorted({tuple(int(x) for x in g) for g in generators})
        if not vectors:
            raise ValueError("Un idéal monomial a au moins un générateur")
        array = np.array(vectors, dtype=np.int64)
        minimal = []
        for i, v in enumerate(array):
            dominated = np.all(array <= v, axis=1)
            dominated[i] = False
            if not dominated.any():
                minimal.append(tuple(int(x) for x in v))
        return cls(frozenset(minimal))

    @classmethod
    def full(cls, dimension: int) -> "MonomialIdeal":
        return cls(frozenset({(0,) * dimension}))

    @property
    def dimension(self) -> int:
        return len(next(iter(self.generators)))

    def contains(self, exponents: Sequence[int]) -> bool:
        """Le monôme y^exponents est dominé par un générateur."""
        u = np.asarray(exponents, dtype=np.int64)
        if u.shape != (self.dimension,):
            raise ValueError(f"Exposant de dimension {u.size}, {self.dimension} attendue")
        array = np.array(sorted(self.generators), dtype=np.int64)
        return bool(np.any(np.all(array <= u, axis=1)))

    def is_full(self) -> bool:
        return (0,) * self.dimension in self.generators

    def __le__(self, other: "MonomialIdeal") -> bool:
        """Inclusion self ⊆ other."""
        return all(other.contains(g) for g in self.generators)

    def to_dict(self) -> Dict[str, object]:
        return {"generators": [list(g) for g in sorted(self.generators)], "full": self.is_full()}

    def __str__(self) -> str:
        if self.is_full():
            return "(1)"
        return "(" + ", ".join(_monomial_text(g) for g in sorted(self.generators)) + ")"


def _monomial_text(exponents: Sequence[int]) -> str:
    factors = [f"y{i + 1}" if e == 1 else f"y{i + 1}^{e}" for i, e in enumerate(exponents) if e]
    return "*".join(factors) or "1"


def _check_chart(chart: NCChart) -> None:
    if not chart.is_identity:
        raise ValueError(
            f"Carte '{chart.label}': kappa ≠ 0 ; seules les cartes de π = identité sont traitées"
        )


def _thresholds(chart: NCChart, alpha: ExactRational, before: bool = False) -> List[int]:
    """Exposants minimaux u_i ; before=True donne ceux de α - ε."""
    thresholds = []
    for c in chart.c:
        c = int(c)
        if c <= 0:
            thresholds.append(0)
            continue
        value = alpha * c
        if before:
            # ⌊(α - ε)c⌋ = ⌈αc⌉ - 1
            thresholds.append(-floor_rational(-value) - 1)
        else:
            thresholds.append(floor_rational(value))
    return thresholds


def multiplier_ideal_nc(chart: NCChart, alpha) -> MonomialIdeal:
    """
    Idéal multiplicateur I(f)_α sur une carte à croisements normaux.

    Args:
        chart: Carte de f elle-même (kappa = 0)
        alpha: Rationnel strictement positif

    Returns:
        Idéal monomial engendré par y^u, u_i = ⌊α c_i⌋ si c_i > 0, 0 sinon

    Raises:
        ValueError: α ≤ 0 ou kappa ≠ 0
    """
    alpha = rational(alpha)
    if alpha <= 0:
        raise ValueError("Le paramètre α doit être strictement positif")
    _check_chart(chart)
    return MonomialIdeal.from_generators([_thresholds(chart, alpha)])


def is_in_multiplier_ideal(h: PolyElement, alpha, chart: NCChart) -> bool:
    """
    Vrai si chaque monôme de h appartient à I(f)_α.

    Raises:
        ValueError: α ≤ 0, kappa ≠ 0 ou nombre de variables différent de la dimension
    """
    ideal = multiplier_ideal_nc(chart, alpha)
    if h.ring.ngens != chart.dimension:
        raise ValueError(f"h doit avoir {chart.dimension} variables (reçu {h.ring.ngens})")
    return all(ideal.contains(monom) for monom in h.monoms()) if h else True


def default_upper(chart: NCChart) -> ExactRational:
    """n + max c_i : fenêtre par défaut des nombres de saut."""
    return rational(chart.dimension + max(int(chart.c.max()), 0))


@dataclass(frozen=True)
class JumpReport:
    """
    Nombres de saut dans (0, upper] et idéaux entre deux sauts.

    Args:
        jumps: Sauts croissants
        ideals: ideals[0] sur (0, jumps[0]) ; ideals[j+1] sur [jumps[j], jumps[j+1])
        lct: Premier saut (None si aucun)
        upper: Borne de la fenêtre
    """

    jumps: Tuple[ExactRational, ...]
    ideals: Tuple[MonomialIdeal, ...]
    lct: Optional[ExactRational]
    upper: ExactRational

    def to_dict(self) -> Dict[str, object]:
        return {
            "jumps": [format_rational(j) for j in self.jumps],
            "ideals": [ideal.to_dict() for ideal in self.ideals],
            "lct": format_rational(self.lct) if self.lct is not None else None,
            "upper": format_rational(self.upper),
        }


def jumping_numbers_nc(chart: NCChart, upper=None) -> JumpReport:
    """
    Nombres de saut de α ↦ I(f)_α sur (0, upper].

    Les candidats sont les k/c_i (c_i > 0, k ≥ 1) ; chacun est confirmé en
    comparant les idéaux en α et en α - ε.

    Raises:
        ValueError: upper ≤ 0 ou kappa ≠ 0
    """
    _check_chart(chart)
    upper = default_upper(chart) if upper is None else rational(upper)
    if upper <= 0:
        raise ValueError("La borne supérieure doit être strictement positive")

    candidates = set()
    for c in chart.c:
        c = int(c)
        if c > 0:
            k = 1
            while rational(k, c) <= upper:
                candidates.add(rational(k, c))
                k += 1

    jumps = []
    ideals = [MonomialIdeal.full(chart.dimension)]
    for alpha in sorted(candidates):
        at = MonomialIdeal.from_generators([_thresholds(chart, alpha)])
        before = MonomialIdeal.from_generators([_thresholds(chart, alpha, before=True)])
        if at != before:
            jumps.append(alpha)
            ideals.append(at)
    lct = jumps[0] if jumps else None
    logger.debug("Carte %s: %d sauts dans (0, %s]", chart.label, len(jumps), format_rational(upper))
    return JumpReport(tuple(jumps), tuple(ideals), lct, upper)


def lct_from_bfunction(b0: BFunction) -> ExactRational:
    """Seuil log-canonique -max{racines de b_{f,0}}."""
    return -b0.max_root()


def lct_nc(chart: NCChart) -> ExactRational:
    """
    min_i 1/c_i sur les c_i > 0.

    Raises:
        ValueError: Aucun c_i > 0 (f n'a pas de pôle d'intégrabilité)
    """
    positive = [int(c) for c in chart.c if c > 0]
    if not positive:
        raise ValueError(f"Carte '{chart.label}': aucun c_i > 0")
    return rational(1, max(positive))


def check_cor_jump(report: JumpReport, b0: BFunction) -> bool:
    """
    Vrai si chaque saut s'écrit -r + i (r racine de b0, i ∈ Z≥0) et si le
    premier saut vaut -max(racines).

    Raises:
        ValueError: b0 non scindée
    """
    roots = b0.root_set()
    contained = all(
        any(is_integer(jump + r) and jump + r >= 0 for r in roots)
        for jump in report.jumps
    )
    return contained and report.lct == lct_from_bfunction(b0)
