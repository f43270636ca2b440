"""
Combinatoire des résolutions à croisements normaux.

Une carte décrit F∘π = ∏ y_i^{a_i}, G∘π = ∏ y_i^{b_i} (à une unité près) et
K_{Y/X} = Σ κ_i {y_i = 0}. Les ensembles K_q de racines candidates et leur
clôture par translations entières négatives majorent les racines des
b-fonctions méromorphes.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from .exact import BFunction, ExactRational, format_rational, fractional_part, is_integer, rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NCChart:
    """
    Données d'une carte d'une résolution à croisements normaux.

    Args:
        label: Nom de la carte
        a: Exposants de F∘π
        b: Exposants de G∘π
        kappa: Multiplicités de K_{Y/X} (zéro par défaut)

    Raises:
        ValueError: Vecteurs de longueurs différentes, entrées négatives ou a = b = 0
    """

    label: str
    a: npt.NDArray[np.int64]
    b: npt.NDArray[np.int64]
    kappa: Optional[npt.NDArray[np.int64]] = None

    def __post_init__(self):
        a = np.array(self.a, dtype=np.int64)
        b = np.array(self.b, dtype=np.int64)
        kappa = np.zeros_like(a) if self.kappa is None else np.array(self.kappa, dtype=np.int64)
        if a.ndim != 1 or a.shape != b.shape or a.shape != kappa.shape:
            raise ValueError(f"Carte '{self.label}': a, b et kappa doivent avoir la même longueur")
        if a.size == 0:
            raise ValueError(f"Carte '{self.label}': dimension nulle")
        if (a < 0).any() or (b < 0).any() or (kappa < 0).any():
            raise ValueError(f"Carte '{self.label}': les exposants doivent être positifs ou nuls")
        if not a.any() and not b.any():
            raise ValueError(f"Carte '{self.label}': a et b ne peuvent être tous deux nuls")
        for name, value in (("a", a), ("b", b), ("kappa", kappa)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def dimension(self) -> int:
        return int(self.a.size)

    @property
    def c(self) -> npt.NDArray[np.int64]:
        """c_i = a_i - b_i, ordre de f = F/G le long de y_i = 0."""
        return self.a - self.b

    @property
    def is_identity(self) -> bool:
        """Carte de π = identité : pas de diviseur canonique relatif."""
        return not self.kappa.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCChart):
            return NotImplemented
        return (
            self.label == other.label
            and np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
            and np.array_equal(self.kappa, other.kappa)
        )

    def __hash__(self) -> int:
        return hash((self.label, tuple(self.a), tuple(self.b), tuple(self.kappa)))

    def to_dict(self) -> Dict[str, object]:
        return {
            "label": self.label,
            "a": [int(x) for x in self.a],
            "b": [int(x) for x in self.b],
            "kappa": [int(x) for x in self.kappa],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object], position: int = 0) -> "NCChart":
        if not isinstance(data, dict):
            raise ValueError(f"Carte n°{position}: objet JSON attendu")
        for key in ("a", "b"):
            if key not in data:
                raise ValueError(f"Carte n°{position}: champ '{key}' manquant")
        values = {}
        for key in ("a", "b", "kappa"):
            value = data.get(key)
            if value is None:
                continue
            if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
                raise ValueError(f"Carte n°{position}: '{key}' doit être une liste d'entiers")
            values[key] = value
        return cls(str(data.get("label", f"chart{position}")), values["a"], values["b"], values.get("kappa"))


@dataclass(frozen=True)
class BoundSet:
    """
    Ensemble B = {r - l : r ∈ K, l ∈ Z≥0} représenté par ses résidus K.
    """

    residues: FrozenSet[ExactRational] = field(default_factory=frozenset)

    def __contains__(self, r) -> bool:
        return member(self, r)

    def sorted_residues(self) -> List[ExactRational]:
        return sorted(self.residues)

    def to_dict(self) -> Dict[str, object]:
        return {"residues": [format_rational(q) for q in self.sorted_residues()]}


def roots_nc(chart: NCChart, m: int = 0) -> FrozenSet[ExactRational]:
    """
    Ensemble K_q de la carte : ⋃_{i : a_i > b_i} {(m·b_i - k)/(a_i - b_i) : 1 ≤ k ≤ a_i - b_i}.

    Args:
        chart: Carte à croisements normaux
        m: Ordre du pôle

    Returns:
        Ensemble (sans multiplicités) de rationnels, vide si aucun a_i > b_i
    """
    if m < 0:
        raise ValueError("L'ordre m doit être positif ou nul")
    roots = set()
    for i in np.flatnonzero(chart.c > 0):
        c_i, b_i = int(chart.c[i]), int(chart.b[i])
        roots.update(rational(m * b_i - k, c_i) for k in range(1, c_i + 1))
    return frozenset(roots)


def bound_set(charts: Sequence[NCChart], m: int = 0) -> BoundSet:
    """
    Résidus K = ⋃_q K_q sur toutes les cartes.

    Raises:
        ValueError: Liste de cartes vide
    """
    if not charts:
        raise ValueError("Au moins une carte est requise")
    residues: FrozenSet[ExactRational] = frozenset()
    for chart in charts:
        residues |= roots_nc(chart, m)
    if not residues:
        logger.warning("Ensemble K vide : aucune racine n'est admissible")
    return BoundSet(residues)


def member(bound: BoundSet, r) -> bool:
    """Vrai s'il existe q ∈ K avec q - r ∈ Z≥0."""
    r = rational(r)
    return any(is_integer(q - r) and q >= r for q in bound.residues)


def eigenvalue_classes(roots: Iterable) -> FrozenSet[ExactRational]:
    """Parties fractionnaires {α} ∈ [0, 1) : chacune représente la valeur propre exp(2πiα)."""
    return frozenset(fractional_part(r) for r in roots)


@dataclass(frozen=True)
class Lemma4Result:
    """
    Inclusion racines(m') ⊂ ⋃_{i=0..l} (racines(m) - i).

    Args:
        holds: Inclusion vérifiée avec l ≤ l_cap
        l: Plus petit l convenable (None en cas d'échec)
        offenders: Racines sans translaté dans l'ensemble de référence
    """

    holds: bool
    l: Optional[int]
    offenders: Tuple[ExactRational, ...] = ()

    def __iter__(self):
        return iter((self.holds, self.l))

    def to_dict(self) -> Dict[str, object]:
        return {
            "holds": self.holds,
            "l": self.l,
            "offenders": [format_rational(r) for r in self.offenders],
        }


def check_lemma4(roots_small_m: Iterable, roots_big_m: Iterable, l_cap: int = 5) -> Lemma4Result:
    """
    Plus petit l ≤ l_cap tel que chaque racine r (ordre m') ait un r + i,
    0 ≤ i ≤ l, parmi les racines d'ordre m ≥ m'.
    """
    if l_cap < 0:
        raise ValueError("l_cap doit être positif ou nul")
    big = {rational(r) for r in roots_big_m}
    l, offenders = 0, []
    for r in sorted({rational(r) for r in roots_small_m}):
        shift = next((i for i in range(l_cap + 1) if r + i in big), None)
        if shift is None:
            offenders.append(r)
        else:
            l = max(l, shift)
    if offenders:
        return Lemma4Result(False, None, tuple(offenders))
    return Lemma4Result(True, l)


@dataclass(frozen=True)
class Thm41Report:
    """
    Confrontation des racines d'une b-fonction à l'ensemble B^π_{f,m}.

    Args:
        bound: Résidus K
        membership: (racine, appartient à B)
        negative: Toutes les racines sont < 0 (exigé pour m = 0 seulement)
    """

    m: int
    bound: BoundSet
    membership: Tuple[Tuple[ExactRational, bool], ...]
    negative: Optional[bool]

    @property
    def holds(self) -> bool:
        return all(ok for _, ok in self.membership) and self.negative is not False

    def to_dict(self) -> Dict[str, object]:
        return {
            "m": self.m,
            "bound": self.bound.to_dict(),
            "roots": [{"root": format_rational(r), "member": ok} for r, ok in self.membership],
            "negative": self.negative,
            "holds": self.holds,
        }


def check_thm41(b: BFunction, charts: Sequence[NCChart], m: int = 0) -> Thm41Report:
    """
    Vérifie que chaque racine de b appartient à B^π_{f,m} et, pour m = 0,
    qu'elle est strictement négative.

    Raises:
        ValueError: b non scindée sur Q
    """
    bound = bound_set(charts, m)
    roots = b.root_set()
    membership = tuple((r, member(bound, r)) for r in roots)
    negative = all(r < 0 for r in roots) if m == 0 else None
    return Thm41Report(m, bound, membership, negative)


def parse_charts(data: Dict[str, object]) -> List[NCChart]:
    """
    Lit le format {"charts": [{"label", "a", "b", "kappa"}]}.

    Raises:
        ValueError: Format invalide
    """
    if not isinstance(data, dict) or not isinstance(data.get("charts"), list):
        raise ValueError("Le fichier de cartes doit contenir une liste 'charts'")
    charts = [NCChart.from_dict(item, i) for i, item in enumerate(data["charts"])]
    if not charts:
        raise ValueError("La liste 'charts' est vide")
    dimensions = {chart.dimension for chart in charts}
    if len(dimensions) != 1:
        raise ValueError(f"Toutes les cartes doivent avoir la même dimension (reçu {sorted(dimensions)})")
    return charts


def load_charts(path: str) -> List[NCChart]:
    """Charge un fichier JSON de cartes."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as error:
        raise ValueError(f"Fichier de cartes illisible ({path}): {error}") from error
    return parse_charts(data)


def dump_charts(charts: Sequence[NCChart]) -> str:
    """Sérialise des cartes au format JSON (clés triées)."""
    return json.dumps({"charts": [chart.to_dict() for chart in charts]}, indent=2, sort_keys=True)
