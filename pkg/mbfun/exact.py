# exact.py - Arithmétique rationnelle exacte, polynômes et b-fonctions

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

# Les scalaires sont les éléments du domaine QQ de sympy (gmpy2.mpq ou PythonMPQ).
ExactRational = type(QQ(1))
MultiPoly = PolyElement

S_VARIABLE = "s"
THETA_VARIABLE = "theta"


def rational(p, q: int = 1) -> ExactRational:
    """
    Construit un rationnel exact en termes réduits.

    Args:
        p: Numérateur (entier, Fraction ou rationnel exact)
        q: Dénominateur non nul

    Returns:
        Élément de QQ
    """
    if q == 0:
        raise ZeroDivisionError("Le dénominateur doit être non nul")
    if isinstance(p, Fraction):
        return QQ(p.numerator, p.denominator * q)
    if isinstance(p, ExactRational):
        return p / q
    return QQ(p, q)


def format_rational(q) -> str:
    """Sérialise un rationnel sous la forme "p/q" (entiers sans dénominateur)."""
    q = rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> ExactRational:
    """
    Lit un rationnel écrit "p/q" ou "p".

    Raises:
        ValueError: Si le texte n'est pas un rationnel
    """
    parts = str(text).strip().split("/")
    if len(parts) > 2 or not all(part.strip().lstrip("+-").isdigit() for part in parts):
        raise ValueError(f"Rationnel invalide: '{text}'")
    if len(parts) == 1:
        return QQ(int(parts[0]))
    return rational(int(parts[0]), int(parts[1]))


def floor_rational(q) -> int:
    """Partie entière inférieure exacte."""
    q = rational(q)
    return q.numerator // q.denominator


def fractional_part(q) -> ExactRational:
    """Partie fractionnaire dans [0, 1)."""
    q = rational(q)
    return q - floor_rational(q)


def is_integer(q) -> bool:
    return rational(q).denominator == 1


def polynomial_ring(variables: Sequence[str]) -> PolyRing:
    """
    Anneau de polynômes sur Q en les variables données.

    Les anneaux sont mis en cache par sympy : deux appels identiques
    renvoient le même objet.
    """
    if not variables:
        raise ValueError("Un anneau de polynômes demande au moins une variable")
    return ring(list(variables), QQ)[0]


def s_ring() -> PolyRing:
    """Anneau Q[s] des b-fonctions."""
    return polynomial_ring([S_VARIABLE])


def theta_ring() -> PolyRing:
    """Anneau Q[θ] des polynômes minimaux le long de t = 0."""
    return polynomial_ring([THETA_VARIABLE])


def common_ring(*polys: PolyElement, extra: Iterable[str] = ()) -> Tuple[PolyRing, List[PolyElement]]:
    """
    Plonge des polynômes dans l'anneau de la réunion (triée) de leurs variables.

    Args:
        polys: Polynômes, éventuellement d'anneaux différents
        extra: Variables supplémentaires à ajouter en fin de liste

    Returns:
        (anneau commun, polynômes convertis)
    """
    names = sorted({str(sym) for p in polys for sym in p.ring.symbols})
    names += [name for name in extra if name not in names]
    R = polynomial_ring(names)
    return R, [p.set_ring(R) for p in polys]


def substitute_affine(p: PolyElement, a, b, target: Optional[PolyRing] = None) -> PolyElement:
    """
    Calcule p(a·v + b) pour un polynôme univarié p.

    Args:
        p: Polynôme univarié
        a, b: Coefficients rationnels de la substitution affine
        target: Anneau univarié d'arrivée (par défaut Q[s])

    Returns:
        Polynôme de l'anneau cible
    """
    target = target or s_ring()
    v = target.gens[0]
    image = target.zero
    affine = v * rational(a) + rational(b)
    for (k,), c in p.terms():
        image += affine ** k * c
    return image


def rational_roots(p: PolyElement) -> Tuple[List[Tuple[ExactRational, int]], PolyElement]:
    """
    Extrait les racines rationnelles d'un polynôme univarié.

    Args:
        p: Polynôme univarié non nul

    Returns:
        (liste triée des (racine, multiplicité), reste sans racine rationnelle)
        avec p = reste · ∏ (s - r)^mult

    Raises:
        ValueError: Si p est nul ou n'est pas univarié
    """
    if not p:
        raise ValueError("Le polynôme doit être non nul")
    if p.ring.ngens != 1:
        raise ValueError("rational_roots attend un polynôme univarié")

    v = p.ring.gens[0]
    _, factors = p.factor_list()
    roots: Dict[ExactRational, int] = {}
    for factor, multiplicity in factors:
        if factor.degree() != 1:
            continue
        a = factor.coeff(v)
        b = factor.coeff(1)
        root = -rational(b) / rational(a)
        roots[root] = roots.get(root, 0) + multiplicity

    linear = p.ring.one
    for root, multiplicity in roots.items():
        linear *= (v - root) ** multiplicity
    remainder = p.exquo(linear)
    return sorted(roots.items()), remainder


def poly_divides(a: PolyElement, b: PolyElement) -> bool:
    """
    Teste si a divise b exactement sur Q.

    Raises:
        ValueError: Si a est nul
    """
    if not a:
        raise ValueError("Le diviseur doit être non nul")
    if a.ring != b.ring:
        _, (a, b) = common_ring(a, b)
    return not b.rem(a)


@dataclass(frozen=True)
class BFunction:
    """
    b-fonction : polynôme unitaire en s et multi-ensemble de ses racines.

    Les racines ne sont présentes que si le polynôme est scindé sur Q ;
    elles sont triées par ordre croissant.
    """

    poly: PolyElement
    roots: Optional[Tuple[Tuple[ExactRational, int], ...]]

    @classmethod
    def from_poly(cls, p: PolyElement) -> "BFunction":
        """Rend p unitaire (dans Q[s]) et le factorise si possible."""
        if not p:
            raise ValueError("Une b-fonction est non nulle")
        if p.ring.ngens != 1:
            raise ValueError("Une b-fonction est un polynôme univarié")
        R = s_ring()
        if p.ring != R:
            p = R.from_dict({k: c for k, c in p.items()})
        p = p.monic()
        roots, remainder = rational_roots(p)
        split = remainder.is_ground
        return cls(poly=p, roots=tuple(roots) if split else None)

    @classmethod
    def from_roots(cls, roots: Iterable[Tuple[object, int]]) -> "BFunction":
        """Construit ∏ (s - r)^mult à partir de couples (racine, multiplicité)."""
        R = s_ring()
        s = R.gens[0]
        p = R.one
        for root, multiplicity in roots:
            p *= (s - rational(root)) ** int(multiplicity)
        return cls.from_poly(p)

    @property
    def degree(self) -> int:
        return self.poly.degree()

    @property
    def is_split(self) -> bool:
        return self.roots is not None

    def roots_list(self) -> List[ExactRational]:
        """Racines triées, répétées selon leur multiplicité."""
        if self.roots is None:
            raise ValueError(f"{self} n'est pas scindé sur Q")
        return [r for r, k in self.roots for _ in range(k)]

    def root_set(self) -> List[ExactRational]:
        if self.roots is None:
            raise ValueError(f"{self} n'est pas scindé sur Q")
        return [r for r, _ in self.roots]

    def max_root(self) -> ExactRational:
        return self.root_set()[-1]

    def evaluate(self, value) -> ExactRational:
        return self.poly(rational(value))

    def divides(self, other: "BFunction") -> bool:
        return poly_divides(self.poly, other.poly)

    def quotient_by_root(self, root) -> "BFunction":
        """b(s) / (s - r) pour une racine r."""
        s = self.poly.ring.gens[0]
        quotient, remainder = divmod(self.poly, s - rational(root))
        if remainder:
            raise ValueError(f"{format_rational(root)} n'est pas racine de {self}")
        return BFunction.from_poly(quotient)

    def __mul__(self, other: "BFunction") -> "BFunction":
        return BFunction.from_poly(self.poly * other.poly)

    def coefficients(self) -> List[str]:
        """Coefficients en "p/q", du degré le plus haut au terme constant."""
        s = self.poly.ring.gens[0]
        return [format_rational(self.poly.coeff(s ** k) if k else self.poly.coeff(1))
                for k in range(self.degree, -1, -1)]

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {
            "poly": format_poly(self.poly),
            "degree": self.degree,
            "coefficients": self.coefficients(),
        }
        if self.roots is None:
            data["roots"] = None
        else:
            data["roots"] = [{"root": format_rational(r), "multiplicity": k} for r, k in self.roots]
        return data

    def __str__(self) -> str:
        if self.roots is None or not self.roots:
            return format_poly(self.poly)
        factors = []
        for root, multiplicity in reversed(self.roots):
            if root == 0:
                factor = "s"
            elif root < 0:
                factor = f"(s + {format_rational(-root)})"
            else:
                factor = f"(s - {format_rational(root)})"
            factors.append(factor if multiplicity == 1 else f"{factor}^{multiplicity}")
        return "*".join(factors)


def format_poly(p: PolyElement) -> str:
    """Forme canonique d'un polynôme, relisible par le parseur ("^" pour les puissances)."""
    return str(p).replace("**", "^")
