"""
Lecture des expressions polynomiales de la ligne de commande.

Grammaire : entiers, rationnels p/q, variables [a-z][a-z0-9]*, opérateurs
+ - * / ^ (``**`` accepté) avec les précédences usuelles, parenthèses.
La division n'est permise que par une constante non nulle et les exposants
sont des entiers entre 0 et MAX_EXPONENT ; les puissances enchaînées
(x^2^3) sont refusées. L'analyse suit la méthode de Pratt
(puissances de liaison gauche/droite).
"""

import re
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement, PolyRing

from .annihilator import MAX_TOTAL_DEGREE
from .errors import PolySyntaxError
from .exact import format_poly, polynomial_ring

DEFAULT_VARIABLE = "x"
MAX_EXPONENT = MAX_TOTAL_DEGREE

TOKEN_PATTERN = re.compile(
    r"(?P<space>\s+)|(?P<num>\d+)|(?P<name>[a-z][a-z0-9]*)|(?P<op>\*\*|[-+*/^()])"
)

# Puissances de liaison (gauche)
BINDING = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 30, "**": 30}
PREFIX_BINDING = 25


class Token(NamedTuple):
    type: str
    value: str
    start: int
    end: int


def tokenize(source: str) -> List[Token]:
    """
    Découpe le texte en lexèmes.

    Raises:
        PolySyntaxError: Caractère inattendu (majuscule, symbole inconnu)
    """
    tokens = []
    position = 0
    while position < len(source):
        match = TOKEN_PATTERN.match(source, position)
        if match is None:
            raise PolySyntaxError(source, position, f"Caractère inattendu '{source[position]}'")
        kind = match.lastgroup
        if kind != "space":
            tokens.append(Token(kind, match.group(), match.start(), match.end()))
        position = match.end()
    tokens.append(Token("end", "", len(source), len(source)))
    return tokens


def collect_variables(tokens: Iterable[Token]) -> List[str]:
    return sorted({token.value for token in tokens if token.type == "name"})


class _Parser:
    """Analyseur de Pratt évaluant directement dans un anneau de polynômes."""

    def __init__(self, source: str, tokens: Sequence[Token], ring: PolyRing):
        self.source = source
        self.tokens = tokens
        self.ring = ring
        self.index = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def advance(self, expected: Optional[str] = None) -> Token:
        token = self.token
        if expected is not None and token.value != expected:
            found = "fin de l'expression" if token.type == "end" else f"'{token.value}'"
            raise PolySyntaxError(self.source, token.start, f"'{expected}' attendu, {found} trouvé")
        self.index += 1
        return token

    def error(self, token: Token, message: str) -> PolySyntaxError:
        return PolySyntaxError(self.source, token.start, message, token.end - token.start)

    def parse(self) -> PolyElement:
        if self.token.type == "end":
            raise self.error(self.token, "Expression vide")
        value = self.expression(0)
        if self.token.type != "end":
            raise self.error(self.token, f"Lexème inattendu '{self.token.value}'")
        return value

    def expression(self, rbp: int) -> PolyElement:
        left = self.nud(self.advance())
        while self.token.type == "op" and rbp < BINDING.get(self.token.value, 0):
            left = self.led(self.advance(), left)
        return left

    def nud(self, token: Token) -> PolyElement:
        if token.type == "num":
            return self.ring(int(token.value))
        if token.type == "name":
            return self.ring.gens[self._index(token)]
        if token.value == "(":
            value = self.expression(0)
            self.advance(")")
            return value
        if token.value == "-":
            return -self.expression(PREFIX_BINDING)
        if token.value == "+":
            return self.expression(PREFIX_BINDING)
        if token.type == "end":
            raise self.error(token, "Expression incomplète")
        raise self.error(token, f"Lexème inattendu '{token.value}'")

    def _index(self, token: Token) -> int:
        names = [str(sym) for sym in self.ring.symbols]
        return names.index(token.value)

    def led(self, token: Token, left: PolyElement) -> PolyElement:
        operator = token.value
        if operator in ("^", "**"):
            power = self.exponent()
            if self.token.value in ("^", "**"):
                raise self.error(self.token, "Puissances enchaînées ambiguës, parenthéser (a^b)^c")
            return left ** power
        right = self.expression(BINDING[operator])
        if operator == "+":
            return left + right
        if operator == "-":
            return left - right
        if operator == "*":
            return left * right
        if not right.is_ground or not right:
            raise self.error(token, "Division permise uniquement par une constante non nulle")
        return left.quo_ground(right.coeff(1))

    def exponent(self) -> int:
        """Exposant : entier entre 0 et MAX_EXPONENT, éventuellement parenthésé."""
        token = self.token
        if token.type == "num":
            self.advance()
            return self._bounded(token)
        if token.value == "(":
            self.advance()
            inner = self.token
            if inner.value == "-":
                raise self.error(inner, "Exposant négatif refusé")
            if inner.type != "num":
                raise self.error(inner, "Exposant entier attendu")
            self.advance()
            self.advance(")")
            return self._bounded(inner)
        if token.value == "-":
            raise self.error(token, "Exposant négatif refusé")
        raise self.error(token, "Exposant entier attendu")

    def _bounded(self, token: Token) -> int:
        value = int(token.value)
        if value > MAX_EXPONENT:
            raise self.error(token, f"Exposant {value} au-delà de {MAX_EXPONENT}")
        return value


@dataclass(frozen=True)
class PolyExpr:
    """
    Expression lue : texte source et polynôme exact.

    Args:
        source: Texte saisi
        poly: Polynôme de Q[variables]
    """

    source: str
    poly: PolyElement

    @property
    def canonical(self) -> str:
        """Forme canonique, relue à l'identique par parse_poly."""
        return format_poly(self.poly)

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(str(sym) for sym in self.poly.ring.symbols)

    def __str__(self) -> str:
        return self.canonical


def parse_polys(texts: Sequence[str], variables: Sequence[str] = ()) -> List[PolyExpr]:
    """
    Lit plusieurs expressions dans un anneau commun (réunion triée des variables).

    Args:
        texts: Expressions
        variables: Variables supplémentaires imposées

    Returns:
        Liste de PolyExpr partageant le même anneau

    Raises:
        PolySyntaxError: Erreur de syntaxe positionnée
    """
    tokenized = [(text, tokenize(text)) for text in texts]
    names = set(variables)
    for _, tokens in tokenized:
        names.update(collect_variables(tokens))
    ring = polynomial_ring(sorted(names) or [DEFAULT_VARIABLE])
    return [PolyExpr(text, _Parser(text, tokens, ring).parse()) for text, tokens in tokenized]


def parse_poly(text: str) -> PolyExpr:
    """Lit une expression polynomiale (voir parse_polys)."""
    return parse_polys([text])[0]
