"""
Exceptions de la librairie mbfun.

Les erreurs de paramètres restent des ``ValueError`` ; les échecs de calcul
(plafonds atteints, certification impossible) dérivent de ``MBFunError`` et
correspondent au code de sortie 1 de la ligne de commande.
"""


class MBFunError(Exception):
    """Erreur de calcul de la librairie."""


class CapabilityError(MBFunError):
    """Le calcul dépasse les bornes configurées (degré, taille, recherche)."""


class CertificationError(MBFunError):
    """Le moteur et l'oracle d'équation fonctionnelle sont en désaccord."""


class SignatureError(ValueError):
    """Éléments d'algèbres différentes, ordre ou ensemble d'élimination invalide."""


class PolySyntaxError(ValueError):
    """
    Erreur de syntaxe positionnée dans une expression polynomiale.

    Args:
        source: Texte analysé
        offset: Position (0-indexée) du premier caractère fautif
        message: Description de l'erreur
        length: Nombre de caractères à souligner
    """

    def __init__(self, source: str, offset: int, message: str, length: int = 1):
        self.source = source
        self.offset = offset
        self.length = max(1, length)
        before = source[:offset]
        self.line = before.count("\n") + 1
        self.column = offset - (before.rfind("\n") + 1) + 1
        self.message = message
        super().__init__(f"{message} (ligne {self.line}, colonne {self.column})")

    def display(self) -> str:
        """Rend l'erreur avec la ligne fautive soulignée."""
        lines = self.source.split("\n")
        code = lines[self.line - 1] if self.line - 1 < len(lines) else ""
        highlight = " " * (self.column - 1) + "^" * self.length
        return f"{self}:\n  {code}\n  {highlight}"

