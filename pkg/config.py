"""
Configuration management for mbfun.
"""

import json
import logging
import os
import sys
from pathlib import Path
from typing import Dict, Any, Optional

ENV_MAX_DEGREE = "MBFUN_MAX_DEGREE"
ENV_CONFIG = "MBFUN_CONFIG"
ENV_LOG_LEVEL = "MBFUN_LOG_LEVEL"

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class BFunctionConfig:
    """Gestionnaire de configuration des calculs de b-fonctions."""

    def __init__(self, config_path: Optional[str] = None, use_environment: bool = True):
        """
        Initialise la configuration : défauts, fichier, puis variables d'environnement.

        Args:
            config_path: Chemin vers le fichier de configuration (optionnel)
            use_environment: Appliquer MBFUN_CONFIG, MBFUN_MAX_DEGREE et MBFUN_LOG_LEVEL
        """
        self.config_path = config_path
        self._config = self._load_default_config()

        if use_environment and os.environ.get(ENV_CONFIG):
            self.load_from_file(os.environ[ENV_CONFIG])
        if config_path:
            self.load_from_file(config_path)
        if use_environment:
            self.apply_environment(os.environ)

    def _load_default_config(self) -> Dict[str, Any]:
        """Configuration par défaut."""
        return {
            "engine": {
                "max_degree": 24,              # Plafond de degré total des bases de Gröbner
                "max_bfunction_degree": 16,    # Plafond des recherches de polynômes minimaux
                "saturation_steps": 4          # Puissances de G essayées (b-fonction réduite)
            },
            "oracle": {
                "N": 3,                # Nombre de termes f^{s+k}
                "deg": 6,              # Degré des opérateurs témoins en (x, ∂)
                "s_degree": None,      # Degré en s (None = deg)
                "certify": True,       # Certifier les résultats
                "refine": True         # Laisser l'oracle raffiner un majorant
            },
            "lemma4": {
                "l_cap": 5             # Translation maximale testée
            },
            "jumping": {
                "upper": None          # Borne des sauts (None = n + max c_i)
            },
            "report": {
                "schema_version": "1.0",
                "include_timing": False
            },
            "logging": {
                "level": "WARNING"
            }
        }

    def load_from_file(self, config_path: str) -> None:
        """
        Charge la configuration depuis un fichier JSON.

        Args:
            config_path: Chemin vers le fichier de configuration

        Raises:
            ValueError: Fichier introuvable, JSON invalide ou racine non objet
        """
        if not Path(config_path).is_file():
            raise ValueError(f"Fichier de configuration introuvable: {config_path}")
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                file_config = json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"Erreur de parsing JSON dans {config_path}: {e}") from None
        if not isinstance(file_config, dict):
            raise ValueError(f"{config_path}: un objet JSON est attendu à la racine")

        # Mise à jour récursive de la configuration
        self._update_config(self._config, file_config)

    def apply_environment(self, environ: Dict[str, str]) -> None:
        """
        Applique MBFUN_MAX_DEGREE et MBFUN_LOG_LEVEL.

        Raises:
            ValueError: MBFUN_MAX_DEGREE n'est pas un entier
        """
        if environ.get(ENV_MAX_DEGREE):
            try:
                self.set("engine", "max_degree", int(environ[ENV_MAX_DEGREE]))
            except ValueError:
                raise ValueError(f"{ENV_MAX_DEGREE} doit être un entier (reçu '{environ[ENV_MAX_DEGREE]}')")
        if environ.get(ENV_LOG_LEVEL):
            self.set("logging", "level", environ[ENV_LOG_LEVEL].upper())

    def save_to_file(self, config_path: str) -> None:
        """
        Sauvegarde la configuration dans un fichier JSON.

        Args:
            config_path: Chemin de destination
        """
        try:
            with open(config_path, 'w', encoding='utf-8') as f:
                json.dump(self._config, f, indent=2, ensure_ascii=False)
            print(f"✅ Configuration sauvegardée: {config_path}")
        except OSError as e:
            print(f"❌ Erreur lors de la sauvegarde: {e}")

    def _update_config(self, base: Dict[str, Any], update: Dict[str, Any]) -> None:
        """Mise à jour récursive de la configuration."""
        for key, value in update.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                self._update_config(base[key], value)
            else:
                base[key] = value

    def get(self, section: str, key: Optional[str] = None) -> Any:
        """
        Récupère une valeur de configuration.

        Args:
            section: Section de configuration
            key: Clé spécifique (optionnel)

        Returns:
            Valeur de configuration
        """
        if section not in self._config:
            raise KeyError(f"Section '{section}' non trouvée")

        if key is None:
            return self._config[section]

        if key not in self._config[section]:
            raise KeyError(f"Clé '{key}' non trouvée dans '{section}'")

        return self._config[section][key]

    def set(self, section: str, key: str, value: Any) -> None:
        """
        Définit une valeur de configuration.

        Args:
            section: Section de configuration
            key: Clé à modifier
            value: Nouvelle valeur
        """
        if section not in self._config:
            self._config[section] = {}

        self._config[section][key] = value

    def engine_options(self) -> Dict[str, Any]:
        """Arguments max_degree / max_bfunction_degree des routines de calcul."""
        engine = self.get("engine")
        return {
            "max_degree": engine["max_degree"],
            "max_bfunction_degree": engine["max_bfunction_degree"],
        }

    def oracle_options(self) -> Dict[str, Any]:
        """Arguments de certification (certify, refine, deg, s_degree)."""
        oracle = self.get("oracle")
        return {key: oracle[key] for key in ("certify", "refine", "deg", "s_degree")}

    @property
    def log_level(self) -> str:
        return self.get("logging", "level")

    def validate(self) -> bool:
        """
        Valide la configuration actuelle.

        Returns:
            True si la configuration est valide
        """
        try:
            engine = self._config["engine"]
            oracle = self._config["oracle"]

            # Validation des bornes du moteur
            assert isinstance(engine["max_degree"], int) and engine["max_degree"] > 0, \
                "max_degree doit être un entier positif"
            assert engine["max_bfunction_degree"] > 0, "max_bfunction_degree doit être positif"
            assert engine["saturation_steps"] >= 0, "saturation_steps doit être positif ou nul"

            # Validation des bornes de l'oracle
            assert oracle["N"] >= 1, "N doit être au moins 1"
            assert oracle["deg"] >= 0, "deg doit être positif ou nul"
            assert oracle["s_degree"] is None or oracle["s_degree"] >= 0, "s_degree doit être positif ou nul"

            assert self._config["lemma4"]["l_cap"] >= 0, "l_cap doit être positif ou nul"
            assert self._config["logging"]["level"] in LOG_LEVELS, \
                f"Niveau de log inconnu: {self._config['logging']['level']}"

            return True

        except (KeyError, TypeError, AssertionError) as e:
            print(f"❌ Configuration invalide: {e}", file=sys.stderr)
            return False

    def to_dict(self) -> Dict[str, Any]:
        """Retourne la configuration sous forme de dictionnaire."""
        return json.loads(json.dumps(self._config))

    def __str__(self) -> str:
        """Représentation string de la configuration."""
        return json.dumps(self._config, indent=2, ensure_ascii=False)


def configure_logging(level: str) -> None:
    """Journalisation sur stderr ; stdout ne porte que le rapport."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
