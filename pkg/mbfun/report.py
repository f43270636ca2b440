"""
Rapports produits par la ligne de commande.

Un rapport rappelle la commande et ses entrées, porte le résultat et un
statut de certification. Les rationnels y sont toujours des chaînes "p/q" ;
la sortie JSON trie ses clés pour être identique d'une exécution à l'autre.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

CERTIFIED = "CERTIFIED"
UNCERTIFIED = "UNCERTIFIED"
FAILED = "FAILED"
STATUSES = (CERTIFIED, UNCERTIFIED, FAILED)

SCHEMA_VERSION = "1.0"

MARKERS = {CERTIFIED: "✅", UNCERTIFIED: "⚠️ ", FAILED: "❌"}


@dataclass
class Report:
    """
    Rapport d'une commande.

    Args:
        command: Commande rappelée (ex. ["bf", "mero"])
        inputs: Entrées sous forme canonique
        result: Charge utile (b-fonction, ensembles, sauts, témoins)
        status: CERTIFIED, UNCERTIFIED ou FAILED
        schema_version: Version du schéma JSON
        timing: Durée en secondes (omise par défaut)
    """

    command: List[str]
    inputs: Dict[str, Any]
    result: Dict[str, Any]
    status: str = CERTIFIED
    schema_version: str = SCHEMA_VERSION
    timing: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"Statut inconnu: {self.status}")

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "schema_version": self.schema_version,
            "command": list(self.command),
            "inputs": self.inputs,
            "result": self.result,
            "status": self.status,
        }
        if self.notes:
            data["notes"] = list(self.notes)
        if self.timing is not None:
            data["timing"] = {"seconds": round(self.timing, 6)}
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def render_text(self) -> str:
        """Tableau lisible : entrées, résultat aplati, statut."""
        title = " ".join(self.command)
        lines = [f"=== {title} ==="]
        for key, value in sorted(self.inputs.items()):
            lines.append(f"{key:20s}: {_inline(value)}")
        lines.append("=" * 40)
        lines.extend(_flatten(self.result))
        for note in self.notes:
            lines.append(f"⚠️  {note}")
        if self.timing is not None:
            lines.append(f"{'Durée':20s}: {self.timing:.3f} s")
        lines.append(f"{MARKERS[self.status]} {self.status}")
        return "\n".join(lines)


def _inline(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_inline(v)}" for k, v in sorted(value.items())) + "}"
    if value is None:
        return "-"
    return str(value)


def _flatten(data: Dict[str, Any], prefix: str = "") -> List[str]:
    lines = []
    for key, value in sorted(data.items()):
        name = f"{prefix}{key}"
        if isinstance(value, dict) and value:
            lines.extend(_flatten(value, name + "."))
        else:
            lines.append(f"{name:20s}: {_inline(value)}")
    return lines
