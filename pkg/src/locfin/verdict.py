"""Three-valued analysis results.

Every decision procedure in this package returns a Verdict rather than a bare
boolean: window-relative analyses must be able to say "not decidable from the
data in this window" without lying in either direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

CERTIFIED = "certified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive_at_window"


@dataclass(frozen=True)
class Verdict:
    kind: str
    witness: Any = None
    note: str = ""
    data: dict = field(default_factory=dict, compare=False)

    @classmethod
    def certified(cls, witness: Any = None, note: str = "", **data) -> "Verdict":
        return cls(CERTIFIED, witness, note, data)

    @classmethod
    def refuted(cls, witness: Any = None, note: str = "", **data) -> "Verdict":
        return cls(REFUTED, witness, note, data)

    @classmethod
    def inconclusive(cls, note: str = "", witness: Any = None, **data) -> "Verdict":
        return cls(INCONCLUSIVE, witness, note, data)

    @property
    def is_certified(self) -> bool:
        return self.kind == CERTIFIED

    @property
    def is_refuted(self) -> bool:
        return self.kind == REFUTED

    @property
    def is_inconclusive(self) -> bool:
        return self.kind == INCONCLUSIVE

    def exit_code(self) -> int:
        return {CERTIFIED: 0, REFUTED: 2, INCONCLUSIVE: 3}[self.kind]

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.note:
            out["note"] = self.note
        for key in sorted(self.data):
            out[key] = _jsonable(self.data[key])
        return out


def _jsonable(value: Any) -> Any:
    """Best-effort conversion of witness payloads to JSON-stable data."""
    if isinstance(value, Verdict):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (set, frozenset)):
        return sorted(str(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, (str, int, bool, float)) or value is None:
        return value
    return str(value)
