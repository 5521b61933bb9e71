"""Replayable experiment transcripts.

Every challenger action appends one event; events are JSON objects with
sorted keys, so a transcript serializes to a stable JSON-lines string.
Re-running an experiment with the same seed must reproduce that string
byte for byte, which is what the replay tests assert. Large objects
(keys, ciphertexts, registers) are recorded as short digests, never as
raw payloads, keeping transcripts compact without losing determinism.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from ..bits import Bits
from ..errors import BOT, GET_UPDATE
from ..serde import digest


def fingerprint_hex(obj) -> str:
    """Stable 16-hex-char tag for any value a transcript mentions."""
    if obj is None:
        return "-"
    if isinstance(obj, bytes):
        return digest("transcript-fp", obj).hex()[:16]
    if isinstance(obj, Bits):
        return digest("transcript-fp", obj.to_bytes(), obj.n.to_bytes(4, "little")).hex()[:16]
    if hasattr(obj, "to_bytes"):
        return digest("transcript-fp", obj.to_bytes()).hex()[:16]
    if hasattr(obj, "fingerprint"):
        return obj.fingerprint().hex()[:16]
    return digest("transcript-fp", repr(obj).encode()).hex()[:16]


def normalize(value):
    """JSON-ready stand-in for any value an experiment may output."""
    return _norm(value)


def _norm(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return round(value, 12)
    if value is BOT or value is GET_UPDATE:
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Bits):
        return f"{value.n}b:{value.val:x}"
    if isinstance(value, bytes):
        return value.hex()
    if isinstance(value, (list, tuple)):
        return [_norm(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _norm(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    return fingerprint_hex(value)


@dataclass
class GameTranscript:
    seed: int
    scheme_tag: str
    experiment: str
    events: list = field(default_factory=list)

    def record(self, kind: str, **fields) -> None:
        event = {"event": kind}
        for key, value in fields.items():
            event[key] = _norm(value)
        self.events.append(event)

    def to_jsonl(self) -> str:
        header = {
            "event": "header",
            "experiment": self.experiment,
            "scheme": self.scheme_tag,
            "seed": self.seed,
        }
        rows = [header] + self.events
        return "\n".join(json.dumps(row, sort_keys=True) for row in rows) + "\n"

    def digest(self) -> str:
        return digest("transcript", self.to_jsonl().encode()).hex()
