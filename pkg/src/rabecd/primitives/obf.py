"""Program obfuscation reference: a transparent wrapper.

Circuits are serialized interpreter programs (a kind tag plus a description
blob); obfuscation checks a size cap and wraps the description verbatim.
Evaluation dispatches to a loader registered for the kind, which rebuilds an
executable closure from the description. Nothing is hidden: the description
is readable by anyone holding the program. Indistinguishability is not
claimed, and one experiment strategy deliberately exploits the transparency.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import CircuitTooLarge

SIZE_CAP = 1 << 20

_LOADERS: dict[str, Callable[[bytes], Callable]] = {}


def register_circuit_kind(kind: str, loader: Callable[[bytes], Callable]) -> None:
    _LOADERS[kind] = loader


@dataclass(frozen=True)
class Circuit:
    kind: str
    description: bytes


@dataclass(frozen=True)
class ObfuscatedProgram:
    kind: str
    description: bytes

    def run(self, *args):
        if self.kind not in _LOADERS:
            raise KeyError(f"no interpreter for circuit kind {self.kind!r}")
        return _LOADERS[self.kind](self.description)(*args)


def io_obfuscate(circuit: Circuit, size_cap: int = SIZE_CAP) -> ObfuscatedProgram:
    if len(circuit.description) > size_cap:
        raise CircuitTooLarge(f"{len(circuit.description)} bytes exceed {size_cap}")
    return ObfuscatedProgram(circuit.kind, circuit.description)


def io_eval(program: ObfuscatedProgram, *args):
    return program.run(*args)
