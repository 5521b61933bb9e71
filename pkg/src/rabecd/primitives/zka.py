"""Argument-of-knowledge reference: in-process proof objects.

A statement is a kind tag, a canonical payload, and a relation callable.
Proving checks the relation against the witness and emits a proof object
bound to the statement digest (which mixes in the shared random string y).
Simulation emits the same object without a witness. Verification recomputes
the digest and never looks at how the proof was produced, which is what makes
simulated proofs indistinguishable at this layer. Soundness holds only for
honestly produced proofs; the simulator is available to everyone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..errors import BadWitness
from ..serde import digest


@dataclass(frozen=True)
class Statement:
    kind: str
    payload: bytes
    relation: Callable[[object], bool] = field(compare=False, repr=False)

    def digest(self, y: bytes) -> bytes:
        return digest("zka-statement", self.kind.encode(), self.payload, y)


@dataclass(frozen=True)
class Proof:
    statement_digest: bytes
    origin: str = "proved"


def zka_prove(statement: Statement, witness, y: bytes) -> Proof:
    if not statement.relation(witness):
        raise BadWitness(f"witness rejected for {statement.kind}")
    return Proof(statement.digest(y), "proved")


def zka_simulate(statement: Statement, y: bytes) -> Proof:
    return Proof(statement.digest(y), "simulated")


def zka_verify(statement: Statement, proof: Proof, y: bytes) -> bool:
    return proof.statement_digest == statement.digest(y)
