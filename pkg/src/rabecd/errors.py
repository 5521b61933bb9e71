"""Shared exception types and the two non-message decrypt outcomes.

Decrypt operations return ``BOT`` (undecryptable) or ``GET_UPDATE`` (helper
key is stale, fetch a new one and retry) instead of raising, because both are
ordinary protocol outcomes rather than bugs.
"""

from __future__ import annotations


class _Sentinel:
    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name

    def __bool__(self) -> bool:
        return False


#: decryption failed (wrong key, tampered ciphertext, unsatisfied policy, ...)
BOT = _Sentinel("BOT")

#: helper key is older than the ciphertext epoch; update and retry
GET_UPDATE = _Sentinel("GET_UPDATE")


class LengthMismatch(ValueError):
    """Bit-string operands have incompatible lengths."""


class WidthMismatch(ValueError):
    """Register or attribute width differs from what the operation expects."""


class DomainMismatch(ValueError):
    """Distributions are over incompatible outcome spaces."""


class TooLarge(ValueError):
    """State exceeds the configured materialization or dense-vector cap."""


class BadWitness(ValueError):
    """Witness fails the statement's relation."""


class CircuitTooLarge(ValueError):
    """Circuit description exceeds the obfuscator's size cap."""


class InvalidWitness(ValueError):
    """Witness rejected by a witness-encryption statement."""


class OneShotConsumed(RuntimeError):
    """One-shot signing token was already used on a different message."""


class KeyReuse(RuntimeError):
    """One-time key used to encrypt twice."""


class ParameterError(ValueError):
    """Bad scheme parameters."""


class PolicyTooDeep(ValueError):
    """Policy tree deeper than the configured bound."""


class MalformedKey(ValueError):
    """Key fails structural validation."""


class StaleView(ValueError):
    """Directory view does not match the master public key."""


class NotRegistered(LookupError):
    """Public key has no slot in the directory."""


class UnknownKey(LookupError):
    """Key is absent from the simulation dictionary."""


class EmptyDictionary(ValueError):
    """Simulation dictionary has no entries to aggregate."""


class SessionOrderViolation(RuntimeError):
    """Interactive session message sent or consumed out of order."""


class AdmissibilityError(ValueError):
    """Challenge attribute satisfies a corrupted key's policy."""


class AdversaryProtocolViolation(RuntimeError):
    """Adversary strategy stepped outside the experiment's phase order."""


class ConfigError(ValueError):
    """Command-line or file configuration is invalid."""
