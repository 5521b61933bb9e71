"""Witness encryption reference: relation-check-then-unseal.

The ciphertext carries the statement (kind + payload), a short nonce, and the
sealed message. Decryption rebuilds the statement's relation from a registry,
checks the supplied witness, and removes a mask derived from the ciphertext
fields. The seal is derivable from public data, so this is a trusted-evaluator
stand-in with the right interface, not a secure scheme. Fixed-width layouts
make a ciphertext serializable to a bit string of known length, which the
layered construction encrypts slot by slot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..bits import Bits
from ..errors import BOT
from ..rand import Rng
from ..serde import digest

_NONCE_LEN = 2

_RELATIONS: dict[str, Callable[[bytes], Callable[[object], bool]]] = {}


def register_we_relation(kind: str, loader: Callable[[bytes], Callable]) -> None:
    _RELATIONS[kind] = loader


@dataclass(frozen=True)
class WECiphertext:
    kind: str
    payload: bytes
    nonce: bytes
    sealed: bytes

    def to_bits(self) -> Bits:
        return Bits.from_bytes(self.payload + self.nonce + self.sealed)

    @classmethod
    def from_bits(cls, kind: str, payload_len: int, msg_len: int, bits: Bits) -> "WECiphertext":
        raw = bits.to_bytes()
        if len(raw) != payload_len + _NONCE_LEN + msg_len:
            return None
        return cls(
            kind,
            raw[:payload_len],
            raw[payload_len : payload_len + _NONCE_LEN],
            raw[payload_len + _NONCE_LEN :],
        )


def we_bit_length(payload_len: int, msg_len: int) -> int:
    return 8 * (payload_len + _NONCE_LEN + msg_len)


def we_statement(kind: str, payload: bytes):
    if kind not in _RELATIONS:
        raise KeyError(f"no relation registered for {kind!r}")
    return _RELATIONS[kind](payload)


def _mask(ct_kind: str, payload: bytes, nonce: bytes, n: int) -> bytes:
    return digest("we-seal", ct_kind.encode(), payload, nonce)[:n]


def we_encrypt(kind: str, payload: bytes, m: bytes, rng: Rng) -> WECiphertext:
    nonce = rng.bytes(_NONCE_LEN)
    mask = _mask(kind, payload, nonce, len(m))
    return WECiphertext(kind, payload, nonce, bytes(a ^ b for a, b in zip(m, mask)))


def we_decrypt(ct: WECiphertext, witness):
    relation = we_statement(ct.kind, ct.payload)
    if not relation(witness):
        return BOT
    mask = _mask(ct.kind, ct.payload, ct.nonce, len(ct.sealed))
    return bytes(a ^ b for a, b in zip(ct.sealed, mask))
