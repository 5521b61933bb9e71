"""Public-key encryption reference: hash-stream cipher plus integrity tag.

The public key is a hash of the secret key; encryption masks the message with
a stream derived from (pk, coins) and appends a tag over (pk, coins, message).
Decrypting with the wrong secret key re-derives a different stream and the tag
check fails, which is the behavior the layered constructions need.Fixed coins
give byte-identical ciphertexts, which the proof relation relies on. No
confidentiality is claimed.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from ..errors import BOT
from ..rand import Rng
from ..serde import digest

_COIN_LEN = 16
_TAG_LEN = 8


@dataclass(frozen=True)
class PkePublicKey:
    value: bytes


@dataclass(frozen=True)
class PkeSecretKey:
    value: bytes

    def public(self) -> PkePublicKey:
        return PkePublicKey(digest("pke-pub", self.value))


def pke_keygen(rng: Rng) -> tuple[PkePublicKey, PkeSecretKey]:
    sk = PkeSecretKey(rng.bytes(16))
    return sk.public(), sk


def _stream(pk: bytes, coins: bytes, n: int) -> bytes:
    out = b""
    block = 0
    while len(out) < n:
        h = hashlib.sha256()
        h.update(b"pke-stream\x00")
        h.update(pk)
        h.update(coins)
        h.update(block.to_bytes(4, "little"))
        out += h.digest()
        block += 1
    return out[:n]


def pke_encrypt(pk: PkePublicKey, m: bytes, r: bytes) -> bytes:
    """Deterministic given r. Ciphertext layout: coins || masked || tag."""
    coins = digest("pke-coins", r)[:_COIN_LEN]
    masked = bytes(a ^ b for a, b in zip(m, _stream(pk.value, coins, len(m))))
    tag = digest("pke-tag", pk.value, coins, m)[:_TAG_LEN]
    return coins + masked + tag


def pke_decrypt(sk: PkeSecretKey, ct: bytes):
    if len(ct) < _COIN_LEN + _TAG_LEN:
        return BOT
    pk = sk.public()
    coins = ct[:_COIN_LEN]
    masked = ct[_COIN_LEN : -_TAG_LEN]
    tag = ct[-_TAG_LEN:]
    m = bytes(a ^ b for a, b in zip(masked, _stream(pk.value, coins, len(masked))))
    if digest("pke-tag", pk.value, coins, m)[:_TAG_LEN] != tag:
        return BOT
    return m
