"""One-time signatures over fixed-width messages, hash-preimage style.

Per message bit there are two secret chain elements derived from a seed; the
verification key holds their hashes and a signature releases the element
selected by each message bit. Signing is deterministic, so the signing map
can be applied as a reversible XOR ancilla on a simulated register. Elements
are 32 bits, so a signature on an n-bit message is 32*n bits. One-time
unforgeability is a modeling assumption here, not a proven property.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bits import Bits
from ..errors import LengthMismatch
from ..qstate import XorFn, register_xorfn_builder
from ..rand import Rng
from ..serde import digest

ELEM_BITS = 32
_ELEM_LEN = ELEM_BITS // 8


def sig_width(msg_bits: int) -> int:
    """Signature length in bits."""
    return msg_bits * ELEM_BITS


@dataclass(frozen=True)
class SigSigningKey:
    seed: bytes
    msg_bits: int

    def element(self, i: int, b: int) -> bytes:
        return digest("sig-elem", self.seed, bytes([b, i & 0xFF, i >> 8]))[:_ELEM_LEN]


@dataclass(frozen=True)
class SigVerifyKey:
    msg_bits: int
    chain_ends: tuple[tuple[bytes, bytes], ...]


def sig_gen(rng: Rng, msg_bits: int) -> tuple[SigVerifyKey, SigSigningKey]:
    sigk = SigSigningKey(rng.bytes(16), msg_bits)
    ends = tuple(
        (
            digest("sig-end", sigk.element(i, 0))[:_ELEM_LEN],
            digest("sig-end", sigk.element(i, 1))[:_ELEM_LEN],
        )
        for i in range(msg_bits)
    )
    return SigVerifyKey(msg_bits, ends), sigk


def sig_sign(sigk: SigSigningKey, m: Bits) -> Bits:
    if len(m) != sigk.msg_bits:
        raise LengthMismatch(f"{len(m)} vs {sigk.msg_bits}")
    out = b"".join(sigk.element(i, m[i]) for i in range(sigk.msg_bits))
    return Bits.from_bytes(out, sig_width(sigk.msg_bits))


def sig_verify(vk: SigVerifyKey, m: Bits, sig: Bits) -> bool:
    if len(m) != vk.msg_bits or len(sig) != sig_width(vk.msg_bits):
        return False
    raw = sig.to_bytes()
    for i in range(vk.msg_bits):
        elem = raw[i * _ELEM_LEN : (i + 1) * _ELEM_LEN]
        if digest("sig-end", elem)[:_ELEM_LEN] != vk.chain_ends[i][m[i]]:
            return False
    return True


def sig_xor_fn(sigk: SigSigningKey) -> XorFn:
    """Signing map as an XOR ancilla function on message-labeled branches.

    The token is derived from the signing key, so whoever recovers the key
    builds the same token and uncomputation is recognized exactly.
    """
    msg_bits = sigk.msg_bits

    def fn(label: int) -> int:
        return sig_sign(sigk, Bits(msg_bits, label)).val

    return XorFn(
        sig_width(msg_bits),
        fn,
        digest("sig-map", sigk.seed, bytes([msg_bits & 0xFF, msg_bits >> 8])),
        recipe=("sig", sigk.seed, msg_bits),
    )


register_xorfn_builder("sig", lambda seed, msg_bits: sig_xor_fn(SigSigningKey(seed, msg_bits)))
