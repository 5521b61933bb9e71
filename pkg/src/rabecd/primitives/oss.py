"""One-shot signatures, modeled by a consumable signing token.

The secret key holds two chain preimages but its state machine permits
exactly one transition: after signing message m, signing the other message
raises OneShotConsumed (re-signing the same m returns the cached signature).
No-cloning is modeled by construction, in process. A signature releases the
preimage for m together with the other chain's end digest, so verification
needs only (crs, pk, sig, m). Digest widths scale with lambda/8 bytes to keep
serialized statements small.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import OneShotConsumed, ParameterError
from ..rand import Rng
from ..serde import digest


@dataclass(frozen=True)
class OssCrs:
    lam: int
    salt: bytes

    @property
    def width(self) -> int:
        return self.lam // 8


@dataclass(frozen=True)
class OssPublicKey:
    value: bytes


@dataclass(frozen=True)
class OssSignature:
    preimage: bytes
    other_end: bytes

    def to_bytes(self) -> bytes:
        return self.preimage + self.other_end

    @classmethod
    def from_bytes(cls, raw: bytes, width: int) -> "OssSignature":
        return cls(raw[:width], raw[width : 2 * width])


@dataclass
class OssSecretKey:
    crs: OssCrs
    u0: bytes
    u1: bytes
    consumed: tuple[int, OssSignature] | None = field(default=None)


def _chain_end(crs: OssCrs, m: int, preimage: bytes) -> bytes:
    return digest("oss-end", crs.salt, bytes([m]), preimage)[: crs.width]


def oss_setup(lam: int, rng: Rng) -> OssCrs:
    if lam % 8 != 0 or lam < 8:
        raise ParameterError("lambda must be a positive multiple of 8")
    return OssCrs(lam, rng.bytes(lam // 8))


def oss_keygen(crs: OssCrs, rng: Rng) -> tuple[OssPublicKey, OssSecretKey]:
    sk = OssSecretKey(crs, rng.bytes(crs.width), rng.bytes(crs.width))
    h0 = _chain_end(crs, 0, sk.u0)
    h1 = _chain_end(crs, 1, sk.u1)
    pk = OssPublicKey(digest("oss-pk", crs.salt, h0, h1)[: crs.width])
    return pk, sk


def oss_sign(sk: OssSecretKey, m: int) -> OssSignature:
    if m not in (0, 1):
        raise ParameterError("message space is {0, 1}")
    if sk.consumed is not None:
        used_m, sig = sk.consumed
        if used_m == m:
            return sig
        raise OneShotConsumed(f"token already signed {used_m}")
    u = sk.u0 if m == 0 else sk.u1
    other = _chain_end(sk.crs, 1 - m, sk.u1 if m == 0 else sk.u0)
    sig = OssSignature(u, other)
    sk.consumed = (m, sig)
    return sig


def oss_verify(crs: OssCrs, pk: OssPublicKey, sig: OssSignature, m: int) -> bool:
    if m not in (0, 1):
        return False
    if len(sig.preimage) != crs.width or len(sig.other_end) != crs.width:
        return False
    h_m = _chain_end(crs, m, sig.preimage)
    h0, h1 = (h_m, sig.other_end) if m == 0 else (sig.other_end, h_m)
    return digest("oss-pk", crs.salt, h0, h1)[: crs.width] == pk.value
