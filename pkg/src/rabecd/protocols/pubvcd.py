"""Publicly verifiable certified deletion via a one-shot signing token.

Encryption is a three-message session: the sender ships one-shot signature
parameters, the receiver answers with a token public key, and the sender
returns a shadow-tolerant ciphertext wrapping a witness encryption of the
message under the statement "a signature on 0 exists". Decrypting spends the
token on 0; deleting spends it on 1 and the signature itself is the publicly
checkable certificate. One token, one choice.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bits import Bits
from ..errors import BOT, GET_UPDATE, OneShotConsumed, SessionOrderViolation
from ..primitives.oss import (
    OssCrs,
    OssPublicKey,
    OssSignature,
    oss_keygen,
    oss_setup,
    oss_sign,
    oss_verify,
)
from ..primitives.we import WECiphertext, register_we_relation, we_encrypt
from ..primitives.we import we_decrypt
from ..rand import Rng
from .. import shad
from ..serde import digest
from .base import HybridCiphertext, SchemeOps, SchemeTag, VerificationKey

WE_KIND = "oss-zero-sig"


def _grid_bits(lam: int, ell_m: int) -> int:
    # witness-encryption ciphertext layout: salt | oss pk | nonce | sealed,
    # where salt and pk are both lam/8 bytes wide
    return 8 * (2 * (lam // 8) + 2 + (ell_m + 7) // 8)


def _we_payload(crs: OssCrs, pk: OssPublicKey) -> bytes:
    return crs.salt + pk.value


def _relation_loader(payload: bytes):
    w = len(payload) // 2
    crs = OssCrs(8 * w, payload[:w])
    pk = OssPublicKey(payload[w:])

    def relation(witness) -> bool:
        if not isinstance(witness, (bytes, bytearray)):
            return False
        if len(witness) != 2 * crs.width:
            return False
        return oss_verify(crs, pk, OssSignature.from_bytes(bytes(witness), crs.width), 0)

    return relation


register_we_relation(WE_KIND, _relation_loader)


@dataclass(frozen=True)
class PubvcdCrs:
    lam: int
    tau: int
    ell_m: int
    shad: shad.ShadCrs


@dataclass(frozen=True)
class PubvcdClassical:
    srabe_ct: shad.ShadCiphertext
    lam: int
    ell_m: int


class PubvcdSession:
    """Strict three-message encryption session (crs -> pk -> ciphertext)."""

    def __init__(self, crs: PubvcdCrs, mpk, attr: Bits, mu: Bits, views):
        self.crs = crs
        self.mpk = mpk
        self.attr = attr
        self.mu = mu
        self.views = views
        self.stage = 0
        self.transcript: list[tuple[str, str]] = []
        self.oss_crs = None
        self.oss_pk = None
        self._oss_sk = None
        self._srabe_ct = None

    def _advance(self, expected: int, label: str):
        if self.stage != expected:
            raise SessionOrderViolation(f"{label} out of order at stage {self.stage}")
        self.stage = expected + 1

    def sender_init(self, rng: Rng) -> OssCrs:
        self._advance(0, "sender_init")
        self.oss_crs = oss_setup(self.crs.lam, rng)
        self.transcript.append(("oss.crs", self.oss_crs.salt.hex()))
        return self.oss_crs

    def receiver_respond(self, rng: Rng) -> OssPublicKey:
        self._advance(1, "receiver_respond")
        self.oss_pk, self._oss_sk = oss_keygen(self.oss_crs, rng)
        self.transcript.append(("oss.pk", self.oss_pk.value.hex()))
        return self.oss_pk

    def sender_finalize(self, rng: Rng) -> tuple[VerificationKey, shad.ShadCiphertext]:
        self._advance(2, "sender_finalize")
        we_ct = we_encrypt(WE_KIND, _we_payload(self.oss_crs, self.oss_pk), self.mu.to_bytes(), rng)
        self._srabe_ct = shad.encrypt(self.mpk, self.attr, we_ct.to_bits(), rng, self.views)
        self.transcript.append(("srabe.ct", digest("transcript-ct", self._srabe_ct.to_bytes()).hex()))
        vk = VerificationKey(SchemeTag.PUBVCD, (self.oss_crs, self.oss_pk))
        return vk, self._srabe_ct

    def receiver_output(self) -> HybridCiphertext:
        self._advance(3, "receiver_output")
        return HybridCiphertext(
            SchemeTag.PUBVCD,
            PubvcdClassical(self._srabe_ct, self.crs.lam, self.crs.ell_m),
            [],
            receiver_state=self._oss_sk,
        )


def pubvcd_encrypt_session(crs: PubvcdCrs, mpk, attr: Bits, mu: Bits, rng: Rng, views):
    session = PubvcdSession(crs, mpk, attr, mu, views)
    session.sender_init(rng.fork("sndr"))
    session.receiver_respond(rng.fork("rcvr"))
    vk, _ = session.sender_finalize(rng.fork("sndr-fin"))
    ct = session.receiver_output()
    return vk, ct, tuple(session.transcript)


def pubvcd_setup(lam: int, tau: int, ell_m: int, rng: Rng) -> PubvcdCrs:
    return PubvcdCrs(lam, tau, ell_m, shad.setup(lam, tau, _grid_bits(lam, ell_m), rng))


def pubvcd_empty_aux(crs: PubvcdCrs) -> shad.ShadAux:
    return shad.empty_aux(crs.shad)


def pubvcd_keygen(crs: PubvcdCrs, aux, policy, rng: Rng):
    return shad.keygen(crs.shad, aux, policy, rng)


def pubvcd_regpk(crs: PubvcdCrs, aux, pk, policy):
    return shad.regpk(crs.shad, aux, pk, policy)


def pubvcd_update(crs: PubvcdCrs, aux, pk):
    return shad.update(crs.shad, aux, pk)


def pubvcd_views(aux: shad.ShadAux):
    return aux.views()


def pubvcd_encrypt(crs: PubvcdCrs, mpk, attr: Bits, mu: Bits, rng: Rng, views):
    vk, ct, _ = pubvcd_encrypt_session(crs, mpk, attr, mu, rng, views)
    return vk, ct


def pubvcd_decrypt(sk, hsk, attr: Bits, ct: HybridCiphertext, rng: Rng):
    try:
        sigma0 = oss_sign(ct.receiver_state, 0)
    except OneShotConsumed:
        return BOT
    webits = shad.decrypt(sk, hsk, attr, ct.classical.srabe_ct)
    if webits is BOT or webits is GET_UPDATE:
        return webits
    we_ct = WECiphertext.from_bits(
        WE_KIND,
        2 * (ct.classical.lam // 8),
        (ct.classical.ell_m + 7) // 8,
        webits,
    )
    if we_ct is None:
        return BOT
    raw = we_decrypt(we_ct, sigma0.to_bytes())
    if raw is BOT:
        return BOT
    return Bits.from_bytes(raw, ct.classical.ell_m)


def pubvcd_delete(ct: HybridCiphertext, rng: Rng) -> OssSignature:
    """Raises OneShotConsumed if the token already signed 0 (i.e. decrypted)."""
    return oss_sign(ct.receiver_state, 1)


def pubvcd_verify(vk: VerificationKey, cert: OssSignature) -> bool:
    oss_crs, oss_pk = vk.payload
    return oss_verify(oss_crs, oss_pk, cert, 1)


SCHEME = SchemeOps(
    tag=SchemeTag.PUBVCD,
    setup=pubvcd_setup,
    empty_aux=pubvcd_empty_aux,
    keygen=pubvcd_keygen,
    regpk=pubvcd_regpk,
    update=pubvcd_update,
    views=pubvcd_views,
    encrypt=pubvcd_encrypt,
    decrypt=pubvcd_decrypt,
    delete=pubvcd_delete,
    verify=pubvcd_verify,
)
