"""Privately verifiable certified deletion from the shadow-tolerant layer.

Encryption wraps a fresh one-time deletion-capable key: the message is
encrypted under that key (conjugate-coding cells plus masked bits) and the
key's seed rides inside a shadow-tolerant ciphertext. Deleting measures the
cells in the Hadamard basis; the verification key is the one-time key itself,
so only the sender can check certificates.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bits import Bits
from ..errors import BOT, GET_UPDATE
from ..primitives.skecd import (
    SKECDCiphertext,
    skecd_decrypt,
    skecd_delete,
    skecd_encrypt,
    skecd_key_from_seed,
    skecd_keygen,
    skecd_verify,
)
from ..rand import Rng
from .. import shad
from .base import HybridCiphertext, SchemeOps, SchemeTag, VerificationKey


@dataclass(frozen=True)
class PrivcdCrs:
    lam: int
    tau: int
    ell_m: int
    shad: shad.ShadCrs


@dataclass(frozen=True)
class PrivcdClassical:
    srabe_ct: shad.ShadCiphertext
    masked: Bits
    lam: int


def privcd_setup(lam: int, tau: int, ell_m: int, rng: Rng) -> PrivcdCrs:
    # the inner grid carries the one-time key's lam-bit seed
    return PrivcdCrs(lam, tau, ell_m, shad.setup(lam, tau, lam, rng))


def privcd_empty_aux(crs: PrivcdCrs) -> shad.ShadAux:
    return shad.empty_aux(crs.shad)


def privcd_keygen(crs: PrivcdCrs, aux, policy, rng: Rng):
    return shad.keygen(crs.shad, aux, policy, rng)


def privcd_regpk(crs: PrivcdCrs, aux, pk, policy):
    return shad.regpk(crs.shad, aux, pk, policy)


def privcd_update(crs: PrivcdCrs, aux, pk):
    return shad.update(crs.shad, aux, pk)


def privcd_views(aux: shad.ShadAux):
    return aux.views()


def privcd_encrypt(crs: PrivcdCrs, mpk, attr: Bits, mu: Bits, rng: Rng, views):
    ske_sk = skecd_keygen(mu.n, crs.lam, rng)
    ske_ct = skecd_encrypt(ske_sk, mu)
    srabe_ct = shad.encrypt(mpk, attr, ske_sk.seed, rng, views)
    vk = VerificationKey(SchemeTag.PRIVCD, ske_sk)
    ct = HybridCiphertext(
        SchemeTag.PRIVCD,
        PrivcdClassical(srabe_ct, ske_ct.masked, crs.lam),
        ske_ct.quantum,
    )
    return vk, ct


def privcd_decrypt(sk, hsk, attr: Bits, ct: HybridCiphertext, rng: Rng):
    seed = shad.decrypt(sk, hsk, attr, ct.classical.srabe_ct)
    if seed is BOT or seed is GET_UPDATE:
        return seed
    inner = skecd_key_from_seed(seed, ct.classical.masked.n)
    ske_ct = SKECDCiphertext(ct.classical.lam, ct.classical.masked, ct.quantum)
    return skecd_decrypt(inner, ske_ct, rng)


def privcd_delete(ct: HybridCiphertext, rng: Rng) -> Bits:
    ske_ct = SKECDCiphertext(ct.classical.lam, ct.classical.masked, ct.quantum)
    return skecd_delete(ske_ct, rng)


def privcd_verify(vk: VerificationKey, cert: Bits) -> bool:
    return skecd_verify(vk.payload, cert)


SCHEME = SchemeOps(
    tag=SchemeTag.PRIVCD,
    setup=privcd_setup,
    empty_aux=privcd_empty_aux,
    keygen=privcd_keygen,
    regpk=privcd_regpk,
    update=privcd_update,
    views=privcd_views,
    encrypt=privcd_encrypt,
    decrypt=privcd_decrypt,
    delete=privcd_delete,
    verify=privcd_verify,
)
