"""Shared shapes for the four deletion-enabled schemes.

Every scheme exposes the same eight-operation surface (setup, keygen, regpk,
update, encrypt, decrypt, delete, verify) bundled into a SchemeOps record so
the game harness and CLI can drive any of them uniformly. Messages are bit
strings of the configured width; decrypt returns the message, BOT, or
GET_UPDATE. Measurement collapses a ciphertext's quantum registers in place,
so the held HybridCiphertext always reflects the residual state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable


class SchemeTag(Enum):
    PRIVCD = "privcd"
    PUBVCD = "pubvcd"
    PRIVCED = "privced"
    PUBVCED = "pubvced"


@dataclass
class HybridCiphertext:
    scheme_tag: SchemeTag
    classical: object
    quantum: list
    receiver_state: object | None = None


@dataclass(frozen=True)
class VerificationKey:
    scheme_tag: SchemeTag
    payload: object = field(compare=False)

    @property
    def public(self) -> bool:
        return self.scheme_tag in (SchemeTag.PUBVCD, SchemeTag.PUBVCED)


@dataclass(frozen=True)
class SchemeOps:
    """Uniform driver surface. Signatures:

    setup(lam, tau, ell_m, rng) -> crs
    empty_aux(crs) -> aux
    keygen(crs, aux, policy, rng) -> (pk, sk)
    regpk(crs, aux, pk, policy) -> (mpk, aux)
    update(crs, aux, pk) -> hsk
    views(aux) -> view argument for encrypt
    encrypt(crs, mpk, attr, mu, rng, views) -> (vk, ct)
    decrypt(sk, hsk, attr, ct, rng) -> mu | BOT | GET_UPDATE
    delete(ct, rng) -> cert
    verify(vk, cert) -> bool
    """

    tag: SchemeTag
    setup: Callable
    empty_aux: Callable
    keygen: Callable
    regpk: Callable
    update: Callable
    views: Callable
    encrypt: Callable
    decrypt: Callable
    delete: Callable
    verify: Callable
