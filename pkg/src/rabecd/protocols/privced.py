"""Privately verifiable certified everlasting deletion over plain registered ABE.

Each message bit rides in its own block: sample (x, theta), prepare the
conjugate-coded register, mask the bit with the parity of x at positions
theta_i = 0, and encrypt (theta, masked bit) classically. Deletion measures
the register in the Hadamard basis; verification checks the certificate at
positions theta_i = 1, which an honest Hadamard measurement reproduces
exactly and a computational measurement only guesses.
"""

from __future__ import annotations

from ..bits import Bits, random_bits
from ..errors import BOT, GET_UPDATE
from ..qstate import bb84_prepare, measure_in_basis
from ..rabe import core as rabe
from ..rand import Rng
from ..serde import Reader, enc_bits, enc_u64
from .base import HybridCiphertext, SchemeOps, SchemeTag, VerificationKey
from dataclasses import dataclass


@dataclass(frozen=True)
class PrivcedCrs:
    lam: int
    tau: int
    ell_m: int
    rabe: rabe.RabeCrs


def privced_setup(lam: int, tau: int, ell_m: int, rng: Rng) -> PrivcedCrs:
    return PrivcedCrs(lam, tau, ell_m, rabe.setup(lam, tau, rng))


def privced_empty_aux(crs: PrivcedCrs) -> rabe.AuxState:
    return rabe.empty_aux(crs.rabe)


def privced_keygen(crs: PrivcedCrs, aux, policy, rng: Rng):
    return rabe.keygen(crs.rabe, aux, policy, rng)


def privced_regpk(crs: PrivcedCrs, aux, pk, policy):
    return rabe.regpk(crs.rabe, aux, pk, policy)


def privced_update(crs: PrivcedCrs, aux, pk):
    return rabe.update(crs.rabe, aux, pk)


def privced_views(aux: rabe.AuxState):
    return aux.view()


def _encrypt_block(crs: PrivcedCrs, mpk, attr: Bits, b: int, rng: Rng, view):
    x = random_bits(crs.lam, rng)
    theta = random_bits(crs.lam, rng)
    masked = b ^ x.masked_parity(~theta)
    m = enc_bits(theta) + enc_u64(masked)
    ct_rabe = rabe.encrypt(mpk, attr, m, rng, view)
    return (x, theta), bb84_prepare(x, theta), ct_rabe


def _parse_block(raw: bytes):
    try:
        r = Reader(raw)
        theta = r.bits()
        masked = r.u64()
        if not r.done() or masked > 1:
            return None
        return theta, masked
    except (ValueError, IndexError):
        return None


def privced_encrypt(crs: PrivcedCrs, mpk, attr: Bits, mu: Bits, rng: Rng, view):
    """Independent block per message bit; certificates concatenate."""
    vks = []
    regs = []
    cts = []
    for j in range(mu.n):
        vk_j, reg_j, ct_j = _encrypt_block(crs, mpk, attr, mu[j], rng.fork(f"blk/{j}"), view)
        vks.append(vk_j)
        regs.append(reg_j)
        cts.append(ct_j)
    vk = VerificationKey(SchemeTag.PRIVCED, tuple(vks))
    return vk, HybridCiphertext(SchemeTag.PRIVCED, tuple(cts), regs)


privced_encrypt_many = privced_encrypt


def privced_decrypt(sk, hsk, attr: Bits, ct: HybridCiphertext, rng: Rng):
    raws = [rabe.decrypt(sk, hsk, attr, ct_j) for ct_j in ct.classical]
    if any(r is GET_UPDATE for r in raws):
        return GET_UPDATE
    out = 0
    for j, raw in enumerate(raws):
        if raw is BOT:
            return BOT
        parsed = _parse_block(raw)
        if parsed is None:
            return BOT
        theta, masked = parsed
        res = measure_in_basis(ct.quantum[j], theta, rng)
        ct.quantum[j] = res.post_state
        out |= (masked ^ res.outcome.masked_parity(~theta)) << j
    return Bits(len(raws), out)


def privced_delete(ct: HybridCiphertext, rng: Rng) -> Bits:
    cert = Bits(0, 0)
    for j in range(len(ct.quantum)):
        n = ct.quantum[j].n_wires
        res = measure_in_basis(ct.quantum[j], Bits(n, (1 << n) - 1), rng)
        ct.quantum[j] = res.post_state
        cert = cert.concat(res.outcome)
    return cert


def privced_verify(vk: VerificationKey, cert: Bits) -> bool:
    blocks = vk.payload
    if not blocks:
        return False
    lam = blocks[0][0].n
    if cert.n != lam * len(blocks):
        return False
    for j, (x, theta) in enumerate(blocks):
        part = cert[j * lam : (j + 1) * lam]
        if (part.val ^ x.val) & theta.val:
            return False
    return True


SCHEME = SchemeOps(
    tag=SchemeTag.PRIVCED,
    setup=privced_setup,
    empty_aux=privced_empty_aux,
    keygen=privced_keygen,
    regpk=privced_regpk,
    update=privced_update,
    views=privced_views,
    encrypt=privced_encrypt,
    decrypt=privced_decrypt,
    delete=privced_delete,
    verify=privced_verify,
)
