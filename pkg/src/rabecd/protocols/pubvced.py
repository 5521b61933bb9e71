"""Publicly verifiable certified everlasting deletion via coherent signing.

Per message bit: prepare the conjugate-coded register, extend it with ancilla
wires, and XOR in the deterministic signature of the computational label so
every branch reads (m, Sign(sigk, m)). The bit is masked with the parity of x
at positions theta_i = 1 and (sigk, theta, masked bit) is encrypted
classically. Deleting measures everything in the computational basis, which
yields a signed string anyone can check against the published signature
verification key. Decrypting first uncomputes the signature (the XOR map is
its own inverse), then reads x back at the Hadamard positions.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bits import Bits, random_bits
from ..errors import BOT, GET_UPDATE
from ..qstate import apply_xor_map, bb84_prepare, extend, measure_computational, measure_in_basis
from ..primitives.sig import SigSigningKey, sig_gen, sig_verify, sig_width, sig_xor_fn
from ..rabe import core as rabe
from ..rand import Rng
from ..serde import Reader, enc_bits, enc_bytes, enc_u64
from .base import HybridCiphertext, SchemeOps, SchemeTag, VerificationKey


@dataclass(frozen=True)
class PubvcedCrs:
    lam: int
    tau: int
    ell_m: int
    rabe: rabe.RabeCrs


def pubvced_setup(lam: int, tau: int, ell_m: int, rng: Rng) -> PubvcedCrs:
    return PubvcedCrs(lam, tau, ell_m, rabe.setup(lam, tau, rng))


def pubvced_empty_aux(crs: PubvcedCrs) -> rabe.AuxState:
    return rabe.empty_aux(crs.rabe)


def pubvced_keygen(crs: PubvcedCrs, aux, policy, rng: Rng):
    return rabe.keygen(crs.rabe, aux, policy, rng)


def pubvced_regpk(crs: PubvcedCrs, aux, pk, policy):
    return rabe.regpk(crs.rabe, aux, pk, policy)


def pubvced_update(crs: PubvcedCrs, aux, pk):
    return rabe.update(crs.rabe, aux, pk)


def pubvced_views(aux: rabe.AuxState):
    return aux.view()


def _encrypt_block(crs: PubvcedCrs, mpk, attr: Bits, b: int, rng: Rng, view):
    vk_j, sigk = sig_gen(rng, crs.lam)
    x = random_bits(crs.lam, rng)
    theta = random_bits(crs.lam, rng)
    reg = bb84_prepare(x, theta)
    reg = extend(reg, sig_width(crs.lam))
    reg = apply_xor_map(reg, sig_xor_fn(sigk))
    beta = b ^ x.masked_parity(theta)
    m = enc_bytes(sigk.seed) + enc_bits(theta) + enc_u64(beta)
    ct_rabe = rabe.encrypt(mpk, attr, m, rng, view)
    return vk_j, reg, ct_rabe


def _parse_block(raw: bytes):
    try:
        r = Reader(raw)
        seed = r.bytes()
        theta = r.bits()
        beta = r.u64()
        if not r.done() or beta > 1 or len(seed) != 16:
            return None
        return seed, theta, beta
    except (ValueError, IndexError):
        return None


def pubvced_encrypt(crs: PubvcedCrs, mpk, attr: Bits, mu: Bits, rng: Rng, view):
    """Independent block per message bit; the verification key is public."""
    vks = []
    regs = []
    cts = []
    for j in range(mu.n):
        vk_j, reg_j, ct_j = _encrypt_block(crs, mpk, attr, mu[j], rng.fork(f"blk/{j}"), view)
        vks.append(vk_j)
        regs.append(reg_j)
        cts.append(ct_j)
    vk = VerificationKey(SchemeTag.PUBVCED, tuple(vks))
    return vk, HybridCiphertext(SchemeTag.PUBVCED, tuple(cts), regs)


pubvced_encrypt_many = pubvced_encrypt


def pubvced_decrypt(sk, hsk, attr: Bits, ct: HybridCiphertext, rng: Rng):
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
        seed, theta, beta = parsed
        sigk = SigSigningKey(seed, theta.n)
        reg = apply_xor_map(ct.quantum[j], sig_xor_fn(sigk))
        if reg.records:
            # The uncompute key does not match the register's history, so the
            # ancilla holds the XOR of two distinct signatures. The ancilla
            # zero-check is a real measurement here and rejects w.h.p. (when
            # the keys match, the ancilla is an eigenstate and the check is
            # a no-op, so it is elided above).
            chk = measure_computational(reg, rng)
            ct.quantum[j] = chk.post_state
            if chk.outcome.val >> theta.n:
                return BOT
            reg = chk.post_state
        res = measure_in_basis(reg, Bits(theta.n, (1 << theta.n) - 1), rng)
        ct.quantum[j] = res.post_state
        out |= (beta ^ res.outcome.masked_parity(theta)) << j
    return Bits(len(raws), out)


def pubvced_delete(ct: HybridCiphertext, rng: Rng) -> tuple[Bits, ...]:
    certs = []
    for j in range(len(ct.quantum)):
        res = measure_computational(ct.quantum[j], rng)
        ct.quantum[j] = res.post_state
        certs.append(res.outcome)
    return tuple(certs)


def pubvced_verify(vk: VerificationKey, cert: tuple[Bits, ...]) -> bool:
    blocks = vk.payload
    if len(cert) != len(blocks) or not blocks:
        return False
    for vk_j, cert_j in zip(blocks, cert):
        lam = vk_j.msg_bits
        if cert_j.n != lam + sig_width(lam):
            return False
        if not sig_verify(vk_j, cert_j[:lam], cert_j[lam:]):
            return False
    return True


SCHEME = SchemeOps(
    tag=SchemeTag.PUBVCED,
    setup=pubvced_setup,
    empty_aux=pubvced_empty_aux,
    keygen=pubvced_keygen,
    regpk=pubvced_regpk,
    update=pubvced_update,
    views=pubvced_views,
    encrypt=pubvced_encrypt,
    decrypt=pubvced_decrypt,
    delete=pubvced_delete,
    verify=pubvced_verify,
)
