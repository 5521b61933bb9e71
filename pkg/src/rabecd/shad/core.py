"""Shadow-tolerant registered ABE built from a grid of sub-instances.

One pair of registered-ABE instances per message index. An honest ciphertext
encrypts bit i of the message at both slots of pair i and attaches a proof
that all 2*ell_m sub-ciphertexts were formed that way, so a decryption key
may read either slot of each pair. A user key is an obfuscated selector
circuit over a random selector string z. The simulator keeps every generated
sub-key plus each user's fresh z*, arranges constants (0 on the aggregated
selector, 1 opposite) in a simulated ciphertext, and can later explain it as
any message mu by revealing the selector z* xor mu.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import reduce

from ..bits import Bits, random_bits
from ..errors import EmptyDictionary, LengthMismatch, UnknownKey
from ..primitives.obf import ObfuscatedProgram, io_eval
from ..primitives.zka import Proof, zka_prove, zka_simulate
from ..rabe import core as rabe
from ..rabe.policy import Policy
from ..rand import Rng
from ..serde import digest, enc_bytes, enc_seq, enc_u64
from .circuits import ciphertext_statement, selector_program


class HybridVariant(Enum):
    MESSAGE_ARRANGED = "message"
    CONSTANT_ARRANGED = "constant"


@dataclass(frozen=True)
class ShadCrs:
    lam: int
    tau: int
    ell_m: int
    y: bytes
    sub: tuple[tuple[rabe.RabeCrs, rabe.RabeCrs], ...]


@dataclass(frozen=True)
class ShadPublicKey:
    grid: tuple[tuple[rabe.RabePublicKey, rabe.RabePublicKey], ...]

    def fingerprint(self) -> bytes:
        cells = [pk.to_bytes() for row in self.grid for pk in row]
        return digest("shad-pk", enc_seq(cells))


@dataclass(frozen=True)
class ShadSecretKey:
    program: ObfuscatedProgram


@dataclass(frozen=True)
class ShadAux:
    sub: tuple[tuple[rabe.AuxState, rabe.AuxState], ...]

    @property
    def epoch(self) -> int:
        return self.sub[0][0].epoch

    def views(self) -> tuple[tuple[rabe.DirectoryView, rabe.DirectoryView], ...]:
        return tuple((a0.view(), a1.view()) for a0, a1 in self.sub)


@dataclass(frozen=True)
class ShadMasterKey:
    y: bytes
    sub: tuple[tuple[rabe.MasterPublicKey, rabe.MasterPublicKey], ...]

    @property
    def ell_m(self) -> int:
        return len(self.sub)


@dataclass(frozen=True)
class ShadHelperKey:
    sub: tuple[tuple[rabe.HelperKey, rabe.HelperKey], ...]

    @property
    def epoch(self) -> int:
        return self.sub[0][0].epoch


@dataclass(frozen=True)
class ShadCiphertext:
    sub: tuple[tuple[rabe.RabeCiphertext, rabe.RabeCiphertext], ...]
    proof: Proof

    def to_bytes(self) -> bytes:
        cells = [ct.to_bytes() for row in self.sub for ct in row]
        return enc_seq(cells) + enc_bytes(self.proof.statement_digest)


@dataclass(frozen=True)
class EncStatement:
    """Public data the encryption-consistency relation is checked against."""

    mpk: ShadMasterKey
    views: tuple
    attr: Bits
    sub: tuple


@dataclass
class SimEntry:
    pk: ShadPublicKey
    sks: tuple[tuple[rabe.RabeSecretKey, rabe.RabeSecretKey], ...]
    zstar: Bits
    y: bytes


class SimDictionary(dict):
    """Maps public-key fingerprints to simulator bookkeeping entries."""


def setup(lam: int, tau: int, ell_m: int, rng: Rng) -> ShadCrs:
    sub = tuple(
        tuple(rabe.setup(lam, tau, rng.fork(f"sub/{i}/{b}")) for b in range(2))
        for i in range(ell_m)
    )
    return ShadCrs(lam, tau, ell_m, rng.bytes(32), sub)


def empty_aux(crs: ShadCrs) -> ShadAux:
    return ShadAux(tuple(tuple(rabe.empty_aux(c) for c in row) for row in crs.sub))


def _keygen_grid(crs: ShadCrs, aux: ShadAux, policy: Policy, rng: Rng):
    pk_grid = []
    sk_grid = []
    for i in range(crs.ell_m):
        pk_row = []
        sk_row = []
        for b in range(2):
            sub_aux = None if aux is None else aux.sub[i][b]
            pk, sk = rabe.keygen(crs.sub[i][b], sub_aux, policy, rng.fork(f"key/{i}/{b}"))
            pk_row.append(pk)
            sk_row.append(sk)
        pk_grid.append(tuple(pk_row))
        sk_grid.append(tuple(sk_row))
    return tuple(pk_grid), tuple(sk_grid)


def keygen(crs: ShadCrs, aux: ShadAux, policy: Policy, rng: Rng) -> tuple[ShadPublicKey, ShadSecretKey]:
    pk_grid, sk_grid = _keygen_grid(crs, aux, policy, rng)
    z = random_bits(crs.ell_m, rng)
    keys = tuple(sk_grid[i][z[i]] for i in range(crs.ell_m))
    return ShadPublicKey(pk_grid), ShadSecretKey(selector_program(z, crs.y, keys))


def regpk(crs: ShadCrs, aux: ShadAux, pk: ShadPublicKey, policy: Policy) -> tuple[ShadMasterKey, ShadAux]:
    mpk_grid = []
    aux_grid = []
    for i in range(crs.ell_m):
        mpk_row = []
        aux_row = []
        for b in range(2):
            m, a = rabe.regpk(crs.sub[i][b], aux.sub[i][b], pk.grid[i][b], policy)
            mpk_row.append(m)
            aux_row.append(a)
        mpk_grid.append(tuple(mpk_row))
        aux_grid.append(tuple(aux_row))
    return ShadMasterKey(crs.y, tuple(mpk_grid)), ShadAux(tuple(aux_grid))


def update(crs: ShadCrs, aux: ShadAux, pk: ShadPublicKey) -> ShadHelperKey:
    grid = tuple(
        tuple(rabe.update(crs.sub[i][b], aux.sub[i][b], pk.grid[i][b]) for b in range(2))
        for i in range(crs.ell_m)
    )
    return ShadHelperKey(grid)


def relation_check(d: EncStatement, w) -> bool:
    """w = (mu, coins grid). Re-encrypts every cell and compares bytes."""
    mu, coins = w
    if mu.n != d.mpk.ell_m:
        return False
    for i in range(mu.n):
        for b in range(2):
            expected = rabe.encrypt(
                d.mpk.sub[i][b],
                d.attr,
                bytes([mu[i]]),
                None,
                d.views[i][b],
                coins=coins[i][b],
            )
            if expected != d.sub[i][b]:
                return False
    return True


def _slot_coins(rng: Rng, ell_m: int):
    return tuple(
        tuple(rng.fork(f"slot/{i}/{b}").bytes(16) for b in range(2)) for i in range(ell_m)
    )


def _arranged(mpk: ShadMasterKey, attr: Bits, values, coins, views):
    return tuple(
        tuple(
            rabe.encrypt(mpk.sub[i][b], attr, bytes([values[i][b]]), None, views[i][b], coins=coins[i][b])
            for b in range(2)
        )
        for i in range(mpk.ell_m)
    )


def encrypt(mpk: ShadMasterKey, attr: Bits, mu: Bits, rng: Rng, views) -> ShadCiphertext:
    if mu.n != mpk.ell_m:
        raise LengthMismatch(f"message width {mu.n} != {mpk.ell_m}")
    coins = _slot_coins(rng, mpk.ell_m)
    values = tuple((mu[i], mu[i]) for i in range(mpk.ell_m))
    sub = _arranged(mpk, attr, values, coins, views)
    d = EncStatement(mpk, views, attr, sub)
    stmt = ciphertext_statement(attr, sub, relation=lambda w: relation_check(d, w))
    proof = zka_prove(stmt, (mu, coins), mpk.y)
    return ShadCiphertext(sub, proof)


def decrypt(sk: ShadSecretKey, hsk: ShadHelperKey, attr: Bits, ct: ShadCiphertext):
    return io_eval(sk.program, hsk, attr, ct)


def sim_keygen(crs: ShadCrs, aux: ShadAux, policy: Policy, B: SimDictionary, rng: Rng):
    pk_grid, sk_grid = _keygen_grid(crs, aux, policy, rng)
    zstar = random_bits(crs.ell_m, rng)
    pk = ShadPublicKey(pk_grid)
    B[pk.fingerprint()] = SimEntry(pk, sk_grid, zstar, crs.y)
    return pk, B


def sim_regpk(crs: ShadCrs, aux: ShadAux, pk: ShadPublicKey, policy: Policy, B: SimDictionary):
    mpk, aux2 = regpk(crs, aux, pk, policy)
    return mpk, aux2, B


def sim_corrupt(pk: ShadPublicKey, B: SimDictionary) -> ShadSecretKey:
    entry = B.get(pk.fingerprint())
    if entry is None:
        raise UnknownKey("no simulator entry for this public key")
    z = Bits(len(entry.sks), 0)
    keys = tuple(entry.sks[i][0] for i in range(len(entry.sks)))
    return ShadSecretKey(selector_program(z, entry.y, keys))


def zstar_aggregate(B: SimDictionary) -> Bits:
    if not B:
        raise EmptyDictionary("simulator dictionary is empty")
    return reduce(lambda a, b: a ^ b, (e.zstar for e in B.values()))


def sim_ct(mpk: ShadMasterKey, B: SimDictionary, attr: Bits, rng: Rng, views) -> ShadCiphertext:
    zs = zstar_aggregate(B)
    coins = _slot_coins(rng, mpk.ell_m)
    values = tuple((0, 1) if zs[i] == 0 else (1, 0) for i in range(mpk.ell_m))
    sub = _arranged(mpk, attr, values, coins, views)
    stmt = ciphertext_statement(attr, sub)
    return ShadCiphertext(sub, zka_simulate(stmt, mpk.y))


def reveal(pk: ShadPublicKey, B: SimDictionary, ct: ShadCiphertext, mu: Bits) -> ShadSecretKey:
    entry = B.get(pk.fingerprint())
    if entry is None:
        raise UnknownKey("no simulator entry for this public key")
    if mu.n != len(entry.sks):
        raise LengthMismatch(f"message width {mu.n} != {len(entry.sks)}")
    z = zstar_aggregate(B) ^ mu
    keys = tuple(entry.sks[i][z[i]] for i in range(mu.n))
    return ShadSecretKey(selector_program(z, entry.y, keys))


def hybrid_ciphertext(
    mpk: ShadMasterKey,
    B: SimDictionary,
    attr: Bits,
    mu: Bits | None,
    variant: HybridVariant,
    rng: Rng,
    views,
    z: Bits | None = None,
) -> ShadCiphertext:
    """Intermediate ciphertext arrangements used by the simulation argument.

    MESSAGE_ARRANGED puts mu[i] at slot (i, z[i]) and its complement
    opposite; CONSTANT_ARRANGED puts 0 at the aggregated selector and 1
    opposite. With z = zstar xor mu the two produce identical bytes.
    """
    coins = _slot_coins(rng, mpk.ell_m)
    if variant is HybridVariant.MESSAGE_ARRANGED:
        if mu is None or z is None:
            raise LengthMismatch("message arrangement needs mu and z")
        values = tuple(
            (mu[i], 1 - mu[i]) if z[i] == 0 else (1 - mu[i], mu[i])
            for i in range(mpk.ell_m)
        )
    else:
        zs = zstar_aggregate(B)
        values = tuple((0, 1) if zs[i] == 0 else (1, 0) for i in range(mpk.ell_m))
    sub = _arranged(mpk, attr, values, coins, views)
    stmt = ciphertext_statement(attr, sub)
    return ShadCiphertext(sub, zka_simulate(stmt, mpk.y))
