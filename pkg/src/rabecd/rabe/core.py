"""Reference registered ABE with key updates and deletion-friendly contract.

A curator keeps an append-only slot directory (public key + policy per slot)
authenticated by a Merkle tree. The master public key is the constant-size
(root, epoch) pair. A helper key is a slot's inclusion path at some epoch;
decryption demands a helper key at least as new as the ciphertext and answers
GET_UPDATE otherwise. Encryption addresses every slot whose policy accepts
the attribute, so ciphertext size is linear in the number of satisfied slots
(a documented deviation from compactness; encryption also reads the slot
directory through an explicit view checked against the master key).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bits import Bits
from ..errors import (
    BOT,
    GET_UPDATE,
    MalformedKey,
    NotRegistered,
    ParameterError,
    PolicyTooDeep,
    StaleView,
)
from ..primitives.pke import PkePublicKey, PkeSecretKey, pke_decrypt, pke_encrypt, pke_keygen
from ..rand import Rng
from ..serde import digest, enc_bytes, enc_seq, enc_u64
from .merkle import MerkleTree, leaf_digest, verify_path
from .policy import Policy, policy_bytes, policy_depth, policy_eval

MAX_POLICY_DEPTH = 8


@dataclass(frozen=True)
class RabeCrs:
    lam: int
    tau: int
    salt: bytes

    def digest(self) -> bytes:
        return digest("rabe-crs", enc_u64(self.lam), enc_u64(self.tau), self.salt)


@dataclass(frozen=True)
class RabePublicKey:
    enc_pk: PkePublicKey
    policy_commit: bytes

    def to_bytes(self) -> bytes:
        return enc_bytes(self.enc_pk.value) + enc_bytes(self.policy_commit)


@dataclass(frozen=True)
class RabeSecretKey:
    enc_sk: PkeSecretKey


@dataclass(frozen=True)
class Slot:
    index: int
    pk: RabePublicKey
    policy: Policy

    def leaf(self) -> bytes:
        return leaf_digest(self.index, self.pk.to_bytes() + policy_bytes(self.policy))


@dataclass(frozen=True)
class AuxState:
    crs_digest: bytes
    slots: tuple[Slot, ...]
    tree: MerkleTree
    roots: tuple[bytes, ...]

    @property
    def epoch(self) -> int:
        return len(self.slots)

    def view(self) -> "DirectoryView":
        return DirectoryView(self.crs_digest, self.epoch, self.tree.root(), self.slots)


@dataclass(frozen=True)
class MasterPublicKey:
    crs_digest: bytes
    root: bytes
    epoch: int

    def to_bytes(self) -> bytes:
        return enc_bytes(self.crs_digest) + enc_bytes(self.root) + enc_u64(self.epoch)


@dataclass(frozen=True)
class HelperKey:
    slot_index: int
    epoch: int
    root: bytes
    leaf: bytes
    path: tuple[bytes, ...]


@dataclass(frozen=True)
class DirectoryView:
    crs_digest: bytes
    epoch: int
    root: bytes
    slots: tuple[Slot, ...]


@dataclass(frozen=True)
class RabeCiphertext:
    root: bytes
    epoch: int
    entries: tuple[tuple[int, bytes], ...]

    def to_bytes(self) -> bytes:
        return (
            enc_bytes(self.root)
            + enc_u64(self.epoch)
            + enc_seq([enc_u64(i) + enc_bytes(c) for i, c in self.entries])
        )


def setup(lam: int, tau: int, rng: Rng) -> RabeCrs:
    if lam < 8 or lam % 8 != 0:
        raise ParameterError("lambda must be a positive multiple of 8")
    if tau < 1:
        raise ParameterError("attribute width must be at least 1")
    return RabeCrs(lam, tau, rng.bytes(16))


def empty_aux(crs: RabeCrs) -> AuxState:
    return AuxState(crs.digest(), (), MerkleTree(), ())


def keygen(crs: RabeCrs, aux, policy: Policy, rng: Rng) -> tuple[RabePublicKey, RabeSecretKey]:
    """aux is accepted for interface parity; key material ignores it."""
    if policy_depth(policy) > MAX_POLICY_DEPTH:
        raise PolicyTooDeep(f"depth {policy_depth(policy)} > {MAX_POLICY_DEPTH}")
    enc_pk, enc_sk = pke_keygen(rng)
    commit = digest("rabe-policy", policy_bytes(policy))
    return RabePublicKey(enc_pk, commit), RabeSecretKey(enc_sk)


def regpk(crs: RabeCrs, aux, pk: RabePublicKey, policy: Policy) -> tuple[MasterPublicKey, AuxState]:
    if aux is None:
        aux = empty_aux(crs)
    if len(pk.enc_pk.value) != 32:
        raise MalformedKey("bad encryption key length")
    if pk.policy_commit != digest("rabe-policy", policy_bytes(policy)):
        raise MalformedKey("key was generated for a different policy")
    slot = Slot(aux.epoch, pk, policy)
    tree = aux.tree.append(slot.leaf())
    aux2 = AuxState(
        aux.crs_digest, aux.slots + (slot,), tree, aux.roots + (tree.root(),)
    )
    return MasterPublicKey(aux2.crs_digest, tree.root(), aux2.epoch), aux2


def update(crs: RabeCrs, aux: AuxState, pk: RabePublicKey) -> HelperKey:
    """Helper key for pk's newest slot at the current epoch. Deterministic."""
    for slot in reversed(aux.slots):
        if slot.pk == pk:
            return HelperKey(
                slot.index,
                aux.epoch,
                aux.tree.root(),
                slot.leaf(),
                aux.tree.path(slot.index),
            )
    raise NotRegistered("public key has no slot")


def encrypt(
    mpk: MasterPublicKey,
    attr: Bits,
    m: bytes,
    rng: Rng | None,
    view: DirectoryView,
    coins: bytes | None = None,
) -> RabeCiphertext:
    """Encrypt m to every slot whose policy accepts attr.

    Deterministic given explicit coins (per-slot randomness is derived from
    them), which is what the encryption-consistency relation re-runs.
    """
    if view.crs_digest != mpk.crs_digest or view.root != mpk.root or view.epoch != mpk.epoch:
        raise StaleView("directory view does not match master public key")
    if coins is None:
        coins = rng.bytes(16)
    entries = []
    for slot in view.slots:
        if policy_eval(slot.policy, attr):
            r = digest("rabe-slot-coins", coins, enc_u64(slot.index))
            entries.append((slot.index, pke_encrypt(slot.pk.enc_pk, m, r)))
    return RabeCiphertext(mpk.root, mpk.epoch, tuple(entries))


def decrypt(sk: RabeSecretKey, hsk: HelperKey, attr: Bits, ct: RabeCiphertext):
    """Returns plaintext bytes, BOT, or GET_UPDATE (helper key older than ct)."""
    if hsk.epoch < ct.epoch:
        return GET_UPDATE
    root_ref = ct.root if hsk.epoch == ct.epoch else hsk.root
    if not verify_path(hsk.leaf, hsk.slot_index, hsk.path, root_ref):
        return BOT
    for idx, blob in ct.entries:
        if idx == hsk.slot_index:
            return pke_decrypt(sk.enc_sk, blob)
    return BOT
