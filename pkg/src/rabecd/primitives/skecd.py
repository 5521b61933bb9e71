"""One-time secret-key encryption with certified deletion.

Per plaintext bit j the key holds a conjugate-coding block (x_j, theta_j) of
lambda bits each; the ciphertext is the prepared register |x_j> in bases
theta_j plus the classical bit m_j XOR parity(x_j at positions theta_j = 0).
Deletion measures every block in the Hadamard basis and the certificate is
checked at the positions theta_j = 1, which are undisturbed by that
measurement exactly when the holder gave up the computational-basis
information that decryption needs.

The key derives its blocks from a lambda-bit seed by a hash KDF; the seed is
the key's canonical serialization (and what outer layers encrypt). That keeps
wrapped keys short. The block family is pseudorandom rather than uniform,
which only matters for claims this reference does not make.

Keys are one-time: a second encrypt raises KeyReuse. Ciphertext registers are
collapsed in place by decrypt/delete, mirroring measurement on held states.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..bits import Bits
from ..errors import KeyReuse, LengthMismatch, ParameterError
from ..qstate import QReg, bb84_prepare, measure_in_basis
from ..rand import Rng
from ..serde import digest


def _expand(seed: Bits, j: int, tag: str, lam: int) -> Bits:
    if lam > 256:
        raise ParameterError("block length above 256 bits unsupported")
    raw = digest("skecd-" + tag, seed.to_bytes(), j.to_bytes(4, "little"))
    return Bits.from_bytes(raw, lam)


@dataclass
class SKECDKey:
    lam: int
    ell_m: int
    seed: Bits
    used: bool = field(default=False, compare=False)

    @property
    def blocks(self) -> tuple[tuple[Bits, Bits], ...]:
        return tuple(
            (_expand(self.seed, j, "x", self.lam), _expand(self.seed, j, "theta", self.lam))
            for j in range(self.ell_m)
        )


@dataclass
class SKECDCiphertext:
    lam: int
    masked: Bits
    quantum: list[QReg]


def skecd_keygen(ell_m: int, lam: int, rng: Rng) -> SKECDKey:
    if ell_m < 1 or lam < 1:
        raise ParameterError("need ell_m >= 1 and lambda >= 1")
    return SKECDKey(lam, ell_m, Bits(lam, rng.randbits(lam)))


def skecd_key_from_seed(seed: Bits, ell_m: int) -> SKECDKey:
    """Rebuild a key from its canonical serialization (the seed)."""
    return SKECDKey(len(seed), ell_m, seed, used=True)


def skecd_encrypt(sk: SKECDKey, m: Bits) -> SKECDCiphertext:
    if sk.used:
        raise KeyReuse("one-time key already used")
    if len(m) != sk.ell_m:
        raise LengthMismatch(f"{len(m)} vs {sk.ell_m}")
    sk.used = True
    masked = 0
    quantum = []
    for j, (x, theta) in enumerate(sk.blocks):
        masked |= (m[j] ^ x.masked_parity(~theta)) << j
        quantum.append(bb84_prepare(x, theta))
    return SKECDCiphertext(sk.lam, Bits(sk.ell_m, masked), quantum)


def skecd_decrypt(sk: SKECDKey, ct: SKECDCiphertext, rng: Rng) -> Bits:
    """Measure each block in its key basis; collapses ct.quantum in place."""
    if len(ct.quantum) != sk.ell_m or ct.lam != sk.lam:
        raise LengthMismatch("ciphertext shape does not match key")
    out = 0
    for j, (x, theta) in enumerate(sk.blocks):
        res = measure_in_basis(ct.quantum[j], theta, rng)
        ct.quantum[j] = res.post_state
        out |= (ct.masked[j] ^ res.outcome.masked_parity(~theta)) << j
    return Bits(sk.ell_m, out)


def skecd_delete(ct: SKECDCiphertext, rng: Rng) -> Bits:
    """Hadamard-measure every block; the concatenated outcomes certify deletion."""
    cert = Bits(0, 0)
    all_h = Bits(ct.lam, (1 << ct.lam) - 1)
    for j in range(len(ct.quantum)):
        res = measure_in_basis(ct.quantum[j], all_h, rng)
        ct.quantum[j] = res.post_state
        cert = cert.concat(res.outcome)
    return cert


def skecd_verify(sk: SKECDKey, cert: Bits) -> bool:
    if len(cert) != sk.lam * sk.ell_m:
        return False
    for j, (x, theta) in enumerate(sk.blocks):
        part = cert[j * sk.lam : (j + 1) * sk.lam]
        if (part.val ^ x.val) & theta.val:
            return False
    return True
