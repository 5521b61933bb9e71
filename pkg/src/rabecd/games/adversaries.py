"""Built-in adversary strategies for the experiment harness.

Universal quantification over adversaries is replaced by this library
plus a fuzzing constructor: each strategy is deterministic given the
random stream the harness hands it, holds whatever classical state it
likes between phases, and may keep the quantum registers it was given
(measuring them collapses the shared ciphertext state, as it would for
a real holder).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bits import Bits, random_bits
from ..errors import BOT, GET_UPDATE, OneShotConsumed
from ..primitives.oss import OssSignature
from ..primitives.sig import sig_width
from ..protocols.base import SchemeTag
from ..qstate import bb84_prepare, measure_computational
from ..rabe.policy import random_policy, random_policy_with_value
from ..rand import Rng
from ..shad.circuits import selector_parts
from .experiments import (
    CelOutput,
    CelPackage,
    ChallengePackage,
    RevealedKeys,
    ShadChallenge,
    StrategyContext,
)


@dataclass
class QuerySchedule:
    """Query mix for the correctness games.

    fault_query splices one ciphertext's classical half from an
    unrelated encryption (decryption game); tamper_query corrupts one
    certificate before verification (verification game).
    """

    n_before: int = 1
    n_after: int = 1
    n_queries: int = 4
    fault_query: int | None = None
    tamper_query: int | None = None


def tamper_cert(tag: SchemeTag, cert, rng: Rng):
    """Deterministically unacceptable variant of an honest certificate."""
    if tag in (SchemeTag.PRIVCD, SchemeTag.PRIVCED):
        return cert[: len(cert) - 1]
    if tag is SchemeTag.PUBVCD:
        return OssSignature(rng.bytes(len(cert.preimage) + 1), cert.other_end)
    return tuple(block[: len(block) - 1] for block in cert)


class AdversaryStrategy:
    """Base strategy: registers nothing, deletes honestly, guesses at random.

    Subclasses override the phases they care about. The harness calls
    on_setup once, then query_phase, then the experiment-specific
    challenge and deletion callbacks.
    """

    def on_setup(self, ctx: StrategyContext, rng: Rng) -> None:
        self.ctx = ctx

    def query_phase(self, oracle, rng: Rng) -> None:
        pass

    def challenge_choice(self, rng: Rng):
        raise NotImplementedError

    def challenge_attr(self, rng: Rng) -> Bits:
        raise NotImplementedError

    def deletion_phase(self, package: ChallengePackage, rng: Rng):
        return package.scheme.delete(package.ct, rng)

    def deletion_phase_ced(self, package: ChallengePackage, rng: Rng):
        cert = self.deletion_phase(package, rng)
        return cert, self.residual_view(cert, package)

    def residual_view(self, cert, package: ChallengePackage):
        """Classical residue the strategy keeps after deleting."""
        if isinstance(cert, Bits):
            return ("cert", cert)
        if isinstance(cert, tuple):
            return ("cert",) + tuple(cert)
        return ("cert-opaque",)

    def guess(self, revealed, rng: Rng) -> int:
        return rng.randbits(1)

    def cel_phase(self, package: CelPackage, rng: Rng) -> CelOutput:
        raise NotImplementedError


class HonestDeleter(AdversaryStrategy):
    """Registers honest keys, deletes honestly, then tries to use the reveal.

    After a valid deletion the revealed keys decrypt only the collapsed
    residue, so the comparison against the two challenge messages is a
    coin flip in disguise; the strategy exists to witness exactly that.
    """

    def __init__(self, n_honest: int = 1):
        self.n_honest = n_honest
        self.indices: list[int] = []

    def query_phase(self, oracle, rng: Rng) -> None:
        self.attr = random_bits(self.ctx.tau, rng)
        for k in range(self.n_honest):
            policy = random_policy_with_value(self.attr, 1, rng.fork(f"policy/{k}"))
            index, _pk = oracle.register_honest(policy)
            self.indices.append(index)

    def challenge_choice(self, rng: Rng):
        mu0 = random_bits(self.ctx.ell_m, rng)
        mu1 = ~mu0
        return mu0, mu1, self.attr

    def challenge_attr(self, rng: Rng) -> Bits:
        return self.attr

    def guess(self, revealed: RevealedKeys, rng: Rng) -> int:
        mu0, mu1, attr = revealed.challenge
        for index in self.indices:
            sk = revealed.sks.get(index)
            hsk = revealed.hsks.get(index)
            if sk is None or hsk is None:
                continue
            try:
                out = self.ctx.scheme.decrypt(sk, hsk, attr, revealed.ct, rng.fork(f"dec/{index}"))
            except OneShotConsumed:
                continue
            if out is GET_UPDATE or out is BOT:
                continue
            if out == mu0:
                return 0
            if out == mu1:
                return 1
        return rng.randbits(1)


class CertForger(HonestDeleter):
    """Honest setup, but the certificate is fabricated without measuring."""

    def deletion_phase(self, package: ChallengePackage, rng: Rng):
        scheme = package.scheme
        lam = self.ctx.lam
        ell_m = self.ctx.ell_m
        if scheme.tag in (SchemeTag.PRIVCD, SchemeTag.PRIVCED):
            return random_bits(lam * ell_m, rng)
        if scheme.tag is SchemeTag.PUBVCD:
            return OssSignature(rng.bytes(lam // 8), rng.bytes(lam // 8))
        blocks = len(package.ct.classical)
        return tuple(random_bits(lam + sig_width(lam), rng.fork(f"blk/{j}")) for j in range(blocks))


class MeasureThenGuess(HonestDeleter):
    """Certificate from a computational-basis measurement of the held state.

    Wrong-basis positions collapse to coin flips, so the certificate
    only survives verification with the wrong-basis-count probability
    the statistics suite pins down.
    """

    def deletion_phase(self, package: ChallengePackage, rng: Rng):
        ct = package.ct
        scheme = package.scheme
        if scheme.tag in (SchemeTag.PRIVCD, SchemeTag.PRIVCED):
            cert = Bits(0, 0)
            for j in range(len(ct.quantum)):
                res = measure_computational(ct.quantum[j], rng)
                ct.quantum[j] = res.post_state
                cert = cert.concat(res.outcome)
            return cert
        if scheme.tag is SchemeTag.PUBVCED:
            certs = []
            for j in range(len(ct.quantum)):
                res = measure_computational(ct.quantum[j], rng)
                ct.quantum[j] = res.post_state
                certs.append(res.outcome)
            return tuple(certs)
        return scheme.delete(ct, rng)


class DecryptFirst(AdversaryStrategy):
    """Corrupts a key whose policy accepts the planned challenge attribute.

    The challenge phase must reject this strategy: its corrupted policy
    satisfies the attribute it then submits.
    """

    def query_phase(self, oracle, rng: Rng) -> None:
        self.attr = random_bits(self.ctx.tau, rng)
        policy = random_policy_with_value(self.attr, 1, rng.fork("policy"))
        index, _pk = oracle.register_honest(policy)
        self.sk = oracle.corrupt(index)

    def challenge_choice(self, rng: Rng):
        mu0 = random_bits(self.ctx.ell_m, rng)
        return mu0, ~mu0, self.attr

    def challenge_attr(self, rng: Rng) -> Bits:
        return self.attr


class ZProber(AdversaryStrategy):
    """Reads the selector string out of the one revealed key.

    The selector is uniform in the real world and a uniform mask of the
    message in the simulated world, so any fixed read-out function has
    vanishing advantage; this strategy checks the designed surface.
    """

    def query_phase(self, oracle, rng: Rng) -> None:
        self.attr = random_bits(self.ctx.tau, rng)
        policy = random_policy_with_value(self.attr, 1, rng.fork("policy"))
        self.index, _pk = oracle.register_honest(policy)

    def challenge_choice(self, rng: Rng):
        self.mu = random_bits(self.ctx.ell_m, rng)
        return self.mu, self.attr

    def guess(self, challenge: ShadChallenge, rng: Rng) -> int:
        sk = challenge.sks[self.index]
        z, _y = selector_parts(sk.program)
        return (sum(z) ^ sum(self.mu)) & 1


class FunctionalProber(AdversaryStrategy):
    """Decrypts the challenge with every revealed key and compares to the message.

    Equivocation makes the comparison succeed in both worlds, so the
    observable is constant and the guess is forced to a coin flip.
    """

    def __init__(self, n_honest: int = 2):
        self.n_honest = n_honest
        self.indices: list[int] = []

    def query_phase(self, oracle, rng: Rng) -> None:
        self.attr = random_bits(self.ctx.tau, rng)
        for k in range(self.n_honest):
            policy = random_policy_with_value(self.attr, 1, rng.fork(f"policy/{k}"))
            index, _pk = oracle.register_honest(policy)
            self.indices.append(index)

    def challenge_choice(self, rng: Rng):
        self.mu = random_bits(self.ctx.ell_m, rng)
        return self.mu, self.attr

    def guess(self, challenge: ShadChallenge, rng: Rng) -> int:
        from ..shad import core as shad

        for index in self.indices:
            out = shad.decrypt(challenge.sks[index], challenge.hsks[index], self.attr, challenge.ct)
            if out != self.mu:
                return 1
        return rng.randbits(1)


class HonestCelDeleter(AdversaryStrategy):
    """Measures the handed register in the computational basis and certifies."""

    def cel_phase(self, package: CelPackage, rng: Rng) -> CelOutput:
        res = measure_computational(package.reg, rng)
        outcome = res.outcome
        if package.variant == "public":
            x_prime = outcome[: package.lam]
            sigma = outcome[package.lam :]
        else:
            x_prime = outcome
            sigma = None
        view = (x_prime, sigma, package.theta, package.beta)
        return CelOutput(x_prime, sigma, view)


@dataclass(frozen=True)
class MeasureAttackStats:
    lam: int
    h: int
    trials: int
    accepts: int

    @property
    def expected_rate(self) -> float:
        return 2.0 ** (-self.h)

    @property
    def observed_rate(self) -> float:
        return self.accepts / self.trials


def run_measure_attack(tag: SchemeTag, lam: int, trials: int, seed: int) -> MeasureAttackStats:
    """Computational-measurement deletion attack on one conjugate-coding block.

    The basis string is fixed once per suite so acceptance is a single
    binomial with rate 2^(-h), h the Hadamard-position count; the
    prepared string is fresh each trial. Certificate acceptance uses the
    block rule shared by both privately verifiable schemes: the
    certificate must match the prepared string on every Hadamard
    position.
    """
    if tag not in (SchemeTag.PRIVCD, SchemeTag.PRIVCED):
        raise ValueError("measurement-attack statistics cover the privately verifiable schemes")
    rng = Rng(seed)
    theta = random_bits(lam, rng.fork("theta"))
    h = sum(theta)
    accepts = 0
    for t in range(trials):
        trng = rng.fork(f"trial/{t}")
        x = random_bits(lam, trng)
        reg = bb84_prepare(x, theta)
        outcome = measure_computational(reg, trng).outcome
        if ((outcome.val ^ x.val) & theta.val) == 0:
            accepts += 1
    return MeasureAttackStats(lam, h, trials, accepts)


def fuzz_strategy(seed: int) -> AdversaryStrategy:
    """Randomized but admissible strategy for robustness sweeps."""
    rng = Rng(seed)

    class _Fuzz(AdversaryStrategy):
        def query_phase(self, oracle, frng: Rng) -> None:
            self.attr = random_bits(self.ctx.tau, rng.fork("attr"))
            self.indices = []
            for k in range(1 + rng.randbits(1)):
                policy = random_policy_with_value(self.attr, 1, rng.fork(f"honest/{k}"))
                index, _pk = oracle.register_honest(policy)
                self.indices.append(index)
            for k in range(rng.randbits(1)):
                policy = random_policy_with_value(self.attr, 0, rng.fork(f"reject/{k}"))
                index, _pk = oracle.register_honest(policy)
                oracle.corrupt(index)
            if hasattr(oracle, "make_keypair") and rng.randbits(1):
                policy = random_policy_with_value(self.attr, 0, rng.fork("outsider"))
                pk, _sk = oracle.make_keypair(policy)
                oracle.register_corrupted(pk, policy)

        def challenge_choice(self, frng: Rng):
            mu0 = random_bits(self.ctx.ell_m, rng.fork("mu"))
            if self.ctx.scheme is None:
                return mu0, self.attr
            return mu0, ~mu0, self.attr

        def challenge_attr(self, frng: Rng) -> Bits:
            return self.attr

        def deletion_phase(self, package: ChallengePackage, frng: Rng):
            if rng.randbits(1):
                return package.scheme.delete(package.ct, frng)
            return tamper_cert(package.scheme.tag, package.scheme.delete(package.ct, frng), frng)

        def guess(self, revealed, frng: Rng) -> int:
            return frng.randbits(1)

    return _Fuzz()


STRATEGIES = {
    "honest-deleter": HonestDeleter,
    "cert-forger": CertForger,
    "measure": MeasureThenGuess,
    "decrypt-first": DecryptFirst,
    "z-prober": ZProber,
    "functional": FunctionalProber,
    "cel-honest": HonestCelDeleter,
}
