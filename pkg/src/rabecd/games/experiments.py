"""Challenger machinery for the correctness and security experiments.

Each experiment is a pure function of (scheme, challenge bit, strategy,
seed): the challenger owns one deterministic random stream, the strategy
another, so equal seeds replay byte-identical transcripts. Strategies
interact with the challenger only through the oracle methods exposed
here; set bookkeeping (corrupted set C, honest set H, policy dictionary
D) is snapshotted into the transcript after every query.

Phase discipline is enforced structurally: key reveal in the deletion
experiment happens only after certificate verification succeeds, the
everlasting variant never reveals keys at all, and the challenge refuses
attributes satisfied by any corrupted key's policy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..bits import Bits, random_bits
from ..errors import (
    BOT,
    GET_UPDATE,
    AdmissibilityError,
    AdversaryProtocolViolation,
    ParameterError,
)
from ..primitives.sig import sig_gen, sig_verify, sig_width, sig_xor_fn
from ..protocols.base import HybridCiphertext, SchemeOps, SchemeTag
from ..qstate import apply_xor_map, bb84_prepare, extend
from ..rabe.policy import Policy, policy_bytes, policy_eval, random_policy, random_policy_with_value
from ..rand import Rng
from ..serde import digest
from ..shad import core as shad
from .transcript import GameTranscript, fingerprint_hex

CEL_VARIANTS = ("private", "public")
HIDING_MODES = ("idealized", "revealed")


@dataclass
class ExperimentResult:
    b: int | None
    output: object
    trials: int
    transcript: GameTranscript
    extras: dict = field(default_factory=dict)


@dataclass(frozen=True)
class StrategyContext:
    scheme: SchemeOps | None
    lam: int
    tau: int
    ell_m: int


@dataclass(frozen=True)
class ChallengePackage:
    """What the adversary holds during the deletion phase."""

    scheme: SchemeOps
    ct: HybridCiphertext
    challenge: tuple
    vk: object = None


@dataclass(frozen=True)
class RevealedKeys:
    """Post-deletion disclosure: every honest key and a fresh helper key each."""

    sks: dict
    hsks: dict
    ct: HybridCiphertext
    challenge: tuple


@dataclass(frozen=True)
class ShadChallenge:
    ct: object
    sks: dict
    hsks: dict
    mu: Bits
    attr: Bits


@dataclass(frozen=True)
class CelPackage:
    variant: str
    reg: object
    lam: int
    vk: object = None
    theta: Bits | None = None
    beta: int | None = None


@dataclass(frozen=True)
class CelOutput:
    x_prime: Bits
    sigma: Bits | None
    view: object


def _policy_fp(policy: Policy) -> str:
    return digest("policy-fp", policy_bytes(policy)).hex()[:16]


def admissibility_check(D: dict, C, attr: Bits):
    """Every corrupted key's policies must reject the challenge attribute."""
    for fp in C:
        for policy in D.get(fp, ()):
            if policy_eval(policy, attr) != 0:
                return "violation", (fp, policy)
    return "ok", None


def _require_admissible(D, C, attr, transcript) -> None:
    status, detail = admissibility_check(D, C, attr)
    transcript.record("admissibility", status=status, attr=attr)
    if status != "ok":
        fp, policy = detail
        raise AdmissibilityError(f"corrupted key {fp} has a policy satisfying the challenge attribute")


@dataclass
class _KeyRecord:
    pk: object
    sk: object
    policy: Policy
    fp: str


class Challenger:
    """Oracle state shared by the scheme-level experiments."""

    def __init__(self, scheme: SchemeOps, lam: int, tau: int, ell_m: int, rng: Rng, transcript: GameTranscript):
        self.scheme = scheme
        self.lam = lam
        self.tau = tau
        self.ell_m = ell_m
        self.rng = rng
        self.transcript = transcript
        self.crs = scheme.setup(lam, tau, ell_m, rng.fork("setup"))
        self.aux = scheme.empty_aux(self.crs)
        self.mpk = None
        self.ctr = 0
        self.records: dict[int, _KeyRecord] = {}
        self.C: list[str] = []
        self.H: list[int] = []
        self.D: dict[str, list[Policy]] = {}
        self._adv_keys = 0

    def _snapshot(self) -> dict:
        return {
            "C": list(self.C),
            "H": sorted(self.H),
            "D": {fp: [_policy_fp(p) for p in ps] for fp, ps in self.D.items()},
        }

    def _corrupted_policies(self) -> dict:
        return {fp: self.D.get(fp, []) for fp in self.C}

    def register_honest(self, policy: Policy) -> tuple[int, object]:
        self.ctr += 1
        pk, sk = self.scheme.keygen(self.crs, self.aux, policy, self.rng.fork(f"keygen/{self.ctr}"))
        self.mpk, self.aux = self.scheme.regpk(self.crs, self.aux, pk, policy)
        fp = fingerprint_hex(pk)
        self.records[self.ctr] = _KeyRecord(pk, sk, policy, fp)
        self.H.append(self.ctr)
        self.D.setdefault(fp, []).append(policy)
        self.transcript.record("register-honest", index=self.ctr, pk=fp, sets=self._snapshot())
        return self.ctr, pk

    def make_keypair(self, policy: Policy) -> tuple[object, object]:
        """Key material generated on the adversary's behalf (it knows both halves)."""
        self._adv_keys += 1
        return self.scheme.keygen(self.crs, self.aux, policy, self.rng.fork(f"adv-keygen/{self._adv_keys}"))

    def register_corrupted(self, pk, policy: Policy):
        self.mpk, self.aux = self.scheme.regpk(self.crs, self.aux, pk, policy)
        fp = fingerprint_hex(pk)
        if fp not in self.C:
            self.C.append(fp)
        self.D.setdefault(fp, []).append(policy)
        self.transcript.record("register-corrupted", pk=fp, sets=self._snapshot())
        return self.mpk, self.aux

    def corrupt(self, index: int):
        rec = self.records.get(index)
        if rec is None:
            raise AdversaryProtocolViolation(f"no honest key with index {index}")
        if index not in self.H:
            raise AdversaryProtocolViolation(f"key {index} is already corrupted")
        self.H.remove(index)
        if rec.fp not in self.C:
            self.C.append(rec.fp)
        self.transcript.record("corrupt", index=index, pk=rec.fp, sets=self._snapshot())
        return rec.sk

    def fresh_hsk(self, index: int):
        rec = self.records[index]
        return self.scheme.update(self.crs, self.aux, rec.pk)

    def honest_reveal(self) -> tuple[dict, dict]:
        sks = {i: self.records[i].sk for i in sorted(self.H)}
        hsks = {i: self.fresh_hsk(i) for i in sorted(self.H)}
        return sks, hsks


def _encrypt_now(ch: Challenger, attr: Bits, mu: Bits, rng: Rng):
    if ch.mpk is None:
        raise AdversaryProtocolViolation("challenge requested before any registration")
    return ch.scheme.encrypt(ch.crs, ch.mpk, attr, mu, rng, ch.scheme.views(ch.aux))


def run_decryption_game(scheme: SchemeOps, adversary, seed: int, *, lam: int = 16, tau: int = 8, ell_m: int = 8) -> ExperimentResult:
    """Correctness experiment: honest decryption must match every query.

    The schedule registers bystanders, then the target key, then more
    bystanders so the target's helper key goes stale; each stale query
    must resolve with exactly one update. A mismatch halts with verdict
    0; a faulted ciphertext (classical half spliced from an unrelated
    encryption) is the intended way to exercise that halt.
    """
    from .adversaries import QuerySchedule

    sched = adversary if adversary is not None else QuerySchedule()
    rng = Rng(seed)
    transcript = GameTranscript(seed, scheme.tag.value, "decryption-game")
    ch = Challenger(scheme, lam, tau, ell_m, rng.fork("challenger"), transcript)
    grng = rng.fork("game")

    attr = random_bits(tau, grng)
    for k in range(sched.n_before):
        ch.register_honest(random_policy(tau, grng.fork(f"bystander-policy/{k}")))
    target_policy = random_policy_with_value(attr, 1, grng.fork("target-policy"))
    target, _pk = ch.register_honest(target_policy)
    sk_star = ch.records[target].sk
    hsk_star = ch.fresh_hsk(target)
    for k in range(sched.n_after):
        ch.register_honest(random_policy(tau, grng.fork(f"late-policy/{k}")))

    verdict = 1
    for j in range(sched.n_queries):
        mu = random_bits(ell_m, grng.fork(f"mu/{j}"))
        vk, ct = _encrypt_now(ch, attr, mu, grng.fork(f"enc/{j}"))
        if sched.fault_query == j:
            spare_mu = ~mu
            _svk, spare = _encrypt_now(ch, attr, spare_mu, grng.fork(f"fault/{j}"))
            ct = HybridCiphertext(ct.scheme_tag, spare.classical, ct.quantum, ct.receiver_state)
            transcript.record("fault-injected", query=j)
        out = scheme.decrypt(sk_star, hsk_star, attr, ct, grng.fork(f"dec/{j}"))
        updates = 0
        if out is GET_UPDATE:
            hsk_star = ch.fresh_hsk(target)
            updates = 1
            out = scheme.decrypt(sk_star, hsk_star, attr, ct, grng.fork(f"dec-retry/{j}"))
        ok = out == mu
        transcript.record("decryption-query", query=j, mu=mu, updates=updates, ok=ok)
        if not ok:
            verdict = 0
            break
    transcript.record("verdict", value=verdict)
    return ExperimentResult(None, verdict, 1, transcript)


def run_verification_game(scheme: SchemeOps, adversary, seed: int, *, lam: int = 16, tau: int = 8, ell_m: int = 8) -> ExperimentResult:
    """Correctness experiment: honest delete-then-verify must accept every query."""
    from .adversaries import QuerySchedule, tamper_cert

    sched = adversary if adversary is not None else QuerySchedule()
    rng = Rng(seed)
    transcript = GameTranscript(seed, scheme.tag.value, "verification-game")
    ch = Challenger(scheme, lam, tau, ell_m, rng.fork("challenger"), transcript)
    grng = rng.fork("game")

    attr = random_bits(tau, grng)
    for k in range(sched.n_before):
        ch.register_honest(random_policy(tau, grng.fork(f"bystander-policy/{k}")))
    ch.register_honest(random_policy_with_value(attr, 1, grng.fork("target-policy")))

    verdict = 1
    for j in range(sched.n_queries):
        mu = random_bits(ell_m, grng.fork(f"mu/{j}"))
        vk, ct = _encrypt_now(ch, attr, mu, grng.fork(f"enc/{j}"))
        cert = scheme.delete(ct, grng.fork(f"del/{j}"))
        if sched.tamper_query == j:
            cert = tamper_cert(scheme.tag, cert, grng.fork(f"tamper/{j}"))
            transcript.record("cert-tampered", query=j)
        ok = scheme.verify(vk, cert)
        transcript.record("verification-query", query=j, ok=ok)
        if not ok:
            verdict = 0
            break
    transcript.record("verdict", value=verdict)
    return ExperimentResult(None, verdict, 1, transcript)


def run_exp_cd(scheme: SchemeOps, b: int, adversary, seed: int, *, lam: int = 16, tau: int = 8, ell_m: int = 8) -> ExperimentResult:
    """Deletion experiment: valid certificate unlocks every honest key.

    Query phase runs against the oracle; the challenge encrypts one of
    the adversary's two messages under its attribute, the adversary
    produces a certificate, and only a verifying certificate moves the
    experiment into the reveal-then-guess phase. An invalid certificate
    aborts with output BOT.
    """
    if scheme.tag not in (SchemeTag.PRIVCD, SchemeTag.PUBVCD):
        raise ParameterError("deletion experiment covers the key-revealing schemes only")
    if b not in (0, 1):
        raise ParameterError("challenge bit must be 0 or 1")
    rng = Rng(seed)
    transcript = GameTranscript(seed, scheme.tag.value, "exp-cd")
    transcript.record("challenge-bit", b=b)
    ch = Challenger(scheme, lam, tau, ell_m, rng.fork("challenger"), transcript)
    arng = rng.fork("adversary")

    adversary.on_setup(StrategyContext(scheme, lam, tau, ell_m), arng)
    adversary.query_phase(ch, arng)

    mu0, mu1, attr = adversary.challenge_choice(arng)
    if len(mu0) != ell_m or len(mu1) != ell_m:
        raise AdversaryProtocolViolation("challenge messages must match the message width")
    _require_admissible(ch.D, ch.C, attr, transcript)
    vk, ct = _encrypt_now(ch, attr, mu0 if b == 0 else mu1, rng.fork("challenge-enc"))
    transcript.record("challenge", attr=attr, mu0=mu0, mu1=mu1, ct=fingerprint_hex(ct.classical))

    package = ChallengePackage(scheme, ct, (mu0, mu1, attr), vk=vk if vk.public else None)
    cert = adversary.deletion_phase(package, arng)
    valid = scheme.verify(vk, cert)
    transcript.record("certificate", valid=valid, cert=fingerprint_hex(cert))
    if not valid:
        transcript.record("verdict", value="BOT")
        return ExperimentResult(b, BOT, 1, transcript, extras={"vk": vk})

    sks, hsks = ch.honest_reveal()
    transcript.record("reveal", keys=sorted(sks))
    guess = adversary.guess(RevealedKeys(sks, hsks, ct, (mu0, mu1, attr)), arng)
    if guess not in (0, 1):
        raise AdversaryProtocolViolation("guess must be a bit")
    transcript.record("verdict", value=guess)
    return ExperimentResult(b, guess, 1, transcript, extras={"vk": vk})


def run_exp_ced(scheme: SchemeOps, b: int, adversary, seed: int, *, lam: int = 16, tau: int = 8) -> ExperimentResult:
    """Everlasting deletion experiment: single-bit challenge, no key reveal.

    The output is the adversary's residual classical view when the
    certificate verifies and BOT otherwise; nothing else leaves the
    experiment, which is the point of the everlasting notion.
    """
    if scheme.tag not in (SchemeTag.PRIVCED, SchemeTag.PUBVCED):
        raise ParameterError("everlasting experiment covers the non-revealing schemes only")
    if b not in (0, 1):
        raise ParameterError("challenge bit must be 0 or 1")
    ell_m = 1
    rng = Rng(seed)
    transcript = GameTranscript(seed, scheme.tag.value, "exp-ced")
    transcript.record("challenge-bit", b=b)
    ch = Challenger(scheme, lam, tau, ell_m, rng.fork("challenger"), transcript)
    arng = rng.fork("adversary")

    adversary.on_setup(StrategyContext(scheme, lam, tau, ell_m), arng)
    adversary.query_phase(ch, arng)

    attr = adversary.challenge_attr(arng)
    _require_admissible(ch.D, ch.C, attr, transcript)
    vk, ct = _encrypt_now(ch, attr, Bits(1, b), rng.fork("challenge-enc"))
    transcript.record("challenge", attr=attr, ct=fingerprint_hex(ct.classical))

    package = ChallengePackage(scheme, ct, (attr,), vk=vk if vk.public else None)
    cert, view = adversary.deletion_phase_ced(package, arng)
    valid = scheme.verify(vk, cert)
    transcript.record("certificate", valid=valid, cert=fingerprint_hex(cert))
    output = view if valid else BOT
    transcript.record("verdict", value="view" if valid else "BOT")
    return ExperimentResult(b, output, 1, transcript, extras={"vk": vk})


class ShadChallenger:
    """Oracle state for the real-versus-simulated experiment."""

    def __init__(self, b: int, lam: int, tau: int, ell_m: int, rng: Rng, transcript: GameTranscript):
        self.world = b
        self.lam = lam
        self.tau = tau
        self.ell_m = ell_m
        self.rng = rng
        self.transcript = transcript
        self.crs = shad.setup(lam, tau, ell_m, rng.fork("setup"))
        self.aux = shad.empty_aux(self.crs)
        self.B = shad.SimDictionary()
        self.mpk = None
        self.ctr = 0
        self.records: dict[int, _KeyRecord] = {}
        self.C: list[str] = []
        self.H: list[int] = []
        self.D: dict[str, list[Policy]] = {}

    def _snapshot(self) -> dict:
        return {
            "C": list(self.C),
            "H": sorted(self.H),
            "D": {fp: [_policy_fp(p) for p in ps] for fp, ps in self.D.items()},
        }

    def register_honest(self, policy: Policy) -> tuple[int, object]:
        self.ctr += 1
        krng = self.rng.fork(f"keygen/{self.ctr}")
        if self.world == 0:
            pk, sk = shad.keygen(self.crs, self.aux, policy, krng)
            self.mpk, self.aux = shad.regpk(self.crs, self.aux, pk, policy)
        else:
            pk, self.B = shad.sim_keygen(self.crs, self.aux, policy, self.B, krng)
            self.mpk, self.aux, self.B = shad.sim_regpk(self.crs, self.aux, pk, policy, self.B)
            sk = None
        fp = fingerprint_hex(pk)
        self.records[self.ctr] = _KeyRecord(pk, sk, policy, fp)
        self.H.append(self.ctr)
        self.D.setdefault(fp, []).append(policy)
        self.transcript.record("register-honest", index=self.ctr, pk=fp, sets=self._snapshot())
        return self.ctr, pk

    def corrupt(self, index: int):
        rec = self.records.get(index)
        if rec is None:
            raise AdversaryProtocolViolation(f"no honest key with index {index}")
        if index not in self.H:
            raise AdversaryProtocolViolation(f"key {index} is already corrupted")
        self.H.remove(index)
        if rec.fp not in self.C:
            self.C.append(rec.fp)
        self.transcript.record("corrupt", index=index, pk=rec.fp, sets=self._snapshot())
        if self.world == 0:
            return rec.sk
        return shad.sim_corrupt(rec.pk, self.B)


def run_exp_shad(b: int, adversary, seed: int, *, lam: int = 16, tau: int = 8, ell_m: int = 8) -> ExperimentResult:
    """Real-versus-simulated experiment over the shadow-tolerant layer.

    World 0 runs the real algorithms and hands out the real secret keys;
    world 1 answers every query with the simulator and opens the
    simulated challenge ciphertext to the adversary's message through
    reveal-crafted keys. The adversary guesses which world it is in.
    """
    if b not in (0, 1):
        raise ParameterError("challenge bit must be 0 or 1")
    rng = Rng(seed)
    transcript = GameTranscript(seed, "shad", "exp-shad")
    transcript.record("challenge-bit", b=b)
    ch = ShadChallenger(b, lam, tau, ell_m, rng.fork("challenger"), transcript)
    arng = rng.fork("adversary")

    adversary.on_setup(StrategyContext(None, lam, tau, ell_m), arng)
    adversary.query_phase(ch, arng)

    mu, attr = adversary.challenge_choice(arng)
    if len(mu) != ell_m:
        raise AdversaryProtocolViolation("challenge message must match the message width")
    _require_admissible(ch.D, ch.C, attr, transcript)
    if ch.mpk is None:
        raise AdversaryProtocolViolation("challenge requested before any registration")
    erng = rng.fork("challenge-enc")
    if b == 0:
        ct = shad.encrypt(ch.mpk, attr, mu, erng, ch.aux.views())
        sks = {i: ch.records[i].sk for i in sorted(ch.H)}
    else:
        ct = shad.sim_ct(ch.mpk, ch.B, attr, erng, ch.aux.views())
        sks = {i: shad.reveal(ch.records[i].pk, ch.B, ct, mu) for i in sorted(ch.H)}
    hsks = {i: shad.update(ch.crs, ch.aux, ch.records[i].pk) for i in sorted(ch.H)}
    transcript.record("challenge", attr=attr, mu=mu, ct=fingerprint_hex(ct), keys=sorted(sks))

    guess = adversary.guess(ShadChallenge(ct, sks, hsks, mu, attr), arng)
    if guess not in (0, 1):
        raise AdversaryProtocolViolation("guess must be a bit")
    transcript.record("verdict", value=guess)
    return ExperimentResult(b, guess, 1, transcript)


def run_cel_experiment(variant: str, b: int, adversary, seed: int, *, lam: int = 6, hiding: str = "idealized") -> ExperimentResult:
    """Conjugate-coding deletion experiment behind the everlasting schemes.

    A random string is prepared in random bases and the challenge bit is
    masked by the parity of the Hadamard-basis positions; acceptance
    checks the computational-basis positions (private variant) or a
    signature on the measured string (public variant). The masked bit
    and bases travel through an efficient operation modeled by the
    hiding mode: "idealized" erases them from the adversary's view,
    "revealed" hands them over, which deliberately breaks hiding for the
    degenerate all-computational basis.
    """
    if variant not in CEL_VARIANTS:
        raise ParameterError(f"variant must be one of {CEL_VARIANTS}")
    if hiding not in HIDING_MODES:
        raise ParameterError(f"hiding must be one of {HIDING_MODES}")
    if b not in (0, 1):
        raise ParameterError("challenge bit must be 0 or 1")
    rng = Rng(seed)
    transcript = GameTranscript(seed, f"cel-{variant}", "cel-experiment")
    transcript.record("challenge-bit", b=b, hiding=hiding)
    crng = rng.fork("challenger")
    arng = rng.fork("adversary")

    x = random_bits(lam, crng)
    theta = random_bits(lam, crng)
    beta = b ^ x.masked_parity(theta)
    vk = sigk = None
    reg = bb84_prepare(x, theta)
    if variant == "public":
        vk, sigk = sig_gen(crng.fork("sig"), lam)
        reg = apply_xor_map(extend(reg, sig_width(lam)), sig_xor_fn(sigk))
    transcript.record("prepared", theta=theta, beta=beta)

    package = CelPackage(
        variant,
        reg,
        lam,
        vk=vk,
        theta=theta if hiding == "revealed" else None,
        beta=beta if hiding == "revealed" else None,
    )
    out = adversary.cel_phase(package, arng)
    if variant == "public":
        if out.sigma is None:
            raise AdversaryProtocolViolation("public variant needs a signature with the string")
        accept = sig_verify(vk, out.x_prime, out.sigma)
    else:
        if len(out.x_prime) != lam:
            accept = False
        else:
            accept = ((out.x_prime.val ^ x.val) & (~theta).val) == 0
    transcript.record("certificate", accept=accept, x_prime=out.x_prime)
    output = out.view if accept else BOT
    transcript.record("verdict", value="view" if accept else "BOT")
    return ExperimentResult(b, output, 1, transcript, extras={"x": x, "theta": theta})


def trial_seed(base_seed: int, index: int) -> int:
    """Stable per-trial seed derivation for batched runs."""
    raw = digest("trial-seed", base_seed.to_bytes(16, "little", signed=True), index.to_bytes(8, "little"))
    return int.from_bytes(raw[:8], "little")


def estimate_experiment_advantage(runner, trials: int, seed: int):
    """Split trials across both challenge bits and compare output-1 rates.

    runner(b, trial_seed) must return an ExperimentResult whose output
    is 1, 0, or BOT; BOT counts as not-1.
    """
    from .stats import estimate_advantage

    if trials < 2:
        raise ParameterError("need at least two trials")
    wins = [0, 0]
    counts = [0, 0]
    for t in range(trials):
        b = t & 1
        res = runner(b, trial_seed(seed, t))
        counts[b] += 1
        if res.output == 1:
            wins[b] += 1
    return estimate_advantage(wins[0], counts[0], wins[1], counts[1])
