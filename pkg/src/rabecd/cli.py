"""Command-line surface over the key lifecycle, protocol flows, and games.

One subcommand per verb. Every file is JSON with a format marker, the
originating configuration, and a typed payload; writes are atomic
(temp file then rename) and seeded commands are byte-reproducible.
Quantum ciphertext components are serialized simulated registers and the
files say so. Results go to stdout as a single JSON line.

Exit codes:
  0 success            4 decryption returned bottom
  1 unexpected error   5 decryption needs a helper-key update
  2 bad configuration  6 admissibility violation
  3 verification failed  7 protocol state error  8 file I/O error
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import jsonio
from .bits import Bits
from .errors import (
    BOT,
    GET_UPDATE,
    AdmissibilityError,
    BadWitness,
    CircuitTooLarge,
    ConfigError,
    DomainMismatch,
    EmptyDictionary,
    InvalidWitness,
    KeyReuse,
    LengthMismatch,
    MalformedKey,
    NotRegistered,
    OneShotConsumed,
    ParameterError,
    PolicyTooDeep,
    SessionOrderViolation,
    StaleView,
    TooLarge,
    UnknownKey,
    WidthMismatch,
)
from .games import (
    STRATEGIES,
    empirical_distribution,
    empirical_tv_distance,
    estimate_advantage,
    exact_residual_td,
    fuzz_strategy,
    l1_sampling_sigma,
    normalize,
    run_cel_experiment,
    run_decryption_game,
    run_exp_cd,
    run_exp_ced,
    run_exp_shad,
    run_measure_attack,
    run_verification_game,
    trial_seed,
    wilson_interval,
)
from .primitives.oss import OssSignature
from .primitives.pke import PkePublicKey
from .protocols import SCHEMES
from .protocols.base import SchemeTag
from .rabe import core as rabe_core
from .rabe.policy import parse_policy, policy_from_json, policy_to_json
from .rand import Rng
from .serde import Reader
from .shad.core import ShadAux, ShadPublicKey

FORMAT = "rabecd/v1"
SIMULATION_NOTE = "quantum components are simulated register states, not quantum data"

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_VERIFY_FAILED = 3
EXIT_DECRYPT_BOT = 4
EXIT_NEEDS_UPDATE = 5
EXIT_ADMISSIBILITY = 6
EXIT_PROTOCOL = 7
EXIT_IO = 8

_PROTOCOL_ERRORS = (
    BadWitness,
    CircuitTooLarge,
    DomainMismatch,
    EmptyDictionary,
    InvalidWitness,
    KeyReuse,
    LengthMismatch,
    MalformedKey,
    NotRegistered,
    OneShotConsumed,
    ParameterError,
    PolicyTooDeep,
    SessionOrderViolation,
    StaleView,
    TooLarge,
    UnknownKey,
    WidthMismatch,
)


@dataclass(frozen=True)
class CliConfig:
    scheme: str
    lam: int
    tau: int
    ell_m: int
    seed: int | None = None

    def validate(self) -> "CliConfig":
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; pick one of {sorted(SCHEMES)}")
        if self.lam < 8 or self.lam % 8:
            raise ConfigError("--lambda must be a positive multiple of 8")
        if self.tau < 1:
            raise ConfigError("--tau must be at least 1")
        if self.ell_m < 1:
            raise ConfigError("--ellm must be at least 1")
        return self

    def as_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "lambda": self.lam,
            "tau": self.tau,
            "ell_m": self.ell_m,
            "seed": self.seed,
        }


def _seed_of(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("RABECD_TEST_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as e:
            raise ConfigError(f"RABECD_TEST_SEED is not an integer: {env!r}") from e
    raise ConfigError("--seed is required (RABECD_TEST_SEED fills in for test runs only)")


def _parse_bits(text: str, width: int, label: str) -> Bits:
    if len(text) != width or set(text) - {"0", "1"}:
        raise ConfigError(f"--{label} must be {width} characters of 0/1, bit 0 first")
    return Bits.from_str(text)


def _parse_policy_arg(text: str):
    text = text.strip()
    if text.startswith("{"):
        return policy_from_json(text)
    return parse_policy(text)


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def _write_file(path: str, doc: dict) -> None:
    text = json.dumps(doc, sort_keys=True) + "\n"
    _write_text(path, text)


def _write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".rabecd-")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _artifact(kind: str, config: CliConfig, payload, **extra) -> dict:
    doc = {
        "format": FORMAT,
        "kind": kind,
        "config": config.as_dict(),
        "payload": jsonio.encode(payload),
    }
    doc.update(extra)
    return doc


def _load_file(path: str, kind: str) -> dict:
    with open(path) as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path} is not valid JSON: {e}") from e
    if doc.get("format") != FORMAT:
        raise ConfigError(f"{path} is not a {FORMAT} file")
    if doc.get("kind") != kind:
        raise ConfigError(f"{path} holds a {doc.get('kind')!r} artifact, expected {kind!r}")
    return doc


def _load_payload(path: str, kind: str):
    return jsonio.decode(_load_file(path, kind)["payload"])


def _config_from_file(doc: dict) -> CliConfig:
    c = doc["config"]
    return CliConfig(c["scheme"], c["lambda"], c["tau"], c["ell_m"], c.get("seed"))


def _load_crs(path: str):
    doc = _load_file(path, "crs")
    config = _config_from_file(doc)
    config.validate()
    return SCHEMES[config.scheme], config, jsonio.decode(doc["payload"])


def cmd_setup(args) -> int:
    seed = _seed_of(args)
    config = CliConfig(args.scheme, args.lam, args.tau, args.ellm, seed).validate()
    scheme = SCHEMES[config.scheme]
    crs = scheme.setup(config.lam, config.tau, config.ell_m, Rng(seed))
    aux = scheme.empty_aux(crs)
    _write_file(args.crs_out, _artifact("crs", config, crs))
    _write_file(args.aux_out, _artifact("aux", config, aux, epoch=0))
    _emit({"ok": True, "files": {"crs": args.crs_out, "aux": args.aux_out}})
    return EXIT_OK


def cmd_keygen(args) -> int:
    scheme, config, crs = _load_crs(args.crs)
    seed = _seed_of(args)
    policy = _parse_policy_arg(args.policy)
    pk, sk = scheme.keygen(crs, None, policy, Rng(seed))
    _write_file(args.pk_out, _artifact("pk", config, pk, policy=policy_to_json(policy)))
    _write_file(args.sk_out, _artifact("sk", config, sk))
    _emit({"ok": True, "files": {"pk": args.pk_out, "sk": args.sk_out}})
    return EXIT_OK


def cmd_register(args) -> int:
    scheme, config, crs = _load_crs(args.crs)
    aux = _load_payload(args.aux, "aux")
    pk_doc = _load_file(args.pk, "pk")
    pk = jsonio.decode(pk_doc["payload"])
    policy = policy_from_json(pk_doc["policy"])
    mpk, aux2 = scheme.regpk(crs, aux, pk, policy)
    epoch = getattr(aux2, "epoch", None)
    _write_file(args.aux_out, _artifact("aux", config, aux2, epoch=epoch))
    _write_file(args.mpk_out, _artifact("mpk", config, mpk))
    _emit({"ok": True, "epoch": epoch, "files": {"aux": args.aux_out, "mpk": args.mpk_out}})
    return EXIT_OK


def cmd_update(args) -> int:
    scheme, config, crs = _load_crs(args.crs)
    aux = _load_payload(args.aux, "aux")
    pk = _load_payload(args.pk, "pk")
    hsk = scheme.update(crs, aux, pk)
    _write_file(args.hsk_out, _artifact("hsk", config, hsk, epoch=hsk.epoch))
    _emit({"ok": True, "epoch": hsk.epoch, "files": {"hsk": args.hsk_out}})
    return EXIT_OK


def cmd_encrypt(args) -> int:
    scheme, config, crs = _load_crs(args.crs)
    seed = _seed_of(args)
    aux = _load_payload(args.aux, "aux")
    mpk = _load_payload(args.mpk, "mpk")
    attr = _parse_bits(args.attr, config.tau, "attr")
    mu = _parse_bits(args.message, config.ell_m, "message")
    vk, ct = scheme.encrypt(crs, mpk, attr, mu, Rng(seed), scheme.views(aux))
    _write_file(
        args.ct_out,
        _artifact("ct", config, ct, attr=str(attr), simulation_note=SIMULATION_NOTE),
    )
    _write_file(args.vk_out, _artifact("vk", config, vk, public=vk.public))
    _emit({"ok": True, "files": {"ct": args.ct_out, "vk": args.vk_out}})
    return EXIT_OK


def cmd_decrypt(args) -> int:
    scheme, config, crs = _load_crs(args.crs)
    seed = _seed_of(args)
    sk = _load_payload(args.sk, "sk")
    hsk = _load_payload(args.hsk, "hsk")
    ct = _load_payload(args.ct, "ct")
    attr = _parse_bits(args.attr, config.tau, "attr")
    out = scheme.decrypt(sk, hsk, attr, ct, Rng(seed))
    if args.residual:
        _write_file(
            args.residual,
            _artifact("ct", config, ct, attr=str(attr), simulation_note=SIMULATION_NOTE),
        )
    if out is GET_UPDATE:
        _emit({"ok": False, "error": "needs-update", "reason": "helper key is older than the ciphertext"})
        return EXIT_NEEDS_UPDATE
    if out is BOT:
        _emit({"ok": False, "error": "decrypt-bottom", "reason": "decryption rejected the ciphertext"})
        return EXIT_DECRYPT_BOT
    _write_file(args.out, _artifact("plaintext", config, out, message=str(out)))
    _emit({"ok": True, "message": str(out), "files": {"out": args.out}})
    return EXIT_OK


def _cert_hex(cert):
    if isinstance(cert, Bits):
        return cert.to_bytes().hex()
    if isinstance(cert, OssSignature):
        return {"preimage": cert.preimage.hex(), "other_end": cert.other_end.hex()}
    if isinstance(cert, tuple):
        return [_cert_hex(c) for c in cert]
    raise ConfigError(f"unrenderable certificate type {type(cert).__name__}")


def cmd_delete(args) -> int:
    scheme, config, crs = _load_crs(args.crs)
    seed = _seed_of(args)
    ct = _load_payload(args.ct, "ct")
    cert = scheme.delete(ct, Rng(seed))
    _write_file(args.cert_out, _artifact("cert", config, cert, cert_hex=_cert_hex(cert)))
    if args.residual:
        _write_file(
            args.residual,
            _artifact("ct", config, ct, simulation_note=SIMULATION_NOTE),
        )
    _emit({"ok": True, "cert_hex": _cert_hex(cert), "files": {"cert": args.cert_out}})
    return EXIT_OK


def cmd_verify(args) -> int:
    scheme, config, crs = _load_crs(args.crs)
    vk = _load_payload(args.vk, "vk")
    cert = _load_payload(args.cert, "cert")
    if scheme.verify(vk, cert):
        _emit({"ok": True})
        return EXIT_OK
    _emit({"ok": False, "error": "verification-failed", "reason": "certificate rejected"})
    return EXIT_VERIFY_FAILED


def _export_rows(aux):
    if isinstance(aux, rabe_core.AuxState):
        for slot in aux.slots:
            yield {
                "index": slot.index,
                "pk": slot.pk.to_bytes().hex(),
                "policy": policy_to_json(slot.policy),
            }
        return
    if isinstance(aux, ShadAux):
        base = aux.sub[0][0]
        for i, slot in enumerate(base.slots):
            grid = tuple(
                tuple(aux.sub[j][b].slots[i].pk for b in range(2))
                for j in range(len(aux.sub))
            )
            yield {
                "index": i,
                "pk": ShadPublicKey(grid).fingerprint().hex(),
                "policy": policy_to_json(slot.policy),
            }
        return
    raise ConfigError(f"directory export not defined for {type(aux).__name__}")


def cmd_export_dir(args) -> int:
    doc = _load_file(args.aux, "aux")
    aux = jsonio.decode(doc["payload"])
    rows = list(_export_rows(aux))
    _write_text(args.out, "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows))
    _emit({"ok": True, "slots": len(rows), "files": {"out": args.out}})
    return EXIT_OK


def cmd_import_dir(args) -> int:
    scheme, config, crs = _load_crs(args.crs)
    sub_crs = getattr(crs, "rabe", None)
    if not isinstance(sub_crs, rabe_core.RabeCrs):
        raise ConfigError(
            "directory import rebuilds plain slot directories only; "
            "grid-backed schemes re-import from their typed aux files"
        )
    with open(args.jsonl) as f:
        rows = [json.loads(line) for line in f if line.strip()]
    rows.sort(key=lambda r: r["index"])
    if [r["index"] for r in rows] != list(range(len(rows))):
        raise ConfigError("slot indices are not contiguous from 0")
    aux = rabe_core.empty_aux(sub_crs)
    for row in rows:
        r = Reader(bytes.fromhex(row["pk"]))
        pk = rabe_core.RabePublicKey(PkePublicKey(r.bytes()), r.bytes())
        _, aux = rabe_core.regpk(sub_crs, aux, pk, policy_from_json(row["policy"]))
    _write_file(args.aux_out, _artifact("aux", config, aux, epoch=aux.epoch))
    _emit({"ok": True, "slots": len(rows), "files": {"aux": args.aux_out}})
    return EXIT_OK


EXPERIMENTS = (
    "decryption",
    "verification",
    "exp-cd",
    "exp-ced",
    "exp-shad",
    "cel-private",
    "cel-public",
    "measure-attack",
)

_EXPERIMENT_SCHEMES = {
    "decryption": ("privcd", "pubvcd", "privced", "pubvced"),
    "verification": ("privcd", "pubvcd", "privced", "pubvced"),
    "exp-cd": ("privcd", "pubvcd"),
    "exp-ced": ("privced", "pubvced"),
    "exp-shad": (),
    "cel-private": (),
    "cel-public": (),
    "measure-attack": ("privcd", "privced"),
}


def _make_adversary(name: str, seed: int):
    if name == "fuzz":
        return fuzz_strategy(seed)
    if name not in STRATEGIES:
        raise ConfigError(f"unknown adversary {name!r}; pick one of {sorted(STRATEGIES) + ['fuzz']}")
    return STRATEGIES[name]()


def _game_trial(spec: dict) -> dict:
    """One independent trial; runs in a worker process under --jobs."""
    experiment = spec["experiment"]
    seed = spec["trial_seed"]
    b = spec["b"]
    adversary = None
    if spec["adversary"] is not None:
        adversary = _make_adversary(spec["adversary"], seed)
    lam, tau, ell_m = spec["lam"], spec["tau"], spec["ell_m"]
    if experiment == "decryption":
        res = run_decryption_game(SCHEMES[spec["scheme"]], None, seed, lam=lam, tau=tau, ell_m=ell_m)
    elif experiment == "verification":
        res = run_verification_game(SCHEMES[spec["scheme"]], None, seed, lam=lam, tau=tau, ell_m=ell_m)
    elif experiment == "exp-cd":
        res = run_exp_cd(SCHEMES[spec["scheme"]], b, adversary, seed, lam=lam, tau=tau, ell_m=ell_m)
    elif experiment == "exp-ced":
        res = run_exp_ced(SCHEMES[spec["scheme"]], b, adversary, seed, lam=lam, tau=tau)
    elif experiment == "exp-shad":
        res = run_exp_shad(b, adversary, seed, lam=lam, tau=tau, ell_m=ell_m)
    elif experiment in ("cel-private", "cel-public"):
        res = run_cel_experiment(experiment[4:], b, adversary, seed, lam=lam, hiding=spec["hiding"])
    else:
        raise ConfigError(f"experiment {experiment!r} has no per-trial runner")
    return {
        "trial": spec["trial"],
        "b": b,
        "seed": seed,
        "output": normalize(res.output),
        "digest": res.transcript.digest(),
        "events": res.transcript.events,
    }


_VIEW_EXPERIMENTS = ("exp-ced", "cel-private", "cel-public")

_EXACT_TD_TARGET = {
    ("exp-ced", "privced"): "privced",
    ("exp-ced", "pubvced"): "pubvced",
    ("cel-private", None): "cel-private",
    ("cel-public", None): "cel-public",
}


def _summarize(args, rows: list[dict], elapsed: float) -> dict:
    experiment = args.experiment
    summary: dict = {
        "format": FORMAT,
        "kind": "game-summary",
        "experiment": experiment,
        "scheme": args.scheme,
        "adversary": args.adversary,
        "trials": len(rows),
        "seed": args.seed,
        "lambda": args.lam,
        "tau": args.tau,
        "ell_m": args.ellm,
        "hiding": args.hiding if experiment in _VIEW_EXPERIMENTS else None,
        "jobs": args.jobs,
        "elapsed_s": round(elapsed, 3),
        "advantage": None,
        "success": None,
        "td": None,
    }
    if experiment in ("decryption", "verification"):
        wins = sum(1 for r in rows if r["output"] == 1)
        lo, hi = wilson_interval(wins, len(rows))
        summary["success"] = {"wins": wins, "rate": wins / len(rows), "ci_low": lo, "ci_high": hi}
        return summary
    arm = {0: [], 1: []}
    for r in rows:
        arm[r["b"]].append(r)
    if experiment in ("exp-cd", "exp-shad"):
        wins0 = sum(1 for r in arm[0] if r["output"] == 1)
        wins1 = sum(1 for r in arm[1] if r["output"] == 1)
        summary["advantage"] = estimate_advantage(wins0, len(arm[0]), wins1, len(arm[1])).as_dict()
        return summary
    views = {
        b: empirical_distribution(json.dumps(r["output"], sort_keys=True) for r in arm[b])
        for b in (0, 1)
    }
    support = len(set(views[0]) | set(views[1]))
    td: dict = {
        "empirical": empirical_tv_distance(views[0], views[1]),
        "sampling_sigma": l1_sampling_sigma(support, min(len(arm[0]), len(arm[1]))),
    }
    target = _EXACT_TD_TARGET.get((experiment, args.scheme)) or _EXACT_TD_TARGET.get((experiment, None))
    if target is not None and (args.exact_td or args.lam <= 6):
        idealized = args.hiding == "idealized"
        td["exact"] = exact_residual_td(target, args.lam, idealized=idealized).as_dict()
    summary["td"] = td
    return summary


def cmd_run_game(args) -> int:
    if args.experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {args.experiment!r}; pick one of {EXPERIMENTS}")
    allowed = _EXPERIMENT_SCHEMES[args.experiment]
    if allowed and args.scheme not in allowed:
        raise ConfigError(f"experiment {args.experiment} needs --scheme from {allowed}")
    if not allowed and args.scheme is not None:
        raise ConfigError(f"experiment {args.experiment} does not take --scheme")
    if args.trials < 1:
        raise ConfigError("--trials must be positive")
    if args.exact_td and args.lam > 8:
        raise ConfigError("--exact-td enumerates branches and needs --lambda at most 8")
    seed = _seed_of(args)
    args.seed = seed
    started = time.perf_counter()

    if args.experiment == "measure-attack":
        stats = run_measure_attack(SchemeTag(args.scheme), args.lam, args.trials, seed)
        rate = stats.accepts / stats.trials
        summary = {
            "format": FORMAT,
            "kind": "game-summary",
            "experiment": "measure-attack",
            "scheme": args.scheme,
            "adversary": "measure",
            "trials": stats.trials,
            "seed": seed,
            "lambda": stats.lam,
            "h": stats.h,
            "rate": rate,
            "expected_rate": stats.expected_rate,
            "elapsed_s": round(time.perf_counter() - started, 3),
        }
        if args.transcript:
            _write_text(args.transcript, json.dumps(summary, sort_keys=True) + "\n")
        _write_file(args.summary, summary)
        _emit({"ok": True, "rate": rate, "expected_rate": stats.expected_rate, "files": {"summary": args.summary}})
        return EXIT_OK

    uses_b = args.experiment not in ("decryption", "verification")
    adversary = args.adversary
    if adversary is None and uses_b:
        adversary = "cel-honest" if args.experiment.startswith("cel-") else "honest-deleter"
        args.adversary = adversary
    specs = [
        {
            "experiment": args.experiment,
            "scheme": args.scheme,
            "adversary": adversary if uses_b else None,
            "trial": t,
            "b": (t & 1) if uses_b else None,
            "trial_seed": trial_seed(seed, t),
            "lam": args.lam,
            "tau": args.tau,
            "ell_m": args.ellm,
            "hiding": args.hiding,
        }
        for t in range(args.trials)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_game_trial, specs, chunksize=max(1, len(specs) // (4 * args.jobs))))
    else:
        rows = [_game_trial(s) for s in specs]

    if args.transcript:
        _write_text(args.transcript, "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows))
    summary = _summarize(args, rows, time.perf_counter() - started)
    _write_file(args.summary, summary)
    result = {"ok": True, "files": {"summary": args.summary}}
    if args.transcript:
        result["files"]["transcript"] = args.transcript
    for key in ("advantage", "success", "td"):
        if summary.get(key) is not None:
            result[key] = summary[key]
    _emit(result)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rabecd",
        description="Registered ABE with certified deletion: protocol flows and security games.",
        epilog=(
            "exit codes: 0 ok, 1 unexpected, 2 config, 3 verification failed, "
            "4 decrypt bottom, 5 needs update, 6 admissibility, 7 protocol state, 8 I/O"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("setup", help="sample a CRS and an empty directory")
    p.add_argument("--scheme", required=True, choices=sorted(SCHEMES))
    p.add_argument("--lambda", dest="lam", type=int, default=16)
    p.add_argument("--tau", type=int, default=8)
    p.add_argument("--ellm", type=int, default=8)
    p.add_argument("--seed", type=int)
    p.add_argument("--crs-out", required=True)
    p.add_argument("--aux-out", required=True)
    p.set_defaults(func=cmd_setup)

    p = sub.add_parser("keygen", help="generate a user keypair for a policy")
    p.add_argument("--crs", required=True)
    p.add_argument("--policy", required=True, help="\"b0 & (b2 | !b5)\" or JSON AST")
    p.add_argument("--seed", type=int)
    p.add_argument("--pk-out", required=True)
    p.add_argument("--sk-out", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("register", help="append a public key to the directory")
    p.add_argument("--crs", required=True)
    p.add_argument("--aux", required=True)
    p.add_argument("--pk", required=True)
    p.add_argument("--aux-out", required=True)
    p.add_argument("--mpk-out", required=True)
    p.set_defaults(func=cmd_register)

    p = sub.add_parser("update", help="issue a helper key at the current epoch")
    p.add_argument("--crs", required=True)
    p.add_argument("--aux", required=True)
    p.add_argument("--pk", required=True)
    p.add_argument("--hsk-out", required=True)
    p.set_defaults(func=cmd_update)

    p = sub.add_parser("encrypt", help="encrypt a message to an attribute")
    p.add_argument("--crs", required=True)
    p.add_argument("--aux", required=True)
    p.add_argument("--mpk", required=True)
    p.add_argument("--attr", required=True, help="attribute bits, bit 0 first")
    p.add_argument("--message", required=True, help="message bits, bit 0 first")
    p.add_argument("--seed", type=int)
    p.add_argument("--ct-out", required=True)
    p.add_argument("--vk-out", required=True)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--crs", required=True)
    p.add_argument("--sk", required=True)
    p.add_argument("--hsk", required=True)
    p.add_argument("--attr", required=True)
    p.add_argument("--ct", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--residual", help="write the post-measurement ciphertext here")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("delete", help="measure out a deletion certificate")
    p.add_argument("--crs", required=True)
    p.add_argument("--ct", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--cert-out", required=True)
    p.add_argument("--residual", help="write the post-measurement ciphertext here")
    p.set_defaults(func=cmd_delete)

    p = sub.add_parser("verify", help="check a deletion certificate")
    p.add_argument("--crs", required=True)
    p.add_argument("--vk", required=True)
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dir", help="dump the slot directory as JSON lines")
    p.add_argument("--aux", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_dir)

    p = sub.add_parser("import-dir", help="rebuild a directory from JSON lines")
    p.add_argument("--crs", required=True)
    p.add_argument("--jsonl", required=True)
    p.add_argument("--aux-out", required=True)
    p.set_defaults(func=cmd_import_dir)

    p = sub.add_parser("run-game", help="run a security or correctness experiment")
    p.add_argument("--experiment", required=True, choices=EXPERIMENTS)
    p.add_argument("--scheme", choices=sorted(SCHEMES))
    p.add_argument("--adversary", help=f"one of {sorted(STRATEGIES) + ['fuzz']}")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--lambda", dest="lam", type=int, default=16)
    p.add_argument("--tau", type=int, default=8)
    p.add_argument("--ellm", type=int, default=8)
    p.add_argument("--hiding", choices=("idealized", "revealed"), default="idealized")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--transcript", help="JSON-lines trial transcript output path")
    p.add_argument("--summary", required=True)
    p.add_argument("--exact-td", action="store_true", help="force exact trace-distance computation")
    p.set_defaults(func=cmd_run_game)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        _emit({"ok": False, "error": "config-error", "reason": str(e)})
        return EXIT_CONFIG
    except AdmissibilityError as e:
        _emit({"ok": False, "error": "admissibility", "reason": str(e)})
        return EXIT_ADMISSIBILITY
    except _PROTOCOL_ERRORS as e:
        _emit({"ok": False, "error": "protocol-state", "reason": f"{type(e).__name__}: {e}"})
        return EXIT_PROTOCOL
    except OSError as e:
        _emit({"ok": False, "error": "io-error", "reason": str(e)})
        return EXIT_IO
    except Exception as e:  # pragma: no cover - safety net
        _emit({"ok": False, "error": "unexpected", "reason": f"{type(e).__name__}: {e}"})
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
