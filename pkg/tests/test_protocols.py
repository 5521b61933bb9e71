"""Four deletion-enabled schemes through the uniform operation surface."""

from types import SimpleNamespace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rabecd.bits import Bits, random_bits
from rabecd.errors import BOT, GET_UPDATE, OneShotConsumed, SessionOrderViolation
from rabecd.games.adversaries import tamper_cert
from rabecd.primitives.oss import oss_verify
from rabecd.primitives.sig import sig_width
from rabecd.protocols import SCHEMES, HybridCiphertext, PubvcdSession, SchemeTag
from rabecd.rabe.policy import random_policy, random_policy_with_value
from rabecd.rand import Rng

LAM = 16
TAU = 4
ELL = 3
ALL = sorted(SCHEMES)


def world(scheme, seed, policy_value=1):
    rng = Rng(seed)
    crs = scheme.setup(LAM, TAU, ELL, rng.fork("setup"))
    aux = scheme.empty_aux(crs)
    attr = random_bits(TAU, rng.fork("attr"))
    policy = random_policy_with_value(attr, policy_value, rng.fork("policy"))
    pk, sk = scheme.keygen(crs, aux, policy, rng.fork("keygen"))
    mpk, aux = scheme.regpk(crs, aux, pk, policy)
    bypolicy = random_policy(TAU, rng.fork("bypolicy"))
    bypk, _bysk = scheme.keygen(crs, aux, bypolicy, rng.fork("bykeygen"))
    mpk, aux = scheme.regpk(crs, aux, bypk, bypolicy)
    hsk = scheme.update(crs, aux, pk)
    return SimpleNamespace(
        rng=rng, crs=crs, aux=aux, attr=attr, pk=pk, sk=sk, mpk=mpk, hsk=hsk
    )


def encrypt(scheme, w, mu, label="enc"):
    return scheme.encrypt(w.crs, w.mpk, w.attr, mu, w.rng.fork(label), scheme.views(w.aux))


@pytest.mark.parametrize("name", ALL)
def test_roundtrip(name):
    scheme = SCHEMES[name]
    w = world(scheme, 1000 + ALL.index(name))
    mu = random_bits(ELL, w.rng.fork("mu"))
    _vk, ct = encrypt(scheme, w, mu)
    assert scheme.decrypt(w.sk, w.hsk, w.attr, ct, w.rng.fork("dec")) == mu


@pytest.mark.parametrize("name", ALL)
def test_delete_then_verify_accepts(name):
    scheme = SCHEMES[name]
    w = world(scheme, 2000 + ALL.index(name))
    vk, ct = encrypt(scheme, w, random_bits(ELL, w.rng.fork("mu")))
    cert = scheme.delete(ct, w.rng.fork("del"))
    assert scheme.verify(vk, cert)


@pytest.mark.parametrize("name", ALL)
def test_tampered_certificate_rejected(name):
    scheme = SCHEMES[name]
    w = world(scheme, 3000 + ALL.index(name))
    vk, ct = encrypt(scheme, w, random_bits(ELL, w.rng.fork("mu")))
    cert = scheme.delete(ct, w.rng.fork("del"))
    assert not scheme.verify(vk, tamper_cert(scheme.tag, cert, w.rng.fork("tamper")))


@pytest.mark.parametrize("name", ALL)
def test_unauthorized_key_gets_bot(name):
    scheme = SCHEMES[name]
    w = world(scheme, 4000 + ALL.index(name), policy_value=0)
    _vk, ct = encrypt(scheme, w, random_bits(ELL, w.rng.fork("mu")))
    assert scheme.decrypt(w.sk, w.hsk, w.attr, ct, w.rng.fork("dec")) is BOT


@pytest.mark.parametrize("name", ALL)
def test_stale_helper_key_then_one_update(name):
    scheme = SCHEMES[name]
    w = world(scheme, 5000 + ALL.index(name))
    late = random_policy_with_value(w.attr, 0, w.rng.fork("late-policy"))
    latepk, _ = scheme.keygen(w.crs, w.aux, late, w.rng.fork("late-key"))
    w.mpk, w.aux = scheme.regpk(w.crs, w.aux, latepk, late)
    mu = random_bits(ELL, w.rng.fork("mu"))
    _vk, ct = encrypt(scheme, w, mu)
    assert scheme.decrypt(w.sk, w.hsk, w.attr, ct, w.rng.fork("dec")) is GET_UPDATE
    hsk = scheme.update(w.crs, w.aux, w.pk)
    assert scheme.decrypt(w.sk, hsk, w.attr, ct, w.rng.fork("dec2")) == mu


@pytest.mark.parametrize("name", ALL)
def test_verification_key_publicity_flag(name):
    scheme = SCHEMES[name]
    w = world(scheme, 6000 + ALL.index(name))
    vk, _ct = encrypt(scheme, w, random_bits(ELL, w.rng.fork("mu")))
    assert vk.public == (scheme.tag in (SchemeTag.PUBVCD, SchemeTag.PUBVCED))


def test_pubvcd_decrypt_consumes_the_token():
    scheme = SCHEMES["pubvcd"]
    w = world(scheme, 7000)
    mu = random_bits(ELL, w.rng.fork("mu"))
    _vk, ct = encrypt(scheme, w, mu)
    assert scheme.decrypt(w.sk, w.hsk, w.attr, ct, w.rng.fork("dec")) == mu
    with pytest.raises(OneShotConsumed):
        scheme.delete(ct, w.rng.fork("del"))


def test_pubvcd_delete_blocks_later_decryption():
    scheme = SCHEMES["pubvcd"]
    w = world(scheme, 7001)
    vk, ct = encrypt(scheme, w, random_bits(ELL, w.rng.fork("mu")))
    cert = scheme.delete(ct, w.rng.fork("del"))
    assert scheme.verify(vk, cert)
    assert scheme.decrypt(w.sk, w.hsk, w.attr, ct, w.rng.fork("dec")) is BOT
    # honest re-delete is idempotent: the cached signature comes back
    assert scheme.delete(ct, w.rng.fork("del2")) == cert


def test_pubvcd_decrypt_signature_is_not_a_deletion_certificate():
    scheme = SCHEMES["pubvcd"]
    w = world(scheme, 7002)
    vk, ct = encrypt(scheme, w, random_bits(ELL, w.rng.fork("mu")))
    scheme.decrypt(w.sk, w.hsk, w.attr, ct, w.rng.fork("dec"))
    sigma0 = ct.receiver_state.consumed[1]
    assert not scheme.verify(vk, sigma0)
    oss_crs, oss_pk = vk.payload
    assert oss_verify(oss_crs, oss_pk, sigma0, 0)
    assert not oss_verify(oss_crs, oss_pk, sigma0, 1)


def test_pubvcd_session_order_enforced():
    scheme = SCHEMES["pubvcd"]
    w = world(scheme, 7003)
    mu = random_bits(ELL, w.rng.fork("mu"))
    session = PubvcdSession(w.crs, w.mpk, w.attr, mu, scheme.views(w.aux))
    with pytest.raises(SessionOrderViolation):
        session.receiver_respond(w.rng.fork("early"))
    session.sender_init(w.rng.fork("m1"))
    with pytest.raises(SessionOrderViolation):
        session.sender_init(w.rng.fork("again"))
    session.receiver_respond(w.rng.fork("m2"))
    with pytest.raises(SessionOrderViolation):
        session.receiver_output()
    vk, _srabe = session.sender_finalize(w.rng.fork("m3"))
    ct = session.receiver_output()
    assert len(session.transcript) == 3
    assert scheme.decrypt(w.sk, w.hsk, w.attr, ct, w.rng.fork("dec")) == mu


def test_pubvced_cert_shape_and_public_check():
    scheme = SCHEMES["pubvced"]
    w = world(scheme, 7004)
    vk, ct = encrypt(scheme, w, random_bits(ELL, w.rng.fork("mu")))
    cert = scheme.delete(ct, w.rng.fork("del"))
    assert len(cert) == ELL
    assert all(c.n == LAM + sig_width(LAM) for c in cert)
    assert scheme.verify(vk, cert)
    # verification sees only the public per-block signature keys
    assert all(not hasattr(b, "seed") for b in vk.payload)


def test_pubvced_spliced_ciphertext_fails_ancilla_check():
    """A classical half from one encryption cannot ride another's registers:
    the signature uncompute mismatches and the zero check rejects."""
    scheme = SCHEMES["pubvced"]
    w = world(scheme, 7005)
    mu = random_bits(ELL, w.rng.fork("mu"))
    _vka, cta = encrypt(scheme, w, mu, label="enc-a")
    _vkb, ctb = encrypt(scheme, w, ~mu, label="enc-b")
    spliced = HybridCiphertext(cta.scheme_tag, ctb.classical, cta.quantum)
    assert scheme.decrypt(w.sk, w.hsk, w.attr, spliced, w.rng.fork("dec")) is BOT


def test_privcd_splice_changes_plaintext_without_integrity_error():
    scheme = SCHEMES["privcd"]
    w = world(scheme, 7006)
    mu = random_bits(ELL, w.rng.fork("mu"))
    _vka, cta = encrypt(scheme, w, mu, label="enc-a")
    _vkb, ctb = encrypt(scheme, w, ~mu, label="enc-b")
    spliced = HybridCiphertext(cta.scheme_tag, ctb.classical, cta.quantum)
    out = scheme.decrypt(w.sk, w.hsk, w.attr, spliced, w.rng.fork("dec"))
    assert isinstance(out, Bits) and out != mu


def test_privced_verify_rejects_wrong_width():
    scheme = SCHEMES["privced"]
    w = world(scheme, 7007)
    vk, ct = encrypt(scheme, w, random_bits(ELL, w.rng.fork("mu")))
    cert = scheme.delete(ct, w.rng.fork("del"))
    assert not scheme.verify(vk, cert.concat(Bits(1, 0)))


@pytest.mark.parametrize("name", ["privcd", "privced", "pubvced"])
def test_decrypt_after_delete_cannot_recover_the_message(name):
    """Once the registers are measured for deletion the message is gone;
    decrypt still runs but returns an unrelated value or rejects."""
    scheme = SCHEMES[name]
    mu = Bits(8, 0b10110100)
    wide = world(scheme, 7200 + ALL.index(name))
    # wider message so a chance collision cannot mask the loss
    rng = wide.rng
    crs8 = scheme.setup(LAM, TAU, 8, rng.fork("setup8"))
    aux8 = scheme.empty_aux(crs8)
    policy = random_policy_with_value(wide.attr, 1, rng.fork("p8"))
    pk, sk = scheme.keygen(crs8, aux8, policy, rng.fork("k8"))
    mpk, aux8 = scheme.regpk(crs8, aux8, pk, policy)
    hsk = scheme.update(crs8, aux8, pk)
    _vk, ct = scheme.encrypt(crs8, mpk, wide.attr, mu, rng.fork("enc"), scheme.views(aux8))
    scheme.delete(ct, rng.fork("del"))
    out = scheme.decrypt(sk, hsk, wide.attr, ct, rng.fork("dec"))
    assert out is BOT or out != mu
