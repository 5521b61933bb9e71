"""Building-block primitives: round trips, rejections, one-shot semantics."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rabecd.bits import Bits, random_bits
from rabecd.errors import BOT, BadWitness, CircuitTooLarge, KeyReuse, OneShotConsumed, ParameterError
from rabecd.primitives.obf import Circuit, io_eval, io_obfuscate, register_circuit_kind
from rabecd.primitives.oss import OssSignature, oss_keygen, oss_setup, oss_sign, oss_verify
from rabecd.primitives.pke import pke_decrypt, pke_encrypt, pke_keygen
from rabecd.primitives.sig import sig_gen, sig_sign, sig_verify, sig_width, sig_xor_fn
from rabecd.primitives.skecd import (
    skecd_decrypt,
    skecd_delete,
    skecd_encrypt,
    skecd_key_from_seed,
    skecd_keygen,
    skecd_verify,
)
from rabecd.primitives.we import WECiphertext, register_we_relation, we_decrypt, we_encrypt
from rabecd.primitives.zka import Statement, zka_prove, zka_simulate, zka_verify
from rabecd.rand import Rng

seeds = st.integers(0, 2**31)


@settings(max_examples=20, deadline=None)
@given(seeds, st.binary(min_size=0, max_size=40))
def test_pke_roundtrip(seed, m):
    rng = Rng(seed)
    pk, sk = pke_keygen(rng)
    assert pke_decrypt(sk, pke_encrypt(pk, m, rng.bytes(16))) == m


def test_pke_wrong_key_and_truncation_rejected():
    rng = Rng(5)
    pk, sk = pke_keygen(rng)
    _pk2, sk2 = pke_keygen(rng)
    ct = pke_encrypt(pk, b"payload", rng.bytes(16))
    assert pke_decrypt(sk2, ct) is BOT
    assert pke_decrypt(sk, ct[:-1]) is BOT
    assert pke_decrypt(sk, b"") is BOT


def test_pke_deterministic_under_fixed_coins():
    rng = Rng(6)
    pk, _sk = pke_keygen(rng)
    r = rng.bytes(16)
    assert pke_encrypt(pk, b"abc", r) == pke_encrypt(pk, b"abc", r)


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(1, 6))
def test_sig_roundtrip_and_tamper(seed, w):
    rng = Rng(seed)
    vk, sigk = sig_gen(rng, w)
    m = random_bits(w, rng)
    sig = sig_sign(sigk, m)
    assert len(sig) == sig_width(w)
    assert sig_verify(vk, m, sig)
    assert not sig_verify(vk, m, Bits(len(sig), sig.val ^ 1))
    if w > 1:
        assert not sig_verify(vk, Bits(w, m.val ^ 1), sig)


def test_sig_xor_fn_matches_signing():
    vk, sigk = sig_gen(Rng(11), 3)
    f = sig_xor_fn(sigk)
    for m in range(8):
        assert f.fn(m) == sig_sign(sigk, Bits(3, m)).val
    assert f.token == sig_xor_fn(sigk).token
    assert f.recipe == ("sig", sigk.seed, 3)


def test_oss_one_shot_state_machine():
    crs = oss_setup(16, Rng(1))
    pk, sk = oss_keygen(crs, Rng(2))
    sig1 = oss_sign(sk, 1)
    assert oss_verify(crs, pk, sig1, 1)
    assert not oss_verify(crs, pk, sig1, 0)
    # re-signing the same message returns the cached signature
    assert oss_sign(sk, 1) == sig1
    with pytest.raises(OneShotConsumed):
        oss_sign(sk, 0)


def test_oss_rejects_forgeries_and_bad_params():
    crs = oss_setup(16, Rng(3))
    pk, sk = oss_keygen(crs, Rng(4))
    sig = oss_sign(sk, 0)
    assert oss_verify(crs, pk, sig, 0)
    assert not oss_verify(crs, pk, OssSignature(sig.preimage[:-1], sig.other_end), 0)
    assert not oss_verify(crs, pk, OssSignature(bytes(len(sig.preimage)), sig.other_end), 0)
    assert not oss_verify(crs, pk, sig, 2)
    with pytest.raises(ParameterError):
        oss_setup(12, Rng(5))
    with pytest.raises(ParameterError):
        oss_sign(sk, 2)


def test_oss_signature_byte_roundtrip():
    crs = oss_setup(24, Rng(6))
    _pk, sk = oss_keygen(crs, Rng(7))
    sig = oss_sign(sk, 1)
    assert OssSignature.from_bytes(sig.to_bytes(), crs.width) == sig


def test_we_roundtrip_and_wrong_witness():
    register_we_relation("parity-test", lambda payload: lambda w: isinstance(w, int) and w % 2 == 0)
    ct = we_encrypt("parity-test", b"\x07", b"secret", Rng(8))
    assert we_decrypt(ct, 4) == b"secret"
    assert we_decrypt(ct, 3) is BOT
    assert we_decrypt(ct, "nope") is BOT


def test_we_bits_roundtrip():
    register_we_relation("always-test", lambda payload: lambda w: True)
    ct = we_encrypt("always-test", b"\x01\x02", b"xy", Rng(9))
    back = WECiphertext.from_bits("always-test", 2, 2, ct.to_bits())
    assert back == ct
    assert we_decrypt(back, None) == b"xy"
    assert WECiphertext.from_bits("always-test", 3, 2, ct.to_bits()) is None


def test_zka_prove_simulate_verify():
    stmt = Statement("test-rel", b"payload", lambda w: w == 42)
    y = b"shared-random"
    proved = zka_prove(stmt, 42, y)
    simulated = zka_simulate(stmt, y)
    assert zka_verify(stmt, proved, y)
    assert zka_verify(stmt, simulated, y)
    assert proved.statement_digest == simulated.statement_digest
    with pytest.raises(BadWitness):
        zka_prove(stmt, 41, y)
    other = Statement("test-rel", b"payload2", lambda w: True)
    assert not zka_verify(other, proved, y)
    assert not zka_verify(stmt, proved, b"different-y")


def test_obf_dispatch_and_size_cap():
    register_circuit_kind("add-const-test", lambda desc: lambda v: v + desc[0])
    prog = io_obfuscate(Circuit("add-const-test", b"\x05"))
    assert io_eval(prog, 10) == 15
    with pytest.raises(CircuitTooLarge):
        io_obfuscate(Circuit("add-const-test", b"x"), size_cap=0)
    with pytest.raises(KeyError):
        io_eval(io_obfuscate(Circuit("unknown-kind-test", b"")), 1)


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(1, 4), st.integers(2, 12))
def test_skecd_roundtrip(seed, ell_m, lam):
    rng = Rng(seed)
    sk = skecd_keygen(ell_m, lam, rng)
    m = random_bits(ell_m, rng)
    ct = skecd_encrypt(sk, m)
    assert skecd_decrypt(sk, ct, rng) == m


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(2, 10))
def test_skecd_delete_then_verify(seed, ell_m, lam):
    rng = Rng(seed)
    sk = skecd_keygen(ell_m, lam, rng)
    ct = skecd_encrypt(sk, random_bits(ell_m, rng))
    cert = skecd_delete(ct, rng)
    assert skecd_verify(sk, cert)
    assert not skecd_verify(sk, cert[: len(cert) - 1])


def test_skecd_key_reuse_and_seed_rebuild():
    rng = Rng(77)
    sk = skecd_keygen(2, 8, rng)
    ct = skecd_encrypt(sk, Bits(2, 0b10))
    with pytest.raises(KeyReuse):
        skecd_encrypt(sk, Bits(2, 0b01))
    rebuilt = skecd_key_from_seed(sk.seed, 2)
    assert rebuilt.blocks == sk.blocks
    assert skecd_decrypt(rebuilt, ct, rng) == Bits(2, 0b10)


def test_skecd_verify_rejects_flipped_checked_position():
    rng = Rng(78)
    sk = skecd_keygen(1, 8, rng)
    ct = skecd_encrypt(sk, Bits(1, 1))
    cert = skecd_delete(ct, rng)
    x, theta = sk.blocks[0]
    assert theta.val != 0
    checked = (theta.val & -theta.val).bit_length() - 1
    assert not skecd_verify(sk, Bits(len(cert), cert.val ^ (1 << checked)))
