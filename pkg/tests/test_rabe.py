"""Registered ABE core: policies, directory, update discipline, Merkle paths."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rabecd.bits import Bits, random_bits
from rabecd.errors import (
    BOT,
    GET_UPDATE,
    MalformedKey,
    NotRegistered,
    ParameterError,
    PolicyTooDeep,
    StaleView,
)
from rabecd.rabe import core as rabe
from rabecd.rabe.merkle import MerkleTree, leaf_digest, verify_path
from rabecd.rabe.policy import (
    PAnd,
    PBit,
    PNot,
    POr,
    parse_policy,
    policy_bytes,
    policy_eval,
    policy_from_json,
    policy_to_json,
    random_policy,
    random_policy_with_value,
)
from rabecd.rand import Rng

seeds = st.integers(0, 2**31)
TAU = 6


def test_policy_parse_and_eval():
    p = parse_policy("b0 & (b2 | !b5)")
    assert policy_eval(p, Bits(6, 0b000001)) == 1
    assert policy_eval(p, Bits(6, 0b000101)) == 1
    assert policy_eval(p, Bits(6, 0b100001)) == 0
    assert policy_eval(p, Bits(6, 0b000100)) == 0


def test_policy_parse_matches_manual_tree():
    assert policy_bytes(parse_policy("!b1 & b0")) == policy_bytes(
        PAnd((PNot(PBit(1)), PBit(0)))
    )
    assert policy_bytes(parse_policy("b0 | b1 | b2")) == policy_bytes(
        POr((PBit(0), PBit(1), PBit(2)))
    )


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(0, 2**TAU - 1))
def test_policy_json_roundtrip_preserves_semantics(seed, a):
    p = random_policy(TAU, Rng(seed))
    q = policy_from_json(policy_to_json(p))
    attr = Bits(TAU, a)
    assert policy_eval(q, attr) == policy_eval(p, attr)
    assert policy_bytes(q) == policy_bytes(p)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(0, 2**TAU - 1), st.integers(0, 1))
def test_random_policy_with_value_hits_target(seed, a, v):
    attr = Bits(TAU, a)
    p = random_policy_with_value(attr, v, Rng(seed))
    assert policy_eval(p, attr) == v


def test_setup_parameter_validation():
    with pytest.raises(ParameterError):
        rabe.setup(12, 4, Rng(1))
    with pytest.raises(ParameterError):
        rabe.setup(0, 4, Rng(1))
    with pytest.raises(ParameterError):
        rabe.setup(16, 0, Rng(1))


def test_keygen_depth_cap():
    crs = rabe.setup(16, 4, Rng(2))
    p = PBit(0)
    for _ in range(rabe.MAX_POLICY_DEPTH + 1):
        p = PNot(p)
    with pytest.raises(PolicyTooDeep):
        rabe.keygen(crs, None, p, Rng(3))


def test_regpk_rejects_mismatched_policy():
    crs = rabe.setup(16, 4, Rng(4))
    aux = rabe.empty_aux(crs)
    pk, _sk = rabe.keygen(crs, aux, parse_policy("b0"), Rng(5))
    with pytest.raises(MalformedKey):
        rabe.regpk(crs, aux, pk, parse_policy("b1"))


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_register_encrypt_decrypt_roundtrip(seed):
    rng = Rng(seed)
    crs = rabe.setup(16, TAU, rng)
    aux = rabe.empty_aux(crs)
    attr = random_bits(TAU, rng)
    keys = []
    mpk = None
    for k in range(4):
        policy = random_policy_with_value(attr, 1 if k % 2 == 0 else 0, rng.fork(f"p/{k}"))
        pk, sk = rabe.keygen(crs, aux, policy, rng.fork(f"k/{k}"))
        mpk, aux = rabe.regpk(crs, aux, pk, policy)
        keys.append((pk, sk))
    m = rng.bytes(5)
    ct = rabe.encrypt(mpk, attr, m, rng.fork("enc"), aux.view())
    authorized = rabe.decrypt(keys[0][1], rabe.update(crs, aux, keys[0][0]), attr, ct)
    denied = rabe.decrypt(keys[1][1], rabe.update(crs, aux, keys[1][0]), attr, ct)
    assert authorized == m
    assert denied is BOT


def test_stale_helper_key_needs_exactly_one_update():
    rng = Rng(99)
    crs = rabe.setup(16, TAU, rng)
    aux = rabe.empty_aux(crs)
    attr = Bits(TAU, 0b111111)
    policy = random_policy_with_value(attr, 1, rng)
    pk, sk = rabe.keygen(crs, aux, policy, rng)
    mpk, aux = rabe.regpk(crs, aux, pk, policy)
    hsk_old = rabe.update(crs, aux, pk)
    for k in range(3):
        pk2, _ = rabe.keygen(crs, aux, policy, rng.fork(f"other/{k}"))
        mpk, aux = rabe.regpk(crs, aux, pk2, policy)
    ct = rabe.encrypt(mpk, attr, b"zz", rng, aux.view())
    assert rabe.decrypt(sk, hsk_old, attr, ct) is GET_UPDATE
    hsk_new = rabe.update(crs, aux, pk)
    assert rabe.decrypt(sk, hsk_new, attr, ct) == b"zz"


def test_newer_helper_key_still_decrypts_old_ciphertext():
    rng = Rng(100)
    crs = rabe.setup(16, TAU, rng)
    aux = rabe.empty_aux(crs)
    attr = Bits(TAU, 1)
    policy = random_policy_with_value(attr, 1, rng)
    pk, sk = rabe.keygen(crs, aux, policy, rng)
    mpk, aux = rabe.regpk(crs, aux, pk, policy)
    ct = rabe.encrypt(mpk, attr, b"old", rng, aux.view())
    for k in range(2):
        pk2, _ = rabe.keygen(crs, aux, policy, rng.fork(f"late/{k}"))
        _mpk, aux = rabe.regpk(crs, aux, pk2, policy)
    hsk = rabe.update(crs, aux, pk)
    assert hsk.epoch > ct.epoch
    assert rabe.decrypt(sk, hsk, attr, ct) == b"old"


def test_encrypt_rejects_stale_view():
    rng = Rng(101)
    crs = rabe.setup(16, TAU, rng)
    aux = rabe.empty_aux(crs)
    policy = parse_policy("b0")
    pk, _sk = rabe.keygen(crs, aux, policy, rng)
    mpk, aux = rabe.regpk(crs, aux, pk, policy)
    old_view = aux.view()
    pk2, _ = rabe.keygen(crs, aux, policy, rng)
    mpk2, aux = rabe.regpk(crs, aux, pk2, policy)
    with pytest.raises(StaleView):
        rabe.encrypt(mpk2, Bits(TAU, 1), b"m", rng, old_view)


def test_update_requires_registration():
    rng = Rng(102)
    crs = rabe.setup(16, TAU, rng)
    aux = rabe.empty_aux(crs)
    pk, _sk = rabe.keygen(crs, aux, parse_policy("b0"), rng)
    with pytest.raises(NotRegistered):
        rabe.update(crs, aux, pk)


def test_mpk_size_constant_as_directory_grows():
    rng = Rng(103)
    crs = rabe.setup(16, TAU, rng)
    aux = rabe.empty_aux(crs)
    policy = parse_policy("b0")
    sizes = set()
    for k in range(9):
        pk, _ = rabe.keygen(crs, aux, policy, rng.fork(f"k/{k}"))
        mpk, aux = rabe.regpk(crs, aux, pk, policy)
        sizes.add(len(mpk.to_bytes()))
    assert len(sizes) == 1


@settings(max_examples=12, deadline=None)
@given(st.integers(1, 40), seeds)
def test_merkle_path_verifies_and_has_log_length(n, seed):
    rng = Rng(seed)
    tree = MerkleTree()
    leaves = []
    for i in range(n):
        leaves.append(leaf_digest(i, rng.bytes(8)))
        tree = tree.append(leaves[-1])
    i = seed % n
    path = tree.path(i)
    assert len(path) == (math.ceil(math.log2(n)) if n > 1 else 0)
    assert verify_path(leaves[i], i, path, tree.root())
    assert not verify_path(leaves[i], i, path, b"\x00" * len(tree.root()))


def test_ciphertext_addresses_only_satisfying_slots():
    rng = Rng(104)
    crs = rabe.setup(16, TAU, rng)
    aux = rabe.empty_aux(crs)
    attr = Bits(TAU, 0b000001)
    mpk = None
    for text in ("b0", "!b0", "b0 & b1"):
        pk, _ = rabe.keygen(crs, aux, parse_policy(text), rng.fork(text))
        mpk, aux = rabe.regpk(crs, aux, pk, parse_policy(text))
    ct = rabe.encrypt(mpk, attr, b"m", rng, aux.view())
    assert [i for i, _ in ct.entries] == [0]
