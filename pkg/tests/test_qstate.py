"""Branch-representation simulator against the dense oracle plus round trips."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle_dense as oracle
from rabecd.bits import Bits, random_bits
from rabecd.errors import TooLarge, WidthMismatch
from rabecd.primitives.sig import SigSigningKey, sig_xor_fn
from rabecd.qstate import (
    apply_xor_map,
    bb84_prepare,
    branches,
    debug_json,
    dense_statevector,
    distribution_trace_distance,
    extend,
    from_branches,
    from_debug_json,
    from_state_json,
    materialize,
    measure_computational,
    measure_in_basis,
    state_json,
)
from rabecd.rand import Rng


def pair(n):
    return st.tuples(st.integers(0, 2**n - 1), st.integers(0, 2**n - 1)).map(
        lambda t: (Bits(n, t[0]), Bits(n, t[1]))
    )


bb84_pairs = st.integers(1, 8).flatmap(pair)


@settings(max_examples=40, deadline=None)
@given(bb84_pairs)
def test_prepare_matches_oracle(xt):
    x, theta = xt
    vec = dense_statevector(bb84_prepare(x, theta))
    assert oracle.same_up_to_sign(vec, oracle.prepare(x, theta))


@settings(max_examples=25, deadline=None)
@given(bb84_pairs, st.integers(1, 3), st.randoms(use_true_random=False))
def test_xor_map_matches_oracle(xt, out_w, pyrand):
    x, theta = xt
    n = len(x)
    table = [pyrand.randrange(2**out_w) for _ in range(2**n)]
    reg = apply_xor_map(extend(bb84_prepare(x, theta), out_w), table.__getitem__, out_w)
    expected = oracle.apply_xor(
        oracle.extend(oracle.prepare(x, theta), out_w), n, out_w, table.__getitem__
    )
    assert oracle.same_up_to_sign(dense_statevector(reg), expected)


@settings(max_examples=25, deadline=None)
@given(bb84_pairs)
def test_xor_same_token_twice_cancels(xt):
    x, theta = xt
    f = sig_xor_fn(SigSigningKey(b"tok" + bytes(x), len(x)))
    base = extend(bb84_prepare(x, theta), f.out_width)
    once = apply_xor_map(base, f)
    twice = apply_xor_map(once, f)
    assert twice.records == ()
    assert branches(twice) == branches(base)


@settings(max_examples=20, deadline=None)
@given(bb84_pairs, st.integers(1, 3))
def test_xor_tokenless_twice_is_identity(xt, out_w):
    x, theta = xt
    fn = lambda m: (m * 0x9E37) % (1 << out_w)
    base = extend(bb84_prepare(x, theta), out_w)
    twice = apply_xor_map(apply_xor_map(base, fn, out_w), fn, out_w)
    assert np.allclose(dense_statevector(twice), dense_statevector(base), atol=1e-9)


@settings(max_examples=40, deadline=None)
@given(bb84_pairs, st.integers(0, 2**31))
def test_measure_in_prep_basis_recovers_x(xt, seed):
    x, theta = xt
    reg = bb84_prepare(x, theta)
    before = dense_statevector(reg)
    res = measure_in_basis(reg, theta, Rng(seed))
    assert res.outcome == x
    assert oracle.same_up_to_sign(dense_statevector(res.post_state), before)


@settings(max_examples=40, deadline=None)
@given(bb84_pairs)
def test_branches_sorted_and_normalized(xt):
    x, theta = xt
    bs = branches(bb84_prepare(x, theta))
    labels = [b.val for b, _ in bs]
    assert labels == sorted(labels)
    assert abs(sum(a * a for _, a in bs) - 1.0) < 1e-9


@settings(max_examples=40, deadline=None)
@given(bb84_pairs)
def test_from_branches_roundtrip(xt):
    x, theta = xt
    reg = bb84_prepare(x, theta)
    rebuilt = from_branches(reg.n_wires, branches(reg))
    assert np.allclose(dense_statevector(rebuilt), dense_statevector(reg), atol=1e-9)


def test_from_branches_rejects_bad_input():
    with pytest.raises(ValueError):
        from_branches(1, [(0, 0.5), (1, 0.5)])
    with pytest.raises(ValueError):
        from_branches(1, [(0, 0.8), (0, 0.6)])
    with pytest.raises(WidthMismatch):
        from_branches(1, [(2, 1.0)])


def test_extend_matches_oracle():
    x, theta = Bits(3, 0b101), Bits(3, 0b011)
    vec = dense_statevector(extend(bb84_prepare(x, theta), 2))
    assert oracle.same_up_to_sign(vec, oracle.extend(oracle.prepare(x, theta), 2))


def test_materialize_respects_cap():
    reg = bb84_prepare(Bits(8, 0), Bits(8, 0xFF))
    with pytest.raises(TooLarge):
        materialize(reg, cap=8)
    assert materialize(reg).branch_count == 256


def test_dense_statevector_wire_cap():
    reg = bb84_prepare(Bits(17, 0), Bits(17, 0))
    with pytest.raises(TooLarge):
        dense_statevector(reg)


def test_measurement_width_checks():
    reg = bb84_prepare(Bits(2, 0), Bits(2, 0))
    with pytest.raises(WidthMismatch):
        measure_in_basis(reg, Bits(3, 0), Rng(1))
    with pytest.raises(WidthMismatch):
        apply_xor_map(reg, lambda m: 0, 2)


def test_computational_sampling_matches_oracle_distribution():
    x, theta = Bits(4, 0b0110), Bits(4, 0b1010)
    reg = bb84_prepare(x, theta)
    expected = oracle.computational_distribution(oracle.prepare(x, theta))
    rng = Rng(424242)
    n = 4000
    counts = {}
    for _ in range(n):
        out = measure_computational(reg, rng).outcome.val
        counts[out] = counts.get(out, 0) + 1
    empirical = {k: v / n for k, v in counts.items()}
    # support 4, so 4 sigma of the L1 sampling deviation is ~0.06
    assert distribution_trace_distance(empirical, expected) < 0.08


def test_hadamard_frame_measurement_collapses_once():
    reg = bb84_prepare(Bits(6, 0b110010), Bits(6, 0b111111))
    rng = Rng(7)
    first = measure_in_basis(reg, Bits(6, 0b111111), rng)
    second = measure_in_basis(first.post_state, Bits(6, 0b111111), Rng(9999))
    assert second.outcome == first.outcome


def test_state_json_roundtrip_plain():
    reg = extend(bb84_prepare(Bits(5, 0b10110), Bits(5, 0b01011)), 2)
    back = from_state_json(state_json(reg))
    assert back.n_wires == reg.n_wires
    assert np.allclose(dense_statevector(back), dense_statevector(reg), atol=1e-12)


def test_state_json_preserves_record_cancellation():
    f = sig_xor_fn(SigSigningKey(b"roundtrip-seed16", 4))
    base = bb84_prepare(Bits(4, 0b1001), Bits(4, 0b0110))
    reg = apply_xor_map(extend(base, f.out_width), f)
    back = from_state_json(state_json(reg))
    assert len(back.records) == 1
    undone = apply_xor_map(back, f)
    assert undone.records == ()
    assert branches(undone) == branches(extend(base, f.out_width))


def test_state_json_rejects_anonymous_records():
    reg = apply_xor_map(extend(bb84_prepare(Bits(2, 0), Bits(2, 3)), 1), lambda m: m & 1, 1)
    with pytest.raises(ValueError):
        state_json(reg)


def test_debug_json_roundtrip():
    reg = bb84_prepare(Bits(3, 0b101), Bits(3, 0b110))
    back = from_debug_json(debug_json(reg))
    assert branches(back) == branches(reg)


def test_from_state_json_accepts_debug_payload():
    reg = bb84_prepare(Bits(3, 0b001), Bits(3, 0b100))
    assert branches(from_state_json(debug_json(reg))) == branches(reg)


def test_distribution_trace_distance_values():
    assert distribution_trace_distance({0: 1.0}, {0: 1.0}) == 0.0
    assert distribution_trace_distance({0: 1.0}, {1: 1.0}) == 1.0
    assert abs(distribution_trace_distance({0: 0.5, 1: 0.5}, {0: 1.0}) - 0.5) < 1e-12
    with pytest.raises(ValueError):
        distribution_trace_distance({Bits(2, 0): 1.0}, {Bits(3, 0): 1.0})


@settings(max_examples=20, deadline=None)
@given(
    st.integers(1, 6).flatmap(pair),
    st.integers(1, 2),
    st.randoms(use_true_random=False),
)
def test_op_sequences_match_oracle(xt, out_w, pyrand):
    """Prepare, extend, XOR, and measurement marginals agree with the oracle."""
    x, theta = xt
    n = len(x)
    vec = oracle.prepare(x, theta)
    reg = bb84_prepare(x, theta)
    assert oracle.same_up_to_sign(dense_statevector(reg), vec)

    reg = extend(reg, out_w)
    vec = oracle.extend(vec, out_w)
    table = [pyrand.randrange(2**out_w) for _ in range(2**n)]
    reg = apply_xor_map(reg, table.__getitem__, out_w)
    vec = oracle.apply_xor(vec, n, out_w, table.__getitem__)
    assert oracle.same_up_to_sign(dense_statevector(reg), vec)

    basis = Bits(n, pyrand.randrange(2**n))
    expected = oracle.measurement_distribution(vec, basis)
    rng = Rng(1234)
    res = measure_in_basis(reg, basis, rng)
    assert expected.get(res.outcome.val, 0.0) > 0.0
