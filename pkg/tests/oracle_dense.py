"""Independent dense-statevector oracle for cross-checking the simulator.

Everything here works on full 2^n numpy vectors with no knowledge of the
branch representation, so agreement with the package is meaningful. Index
bit j of a vector entry is wire j.
"""

import numpy as np

SQRT_HALF = np.sqrt(0.5)


def prepare(x, theta):
    """Conjugate-coding state |x> in bases theta as a dense vector."""
    acc = np.array([1.0])
    for xj, tj in zip(x, theta):
        v = np.zeros(2)
        v[xj] = 1.0
        if tj:
            v = np.array([v[0] + v[1], v[0] - v[1]]) * SQRT_HALF
        acc = np.kron(v, acc)
    return acc


def apply_h(vec, wire):
    bit = 1 << wire
    idx = np.arange(len(vec))
    lo = idx[(idx & bit) == 0]
    hi = lo | bit
    out = np.empty_like(vec)
    out[lo] = (vec[lo] + vec[hi]) * SQRT_HALF
    out[hi] = (vec[lo] - vec[hi]) * SQRT_HALF
    return out


def extend(vec, k):
    """Append k wires in |0>: the vector keeps its entries at the same indices."""
    out = np.zeros(len(vec) << k, dtype=vec.dtype)
    out[: len(vec)] = vec
    return out


def apply_xor(vec, msg_width, out_width, fn):
    """Permutation |m>|a> -> |m>|a xor fn(m)> on the wires above msg_width."""
    out = np.zeros_like(vec)
    msg_mask = (1 << msg_width) - 1
    out_mask = (1 << out_width) - 1
    for label in range(len(vec)):
        if vec[label] == 0.0:
            continue
        v = fn(label & msg_mask) & out_mask
        out[label ^ (v << msg_width)] = vec[label]
    return out


def measurement_distribution(vec, basis):
    """Exact outcome distribution for measuring the leading len(basis) wires.

    basis bit 1 means the Hadamard basis; trailing wires are traced out.
    """
    v = vec
    for j, bj in enumerate(basis):
        if bj:
            v = apply_h(v, j)
    mask = (1 << len(basis)) - 1
    probs = {}
    p = v * v
    for label in range(len(v)):
        o = label & mask
        if p[label] > 0.0:
            probs[o] = probs.get(o, 0.0) + p[label]
    return probs


def computational_distribution(vec):
    return {i: float(a * a) for i, a in enumerate(vec) if a != 0.0}


def same_up_to_sign(u, v, tol=1e-9):
    """Vector equality allowing one global sign flip."""
    if np.max(np.abs(u - v)) <= tol:
        return True
    return np.max(np.abs(u + v)) <= tol
