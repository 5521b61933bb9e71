"""Simulated quantum registers for conjugate-coded (BB84) protocol flows.

State family: products of per-wire states, optionally extended by XOR
ancillas computed from the message wires by a classical function. That is
every state the protocols ever build, so the register is stored in factored
form rather than as one flat branch list:

- ``factors`` partition the wires; each factor holds its own small set of
  (label, amplitude) branches. A freshly prepared conjugate-coded state is a
  product of single-wire factors, so honest measurement flows cost O(wires)
  no matter how many conceptual branches the state has.
- ``records`` are pending XOR-ancilla applications: the trailing ``out_width``
  wires hold ``a XOR f(m)`` where ``m`` is the label over the leading message
  wires. A record carries an identity token so applying the same function
  again cancels the record (uncomputation) instead of forcing enumeration.

The conceptual sparse state, the set of (bitstring label, signed real
amplitude) branches, is materialized on demand (`branches`, `dense_statevector`)
with a cap. Amplitudes are signed reals; the state family never needs complex
phases. Wire 0 is bit 0 of a label (little-endian labels, so a label's integer
value is its index in the dense vector).

Measurement is wire-by-wire: optionally apply a Hadamard to the wire, compute
the wire's marginal inside its factor, sample, collapse, renormalize. That is
exactly the chain rule for the Born measure, so any wire order gives the same
joint distribution.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .bits import Bits
from .errors import DomainMismatch, LengthMismatch, TooLarge, WidthMismatch
from .rand import Rng

_SQRT_HALF = math.sqrt(0.5)
_AMP_EPS = 1e-12
DENSE_WIRE_CAP = 16
MATERIALIZE_CAP = 1 << 20


@dataclass(frozen=True)
class XorFn:
    """Classical function XORed into ancilla wires, with an identity token.

    ``fn`` maps a message label (int over the message wires) to an out_width-bit
    int. Equal non-None tokens assert equal functions; that is what lets a
    decryptor cancel an ancilla it can recompute. A None token disables
    cancellation. ``recipe`` is an optional (builder name, *args) tuple that
    lets `state_json` rebuild the function by name; args are ints, strs, or
    bytes.
    """

    out_width: int
    fn: Callable[[int], int] = field(compare=False, repr=False)
    token: bytes | None = None
    recipe: tuple | None = field(default=None, compare=False)


_XORFN_BUILDERS: dict[str, Callable[..., XorFn]] = {}


def register_xorfn_builder(name: str, build: Callable[..., XorFn]) -> None:
    """Make XorFns with recipe (name, *args) reconstructable by state_json."""
    _XORFN_BUILDERS[name] = build


@dataclass(frozen=True)
class _Record:
    msg_width: int
    out_lo: int
    xf: XorFn

    def apply(self, label: int) -> int:
        m = label & ((1 << self.msg_width) - 1)
        v = self.xf.fn(m) & ((1 << self.xf.out_width) - 1)
        return label ^ (v << self.out_lo)

    def wires(self) -> range:
        return range(self.out_lo, self.out_lo + self.xf.out_width)


# factor: (wires ascending, labels over those wires, amplitudes)
_Factor = tuple[tuple[int, ...], tuple[int, ...], tuple[float, ...]]


@dataclass(frozen=True)
class QReg:
    n_wires: int
    factors: tuple[_Factor, ...]
    records: tuple[_Record, ...] = ()

    @property
    def branch_count(self) -> int:
        c = 1
        for _, labels, _ in self.factors:
            c *= len(labels)
        return c

    def norm_error(self) -> float:
        err = 0.0
        for _, _, amps in self.factors:
            err = max(err, abs(sum(a * a for a in amps) - 1.0))
        return err


@dataclass(frozen=True)
class MeasurementOutcome:
    outcome: Bits
    post_state: QReg


def from_branches(n_wires: int, branches) -> QReg:
    """Explicit register from (label, amplitude) pairs.

    Labels may be Bits of length n_wires or ints below 2^n_wires.
    """
    labels = []
    amps = []
    seen = set()
    for label, amp in branches:
        v = label.val if isinstance(label, Bits) else int(label)
        if not 0 <= v < (1 << n_wires):
            raise WidthMismatch(f"label {v} out of range for {n_wires} wires")
        if v in seen:
            raise ValueError("duplicate branch label")
        seen.add(v)
        labels.append(v)
        amps.append(float(amp))
    norm = sum(a * a for a in amps)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"branches not normalized (norm^2 = {norm})")
    order = sorted(range(len(labels)), key=lambda i: labels[i])
    factor = (
        tuple(range(n_wires)),
        tuple(labels[i] for i in order),
        tuple(amps[i] for i in order),
    )
    return QReg(n_wires, (factor,))


def bb84_prepare(x: Bits, theta: Bits) -> QReg:
    """Conjugate coding: wire j holds |x_j> if theta_j = 0, else H|x_j>."""
    if len(x) != len(theta):
        raise LengthMismatch(f"{len(x)} vs {len(theta)}")
    factors = []
    for j in range(len(x)):
        if theta[j] == 0:
            factors.append(((j,), (x[j],), (1.0,)))
        else:
            sign = -1.0 if x[j] else 1.0
            factors.append(((j,), (0, 1), (_SQRT_HALF, sign * _SQRT_HALF)))
    return QReg(len(x), tuple(factors))


def extend(reg: QReg, k: int) -> QReg:
    """Append k fresh wires in state |0>."""
    if k < 0:
        raise ValueError("negative extension")
    new = tuple(((reg.n_wires + i,), (0,), (1.0,)) for i in range(k))
    return QReg(reg.n_wires + k, reg.factors + new, reg.records)


def apply_xor_map(reg: QReg, f, out_width: int | None = None) -> QReg:
    """XOR f(message wires) into the trailing out_width ancilla wires.

    Message wires are the leading n_wires - out_width wires. Applying the
    same XorFn twice is the identity (tokens make that cancellation cheap).
    """
    if isinstance(f, XorFn):
        xf = f
        if out_width is not None and out_width != xf.out_width:
            raise WidthMismatch("out_width disagrees with XorFn")
    else:
        if out_width is None:
            raise WidthMismatch("out_width required for a bare callable")
        xf = XorFn(out_width, f, None)
    if not 1 <= xf.out_width < reg.n_wires:
        raise WidthMismatch(
            f"ancilla width {xf.out_width} invalid for {reg.n_wires} wires"
        )
    msg_width = reg.n_wires - xf.out_width
    rec = _Record(msg_width, msg_width, xf)
    if xf.token is not None:
        for i, old in enumerate(reg.records):
            if (
                old.msg_width == rec.msg_width
                and old.out_lo == rec.out_lo
                and old.xf.token == xf.token
                and old.xf.out_width == xf.out_width
            ):
                remaining = reg.records[:i] + reg.records[i + 1 :]
                return QReg(reg.n_wires, reg.factors, remaining)
    if reg.records or reg.branch_count > 1:
        return QReg(reg.n_wires, reg.factors, reg.records + (rec,))
    # single classical branch: apply eagerly, no record bookkeeping
    label = _single_label(reg)
    return _explicit(reg.n_wires, {rec.apply(label): 1.0})


def _single_label(reg: QReg) -> int:
    label = 0
    for wires, labels, _ in reg.factors:
        for k, w in enumerate(wires):
            label |= ((labels[0] >> k) & 1) << w
    return label


def _explicit(n_wires: int, branch_map: dict[int, float]) -> QReg:
    items = sorted((l, a) for l, a in branch_map.items() if abs(a) > _AMP_EPS)
    factor = (
        tuple(range(n_wires)),
        tuple(l for l, _ in items),
        tuple(a for _, a in items),
    )
    return QReg(n_wires, (factor,))


def materialize(reg: QReg, cap: int = MATERIALIZE_CAP) -> QReg:
    """Fold factors and records into one explicit factor over all wires."""
    if reg.branch_count > cap:
        raise TooLarge(f"{reg.branch_count} branches exceed cap {cap}")
    acc: dict[int, float] = {0: 1.0}
    for wires, labels, amps in reg.factors:
        nxt: dict[int, float] = {}
        for base, bamp in acc.items():
            for label, amp in zip(labels, amps):
                spread = base
                for k, w in enumerate(wires):
                    spread |= ((label >> k) & 1) << w
                nxt[spread] = bamp * amp
        acc = nxt
    if reg.records:
        out: dict[int, float] = {}
        for label, amp in acc.items():
            for rec in reg.records:
                label = rec.apply(label)
            out[label] = out.get(label, 0.0) + amp
        acc = out
    return _explicit(reg.n_wires, acc)


def branches(reg: QReg, cap: int = MATERIALIZE_CAP) -> tuple[tuple[Bits, float], ...]:
    """Conceptual sparse state: sorted (label, amplitude) pairs."""
    flat = materialize(reg, cap)
    wires, labels, amps = flat.factors[0]
    return tuple((Bits(reg.n_wires, l), a) for l, a in zip(labels, amps))


def dense_statevector(reg: QReg) -> np.ndarray:
    if reg.n_wires > DENSE_WIRE_CAP:
        raise TooLarge(f"{reg.n_wires} wires exceed dense cap {DENSE_WIRE_CAP}")
    vec = np.zeros(1 << reg.n_wires, dtype=np.float64)
    for label, amp in branches(reg):
        vec[label.val] = amp
    return vec


def _find_factor(reg: QReg, wire: int) -> int:
    for i, (wires, _, _) in enumerate(reg.factors):
        if wire in wires:
            return i
    raise WidthMismatch(f"wire {wire} out of range")


def _wire_in_records(reg: QReg, wire: int, hadamard: bool) -> bool:
    for rec in reg.records:
        if wire in rec.wires():
            return True
        if hadamard and wire < rec.msg_width:
            return True
    return False


def _apply_h(reg: QReg, wire: int) -> QReg:
    if _wire_in_records(reg, wire, hadamard=True):
        reg = materialize(reg)
    i = _find_factor(reg, wire)
    wires, labels, amps = reg.factors[i]
    k = wires.index(wire)
    bit = 1 << k
    acc: dict[int, float] = {}
    for label, amp in zip(labels, amps):
        l0 = label & ~bit
        l1 = label | bit
        half = amp * _SQRT_HALF
        acc[l0] = acc.get(l0, 0.0) + half
        acc[l1] = acc.get(l1, 0.0) + (-half if label & bit else half)
    items = sorted((l, a) for l, a in acc.items() if abs(a) > _AMP_EPS)
    factor = (wires, tuple(l for l, _ in items), tuple(a for _, a in items))
    return QReg(reg.n_wires, reg.factors[:i] + (factor,) + reg.factors[i + 1 :], reg.records)


def _measure_wire(reg: QReg, wire: int, rng: Rng) -> tuple[int, QReg]:
    if _wire_in_records(reg, wire, hadamard=False):
        reg = materialize(reg)
    i = _find_factor(reg, wire)
    wires, labels, amps = reg.factors[i]
    k = wires.index(wire)
    bit = 1 << k
    p1 = sum(a * a for l, a in zip(labels, amps) if l & bit)
    outcome = 1 if rng.uniform() < p1 else 0
    kept = [(l, a) for l, a in zip(labels, amps) if ((l >> k) & 1) == outcome]
    norm = math.sqrt(sum(a * a for _, a in kept))
    factor = (
        wires,
        tuple(l for l, _ in kept),
        tuple(a / norm for _, a in kept),
    )
    return outcome, QReg(
        reg.n_wires, reg.factors[:i] + (factor,) + reg.factors[i + 1 :], reg.records
    )


def measure_in_basis(reg: QReg, basis: Bits, rng: Rng) -> MeasurementOutcome:
    """Measure the leading len(basis) wires; basis bit 1 means Hadamard basis.

    Remaining wires are left unmeasured. A wire measured in the Hadamard
    basis is left in the measured eigenstate H|out>, so measuring a state in
    its own preparation bases leaves it unchanged.
    """
    if len(basis) > reg.n_wires:
        raise WidthMismatch(f"basis length {len(basis)} exceeds {reg.n_wires} wires")
    state = reg
    out = 0
    for j in range(len(basis)):
        if basis[j]:
            state = _apply_h(state, j)
        bit, state = _measure_wire(state, j, rng)
        if basis[j]:
            state = _apply_h(state, j)
        out |= bit << j
    return MeasurementOutcome(Bits(len(basis), out), state)


def measure_computational(reg: QReg, rng: Rng) -> MeasurementOutcome:
    """Measure every wire in the computational basis.

    Sampling is per-factor (factors are independent); XOR records are then
    evaluated on the sampled label, so no branch enumeration happens.
    """
    label = 0
    for wires, labels, amps in reg.factors:
        if len(labels) == 1:
            pick = labels[0]
        else:
            r = rng.uniform()
            acc = 0.0
            pick = labels[-1]
            for l, a in zip(labels, amps):
                acc += a * a
                if r < acc:
                    pick = l
                    break
        for k, w in enumerate(wires):
            label |= ((pick >> k) & 1) << w
    for rec in reg.records:
        label = rec.apply(label)
    post = _explicit(reg.n_wires, {label: 1.0})
    return MeasurementOutcome(Bits(reg.n_wires, label), post)


def distribution_trace_distance(p: Mapping, q: Mapping) -> float:
    """Total variation distance (half the L1 distance) between distributions.

    Missing outcomes count as probability 0. Outcome keys must live in one
    common space: Bits keys must share a length, string keys a length too.
    """
    keys = set(p) | set(q)
    widths = set()
    for key in keys:
        if isinstance(key, Bits):
            widths.add(("bits", key.n))
        elif isinstance(key, str):
            widths.add(("str", len(key)))
        else:
            widths.add((type(key).__name__, None))
    if len(widths) > 1:
        raise DomainMismatch(f"mixed outcome spaces: {sorted(widths)}")
    for name, dist in (("p", p), ("q", q)):
        total = sum(dist.values())
        if abs(total - 1.0) > 1e-6:
            raise DomainMismatch(f"{name} sums to {total}, not 1")
        if any(v < -1e-12 for v in dist.values()):
            raise DomainMismatch(f"{name} has negative mass")
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def debug_json(reg: QReg, cap: int = MATERIALIZE_CAP) -> str:
    """Stable JSON form: {"n": wires, "branches": [[label, amplitude], ...]}."""
    rows = [[str(label), amp] for label, amp in branches(reg, cap)]
    return json.dumps({"n": reg.n_wires, "branches": rows})


def from_debug_json(text: str) -> QReg:
    data = json.loads(text)
    return from_branches(
        data["n"], [(Bits.from_str(label), amp) for label, amp in data["branches"]]
    )


def _recipe_arg_out(a):
    return {"hex": a.hex()} if isinstance(a, bytes) else a


def _recipe_arg_in(a):
    return bytes.fromhex(a["hex"]) if isinstance(a, dict) else a


def state_json(reg: QReg) -> str:
    """Structural JSON form preserving factors and named ancilla records.

    Unlike `debug_json` this never enumerates branches, so the honest
    measurement flows stay cheap after a round trip and record cancellation
    still works (the rebuilt XorFn carries the same token). Records whose
    XorFn has no recipe cannot be serialized.
    """
    recs = []
    for rec in reg.records:
        if rec.xf.recipe is None:
            raise ValueError("register holds an ancilla record with no named recipe")
        name = rec.xf.recipe[0]
        if name not in _XORFN_BUILDERS:
            raise ValueError(f"no registered builder for record recipe {name!r}")
        recs.append(
            {
                "msg_width": rec.msg_width,
                "out_lo": rec.out_lo,
                "fn": [name] + [_recipe_arg_out(a) for a in rec.xf.recipe[1:]],
            }
        )
    factors = [
        [list(wires), [format(l, "x") for l in labels], list(amps)]
        for wires, labels, amps in reg.factors
    ]
    return json.dumps({"n": reg.n_wires, "factors": factors, "records": recs})


def from_state_json(text: str) -> QReg:
    data = json.loads(text)
    if "branches" in data:
        return from_debug_json(text)
    factors = tuple(
        (tuple(wires), tuple(int(l, 16) for l in labels), tuple(amps))
        for wires, labels, amps in data["factors"]
    )
    records = []
    for row in data["records"]:
        name = row["fn"][0]
        if name not in _XORFN_BUILDERS:
            raise ValueError(f"no registered builder for record recipe {name!r}")
        xf = _XORFN_BUILDERS[name](*[_recipe_arg_in(a) for a in row["fn"][1:]])
        records.append(_Record(row["msg_width"], row["out_lo"], xf))
    return QReg(data["n"], factors, tuple(records))
