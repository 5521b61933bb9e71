"""Boolean policies over attribute bit vectors.

A policy is a tree of AND / OR / NOT nodes over single-bit tests ("attribute
bit i is 1"). Attributes are fixed-width bit strings. The compact text form
accepted by `parse_policy` looks like ``"b0 & (b2 | !b5)"``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from ..bits import Bits
from ..errors import WidthMismatch
from ..rand import Rng
from ..serde import enc_str, enc_u64, enc_seq


class Policy:
    __slots__ = ()


@dataclass(frozen=True)
class PBit(Policy):
    index: int


@dataclass(frozen=True)
class PNot(Policy):
    child: Policy


@dataclass(frozen=True)
class PAnd(Policy):
    children: tuple[Policy, ...]


@dataclass(frozen=True)
class POr(Policy):
    children: tuple[Policy, ...]


def policy_eval(p: Policy, x: Bits) -> int:
    if isinstance(p, PBit):
        if p.index >= len(x):
            raise WidthMismatch(f"bit {p.index} outside {len(x)}-bit attribute")
        return x[p.index]
    if isinstance(p, PNot):
        return 1 - policy_eval(p.child, x)
    if isinstance(p, PAnd):
        return int(all(policy_eval(c, x) for c in p.children))
    if isinstance(p, POr):
        return int(any(policy_eval(c, x) for c in p.children))
    raise TypeError(f"not a policy node: {p!r}")


def policy_depth(p: Policy) -> int:
    if isinstance(p, PBit):
        return 0
    if isinstance(p, PNot):
        return 1 + policy_depth(p.child)
    return 1 + max(policy_depth(c) for c in p.children)


def policy_bytes(p: Policy) -> bytes:
    if isinstance(p, PBit):
        return enc_str("bit") + enc_u64(p.index)
    if isinstance(p, PNot):
        return enc_str("not") + policy_bytes(p.child)
    tag = "and" if isinstance(p, PAnd) else "or"
    return enc_str(tag) + enc_seq([policy_bytes(c) for c in p.children])


def policy_to_json(p: Policy):
    if isinstance(p, PBit):
        return {"op": "bit", "index": p.index}
    if isinstance(p, PNot):
        return {"op": "not", "child": policy_to_json(p.child)}
    tag = "and" if isinstance(p, PAnd) else "or"
    return {"op": tag, "children": [policy_to_json(c) for c in p.children]}


def policy_from_json(obj) -> Policy:
    if isinstance(obj, str):
        obj = json.loads(obj)
    op = obj["op"]
    if op == "bit":
        return PBit(int(obj["index"]))
    if op == "not":
        return PNot(policy_from_json(obj["child"]))
    children = tuple(policy_from_json(c) for c in obj["children"])
    return PAnd(children) if op == "and" else POr(children)


_TOKEN = re.compile(r"\s*(b\d+|[()!&|])")


def parse_policy(text: str) -> Policy:
    """Parse ``"b0 & (b2 | !b5)"`` style expressions. & binds tighter than |."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad policy syntax at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append("$")
    i = 0

    def peek():
        return tokens[i]

    def take(tok=None):
        nonlocal i
        if tok is not None and tokens[i] != tok:
            raise ValueError(f"expected {tok!r}, got {tokens[i]!r}")
        i += 1
        return tokens[i - 1]

    def atom() -> Policy:
        t = peek()
        if t == "(":
            take()
            p = disj()
            take(")")
            return p
        if t == "!":
            take()
            return PNot(atom())
        if t.startswith("b"):
            take()
            return PBit(int(t[1:]))
        raise ValueError(f"unexpected token {t!r}")

    def conj() -> Policy:
        parts = [atom()]
        while peek() == "&":
            take()
            parts.append(atom())
        return parts[0] if len(parts) == 1 else PAnd(tuple(parts))

    def disj() -> Policy:
        parts = [conj()]
        while peek() == "|":
            take()
            parts.append(conj())
        return parts[0] if len(parts) == 1 else POr(tuple(parts))

    p = disj()
    take("$")
    return p


def random_policy(tau: int, rng: Rng, max_depth: int = 3) -> Policy:
    if max_depth == 0 or rng.randrange(3) == 0:
        return PBit(rng.randrange(tau))
    op = rng.randrange(3)
    if op == 0:
        return PNot(random_policy(tau, rng, max_depth - 1))
    k = 2 + rng.randrange(2)
    children = tuple(random_policy(tau, rng, max_depth - 1) for _ in range(k))
    return PAnd(children) if op == 1 else POr(children)


def random_policy_with_value(x: Bits, value: int, rng: Rng, max_depth: int = 3) -> Policy:
    """Random policy evaluating to `value` on attribute x."""
    if max_depth == 0 or rng.randrange(3) == 0:
        i = rng.randrange(len(x))
        leaf = PBit(i)
        return leaf if x[i] == value else PNot(leaf)
    op = rng.randrange(3)
    if op == 0:
        return PNot(random_policy_with_value(x, 1 - value, rng, max_depth - 1))
    k = 2 + rng.randrange(2)
    want_and = op == 1
    need = value if want_and else 1 - value
    # AND needs all children = value when value=1 (one failing child if 0);
    # OR is the mirror image.
    children = []
    forced = rng.randrange(k)
    for j in range(k):
        if (want_and and value == 1) or (not want_and and value == 0):
            children.append(random_policy_with_value(x, value, rng, max_depth - 1))
        elif j == forced:
            children.append(random_policy_with_value(x, value, rng, max_depth - 1))
        else:
            children.append(random_policy(len(x), rng, max_depth - 1))
    p = PAnd(tuple(children)) if want_and else POr(tuple(children))
    if policy_eval(p, x) != value:
        return random_policy_with_value(x, value, rng, 0)
    return p
