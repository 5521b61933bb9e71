"""Typed JSON for every artifact the command line reads or writes.

Covers the closed set of protocol dataclasses plus Bits, bytes, tuples,
dicts, scheme tags, Merkle trees, and simulated quantum registers. Encoding
is deterministic (sorted keys, exact float round-trip), so seeded flows
produce byte-identical files. Quantum registers go through qstate's
structural JSON and are flagged as simulation artifacts in the output.
"""

from __future__ import annotations

import dataclasses
import json

from . import qstate
from .bits import Bits
from .errors import ConfigError
from .protocols.base import SchemeTag
from .rabe.merkle import MerkleTree

_CLASSES: dict[str, type] = {}


def _register_module(mod) -> None:
    for obj in vars(mod).values():
        if (
            isinstance(obj, type)
            and dataclasses.is_dataclass(obj)
            and obj.__module__ == mod.__name__
        ):
            prev = _CLASSES.get(obj.__name__)
            if prev is not None and prev is not obj:
                raise ValueError(f"duplicate artifact class name {obj.__name__}")
            _CLASSES[obj.__name__] = obj


def _register_all() -> None:
    from .primitives import obf, oss, pke, sig, skecd, we, zka
    from .rabe import core as rabe_core
    from .rabe import policy as rabe_policy
    from .shad import core as shad_core
    from .protocols import base, privcd, privced, pubvcd, pubvced

    for mod in (
        obf, oss, pke, sig, skecd, we, zka,
        rabe_core, rabe_policy, shad_core,
        base, privcd, privced, pubvcd, pubvced,
    ):
        _register_module(mod)


_register_all()


def encode(obj):
    """Lower a protocol value to a JSON-ready structure."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, bytes):
        return {"__b": obj.hex()}
    if isinstance(obj, Bits):
        return {"__bits": [obj.n, format(obj.val, "x")]}
    if isinstance(obj, SchemeTag):
        return {"__tag": obj.value}
    if isinstance(obj, tuple):
        return {"__tu": [encode(v) for v in obj]}
    if isinstance(obj, list):
        return [encode(v) for v in obj]
    if isinstance(obj, dict):
        return {"__d": [[encode(k), encode(v)] for k, v in obj.items()]}
    if isinstance(obj, qstate.QReg):
        return {"__qreg": json.loads(qstate.state_json(obj)), "simulation_artifact": True}
    if isinstance(obj, MerkleTree):
        levels = [[h.hex() for h in lvl] for lvl in obj._levels]
        return {"__merkle": [obj.n, levels]}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        name = type(obj).__name__
        if _CLASSES.get(name) is not type(obj):
            raise ConfigError(f"{name} is not a registered artifact class")
        fields = {
            f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
        return {"__t": name, "f": fields}
    raise ConfigError(f"cannot encode {type(obj).__name__} value")


def decode(obj):
    """Invert `encode`."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, list):
        return [decode(v) for v in obj]
    if not isinstance(obj, dict):
        raise ConfigError(f"cannot decode {type(obj).__name__} value")
    if "__b" in obj:
        return bytes.fromhex(obj["__b"])
    if "__bits" in obj:
        n, val = obj["__bits"]
        return Bits(n, int(val, 16) if val else 0)
    if "__tag" in obj:
        return SchemeTag(obj["__tag"])
    if "__tu" in obj:
        return tuple(decode(v) for v in obj["__tu"])
    if "__d" in obj:
        return {decode(k): decode(v) for k, v in obj["__d"]}
    if "__qreg" in obj:
        return qstate.from_state_json(json.dumps(obj["__qreg"]))
    if "__merkle" in obj:
        n, levels = obj["__merkle"]
        return MerkleTree(n, tuple(tuple(bytes.fromhex(h) for h in lvl) for lvl in levels))
    if "__t" in obj:
        cls = _CLASSES.get(obj["__t"])
        if cls is None:
            raise ConfigError(f"unknown artifact class {obj['__t']!r}")
        return cls(**{k: decode(v) for k, v in obj["f"].items()})
    raise ConfigError(f"unrecognized tag object with keys {sorted(obj)}")


def dumps(obj) -> str:
    return json.dumps(encode(obj), sort_keys=True)


def loads(text: str):
    return decode(json.loads(text))
