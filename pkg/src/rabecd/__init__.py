"""Registered attribute-based encryption with certified deletion.

Four hybrid schemes over a shared core: privately and publicly verifiable
certified deletion (privcd, pubvcd) and their certified-everlasting variants
(privced, pubvced). Quantum parts run on a branch-representation simulator;
every key, ciphertext, and certificate here is a simulation artifact with no
cryptographic strength.

The subpackages are importable directly: ``rabecd.protocols`` for the four
schemes, ``rabecd.games`` for the security experiments, ``rabecd.qstate``
for the simulator, ``rabecd.rabe`` and ``rabecd.shad`` for the registration
layers, ``rabecd.primitives`` for the building blocks.
"""

from .bits import Bits, random_bits
from .errors import BOT, GET_UPDATE
from .protocols import SCHEMES, SchemeTag
from .rand import Rng

__version__ = "0.1.0"

__all__ = [
    "BOT",
    "Bits",
    "GET_UPDATE",
    "Rng",
    "SCHEMES",
    "SchemeTag",
    "__version__",
    "random_bits",
]
