"""Key-registration attribute-based encryption (reference instantiation)."""

from .policy import (
    Policy,
    PBit,
    PNot,
    PAnd,
    POr,
    policy_eval,
    policy_depth,
    policy_bytes,
    policy_from_json,
    policy_to_json,
    parse_policy,
    random_policy,
    random_policy_with_value,
)
from .merkle import MerkleTree, verify_path, leaf_digest
from .core import (
    RabeCrs,
    RabePublicKey,
    RabeSecretKey,
    AuxState,
    MasterPublicKey,
    HelperKey,
    DirectoryView,
    RabeCiphertext,
    setup,
    keygen,
    regpk,
    update,
    encrypt,
    decrypt,
    empty_aux,
)

__all__ = [n for n in dir() if not n.startswith("_")]
