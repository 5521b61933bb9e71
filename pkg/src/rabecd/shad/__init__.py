from .circuits import (
    CIRCUIT_KIND,
    ciphertext_statement,
    selector_circuit,
    selector_parts,
    selector_program,
    statement_payload,
)
from .core import (
    EncStatement,
    HybridVariant,
    ShadAux,
    ShadCiphertext,
    ShadCrs,
    ShadHelperKey,
    ShadMasterKey,
    ShadPublicKey,
    ShadSecretKey,
    SimDictionary,
    SimEntry,
    decrypt,
    empty_aux,
    encrypt,
    hybrid_ciphertext,
    keygen,
    regpk,
    relation_check,
    reveal,
    setup,
    sim_corrupt,
    sim_ct,
    sim_keygen,
    sim_regpk,
    update,
    zstar_aggregate,
)

__all__ = [
    "CIRCUIT_KIND",
    "EncStatement",
    "HybridVariant",
    "ShadAux",
    "ShadCiphertext",
    "ShadCrs",
    "ShadHelperKey",
    "ShadMasterKey",
    "ShadPublicKey",
    "ShadSecretKey",
    "SimDictionary",
    "SimEntry",
    "ciphertext_statement",
    "decrypt",
    "empty_aux",
    "encrypt",
    "hybrid_ciphertext",
    "keygen",
    "regpk",
    "relation_check",
    "reveal",
    "selector_circuit",
    "selector_parts",
    "selector_program",
    "setup",
    "sim_corrupt",
    "sim_ct",
    "sim_keygen",
    "sim_regpk",
    "statement_payload",
    "update",
    "zstar_aggregate",
]
