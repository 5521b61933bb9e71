"""Reference instantiations of the building-block primitives.

Every construction here is functional scaffolding for the protocol layer and
the security experiments: deterministic, inspectable, and fast. None of them
claims real-world security, and several are intentionally transparent (the
obfuscator wraps circuits verbatim, the witness-encryption seal is derivable
from public data). Modules say so individually.
"""

from .pke import PkePublicKey, PkeSecretKey, pke_keygen, pke_encrypt, pke_decrypt
from .sig import (
    SigSigningKey,
    SigVerifyKey,
    sig_gen,
    sig_sign,
    sig_verify,
    sig_width,
    sig_xor_fn,
)
from .zka import Statement, Proof, zka_prove, zka_simulate, zka_verify
from .obf import (
    Circuit,
    ObfuscatedProgram,
    io_obfuscate,
    io_eval,
    register_circuit_kind,
)
from .we import WECiphertext, we_statement, we_encrypt, we_decrypt, register_we_relation
from .oss import (
    OssCrs,
    OssPublicKey,
    OssSecretKey,
    OssSignature,
    oss_setup,
    oss_keygen,
    oss_sign,
    oss_verify,
)
from .skecd import (
    SKECDKey,
    SKECDCiphertext,
    skecd_keygen,
    skecd_key_from_seed,
    skecd_encrypt,
    skecd_decrypt,
    skecd_delete,
    skecd_verify,
)

__all__ = [n for n in dir() if not n.startswith("_")]
