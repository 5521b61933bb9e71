from .base import HybridCiphertext, SchemeOps, SchemeTag, VerificationKey
from .privcd import SCHEME as PRIVCD
from .privcd import privcd_decrypt, privcd_delete, privcd_encrypt, privcd_verify
from .pubvcd import SCHEME as PUBVCD
from .pubvcd import (
    PubvcdSession,
    pubvcd_decrypt,
    pubvcd_delete,
    pubvcd_encrypt,
    pubvcd_encrypt_session,
    pubvcd_verify,
)
from .privced import SCHEME as PRIVCED
from .privced import (
    privced_decrypt,
    privced_delete,
    privced_encrypt,
    privced_encrypt_many,
    privced_verify,
)
from .pubvced import SCHEME as PUBVCED
from .pubvced import (
    pubvced_decrypt,
    pubvced_delete,
    pubvced_encrypt,
    pubvced_encrypt_many,
    pubvced_verify,
)

SCHEMES = {
    "privcd": PRIVCD,
    "pubvcd": PUBVCD,
    "privced": PRIVCED,
    "pubvced": PUBVCED,
}

__all__ = [
    "HybridCiphertext",
    "PRIVCD",
    "PRIVCED",
    "PUBVCD",
    "PUBVCED",
    "PubvcdSession",
    "SCHEMES",
    "SchemeOps",
    "SchemeTag",
    "VerificationKey",
    "privcd_decrypt",
    "privcd_delete",
    "privcd_encrypt",
    "privcd_verify",
    "privced_decrypt",
    "privced_delete",
    "privced_encrypt",
    "privced_encrypt_many",
    "privced_verify",
    "pubvcd_decrypt",
    "pubvcd_delete",
    "pubvcd_encrypt",
    "pubvcd_encrypt_session",
    "pubvcd_verify",
    "pubvced_decrypt",
    "pubvced_delete",
    "pubvced_encrypt",
    "pubvced_encrypt_many",
    "pubvced_verify",
]
