"""Canonical byte encoding used for key/ciphertext bytes and digests.

Layout rules: unsigned integers are 8-byte little-endian, byte fields are
length-prefixed (8-byte LE count then the raw bytes), sequences are a count
followed by the encoded items. Two structurally equal values always encode to
identical bytes, which is what the byte-exact comparison tests rely on.
"""

from __future__ import annotations

import hashlib

from .bits import Bits


def enc_u64(v: int) -> bytes:
    return v.to_bytes(8, "little")


def enc_bytes(b: bytes) -> bytes:
    return enc_u64(len(b)) + b


def enc_bits(b: Bits) -> bytes:
    return enc_u64(b.n) + enc_bytes(b.to_bytes())


def enc_seq(items: list[bytes] | tuple[bytes, ...]) -> bytes:
    out = [enc_u64(len(items))]
    out.extend(items)
    return b"".join(out)


def enc_str(s: str) -> bytes:
    return enc_bytes(s.encode())


class Reader:
    __slots__ = ("data", "pos")

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def u64(self) -> int:
        v = int.from_bytes(self.data[self.pos : self.pos + 8], "little")
        self.pos += 8
        return v

    def bytes(self) -> bytes:
        n = self.u64()
        out = self.data[self.pos : self.pos + n]
        if len(out) != n:
            raise ValueError("truncated field")
        self.pos += n
        return out

    def bits(self) -> Bits:
        n = self.u64()
        return Bits.from_bytes(self.bytes(), n)

    def str(self) -> str:
        return self.bytes().decode()

    def seq(self, item_fn):
        return [item_fn(self) for _ in range(self.u64())]

    def done(self) -> bool:
        return self.pos == len(self.data)


def digest(tag: str, *parts: bytes) -> bytes:
    """Domain-separated sha256 over length-prefixed parts."""
    h = hashlib.sha256()
    h.update(tag.encode())
    h.update(b"\x00")
    for p in parts:
        h.update(enc_bytes(p))
    return h.digest()
