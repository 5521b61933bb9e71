"""Fixed-length bit strings backed by a Python int.

Bit ``i`` of ``Bits(n, val)`` is ``(val >> i) & 1``, so index 0 is the first
wire / leftmost position in the ``"b0 b1 ..."`` reading order used throughout
the package. ``str()`` renders in that order.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import LengthMismatch


class Bits:
    __slots__ = ("n", "val")

    def __init__(self, n: int, val: int = 0):
        if n < 0:
            raise ValueError("negative length")
        if val < 0 or (n < val.bit_length()):
            raise ValueError("value out of range for length")
        self.n = n
        self.val = val

    @classmethod
    def from_iter(cls, bits: Iterable[int]) -> "Bits":
        val = 0
        n = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError("bits must be 0 or 1")
            val |= b << n
            n += 1
        return cls(n, val)

    @classmethod
    def from_str(cls, s: str) -> "Bits":
        return cls.from_iter(int(c) for c in s)

    @classmethod
    def from_bytes(cls, data: bytes, n: int | None = None) -> "Bits":
        if n is None:
            n = 8 * len(data)
        val = int.from_bytes(data, "little") & ((1 << n) - 1 if n else 0)
        return cls(n, val)

    def to_bytes(self) -> bytes:
        return self.val.to_bytes((self.n + 7) // 8, "little")

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if isinstance(i, slice):
            idx = range(self.n)[i]
            return Bits.from_iter((self.val >> j) & 1 for j in idx)
        if i < 0:
            i += self.n
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.val >> i) & 1

    def __iter__(self) -> Iterator[int]:
        v = self.val
        for _ in range(self.n):
            yield v & 1
            v >>= 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Bits) and self.n == other.n and self.val == other.val

    def __hash__(self) -> int:
        return hash((self.n, self.val))

    def __repr__(self) -> str:
        return f"Bits('{self}')"

    def __str__(self) -> str:
        return "".join(str((self.val >> i) & 1) for i in range(self.n))

    def __xor__(self, other: "Bits") -> "Bits":
        if not isinstance(other, Bits):
            return NotImplemented
        if self.n != other.n:
            raise LengthMismatch(f"{self.n} vs {other.n}")
        return Bits(self.n, self.val ^ other.val)

    def __invert__(self) -> "Bits":
        return Bits(self.n, ~self.val & ((1 << self.n) - 1))

    def concat(self, other: "Bits") -> "Bits":
        return Bits(self.n + other.n, self.val | (other.val << self.n))

    def popcount(self) -> int:
        return self.val.bit_count()

    def parity(self) -> int:
        return self.val.bit_count() & 1

    def masked_parity(self, mask: "Bits") -> int:
        """Parity of this string restricted to positions where mask is 1."""
        if self.n != mask.n:
            raise LengthMismatch(f"{self.n} vs {mask.n}")
        return (self.val & mask.val).bit_count() & 1

    def ones(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if (self.val >> i) & 1)


def random_bits(n: int, rng) -> Bits:
    """Uniform n-bit string from a seeded source."""
    return Bits(n, rng.randbits(n))
