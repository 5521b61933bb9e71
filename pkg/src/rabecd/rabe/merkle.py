"""Append-only Merkle tree over registration slots.

The tree is padded to the next power of two with per-level padding digests,
so an inclusion path always has exactly ceil(log2(n_leaves)) siblings (zero
siblings for a single leaf). Appending touches only the rightmost spine.
Instances are immutable; `append` returns a new tree sharing level storage.
"""

from __future__ import annotations

from ..serde import digest

_PADS: list[bytes] = [digest("merkle-pad")]


def _pad(level: int) -> bytes:
    while len(_PADS) <= level:
        _PADS.append(digest("merkle-node", _PADS[-1], _PADS[-1]))
    return _PADS[level]


def _node(left: bytes, right: bytes) -> bytes:
    return digest("merkle-node", left, right)


def leaf_digest(index: int, payload: bytes) -> bytes:
    return digest("merkle-leaf", index.to_bytes(8, "little"), payload)


def _depth(n: int) -> int:
    return 0 if n <= 1 else (n - 1).bit_length()


class MerkleTree:
    __slots__ = ("n", "_levels")

    def __init__(self, n: int = 0, levels: tuple[tuple[bytes, ...], ...] = ((),)):
        self.n = n
        self._levels = levels

    def append(self, leaf: bytes) -> "MerkleTree":
        levels = [list(lvl) for lvl in self._levels]
        levels[0].append(leaf)
        n = self.n + 1
        d = _depth(n)
        while len(levels) <= d:
            levels.append([])
        i = n - 1
        for k in range(d):
            parent = i // 2
            left = levels[k][2 * parent]
            right = (
                levels[k][2 * parent + 1]
                if 2 * parent + 1 < len(levels[k])
                else _pad(k)
            )
            h = _node(left, right)
            if parent < len(levels[k + 1]):
                levels[k + 1][parent] = h
            else:
                levels[k + 1].append(h)
            i = parent
        return MerkleTree(n, tuple(tuple(lvl) for lvl in levels))

    def root(self) -> bytes:
        if self.n == 0:
            return _pad(0)
        return self._levels[_depth(self.n)][0]

    def path(self, index: int) -> tuple[bytes, ...]:
        if not 0 <= index < self.n:
            raise IndexError(index)
        sibs = []
        i = index
        for k in range(_depth(self.n)):
            j = i ^ 1
            sibs.append(self._levels[k][j] if j < len(self._levels[k]) else _pad(k))
            i //= 2
        return tuple(sibs)


def verify_path(leaf: bytes, index: int, path: tuple[bytes, ...], root: bytes) -> bool:
    h = leaf
    i = index
    for sib in path:
        h = _node(h, sib) if i % 2 == 0 else _node(sib, h)
        i //= 2
    return h == root
