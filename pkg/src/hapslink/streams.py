"""Deterministic random streams with per-trial substream addressing.

A stream is identified by ``(seed, label)``; trial ``i`` of a stream owns a
small set of uniform "slots" that are a pure function of
``(seed, label, i, slot)``.  Draws therefore never depend on batch sizes,
worker counts or evaluation order, which is what makes parallel Monte-Carlo
runs bit-reproducible.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

_MASK32 = 0xFFFFFFFF


def _stream_key(seed: int, label: str) -> tuple[int, int, int]:
    """Map (seed, label) to the 96 bits of cipher key/counter material."""
    h = hashlib.blake2b(
        label.encode("utf-8"),
        digest_size=12,
        key=int(seed).to_bytes(8, "little", signed=False),
    ).digest()
    key0 = int.from_bytes(h[0:4], "little")
    key1 = int.from_bytes(h[4:8], "little")
    c3 = int.from_bytes(h[8:12], "little")
    return key0, key1, c3


def stream_uniforms(seed: int, label: str, start: int, count: int, slot: int) -> np.ndarray:
    """Uniforms in (0,1) for trials start..start+count-1 of one slot."""
    key0, key1, c3 = _stream_key(seed, label)
    return _kernels.uniform_block(key0, key1, c3 & _MASK32, int(start), int(count), int(slot))


@dataclass
class SubStream:
    """Stateful cursor over the trial axis of one (seed, label) stream."""

    seed: int
    label: str
    index: int = 0
    _key: tuple[int, int, int] = field(init=False, repr=False)

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise ValueError("seed must fit in 64 bits")
        self._key = _stream_key(self.seed, self.label)

    def at(self, index: int) -> "SubStream":
        """A new cursor over the same stream, positioned at ``index``."""
        return SubStream(self.seed, self.label, index)

    def take(self, count: int, slots: int) -> np.ndarray:
        """(count, slots) uniforms for the next ``count`` trials; advances."""
        key0, key1, c3 = self._key
        out = np.empty((count, slots), dtype=np.float64)
        for s in range(slots):
            out[:, s] = _kernels.uniform_block(key0, key1, c3, self.index, count, s)
        self.index += count
        return out
