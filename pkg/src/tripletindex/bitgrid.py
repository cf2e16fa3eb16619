"""Triplet bit grid: per-triplet position and mark bit vectors.

The grid is a dense 4-D bit array indexed by ``(c1, c2, c3, position)``.
For every triplet there is one *position* vector (bit ``w`` set when some
key holds the triplet at position ``w``) and one *mark* vector (bit ``w``
set when some key *ends* with the triplet at position ``w``).

Positions are 1-based everywhere in the public API; bit ``w - 1`` of the
underlying storage holds position ``w``.
"""
from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Union

import numpy as np

DEFAULT_SYMBOLS = string.ascii_uppercase + string.ascii_lowercase + string.digits


class EncodingError(ValueError):
    """A character is not part of the configured alphabet."""


class KeyLengthError(ValueError):
    """A key is empty or longer than the configured maximum length."""


def default_alphabet(k: int) -> str:
    if not 2 <= k <= len(DEFAULT_SYMBOLS):
        raise ValueError(f"no default alphabet of size {k}")
    return DEFAULT_SYMBOLS[:k]


@dataclass(frozen=True)
class IndexConfig:
    """Alphabet and maximum key length shared by every structure.

    Parameters
    ----------
    alphabet : str
        The ``k`` distinct symbols, in code order (symbol ``alphabet[i]``
        encodes to ``i``).
    max_key_length : int
        ``l``, the longest key that may be indexed.
    """

    alphabet: str
    max_key_length: int
    _codes: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet symbols must be distinct")
        if len(self.alphabet) < 2:
            raise ValueError("alphabet needs at least 2 symbols")
        if self.max_key_length < 3:
            raise ValueError("max_key_length must be at least 3")
        object.__setattr__(self, "_codes", {c: i for i, c in enumerate(self.alphabet)})

    @classmethod
    def of_size(cls, k: int, l: int) -> "IndexConfig":
        return cls(default_alphabet(k), l)

    @property
    def k(self) -> int:
        return len(self.alphabet)

    @property
    def l(self) -> int:
        return self.max_key_length

    def encode(self, text: str) -> list[int]:
        codes = self._codes
        try:
            return [codes[c] for c in text]
        except KeyError as exc:
            raise EncodingError(f"symbol {exc.args[0]!r} not in alphabet") from None

    def decode(self, codes: Iterable[int]) -> str:
        return "".join(self.alphabet[c] for c in codes)

    def check_key(self, key: str) -> None:
        """Raise unless ``key`` is indexable (1..l symbols of the alphabet)."""
        if not 1 <= len(key) <= self.max_key_length:
            raise KeyLengthError(
                f"key length {len(key)} outside 1..{self.max_key_length}")
        codes = self._codes
        for c in key:
            if c not in codes:
                raise EncodingError(f"symbol {c!r} not in alphabet")

    def triplet(self, text: str) -> "TripletId":
        if len(text) != 3:
            raise ValueError(f"a triplet has 3 symbols, got {text!r}")
        return TripletId(*self.encode(text))


class TripletId(NamedTuple):
    c1: int
    c2: int
    c3: int

    def code(self, k: int) -> int:
        return (self.c1 * k + self.c2) * k + self.c3


TripletLike = Union[TripletId, str, int]


class PositionVector:
    """Immutable ``width``-bit set of 1-based positions."""

    __slots__ = ("bits", "width")

    def __init__(self, bits: int, width: int):
        if bits >> width:
            raise ValueError("bits set beyond the vector width")
        self.bits = bits
        self.width = width

    @classmethod
    def from_positions(cls, positions: Iterable[int], width: int) -> "PositionVector":
        bits = 0
        for p in positions:
            if not 1 <= p <= width:
                raise IndexError(f"position {p} outside 1..{width}")
            bits |= 1 << (p - 1)
        return cls(bits, width)

    def positions(self) -> list[int]:
        out = []
        bits, p = self.bits, 1
        while bits:
            if bits & 1:
                out.append(p)
            bits >>= 1
            p += 1
        return out

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions())

    def __contains__(self, p: int) -> bool:
        return 1 <= p <= self.width and bool(self.bits >> (p - 1) & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, PositionVector):
            return NotImplemented
        return self.bits == other.bits and self.width == other.width

    def __hash__(self) -> int:
        return hash((self.bits, self.width))

    def __repr__(self) -> str:
        return f"PositionVector({set(self.positions()) or '{}'}, width={self.width})"

    def shift_toward_end(self, amount: int) -> "PositionVector":
        """Move every position ``p`` to ``p + amount``; overflow is dropped."""
        if amount < 0:
            raise ValueError("shift amount must be non-negative")
        mask = (1 << self.width) - 1
        return PositionVector((self.bits << amount) & mask, self.width)

    def shift_toward_start(self, amount: int) -> "PositionVector":
        """Move every position ``p`` to ``p - amount``; positions below 1 are dropped."""
        if amount < 0:
            raise ValueError("shift amount must be non-negative")
        return PositionVector(self.bits >> amount, self.width)

    def __and__(self, other: "PositionVector") -> "PositionVector":
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")
        return PositionVector(self.bits & other.bits, self.width)


def shift_toward_end(v: PositionVector, amount: int) -> PositionVector:
    return v.shift_toward_end(amount)


def shift_toward_start(v: PositionVector, amount: int) -> PositionVector:
    return v.shift_toward_start(amount)


def and_(v1: PositionVector, v2: PositionVector) -> PositionVector:
    return v1 & v2


def footprint_bits(config: IndexConfig) -> int:
    """Bits held by one grid: ``2 * k**3 * l``."""
    return 2 * config.k ** 3 * config.l


class BitGrid:
    """Eagerly allocated position and mark bit planes for one index.

    Each plane is a ``uint8`` array of shape ``(k, k, k, ceil(l / 8))``
    packed little-endian by bit, so bit ``w - 1`` of the last axis is
    position ``w``.
    """

    def __init__(self, config: IndexConfig):
        self.config = config
        k, l = config.k, config.l
        self.row_bytes = (l + 7) // 8
        self.position_plane = np.zeros((k, k, k, self.row_bytes), dtype=np.uint8)
        self.mark_plane = np.zeros((k, k, k, self.row_bytes), dtype=np.uint8)
        # flat views share memory with the 4-D planes
        self._pos = self.position_plane.reshape(k ** 3, self.row_bytes)
        self._mark = self.mark_plane.reshape(k ** 3, self.row_bytes)

    @property
    def addressable_bits(self) -> int:
        k, l = self.config.k, self.config.l
        return self.position_plane[..., 0].size * l + self.mark_plane[..., 0].size * l

    def code(self, t: TripletLike) -> int:
        k = self.config.k
        if isinstance(t, str):
            return self.config.triplet(t).code(k)
        if isinstance(t, tuple):
            if len(t) != 3 or not all(0 <= c < k for c in t):
                raise IndexError(f"triplet {t!r} has symbol codes outside 0..{k - 1}")
            return TripletId(*t).code(k)
        if not 0 <= t < k ** 3:
            raise IndexError(f"triplet code {t} outside 0..{k ** 3 - 1}")
        return int(t)

    def _slot(self, w: int) -> tuple[int, int]:
        if not 1 <= w <= self.config.l:
            raise IndexError(f"position {w} outside 1..{self.config.l}")
        return (w - 1) >> 3, 1 << ((w - 1) & 7)

    def set_position(self, t: TripletLike, w: int) -> None:
        byte, mask = self._slot(w)
        self._pos[self.code(t), byte] |= mask

    def test_position(self, t: TripletLike, w: int) -> bool:
        byte, mask = self._slot(w)
        return bool(self._pos[self.code(t), byte] & mask)

    def set_mark(self, t: TripletLike, w: int) -> None:
        byte, mask = self._slot(w)
        c = self.code(t)
        self._pos[c, byte] |= mask
        self._mark[c, byte] |= mask

    def test_mark(self, t: TripletLike, w: int) -> bool:
        byte, mask = self._slot(w)
        return bool(self._mark[self.code(t), byte] & mask)

    def clear_mark(self, t: TripletLike, w: int) -> None:
        byte, mask = self._slot(w)
        self._mark[self.code(t), byte] &= ~mask & 0xFF

    def position_vector(self, t: TripletLike) -> PositionVector:
        row = self._pos[self.code(t)]
        return PositionVector(int.from_bytes(row.tobytes(), "little"), self.config.l)

    def mark_vector(self, t: TripletLike) -> PositionVector:
        row = self._mark[self.code(t)]
        return PositionVector(int.from_bytes(row.tobytes(), "little"), self.config.l)

    def used_triplets(self) -> int:
        return int(np.count_nonzero(self._pos.any(axis=1)))
