"""Key files and the binary index artifact.

Key file: one key per line; blank lines and ``#`` lines are ignored; an
optional ``%alphabet=<symbols>`` line declares the alphabet.

Index artifact (all integers little-endian)::

    b"INS1"
    u32 k, u32 l, u64 m, u32 flags      # bit 0: tree containers, bit 1: family
    k bytes                             # alphabet, one byte per symbol
    u32 structure count
    per structure:
        i32 structure id                # -1 forward, 0 reverse, i >= 1 shift i
        u64 entry count
        k^3 * ceil(l/8) bytes           # position plane
        k^3 * ceil(l/8) bytes           # mark plane
        u32 container count
        per container: u32 triplet code, u32 position, u32 entry count,
                       entries as (u32 length, bytes)
        u32 short entry count, entries as (u32 length, bytes)

Containers are written in ``(triplet code, position)`` order and entries
in sorted order, so save -> load -> save is byte-identical.
"""
from __future__ import annotations

import io
import struct
from pathlib import Path
from typing import BinaryIO, Iterable, Optional, Union

import numpy as np

from .bitgrid import IndexConfig
from .family import IndexFamily
from .index import TripletIndex, _TripletStore

MAGIC = b"INS1"
FLAG_TREE = 1
FLAG_FAMILY = 2
FORWARD_ID = -1

PathLike = Union[str, Path]


class FormatError(ValueError):
    pass


# -- key files ----------------------------------------------------------------

def read_keyfile(path_or_lines) -> tuple[Optional[str], list[tuple[int, str]]]:
    """Return the declared alphabet (or None) and ``(line number, key)`` pairs."""
    if isinstance(path_or_lines, (str, Path)):
        with open(path_or_lines, encoding="latin-1") as fh:
            lines = fh.read().splitlines()
    else:
        lines = list(path_or_lines)
    alphabet, keys = None, []
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if line.startswith("%alphabet="):
            alphabet = line[len("%alphabet="):]
            continue
        if not line.strip() or line.startswith("#"):
            continue
        keys.append((lineno, line))
    return alphabet, keys


def write_keyfile(path: PathLike, keys: Iterable[str], alphabet: Optional[str] = None) -> None:
    with open(path, "w", encoding="latin-1") as fh:
        if alphabet is not None:
            fh.write(f"%alphabet={alphabet}\n")
        for key in keys:
            fh.write(key + "\n")


def infer_alphabet(keys: Iterable[str]) -> str:
    return "".join(sorted(set().union(*map(set, keys))))


# -- binary artifact ------------------------------------------------------------

def _write_entries(out: BinaryIO, entries) -> None:
    for e in entries:
        data = e.encode("latin-1")
        out.write(struct.pack("<I", len(data)))
        out.write(data)


def _write_store(out: BinaryIO, sid: int, store: _TripletStore) -> None:
    out.write(struct.pack("<iQ", sid, store.m))
    out.write(store.grid.position_plane.tobytes())
    out.write(store.grid.mark_plane.tobytes())
    out.write(struct.pack("<I", len(store.containers)))
    for (code, pos) in sorted(store.containers):
        container = store.containers[(code, pos)]
        out.write(struct.pack("<III", code, pos, len(container)))
        _write_entries(out, container)
    short = sorted(store.shortstore)
    out.write(struct.pack("<I", len(short)))
    _write_entries(out, short)


def dumps(index: Union[TripletIndex, IndexFamily]) -> bytes:
    cfg = index.config
    try:
        alphabet = cfg.alphabet.encode("latin-1")
    except UnicodeEncodeError:
        raise FormatError("alphabet symbols must be single-byte (latin-1)") from None
    family = isinstance(index, IndexFamily)
    flags = (FLAG_TREE if index.variant == "tree" else 0) | (FLAG_FAMILY if family else 0)
    out = io.BytesIO()
    out.write(MAGIC)
    out.write(struct.pack("<IIQI", cfg.k, cfg.l, len(index), flags))
    out.write(alphabet)
    if family:
        stores = [(FORWARD_ID, index.base), (0, index.rev.inner)]
        stores += [(i, index.shifted[i]) for i in range(1, cfg.l)]
    else:
        stores = [(FORWARD_ID, index)]
    out.write(struct.pack("<I", len(stores)))
    for sid, store in stores:
        _write_store(out, sid, store)
    return out.getvalue()


def save(index, path: PathLike) -> None:
    Path(path).write_bytes(dumps(index))


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise FormatError("truncated index artifact")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def entries(self, count: int) -> list[str]:
        out = []
        for _ in range(count):
            (n,) = self.unpack("<I")
            out.append(self.take(n).decode("latin-1"))
        return out


def _read_store(r: _Reader, store: _TripletStore) -> int:
    sid, m = r.unpack("<iQ")
    grid = store.grid
    nbytes = grid.position_plane.nbytes
    shape = grid.position_plane.shape
    grid.position_plane[...] = np.frombuffer(r.take(nbytes), dtype=np.uint8).reshape(shape)
    grid.mark_plane[...] = np.frombuffer(r.take(nbytes), dtype=np.uint8).reshape(shape)
    (n_containers,) = r.unpack("<I")
    k3 = store.config.k ** 3
    for _ in range(n_containers):
        code, pos, count = r.unpack("<III")
        if code >= k3 or not 1 <= pos <= store.config.l:
            raise FormatError(f"container slot ({code}, {pos}) out of range")
        container = store._new_container((code, pos))
        for entry in r.entries(count):
            container.insert(entry)
            store._count(len(store._text_of(entry, (code, pos))), +1)
        store.containers[(code, pos)] = container
    (n_short,) = r.unpack("<I")
    for entry in r.entries(n_short):
        store.shortstore.insert(entry)
        store._count(len(store._text_of(entry, None)), +1)
    if store.m != m:
        raise FormatError(f"structure {sid}: header says {m} entries, found {store.m}")
    return sid


def loads(data: bytes) -> Union[TripletIndex, IndexFamily]:
    r = _Reader(data)
    if r.take(4) != MAGIC:
        raise FormatError("not an index artifact (bad magic)")
    k, l, m, flags = r.unpack("<IIQI")
    config = IndexConfig(r.take(k).decode("latin-1"), l)
    variant = "tree" if flags & FLAG_TREE else "list"
    (n_structs,) = r.unpack("<I")
    if flags & FLAG_FAMILY:
        index = IndexFamily(config, variant)
        expected = [(FORWARD_ID, index.base), (0, index.rev.inner)]
        expected += [(i, index.shifted[i]) for i in range(1, l)]
    else:
        index = TripletIndex(config, variant)
        expected = [(FORWARD_ID, index)]
    if n_structs != len(expected):
        raise FormatError(f"expected {len(expected)} structures, found {n_structs}")
    for want, store in expected:
        sid = _read_store(r, store)
        if sid != want:
            raise FormatError(f"structure id {sid} where {want} was expected")
    if r.pos != len(data):
        raise FormatError("trailing bytes after index artifact")
    if len(index) != m:
        raise FormatError(f"header says {m} keys, found {len(index)}")
    return index


def load(path: PathLike) -> Union[TripletIndex, IndexFamily]:
    return loads(Path(path).read_bytes())
