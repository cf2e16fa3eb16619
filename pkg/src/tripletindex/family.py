"""Reverse structures for prefix and substring search.

Prefix search is suffix search on an index of reversed keys.  Substring
search additionally keeps, for every shift ``i`` in ``1..l-1``, a reverse
structure over ``key[i:]`` whose containers hold the full original key.
A substring that can start at position ``p`` of some key is then a prefix
query against the structure with shift ``p - 1``.
"""
from __future__ import annotations

import threading

from .bitgrid import IndexConfig, PositionVector, footprint_bits
from .containers import make_container
from .index import QueryResult, Strategy, TripletIndex, _TripletStore


class ReverseIndex:
    """Prefix-searchable index: a :class:`TripletIndex` over reversed keys."""

    shift = 0

    def __init__(self, config: IndexConfig, variant: str = "list"):
        self.inner = TripletIndex(config, variant)

    @property
    def config(self):
        return self.inner.config

    def insert(self, key: str) -> bool:
        return self.inner.insert(key[::-1])

    def delete(self, key: str) -> bool:
        return self.inner.delete(key[::-1])

    def __contains__(self, key: str) -> bool:
        return key[::-1] in self.inner

    def prefix_query(self, prefix: str, strategy: Strategy = Strategy.INDEX) -> QueryResult:
        res = self.inner.suffix_query(prefix[::-1], strategy)
        keys = frozenset(k[::-1] for k in res.keys)
        return QueryResult(keys, res.candidates, res.containers_probed)

    def prefix_search(self, prefix: str, strategy: Strategy = Strategy.INDEX) -> frozenset:
        return self.prefix_query(prefix, strategy).keys

    def keys(self):
        for k in self.inner.keys():
            yield k[::-1]


class ShiftedIndex(_TripletStore):
    """Reverse structure over ``key[shift:]`` that stores whole keys.

    Several keys may share the same shifted text (``"ABC"`` and ``"XBC"``
    both give ``"BC"`` at shift 1), so uniqueness is on the stored key.
    """

    def __init__(self, config: IndexConfig, shift: int, variant: str = "list"):
        if not 1 <= shift < config.l:
            raise ValueError(f"shift {shift} outside 1..{config.l - 1}")
        self.shift = shift
        super().__init__(config, variant)

    def _new_shortstore(self):
        return make_container(self.variant)

    def _entry(self, text, key):
        return key

    _short_entry = _entry

    def _text_of(self, entry, slot):
        return entry[self.shift:][::-1]

    def _result_of(self, entry, slot):
        return entry

    def _matching(self, container, slot, suffix):
        prefix = suffix[::-1]
        s = self.shift
        return container.select(lambda key: key.startswith(prefix, s))

    def _shifted(self, key: str) -> str:
        if len(key) <= self.shift:
            raise ValueError(f"key {key!r} too short for shift {self.shift}")
        return key[self.shift:][::-1]

    def insert(self, key: str) -> bool:
        return self._add(self._shifted(key), key)

    def delete(self, key: str) -> bool:
        return self._discard(self._shifted(key), key)

    def __contains__(self, key: str) -> bool:
        if len(key) <= self.shift:
            return False
        text = self._shifted(key)
        if len(text) < 3:
            return self.shortstore.contains(key)
        slot = (self._codes(text)[-1], len(text) - 2)
        container = self.containers.get(slot)
        return container is not None and container.contains(key)

    def prefix_query(self, prefix: str, strategy: Strategy = Strategy.INDEX) -> QueryResult:
        """Keys ``K`` with ``K[shift:]`` starting with ``prefix``."""
        return self._suffix_query(prefix[::-1], strategy)

    def prefix_search(self, prefix: str, strategy: Strategy = Strategy.INDEX) -> frozenset:
        return self.prefix_query(prefix, strategy).keys


def family_footprint_bits(config: IndexConfig) -> int:
    """Bits of the ``l`` reverse structures (the plain reverse one plus
    ``l - 1`` shifted ones): ``2 * k**3 * l**2``.  The forward index adds
    :func:`footprint_bits` on top."""
    return config.l * footprint_bits(config)


class IndexFamily:
    """Forward index, reverse index and all shifted reverse structures.

    Supports every query type: exact, suffix, prefix and substring.
    Mutations hold a family-wide lock so that the member structures stay
    mutually consistent; reads take no lock.
    """

    def __init__(self, config: IndexConfig, variant: str = "list"):
        self.config = config
        self.variant = variant
        self.base = TripletIndex(config, variant)
        self.rev = ReverseIndex(config, variant)
        # shifted[0] is unused so that shifted[i] has shift i
        self.shifted = [None] + [ShiftedIndex(config, i, variant) for i in range(1, config.l)]
        self._lock = threading.Lock()

    def structure(self, shift: int):
        return self.rev if shift == 0 else self.shifted[shift]

    def insert(self, key: str) -> bool:
        with self._lock:
            if not self.base.insert(key):
                return False
            self.rev.insert(key)
            for i in range(1, len(key)):
                self.shifted[i].insert(key)
            return True

    def delete(self, key: str) -> bool:
        with self._lock:
            if not self.base.delete(key):
                return False
            self.rev.delete(key)
            for i in range(1, len(key)):
                self.shifted[i].delete(key)
            return True

    def update(self, old_key: str, new_key: str) -> bool:
        self.config.check_key(new_key)
        if not self.delete(old_key):
            return False
        self.insert(new_key)
        return True

    def __len__(self) -> int:
        return len(self.base)

    def __contains__(self, key: str) -> bool:
        return key in self.base

    def keys(self):
        return self.base.keys()

    def search(self, key: str, strategy: Strategy = Strategy.INDEX):
        return self.base.search(key, strategy)

    def suffix_query(self, suffix: str, strategy: Strategy = Strategy.INDEX) -> QueryResult:
        return self.base.suffix_query(suffix, strategy)

    def suffix_search(self, suffix: str, strategy: Strategy = Strategy.INDEX) -> frozenset:
        return self.base.suffix_search(suffix, strategy)

    def prefix_query(self, prefix: str, strategy: Strategy = Strategy.INDEX) -> QueryResult:
        return self.rev.prefix_query(prefix, strategy)

    def prefix_search(self, prefix: str, strategy: Strategy = Strategy.INDEX) -> frozenset:
        return self.rev.prefix_search(prefix, strategy)

    def substring_positions(self, sub: str) -> PositionVector:
        """Candidate start positions of ``sub`` (a superset of the true ones)."""
        cfg = self.config
        if len(sub) < 3:
            raise ValueError("substring positions need at least one triplet")
        tris = self.base._codes(sub)
        if len(sub) > cfg.l:
            return PositionVector(0, cfg.l)
        grid = self.base.grid
        v = grid.position_vector(tris[-1])
        for t in reversed(tris[:-1]):
            if not v:
                break
            v = v.shift_toward_start(1) & grid.position_vector(t)
        return v

    def substring_query(self, sub: str, strategy: Strategy = Strategy.INDEX) -> QueryResult:
        """Keys containing ``sub``.

        Substrings shorter than a triplet are answered by a scan over all
        keys, O(total characters).
        """
        self.config.encode(sub)
        if len(sub) < 3:
            return QueryResult(frozenset(k for k in self.base.keys() if sub in k))
        starts = self.substring_positions(sub)
        keys, probed, used = set(), 0, []
        for p in starts:
            res = self.structure(p - 1).prefix_query(sub, strategy)
            keys |= res.keys
            probed += res.containers_probed
            used.append(p - 1)
        return QueryResult(frozenset(keys), starts, probed, len(used), tuple(used))

    def substring_search(self, sub: str, strategy: Strategy = Strategy.INDEX) -> frozenset:
        return self.substring_query(sub, strategy).keys

    def stats(self) -> dict:
        return self.base.stats()

    def footprint_bits(self) -> dict:
        base = footprint_bits(self.config)
        family = family_footprint_bits(self.config)
        return {"base": base, "reverse_family": family, "total": base + family}
