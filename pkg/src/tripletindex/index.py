"""Forward triplet index: insertion, exact and suffix search, deletion."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Union

from .bitgrid import BitGrid, IndexConfig, PositionVector, TripletId
from .containers import ShortKeyStore, make_container


class Strategy(str, Enum):
    """How an exact or suffix search uses the bit grid.

    ``INDEX`` checks the position bit of every triplet before touching a
    container; ``DIRECT`` checks only the mark bit of the final triplet.
    """

    INDEX = "index"
    DIRECT = "direct"


@dataclass(frozen=True)
class SearchOutcome:
    """Answer and telemetry of one exact search.

    ``pruned_at`` is ``None`` on success, the 1-based ordinal of the
    triplet whose position bit was unset, ``"mark"`` when the final mark
    bit was unset, or ``"container"`` when the container rejected the key.
    """

    found: bool
    pruned_at: Union[int, str, None] = None
    containers_probed: int = 0


@dataclass(frozen=True)
class QueryResult:
    """Keys matched by a suffix, prefix or substring query plus telemetry.

    ``candidates`` is the surviving candidate vector (end positions for
    suffix/prefix queries, start positions for substring queries), or
    ``None`` when the query was answered by a full scan.  ``structures``
    lists the shift of every reverse structure consulted.
    """

    keys: frozenset
    candidates: Optional[PositionVector] = None
    containers_probed: int = 0
    prefix_searches: int = 0
    structures: tuple = ()


def triplets_of(key: str, config: IndexConfig) -> list[tuple[TripletId, int]]:
    """Triplets of ``key`` with their 1-based positions, in order."""
    config.check_key(key)
    codes = config.encode(key)
    return [(TripletId(*codes[i:i + 3]), i + 1) for i in range(len(key) - 2)]


class _TripletStore:
    """Bit grid plus containers, parameterised by what a container stores.

    Subclasses decide the *indexed text* of a key and the *entry* kept in
    the container for it.  The grid always sees the indexed text.
    """

    def __init__(self, config: IndexConfig, variant: str = "list"):
        make_container(variant)  # validates the variant name
        self.config = config
        self.variant = variant
        self.grid = BitGrid(config)
        self.containers: dict[tuple[int, int], object] = {}
        self.shortstore = self._new_shortstore()
        l = config.l
        self.g = [0] * (l + 2)
        self.f = [0] * (l + 2)
        self.m = 0
        self.total_chars = 0

    # -- hooks -------------------------------------------------------------
    def _new_shortstore(self):
        raise NotImplementedError

    def _entry(self, text: str, key: str) -> str:
        raise NotImplementedError

    def _short_entry(self, text: str, key: str) -> str:
        raise NotImplementedError

    def _text_of(self, entry: str, slot: Optional[tuple[int, int]]) -> str:
        raise NotImplementedError

    def _result_of(self, entry: str, slot: Optional[tuple[int, int]]) -> str:
        raise NotImplementedError

    def _matching(self, container, slot, suffix: str) -> list[str]:
        raise NotImplementedError

    # -- shared machinery ----------------------------------------------------
    def _new_container(self, slot):
        return make_container(self.variant, slot)

    def _codes(self, text: str) -> list[int]:
        k = self.config.k
        c = self.config.encode(text)
        return [(c[i] * k + c[i + 1]) * k + c[i + 2] for i in range(len(c) - 2)]

    def triplet_text(self, code: int) -> str:
        k = self.config.k
        return self.config.decode((code // (k * k), code // k % k, code % k))

    def _count(self, n: int, delta: int) -> None:
        self.m += delta
        self.total_chars += delta * n
        if n >= 3:
            self.g[n] += delta
            f = self.f
            for w in range(1, n + 1):
                f[w] += delta

    def _add(self, text: str, key: str) -> bool:
        self.config.check_key(text)
        n = len(text)
        if n < 3:
            if not self.shortstore.insert(self._short_entry(text, key)):
                return False
        else:
            tris = self._codes(text)
            end = n - 2
            slot = (tris[-1], end)
            container = self.containers.get(slot)
            if container is None:
                container = self._new_container(slot)
            if not container.insert(self._entry(text, key)):
                return False
            self.containers[slot] = container
            grid = self.grid
            for w, t in enumerate(tris, 1):
                grid.set_position(t, w)
            grid.set_mark(tris[-1], end)
        self._count(n, +1)
        return True

    def _discard(self, text: str, key: str) -> bool:
        self.config.check_key(text)
        n = len(text)
        if n < 3:
            if not self.shortstore.remove(self._short_entry(text, key)):
                return False
        else:
            tris = self._codes(text)
            slot = (tris[-1], n - 2)
            container = self.containers.get(slot)
            if container is None or not container.remove(self._entry(text, key)):
                return False
            if container.is_empty():
                del self.containers[slot]
                self.grid.clear_mark(*slot)
        self._count(n, -1)
        return True

    def _scan(self):
        """Yield ``(entry, slot)`` for every stored entry, short ones first."""
        for entry in self.shortstore:
            yield entry, None
        for slot in sorted(self.containers):
            for entry in self.containers[slot]:
                yield entry, slot

    def _suffix_query(self, suffix: str, strategy: Strategy) -> QueryResult:
        cfg = self.config
        cfg.encode(suffix)
        f = len(suffix)
        if f < 3:
            return QueryResult(self._sweep_suffix(suffix))
        if f > cfg.l:
            return QueryResult(frozenset(), PositionVector(0, cfg.l))
        tris = self._codes(suffix)
        last = tris[-1]
        grid = self.grid
        v = grid.mark_vector(last)
        if Strategy(strategy) is Strategy.INDEX:
            for i in range(1, f - 2):
                if not v:
                    break
                v = v & grid.position_vector(tris[-1 - i]).shift_toward_end(i)
        else:
            # a key ending at p has length p + 2, so p < f - 2 cannot hold the suffix
            v = PositionVector(v.bits >> (f - 3) << (f - 3), cfg.l)
        keys, probed = set(), 0
        for p in v:
            slot = (last, p)
            probed += 1
            for entry in self._matching(self.containers[slot], slot, suffix):
                keys.add(self._result_of(entry, slot))
        return QueryResult(frozenset(keys), v, probed)

    def _sweep_suffix(self, suffix: str) -> frozenset:
        return frozenset(self._result_of(e, s) for e, s in self._scan()
                         if self._text_of(e, s).endswith(suffix))

    def keys(self) -> Iterator[str]:
        for entry, slot in self._scan():
            yield self._result_of(entry, slot)

    def __len__(self) -> int:
        return self.m

    def stats(self) -> dict:
        sizes = [len(c) for c in self.containers.values()]
        return {
            "m": self.m,
            "container_count": len(sizes),
            "max_container_size": max(sizes, default=0),
            "avg_container_size": sum(sizes) / len(sizes) if sizes else 0.0,
            "shortstore_size": len(self.shortstore),
        }

    def container_bytes(self) -> int:
        """Stored symbols across containers and the short-key store (1 byte each)."""
        return sum(len(e) for e, _ in self._scan())

    def container_at(self, triplet, position: int):
        """The container owned by ``(triplet, position)``, or ``None``."""
        return self.containers.get((self.grid.code(triplet), position))


class TripletIndex(_TripletStore):
    """Forward index over keys of an alphabet of size ``k`` and length <= ``l``.

    Examples
    --------
    >>> idx = TripletIndex(IndexConfig("ABCD", 6))
    >>> for key in ["ABCDA", "ADCDB", "CCDA", "BCDAAD"]:
    ...     _ = idx.insert(key)
    >>> idx.search("ADCDA")
    SearchOutcome(found=False, pruned_at='container', containers_probed=1)
    >>> sorted(idx.suffix_search("BCDA"))
    ['ABCDA']
    """

    def _new_shortstore(self):
        return ShortKeyStore()

    def _entry(self, text, key):
        return text[:-3]

    def _short_entry(self, text, key):
        return text

    def _text_of(self, entry, slot):
        return entry if slot is None else entry + self.triplet_text(slot[0])

    _result_of = _text_of

    def _sweep_suffix(self, suffix):
        # a suffix shorter than a triplet is decided by the container's triplet,
        # so only triplets ending with it need their mark vectors read
        keys = {e for e in self.shortstore if e.endswith(suffix)}
        k = self.config.k
        tail = 0
        for c in self.config.encode(suffix):
            tail = tail * k + c
        span = k ** (3 - len(suffix))
        for lead in range(span):
            code = lead * k ** len(suffix) + tail
            marks = self.grid.mark_vector(code)
            if not marks:
                continue
            tri = self.triplet_text(code)
            for p in marks:
                keys.update(head + tri for head in self.containers[(code, p)])
        return frozenset(keys)

    def _matching(self, container, slot, suffix):
        return container.filter_suffix(suffix[:-3])

    def insert(self, key: str) -> bool:
        """Index ``key``; return False if it was already present."""
        return self._add(key, key)

    def delete(self, key: str) -> bool:
        """Remove ``key``; return False if it was absent.

        The mark bit is cleared only when its container empties.  Position
        bits are never cleared.
        """
        return self._discard(key, key)

    def update(self, old_key: str, new_key: str) -> bool:
        """Replace ``old_key`` by ``new_key``; nothing happens if ``old_key`` is absent."""
        self.config.check_key(new_key)
        if not self.delete(old_key):
            return False
        self.insert(new_key)
        return True

    def search(self, key: str, strategy: Strategy = Strategy.INDEX) -> SearchOutcome:
        self.config.check_key(key)
        n = len(key)
        if n < 3:
            return SearchOutcome(key in self.shortstore)
        tris = self._codes(key)
        end = n - 2
        grid = self.grid
        if Strategy(strategy) is Strategy.INDEX:
            for w, t in enumerate(tris, 1):
                if not grid.test_position(t, w):
                    return SearchOutcome(False, w, 0)
        if not grid.test_mark(tris[-1], end):
            return SearchOutcome(False, "mark", 0)
        found = self.containers[(tris[-1], end)].contains(key[:-3])
        return SearchOutcome(found, None if found else "container", 1)

    def __contains__(self, key: str) -> bool:
        return self.search(key, Strategy.DIRECT).found

    def suffix_query(self, suffix: str, strategy: Strategy = Strategy.INDEX) -> QueryResult:
        """Suffix search with telemetry.

        Suffixes shorter than a triplet are answered by scanning every
        stored key, which costs O(total keys).
        """
        return self._suffix_query(suffix, strategy)

    def suffix_search(self, suffix: str, strategy: Strategy = Strategy.INDEX) -> frozenset:
        return self._suffix_query(suffix, strategy).keys
