"""Key containers attached to set mark bits.

A container holds every key that ends with one triplet at one position.
Only the *head* of each key is stored (the key minus its final triplet);
the triplet is implied by where the container hangs.  Two interchangeable
variants exist: a lexicographically sorted list searched by bisection, and
an AVL tree.  Keys of length 1 and 2 have no triplet and live in a
separate :class:`ShortKeyStore`.
"""
from __future__ import annotations

from bisect import bisect_left
from typing import Callable, Iterator, Optional


class ListContainer:
    """Sorted list of unique entries."""

    variant = "list"
    __slots__ = ("owner", "_items")

    def __init__(self, owner=None):
        self.owner = owner
        self._items: list[str] = []

    def insert(self, entry: str) -> bool:
        """Add ``entry``; return False (and change nothing) if already present."""
        items = self._items
        i = bisect_left(items, entry)
        if i < len(items) and items[i] == entry:
            return False
        items.insert(i, entry)
        return True

    def contains(self, entry: str) -> bool:
        items = self._items
        i = bisect_left(items, entry)
        return i < len(items) and items[i] == entry

    def remove(self, entry: str) -> bool:
        items = self._items
        i = bisect_left(items, entry)
        if i < len(items) and items[i] == entry:
            del items[i]
            return True
        return False

    def is_empty(self) -> bool:
        return not self._items

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[str]:
        return iter(self._items)

    __contains__ = contains

    def select(self, predicate: Callable[[str], bool]) -> list[str]:
        return [e for e in self._items if predicate(e)]

    def filter_suffix(self, required: str) -> list[str]:
        """Entries ending with ``required`` (all entries when it is empty)."""
        if not required:
            return list(self._items)
        return [e for e in self._items if e.endswith(required)]


class _Node:
    __slots__ = ("key", "left", "right", "height")

    def __init__(self, key):
        self.key = key
        self.left = None
        self.right = None
        self.height = 1


def _h(node: Optional[_Node]) -> int:
    return node.height if node else 0


def _fix(node: _Node) -> None:
    node.height = 1 + max(_h(node.left), _h(node.right))


def _rotate_right(y: _Node) -> _Node:
    x = y.left
    y.left = x.right
    x.right = y
    _fix(y)
    _fix(x)
    return x


def _rotate_left(x: _Node) -> _Node:
    y = x.right
    x.right = y.left
    y.left = x
    _fix(x)
    _fix(y)
    return y


def _rebalance(node: _Node) -> _Node:
    _fix(node)
    balance = _h(node.left) - _h(node.right)
    if balance > 1:
        if _h(node.left.left) < _h(node.left.right):
            node.left = _rotate_left(node.left)
        return _rotate_right(node)
    if balance < -1:
        if _h(node.right.right) < _h(node.right.left):
            node.right = _rotate_right(node.right)
        return _rotate_left(node)
    return node


class TreeContainer:
    """AVL tree of unique entries; O(log s) insert, lookup and removal."""

    variant = "tree"
    __slots__ = ("owner", "_root", "_size")

    def __init__(self, owner=None):
        self.owner = owner
        self._root: Optional[_Node] = None
        self._size = 0

    def _insert(self, node, entry):
        if node is None:
            self._size += 1
            return _Node(entry)
        if entry < node.key:
            node.left = self._insert(node.left, entry)
        elif entry > node.key:
            node.right = self._insert(node.right, entry)
        else:
            return node
        return _rebalance(node)

    def insert(self, entry: str) -> bool:
        before = self._size
        self._root = self._insert(self._root, entry)
        return self._size != before

    def contains(self, entry: str) -> bool:
        node = self._root
        while node is not None:
            if entry < node.key:
                node = node.left
            elif entry > node.key:
                node = node.right
            else:
                return True
        return False

    __contains__ = contains

    def _remove(self, node, entry):
        if node is None:
            return None
        if entry < node.key:
            node.left = self._remove(node.left, entry)
        elif entry > node.key:
            node.right = self._remove(node.right, entry)
        else:
            self._size -= 1
            if node.left is None:
                return node.right
            if node.right is None:
                return node.left
            succ = node.right
            while succ.left is not None:
                succ = succ.left
            node.key = succ.key
            self._size += 1  # the successor's removal below decrements again
            node.right = self._remove(node.right, succ.key)
        return _rebalance(node)

    def remove(self, entry: str) -> bool:
        before = self._size
        self._root = self._remove(self._root, entry)
        return self._size != before

    def is_empty(self) -> bool:
        return self._size == 0

    def __len__(self) -> int:
        return self._size

    def __iter__(self) -> Iterator[str]:
        stack, node = [], self._root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            yield node.key
            node = node.right

    @property
    def height(self) -> int:
        return _h(self._root)

    def select(self, predicate: Callable[[str], bool]) -> list[str]:
        return [e for e in self if predicate(e)]

    def filter_suffix(self, required: str) -> list[str]:
        if not required:
            return list(self)
        return [e for e in self if e.endswith(required)]


CONTAINER_VARIANTS = {"list": ListContainer, "tree": TreeContainer}


def make_container(variant: str, owner=None):
    try:
        return CONTAINER_VARIANTS[variant](owner)
    except KeyError:
        raise ValueError(f"unknown container variant {variant!r}") from None


class ShortKeyStore:
    """Set of keys with 1 or 2 symbols, which carry no triplet."""

    __slots__ = ("_keys",)

    def __init__(self):
        self._keys: set[str] = set()

    @staticmethod
    def _check(key: str) -> None:
        if len(key) not in (1, 2):
            raise ValueError(f"short-key store takes keys of length 1 or 2, got {key!r}")

    def insert(self, key: str) -> bool:
        self._check(key)
        if key in self._keys:
            return False
        self._keys.add(key)
        return True

    def contains(self, key: str) -> bool:
        self._check(key)
        return key in self._keys

    def remove(self, key: str) -> bool:
        self._check(key)
        if key in self._keys:
            self._keys.remove(key)
            return True
        return False

    def __contains__(self, key: str) -> bool:
        return key in self._keys

    def __len__(self) -> int:
        return len(self._keys)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._keys))
