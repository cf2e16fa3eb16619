"""Brute-force ground truth over a plain set of strings."""
from __future__ import annotations

from typing import Iterable


class Oracle:
    def __init__(self, keys: Iterable[str] = ()):
        self.keys = set(keys)

    def insert(self, key: str) -> bool:
        if key in self.keys:
            return False
        self.keys.add(key)
        return True

    def delete(self, key: str) -> bool:
        if key in self.keys:
            self.keys.remove(key)
            return True
        return False

    def exact(self, key: str) -> bool:
        return key in self.keys

    def prefix(self, prefix: str) -> frozenset:
        return frozenset(k for k in self.keys if k.startswith(prefix))

    def suffix(self, suffix: str) -> frozenset:
        return frozenset(k for k in self.keys if k.endswith(suffix))

    def substring(self, sub: str) -> frozenset:
        return frozenset(k for k in self.keys if sub in k)

    def __len__(self) -> int:
        return len(self.keys)
