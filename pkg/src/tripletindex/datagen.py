"""Synthetic corpora and query workloads.

Keys have a length drawn uniformly from ``1..l`` and i.i.d. symbols from
either a uniform or a Zipfian distribution over the ``k`` symbols.  A
workload inserts two thirds of the generated keys, queries half of the
inserted ones as successful searches and the remaining third as
unsuccessful ones, and cuts prefix, suffix and substring queries out of
inserted keys.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .bitgrid import default_alphabet


@dataclass(frozen=True)
class GenSpec:
    m: int
    k: int
    l: int
    distribution: str = "uniform"
    zipf_exponent: float = 1.0
    seed: int = 0
    alphabet: Optional[str] = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.distribution not in ("uniform", "zipf"):
            raise ValueError(f"unknown distribution {self.distribution!r}")
        if self.distribution == "zipf" and self.zipf_exponent <= 0:
            raise ValueError("zipf exponent must be positive")
        if self.alphabet is not None and len(self.alphabet) != self.k:
            raise ValueError("alphabet length must equal k")

    @property
    def symbols(self) -> str:
        return self.alphabet or default_alphabet(self.k)


def zipf_probabilities(k: int, exponent: float = 1.0) -> np.ndarray:
    """Mass of ranks ``1..k`` proportional to ``rank ** -exponent``."""
    weights = np.arange(1, k + 1, dtype=float) ** -exponent
    return weights / weights.sum()


def generate_keys(spec: GenSpec) -> list[str]:
    rng = np.random.default_rng(spec.seed)
    lengths = rng.integers(1, spec.l + 1, size=spec.m)
    total = int(lengths.sum())
    if spec.distribution == "uniform":
        codes = rng.integers(0, spec.k, size=total)
    else:
        cdf = np.cumsum(zipf_probabilities(spec.k, spec.zipf_exponent))
        cdf[-1] = 1.0
        codes = np.searchsorted(cdf, rng.random(total), side="right")
    table = np.array(list(spec.symbols))
    chars = "".join(table[codes].tolist())
    keys, pos = [], 0
    for n in lengths.tolist():
        keys.append(chars[pos:pos + n])
        pos += n
    return keys


@dataclass
class Workload:
    insert_set: list[str]
    successful: list[str]
    unsuccessful: list[str]
    prefixes: list[str] = field(default_factory=list)
    suffixes: list[str] = field(default_factory=list)
    substrings: list[str] = field(default_factory=list)


def _fragments(rng, keys: Sequence[str], count: int):
    prefixes, suffixes, substrings = [], [], []
    if not keys:
        return prefixes, suffixes, substrings
    picks = rng.integers(0, len(keys), size=(3, count))
    for i in range(count):
        key = keys[picks[0, i]]
        prefixes.append(key[:rng.integers(1, len(key) + 1)])
        key = keys[picks[1, i]]
        suffixes.append(key[len(key) - rng.integers(1, len(key) + 1):])
        key = keys[picks[2, i]]
        n = int(rng.integers(1, len(key) + 1))
        start = int(rng.integers(0, len(key) - n + 1))
        substrings.append(key[start:start + n])
    return prefixes, suffixes, substrings


def build_workload(keys: Sequence[str], seed: int = 0,
                   fragment_count: Optional[int] = None) -> Workload:
    """Split ``keys`` into insert, successful and unsuccessful query sets.

    ``fragment_count`` prefix, suffix and substring queries are cut from
    inserted keys (default: as many as there are successful queries).
    Fragment lengths are uniform on ``1..len(key)``.
    """
    if not keys:
        raise ValueError("cannot build a workload from no keys")
    rng = np.random.default_rng(seed)
    cut = 2 * len(keys) // 3
    insert_set = list(dict.fromkeys(keys[:cut]))
    members = set(insert_set)
    unsuccessful = [k for k in dict.fromkeys(keys[cut:]) if k not in members]
    n_succ = len(insert_set) // 2
    chosen = rng.choice(len(insert_set), size=n_succ, replace=False) if n_succ else []
    successful = [insert_set[i] for i in sorted(chosen)]
    count = n_succ if fragment_count is None else fragment_count
    prefixes, suffixes, substrings = _fragments(rng, insert_set, count)
    return Workload(insert_set, successful, unsuccessful, prefixes, suffixes, substrings)
