"""Probability and cost model for pruning and search-strategy choice.

Characters are assumed equiprobable and consecutive triplets independent.
Every quantity comes in an *exact* product form and, where one exists, a
first-order approximation that drops higher-order terms.  Approximations
can leave [0, 1] and are clamped.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .index import Strategy, TripletIndex


log = logging.getLogger(__name__)


def _clamp(x: float) -> float:
    return min(1.0, max(0.0, x))


@dataclass(frozen=True)
class CorpusProfile:
    """Length histograms of an indexed corpus.

    ``f[w]`` counts keys of length at least ``w`` and ``g[w]`` keys of
    length exactly ``w``; both are indexed from 1 and read as 0 beyond
    their stored range.  Keys shorter than a triplet are excluded from
    ``f`` and ``g`` but included in ``m`` and ``d``.
    """

    m: int
    f: tuple
    g: tuple
    k: int
    l: int
    d: int = 0

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if any(a < b for a, b in zip(self.f[1:], self.f[2:])):
            raise ValueError("f must be non-increasing")

    @classmethod
    def uniform(cls, k: int, l: int, m: int) -> "CorpusProfile":
        """Profile with ``f(w) = g(w) = m`` at every position (the worst case)."""
        counts = (0,) + (m,) * (l + 1)
        return cls(m, counts, counts, k, l, m * l)

    @classmethod
    def from_lengths(cls, lengths: Iterable[int], k: int, l: int) -> "CorpusProfile":
        g = [0] * (l + 2)
        m = d = 0
        for n in lengths:
            m += 1
            d += n
            if n >= 3:
                g[n] += 1
        f = [0] * (l + 2)
        for w in range(l, 0, -1):
            f[w] = f[w + 1] + g[w]
        return cls(m, tuple(f), tuple(g), k, l, d)

    def f_at(self, w: int) -> int:
        return self.f[w] if 0 < w < len(self.f) else 0

    def g_at(self, w: int) -> int:
        return self.g[w] if 0 < w < len(self.g) else 0

    @property
    def q(self) -> float:
        """Probability that one key misses a given symbol at a given position."""
        return 1.0 - 1.0 / self.k


def profile_of(idx: TripletIndex) -> CorpusProfile:
    cfg = idx.config
    return CorpusProfile(idx.m, tuple(idx.f), tuple(idx.g), cfg.k, cfg.l, idx.total_chars)


def p_char(profile: CorpusProfile, w: int) -> float:
    """Probability that some key holds a given symbol at position ``w``."""
    return 1.0 - profile.q ** profile.f_at(w)


def p_triplet(profile: CorpusProfile, w: int, approx: bool = False) -> float:
    """Probability that some key holds a given triplet at position ``w``."""
    if approx:
        return _clamp(1.0 - sum(profile.q ** profile.f_at(i) for i in range(w, w + 3)))
    return p_char(profile, w) * p_char(profile, w + 1) * p_char(profile, w + 2)


def p_char_end(profile: CorpusProfile, w: int) -> float:
    return 1.0 - profile.q ** profile.g_at(w)


def p_triplet_end(profile: CorpusProfile, w: int, approx: bool = False) -> float:
    """Probability that a given triplet ends some key at position ``w``."""
    q = profile.q
    if approx:
        return _clamp(1.0 - q ** profile.f_at(w) - q ** profile.f_at(w + 1)
                      - q ** profile.g_at(w + 2))
    return p_char(profile, w) * p_char(profile, w + 1) * p_char_end(profile, w + 2)


def p_false_positive(profile: CorpusProfile, n: int, approx: bool = False) -> float:
    """Probability that an absent key of length ``n`` passes every bit check.

    The exact form multiplies the per-triplet probabilities; the
    approximation is the first-order expansion of that product.
    """
    if n < 3:
        raise ValueError("queries shorter than a triplet are never pruned")
    if approx:
        q, fa, ga = profile.q, profile.f_at, profile.g_at
        s = sum(q ** fa(i) for j in range(1, n - 1) for i in range(j, j + 3))
        return _clamp(1.0 - s + q ** fa(n) - q ** ga(n))
    p = p_triplet_end(profile, n - 2)
    for j in range(1, n - 2):
        p *= p_triplet(profile, j)
    return p


def false_positive_bound(k: int, m: int, n: int) -> float:
    """``max(0, 1 - 3(n-2)(1-1/k)**m)``, obtained by replacing every
    ``f(i)`` and ``g(i)`` with ``m`` in the first-order form."""
    return _clamp(1.0 - 3 * (n - 2) * (1.0 - 1.0 / k) ** m)


@dataclass(frozen=True)
class CostModel:
    """Per-query costs in seconds.

    ``traversal`` is the cost of checking all triplet bits of a key and
    ``container`` the cost of one container probe.
    """

    traversal: float
    container: float

    def __post_init__(self):
        if self.traversal < 0 or self.container < 0:
            raise ValueError("costs must be non-negative")


def expected_times(cost: CostModel, profile: CorpusProfile, n: int) -> tuple[float, float]:
    """Expected unsuccessful-search time under the index and direct strategies."""
    pn = p_false_positive(profile, n)
    t_index = (1 - pn) * cost.traversal + pn * (cost.traversal + cost.container)
    t_direct = p_triplet_end(profile, n - 2) * cost.container
    return t_index, t_direct


def index_search_pays(cost: CostModel, profile: CorpusProfile, n: int) -> bool:
    gap = p_triplet_end(profile, n - 2) - p_false_positive(profile, n)
    return cost.traversal <= gap * cost.container


def index_search_pays_closed_form(cost: CostModel, k: int, m: int, n: int) -> bool:
    """``T_s / T_c <= 3(n-3)(1-1/k)**m``, the worst-case-profile threshold."""
    threshold = 3 * (n - 3) * (1.0 - 1.0 / k) ** m
    return cost.traversal <= threshold * cost.container


def choose_strategy(cost: CostModel, profile: CorpusProfile, n: int) -> Strategy:
    if n < 3:
        return Strategy.DIRECT
    exact = index_search_pays(cost, profile, n)
    if exact != index_search_pays_closed_form(cost, profile.k, profile.m, n):
        log.info("strategy tests disagree for n=%d (m=%d, k=%d): exact says %s",
                 n, profile.m, profile.k, "index" if exact else "direct")
    return Strategy.INDEX if exact else Strategy.DIRECT


def p_prefix(profile: CorpusProfile, s_len: int) -> float:
    """Upper bound on an unsuccessful prefix match of length ``s_len``."""
    return false_positive_bound(profile.k, profile.m, s_len)


def expected_prefix_searches(profile: CorpusProfile, s_len: int) -> float:
    """Expected number of prefix searches one substring query issues.

    Uses all ``l`` start positions as trials, even though only
    ``l - s_len + 1`` are feasible.
    """
    return profile.l * p_prefix(profile, s_len)


class CalibrationError(ValueError):
    pass


def calibrate(idx: TripletIndex, queries: Sequence[str]) -> CostModel:
    """Measure mean triplet-traversal and container-probe times on ``idx``."""
    queries = [q for q in queries if len(q) >= 3]
    if not queries:
        raise CalibrationError("no queries of length >= 3 to calibrate on")
    grid, clock = idx.grid, time.perf_counter
    traversal = probe = 0.0
    probes = 0
    for q in queries:
        tris = idx._codes(q)
        t0 = clock()
        for w, t in enumerate(tris, 1):
            grid.test_position(t, w)
        traversal += clock() - t0
        container = idx.containers.get((tris[-1], len(q) - 2))
        if container is None:
            continue
        t0 = clock()
        container.contains(q[:-3])
        probe += clock() - t0
        probes += 1
    if probes == 0:
        raise CalibrationError("no query reached a container")
    return CostModel(traversal / len(queries), probe / probes)
