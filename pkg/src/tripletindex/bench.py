"""Benchmark harness: workload protocol, metrics, parameter sweeps.

Timings are medians over ``reps`` repetitions of a monotonic clock and
are reported, never asserted.  Pruning metrics count only queries of
length >= 3, since shorter ones have no triplet to prune on.
"""
from __future__ import annotations

import statistics
import time
from dataclasses import asdict, dataclass, field, replace
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .bitgrid import IndexConfig, footprint_bits
from .datagen import GenSpec, Workload, build_workload, generate_keys
from .family import IndexFamily, family_footprint_bits
from .index import SearchOutcome, Strategy, TripletIndex

STRATEGIES = (Strategy.INDEX, Strategy.DIRECT)
SWEEP_PARAMS = ("m", "l", "k", "query_length")


def median_time(fn: Callable[[], object], reps: int) -> float:
    samples = []
    for _ in range(max(1, reps)):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def exact_search_records(index, queries: Iterable[str], strategy: Strategy) -> list[SearchOutcome]:
    return [index.search(q, strategy) for q in queries]


def false_positive_rate(records: Sequence[SearchOutcome]) -> float:
    """Container probes per unsuccessful query."""
    misses = [r for r in records if not r.found]
    if not misses:
        return 0.0
    return sum(r.containers_probed for r in misses) / len(misses)


def pruning_ratio(records: Sequence[SearchOutcome]) -> float:
    """Fraction of unsuccessful queries rejected without a container probe."""
    misses = [r for r in records if not r.found]
    if not misses:
        return 0.0
    return sum(r.containers_probed == 0 for r in misses) / len(misses)


def unsuccessful_suffixes(rng, pool: Sequence[str], indexed: Iterable[str],
                          count: int) -> list[str]:
    """Suffixes (length >= 3) of ``pool`` keys that no ``indexed`` key ends with."""
    taken = {k[i:] for k in indexed for i in range(len(k))}
    out = []
    candidates = [k for k in pool if len(k) >= 3]
    if not candidates:
        return out
    for i in rng.integers(0, len(candidates), size=count):
        key = candidates[i]
        s = key[len(key) - int(rng.integers(3, len(key) + 1)):]
        if s not in taken:
            out.append(s)
    return out


@dataclass
class MetricsReport:
    k: int
    l: int
    m: int
    distribution: str
    seed: int
    variant: str
    family: bool
    keys_inserted: int
    memory_bits: int
    container_bytes: int
    memory_total_bytes: float
    insert_time: float
    search_time_successful_index: float
    search_time_successful_direct: float
    search_time_unsuccessful_index: float
    search_time_unsuccessful_direct: float
    n_successful: int
    n_unsuccessful: int
    false_positive_rate_index: float
    false_positive_rate_direct: float
    pruning_ratio_index: float
    pruning_ratio_direct: float
    container_count: int
    max_container_size: int
    avg_container_size: float
    query_length: Optional[int] = None
    pruning_by_length: dict = field(default_factory=dict)
    suffix_pruning_ratio_index: Optional[float] = None
    suffix_pruning_ratio_direct: Optional[float] = None
    n_unsuccessful_suffix: int = 0
    prefix_time: Optional[float] = None
    suffix_time: Optional[float] = None
    substring_time: Optional[float] = None
    substring_prefix_searches: Optional[float] = None

    def to_record(self) -> dict:
        return asdict(self)


def _by_length(records: dict, queries: Sequence[str]) -> dict:
    out = {}
    lengths = sorted({len(q) for q in queries})
    for n in lengths:
        idx = [i for i, q in enumerate(queries) if len(q) == n]
        row = {"count": len(idx)}
        for s in STRATEGIES:
            row[s.value] = pruning_ratio([records[s][i] for i in idx])
        out[str(n)] = row
    return out


def run_bench(keys: Sequence[str], config: IndexConfig, *, variant: str = "list",
              family: bool = False, reps: int = 5, seed: int = 0,
              distribution: str = "file", fragment_count: Optional[int] = None,
              query_length: Optional[int] = None) -> MetricsReport:
    """Run the workload protocol on ``keys`` and measure every metric.

    With ``query_length`` set, exact and unsuccessful-suffix queries are
    restricted to that length.
    """
    wl: Workload = build_workload(keys, seed=seed, fragment_count=fragment_count)
    cls = IndexFamily if family else TripletIndex

    def build():
        idx = cls(config, variant)
        for key in wl.insert_set:
            idx.insert(key)
        return idx

    insert_time = median_time(build, reps)
    index = build()
    base = index.base if family else index

    succ = wl.successful
    unsucc = [q for q in wl.unsuccessful if len(q) >= 3]
    if query_length is not None:
        succ = [q for q in succ if len(q) == query_length]
        unsucc = [q for q in unsucc if len(q) == query_length]

    records = {s: exact_search_records(index, unsucc, s) for s in STRATEGIES}
    times = {}
    for s in STRATEGIES:
        times[("succ", s)] = median_time(lambda: [index.search(q, s) for q in succ], reps)
        times[("unsucc", s)] = median_time(lambda: [index.search(q, s) for q in unsucc], reps)

    stats = base.stats()
    bits = footprint_bits(config) + (family_footprint_bits(config) if family else 0)
    cbytes = base.container_bytes()
    if family:
        cbytes += index.rev.inner.container_bytes()
        cbytes += sum(s.container_bytes() for s in index.shifted[1:])

    rng = np.random.default_rng(seed + 1)
    usuf = unsuccessful_suffixes(rng, wl.unsuccessful, wl.insert_set, len(wl.unsuccessful))
    if query_length is not None:
        usuf = [q for q in usuf if len(q) == query_length]
    suffix_prune = {}
    for s in STRATEGIES:
        res = [base.suffix_query(q, s) for q in usuf]
        suffix_prune[s] = (sum(r.containers_probed == 0 for r in res) / len(res)) if res else None

    report = MetricsReport(
        k=config.k, l=config.l, m=len(keys), distribution=distribution, seed=seed,
        variant=variant, family=family, keys_inserted=len(index),
        memory_bits=bits, container_bytes=cbytes,
        memory_total_bytes=bits / 8 + cbytes,
        insert_time=insert_time,
        search_time_successful_index=times[("succ", Strategy.INDEX)],
        search_time_successful_direct=times[("succ", Strategy.DIRECT)],
        search_time_unsuccessful_index=times[("unsucc", Strategy.INDEX)],
        search_time_unsuccessful_direct=times[("unsucc", Strategy.DIRECT)],
        n_successful=len(succ), n_unsuccessful=len(unsucc),
        false_positive_rate_index=false_positive_rate(records[Strategy.INDEX]),
        false_positive_rate_direct=false_positive_rate(records[Strategy.DIRECT]),
        pruning_ratio_index=pruning_ratio(records[Strategy.INDEX]),
        pruning_ratio_direct=pruning_ratio(records[Strategy.DIRECT]),
        container_count=stats["container_count"],
        max_container_size=stats["max_container_size"],
        avg_container_size=stats["avg_container_size"],
        query_length=query_length,
        pruning_by_length=_by_length(records, unsucc),
        suffix_pruning_ratio_index=suffix_prune[Strategy.INDEX],
        suffix_pruning_ratio_direct=suffix_prune[Strategy.DIRECT],
        n_unsuccessful_suffix=len(usuf),
    )
    report.suffix_time = median_time(lambda: [base.suffix_search(q) for q in wl.suffixes], reps)
    if family:
        report.prefix_time = median_time(lambda: [index.prefix_search(q) for q in wl.prefixes], reps)
        subs = [q for q in wl.substrings if len(q) >= 3]
        report.substring_time = median_time(lambda: [index.substring_search(q) for q in subs], reps)
        if subs:
            report.substring_prefix_searches = statistics.mean(
                index.substring_query(q).prefix_searches for q in subs)
    return report


def bench_spec(spec: GenSpec, **kwargs) -> MetricsReport:
    keys = generate_keys(spec)
    config = IndexConfig(spec.symbols, spec.l)
    kwargs.setdefault("seed", spec.seed)
    return run_bench(keys, config, distribution=spec.distribution, **kwargs)


def sweep(spec: GenSpec, param: str, values: Sequence, seeds: Sequence[int] = (0,),
          **kwargs) -> list[MetricsReport]:
    """One report per (value, seed), varying ``param`` with the rest fixed."""
    if param not in SWEEP_PARAMS:
        raise ValueError(f"cannot sweep {param!r}; choose from {SWEEP_PARAMS}")
    reports = []
    for value in values:
        for seed in seeds:
            if param == "query_length":
                point = replace(spec, seed=seed)
                reports.append(bench_spec(point, query_length=int(value), **kwargs))
            else:
                point = replace(spec, seed=seed, **{param: int(value)})
                reports.append(bench_spec(point, **kwargs))
    return reports
