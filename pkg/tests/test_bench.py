import numpy as np
import pytest

from tripletindex import GenSpec, IndexConfig, Oracle, SearchOutcome, generate_keys
from tripletindex.bench import (bench_spec, false_positive_rate, median_time, pruning_ratio,
                                run_bench, sweep, unsuccessful_suffixes)

RECORDS = [SearchOutcome(True, None, 1), SearchOutcome(False, 1, 0),
           SearchOutcome(False, "mark", 0), SearchOutcome(False, "container", 1)]


def test_rates():
    assert pruning_ratio(RECORDS) == pytest.approx(2 / 3)
    assert false_positive_rate(RECORDS) == pytest.approx(1 / 3)
    assert pruning_ratio([]) == 0 == false_positive_rate(RECORDS[:1])


def test_median_time():
    assert median_time(lambda: None, 3) >= 0


def test_unsuccessful_suffixes_really_miss():
    keys = generate_keys(GenSpec(m=400, k=3, l=8, seed=2))
    indexed, pool = keys[:300], keys[300:]
    out = unsuccessful_suffixes(np.random.default_rng(0), pool, indexed, 200)
    oracle = Oracle(indexed)
    assert out and all(len(s) >= 3 and not oracle.suffix(s) for s in out)


def test_report_consistency():
    spec = GenSpec(m=900, k=6, l=9, seed=4)
    rep = bench_spec(spec, reps=1, family=True, fragment_count=30)
    assert rep.keys_inserted == len(set(generate_keys(spec)[:600]))
    assert rep.memory_bits == 2 * 6 ** 3 * 9 * 10
    assert rep.memory_total_bytes == rep.memory_bits / 8 + rep.container_bytes
    assert 0 <= rep.pruning_ratio_direct <= rep.pruning_ratio_index <= 1
    assert rep.false_positive_rate_index == pytest.approx(1 - rep.pruning_ratio_index)
    assert sum(row["count"] for row in rep.pruning_by_length.values()) == rep.n_unsuccessful
    assert all(int(n) >= 3 for n in rep.pruning_by_length)
    assert rep.substring_prefix_searches is not None and rep.prefix_time is not None


def test_query_length_filter():
    rep = bench_spec(GenSpec(m=900, k=6, l=9, seed=4), reps=1, query_length=7)
    assert rep.query_length == 7 and list(rep.pruning_by_length) in ([], ["7"])


def test_file_keys():
    keys = ["ABCD", "DCBA", "AAB", "BBBB", "CAB", "AB"]
    rep = run_bench(keys, IndexConfig("ABCD", 4), reps=1)
    assert rep.distribution == "file" and rep.keys_inserted == 4


def test_sweep_shape():
    reps = sweep(GenSpec(m=200, k=4, l=6), "l", [5, 6], seeds=[0, 1], reps=1)
    assert [(r.l, r.seed) for r in reps] == [(5, 0), (5, 1), (6, 0), (6, 1)]
    with pytest.raises(ValueError):
        sweep(GenSpec(m=200, k=4, l=6), "zipf", [1])
