#! /usr/bin/env python3
"""Synthetic workloads and the benchmark harness.

Two thirds of the generated keys are inserted, half of those are queried
back, and the last third supplies unsuccessful queries.  The pruning ratio
is the share of unsuccessful queries rejected without a container probe.
"""
from statistics import mean

from tripletindex import GenSpec
from tripletindex.bench import sweep

reports = sweep(GenSpec(m=1000, k=26, l=10), "m", [1000, 4000], seeds=range(3), reps=1,
                fragment_count=0)
for m in (1000, 4000):
    rows = [r for r in reports if r.m == m]
    print(f"m={m}: index pruning {mean(r.pruning_ratio_index for r in rows):.3f}, "
          f"direct pruning {mean(r.pruning_ratio_direct for r in rows):.3f}")

# Zipf-distributed symbols concentrate on a few triplets and prune less.

zipf = sweep(GenSpec(m=2000, k=26, l=10, distribution="zipf"), "m", [2000], seeds=range(3),
             reps=1, fragment_count=0)
print("zipf index pruning:", round(mean(r.pruning_ratio_index for r in zipf), 3))
