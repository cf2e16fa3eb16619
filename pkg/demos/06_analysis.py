#! /usr/bin/env python3
"""The probability model and the strategy choice.

With equiprobable symbols, the chance that an absent key of length ``n``
survives every bit check grows with ``m`` and shrinks with ``k``.  Timing
both strategies and comparing expected costs picks one per query length.
"""
from tripletindex import (CorpusProfile, GenSpec, IndexConfig, TripletIndex, calibrate,
                          choose_strategy, false_positive_bound, generate_keys,
                          p_false_positive, profile_of)

for m in (100, 500, 2000):
    u = CorpusProfile.uniform(26, 10, m)
    print(f"m={m:5d}  P_8 exact={p_false_positive(u, 8):.4f}  "
          f"first-order={false_positive_bound(26, m, 8):.4f}")

# The first-order form drops positive terms, so it sits below the exact
# product rather than above it.

spec = GenSpec(m=4000, k=12, l=12, seed=1)
keys = generate_keys(spec)
idx = TripletIndex(IndexConfig(spec.symbols, spec.l))
for key in keys:
    idx.insert(key)
cost = calibrate(idx, keys[:500])
profile = profile_of(idx)
print("traversal %.2e s, probe %.2e s" % (cost.traversal, cost.container))
for n in (4, 8, 12):
    print(n, choose_strategy(cost, profile, n).value)

# That corpus is dense: almost every bit is set, so walking them buys
# nothing.  A sparse corpus with a costly probe (a disk read, say) favours
# the index strategy, more so for long keys.

from tripletindex import CostModel

slow_probe = CostModel(cost.traversal, 1000 * cost.traversal)
sparse = CorpusProfile.uniform(26, 12, 100)
print([choose_strategy(slow_probe, sparse, n).value for n in (4, 8, 12)])
