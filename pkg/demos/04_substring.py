#! /usr/bin/env python3
"""Substring search over the family of shifted reverse structures.

The forward grid yields the positions where the substring could start.
Each candidate start ``p`` becomes one prefix search in the structure
that indexes keys with their first ``p - 1`` symbols dropped.
"""
from tripletindex import IndexConfig, IndexFamily

config = IndexConfig("ABCD", 6)
fam = IndexFamily(config)
for key in ["ABCDA", "ADCDB", "CCDA", "BCDAAD"]:
    fam.insert(key)

for sub in ["BCDA", "CCDD", "DCDA"]:
    r = fam.substring_query(sub)
    print(f"{sub}: starts {r.candidates.positions()} -> shifts {r.structures} -> {sorted(r.keys)}")

# The price is memory: one full grid per shift.

print(fam.footprint_bits())
