#! /usr/bin/env python3
"""Suffix search by shifting and intersecting position vectors, and
prefix search on an index of reversed keys."""
from tripletindex import IndexConfig, IndexFamily

fam = IndexFamily(IndexConfig("ABCD", 6))
for key in ["ABCDA", "ADCDB", "CCDA", "BCDAAD"]:
    fam.insert(key)

# For BCDA the candidate end positions start from the mark vector of CDA
# and keep only those where BCD sits one place earlier.

r = fam.suffix_query("BCDA")
print("suffix BCDA ->", sorted(r.keys), "candidates", r.candidates.positions(),
      "probes", r.containers_probed)

# ACDA dies in the bit grid: nothing to probe.

print("suffix ACDA ->", fam.suffix_query("ACDA"))

# Prefixes are suffixes of reversed keys.

print("prefix ABC ->", sorted(fam.prefix_search("ABC")))
print("prefix C   ->", sorted(fam.prefix_search("C")))
