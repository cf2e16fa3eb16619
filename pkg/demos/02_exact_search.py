#! /usr/bin/env python3
"""Exact search with the two strategies.

The index strategy walks every triplet's position bit before it pays for a
container probe.  The direct strategy looks only at the last mark bit.
"""
from tripletindex import IndexConfig, Strategy, TripletIndex

idx = TripletIndex(IndexConfig("ABCD", 6))
for key in ["ABCDA", "ADCDB", "CCDA", "BCDAAD"]:
    idx.insert(key)

# A present key costs one probe under either strategy.

print(idx.search("ADCDB"))

# DCDB has no key with DCD in first place, so the index strategy stops at
# triplet 1 without opening any container.

print(idx.search("DCDB", Strategy.INDEX))
print(idx.search("DCDB", Strategy.DIRECT))

# ADCDA slips past every bit and is only rejected by its container.

print(idx.search("ADCDA"))

# Short keys live in their own store.

idx.insert("AB")
assert "AB" in idx and "BA" not in idx
