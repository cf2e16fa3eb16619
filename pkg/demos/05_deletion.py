#! /usr/bin/env python3
"""Deletion leaves position bits behind.

A mark bit is cleared only when its container empties.  Position bits are
shared by unrelated keys and are never cleared, so heavy churn slowly
erodes pruning but never correctness.
"""
from tripletindex import IndexConfig, TripletIndex

idx = TripletIndex(IndexConfig("ABCD", 6))
idx.insert("ACAD")
idx.insert("BCAD")
idx.delete("ACAD")
print("mark CAD@2 after one delete:", idx.grid.test_mark("CAD", 2))
idx.delete("BCAD")
print("mark CAD@2 after both:      ", idx.grid.test_mark("CAD", 2))
print("position ACA@1 still set:   ", idx.grid.test_position("ACA", 1))

# The stale bit lets a later query reach the mark check, but the answer is
# still right.

print(idx.search("ACAD"))
idx.update("BBBB", "CCCC")     # absent old key: nothing happens
print(sorted(idx.keys()))
